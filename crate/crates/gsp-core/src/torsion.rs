//! Finite subgroups of the `ℓ`-torsion module `(Z/ℓ^N)^{2g}` with its
//! alternating pairing: canonical bases, pairing invariants, isotropy
//! chains, stabilizer/multiplier statistics, and degree-exponent
//! predictions.
//!
//! Pairing normalization.  A point of order `ℓ^n` has all coordinates
//! divisible by `ℓ^{N−n}`.  The pairing of two points is computed at the
//! level `n = min` of their order exponents: the point of larger order is
//! first scaled down to order `ℓ^n`, both coordinate vectors are divided
//! exactly by `ℓ^{N−n}`, and the alternating form of the quotients is read
//! mod `ℓ^n`.  With this normalization scaling both points by `ℓ` drops the
//! pairing's order exponent by exactly one, and points of order `ℓ` can
//! pair nontrivially regardless of the ambient precision.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::enumerate::{collect_elements, ElementList};
use crate::error::{CoreError, Result};
use crate::lattice::gram;
use crate::padic::{smith_normal_form, PrecisionContext, Residue, ResidueMatrix};
use crate::symplectic::{codim_prs, GroupDescriptor};

/// Hard cap (in bits) on the number of elements a subgroup may have for the
/// brute-force element-pair oracles.
pub const BRUTE_FORCE_LOG2: u32 = 20;

fn check_ambient(gens: &ResidueMatrix) -> Result<usize> {
    if gens.rows() == 0 || !gens.rows().is_multiple_of(2) {
        return Err(CoreError::DimensionMismatch);
    }
    Ok(gens.rows() / 2)
}

/// The order exponent of a point: the smallest `a` with `ℓ^a·p = 0`.
pub fn point_order_exponent(ctx: &PrecisionContext, coords: &[Residue]) -> u32 {
    let n = ctx.precision();
    let min_val = coords.iter().map(|c| ctx.valuation(c)).min().unwrap_or(n);
    n - min_val
}

/// A pairing value at its own level: an element of `Z/ℓ^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilPairing {
    /// The level `n = min` of the two order exponents.
    pub level: u32,
    /// The pairing value, a canonical representative `< ℓ^level`.
    pub value: BigUint,
}

impl WeilPairing {
    /// The order exponent of the pairing value: `level − v(value)`, zero for
    /// the trivial pairing.
    pub fn order_exponent(&self, ell: u64) -> u32 {
        self.level - self.valuation(ell)
    }

    /// The valuation of the value inside `Z/ℓ^level` (capped at `level`).
    pub fn valuation(&self, ell: u64) -> u32 {
        if self.value.is_zero() {
            return self.level;
        }
        let ell = BigUint::from(ell);
        let mut v = 0;
        let mut rem = self.value.clone();
        while (&rem % &ell).is_zero() {
            rem /= &ell;
            v += 1;
        }
        v.min(self.level)
    }

    pub fn is_trivial(&self) -> bool {
        self.value.is_zero()
    }
}

/// The alternating pairing of two torsion points, computed at its own level.
pub fn weil_pairing(ctx: &PrecisionContext, p: &[Residue], q: &[Residue]) -> Result<WeilPairing> {
    if p.len() != q.len() || p.is_empty() || !p.len().is_multiple_of(2) {
        return Err(CoreError::DimensionMismatch);
    }
    let g = p.len() / 2;
    let big_n = ctx.precision();
    let a = point_order_exponent(ctx, p);
    let b = point_order_exponent(ctx, q);
    let n = a.min(b);
    if n == 0 {
        return Ok(WeilPairing {
            level: 0,
            value: BigUint::zero(),
        });
    }
    // Scale the larger-order point down to order ℓ^n, then divide both
    // points exactly by ℓ^{N−n}.
    let scale = |coords: &[Residue], by: u32| -> Vec<Residue> {
        let factor = ctx.reduce(&ctx.ell_pow(by));
        coords.iter().map(|c| ctx.mul(c, &factor)).collect()
    };
    let p2 = if a > n { scale(p, a - n) } else { p.to_vec() };
    let q2 = if b > n { scale(q, b - n) } else { q.to_vec() };
    let div = |coords: Vec<Residue>| -> Result<Vec<Residue>> {
        coords
            .into_iter()
            .map(|c| Ok(ctx.reduce(&ctx.divide_by_ell_pow(&c, big_n - n)?)))
            .collect()
    };
    let pp = div(p2)?;
    let qq = div(q2)?;
    let mut acc = ctx.zero();
    for k in 0..g {
        let pos = ctx.mul(&pp[k], &qq[g + k]);
        let neg = ctx.mul(&pp[g + k], &qq[k]);
        acc = ctx.add(&acc, &ctx.sub(&pos, &neg));
    }
    Ok(WeilPairing {
        level: n,
        value: acc.value() % ctx.ell_pow(n),
    })
}

/// The canonical basis of a torsion subgroup: generators of nonincreasing
/// orders `ℓ^{n_1} ≥ ℓ^{n_2} ≥ …` together with primitive representatives.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    /// Basis generators `v_i = ℓ^{e_i}·w'_i`, one column per generator.
    pub generators: ResidueMatrix,
    /// Primitive representatives `w'_i` (independent mod `ℓ`).
    pub primitive: ResidueMatrix,
    /// Order exponents `n_i = N − e_i`, nonincreasing.
    pub order_exponents: Vec<u32>,
}

impl CanonicalBasis {
    pub fn rank(&self) -> usize {
        self.order_exponents.len()
    }

    /// The number of elements of the subgroup, `∏ ℓ^{n_i}`.
    pub fn cardinality(&self, ell: u64) -> BigUint {
        let total: u32 = self.order_exponents.iter().sum();
        BigUint::from(ell).pow(total)
    }
}

/// Computes the canonical basis of the subgroup generated by the columns.
pub fn canonical_basis(gens: &ResidueMatrix) -> Result<CanonicalBasis> {
    check_ambient(gens)?;
    let ctx = gens.ctx().clone();
    let n = ctx.precision();
    let sf = smith_normal_form(gens);
    let keep: Vec<usize> = sf
        .diag_exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e < n)
        .map(|(i, _)| i)
        .collect();
    let primitive = sf.l_inv.select_columns(&keep);
    let mut generators = primitive.clone();
    let mut order_exponents = Vec::with_capacity(keep.len());
    for (jj, &j) in keep.iter().enumerate() {
        let e = sf.diag_exponents[j];
        order_exponents.push(n - e);
        if e > 0 {
            let factor = ctx.reduce(&ctx.ell_pow(e));
            for i in 0..generators.rows() {
                let v = ctx.mul(generators.get(i, jj), &factor);
                generators.set(i, jj, v);
            }
        }
    }
    Ok(CanonicalBasis {
        generators,
        primitive,
        order_exponents,
    })
}

/// The type of the subgroup: order exponents `n_1 ≥ n_2 ≥ …`.
pub fn canonical_type(gens: &ResidueMatrix) -> Result<Vec<u32>> {
    Ok(canonical_basis(gens)?.order_exponents)
}

/// Scales every generator by `ℓ^m` (the image of the subgroup under
/// multiplication by `ℓ^m`).
pub fn scale_subgroup(gens: &ResidueMatrix, m: u32) -> ResidueMatrix {
    let ctx = gens.ctx();
    let factor = ctx.reduce(&ctx.ell_pow(m));
    gens.scalar_mul(&factor)
}

/// Pairwise pairing data of a canonical basis.
#[derive(Clone, Debug)]
pub struct PairingProfile {
    /// Order exponents `n_i`, nonincreasing.
    pub order_exponents: Vec<u32>,
    /// Pairing valuations `c_{ij} = v(⟨w'_i, w'_j⟩ mod ℓ^{min(n_i,n_j)})`,
    /// capped at the level; the diagonal is set to `n_i`.
    pub c: Vec<Vec<u32>>,
    /// The defect `m₁`: the largest `min(n_i,n_j) − c_{ij}`; the subgroup is
    /// totally isotropic exactly when this vanishes.
    pub m1: u32,
    /// The deepest perfectly paired level: the largest `min(n_i,n_j)` with
    /// `c_{ij} = 0`, zero if none.
    pub m: u32,
}

impl PairingProfile {
    pub fn is_totally_isotropic(&self) -> bool {
        self.m1 == 0
    }
}

fn profile_from_basis(ctx: &PrecisionContext, canon: &CanonicalBasis) -> Result<PairingProfile> {
    let k = canon.rank();
    let orders = &canon.order_exponents;
    let mut c = vec![vec![0u32; k]; k];
    let mut m1 = 0u32;
    let mut m = 0u32;
    for i in 0..k {
        c[i][i] = orders[i];
    }
    for i in 0..k {
        for j in i + 1..k {
            let pi = canon.generators.column(i);
            let pj = canon.generators.column(j);
            let pairing = weil_pairing(ctx, &pi, &pj)?;
            debug_assert_eq!(pairing.level, orders[i].min(orders[j]));
            let val = pairing.valuation(ctx.ell());
            c[i][j] = val;
            c[j][i] = val;
            m1 = m1.max(pairing.level - val);
            if val == 0 {
                m = m.max(pairing.level);
            }
        }
    }
    Ok(PairingProfile {
        order_exponents: orders.clone(),
        c,
        m1,
        m,
    })
}

/// Computes the pairing profile of the subgroup generated by the columns.
pub fn pairing_profile(gens: &ResidueMatrix) -> Result<PairingProfile> {
    let canon = canonical_basis(gens)?;
    profile_from_basis(gens.ctx(), &canon)
}

/// The invariant `m₁`: least `m` such that `ℓ^m·H` is totally isotropic.
pub fn m1_invariant(gens: &ResidueMatrix) -> Result<u32> {
    Ok(pairing_profile(gens)?.m1)
}

/// The invariant `m`: deepest level at which the subgroup contains a
/// perfectly paired pair of points.
pub fn m_invariant(gens: &ResidueMatrix) -> Result<u32> {
    Ok(pairing_profile(gens)?.m)
}

/// Whether the subgroup is totally isotropic for the pairing.
pub fn is_totally_isotropic(gens: &ResidueMatrix) -> Result<bool> {
    Ok(pairing_profile(gens)?.m1 == 0)
}

/// Materializes every element of the subgroup (coordinate vectors), guarded
/// by [`BRUTE_FORCE_LOG2`].
pub fn subgroup_elements(gens: &ResidueMatrix) -> Result<Vec<Vec<Residue>>> {
    check_ambient(gens)?;
    let ctx = gens.ctx().clone();
    let canon = canonical_basis(gens)?;
    let card = canon.cardinality(ctx.ell());
    if card.bits() as u32 > BRUTE_FORCE_LOG2 {
        return Err(CoreError::BudgetExceeded {
            estimate_log2: card.bits() as u32,
            budget_log2: BRUTE_FORCE_LOG2,
        });
    }
    let k = canon.rank();
    let dim = gens.rows();
    let radix: Vec<BigUint> = canon
        .order_exponents
        .iter()
        .map(|&n| ctx.ell_pow(n))
        .collect();
    let mut elements = Vec::new();
    let mut digits: Vec<BigUint> = vec![BigUint::zero(); k];
    let mut current: Vec<Residue> = vec![ctx.zero(); dim];
    loop {
        elements.push(current.clone());
        // Odometer step; a rollover from ℓ^{n_j}−1 to 0 is also one addition
        // of the generator because ℓ^{n_j}·v_j = 0.
        let mut idx = 0;
        loop {
            if idx == k {
                return Ok(elements);
            }
            for (row, cur) in current.iter_mut().enumerate() {
                *cur = ctx.add(cur, canon.generators.get(row, idx));
            }
            digits[idx] += 1u32;
            if digits[idx] < radix[idx] {
                break;
            }
            digits[idx] = BigUint::zero();
            idx += 1;
        }
    }
}

/// Brute-force `m₁`: the maximum pairing order exponent over all pairs of
/// subgroup elements.
pub fn m1_bruteforce(gens: &ResidueMatrix) -> Result<u32> {
    let ctx = gens.ctx();
    let elements = subgroup_elements(gens)?;
    let mut m1 = 0;
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let pairing = weil_pairing(ctx, &elements[i], &elements[j])?;
            m1 = m1.max(pairing.order_exponent(ctx.ell()));
        }
    }
    Ok(m1)
}

/// Brute-force `m`: the deepest level at which some pair of subgroup
/// elements pairs to a unit.
pub fn m_bruteforce(gens: &ResidueMatrix) -> Result<u32> {
    let ctx = gens.ctx();
    let elements = subgroup_elements(gens)?;
    let mut m = 0;
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let pairing = weil_pairing(ctx, &elements[i], &elements[j])?;
            if pairing.level > m && pairing.valuation(ctx.ell()) == 0 {
                m = pairing.level;
            }
        }
    }
    Ok(m)
}

/// One step of an isotropy chain: at the given level the mod-`ℓ^level`
/// stabilizer condition is the fixator `P_{r,s}`, and `delta` records
/// whether the step constrains the multiplier (`s > 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub level: u32,
    pub r: u32,
    pub s: u32,
    pub delta: bool,
}

/// The isotropy chain of a subgroup: fixator profiles at the distinct order
/// levels, in increasing level order, nested (profiles nonincreasing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyChain {
    pub g: u32,
    pub steps: Vec<ChainStep>,
}

impl IsotropyChain {
    /// The degree-exponent prediction
    /// `Σ_i (level_i − level_{i−1})·(δ_i + codim P_{r_i,s_i})`.
    pub fn degree_exponent_prediction(&self) -> Result<u64> {
        let mut total = 0u64;
        let mut prev = 0u32;
        for step in &self.steps {
            let codim = codim_prs(self.g, step.r, step.s)?;
            let span = u64::from(step.level - prev);
            total += span * (codim + u64::from(step.delta));
            prev = step.level;
        }
        Ok(total)
    }

    /// The multiplier depth: the deepest level whose step has `s > 0`
    /// (equivalently the sum of the `δ`-weighted level gaps).
    pub fn multiplier_depth(&self) -> u32 {
        self.steps
            .iter()
            .filter(|s| s.delta)
            .map(|s| s.level)
            .max()
            .unwrap_or(0)
    }

    /// The symplectic part of the prediction: the prediction with the
    /// multiplier contribution stripped.
    pub fn symplectic_part(&self) -> Result<u64> {
        Ok(self.degree_exponent_prediction()? - u64::from(self.multiplier_depth()))
    }

    /// The chain as level/descriptor pairs, for index computations.
    pub fn to_descriptor_chain(&self) -> Vec<(u32, GroupDescriptor)> {
        self.steps
            .iter()
            .map(|step| {
                let d = if step.s == 0 {
                    GroupDescriptor::Parabolic {
                        g: self.g,
                        r: step.r,
                    }
                } else {
                    GroupDescriptor::ParabolicPair {
                        g: self.g,
                        r: step.r,
                        s: step.s,
                    }
                };
                (step.level, d)
            })
            .collect()
    }
}

/// Computes the isotropy chain of the subgroup generated by the columns.
///
/// For each distinct order level `m^k` (descending `m^1 > … > m^t`), the
/// generators of order `≥ ℓ^{m^k}` contribute `r+s = |I_k|` fixed basis
/// vectors, of which `s = σ_k` form hyperbolic pairs detected by the mod-`ℓ`
/// pairing Gram matrix of their primitive representatives.
pub fn isotropy_chain(gens: &ResidueMatrix) -> Result<IsotropyChain> {
    let g = check_ambient(gens)? as u32;
    let ctx = gens.ctx();
    let canon = canonical_basis(gens)?;
    let orders = &canon.order_exponents;
    let k = canon.rank();
    if k == 0 {
        return Ok(IsotropyChain {
            g,
            steps: Vec::new(),
        });
    }
    // Distinct levels, descending.
    let mut levels: Vec<u32> = orders.clone();
    levels.dedup();
    // Mod-ℓ pairing Gram matrix of the primitive representatives.
    let ctx1 = ctx.with_precision(1)?;
    let full_gram = gram(&canon.primitive, &canon.primitive)?;
    let gram1 = full_gram.reduce_precision(&ctx1)?;
    let mut steps = Vec::with_capacity(levels.len());
    for &level in levels.iter().rev() {
        // The generators alive at this level form a prefix because orders
        // are nonincreasing; restrict the Gram matrix to that block.
        let alive = orders.iter().filter(|&&n| n >= level).count();
        let block: Vec<usize> = (0..alive).collect();
        let sub = gram1
            .select_columns(&block)
            .transpose()
            .select_columns(&block);
        let rank = smith_normal_form(&sub).rank_mod_ell();
        debug_assert_eq!(rank % 2, 0, "alternating forms have even rank");
        let sigma = (rank / 2) as u32;
        steps.push(ChainStep {
            level,
            r: alive as u32 - sigma,
            s: sigma,
            delta: sigma > 0,
        });
    }
    Ok(IsotropyChain { g, steps })
}

/// The degree-exponent prediction for a product: factor chains share one
/// multiplier, so only the deepest multiplier depth counts once, added to
/// the sum of the factors' symplectic parts.
pub fn product_degree_exponent(chains: &[IsotropyChain]) -> Result<u64> {
    let mut total = 0u64;
    let mut depth = 0u32;
    for chain in chains {
        total += chain.symplectic_part()?;
        depth = depth.max(chain.multiplier_depth());
    }
    Ok(total + u64::from(depth))
}

/// Pointwise stabilizer counts of a subgroup inside `Sp`/`GSp` at level
/// `m¹` (the largest order exponent).
#[derive(Clone, Debug)]
pub struct StabilizerCount {
    /// The level `m¹` at which the stabilizer was enumerated.
    pub level: u32,
    /// Exact order of the stabilizer in the requested family.
    pub order: BigUint,
    /// Order of the full family group at that level.
    pub group_order: BigUint,
    /// The index `group_order / order` (exact).
    pub index: BigUint,
}

/// The multiplier-index estimate `δ` of a subgroup.
#[derive(Clone, Debug)]
pub struct DeltaEstimate {
    /// The level `m¹` at which the stabilizer is enumerated.
    pub level: u32,
    /// The pairing defect `m₁` the bracket is measured against.
    pub m1: u32,
    /// Order of the stabilizer inside `GSp(Z/ℓ^{m¹})`.
    pub stabilizer_order: u64,
    /// Order of the image of the stabilizer under the multiplier.
    pub multiplier_image_order: u64,
    /// `δ = φ(ℓ^{m¹}) / multiplier_image_order` (exact).
    pub delta: u64,
    /// Bracket lower end `(ℓ−1)·ℓ^{m₁−1}` (`1` when `m₁ = 0`).
    pub lower: u64,
    /// Bracket upper end `ℓ^{m₁}`.
    pub upper: u64,
    /// Whether `lower ≤ δ ≤ upper` held.
    pub within_bracket: bool,
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    let mut p = 1u64;
    for _ in 0..exp {
        p *= base;
    }
    p
}

/// Raw stabilizer scan: orders of the pointwise stabilizer
/// `{M : M·w'_i ≡ w'_i (mod ℓ^{n_i})}` within `Sp` and `GSp` at level `m¹`,
/// plus the multiplier-image size.
struct StabilizerScan {
    sp_order: u64,
    gsp_order: u64,
    image: u64,
}

fn stabilizer_scan(
    ctx: &PrecisionContext,
    g: usize,
    canon: &CanonicalBasis,
    level: u32,
    sp_list: &ElementList,
) -> Result<StabilizerScan> {
    let ell = ctx.ell();
    let modulus = pow_u64(ell, level);
    let dim = 2 * g;
    let k = canon.rank();
    // Primitive representatives and per-generator caps ℓ^{n_i}, as words.
    let caps: Vec<u64> = canon
        .order_exponents
        .iter()
        .map(|&n| pow_u64(ell, n))
        .collect();
    debug_assert!(caps.iter().all(|&c| c <= modulus));
    let mut w_words = vec![0u64; dim * k];
    let modulus_big = BigUint::from(modulus);
    for j in 0..k {
        for i in 0..dim {
            let v = canon.primitive.get(i, j).value() % &modulus_big;
            w_words[i * k + j] = v.iter_u64_digits().next().unwrap_or(0);
        }
    }
    let units: Vec<u64> = (1..modulus).filter(|v| v % ell != 0).collect();
    let mut lambda_hits = vec![false; modulus as usize];
    let mut sp_order = 0u64;
    let mut gsp_order = 0u64;
    let mut sw = vec![0u64; dim * k];
    for idx in 0..sp_list.len() {
        let mat = sp_list.matrix_words(idx);
        // S·W for the symplectic part.
        for i in 0..dim {
            for j in 0..k {
                let mut acc = 0u64;
                for r in 0..dim {
                    acc = (acc + mat[i * dim + r] * w_words[r * k + j]) % modulus;
                }
                sw[i * k + j] = acc;
            }
        }
        // M = diag(I, λI)·S fixes w_j mod cap_j iff the unscaled rows agree
        // and the scaled rows agree after multiplication by λ.
        let top_ok = (0..k).all(|j| {
            (0..g).all(|i| (sw[i * k + j] + modulus - w_words[i * k + j]).is_multiple_of(caps[j]))
        });
        if !top_ok {
            continue;
        }
        for &lambda in &units {
            let ok = (0..k).all(|j| {
                (g..dim).all(|i| {
                    let scaled = lambda * sw[i * k + j] % modulus;
                    (scaled + modulus - w_words[i * k + j]).is_multiple_of(caps[j])
                })
            });
            if ok {
                gsp_order += 1;
                if lambda == 1 {
                    sp_order += 1;
                }
                lambda_hits[lambda as usize] = true;
            }
        }
    }
    let image = lambda_hits.iter().filter(|&&b| b).count() as u64;
    if image == 0 || sp_order == 0 {
        return Err(CoreError::PreconditionViolated(String::from(
            "stabilizer is empty (the identity should always be present)",
        )));
    }
    Ok(StabilizerScan {
        sp_order,
        gsp_order,
        image,
    })
}

fn stabilizer_inputs(gens: &ResidueMatrix) -> Result<(usize, CanonicalBasis, u32)> {
    let g = check_ambient(gens)?;
    let canon = canonical_basis(gens)?;
    let level = canon.order_exponents.first().copied().unwrap_or(0);
    Ok((g, canon, level))
}

fn validate_sp_list(
    ctx: &PrecisionContext,
    g: usize,
    level: u32,
    sp_list: &ElementList,
) -> Result<()> {
    if sp_list.ell() != ctx.ell() || sp_list.precision() != level || sp_list.side() != 2 * g {
        return Err(CoreError::PrecisionMismatch);
    }
    Ok(())
}

fn stabilizer_result(
    ell: u64,
    g: u32,
    level: u32,
    similitude: bool,
    scan: &StabilizerScan,
) -> Result<StabilizerCount> {
    let descriptor = if similitude {
        GroupDescriptor::GSp { g }
    } else {
        GroupDescriptor::Sp { g }
    };
    let group_order = crate::symplectic::closed_form_order(&descriptor, ell, level)
        .ok_or(CoreError::DimensionMismatch)?;
    let order = BigUint::from(if similitude {
        scan.gsp_order
    } else {
        scan.sp_order
    });
    if (&group_order % &order) != BigUint::zero() {
        return Err(CoreError::PreconditionViolated(String::from(
            "stabilizer order does not divide the group order",
        )));
    }
    let index = &group_order / &order;
    Ok(StabilizerCount {
        level,
        order,
        group_order,
        index,
    })
}

/// Enumerates the pointwise stabilizer
/// `{M ∈ family(Z/ℓ^{m¹}) : M·w'_i ≡ w'_i (mod ℓ^{n_i})}` of the subgroup
/// (family = `GSp` when `similitude`, else `Sp`) and returns its exact
/// order and index.
pub fn stabilizer_enumerate(
    gens: &ResidueMatrix,
    similitude: bool,
    budget_log2: u32,
) -> Result<StabilizerCount> {
    let ctx = gens.ctx();
    let (g, canon, level) = stabilizer_inputs(gens)?;
    if level == 0 {
        return Ok(StabilizerCount {
            level: 0,
            order: BigUint::from(1u32),
            group_order: BigUint::from(1u32),
            index: BigUint::from(1u32),
        });
    }
    let sp_list = collect_elements(
        &GroupDescriptor::Sp { g: g as u32 },
        ctx.ell(),
        level,
        budget_log2,
    )?;
    let scan = stabilizer_scan(ctx, g, &canon, level, &sp_list)?;
    stabilizer_result(ctx.ell(), g as u32, level, similitude, &scan)
}

/// [`stabilizer_enumerate`] with a caller-supplied symplectic element list
/// at level `m¹` (for reuse across many subgroups).
pub fn stabilizer_with_sp_list(
    gens: &ResidueMatrix,
    similitude: bool,
    sp_list: &ElementList,
) -> Result<StabilizerCount> {
    let ctx = gens.ctx();
    let (g, canon, level) = stabilizer_inputs(gens)?;
    if level == 0 {
        return Ok(StabilizerCount {
            level: 0,
            order: BigUint::from(1u32),
            group_order: BigUint::from(1u32),
            index: BigUint::from(1u32),
        });
    }
    validate_sp_list(ctx, g, level, sp_list)?;
    let scan = stabilizer_scan(ctx, g, &canon, level, sp_list)?;
    stabilizer_result(ctx.ell(), g as u32, level, similitude, &scan)
}

fn delta_result(
    ctx: &PrecisionContext,
    level: u32,
    m1: u32,
    scan: &StabilizerScan,
) -> Result<DeltaEstimate> {
    let ell = ctx.ell();
    let phi = (ell - 1) * pow_u64(ell, level - 1);
    if !phi.is_multiple_of(scan.image) {
        return Err(CoreError::PreconditionViolated(String::from(
            "multiplier image size does not divide the unit group order",
        )));
    }
    let delta = phi / scan.image;
    let lower = if m1 == 0 {
        1
    } else {
        (ell - 1) * pow_u64(ell, m1 - 1)
    };
    let upper = pow_u64(ell, m1);
    Ok(DeltaEstimate {
        level,
        m1,
        stabilizer_order: scan.gsp_order,
        multiplier_image_order: scan.image,
        delta,
        lower,
        upper,
        within_bracket: lower <= delta && delta <= upper,
    })
}

fn trivial_delta() -> DeltaEstimate {
    DeltaEstimate {
        level: 0,
        m1: 0,
        stabilizer_order: 1,
        multiplier_image_order: 1,
        delta: 1,
        lower: 1,
        upper: 1,
        within_bracket: true,
    }
}

/// Computes `δ`: the index of the multiplier image of the `GSp`-stabilizer
/// of the subgroup inside the units of `Z/ℓ^{m¹}`, together with the
/// bracket `(ℓ−1)ℓ^{m₁−1} ≤ δ ≤ ℓ^{m₁}` it is expected to satisfy.
pub fn delta_estimate(gens: &ResidueMatrix, budget_log2: u32) -> Result<DeltaEstimate> {
    let ctx = gens.ctx();
    let (g, canon, level) = stabilizer_inputs(gens)?;
    if level == 0 {
        return Ok(trivial_delta());
    }
    let profile = profile_from_basis(ctx, &canon)?;
    let sp_list = collect_elements(
        &GroupDescriptor::Sp { g: g as u32 },
        ctx.ell(),
        level,
        budget_log2,
    )?;
    let scan = stabilizer_scan(ctx, g, &canon, level, &sp_list)?;
    delta_result(ctx, level, profile.m1, &scan)
}

/// [`delta_estimate`] with a caller-supplied symplectic element list at
/// level `m¹` (for reuse across many subgroups).
pub fn delta_with_sp_list(gens: &ResidueMatrix, sp_list: &ElementList) -> Result<DeltaEstimate> {
    let ctx = gens.ctx();
    let (g, canon, level) = stabilizer_inputs(gens)?;
    if level == 0 {
        return Ok(trivial_delta());
    }
    validate_sp_list(ctx, g, level, sp_list)?;
    let profile = profile_from_basis(ctx, &canon)?;
    let scan = stabilizer_scan(ctx, g, &canon, level, sp_list)?;
    delta_result(ctx, level, profile.m1, &scan)
}

/// Enumerates every subgroup of `(Z/ℓ^N)²` as a generator matrix.
///
/// Each subgroup has a unique presentation `⟨(ℓ^a, c), (0, ℓ^b)⟩` with
/// `0 ≤ a, b ≤ N`, `0 ≤ c < ℓ^a`, and `ℓ^{max(0, a+b−N)} | c`.
pub fn enumerate_plane_subgroups(ctx: &PrecisionContext) -> Vec<ResidueMatrix> {
    let n = ctx.precision();
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            // The congruence constraint ℓ^{max(0, a+b−N)} | c.
            let min_pow = (a + b).saturating_sub(n);
            let step = ctx.ell_pow(min_pow);
            let limit = ctx.ell_pow(a);
            let mut c = BigUint::zero();
            while c < limit {
                let mut m = ResidueMatrix::zero(ctx, 2, 2);
                m.set(0, 0, ctx.reduce(&ctx.ell_pow(a)));
                m.set(1, 0, ctx.reduce(&c));
                m.set(1, 1, ctx.reduce(&ctx.ell_pow(b)));
                out.push(m);
                c += &step;
            }
        }
    }
    out
}
