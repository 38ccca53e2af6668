//! The groups `Sp_{2g}` and `GSp_{2g}` over `Z/ℓ^N` and their standard
//! subgroups: descriptors, multipliers, membership, closed-form orders,
//! codimensions, chain indices, and the scalar/symplectic factorization.
//!
//! Conventions.  The standard alternating form is given by the block matrix
//! `J = [[0, I_g], [−I_g, 0]]`; a similitude satisfies `ᵗM·J·M = λ(M)·J`
//! with `λ(M)` a unit, and `det M = λ(M)^g`.  The parabolic subgroups used
//! here are pointwise fixators: `P_r` fixes the basis vectors `e_1..e_r`
//! inside `Sp_{2g}`, and `P_{r,s}` additionally fixes `f_1..f_s` (which
//! forces `λ = 1` already for `s ≥ 1`).  The pair family `E_{g₁,g₂}` consists
//! of pairs of similitudes with equal multiplier.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::padic::{PrecisionContext, Residue, ResidueMatrix};
use crate::rng::SplitMix64;

/// The standard alternating form `J` on `(Z/ℓ^N)^{2g}`.
pub fn standard_form(ctx: &PrecisionContext, g: usize) -> ResidueMatrix {
    let mut j = ResidueMatrix::zero(ctx, 2 * g, 2 * g);
    let one = ctx.one();
    let minus_one = ctx.neg(&one);
    for i in 0..g {
        j.set(i, g + i, one.clone());
        j.set(g + i, i, minus_one.clone());
    }
    j
}

/// Computes the similitude multiplier `λ` with `ᵗM·J·M = λ·J`, or
/// [`CoreError::NotSymplectic`] if `M` is not of that shape.
///
/// The returned `λ` is not necessarily a unit; group membership additionally
/// requires it to be one (see [`is_gsp_member`]).
pub fn multiplier(m: &ResidueMatrix) -> Result<Residue> {
    if m.rows() != m.cols() || m.rows() == 0 || !m.rows().is_multiple_of(2) {
        return Err(CoreError::DimensionMismatch);
    }
    let g = m.rows() / 2;
    let ctx = m.ctx();
    let j = standard_form(ctx, g);
    let t = m.transpose().mat_mul(&j)?.mat_mul(m)?;
    let lambda = t.get(0, g).clone();
    let lj = j.scalar_mul(&lambda);
    if t == lj {
        Ok(lambda)
    } else {
        Err(CoreError::NotSymplectic)
    }
}

/// Whether `M ∈ GSp_{2g}(Z/ℓ^N)` (similitude shape with unit multiplier).
pub fn is_gsp_member(m: &ResidueMatrix) -> bool {
    match multiplier(m) {
        Ok(lambda) => m.ctx().is_unit(&lambda),
        Err(_) => false,
    }
}

/// Whether `M ∈ Sp_{2g}(Z/ℓ^N)` (multiplier exactly one).
pub fn is_sp_member(m: &ResidueMatrix) -> bool {
    match multiplier(m) {
        Ok(lambda) => lambda == m.ctx().one(),
        Err(_) => false,
    }
}

/// Exact determinant over `Z/ℓ^N`, via fraction-free (Bareiss) elimination on
/// the integer representatives.
pub fn det(m: &ResidueMatrix) -> Result<Residue> {
    if m.rows() != m.cols() {
        return Err(CoreError::DimensionMismatch);
    }
    let n = m.rows();
    let ctx = m.ctx();
    if n == 0 {
        return Ok(ctx.one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(m.get(i, j).value().clone()))
                .collect()
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(ctx.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact division (Bareiss)
            }
        }
        prev = a[k][k].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if sign < 0 {
        d = -d;
    }
    let modulus = BigInt::from(ctx.modulus().clone());
    let mut r = d % &modulus;
    if r.is_negative() {
        r += &modulus;
    }
    Ok(ctx.reduce(r.magnitude()))
}

/// Checks the determinant–multiplier relation `det M = λ(M)^g`.
pub fn det_multiplier_check(m: &ResidueMatrix) -> Result<bool> {
    let g = m.rows() / 2;
    let lambda = multiplier(m)?;
    let d = det(m)?;
    let ctx = m.ctx();
    let mut p = ctx.one();
    for _ in 0..g {
        p = ctx.mul(&p, &lambda);
    }
    Ok(p == d)
}

/// A finite matrix group from the standard families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    /// `Sp_{2g}`.
    Sp { g: u32 },
    /// `GSp_{2g}`.
    GSp { g: u32 },
    /// Fixator of `e_1..e_r` in `Sp_{2g}`.
    Parabolic { g: u32, r: u32 },
    /// Fixator of `e_1..e_r, f_1..f_s` in `Sp_{2g}`.
    ParabolicPair { g: u32, r: u32, s: u32 },
    /// Pairs `(M₁, M₂) ∈ GSp_{2g₁} × GSp_{2g₂}` with equal multiplier.
    SimilitudePair { g1: u32, g2: u32 },
}

impl GroupDescriptor {
    /// Validates the parameters (`g ≥ 1`, `s ≤ r ≤ g`).
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            GroupDescriptor::Sp { g } | GroupDescriptor::GSp { g } => g >= 1,
            GroupDescriptor::Parabolic { g, r } => g >= 1 && r <= g,
            GroupDescriptor::ParabolicPair { g, r, s } => g >= 1 && s <= r && r <= g,
            GroupDescriptor::SimilitudePair { g1, g2 } => g1 >= 1 && g2 >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::InvalidArgument(String::from(
                "group descriptor parameters out of range",
            )))
        }
    }

    /// The algebraic dimension of the group.
    pub fn dimension(&self) -> u64 {
        fn dim_sp(g: u32) -> u64 {
            let g = g as u64;
            2 * g * g + g
        }
        match *self {
            GroupDescriptor::Sp { g } => dim_sp(g),
            GroupDescriptor::GSp { g } => dim_sp(g) + 1,
            GroupDescriptor::Parabolic { g, r } => dim_sp(g) - codim_pr(g, r).unwrap(),
            GroupDescriptor::ParabolicPair { g, r, s } => dim_sp(g) - codim_prs(g, r, s).unwrap(),
            GroupDescriptor::SimilitudePair { g1, g2 } => dim_sp(g1) + dim_sp(g2) + 1,
        }
    }

    /// The reductive rank (informational).
    pub fn rank(&self) -> u32 {
        match *self {
            GroupDescriptor::Sp { g } => g,
            GroupDescriptor::GSp { g } => g + 1,
            GroupDescriptor::Parabolic { g, r } => g - r,
            GroupDescriptor::ParabolicPair { g, r, .. } => g - r,
            GroupDescriptor::SimilitudePair { g1, g2 } => g1 + g2 + 1,
        }
    }

    /// The genus of the ambient symplectic space (`g₁` for pairs).
    pub fn genus(&self) -> u32 {
        match *self {
            GroupDescriptor::Sp { g }
            | GroupDescriptor::GSp { g }
            | GroupDescriptor::Parabolic { g, r: _ }
            | GroupDescriptor::ParabolicPair { g, .. } => g,
            GroupDescriptor::SimilitudePair { g1, .. } => g1,
        }
    }

    /// The `(r, s)` fixator profile for the `Sp`-family members
    /// (`Sp = P_{0,0}`), or `None` for `GSp` and pairs.
    pub fn fixator_profile(&self) -> Option<(u32, u32)> {
        match *self {
            GroupDescriptor::Sp { .. } => Some((0, 0)),
            GroupDescriptor::Parabolic { r, .. } => Some((r, 0)),
            GroupDescriptor::ParabolicPair { r, s, .. } => Some((r, s)),
            _ => None,
        }
    }

    /// Codimension inside `Sp_{2g}` for the `Sp`-family members.
    pub fn codim_in_sp(&self) -> Result<u64> {
        self.validate()?;
        let g = self.genus();
        match self.fixator_profile() {
            Some((r, s)) => codim_prs(g, r, s),
            None => Err(CoreError::InvalidArgument(String::from(
                "codimension in Sp is only defined for the Sp family",
            ))),
        }
    }
}

/// Euler totient of `ℓ^n`.
pub fn phi_ell_pow(ell: u64, n: u32) -> BigUint {
    let ell_big = BigUint::from(ell);
    ell_big.pow(n - 1) * BigUint::from(ell - 1)
}

/// `|Sp_{2g}(Z/ℓ^n)| = ℓ^{(2g²+g)(n−1)} · ℓ^{g²} · ∏_{i=1..g} (ℓ^{2i} − 1)`.
pub fn sp_order(g: u32, ell: u64, n: u32) -> BigUint {
    assert!(g >= 1 && n >= 1);
    let ell_big = BigUint::from(ell);
    let dim = 2 * (g as u64) * (g as u64) + g as u64;
    let mut order = ell_big.pow((dim * (n as u64 - 1)) as u32);
    order *= ell_big.pow(g * g);
    for i in 1..=g {
        order *= ell_big.pow(2 * i) - BigUint::one();
    }
    order
}

/// `|GSp_{2g}(Z/ℓ^n)| = φ(ℓ^n) · |Sp_{2g}(Z/ℓ^n)|`.
pub fn gsp_order(g: u32, ell: u64, n: u32) -> BigUint {
    phi_ell_pow(ell, n) * sp_order(g, ell, n)
}

/// Scales a level-one order through the reduction kernels:
/// `|G(Z/ℓ^m)| = |G(Z/ℓ)| · ℓ^{dim(G)·(m−1)}` for smooth `G`.
pub fn hensel_order(d: &GroupDescriptor, level1_order: &BigUint, ell: u64, m: u32) -> BigUint {
    assert!(m >= 1);
    level1_order * BigUint::from(ell).pow((d.dimension() * (m as u64 - 1)) as u32)
}

/// Closed-form order of the descriptor over `Z/ℓ^n`, when one exists
/// (`Sp`, `GSp`, and the equal-multiplier pair family).
pub fn closed_form_order(d: &GroupDescriptor, ell: u64, n: u32) -> Option<BigUint> {
    d.validate().ok()?;
    match *d {
        GroupDescriptor::Sp { g } => Some(sp_order(g, ell, n)),
        GroupDescriptor::GSp { g } => Some(gsp_order(g, ell, n)),
        GroupDescriptor::SimilitudePair { g1, g2 } => {
            Some(phi_ell_pow(ell, n) * sp_order(g1, ell, n) * sp_order(g2, ell, n))
        }
        _ => None,
    }
}

/// The two-sided order corridor at level one:
/// `(ℓ−1)^dim ≤ |G(F_ℓ)| ≤ (ℓ+1)^dim`
/// (equivalently `|G(F_ℓ)|/ℓ^dim ∈ [(1−1/ℓ)^dim, (1+1/ℓ)^dim]`).
pub fn order_bounds_check(d: &GroupDescriptor, ell: u64, level1_order: &BigUint) -> bool {
    let dim = d.dimension() as u32;
    let lo = BigUint::from(ell - 1).pow(dim);
    let hi = BigUint::from(ell + 1).pow(dim);
    &lo <= level1_order && level1_order <= &hi
}

/// Codimension of the fixator `P_r` in `Sp_{2g}`: `2rg − r(r−1)/2`.
pub fn codim_pr(g: u32, r: u32) -> Result<u64> {
    if r > g || g == 0 {
        return Err(CoreError::InvalidArgument(format!(
            "codim_pr requires r <= g >= 1, got r={r}, g={g}"
        )));
    }
    let (g, r) = (g as u64, r as u64);
    Ok(2 * r * g - (r * r - r) / 2)
}

/// Codimension of the fixator `P_{r,s}` in `Sp_{2g}`:
/// `2rg + 2sg − rs − r(r−1)/2 − s(s−1)/2`.
pub fn codim_prs(g: u32, r: u32, s: u32) -> Result<u64> {
    if s > r || r > g || g == 0 {
        return Err(CoreError::InvalidArgument(format!(
            "codim_prs requires s <= r <= g >= 1, got s={s}, r={r}, g={g}"
        )));
    }
    let (g, r, s) = (g as u64, r as u64, s as u64);
    Ok(2 * r * g + 2 * s * g - r * s - (r * r - r) / 2 - (s * s - s) / 2)
}

/// The index exponent of a congruence filtration.
///
/// Given nested groups `G_1 ⊆ G_2 ⊆ … ⊆ G_t` in the `Sp` family (all with
/// the same genus, nesting meaning the fixator profiles `(r_i, s_i)` are
/// nonincreasing) imposed at strictly increasing levels `m_1 < m_2 < …`,
/// the subgroup `{M ∈ Sp(Z/ℓ^{m_t}) : M mod ℓ^{m_i} ∈ G_i}` has index
/// `ℓ^e · (unit-size factor)` with
/// `e = Σ_i codim(G_i) · (m_i − m_{i−1})`, `m_0 = 0`.  Returns `e`.
pub fn chain_index_exponent(chain: &[(u32, GroupDescriptor)]) -> Result<u64> {
    if chain.is_empty() {
        return Err(CoreError::InvalidArgument(String::from("empty chain")));
    }
    let genus = chain[0].1.genus();
    let mut prev_level = 0u32;
    let mut prev_profile: Option<(u32, u32)> = None;
    let mut exponent = 0u64;
    for (level, d) in chain {
        d.validate()?;
        if d.genus() != genus {
            return Err(CoreError::InvalidArgument(String::from(
                "chain members must share the genus",
            )));
        }
        let profile = d.fixator_profile().ok_or_else(|| {
            CoreError::InvalidArgument(String::from("chain members must be in the Sp family"))
        })?;
        if *level <= prev_level {
            return Err(CoreError::InvalidArgument(String::from(
                "chain levels must be strictly increasing",
            )));
        }
        if let Some((pr, ps)) = prev_profile {
            if profile.0 > pr || profile.1 > ps {
                return Err(CoreError::InvalidArgument(String::from(
                    "chain groups must be nested (nonincreasing fixator profiles)",
                )));
            }
        }
        exponent += d.codim_in_sp()? * u64::from(*level - prev_level);
        prev_level = *level;
        prev_profile = Some(profile);
    }
    Ok(exponent)
}

/// Factors a similitude as `M = diag(I_g, λ·I_g) · S` with `S ∈ Sp_{2g}`.
///
/// Returns the pair `(diag(I_g, λ·I_g), S)`.
pub fn sp_factorize(m: &ResidueMatrix) -> Result<(ResidueMatrix, ResidueMatrix)> {
    let lambda = multiplier(m)?;
    let ctx = m.ctx().clone();
    if !ctx.is_unit(&lambda) {
        return Err(CoreError::NotInvertible);
    }
    let g = m.rows() / 2;
    let lambda_inv = ctx.inv(&lambda)?;
    let mut scalar_block = ResidueMatrix::identity(&ctx, 2 * g);
    let mut s = m.clone();
    for i in g..2 * g {
        scalar_block.set(i, i, lambda.clone());
        for j in 0..2 * g {
            let v = ctx.mul(s.get(i, j), &lambda_inv);
            s.set(i, j, v);
        }
    }
    debug_assert!(is_sp_member(&s));
    Ok((scalar_block, s))
}

/// The congruence hypothesis on a similitude: whether `M·e_1 ≡ e_1` and
/// `M·f_1 ≡ f_1 (mod ℓ^k)` (with `f_1 = e_{g+1}`).
///
/// Fixing one hyperbolic pair mod `ℓ^k` forces `λ(M) ≡ 1 (mod ℓ^k)`; this
/// function returns the hypothesis so the implication can be tested
/// externally against the multiplier.
pub fn congruence_multiplier_check(m: &ResidueMatrix, k: u32) -> Result<bool> {
    if m.rows() != m.cols() || m.rows() == 0 || !m.rows().is_multiple_of(2) {
        return Err(CoreError::DimensionMismatch);
    }
    let ctx = m.ctx();
    if k == 0 || k > ctx.precision() {
        return Err(CoreError::InvalidArgument(format!(
            "congruence level k={k} out of range 1..={}",
            ctx.precision()
        )));
    }
    let g = m.rows() / 2;
    let ell_k = ctx.ell_pow(k);
    let fixes = |col: usize| -> bool {
        (0..m.rows()).all(|i| {
            let want = u64::from(i == col);
            let diff = ctx.sub(m.get(i, col), &ctx.residue(want));
            (diff.value() % &ell_k).is_zero()
        })
    };
    Ok(fixes(0) && fixes(g))
}

/// The Lie-algebra trace condition for the equal-multiplier pair family:
/// `g₂·Tr(x) ≡ g₁·Tr(y)` over `Z/ℓ^N` for `x` of size `2g₁`, `y` of size
/// `2g₂`.
pub fn lie_trace_check(g1: u32, g2: u32, x: &ResidueMatrix, y: &ResidueMatrix) -> Result<bool> {
    if x.ctx() != y.ctx() {
        return Err(CoreError::PrecisionMismatch);
    }
    if x.rows() != x.cols()
        || y.rows() != y.cols()
        || x.rows() != 2 * g1 as usize
        || y.rows() != 2 * g2 as usize
    {
        return Err(CoreError::DimensionMismatch);
    }
    let ctx = x.ctx();
    let trace = |m: &ResidueMatrix| -> Residue {
        let mut acc = ctx.zero();
        for i in 0..m.rows() {
            acc = ctx.add(&acc, m.get(i, i));
        }
        acc
    };
    let lhs = ctx.mul(&ctx.residue(u64::from(g2)), &trace(x));
    let rhs = ctx.mul(&ctx.residue(u64::from(g1)), &trace(y));
    Ok(lhs == rhs)
}

/// Membership in the equal-multiplier pair family `E_{g₁,g₂}`.
pub fn is_pair_member(g1: u32, g2: u32, m1: &ResidueMatrix, m2: &ResidueMatrix) -> Result<bool> {
    if m1.ctx() != m2.ctx() {
        return Err(CoreError::PrecisionMismatch);
    }
    if m1.rows() != 2 * g1 as usize || m2.rows() != 2 * g2 as usize {
        return Err(CoreError::DimensionMismatch);
    }
    let (l1, l2) = match (multiplier(m1), multiplier(m2)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(false),
    };
    let ctx = m1.ctx();
    Ok(ctx.is_unit(&l1) && l1 == l2)
}

/// Membership test for matrix descriptors (`Sp`, `GSp`, fixators).
///
/// Pair descriptors need two matrices; use [`is_pair_member`] for those.
pub fn is_member(d: &GroupDescriptor, m: &ResidueMatrix) -> Result<bool> {
    d.validate()?;
    let g = d.genus() as usize;
    if m.rows() != 2 * g || m.cols() != 2 * g {
        return Err(CoreError::DimensionMismatch);
    }
    let ctx = m.ctx();
    match *d {
        GroupDescriptor::Sp { .. } => Ok(is_sp_member(m)),
        GroupDescriptor::GSp { .. } => Ok(is_gsp_member(m)),
        GroupDescriptor::Parabolic { r, .. } => {
            Ok(is_sp_member(m) && fixes_basis_columns(m, ctx, g, r, 0))
        }
        GroupDescriptor::ParabolicPair { r, s, .. } => {
            Ok(is_sp_member(m) && fixes_basis_columns(m, ctx, g, r, s))
        }
        GroupDescriptor::SimilitudePair { .. } => Err(CoreError::InvalidArgument(String::from(
            "pair membership needs two matrices; use is_pair_member",
        ))),
    }
}

fn fixes_basis_columns(
    m: &ResidueMatrix,
    ctx: &PrecisionContext,
    g: usize,
    r: u32,
    s: u32,
) -> bool {
    let fixes = |col: usize| -> bool {
        (0..2 * g).all(|i| {
            let want = if i == col { ctx.one() } else { ctx.zero() };
            m.get(i, col) == &want
        })
    };
    (0..r as usize).all(&fixes) && (0..s as usize).all(|j| fixes(g + j))
}

/// A pseudo-random element of `Sp_{2g}(Z/ℓ^N)`, as a product of `steps`
/// alternating unipotent block factors `[[I, S], [0, I]]` and
/// `[[I, 0], [T, I]]` with `S, T` random symmetric `g×g` blocks.  These
/// factors generate the full group over `Z/ℓ^N`; the output is deterministic
/// in the generator state.
pub fn random_symplectic_element(
    ctx: &PrecisionContext,
    g: usize,
    rng: &mut SplitMix64,
    steps: u32,
) -> ResidueMatrix {
    let two_g = 2 * g;
    let mut m = ResidueMatrix::identity(ctx, two_g);
    // Bound for uniform residue draws; the modulus may exceed u64, in which
    // case several draws are combined.
    let draw = |rng: &mut SplitMix64, ctx: &PrecisionContext| -> Residue {
        let mut acc = BigUint::zero();
        let mut bits = 0u64;
        let need = ctx.modulus().bits();
        while bits < need + 64 {
            acc = (acc << 64) | BigUint::from(rng.next_u64());
            bits += 64;
        }
        ctx.reduce(&acc)
    };
    for step in 0..steps {
        let mut sym = ResidueMatrix::zero(ctx, g, g);
        for i in 0..g {
            for j in i..g {
                let v = draw(rng, ctx);
                sym.set(i, j, v.clone());
                sym.set(j, i, v);
            }
        }
        let mut factor = ResidueMatrix::identity(ctx, two_g);
        for i in 0..g {
            for j in 0..g {
                if step % 2 == 0 {
                    factor.set(i, g + j, sym.get(i, j).clone());
                } else {
                    factor.set(g + i, j, sym.get(i, j).clone());
                }
            }
        }
        m = m.mat_mul(&factor).expect("shapes agree");
    }
    debug_assert!(is_sp_member(&m));
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ell: u64, n: u32) -> PrecisionContext {
        PrecisionContext::new(ell, n).unwrap()
    }

    #[test]
    fn standard_form_squares_to_minus_one() {
        let c = ctx(5, 2);
        let j = standard_form(&c, 2);
        let j2 = j.mat_mul(&j).unwrap();
        let minus_i = ResidueMatrix::identity(&c, 4).scalar_mul(&c.neg(&c.one()));
        assert_eq!(j2, minus_i);
    }

    #[test]
    fn multiplier_of_scalar_matrix() {
        // diag(a, …, a) has multiplier a².
        let c = ctx(3, 3);
        let a = c.residue(5);
        let m = ResidueMatrix::identity(&c, 4).scalar_mul(&a);
        let lambda = multiplier(&m).unwrap();
        assert_eq!(lambda, c.mul(&a, &a));
        assert!(is_gsp_member(&m));
        assert!(!is_sp_member(&m));
    }

    #[test]
    fn multiplier_rejects_non_similitude() {
        let c = ctx(3, 2);
        // Fixing e1 and sending f1 ↦ e1 + f1 is fine (unipotent, Sp), but an
        // arbitrary matrix is generically not a similitude for g ≥ 2.
        let m =
            ResidueMatrix::from_u64(&c, 4, 4, &[1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1])
                .unwrap();
        assert_eq!(multiplier(&m).unwrap_err(), CoreError::NotSymplectic);
    }

    #[test]
    fn determinant_and_multiplier_relation() {
        let c = ctx(3, 2);
        let mut rng = SplitMix64::new(7);
        for g in 1..=3usize {
            for _ in 0..10 {
                let s = random_symplectic_element(&c, g, &mut rng, 8);
                assert!(is_sp_member(&s));
                assert_eq!(det(&s).unwrap(), c.one());
                assert!(det_multiplier_check(&s).unwrap());
                // Scale to a proper similitude.
                let (block, sp) = {
                    let a = c.residue(2);
                    let mut scaled = s.clone();
                    for i in g..2 * g {
                        for j in 0..2 * g {
                            let v = c.mul(scaled.get(i, j), &a);
                            scaled.set(i, j, v);
                        }
                    }
                    assert!(is_gsp_member(&scaled));
                    assert!(det_multiplier_check(&scaled).unwrap());
                    sp_factorize(&scaled).unwrap()
                };
                assert!(is_sp_member(&sp));
                assert!(is_gsp_member(&block));
            }
        }
    }

    #[test]
    fn bareiss_determinant_matches_small_cases() {
        let c = ctx(2, 4);
        let m = ResidueMatrix::from_u64(&c, 2, 2, &[3, 5, 7, 11]).unwrap();
        // 33 − 35 = −2 ≡ 14 mod 16.
        assert_eq!(det(&m).unwrap(), c.residue(14));
        let singular = ResidueMatrix::from_u64(&c, 3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]).unwrap();
        assert_eq!(det(&singular).unwrap(), c.zero());
    }

    #[test]
    fn order_formulas_known_values() {
        assert_eq!(sp_order(1, 2, 1), BigUint::from(6u32)); // SL2(F2)
        assert_eq!(sp_order(1, 3, 1), BigUint::from(24u32)); // SL2(F3)
        assert_eq!(sp_order(1, 5, 1), BigUint::from(120u32));
        assert_eq!(sp_order(1, 3, 2), BigUint::from(648u32)); // SL2(Z/9)
        assert_eq!(sp_order(1, 5, 2), BigUint::from(15000u32));
        assert_eq!(sp_order(2, 2, 1), BigUint::from(720u32)); // Sp4(F2)
        assert_eq!(sp_order(2, 3, 1), BigUint::from(51840u32)); // Sp4(F3)
        assert_eq!(sp_order(2, 5, 1), BigUint::from(9_360_000u32)); // Sp4(F5)
        assert_eq!(gsp_order(1, 3, 1), BigUint::from(48u32)); // GL2(F3)
        assert_eq!(gsp_order(1, 3, 2), BigUint::from(3888u32)); // GL2(Z/9)
        assert_eq!(gsp_order(1, 3, 3), BigUint::from(314_928u32)); // GL2(Z/27)
    }

    #[test]
    fn hensel_scaling_matches_formula() {
        for ell in [2u64, 3, 5] {
            for g in 1..=2u32 {
                let d = GroupDescriptor::Sp { g };
                let lvl1 = sp_order(g, ell, 1);
                for m in 2..=3u32 {
                    assert_eq!(hensel_order(&d, &lvl1, ell, m), sp_order(g, ell, m));
                }
            }
            let d = GroupDescriptor::GSp { g: 1 };
            let lvl1 = gsp_order(1, ell, 1);
            assert_eq!(hensel_order(&d, &lvl1, ell, 2), gsp_order(1, ell, 2));
        }
    }

    #[test]
    fn codimension_values() {
        assert_eq!(codim_pr(1, 1).unwrap(), 2);
        assert_eq!(codim_pr(2, 1).unwrap(), 4);
        assert_eq!(codim_pr(2, 2).unwrap(), 7);
        assert_eq!(codim_prs(1, 1, 1).unwrap(), 3);
        assert_eq!(codim_prs(2, 1, 1).unwrap(), 7);
        assert_eq!(codim_prs(2, 2, 1).unwrap(), 9);
        assert_eq!(codim_prs(2, 2, 2).unwrap(), 10);
        assert_eq!(codim_prs(3, 2, 2).unwrap(), 18);
        assert_eq!(codim_prs(3, 3, 1).unwrap(), 18);
        // P_{g,g} is trivial: its codimension is all of dim Sp.
        for g in 1..=4u32 {
            assert_eq!(
                codim_prs(g, g, g).unwrap(),
                GroupDescriptor::Sp { g }.dimension()
            );
        }
        assert!(codim_prs(2, 1, 2).is_err());
    }

    #[test]
    fn dimension_and_rank() {
        assert_eq!(GroupDescriptor::Sp { g: 2 }.dimension(), 10);
        assert_eq!(GroupDescriptor::GSp { g: 2 }.dimension(), 11);
        assert_eq!(
            GroupDescriptor::ParabolicPair { g: 1, r: 1, s: 1 }.dimension(),
            0
        );
        assert_eq!(GroupDescriptor::Sp { g: 3 }.rank(), 3);
        assert_eq!(GroupDescriptor::GSp { g: 3 }.rank(), 4);
        assert_eq!(GroupDescriptor::Parabolic { g: 3, r: 2 }.rank(), 1);
        assert_eq!(
            GroupDescriptor::SimilitudePair { g1: 1, g2: 2 }.dimension(),
            3 + 10 + 1
        );
    }

    #[test]
    fn chain_index_worked_example() {
        // Fix e1 and f1 mod ℓ, and e1 mod ℓ², inside Sp4: exponent 7·1 + 4·1.
        let chain = [
            (1u32, GroupDescriptor::ParabolicPair { g: 2, r: 1, s: 1 }),
            (2u32, GroupDescriptor::Parabolic { g: 2, r: 1 }),
        ];
        assert_eq!(chain_index_exponent(&chain).unwrap(), 11);
        // Levels must increase and groups must be nested.
        let bad_levels = [
            (2u32, GroupDescriptor::ParabolicPair { g: 2, r: 1, s: 1 }),
            (1u32, GroupDescriptor::Parabolic { g: 2, r: 1 }),
        ];
        assert!(chain_index_exponent(&bad_levels).is_err());
        let bad_nesting = [
            (1u32, GroupDescriptor::Parabolic { g: 2, r: 1 }),
            (2u32, GroupDescriptor::Parabolic { g: 2, r: 2 }),
        ];
        assert!(chain_index_exponent(&bad_nesting).is_err());
    }

    #[test]
    fn congruence_hypothesis_detects_fixed_pairs() {
        let c = ctx(3, 2);
        // Unipotent fixing e1 exactly but moving f1.
        let m = ResidueMatrix::from_u64(&c, 2, 2, &[1, 3, 0, 1]).unwrap();
        assert!(congruence_multiplier_check(&m, 1).unwrap());
        assert!(!congruence_multiplier_check(&m, 2).unwrap());
        assert!(congruence_multiplier_check(&m, 3).is_err());
        assert!(congruence_multiplier_check(&ResidueMatrix::identity(&c, 2), 2).unwrap());
    }

    #[test]
    fn lie_trace_condition() {
        let c = ctx(5, 1);
        let x = ResidueMatrix::from_u64(&c, 2, 2, &[2, 0, 0, 3]).unwrap(); // tr 5 ≡ 0
        let y = ResidueMatrix::zero(&c, 4, 4); // tr 0
        assert!(lie_trace_check(1, 2, &x, &y).unwrap());
        let y_bad = ResidueMatrix::identity(&c, 4); // tr 4
        assert!(!lie_trace_check(1, 2, &x, &y_bad).unwrap());
    }

    #[test]
    fn membership_for_fixators() {
        let c = ctx(3, 2);
        let m = ResidueMatrix::from_u64(&c, 2, 2, &[1, 3, 0, 1]).unwrap();
        assert!(is_member(&GroupDescriptor::Parabolic { g: 1, r: 1 }, &m).unwrap());
        assert!(!is_member(&GroupDescriptor::ParabolicPair { g: 1, r: 1, s: 1 }, &m).unwrap());
        assert!(is_member(
            &GroupDescriptor::ParabolicPair { g: 1, r: 1, s: 1 },
            &ResidueMatrix::identity(&c, 2)
        )
        .unwrap());
    }
}
