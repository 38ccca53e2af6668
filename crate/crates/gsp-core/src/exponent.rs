//! The exact rational exponent calculus for torsion growth.
//!
//! Everything here is a maximization of a ratio of two integer linear
//! forms over a small combinatorial set, computed exactly with big
//! rationals: the simple-factor exponent `γ`, the product exponents `α`,
//! `ρ₀`, `ρ₁`, prefix maxima for ratios of sums, the exceptional genus
//! list, and an exhaustive search over isotropy-chain shapes that
//! reproduces `γ` together with explicit maximizing witnesses.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CoreError, Result};
use crate::padic::{rational, ExactRational};
use crate::symplectic::codim_prs;
use crate::torsion::{ChainStep, IsotropyChain};

/// One isotypic factor of a product: a simple factor of the given genus
/// appearing with the given multiplicity (weight).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub genus: u32,
    pub weight: u32,
}

/// A product shape: the distinct simple factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductShape {
    factors: Vec<Factor>,
}

/// Largest number of factors the assignment searches will enumerate.
const MAX_FACTORS: usize = 12;

impl ProductShape {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(CoreError::InvalidArgument(
                "a product shape needs at least one factor".into(),
            ));
        }
        if factors.len() > MAX_FACTORS {
            return Err(CoreError::InvalidArgument(
                "too many factors for exhaustive assignment search".into(),
            ));
        }
        if factors.iter().any(|f| f.genus == 0 || f.weight == 0) {
            return Err(CoreError::InvalidArgument(
                "factor genus and weight must be positive".into(),
            ));
        }
        Ok(ProductShape { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn simple(genus: u32) -> Result<Self> {
        ProductShape::new(vec![Factor { genus, weight: 1 }])
    }
}

/// The exponent for a simple factor of genus `g`: `2g / (2g² + g + 1)`.
pub fn gamma_simple(g: u32) -> Result<ExactRational> {
    if g == 0 {
        return Err(CoreError::InvalidArgument("genus must be positive".into()));
    }
    let g = i64::from(g);
    Ok(rational(2 * g, 2 * g * g + g + 1))
}

/// The total weighted dimension `Σ nᵢ gᵢ` (the trivial torsion bound).
pub fn masser_bound(shape: &ProductShape) -> u64 {
    shape
        .factors
        .iter()
        .map(|f| u64::from(f.weight) * u64::from(f.genus))
        .sum()
}

/// The dimension `1 + Σ (2gᵢ² + gᵢ)` of the ambient similitude group of the
/// product (multiplicities share a factor's group and do not add dimension).
pub fn mt_dimension(shape: &ProductShape) -> u64 {
    1 + shape
        .factors
        .iter()
        .map(|f| {
            let g = u64::from(f.genus);
            2 * g * g + g
        })
        .sum::<u64>()
}

/// Exact maximum of `num/den` pairs; `None` when the iterator is empty.
fn max_ratio(pairs: impl Iterator<Item = (u64, u64)>) -> Option<ExactRational> {
    let mut best: Option<(u64, u64)> = None;
    for (n, d) in pairs {
        debug_assert!(d > 0);
        best = Some(match best {
            None => (n, d),
            Some((bn, bd)) => {
                if u128::from(n) * u128::from(bd) > u128::from(bn) * u128::from(d) {
                    (n, d)
                } else {
                    (bn, bd)
                }
            }
        });
    }
    best.map(|(n, d)| rational(n as i64, d as i64))
}

/// The product exponent `α`: the maximum over nonempty subsets `I` of the
/// factors of `2·Σ_I nᵢgᵢ / (1 + Σ_I (2gᵢ² + gᵢ))`.
pub fn alpha_product(shape: &ProductShape) -> Result<ExactRational> {
    let d = shape.factors.len();
    let pairs = (1u32..(1 << d)).map(|mask| {
        let mut num = 0u64;
        let mut den = 1u64;
        for (i, f) in shape.factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let g = u64::from(f.genus);
                num += 2 * u64::from(f.weight) * g;
                den += 2 * g * g + g;
            }
        }
        (num, den)
    });
    max_ratio(pairs).ok_or(CoreError::DimensionMismatch)
}

/// Enumerates per-factor assignments from the given per-factor option
/// lists, skipping the all-opt-out assignment, and maximizes the ratio
/// `Σ numᵢ / (base + Σ denᵢ)` where each option contributes `(num, den)`.
fn max_assignment_ratio(options: &[Vec<(u64, u64)>], base_den: u64) -> Option<ExactRational> {
    let mut idx = vec![0usize; options.len()];
    let mut best: Option<(u64, u64)> = None;
    loop {
        let mut num = 0u64;
        let mut den = base_den;
        let mut any = false;
        for (f, &i) in idx.iter().enumerate() {
            let (n, d) = options[f][i];
            num += n;
            den += d;
            any = any || (n, d) != (0, 0);
        }
        if any {
            best = Some(match best {
                None => (num, den),
                Some((bn, bd)) => {
                    if u128::from(num) * u128::from(bd) > u128::from(bn) * u128::from(den) {
                        (num, den)
                    } else {
                        (bn, bd)
                    }
                }
            });
        }
        // Odometer over the option lists.
        let mut pos = 0;
        loop {
            if pos == options.len() {
                return best.map(|(n, d)| rational(n as i64, d as i64));
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The exponent `ρ₀` in its one-variable form: the maximum over per-factor
/// choices `xᵢ ∈ {0} ∪ [2, 2gᵢ]`, not all zero, of
/// `Σ nᵢxᵢ / (1 + Σ xᵢ(2gᵢ − (xᵢ−1)/2))`.
pub fn rho0(shape: &ProductShape) -> Result<ExactRational> {
    // Integerized with doubled denominators: num 2Σnᵢxᵢ over
    // 2 + Σ xᵢ(4gᵢ − xᵢ + 1).
    let options: Vec<Vec<(u64, u64)>> = shape
        .factors
        .iter()
        .map(|f| {
            let g = u64::from(f.genus);
            let n = u64::from(f.weight);
            let mut opts = vec![(0u64, 0u64)];
            for x in 2..=2 * g {
                opts.push((2 * n * x, x * (4 * g - x + 1)));
            }
            opts
        })
        .collect();
    max_assignment_ratio(&options, 2).ok_or(CoreError::DimensionMismatch)
}

/// The exponent `ρ₀` in its flag form, as an independent oracle: the same
/// maximum over per-factor fixator profiles `(rᵢ, sᵢ)` with
/// `sᵢ ≤ rᵢ ≤ gᵢ` and `rᵢ + sᵢ ≠ 1`, with denominator terms
/// `codim P_{rᵢ,sᵢ}`.
pub fn rho0_flag_oracle(shape: &ProductShape) -> Result<ExactRational> {
    let mut options: Vec<Vec<(u64, u64)>> = Vec::with_capacity(shape.factors.len());
    for f in &shape.factors {
        let g = f.genus;
        let n = u64::from(f.weight);
        let mut opts = vec![(0u64, 0u64)];
        for r in 0..=g {
            for s in 0..=r {
                if r + s < 2 {
                    continue;
                }
                let codim = codim_prs(g, r, s)?;
                opts.push((2 * n * u64::from(r + s), 2 * codim));
            }
        }
        options.push(opts);
    }
    max_assignment_ratio(&options, 2).ok_or(CoreError::DimensionMismatch)
}

/// The exponent `ρ₁`: the maximum over per-factor ranks `0 ≤ rᵢ ≤ gᵢ`, not
/// all zero, of `Σ nᵢrᵢ / Σ rᵢ(2gᵢ − (rᵢ−1)/2)`.
pub fn rho1(shape: &ProductShape) -> Result<ExactRational> {
    let options: Vec<Vec<(u64, u64)>> = shape
        .factors
        .iter()
        .map(|f| {
            let g = u64::from(f.genus);
            let n = u64::from(f.weight);
            let mut opts = vec![(0u64, 0u64)];
            for r in 1..=g {
                opts.push((2 * n * r, r * (4 * g - r + 1)));
            }
            opts
        })
        .collect();
    max_assignment_ratio(&options, 0).ok_or(CoreError::DimensionMismatch)
}

/// Checks the comparison `max(ρ₀, ρ₁) ≤ α` for the shape.
pub fn verify_exponent_comparison(shape: &ProductShape) -> Result<bool> {
    let alpha = alpha_product(shape)?;
    let r0 = rho0(shape)?;
    let r1 = rho1(shape)?;
    Ok(r0 <= alpha && r1 <= alpha)
}

fn prefix_ratios(a: &[u64], b: &[u64]) -> Result<Vec<(u64, u64)>> {
    if a.len() != b.len() || a.is_empty() {
        return Err(CoreError::DimensionMismatch);
    }
    if b.contains(&0) {
        return Err(CoreError::InvalidArgument(
            "denominator terms must be positive".into(),
        ));
    }
    let mut out = Vec::with_capacity(a.len());
    let mut sa = 0u64;
    let mut sb = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        out.push((sa, sb));
    }
    Ok(out)
}

/// The maximum of `Σ_{i≤k} aᵢ / Σ_{i≤k} bᵢ` over prefixes `k = 1..t`.
///
/// This equals the supremum of `Σ aᵢxᵢ / Σ bᵢxᵢ` over nonincreasing
/// nonnegative weights `x₁ ≥ … ≥ x_t`, not all zero.
pub fn prefix_max(a: &[u64], b: &[u64]) -> Result<ExactRational> {
    max_ratio(prefix_ratios(a, b)?.into_iter()).ok_or(CoreError::DimensionMismatch)
}

fn visit_nonincreasing(
    t: usize,
    bound: u64,
    prefix: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    if prefix.len() == t {
        visit(prefix);
        return;
    }
    let cap = prefix.last().copied().unwrap_or(bound);
    for x in (0..=cap).rev() {
        prefix.push(x);
        visit_nonincreasing(t, bound, prefix, visit);
        prefix.pop();
    }
}

/// Brute-force supremum of `Σ aᵢxᵢ / Σ bᵢxᵢ` over nonincreasing integer
/// weights `0 ≤ xᵢ ≤ bound`, not all zero.
pub fn prefix_sup_bruteforce(a: &[u64], b: &[u64], bound: u64) -> Result<ExactRational> {
    if a.len() != b.len() || a.is_empty() || bound == 0 {
        return Err(CoreError::DimensionMismatch);
    }
    if b.contains(&0) {
        return Err(CoreError::InvalidArgument(
            "denominator terms must be positive".into(),
        ));
    }
    let mut pairs = Vec::new();
    let mut prefix = Vec::new();
    visit_nonincreasing(a.len(), bound, &mut prefix, &mut |x| {
        let num: u64 = a.iter().zip(x).map(|(&ai, &xi)| ai * xi).sum();
        let den: u64 = b.iter().zip(x).map(|(&bi, &xi)| bi * xi).sum();
        if den > 0 {
            pairs.push((num, den));
        }
    });
    max_ratio(pairs.into_iter()).ok_or(CoreError::DimensionMismatch)
}

/// The maximum over cut tuples `(h₁, …, h_d)`, `0 ≤ h_f ≤ t_f`, not all
/// zero, of `Σ_f Σ_{i≤h_f} a_{f,i} / Σ_f Σ_{i≤h_f} b_{f,i}`.
///
/// This equals the supremum of the joint weighted ratio over tuples of
/// nonincreasing nonnegative weight vectors, one per collection.  Cuts may
/// be zero in some collections: restricting every collection to a nonzero
/// cut would underestimate the supremum.
pub fn prefix_max_multi(collections: &[(Vec<u64>, Vec<u64>)]) -> Result<ExactRational> {
    if collections.is_empty() {
        return Err(CoreError::DimensionMismatch);
    }
    let mut per: Vec<Vec<(u64, u64)>> = Vec::with_capacity(collections.len());
    for (a, b) in collections {
        let mut opts = vec![(0u64, 0u64)];
        opts.extend(prefix_ratios(a, b)?);
        per.push(opts);
    }
    max_assignment_ratio(&per, 0).ok_or(CoreError::DimensionMismatch)
}

/// Brute-force supremum of the joint ratio over tuples of nonincreasing
/// integer weight vectors with entries `≤ bound`, not all zero.
pub fn prefix_sup_bruteforce_multi(
    collections: &[(Vec<u64>, Vec<u64>)],
    bound: u64,
) -> Result<ExactRational> {
    if collections.is_empty() || bound == 0 {
        return Err(CoreError::DimensionMismatch);
    }
    // Enumerate each collection's weight vectors, then take the odometer
    // product over collections.
    let mut per: Vec<Vec<(u64, u64)>> = Vec::with_capacity(collections.len());
    for (a, b) in collections {
        if a.len() != b.len() || a.is_empty() {
            return Err(CoreError::DimensionMismatch);
        }
        if b.contains(&0) {
            return Err(CoreError::InvalidArgument(
                "denominator terms must be positive".into(),
            ));
        }
        let mut opts = Vec::new();
        let mut prefix = Vec::new();
        visit_nonincreasing(a.len(), bound, &mut prefix, &mut |x| {
            let num: u64 = a.iter().zip(x).map(|(&ai, &xi)| ai * xi).sum();
            let den: u64 = b.iter().zip(x).map(|(&bi, &xi)| bi * xi).sum();
            opts.push((num, den));
        });
        per.push(opts);
    }
    max_assignment_ratio(&per, 0).ok_or(CoreError::DimensionMismatch)
}

/// A witness that a genus is exceptional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalFamily {
    /// `g = 2^{k−1}·a^k` for odd `k ≥ 3`.
    HalvedPower { k: u32, a: u64 },
    /// `g = C(2k, k)/2` for odd `k ≥ 3`.
    CentralBinomial { k: u32 },
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut res = 1u128;
    for i in 0..k {
        // Exact at every step: the running value is C(n, i+1).
        res = res * u128::from(n - i) / u128::from(i + 1);
    }
    res
}

/// Every exceptional genus `≤ limit`, sorted and deduplicated, each with
/// the witnesses realizing it.
pub fn exceptional_witnesses(limit: u64) -> Vec<(u64, Vec<ExceptionalFamily>)> {
    let mut hits: Vec<(u64, ExceptionalFamily)> = Vec::new();
    for k in (3u32..64).step_by(2) {
        // 2^{k−1}·a^k for a = 1, 2, …
        let base = 1u128 << (k - 1);
        if base > u128::from(limit) {
            break;
        }
        let mut a = 1u64;
        loop {
            let mut value = base;
            let mut overflow = false;
            for _ in 0..k {
                value = value.saturating_mul(u128::from(a));
                if value > u128::from(limit) {
                    overflow = true;
                    break;
                }
            }
            if overflow {
                break;
            }
            hits.push((value as u64, ExceptionalFamily::HalvedPower { k, a }));
            a += 1;
        }
    }
    for k in (3u64..34).step_by(2) {
        let value = binomial(2 * k, k) / 2;
        if value > u128::from(limit) {
            break;
        }
        hits.push((
            value as u64,
            ExceptionalFamily::CentralBinomial { k: k as u32 },
        ));
    }
    hits.sort_by_key(|&(g, _)| g);
    let mut out: Vec<(u64, Vec<ExceptionalFamily>)> = Vec::new();
    for (g, w) in hits {
        match out.last_mut() {
            Some((last, ws)) if *last == g => ws.push(w),
            _ => out.push((g, vec![w])),
        }
    }
    out
}

/// Every exceptional genus `≤ limit`, sorted.
pub fn exceptional_genera(limit: u64) -> Vec<u64> {
    exceptional_witnesses(limit)
        .into_iter()
        .map(|(g, _)| g)
        .collect()
}

/// Tests a single genus for exceptionality by direct scan of both families.
pub fn is_exceptional(g: u64) -> bool {
    if g == 0 {
        return false;
    }
    for k in (3u32..64).step_by(2) {
        let base = 1u128 << (k - 1);
        if base > u128::from(g) {
            break;
        }
        if u128::from(g) % base == 0 {
            let q = u128::from(g) / base;
            // Is q a perfect k-th power?
            let mut a = 1u128;
            loop {
                let mut p = 1u128;
                for _ in 0..k {
                    p = p.saturating_mul(a);
                }
                if p == q {
                    return true;
                }
                if p > q {
                    break;
                }
                a += 1;
            }
        }
    }
    for k in (3u64..34).step_by(2) {
        let value = binomial(2 * k, k) / 2;
        if value == u128::from(g) {
            return true;
        }
        if value > u128::from(g) {
            break;
        }
    }
    false
}

/// A maximizing shape found by [`gamma_ratio_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaWitness {
    /// Distinct order levels, descending.
    pub levels: Vec<u32>,
    /// Multiplicity of generators at each level.
    pub multiplicities: Vec<u32>,
    /// Fixator profiles `(r, s)` per chain step, in increasing level order.
    pub flags: Vec<(u32, u32)>,
}

/// The outcome of the exhaustive ratio search.
#[derive(Clone, Debug)]
pub struct GammaSearchResult {
    /// The best ratio `Σ aₖ·mᵏ / degree prediction` found.
    pub ratio: ExactRational,
    /// Every shape attaining the best ratio.
    pub witnesses: Vec<GammaWitness>,
}

fn descending_level_tuples(t: usize, max_level: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(t: usize, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == t {
            out.push(current.clone());
            return;
        }
        let remaining = (t - current.len()) as u32;
        for m in (remaining..=cap).rev() {
            current.push(m);
            rec(t, m - 1, current, out);
            current.pop();
        }
    }
    rec(t, max_level, &mut current, &mut out);
    out
}

fn compositions(total_max: u32, parts: usize) -> Vec<Vec<u32>> {
    // All tuples of `parts` positive integers with sum ≤ total_max.
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(total_max: u32, parts: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == parts {
            out.push(current.clone());
            return;
        }
        let used: u32 = current.iter().sum();
        let left = parts - current.len();
        for a in 1..=(total_max - used).saturating_sub(left as u32 - 1) {
            current.push(a);
            rec(total_max, parts, current, out);
            current.pop();
        }
    }
    if parts >= 1 && total_max >= parts as u32 {
        rec(total_max, parts, &mut current, &mut out);
    }
    out
}

/// Exhaustive search of the torsion-to-degree ratio over chain shapes with
/// at most `max_t` distinct levels, level values at most `max_level`, and
/// total generator multiplicity at most `2g`.
///
/// For each shape the numerator is `Σ aₖ·mᵏ` (the torsion exponent of a
/// subgroup of that type) and the denominator is the degree-exponent
/// prediction of the associated chain; all valid fixator-profile
/// assignments are tried.
pub fn gamma_ratio_search(g: u32, max_t: usize, max_level: u32) -> Result<GammaSearchResult> {
    if g == 0 || max_t == 0 || max_level == 0 {
        return Err(CoreError::InvalidArgument(
            "search bounds must be positive".into(),
        ));
    }
    let mut best: Option<ExactRational> = None;
    let mut witnesses: Vec<GammaWitness> = Vec::new();
    for t in 1..=max_t {
        for levels in descending_level_tuples(t, max_level) {
            for mults in compositions(2 * g, t) {
                // Alive counts per position (increasing level order):
                // position i corresponds to level levels[t−1−i] and the
                // prefix sum of multiplicities down to that level.
                let prefix: Vec<u32> = (0..t).map(|k| mults[..=k].iter().sum()).collect();
                // Enumerate flag assignments (r, s) per position with
                // r + s = alive, s ≤ r ≤ g, nonincreasing along positions.
                let alive: Vec<u32> = (0..t).map(|i| prefix[t - 1 - i]).collect();
                let mut assignments: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
                for (i, &p) in alive.iter().enumerate() {
                    let mut next = Vec::new();
                    let s_min = p.saturating_sub(g);
                    for s in s_min..=p / 2 {
                        let r = p - s;
                        for prev in &assignments {
                            if i > 0 {
                                let (pr, ps) = prev[i - 1];
                                if r > pr || s > ps {
                                    continue;
                                }
                            }
                            let mut a = prev.clone();
                            a.push((r, s));
                            next.push(a);
                        }
                    }
                    assignments = next;
                    if assignments.is_empty() {
                        break;
                    }
                }
                if assignments.is_empty() {
                    continue;
                }
                let numerator: u64 = (0..t)
                    .map(|k| u64::from(mults[k]) * u64::from(levels[k]))
                    .sum();
                for flags in assignments {
                    let chain = IsotropyChain {
                        g,
                        steps: (0..t)
                            .map(|i| ChainStep {
                                level: levels[t - 1 - i],
                                r: flags[i].0,
                                s: flags[i].1,
                                delta: flags[i].1 > 0,
                            })
                            .collect(),
                    };
                    let den = chain.degree_exponent_prediction()?;
                    let ratio = rational(numerator as i64, den as i64);
                    let witness = GammaWitness {
                        levels: levels.clone(),
                        multiplicities: mults.clone(),
                        flags: flags.clone(),
                    };
                    match &best {
                        Some(b) if ratio < *b => {}
                        Some(b) if ratio == *b => witnesses.push(witness),
                        _ => {
                            best = Some(ratio);
                            witnesses = vec![witness];
                        }
                    }
                }
            }
        }
    }
    Ok(GammaSearchResult {
        ratio: best.ok_or(CoreError::DimensionMismatch)?,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn shape(fs: &[(u32, u32)]) -> ProductShape {
        ProductShape::new(
            fs.iter()
                .map(|&(genus, weight)| Factor { genus, weight })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn gamma_simple_table() {
        let expected = [(1, 1, 2), (2, 4, 11), (3, 3, 11), (4, 8, 37), (5, 5, 28)];
        for (g, n, d) in expected {
            assert_eq!(gamma_simple(g).unwrap(), rational(n, d), "g={g}");
        }
        assert!(gamma_simple(0).is_err());
    }

    #[test]
    fn alpha_singleton_matches_gamma() {
        for g in 1..=12 {
            let s = ProductShape::simple(g).unwrap();
            assert_eq!(alpha_product(&s).unwrap(), gamma_simple(g).unwrap());
        }
    }

    #[test]
    fn masser_and_dimension() {
        let s = shape(&[(2, 3), (1, 2)]);
        assert_eq!(masser_bound(&s), 8);
        assert_eq!(mt_dimension(&s), 1 + 10 + 3);
    }

    #[test]
    fn rho_frozen_values() {
        let s21 = shape(&[(2, 1)]);
        assert_eq!(rho0(&s21).unwrap(), rational(4, 11));
        assert_eq!(rho1(&s21).unwrap(), rational(2, 7));
        let s31 = shape(&[(3, 1)]);
        assert_eq!(rho1(&s31).unwrap(), rational(1, 5));
        let pair = shape(&[(1, 1), (1, 1)]);
        assert_eq!(rho0(&pair).unwrap(), rational(4, 7));
    }

    #[test]
    fn rho0_forms_agree() {
        let mut rng = SplitMix64::new(0x9a7e);
        for _ in 0..200 {
            let d = 1 + rng.below(3) as usize;
            let fs: Vec<(u32, u32)> = (0..d)
                .map(|_| (1 + rng.below(4) as u32, 1 + rng.below(4) as u32))
                .collect();
            let s = shape(&fs);
            assert_eq!(
                rho0(&s).unwrap(),
                rho0_flag_oracle(&s).unwrap(),
                "shape {fs:?}"
            );
        }
    }

    #[test]
    fn exponent_comparison_holds_on_random_shapes() {
        let mut rng = SplitMix64::new(0x1dea);
        for _ in 0..300 {
            let d = 1 + rng.below(3) as usize;
            let fs: Vec<(u32, u32)> = (0..d)
                .map(|_| (1 + rng.below(4) as u32, 1 + rng.below(4) as u32))
                .collect();
            let s = shape(&fs);
            assert!(verify_exponent_comparison(&s).unwrap(), "shape {fs:?}");
        }
    }

    #[test]
    fn prefix_max_equals_bruteforce() {
        let a = [1, 100];
        let b = [1, 1];
        assert_eq!(prefix_max(&a, &b).unwrap(), rational(101, 2));
        let mut rng = SplitMix64::new(0xab31);
        for _ in 0..100 {
            let t = 1 + rng.below(4) as usize;
            let a: Vec<u64> = (0..t).map(|_| 1 + rng.below(9)).collect();
            let b: Vec<u64> = (0..t).map(|_| 1 + rng.below(9)).collect();
            assert_eq!(
                prefix_max(&a, &b).unwrap(),
                prefix_sup_bruteforce(&a, &b, 6).unwrap(),
                "a={a:?} b={b:?}"
            );
        }
    }

    #[test]
    fn multi_prefix_needs_partial_cuts() {
        // Restricting every collection to a nonzero cut misses the optimum:
        // the second collection must be cut at zero.
        let collections = vec![(vec![1, 100], vec![1, 1]), (vec![1, 1], vec![1, 100])];
        let sup = prefix_max_multi(&collections).unwrap();
        assert_eq!(sup, rational(101, 2));
        // The best full-cut value is (1+100+1)/(1+1+1) = 34.
        let mut full_cut_best = rational(0, 1);
        for h1 in 1..=2usize {
            for h2 in 1..=2usize {
                let num: u64 = collections[0].0[..h1].iter().sum::<u64>()
                    + collections[1].0[..h2].iter().sum::<u64>();
                let den: u64 = collections[0].1[..h1].iter().sum::<u64>()
                    + collections[1].1[..h2].iter().sum::<u64>();
                let r = rational(num as i64, den as i64);
                if r > full_cut_best {
                    full_cut_best = r;
                }
            }
        }
        assert_eq!(full_cut_best, rational(34, 1));
        assert!(sup > full_cut_best);
        assert_eq!(prefix_sup_bruteforce_multi(&collections, 4).unwrap(), sup);
    }

    #[test]
    fn multi_prefix_equals_bruteforce_random() {
        let mut rng = SplitMix64::new(0x2b);
        for _ in 0..60 {
            let d = 1 + rng.below(2) as usize;
            let collections: Vec<(Vec<u64>, Vec<u64>)> = (0..d)
                .map(|_| {
                    let t = 1 + rng.below(3) as usize;
                    let a: Vec<u64> = (0..t).map(|_| 1 + rng.below(9)).collect();
                    let b: Vec<u64> = (0..t).map(|_| 1 + rng.below(9)).collect();
                    (a, b)
                })
                .collect();
            assert_eq!(
                prefix_max_multi(&collections).unwrap(),
                prefix_sup_bruteforce_multi(&collections, 4).unwrap(),
                "collections {collections:?}"
            );
        }
    }

    #[test]
    fn exceptional_list_frozen() {
        assert_eq!(exceptional_genera(130), vec![4, 10, 16, 32, 64, 108, 126]);
        // Witness families.
        let witnesses = exceptional_witnesses(130);
        let find = |g: u64| {
            witnesses
                .iter()
                .find(|(x, _)| *x == g)
                .map(|(_, w)| w.clone())
                .unwrap()
        };
        assert_eq!(find(4), vec![ExceptionalFamily::HalvedPower { k: 3, a: 1 }]);
        assert_eq!(find(10), vec![ExceptionalFamily::CentralBinomial { k: 3 }]);
        assert_eq!(
            find(108),
            vec![ExceptionalFamily::HalvedPower { k: 3, a: 3 }]
        );
        assert_eq!(find(126), vec![ExceptionalFamily::CentralBinomial { k: 5 }]);
        // Independent per-genus scan agrees with the generated list.
        let listed = exceptional_genera(130);
        for g in 1..=130u64 {
            assert_eq!(is_exceptional(g), listed.contains(&g), "g={g}");
        }
    }

    #[test]
    fn gamma_search_matches_closed_form() {
        for g in 1..=3u32 {
            let result = gamma_ratio_search(g, 2, 3).unwrap();
            assert_eq!(result.ratio, gamma_simple(g).unwrap(), "g={g}");
            let canonical = GammaWitness {
                levels: vec![1],
                multiplicities: vec![2 * g],
                flags: vec![(g, g)],
            };
            assert!(
                result.witnesses.contains(&canonical),
                "canonical witness missing for g={g}: {:?}",
                result.witnesses
            );
        }
    }
}
