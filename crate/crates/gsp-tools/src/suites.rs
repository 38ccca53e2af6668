//! Seeded verification suites.
//!
//! Every suite cross-checks a closed-form quantity against an independent
//! route (exhaustive enumeration, brute-force oracle, or a pinned corridor)
//! and reports one record per verified fact.  All randomness comes from the
//! documented 64-bit generator seeded from the run configuration, so runs
//! are exactly reproducible.

use num_bigint::BigUint;
use num_traits::One;
use serde_json::json;

use gsp_core::enumerate::{collect_elements, count_elements, visit_elements, ElementList};
use gsp_core::exponent::{
    alpha_product, gamma_ratio_search, gamma_simple, prefix_max, prefix_max_multi,
    prefix_sup_bruteforce, prefix_sup_bruteforce_multi, rho0, rho1, verify_exponent_comparison,
    Factor, GammaWitness, ProductShape,
};
use gsp_core::lattice::{gram, symplectic_complete};
use gsp_core::rng::SplitMix64;
use gsp_core::symplectic::{
    congruence_multiplier_check, hensel_order, multiplier, sp_order, standard_form, GroupDescriptor,
};
use gsp_core::torsion::{
    canonical_type, delta_with_sp_list, enumerate_plane_subgroups, is_totally_isotropic,
    isotropy_chain, m1_bruteforce, m1_invariant, scale_subgroup, stabilizer_with_sp_list,
};
use gsp_core::{PrecisionContext, ResidueMatrix};

use crate::error::ToolError;
use crate::report::{CheckResult, RunConfig, VerificationReport};

/// The available suites, in canonical order.
pub const SUITE_NAMES: &[&str] = &[
    "orders",
    "hensel",
    "prs",
    "lemma2-11",
    "lemma2-4",
    "completion",
    "torsion-mu",
    "abel",
    "prop63",
    "gamma-search",
];

/// A suite invocation: name plus the caller-supplied configuration, with
/// unset fields resolved to per-suite defaults.
#[derive(Clone, Debug)]
pub struct SuiteRequest {
    pub name: String,
    pub seed: u64,
    pub trials: Option<u32>,
    pub budget_log2: u32,
    pub bound: Option<u64>,
}

fn default_trials(name: &str) -> u32 {
    match name {
        "lemma2-4" => 20,
        "completion" => 200,
        "abel" => 500,
        "prop63" => 1000,
        // The remaining suites are exhaustive or closed-form and take no
        // randomized trials.
        _ => 1,
    }
}

/// Runs a suite by name and assembles its report.
pub fn run_suite(req: &SuiteRequest) -> Result<VerificationReport, ToolError> {
    let trials = req.trials.unwrap_or_else(|| default_trials(&req.name));
    if trials == 0 {
        return Err(ToolError::invalid("trials must be positive"));
    }
    let bound = req.bound.unwrap_or(6);
    if bound == 0 {
        return Err(ToolError::invalid("bound must be positive"));
    }
    let uses_bound = req.name == "abel";
    let config = RunConfig {
        seed: req.seed,
        trials,
        budget_log2: req.budget_log2,
        bound: uses_bound.then_some(bound),
    };
    let checks = match req.name.as_str() {
        "orders" => suite_orders(req.budget_log2)?,
        "hensel" => suite_hensel(req.budget_log2)?,
        "prs" => suite_prs(req.budget_log2)?,
        "lemma2-11" => suite_lemma2_11(req.budget_log2)?,
        "lemma2-4" => suite_lemma2_4(req.seed, trials, req.budget_log2)?,
        "completion" => suite_completion(req.seed, trials)?,
        "torsion-mu" => suite_torsion_mu(req.budget_log2)?,
        "abel" => suite_abel(req.seed, trials, bound)?,
        "prop63" => suite_prop63(req.seed, trials)?,
        "gamma-search" => suite_gamma_search()?,
        other => {
            return Err(ToolError::invalid(format!(
                "unknown suite {other:?}; available: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(VerificationReport::new(req.name.clone(), config, checks))
}

fn pow_big(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Closed-form symplectic orders versus exhaustive column-constrained
/// enumeration on the fixed parameter matrix.
fn suite_orders(budget_log2: u32) -> Result<Vec<CheckResult>, ToolError> {
    let configs: [(u32, u64, u32); 8] = [
        (1, 2, 1),
        (1, 2, 2),
        (1, 3, 1),
        (1, 3, 2),
        (1, 5, 1),
        (1, 5, 2),
        (2, 2, 1),
        (2, 3, 1),
    ];
    let mut checks = Vec::new();
    for (g, ell, m) in configs {
        let formula = sp_order(g, ell, m);
        let counted = count_elements(&GroupDescriptor::Sp { g }, ell, m, budget_log2)?;
        checks.push(CheckResult::equality(
            format!("orders/sp-g{g}-ell{ell}-m{m}"),
            json!({
                "family": "sp",
                "g": g.to_string(),
                "ell": ell.to_string(),
                "level": m.to_string(),
            }),
            formula.to_string(),
            counted.to_string(),
        ));
    }
    Ok(checks)
}

/// Level-lifting: the order at level `m` is `ℓ^{(m−1)·dim}` times the
/// level-1 order, checked against enumeration, plus the exact `ℓ³` ratio
/// for the smallest symplectic group.
fn suite_hensel(budget_log2: u32) -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    let configs: [(u32, u64, u32); 8] = [
        (1, 2, 1),
        (1, 2, 2),
        (1, 3, 1),
        (1, 3, 2),
        (1, 5, 1),
        (1, 5, 2),
        (2, 2, 1),
        (2, 3, 1),
    ];
    for (g, ell, m) in configs {
        let d = GroupDescriptor::Sp { g };
        let level1 = count_elements(&d, ell, 1, budget_log2)?;
        let lifted = hensel_order(&d, &level1, ell, m);
        let counted = count_elements(&d, ell, m, budget_log2)?;
        checks.push(CheckResult::equality(
            format!("hensel/lift-sp-g{g}-ell{ell}-m{m}"),
            json!({
                "family": "sp",
                "g": g.to_string(),
                "ell": ell.to_string(),
                "level": m.to_string(),
                "level1_order": level1.to_string(),
            }),
            lifted.to_string(),
            counted.to_string(),
        ));
    }
    for ell in [2u64, 3, 5] {
        let d = GroupDescriptor::Sp { g: 1 };
        let level1 = count_elements(&d, ell, 1, budget_log2)?;
        let level2 = count_elements(&d, ell, 2, budget_log2)?;
        let expected = &level1 * pow_big(ell, 3);
        checks.push(CheckResult::equality(
            format!("hensel/ratio-ell{ell}"),
            json!({
                "family": "sp",
                "g": "1",
                "ell": ell.to_string(),
                "level1_order": level1.to_string(),
                "ratio_target": pow_big(ell, 3).to_string(),
            }),
            expected.to_string(),
            level2.to_string(),
        ));
    }
    Ok(checks)
}

/// Fixator subgroup orders over the prime field lie in the dimension
/// corridor `[(ℓ−1)^dim, (ℓ+1)^dim]`, for every profile `(r, s)`.
fn suite_prs(budget_log2: u32) -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    for g in 1u32..=2 {
        for ell in [3u64, 5] {
            for r in 0..=g {
                for s in 0..=r {
                    let d = GroupDescriptor::ParabolicPair { g, r, s };
                    let dim = d.dimension();
                    let count = count_elements(&d, ell, 1, budget_log2)?;
                    let lo = pow_big(ell - 1, dim);
                    let hi = pow_big(ell + 1, dim);
                    let pass = lo <= count && count <= hi;
                    checks.push(CheckResult::corridor(
                        format!("prs/g{g}-ell{ell}-r{r}-s{s}"),
                        json!({
                            "g": g.to_string(),
                            "ell": ell.to_string(),
                            "r": r.to_string(),
                            "s": s.to_string(),
                            "dimension": dim.to_string(),
                        }),
                        "order within corridor",
                        count.to_string(),
                        format!("[{lo}, {hi}]"),
                        pass,
                    ));
                    if r == 0 && s == 0 {
                        // The (0,0) profile is the full symplectic group:
                        // cross-check the enumerated order against the
                        // closed form.
                        checks.push(CheckResult::equality(
                            format!("prs/g{g}-ell{ell}-full-group-formula"),
                            json!({
                                "g": g.to_string(),
                                "ell": ell.to_string(),
                                "level": "1",
                            }),
                            sp_order(g, ell, 1).to_string(),
                            count.to_string(),
                        ));
                    }
                }
            }
        }
    }
    Ok(checks)
}

/// Exhaustive congruence check on the genus-1 similitude group mod 9:
/// fixing both standard basis vectors mod `ℓᵏ` forces the multiplier to be
/// `1 mod ℓᵏ`, with zero exceptions.
fn suite_lemma2_11(budget_log2: u32) -> Result<Vec<CheckResult>, ToolError> {
    let ell = 3u64;
    let level = 2u32;
    let d = GroupDescriptor::GSp { g: 1 };
    let mut checks = Vec::new();
    // A deterministic sparse sample retained for the dual route through the
    // matrix-level check.
    let mut sample: Vec<(Vec<u64>, u64)> = Vec::new();
    let mut visited = 0u64;
    for k in 1..=level {
        let cap = ell.pow(k);
        let mut hypothesis = 0u64;
        let mut violations = 0u64;
        let mut index = 0u64;
        visited = 0;
        visit_elements(&d, ell, level, budget_log2, &mut |mat, lambda| {
            visited += 1;
            // mat is [a, b, c, d] row-major; columns are the images of the
            // two standard basis vectors.
            let fixes_e1 = mat[0] % cap == 1 && mat[2] % cap == 0;
            let fixes_e2 = mat[1] % cap == 0 && mat[3] % cap == 1;
            if fixes_e1 && fixes_e2 {
                hypothesis += 1;
                if lambda % cap != 1 {
                    violations += 1;
                }
            }
            if k == 1 {
                if index.is_multiple_of(2977) {
                    sample.push((mat.to_vec(), lambda));
                }
                index += 1;
            }
        })?;
        checks.push(CheckResult::equality(
            format!("lemma2-11/k{k}-violations"),
            json!({
                "group": "gsp",
                "g": "1",
                "ell": ell.to_string(),
                "level": level.to_string(),
                "k": k.to_string(),
                "elements_visited": visited.to_string(),
                "hypothesis_matches": hypothesis.to_string(),
            }),
            "0",
            violations.to_string(),
        ));
    }
    // The full group order doubles as an enumeration sanity anchor.
    let gsp_count = BigUint::from(visited);
    let expected = sp_order(1, ell, level) * BigUint::from(ell.pow(level) - ell.pow(level - 1));
    checks.push(CheckResult::equality(
        "lemma2-11/group-order-anchor",
        json!({
            "group": "gsp",
            "g": "1",
            "ell": ell.to_string(),
            "level": level.to_string(),
        }),
        expected.to_string(),
        gsp_count.to_string(),
    ));
    // Dual route: replay the sampled elements through the residue-matrix
    // implementation and compare hypothesis verdicts and multipliers.
    let ctx = PrecisionContext::new(ell, level)?;
    let mut agreement = true;
    for (mat, lambda) in &sample {
        let m = ResidueMatrix::from_u64(&ctx, 2, 2, mat)?;
        let computed = multiplier(&m)?;
        if computed.value() != &BigUint::from(*lambda) {
            agreement = false;
        }
        for k in 1..=level {
            let cap = ell.pow(k);
            let words =
                mat[0] % cap == 1 && mat[2] % cap == 0 && mat[1] % cap == 0 && mat[3] % cap == 1;
            let matrices = congruence_multiplier_check(&m, k)?;
            if words != matrices {
                agreement = false;
            }
        }
    }
    checks.push(CheckResult::equality(
        "lemma2-11/matrix-route-agreement",
        json!({
            "sampled_elements": sample.len().to_string(),
            "ell": ell.to_string(),
            "level": level.to_string(),
        }),
        "true",
        agreement.to_string(),
    ));
    Ok(checks)
}

fn subgroup_max_level(h: &ResidueMatrix) -> Result<u32, ToolError> {
    Ok(canonical_type(h)?.first().copied().unwrap_or(0))
}

/// One corridor record comparing a symplectic stabilizer index against the
/// symplectic part of the degree-exponent prediction.
fn stabilizer_corridor_check(
    id: String,
    h: &ResidueMatrix,
    sp_lists: &[Option<ElementList>],
    extra_inputs: &[(&str, String)],
) -> Result<CheckResult, ToolError> {
    let ell = h.ctx().ell();
    let g = (h.rows() / 2) as u64;
    let dim_sp = 2 * g * g + g;
    let level = subgroup_max_level(h)?;
    // The trivial subgroup is stabilized by the whole group: index one,
    // with an empty chain, so no element list is consulted.
    let stab_index = if level == 0 {
        BigUint::one()
    } else {
        let list = sp_lists[level as usize]
            .as_ref()
            .expect("element list for the subgroup level must be preloaded");
        stabilizer_with_sp_list(h, false, list)?.index
    };
    let chain = isotropy_chain(h)?;
    let exponent = chain.symplectic_part()?;
    // index / ℓ^exponent must lie within [(1−1/ℓ)^dim, (1+1/ℓ)^dim]:
    // cleared of denominators, (ℓ−1)^dim·ℓ^exponent ≤ index·ℓ^dim ≤
    // (ℓ+1)^dim·ℓ^exponent.
    let scaled = &stab_index * pow_big(ell, dim_sp);
    let lo = pow_big(ell - 1, dim_sp) * pow_big(ell, exponent);
    let hi = pow_big(ell + 1, dim_sp) * pow_big(ell, exponent);
    let pass = lo <= scaled && scaled <= hi;
    let mut inputs = serde_json::Map::new();
    inputs.insert("ell".into(), json!(ell.to_string()));
    inputs.insert("g".into(), json!(g.to_string()));
    inputs.insert("level".into(), json!(level.to_string()));
    inputs.insert("predicted_exponent".into(), json!(exponent.to_string()));
    inputs.insert("stabilizer_index".into(), json!(stab_index.to_string()));
    for (k, v) in extra_inputs {
        inputs.insert((*k).into(), json!(v));
    }
    Ok(CheckResult::corridor(
        id,
        serde_json::Value::Object(inputs),
        format!("index·ℓ^{dim_sp} within corridor"),
        scaled.to_string(),
        format!("[{lo}, {hi}]"),
        pass,
    ))
}

/// Stabilizer indices track `ℓ^(symplectic prediction)` within the
/// dimension corridor: exhaustively over the subgroups of `(Z/9)²` and on
/// seeded random subgroups at genus 2.
fn suite_lemma2_4(seed: u64, trials: u32, budget_log2: u32) -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    // Genus 1: every subgroup of (Z/9)².
    let ctx = PrecisionContext::new(3, 2)?;
    let subs = enumerate_plane_subgroups(&ctx);
    let mut sp_lists: Vec<Option<ElementList>> = vec![None, None, None];
    for level in 1..=2u32 {
        sp_lists[level as usize] = Some(collect_elements(
            &GroupDescriptor::Sp { g: 1 },
            3,
            level,
            budget_log2,
        )?);
    }
    for (i, h) in subs.iter().enumerate() {
        checks.push(stabilizer_corridor_check(
            format!("lemma2-4/plane-h{i:02}"),
            h,
            &sp_lists,
            &[("subgroup_index", i.to_string())],
        )?);
    }
    // Genus 2 at level 1: seeded random subgroups of (Z/3)^4.
    let ctx2 = PrecisionContext::new(3, 1)?;
    let list_g2 = collect_elements(&GroupDescriptor::Sp { g: 2 }, 3, 1, budget_log2)?;
    let lists2: Vec<Option<ElementList>> = vec![None, Some(list_g2)];
    let mut root = SplitMix64::new(seed);
    for t in 0..trials {
        let mut rng = root.fork(u64::from(t));
        let gens = 1 + rng.below(3) as usize;
        let mut h = ResidueMatrix::zero(&ctx2, 4, gens);
        for j in 0..gens {
            for i in 0..4 {
                h.set(i, j, ctx2.residue(rng.below(3)));
            }
        }
        checks.push(stabilizer_corridor_check(
            format!("lemma2-4/g2-rand-{t:03}"),
            &h,
            &lists2,
            &[("trial", t.to_string())],
        )?);
    }
    Ok(checks)
}

/// Seeded random maximal isotropic lattices complete to full symplectic
/// bases whose Gram matrix is exactly the standard form.
fn suite_completion(seed: u64, trials: u32) -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    let ells = [2u64, 3, 5];
    let mut root = SplitMix64::new(seed);
    for t in 0..trials {
        let mut rng = root.fork(u64::from(t));
        let g = 1 + rng.below(3) as usize;
        let ell = ells[rng.below(3) as usize];
        let n = 1 + rng.below(6) as u32;
        let ctx = PrecisionContext::new(ell, n)?;
        // A random lagrangian: the image of the standard one under a random
        // symplectic transformation.
        let s = gsp_core::symplectic::random_symplectic_element(&ctx, g, &mut rng, 6);
        let lagrangian = s.select_columns(&(0..g).collect::<Vec<_>>());
        let basis = symplectic_complete(&lagrangian)?;
        let gram_matrix = gram(&basis, &basis)?;
        let target = standard_form(&ctx, g);
        let exact = gram_matrix == target;
        checks.push(CheckResult::equality(
            format!("completion/case-{t:03}"),
            json!({
                "trial": t.to_string(),
                "g": g.to_string(),
                "ell": ell.to_string(),
                "precision": n.to_string(),
            }),
            "gram matrix equals standard form",
            if exact {
                "gram matrix equals standard form".to_string()
            } else {
                "gram matrix differs from standard form".to_string()
            },
        ));
    }
    Ok(checks)
}

/// Torsion invariants over every subgroup of `(Z/27)²`: the profile-based
/// pairing defect agrees with the brute-force oracle, scaling by `ℓ^{m₁}`
/// kills the pairing, and the multiplier index stays inside its bracket.
fn suite_torsion_mu(budget_log2: u32) -> Result<Vec<CheckResult>, ToolError> {
    let ctx = PrecisionContext::new(3, 3)?;
    let subs = enumerate_plane_subgroups(&ctx);
    let mut sp_lists: Vec<Option<ElementList>> = vec![None, None, None, None];
    for level in 1..=3u32 {
        sp_lists[level as usize] = Some(collect_elements(
            &GroupDescriptor::Sp { g: 1 },
            3,
            level,
            budget_log2,
        )?);
    }
    let mut checks = Vec::new();
    for (i, h) in subs.iter().enumerate() {
        let inputs = |extra: &[(&str, String)]| {
            let mut map = serde_json::Map::new();
            map.insert("subgroup_index".into(), json!(i.to_string()));
            map.insert("ell".into(), json!("3"));
            map.insert("precision".into(), json!("3"));
            for (k, v) in extra {
                map.insert((*k).into(), json!(v));
            }
            serde_json::Value::Object(map)
        };
        let m1_profile = m1_invariant(h)?;
        let m1_brute = m1_bruteforce(h)?;
        checks.push(CheckResult::equality(
            format!("torsion-mu/h{i:02}-m1-routes"),
            inputs(&[]),
            m1_profile.to_string(),
            m1_brute.to_string(),
        ));
        let scaled = scale_subgroup(h, m1_profile);
        let iso = is_totally_isotropic(&scaled)?;
        checks.push(CheckResult::equality(
            format!("torsion-mu/h{i:02}-scaled-isotropic"),
            inputs(&[("m1", m1_profile.to_string())]),
            "true",
            iso.to_string(),
        ));
        let level = subgroup_max_level(h)?;
        let est = if level == 0 {
            delta_with_sp_list(h, sp_lists[1].as_ref().unwrap())?
        } else {
            delta_with_sp_list(h, sp_lists[level as usize].as_ref().unwrap())?
        };
        checks.push(CheckResult::corridor(
            format!("torsion-mu/h{i:02}-delta-bracket"),
            inputs(&[
                ("level", est.level.to_string()),
                ("m1", est.m1.to_string()),
                ("stabilizer_order", est.stabilizer_order.to_string()),
                (
                    "multiplier_image_order",
                    est.multiplier_image_order.to_string(),
                ),
            ]),
            "delta within bracket",
            est.delta.to_string(),
            format!("[{}, {}]", est.lower, est.upper),
            est.within_bracket,
        ));
    }
    Ok(checks)
}

/// Prefix maxima equal brute-force grid suprema, for single collections
/// and for joint multi-collection assignments.
fn suite_abel(seed: u64, trials: u32, bound: u64) -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    let mut root = SplitMix64::new(seed);
    for t in 0..trials {
        let mut rng = root.fork(u64::from(t));
        let k = 1 + rng.below(4) as usize;
        let a: Vec<u64> = (0..k).map(|_| rng.below(10)).collect();
        let b: Vec<u64> = (0..k).map(|_| 1 + rng.below(9)).collect();
        let fast = prefix_max(&a, &b)?;
        let brute = prefix_sup_bruteforce(&a, &b, bound)?;
        checks.push(CheckResult::equality(
            format!("abel/single-{t:03}"),
            json!({
                "trial": t.to_string(),
                "numerators": format!("{a:?}"),
                "denominators": format!("{b:?}"),
                "bound": bound.to_string(),
            }),
            fast.to_string(),
            brute.to_string(),
        ));
    }
    let multi_trials = (trials * 2).div_ceil(5);
    for t in 0..multi_trials {
        let mut rng = root.fork(1_000_000 + u64::from(t));
        let d = 2 + rng.below(2) as usize;
        let mut collections = Vec::with_capacity(d);
        for _ in 0..d {
            let k = 1 + rng.below(3) as usize;
            let a: Vec<u64> = (0..k).map(|_| rng.below(10)).collect();
            let b: Vec<u64> = (0..k).map(|_| 1 + rng.below(9)).collect();
            collections.push((a, b));
        }
        let fast = prefix_max_multi(&collections)?;
        let brute = prefix_sup_bruteforce_multi(&collections, bound)?;
        checks.push(CheckResult::equality(
            format!("abel/multi-{t:03}"),
            json!({
                "trial": t.to_string(),
                "collections": format!("{collections:?}"),
                "bound": bound.to_string(),
            }),
            fast.to_string(),
            brute.to_string(),
        ));
    }
    Ok(checks)
}

/// The product-exponent comparison `max(ρ₀, ρ₁) ≤ α` holds on seeded
/// random shapes; equality/strictness is recorded without being asserted.
/// Singleton shapes reproduce the simple-case exponent.
fn suite_prop63(seed: u64, trials: u32) -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    let mut root = SplitMix64::new(seed);
    let mut equal_cases = 0u32;
    let mut strict_cases = 0u32;
    for t in 0..trials {
        let mut rng = root.fork(u64::from(t));
        let d = 1 + rng.below(3) as usize;
        let factors: Vec<Factor> = (0..d)
            .map(|_| Factor {
                genus: 1 + rng.below(4) as u32,
                weight: 1 + rng.below(4) as u32,
            })
            .collect();
        let shape_text = factors
            .iter()
            .map(|f| format!("g={},n={}", f.genus, f.weight))
            .collect::<Vec<_>>()
            .join(";");
        let shape = ProductShape::new(factors)?;
        let alpha = alpha_product(&shape)?;
        let r0 = rho0(&shape)?;
        let r1 = rho1(&shape)?;
        let holds = verify_exponent_comparison(&shape)?;
        let max_rho = if r0 >= r1 { r0.clone() } else { r1.clone() };
        if max_rho == alpha {
            equal_cases += 1;
        } else {
            strict_cases += 1;
        }
        checks.push(CheckResult {
            id: format!("prop63/shape-{t:04}"),
            inputs: json!({
                "trial": t.to_string(),
                "shape": shape_text,
                "alpha": alpha.to_string(),
                "rho0": r0.to_string(),
                "rho1": r1.to_string(),
            }),
            expected: "max(rho0, rho1) <= alpha".to_string(),
            observed: if holds {
                "max(rho0, rho1) <= alpha".to_string()
            } else {
                "comparison violated".to_string()
            },
            corridor: None,
            pass: holds,
        });
    }
    checks.push(CheckResult::statistic(
        "prop63/zz-equality-statistics",
        json!({"trials": trials.to_string()}),
        format!(
            "max(rho0, rho1) = alpha in {equal_cases} of {trials} shapes, strict in {strict_cases}"
        ),
    ));
    for g in 1..=12u32 {
        let shape = ProductShape::simple(g)?;
        let alpha = alpha_product(&shape)?;
        let gamma = gamma_simple(g)?;
        checks.push(CheckResult::equality(
            format!("prop63/singleton-g{g:02}"),
            json!({"g": g.to_string()}),
            gamma.to_string(),
            alpha.to_string(),
        ));
    }
    Ok(checks)
}

/// The closed-form exponent table and the exhaustive ratio search agree,
/// with the canonical full-level witness present.
fn suite_gamma_search() -> Result<Vec<CheckResult>, ToolError> {
    let mut checks = Vec::new();
    let table = ["1/2", "4/11", "3/11", "8/37", "5/28"];
    for (i, expected) in table.iter().enumerate() {
        let g = (i + 1) as u32;
        let value = gamma_simple(g)?;
        checks.push(CheckResult::equality(
            format!("gamma-search/simple-g{g}"),
            json!({"g": g.to_string()}),
            (*expected).to_string(),
            value.to_string(),
        ));
    }
    for g in 1..=3u32 {
        let result = gamma_ratio_search(g, 2, 3)?;
        let closed_form = gamma_simple(g)?;
        let canonical = GammaWitness {
            levels: vec![1],
            multiplicities: vec![2 * g],
            flags: vec![(g, g)],
        };
        let found = result.witnesses.contains(&canonical);
        let ratio_matches = result.ratio == closed_form;
        checks.push(CheckResult::equality(
            format!("gamma-search/search-g{g}"),
            json!({
                "g": g.to_string(),
                "max_t": "2",
                "max_level": "3",
                "witness_count": result.witnesses.len().to_string(),
            }),
            format!("ratio {closed_form} with full-level witness"),
            if ratio_matches && found {
                format!("ratio {closed_form} with full-level witness")
            } else {
                format!("ratio {} (witness present: {found})", result.ratio)
            },
        ));
    }
    Ok(checks)
}
