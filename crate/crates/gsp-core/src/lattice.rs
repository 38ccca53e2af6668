//! Submodules of the symplectic module `(Z/ℓ^N)^{2g}`: saturation,
//! complements, isotropy, exact symplectic completion, and isotropic lifts.
//!
//! A submodule is presented by a `2g×k` generator matrix (columns generate).
//! Saturation and complements come from the Smith decomposition
//! `D = L·A·R`: the column span of `A` equals the span of
//! `ℓ^{e_i}·(L⁻¹ column i)`, so the columns of `L⁻¹` with `e_i < N` are a
//! basis of the saturation and the remaining columns complete it to a basis
//! of the ambient module.
//!
//! Completion and lifting are exact: a saturated, exactly isotropic rank-`g`
//! submodule (a Lagrangian) is completed to a basis with Gram matrix exactly
//! `J` while keeping its generators verbatim; a subspace mod `ℓ` and, more
//! generally, a totally isotropic family with prescribed per-generator
//! congruence depths are lifted to exactly isotropic saturated families by
//! one staged-correction engine.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CoreError, Result};
use crate::padic::{smith_normal_form, PrecisionContext, Residue, ResidueMatrix};
use crate::symplectic::standard_form;

fn check_ambient(gens: &ResidueMatrix) -> Result<usize> {
    if gens.rows() == 0 || !gens.rows().is_multiple_of(2) {
        return Err(CoreError::DimensionMismatch);
    }
    Ok(gens.rows() / 2)
}

/// The Gram matrix `ᵗA·J·B` of two generator matrices under the standard
/// alternating form.
pub fn gram(a: &ResidueMatrix, b: &ResidueMatrix) -> Result<ResidueMatrix> {
    if a.ctx() != b.ctx() {
        return Err(CoreError::PrecisionMismatch);
    }
    if a.rows() != b.rows() {
        return Err(CoreError::DimensionMismatch);
    }
    let g = check_ambient(a)?;
    let j = standard_form(a.ctx(), g);
    a.transpose().mat_mul(&j)?.mat_mul(b)
}

/// The form value `ᵗx·J·y` of two column vectors.
fn form_value(ctx: &PrecisionContext, g: usize, x: &[Residue], y: &[Residue]) -> Residue {
    let mut acc = ctx.zero();
    for k in 0..g {
        let pos = ctx.mul(&x[k], &y[g + k]);
        let neg = ctx.mul(&x[g + k], &y[k]);
        acc = ctx.add(&acc, &ctx.sub(&pos, &neg));
    }
    acc
}

/// Whether the submodule generated by the columns is isotropic
/// (`ᵗG·J·G = 0` exactly).
pub fn is_isotropic(gens: &ResidueMatrix) -> Result<bool> {
    Ok(gram(gens, gens)?.is_zero())
}

/// Whether the columns generate a saturated submodule (a direct summand),
/// i.e. they stay independent mod `ℓ`.
pub fn is_saturated(gens: &ResidueMatrix) -> Result<bool> {
    check_ambient(gens)?;
    Ok(smith_normal_form(gens).rank_mod_ell() == gens.cols())
}

/// A basis of the saturation of the column span: the smallest saturated
/// submodule containing it.
pub fn saturate(gens: &ResidueMatrix) -> Result<ResidueMatrix> {
    check_ambient(gens)?;
    let n = gens.ctx().precision();
    let sf = smith_normal_form(gens);
    let keep: Vec<usize> = sf
        .diag_exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e < n)
        .map(|(i, _)| i)
        .collect();
    Ok(sf.l_inv.select_columns(&keep))
}

/// Columns completing the saturation of the span to a basis of the ambient
/// module.
pub fn complement_basis(gens: &ResidueMatrix) -> Result<ResidueMatrix> {
    check_ambient(gens)?;
    let sf = smith_normal_form(gens);
    // Exponents are nondecreasing, so the saturation basis occupies the
    // leading L⁻¹ columns and the rest complete it.
    let tail: Vec<usize> = (sf.rank()..gens.rows()).collect();
    Ok(sf.l_inv.select_columns(&tail))
}

/// Strictly-upper-triangular matrix `β` with `β − ᵗβ = Γ` for an
/// alternating `Γ` (zero diagonal): `β_{ij} = Γ_{ij}` for `i < j`.
fn antisymmetric_half(gamma: &ResidueMatrix) -> ResidueMatrix {
    let ctx = gamma.ctx();
    let k = gamma.rows();
    let mut beta = ResidueMatrix::zero(ctx, k, k);
    for i in 0..k {
        for j in i + 1..k {
            beta.set(i, j, gamma.get(i, j).clone());
        }
    }
    beta
}

/// Dual half of a Lagrangian: given a saturated, exactly isotropic `2g×g`
/// generator matrix `E`, produces `F` with `ᵗE·J·F = I`, `ᵗF·J·F = 0`.
fn lagrangian_dual(e: &ResidueMatrix) -> Result<ResidueMatrix> {
    let c = complement_basis(e)?;
    let p = gram(e, &c)?;
    let p_inv = p.mat_inv()?;
    let f_prime = c.mat_mul(&p_inv)?;
    let gamma = gram(&f_prime, &f_prime)?;
    let beta = antisymmetric_half(&gamma);
    f_prime.mat_add(&e.mat_mul(&beta)?)
}

/// Completes a Lagrangian to a symplectic basis, keeping its generators
/// verbatim.
///
/// The input must be a `2g×g` generator matrix that is saturated and exactly
/// isotropic.  The output `[E | F]` has Gram matrix exactly `J`, with the
/// first `g` columns equal to the input columns.
pub fn symplectic_complete(e: &ResidueMatrix) -> Result<ResidueMatrix> {
    let g = check_ambient(e)?;
    if e.cols() != g {
        return Err(CoreError::DimensionMismatch);
    }
    if !is_saturated(e)? {
        return Err(CoreError::PreconditionViolated(String::from(
            "generators are not saturated",
        )));
    }
    if !is_isotropic(e)? {
        return Err(CoreError::PreconditionViolated(String::from(
            "generators are not isotropic",
        )));
    }
    let f = lagrangian_dual(e)?;
    let basis = e.hstack(&f)?;
    debug_assert_eq!(gram(&basis, &basis).unwrap(), standard_form(e.ctx(), g));
    Ok(basis)
}

/// Extends a saturated isotropic family mod `ℓ` to a Lagrangian mod `ℓ` by
/// appending kernel vectors of `ᵗE·J` lying outside the current span.  The
/// input columns are kept verbatim as the leading columns.
fn grow_to_lagrangian_mod_ell(e: &ResidueMatrix) -> Result<ResidueMatrix> {
    let g = check_ambient(e)?;
    debug_assert_eq!(e.ctx().precision(), 1);
    let ctx = e.ctx().clone();
    let j = standard_form(&ctx, g);
    let mut e = e.clone();
    while e.cols() < g {
        let perp = e.transpose().mat_mul(&j)?;
        let sf = smith_normal_form(&perp);
        let rank = sf.rank();
        let kernel_cols: Vec<usize> = (rank..2 * g).collect();
        let kernel = sf.r.select_columns(&kernel_cols);
        let current_rank = e.cols();
        let mut appended = false;
        for kc in 0..kernel.cols() {
            let cand = kernel.select_columns(&[kc]);
            let trial = e.hstack(&cand)?;
            if smith_normal_form(&trial).rank_mod_ell() == current_rank + 1 {
                e = trial;
                appended = true;
                break;
            }
        }
        if !appended {
            return Err(CoreError::PreconditionViolated(String::from(
                "isotropic family cannot be extended (not isotropic?)",
            )));
        }
    }
    Ok(e)
}

/// Lifts a totally isotropic family to an exactly isotropic one, respecting
/// per-generator congruence depths.
///
/// Input: a `2g×k` matrix `W` whose columns are independent mod `ℓ`, and
/// nonincreasing depths `n_1 ≥ … ≥ n_k` (each in `1..=N`) such that
/// `ᵗw_i·J·w_j ≡ 0 (mod ℓ^{min(n_i,n_j)})` for all `i < j` (total isotropy).
///
/// Output: a `2g×k` matrix `U`, saturated and exactly isotropic, with
/// `u_i ≡ w_i (mod ℓ^{n_i})` for every `i`.
pub fn isotropic_group_lift(w: &ResidueMatrix, depths: &[u32]) -> Result<ResidueMatrix> {
    let g = check_ambient(w)?;
    let ctx = w.ctx().clone();
    let n = ctx.precision();
    let k = w.cols();
    if depths.len() != k {
        return Err(CoreError::DimensionMismatch);
    }
    if k == 0 {
        return Ok(w.clone());
    }
    if k > g {
        return Err(CoreError::PreconditionViolated(String::from(
            "an isotropic family has at most g independent generators",
        )));
    }
    for i in 0..k {
        if depths[i] == 0 || depths[i] > n || (i > 0 && depths[i] > depths[i - 1]) {
            return Err(CoreError::InvalidArgument(String::from(
                "depths must be nonincreasing and within 1..=N",
            )));
        }
    }
    // Total isotropy at the prescribed depths.
    let gr = gram(w, w)?;
    for i in 0..k {
        for j in i + 1..k {
            let need = depths[i].min(depths[j]);
            if ctx.valuation(gr.get(i, j)) < need {
                return Err(CoreError::PreconditionViolated(String::from(
                    "family is not totally isotropic at the prescribed depths",
                )));
            }
        }
    }
    // Mod-ℓ data: generators must be independent, and are extended to a
    // Lagrangian with a dual half.
    let ctx1 = ctx.with_precision(1)?;
    let wbar = w.reduce_precision(&ctx1)?;
    if smith_normal_form(&wbar).rank_mod_ell() != k {
        return Err(CoreError::PreconditionViolated(String::from(
            "generators are dependent mod ℓ",
        )));
    }
    let ebar = grow_to_lagrangian_mod_ell(&wbar)?;
    let fbar = lagrangian_dual(&ebar)?;
    let duals = fbar.lift_precision(&ctx)?;
    // Staged exact kills: at stage d every pair with min depth ≤ d is made
    // exactly orthogonal using the dual vector of the smaller index; the
    // perturbation of other pairs has valuation ≥ d+1 because the lifted
    // duals satisfy ⟨u_q, v_i⟩ ≡ δ_{qi} (mod ℓ).
    let mut u = w.clone();
    let d_start = depths[k - 1];
    for d in d_start..n {
        for (j, &depth) in depths.iter().enumerate() {
            if depth > d {
                continue;
            }
            for i in 0..j {
                let ui = u.column(i);
                let uj = u.column(j);
                let alpha = form_value(&ctx, g, &ui, &uj);
                if alpha == ctx.zero() {
                    continue;
                }
                debug_assert!(ctx.valuation(&alpha) >= d);
                let vi = duals.column(i);
                let t = form_value(&ctx, g, &ui, &vi);
                let coeff = ctx.neg(&ctx.mul(&alpha, &ctx.inv(&t)?));
                for (row, vi_row) in vi.iter().enumerate() {
                    let delta = ctx.mul(&coeff, vi_row);
                    let val = ctx.add(u.get(row, j), &delta);
                    u.set(row, j, val);
                }
            }
        }
    }
    debug_assert!(is_isotropic(&u)?);
    debug_assert!(is_saturated(&u)?);
    Ok(u)
}

/// Lifts a subspace mod `ℓ` to an exactly isotropic saturated submodule at
/// the target precision.
///
/// The input generators live at precision one and must span an isotropic
/// subspace; the output columns are a basis whose reduction mod `ℓ` is a
/// basis of the input span.
pub fn isotropic_lift(
    w_mod_ell: &ResidueMatrix,
    target: &PrecisionContext,
) -> Result<ResidueMatrix> {
    check_ambient(w_mod_ell)?;
    if w_mod_ell.ctx().precision() != 1 || w_mod_ell.ctx().ell() != target.ell() {
        return Err(CoreError::PrecisionMismatch);
    }
    let sat = saturate(w_mod_ell)?;
    if !is_isotropic(&sat)? {
        return Err(CoreError::PreconditionViolated(String::from(
            "subspace is not isotropic",
        )));
    }
    let k = sat.cols();
    let lifted = sat.lift_precision(target)?;
    if k == 0 {
        return Ok(lifted);
    }
    isotropic_group_lift(&lifted, &vec![1; k])
}
