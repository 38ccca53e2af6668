//! Exhaustive enumeration of the standard matrix groups over `Z/ℓ^m` by
//! column-constrained search.
//!
//! Strategy.  A similitude is determined by its columns, and the defining
//! Gram identity `ᵗM·J·M = λ·J` is a system of pairwise constraints between
//! columns.  Columns are placed in the hyperbolic interleaving
//! `c_1, c_{g+1}, c_2, c_{g+2}, …`; each new column must satisfy one affine
//! equation per already-placed column, and the solution set of that system
//! over `Z/ℓ^m` is an explicit affine family produced by a diagonalization
//! of the constraint matrix.  Invertibility of the finished matrix is
//! automatic (`det M = λ^g` is a unit), so the search visits exactly the
//! group.  Fixator subgroups pin a prefix of the columns to standard basis
//! vectors; `GSp` is visited as the `Sp` part times a scaling of the last
//! `g` rows by each unit multiplier.
//!
//! All internal arithmetic is on `u64` words; moduli are capped at
//! `2^20` so that products fit comfortably.  Enumerations are admitted only
//! after an upfront size estimate `2·ℓ^{m·dim}` passes the caller's budget,
//! measured in bits; materialization and the brute-force full scan have
//! separate hard caps.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{CoreError, Result};
use crate::padic::{PrecisionContext, ResidueMatrix};
use crate::symplectic::{phi_ell_pow, GroupDescriptor};

/// Default enumeration budget, in bits of the upfront size estimate.
pub const DEFAULT_BUDGET_LOG2: u32 = 34;
/// Hard cap (in bits) on the number of elements a collection may hold.
pub const MATERIALIZE_LOG2: u32 = 24;
/// Hard cap (in bits) on the candidate count of the brute-force full scan.
pub const FULL_SCAN_LOG2: u32 = 26;
/// Hard cap (in bits) on the working modulus `ℓ^m`.
pub const WORD_MODULUS_LOG2: u32 = 20;

/// Word-sized modular arithmetic for `Z/ℓ^m`, `ℓ^m < 2^20`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct WordCtx {
    pub ell: u64,
    pub m: u32,
    pub modulus: u64,
}

impl WordCtx {
    pub fn new(ell: u64, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(CoreError::InvalidPrecision);
        }
        let mut modulus: u64 = 1;
        for _ in 0..m {
            modulus = modulus
                .checked_mul(ell)
                .filter(|v| 64 - v.leading_zeros() <= WORD_MODULUS_LOG2)
                .ok_or(CoreError::BudgetExceeded {
                    estimate_log2: 64,
                    budget_log2: WORD_MODULUS_LOG2,
                })?;
        }
        Ok(WordCtx { ell, m, modulus })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // a, b < 2^20, so the product fits in u64.
        (a * b) % self.modulus
    }

    /// Valuation of `a`, with `val(0) = m`.
    pub fn val(&self, a: u64) -> u32 {
        if a == 0 {
            return self.m;
        }
        let mut v = 0;
        let mut a = a;
        while a.is_multiple_of(self.ell) {
            a /= self.ell;
            v += 1;
        }
        v
    }

    pub fn pow_ell(&self, e: u32) -> u64 {
        let mut p = 1u64;
        for _ in 0..e {
            p *= self.ell;
        }
        p
    }

    /// Inverse of a unit, by extended Euclid on signed words.
    pub fn inv_unit(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.ell));
        let (mut r0, mut r1) = (self.modulus as i64, (a % self.modulus) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.modulus as i64) as u64
    }
}

/// The solution set of a consistent affine system `A·x = b` over `Z/ℓ^m`,
/// as a parametrized family `x = R·(y₀ + offsets)`.
pub(crate) struct AffineFamily {
    n: usize,
    /// Column transform: `x = R·y`, row-major `n×n`.
    r: Vec<u64>,
    /// Particular solution in the `y` coordinates.
    y0: Vec<u64>,
    /// Number of admissible values per `y` coordinate.
    var_count: Vec<u64>,
    /// Offset step per `y` coordinate.
    var_step: Vec<u64>,
    /// Total number of solutions.
    pub count: u128,
}

impl AffineFamily {
    /// Calls `f` with each solution vector `x`.
    pub fn for_each(&self, w: &WordCtx, mut f: impl FnMut(&[u64])) {
        let n = self.n;
        let mut digits = vec![0u64; n];
        let mut y = self.y0.clone();
        let mut x = vec![0u64; n];
        loop {
            for (i, xi) in x.iter_mut().enumerate() {
                let row = &self.r[i * n..(i + 1) * n];
                let mut acc = 0u64;
                for (&rv, &yv) in row.iter().zip(&y) {
                    acc = w.add(acc, w.mul(rv, yv));
                }
                *xi = acc;
            }
            f(&x);
            // Odometer step.
            let mut k = 0;
            loop {
                if k == n {
                    return;
                }
                digits[k] += 1;
                if digits[k] < self.var_count[k] {
                    y[k] = w.add(y[k], self.var_step[k]);
                    break;
                }
                digits[k] = 0;
                y[k] = self.y0[k];
                k += 1;
            }
        }
    }
}

/// Solves `rows·x = rhs` over `Z/ℓ^m` by diagonalization with exact
/// transform tracking.  Returns `None` if the system is inconsistent.
pub(crate) fn solve_affine(
    w: &WordCtx,
    rows: &[Vec<u64>],
    rhs: &[u64],
    n: usize,
) -> Option<AffineFamily> {
    let k = rows.len();
    debug_assert_eq!(rhs.len(), k);
    let mut a: Vec<u64> = Vec::with_capacity(k * n);
    for row in rows {
        debug_assert_eq!(row.len(), n);
        a.extend(row.iter().map(|&v| v % w.modulus));
    }
    let mut c: Vec<u64> = rhs.iter().map(|&v| v % w.modulus).collect();
    let mut r: Vec<u64> = vec![0; n * n];
    for i in 0..n {
        r[i * n + i] = 1;
    }
    let mut exps: Vec<u32> = Vec::new();
    let mut t = 0usize;
    while t < k.min(n) {
        // Minimal-valuation pivot in the trailing block, row-major first hit.
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for i in t..k {
            for j in t..n {
                let v = w.val(a[i * n + j]);
                if v < best.map_or(w.m, |b| b.2) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let (pi, pj, pv) = match best {
            Some(b) if b.2 < w.m => b,
            _ => break,
        };
        if pi != t {
            for j in 0..n {
                a.swap(pi * n + j, t * n + j);
            }
            c.swap(pi, t);
        }
        if pj != t {
            for i in 0..k {
                a.swap(i * n + pj, i * n + t);
            }
            for i in 0..n {
                r.swap(i * n + pj, i * n + t);
            }
        }
        // Normalize the pivot row so the pivot is exactly ℓ^{pv}.
        let unit = a[t * n + t] / w.pow_ell(pv);
        let unit_inv = w.inv_unit(unit);
        for j in 0..n {
            a[t * n + j] = w.mul(a[t * n + j], unit_inv);
        }
        c[t] = w.mul(c[t], unit_inv);
        let pivot = w.pow_ell(pv);
        // Clear the pivot column below.
        for i in t + 1..k {
            if a[i * n + t] != 0 {
                let q = a[i * n + t] / pivot;
                for j in 0..n {
                    let s = w.mul(q, a[t * n + j]);
                    a[i * n + j] = w.sub(a[i * n + j], s);
                }
                let s = w.mul(q, c[t]);
                c[i] = w.sub(c[i], s);
            }
        }
        // Clear the pivot row to the right; mirror the column operation on R.
        for j in t + 1..n {
            if a[t * n + j] != 0 {
                let q = a[t * n + j] / pivot;
                for i in 0..k {
                    let s = w.mul(q, a[i * n + t]);
                    a[i * n + j] = w.sub(a[i * n + j], s);
                }
                for i in 0..n {
                    let s = w.mul(q, r[i * n + t]);
                    r[i * n + j] = w.sub(r[i * n + j], s);
                }
            }
        }
        exps.push(pv);
        t += 1;
    }
    let rank = exps.len();
    // Rows past the diagonal are identically zero; their targets must vanish.
    if c.iter().skip(rank).any(|&v| v != 0) {
        return None;
    }
    let mut y0 = vec![0u64; n];
    let mut var_count = vec![0u64; n];
    let mut var_step = vec![0u64; n];
    let mut count: u128 = 1;
    for (i, &e) in exps.iter().enumerate() {
        if w.val(c[i]) < e {
            return None;
        }
        y0[i] = c[i] / w.pow_ell(e);
        var_count[i] = w.pow_ell(e);
        var_step[i] = w.pow_ell(w.m - e);
        count = count
            .checked_mul(var_count[i] as u128)
            .expect("count overflow");
    }
    for i in rank..n {
        y0[i] = 0;
        var_count[i] = w.modulus;
        var_step[i] = 1;
        count = count
            .checked_mul(w.modulus as u128)
            .expect("count overflow");
    }
    Some(AffineFamily {
        n,
        r,
        y0,
        var_count,
        var_step,
        count,
    })
}

/// A materialized list of group elements over `Z/ℓ^m`, stored as words.
#[derive(Clone, Debug)]
pub struct ElementList {
    ell: u64,
    precision: u32,
    side: usize,
    mats: Vec<u64>,
    lambdas: Vec<u64>,
}

impl ElementList {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Matrix side length (`2g`).
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Row-major words of the `i`-th matrix.
    pub fn matrix_words(&self, i: usize) -> &[u64] {
        let stride = self.side * self.side;
        &self.mats[i * stride..(i + 1) * stride]
    }

    /// Multiplier word of the `i`-th element.
    pub fn multiplier_word(&self, i: usize) -> u64 {
        self.lambdas[i]
    }

    /// Converts the `i`-th element to a matrix in the given context, which
    /// must match the list's prime and precision.
    pub fn to_matrix(&self, i: usize, ctx: &PrecisionContext) -> Result<ResidueMatrix> {
        if ctx.ell() != self.ell || ctx.precision() != self.precision {
            return Err(CoreError::PrecisionMismatch);
        }
        ResidueMatrix::from_u64(ctx, self.side, self.side, self.matrix_words(i))
    }
}

/// The upfront size estimate `2·ℓ^{m·dim}` used for budget admission.
pub fn enumeration_estimate(d: &GroupDescriptor, ell: u64, m: u32) -> BigUint {
    BigUint::from(2u32) * BigUint::from(ell).pow((d.dimension() * m as u64) as u32)
}

fn check_budget(d: &GroupDescriptor, ell: u64, m: u32, budget_log2: u32) -> Result<()> {
    let estimate = enumeration_estimate(d, ell, m);
    let estimate_log2 = estimate.bits() as u32;
    if estimate_log2 > budget_log2 {
        return Err(CoreError::BudgetExceeded {
            estimate_log2,
            budget_log2,
        });
    }
    Ok(())
}

/// Per-position forced columns for the fixator families, in ambient
/// coordinates: position `p` forced to the standard basis vector `e_p`.
fn forced_positions(d: &GroupDescriptor) -> Vec<bool> {
    let g = d.genus() as usize;
    let mut forced = vec![false; 2 * g];
    if let Some((r, s)) = d.fixator_profile() {
        forced[..r as usize].fill(true);
        forced[g..g + s as usize].fill(true);
    }
    forced
}

/// `J[q][p]` as a word: `+1` when `p = q + g`, `−1` when `p = q − g`.
fn j_word(w: &WordCtx, g: usize, q: usize, p: usize) -> u64 {
    if q < g && p == q + g {
        1
    } else if q >= g && p == q - g {
        w.neg(1)
    } else {
        0
    }
}

/// The row vector `ᵗv·J`.
fn row_times_j(w: &WordCtx, g: usize, v: &[u64]) -> Vec<u64> {
    let mut row = vec![0u64; 2 * g];
    for j in 0..g {
        row[j] = w.neg(v[g + j]);
    }
    row[g..2 * g].copy_from_slice(&v[..g]);
    row
}

struct Search<'a, F: FnMut(&[u64], u64)> {
    w: WordCtx,
    g: usize,
    order: Vec<usize>,
    forced: Vec<bool>,
    count_only: bool,
    cols: Vec<Option<Vec<u64>>>,
    total: u128,
    visitor: &'a mut F,
}

impl<'a, F: FnMut(&[u64], u64)> Search<'a, F> {
    fn standard_basis_column(&self, pos: usize) -> Vec<u64> {
        let mut col = vec![0u64; 2 * self.g];
        col[pos] = 1;
        col
    }

    /// Constraint system for a candidate at `pos` given the placed columns.
    fn constraints(&self, pos: usize) -> (Vec<Vec<u64>>, Vec<u64>) {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for q in 0..2 * self.g {
            if let Some(v) = &self.cols[q] {
                rows.push(row_times_j(&self.w, self.g, v));
                rhs.push(j_word(&self.w, self.g, q, pos));
            }
        }
        (rows, rhs)
    }

    fn emit(&mut self) {
        let n = 2 * self.g;
        let mut mat = vec![0u64; n * n];
        for p in 0..n {
            let col = self.cols[p].as_ref().expect("all columns placed");
            for i in 0..n {
                mat[i * n + p] = col[i];
            }
        }
        (self.visitor)(&mat, 1);
    }

    fn descend(&mut self, pi: usize) {
        let n = 2 * self.g;
        if pi == n {
            self.total += 1;
            if !self.count_only {
                self.emit();
            }
            return;
        }
        let pos = self.order[pi];
        let (rows, rhs) = self.constraints(pos);
        if self.forced[pos] {
            let cand = self.standard_basis_column(pos);
            let ok = rows.iter().zip(&rhs).all(|(row, &b)| {
                let mut acc = 0u64;
                for j in 0..n {
                    acc = self.w.add(acc, self.w.mul(row[j], cand[j]));
                }
                acc == b
            });
            if ok {
                self.cols[pos] = Some(cand);
                self.descend(pi + 1);
                self.cols[pos] = None;
            }
            return;
        }
        let family = match solve_affine(&self.w, &rows, &rhs, n) {
            Some(f) => f,
            None => return,
        };
        if self.count_only && pi == n - 1 {
            self.total += family.count;
            return;
        }
        // Iterate the family; recursion re-enters self, so collect into a
        // scratch list per level (families at the last level can be large,
        // earlier ones are small).
        let w = self.w;
        let mut solutions: Vec<Vec<u64>> = Vec::with_capacity(family.count as usize);
        family.for_each(&w, |x| solutions.push(x.to_vec()));
        for x in solutions {
            self.cols[pos] = Some(x);
            self.descend(pi + 1);
            self.cols[pos] = None;
        }
    }
}

fn hyperbolic_order(g: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(2 * g);
    for i in 0..g {
        order.push(i);
        order.push(g + i);
    }
    order
}

fn run_search(
    d: &GroupDescriptor,
    ell: u64,
    m: u32,
    count_only: bool,
    visitor: &mut impl FnMut(&[u64], u64),
) -> Result<u128> {
    d.validate()?;
    let w = WordCtx::new(ell, m)?;
    let g = d.genus() as usize;
    let mut search = Search {
        w,
        g,
        order: hyperbolic_order(g),
        forced: forced_positions(d),
        count_only,
        cols: vec![None; 2 * g],
        total: 0,
        visitor,
    };
    search.descend(0);
    Ok(search.total)
}

fn scale_rows(w: &WordCtx, g: usize, mat: &[u64], lambda: u64) -> Vec<u64> {
    let n = 2 * g;
    let mut out = mat.to_vec();
    for i in g..n {
        for j in 0..n {
            out[i * n + j] = w.mul(out[i * n + j], lambda);
        }
    }
    out
}

fn unit_words(w: &WordCtx) -> impl Iterator<Item = u64> + '_ {
    (1..w.modulus).filter(move |v| v % w.ell != 0)
}

/// Counts the elements of the group over `Z/ℓ^m` by column-constrained
/// search (with the final column counted in closed form per branch).
///
/// For `GSp` the `Sp` part is counted and scaled by `φ(ℓ^m)`; for the
/// equal-multiplier pair family both symplectic factors are counted and
/// combined the same way.
pub fn count_elements(d: &GroupDescriptor, ell: u64, m: u32, budget_log2: u32) -> Result<BigUint> {
    d.validate()?;
    check_budget(d, ell, m, budget_log2)?;
    match *d {
        GroupDescriptor::GSp { g } => {
            let sp = count_elements(&GroupDescriptor::Sp { g }, ell, m, budget_log2)?;
            Ok(sp * phi_ell_pow(ell, m))
        }
        GroupDescriptor::SimilitudePair { g1, g2 } => {
            let s1 = count_elements(&GroupDescriptor::Sp { g: g1 }, ell, m, budget_log2)?;
            let s2 = count_elements(&GroupDescriptor::Sp { g: g2 }, ell, m, budget_log2)?;
            Ok(s1 * s2 * phi_ell_pow(ell, m))
        }
        _ => {
            let mut sink = |_: &[u64], _: u64| {};
            let total = run_search(d, ell, m, true, &mut sink)?;
            Ok(BigUint::from(total))
        }
    }
}

/// Visits every element of the group over `Z/ℓ^m` as `(row-major words,
/// multiplier word)`.  Pair descriptors are rejected.
pub fn visit_elements(
    d: &GroupDescriptor,
    ell: u64,
    m: u32,
    budget_log2: u32,
    visitor: &mut impl FnMut(&[u64], u64),
) -> Result<()> {
    d.validate()?;
    check_budget(d, ell, m, budget_log2)?;
    match *d {
        GroupDescriptor::SimilitudePair { .. } => Err(CoreError::InvalidArgument(
            "pair families are not visited as single matrices".into(),
        )),
        GroupDescriptor::GSp { g } => {
            let w = WordCtx::new(ell, m)?;
            let mut wrapped = |mat: &[u64], _lambda: u64| {
                for lambda in unit_words(&w) {
                    let scaled = scale_rows(&w, g as usize, mat, lambda);
                    visitor(&scaled, lambda);
                }
            };
            run_search(&GroupDescriptor::Sp { g }, ell, m, false, &mut wrapped)?;
            Ok(())
        }
        _ => {
            run_search(d, ell, m, false, visitor)?;
            Ok(())
        }
    }
}

/// Collects every element of the group over `Z/ℓ^m` into an [`ElementList`].
///
/// Fails with [`CoreError::BudgetExceeded`] if the enumeration estimate
/// exceeds the budget or the exact count exceeds the materialization cap.
pub fn collect_elements(
    d: &GroupDescriptor,
    ell: u64,
    m: u32,
    budget_log2: u32,
) -> Result<ElementList> {
    let count = count_elements(d, ell, m, budget_log2)?;
    if count.bits() as u32 > MATERIALIZE_LOG2 {
        return Err(CoreError::BudgetExceeded {
            estimate_log2: count.bits() as u32,
            budget_log2: MATERIALIZE_LOG2,
        });
    }
    let g = d.genus() as usize;
    let side = 2 * g;
    let mut list = ElementList {
        ell,
        precision: m,
        side,
        mats: Vec::new(),
        lambdas: Vec::new(),
    };
    visit_elements(d, ell, m, budget_log2, &mut |mat, lambda| {
        list.mats.extend_from_slice(mat);
        list.lambdas.push(lambda);
    })?;
    Ok(list)
}

/// Word-level similitude test: returns the multiplier if `ᵗM·J·M = λ·J`.
pub(crate) fn word_multiplier(w: &WordCtx, g: usize, mat: &[u64]) -> Option<u64> {
    let n = 2 * g;
    // T = ᵗM·J·M, computed as (ᵗM)·(J·M); J·M swaps/negates row blocks.
    let mut jm = vec![0u64; n * n];
    for j in 0..n {
        for i in 0..g {
            jm[i * n + j] = mat[(g + i) * n + j];
            jm[(g + i) * n + j] = w.neg(mat[i * n + j]);
        }
    }
    let mut lambda = None;
    for p in 0..n {
        for q in 0..n {
            let mut acc = 0u64;
            for r in 0..n {
                acc = w.add(acc, w.mul(mat[r * n + p], jm[r * n + q]));
            }
            if j_word(w, g, p, q) == 0 {
                if acc != 0 {
                    return None;
                }
            } else {
                let lam = if p < g { acc } else { w.neg(acc) };
                match lambda {
                    None => lambda = Some(lam),
                    Some(l) if l == lam => {}
                    _ => return None,
                }
            }
        }
    }
    lambda
}

/// Counts the group by scanning every matrix over `Z/ℓ^m` and testing
/// membership directly — an independent route used to validate the
/// column-constrained search on small cases.
///
/// Fails with [`CoreError::BudgetExceeded`] if the candidate count
/// `(ℓ^m)^{4g²}` exceeds `2^26`.
pub fn full_scan_count(d: &GroupDescriptor, ell: u64, m: u32) -> Result<BigUint> {
    d.validate()?;
    let w = WordCtx::new(ell, m)?;
    let g = d.genus() as usize;
    let n = 2 * g;
    let entries = n * n;
    let candidates = BigUint::from(w.modulus).pow(entries as u32);
    if candidates.bits() as u32 > FULL_SCAN_LOG2 {
        return Err(CoreError::BudgetExceeded {
            estimate_log2: candidates.bits() as u32,
            budget_log2: FULL_SCAN_LOG2,
        });
    }
    let accepts = |mat: &[u64]| -> bool {
        let lambda = match word_multiplier(&w, g, mat) {
            Some(l) => l,
            None => return false,
        };
        let fixes = |col: usize| (0..n).all(|i| mat[i * n + col] == u64::from(i == col));
        match *d {
            GroupDescriptor::Sp { .. } => lambda == 1,
            GroupDescriptor::GSp { .. } => lambda % w.ell != 0,
            GroupDescriptor::Parabolic { r, .. } => lambda == 1 && (0..r as usize).all(fixes),
            GroupDescriptor::ParabolicPair { r, s, .. } => {
                lambda == 1 && (0..r as usize).all(fixes) && (0..s as usize).all(|j| fixes(g + j))
            }
            GroupDescriptor::SimilitudePair { .. } => false,
        }
    };
    if let GroupDescriptor::SimilitudePair { .. } = d {
        return Err(CoreError::InvalidArgument(
            "pair families are not scanned as single matrices".into(),
        ));
    }
    let mut mat = vec![0u64; entries];
    let mut total = BigUint::from(0u32);
    loop {
        if accepts(&mat) {
            total += 1u32;
        }
        // Odometer over all entries.
        let mut k = 0;
        loop {
            if k == entries {
                return Ok(total);
            }
            mat[k] += 1;
            if mat[k] < w.modulus {
                break;
            }
            mat[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{gsp_order, is_member, sp_order};
    use num_traits::One;

    #[test]
    fn word_ctx_basics() {
        let w = WordCtx::new(3, 3).unwrap();
        assert_eq!(w.modulus, 27);
        assert_eq!(w.val(0), 3);
        assert_eq!(w.val(18), 2);
        assert_eq!(w.val(7), 0);
        for a in (1..27).filter(|a| a % 3 != 0) {
            assert_eq!(w.mul(a, w.inv_unit(a)), 1);
        }
        assert!(WordCtx::new(2, 21).is_err());
    }

    #[test]
    fn affine_solver_scalar_equation() {
        // 3y ≡ 6 (mod 27) has solutions 2, 11, 20.
        let w = WordCtx::new(3, 3).unwrap();
        let fam = solve_affine(&w, &[vec![3]], &[6], 1).unwrap();
        assert_eq!(fam.count, 3);
        let mut sols = Vec::new();
        fam.for_each(&w, |x| sols.push(x[0]));
        sols.sort_unstable();
        assert_eq!(sols, vec![2, 11, 20]);
        // 3y ≡ 7 (mod 27) is inconsistent.
        assert!(solve_affine(&w, &[vec![3]], &[7], 1).is_none());
    }

    #[test]
    fn affine_solver_matches_brute_force() {
        let w = WordCtx::new(2, 4).unwrap();
        // Two constraints in three unknowns with mixed valuations, across
        // both consistent and inconsistent targets.
        let rows = vec![vec![2u64, 3, 4], vec![6, 1, 8]];
        for rhs in [[10u64, 6], [10, 5], [0, 0], [4, 2], [1, 1], [8, 12]] {
            let mut expected = Vec::new();
            for x0 in 0..16u64 {
                for x1 in 0..16u64 {
                    for x2 in 0..16u64 {
                        let r0 = (2 * x0 + 3 * x1 + 4 * x2) % 16;
                        let r1 = (6 * x0 + x1 + 8 * x2) % 16;
                        if r0 == rhs[0] && r1 == rhs[1] {
                            expected.push([x0, x1, x2]);
                        }
                    }
                }
            }
            match solve_affine(&w, &rows, &rhs, 3) {
                Some(fam) => {
                    assert_eq!(fam.count as usize, expected.len(), "rhs={rhs:?}");
                    let mut got = Vec::new();
                    fam.for_each(&w, |x| got.push([x[0], x[1], x[2]]));
                    got.sort_unstable();
                    expected.sort_unstable();
                    assert_eq!(got, expected, "rhs={rhs:?}");
                }
                None => assert!(expected.is_empty(), "rhs={rhs:?}"),
            }
        }
    }

    #[test]
    fn counts_match_closed_forms_sl2() {
        for (ell, m) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let d = GroupDescriptor::Sp { g: 1 };
            let count = count_elements(&d, ell, m, DEFAULT_BUDGET_LOG2).unwrap();
            assert_eq!(count, sp_order(1, ell, m), "Sp2, ell={ell}, m={m}");
        }
        for (ell, m) in [(2u64, 1u32), (3, 1), (3, 2)] {
            let d = GroupDescriptor::GSp { g: 1 };
            let count = count_elements(&d, ell, m, DEFAULT_BUDGET_LOG2).unwrap();
            assert_eq!(count, gsp_order(1, ell, m), "GSp2, ell={ell}, m={m}");
        }
    }

    #[test]
    fn counts_match_closed_forms_sp4() {
        let d = GroupDescriptor::Sp { g: 2 };
        assert_eq!(
            count_elements(&d, 2, 1, DEFAULT_BUDGET_LOG2).unwrap(),
            sp_order(2, 2, 1)
        );
        assert_eq!(
            count_elements(&d, 3, 1, DEFAULT_BUDGET_LOG2).unwrap(),
            sp_order(2, 3, 1)
        );
    }

    #[test]
    fn fixator_counts_frozen_values() {
        // P_1 in SL2: upper unitriangular, order ℓ^m.
        let p1 = GroupDescriptor::Parabolic { g: 1, r: 1 };
        assert_eq!(
            count_elements(&p1, 3, 2, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::from(9u32)
        );
        // P_{1,1} in SL2 is trivial.
        let p11 = GroupDescriptor::ParabolicPair { g: 1, r: 1, s: 1 };
        assert_eq!(
            count_elements(&p11, 3, 2, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::one()
        );
        // P_{1,1} in Sp4(F3) is a copy of Sp2(F3): order 24.
        let p11 = GroupDescriptor::ParabolicPair { g: 2, r: 1, s: 1 };
        assert_eq!(
            count_elements(&p11, 3, 1, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::from(24u32)
        );
        // P_1 in Sp4(F3): stabilizer of a nonzero vector, order 51840/80.
        let p1 = GroupDescriptor::Parabolic { g: 2, r: 1 };
        assert_eq!(
            count_elements(&p1, 3, 1, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::from(648u32)
        );
        // P_{2,1} in Sp4(F3): one free parameter.
        let p21 = GroupDescriptor::ParabolicPair { g: 2, r: 2, s: 1 };
        assert_eq!(
            count_elements(&p21, 3, 1, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::from(3u32)
        );
        // P_{2,2} in Sp4 is trivial.
        let p22 = GroupDescriptor::ParabolicPair { g: 2, r: 2, s: 2 };
        assert_eq!(
            count_elements(&p22, 3, 1, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::one()
        );
    }

    #[test]
    fn full_scan_agrees_with_search() {
        for (ell, m) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let d = GroupDescriptor::Sp { g: 1 };
            assert_eq!(
                full_scan_count(&d, ell, m).unwrap(),
                count_elements(&d, ell, m, DEFAULT_BUDGET_LOG2).unwrap(),
                "ell={ell} m={m}"
            );
        }
        let d = GroupDescriptor::GSp { g: 1 };
        assert_eq!(
            full_scan_count(&d, 3, 2).unwrap(),
            count_elements(&d, 3, 2, DEFAULT_BUDGET_LOG2).unwrap()
        );
        let d = GroupDescriptor::Parabolic { g: 1, r: 1 };
        assert_eq!(
            full_scan_count(&d, 3, 2).unwrap(),
            count_elements(&d, 3, 2, DEFAULT_BUDGET_LOG2).unwrap()
        );
        // One genus-2 case: Sp4(F2) by both routes.
        let d = GroupDescriptor::Sp { g: 2 };
        assert_eq!(full_scan_count(&d, 2, 1).unwrap(), BigUint::from(720u32));
    }

    #[test]
    fn collected_elements_are_members() {
        let ctx = PrecisionContext::new(3, 2).unwrap();
        for d in [
            GroupDescriptor::Sp { g: 1 },
            GroupDescriptor::GSp { g: 1 },
            GroupDescriptor::Parabolic { g: 1, r: 1 },
        ] {
            let list = collect_elements(&d, 3, 2, DEFAULT_BUDGET_LOG2).unwrap();
            assert_eq!(
                BigUint::from(list.len()),
                count_elements(&d, 3, 2, DEFAULT_BUDGET_LOG2).unwrap()
            );
            for i in 0..list.len() {
                let m = list.to_matrix(i, &ctx).unwrap();
                assert!(is_member(&d, &m).unwrap(), "element {i} of {d:?}");
                if let GroupDescriptor::GSp { .. } = d {
                    let lam = crate::symplectic::multiplier(&m).unwrap();
                    assert_eq!(lam, ctx.residue(list.multiplier_word(i)));
                }
            }
            // No duplicates.
            let mut keys: Vec<&[u64]> = (0..list.len()).map(|i| list.matrix_words(i)).collect();
            keys.sort_unstable();
            keys.dedup();
            assert_eq!(keys.len(), list.len());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let d = GroupDescriptor::Sp { g: 3 };
        let err = count_elements(&d, 5, 2, DEFAULT_BUDGET_LOG2).unwrap_err();
        match err {
            CoreError::BudgetExceeded { estimate_log2, .. } => {
                assert!(estimate_log2 > DEFAULT_BUDGET_LOG2);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let d = GroupDescriptor::Sp { g: 2 };
        assert!(full_scan_count(&d, 3, 2).is_err()); // 9^16 candidates
    }

    #[test]
    fn pair_counts_use_both_factors() {
        let d = GroupDescriptor::SimilitudePair { g1: 1, g2: 1 };
        // φ(9)·|SL2(Z/9)|² = 6·648².
        assert_eq!(
            count_elements(&d, 3, 2, DEFAULT_BUDGET_LOG2).unwrap(),
            BigUint::from(6u32 * 648 * 648)
        );
        assert!(matches!(
            collect_elements(&d, 3, 1, DEFAULT_BUDGET_LOG2),
            Err(CoreError::InvalidArgument(_))
        ));
    }
}
