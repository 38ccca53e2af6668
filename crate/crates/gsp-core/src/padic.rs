//! Exact arithmetic over the truncated ring `Z/ℓ^N`.
//!
//! A [`PrecisionContext`] fixes a prime `ℓ` and a truncation exponent
//! `N ≥ 1`; all scalar operations go through the context so mixed-precision
//! use is impossible by construction.  Residues are stored as canonical
//! representatives in `0..ℓ^N`.  The `ℓ`-adic valuation of the zero residue
//! is `N` by convention (the largest value observable at this precision).
//!
//! [`ResidueMatrix`] provides exact matrix arithmetic and
//! [`smith_normal_form`] computes a diagonal form `L·A·R = D` with recorded
//! unimodular transforms and their inverses.  Over the local ring `Z/ℓ^N`
//! every matrix is equivalent to `diag(ℓ^{e_1}, …)` with
//! `e_1 ≤ e_2 ≤ …` (exponent `N` meaning the zero residue), which is the
//! backbone of the saturation, completion, and canonical-basis algorithms in
//! the other modules.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{CoreError, Result};

/// Exact rational numbers (always in reduced form, exact comparisons).
pub type ExactRational = num_rational::BigRational;

/// Builds an exact rational from machine integers.
pub fn rational(numer: i64, denom: i64) -> ExactRational {
    ExactRational::new(numer.into(), denom.into())
}

/// Builds an exact rational from unsigned big integers.
pub fn rational_big(numer: BigUint, denom: BigUint) -> ExactRational {
    ExactRational::new(numer.into(), denom.into())
}

/// Deterministic Miller–Rabin primality test, exact for all `u64` inputs
/// with the witness set below.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A residue class mod `ℓ^N`, stored as its canonical representative.
///
/// Residues are created and combined through a [`PrecisionContext`]; the
/// inner value is always reduced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue(BigUint);

impl Residue {
    /// The canonical representative in `0..ℓ^N`.
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Consumes the residue, returning the representative.
    pub fn into_value(self) -> BigUint {
        self.0
    }

    /// Whether this is the zero residue.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// The ring `Z/ℓ^N`: a prime `ℓ ≥ 2` and a truncation exponent `N ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    ell: u64,
    precision: u32,
    modulus: BigUint,
}

impl PrecisionContext {
    /// Creates the context, validating that `ell` is prime and `precision ≥ 1`.
    pub fn new(ell: u64, precision: u32) -> Result<Self> {
        if !is_prime_u64(ell) {
            return Err(CoreError::NotPrime(ell));
        }
        if precision == 0 {
            return Err(CoreError::InvalidPrecision);
        }
        let modulus = BigUint::from(ell).pow(precision);
        Ok(PrecisionContext {
            ell,
            precision,
            modulus,
        })
    }

    /// The residue characteristic `ℓ`.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The truncation exponent `N`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The modulus `ℓ^N`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// A context over the same prime with a different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        PrecisionContext::new(self.ell, precision)
    }

    /// `ℓ^e` as a big integer (no truncation; `e` may exceed `N`).
    pub fn ell_pow(&self, e: u32) -> BigUint {
        BigUint::from(self.ell).pow(e)
    }

    /// Reduces an arbitrary big integer into the ring.
    pub fn reduce(&self, value: &BigUint) -> Residue {
        Residue(value % &self.modulus)
    }

    /// Embeds a machine integer.
    pub fn residue(&self, value: u64) -> Residue {
        self.reduce(&BigUint::from(value))
    }

    /// The zero residue.
    pub fn zero(&self) -> Residue {
        Residue(BigUint::zero())
    }

    /// The unit residue.
    pub fn one(&self) -> Residue {
        self.reduce(&BigUint::one())
    }

    /// Exact addition.
    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce(&(&a.0 + &b.0))
    }

    /// Exact subtraction.
    pub fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        let sum = &a.0 + &self.modulus - &b.0;
        self.reduce(&sum)
    }

    /// Exact negation.
    pub fn neg(&self, a: &Residue) -> Residue {
        if a.is_zero() {
            self.zero()
        } else {
            Residue(&self.modulus - &a.0)
        }
    }

    /// Exact multiplication.
    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce(&(&a.0 * &b.0))
    }

    /// The `ℓ`-adic valuation, with `v(0) = N` by convention.
    pub fn valuation(&self, a: &Residue) -> u32 {
        if a.is_zero() {
            return self.precision;
        }
        let ell = BigUint::from(self.ell);
        let mut v = 0u32;
        let mut rest = a.0.clone();
        while (&rest % &ell).is_zero() {
            rest /= &ell;
            v += 1;
        }
        v
    }

    /// Whether the residue is a unit of the ring (valuation zero).
    pub fn is_unit(&self, a: &Residue) -> bool {
        !a.is_zero() && !(&a.0 % BigUint::from(self.ell)).is_zero()
    }

    /// The multiplicative inverse of a unit.
    pub fn inv(&self, a: &Residue) -> Result<Residue> {
        if !self.is_unit(a) {
            return Err(CoreError::NotInvertible);
        }
        // Lift the inverse mod ℓ (Fermat) through the precision by Newton
        // iteration: x ← x(2 − ax) doubles the number of correct digits.
        let ell = BigUint::from(self.ell);
        let a_mod_ell = &a.0 % &ell;
        let inv_mod_ell = a_mod_ell.modpow(&BigUint::from(self.ell - 2), &ell);
        let mut x = inv_mod_ell;
        let mut correct: u32 = 1;
        let two = BigUint::from(2u32);
        while correct < self.precision {
            correct = (correct * 2).min(self.precision);
            let m = BigUint::from(self.ell).pow(correct);
            let ax = (&a.0 * &x) % &m;
            let t = (&two + &m - ax) % &m;
            x = (&x * &t) % &m;
        }
        Ok(self.reduce(&x))
    }

    /// Exact division `a / ℓ^e` of the canonical representative, valid when
    /// `v(a) ≥ e`; translates a residue mod `ℓ^N` into one mod `ℓ^{N−e}`.
    pub fn divide_by_ell_pow(&self, a: &Residue, e: u32) -> Result<BigUint> {
        if e == 0 {
            return Ok(a.0.clone());
        }
        if self.valuation(a) < e {
            return Err(CoreError::PreconditionViolated(
                alloc::string::String::from("valuation too small for exact division"),
            ));
        }
        Ok(&a.0 / self.ell_pow(e))
    }

    /// The quotient `q` with `q·ℓ^{e} = a` exactly in the ring, for
    /// `e ≤ v(a)`: the exact-division witness used by elimination.
    pub fn exact_quotient(&self, a: &Residue, e: u32) -> Result<Residue> {
        Ok(self.reduce(&self.divide_by_ell_pow(a, e)?))
    }
}

/// A dense matrix over `Z/ℓ^N`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMatrix {
    ctx: PrecisionContext,
    rows: usize,
    cols: usize,
    data: Vec<Residue>,
}

impl ResidueMatrix {
    /// The all-zero matrix.
    pub fn zero(ctx: &PrecisionContext, rows: usize, cols: usize) -> Self {
        ResidueMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    /// The identity matrix.
    pub fn identity(ctx: &PrecisionContext, n: usize) -> Self {
        let mut m = ResidueMatrix::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// Builds a matrix from row-major big-integer entries (reduced on entry).
    pub fn from_entries(
        ctx: &PrecisionContext,
        rows: usize,
        cols: usize,
        entries: &[BigUint],
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(CoreError::DimensionMismatch);
        }
        Ok(ResidueMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: entries.iter().map(|e| ctx.reduce(e)).collect(),
        })
    }

    /// Builds a matrix from row-major machine integers (tests, examples).
    pub fn from_u64(
        ctx: &PrecisionContext,
        rows: usize,
        cols: usize,
        entries: &[u64],
    ) -> Result<Self> {
        let big: Vec<BigUint> = entries.iter().map(|&e| BigUint::from(e)).collect();
        ResidueMatrix::from_entries(ctx, rows, cols, &big)
    }

    /// Assembles a matrix whose columns are the given coordinate vectors.
    pub fn from_columns(
        ctx: &PrecisionContext,
        dim: usize,
        columns: &[Vec<Residue>],
    ) -> Result<Self> {
        let mut m = ResidueMatrix::zero(ctx, dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(CoreError::DimensionMismatch);
            }
            for (i, r) in col.iter().enumerate() {
                m.set(i, j, ctx.reduce(r.value()));
            }
        }
        Ok(m)
    }

    /// The ambient ring.
    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> &Residue {
        &self.data[i * self.cols + j]
    }

    /// Entry mutator (the residue must already belong to the same ring).
    pub fn set(&mut self, i: usize, j: usize, value: Residue) {
        self.data[i * self.cols + j] = value;
    }

    /// The `j`-th column as a vector.
    pub fn column(&self, j: usize) -> Vec<Residue> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// A new matrix keeping the columns listed in `keep`, in order.
    pub fn select_columns(&self, keep: &[usize]) -> ResidueMatrix {
        let mut m = ResidueMatrix::zero(&self.ctx, self.rows, keep.len());
        for (jj, &j) in keep.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        if self.ctx != other.ctx {
            return Err(CoreError::PrecisionMismatch);
        }
        if self.rows != other.rows {
            return Err(CoreError::DimensionMismatch);
        }
        let mut m = ResidueMatrix::zero(&self.ctx, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Residue::is_zero)
    }

    /// The transpose.
    pub fn transpose(&self) -> ResidueMatrix {
        let mut m = ResidueMatrix::zero(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Exact matrix product.
    pub fn mat_mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        if self.ctx != other.ctx {
            return Err(CoreError::PrecisionMismatch);
        }
        if self.cols != other.rows {
            return Err(CoreError::DimensionMismatch);
        }
        let ctx = &self.ctx;
        let mut m = ResidueMatrix::zero(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigUint::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k).value() * other.get(k, j).value();
                }
                m.set(i, j, ctx.reduce(&acc));
            }
        }
        Ok(m)
    }

    /// Exact matrix sum.
    pub fn mat_add(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        self.zip_with(other, |ctx, a, b| ctx.add(a, b))
    }

    /// Exact matrix difference.
    pub fn mat_sub(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        self.zip_with(other, |ctx, a, b| ctx.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &ResidueMatrix,
        f: impl Fn(&PrecisionContext, &Residue, &Residue) -> Residue,
    ) -> Result<ResidueMatrix> {
        if self.ctx != other.ctx {
            return Err(CoreError::PrecisionMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::DimensionMismatch);
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, f(&self.ctx, self.get(i, j), other.get(i, j)));
            }
        }
        Ok(m)
    }

    /// Multiplies every entry by a scalar.
    pub fn scalar_mul(&self, s: &Residue) -> ResidueMatrix {
        let mut m = self.clone();
        for e in &mut m.data {
            *e = self.ctx.mul(e, s);
        }
        m
    }

    /// Applies a map to the column `j`: `col_j ← col_j + s · col_k` (in place).
    pub fn col_axpy(&mut self, j: usize, s: &Residue, k: usize) {
        for i in 0..self.rows {
            let t = self.ctx.mul(self.get(i, k), s);
            let v = self.ctx.add(self.get(i, j), &t);
            self.set(i, j, v);
        }
    }

    /// The matrix with entries reduced into a lower-precision ring.
    pub fn reduce_precision(&self, target: &PrecisionContext) -> Result<ResidueMatrix> {
        if target.ell() != self.ctx.ell() || target.precision() > self.ctx.precision() {
            return Err(CoreError::PrecisionMismatch);
        }
        let mut m = ResidueMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, target.reduce(self.get(i, j).value()));
            }
        }
        Ok(m)
    }

    /// The matrix with canonical representatives re-read in a higher-precision
    /// ring (one arbitrary lift among many).
    pub fn lift_precision(&self, target: &PrecisionContext) -> Result<ResidueMatrix> {
        if target.ell() != self.ctx.ell() || target.precision() < self.ctx.precision() {
            return Err(CoreError::PrecisionMismatch);
        }
        let mut m = ResidueMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, target.reduce(self.get(i, j).value()));
            }
        }
        Ok(m)
    }

    /// The inverse of a square matrix, when it exists over the ring.
    pub fn mat_inv(&self) -> Result<ResidueMatrix> {
        if self.rows != self.cols {
            return Err(CoreError::DimensionMismatch);
        }
        let snf = smith_normal_form(self);
        if snf.diag_exponents.iter().any(|&e| e != 0) {
            return Err(CoreError::NotInvertible);
        }
        // L·A·R = I  ⟹  A⁻¹ = R·L.
        snf.r.mat_mul(&snf.l)
    }
}

/// The Smith normal form `L·A·R = D` over `Z/ℓ^N`.
///
/// `D` is diagonal with entries `ℓ^{e_1}, ℓ^{e_2}, …` where the exponents
/// are nondecreasing along the diagonal and the divisibility chain
/// `d_1 | d_2 | …` holds; the exponent `N` denotes the zero residue.  `L` and
/// `R` are invertible over the ring, and their inverses are tracked exactly
/// during the reduction (no inversion is performed afterwards).
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// The diagonal matrix `D = L·A·R`.
    pub d: ResidueMatrix,
    /// Row transform.
    pub l: ResidueMatrix,
    /// Inverse of the row transform.
    pub l_inv: ResidueMatrix,
    /// Column transform.
    pub r: ResidueMatrix,
    /// Inverse of the column transform.
    pub r_inv: ResidueMatrix,
    /// Diagonal exponents `e_i` in diagonal order (nondecreasing),
    /// of length `min(rows, cols)`.
    pub diag_exponents: Vec<u32>,
}

impl SmithForm {
    /// The elementary-divisor exponents sorted nonincreasing (reporting
    /// order: largest divisor first).
    pub fn exponents(&self) -> Vec<u32> {
        let mut e = self.diag_exponents.clone();
        e.reverse();
        e
    }

    /// The number of nonzero elementary divisors (exponent `< N`).
    pub fn rank(&self) -> usize {
        let n = self.d.ctx().precision();
        self.diag_exponents.iter().filter(|&&e| e < n).count()
    }

    /// The rank of the reduction mod `ℓ` (exponent `= 0`).
    pub fn rank_mod_ell(&self) -> usize {
        self.diag_exponents.iter().filter(|&&e| e == 0).count()
    }
}

/// Computes the Smith normal form of `a` over `Z/ℓ^N` with transforms.
pub fn smith_normal_form(a: &ResidueMatrix) -> SmithForm {
    let ctx = a.ctx().clone();
    let n_prec = ctx.precision();
    let rows = a.rows();
    let cols = a.cols();
    let steps = rows.min(cols);

    let mut d = a.clone();
    let mut l = ResidueMatrix::identity(&ctx, rows);
    let mut l_inv = ResidueMatrix::identity(&ctx, rows);
    let mut r = ResidueMatrix::identity(&ctx, cols);
    let mut r_inv = ResidueMatrix::identity(&ctx, cols);
    let mut diag_exponents = vec![n_prec; steps];

    // Row helpers acting simultaneously on d and the transforms.
    fn swap_rows(m: &mut ResidueMatrix, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..m.cols() {
            let a = m.get(i, j).clone();
            let b = m.get(k, j).clone();
            m.set(i, j, b);
            m.set(k, j, a);
        }
    }
    fn swap_cols(m: &mut ResidueMatrix, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..m.rows() {
            let a = m.get(i, j).clone();
            let b = m.get(i, k).clone();
            m.set(i, j, b);
            m.set(i, k, a);
        }
    }

    // The pivot index `k` addresses the trailing submatrix and all five
    // transform matrices at once; an iterator over `diag_exponents` alone
    // would misrepresent the loop's structure.
    #[allow(clippy::needless_range_loop)]
    for k in 0..steps {
        // Pivot: minimal valuation in the trailing submatrix, row-major ties.
        let mut best: Option<(usize, usize, u32)> = None;
        for i in k..rows {
            for j in k..cols {
                let v = ctx.valuation(d.get(i, j));
                if best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
                if v == 0 {
                    break;
                }
            }
            if let Some((_, _, 0)) = best {
                break;
            }
        }
        let (pi, pj, pv) = best.expect("submatrix is nonempty");
        if pv >= n_prec {
            // Everything that remains is zero.
            break;
        }

        // Move the pivot to (k, k).
        swap_rows(&mut d, pi, k);
        swap_rows(&mut l, pi, k);
        swap_cols(&mut l_inv, pi, k);
        swap_cols(&mut d, pj, k);
        swap_cols(&mut r, pj, k);
        swap_rows(&mut r_inv, pj, k);

        // Normalize the pivot to exactly ℓ^{pv}: scale the row by the inverse
        // of the pivot's unit part.
        let unit = ctx
            .exact_quotient(d.get(k, k), pv)
            .expect("pivot valuation is pv");
        let unit_inv = ctx.inv(&unit).expect("unit part is invertible");
        for j in 0..cols {
            let v = ctx.mul(d.get(k, j), &unit_inv);
            d.set(k, j, v);
        }
        for j in 0..rows {
            let v = ctx.mul(l.get(k, j), &unit_inv);
            l.set(k, j, v);
        }
        for i in 0..rows {
            let v = ctx.mul(l_inv.get(i, k), &unit);
            l_inv.set(i, k, v);
        }

        // Eliminate the rest of column k: row_i ← row_i − q·row_k with
        // q·ℓ^{pv} = d[i][k] exactly (valuations are ≥ pv by pivot choice).
        for i in (k + 1)..rows {
            let entry = d.get(i, k).clone();
            if entry.is_zero() {
                continue;
            }
            let q = ctx.exact_quotient(&entry, pv).expect("valuation >= pivot");
            let nq = ctx.neg(&q);
            for j in 0..cols {
                let t = ctx.mul(d.get(k, j), &nq);
                let v = ctx.add(d.get(i, j), &t);
                d.set(i, j, v);
            }
            for j in 0..rows {
                let t = ctx.mul(l.get(k, j), &nq);
                let v = ctx.add(l.get(i, j), &t);
                l.set(i, j, v);
            }
            // L⁻¹ ← L⁻¹·E⁻¹ with E⁻¹ = I + q·e_{ik}: col_k += q·col_i.
            l_inv.col_axpy(k, &q, i);
        }

        // Eliminate the rest of row k: col_j ← col_j − q·col_k.
        for j in (k + 1)..cols {
            let entry = d.get(k, j).clone();
            if entry.is_zero() {
                continue;
            }
            let q = ctx.exact_quotient(&entry, pv).expect("valuation >= pivot");
            let nq = ctx.neg(&q);
            for i in 0..rows {
                let t = ctx.mul(d.get(i, k), &nq);
                let v = ctx.add(d.get(i, j), &t);
                d.set(i, j, v);
            }
            for i in 0..cols {
                let t = ctx.mul(r.get(i, k), &nq);
                let v = ctx.add(r.get(i, j), &t);
                r.set(i, j, v);
            }
            // R⁻¹ ← E⁻¹·R⁻¹ with E⁻¹ = I + q·e_{kj}: row_k += q·row_j.
            for c in 0..cols {
                let t = ctx.mul(r_inv.get(j, c), &q);
                let v = ctx.add(r_inv.get(k, c), &t);
                r_inv.set(k, c, v);
            }
        }

        diag_exponents[k] = pv;
    }

    SmithForm {
        d,
        l,
        l_inv,
        r,
        r_inv,
        diag_exponents,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ell: u64, n: u32) -> PrecisionContext {
        PrecisionContext::new(ell, n).unwrap()
    }

    #[test]
    fn context_rejects_bad_parameters() {
        assert_eq!(
            PrecisionContext::new(4, 2).unwrap_err(),
            CoreError::NotPrime(4)
        );
        assert_eq!(
            PrecisionContext::new(1, 2).unwrap_err(),
            CoreError::NotPrime(1)
        );
        assert_eq!(
            PrecisionContext::new(3, 0).unwrap_err(),
            CoreError::InvalidPrecision
        );
    }

    #[test]
    fn primality_handles_large_inputs() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn scalar_arithmetic_and_valuation() {
        let c = ctx(3, 3); // Z/27
        let a = c.residue(12);
        let b = c.residue(21);
        assert_eq!(c.add(&a, &b), c.residue(6));
        assert_eq!(c.sub(&a, &b), c.residue(18));
        assert_eq!(c.mul(&a, &b), c.residue(9)); // 252 = 9·27 + 9
        assert_eq!(c.valuation(&c.residue(9)), 2);
        assert_eq!(c.valuation(&c.residue(12)), 1);
        assert_eq!(c.valuation(&c.zero()), 3);
        assert_eq!(c.valuation(&c.residue(26)), 0);
    }

    #[test]
    fn inverses_are_exact() {
        let c = ctx(3, 5);
        for v in 1..243u64 {
            let r = c.residue(v);
            if c.is_unit(&r) {
                let inv = c.inv(&r).unwrap();
                assert_eq!(c.mul(&r, &inv), c.one(), "inverse of {v}");
            } else {
                assert_eq!(c.inv(&r).unwrap_err(), CoreError::NotInvertible);
            }
        }
    }

    #[test]
    fn inverse_works_at_ell_two() {
        let c = ctx(2, 6); // Z/64
        for v in (1..64u64).step_by(2) {
            let r = c.residue(v);
            let inv = c.inv(&r).unwrap();
            assert_eq!(c.mul(&r, &inv), c.one());
        }
    }

    #[test]
    fn exact_quotient_recovers_factor() {
        let c = ctx(5, 4); // Z/625
        let a = c.residue(250); // 2·5^3
        let q = c.exact_quotient(&a, 3).unwrap();
        assert_eq!(q, c.residue(2));
        assert!(c.exact_quotient(&c.residue(13), 1).is_err());
        // Zero divides by anything, giving zero.
        assert_eq!(c.exact_quotient(&c.zero(), 4).unwrap(), c.zero());
    }

    #[test]
    fn matrix_product_and_inverse() {
        let c = ctx(3, 3);
        let m = ResidueMatrix::from_u64(&c, 2, 2, &[1, 3, 0, 1]).unwrap();
        let inv = m.mat_inv().unwrap();
        let prod = m.mat_mul(&inv).unwrap();
        assert_eq!(prod, ResidueMatrix::identity(&c, 2));

        let singular = ResidueMatrix::from_u64(&c, 2, 2, &[3, 0, 0, 1]).unwrap();
        assert_eq!(singular.mat_inv().unwrap_err(), CoreError::NotInvertible);
    }

    #[test]
    fn mixed_precision_is_rejected() {
        let c3 = ctx(3, 3);
        let c2 = ctx(3, 2);
        let a = ResidueMatrix::identity(&c3, 2);
        let b = ResidueMatrix::identity(&c2, 2);
        assert_eq!(a.mat_mul(&b).unwrap_err(), CoreError::PrecisionMismatch);
        assert_eq!(a.mat_add(&b).unwrap_err(), CoreError::PrecisionMismatch);
    }

    fn assert_snf_invariants(a: &ResidueMatrix) -> SmithForm {
        let snf = smith_normal_form(a);
        let ctx = a.ctx();
        // L·A·R = D.
        let lar = snf.l.mat_mul(a).unwrap().mat_mul(&snf.r).unwrap();
        assert_eq!(lar, snf.d);
        // Transform inverses are exact.
        assert_eq!(
            snf.l.mat_mul(&snf.l_inv).unwrap(),
            ResidueMatrix::identity(ctx, a.rows())
        );
        assert_eq!(
            snf.r_inv.mat_mul(&snf.r).unwrap(),
            ResidueMatrix::identity(ctx, a.cols())
        );
        // D is diagonal with the recorded exponents, nondecreasing.
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let e = snf.d.get(i, j);
                if i == j && i < snf.diag_exponents.len() {
                    let exp = snf.diag_exponents[i];
                    if exp < ctx.precision() {
                        assert_eq!(e.value(), &ctx.ell_pow(exp));
                    } else {
                        assert!(e.is_zero());
                    }
                } else {
                    assert!(e.is_zero(), "off-diagonal entry at ({i},{j})");
                }
            }
        }
        let mut sorted = snf.diag_exponents.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, snf.diag_exponents);
        snf
    }

    #[test]
    fn smith_form_worked_example() {
        // diag(3, 9) mod 27 has exponents (1, 2) on the diagonal and is
        // reported largest-first as (2, 1).
        let c = ctx(3, 3);
        let a = ResidueMatrix::from_u64(&c, 2, 2, &[3, 0, 0, 9]).unwrap();
        let snf = assert_snf_invariants(&a);
        assert_eq!(snf.diag_exponents, vec![1, 2]);
        assert_eq!(snf.exponents(), vec![2, 1]);
        assert_eq!(snf.rank(), 2);
        assert_eq!(snf.rank_mod_ell(), 0);
    }

    #[test]
    fn smith_form_with_unit_entries() {
        let c = ctx(2, 4);
        let a = ResidueMatrix::from_u64(&c, 3, 2, &[2, 4, 6, 8, 3, 5]).unwrap();
        let snf = assert_snf_invariants(&a);
        assert_eq!(snf.diag_exponents[0], 0);
    }

    #[test]
    fn smith_form_zero_matrix() {
        let c = ctx(5, 2);
        let a = ResidueMatrix::zero(&c, 2, 3);
        let snf = assert_snf_invariants(&a);
        assert_eq!(snf.diag_exponents, vec![2, 2]);
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn smith_form_exhaustive_small() {
        // Every 2×2 matrix over Z/9: all invariants hold and the exponent
        // multiset is a matrix invariant (checked via rank counts).
        let c = ctx(3, 2);
        for code in 0..9u64.pow(4) {
            let e = [code % 9, (code / 9) % 9, (code / 81) % 9, (code / 729) % 9];
            let a = ResidueMatrix::from_u64(&c, 2, 2, &e).unwrap();
            assert_snf_invariants(&a);
        }
    }
}
