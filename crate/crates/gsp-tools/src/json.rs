//! JSON wire formats for matrices, similitude elements, lattices, and
//! torsion subgroups.
//!
//! Scalar structure fields (`ell`, `precision`, ranks, dimensions) are JSON
//! integers; every mathematical value (matrix entries, coordinates,
//! multipliers, orders) is a decimal string so that no consumer is forced
//! through binary floating point.  On input, integer values are accepted
//! either as JSON integers or as decimal strings, with optional sign, and
//! are reduced into the canonical range `[0, ℓ^N)` on load.

use num_bigint::{BigInt, BigUint, Sign};
use serde::{Deserialize, Serialize};

use gsp_core::padic::PrecisionContext;
use gsp_core::symplectic::multiplier;
use gsp_core::torsion::point_order_exponent;
use gsp_core::{Residue, ResidueMatrix};

use crate::error::ToolError;

/// An integer that may arrive as a JSON number or as a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntegerText {
    /// Native JSON integer.
    Number(i64),
    /// Decimal string, optionally signed, arbitrary size.
    Text(String),
}

impl IntegerText {
    /// Parses into a signed big integer.
    pub fn to_bigint(&self) -> Result<BigInt, ToolError> {
        match self {
            IntegerText::Number(n) => Ok(BigInt::from(*n)),
            IntegerText::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| ToolError::invalid(format!("not an integer: {s:?}"))),
        }
    }

    /// Parses and reduces into the canonical residue range of `ctx`.
    pub fn to_residue(&self, ctx: &PrecisionContext) -> Result<Residue, ToolError> {
        let value = self.to_bigint()?;
        let modulus = BigInt::from_biguint(Sign::Plus, ctx.modulus().clone());
        let mut reduced = value % &modulus;
        if reduced.sign() == Sign::Minus {
            reduced += &modulus;
        }
        let (_, mag) = reduced.into_parts();
        Ok(ctx.reduce(&mag))
    }
}

fn decimal(value: &BigUint) -> String {
    value.to_str_radix(10)
}

/// Matrix over `Z/ℓ^N`, entries row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ell: u64,
    pub precision: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<IntegerText>,
}

impl MatrixJson {
    /// Serializes a matrix with canonical decimal-string entries.
    pub fn from_matrix(m: &ResidueMatrix) -> Self {
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                entries.push(IntegerText::Text(decimal(m.get(i, j).value())));
            }
        }
        MatrixJson {
            ell: m.ctx().ell(),
            precision: m.ctx().precision(),
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    /// Validates shape and reduces entries into a residue matrix.
    pub fn to_matrix(&self) -> Result<ResidueMatrix, ToolError> {
        let ctx = PrecisionContext::new(self.ell, self.precision)?;
        if self.entries.len() != self.rows * self.cols {
            return Err(ToolError::invalid(format!(
                "matrix declares {}x{} = {} entries but provides {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            )));
        }
        let mut m = ResidueMatrix::zero(&ctx, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let value = self.entries[i * self.cols + j].to_residue(&ctx)?;
                m.set(i, j, value);
            }
        }
        Ok(m)
    }
}

/// A symplectic similitude element: matrix plus its multiplier.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub matrix: MatrixJson,
    pub multiplier: String,
}

impl ElementJson {
    /// Serializes an element, computing the multiplier from the matrix.
    pub fn from_matrix(m: &ResidueMatrix) -> Result<Self, ToolError> {
        let lambda = multiplier(m)?;
        Ok(ElementJson {
            matrix: MatrixJson::from_matrix(m),
            multiplier: decimal(lambda.value()),
        })
    }

    /// Loads and validates: the matrix must be a similitude and the declared
    /// multiplier must match the computed one.
    pub fn to_matrix(&self) -> Result<ResidueMatrix, ToolError> {
        let m = self.matrix.to_matrix()?;
        let lambda = multiplier(&m)
            .map_err(|_| ToolError::invalid("matrix is not a symplectic similitude"))?;
        let declared = IntegerText::Text(self.multiplier.clone()).to_residue(m.ctx())?;
        if declared != lambda {
            return Err(ToolError::invalid(format!(
                "declared multiplier {} does not match computed multiplier {}",
                self.multiplier,
                decimal(lambda.value())
            )));
        }
        Ok(m)
    }
}

/// A sublattice of `(Z/ℓ^N)^{ambient_rank}` presented by generator columns.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub ell: u64,
    pub precision: u32,
    pub ambient_rank: usize,
    pub rank: usize,
    pub generators: MatrixJson,
}

impl LatticeJson {
    /// Serializes a generator matrix (columns = generators).
    pub fn from_matrix(m: &ResidueMatrix) -> Self {
        LatticeJson {
            ell: m.ctx().ell(),
            precision: m.ctx().precision(),
            ambient_rank: m.rows(),
            rank: m.cols(),
            generators: MatrixJson::from_matrix(m),
        }
    }

    /// Loads and validates shape and header consistency.
    pub fn to_matrix(&self) -> Result<ResidueMatrix, ToolError> {
        if self.ell != self.generators.ell || self.precision != self.generators.precision {
            return Err(ToolError::invalid(
                "lattice header (ell, precision) disagrees with its generator matrix",
            ));
        }
        let m = self.generators.to_matrix()?;
        if m.rows() != self.ambient_rank || m.cols() != self.rank {
            return Err(ToolError::invalid(format!(
                "lattice declares ambient_rank {} and rank {} but generators are {}x{}",
                self.ambient_rank,
                self.rank,
                m.rows(),
                m.cols()
            )));
        }
        Ok(m)
    }
}

/// One generator of a torsion subgroup: coordinates and its order exponent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub coords: Vec<IntegerText>,
    pub order_exp: u32,
}

/// A torsion subgroup of `(Z/ℓ^N)^{ambient_rank}` given by generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub ell: u64,
    pub precision: u32,
    pub ambient_rank: usize,
    pub generators: Vec<GeneratorJson>,
}

impl SubgroupJson {
    /// Serializes a generator matrix (columns = generators), annotating each
    /// generator with its order exponent.
    pub fn from_matrix(m: &ResidueMatrix) -> Self {
        let ctx = m.ctx();
        let generators = (0..m.cols())
            .map(|j| {
                let coords = m.column(j);
                let order_exp = point_order_exponent(ctx, &coords);
                GeneratorJson {
                    coords: coords
                        .iter()
                        .map(|c| IntegerText::Text(decimal(c.value())))
                        .collect(),
                    order_exp,
                }
            })
            .collect();
        SubgroupJson {
            ell: m.ctx().ell(),
            precision: m.ctx().precision(),
            ambient_rank: m.rows(),
            generators,
        }
    }

    /// Loads and validates: coordinate counts must match the ambient rank
    /// and every declared order exponent must equal the computed one.
    pub fn to_matrix(&self) -> Result<ResidueMatrix, ToolError> {
        let ctx = PrecisionContext::new(self.ell, self.precision)?;
        if self.generators.is_empty() {
            return Err(ToolError::invalid("subgroup provides no generators"));
        }
        let mut m = ResidueMatrix::zero(&ctx, self.ambient_rank, self.generators.len());
        for (j, gen) in self.generators.iter().enumerate() {
            if gen.coords.len() != self.ambient_rank {
                return Err(ToolError::invalid(format!(
                    "generator {} has {} coordinates, expected {}",
                    j,
                    gen.coords.len(),
                    self.ambient_rank
                )));
            }
            for (i, coord) in gen.coords.iter().enumerate() {
                m.set(i, j, coord.to_residue(&ctx)?);
            }
            let actual = point_order_exponent(&ctx, &m.column(j));
            if actual != gen.order_exp {
                return Err(ToolError::invalid(format!(
                    "generator {} declares order exponent {} but has order exponent {}",
                    j, gen.order_exp, actual
                )));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ell: u64, n: u32) -> PrecisionContext {
        PrecisionContext::new(ell, n).unwrap()
    }

    #[test]
    fn matrix_roundtrip_and_reduction() {
        let c = ctx(3, 2);
        let m = ResidueMatrix::from_u64(&c, 2, 2, &[1, 2, 3, 4]).unwrap();
        let j = MatrixJson::from_matrix(&m);
        let back = j.to_matrix().unwrap();
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(m.get(i, k), back.get(i, k));
            }
        }
        // Negative and oversized inputs reduce canonically.
        let j = MatrixJson {
            ell: 3,
            precision: 2,
            rows: 1,
            cols: 2,
            entries: vec![
                IntegerText::Number(-1),
                IntegerText::Text("100".to_string()),
            ],
        };
        let m = j.to_matrix().unwrap();
        assert_eq!(m.get(0, 0).value(), &BigUint::from(8u32));
        assert_eq!(m.get(0, 1).value(), &BigUint::from(1u32));
    }

    #[test]
    fn element_multiplier_is_validated() {
        let c = ctx(5, 1);
        let m = ResidueMatrix::from_u64(&c, 2, 2, &[2, 0, 0, 1]).unwrap();
        let el = ElementJson::from_matrix(&m).unwrap();
        assert_eq!(el.multiplier, "2");
        assert!(el.to_matrix().is_ok());
        let forged = ElementJson {
            multiplier: "3".to_string(),
            ..el
        };
        assert!(forged.to_matrix().is_err());
    }

    #[test]
    fn subgroup_order_exponent_is_validated() {
        let c = ctx(3, 2);
        let m = ResidueMatrix::from_u64(&c, 2, 1, &[3, 0]).unwrap();
        let sub = SubgroupJson::from_matrix(&m);
        assert_eq!(sub.generators[0].order_exp, 1);
        assert!(sub.to_matrix().is_ok());
        let mut forged = sub.clone();
        forged.generators[0].order_exp = 2;
        assert!(forged.to_matrix().is_err());
    }

    #[test]
    fn lattice_header_is_validated() {
        let c = ctx(2, 3);
        let m = ResidueMatrix::from_u64(&c, 4, 2, &[1, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        let lat = LatticeJson::from_matrix(&m);
        assert_eq!(lat.ambient_rank, 4);
        assert_eq!(lat.rank, 2);
        assert!(lat.to_matrix().is_ok());
        let mut bad = lat.clone();
        bad.rank = 3;
        assert!(bad.to_matrix().is_err());
    }
}
