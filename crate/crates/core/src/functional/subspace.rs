use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::matrix::{echelon_basis, RatMatrix};
use crate::arith::rational::Rational;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis, so
/// equal spans compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    #[serde(with = "serde_basis")]
    basis: Vec<Vec<Rational>>,
}

mod serde_basis {
    use super::*;
    use crate::arith::rational::{format_rational, parse_rational};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = b.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|r| {
                r.iter()
                    .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Rational::zero(); ambient];
                    v[i] = num_traits::One::one();
                    v
                })
                .collect(),
            ambient,
        )
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(vectors: Vec<Vec<Rational>>, ambient: usize) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        Subspace {
            ambient,
            basis: echelon_basis(vectors, ambient),
        }
    }

    /// Kernel of a matrix with `ambient` columns.
    pub fn kernel_of(m: &RatMatrix) -> Self {
        Subspace {
            ambient: m.cols(),
            basis: m.kernel(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        RatMatrix::from_rows(rows).expect("uniform").rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.sum(other).expect("same ambient").dim() == self.dim()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Self::span(v, self.ambient))
    }

    /// Vectors orthogonal to the subspace under the standard pairing.
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::whole(self.ambient);
        }
        Self::kernel_of(&RatMatrix::from_rows(self.basis.clone()).expect("uniform"))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut rows = self.annihilator().basis;
        rows.extend(other.annihilator().basis);
        if rows.is_empty() {
            return Ok(Self::whole(self.ambient));
        }
        Ok(Self::kernel_of(&RatMatrix::from_rows(rows).expect("uniform")))
    }

    /// Standard basis vectors completing the subspace to the whole space,
    /// chosen at the non-pivot positions of the echelon basis.
    pub fn complement_basis(&self) -> Vec<Vec<Rational>> {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|v| v.iter().position(|c| !c.is_zero()).expect("nonzero basis vector"))
            .collect();
        (0..self.ambient)
            .filter(|i| !pivots.contains(i))
            .map(|i| {
                let mut v = vec![Rational::zero(); self.ambient];
                v[i] = num_traits::One::one();
                v
            })
            .collect()
    }

    /// Image under `m` (acting on column vectors).
    pub fn image(&self, m: &RatMatrix) -> Self {
        Self::span(self.basis.iter().map(|v| m.mul_vec(v)).collect(), m.rows())
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> RatMatrix {
        RatMatrix::from_fn(self.ambient, self.dim(), |i, j| self.basis[j][i].clone())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn canonical_basis() {
        let a = Subspace::span(vec![v(&[1, 1, 0]), v(&[0, 1, 1])], 3);
        let b = Subspace::span(vec![v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])], 3);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(vec![v(&[1, 0, 0]), v(&[0, 1, 0])], 3);
        let b = Subspace::span(vec![v(&[0, 1, 0]), v(&[0, 0, 1])], 3);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(vec![v(&[0, 1, 0])], 3));
        assert_eq!(a.sum(&b).unwrap(), Subspace::whole(3));
        assert!(a.contains(&v(&[2, 3, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        assert_eq!(a.intersect(&Subspace::zero(3)).unwrap(), Subspace::zero(3));
    }

    #[test]
    fn complement() {
        let a = Subspace::span(vec![v(&[1, 1, 0])], 3);
        let c = a.complement_basis();
        assert_eq!(c.len(), 2);
        assert_eq!(a.sum(&Subspace::span(c, 3)).unwrap(), Subspace::whole(3));
    }
}
