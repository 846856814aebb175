//! Companion matrices, pencil determinants and generalized resultants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bivariate::BivariatePoly;
use super::matrix::RatMatrix;
use super::det::ff_det;
use super::rational::Rational;
use super::univariate::UnivariatePoly;
use crate::error::{Error, Result};

/// Companion matrix of the monic normalization of `p`: ones on the
/// subdiagonal and the negated low coefficients in the last column, so that
/// its characteristic polynomial is `p / lc(p)`.
pub fn companion(p: &UnivariatePoly) -> Result<RatMatrix> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    let monic = p.monic();
    Ok(RatMatrix::from_fn(n, n, |i, j| {
        if j + 1 == n {
            -monic.coeff(i)
        } else if i == j + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// `det(λ a + μ b)` as a homogeneous form of degree `n`.
pub fn pencil_det(a: &RatMatrix, b: &RatMatrix) -> Result<BivariatePoly> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let n = a.rows();
    // Clear denominators, evaluate det(t a + b) at t = 0..=n with integer
    // Bareiss, then interpolate.
    let mut den = BigInt::one();
    for m in [a, b] {
        for i in 0..n {
            for j in 0..n {
                den = den.lcm(m[(i, j)].denom());
            }
        }
    }
    let scaled = |m: &RatMatrix| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| (&m[(i, j)] * &den).to_integer()).collect())
            .collect()
    };
    let (ai, bi) = (scaled(a), scaled(b));
    let values: Vec<Rational> = (0..=n)
        .map(|t| {
            let t = BigInt::from(t);
            let rows = (0..n)
                .map(|i| (0..n).map(|j| &ai[i][j] * &t + &bi[i][j]).collect())
                .collect();
            Rational::from_integer(ff_det(rows, BigInt::one()))
        })
        .collect();
    let q = interpolate_at_naturals(&values).scale(&Rational::new(BigInt::one(), num_traits::pow(den, n)));
    Ok(BivariatePoly::homogenize(&q, n))
}

/// The polynomial of degree `< values.len()` taking `values[t]` at `x = t`,
/// by Newton divided differences.
fn interpolate_at_naturals(values: &[Rational]) -> UnivariatePoly {
    let k = values.len();
    let mut dd = values.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rational::from_integer(BigInt::from(level));
        }
    }
    let mut p = UnivariatePoly::new(vec![]);
    for i in (0..k).rev() {
        p = p.mul(&UnivariatePoly::linear_root(&Rational::from_integer(BigInt::from(i))))
            .add(&UnivariatePoly::new(vec![dd[i].clone()]));
    }
    p
}

/// `∏_{i,j} (λ α_i + μ β_j)` over the roots α of `p` and β of `q`, scaled by
/// `lc(p)^deg q · lc(q)^deg p`, computed without extracting roots.
pub fn generalized_resultant(p: &UnivariatePoly, q: &UnivariatePoly) -> Result<BivariatePoly> {
    let dp = p.degree().ok_or(Error::ZeroPolynomial)?;
    let dq = q.degree().ok_or(Error::ZeroPolynomial)?;
    let scale = num_traits::pow(p.leading().unwrap().clone(), dq)
        * num_traits::pow(q.leading().unwrap().clone(), dp);
    let cp = companion(p)?;
    let cq = companion(q)?;
    let left = cp.kronecker(&RatMatrix::identity(dq));
    let right = RatMatrix::identity(dp).kronecker(&cq);
    Ok(pencil_det(&left, &right)?.scale(&scale))
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::arith::det::cofactor_det;
    use crate::arith::rational::rat;
    use crate::arith::univariate::uni_det;
    use crate::test_support::pencil_pair;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pencil_det_pointwise((a, b) in pencil_pair(5), l in -4i64..=4, mu in -4i64..=4) {
            let chi = pencil_det(&a, &b).unwrap();
            let n = a.rows();
            let m = RatMatrix::from_fn(n, n, |i, j| &a[(i, j)] * rat(l) + &b[(i, j)] * rat(mu));
            prop_assert_eq!(chi.eval(&rat(l), &rat(mu)), cofactor_det(&m.to_rows()));
        }

        #[test]
        fn pencil_det_matches_polynomial_bareiss((a, b) in pencil_pair(6)) {
            let n = a.rows();
            let rows = (0..n)
                .map(|i| (0..n).map(|j| UnivariatePoly::new(vec![b[(i, j)].clone(), a[(i, j)].clone()])).collect())
                .collect();
            prop_assert_eq!(pencil_det(&a, &b).unwrap(), BivariatePoly::homogenize(&uni_det(rows), n));
        }

        /// Against the product built directly from known roots.
        #[test]
        fn resultant_from_roots(pr in prop::collection::vec(-4i64..=4, 1..4), qr in prop::collection::vec(-4i64..=4, 1..4)) {
            let from = |rs: &[i64]| rs.iter().fold(UnivariatePoly::from_i64(&[1]), |acc, r| acc.mul(&UnivariatePoly::linear_root(&rat(*r))));
            let (p, q) = (from(&pr), from(&qr));
            let mut expect = BivariatePoly::from_coeffs(vec![rat(1)]);
            for a in &pr {
                for b in &qr {
                    expect = expect.mul(&BivariatePoly::linear(rat(*a), rat(*b)));
                }
            }
            prop_assert_eq!(generalized_resultant(&p, &q).unwrap(), expect);
        }
    }
}
