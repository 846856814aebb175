//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::det::ExactDomain;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Coefficients in ascending degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rational::rat(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplicity of the root `x = 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: monic, pairwise coprime, square-free
    /// factors `s_1, s_2, ...` with `self = lc * prod s_i^i`. Entry `i - 1`
    /// of the result is `s_i`; trailing constant factors are dropped.
    pub fn square_free_decomposition(&self) -> Result<Vec<UnivariatePoly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a)?;
        let c = df.div_exact(&a)?;
        let mut d = c.sub(&b.derivative());
        while b.degree() != Some(0) {
            let s = b.gcd(&d);
            b = b.div_exact(&s)?;
            let c = d.div_exact(&s)?;
            d = c.sub(&b.derivative());
            out.push(s);
        }
        while out.last().is_some_and(|s| s.degree() == Some(0)) {
            out.pop();
        }
        Ok(out)
    }

    /// Primitive integer coefficients (as rationals with unit denominator)
    /// with a positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        let c = super::rational::content(self.coeffs.iter());
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = self.scale(&c.recip());
        if p.leading().is_some_and(Signed::is_negative) {
            p = p.neg();
        }
        p
    }
}

impl ExactDomain for UnivariatePoly {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
    fn div_exact_elem(&self, divisor: &Self) -> Self {
        self.div_exact(divisor)
            .expect("Bareiss step produced an inexact polynomial division")
    }
}

/// Determinant of a matrix of univariate polynomials (row contents are
/// stripped before fraction-free elimination).
pub fn uni_det(rows: Vec<Vec<UnivariatePoly>>) -> UnivariatePoly {
    let mut scale = Rational::one();
    let mut stripped = Vec::with_capacity(rows.len());
    for row in rows {
        let c = super::rational::content(row.iter().flat_map(|p| p.coeffs.iter()));
        if c.is_zero() {
            return UnivariatePoly::zero();
        }
        let inv = c.recip();
        scale *= &c;
        stripped.push(row.iter().map(|p| p.scale(&inv)).collect());
    }
    super::det::ff_det(stripped, UnivariatePoly::one()).scale(&scale)
}

/// `det(x I - m)` for a square rational matrix.
pub fn charpoly(m: &super::matrix::RatMatrix) -> UnivariatePoly {
    assert!(m.is_square());
    let n = m.rows();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m[(i, j)].clone();
                    if i == j {
                        UnivariatePoly::new(vec![c, Rational::one()])
                    } else {
                        UnivariatePoly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    uni_det(rows)
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            let coef = format_rational(&abs);
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{coef}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariatePoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::matrix::RatMatrix;
    use crate::arith::rational::rat;

    #[test]
    fn division() {
        let p = UnivariatePoly::from_i64(&[-1, 0, 1]);
        let q = UnivariatePoly::from_i64(&[-1, 1]);
        assert_eq!(p.div_exact(&q).unwrap(), UnivariatePoly::from_i64(&[1, 1]));
        let (_, r) = p.div_rem(&UnivariatePoly::from_i64(&[0, 1])).unwrap();
        assert_eq!(r, UnivariatePoly::from_i64(&[-1]));
    }

    #[test]
    fn square_free() {
        // (x - 2)^3 (x + 1)
        let p = UnivariatePoly::from_i64(&[-2, 1]).pow(3).mul(&UnivariatePoly::from_i64(&[1, 1]));
        let sf = p.square_free_decomposition().unwrap();
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], UnivariatePoly::from_i64(&[1, 1]));
        assert_eq!(sf[1].degree(), Some(0));
        assert_eq!(sf[2], UnivariatePoly::from_i64(&[-2, 1]));
    }

    #[test]
    fn charpoly_diag() {
        let m = RatMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        assert_eq!(charpoly(&m), UnivariatePoly::from_i64(&[2, -3, 1]));
        let m = RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(charpoly(&m), UnivariatePoly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn display() {
        let p = UnivariatePoly::new(vec![rat(3), rat(0), rat(-1), rat(1)]);
        assert_eq!(p.to_string(), "x^3 - x^2 + 3");
    }
}
