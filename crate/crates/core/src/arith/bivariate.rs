//! Homogeneous polynomials in λ and μ.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::multipoly::MultivariatePoly;
use super::rational::Rational;
use super::univariate::UnivariatePoly;
use crate::error::{Error, Result};

pub const LAMBDA: &str = "λ";
pub const MU: &str = "μ";

pub fn lambda_mu_vars() -> Vec<String> {
    vec![LAMBDA.to_string(), MU.to_string()]
}

/// A homogeneous form `Σ c_k λ^k μ^(n-k)` of degree `n`, stored densely by
/// λ-degree. The zero form keeps its nominal degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl BivariatePoly {
    pub fn zero(degree: usize) -> Self {
        BivariatePoly {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// From `coeffs[k]` = coefficient of `λ^k μ^(n-k)`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        BivariatePoly {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Homogenize `q(x) = χ(x, 1)` to degree `n`.
    pub fn homogenize(q: &UnivariatePoly, degree: usize) -> Self {
        assert!(q.degree().map_or(true, |d| d <= degree));
        Self::from_coeffs((0..=degree).map(|k| q.coeff(k)).collect())
    }

    /// `α λ + β μ`
    pub fn linear(alpha: Rational, beta: Rational) -> Self {
        Self::from_coeffs(vec![beta, alpha])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `λ^k μ^(n-k)`.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Largest power of λ dividing the form.
    pub fn lambda_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Largest power of μ dividing the form.
    pub fn mu_valuation(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|k| self.degree - k)
    }

    pub fn eval(&self, lambda: &Rational, mu: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            total += c
                * num_traits::pow(lambda.clone(), k)
                * num_traits::pow(mu.clone(), self.degree - k);
        }
        total
    }

    /// `p(x) = χ(x, -1)`.
    pub fn pencil_poly(&self) -> UnivariatePoly {
        UnivariatePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if (self.degree - k) % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `χ(x, 1)`.
    pub fn dehomogenize(&self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.degree + other.degree + 1];
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
        Self::from_coeffs(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(Self::from_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Divide by the coefficient of the graded-lex leading term (the highest
    /// power of λ present).
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(c) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn proportional(&self, other: &Self) -> bool {
        self.degree == other.degree && self.normalized() == other.normalized()
    }

    pub fn to_multivariate(&self) -> MultivariatePoly {
        let vars = lambda_mu_vars();
        MultivariatePoly::from_terms(
            &vars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32, (self.degree - k) as u32], c.clone())),
        )
        .expect("two exponents")
    }

    /// From a homogeneous polynomial over exactly the variables λ, μ.
    pub fn from_multivariate(p: &MultivariatePoly, degree: usize) -> Result<Self> {
        if p.vars() != lambda_mu_vars().as_slice() {
            return Err(Error::InvalidArgument("expected variables λ, μ".into()));
        }
        let mut out = Self::zero(degree);
        for (m, c) in p.terms() {
            let (a, b) = (m.0[0] as usize, m.0[1] as usize);
            if a + b != degree {
                return Err(Error::InvalidArgument(format!(
                    "term of degree {} in a form of degree {degree}",
                    a + b
                )));
            }
            out.coeffs[a] = c.clone();
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_multivariate().to_text()
    }

    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let p = MultivariatePoly::parse(text, &lambda_mu_vars())?;
        Self::from_multivariate(&p, degree)
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly[deg {}]({})", self.degree, self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct BivariateJson {
    degree: usize,
    text: String,
    poly: MultivariatePoly,
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BivariateJson {
            degree: self.degree,
            text: self.to_text(),
            poly: self.to_multivariate(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BivariateJson::deserialize(d)?;
        BivariatePoly::from_multivariate(&raw.poly, raw.degree).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn valuations_and_pencil() {
        // λ μ^2 (λ + 2μ) = λ^2 μ^2 + 2 λ μ^3
        let p = BivariatePoly::from_coeffs(vec![rat(0), rat(2), rat(1), rat(0), rat(0)]);
        assert_eq!(p.lambda_valuation(), Some(1));
        assert_eq!(p.mu_valuation(), Some(2));
        // p(x) = x^2 - 2x
        assert_eq!(p.pencil_poly(), UnivariatePoly::from_i64(&[0, -2, 1]));
        assert_eq!(p.eval(&rat(1), &rat(1)), rat(3));
    }

    #[test]
    fn text_round_trip() {
        let p = BivariatePoly::linear(rat(2), rat(3)).mul(&BivariatePoly::linear(rat(1), rat(-1)));
        assert_eq!(p.to_text(), "2*λ^2 + λ*μ - 3*μ^2");
        assert_eq!(BivariatePoly::parse(&p.to_text(), 2).unwrap(), p);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<BivariatePoly>(&js).unwrap(), p);
    }

    #[test]
    fn normalization() {
        let p = BivariatePoly::linear(rat(2), rat(3));
        assert!(p.proportional(&p.scale(&rat(-5))));
        assert_eq!(p.normalized().coeff(1), rat(1));
    }
}
