//! Root extraction for univariate rational polynomials.
//!
//! Multiplicities come from the square-free decomposition. Rational roots of
//! each square-free part are recovered exactly: numeric approximations are
//! rounded to nearby candidates whose denominators divide the leading
//! coefficient, and every candidate is confirmed by exact evaluation. What is
//! left is solved numerically through the companion matrix.

use std::fmt;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, to_f64, Rational};
use super::univariate::UnivariatePoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
}

impl ComplexApprox {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexApprox { re, im }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "~{:.12}", self.re)
        } else if self.im < 0.0 {
            write!(f, "~{:.12}-{:.12}i", self.re, -self.im)
        } else {
            write!(f, "~{:.12}+{:.12}i", self.re, self.im)
        }
    }
}

impl Serialize for ComplexApprox {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.re, self.im).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexApprox {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(f64, f64)>::deserialize(d)?;
        Ok(ComplexApprox { re, im })
    }
}

/// A root: exact when rational, otherwise a floating approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(Rational),
    Approx(ComplexApprox),
}

impl RootValue {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            RootValue::Exact(r) => Some(r),
            RootValue::Approx(_) => None,
        }
    }

    pub fn to_complex(&self) -> ComplexApprox {
        match self {
            RootValue::Exact(r) => ComplexApprox::new(to_f64(r), 0.0),
            RootValue::Approx(c) => *c,
        }
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootValue::Exact(r) => f.write_str(&format_rational(r)),
            RootValue::Approx(c) => c.fmt(f),
        }
    }
}

impl Serialize for RootValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RootValue::Exact(r) => s.serialize_str(&format_rational(r)),
            RootValue::Approx(c) => c.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for RootValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Pair(ComplexApprox),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t)
                .map(RootValue::Exact)
                .map_err(serde::de::Error::custom),
            Raw::Pair(c) => Ok(RootValue::Approx(c)),
        }
    }
}

/// Roots with multiplicities. Exact roots come first in ascending order,
/// approximate roots follow ordered by real then imaginary part.
pub fn uni_roots(p: &UnivariatePoly) -> Result<Vec<(RootValue, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut exact: Vec<(Rational, usize)> = Vec::new();
    let mut approx: Vec<(ComplexApprox, usize)> = Vec::new();
    for (i, factor) in p.square_free_decomposition()?.into_iter().enumerate() {
        let mult = i + 1;
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let (rational, rest) = split_rational_roots(&factor);
        exact.extend(rational.into_iter().map(|r| (r, mult)));
        if rest.degree().unwrap_or(0) > 0 {
            approx.extend(numeric_roots(&rest).into_iter().map(|z| (z, mult)));
        }
    }
    exact.sort_by(|a, b| a.0.cmp(&b.0));
    approx.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then_with(|| a.0.im.total_cmp(&b.0.im))
    });
    Ok(exact
        .into_iter()
        .map(|(r, m)| (RootValue::Exact(r), m))
        .chain(approx.into_iter().map(|(z, m)| (RootValue::Approx(z), m)))
        .collect())
}

/// Rational roots of a square-free polynomial and its cofactor.
fn split_rational_roots(f: &UnivariatePoly) -> (Vec<Rational>, UnivariatePoly) {
    let mut rest = f.clone();
    let mut found = Vec::new();
    if let Some(v) = rest.valuation().filter(|&v| v > 0) {
        found.push(Rational::zero());
        rest = rest.div_exact(&UnivariatePoly::monomial(Rational::one(), v)).expect("x divides");
    }
    let prim = rest.primitive_integer();
    let lead = prim.leading().map(|c| c.numer().abs()).unwrap_or_else(BigInt::one);
    let denominators = small_divisors(&lead);
    let mut tried: Vec<Rational> = Vec::new();
    loop {
        match rest.degree() {
            None | Some(0) => break,
            Some(1) => {
                let c = rest.coeffs();
                found.push(-&c[0] / &c[1]);
                rest = UnivariatePoly::one();
                break;
            }
            Some(_) => {}
        }
        let mut hit = None;
        'search: for z in numeric_roots(&rest) {
            if z.im.abs() > 1e-6 * (1.0 + z.abs()) {
                continue;
            }
            for cand in candidates(z.re, &denominators) {
                if tried.contains(&cand) {
                    continue;
                }
                tried.push(cand.clone());
                if rest.eval(&cand).is_zero() {
                    hit = Some(cand);
                    break 'search;
                }
            }
        }
        let Some(r) = hit else { break };
        rest = rest.div_exact(&UnivariatePoly::linear_root(&r)).expect("exact root");
        found.push(r);
    }
    (found, rest)
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let Some(v) = n.to_u64() else { return out };
    if v > 1_000_000_000_000 {
        return out;
    }
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(BigInt::from(v));
    }
    out
}

/// Rational guesses near `x`: roundings with each allowed denominator and the
/// first convergents of the continued fraction of `x`.
fn candidates(x: f64, denominators: &[BigInt]) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    for q in denominators {
        let qf = q.to_f64().unwrap_or(f64::INFINITY);
        let num = (x * qf).round();
        if num.is_finite() && num.abs() < 9.0e15 {
            out.push(Rational::new(BigInt::from(num as i64), q.clone()));
        }
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..20 {
        let a = y.floor();
        if !a.is_finite() || a.abs() > 9.0e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = frac.recip();
    }
    out
}

/// Numeric roots of a polynomial of positive degree, polished by Newton.
pub fn numeric_roots(p: &UnivariatePoly) -> Vec<ComplexApprox> {
    let monic = p.monic();
    let n = monic.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = monic.coeffs().iter().map(to_f64).collect();
    let mut roots: Vec<Complex<f64>> = if n == 1 {
        vec![Complex::new(-coeffs[0], 0.0)]
    } else {
        companion_eigenvalues(&coeffs).unwrap_or_else(|| durand_kerner(&coeffs))
    };
    for z in roots.iter_mut() {
        *z = newton_polish(&coeffs, *z);
    }
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    roots
        .into_iter()
        .map(|z| {
            let im = if z.im.abs() <= 1e-10 * scale { 0.0 } else { z.im };
            ComplexApprox::new(z.re, im)
        })
        .collect()
}

fn companion_eigenvalues(coeffs: &[f64]) -> Option<Vec<Complex<f64>>> {
    let n = coeffs.len() - 1;
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -coeffs[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    if !m.iter().all(|v| v.is_finite()) {
        return None;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 100_000)?;
    let eig = schur.complex_eigenvalues();
    let v: Vec<_> = eig.iter().copied().collect();
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(v)
}

fn horner(coeffs: &[f64], z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn newton_polish(coeffs: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    for _ in 0..8 {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        let (pn, _) = horner(coeffs, next);
        if pn.norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

fn durand_kerner(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let n = coeffs.len() - 1;
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| seed.powu(k as u32) * radius.min(10.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let (p, _) = horner(coeffs, z[i]);
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = p / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    fn exact(v: &[(RootValue, usize)]) -> Vec<(Rational, usize)> {
        v.iter()
            .filter_map(|(r, m)| r.as_exact().map(|x| (x.clone(), *m)))
            .collect()
    }

    #[test]
    fn simple_cases() {
        let r = uni_roots(&UnivariatePoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(exact(&r), vec![(rat(-1), 1), (rat(1), 1)]);
        let r = uni_roots(&UnivariatePoly::from_i64(&[-2, 1]).pow(3)).unwrap();
        assert_eq!(exact(&r), vec![(rat(2), 3)]);
    }

    #[test]
    fn complex_pair() {
        let r = uni_roots(&UnivariatePoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        for (z, m) in &r {
            assert_eq!(*m, 1);
            let c = z.to_complex();
            assert!(c.re.abs() < 1e-12 && (c.im.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fractional_and_irrational() {
        // (2x - 3)^2 (x^2 - 2) x
        let p = UnivariatePoly::from_i64(&[-3, 2])
            .pow(2)
            .mul(&UnivariatePoly::from_i64(&[-2, 0, 1]))
            .mul(&UnivariatePoly::from_i64(&[0, 1]));
        let r = uni_roots(&p).unwrap();
        assert_eq!(exact(&r), vec![(rat(0), 1), (ratio(3, 2), 2)]);
        let approx: Vec<_> = r.iter().filter(|(z, _)| z.as_exact().is_none()).collect();
        assert_eq!(approx.len(), 2);
        assert!((approx[1].0.to_complex().re - 2f64.sqrt()).abs() < 1e-12);
        let total: usize = r.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn root_found_through_a_neighbour() {
        // rounding -0.5 hits -1 first, leaving x + 1/2
        let p = UnivariatePoly::from_i64(&[1, 3, 2]).pow(3);
        let r = uni_roots(&p).unwrap();
        assert_eq!(exact(&r), vec![(rat(-1), 3), (ratio(-1, 2), 3)]);
    }

    #[test]
    fn serde_shapes() {
        let v = vec![RootValue::Exact(ratio(1, 2)), RootValue::Approx(ComplexApprox::new(0.5, -1.0))];
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"["1/2",[0.5,-1.0]]"#);
        let back: Vec<RootValue> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::arith::rational::{rat, ratio};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rational_roots_recovered(roots in prop::collection::btree_map(-6i64..=6, 1usize..=3, 1..4), lc in 1i64..=5) {
            let mut p = UnivariatePoly::from_i64(&[lc]);
            for (r, m) in &roots {
                p = p.mul(&UnivariatePoly::linear_root(&ratio(*r, 2)).pow(*m as u32));
            }
            let expect: Vec<(RootValue, usize)> = roots.iter().map(|(r, m)| (RootValue::Exact(ratio(*r, 2)), *m)).collect();
            prop_assert_eq!(uni_roots(&p).unwrap(), expect);
        }

        #[test]
        fn irrational_roots_are_approximate(c in 2i64..=30, r in -5i64..=5) {
            prop_assume!(![4, 9, 16, 25].contains(&c));
            // (x^2 - c)(x - r)
            let p = UnivariatePoly::from_i64(&[-c, 0, 1]).mul(&UnivariatePoly::linear_root(&rat(r)));
            let got = uni_roots(&p).unwrap();
            prop_assert_eq!(got.iter().filter(|(v, _)| v.as_exact().is_some()).count(), 1);
            let s = (c as f64).sqrt();
            for (v, _) in got.iter().filter(|(v, _)| v.as_exact().is_none()) {
                let z = v.to_complex();
                prop_assert!((z.re.abs() - s).abs() < 1e-9 && z.im.abs() < 1e-9);
            }
        }
    }
}
