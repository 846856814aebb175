//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. The last entry of the map is therefore the leading
//! term, and iterating in reverse yields the canonical print order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::det::ExactDomain;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultivariatePoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultivariatePoly {
    pub fn zero(vars: &[String]) -> Self {
        MultivariatePoly {
            vars: Arc::new(vars.to_vec()),
            terms: BTreeMap::new(),
        }
    }

    pub fn with_vars(vars: Arc<Vec<String>>) -> Self {
        MultivariatePoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial(vec![0; vars.len()]), c);
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial `c * var`.
    pub fn var(vars: &[String], index: usize, c: Rational) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), c);
        p
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultivariatePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::with_vars(self.vars.clone());
        }
        MultivariatePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        MultivariatePoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.vars).with_shared_vars(&self.vars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn with_shared_vars(mut self, vars: &Arc<Vec<String>>) -> Self {
        self.vars = vars.clone();
        self
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lm = lm.clone();
        let lc_inv = lc.recip();
        let mut rem = self.terms.clone();
        let mut quot = Self::with_vars(self.vars.clone());
        while let Some((m, c)) = rem.iter().next_back() {
            let q_m = m.div(&lm).ok_or(Error::InexactDivision)?;
            let q_c = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                let key = q_m.mul(dm);
                let delta = &q_c * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.add_term(q_m, q_c);
        }
        Ok(quot)
    }

    /// Evaluate with every variable bound.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Substitute values for the variables at `indices`, keeping the others.
    pub fn partial_eval(&self, indices: &[usize], values: &[Rational]) -> Self {
        assert_eq!(indices.len(), values.len());
        let mut out = Self::with_vars(self.vars.clone());
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut t = c.clone();
            for (&i, x) in indices.iter().zip(values) {
                if e[i] > 0 {
                    t *= num_traits::pow(x.clone(), e[i] as usize);
                    e[i] = 0;
                }
            }
            out.add_term(Monomial(e), t);
        }
        out
    }

    /// Keep only the variables at `keep` (which must be the only ones used).
    pub fn project_vars(&self, keep: &[usize]) -> Self {
        let names: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Self::zero(&names);
        for (m, c) in &self.terms {
            debug_assert!(m
                .0
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || keep.contains(&i)));
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        out
    }

    /// Divide by the coefficient of the graded-lex leading term.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Equality up to a nonzero rational multiple.
    pub fn proportional(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Canonical text: terms in descending graded-lex order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(format_rational(&abs));
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parse the canonical text form over a known variable list.
    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        let mut p = Self::zero(vars);
        let s = text.trim();
        if s == "0" {
            return Ok(p);
        }
        // Variables are matched longest first so that names sharing a prefix
        // are not confused.
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(vars[i].len()));

        let mut rest = s;
        let mut first = true;
        while !rest.is_empty() {
            let sign_neg;
            if first {
                sign_neg = rest.starts_with('-');
                if sign_neg {
                    rest = &rest[1..];
                }
                first = false;
            } else if let Some(r) = rest.strip_prefix(" + ") {
                sign_neg = false;
                rest = r;
            } else if let Some(r) = rest.strip_prefix(" - ") {
                sign_neg = true;
                rest = r;
            } else {
                return Err(Error::parse(
                    format!("byte {}", s.len() - rest.len()),
                    "expected ' + ' or ' - ' between terms",
                ));
            }
            let end = find_term_end(rest);
            let term = &rest[..end];
            rest = &rest[end..];
            let (m, c) = parse_term(term, vars, &order)
                .map_err(|msg| Error::parse(format!("term {term:?}"), msg))?;
            p.add_term(m, if sign_neg { -c } else { c });
        }
        Ok(p)
    }
}

fn find_term_end(s: &str) -> usize {
    let a = s.find(" + ");
    let b = s.find(" - ");
    match (a, b) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => s.len(),
    }
}

fn parse_term(term: &str, vars: &[String], order: &[usize]) -> std::result::Result<(Monomial, Rational), String> {
    let mut exps = vec![0u32; vars.len()];
    let mut coeff = Rational::one();
    let mut rest = term;
    let mut first = true;
    while !rest.is_empty() {
        if !first {
            rest = rest.strip_prefix('*').ok_or("expected '*' between factors")?;
        }
        // A coefficient may only lead the term.
        if first && rest.starts_with(|c: char| c.is_ascii_digit()) {
            let end = rest.find('*').unwrap_or(rest.len());
            coeff = parse_rational(&rest[..end]).map_err(|e| e.to_string())?;
            rest = &rest[end..];
            first = false;
            continue;
        }
        first = false;
        let idx = order
            .iter()
            .copied()
            .find(|&i| rest.starts_with(vars[i].as_str()))
            .ok_or_else(|| format!("unknown variable at {rest:?}"))?;
        rest = &rest[vars[idx].len()..];
        let mut e = 1u32;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            e = r[..end].parse().map_err(|_| "bad exponent".to_string())?;
            rest = &r[end..];
        }
        exps[idx] += e;
    }
    Ok((Monomial(exps), coeff))
}

impl fmt::Display for MultivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultivariatePoly[{}]({})", self.vars.join(","), self.to_text())
    }
}

/// JSON term-map form: `{"vars": [...], "terms": {"e1,e2,...": "p/q"}}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: BTreeMap<String, String>,
}

impl Serialize for MultivariatePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let key = m.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                (key, format_rational(c))
            })
            .collect();
        PolyJson {
            vars: self.vars.to_vec(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultivariatePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let mut terms = Vec::new();
        for (k, v) in &raw.terms {
            let exps = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(D::Error::custom)?
            };
            let c = parse_rational(v).map_err(D::Error::custom)?;
            terms.push((exps, c));
        }
        MultivariatePoly::from_terms(&raw.vars, terms).map_err(D::Error::custom)
    }
}

impl ExactDomain for MultivariatePoly {
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

/// Determinant of a polynomial matrix: strip the rational content of every
/// row, then run fraction-free elimination and restore the contents.
pub fn poly_det(rows: Vec<Vec<MultivariatePoly>>, vars: &[String]) -> MultivariatePoly {
    let mut scale = Rational::one();
    let mut stripped = Vec::with_capacity(rows.len());
    for row in rows {
        let c = super::rational::content(row.iter().flat_map(|p| p.terms.values()));
        if c.is_zero() {
            return MultivariatePoly::zero(vars);
        }
        let inv = c.recip();
        scale *= &c;
        stripped.push(row.iter().map(|p| p.scale(&inv)).collect());
    }
    super::det::ff_det(stripped, MultivariatePoly::one(vars)).scale(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn symbolic_2x2_det() {
        let v = names(&["a", "b", "c", "d"]);
        let x = |i| MultivariatePoly::var(&v, i, rat(1));
        let det = poly_det(vec![vec![x(0), x(1)], vec![x(2), x(3)]], &v);
        let expect = x(0).mul(&x(3)).sub(&x(1).mul(&x(2)));
        assert_eq!(det, expect);
    }

    #[test]
    fn exact_division_round_trip() {
        let v = names(&["x", "y"]);
        let x = MultivariatePoly::var(&v, 0, rat(1));
        let y = MultivariatePoly::var(&v, 1, ratio(3, 2));
        let a = x.add(&y).pow(3);
        let b = x.sub(&y).mul(&x);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.add(&x).div_exact(&b), Err(Error::InexactDivision));
    }

    #[test]
    fn text_form() {
        let v = names(&["λ", "μ", "a"]);
        let l = MultivariatePoly::var(&v, 0, rat(1));
        let m = MultivariatePoly::var(&v, 1, rat(1));
        let a = MultivariatePoly::var(&v, 2, ratio(-1, 2));
        let p = l.add(&m).pow(2).mul(&a).add(&MultivariatePoly::constant(&v, rat(7)));
        let text = p.to_text();
        assert_eq!(text, "-1/2*λ^2*a - λ*μ*a - 1/2*μ^2*a + 7");
        assert_eq!(MultivariatePoly::parse(&text, &v).unwrap(), p);
        assert_eq!(MultivariatePoly::zero(&v).to_text(), "0");
    }

    #[test]
    fn prefix_variable_names() {
        let v = names(&["E_{1,1}", "E_{1,12}", "x"]);
        let p = MultivariatePoly::var(&v, 1, rat(2)).mul(&MultivariatePoly::var(&v, 0, rat(1)));
        assert_eq!(MultivariatePoly::parse(&p.to_text(), &v).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let v = names(&["x", "y"]);
        let p = MultivariatePoly::from_terms(&v, [(vec![2, 1], ratio(5, 3)), (vec![0, 0], rat(-1))]).unwrap();
        let js = serde_json::to_string(&p).unwrap();
        let back: MultivariatePoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
}
