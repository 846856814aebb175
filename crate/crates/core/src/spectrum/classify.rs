use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::charpoly::char_poly;
use super::sampling::{par_map, SamplerConfig};
use crate::algebra::{AlgebraElement, Algebra};
use crate::arith::rational::{format_rational, Rational};
use crate::arith::roots::uni_roots;
use crate::error::{Error, Result};
use crate::functional::{subspace_product, AlphaValue, Functional, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Type1,
    Type2,
    Type3,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Type1 => "Type1",
            Verdict::Type2 => "Type2",
            Verdict::Type3 => "Type3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub min_nil_dim: usize,
    pub witness_functionals: Vec<BTreeMap<String, String>>,
    pub samples_used: usize,
    pub seed: u64,
}

fn label_map(alg: &Algebra, coords: &[Rational]) -> BTreeMap<String, String> {
    alg.labels()
        .iter()
        .zip(coords)
        .map(|(l, c)| (l.clone(), format_rational(c)))
        .collect()
}

struct Sample {
    coords: Vec<Rational>,
    nil_dim: usize,
    /// χ restricted to a complement of Nil_F is nonzero.
    chi_nonzero: bool,
}

fn sample_type(alg: &Algebra, coords: Vec<Rational>) -> Result<Sample> {
    let f = Functional::new(alg, coords)?;
    let nil = f.nil();
    let chi_nonzero = if nil.is_zero() {
        !char_poly(&f, None)?.is_zero()
    } else {
        let v = Subspace::span(nil.complement_basis(), alg.dim());
        !char_poly(&f, Some(&v))?.is_zero()
    };
    Ok(Sample {
        nil_dim: nil.dim(),
        coords: f.coords().to_vec(),
        chi_nonzero,
    })
}

/// Type of the algebra, decided on random functionals: the minimal
/// dimension of Nil_F and whether χ survives on a complement of it.
pub fn classify(alg: &Algebra, cfg: &SamplerConfig) -> Result<ClassificationReport> {
    let samples = cfg.functionals(alg.dim());
    let results = par_map(&samples, cfg.workers, |c| sample_type(alg, c.clone()));
    let results: Vec<Sample> = results.into_iter().collect::<Result<_>>()?;
    let min_nil_dim = results.iter().map(|s| s.nil_dim).min().unwrap_or(0);
    let minimal: Vec<&Sample> = results.iter().filter(|s| s.nil_dim == min_nil_dim).collect();
    let good = minimal.iter().find(|s| s.chi_nonzero);
    let verdict = match (min_nil_dim, good.is_some()) {
        (0, true) => Verdict::Type1,
        (_, true) => Verdict::Type2,
        _ => Verdict::Type3,
    };
    let witness = match good {
        Some(s) => vec![label_map(alg, &s.coords)],
        None => minimal.iter().take(1).map(|s| label_map(alg, &s.coords)).collect(),
    };
    Ok(ClassificationReport {
        verdict,
        min_nil_dim,
        witness_functionals: witness,
        samples_used: results.len(),
        seed: cfg.seed,
    })
}

/// A sampled functional minimizing `dim Stab_F(α)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularWitness {
    pub alpha: AlphaValue,
    pub dim: usize,
    #[serde(with = "crate::arith::rational::serde_rational_vec")]
    pub coords: Vec<Rational>,
    pub functional: BTreeMap<String, String>,
    pub samples_used: usize,
    pub seed: u64,
}

impl RegularWitness {
    pub fn functional<'a>(&self, alg: &'a Algebra) -> Functional<'a> {
        Functional::new(alg, self.coords.clone()).expect("witness matches algebra")
    }
}

pub fn find_regular(alg: &Algebra, alpha: &AlphaValue, cfg: &SamplerConfig) -> Result<RegularWitness> {
    let samples = cfg.functionals(alg.dim());
    if samples.is_empty() {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let dims = par_map(&samples, cfg.workers, |c| {
        Functional::new(alg, c.clone()).map(|f| f.stab(alpha).dim())
    });
    let dims: Vec<usize> = dims.into_iter().collect::<Result<_>>()?;
    let (best, &dim) = dims
        .iter()
        .enumerate()
        .min_by_key(|&(i, d)| (*d, i))
        .expect("nonempty");
    Ok(RegularWitness {
        alpha: alpha.clone(),
        dim,
        functional: label_map(alg, &samples[best]),
        coords: samples[best].clone(),
        samples_used: samples.len(),
        seed: cfg.seed,
    })
}

/// `ind = min dim Stab_F(1)` over the samples.
pub fn index(alg: &Algebra, cfg: &SamplerConfig) -> Result<RegularWitness> {
    find_regular(alg, &AlphaValue::one(), cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub witness: RegularWitness,
    pub constant_alphas: Vec<AlphaValue>,
    pub checks: Vec<CheckResult>,
}

impl CorollaryReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Nonzero finite exact roots of the pencil shared by every sample.
pub fn constant_spectrum(alg: &Algebra, cfg: &SamplerConfig) -> Result<Vec<Rational>> {
    let samples = cfg.functionals(alg.dim());
    let polys = par_map(&samples, cfg.workers, |c| {
        Functional::new(alg, c.clone()).and_then(|f| char_poly(&f, None)).map(|chi| chi.pencil_poly())
    });
    let polys: Vec<_> = polys.into_iter().collect::<Result<_>>()?;
    let polys: Vec<_> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (root, _) in uni_roots(first)? {
        if let Some(r) = root.as_exact() {
            if !r.is_zero() && polys.iter().all(|p| p.eval(r).is_zero()) {
                out.push(r.clone());
            }
        }
    }
    Ok(out)
}

fn elem<'a>(alg: &'a Algebra, v: &[Rational]) -> AlgebraElement<'a> {
    alg.element(v.to_vec()).expect("vector of algebra dimension")
}

/// Checks at a 1-regular witness: Stab_F(1) is commutative; `xy = α yx` for
/// `x ∈ Stab_F(α)`, `y ∈ Stab_F(1/α)` and each constant spectral value α;
/// `Stab_F(0)·Stab_F(∞) = 0`.
pub fn regularity_corollary_suite(alg: &Algebra, cfg: &SamplerConfig) -> Result<CorollaryReport> {
    let witness = index(alg, cfg)?;
    let f = witness.functional(alg);
    let mut checks = Vec::new();

    let s1 = f.stab(&AlphaValue::one());
    let mut bad = None;
    'outer: for x in s1.basis() {
        for y in s1.basis() {
            if alg.multiply(x, y) != alg.multiply(y, x) {
                bad = Some(format!("{} and {} do not commute", alg.format_vector(x), alg.format_vector(y)));
                break 'outer;
            }
        }
    }
    checks.push(CheckResult::new(
        "stab(1) commutative",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("dim stab(1) = {}", s1.dim())),
    ));

    let constants = constant_spectrum(alg, cfg)?;
    let mut constant_alphas = Vec::new();
    for a in &constants {
        let alpha = AlphaValue::Finite(a.clone());
        constant_alphas.push(alpha.clone());
        if a == &Rational::from_integer(1.into()) {
            continue;
        }
        let sa = f.stab(&alpha);
        let sb = f.stab(&alpha.inverse());
        let mut bad = None;
        'pairs: for x in sa.basis() {
            for y in sb.basis() {
                let xy = elem(alg, &alg.multiply(x, y));
                let yx: Vec<Rational> = alg.multiply(y, x).iter().map(|c| c * a).collect();
                let diff = xy.add(&elem(alg, &yx.iter().map(|c| -c).collect::<Vec<_>>()))?;
                if !diff.is_zero() {
                    bad = Some(format!("x = {}, y = {}", alg.format_vector(x), alg.format_vector(y)));
                    break 'pairs;
                }
            }
        }
        checks.push(CheckResult::new(
            format!("xy = {} yx", format_rational(a)),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} x {} pairs", sa.dim(), sb.dim())),
        ));
    }

    let s0 = f.stab(&AlphaValue::zero());
    let sinf = f.stab(&AlphaValue::Infinity);
    let prod = subspace_product(alg, &s0, &sinf)?;
    checks.push(CheckResult::new(
        "stab(0)·stab(inf) = 0",
        prod.is_zero(),
        format!("product dim {}", prod.dim()),
    ));
    Ok(CorollaryReport {
        witness,
        constant_alphas,
        checks,
    })
}

/// `𝔄 / Nil_F` with the functional pushed forward. Requires Nil_F to be a
/// two-sided ideal on which `F` vanishes.
pub fn quotient_by_nil(f: &Functional<'_>) -> Result<(Algebra, Vec<Rational>)> {
    let alg = f.algebra();
    let n = alg.dim();
    let nil = f.nil();
    let whole = Subspace::whole(n);
    if !nil.contains_subspace(&subspace_product(alg, &whole, &nil)?)
        || !nil.contains_subspace(&subspace_product(alg, &nil, &whole)?)
        || !f.vanishes_on(&nil)
    {
        return Err(Error::NotAnIdeal);
    }
    let pivots: Vec<usize> = nil
        .basis()
        .iter()
        .map(|v| v.iter().position(|c| !c.is_zero()).expect("nonzero"))
        .collect();
    let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let reduce = |mut v: Vec<Rational>| -> Vec<Rational> {
        for (b, &p) in nil.basis().iter().zip(&pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
        }
        keep.iter().map(|&i| v[i].clone()).collect()
    };
    let structure: Vec<Vec<Vec<Rational>>> = keep
        .iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| reduce(alg.multiply(&alg.basis_vector(i), &alg.basis_vector(j))))
                .collect()
        })
        .collect();
    let labels = keep.iter().map(|&i| alg.labels()[i].clone()).collect();
    let unity = alg.unity().map(|u| reduce(u.to_vec()));
    let quotient = Algebra::new(labels, structure, unity)?;
    let coords = keep.iter().map(|&i| f.coords()[i].clone()).collect();
    Ok((quotient, coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, mat, nilpotent_pair, seaweed, tensor_product, ut, NilpotentData};
    use crate::arith::rational::rat;

    fn cfg() -> SamplerConfig {
        SamplerConfig::new(11, 8)
    }

    #[test]
    fn types() {
        assert_eq!(classify(&mat(2).unwrap(), &cfg()).unwrap().verdict, Verdict::Type1);
        assert_eq!(classify(&ut(2).unwrap(), &cfg()).unwrap().verdict, Verdict::Type1);
        let b = NilpotentData::scalar_i64(&[&[1, 2, 0], &[2, 1, 3], &[0, 3, 5]]);
        let r = classify(&nilpotent_pair(&b).unwrap(), &cfg()).unwrap();
        assert_eq!((r.verdict, r.min_nil_dim), (Verdict::Type2, 1));
        let shift = NilpotentData::scalar_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let r = classify(&nilpotent_pair(&shift).unwrap(), &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Type3);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ClassificationReport>(&js).unwrap(), r);
    }

    #[test]
    fn indices() {
        assert_eq!(index(&ut(2).unwrap(), &cfg()).unwrap().dim, 1);
        assert_eq!(index(&mat(3).unwrap(), &cfg()).unwrap().dim, 3);
        let u = ut(2).unwrap();
        assert_eq!(index(&tensor_product(&u, &u).unwrap(), &cfg()).unwrap().dim, 3);
        assert_eq!(find_regular(&ut(2).unwrap(), &AlphaValue::zero(), &cfg()).unwrap().dim, 1);
        assert_eq!(find_regular(&mat(2).unwrap(), &AlphaValue::one(), &cfg()).unwrap().dim, 2);
    }

    #[test]
    fn corollaries() {
        let r = regularity_corollary_suite(&seaweed(&[2, 1], &[1, 2]).unwrap(), &cfg()).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        assert_eq!(r.constant_alphas, vec![AlphaValue::one()]);
        let r = regularity_corollary_suite(&mat(3).unwrap(), &cfg()).unwrap();
        assert!(r.pass());
        assert!(r.constant_alphas.iter().all(|a| a == &AlphaValue::one()));
    }

    #[test]
    fn quotient() {
        let zero = nilpotent_pair(&NilpotentData::scalar_i64(&[&[0]])).unwrap();
        let alg = direct_sum(&mat(2).unwrap(), &zero).unwrap();
        let f = Functional::from_i64(&alg, &[1, 2, -1, 3, 0, 0]).unwrap();
        assert_eq!(f.nil().dim(), 2);
        let (q, g) = quotient_by_nil(&f).unwrap();
        assert_eq!(q.structure(), mat(2).unwrap().structure());
        assert_eq!(g, vec![rat(1), rat(2), rat(-1), rat(3)]);
        let f = Functional::from_i64(&alg, &[1, 2, -1, 3, 0, 4]).unwrap();
        assert_eq!(quotient_by_nil(&f).unwrap_err(), Error::NotAnIdeal);
    }
}
