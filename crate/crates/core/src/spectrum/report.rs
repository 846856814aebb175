use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{Complex, DMatrix};
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::charpoly::char_poly;
use crate::arith::bivariate::BivariatePoly;
use crate::arith::matrix::RatMatrix;
use crate::arith::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::arith::roots::{uni_roots, ComplexApprox, RootValue};
use crate::error::{Error, Result};
use crate::functional::{AlphaValue, Functional};

/// A point of the spectrum: exact rational, floating approximation, or ∞.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectralValue {
    Exact(Rational),
    Approx(ComplexApprox),
    Infinity,
}

impl SpectralValue {
    pub fn as_alpha(&self) -> Option<AlphaValue> {
        match self {
            SpectralValue::Exact(r) => Some(AlphaValue::Finite(r.clone())),
            SpectralValue::Infinity => Some(AlphaValue::Infinity),
            SpectralValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::Exact(r) => f.write_str(&format_rational(r)),
            SpectralValue::Approx(c) => c.fmt(f),
            SpectralValue::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for SpectralValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpectralValue::Exact(r) => s.serialize_str(&format_rational(r)),
            SpectralValue::Approx(c) => c.serialize(s),
            SpectralValue::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SpectralValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Pair(ComplexApprox),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) if t == "inf" => Ok(SpectralValue::Infinity),
            Raw::Text(t) => parse_rational(&t)
                .map(SpectralValue::Exact)
                .map_err(serde::de::Error::custom),
            Raw::Pair(c) => Ok(SpectralValue::Approx(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub alpha: SpectralValue,
    pub pencil_multiplicity: usize,
    pub stab_dim: usize,
    pub precise: bool,
}

impl SpectrumEntry {
    fn new(alpha: SpectralValue, pencil_multiplicity: usize, stab_dim: usize) -> Self {
        SpectrumEntry {
            alpha,
            pencil_multiplicity,
            stab_dim,
            precise: stab_dim == pencil_multiplicity,
        }
    }
}

/// Roots of the pencil polynomial with their stabilizers. `entries` holds
/// the finite nonzero roots; 0 and ∞ are reported separately and always.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub algebra_dim: usize,
    pub functional: BTreeMap<String, String>,
    pub chi: BivariatePoly,
    pub pencil_degree: usize,
    pub entries: Vec<SpectrumEntry>,
    pub zero_entry: SpectrumEntry,
    pub infinity_entry: SpectrumEntry,
}

impl SpectrumReport {
    /// Every entry including 0 and ∞.
    pub fn all_entries(&self) -> impl Iterator<Item = &SpectrumEntry> {
        std::iter::once(&self.zero_entry)
            .chain(self.entries.iter())
            .chain(std::iter::once(&self.infinity_entry))
    }

    /// Exact spectral values carrying a nonzero stabilizer, 0 and ∞ included.
    pub fn exact_values(&self) -> Vec<AlphaValue> {
        self.all_entries()
            .filter(|e| e.stab_dim > 0 || e.pencil_multiplicity > 0)
            .filter_map(|e| e.alpha.as_alpha())
            .collect()
    }

    pub fn entry(&self, alpha: &AlphaValue) -> Option<&SpectrumEntry> {
        self.all_entries().find(|e| e.alpha.as_alpha().as_ref() == Some(alpha))
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chi = {}", self.chi)?;
        writeln!(f, "pencil degree {} of algebra dimension {}", self.pencil_degree, self.algebra_dim)?;
        writeln!(f, "{:>28}  {:>5}  {:>5}  precise", "alpha", "mult", "stab")?;
        for e in self.all_entries() {
            writeln!(
                f,
                "{:>28}  {:>5}  {:>5}  {}",
                e.alpha.to_string(),
                e.pencil_multiplicity,
                e.stab_dim,
                if e.precise { "yes" } else { "no" }
            )?;
        }
        Ok(())
    }
}

/// Dimension of `ker(Gᵀ - z G)` for complex `z`, by singular values.
pub fn numeric_stab_dim(g: &RatMatrix, z: ComplexApprox) -> usize {
    let n = g.rows();
    if n == 0 {
        return 0;
    }
    let z = Complex::new(z.re, z.im);
    let m = DMatrix::from_fn(n, n, |i, j| Complex::new(to_f64(&g[(j, i)]), 0.0) - z * to_f64(&g[(i, j)]));
    let sv = m.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-8 * max.max(1.0);
    sv.iter().filter(|&&s| s <= tol).count()
}

pub fn spectrum(f: &Functional<'_>) -> Result<SpectrumReport> {
    let chi = char_poly(f, None)?;
    if chi.is_zero() {
        return Err(Error::DegenerateCharPoly);
    }
    let n = f.algebra().dim();
    let g = f.gram();
    let p = chi.pencil_poly();
    let zero_mult = chi.lambda_valuation().unwrap_or(0);
    let inf_mult = chi.mu_valuation().unwrap_or(0);
    let mut entries = Vec::new();
    for (root, mult) in uni_roots(&p)? {
        match root {
            RootValue::Exact(r) if r.is_zero() => {}
            RootValue::Exact(r) => {
                let dim = f.stab(&AlphaValue::Finite(r.clone())).dim();
                entries.push(SpectrumEntry::new(SpectralValue::Exact(r), mult, dim));
            }
            RootValue::Approx(z) => {
                let dim = numeric_stab_dim(&g, z);
                entries.push(SpectrumEntry::new(SpectralValue::Approx(z), mult, dim));
            }
        }
    }
    Ok(SpectrumReport {
        algebra_dim: n,
        functional: f.to_label_map(),
        pencil_degree: p.degree().unwrap_or(0),
        zero_entry: SpectrumEntry::new(SpectralValue::Exact(Rational::zero()), zero_mult, f.stab(&AlphaValue::zero()).dim()),
        infinity_entry: SpectrumEntry::new(SpectralValue::Infinity, inf_mult, f.stab(&AlphaValue::Infinity).dim()),
        chi,
        entries,
    })
}
