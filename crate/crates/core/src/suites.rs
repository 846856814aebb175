//! Named invariant suites run over a fixed corpus of small algebras.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    direct_sum, mat, nilpotent_pair, opposite, seaweed, tensor_product, type3_example, unital_extension, ut, Algebra,
    NilpotentData,
};
use crate::arith::matrix::RatMatrix;
use crate::arith::rational::{rat, Rational};
use crate::error::{Error, Result};
use crate::functional::{subspace_product, trace_pairing, AlphaValue, Functional, Subspace};
use crate::spectrum::{
    char_poly, jordan_spaces, jordan_spaces_with_alpha0, regularity_corollary_suite, spectrum,
    CheckResult, SamplerConfig, SpectralValue,
};
use crate::tensor_lab::{
    det_kronecker_check, exact_spectral_values, extended_cayley_check, kronecker_swap_check, random_cayley_instances,
    tensor_char_check, tensor_stab_suite, IdentityReport,
};

pub const SUITES: [&str; 6] = ["stab-props", "vk-props", "cayley", "tensor-chi", "regular-corollaries", "tensor-stab"];

/// Options shared by all suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub sampler: SamplerConfig,
    pub instances: usize,
    pub tolerance: f64,
    /// Largest tensor product dimension used by `tensor-chi`.
    pub max_product_dim: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            sampler: SamplerConfig::new(0, 3),
            instances: 30,
            tolerance: 1e-6,
            max_product_dim: 36,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, checks: Vec<CheckResult>) -> Self {
        SuiteReport {
            suite: suite.into(),
            seed,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(
            f,
            "suite {} (seed {}): {} checks, {} failed",
            self.suite,
            self.seed,
            self.checks.len(),
            failed
        )?;
        for c in self.failures() {
            writeln!(f, "  FAIL {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Small instances of every constructor.
pub fn desk_corpus() -> Vec<(String, Algebra)> {
    let sym3 = NilpotentData::scalar_i64(&[&[1, 2, 0], &[2, 1, 3], &[0, 3, 5]]);
    let sym2 = NilpotentData::scalar_i64(&[&[1, 2], &[2, -1]]);
    let shift = NilpotentData::scalar_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let chain = NilpotentData::scalar_i64(&[&[0, 0, 0, 1], &[0, 0, 1, -1], &[0, -1, 0, 0], &[-1, -1, 0, 0]]);
    let m1 = mat(1).expect("valid");
    let u2 = ut(2).expect("valid");
    vec![
        ("mat:1".into(), m1.clone()),
        ("mat:2".into(), mat(2).expect("valid")),
        ("mat:3".into(), mat(3).expect("valid")),
        ("ut:2".into(), u2.clone()),
        ("ut:3".into(), ut(3).expect("valid")),
        ("seaweed:1,2;2,1".into(), seaweed(&[1, 2], &[2, 1]).expect("valid")),
        ("seaweed:2,1;1,2".into(), seaweed(&[2, 1], &[1, 2]).expect("valid")),
        ("seaweed:1,1,1;3".into(), seaweed(&[1, 1, 1], &[3]).expect("valid")),
        ("nilpotent(sym3)".into(), nilpotent_pair(&sym3).expect("valid")),
        ("type3".into(), type3_example()),
        ("nilpotent(shift)".into(), nilpotent_pair(&shift).expect("valid")),
        ("unital(nilpotent(sym2))".into(), unital_extension(&nilpotent_pair(&sym2).expect("valid")).expect("valid")),
        ("unital(nilpotent(chain))".into(), unital_extension(&nilpotent_pair(&chain).expect("valid")).expect("valid")),
        ("mat:1+mat:1".into(), direct_sum(&m1, &m1).expect("valid")),
        ("opp:ut:2".into(), opposite(&u2)),
        ("ut:2*ut:2".into(), tensor_product(&u2, &u2).expect("valid")),
    ]
}

/// Push one check per name, merging many sub-results into a single line.
struct Collector {
    checks: Vec<CheckResult>,
}

impl Collector {
    fn new() -> Self {
        Collector { checks: Vec::new() }
    }

    fn check(&mut self, name: String, pass: bool, detail: impl FnOnce() -> String) {
        self.checks.push(CheckResult::new(name, pass, if pass { String::new() } else { detail() }));
    }
}

fn contains(big: &Subspace, small: &Subspace) -> bool {
    big.contains_subspace(small)
}

fn stab_props(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut out = Collector::new();
    for (name, alg) in desk_corpus() {
        let whole = Subspace::whole(alg.dim());
        for (s, coords) in opts.sampler.functionals(alg.dim()).into_iter().enumerate() {
            let f = Functional::new(&alg, coords)?;
            let tag = format!("{name} #{s}");
            let values = exact_spectral_values(&f);
            let stabs: Vec<Subspace> = values.iter().map(|a| f.stab(a)).collect();
            for (a, sa) in values.iter().zip(&stabs) {
                for (b, sb) in values.iter().zip(&stabs) {
                    let prod = subspace_product(&alg, sa, sb)?;
                    match a.product(b) {
                        Some(ab) => {
                            let target = f.stab(&ab);
                            out.check(format!("{tag}: stab({a})·stab({b}) ⊆ stab({ab})"), contains(&target, &prod), || {
                                format!("product dim {}, target dim {}", prod.dim(), target.dim())
                            });
                        }
                        None if a == &AlphaValue::zero() => {
                            out.check(format!("{tag}: stab(0)·stab(inf) ⊆ Nil"), contains(&f.nil(), &prod), || {
                                format!("product dim {}", prod.dim())
                            });
                        }
                        None => {}
                    }
                }
            }
            let s0 = f.stab(&AlphaValue::zero());
            let sinf = f.stab(&AlphaValue::Infinity);
            out.check(format!("{tag}: stab(0)·A ⊆ stab(0)"), contains(&s0, &subspace_product(&alg, &s0, &whole)?), String::new);
            out.check(format!("{tag}: A·stab(inf) ⊆ stab(inf)"), contains(&sinf, &subspace_product(&alg, &whole, &sinf)?), String::new);
            for a in &values {
                if let AlphaValue::Finite(r) = a {
                    if !r.is_zero() {
                        let (d1, d2) = (f.stab(a).dim(), f.stab(&a.inverse()).dim());
                        out.check(format!("{tag}: dim stab({a}) = dim stab(1/{a})"), d1 == d2, || format!("{d1} vs {d2}"));
                    }
                }
            }
            if alg.unity().is_some() {
                for a in values.iter().filter(|a| **a != AlphaValue::one()) {
                    out.check(format!("{tag}: F vanishes on stab({a})"), f.vanishes_on(&f.stab(a)), String::new);
                }
            }
            let chi = char_poly(&f, None)?;
            if !chi.is_zero() {
                let r = spectrum(&f)?;
                for e in r.all_entries() {
                    out.check(
                        format!("{tag}: stab_dim ≤ multiplicity at {}", e.alpha),
                        e.stab_dim <= e.pencil_multiplicity,
                        || format!("{} > {}", e.stab_dim, e.pencil_multiplicity),
                    );
                }
            }
            let g = Functional::new(&alg, opts.sampler.functionals(alg.dim()).pop().unwrap_or_else(|| vec![rat(1); alg.dim()]))?;
            out.check(format!("{tag}: gram linear"), f.add(&g)?.gram() == &f.gram() + &g.gram(), String::new);
        }
    }
    rank_one_checks(&mut out)?;
    Ok(out.checks)
}

/// Both directions of "multiplicative ⇔ rank 1 with F(1) = 1" on every
/// functional with entries in {-1, 0, 1, 2} over small commutative unital
/// algebras.
fn rank_one_checks(out: &mut Collector) -> Result<()> {
    let m1 = mat(1)?;
    let sym2 = NilpotentData::scalar_i64(&[&[1, 2], &[2, -1]]);
    let algebras = [
        ("mat:1+mat:1", direct_sum(&m1, &m1)?),
        ("mat:1", m1.clone()),
        ("unital(nilpotent(sym2))", unital_extension(&nilpotent_pair(&sym2)?)?),
        ("mat:1+mat:1+mat:1", direct_sum(&direct_sum(&m1, &m1)?, &m1)?),
    ];
    let grid = [-1i64, 0, 1, 2];
    for (name, alg) in algebras {
        debug_assert!(alg.is_commutative());
        let n = alg.dim();
        let (mut mult, mut agree) = (0, true);
        let mut bad = String::new();
        for code in 0..grid.len().pow(n as u32) {
            let mut c = code;
            let coords: Vec<i64> = (0..n)
                .map(|_| {
                    let v = grid[c % grid.len()];
                    c /= grid.len();
                    v
                })
                .collect();
            let f = Functional::from_i64(&alg, &coords)?;
            let m = f.is_multiplicative() && !f.is_zero();
            let r1 = f.rank_gram() == 1 && f.unity_value() == Some(Rational::one());
            if m {
                mult += 1;
            }
            if m != r1 {
                agree = false;
                bad = format!("F = {coords:?}: multiplicative {m}, rank-1 with F(1)=1 {r1}");
            }
        }
        out.check(format!("{name}: multiplicative ⇔ rank 1 ∧ F(1)=1 ({mult} characters)"), agree && mult > 0, || bad);
    }
    Ok(())
}

/// A functional whose pencil has only rational roots, when one is known for
/// this corpus entry.
fn rational_spectrum_functional<'a>(name: &str, alg: &'a Algebra, s: usize) -> Result<Option<Functional<'a>>> {
    let k = s as i64 + 1;
    Ok(match name {
        "mat:2" => Some(trace_pairing(alg, &RatMatrix::from_i64(&[&[k, 3], &[0, 2 * k + 3]]))?),
        "mat:3" => Some(trace_pairing(alg, &RatMatrix::from_i64(&[&[k, 1, -2], &[0, 2 * k + 1, 4], &[0, 0, -3 * k]]))?),
        _ => None,
    })
}

fn vk_props(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut out = Collector::new();
    let mut completeness_runs = 0;
    for (name, alg) in desk_corpus() {
        let n = alg.dim();
        let mut functionals: Vec<Functional<'_>> = opts
            .sampler
            .functionals(n)
            .into_iter()
            .map(|c| Functional::new(&alg, c))
            .collect::<Result<_>>()?;
        for s in 0..2 {
            if let Some(f) = rational_spectrum_functional(&name, &alg, s)? {
                functionals.push(f);
            }
        }
        for (s, f) in functionals.iter().enumerate() {
            let tag = format!("{name} #{s}");
            let Ok(report) = spectrum(f) else { continue };
            let values = exact_spectral_values(f);
            let mut filtrations = Vec::new();
            for a in &values {
                let j = match jordan_spaces(f, a) {
                    Ok(j) => j,
                    Err(Error::NoRegularAlpha0) => continue,
                    Err(e) => return Err(e),
                };
                out.check(format!("{tag}: V_1({a}) = stab({a})"), j.levels[0] == f.stab(a), String::new);
                // A second valid α0, distinct from the first.
                let alt = [rat(11), Rational::new((-13).into(), 3.into()), rat(-4)]
                    .into_iter()
                    .find(|c| *c != j.alpha0_used && AlphaValue::Finite(c.clone()) != *a && {
                        let g = f.gram();
                        !(&g.transpose() - &g.scale(c)).det().expect("square").is_zero()
                    });
                if let Some(alt) = alt {
                    let j2 = jordan_spaces_with_alpha0(f, a, &alt)?;
                    out.check(format!("{tag}: V_k({a}) independent of α0"), j2.levels == j.levels, || {
                        format!("dims {:?} vs {:?}", j.dims(), j2.dims())
                    });
                }
                if alg.unity().is_some() && *a != AlphaValue::one() {
                    let ok = j.levels.iter().all(|v| f.vanishes_on(v));
                    out.check(format!("{tag}: F vanishes on V_k({a})"), ok, String::new);
                }
                filtrations.push((a.clone(), j));
            }
            for (a, ja) in &filtrations {
                for (b, jb) in &filtrations {
                    let Some(ab) = a.product(b) else { continue };
                    let target = match filtrations.iter().find(|(c, _)| *c == ab) {
                        Some((_, j)) => j.clone(),
                        None => jordan_spaces(f, &ab)?,
                    };
                    let mut bad = None;
                    for k in 1..=3 {
                        for m in 1..=(4 - k) {
                            let prod = subspace_product(&alg, &ja.level(k), &jb.level(m))?;
                            if !contains(&target.level(k + m - 1), &prod) {
                                bad.get_or_insert(format!("k={k}, m={m}"));
                            }
                        }
                    }
                    out.check(format!("{tag}: V_k({a})·V_m({b}) ⊆ V_(k+m-1)({ab})"), bad.is_none(), || bad.unwrap_or_default());
                }
            }
            let all_exact = report.entries.iter().all(|e| matches!(e.alpha, SpectralValue::Exact(_)));
            if all_exact && report.chi.degree() == n {
                completeness_runs += 1;
                let mut tops = Vec::new();
                let mut total = 0;
                for e in report.all_entries() {
                    let Some(a) = e.alpha.as_alpha() else { continue };
                    let j = jordan_spaces(f, &a)?;
                    total += j.top().dim();
                    tops.extend(j.top().basis().iter().cloned());
                }
                let rank = if tops.is_empty() { 0 } else { Subspace::span(tops, n).dim() };
                out.check(
                    format!("{tag}: ⊕ V_top(α) = A"),
                    total == n && rank == n,
                    || format!("sum of dims {total}, rank {rank}, dim {n}"),
                );
            }
        }
    }
    out.check("Jordan completeness exercised".into(), completeness_runs >= 5, || {
        format!("only {completeness_runs} rational-spectrum witnesses")
    });
    Ok(out.checks)
}

fn identity_check(r: &IdentityReport) -> CheckResult {
    CheckResult::new(
        r.identity_name.clone(),
        r.pass,
        format!(
            "{} instances{}{}",
            r.instances_checked,
            r.max_relative_error.map(|e| format!(", max relative error {e:.3e}")).unwrap_or_default(),
            r.failing_instance.as_ref().map(|v| format!(", failing {v}")).unwrap_or_default()
        ),
    )
}

fn cayley(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let seed = opts.sampler.seed;
    let instances = random_cayley_instances(opts.instances, seed);
    Ok(vec![
        identity_check(&det_kronecker_check(50, seed)),
        identity_check(&kronecker_swap_check(50, seed)),
        identity_check(&extended_cayley_check(&instances, opts.tolerance, opts.sampler.workers, Some(seed))?),
    ])
}

fn tensor_chi(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let corpus = desk_corpus();
    let mut pairs = Vec::new();
    for (i, (na, a)) in corpus.iter().enumerate() {
        for (nb, b) in corpus.iter().skip(i) {
            if a.dim() * b.dim() <= opts.max_product_dim {
                pairs.push((na, a, nb, b));
            }
        }
    }
    let cfg = &opts.sampler;
    let results = crate::spectrum::par_map(&pairs, cfg.workers, |(na, a, nb, b)| -> Result<CheckResult> {
        let fc = cfg.functionals(a.dim()).swap_remove(0);
        let gc = SamplerConfig::new(cfg.seed.wrapping_add(1), 1).functionals(b.dim()).swap_remove(0);
        let f = Functional::new(a, fc)?;
        let g = Functional::new(b, gc)?;
        let r = tensor_char_check(&f, &g, opts.tolerance)?;
        let mut c = identity_check(&r);
        c.name = format!("χ(F⊗G) on {na} ⊗ {nb}");
        Ok(c)
    });
    results.into_iter().collect()
}

fn regular_corollaries(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (name, alg) in desk_corpus() {
        let r = regularity_corollary_suite(&alg, &opts.sampler)?;
        for mut c in r.checks {
            c.name = format!("{name}: {}", c.name);
            out.push(c);
        }
    }
    Ok(out)
}

fn tensor_stab(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let corpus = desk_corpus();
    let pick = |n: &str| corpus.iter().find(|(m, _)| m == n).map(|(_, a)| a).expect("in corpus");
    let pairs = [
        ("mat:2", "ut:2"),
        ("ut:2", "ut:2"),
        ("seaweed:2,1;1,2", "ut:2"),
        ("mat:2", "mat:1"),
        ("unital(nilpotent(chain))", "ut:2"),
        ("nilpotent(sym3)", "mat:2"),
    ];
    let mut out = Vec::new();
    for (s, (na, nb)) in pairs.iter().enumerate() {
        let (a, b) = (pick(na), pick(nb));
        let cfg = SamplerConfig::new(opts.sampler.seed.wrapping_add(s as u64), 2);
        let mut fs = cfg.functionals(a.dim().max(b.dim()));
        let g = Functional::new(b, fs.pop().expect("two samples")[..b.dim()].to_vec())?;
        let f = Functional::new(a, fs.pop().expect("two samples")[..a.dim()].to_vec())?;
        for mut c in tensor_stab_suite(&f, &g)?.checks {
            c.name = format!("{na} ⊗ {nb}: {}", c.name);
            out.push(c);
        }
    }
    Ok(out)
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let checks = match name {
        "stab-props" => stab_props(opts)?,
        "vk-props" => vk_props(opts)?,
        "cayley" => cayley(opts)?,
        "tensor-chi" => tensor_chi(opts)?,
        "regular-corollaries" => regular_corollaries(opts)?,
        "tensor-stab" => tensor_stab(opts)?,
        other => return Err(Error::InvalidArgument(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport::new(name, opts.sampler.seed, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for (name, alg) in desk_corpus() {
            assert!(alg.validate().is_empty(), "{name}");
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nosuchsuite", &SuiteOptions::default()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn regular_corollaries_pass() {
        let r = run_suite("regular-corollaries", &SuiteOptions::default()).unwrap();
        assert!(r.pass, "{r}");
    }
}
