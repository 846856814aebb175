use std::fmt;

use nalgebra::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::bivariate::BivariatePoly;
use crate::arith::matrix::RatMatrix;
use crate::arith::rational::{rat, to_f64, Rational};
use crate::arith::resultant::pencil_det;
use crate::arith::roots::{uni_roots, RootValue};
use crate::arith::univariate::UnivariatePoly;
use crate::error::{Error, Result};
use crate::spectrum::{par_map, SamplerConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Numeric { tolerance: f64 },
}

/// Outcome of checking an identity on a batch of instances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_name: String,
    pub instances_checked: usize,
    pub mode: CheckMode,
    pub max_relative_error: Option<f64>,
    pub pass: bool,
    pub failing_instance: Option<serde_json::Value>,
    pub seed: Option<u64>,
}

impl IdentityReport {
    fn exact(name: &str, seed: Option<u64>) -> Self {
        IdentityReport {
            identity_name: name.into(),
            instances_checked: 0,
            mode: CheckMode::Exact,
            max_relative_error: None,
            pass: true,
            failing_instance: None,
            seed,
        }
    }

    fn record(&mut self, ok: bool, instance: impl FnOnce() -> serde_json::Value) {
        self.instances_checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.failing_instance = Some(instance());
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} on {} instances",
            self.identity_name,
            if self.pass { "pass" } else { "FAIL" },
            self.instances_checked
        )?;
        if let Some(e) = self.max_relative_error {
            write!(f, ", max relative error {e:.3e}")?;
        }
        if let Some(seed) = self.seed {
            write!(f, ", seed {seed}")?;
        }
        Ok(())
    }
}

pub fn kronecker(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.kronecker(b)
}

/// Permutation `U` with `U (A⊗B) U⁻¹ = B⊗A` for `A` of size `k`, `B` of size `m`.
pub fn kronecker_swap_matrix(k: usize, m: usize) -> RatMatrix {
    let n = k * m;
    let mut u = RatMatrix::zeros(n, n);
    for a in 0..k {
        for b in 0..m {
            u[(b * k + a, a * m + b)] = Rational::one();
        }
    }
    u
}

pub fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-bound..=bound)))
}

fn random_invertible(rng: &mut impl Rng, n: usize, bound: i64) -> RatMatrix {
    loop {
        let m = random_int_matrix(rng, n, n, bound);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

fn matrix_json(m: &RatMatrix) -> serde_json::Value {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(crate::arith::format_rational).collect::<Vec<_>>())
        .collect()
}

/// `det(A⊗B) = det(A)^m det(B)^n`, on random integer matrices of sizes up to 4.
pub fn det_kronecker_check(instances: usize, seed: u64) -> IdentityReport {
    let mut rng = SamplerConfig::new(seed, 0).rng();
    let mut report = IdentityReport::exact("det(A⊗B) = det(A)^m det(B)^n", Some(seed));
    for _ in 0..instances {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let a = random_int_matrix(&mut rng, n, n, 5);
        let b = random_int_matrix(&mut rng, m, m, 5);
        let lhs = a.kronecker(&b).det().expect("square");
        let rhs = num_traits::pow(a.det().expect("square"), m) * num_traits::pow(b.det().expect("square"), n);
        report.record(lhs == rhs, || serde_json::json!({"a": matrix_json(&a), "b": matrix_json(&b)}));
    }
    report
}

/// Conjugation by the swap permutation exchanges the Kronecker factors, and
/// the product with inverses is the identity.
pub fn kronecker_swap_check(instances: usize, seed: u64) -> IdentityReport {
    let mut rng = SamplerConfig::new(seed, 0).rng();
    let mut report = IdentityReport::exact("U (A⊗B) U⁻¹ = B⊗A", Some(seed));
    for _ in 0..instances {
        let k = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let a = random_invertible(&mut rng, k, 5);
        let b = random_invertible(&mut rng, m, 5);
        let u = kronecker_swap_matrix(k, m);
        let ui = u.transpose();
        let ok = &(&u * &a.kronecker(&b)) * &ui == b.kronecker(&a)
            && &a.kronecker(&b) * &a.inverse().expect("invertible").kronecker(&b.inverse().expect("invertible"))
                == RatMatrix::identity(k * m);
        report.record(ok, || serde_json::json!({"a": matrix_json(&a), "b": matrix_json(&b)}));
    }
    report
}

type C64 = Complex<f64>;

/// Linear factors `(α_i, β_i)` and scale `c` with `χ = c ∏ (α_i λ + β_i μ)`.
/// Rational roots are used exactly, the rest numerically.
fn linear_factors(chi: &BivariatePoly) -> Result<(f64, Vec<(C64, C64)>)> {
    let n = chi.degree();
    let vl = chi.lambda_valuation().ok_or(Error::DegeneratePencil)?;
    let vm = chi.mu_valuation().ok_or(Error::DegeneratePencil)?;
    let top = n - vm;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut factors = vec![(one, zero); vl];
    factors.extend(std::iter::repeat((zero, one)).take(vm));
    let q = UnivariatePoly::new(chi.coeffs()[vl..=top].to_vec());
    if q.degree().unwrap_or(0) > 0 {
        for (root, mult) in uni_roots(&q)? {
            let t = match root {
                RootValue::Exact(r) => C64::new(to_f64(&r), 0.0),
                RootValue::Approx(z) => C64::new(z.re, z.im),
            };
            factors.extend(std::iter::repeat((one, -t)).take(mult));
        }
    }
    Ok((to_f64(&chi.coeff(top)), factors))
}

fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `χ(λC, μD)` with `χ(λ, μ) = det(λA + μB)`, evaluated through the linear
/// factors of `χ`. Coefficients ascend in the power of λ.
pub fn factored_rhs(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix, d: &RatMatrix) -> Result<Vec<C64>> {
    let chi = pencil_det(a, b)?;
    if chi.is_zero() {
        return Err(Error::DegeneratePencil);
    }
    let m = c.rows();
    let p = pencil_det(c, d)?;
    let p: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let (scale, factors) = linear_factors(&chi)?;
    let mut acc = vec![C64::new(scale.powi(m as i32), 0.0)];
    for (alpha, beta) in factors {
        let term: Vec<C64> = (0..=m)
            .map(|k| p[k] * alpha.powu(k as u32) * beta.powu((m - k) as u32))
            .collect();
        acc = poly_mul(&acc, &term);
    }
    Ok(acc)
}

/// Max coefficient deviation relative to the largest exact coefficient.
pub fn relative_error(exact: &BivariatePoly, approx: &[C64]) -> f64 {
    let ex: Vec<f64> = exact.coeffs().iter().map(to_f64).collect();
    let scale = ex.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diff = (0..ex.len().max(approx.len()))
        .map(|k| {
            let e = ex.get(k).copied().unwrap_or(0.0);
            let a = approx.get(k).copied().unwrap_or_default();
            (C64::new(e, 0.0) - a).norm()
        })
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// One instance of `det(λ A⊗C + μ B⊗D) = χ(λC, μD)`; returns the relative
/// error of the factored right-hand side against the exact left-hand side.
pub fn extended_cayley_error(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix, d: &RatMatrix) -> Result<f64> {
    let lhs = pencil_det(&a.kronecker(c), &b.kronecker(d))?;
    let rhs = factored_rhs(a, b, c, d)?;
    Ok(relative_error(&lhs, &rhs))
}

#[derive(Clone, Debug)]
pub struct CayleyInstance {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
    pub d: RatMatrix,
}

impl CayleyInstance {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": matrix_json(&self.a), "b": matrix_json(&self.b),
            "c": matrix_json(&self.c), "d": matrix_json(&self.d),
        })
    }
}

/// Seeded random instances with entries in `[-5, 5]`, sizes up to 4 and a
/// nonvanishing pencil `det(λA + μB)`.
pub fn random_cayley_instances(count: usize, seed: u64) -> Vec<CayleyInstance> {
    let mut rng = SamplerConfig::new(seed, 0).rng();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let inst = CayleyInstance {
            a: random_int_matrix(&mut rng, n, n, 5),
            b: random_int_matrix(&mut rng, n, n, 5),
            c: random_int_matrix(&mut rng, m, m, 5),
            d: random_int_matrix(&mut rng, m, m, 5),
        };
        if !pencil_det(&inst.a, &inst.b).expect("square").is_zero() {
            out.push(inst);
        }
    }
    out
}

pub fn extended_cayley_check(instances: &[CayleyInstance], tolerance: f64, workers: usize, seed: Option<u64>) -> Result<IdentityReport> {
    let errors = par_map(instances, workers, |i| extended_cayley_error(&i.a, &i.b, &i.c, &i.d));
    let mut report = IdentityReport {
        identity_name: "det(λA⊗C + μB⊗D) = χ(λC, μD)".into(),
        instances_checked: 0,
        mode: CheckMode::Numeric { tolerance },
        max_relative_error: Some(0.0),
        pass: true,
        failing_instance: None,
        seed,
    };
    for (inst, err) in instances.iter().zip(errors) {
        let err = err?;
        report.max_relative_error = report.max_relative_error.map(|m| m.max(err));
        report.record(err <= tolerance, || inst.to_json());
    }
    Ok(report)
}
