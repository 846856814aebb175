//! The `functal` command line: build or load algebras, run the analyses and
//! print text or JSON reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use functal::algebra::{from_spec, mat, parse_algebra, seaweed, serialize_algebra, tensor_product, type3_example, ut, Algebra, AlgebraDocument};
use functal::arith::{parse_rational, BivariatePoly, MultivariatePoly, RatMatrix, Rational};
use functal::functional::{trace_pairing, AlphaValue, Functional, Subspace};
use functal::spectrum::{
    char_poly, char_poly_symbolic, classify, index, jordan_spaces, random_vector, spectrum, symbolic_vars,
    JordanFiltration, SamplerConfig,
};
use functal::suites::{run_suite, SuiteOptions};
use functal::tensor_lab::{
    conjecture_probe, mat_tensor_index_experiment, tensor_char_check, tensor_functional, tensor_stab_suite,
    IdentityReport, TensorStabReport,
};
use functal::Error;

#[derive(Parser, Debug)]
#[command(name = "functal", version, about = "Characteristic forms and stabilizers of algebra functionals")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Algebra file or constructor spec such as `mat:3`, `ut:2`, `seaweed:1,2;2,1`, `ut:2*ut:2`.
    #[arg(long, short = 'a', global = true)]
    algebra: Option<String>,

    /// Second algebra, for `tensor` and `probe`.
    #[arg(long, global = true)]
    other: Option<String>,

    /// Functional: JSON file, inline JSON object of label values, a comma list
    /// of coordinates, or `random`.
    #[arg(long, short = 'f', global = true)]
    functional: Option<String>,

    /// Functional on the second algebra.
    #[arg(long, global = true)]
    other_functional: Option<String>,

    /// Spectral value: a rational, `inf`, or `nil` for `stab`.
    #[arg(long, global = true)]
    alpha: Option<String>,

    #[arg(long, global = true, env = "FUNCTAL_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true)]
    samples: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    /// Relabel the basis a, b, c, ...
    #[arg(long, global = true)]
    letters: bool,

    #[arg(long, global = true, default_value_t = 30)]
    instances: usize,

    /// Largest tensor product dimension used by `verify tensor-chi`.
    #[arg(long, global = true, default_value_t = 36)]
    max_dim: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Write the algebra document for a spec.
    New,
    /// Print the multiplication table.
    Show,
    /// Check the axioms of an algebra file.
    Validate,
    /// Characteristic form at a functional, or symbolically.
    Chi {
        #[arg(long)]
        symbolic: bool,
    },
    /// Pencil roots with multiplicities and stabilizer dimensions.
    Spectrum,
    /// Stabilizer at `--alpha` (default 1).
    Stab,
    /// Jordan filtration at `--alpha`.
    Jordan,
    /// Type 1/2/3 with a witness functional.
    Classify,
    /// Index of the algebra.
    Index,
    /// Tensor product checks for functionals on two algebras.
    Tensor,
    /// Run a named invariant suite.
    Verify { suite: String },
    /// Index of a tensor product against the product of indices.
    Probe {
        /// Use `mat(N)⊗algebra` instead of `algebra⊗other`.
        #[arg(long)]
        mat: Option<usize>,
    },
    /// Write the standard example algebras and functionals to a directory.
    Gallery,
}

/// Failure of a command, already mapped to an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. }
            | Error::AlgebraMismatch
            | Error::AssociativityViolation(..)
            | Error::UnityViolation(_)
            | Error::NotMatrixAlgebra => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// What a command prints, plus whether it counts as success.
struct Rendered {
    body: String,
    ok: bool,
}

/// Parse `args` (without the program name) and run the command. Reports go
/// to `out`, diagnostics to `err`. Returns 0 on success, 1 when an analysis
/// refuses or a check fails, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("functal")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(&cli)));
    let result = match result {
        Ok(r) => r,
        Err(_) => Err(Failure {
            code: 1,
            message: "internal error".into(),
        }),
    };
    match result {
        Ok(r) => {
            let written = match (&cli.output, &cli.verb) {
                (_, Verb::Gallery) | (None, _) => out.write_all(r.body.as_bytes()).map_err(|e| e.to_string()),
                (Some(path), _) => std::fs::write(path, &r.body)
                    .map(|_| {
                        let _ = writeln!(err, "wrote {}", path.display());
                    })
                    .map_err(|e| format!("{}: {e}", path.display())),
            };
            match written {
                Ok(()) if r.ok => 0,
                Ok(()) => 1,
                Err(m) => {
                    let _ = writeln!(err, "error: {m}");
                    2
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn render<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn ok(body: String) -> CmdResult<Rendered> {
    Ok(Rendered { body, ok: true })
}

fn load_algebra(arg: Option<&str>, letters: bool) -> CmdResult<Algebra> {
    let arg = arg.ok_or_else(|| input_error("missing --algebra"))?;
    let alg = if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))?;
        parse_algebra(&text)?
    } else {
        from_spec(arg)?
    };
    Ok(if letters { alg.with_letters() } else { alg })
}

fn load_functional<'a>(alg: &'a Algebra, arg: Option<&str>, sampler: &SamplerConfig, stream: u64) -> CmdResult<Functional<'a>> {
    let arg = arg.unwrap_or("random").trim();
    if arg == "random" {
        let cfg = SamplerConfig::new(sampler.seed.wrapping_add(stream), 1);
        let coords = random_vector(&mut cfg.rng(), alg.dim(), cfg.bound);
        return Ok(Functional::new(alg, coords)?);
    }
    if arg.starts_with('{') {
        return Ok(Functional::from_json(alg, arg)?);
    }
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))?;
        return Ok(Functional::from_json(alg, &text)?);
    }
    let coords = arg
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(parse_rational)
        .collect::<functal::Result<Vec<Rational>>>()?;
    Ok(Functional::new(alg, coords)?)
}

fn parse_alpha(arg: Option<&str>) -> CmdResult<AlphaValue> {
    Ok(arg.unwrap_or("1").parse::<AlphaValue>()?)
}

fn sampler(cli: &Cli, default_samples: usize) -> SamplerConfig {
    SamplerConfig::new(cli.seed, cli.samples.unwrap_or(default_samples)).with_workers(cli.workers)
}

/// χ at one functional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiReport {
    pub functional: BTreeMap<String, String>,
    pub chi: BivariatePoly,
    pub normalized: BivariatePoly,
}

/// χ as a polynomial in λ, μ and the basis values of the functional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolicChiReport {
    pub text: String,
    pub chi: MultivariatePoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabReport {
    /// A spectral value, or `nil`.
    pub alpha: String,
    pub functional: BTreeMap<String, String>,
    pub dim: usize,
    pub subspace: Subspace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub unital: bool,
    pub commutative: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorReport {
    pub dim: usize,
    pub functional: BTreeMap<String, String>,
    pub other_functional: BTreeMap<String, String>,
    pub char_check: IdentityReport,
    pub stab: TensorStabReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GalleryEntry {
    pub file: String,
    pub spec: String,
    pub description: String,
}

fn basis_lines(alg: &Algebra, s: &Subspace) -> String {
    if s.is_zero() {
        return "  0\n".into();
    }
    s.basis().iter().map(|v| format!("  {}\n", alg.format_vector(v))).collect()
}

fn dispatch(cli: &Cli) -> CmdResult<Rendered> {
    let alg = || load_algebra(cli.algebra.as_deref(), cli.letters);
    match &cli.verb {
        Verb::New => ok(serialize_algebra(&alg()?) + "\n"),
        Verb::Show => {
            let a = alg()?;
            ok(render(cli, &AlgebraDocument::from_algebra(&a), || a.to_string()))
        }
        Verb::Validate => {
            let a = alg()?;
            if let Some(v) = a.validate().first() {
                return Err(v.to_error().into());
            }
            let r = ValidationReport {
                dim: a.dim(),
                unital: a.unity().is_some(),
                commutative: a.is_commutative(),
            };
            ok(render(cli, &r, || {
                format!("valid: dim {}, unital {}, commutative {}\n", r.dim, r.unital, r.commutative)
            }))
        }
        Verb::Chi { symbolic: true } => {
            let a = alg()?;
            let chi = char_poly_symbolic(&a, None)?.normalized();
            let r = SymbolicChiReport { text: chi.to_text(), chi };
            ok(render(cli, &r, || {
                format!("variables: {}\n{}\n", symbolic_vars(&a).join(", "), r.text)
            }))
        }
        Verb::Chi { symbolic: false } => {
            let a = alg()?;
            let f = load_functional(&a, cli.functional.as_deref(), &sampler(cli, 1), 0)?;
            let chi = char_poly(&f, None)?;
            let r = ChiReport {
                functional: f.to_label_map(),
                normalized: chi.normalized(),
                chi,
            };
            ok(render(cli, &r, || format!("F: {f}\nchi = {}\nnormalized: {}\n", r.chi, r.normalized)))
        }
        Verb::Spectrum => {
            let a = alg()?;
            let f = load_functional(&a, cli.functional.as_deref(), &sampler(cli, 1), 0)?;
            let r = spectrum(&f)?;
            ok(render(cli, &r, || format!("F: {f}\n{r}")))
        }
        Verb::Stab => {
            let a = alg()?;
            let f = load_functional(&a, cli.functional.as_deref(), &sampler(cli, 1), 0)?;
            let (label, s) = match cli.alpha.as_deref().map(str::trim) {
                Some("nil") => ("nil".to_string(), f.nil()),
                other => {
                    let alpha = parse_alpha(other)?;
                    (alpha.to_string(), f.stab(&alpha))
                }
            };
            let r = StabReport {
                alpha: label,
                functional: f.to_label_map(),
                dim: s.dim(),
                subspace: s,
            };
            ok(render(cli, &r, || {
                format!("F: {f}\nstab({}) has dim {}\n{}", r.alpha, r.dim, basis_lines(&a, &r.subspace))
            }))
        }
        Verb::Jordan => {
            let a = alg()?;
            let f = load_functional(&a, cli.functional.as_deref(), &sampler(cli, 1), 0)?;
            let alpha = parse_alpha(cli.alpha.as_deref())?;
            let j: JordanFiltration = jordan_spaces(&f, &alpha)?;
            ok(render(cli, &j, || {
                let mut s = format!("F: {f}\nalpha = {}, alpha0 = {}\n", j.alpha, functal::arith::format_rational(&j.alpha0_used));
                for (k, v) in j.levels.iter().enumerate() {
                    s += &format!("V_{} (dim {}):\n{}", k + 1, v.dim(), basis_lines(&a, v));
                }
                s
            }))
        }
        Verb::Classify => {
            let a = alg()?;
            let r = classify(&a, &sampler(cli, 8))?;
            ok(render(cli, &r, || {
                let mut s = format!("{}\nmin dim Nil = {}\n", r.verdict, r.min_nil_dim);
                if let Some(w) = r.witness_functionals.first() {
                    let parts: Vec<String> = w.iter().map(|(l, c)| format!("{l}={c}")).collect();
                    s += &format!("witness: {}\n", if parts.is_empty() { "0".into() } else { parts.join(", ") });
                }
                s + &format!("samples {}, seed {}\n", r.samples_used, r.seed)
            }))
        }
        Verb::Index => {
            let a = alg()?;
            let w = index(&a, &sampler(cli, 8))?;
            ok(render(cli, &w, || format!("{}\n", w.dim)))
        }
        Verb::Tensor => {
            let a = alg()?;
            let b = load_algebra(Some(cli.other.as_deref().ok_or_else(|| input_error("missing --other"))?), cli.letters)?;
            let cfg = sampler(cli, 1);
            let f = load_functional(&a, cli.functional.as_deref(), &cfg, 0)?;
            let g = load_functional(&b, cli.other_functional.as_deref(), &cfg, 1)?;
            let t = tensor_product(&a, &b)?;
            tensor_functional(&t, &f, &g)?;
            let r = TensorReport {
                dim: t.dim(),
                functional: f.to_label_map(),
                other_functional: g.to_label_map(),
                char_check: tensor_char_check(&f, &g, cli.tol)?,
                stab: tensor_stab_suite(&f, &g)?,
            };
            let pass = r.char_check.pass && r.stab.pass();
            let body = render(cli, &r, || {
                let mut s = format!("F: {f}\nG: {g}\ndim {}\n{}", r.dim, r.char_check);
                for c in &r.stab.checks {
                    s += &format!("  [{}] {}: {}\n", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
                }
                s
            });
            Ok(Rendered { body, ok: pass })
        }
        Verb::Verify { suite } => {
            let opts = SuiteOptions {
                sampler: sampler(cli, SuiteOptions::default().sampler.samples),
                instances: cli.instances,
                tolerance: cli.tol,
                max_product_dim: cli.max_dim,
            };
            let r = run_suite(suite, &opts)?;
            let body = render(cli, &r, || r.to_string());
            Ok(Rendered { body, ok: r.pass })
        }
        Verb::Probe { mat: Some(n) } => {
            let b = alg()?;
            let r = mat_tensor_index_experiment(*n, &b, &sampler(cli, 8))?;
            let body = render(cli, &r, || {
                let mut s = format!(
                    "ind mat({})⊗B = {}, expected {} · {} = {}\n",
                    r.n, r.product_index, r.n, r.factor_index, r.expected
                );
                if let Some(p) = r.witness_one_precise {
                    s += &format!("witness 1-precise: {p}\n");
                }
                for w in &r.warnings {
                    s += &format!("warning: {w}\n");
                }
                s
            });
            Ok(Rendered { body, ok: r.pass })
        }
        Verb::Probe { mat: None } => {
            let a = alg()?;
            let b = load_algebra(Some(cli.other.as_deref().ok_or_else(|| input_error("missing --other"))?), cli.letters)?;
            let r = conjecture_probe(&a, &b, &sampler(cli, 8))?;
            ok(render(cli, &r, || {
                let mut s = format!(
                    "ind(A⊗B) = {}\nind A = {}, ind B = {}, product {}\n",
                    r.index_product, r.index_a, r.index_b, r.product_of_indices
                );
                for t in &r.resonance {
                    s += &format!("  alpha = {}: {} · {}\n", t.alpha, t.dim_a, t.dim_b_inverse);
                }
                s + &format!(
                    "resonance sum = {}\n{}\nconsistent: {}\n",
                    r.resonance_sum, r.hypothesis, r.hypothesis_consistent
                )
            }))
        }
        Verb::Gallery => {
            let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("gallery"));
            let entries = write_gallery(&dir)?;
            ok(render(cli, &entries, || {
                entries
                    .iter()
                    .map(|e| format!("{:<24} {:<20} {}\n", e.file, e.spec, e.description))
                    .collect()
            }))
        }
    }
}

fn write_gallery(dir: &Path) -> CmdResult<Vec<GalleryEntry>> {
    std::fs::create_dir_all(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
    let u2 = ut(2)?;
    let algebras: Vec<(&str, &str, &str, Algebra)> = vec![
        ("mat2.json", "letters:mat:2", "2x2 matrices", mat(2)?.with_letters()),
        ("mat3.json", "mat:3", "3x3 matrices", mat(3)?),
        ("ut2.json", "letters:ut:2", "upper triangular 2x2", u2.with_letters()),
        ("ut3.json", "ut:3", "upper triangular 3x3", ut(3)?),
        ("seaweed_12_21.json", "letters:seaweed:1,2;2,1", "seaweed (1,2 | 2,1)", seaweed(&[1, 2], &[2, 1])?.with_letters()),
        ("seaweed_21_12.json", "seaweed:2,1;1,2", "seaweed (2,1 | 1,2)", seaweed(&[2, 1], &[1, 2])?),
        ("type3.json", "type3", "nilpotent pair with the degenerate B", type3_example()),
        ("ut2_ut2.json", "letters:(ut:2*ut:2)", "UT(2) ⊗ UT(2)", tensor_product(&u2, &u2)?.with_letters()),
        ("mat2_ut2.json", "mat:2*ut:2", "Mat(2) ⊗ UT(2)", tensor_product(&mat(2)?, &u2)?),
    ];
    let write = |file: &str, text: String| {
        std::fs::write(dir.join(file), text + "\n").map_err(|e| input_error(format!("{file}: {e}")))
    };
    let mut entries = Vec::new();
    for (file, spec, description, alg) in &algebras {
        write(file, serialize_algebra(alg))?;
        entries.push(GalleryEntry {
            file: file.to_string(),
            spec: spec.to_string(),
            description: description.to_string(),
        });
    }
    let m3 = mat(3)?;
    let diag = RatMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 5]]);
    write("mat3_diag125.functional.json", trace_pairing(&m3, &diag)?.to_json())?;
    entries.push(GalleryEntry {
        file: "mat3_diag125.functional.json".into(),
        spec: "mat:3".into(),
        description: "trace pairing with diag(1,2,5)".into(),
    });
    Ok(entries)
}
