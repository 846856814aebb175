use std::process::Command;

use functal::arith::{rat, MultivariatePoly, Rational};
use functal::spectrum::{ClassificationReport, JordanFiltration, RegularWitness, SpectrumReport};
use functal::suites::SuiteReport;
use functal::tensor_lab::ConjectureReport;
use functal_cli::{ChiReport, GalleryEntry, StabReport, SymbolicChiReport, TensorReport};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = functal_cli::run(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = call(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"))
}

#[test]
fn symbolic_mat2() {
    let (code, out, _) = call(&["chi", "--algebra", "mat:2", "--symbolic", "--letters"]);
    assert_eq!(code, 0);
    let vars: Vec<String> = ["λ", "μ", "a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let got = MultivariatePoly::parse(out.lines().nth(1).unwrap(), &vars).unwrap();
    let v = |i: usize| MultivariatePoly::var(&vars, i, rat(1));
    let (l, m, a, b, c, d) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let det = a.mul(&d).sub(&b.mul(&c));
    let plus = l.add(&m);
    let minus = l.sub(&m);
    let inner = minus.mul(&minus).mul(&det).add(&l.mul(&m).mul(&a.add(&d).pow(2)));
    let golden = plus.pow(2).mul(&det).mul(&inner).neg();
    assert!(got.proportional(&golden));
    let r: SymbolicChiReport = json(&["chi", "--algebra", "mat:2", "--symbolic", "--letters"]);
    assert_eq!(r.chi, got);
}

#[test]
fn index_ut2() {
    let (code, out, _) = call(&["index", "--algebra", "ut:2", "--seed", "7"]);
    assert_eq!((code, out.trim()), (0, "1"));
    let w: RegularWitness = json(&["index", "--algebra", "ut:2", "--seed", "7"]);
    assert_eq!(w.dim, 1);
}

#[test]
fn classify_mat3() {
    let (code, out, _) = call(&["classify", "--algebra", "mat:3", "--samples", "8", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("Type1"));
    assert!(out.contains("witness: "));
    let r: ClassificationReport = json(&["classify", "--algebra", "mat:3", "--samples", "8", "--seed", "1"]);
    assert_eq!(r.witness_functionals.len(), 1);
    assert_eq!((r.seed, r.samples_used), (1, 8));
}

#[test]
fn verify_suites() {
    assert_eq!(call(&["verify", "nosuchsuite"]).0, 2);
    let (code, _, err) = call(&["verify", "stab-props", "--seed", "3"]);
    assert_eq!(code, 0, "{err}");
    let r: SuiteReport = json(&["verify", "cayley", "--instances", "30", "--tol", "1e-6"]);
    assert!(r.pass);
    assert!(!r.checks.is_empty());
}

#[test]
fn json_round_trips() {
    let f = "1,0,0,0,2,0,0,0,5";
    let s: SpectrumReport = json(&["spectrum", "-a", "mat:3", "-f", f]);
    assert_eq!(s.algebra_dim, 9);
    let st: StabReport = json(&["stab", "-a", "mat:3", "-f", f, "--alpha", "1/2"]);
    assert_eq!(st.dim, 1);
    let st: StabReport = json(&["stab", "-a", "type3", "-f", "1,2,3,4", "--alpha", "nil"]);
    assert_eq!(st.alpha, "nil");
    let c: ChiReport = json(&["chi", "-a", "ut:2", "-f", "1,2,3"]);
    assert_eq!(c.chi.degree(), 3);
    let j: JordanFiltration = json(&["jordan", "-a", "ut:2", "-f", "1,2,3", "--alpha", "inf"]);
    assert_eq!(j.dims(), vec![1]);
    let p: ConjectureReport = json(&["probe", "-a", "ut:2", "--other", "ut:2", "--seed", "3"]);
    assert_eq!((p.index_product, p.product_of_indices, p.resonance_sum), (3, 1, 2));
    let t: TensorReport = json(&["tensor", "-a", "mat:2", "--other", "ut:2", "--seed", "4"]);
    assert!(t.char_check.pass && t.stab.pass());
}

#[test]
fn functional_forms_agree() {
    let a: ChiReport = json(&["chi", "-a", "ut:2", "-f", "1,2,3"]);
    let b: ChiReport = json(&["chi", "-a", "ut:2", "--letters", "-f", r#"{"a": 1, "b": "2", "c": 3}"#]);
    assert_eq!(a.chi, b.chi);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"a": "1/2", "c": -1}"#).unwrap();
    let c: ChiReport = json(&["chi", "-a", "ut:2", "--letters", "-f", path.to_str().unwrap()]);
    assert_eq!(c.functional.get("a").map(String::as_str), Some("1/2"));
    let d: ChiReport = json(&["chi", "-a", "ut:2", "-f", "1/2,0,-1"]);
    assert_eq!(c.chi, d.chi);
}

#[test]
fn spec_and_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sw.json");
    let file = file.to_str().unwrap();
    let (code, _, _) = call(&["new", "-a", "seaweed:1,2;2,1", "-o", file]);
    assert_eq!(code, 0);
    assert_eq!(call(&["validate", "-a", file]).0, 0);
    for verb in ["spectrum", "classify", "index"] {
        let from_spec = call(&[verb, "-a", "seaweed:1,2;2,1", "--seed", "9", "--format", "json"]);
        let from_file = call(&[verb, "-a", file, "--seed", "9", "--format", "json"]);
        assert_eq!(from_spec, from_file, "{verb}");
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["classify", "-a", "seaweed:2,1;1,2", "--seed", "11", "--format", "json"];
    assert_eq!(call(&args), call(&args));
    let a = call(&["chi", "-a", "ut:3", "--seed", "5", "--format", "json"]);
    let b = call(&["chi", "-a", "ut:3", "--seed", "6", "--format", "json"]);
    assert_ne!(a.1, b.1);
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_functal");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(bin);
        c.args(["chi", "-a", "ut:3", "--format", "json"]).args(extra);
        c.env_remove("FUNCTAL_SEED");
        if let Some(s) = env {
            c.env("FUNCTAL_SEED", s);
        }
        let o = c.output().unwrap();
        assert!(o.status.success());
        String::from_utf8(o.stdout).unwrap()
    };
    assert_eq!(run(Some("42"), &[]), run(None, &["--seed", "42"]));
    assert_ne!(run(Some("42"), &[]), run(None, &[]));
    let o = Command::new(bin).args(["verify", "nosuchsuite"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["index"]).0, 2);
    assert_eq!(call(&["index", "-a", "nonsense:3"]).0, 2);
    assert_eq!(call(&["chi", "-a", "ut:2", "-f", "1,x,3"]).0, 2);
    assert_eq!(call(&["chi", "-a", "ut:2", "-f", "1,2"]).0, 2);
    assert_eq!(call(&["chi", "-a", "ut:2", "-f", r#"{"zz": 1}"#]).0, 2);
    assert_eq!(call(&["stab", "-a", "ut:2", "-f", "1,2,3", "--alpha", "1/0"]).0, 2);
    assert_eq!(call(&["index", "-a", "abc0:[[1"]).0, 2);
    assert_eq!(call(&["probe", "-a", "ut:2"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    // analysis refusals
    assert_eq!(call(&["spectrum", "-a", "ut:2", "-f", "0,0,0"]).0, 1);
    assert_eq!(call(&["jordan", "-a", "type3", "-f", "1,2,3,4"]).0, 1);
    assert_eq!(call(&["chi", "-a", "mat:4*mat:2", "--symbolic"]).0, 1);
    assert_eq!(call(&["probe", "-a", "type3", "--other", "ut:2"]).0, 1);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn invalid_algebra_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // e0 e0 = e1, every other product zero, but declared unity e0.
    std::fs::write(&path, r#"{"basis": ["x", "y"], "dim": 2, "table": [[[0, 1], [0, 0]], [[0, 0], [0, 0]]], "unity": [1, 0]}"#).unwrap();
    let (code, _, err) = call(&["validate", "-a", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unity"), "{err}");
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(call(&["show", "-a", path.to_str().unwrap()]).0, 2);
}

#[test]
fn gallery_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let entries: Vec<GalleryEntry> = json(&["gallery", "-o", d]);
    assert!(entries.len() >= 9);
    for e in entries.iter().filter(|e| !e.file.contains("functional")) {
        let path = dir.path().join(&e.file);
        let (code, _, err) = call(&["validate", "-a", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{}: {err}", e.file);
        let from_file = call(&["show", "-a", path.to_str().unwrap(), "--format", "json"]);
        let from_spec = call(&["show", "-a", &e.spec, "--format", "json"]);
        assert!(from_file == from_spec, "{} differs from {}", e.file, e.spec);
    }
    let mat3 = dir.path().join("mat3.json");
    let f = dir.path().join("mat3_diag125.functional.json");
    let st: StabReport = json(&["stab", "-a", mat3.to_str().unwrap(), "-f", f.to_str().unwrap(), "--alpha", "2/5"]);
    assert_eq!(st.dim, 1);
    assert_eq!(st.subspace.basis()[0].iter().filter(|x| **x != Rational::from_integer(0.into())).count(), 1);
}
