use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Algebra, SparseVec};
use crate::arith::rational::{parse_rational, rat, Rational};
use crate::error::{Error, Result};

/// `a, b, c, ...`, switching to `x1, x2, ...` past 26.
pub fn letters(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn unit_label(i: usize, j: usize) -> String {
    format!("E_{{{},{}}}", i + 1, j + 1)
}

/// Subalgebra of `mat(n)` spanned by the allowed matrix units, row-major.
fn matrix_unit_algebra(n: usize, allowed: impl Fn(usize, usize) -> bool) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| allowed(i, j))
        .collect();
    let index = |p: (usize, usize)| positions.iter().position(|&q| q == p);
    let mut table = Vec::with_capacity(positions.len());
    for &(i, j) in &positions {
        let mut row = Vec::with_capacity(positions.len());
        for &(k, l) in &positions {
            row.push(if j == k {
                let t = index((i, l)).ok_or_else(|| Error::InvalidArgument("positions are not closed under products".into()))?;
                vec![(t, Rational::one())]
            } else {
                SparseVec::new()
            });
        }
        table.push(row);
    }
    let unity = if (0..n).all(|i| allowed(i, i)) {
        let mut u = vec![Rational::zero(); positions.len()];
        for i in 0..n {
            u[index((i, i)).expect("diagonal")] = Rational::one();
        }
        Some(u)
    } else {
        None
    };
    let labels = positions.iter().map(|&(i, j)| unit_label(i, j)).collect();
    Algebra::from_sparse(labels, table, unity)
}

/// Full matrix algebra on the matrix units `E_{i,j}`.
pub fn mat(n: usize) -> Result<Algebra> {
    matrix_unit_algebra(n, |_, _| true)
}

/// Upper triangular matrices.
pub fn ut(n: usize) -> Result<Algebra> {
    matrix_unit_algebra(n, |i, j| i <= j)
}

fn blocks(comp: &[usize]) -> Vec<usize> {
    comp.iter()
        .enumerate()
        .flat_map(|(b, &len)| std::iter::repeat(b).take(len))
        .collect()
}

/// Seaweed subalgebra of `mat(n)` for two compositions of `n`: the unit
/// `E_{i,j}` is kept when the top block of `i` does not exceed that of `j`
/// and the bottom block of `i` is not below that of `j`.
pub fn seaweed(top: &[usize], bottom: &[usize]) -> Result<Algebra> {
    if top.iter().any(|&x| x == 0) || bottom.iter().any(|&x| x == 0) {
        return Err(Error::InvalidArgument("composition parts must be positive".into()));
    }
    let n: usize = top.iter().sum();
    let m: usize = bottom.iter().sum();
    if n != m {
        return Err(Error::InvalidArgument(format!("compositions of different totals {n} and {m}")));
    }
    let t = blocks(top);
    let b = blocks(bottom);
    matrix_unit_algebra(n, |i, j| t[i] <= t[j] && b[i] >= b[j])
}

/// Coefficient data for [`nilpotent_pair`]: `b[i][j]` is the product
/// `v_i v_j` as a vector in `W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NilpotentData {
    #[serde(deserialize_with = "de_tensor", serialize_with = "ser_tensor")]
    pub b: Vec<Vec<Vec<Rational>>>,
}

fn ser_tensor<S: serde::Serializer>(t: &[Vec<Vec<Rational>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use crate::arith::format_rational;
    let v: Vec<Vec<Vec<String>>> = t
        .iter()
        .map(|r| r.iter().map(|x| x.iter().map(format_rational).collect()).collect())
        .collect();
    v.serialize(s)
}

fn de_tensor<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Vec<Rational>>>, D::Error> {
    use serde::de::Error as _;
    let raw = Vec::<Vec<Vec<serde_json::Value>>>::deserialize(d)?;
    raw.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.into_iter().map(|v| json_rational(&v).map_err(D::Error::custom)).collect())
                .collect()
        })
        .collect()
}

/// A rational given either as a JSON string `"p/q"` or an integer.
pub(crate) fn json_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| Error::parse(n.to_string(), "expected an integer or a \"p/q\" string")),
        other => Err(Error::parse(other.to_string(), "expected an integer or a \"p/q\" string")),
    }
}

impl NilpotentData {
    /// One-dimensional `W` with `v_i v_j = b[i][j] w`.
    pub fn scalar(b: &[Vec<Rational>]) -> Self {
        NilpotentData {
            b: b.iter().map(|r| r.iter().map(|x| vec![x.clone()]).collect()).collect(),
        }
    }

    pub fn scalar_i64(b: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = b.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::scalar(&rows)
    }
}

/// Algebra `V ⊕ W` where `V V ⊂ W` is given by `b` and every other product
/// of basis vectors vanishes. Any product of three elements is zero.
pub fn nilpotent_pair(data: &NilpotentData) -> Result<Algebra> {
    let k = data.b.len();
    let m = data.b.first().and_then(|r| r.first()).map_or(0, Vec::len);
    for row in &data.b {
        if row.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: row.len() });
        }
        if let Some(bad) = row.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: bad.len() });
        }
    }
    let n = k + m;
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = data.b[i][j]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(t, c)| (k + t, c.clone()))
                .collect();
        }
    }
    let mut labels: Vec<String> = (1..=k).map(|i| format!("v{i}")).collect();
    if m == 1 {
        labels.push("w".into());
    } else {
        labels.extend((1..=m).map(|i| format!("w{i}")));
    }
    Algebra::from_sparse(labels, table, None)
}

/// The 4-dimensional algebra with `v1 v3 = v2 v3 = w` and all other
/// products zero.
pub fn type3_example() -> Algebra {
    nilpotent_pair(&NilpotentData::scalar_i64(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]])).expect("well-formed")
}

/// Adjoin a two-sided unity as the first basis element, labelled `1`.
pub fn unital_extension(alg: &Algebra) -> Result<Algebra> {
    let n = alg.dim();
    let mut label = "1".to_string();
    while alg.label_index(&label).is_some() {
        label.push('\'');
    }
    let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, c)| (k + 1, c.clone())).collect() };
    let mut table = vec![vec![SparseVec::new(); n + 1]; n + 1];
    table[0][0] = vec![(0, Rational::one())];
    for i in 0..n {
        table[0][i + 1] = vec![(i + 1, Rational::one())];
        table[i + 1][0] = vec![(i + 1, Rational::one())];
        for j in 0..n {
            table[i + 1][j + 1] = shift(alg.product(i, j));
        }
    }
    let mut labels = vec![label];
    labels.extend(alg.labels().iter().cloned());
    let mut unity = vec![Rational::zero(); n + 1];
    unity[0] = Rational::one();
    Algebra::from_sparse(labels, table, Some(unity))
}

/// Tensor product; basis element `i` is `f_{i / m} ⊗ g_{i mod m}` with
/// `m = dim b`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (k, m) = (a.dim(), b.dim());
    let n = k * m;
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let left = a.product(i / m, j / m);
            let right = b.product(i % m, j % m);
            let mut v: SparseVec = Vec::with_capacity(left.len() * right.len());
            for (p, c) in left {
                for (q, d) in right {
                    v.push((p * m + q, c * d));
                }
            }
            v.sort_by_key(|(t, _)| *t);
            row.push(v);
        }
        table.push(row);
    }
    let labels = (0..n)
        .map(|i| format!("{}⊗{}", a.labels()[i / m], b.labels()[i % m]))
        .collect();
    let unity = match (a.unity(), b.unity()) {
        (Some(u), Some(v)) => Some((0..n).map(|i| &u[i / m] * &v[i % m]).collect()),
        _ => None,
    };
    Algebra::from_sparse(labels, table, unity)
}

/// Block-diagonal direct sum; clashing labels from `b` get a prime.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (k, m) = (a.dim(), b.dim());
    let n = k + m;
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = a.product(i, j).clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            table[k + i][k + j] = b.product(i, j).iter().map(|(t, c)| (k + t, c.clone())).collect();
        }
    }
    let mut labels: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        let mut l = l.clone();
        while labels.contains(&l) || a.labels().contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    let unity = match (a.unity(), b.unity()) {
        (Some(u), Some(v)) => Some(u.iter().chain(v).cloned().collect()),
        _ => None,
    };
    Algebra::from_sparse(labels, table, unity)
}

/// Opposite algebra, `a * b := b a`.
pub fn opposite(alg: &Algebra) -> Algebra {
    let n = alg.dim();
    let table = (0..n)
        .map(|i| (0..n).map(|j| alg.product(j, i).clone()).collect())
        .collect();
    Algebra::from_sparse(alg.labels().to_vec(), table, alg.unity().map(<[Rational]>::to_vec)).expect("same shape")
}

/// Build an algebra from a constructor expression.
///
/// Terms: `mat:N`, `ut:N`, `seaweed:A,B;C,D`, `abc0:FILE` or inline JSON
/// `abc0:[[[..]]]`, `type3`, `unital:TERM`, `opp:TERM`, `letters:TERM`.
/// `X*Y` is the tensor product and `X+Y` the direct sum (`*` binds tighter);
/// parentheses group.
pub fn from_spec(spec: &str) -> Result<Algebra> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        if balanced(inner) {
            return from_spec(inner);
        }
    }
    if !spec.starts_with("abc0:") {
        if let Some((l, r)) = split_top(spec, '+') {
            return direct_sum(&from_spec(l)?, &from_spec(r)?);
        }
        if let Some((l, r)) = split_top(spec, '*') {
            return tensor_product(&from_spec(l)?, &from_spec(r)?);
        }
    }
    let bad = || Error::InvalidArgument(format!("unrecognized algebra spec {spec:?}"));
    let (head, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let size = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match head {
        "mat" => mat(size(arg)?),
        "ut" => ut(size(arg)?),
        "seaweed" => {
            let (t, b) = arg.split_once(';').ok_or_else(bad)?;
            let parse = |s: &str| s.split(',').map(size).collect::<Result<Vec<_>>>();
            seaweed(&parse(t)?, &parse(b)?)
        }
        "abc0" => {
            let text = if arg.trim_start().starts_with('[') || arg.trim_start().starts_with('{') {
                arg.to_string()
            } else {
                std::fs::read_to_string(arg).map_err(|e| Error::InvalidArgument(format!("{arg}: {e}")))?
            };
            let data: NilpotentData = if text.trim_start().starts_with('[') {
                let b: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::parse(arg, e.to_string()))?;
                serde_json::from_value(serde_json::json!({ "b": b })).map_err(|e| Error::parse(arg, e.to_string()))?
            } else {
                serde_json::from_str(&text).map_err(|e| Error::parse(arg, e.to_string()))?
            };
            nilpotent_pair(&data)
        }
        "type3" => Ok(type3_example()),
        "unital" => unital_extension(&from_spec(arg)?),
        "opp" => Ok(opposite(&from_spec(arg)?)),
        "letters" => Ok(from_spec(arg)?.with_letters()),
        _ => Err(bad()),
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Split at the last occurrence of `op` outside brackets.
fn split_top(s: &str, op: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth -= 1,
            _ if c == op && depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found.map(|i| (&s[..i], &s[i + op.len_utf8()..]))
}
