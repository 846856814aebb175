//! Shared strategies and fixtures for property tests.

use proptest::prelude::*;

use crate::algebra::{from_spec, Algebra};
use crate::arith::rational::{rat, ratio, Rational};
use crate::arith::RatMatrix;
use crate::functional::Functional;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(small_rational(), n * n).prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
    })
}

pub fn pencil_pair(max: usize) -> impl Strategy<Value = (RatMatrix, RatMatrix)> {
    (1..=max).prop_flat_map(|n| {
        let m = move || prop::collection::vec(-6i64..=6, n * n).prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| rat(v[i * n + j])));
        (m(), m())
    })
}

pub const CORPUS: &[&str] = &[
    "mat:2",
    "ut:2",
    "ut:3",
    "seaweed:1,2;2,1",
    "seaweed:2,1;1,2",
    "type3",
    "unital:type3",
    "opp:ut:2",
    "mat:1+mat:1",
    "mat:1+ut:2",
];

pub fn corpus() -> Vec<Algebra> {
    CORPUS.iter().map(|s| from_spec(s).unwrap()).collect()
}

/// A functional whose values cycle through `seed`, shifted per index.
pub fn functional_on<'a>(alg: &'a Algebra, seed: &[i64]) -> Functional<'a> {
    let coords = (0..alg.dim()).map(|i| rat(seed[i % seed.len()] + i as i64 % 3)).collect();
    Functional::new(alg, coords).unwrap()
}

#[test]
fn corpus_is_well_formed() {
    let algs = corpus();
    assert_eq!(algs[2].dim(), 6);
    assert_eq!(algs[6].dim(), 5);
    assert!(algs.iter().all(|a| a.validate().is_empty()));
}
