use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{rat, Rational};

/// Random functionals for genericity arguments: integer values drawn
/// uniformly from `[-bound, bound]`, reproducible from `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    pub workers: usize,
}

pub const DEFAULT_SAMPLES: usize = 8;
pub const IDENTITY_SAMPLES: usize = 25;

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            samples: DEFAULT_SAMPLES,
            bound: 20,
            workers: 1,
        }
    }
}

impl SamplerConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        SamplerConfig {
            seed,
            samples,
            ..Self::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// `samples` coordinate vectors of length `dim`, in seed order.
    pub fn functionals(&self, dim: usize) -> Vec<Vec<Rational>> {
        let mut rng = self.rng();
        (0..self.samples).map(|_| random_vector(&mut rng, dim, self.bound)).collect()
    }
}

pub fn random_vector(rng: &mut impl Rng, dim: usize, bound: i64) -> Vec<Rational> {
    (0..dim).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// Map `f` over `items` on up to `workers` threads; output keeps input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Whether two degree-`d` forms in λ, μ agree, checked on the grid
/// `{1..=d+1}²`, which determines such a form uniquely.
pub fn agree_on_grid(d: usize, mut left: impl FnMut(&Rational, &Rational) -> Rational, mut right: impl FnMut(&Rational, &Rational) -> Rational) -> bool {
    let pts: Vec<Rational> = (1..=d as i64 + 1).map(rat).collect();
    pts.iter()
        .all(|l| pts.iter().all(|m| left(l, m) == right(l, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let c = SamplerConfig::new(7, 5);
        assert_eq!(c.functionals(4), c.functionals(4));
        assert_ne!(c.functionals(4), SamplerConfig::new(8, 5).functionals(4));
        assert!(c.functionals(4).iter().flatten().all(|x| x.numer().magnitude() <= &20u32.into()));
    }

    #[test]
    fn parallel_order() {
        let v: Vec<u64> = (0..37).collect();
        assert_eq!(par_map(&v, 4, |x| x * x), v.iter().map(|x| x * x).collect::<Vec<_>>());
    }

    #[test]
    fn grid_check() {
        let p = |l: &Rational, m: &Rational| (l + m) * (l - m);
        let q = |l: &Rational, m: &Rational| l * l - m * m;
        assert!(agree_on_grid(2, p, q));
        assert!(!agree_on_grid(2, p, |l: &Rational, m: &Rational| l * l + m * m));
    }
}
