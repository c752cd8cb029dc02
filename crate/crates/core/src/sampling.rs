//! Seeded pseudorandom helpers. Every randomized routine takes an explicit
//! seed; the generator is ChaCha8 so streams are stable across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{Decomposition, Instance};
use crate::scalar::Scalar;

/// Box `[1e-3, 1e3]` used for log-uniform sampling of points and rays.
pub const SAMPLE_BOX: (f64, f64) = (1e-3, 1e3);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for sub-task `index` of a seeded job.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index.wrapping_add(1));
    r
}

pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.random::<f64>()).exp()
}

pub fn log_uniform_point<T: Scalar, R: Rng + ?Sized>(rng: &mut R, p: usize, lo: f64, hi: f64) -> Vec<T> {
    (0..p).map(|_| T::lit(log_uniform(rng, lo, hi))).collect()
}

/// Positive weight vector with log-uniform components in the sample box.
pub fn random_weights<T: Scalar, R: Rng + ?Sized>(rng: &mut R, p: usize) -> Vec<T> {
    log_uniform_point(rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1)
}

/// Instance with `n` points whose components are log-uniform in `[lo, hi]`.
/// Ids are `x0`, `x1`, ...
pub fn random_instance<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    decomposition: &Decomposition,
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<Instance<T>> {
    let p = decomposition.p();
    let points: Vec<(String, Vec<T>)> =
        (0..n).map(|i| (format!("x{i}"), log_uniform_point(rng, p, lo, hi))).collect();
    Instance::new(decomposition.clone(), points)
}
