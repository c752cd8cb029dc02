use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Decomposition, PointImage, Sense};
use crate::sampling::{self, SAMPLE_BOX};
use crate::scalar::Scalar;

use super::{Scalarizer, ScalarizerSpec};

pub const DEFAULT_MONOTONICITY_SAMPLES: usize = 10_000;
pub const DEFAULT_MONOTONICITY_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotonicityLevel {
    Strong,
    Strict,
    Violated,
}

impl MonotonicityLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            MonotonicityLevel::Strong => "strong",
            MonotonicityLevel::Strict => "strict",
            MonotonicityLevel::Violated => "violated",
        }
    }
}

/// Outcome of a sampled monotonicity check.
///
/// `witness` is set exactly when the level is `Violated`: a pair `y <_Π y'`
/// with `s(y) >= s(y')`. `strong_blocker` records a pair `y ≤_Π y'` with
/// `s(y) >= s(y')` that demoted the level from strong to strict.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityVerdict<T> {
    pub level: MonotonicityLevel,
    pub witness: Option<(PointImage<T>, PointImage<T>)>,
    pub strong_blocker: Option<(PointImage<T>, PointImage<T>)>,
    pub samples: usize,
}

fn worsen<T: Scalar>(d: &Decomposition, y: &mut [T], i: usize, factor: f64) {
    let f = T::lit(factor);
    y[i] = match d.sense(i) {
        Sense::Min => y[i] * f,
        Sense::Max => y[i] / f,
    };
}

fn pair<T: Scalar>(a: Vec<T>, b: Vec<T>) -> (PointImage<T>, PointImage<T>) {
    (PointImage::unchecked(a), PointImage::unchecked(b))
}

/// Samples pairs from the log-uniform box and checks the implications
/// `y <_Π y' => s(y) < s(y')` and `y ≤_Π y' => s(y) < s(y')`.
///
/// A strong or strict verdict is statistical evidence; a violation is a proof.
pub fn check_monotonicity<T: Scalar>(
    spec: &ScalarizerSpec<T>,
    decomposition: &Decomposition,
    samples: usize,
    seed: u64,
) -> Result<MonotonicityVerdict<T>> {
    let s: Scalarizer<T> = spec.bind(decomposition)?;
    check_monotonicity_fn(|y| s.value(y), decomposition, samples, seed)
}

/// [`check_monotonicity`] for an arbitrary function on the positive orthant.
pub fn check_monotonicity_fn<T: Scalar>(
    s: impl Fn(&[T]) -> T,
    decomposition: &Decomposition,
    samples: usize,
    seed: u64,
) -> Result<MonotonicityVerdict<T>> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let p = decomposition.p();
    let mut rng = sampling::rng(seed);
    let mut blocker = None;
    for _ in 0..samples {
        let y: Vec<T> = sampling::log_uniform_point(&mut rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1);
        let sy = s(&y);

        let mut strict = y.clone();
        for i in 0..p {
            let f = sampling::log_uniform(&mut rng, 1.01, 10.0);
            worsen(decomposition, &mut strict, i, f);
        }
        if !(sy < s(&strict)) {
            return Ok(MonotonicityVerdict {
                level: MonotonicityLevel::Violated,
                witness: Some(pair(y, strict)),
                strong_blocker: blocker,
                samples,
            });
        }

        let mut weak = y.clone();
        let forced = rng.random_range(0..p);
        for i in 0..p {
            if i == forced || rng.random_bool(0.5) {
                let f = sampling::log_uniform(&mut rng, 1.01, 10.0);
                worsen(decomposition, &mut weak, i, f);
            }
        }
        if blocker.is_none() && !(sy < s(&weak)) {
            blocker = Some(pair(y, weak));
        }
    }
    let level = if blocker.is_some() { MonotonicityLevel::Strict } else { MonotonicityLevel::Strong };
    Ok(MonotonicityVerdict { level, witness: None, strong_blocker: blocker, samples })
}
