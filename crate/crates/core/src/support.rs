//! Optimal solutions of scalarizing functions over finite instances,
//! simplex weight grids and supported sets.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::Scalar;
use crate::scalarize::{Scalarizer, ScalarizerSpec};

/// Default relative tie tolerance for [`optimal_set`].
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// Weight vectors `(i_1, ..., i_p) / m` with positive integer parts summing
/// to `m`, in lexicographic order of the parts.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightGrid<T> {
    p: usize,
    m: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> WeightGrid<T> {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn resolution(&self) -> usize {
        self.m
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Binomial coefficient, saturating on overflow.
pub fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub fn weight_grid<T: Scalar>(p: usize, m: usize) -> Result<WeightGrid<T>> {
    if p == 0 {
        return Err(Error::Precondition("p must be at least 1".into()));
    }
    if m < 2 || m < p {
        return Err(Error::ResolutionTooSmall { p, m });
    }
    let scale = T::from_usize(m).expect("resolution fits the scalar type");
    let mut vectors = Vec::with_capacity(binomial(m - 1, p - 1));
    let mut parts = vec![0usize; p];
    fill(&mut parts, 0, m, &mut |parts| {
        vectors.push(parts.iter().map(|&i| T::from_usize(i).expect("part fits") / scale).collect());
    });
    Ok(WeightGrid { p, m, vectors })
}

fn fill(parts: &mut [usize], at: usize, rest: usize, emit: &mut impl FnMut(&[usize])) {
    let left = parts.len() - at;
    if left == 1 {
        parts[at] = rest;
        emit(parts);
        return;
    }
    for v in 1..=rest - (left - 1) {
        parts[at] = v;
        fill(parts, at + 1, rest - v, emit);
    }
}

fn check_tie_tol<T: Scalar>(tie_tol: T) -> Result<()> {
    if !(tie_tol >= T::zero()) {
        return Err(Error::Precondition(format!("tie tolerance must be nonnegative, got {tie_tol}")));
    }
    Ok(())
}

/// Indices whose value lies within `tie_tol * (1 + |v*|)` of the minimum `v*`.
fn optimal_indices<T: Scalar>(s: &Scalarizer<T>, instance: &Instance<T>, tie_tol: T, values: &mut Vec<T>) -> Vec<usize> {
    values.clear();
    values.extend(instance.images().iter().map(|y| s.value(y.as_slice())));
    let best = values.iter().copied().fold(T::infinity(), T::min);
    let bound = best + tie_tol * (T::one() + best.abs());
    (0..values.len()).filter(|&i| values[i] <= bound).collect()
}

/// Indices of the points optimal for `spec` on `instance`, ties included.
pub fn optimal_set<T: Scalar>(instance: &Instance<T>, spec: &ScalarizerSpec<T>, tie_tol: T) -> Result<Vec<usize>> {
    check_tie_tol(tie_tol)?;
    let s = spec.bind(instance.decomposition())?;
    Ok(optimal_indices(&s, instance, tie_tol, &mut Vec::new()))
}

const CHUNK: usize = 256;

/// Union of optimal sets of `template` reweighted by every vector in
/// `weights`. With `one_per_function` only the first optimal index of each
/// function is kept. The result is sorted and independent of thread count.
pub fn supported_for_weights<T: Scalar>(
    instance: &Instance<T>,
    template: &ScalarizerSpec<T>,
    weights: &[Vec<T>],
    tie_tol: T,
    one_per_function: bool,
) -> Result<Vec<usize>> {
    check_tie_tol(tie_tol)?;
    let Some(first) = weights.first() else {
        return Err(Error::Precondition("no weight vectors given".into()));
    };
    let n = instance.len();
    let base = template.reweighted(first.clone()).bind(instance.decomposition())?;
    if let Some(w) = weights.iter().find(|w| w.len() != instance.p()) {
        return Err(Error::DimensionMismatch { expected: instance.p(), found: w.len() });
    }
    let marks = weights
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<Vec<bool>> {
            let mut s = base.clone();
            let mut marks = vec![false; n];
            let mut values = Vec::with_capacity(n);
            for w in chunk {
                s.set_weights(w)?;
                let opt = optimal_indices(&s, instance, tie_tol, &mut values);
                if one_per_function {
                    marks[opt[0]] = true;
                } else {
                    opt.into_iter().for_each(|i| marks[i] = true);
                }
            }
            Ok(marks)
        })
        .try_reduce(
            || vec![false; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                Ok(a)
            },
        )?;
    Ok((0..n).filter(|&i| marks[i]).collect())
}

/// S-supported points for the weighted family of `template` over `grid`.
pub fn supported_set<T: Scalar>(
    instance: &Instance<T>,
    template: &ScalarizerSpec<T>,
    grid: &WeightGrid<T>,
    tie_tol: T,
) -> Result<Vec<usize>> {
    if grid.p() != instance.p() {
        return Err(Error::DimensionMismatch { expected: instance.p(), found: grid.p() });
    }
    supported_for_weights(instance, template, grid.vectors(), tie_tol, false)
}

/// Like [`supported_set`] but keeps one representative (the first optimal
/// index) per weight vector.
pub fn supported_representatives<T: Scalar>(
    instance: &Instance<T>,
    template: &ScalarizerSpec<T>,
    grid: &WeightGrid<T>,
    tie_tol: T,
) -> Result<Vec<usize>> {
    if grid.p() != instance.p() {
        return Err(Error::DimensionMismatch { expected: instance.p(), found: grid.p() });
    }
    supported_for_weights(instance, template, grid.vectors(), tie_tol, true)
}
