use crate::error::{Error, Result};
use crate::model::{Decomposition, PointImage, Sense};
use crate::scalar::Scalar;

use super::{Scalarizer, ScalarizerSpec};

/// Default absolute tolerance on the scalarizer value.
pub const DEFAULT_LEVEL_TOL: f64 = 1e-10;

const MAX_EXPANSIONS: usize = 60;
const MAX_STEPS: usize = 200;

/// Outcome of the internal root search.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LevelRoot<T> {
    pub lambda: T,
    pub residual: T,
}

/// `q'(λ)`: scale MIN components by λ and MAX components by 1/λ.
pub(crate) fn scaled_into<T: Scalar>(s: &Scalarizer<T>, q: &[T], lambda: T, out: &mut [T]) {
    for (i, (o, &v)) in out.iter_mut().zip(q).enumerate() {
        *o = match s.sense(i) {
            Sense::Min => lambda * v,
            Sense::Max => v / lambda,
        };
    }
}

impl<T: Scalar> Scalarizer<T> {
    /// Finds λ with `s(q'(λ))` equal to `target` up to `tol`, by geometric
    /// bisection from a bracket built out of the reference point `y`.
    pub(crate) fn level_root(&self, q: &[T], y: &[T], target: T, tol: T) -> Result<LevelRoot<T>> {
        let mut buf = vec![T::zero(); q.len()];
        let mut eval = |lambda: T| {
            scaled_into(self, q, lambda, &mut buf);
            self.value(&buf) - target
        };

        let ratios = q.iter().zip(y).enumerate().map(|(i, (&qi, &yi))| match self.sense(i) {
            Sense::Min => yi / qi,
            Sense::Max => qi / yi,
        });
        let (mut lo, mut hi) = ratios.fold((T::infinity(), T::zero()), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let two = T::lit(2.0);
        lo = lo / two;
        hi = hi * two;

        let mut f_lo = eval(lo);
        let mut expansions = 0;
        while !(f_lo <= T::zero()) {
            if expansions == MAX_EXPANSIONS || !(lo > T::zero()) {
                return Err(Error::ScalingFailure(format!("no lower bracket for target {target}")));
            }
            lo = lo / two;
            f_lo = eval(lo);
            expansions += 1;
        }
        let mut f_hi = eval(hi);
        expansions = 0;
        while !(f_hi >= T::zero()) {
            if expansions == MAX_EXPANSIONS || !hi.is_finite() {
                return Err(Error::ScalingFailure(format!("no upper bracket for target {target}")));
            }
            hi = hi * two;
            f_hi = eval(hi);
            expansions += 1;
        }

        let mut best = if f_lo.abs() <= f_hi.abs() { (lo, f_lo.abs()) } else { (hi, f_hi.abs()) };
        for _ in 0..MAX_STEPS {
            if best.1 <= tol {
                break;
            }
            let mid = lo * (hi / lo).sqrt();
            if !(mid > lo && mid < hi) {
                // Bracket collapsed to adjacent floats.
                break;
            }
            let f = eval(mid);
            if f.abs() < best.1 {
                best = (mid, f.abs());
            }
            if f < T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(LevelRoot { lambda: best.0, residual: best.1 })
    }
}

/// λ > 0 such that the scaled point `q'` (λ·q on MIN, q/λ on MAX) lies on
/// the level set of `y`: `|s(q') - s(y)| <= tol`.
pub fn find_level_scaling<T: Scalar>(
    spec: &ScalarizerSpec<T>,
    decomposition: &Decomposition,
    q: &PointImage<T>,
    y: &PointImage<T>,
    tol: T,
) -> Result<T> {
    if !(tol > T::zero()) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let s = spec.bind(decomposition)?;
    let target = s.evaluate(y)?;
    if q.dim() != s.p() {
        return Err(Error::DimensionMismatch { expected: s.p(), found: q.dim() });
    }
    let root = s.level_root(q.as_slice(), y.as_slice(), target, tol)?;
    if root.residual > tol {
        return Err(Error::ToleranceNotReached { residual: root.residual.as_f64(), tol: tol.as_f64() });
    }
    Ok(root.lambda)
}
