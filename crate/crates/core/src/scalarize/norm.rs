use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Monotone norms on the positive orthant used by the weighted families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Norm<T> {
    /// `q`-norm with `1 <= q <= inf`; `q = inf` is the maximum norm.
    Q(T),
    /// `Σ z_i + ρ · max z_i` with `ρ > 0`.
    AugmentedTchebycheff(T),
}

impl<T: Scalar> Norm<T> {
    pub fn one() -> Self {
        Norm::Q(T::one())
    }

    pub fn max() -> Self {
        Norm::Q(T::infinity())
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Norm::Q(q) if q.is_nan() || q < T::one() => {
                Err(Error::InvalidSpec(format!("q must lie in [1, inf], got {q}")))
            }
            Norm::AugmentedTchebycheff(rho) if !(rho > T::zero() && rho.is_finite()) => {
                Err(Error::InvalidSpec(format!("rho must be positive and finite, got {rho}")))
            }
            _ => Ok(()),
        }
    }

    /// Evaluates on `n` nonnegative components produced by `z`.
    pub(crate) fn eval_by(&self, n: usize, z: impl Fn(usize) -> T) -> T {
        match *self {
            Norm::Q(q) if q == T::one() => (0..n).map(&z).sum(),
            Norm::Q(q) if q.is_infinite() => (0..n).map(&z).fold(T::zero(), T::max),
            Norm::Q(q) => {
                let m = (0..n).map(&z).fold(T::zero(), T::max);
                if m == T::zero() {
                    return T::zero();
                }
                let s: T = (0..n).map(|i| (z(i) / m).powf(q)).sum();
                m * s.powf(q.recip())
            }
            Norm::AugmentedTchebycheff(rho) => {
                let (sum, max) = (0..n).map(&z).fold((T::zero(), T::zero()), |(s, m), v| (s + v, m.max(v)));
                sum + rho * max
            }
        }
    }

    pub fn eval(&self, z: &[T]) -> T {
        self.eval_by(z.len(), |i| z[i].abs())
    }
}
