use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Image `y = f(x)` of a solution: finite, strictly positive components.
#[derive(Debug, Clone, PartialEq)]
pub struct PointImage<T> {
    values: Vec<T>,
}

impl<T: Scalar> PointImage<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        Self::labelled("", values)
    }

    pub(crate) fn labelled(id: &str, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteComponent { id: id.into(), index: index + 1, value: v.as_f64() });
            }
            if v <= T::zero() {
                return Err(Error::NonPositiveComponent { id: id.into(), index: index + 1, value: v.as_f64() });
            }
        }
        Ok(Self { values })
    }

    /// Wraps values already known to be finite and positive.
    pub(crate) fn unchecked(values: Vec<T>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite() && *v > T::zero()));
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }
}

impl<T> std::ops::Index<usize> for PointImage<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.values[i]
    }
}

/// Set `Γ` of objective indices whose values get replaced by reciprocals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GammaSet {
    indices: Vec<usize>,
}

impl GammaSet {
    /// Zero-based indices; duplicates are merged.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(p: usize) -> Self {
        Self::new(0..p)
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn check(&self, p: usize) -> Result<()> {
        match self.indices.last() {
            Some(&i) if i >= p => Err(Error::IndexOutOfRange { index: i + 1, p }),
            _ => Ok(()),
        }
    }

    /// `σ^A ∘ σ^B = σ^(A Δ B)`.
    pub fn symmetric_difference(&self, other: &GammaSet) -> GammaSet {
        GammaSet::new(
            self.indices
                .iter()
                .filter(|i| !other.contains(**i))
                .chain(other.indices.iter().filter(|i| !self.contains(**i)))
                .copied(),
        )
    }

    /// Applies the flip in place on a raw slice.
    pub(crate) fn flip_slice<T: Scalar>(&self, y: &mut [T]) {
        for &i in &self.indices {
            y[i] = y[i].recip();
        }
    }
}

/// Replaces component `i` by `1 / y_i` for every `i` in `gamma`.
pub fn gamma_flip<T: Scalar>(y: &PointImage<T>, gamma: &GammaSet) -> Result<PointImage<T>> {
    gamma.check(y.dim())?;
    let mut values = y.values.clone();
    gamma.flip_slice(&mut values);
    PointImage::new(values)
}
