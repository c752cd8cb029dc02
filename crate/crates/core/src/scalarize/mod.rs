//! Scalarizing-function catalog: specification, evaluation, Γ-transform,
//! sampled monotonicity checks and level-set scaling.

mod level;
mod monotonicity;
mod norm;

pub use level::{find_level_scaling, DEFAULT_LEVEL_TOL};
pub use monotonicity::{check_monotonicity, check_monotonicity_fn, MonotonicityLevel, MonotonicityVerdict, DEFAULT_MONOTONICITY_SAMPLES, DEFAULT_MONOTONICITY_SEED};
pub use norm::Norm;

pub(crate) use level::scaled_into;

use crate::error::{Error, Result};
use crate::model::{Decomposition, GammaSet, PointImage, Sense};
use crate::scalar::Scalar;

/// Fixed closed-form expressions outside the weighted norm families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CustomExpr {
    /// `min{z₁² + z₂, z₁ + z₂²}` on two minimized objectives.
    MinQuadratic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family<T> {
    /// `Σ_MIN w_i y_i − Σ_MAX w_i y_i`.
    WeightedSum,
    /// `max_i w_i y_i` (weighted Tchebycheff without reference point).
    WeightedMaxOrdering,
    /// `‖(w_i y_i)‖_q`, `q ∈ [1, inf]`.
    WeightedQNorm { q: T },
    /// `Σ w_i y_i + ρ max_i w_i y_i`.
    AugmentedTchebycheff { rho: T },
    /// Negated weighted harmonic mean `−Σ w_j / Σ (w_i / y_i)`; pure maximization.
    HarmonicMean,
    /// `s¹(w y)_{MIN} − s²(w y)_{MAX}`; MIN must be a prefix of the objectives.
    NormDifference { inner_min: Norm<T>, inner_max: Norm<T> },
    /// `max{min{w₁y₁/ε, w₂y₂}, min{w₁y₁, w₂y₂/ε}}`, biobjective minimization.
    CompositeMinMax { eps: T },
    Custom(CustomExpr),
}

impl<T: Scalar> Family<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::WeightedSum => "weighted_sum",
            Family::WeightedMaxOrdering => "weighted_max_ordering",
            Family::WeightedQNorm { .. } => "weighted_q_norm",
            Family::AugmentedTchebycheff { .. } => "augmented_tchebycheff",
            Family::HarmonicMean => "harmonic_mean",
            Family::NormDifference { .. } => "norm_difference",
            Family::CompositeMinMax { .. } => "composite_min_max",
            Family::Custom(_) => "custom_expression",
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Family::WeightedQNorm { q } => Norm::Q(*q).validate(),
            Family::AugmentedTchebycheff { rho } => Norm::AugmentedTchebycheff(*rho).validate(),
            Family::NormDifference { inner_min, inner_max } => {
                inner_min.validate()?;
                inner_max.validate()
            }
            Family::CompositeMinMax { eps } if !(*eps > T::zero() && *eps < T::one()) => {
                Err(Error::InvalidSpec(format!("eps must lie in (0, 1), got {eps}")))
            }
            _ => Ok(()),
        }
    }

    /// The norm behind a weighted family, when the base decomposition makes it one.
    pub fn as_norm(&self, base: &Decomposition) -> Option<Norm<T>> {
        if !base.is_pure_min() {
            return None;
        }
        match *self {
            Family::WeightedSum => Some(Norm::one()),
            Family::WeightedMaxOrdering => Some(Norm::max()),
            Family::WeightedQNorm { q } => Some(Norm::Q(q)),
            Family::AugmentedTchebycheff { rho } => Some(Norm::AugmentedTchebycheff(rho)),
            _ => None,
        }
    }

    fn fixed_dim(&self) -> Option<usize> {
        match self {
            Family::CompositeMinMax { .. } | Family::Custom(_) => Some(2),
            _ => None,
        }
    }

    fn check_base(&self, base: &Decomposition) -> Result<()> {
        let incompatible = |why: &str| Err(Error::SpecIncompatibleWithDecomposition(format!("{}: {why}", self.name())));
        if let Some(d) = self.fixed_dim() {
            if base.p() != d {
                return incompatible("defined for exactly two objectives");
            }
        }
        match self {
            Family::WeightedSum => Ok(()),
            Family::HarmonicMean if !base.is_pure_max() => incompatible("requires all objectives maximized"),
            Family::HarmonicMean => Ok(()),
            Family::NormDifference { .. } if !base.has_min_prefix() => {
                incompatible("minimized objectives must come first; reorder the objectives")
            }
            Family::NormDifference { .. } => Ok(()),
            _ if !base.is_pure_min() => incompatible("requires all objectives minimized"),
            _ => Ok(()),
        }
    }

    fn positive_valued(&self, base: &Decomposition) -> bool {
        match self {
            Family::WeightedSum => base.is_pure_min(),
            Family::HarmonicMean | Family::NormDifference { .. } => false,
            _ => true,
        }
    }
}

/// Strictly increasing map applied after the family formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PostCompose {
    #[default]
    Identity,
    /// `g(t) = −1/t`; only for positive-valued families.
    NegReciprocal,
}

/// A scalarizing function: family, positive weights, an optional Γ-flip of
/// the argument and a post-composition. Evaluation computes
/// `g(family(w ∘ σ^Γ(y)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarizerSpec<T> {
    pub family: Family<T>,
    pub weights: Vec<T>,
    pub gamma: GammaSet,
    pub post: PostCompose,
}

impl<T: Scalar> ScalarizerSpec<T> {
    pub fn new(family: Family<T>, weights: Vec<T>) -> Self {
        Self { family, weights, gamma: GammaSet::empty(), post: PostCompose::Identity }
    }

    pub fn unit(family: Family<T>, p: usize) -> Self {
        Self::new(family, vec![T::one(); p])
    }

    pub fn weighted_sum(weights: Vec<T>) -> Self {
        Self::new(Family::WeightedSum, weights)
    }

    pub fn max_ordering(weights: Vec<T>) -> Self {
        Self::new(Family::WeightedMaxOrdering, weights)
    }

    pub fn q_norm(q: T, weights: Vec<T>) -> Self {
        Self::new(Family::WeightedQNorm { q }, weights)
    }

    pub fn with_gamma(mut self, gamma: GammaSet) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_post(mut self, post: PostCompose) -> Self {
        self.post = post;
        self
    }

    /// Same family and flags with different weights.
    pub fn reweighted(&self, weights: Vec<T>) -> Self {
        Self { weights, ..self.clone() }
    }

    pub fn p(&self) -> usize {
        self.weights.len()
    }

    /// Checks the parameter invariants that do not depend on a decomposition.
    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::InvalidSpec("weights must be nonempty".into()));
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w > T::zero())) {
            return Err(Error::InvalidSpec(format!("weights must be positive and finite, got {w}")));
        }
        self.gamma.check(self.p())?;
        self.family.validate()
    }

    /// Decomposition the family formula itself is written for, i.e. the
    /// Γ-transform of the decomposition the spec is evaluated under.
    pub fn base_decomposition(&self, decomposition: &Decomposition) -> Result<Decomposition> {
        decomposition.transformed(&self.gamma)
    }

    /// Validates against `decomposition` and precomputes what evaluation needs.
    pub fn bind(&self, decomposition: &Decomposition) -> Result<Scalarizer<T>> {
        self.validate()?;
        if decomposition.p() != self.p() {
            return Err(Error::DimensionMismatch { expected: decomposition.p(), found: self.p() });
        }
        let base = self.base_decomposition(decomposition)?;
        self.family.check_base(&base)?;
        if self.post == PostCompose::NegReciprocal && !self.family.positive_valued(&base) {
            return Err(Error::SpecIncompatibleWithDecomposition(format!(
                "neg_reciprocal post-composition needs a positive-valued family; {} is not",
                self.family.name()
            )));
        }
        let p = self.p();
        Ok(Scalarizer {
            flip: (0..p).map(|i| self.gamma.contains(i)).collect(),
            base_min: (0..p).map(|i| base.is_min(i)).collect(),
            k: base.k(),
            weight_sum: self.weights.iter().copied().sum(),
            decomposition: decomposition.clone(),
            spec: self.clone(),
        })
    }
}

/// A spec bound to a decomposition; cheap to evaluate repeatedly.
#[derive(Debug, Clone)]
pub struct Scalarizer<T> {
    spec: ScalarizerSpec<T>,
    decomposition: Decomposition,
    flip: Vec<bool>,
    base_min: Vec<bool>,
    k: usize,
    weight_sum: T,
}

impl<T: Scalar> Scalarizer<T> {
    pub fn spec(&self) -> &ScalarizerSpec<T> {
        &self.spec
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn p(&self) -> usize {
        self.flip.len()
    }

    /// Replaces the weights in place, keeping family and flags.
    pub fn set_weights(&mut self, weights: &[T]) -> Result<()> {
        if weights.len() != self.p() {
            return Err(Error::DimensionMismatch { expected: self.p(), found: weights.len() });
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > T::zero())) {
            return Err(Error::InvalidSpec(format!("weights must be positive and finite, got {w}")));
        }
        self.spec.weights.copy_from_slice(weights);
        self.weight_sum = weights.iter().copied().sum();
        Ok(())
    }

    #[inline]
    fn flipped(&self, y: &[T], i: usize) -> T {
        if self.flip[i] {
            y[i].recip()
        } else {
            y[i]
        }
    }

    #[inline]
    fn arg(&self, y: &[T], i: usize) -> T {
        self.spec.weights[i] * self.flipped(y, i)
    }

    /// Value at a raw slice of length `p` with positive entries.
    pub fn value(&self, y: &[T]) -> T {
        debug_assert_eq!(y.len(), self.p());
        let p = self.p();
        let z = |i: usize| self.arg(y, i);
        let raw = match &self.spec.family {
            Family::WeightedSum => (0..p).fold(T::zero(), |acc, i| if self.base_min[i] { acc + z(i) } else { acc - z(i) }),
            Family::WeightedMaxOrdering => Norm::max().eval_by(p, z),
            Family::WeightedQNorm { q } => Norm::Q(*q).eval_by(p, z),
            Family::AugmentedTchebycheff { rho } => Norm::AugmentedTchebycheff(*rho).eval_by(p, z),
            Family::HarmonicMean => {
                let denom: T = (0..p).map(|i| self.spec.weights[i] / self.flipped(y, i)).sum();
                -(self.weight_sum / denom)
            }
            Family::NormDifference { inner_min, inner_max } => {
                let k = self.k;
                inner_min.eval_by(k, &z) - inner_max.eval_by(p - k, |i| z(k + i))
            }
            Family::CompositeMinMax { eps } => {
                let (a, b) = (z(0), z(1));
                (a / *eps).min(b).max(a.min(b / *eps))
            }
            Family::Custom(CustomExpr::MinQuadratic) => {
                let (a, b) = (z(0), z(1));
                (a * a + b).min(a + b * b)
            }
        };
        match self.spec.post {
            PostCompose::Identity => raw,
            PostCompose::NegReciprocal => -raw.recip(),
        }
    }

    pub fn evaluate(&self, y: &PointImage<T>) -> Result<T> {
        if y.dim() != self.p() {
            return Err(Error::DimensionMismatch { expected: self.p(), found: y.dim() });
        }
        Ok(self.value(y.as_slice()))
    }

    /// The direction of objective `i` in the evaluation decomposition.
    pub(crate) fn sense(&self, i: usize) -> Sense {
        self.decomposition.sense(i)
    }
}

/// `s(y)` for `spec` under `decomposition`.
pub fn evaluate<T: Scalar>(spec: &ScalarizerSpec<T>, decomposition: &Decomposition, y: &PointImage<T>) -> Result<T> {
    spec.bind(decomposition)?.evaluate(y)
}

/// `s^Γ = s ∘ σ^Γ`. The result is declared for the Γ-transformed
/// decomposition; applying the transform twice restores the input exactly.
pub fn gamma_transform<T: Scalar>(spec: &ScalarizerSpec<T>, gamma: &GammaSet) -> ScalarizerSpec<T> {
    ScalarizerSpec { gamma: spec.gamma.symmetric_difference(gamma), ..spec.clone() }
}
