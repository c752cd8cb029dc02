//! Scalarization-based approximation of multiobjective instances.
//!
//! The crate works on finite instances given by their images in the positive
//! orthant. It evaluates and Γ-transforms scalarizing functions, computes
//! optimal and supported solutions and exact approximation qualities,
//! evaluates closed-form quality bounds for weighted norm scalarizations, and
//! builds counterexample instances whose claims are checked on construction.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`, with `…F32` variants
//! for single precision.
//!
//! ```
//! use scalapprox::{min_alpha, supported_set, weight_grid, Decomposition, Instance, ScalarizerSpec};
//!
//! let inst = Instance::new(
//!     Decomposition::all_min(2),
//!     [("a", vec![1.0, 4.0]), ("b", vec![2.0, 2.0]), ("c", vec![4.0, 1.0])],
//! )?;
//! let grid = weight_grid(2, 64)?;
//! let sup = supported_set(&inst, &ScalarizerSpec::weighted_sum(vec![1.0, 1.0]), &grid, 1e-9)?;
//! assert_eq!(min_alpha(&sup, &inst)?.value(), Some(1.0));
//! # Ok::<(), scalapprox::Error>(())
//! ```

// Negated comparisons deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adversary;
pub mod certificate;
pub mod error;
pub mod io;
pub mod model;
pub mod quality;
pub mod sampling;
pub mod scalar;
pub mod scalarize;
pub mod support;

pub use adversary::{adversarial_finite, adversarial_mixed_max, adversarial_norm_min, reverify, AdversaryKind, Check};
pub use certificate::{Method, QualityValue, Witness};
pub use error::{Error, Result};
pub use model::{
    approximates, compare, gamma_flip, min_alpha, min_alpha_ids, nondominated_set, transform_instance,
    validate_instance, Decomposition, DominanceRelation, GammaSet, Sense,
};
pub use quality::{
    level_ratio_sup, level_ratio_sup_sampled, screen_norm, theoretical_bound, theoretical_bound_spec,
    weighted_bound_estimate, FnNorm, NormEvaluator,
};
pub use scalar::Scalar;
pub use scalarize::{
    check_monotonicity, check_monotonicity_fn, evaluate, find_level_scaling, gamma_transform, CustomExpr, MonotonicityLevel, Norm,
    PostCompose,
};
pub use support::{optimal_set, supported_representatives, supported_set, weight_grid, DEFAULT_TIE_TOL};

pub type Instance = model::Instance<f64>;
pub type PointImage = model::PointImage<f64>;
pub type ScalarizerSpec = scalarize::ScalarizerSpec<f64>;
pub type Scalarizer = scalarize::Scalarizer<f64>;
pub type Family = scalarize::Family<f64>;
pub type MonotonicityVerdict = scalarize::MonotonicityVerdict<f64>;
pub type QualityCertificate = certificate::QualityCertificate<f64>;
pub type WeightGrid = support::WeightGrid<f64>;
pub type WeightedNorm = quality::WeightedNorm<f64>;
pub type AdversarialCertificate = adversary::AdversarialCertificate<f64>;
pub type Scalarization = adversary::Scalarization<f64>;

pub type InstanceF32 = model::Instance<f32>;
pub type PointImageF32 = model::PointImage<f32>;
pub type ScalarizerSpecF32 = scalarize::ScalarizerSpec<f32>;
pub type QualityCertificateF32 = certificate::QualityCertificate<f32>;
pub type WeightGridF32 = support::WeightGrid<f32>;
