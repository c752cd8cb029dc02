//! Instances, component-wise orders, dominance, the α-approximation
//! relation and the Γ-flip.

mod decomposition;
mod dominance;
mod instance;
mod point;

pub use decomposition::{Decomposition, Sense};
pub use dominance::{approximates, compare, min_alpha, min_alpha_ids, nondominated_set, DominanceRelation};
pub use instance::{transform_instance, validate_instance, Instance};
pub use point::{gamma_flip, GammaSet, PointImage};

pub(crate) use dominance::cover_ratio;
