use std::cmp::Ordering;

use crate::certificate::{Method, QualityCertificate, Witness};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Decomposition, Instance, PointImage};

/// Relation of `y` to `y2` under the component-wise orders of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceRelation {
    /// `y <_Π y2`: strictly better in every objective.
    StrictlyDominates,
    /// `y ≤_Π y2`, not strictly.
    Dominates,
    Equal,
    /// `y2 ≤_Π y`, i.e. `y` is dominated.
    DominatedBy,
    Incomparable,
}

fn check_dim(found: usize, decomposition: &Decomposition) -> Result<()> {
    if found != decomposition.p() {
        return Err(Error::DimensionMismatch { expected: decomposition.p(), found });
    }
    Ok(())
}

/// Per-objective comparison where `Less` means "better".
fn oriented<T: Scalar>(a: T, b: T, min: bool) -> Ordering {
    let ord = a.partial_cmp(&b).unwrap_or(Ordering::Equal);
    if min {
        ord
    } else {
        ord.reverse()
    }
}

pub(crate) fn compare_slices<T: Scalar>(y: &[T], y2: &[T], decomposition: &Decomposition) -> DominanceRelation {
    let (mut better, mut worse, mut strict) = (false, false, true);
    for (i, (&a, &b)) in y.iter().zip(y2).enumerate() {
        match oriented(a, b, decomposition.is_min(i)) {
            Ordering::Less => better = true,
            Ordering::Greater => {
                worse = true;
                strict = false;
            }
            Ordering::Equal => strict = false,
        }
    }
    match (better, worse) {
        (false, false) => DominanceRelation::Equal,
        (true, false) if strict => DominanceRelation::StrictlyDominates,
        (true, false) => DominanceRelation::Dominates,
        (false, true) => DominanceRelation::DominatedBy,
        (true, true) => DominanceRelation::Incomparable,
    }
}

/// Compares stored doubles exactly; no tolerance is applied.
pub fn compare<T: Scalar>(y: &PointImage<T>, y2: &PointImage<T>, decomposition: &Decomposition) -> Result<DominanceRelation> {
    check_dim(y.dim(), decomposition)?;
    check_dim(y2.dim(), decomposition)?;
    Ok(compare_slices(y.as_slice(), y2.as_slice(), decomposition))
}

/// Brute-force pairwise filter: indices of points no other point dominates.
pub fn nondominated_set<T: Scalar>(instance: &Instance<T>) -> Vec<usize> {
    let d = instance.decomposition();
    let images = instance.images();
    (0..images.len())
        .filter(|&x| {
            !images.iter().enumerate().any(|(j, other)| {
                j != x
                    && matches!(
                        compare_slices(other.as_slice(), images[x].as_slice(), d),
                        DominanceRelation::Dominates | DominanceRelation::StrictlyDominates
                    )
            })
        })
        .collect()
}

/// Smallest factor by which `y` approximates `y2`: the maximum of
/// `y_i / y2_i` over MIN and `y2_i / y_i` over MAX. May be below one.
pub(crate) fn cover_ratio<T: Scalar>(y: &[T], y2: &[T], decomposition: &Decomposition) -> T {
    y.iter()
        .zip(y2)
        .enumerate()
        .map(|(i, (&a, &b))| if decomposition.is_min(i) { a / b } else { b / a })
        .fold(T::neg_infinity(), T::max)
}

/// Whether `y` α-approximates `y2`.
pub fn approximates<T: Scalar>(y: &PointImage<T>, y2: &PointImage<T>, alpha: T, decomposition: &Decomposition) -> Result<bool> {
    if !(alpha >= T::one()) {
        return Err(Error::AlphaBelowOne(alpha.as_f64()));
    }
    check_dim(y.dim(), decomposition)?;
    check_dim(y2.dim(), decomposition)?;
    Ok(y.as_slice().iter().zip(y2.as_slice()).enumerate().all(|(i, (&a, &b))| {
        if decomposition.is_min(i) {
            a <= alpha * b
        } else {
            a >= b / alpha
        }
    }))
}

/// Minimal α for which the points `subset` form an α-approximation set.
/// Ties resolve to the first witness in instance order.
pub fn min_alpha<T: Scalar>(subset: &[usize], instance: &Instance<T>) -> Result<QualityCertificate<T>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= instance.len()) {
        return Err(Error::UnknownId(format!("#{bad}")));
    }
    let mut members = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    let d = instance.decomposition();
    let mut best: Option<(T, usize, usize)> = None;
    for target in 0..instance.len() {
        let y2 = instance.image(target).as_slice();
        let mut cover: Option<(T, usize)> = None;
        for &x in &members {
            let r = cover_ratio(instance.image(x).as_slice(), y2, d);
            if cover.is_none_or(|(c, _)| r < c) {
                cover = Some((r, x));
            }
        }
        let (r, x) = cover.expect("subset is nonempty");
        if best.is_none_or(|(b, _, _)| r > b) {
            best = Some((r, target, x));
        }
    }
    let (value, target, x) = best.expect("instance is nonempty");
    Ok(QualityCertificate::exact(
        value,
        Method::BruteForce,
        Some(Witness::Pair { approximated: instance.id(target).into(), approximator: instance.id(x).into() }),
    ))
}

/// [`min_alpha`] addressed by ids.
pub fn min_alpha_ids<T: Scalar, S: AsRef<str>>(ids: &[S], instance: &Instance<T>) -> Result<QualityCertificate<T>> {
    if ids.is_empty() {
        return Err(Error::EmptySubset);
    }
    min_alpha(&instance.indices_of(ids)?, instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[f64]) -> PointImage<f64> {
        PointImage::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let mm = Decomposition::all_min(2);
        let mixed = Decomposition::new(2, &[0], &[1]).unwrap();
        assert_eq!(compare(&pt(&[1., 2.]), &pt(&[2., 3.]), &mm).unwrap(), DominanceRelation::StrictlyDominates);
        assert_eq!(compare(&pt(&[1., 5.]), &pt(&[2., 3.]), &mixed).unwrap(), DominanceRelation::StrictlyDominates);
        assert_eq!(compare(&pt(&[1., 3.]), &pt(&[3., 1.]), &mm).unwrap(), DominanceRelation::Incomparable);
        assert_eq!(compare(&pt(&[1., 3.]), &pt(&[1., 4.]), &mm).unwrap(), DominanceRelation::Dominates);
        assert_eq!(compare(&pt(&[1., 4.]), &pt(&[1., 3.]), &mm).unwrap(), DominanceRelation::DominatedBy);
        assert_eq!(compare(&pt(&[1., 4.]), &pt(&[1., 4.]), &mm).unwrap(), DominanceRelation::Equal);
        assert!(matches!(
            compare(&pt(&[1., 4., 1.]), &pt(&[1., 4.]), &mm),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn approximates_examples() {
        let mm = Decomposition::all_min(2);
        let xx = Decomposition::all_max(2);
        assert!(approximates(&pt(&[2., 2.]), &pt(&[1., 1.]), 2.0, &mm).unwrap());
        assert!(approximates(&pt(&[1., 1.]), &pt(&[2., 2.]), 2.0, &xx).unwrap());
        assert!(!approximates(&pt(&[2., 2.]), &pt(&[1., 2.]), 1.5, &mm).unwrap());
        assert_eq!(
            approximates(&pt(&[2., 2.]), &pt(&[1., 2.]), 0.5, &mm).unwrap_err(),
            Error::AlphaBelowOne(0.5)
        );
    }

    #[test]
    fn min_alpha_errors() {
        let inst = Instance::new(Decomposition::all_min(2), [("a", vec![1.0, 4.0])]).unwrap();
        assert_eq!(min_alpha(&[], &inst).unwrap_err(), Error::EmptySubset);
        assert_eq!(min_alpha_ids(&["zz"], &inst).unwrap_err(), Error::UnknownId("zz".into()));
    }
}
