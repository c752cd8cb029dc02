//! Property-based checks of the structural invariants.

use proptest::prelude::*;
use scalapprox::model::Instance as GenericInstance;
use scalapprox::{
    approximates, compare, evaluate, gamma_flip, gamma_transform, min_alpha, nondominated_set, optimal_set,
    transform_instance, weight_grid, CustomExpr, Decomposition, DominanceRelation, Family, GammaSet, Instance, Norm,
    PointImage, PostCompose, ScalarizerSpec, Sense,
};

fn positive() -> impl Strategy<Value = f64> {
    (-6.0f64..6.0).prop_map(f64::exp)
}

fn decomposition(p: usize) -> impl Strategy<Value = Decomposition> {
    proptest::collection::vec(any::<bool>(), p)
        .prop_map(|s| Decomposition::from_senses(s.into_iter().map(|m| if m { Sense::Min } else { Sense::Max }).collect()).unwrap())
}

fn gamma(p: usize) -> impl Strategy<Value = GammaSet> {
    proptest::collection::vec(any::<bool>(), p).prop_map(|m| GammaSet::new((0..m.len()).filter(|&i| m[i])))
}

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=4, 1usize..=12)
        .prop_flat_map(|(p, n)| (decomposition(p), proptest::collection::vec(proptest::collection::vec(positive(), p), n)))
        .prop_map(|(d, pts)| Instance::new(d, pts.into_iter().enumerate().map(|(i, y)| (format!("x{i}"), y))).unwrap())
}

fn instance_with_gamma() -> impl Strategy<Value = (Instance, GammaSet)> {
    instance().prop_flat_map(|i| {
        let p = i.p();
        (Just(i), gamma(p))
    })
}

/// Every cataloged family with parameters that bind to pure minimization.
fn min_spec(p: usize) -> impl Strategy<Value = ScalarizerSpec> {
    let weights = proptest::collection::vec(positive(), p);
    let family = prop_oneof![
        Just(Family::WeightedSum),
        Just(Family::WeightedMaxOrdering),
        (1.0f64..6.0).prop_map(|q| Family::WeightedQNorm { q }),
        (0.01f64..10.0).prop_map(|rho| Family::AugmentedTchebycheff { rho }),
    ];
    (family, weights, any::<bool>()).prop_map(|(f, w, neg)| {
        ScalarizerSpec::new(f, w).with_post(if neg { PostCompose::NegReciprocal } else { PostCompose::Identity })
    })
}

/// A spec compatible with `d`: the weighted sum for any decomposition, or a
/// norm family flipped onto `d`.
fn spec_for(d: Decomposition) -> impl Strategy<Value = ScalarizerSpec> {
    let p = d.p();
    let to_min = GammaSet::new(d.max_indices());
    (any::<bool>(), min_spec(p), proptest::collection::vec(positive(), p)).prop_map(move |(sum, s, w)| {
        if sum {
            ScalarizerSpec::weighted_sum(w)
        } else {
            s.with_gamma(to_min.clone())
        }
    })
}

fn weakly_worse(d: &Decomposition, y: &[f64], factors: &[f64]) -> Vec<f64> {
    y.iter()
        .zip(factors)
        .enumerate()
        .map(|(i, (&v, &f))| if d.is_min(i) { v * f } else { v / f })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn flip_is_self_inverse(y in proptest::collection::vec(positive(), 1..6), mask in proptest::collection::vec(any::<bool>(), 6), pow in proptest::collection::vec(-20i32..20, 6)) {
        let p = y.len();
        let g = GammaSet::new((0..p).filter(|&i| mask[i]));
        let pt = PointImage::new(y.clone()).unwrap();
        let back = gamma_flip(&gamma_flip(&pt, &g).unwrap(), &g).unwrap();
        for (a, b) in back.as_slice().iter().zip(&y) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs());
        }
        let two: Vec<f64> = (0..p).map(|i| 2f64.powi(pow[i])).collect();
        let pt = PointImage::new(two.clone()).unwrap();
        let back = gamma_flip(&gamma_flip(&pt, &g).unwrap(), &g).unwrap();
        prop_assert_eq!(back.as_slice(), &two[..]);
    }

    #[test]
    fn transform_preserves_dominance((inst, g) in instance_with_gamma()) {
        let t = transform_instance(&inst, &g).unwrap();
        for a in 0..inst.len() {
            for b in 0..inst.len() {
                prop_assert_eq!(
                    compare(inst.image(a), inst.image(b), inst.decomposition()).unwrap(),
                    compare(t.image(a), t.image(b), t.decomposition()).unwrap()
                );
            }
        }
    }

    #[test]
    fn transform_preserves_min_alpha((inst, g) in instance_with_gamma(), mask in proptest::collection::vec(any::<bool>(), 12)) {
        let mut subset: Vec<usize> = (0..inst.len()).filter(|&i| mask[i]).collect();
        if subset.is_empty() { subset.push(0); }
        let t = transform_instance(&inst, &g).unwrap();
        let a = min_alpha(&subset, &inst).unwrap().value().unwrap();
        let b = min_alpha(&subset, &t).unwrap().value().unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs(), "{} vs {}", a, b);
    }

    #[test]
    fn full_and_nondominated_sets_are_exact(inst in instance()) {
        let all: Vec<usize> = (0..inst.len()).collect();
        prop_assert_eq!(min_alpha(&all, &inst).unwrap().value(), Some(1.0));
        prop_assert_eq!(min_alpha(&nondominated_set(&inst), &inst).unwrap().value(), Some(1.0));
    }

    #[test]
    fn one_approximation_is_weak_dominance(inst in instance()) {
        let d = inst.decomposition();
        for a in 0..inst.len() {
            for b in 0..inst.len() {
                let weak = matches!(
                    compare(inst.image(a), inst.image(b), d).unwrap(),
                    DominanceRelation::StrictlyDominates | DominanceRelation::Dominates | DominanceRelation::Equal
                );
                prop_assert_eq!(approximates(inst.image(a), inst.image(b), 1.0, d).unwrap(), weak);
            }
        }
    }

    #[test]
    fn double_gamma_transform_is_identity(
        (d, s, g) in (2usize..=4).prop_flat_map(|p| decomposition(p).prop_flat_map(move |d| (Just(d.clone()), spec_for(d), gamma(p)))),
        y in proptest::collection::vec(positive(), 4),
    ) {
        let y = PointImage::new(y[..d.p()].to_vec()).unwrap();
        let twice = gamma_transform(&gamma_transform(&s, &g), &g);
        let a = evaluate(&twice, &d, &y).unwrap();
        let b = evaluate(&s, &d, &y).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        let once = gamma_transform(&s, &g);
        let td = d.transformed(&g).unwrap();
        let flipped = gamma_flip(&y, &g).unwrap();
        let a = evaluate(&once, &td, &y).unwrap();
        let b = evaluate(&s, &d, &flipped).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{} vs {}", a, b);
    }

    #[test]
    fn weak_monotonicity(
        (d, s) in (2usize..=4).prop_flat_map(|p| decomposition(p).prop_flat_map(|d| (Just(d.clone()), spec_for(d)))),
        y in proptest::collection::vec(positive(), 4),
        f in proptest::collection::vec(prop_oneof![Just(1.0), 1.0f64..10.0], 4),
    ) {
        let p = d.p();
        let worse = weakly_worse(&d, &y[..p], &f[..p]);
        let a = evaluate(&s, &d, &PointImage::new(y[..p].to_vec()).unwrap()).unwrap();
        let b = evaluate(&s, &d, &PointImage::new(worse).unwrap()).unwrap();
        prop_assert!(a <= b + 1e-12, "{} > {}", a, b);
    }

    #[test]
    fn neg_reciprocal_keeps_argmin(
        (pts, s) in (2usize..=4).prop_flat_map(|p| (proptest::collection::vec(proptest::collection::vec(positive(), p), 1..12), min_spec(p))),
    ) {
        let p = s.p();
        let inst = Instance::new(Decomposition::all_min(p), pts.into_iter().enumerate().map(|(i, y)| (format!("x{i}"), y))).unwrap();
        let plain = s.clone().with_post(PostCompose::Identity);
        let neg = s.with_post(PostCompose::NegReciprocal);
        prop_assert_eq!(optimal_set(&inst, &plain, 0.0).unwrap(), optimal_set(&inst, &neg, 0.0).unwrap());
    }

    #[test]
    fn transform_preserves_optimal_sets((inst, g) in instance_with_gamma(), w in proptest::collection::vec(positive(), 4)) {
        let s = ScalarizerSpec::weighted_sum(w[..inst.p()].to_vec());
        let t = transform_instance(&inst, &g).unwrap();
        prop_assert_eq!(optimal_set(&inst, &s, 1e-9).unwrap(), optimal_set(&t, &gamma_transform(&s, &g), 1e-9).unwrap());
    }

    #[test]
    fn composite_matches_max_ordering_on_boxes(
        lo in proptest::collection::vec(positive(), 2),
        span in proptest::collection::vec(1.0f64..50.0, 2),
        t in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 2), 1..10),
        wt in proptest::collection::vec(0.0f64..1.0, 2),
        shrink in 0.01f64..0.99,
    ) {
        let hi = [lo[0] * span[0], lo[1] * span[1]];
        let eps = shrink * lo[0] * lo[1] / (hi[0] * hi[1]);
        let w = vec![lo[1] + wt[0] * (hi[1] - lo[1]), lo[0] + wt[1] * (hi[0] - lo[0])];
        let comp = ScalarizerSpec::new(Family::CompositeMinMax { eps }, w.clone());
        let mo = ScalarizerSpec::max_ordering(w);
        let d = Decomposition::all_min(2);
        for u in t {
            let y = PointImage::new(vec![lo[0] + u[0] * (hi[0] - lo[0]), lo[1] + u[1] * (hi[1] - lo[1])]).unwrap();
            prop_assert_eq!(evaluate(&comp, &d, &y).unwrap(), evaluate(&mo, &d, &y).unwrap());
        }
    }

    #[test]
    fn grid_refinement_is_monotone(inst in instance(), m in 2usize..8) {
        let p = inst.p();
        prop_assume!(m >= p);
        let s = ScalarizerSpec::weighted_sum(vec![1.0; p]);
        let coarse = weight_grid(p, m).unwrap();
        let fine = weight_grid(p, 2 * m).unwrap();
        let a = scalapprox::supported_set(&inst, &s, &coarse, 1e-9).unwrap();
        let b = scalapprox::supported_set(&inst, &s, &fine, 1e-9).unwrap();
        prop_assert!(a.iter().all(|i| b.contains(i)));
    }

    #[test]
    fn strongly_monotone_optima_are_efficient(
        pts in proptest::collection::vec(proptest::collection::vec(positive(), 3), 1..15),
        w in proptest::collection::vec(positive(), 3),
        q in 1.0f64..5.0,
    ) {
        let inst = Instance::new(Decomposition::all_min(3), pts.into_iter().enumerate().map(|(i, y)| (format!("x{i}"), y))).unwrap();
        let nd = nondominated_set(&inst);
        for s in [ScalarizerSpec::weighted_sum(w.clone()), ScalarizerSpec::q_norm(q, w.clone())] {
            let opt = optimal_set(&inst, &s, 0.0).unwrap();
            prop_assert!(opt.iter().all(|i| nd.contains(i)));
        }
        let opt = optimal_set(&inst, &ScalarizerSpec::max_ordering(w), 0.0).unwrap();
        prop_assert!(opt.iter().any(|i| nd.contains(i)));
    }
}

#[test]
fn custom_and_harmonic_are_weakly_monotone() {
    let mut rng = scalapprox::sampling::rng(5);
    let quad = ScalarizerSpec::unit(Family::Custom(CustomExpr::MinQuadratic), 2);
    let hm = ScalarizerSpec::new(Family::HarmonicMean, vec![1.0, 2.0, 0.5]);
    let nd = ScalarizerSpec::new(Family::NormDifference { inner_min: Norm::Q(2.0), inner_max: Norm::one() }, vec![1.0, 1.0, 3.0]);
    let cases = [
        (quad, Decomposition::all_min(2)),
        (hm, Decomposition::all_max(3)),
        (nd, Decomposition::min_prefix(1, 3).unwrap()),
    ];
    for (s, d) in cases {
        for _ in 0..2000 {
            let y: Vec<f64> = scalapprox::sampling::log_uniform_point(&mut rng, d.p(), 1e-3, 1e3);
            let f: Vec<f64> = scalapprox::sampling::log_uniform_point(&mut rng, d.p(), 1.0, 10.0);
            let a = evaluate(&s, &d, &PointImage::new(y.clone()).unwrap()).unwrap();
            let b = evaluate(&s, &d, &PointImage::new(weakly_worse(&d, &y, &f)).unwrap()).unwrap();
            assert!(a <= b + 1e-12, "{s:?}: {a} > {b}");
        }
    }
}

#[test]
fn f32_instances_work() {
    let inst: GenericInstance<f32> =
        GenericInstance::new(Decomposition::all_min(2), [("a", vec![1.0f32, 4.0]), ("b", vec![2.0, 2.0])]).unwrap();
    assert_eq!(min_alpha(&[1], &inst).unwrap().value(), Some(2.0f32));
    let grid = weight_grid::<f32>(2, 16).unwrap();
    let s = scalapprox::scalarize::ScalarizerSpec::<f32>::weighted_sum(vec![1.0, 1.0]);
    assert_eq!(scalapprox::supported_set(&inst, &s, &grid, 1e-6).unwrap(), vec![0, 1]);
}
