//! Worked examples for every public operation, each checked against an
//! oracle computed independently of the library routine under test.

use approx::assert_relative_eq;
use scalapprox::quality::WeightedNorm;
use scalapprox::{
    adversarial_finite, adversarial_mixed_max, adversarial_norm_min, approximates, compare, evaluate,
    find_level_scaling, gamma_flip, gamma_transform, level_ratio_sup, level_ratio_sup_sampled, min_alpha_ids,
    nondominated_set, optimal_set, reverify, supported_set, theoretical_bound, transform_instance, weight_grid,
    weighted_bound_estimate, CustomExpr, Decomposition, DominanceRelation, Error, Family, GammaSet, Instance, Norm,
    PointImage, ScalarizerSpec, Witness,
};

fn pt(v: &[f64]) -> PointImage {
    PointImage::new(v.to_vec()).unwrap()
}

fn inst(d: Decomposition, pts: &[(&str, &[f64])]) -> Instance {
    Instance::new(d, pts.iter().map(|(id, y)| (*id, y.to_vec()))).unwrap()
}

fn four(d: Decomposition) -> Instance {
    inst(d, &[("a", &[1., 3.]), ("b", &[2., 2.]), ("c", &[3., 1.]), ("d", &[2.5, 2.5])])
}

fn ids(i: &Instance, ix: &[usize]) -> Vec<String> {
    i.labels(ix)
}

/// Pairwise oracle: `a` weakly better everywhere and strictly somewhere.
fn dominates(a: &[f64], b: &[f64], d: &Decomposition) -> bool {
    let better = |i: usize| if d.is_min(i) { a[i] < b[i] } else { a[i] > b[i] };
    let no_worse = |i: usize| if d.is_min(i) { a[i] <= b[i] } else { a[i] >= b[i] };
    (0..a.len()).all(no_worse) && (0..a.len()).any(better)
}

#[test]
fn validate_instance_examples() {
    let mm = Decomposition::all_min(2);
    assert!(Instance::new(mm.clone(), [("a", vec![1.0, 2.0]), ("b", vec![2.0, 1.0])]).is_ok());
    assert!(matches!(Instance::new(mm.clone(), [("a", vec![0.0, 2.0])]), Err(Error::NonPositiveComponent { .. })));
    assert_eq!(
        Instance::new(mm.clone(), [("a", vec![1.0, 2.0]), ("a", vec![2.0, 1.0])]).unwrap_err(),
        Error::DuplicateId("a".into())
    );
    assert!(matches!(Instance::new(mm.clone(), [("a", vec![1.0])]), Err(Error::DimensionMismatch { .. })));
    assert_eq!(Instance::new(mm, Vec::<(String, Vec<f64>)>::new()).unwrap_err(), Error::EmptyInstance);
}

#[test]
fn compare_examples() {
    let mm = Decomposition::all_min(2);
    let mixed = Decomposition::new(2, &[0], &[1]).unwrap();
    assert_eq!(compare(&pt(&[1., 2.]), &pt(&[2., 3.]), &mm).unwrap(), DominanceRelation::StrictlyDominates);
    assert_eq!(compare(&pt(&[1., 5.]), &pt(&[2., 3.]), &mixed).unwrap(), DominanceRelation::StrictlyDominates);
    assert_eq!(compare(&pt(&[1., 3.]), &pt(&[3., 1.]), &mm).unwrap(), DominanceRelation::Incomparable);
}

#[test]
fn nondominated_examples() {
    for (d, expected) in [(Decomposition::all_min(2), vec!["a", "b", "c"]), (Decomposition::all_max(2), vec!["a", "c", "d"])] {
        let i = four(d.clone());
        // oracle: 12 ordered pairs by hand-written dominance; under max-max
        // d = (2.5, 2.5) dominates b but not a = (1, 3)
        let oracle: Vec<&str> = (0..4)
            .filter(|&x| !(0..4).any(|y| y != x && dominates(i.image(y).as_slice(), i.image(x).as_slice(), &d)))
            .map(|x| ["a", "b", "c", "d"][x])
            .collect();
        assert_eq!(oracle, expected);
        assert_eq!(ids(&i, &nondominated_set(&i)), expected);
    }
    let single = inst(Decomposition::all_min(3), &[("z", &[1., 2., 3.])]);
    assert_eq!(nondominated_set(&single), vec![0]);
}

#[test]
fn approximates_examples() {
    let mm = Decomposition::all_min(2);
    assert!(approximates(&pt(&[2., 2.]), &pt(&[1., 1.]), 2.0, &mm).unwrap());
    assert!(approximates(&pt(&[1., 1.]), &pt(&[2., 2.]), 2.0, &Decomposition::all_max(2)).unwrap());
    assert!(!approximates(&pt(&[2., 2.]), &pt(&[1., 2.]), 1.5, &mm).unwrap());
}

#[test]
fn min_alpha_examples() {
    let i = inst(Decomposition::all_min(2), &[("a", &[1., 4.]), ("b", &[2., 2.]), ("c", &[4., 1.])]);
    let c = min_alpha_ids(&["b"], &i).unwrap();
    // oracle: b covers a with max(2/1, 2/4) = 2 and c with max(2/4, 2/1) = 2
    assert_eq!(c.value(), Some(2.0));
    let Some(Witness::Pair { approximated, approximator }) = c.witness else { panic!("pair witness") };
    assert_eq!((approximated.as_str(), approximator.as_str()), ("a", "b"), "first witness in instance order");
    assert_eq!(min_alpha_ids(&["a", "b", "c"], &i).unwrap().value(), Some(1.0));
    let nd = nondominated_set(&i);
    assert_eq!(scalapprox::min_alpha(&nd, &i).unwrap().value(), Some(1.0));
}

#[test]
fn gamma_flip_examples() {
    assert_eq!(gamma_flip(&pt(&[2., 4.]), &GammaSet::new([0])).unwrap(), pt(&[0.5, 4.]));
    assert_eq!(gamma_flip(&pt(&[2., 4.]), &GammaSet::empty()).unwrap(), pt(&[2., 4.]));
    assert_eq!(gamma_flip(&pt(&[2., 4.]), &GammaSet::all(2)).unwrap(), pt(&[0.5, 0.25]));
    assert_eq!(gamma_flip(&pt(&[2., 4.]), &GammaSet::new([2])).unwrap_err(), Error::IndexOutOfRange { index: 3, p: 2 });
}

#[test]
fn transform_instance_examples() {
    let i = inst(Decomposition::all_min(2), &[("a", &[2., 4.])]);
    let t = transform_instance(&i, &GammaSet::all(2)).unwrap();
    assert_eq!(t.decomposition(), &Decomposition::all_max(2));
    assert_eq!(t.image(0), &pt(&[0.5, 0.25]));
    assert_eq!(transform_instance(&t, &GammaSet::all(2)).unwrap(), i);

    let f = four(Decomposition::all_min(2));
    let t = transform_instance(&f, &GammaSet::all(2)).unwrap();
    assert_eq!(ids(&t, &nondominated_set(&t)), vec!["a", "b", "c"]);
}

#[test]
fn evaluate_and_transform_examples() {
    let mm = Decomposition::all_min(2);
    let xx = Decomposition::all_max(2);
    assert_eq!(evaluate(&ScalarizerSpec::weighted_sum(vec![1., 2.]), &mm, &pt(&[3., 4.])).unwrap(), 11.0);
    let mixed = Decomposition::new(2, &[0], &[1]).unwrap();
    assert_eq!(evaluate(&ScalarizerSpec::weighted_sum(vec![1., 1.]), &mixed, &pt(&[3., 4.])).unwrap(), -1.0);
    let ws = gamma_transform(&ScalarizerSpec::weighted_sum(vec![1., 1.]), &GammaSet::all(2));
    assert_eq!(evaluate(&ws, &xx, &pt(&[2., 4.])).unwrap(), 1.0 / 2.0 + 1.0 / 4.0);
    let mo = gamma_transform(&ScalarizerSpec::max_ordering(vec![1., 1.]), &GammaSet::all(2));
    assert_eq!(evaluate(&mo, &xx, &pt(&[2., 4.])).unwrap(), f64::max(1.0 / 2.0, 1.0 / 4.0));
}

#[test]
fn level_scaling_examples() {
    let mm = Decomposition::all_min(2);
    let sum = ScalarizerSpec::weighted_sum(vec![1., 1.]);
    assert_relative_eq!(find_level_scaling(&sum, &mm, &pt(&[1., 1.]), &pt(&[2., 2.]), 1e-10).unwrap(), 2.0, epsilon = 1e-9);
    let mixed = Decomposition::new(2, &[0], &[1]).unwrap();
    // oracle: positive root of 2λ - 2/λ = 0
    let l = find_level_scaling(&sum, &mixed, &pt(&[2., 2.]), &pt(&[5., 5.]), 1e-10).unwrap();
    assert!((2.0 * l - 2.0 / l).abs() <= 1e-10);
    assert_relative_eq!(l, 1.0, epsilon = 1e-9);
    let y = pt(&[0.2, 30.0]);
    let q2 = ScalarizerSpec::q_norm(2.0, vec![1.0, 5.0]);
    assert_relative_eq!(find_level_scaling(&q2, &mm, &y, &y, 1e-10).unwrap(), 1.0, epsilon = 1e-9);
}

#[test]
fn optimal_and_supported_examples() {
    let f = four(Decomposition::all_min(2));
    let ws = |w: Vec<f64>| ScalarizerSpec::weighted_sum(w);
    assert_eq!(ids(&f, &optimal_set(&f, &ws(vec![0.5, 0.5]), 1e-9).unwrap()), vec!["a", "b", "c"]);
    assert_eq!(ids(&f, &optimal_set(&f, &ws(vec![2. / 3., 1. / 3.]), 1e-9).unwrap()), vec!["a"]);
    assert_eq!(ids(&f, &optimal_set(&f, &ScalarizerSpec::max_ordering(vec![1., 1.]), 1e-9).unwrap()), vec!["b"]);
    let grid = weight_grid(2, 100).unwrap();
    assert_eq!(ids(&f, &supported_set(&f, &ws(vec![1., 1.]), &grid, 1e-9).unwrap()), vec!["a", "b", "c"]);
    let mx = inst(Decomposition::all_max(2), &[("a", &[1., 10.]), ("b", &[5., 5.]), ("c", &[10., 1.])]);
    assert_eq!(ids(&mx, &supported_set(&mx, &ws(vec![1., 1.]), &grid, 1e-9).unwrap()), vec!["a", "c"]);
}

#[test]
fn theoretical_bound_examples() {
    let b = |n: Norm<f64>, p: usize| theoretical_bound(&WeightedNorm::unit(n, p).unwrap()).unwrap().value().unwrap();
    assert_relative_eq!(b(Norm::one(), 3), 3.0, epsilon = 1e-12);
    assert_relative_eq!(b(Norm::Q(2.0), 4), 2.0, epsilon = 1e-12);
    assert_relative_eq!(b(Norm::AugmentedTchebycheff(1.0), 3), 2.0, epsilon = 1e-12);
}

#[test]
fn level_ratio_examples() {
    let one = WeightedNorm::unit(Norm::one(), 2).unwrap();
    assert_eq!(level_ratio_sup(&one, &pt(&[1., 1.])).unwrap().value(), Some(2.0));
    let closed = level_ratio_sup(&one, &pt(&[1., 3.])).unwrap().value().unwrap();
    assert_eq!(closed, 4.0);
    // oracle: sampled level set points approach the closed form from below
    let sampled = level_ratio_sup_sampled(&one.to_spec(), &Decomposition::all_min(2), &pt(&[1., 3.]), 100_000, 1e6, 9)
        .unwrap()
        .value()
        .unwrap();
    assert!(sampled <= closed * (1.0 + 1e-12) && sampled >= closed * 0.99, "{sampled}");
    let max = WeightedNorm::unit(Norm::max(), 2).unwrap();
    assert_eq!(level_ratio_sup(&max, &pt(&[1., 1.])).unwrap().value(), Some(1.0));
}

#[test]
fn sampled_level_ratio_examples() {
    let mm = Decomposition::all_min(2);
    let y = [1.0, 1.0];
    let w: Vec<f64> = y.iter().map(|yi| (y[0] + y[1]) / yi).collect();
    let c = level_ratio_sup_sampled(&ScalarizerSpec::weighted_sum(w), &mm, &pt(&y), 10_000, 1e6, 42).unwrap();
    assert_relative_eq!(c.value().unwrap(), 2.0, max_relative = 0.01);
    let quad = ScalarizerSpec::unit(Family::Custom(CustomExpr::MinQuadratic), 2);
    let c = level_ratio_sup_sampled(&quad, &mm, &pt(&[10., 10.]), 100_000, 1e6, 42).unwrap();
    assert!(c.value().unwrap() >= 11.0 * 0.99);
    let mixed = Decomposition::new(2, &[0], &[1]).unwrap();
    let c = level_ratio_sup_sampled(&ScalarizerSpec::weighted_sum(vec![1., 1.]), &mixed, &pt(&[3., 0.5]), 1000, 1e6, 42).unwrap();
    assert!(c.is_infinite());
}

#[test]
fn weighted_bound_examples() {
    let ws = ScalarizerSpec::weighted_sum(vec![1., 1.]);
    let c = weighted_bound_estimate(&ws, &Decomposition::all_min(2), 1000, 100, 1e6, 42).unwrap();
    assert_eq!(c.value(), Some(2.0));
    for p in 2..=5 {
        let mo = ScalarizerSpec::max_ordering(vec![1.; p]);
        assert_eq!(weighted_bound_estimate(&mo, &Decomposition::all_min(p), 100, 20, 1e6, 42).unwrap().value(), Some(1.0));
    }
    let mixed = Decomposition::new(2, &[0], &[1]).unwrap();
    assert!(weighted_bound_estimate(&ws, &mixed, 1000, 10, 1e6, 42).unwrap().is_infinite());
}

#[test]
fn adversarial_finite_examples() {
    let s = vec![ScalarizerSpec::weighted_sum(vec![1., 1.])];
    let c = adversarial_finite(&s, &Decomposition::all_min(2), 2.0).unwrap();
    assert_eq!(c.instance.image(1), &pt(&[1.0 / 3.0, 4.0]));
    assert_eq!(c.unserved_id, "x1");
    assert_eq!(min_alpha_ids(&["x0"], &c.instance).unwrap().value(), Some(3.0));

    let specs: Vec<_> = [[1., 1.], [1., 3.], [5., 1.]].iter().map(|w| ScalarizerSpec::weighted_sum(w.to_vec())).collect();
    let c = adversarial_finite(&specs, &Decomposition::all_min(2), 5.0).unwrap();
    assert_eq!(c.instance.len(), 4);
    assert!(c.supported_ids.len() <= 3);
    // oracle: enumerate optima and covers directly
    let mut supported: Vec<usize> = specs.iter().flat_map(|s| optimal_set(&c.instance, s, 0.0).unwrap()).collect();
    supported.sort_unstable();
    supported.dedup();
    let u = c.instance.index_of(&c.unserved_id).unwrap();
    assert!(!supported.contains(&u));
    for x in 0..4 {
        if x != u {
            assert!(!approximates(c.instance.image(x), c.instance.image(u), 5.0, c.instance.decomposition()).unwrap());
        }
    }
    assert_eq!(reverify(&c).unwrap(), c.checks);
}

#[test]
fn adversarial_norm_min_examples() {
    let one = WeightedNorm::unit(Norm::one(), 2).unwrap();
    let c = adversarial_norm_min(&one, 0.5).unwrap();
    let expect = [("xbar", [0.625, 0.625]), ("x1", [0.84375, 0.09375]), ("x2", [0.09375, 0.84375])];
    for (id, y) in expect {
        assert_eq!(c.instance.image(c.instance.index_of(id).unwrap()), &pt(&y));
    }
    assert!(min_alpha_ids(&["x1", "x2"], &c.instance).unwrap().value().unwrap() > 1.0);
    assert!(matches!(adversarial_norm_min(&one, 1.0), Err(Error::EpsOutOfRange(_))));
    let two = WeightedNorm::unit(Norm::Q(2.0), 2).unwrap();
    let c = adversarial_norm_min(&two, 0.1).unwrap();
    assert!(c.supported_quality >= 2f64.sqrt() * 0.9);
}

#[test]
fn adversarial_mixed_max_examples() {
    let c = adversarial_mixed_max(Norm::one(), Norm::one(), 1, 2, 2.0).unwrap();
    let get = |c: &scalapprox::AdversarialCertificate, id: &str| c.instance.image(c.instance.index_of(id).unwrap()).clone();
    assert_eq!(get(&c, "xbar"), pt(&[1., 1.]));
    assert_relative_eq!(get(&c, "x1").as_slice()[0], 1.0 / 6.0, epsilon = 1e-15);
    assert_relative_eq!(get(&c, "x1").as_slice()[1], 1.0 / 3.0, epsilon = 1e-15);
    assert_eq!(get(&c, "x2"), pt(&[3., 4.]));
    assert!(c.all_passed());
    let c = adversarial_mixed_max(Norm::one(), Norm::one(), 0, 2, 1.0).unwrap();
    assert_eq!(get(&c, "x1"), pt(&[2., 0.5]));
    assert_eq!(get(&c, "x2"), pt(&[0.5, 2.]));
    assert_eq!(c.unserved_id, "xbar");
    assert!(matches!(adversarial_mixed_max(Norm::one(), Norm::one(), 2, 2, 2.0), Err(Error::Precondition(_))));
}
