//! Instance generators showing where supported solutions fail to
//! approximate, each with post-conditions checked on the emitted instance.

use crate::error::{Error, Result};
use crate::model::{cover_ratio, min_alpha, Decomposition, Instance};
use crate::quality::{screen_norm, NormEvaluator, WeightedNorm};
use crate::sampling;
use crate::scalar::{close, Scalar};
use crate::scalarize::{Family, Norm, Scalarizer, ScalarizerSpec};
use crate::support::{binomial, optimal_set, supported_for_weights, weight_grid, DEFAULT_TIE_TOL};

/// Grid resolution used to certify "never optimal" claims.
pub const CERTIFY_GRID: usize = 256;
/// Number of random weight vectors checked on top of the grid.
pub const CERTIFY_RANDOM_WEIGHTS: usize = 10_000;
pub const CERTIFY_SEED: u64 = 42;
/// Relative tolerance under which two scalarizer values count as equal
/// during the finite construction.
pub const FINITE_TAU: f64 = 1e-9;
const MAX_GRID_VECTORS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryKind {
    Finite,
    NormMin,
    MixedMax,
}

impl AdversaryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AdversaryKind::Finite => "finite",
            AdversaryKind::NormMin => "normmin",
            AdversaryKind::MixedMax => "mixedmax",
        }
    }
}

/// The scalarization a certificate argues about.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalarization<T> {
    /// An explicit finite list of scalarizing functions.
    Finite(Vec<ScalarizerSpec<T>>),
    /// All reweightings of `template`, certified on a simplex grid plus
    /// seeded random weights.
    Weighted { template: ScalarizerSpec<T>, grid_m: usize, random_weights: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.into(), passed, detail }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversarialCertificate<T> {
    pub kind: AdversaryKind,
    pub instance: Instance<T>,
    pub target_alpha: T,
    pub unserved_id: String,
    pub supported_ids: Vec<String>,
    /// `min_alpha` of the supported set on the instance.
    pub supported_quality: T,
    pub scalarization: Scalarization<T>,
    pub checks: Vec<Check>,
}

impl<T: Scalar> AdversarialCertificate<T> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Verified<T> {
    checks: Vec<Check>,
    supported: Vec<usize>,
    quality: T,
}

fn supported_by<T: Scalar>(instance: &Instance<T>, scalarization: &Scalarization<T>) -> Result<(Vec<usize>, Vec<Check>)> {
    let tol = T::lit(DEFAULT_TIE_TOL);
    match scalarization {
        Scalarization::Finite(specs) => {
            let mut union = Vec::new();
            let mut multiple = Vec::new();
            for (j, s) in specs.iter().enumerate() {
                let opt = optimal_set(instance, s, tol)?;
                if opt.len() > 1 {
                    multiple.push(format!("s{j}: {:?}", instance.labels(&opt)));
                }
                union.extend(opt);
            }
            union.sort_unstable();
            union.dedup();
            let detail = if multiple.is_empty() { "every function has one optimum".into() } else { multiple.join("; ") };
            Ok((union, vec![Check::new("unique_optimum", multiple.is_empty(), detail)]))
        }
        Scalarization::Weighted { template, grid_m, random_weights, seed } => {
            let grid = weight_grid::<T>(instance.p(), *grid_m)?;
            let mut weights = grid.vectors().to_vec();
            let mut rng = sampling::rng(*seed);
            weights.extend((0..*random_weights).map(|_| sampling::random_weights(&mut rng, instance.p())));
            Ok((supported_for_weights(instance, template, &weights, tol, false)?, Vec::new()))
        }
    }
}

fn verify<T: Scalar>(
    instance: &Instance<T>,
    scalarization: &Scalarization<T>,
    target_alpha: T,
    unserved: usize,
) -> Result<Verified<T>> {
    let (supported, mut checks) = supported_by(instance, scalarization)?;
    let d = instance.decomposition();
    let id = instance.id(unserved);
    checks.push(Check::new(
        "unserved_not_supported",
        !supported.contains(&unserved),
        format!("{id} vs supported {:?}", instance.labels(&supported)),
    ));
    let y = instance.image(unserved).as_slice();
    let closest = (0..instance.len())
        .filter(|&x| x != unserved)
        .map(|x| (cover_ratio(instance.image(x).as_slice(), y, d), x))
        .fold(None, |acc: Option<(T, usize)>, c| if acc.is_none_or(|a| c.0 < a.0) { Some(c) } else { acc });
    let (ratio, detail) = match closest {
        Some((r, x)) => (r, format!("best cover of {id} is {} with ratio {r}", instance.id(x))),
        None => (T::infinity(), format!("{id} is the only point")),
    };
    checks.push(Check::new("unserved_not_alpha_approximated", ratio > target_alpha, detail));
    let quality = if supported.is_empty() { T::infinity() } else { min_alpha(&supported, instance)?.value.to_scalar() };
    checks.push(Check::new(
        "supported_quality_exceeds_target",
        quality > target_alpha,
        format!("min_alpha(supported) = {quality}, target {target_alpha}"),
    ));
    Ok(Verified { checks, supported, quality })
}

fn certify<T: Scalar>(
    kind: AdversaryKind,
    instance: Instance<T>,
    scalarization: Scalarization<T>,
    target_alpha: T,
    unserved: usize,
) -> Result<AdversarialCertificate<T>> {
    let v = verify(&instance, &scalarization, target_alpha, unserved)?;
    let failed: Vec<String> = v.checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect();
    if !failed.is_empty() {
        return Err(Error::ConstructionFailure(failed.join(", ")));
    }
    Ok(AdversarialCertificate {
        kind,
        unserved_id: instance.id(unserved).into(),
        supported_ids: instance.labels(&v.supported),
        supported_quality: v.quality,
        target_alpha,
        checks: v.checks,
        scalarization,
        instance,
    })
}

/// Recomputes every check of `cert` from its embedded instance.
pub fn reverify<T: Scalar>(cert: &AdversarialCertificate<T>) -> Result<Vec<Check>> {
    let unserved = cert.instance.index_of(&cert.unserved_id)?;
    Ok(verify(&cert.instance, &cert.scalarization, cert.target_alpha, unserved)?.checks)
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha >= T::one() && alpha.is_finite()) {
        return Err(Error::AlphaBelowOne(alpha.as_f64()));
    }
    Ok(())
}

/// Largest resolution up to [`CERTIFY_GRID`] whose grid stays tractable.
pub fn certify_resolution(p: usize) -> usize {
    let mut m = CERTIFY_GRID;
    while m > p.max(2) && binomial(m - 1, p.saturating_sub(1)) > MAX_GRID_VECTORS {
        m -= 1;
    }
    m.max(p).max(2)
}

/// The two objectives the biobjective construction runs on, and whether
/// each is maximized.
fn biobjective_pair(d: &Decomposition) -> [(usize, bool); 2] {
    let (min, max) = (d.min_indices(), d.max_indices());
    match min.len() {
        0 => [(max[0], true), (max[1], true)],
        1 => [(min[0], false), (max[0], true)],
        _ => [(min[0], false), (min[1], false)],
    }
}

/// An instance with `|S| + 1` points on which the finite scalarization `S`
/// leaves a point unsupported that no other point α-approximates.
pub fn adversarial_finite<T: Scalar>(
    specs: &[ScalarizerSpec<T>],
    decomposition: &Decomposition,
    alpha: T,
) -> Result<AdversarialCertificate<T>> {
    check_alpha(alpha)?;
    if specs.is_empty() {
        return Err(Error::Precondition("the scalarization must contain at least one function".into()));
    }
    let p = decomposition.p();
    if p < 2 {
        return Err(Error::Precondition("the construction needs at least two objectives".into()));
    }
    let bound: Vec<Scalarizer<T>> = specs.iter().map(|s| s.bind(decomposition)).collect::<Result<_>>()?;
    let pair = biobjective_pair(decomposition);
    let embed = |z: [T; 2]| -> Vec<T> {
        let mut y = vec![T::one(); p];
        for (&(i, flip), v) in pair.iter().zip(z) {
            y[i] = if flip { v.recip() } else { v };
        }
        y
    };
    let values = |z: [T; 2]| -> Vec<T> {
        let y = embed(z);
        bound.iter().map(|s| s.value(&y)).collect()
    };

    let n = specs.len();
    let tau = T::lit(FINITE_TAU);
    let a1 = alpha + T::one();
    let n2 = T::from_usize(n * n).expect("count fits");
    let mut zs = vec![[T::one(), T::one()]];
    let mut vals = vec![values(zs[0])];
    for l in 1..=n {
        let min1 = zs.iter().map(|z| z[0]).fold(T::infinity(), T::min);
        let max2 = zs.iter().map(|z| z[1]).fold(T::zero(), T::max);
        let mut z = [min1 / a1, a1 * max2 + n2];
        let mut steps = 0;
        loop {
            let v = values(z);
            let tied = vals.iter().any(|prev| prev.iter().zip(&v).any(|(&a, &b)| close(a, b, tau)));
            if !tied {
                vals.push(v);
                break;
            }
            if steps == l * n {
                return Err(Error::ConstructionFailure(format!("point {l} still ties after {steps} decreasing steps")));
            }
            z = [z[0] / T::lit(2.0), z[1] - T::one()];
            steps += 1;
        }
        zs.push(z);
    }

    let points = zs.iter().enumerate().map(|(l, &z)| (format!("x{l}"), embed(z)));
    let instance = Instance::new(decomposition.clone(), points)?;
    let scalarization = Scalarization::Finite(specs.to_vec());
    let (supported, _) = supported_by(&instance, &scalarization)?;
    let unserved = (0..instance.len())
        .find(|i| !supported.contains(i))
        .ok_or_else(|| Error::ConstructionFailure("every point is supported".into()))?;
    certify(AdversaryKind::Finite, instance, scalarization, alpha, unserved)
}

/// Instance on which the supported set of the weighted norm scalarization is
/// no `α(1 − ε)`-approximation set, `α` being the norm's guaranteed bound.
pub fn adversarial_norm_min<T: Scalar>(norm: &WeightedNorm<T>, eps: T) -> Result<AdversarialCertificate<T>> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::EpsOutOfRange(eps.as_f64()));
    }
    screen_norm(norm)?;
    let p = norm.dim();
    let unit = norm.normalized();
    let alpha = unit.norm(&vec![T::one(); p]);
    let two = T::lit(2.0);
    let delta = eps / (two * alpha);
    let shrink = T::one() - eps / two;
    let mut points = vec![("xbar".to_string(), vec![alpha.recip() + delta; p])];
    for i in 0..p {
        let y = (0..p).map(|j| shrink * (if i == j { T::one() } else { T::zero() } + delta)).collect();
        points.push((format!("x{}", i + 1), y));
    }
    let instance = Instance::new(Decomposition::all_min(p), points)?;
    let scalarization = Scalarization::Weighted {
        template: norm.to_spec(),
        grid_m: certify_resolution(p),
        random_weights: CERTIFY_RANDOM_WEIGHTS,
        seed: CERTIFY_SEED,
    };
    certify(AdversaryKind::NormMin, instance, scalarization, alpha * (T::one() - eps), 0)
}

/// Instance of type `({1..k}, {k+1..p})` on which the supported set of the
/// weighted norm-difference scalarization is no α-approximation set.
pub fn adversarial_mixed_max<T: Scalar>(
    inner_min: Norm<T>,
    inner_max: Norm<T>,
    k: usize,
    p: usize,
    alpha: T,
) -> Result<AdversarialCertificate<T>> {
    check_alpha(alpha)?;
    if k >= p {
        return Err(Error::Precondition(format!("need at least one maximized objective, got k = {k}, p = {p}")));
    }
    inner_min.validate()?;
    inner_max.validate()?;
    let s2 = WeightedNorm::unit(inner_max, p - k)?.normalized();
    let mut weights = if k > 0 { WeightedNorm::unit(inner_min, k)?.normalized().weights } else { Vec::new() };
    weights.extend_from_slice(&s2.weights);

    let a1 = alpha + T::one();
    let mut points = vec![("xbar".to_string(), vec![T::one(); p])];
    if k + 1 == p {
        let two = T::lit(2.0);
        let m = (T::one() - alpha / a1) / two;
        let big = alpha + two;
        let mut x1 = vec![m; p];
        x1[p - 1] = a1.recip();
        let mut x2 = vec![a1; p];
        x2[p - 1] = big;
        points.push(("x1".into(), x1));
        points.push(("x2".into(), x2));
    } else {
        let peak = s2.norm(&vec![T::one(); p - k]);
        for j in k..p {
            let y = (0..p)
                .map(|i| match i {
                    _ if i < k => T::lit(0.5),
                    _ if i == j => peak,
                    _ => a1.recip(),
                })
                .collect();
            points.push((format!("x{}", j + 1), y));
        }
    }
    let decomposition = Decomposition::min_prefix(k, p)?;
    let instance = Instance::new(decomposition, points)?;
    let scalarization = Scalarization::Weighted {
        template: ScalarizerSpec::new(Family::NormDifference { inner_min, inner_max }, weights),
        grid_m: certify_resolution(p),
        random_weights: CERTIFY_RANDOM_WEIGHTS,
        seed: CERTIFY_SEED,
    };
    certify(AdversaryKind::MixedMax, instance, scalarization, alpha, 0)
}
