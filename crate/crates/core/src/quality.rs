//! Closed-form approximation bounds for norm-based weighted scalarizations,
//! level-set ratio suprema and numeric estimates of the best bound.

use rayon::prelude::*;

use crate::certificate::{Method, QualityCertificate, QualityValue, Witness};
use crate::error::{Error, Result};
use crate::model::{cover_ratio, Decomposition, PointImage};
use crate::sampling::{self, SAMPLE_BOX};
use crate::scalar::Scalar;
use crate::scalarize::{Family, Norm, PostCompose, Scalarizer, ScalarizerSpec};

/// Default threshold above which a sampled supremum is reported as unbounded.
pub const DEFAULT_CAP: f64 = 1e6;
/// Default seed for sampled quality estimates.
pub const DEFAULT_QUALITY_SEED: u64 = 42;

const SCREEN_PAIRS: usize = 100;
const SCREEN_SEED: u64 = 0x6e6f726d;
const SHARD: usize = 4096;
const PROBE_SCALES: [f64; 4] = [1e3, 1e6, 1e12, 1e24];

/// A function on the positive orthant that claims to be a monotone norm.
pub trait NormEvaluator<T: Scalar>: Sync {
    fn dim(&self) -> usize;
    fn norm(&self, y: &[T]) -> T;
}

/// `z ↦ ‖(w_1 z_1, ..., w_p z_p)‖` for a cataloged norm.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedNorm<T> {
    pub norm: Norm<T>,
    pub weights: Vec<T>,
}

impl<T: Scalar> WeightedNorm<T> {
    pub fn new(norm: Norm<T>, weights: Vec<T>) -> Result<Self> {
        norm.validate()?;
        if weights.is_empty() || weights.iter().any(|w| !(w.is_finite() && *w > T::zero())) {
            return Err(Error::InvalidSpec("weights must be nonempty, positive and finite".into()));
        }
        Ok(Self { norm, weights })
    }

    pub fn unit(norm: Norm<T>, p: usize) -> Result<Self> {
        Self::new(norm, vec![T::one(); p])
    }

    /// The norm behind a spec of a weighted norm family on pure minimization.
    pub fn from_spec(spec: &ScalarizerSpec<T>) -> Result<Self> {
        spec.validate()?;
        let p = spec.p();
        let norm = norm_of(spec, &Decomposition::all_min(p))
            .ok_or_else(|| Error::NotANorm(format!("{} with the given flags is not a weighted norm", spec.family.name())))?;
        Self::new(norm, spec.weights.clone())
    }

    /// Rescaled so that every unit vector has norm one.
    pub fn normalized(&self) -> Self {
        let p = self.weights.len();
        let weights = (0..p).map(|i| self.weights[i] / self.norm(&unit_vector(p, i))).collect();
        Self { norm: self.norm, weights }
    }

    pub fn to_spec(&self) -> ScalarizerSpec<T> {
        let family = match self.norm {
            Norm::Q(q) => Family::WeightedQNorm { q },
            Norm::AugmentedTchebycheff(rho) => Family::AugmentedTchebycheff { rho },
        };
        ScalarizerSpec::new(family, self.weights.clone())
    }
}

impl<T: Scalar> NormEvaluator<T> for WeightedNorm<T> {
    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn norm(&self, y: &[T]) -> T {
        self.norm.eval_by(y.len(), |i| self.weights[i] * y[i].abs())
    }
}

/// A user-supplied norm given as a closure.
pub struct FnNorm<F> {
    p: usize,
    f: F,
}

impl<F> FnNorm<F> {
    pub fn new(p: usize, f: F) -> Self {
        Self { p, f }
    }
}

impl<T: Scalar, F: Fn(&[T]) -> T + Sync> NormEvaluator<T> for FnNorm<F> {
    fn dim(&self) -> usize {
        self.p
    }

    fn norm(&self, y: &[T]) -> T {
        (self.f)(y)
    }
}

fn norm_of<T: Scalar>(spec: &ScalarizerSpec<T>, decomposition: &Decomposition) -> Option<Norm<T>> {
    if !spec.gamma.is_empty() || spec.post != PostCompose::Identity {
        return None;
    }
    spec.family.as_norm(decomposition)
}

fn unit_vector<T: Scalar>(p: usize, i: usize) -> Vec<T> {
    let mut e = vec![T::zero(); p];
    e[i] = T::one();
    e
}

/// Randomized screen of positivity, homogeneity, the triangle inequality and
/// strict monotonicity on the positive orthant.
pub fn screen_norm<T: Scalar, N: NormEvaluator<T> + ?Sized>(n: &N) -> Result<()> {
    let p = n.dim();
    if p == 0 {
        return Err(Error::NotANorm("dimension must be positive".into()));
    }
    let tol = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));
    let mut rng = sampling::rng(SCREEN_SEED);
    for _ in 0..SCREEN_PAIRS {
        let x: Vec<T> = sampling::log_uniform_point(&mut rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1);
        let y: Vec<T> = sampling::log_uniform_point(&mut rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1);
        let t = T::lit(sampling::log_uniform(&mut rng, SAMPLE_BOX.0, SAMPLE_BOX.1));
        let (nx, ny) = (n.norm(&x), n.norm(&y));
        if !(nx > T::zero() && nx.is_finite()) {
            return Err(Error::NotANorm(format!("value {nx} at {x:?} is not positive and finite")));
        }
        let tx: Vec<T> = x.iter().map(|&v| t * v).collect();
        let ntx = n.norm(&tx);
        if (ntx - t * nx).abs() > tol * t * nx {
            return Err(Error::NotANorm(format!("homogeneity fails at {x:?} with factor {t}: {ntx} vs {}", t * nx)));
        }
        let sum: Vec<T> = x.iter().zip(&y).map(|(&a, &b)| a + b).collect();
        let nsum = n.norm(&sum);
        if nsum > (nx + ny) * (T::one() + tol) {
            return Err(Error::NotANorm(format!("triangle inequality fails at {x:?}, {y:?}")));
        }
        let worse: Vec<T> = x.iter().map(|&v| v * T::lit(sampling::log_uniform(&mut rng, 1.01, 10.0))).collect();
        if !(n.norm(&worse) > nx) {
            return Err(Error::NotANorm(format!("not strictly monotone at {x:?}")));
        }
    }
    Ok(())
}

/// `s(1/s(e¹), ..., 1/s(eᵖ))`: the approximation quality guaranteed by the
/// weighted scalarization of a strictly monotone norm on pure minimization.
pub fn theoretical_bound<T: Scalar, N: NormEvaluator<T> + ?Sized>(n: &N) -> Result<QualityCertificate<T>> {
    screen_norm(n)?;
    let p = n.dim();
    let ybar: Vec<T> = (0..p).map(|i| n.norm(&unit_vector(p, i)).recip()).collect();
    let value = n.norm(&ybar);
    Ok(QualityCertificate::exact(value, Method::ClosedForm, Some(Witness::Point(ybar))))
}

/// [`theoretical_bound`] for a spec of a weighted norm family.
pub fn theoretical_bound_spec<T: Scalar>(spec: &ScalarizerSpec<T>) -> Result<QualityCertificate<T>> {
    theoretical_bound(&WeightedNorm::from_spec(spec)?)
}

fn closed_form_sup<T: Scalar, N: NormEvaluator<T> + ?Sized>(n: &N, ybar: &[T]) -> (T, usize) {
    let p = n.dim();
    let (arg, best) = (0..p)
        .map(|i| (i, (n.norm(&unit_vector(p, i)) * ybar[i]).recip()))
        .fold((0, T::neg_infinity()), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    (n.norm(ybar) * best, arg)
}

/// Exact supremum of the ratio `max_i y_i / ȳ_i` over the level set of `ȳ`:
/// `s(ȳ) · max_i 1 / (s(eⁱ) ȳ_i)`. The witness is the maximizing coordinate.
pub fn level_ratio_sup<T: Scalar, N: NormEvaluator<T> + ?Sized>(n: &N, ybar: &PointImage<T>) -> Result<QualityCertificate<T>> {
    screen_norm(n)?;
    if ybar.dim() != n.dim() {
        return Err(Error::DimensionMismatch { expected: n.dim(), found: ybar.dim() });
    }
    let (value, arg) = closed_form_sup(n, ybar.as_slice());
    Ok(QualityCertificate::exact(value, Method::ClosedForm, Some(Witness::Coordinate(arg))))
}

/// Projects rays onto the level set `L(y', s)` and measures the ratio.
struct LevelSampler<'a, T: Scalar> {
    s: Scalarizer<T>,
    decomposition: &'a Decomposition,
    y: &'a [T],
    target: T,
    tol: T,
    homogeneous: bool,
}

impl<'a, T: Scalar> LevelSampler<'a, T> {
    fn new(spec: &ScalarizerSpec<T>, decomposition: &'a Decomposition, y: &'a PointImage<T>) -> Result<Self> {
        let s = spec.bind(decomposition)?;
        let target = s.evaluate(y)?;
        Ok(Self {
            homogeneous: decomposition.is_pure_min() && norm_of(spec, decomposition).is_some(),
            tol: T::lit(crate::scalarize::DEFAULT_LEVEL_TOL) * (T::one() + target.abs()),
            s,
            decomposition,
            y: y.as_slice(),
            target,
        })
    }

    /// Ratio at the level-set point on ray `q`, written to `out`.
    fn ratio(&self, q: &[T], out: &mut [T]) -> Result<T> {
        let lambda = if self.homogeneous {
            self.target / self.s.value(q)
        } else {
            self.s.level_root(q, self.y, self.target, self.tol)?.lambda
        };
        crate::scalarize::scaled_into(&self.s, q, lambda, out);
        if out.iter().any(|v| !(v.is_finite() && *v > T::zero())) {
            return Err(Error::ScalingFailure(format!("level-set point left the positive orthant: {out:?}")));
        }
        Ok(cover_ratio(out, self.y, self.decomposition))
    }

    /// Deterministic rays with components `c^±1` for every sign pattern.
    fn probes(&self) -> impl Iterator<Item = Vec<T>> + '_ {
        let p = self.y.len();
        let patterns: Vec<u64> = if p <= 10 {
            (0..1u64 << p).collect()
        } else {
            (0..p).flat_map(|i| [1u64 << i, !(1u64 << i)]).collect()
        };
        PROBE_SCALES.iter().flat_map(move |&c| {
            let patterns = patterns.clone();
            patterns.into_iter().map(move |mask| {
                (0..p).map(|i| T::lit(if mask >> i & 1 == 1 { c } else { c.recip() })).collect()
            })
        })
    }
}

/// Lower estimate of `sup { ratio(y, y') : y ∈ L(y', s) }` from `budget`
/// random rays in the log-uniform box plus deterministic corner probes.
/// Reports the unbounded flag once the running maximum exceeds `cap`.
pub fn level_ratio_sup_sampled<T: Scalar>(
    spec: &ScalarizerSpec<T>,
    decomposition: &Decomposition,
    yprime: &PointImage<T>,
    budget: usize,
    cap: T,
    seed: u64,
) -> Result<QualityCertificate<T>> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    if !(cap > T::one()) {
        return Err(Error::Precondition(format!("cap must exceed 1, got {cap}")));
    }
    let sampler = LevelSampler::new(spec, decomposition, yprime)?;
    let p = yprime.dim();
    let infinite = || QualityCertificate { value: QualityValue::Infinite, method: Method::Sampled, witness: None, budget_used: budget };

    let mut best = (T::one(), yprime.as_slice().to_vec());
    let mut out = vec![T::zero(); p];
    for q in sampler.probes() {
        if let Ok(r) = sampler.ratio(&q, &mut out) {
            if r > cap {
                return Ok(QualityCertificate { witness: Some(Witness::Point(out)), ..infinite() });
            }
            if r > best.0 {
                best = (r, out.clone());
            }
        }
    }

    let shards = budget.div_ceil(SHARD);
    let results: Vec<Result<(T, Vec<T>)>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = sampling::substream(seed, shard as u64);
            let count = SHARD.min(budget - shard * SHARD);
            let mut out = vec![T::zero(); p];
            let mut best = (T::neg_infinity(), Vec::new());
            for _ in 0..count {
                let q: Vec<T> = sampling::log_uniform_point(&mut rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1);
                let r = sampler.ratio(&q, &mut out)?;
                if r > best.0 {
                    best = (r, out.clone());
                }
            }
            Ok(best)
        })
        .collect();
    for r in results {
        let (v, point) = r?;
        if v > best.0 {
            best = (v, point);
        }
    }
    if best.0 > cap {
        return Ok(QualityCertificate { witness: Some(Witness::Point(best.1)), ..infinite() });
    }
    Ok(QualityCertificate {
        value: QualityValue::Finite(best.0),
        method: Method::Sampled,
        witness: Some(Witness::Point(best.1)),
        budget_used: budget,
    })
}

/// Estimate of `β = inf_ȳ sup { ratio(y, ȳ) : y ∈ L(ȳ, s_𝟙) }`, the
/// approximation quality of every optimal solution set of the weighted
/// family of `template`.
///
/// For norms on pure minimization each inner supremum is exact and the
/// analytic minimizer `(1/s(e¹), ..., 1/s(eᵖ))` is included, so the result
/// is exact. Otherwise the inner suprema are sampled and the result is a
/// heuristic.
pub fn weighted_bound_estimate<T: Scalar>(
    template: &ScalarizerSpec<T>,
    decomposition: &Decomposition,
    ray_budget: usize,
    ybar_budget: usize,
    cap: T,
    seed: u64,
) -> Result<QualityCertificate<T>> {
    if ray_budget == 0 || ybar_budget == 0 {
        return Err(Error::Precondition("budgets must be at least 1".into()));
    }
    let p = decomposition.p();
    let unit = template.reweighted(vec![T::one(); p]);
    unit.bind(decomposition)?;
    let mut rng = sampling::rng(seed);

    if let Some(norm) = norm_of(&unit, decomposition).filter(|_| decomposition.is_pure_min()) {
        let n = WeightedNorm::unit(norm, p)?;
        let bound = theoretical_bound(&n)?;
        let Some(Witness::Point(star)) = bound.witness else { unreachable!("bound carries its point") };
        let mut best = (closed_form_sup(&n, &star).0, star);
        for _ in 0..ybar_budget {
            let ybar: Vec<T> = sampling::log_uniform_point(&mut rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1);
            let v = closed_form_sup(&n, &ybar).0;
            if v < best.0 {
                best = (v, ybar);
            }
        }
        return Ok(QualityCertificate::exact(best.0, Method::ClosedForm, Some(Witness::Point(best.1))));
    }

    let mut best: Option<(T, Vec<T>)> = None;
    let mut used = 0;
    for j in 0..ybar_budget {
        let ybar: Vec<T> = sampling::log_uniform_point(&mut rng, p, SAMPLE_BOX.0, SAMPLE_BOX.1);
        let point = PointImage::unchecked(ybar);
        let inner = level_ratio_sup_sampled(&unit, decomposition, &point, ray_budget, cap, seed.wrapping_add(j as u64 + 1))?;
        used += inner.budget_used;
        if let Some(v) = inner.value() {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, point.into_vec()));
            }
        }
    }
    Ok(match best {
        Some((v, ybar)) => QualityCertificate {
            value: QualityValue::Finite(v),
            method: Method::Sampled,
            witness: Some(Witness::Point(ybar)),
            budget_used: used,
        },
        None => QualityCertificate { value: QualityValue::Infinite, method: Method::Sampled, witness: None, budget_used: used },
    })
}
