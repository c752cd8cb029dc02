//! JSON formats for instances, scalarizer specs, certificates and
//! adversarial certificates. Objective indices are one-based; numbers may be
//! given as JSON numbers or as decimal strings, and non-finite values are
//! written as the strings `"inf"`, `"-inf"` and `"nan"`.

use serde_json::{json, Map, Value};

use crate::adversary::{AdversarialCertificate, AdversaryKind, Check, Scalarization};
use crate::certificate::{Method, QualityCertificate, QualityValue, Witness};
use crate::error::{Error, Result};
use crate::model::{Decomposition, GammaSet, Instance};
use crate::scalar::Scalar;
use crate::scalarize::{CustomExpr, Family, Norm, PostCompose, ScalarizerSpec};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn num<T: Scalar>(v: T) -> Value {
    let v = v.as_f64();
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn nums<T: Scalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn parse_num<T: Scalar>(v: &Value, what: &str) -> Result<T> {
    let f = match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| perr(format!("{what}: {n} is not representable")))?,
        Value::String(s) => s.trim().parse::<f64>().map_err(|_| perr(format!("{what}: '{s}' is not a number")))?,
        other => return Err(perr(format!("{what}: expected a number, found {other}"))),
    };
    T::from_f64(f).ok_or_else(|| perr(format!("{what}: {f} is not representable")))
}

fn parse_nums<T: Scalar>(v: &Value, what: &str) -> Result<Vec<T>> {
    v.as_array()
        .ok_or_else(|| perr(format!("{what}: expected an array")))?
        .iter()
        .map(|x| parse_num(x, what))
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(format!("missing field '{key}'")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what}: expected an object")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("{what}: expected a nonnegative integer")))
}

fn str_of<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(format!("{what}: expected a string")))
}

/// One-based index list to zero-based, rejecting 0 and values above `p`.
fn indices(v: &Value, p: usize, what: &str) -> Result<Vec<usize>> {
    let arr = v.as_array().ok_or_else(|| perr(format!("{what}: expected an array of indices")))?;
    arr.iter()
        .map(|x| {
            let i = usize_of(x, what)?;
            if i == 0 || i > p {
                return Err(Error::IndexOutOfRange { index: i, p });
            }
            Ok(i - 1)
        })
        .collect()
}

fn one_based(ix: &[usize]) -> Value {
    Value::Array(ix.iter().map(|i| json!(i + 1)).collect())
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    json!({ "p": d.p(), "min": one_based(&d.min_indices()), "max": one_based(&d.max_indices()) })
}

pub fn decomposition_from_json(v: &Value) -> Result<Decomposition> {
    let obj = object(v, "decomposition")?;
    let p = usize_of(field(obj, "p")?, "p")?;
    let min = match obj.get("min") {
        Some(v) => indices(v, p, "min")?,
        None => Vec::new(),
    };
    let max = match obj.get("max") {
        Some(v) => indices(v, p, "max")?,
        None => Vec::new(),
    };
    Decomposition::new(p, &min, &max)
}

pub fn instance_to_json<T: Scalar>(inst: &Instance<T>) -> Value {
    let mut v = decomposition_to_json(inst.decomposition());
    let points: Vec<Value> = inst.points().map(|(id, y)| json!({ "id": id, "y": nums(y.as_slice()) })).collect();
    v["points"] = Value::Array(points);
    v
}

/// Reads an instance document, or any document with an `instance` field.
pub fn instance_from_json<T: Scalar>(v: &Value) -> Result<Instance<T>> {
    let obj = object(v, "instance")?;
    if let Some(inner) = obj.get("instance") {
        return instance_from_json(inner);
    }
    let d = decomposition_from_json(v)?;
    let points = field(obj, "points")?.as_array().ok_or_else(|| perr("points: expected an array"))?;
    let raw = points
        .iter()
        .map(|pt| {
            let o = object(pt, "point")?;
            let id = str_of(field(o, "id")?, "id")?.to_string();
            let y = parse_nums::<T>(field(o, "y")?, &format!("point '{id}'"))?;
            Ok((id, y))
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(d, raw)
}

pub fn parse_instance<T: Scalar>(text: &str) -> Result<Instance<T>> {
    instance_from_json(&serde_json::from_str(text).map_err(|e| perr(e.to_string()))?)
}

pub fn norm_to_json<T: Scalar>(n: &Norm<T>) -> Value {
    match *n {
        Norm::Q(q) => json!({ "kind": "q", "q": num(q) }),
        Norm::AugmentedTchebycheff(rho) => json!({ "kind": "augmented_tchebycheff", "rho": num(rho) }),
    }
}

pub fn norm_from_json<T: Scalar>(v: &Value) -> Result<Norm<T>> {
    let obj = object(v, "norm")?;
    let n = match str_of(field(obj, "kind")?, "kind")? {
        "q" => Norm::Q(parse_num(field(obj, "q")?, "q")?),
        "one" => Norm::one(),
        "max" | "inf" => Norm::max(),
        "augmented_tchebycheff" | "augtcheb" => Norm::AugmentedTchebycheff(parse_num(field(obj, "rho")?, "rho")?),
        other => return Err(perr(format!("unknown norm kind '{other}'"))),
    };
    n.validate()?;
    Ok(n)
}

/// Canonical family name for any accepted alias.
pub fn canonical_family(name: &str) -> Option<&'static str> {
    Some(match name.to_ascii_lowercase().replace('-', "_").as_str() {
        "weighted_sum" | "sum" | "ws" | "onenorm" | "one_norm" => "weighted_sum",
        "weighted_max_ordering" | "max_ordering" | "max" | "maxnorm" | "tchebycheff" | "chebyshev" => {
            "weighted_max_ordering"
        }
        "weighted_q_norm" | "qnorm" | "q_norm" => "weighted_q_norm",
        "augmented_tchebycheff" | "augtcheb" | "augmented" => "augmented_tchebycheff",
        "harmonic_mean" | "harmonic" => "harmonic_mean",
        "norm_difference" | "normdiff" => "norm_difference",
        "composite_min_max" | "composite" => "composite_min_max",
        "custom_expression" | "custom" | "minquad" | "min_quadratic" => "custom_expression",
        _ => return None,
    })
}

/// Builds a family from its name and a parameter object.
pub fn family_from_parts<T: Scalar>(name: &str, params: &Map<String, Value>) -> Result<Family<T>> {
    let canonical = canonical_family(name).ok_or_else(|| Error::InvalidSpec(format!("unknown family '{name}'")))?;
    let param = |key: &str| -> Result<T> {
        let v = params.get(key).ok_or_else(|| Error::InvalidSpec(format!("{canonical} needs parameter '{key}'")))?;
        parse_num(v, key)
    };
    Ok(match canonical {
        "weighted_sum" => Family::WeightedSum,
        "weighted_max_ordering" => Family::WeightedMaxOrdering,
        "weighted_q_norm" => Family::WeightedQNorm { q: param("q")? },
        "augmented_tchebycheff" => Family::AugmentedTchebycheff { rho: param("rho")? },
        "harmonic_mean" => Family::HarmonicMean,
        "norm_difference" => {
            let norm = |key: &str| match params.get(key) {
                Some(v) => norm_from_json(v),
                None => Ok(Norm::one()),
            };
            Family::NormDifference { inner_min: norm("inner_min")?, inner_max: norm("inner_max")? }
        }
        "composite_min_max" => Family::CompositeMinMax { eps: param("eps")? },
        _ => match params.get("expr").map(|v| str_of(v, "expr")).transpose()? {
            None | Some("min_quadratic") => Family::Custom(CustomExpr::MinQuadratic),
            Some(other) => return Err(Error::InvalidSpec(format!("unknown custom expression '{other}'"))),
        },
    })
}

fn family_params<T: Scalar>(f: &Family<T>) -> Value {
    match f {
        Family::WeightedQNorm { q } => json!({ "q": num(*q) }),
        Family::AugmentedTchebycheff { rho } => json!({ "rho": num(*rho) }),
        Family::NormDifference { inner_min, inner_max } => {
            json!({ "inner_min": norm_to_json(inner_min), "inner_max": norm_to_json(inner_max) })
        }
        Family::CompositeMinMax { eps } => json!({ "eps": num(*eps) }),
        Family::Custom(CustomExpr::MinQuadratic) => json!({ "expr": "min_quadratic" }),
        _ => json!({}),
    }
}

pub fn post_name(post: PostCompose) -> &'static str {
    match post {
        PostCompose::Identity => "identity",
        PostCompose::NegReciprocal => "neg_reciprocal",
    }
}

pub fn parse_post(name: &str) -> Result<PostCompose> {
    match name {
        "identity" => Ok(PostCompose::Identity),
        "neg_reciprocal" => Ok(PostCompose::NegReciprocal),
        other => Err(Error::InvalidSpec(format!("unknown post-composition '{other}'"))),
    }
}

pub fn spec_to_json<T: Scalar>(s: &ScalarizerSpec<T>) -> Value {
    json!({
        "family": s.family.name(),
        "params": family_params(&s.family),
        "weights": nums(&s.weights),
        "gamma": one_based(s.gamma.indices()),
        "post": post_name(s.post),
    })
}

pub fn spec_from_json<T: Scalar>(v: &Value) -> Result<ScalarizerSpec<T>> {
    let obj = object(v, "spec")?;
    let empty = Map::new();
    let params = match obj.get("params") {
        Some(p) => object(p, "params")?,
        None => &empty,
    };
    let family = family_from_parts(str_of(field(obj, "family")?, "family")?, params)?;
    let weights = parse_nums::<T>(field(obj, "weights")?, "weights")?;
    let p = weights.len();
    let gamma = match obj.get("gamma") {
        Some(g) => GammaSet::new(indices(g, p, "gamma")?),
        None => GammaSet::empty(),
    };
    let post = match obj.get("post") {
        Some(x) => parse_post(str_of(x, "post")?)?,
        None => PostCompose::Identity,
    };
    let spec = ScalarizerSpec { family, weights, gamma, post };
    spec.validate()?;
    Ok(spec)
}

fn witness_to_json<T: Scalar>(w: &Witness<T>) -> Value {
    match w {
        Witness::Pair { approximated, approximator } => {
            json!({ "kind": "pair", "approximated": approximated, "approximator": approximator })
        }
        Witness::Coordinate(i) => json!({ "kind": "coordinate", "index": i + 1 }),
        Witness::Point(y) => json!({ "kind": "point", "y": nums(y) }),
        Witness::Weights(w) => json!({ "kind": "weights", "w": nums(w) }),
    }
}

fn witness_from_json<T: Scalar>(v: &Value) -> Result<Witness<T>> {
    let obj = object(v, "witness")?;
    Ok(match str_of(field(obj, "kind")?, "kind")? {
        "pair" => Witness::Pair {
            approximated: str_of(field(obj, "approximated")?, "approximated")?.into(),
            approximator: str_of(field(obj, "approximator")?, "approximator")?.into(),
        },
        "coordinate" => {
            let i = usize_of(field(obj, "index")?, "index")?;
            Witness::Coordinate(i.checked_sub(1).ok_or(Error::IndexOutOfRange { index: 0, p: 0 })?)
        }
        "point" => Witness::Point(parse_nums(field(obj, "y")?, "y")?),
        "weights" => Witness::Weights(parse_nums(field(obj, "w")?, "w")?),
        other => return Err(perr(format!("unknown witness kind '{other}'"))),
    })
}

pub fn certificate_to_json<T: Scalar>(c: &QualityCertificate<T>) -> Value {
    json!({
        "value": match c.value { QualityValue::Finite(v) => num(v), QualityValue::Infinite => json!("inf") },
        "method": c.method.as_str(),
        "witness": c.witness.as_ref().map_or(Value::Null, witness_to_json),
        "budget_used": c.budget_used,
    })
}

pub fn certificate_from_json<T: Scalar>(v: &Value) -> Result<QualityCertificate<T>> {
    let obj = object(v, "certificate")?;
    let value = match field(obj, "value")? {
        Value::String(s) if s == "inf" => QualityValue::Infinite,
        other => QualityValue::Finite(parse_num(other, "value")?),
    };
    let method = match str_of(field(obj, "method")?, "method")? {
        "closed_form" => Method::ClosedForm,
        "brute_force" => Method::BruteForce,
        "sampled" => Method::Sampled,
        other => return Err(perr(format!("unknown method '{other}'"))),
    };
    let witness = match obj.get("witness") {
        None | Some(Value::Null) => None,
        Some(w) => Some(witness_from_json(w)?),
    };
    let budget_used = obj.get("budget_used").map(|b| usize_of(b, "budget_used")).transpose()?.unwrap_or(0);
    Ok(QualityCertificate { value, method, witness, budget_used })
}

fn scalarization_to_json<T: Scalar>(s: &Scalarization<T>) -> Value {
    match s {
        Scalarization::Finite(specs) => {
            json!({ "type": "finite", "specs": specs.iter().map(spec_to_json).collect::<Vec<_>>() })
        }
        Scalarization::Weighted { template, grid_m, random_weights, seed } => json!({
            "type": "weighted",
            "template": spec_to_json(template),
            "grid_m": grid_m,
            "random_weights": random_weights,
            "seed": seed,
        }),
    }
}

fn scalarization_from_json<T: Scalar>(v: &Value) -> Result<Scalarization<T>> {
    let obj = object(v, "scalarization")?;
    Ok(match str_of(field(obj, "type")?, "type")? {
        "finite" => Scalarization::Finite(
            field(obj, "specs")?
                .as_array()
                .ok_or_else(|| perr("specs: expected an array"))?
                .iter()
                .map(spec_from_json)
                .collect::<Result<_>>()?,
        ),
        "weighted" => Scalarization::Weighted {
            template: spec_from_json(field(obj, "template")?)?,
            grid_m: usize_of(field(obj, "grid_m")?, "grid_m")?,
            random_weights: usize_of(field(obj, "random_weights")?, "random_weights")?,
            seed: field(obj, "seed")?.as_u64().ok_or_else(|| perr("seed: expected an integer"))?,
        },
        other => return Err(perr(format!("unknown scalarization type '{other}'"))),
    })
}

pub fn adversary_to_json<T: Scalar>(c: &AdversarialCertificate<T>) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "instance": instance_to_json(&c.instance),
        "target_alpha": num(c.target_alpha),
        "unserved_id": c.unserved_id,
        "supported_ids": c.supported_ids,
        "supported_quality": num(c.supported_quality),
        "scalarization": scalarization_to_json(&c.scalarization),
        "checks": c.checks.iter().map(|k| json!({ "name": k.name, "passed": k.passed, "detail": k.detail })).collect::<Vec<_>>(),
    })
}

pub fn adversary_from_json<T: Scalar>(v: &Value) -> Result<AdversarialCertificate<T>> {
    let obj = object(v, "adversarial certificate")?;
    let kind = match str_of(field(obj, "kind")?, "kind")? {
        "finite" => AdversaryKind::Finite,
        "normmin" => AdversaryKind::NormMin,
        "mixedmax" => AdversaryKind::MixedMax,
        other => return Err(perr(format!("unknown adversary kind '{other}'"))),
    };
    let strings = |key: &str| -> Result<Vec<String>> {
        field(obj, key)?
            .as_array()
            .ok_or_else(|| perr(format!("{key}: expected an array")))?
            .iter()
            .map(|s| str_of(s, key).map(String::from))
            .collect()
    };
    let checks = field(obj, "checks")?
        .as_array()
        .ok_or_else(|| perr("checks: expected an array"))?
        .iter()
        .map(|c| {
            let o = object(c, "check")?;
            Ok(Check {
                name: str_of(field(o, "name")?, "name")?.into(),
                passed: field(o, "passed")?.as_bool().ok_or_else(|| perr("passed: expected a boolean"))?,
                detail: o.get("detail").and_then(Value::as_str).unwrap_or_default().into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(AdversarialCertificate {
        kind,
        instance: instance_from_json(field(obj, "instance")?)?,
        target_alpha: parse_num(field(obj, "target_alpha")?, "target_alpha")?,
        unserved_id: str_of(field(obj, "unserved_id")?, "unserved_id")?.into(),
        supported_ids: strings("supported_ids")?,
        supported_quality: parse_num(field(obj, "supported_quality")?, "supported_quality")?,
        scalarization: scalarization_from_json(field(obj, "scalarization")?)?,
        checks,
    })
}
