use std::fs;
use std::path::Path;

use scalapprox::io::{
    adversary_from_json, adversary_to_json, certificate_to_json, family_from_parts, instance_to_json, num, parse_instance,
    parse_post, spec_from_json,
};
use scalapprox::quality::WeightedNorm;
use scalapprox::sampling::{random_instance, rng};
use scalapprox::{
    adversarial_finite, adversarial_mixed_max, adversarial_norm_min, level_ratio_sup, level_ratio_sup_sampled, min_alpha,
    min_alpha_ids, nondominated_set, reverify, supported_representatives, supported_set, theoretical_bound_spec,
    transform_instance, weight_grid, weighted_bound_estimate, AdversarialCertificate, Decomposition, Error, GammaSet,
    Instance, Norm, PointImage, QualityCertificate, ScalarizerSpec, Sense,
};
use serde_json::{json, Map, Value};

use crate::args::{AdversaryCommand, Command, FamilyArgs};

pub type Result<T> = std::result::Result<T, Error>;

/// What a command produced: the plain-text form for stdout and the JSON form
/// used for `--json` and run reports.
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json }
    }
}

pub fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Validate { instance } => {
            let inst = load_instance(instance)?;
            let text = format!("ok: {} points, p = {}, decomposition {}", inst.len(), inst.p(), inst.decomposition().label());
            Ok(Output::new(text, json!({ "valid": true, "points": inst.len(), "p": inst.p() })))
        }
        Command::Pareto { instance } => {
            let inst = load_instance(instance)?;
            let ids = inst.labels(&nondominated_set(&inst));
            Ok(Output::new(ids.join(","), json!({ "nondominated": ids })))
        }
        Command::Quality { instance, subset } => {
            let inst = load_instance(instance)?;
            let cert = min_alpha_ids(subset, &inst)?;
            Ok(certificate_output(&cert))
        }
        Command::Supported { instance, family, grid, one_per_function, tie_tol } => {
            let inst = load_instance(instance)?;
            let spec = build_spec(family, inst.p())?;
            let g = weight_grid(inst.p(), *grid)?;
            let ix = if *one_per_function {
                supported_representatives(&inst, &spec, &g, *tie_tol)?
            } else {
                supported_set(&inst, &spec, &g, *tie_tol)?
            };
            let ids = inst.labels(&ix);
            Ok(Output::new(ids.join(","), json!({ "supported": ids, "grid_m": grid, "grid_size": g.len() })))
        }
        Command::Bound { family, p } => Ok(certificate_output(&theoretical_bound_spec(&build_spec(family, *p)?)?)),
        Command::Levelsup { family, ybar, sampled, budget, cap, seed, decomp } => {
            let p = ybar.len();
            let spec = build_spec(family, p)?;
            let point = PointImage::new(ybar.clone())?;
            let cert = if *sampled {
                let d = parse_decomposition(decomp, Some(p))?;
                let seed = seed.ok_or_else(|| Error::Precondition("sampling needs --seed".into()))?;
                level_ratio_sup_sampled(&spec, &d, &point, *budget, *cap, seed)?
            } else {
                level_ratio_sup(&WeightedNorm::from_spec(&spec)?, &point)?
            };
            Ok(certificate_output(&cert))
        }
        Command::Beta { family, decomp, p, budgets, cap, seed } => {
            let d = parse_decomposition(decomp, *p)?;
            let [rays, refs] = budgets[..] else {
                return Err(Error::Precondition(format!("--budgets needs two values, got {}", budgets.len())));
            };
            let spec = build_spec(family, d.p())?;
            Ok(certificate_output(&weighted_bound_estimate(&spec, &d, rays, refs, *cap, *seed)?))
        }
        Command::Adversary(cmd) => adversary(cmd),
        Command::Verify { certificate } => {
            let cert: AdversarialCertificate = adversary_from_json(&load_json(certificate)?)?;
            let checks = reverify(&cert)?;
            if checks != cert.checks {
                return Err(Error::ConstructionFailure("re-verification disagrees with the stored checks".into()));
            }
            let text = checks.iter().map(|c| format!("{} {}", if c.passed { "pass" } else { "FAIL" }, c.name)).collect::<Vec<_>>();
            Ok(Output::new(text.join("\n"), json!({ "reproduced": true, "all_passed": cert.all_passed() })))
        }
        Command::Transform { instance, gamma, output } => {
            let inst = load_instance(instance)?;
            let t = transform_instance(&inst, &parse_gamma(gamma, inst.p())?)?;
            let doc = instance_to_json(&t);
            Ok(Output::new(deliver(output.as_deref(), pretty(&doc), "transformed instance")?, doc))
        }
        Command::Sweep { family, pmin, pmax, trials, seed, grid, points, decomp, output } => {
            sweep(family, *pmin..=*pmax, *trials, *seed, *grid, *points, decomp, output.as_deref())
        }
        Command::Plotdata { results, output } => plotdata(results, output.as_deref()),
    }
}

fn adversary(cmd: &AdversaryCommand) -> Result<Output> {
    let (cert, output) = match cmd {
        AdversaryCommand::Finite { family, functions, decomp, alpha, output } => {
            let weights: Vec<Vec<f64>> = functions.iter().map(|f| parse_list(f, "--function")).collect::<Result<_>>()?;
            let p = weights.first().map_or(0, Vec::len);
            let d = parse_decomposition(decomp, Some(p))?;
            let base = build_spec(family, p)?;
            let specs: Vec<ScalarizerSpec> = weights.into_iter().map(|w| base.reweighted(w)).collect();
            (adversarial_finite(&specs, &d, *alpha)?, output)
        }
        AdversaryCommand::Normmin { family, p, eps, output } => {
            let norm = WeightedNorm::from_spec(&build_spec(family, *p)?)?;
            (adversarial_norm_min(&norm, *eps)?, output)
        }
        AdversaryCommand::Mixedmax { inner_min, inner_max, k, p, alpha, output } => {
            (adversarial_mixed_max(parse_norm(inner_min)?, parse_norm(inner_max)?, *k, *p, *alpha)?, output)
        }
    };
    let doc = adversary_to_json(&cert);
    let delivered = deliver(output.as_deref(), pretty(&doc), "certificate")?;
    if !cert.all_passed() {
        let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        return Err(Error::ConstructionFailure(format!("failed checks: {}", failed.join(", "))));
    }
    let text = match output {
        Some(_) => format!(
            "{} certificate: {} unserved, supported quality {} > target {}\n{delivered}",
            cert.kind.as_str(),
            cert.unserved_id,
            cert.supported_quality,
            cert.target_alpha
        ),
        None => delivered,
    };
    Ok(Output::new(text, doc))
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    family: &FamilyArgs,
    ps: std::ops::RangeInclusive<usize>,
    trials: usize,
    seed: u64,
    grid_m: usize,
    points: usize,
    decomp: &str,
    output: Option<&Path>,
) -> Result<Output> {
    if ps.is_empty() {
        return Err(Error::Precondition("--pmin exceeds --pmax".into()));
    }
    let maximize = match decomp {
        "min" => false,
        "max" => true,
        other => return Err(Error::Precondition(format!("--decomp must be min or max for sweeps, got '{other}'"))),
    };
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["trial", "p", "decomposition", "family", "grid_m", "min_alpha", "closed_form_bound", "seed"])
        .map_err(csv_err)?;
    let mut rows = Vec::new();
    let mut trial = 0usize;
    for p in ps {
        let base = build_spec(family, p)?;
        let bound = theoretical_bound_spec(&base).ok().and_then(|c| c.value());
        let (d, template) = if maximize {
            (Decomposition::all_max(p), base.clone().with_gamma(GammaSet::all(p)))
        } else {
            (Decomposition::all_min(p), base.clone())
        };
        let grid = weight_grid(p, grid_m)?;
        for _ in 0..trials {
            let trial_seed = seed.wrapping_add(trial as u64);
            let inst: Instance = random_instance(&mut rng(trial_seed), &d, points, 1.0, 100.0)?;
            let sup = supported_set(&inst, &template, &grid, scalapprox::DEFAULT_TIE_TOL)?;
            let q = min_alpha(&sup, &inst)?.value.to_scalar();
            let bound_text = bound.map_or("nan".to_string(), |b| b.to_string());
            out.write_record([
                trial.to_string(),
                p.to_string(),
                d.label(),
                base.family.name().to_string(),
                grid_m.to_string(),
                q.to_string(),
                bound_text,
                trial_seed.to_string(),
            ])
            .map_err(csv_err)?;
            rows.push(json!({ "trial": trial, "p": p, "min_alpha": num(q), "closed_form_bound": bound.map_or(Value::Null, num), "seed": trial_seed }));
            trial += 1;
        }
    }
    let bytes = out.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    Ok(Output::new(deliver(output, text, &format!("{trial} rows"))?, json!({ "rows": rows })))
}

fn plotdata(results: &Path, output: Option<&Path>) -> Result<Output> {
    const COLUMNS: [&str; 5] = ["trial", "p", "grid_m", "min_alpha", "closed_form_bound"];
    let mut reader = csv::Reader::from_path(results).map_err(|e| io_err(results, e))?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    let index: Vec<usize> = COLUMNS
        .iter()
        .map(|c| headers.iter().position(|h| h == *c).ok_or_else(|| Error::Parse(format!("missing column '{c}'"))))
        .collect::<Result<_>>()?;
    let mut text = format!("# {}\n", COLUMNS.join(" "));
    let mut n = 0;
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let fields: Vec<&str> = index.iter().map(|&i| record.get(i).unwrap_or("nan")).collect();
        text.push_str(&fields.join(" "));
        text.push('\n');
        n += 1;
    }
    Ok(Output::new(deliver(output, text, &format!("{n} rows"))?, json!({ "rows": n })))
}

fn certificate_output(cert: &QualityCertificate) -> Output {
    let text = cert.value().map_or("inf".to_string(), |v| v.to_string());
    Output::new(text, certificate_to_json(cert))
}

fn build_spec(args: &FamilyArgs, p: usize) -> Result<ScalarizerSpec> {
    if let Some(path) = &args.spec {
        let spec: ScalarizerSpec = spec_from_json(&load_json(path)?)?;
        if spec.p() != p {
            return Err(Error::DimensionMismatch { expected: p, found: spec.p() });
        }
        return Ok(spec);
    }
    let mut params = Map::new();
    for (key, value) in [("q", args.q), ("rho", args.rho), ("eps", args.composite_eps)] {
        if let Some(v) = value {
            params.insert(key.into(), num(v));
        }
    }
    for (key, value) in [("inner_min", &args.norm_min), ("inner_max", &args.norm_max)] {
        if let Some(v) = value {
            params.insert(key.into(), norm_json(v)?);
        }
    }
    let family = family_from_parts(&args.family, &params)?;
    let weights = args.weights.clone().unwrap_or_else(|| vec![1.0; p]);
    if weights.len() != p {
        return Err(Error::DimensionMismatch { expected: p, found: weights.len() });
    }
    let mut spec = ScalarizerSpec::new(family, weights).with_post(parse_post(&args.post)?);
    if let Some(flip) = &args.flip {
        spec = spec.with_gamma(parse_gamma(flip, p)?);
    }
    spec.validate()?;
    Ok(spec)
}

fn norm_json(text: &str) -> Result<Value> {
    let (kind, param) = match text.split_once(':') {
        Some((k, v)) => (k, Some(v.parse::<f64>().map_err(|_| Error::Parse(format!("bad norm parameter in '{text}'")))?)),
        None => (text, None),
    };
    Ok(match (kind, param) {
        ("one" | "1", None) => json!({ "kind": "one" }),
        ("max" | "inf", None) => json!({ "kind": "max" }),
        ("q", Some(q)) => json!({ "kind": "q", "q": q }),
        ("augtcheb", Some(rho)) => json!({ "kind": "augmented_tchebycheff", "rho": rho }),
        _ => return Err(Error::Parse(format!("unknown norm '{text}'; use one, max, q:<q> or augtcheb:<rho>"))),
    })
}

fn parse_norm(text: &str) -> Result<Norm<f64>> {
    scalapprox::io::norm_from_json(&norm_json(text)?)
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("{flag}: '{s}' is not a number"))))
        .collect()
}

fn parse_gamma(one_based: &[usize], p: usize) -> Result<GammaSet> {
    let mut ix = Vec::with_capacity(one_based.len());
    for &i in one_based {
        if i == 0 || i > p {
            return Err(Error::IndexOutOfRange { index: i, p });
        }
        ix.push(i - 1);
    }
    Ok(GammaSet::new(ix))
}

/// `min`, `max` (both need `p`), or an explicit comma list of senses.
fn parse_decomposition(text: &str, p: Option<usize>) -> Result<Decomposition> {
    match text {
        "min" | "max" => {
            let p = p.ok_or_else(|| Error::Precondition(format!("--decomp {text} needs the number of objectives")))?;
            if p == 0 {
                return Err(Error::InvalidDecomposition("no objectives".into()));
            }
            Ok(if text == "min" { Decomposition::all_min(p) } else { Decomposition::all_max(p) })
        }
        list => {
            let senses = list
                .split(',')
                .map(|s| match s.trim() {
                    "min" => Ok(Sense::Min),
                    "max" => Ok(Sense::Max),
                    other => Err(Error::InvalidDecomposition(format!("unknown sense '{other}'"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let d = Decomposition::from_senses(senses)?;
            match p {
                Some(p) if p != d.p() => Err(Error::DimensionMismatch { expected: p, found: d.p() }),
                _ => Ok(d),
            }
        }
    }
}

fn load_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path).map_err(|e| io_err(path, e))?)
}

/// Writes `content` to `path` and returns a one-line note, or returns the
/// content itself for stdout when no path is given.
fn deliver(path: Option<&Path>, content: String, what: &str) -> Result<String> {
    match path {
        Some(p) => {
            fs::write(p, &content).map_err(|e| io_err(p, e))?;
            Ok(format!("wrote {what} to {}", p.display()))
        }
        None => Ok(content.trim_end().to_string()),
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
