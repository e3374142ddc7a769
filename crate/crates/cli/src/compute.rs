use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use submeasure_core::io::{parse_covering, parse_submeasure};
use submeasure_core::pathology::{covering_stats, hat, pathology_degree, CoveringInstance, Scope, SweepOptions};
use submeasure_core::submeasure::group_metric;
use submeasure_core::{PointSet, Repr, Submeasure};

use crate::output::{compact, limits, points, rat, ratx, read_file, with_decimals, CliError, CliResult};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Quantity {
    Eval,
    Hat,
    Pathology,
    CoverStats,
    Metric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScopeArg {
    All,
    Family,
}

#[derive(Args)]
pub struct ComputeArgs {
    quantity: Quantity,
    /// Submeasure file (covering file also accepted for cover-stats).
    #[arg(long)]
    input: PathBuf,
    /// Points of A: "0,2,5", "all" or "" for the empty set.
    #[arg(long)]
    set: Option<String>,
    /// Points of B for `metric`.
    #[arg(long)]
    other: Option<String>,
    #[arg(long, value_enum, default_value = "all")]
    scope: ScopeArg,
    /// Covering file supplying the family for `--scope family`; defaults to
    /// the family of a min-cover input.
    #[arg(long)]
    family: Option<PathBuf>,
    /// Largest ground for subset enumeration.
    #[arg(long)]
    max_ground: Option<usize>,
    /// Add decimal renderings with this many digits.
    #[arg(long)]
    decimal: Option<usize>,
}

pub fn parse_set(spec: &str, n: usize, flag: &str) -> CliResult<PointSet> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(PointSet::full(n));
    }
    let mut pts = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let p: usize = part
            .parse()
            .map_err(|_| CliError::Input(format!("--{flag}: {part:?} is not a point index")))?;
        if p >= n {
            return Err(CliError::Input(format!("--{flag}: point {p} is outside the ground of size {n}")));
        }
        pts.push(p);
    }
    Ok(PointSet::from_points(n, pts)?)
}

fn required_set(args: &ComputeArgs, phi: &Submeasure) -> CliResult<PointSet> {
    let spec = args
        .set
        .as_deref()
        .ok_or_else(|| CliError::Input("--set is required".into()))?;
    parse_set(spec, phi.size(), "set")
}

fn load_submeasure(args: &ComputeArgs) -> CliResult<Submeasure> {
    Ok(parse_submeasure(&read_file(&args.input)?)?)
}

fn load_covering(args: &ComputeArgs) -> CliResult<CoveringInstance> {
    let text = read_file(&args.input)?;
    let is_covering = serde_json::from_str::<Value>(&text)
        .map(|v| v.get("family").is_some())
        .unwrap_or(false);
    if is_covering {
        return Ok(parse_covering(&text)?);
    }
    let phi = parse_submeasure(&text)?;
    match phi.repr() {
        Repr::MinCover(f) => Ok(CoveringInstance::new(phi.ground().clone(), f.clone())?),
        _ => Err(CliError::Input("cover-stats needs a covering file or a min_cover submeasure".into())),
    }
}

pub fn run(args: &ComputeArgs) -> CliResult<String> {
    let lim = limits(args.max_ground)?;
    let out = match args.quantity {
        Quantity::Eval => {
            let phi = load_submeasure(args)?;
            let a = required_set(args, &phi)?;
            json!({ "value": ratx(&phi.eval(&a)?) })
        }
        Quantity::Hat => {
            let phi = load_submeasure(args)?;
            let a = required_set(args, &phi)?;
            let h = hat(&phi, &a, &lim)?;
            json!({
                "value": rat(&h.value),
                "witness": h.witness.weights().iter().map(rat).collect::<Vec<_>>(),
            })
        }
        Quantity::Pathology => {
            let phi = load_submeasure(args)?;
            let scope = match args.scope {
                ScopeArg::All => Scope::AllSubsets,
                ScopeArg::Family => {
                    let family = match (&args.family, phi.repr()) {
                        (Some(path), _) => {
                            let inst = parse_covering(&read_file(path)?)?;
                            if inst.ground.size() != phi.size() {
                                return Err(CliError::Input(format!(
                                    "--family: ground {} differs from the input ground {}",
                                    inst.ground.size(),
                                    phi.size()
                                )));
                            }
                            inst.family
                        }
                        (None, Repr::MinCover(f)) => f.clone(),
                        (None, _) => {
                            return Err(CliError::Input("--scope family needs --family for this representation".into()))
                        }
                    };
                    Scope::Family(family)
                }
            };
            let rep = pathology_degree(&phi, &scope, &lim, &SweepOptions::default())?;
            let mut v = json!({
                "degree": rep.degree.as_ref().map(ratx).unwrap_or(Value::Null),
                "argmax": rep.argmax.as_deref().map(points).unwrap_or(Value::Null),
            });
            if rep.lower_bound {
                v["lower_bound"] = Value::Bool(true);
            }
            v
        }
        Quantity::CoverStats => {
            let inst = load_covering(args)?;
            let s = covering_stats(&inst)?;
            json!({
                "family_size": s.family_size,
                "b": s.b,
                "m": s.m,
                "delta": rat(&s.delta),
            })
        }
        Quantity::Metric => {
            let phi = load_submeasure(args)?;
            let a = required_set(args, &phi)?;
            let spec = args
                .other
                .as_deref()
                .ok_or_else(|| CliError::Input("--other is required for metric".into()))?;
            let b = parse_set(spec, phi.size(), "other")?;
            json!({ "value": ratx(&group_metric(&phi, &a, &b)?) })
        }
    };
    Ok(compact(&with_decimals(out, args.decimal)))
}
