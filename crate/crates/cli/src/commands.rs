use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;

use triconc::bounds::{bound_corollary, bound_theorem1, bound_theorem2, BoundReport};
use triconc::gpt::{gpt_norm, is_gpt_entangled, parse_operation_list, CatalogOp, GptOperation};
use triconc::statefile::StateFile;
use triconc::states::{dct_state, random_mixed_state, random_pure_state, DctWeights, RngSeed};
use triconc::verify::{run_suite, RunConfig, Suite};
use triconc::SystemDims;

use crate::format::{sig6, yes_no};
use crate::{Format, TheoremArg};

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    Violation,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(1),
        }
    }
}

/// Input errors; all map to exit code 2.
#[derive(Debug)]
pub struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<triconc::Error> for InputError {
    fn from(e: triconc::Error) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Status, InputError>;

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn load_density(path: &Path) -> Result<triconc::TripartiteState, InputError> {
    Ok(StateFile::read(path)?.load()?.density())
}

pub fn norms(path: &Path, ops: Option<&str>, tolerance: f64, format: Format) -> CmdResult {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(InputError(format!("tolerance must be > 0, got {tolerance}")));
    }
    let state = load_density(path)?;
    let ops: Vec<GptOperation> = match ops {
        Some(list) => parse_operation_list(list)?,
        None => CatalogOp::ALL.iter().map(|op| op.operation()).collect(),
    };
    let mut rows = Vec::with_capacity(ops.len());
    for op in &ops {
        rows.push((op.name(), gpt_norm(&state, *op)?));
    }
    let witnesses: Vec<&str> = rows
        .iter()
        .filter(|(_, n)| *n > 1.0 + tolerance)
        .map(|(name, _)| name.as_str())
        .collect();
    match format {
        Format::Json => {
            let norms: serde_json::Map<String, serde_json::Value> =
                rows.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            print_json(&json!({
                "dims": state.dims().as_array(),
                "norms": norms,
                "entangled": !witnesses.is_empty(),
                "violations": witnesses,
                "tolerance": tolerance,
            }));
        }
        Format::Table => {
            println!("dims {}", state.dims());
            println!("{:<12} {:>12}  > 1", "operation", "trace norm");
            for (name, n) in &rows {
                println!("{name:<12} {:>12}  {}", sig6(*n), yes_no(*n > 1.0 + tolerance));
            }
            println!("entangled: {}", yes_no(!witnesses.is_empty()));
        }
    }
    Ok(Status::Ok)
}

fn print_report_table(r: &BoundReport) {
    println!("theorem {}  dims ({}, {}, {})", r.theorem, r.dims[0], r.dims[1], r.dims[2]);
    println!("{:<6} {:>12} {:>12} {:>12}", "op", "norm", "coeff", "term");
    for (op, norm) in &r.norms {
        println!(
            "{:<6} {:>12} {:>12} {:>12}",
            op.to_string(),
            sig6(*norm),
            sig6(r.coefficients[op]),
            sig6(r.bound_terms[op])
        );
    }
    println!("lower bound: {}", sig6(r.lower_bound));
    if r.conditional {
        println!("conditional: yes");
    }
    for note in &r.notes {
        println!("note: {note}");
    }
}

pub fn bound(path: &Path, theorem: TheoremArg, format: Format) -> CmdResult {
    let state = load_density(path)?;
    let report = match theorem {
        TheoremArg::T1 => bound_theorem1(&state)?,
        TheoremArg::T2 => bound_theorem2(&state)?,
        TheoremArg::Corollary => bound_corollary(&state)?,
    };
    match format {
        Format::Json => print_json(&report),
        Format::Table => print_report_table(&report),
    }
    Ok(Status::Ok)
}

pub fn verify(suite: &str, samples: u64, seed: u64, tolerance: f64, format: Format) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let config = RunConfig {
        samples,
        seed,
        tolerance,
    };
    let summary = run_suite(suite, &config)?;
    let passed = summary.passed();
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(&summary).expect("serializable summary");
            value["passed"] = json!(passed);
            print_json(&value);
        }
        Format::Table => {
            println!("suite          {}", summary.suite);
            println!("samples        {}", summary.samples);
            println!("seed           {}", summary.seed);
            println!("violations     {}", summary.violations);
            println!("worst residual {}", sig6(summary.worst_residual));
            if let Some(d) = summary.max_discrepancy {
                println!("max |closed - numeric| {}", sig6(d));
            }
            if let Some(i) = summary.first_violation {
                println!("first violation at sample {i}");
            }
            println!("elapsed        {:.2}s", summary.elapsed_seconds);
            println!("{}", if passed { "PASS" } else { "FAIL" });
        }
    }
    Ok(if passed { Status::Ok } else { Status::Violation })
}

pub fn demo_dct(format: Format) -> CmdResult {
    let weights = DctWeights::worked_example();
    let state = dct_state(&weights);
    let verdict = is_gpt_entangled(&state, 1e-9)?;
    let report = bound_theorem1(&state)?;
    match format {
        Format::Json => {
            let norms: serde_json::Map<String, serde_json::Value> = verdict
                .norms
                .iter()
                .map(|(op, n)| (op.to_string(), json!(n)))
                .collect();
            print_json(&json!({
                "weights": weights,
                "dims": state.dims().as_array(),
                "norms": norms,
                "bound_terms": report.bound_terms,
                "lower_bound": report.lower_bound,
                "theorem": report.theorem,
                "conditional": report.conditional,
                "entangled": verdict.entangled,
            }));
        }
        Format::Table => {
            println!(
                "DCT state: l0+ = {}, l0- = {}, l1 = {}, l2 = {}, l3 = {}",
                sig6(weights.lambda0_plus),
                sig6(weights.lambda0_minus),
                sig6(weights.lambda[0]),
                sig6(weights.lambda[1]),
                sig6(weights.lambda[2])
            );
            println!("{:<6} {:>12}", "op", "trace norm");
            for (op, n) in &verdict.norms {
                println!("{:<6} {:>12}", op.to_string(), sig6(*n));
            }
            println!();
            print_report_table(&report);
            println!("entangled: {}", verdict.entangled);
        }
    }
    Ok(Status::Ok)
}

fn parse_dims(text: &str) -> Result<SystemDims, InputError> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| InputError(format!("bad --dims `{text}`: {e}")))?;
    match parts.as_slice() {
        &[m, n, p] => Ok(SystemDims::new(m, n, p)?),
        _ => Err(InputError(format!("--dims needs three values m,n,p, got `{text}`"))),
    }
}

pub fn random(dims: &str, seed: u64, rank: Option<usize>, output: Option<&Path>) -> CmdResult {
    let dims = parse_dims(dims)?;
    let file = match rank {
        Some(r) => StateFile::from_mixed(&random_mixed_state(dims, r, RngSeed(seed))?),
        None => StateFile::from_pure(&random_pure_state(dims, RngSeed(seed))),
    };
    match output {
        Some(path) => file.write(path)?,
        None => println!("{}", file.to_json()),
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("2, 3,4").unwrap(), SystemDims::new(2, 3, 4).unwrap());
        assert!(parse_dims("2,3").is_err());
        assert!(parse_dims("2,0,2").is_err());
        assert!(parse_dims("a,b,c").is_err());
    }
}
