use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use narch_core::measurement::{
    diminishing_returns_index, is_accurate_measurement, min_feasible_top, FiniteSigStructure,
    MeasurementAssignment,
};
use narch_core::sig_order::{laurent_nonarch_witness, verify_nonarch_prefix};
use narch_core::{LaurentSeries, Rational, SigThreshold};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::output;

pub fn compare(lhs: &LaurentSeries, rhs: &LaurentSeries) -> &'static str {
    match lhs.cmp(rhs) {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

#[derive(Serialize)]
struct WitnessReport {
    r: SigThreshold,
    chain: Vec<LaurentSeries>,
    y: LaurentSeries,
    chain_text: Vec<String>,
    y_text: String,
    verified: bool,
}

pub fn witness(r: Rational, n: usize) -> CliResult<String> {
    let r = SigThreshold::new(r)?;
    if n == 0 {
        return Err(CliError::Input("witness length must be at least 1".into()));
    }
    let w = laurent_nonarch_witness(&r, n);
    let verified = verify_nonarch_prefix(&w.chain, &w.y, &r);
    let report = WitnessReport {
        chain_text: w.chain.iter().map(ToString::to_string).collect(),
        y_text: w.y.to_string(),
        r,
        chain: w.chain,
        y: w.y,
        verified,
    };
    output::json(&report)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckInput {
    structure: FiniteSigStructure,
    assignment: MeasurementAssignment,
}

pub fn measure_check(input: &Path) -> CliResult<bool> {
    let text = fs::read_to_string(input).map_err(CliError::io(input))?;
    let parsed: CheckInput = serde_json::from_str(&text).map_err(CliError::input)?;
    Ok(is_accurate_measurement(
        &parsed.structure,
        &parsed.assignment,
    )?)
}

pub fn feasible_top(from: u64, to: u64, r: Rational) -> CliResult<Vec<u8>> {
    let r = SigThreshold::new(r)?;
    if from > to {
        return Err(CliError::Input(format!("empty range {from}..={to}")));
    }
    let mut writer = output::csv_writer(Vec::new());
    writer
        .write_record(["n", "min_top"])
        .map_err(CliError::input)?;
    for n in from..=to {
        writer
            .write_record([n.to_string(), min_feasible_top(n, &r).to_string()])
            .map_err(CliError::input)?;
    }
    writer.into_inner().map_err(CliError::input)
}

pub fn plateau(input: &Path, tol: &Rational) -> CliResult<Option<usize>> {
    let text = fs::read_to_string(input).map_err(CliError::io(input))?;
    let seq: Vec<Rational> = serde_json::from_str(&text).map_err(CliError::input)?;
    Ok(diminishing_returns_index(&seq, tol)?)
}
