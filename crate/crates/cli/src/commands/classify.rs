use clap::Args;
use conecalc::domain::{classify, lambda_indicator, q5_squared};
use conecalc::{DomainLabel, FourMomentum, Hyperboloid};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::input::{parse_finite, parse_vec4};
use crate::output;

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Values of q², comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_finite)]
    q2: Vec<f64>,
    /// Four-momenta q0,q1,q2,q3; repeatable.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec4)]
    q: Vec<[f64; 4]>,
}

#[derive(Serialize)]
struct Row {
    q2: f64,
    domain: &'static str,
    hyperboloid: u8,
    q5_squared: f64,
    lambda1: u8,
    lambda2: u8,
}

#[derive(Serialize)]
struct CountRow {
    domain: &'static str,
    hyperboloid: u8,
    sites: usize,
}

/// Classifies the given values, or counts sites per domain on the
/// configured lattice when none are given.
pub fn run(args: &ClassifyArgs, cfg: &RunConfig) -> Result<bool, CliError> {
    let m = cfg.mass;
    let values: Vec<f64> = args
        .q2
        .iter()
        .copied()
        .chain(args.q.iter().map(|q| FourMomentum(*q).minkowski_square()))
        .collect();
    if values.is_empty() {
        let domains = cfg.lattice()?.domains();
        let rows: Vec<CountRow> = DomainLabel::ALL
            .iter()
            .map(|&l| CountRow {
                domain: l.name(),
                hyperboloid: l.hyperboloid().index(),
                sites: domains.iter().filter(|&&d| d == l).count(),
            })
            .collect();
        output::table(cfg.format, &rows)?;
        return Ok(true);
    }
    let mut rows = Vec::with_capacity(values.len());
    for q2 in values {
        let label = classify(q2, m);
        rows.push(Row {
            q2,
            domain: label.name(),
            hyperboloid: label.hyperboloid().index(),
            q5_squared: q5_squared(label, q2, m)?,
            lambda1: lambda_indicator(Hyperboloid::One, q2, m),
            lambda2: lambda_indicator(Hyperboloid::Two, q2, m),
        });
    }
    output::table(cfg.format, &rows)?;
    Ok(true)
}
