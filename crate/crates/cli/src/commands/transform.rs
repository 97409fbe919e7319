use clap::Args;
use conecalc::cone::{apply_4d, apply_cone, embed, project};
use conecalc::{ConformalTransform, FourMomentum};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::input::{parse_finite, parse_op, parse_vec4};
use crate::output;

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Four-momentum q as q0,q1,q2,q3.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec4)]
    q: [f64; 4],
    /// Transformation; repeat to compose left to right.
    #[arg(long = "op", required = true, allow_hyphen_values = true, value_parser = parse_op)]
    ops: Vec<ConformalTransform>,
    /// Projective scale κ₊ of the embedded cone point.
    #[arg(long, default_value_t = 1.0, value_parser = parse_finite)]
    kplus: f64,
}

#[derive(Serialize)]
struct Report {
    #[serde(rename = "M")]
    mass: f64,
    kplus: f64,
    ops: Vec<&'static str>,
    q: [f64; 4],
    q_prime: [f64; 4],
    kappa: [f64; 6],
    kappa_prime: [f64; 6],
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct Row {
    q0: f64,
    q1: f64,
    q2: f64,
    q3: f64,
    q0_prime: f64,
    q1_prime: f64,
    q2_prime: f64,
    q3_prime: f64,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

/// Maps `-0.0` to `0.0` for stable output.
fn unsigned<const N: usize>(v: [f64; N]) -> [f64; N] {
    v.map(|x| x + 0.0)
}

pub fn run(args: &TransformArgs, cfg: &RunConfig) -> Result<bool, CliError> {
    let t = match args.ops.as_slice() {
        [one] => one.clone(),
        many => ConformalTransform::Composition(many.to_vec()),
    };
    let q = FourMomentum(args.q);
    // The direct route first, so its guards name the failure.
    let q_prime = apply_4d(&t, &q, cfg.mass)?;
    let k = embed(&q, args.kplus, cfg.mass)?;
    let k_prime = apply_cone(&t, &k)?;
    let residual = (project(&k_prime)? - q_prime).euclidean_norm();
    // Absolute floor plus a term relative to the output size.
    let tolerance = cfg.tolerances.identity * (1.0 + q_prime.euclidean_norm());
    let pass = residual <= tolerance;
    match cfg.format {
        Format::Json => output::json(&Report {
            mass: cfg.mass,
            kplus: args.kplus,
            ops: args.ops.iter().map(|o| o.kind()).collect(),
            q: unsigned(q.0),
            q_prime: unsigned(q_prime.0),
            kappa: unsigned(k.components()),
            kappa_prime: unsigned(k_prime.components()),
            residual,
            tolerance,
            pass,
        })?,
        Format::Csv => {
            let [q0, q1, q2, q3] = unsigned(q.0);
            let [q0_prime, q1_prime, q2_prime, q3_prime] = unsigned(q_prime.0);
            output::table(
                Format::Csv,
                &[Row {
                    q0,
                    q1,
                    q2,
                    q3,
                    q0_prime,
                    q1_prime,
                    q2_prime,
                    q3_prime,
                    residual,
                    tolerance,
                    pass,
                }],
            )?
        }
    }
    Ok(pass)
}
