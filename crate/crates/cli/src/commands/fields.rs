//! Subcommands that operate on lattice fields.

use std::path::PathBuf;

use clap::Args;
use conecalc::decomposition::{assemble_pm, decompose, extend_spectral};
use conecalc::dynamics::{kg_forward, kg_solve, PoleRegularization};
use conecalc::fourier::{to_momentum, to_position};
use conecalc::verify::{check_coupled_pair, check_projector_algebra, check_source_condition, compare_fields};
use conecalc::{Complex64, DecomposedField, DomainLabel, Lattice, MomentumLatticeField, ResidualReport, Sign};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::input::{demo_field, parse_corruption, parse_finite, read_field, write_field, Corruption};
use crate::output;

#[derive(Serialize)]
pub struct DomainRow {
    pub domain: &'static str,
    pub hyperboloid: u8,
    pub sites: usize,
    pub sup_norm: f64,
}

pub fn domain_rows(d: &DecomposedField) -> Vec<DomainRow> {
    let labels = d.lattice().domains();
    DomainLabel::ALL
        .iter()
        .map(|&l| DomainRow {
            domain: l.name(),
            hyperboloid: l.hyperboloid().index(),
            sites: labels.iter().filter(|&&x| x == l).count(),
            sup_norm: d.part(l).sup_norm(),
        })
        .collect()
}

#[derive(Serialize)]
pub struct FieldInfo {
    dims: [usize; 4],
    spacing: [f64; 4],
    #[serde(rename = "M")]
    mass: f64,
    components: usize,
}

impl FieldInfo {
    pub fn of(lat: &Lattice, components: usize) -> Self {
        FieldInfo {
            dims: lat.dims,
            spacing: lat.spacing,
            mass: lat.mass,
            components,
        }
    }
}

fn load(path: Option<&str>, cfg: &RunConfig) -> Result<MomentumLatticeField, CliError> {
    match path {
        Some(p) => read_field(p),
        None => demo_field(cfg, 1),
    }
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Field file (JSON), or - for stdin.
    #[arg(long = "in")]
    input: String,
    /// Write Φ₊ = (Φ_I + Φ_III) + (Φ_II + Φ_IV) here.
    #[arg(long)]
    out_plus: Option<PathBuf>,
    /// Write Φ₋ = (Φ_I + Φ_III) − (Φ_II + Φ_IV) here.
    #[arg(long)]
    out_minus: Option<PathBuf>,
}

pub fn decompose_cmd(args: &DecomposeArgs, cfg: &RunConfig) -> Result<bool, CliError> {
    let f = read_field(&args.input)?;
    let d = decompose(&f);
    let support_ok = d.support_violation().is_none();
    let reconstruction_exact = d.reconstruct() == f;
    for (path, sign) in [(&args.out_plus, Sign::Plus), (&args.out_minus, Sign::Minus)] {
        if let Some(p) = path {
            write_field(p, &assemble_pm(&d, sign))?;
        }
    }
    let rows = domain_rows(&d);
    match cfg.format {
        Format::Csv => output::table(Format::Csv, &rows)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Report {
                field: FieldInfo,
                domains: Vec<DomainRow>,
                support_ok: bool,
                reconstruction_exact: bool,
            }
            output::json(&Report {
                field: FieldInfo::of(f.lattice(), f.components()),
                domains: rows,
                support_ok,
                reconstruction_exact,
            })?
        }
    }
    Ok(support_ok && reconstruction_exact)
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Field file (JSON), or - for stdin. Defaults to the seeded demo field.
    #[arg(long = "in")]
    input: Option<String>,
    /// Plant a perturbation in φ₊: site=N,eps=X.
    #[arg(long, value_parser = parse_corruption)]
    corrupt: Option<Corruption>,
    /// Source field J on the same lattice; enables the source check.
    #[arg(long)]
    source: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_parser = parse_finite)]
    m_plus2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_parser = parse_finite)]
    m_minus2: f64,
    /// x₅ sample points, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        value_parser = parse_finite,
        default_value = "-1.75,-1.25,-0.75,-0.25,0.25,0.75,1.25,1.75"
    )]
    x5: Vec<f64>,
}

pub fn verify_cmd(args: &VerifyArgs, cfg: &RunConfig) -> Result<bool, CliError> {
    let f = load(args.input.as_deref(), cfg)?;
    let tol = cfg.tolerances;
    let d = decompose(&f);
    let mut plus = extend_spectral(&d, Sign::Plus, 0.0)?;
    let minus = extend_spectral(&d, Sign::Minus, 0.0)?;
    if let Some(c) = args.corrupt {
        if c.site >= f.num_sites() {
            return Err(CliError::Input(format!(
                "corrupt site {} outside 0..{}",
                c.site,
                f.num_sites()
            )));
        }
        plus.amplitudes
            .site_mut(c.site)
            .iter_mut()
            .for_each(|v| *v += Complex64::new(c.eps, 0.0));
    }
    let mut reports = vec![check_coupled_pair(&plus, &minus, &args.x5, tol.identity)?];
    for (name, ext, sign) in [
        ("boundary_plus", &plus, Sign::Plus),
        ("boundary_minus", &minus, Sign::Minus),
    ] {
        reports.push(compare_fields(name, &ext.at(0.0), &assemble_pm(&d, sign), 0.0)?);
    }
    reports.push(check_projector_algebra(&f)?);
    let round = to_momentum(&to_position(&f));
    reports.push(compare_fields("fft_round_trip", &round, &f, tol.fft * f.sup_norm())?);
    if let Some(src) = &args.source {
        let j = read_field(src)?;
        f.ensure_compatible(&j)?;
        reports.push(check_source_condition(
            &decompose(&j),
            &d,
            args.m_plus2,
            args.m_minus2,
            &args.x5,
            tol.identity,
        )?);
    }
    let pass = ResidualReport::all_pass(&reports);
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {}: linf {:e} > tolerance {:e}", r.name, r.linf, r.tolerance);
    }
    match cfg.format {
        Format::Csv => output::table(Format::Csv, &reports)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                field: FieldInfo,
                x5: &'a [f64],
                reports: &'a [ResidualReport],
                pass: bool,
            }
            output::json(&Report {
                field: FieldInfo::of(f.lattice(), f.components()),
                x5: &args.x5,
                reports: &reports,
                pass,
            })?
        }
    }
    Ok(pass)
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Source J (JSON), or - for stdin. Defaults to a seeded random source.
    #[arg(long = "in")]
    input: Option<String>,
    /// Mass squared m² in (m² − q²)Φ = J.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    m2: f64,
    /// Zero sites with |m² − q²| below this band instead of shifting by iε.
    #[arg(long, value_parser = parse_finite)]
    pv_band: Option<f64>,
    /// Write Φ here.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn solve_cmd(args: &SolveArgs, cfg: &RunConfig) -> Result<bool, CliError> {
    output::require_json(cfg.format, "solve")?;
    let j = load(args.input.as_deref(), cfg)?;
    let mass = j.lattice().mass;
    let eps = cfg.epsilon * mass * mass;
    let reg = match args.pv_band {
        Some(b) => PoleRegularization::principal_value(eps, b)?,
        None => PoleRegularization::new(eps)?,
    };
    let phi = kg_solve(&j, args.m2, &reg);
    let q2 = j.mode_q2();
    let excised = |s: usize| reg.principal_value_band.is_some_and(|b| (args.m2 - q2[s]).abs() < b);
    let back = kg_forward(&phi, args.m2, Some(&reg));
    let c = j.components();
    let residuals = (0..j.num_sites())
        .filter(|&s| !excised(s))
        .flat_map(|s| (0..c).map(move |k| s * c + k))
        .map(|i| (back.values()[i] - j.values()[i]).norm());
    let report = ResidualReport::from_residuals("kg_reconstruction", residuals, cfg.tolerances.identity * j.sup_norm());
    if let Some(p) = &args.out {
        write_field(p, &phi)?;
    }
    #[derive(Serialize)]
    struct Report {
        field: FieldInfo,
        m2: f64,
        epsilon: f64,
        mode: &'static str,
        sites_excised: usize,
        phi_sup_norm: f64,
        reconstruction: ResidualReport,
    }
    output::json(&Report {
        field: FieldInfo::of(j.lattice(), c),
        m2: args.m2,
        epsilon: eps,
        mode: if args.pv_band.is_some() {
            "principal_value"
        } else {
            "i_epsilon"
        },
        sites_excised: (0..j.num_sites()).filter(|&s| excised(s)).count(),
        phi_sup_norm: phi.sup_norm(),
        reconstruction: report.clone(),
    })?;
    Ok(report.pass)
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    /// Components per site.
    #[arg(long, default_value_t = 1)]
    components: usize,
    /// Write the field here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Emits the seeded demo field used by `verify` when no `--in` is given.
pub fn demo_cmd(args: &DemoArgs, cfg: &RunConfig) -> Result<bool, CliError> {
    output::require_json(cfg.format, "demo")?;
    let f = demo_field(cfg, args.components)?;
    match &args.out {
        Some(p) => write_field(p, &f)?,
        None => conecalc::io::write_json(std::io::stdout().lock(), &f)
            .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?,
    }
    Ok(true)
}
