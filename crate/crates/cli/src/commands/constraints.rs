use clap::{Args, ValueEnum};
use conecalc::constraints::{
    charged_masses, charged_params_from_masses, electroweak_couplings, fermion_alpha_branches, neutral_mass_ratio,
    neutral_masses, WEAK_MIXING_SIN2, WEAK_MIXING_SIN2_ERR,
};
use conecalc::decomposition::{assemble_pm, decompose, extend_5d};
use conecalc::verify::compare_fields;
use conecalc::{ConstraintParams, DomainLabel, MassPair, MomentumLatticeField, ResidualReport, Sign};
use serde::{Deserialize, Serialize};

use crate::commands::fields::{domain_rows, DomainRow, FieldInfo};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::input::{demo_field, parse_finite};
use crate::output;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Demo {
    Electroweak,
}

#[derive(Args, Debug, Default)]
pub struct ConstraintArgs {
    /// Parameter JSON ({"M", "alpha_plus", "beta_plus"} or {"M", "m_plus", "m_minus"}), or - for stdin.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    alpha_plus: Option<f64>,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    beta_plus: Option<f64>,
    /// Use the neutral completion instead of the charged one.
    #[arg(long)]
    neutral: bool,
    /// Fermion mass m₊ (not squared).
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    m_plus: Option<f64>,
    /// Fermion mass m₋ (not squared).
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    m_minus: Option<f64>,
    #[arg(long, value_enum)]
    demo: Option<Demo>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamFile {
    #[serde(rename = "M")]
    mass: Option<f64>,
    alpha_plus: Option<f64>,
    beta_plus: Option<f64>,
    m_plus: Option<f64>,
    m_minus: Option<f64>,
    #[serde(default)]
    neutral: bool,
}

fn read_params(path: &str) -> Result<ParamFile, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?
    };
    let p: ParamFile = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    for v in [p.mass, p.alpha_plus, p.beta_plus, p.m_plus, p.m_minus]
        .into_iter()
        .flatten()
    {
        if !v.is_finite() {
            return Err(CliError::Input(format!("{path}: non-finite parameter")));
        }
    }
    Ok(p)
}

#[derive(Serialize)]
struct ParamReport {
    #[serde(rename = "M")]
    mass: f64,
    alpha_plus: f64,
    alpha_minus: f64,
    beta_plus: f64,
    beta_minus: f64,
    m_plus2: f64,
    m_minus2: f64,
    physical: bool,
}

impl ParamReport {
    fn new(p: &ConstraintParams, m: MassPair, physical: bool) -> Self {
        ParamReport {
            mass: p.mass,
            alpha_plus: p.alpha_plus,
            alpha_minus: p.alpha_minus,
            beta_plus: p.beta_plus,
            beta_minus: p.beta_minus,
            m_plus2: m.m_plus2,
            m_minus2: m.m_minus2,
            physical,
        }
    }
}

#[derive(Serialize)]
struct BranchReport {
    branch: &'static str,
    alpha_plus2: f64,
    #[serde(flatten)]
    params: ParamReport,
}

/// `mass_flag` is `--M` as given on the command line; it takes precedence
/// over the parameter file, which takes precedence over the config.
pub fn run(args: &ConstraintArgs, cfg: &RunConfig, mass_flag: Option<f64>) -> Result<bool, CliError> {
    output::require_json(cfg.format, "constraints")?;
    if let Some(Demo::Electroweak) = args.demo {
        return electroweak(cfg);
    }
    let file = match &args.params {
        Some(p) => read_params(p)?,
        None => ParamFile::default(),
    };
    let mass = mass_flag.or(file.mass).unwrap_or(cfg.mass);
    if !(mass.is_finite() && mass > 0.0) {
        return Err(CliError::Input(format!("M must be positive, got {mass}")));
    }
    let alpha = args.alpha_plus.or(file.alpha_plus);
    let beta = args.beta_plus.or(file.beta_plus);
    let mp = args.m_plus.or(file.m_plus);
    let mm = args.m_minus.or(file.m_minus);
    let neutral = args.neutral || file.neutral;
    match (alpha, beta, mp, mm) {
        (Some(a), Some(b), None, None) => {
            if neutral {
                let p = ConstraintParams::neutral(a, b, mass)?;
                #[derive(Serialize)]
                struct Neutral {
                    #[serde(flatten)]
                    params: ParamReport,
                    mass_ratio: f64,
                }
                output::json(&Neutral {
                    params: ParamReport::new(&p, neutral_masses(&p)?, false),
                    mass_ratio: neutral_mass_ratio(&p)?,
                })?;
            } else {
                let p = ConstraintParams::charged(a, b, mass)?;
                let m = charged_masses(&p)?;
                output::json(&ParamReport::new(&p, m.masses, m.physical))?;
            }
            Ok(true)
        }
        (None, None, Some(mp), Some(mm)) => {
            if neutral {
                return Err(CliError::Input(
                    "--neutral applies to --alpha-plus/--beta-plus only".into(),
                ));
            }
            let (big, small) = match fermion_alpha_branches(mp, mm, mass) {
                Ok(b) => b,
                Err(e @ conecalc::Error::MassBoundViolated { .. }) => {
                    #[derive(Serialize)]
                    struct Infeasible {
                        #[serde(rename = "M")]
                        mass: f64,
                        m_plus: f64,
                        m_minus: f64,
                        feasible: bool,
                        reason: String,
                    }
                    output::json(&Infeasible {
                        mass,
                        m_plus: mp,
                        m_minus: mm,
                        feasible: false,
                        reason: e.to_string(),
                    })?;
                    return Err(e.into());
                }
                Err(e) => return Err(e.into()),
            };
            let masses = MassPair::new(mp * mp, mm * mm);
            let mut branches = Vec::new();
            for (branch, a2, name) in [(Sign::Plus, big, "+"), (Sign::Minus, small, "-")] {
                let p = charged_params_from_masses(masses, mass, branch)?;
                let m = charged_masses(&p)?;
                branches.push(BranchReport {
                    branch: name,
                    alpha_plus2: a2,
                    params: ParamReport::new(&p, m.masses, m.physical),
                });
            }
            #[derive(Serialize)]
            struct Fermion {
                #[serde(rename = "M")]
                mass: f64,
                m_plus: f64,
                m_minus: f64,
                feasible: bool,
                branches: Vec<BranchReport>,
            }
            output::json(&Fermion {
                mass,
                m_plus: mp,
                m_minus: mm,
                feasible: true,
                branches,
            })?;
            Ok(true)
        }
        _ => Err(CliError::Input(
            "give either --alpha-plus and --beta-plus, or --m-plus and --m-minus (or --demo electroweak)".into(),
        )),
    }
}

/// Electron/muon doubling: one set of domain parts gives Ψ_el = Ψ₊ and
/// Ψ_muon = Ψ₋.
fn electroweak(cfg: &RunConfig) -> Result<bool, CliError> {
    let psi: MomentumLatticeField = demo_field(cfg, 4)?;
    let d = decompose(&psi);
    let electron = assemble_pm(&d, Sign::Plus);
    let muon = assemble_pm(&d, Sign::Minus);
    let odd = d.part(DomainLabel::I).add(d.part(DomainLabel::III))?;
    let even = d.part(DomainLabel::II).add(d.part(DomainLabel::IV))?;
    let checks = vec![
        compare_fields(
            "electron_plus_muon",
            &electron.add(&muon)?,
            &odd.scaled(2.0.into()),
            0.0,
        )?,
        compare_fields(
            "electron_minus_muon",
            &electron.sub(&muon)?,
            &even.scaled(2.0.into()),
            0.0,
        )?,
        compare_fields(
            "electron_boundary",
            &extend_5d(&d, 0.0, Sign::Plus, 0.0)?,
            &electron,
            0.0,
        )?,
        compare_fields("muon_boundary", &extend_5d(&d, 0.0, Sign::Minus, 0.0)?, &muon, 0.0)?,
    ];
    let pass = ResidualReport::all_pass(&checks);
    let (g, g_prime) = electroweak_couplings(1.0);
    #[derive(Serialize)]
    struct Labels {
        plus: &'static str,
        minus: &'static str,
        sin2_theta: f64,
        sin2_theta_err: f64,
        g_over_e: f64,
        g_prime_over_e: f64,
    }
    #[derive(Serialize)]
    struct Report {
        demo: &'static str,
        labels: Labels,
        field: FieldInfo,
        domains: Vec<DomainRow>,
        electron_sup_norm: f64,
        muon_sup_norm: f64,
        checks: Vec<ResidualReport>,
        pass: bool,
    }
    output::json(&Report {
        demo: "electroweak",
        labels: Labels {
            plus: "electron",
            minus: "muon",
            sin2_theta: WEAK_MIXING_SIN2,
            sin2_theta_err: WEAK_MIXING_SIN2_ERR,
            g_over_e: g,
            g_prime_over_e: g_prime,
        },
        field: FieldInfo::of(psi.lattice(), psi.components()),
        domains: domain_rows(&d),
        electron_sup_norm: electron.sup_norm(),
        muon_sup_norm: muon.sup_norm(),
        checks,
        pass,
    })?;
    Ok(pass)
}
