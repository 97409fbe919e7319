//! Argument parsers and field loading.

use std::io::Read;
use std::path::Path;

use conecalc::cone::LorentzMatrix;
use conecalc::{io, ConformalTransform, FourMomentum, MomentumLatticeField};

use crate::config::RunConfig;
use crate::error::CliError;

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

/// `a,b,c,d` as a four-vector.
pub fn parse_vec4(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated components, got {}", parts.len()));
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = number(p)?;
    }
    Ok(out)
}

pub fn parse_finite(s: &str) -> Result<f64, String> {
    number(s)
}

fn axis(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(a @ 1..=3) => Ok(a),
        _ => Err(format!("axis must be 1, 2 or 3, got {s:?}")),
    }
}

/// One `--op` element: `inversion`, `identity`, `translate:h0,h1,h2,h3`,
/// `dilate:λ`, `sc:h0,h1,h2,h3`, `boost:axis:η`, `rotate:axis:θ`.
pub fn parse_op(s: &str) -> Result<ConformalTransform, String> {
    let (name, rest) = match s.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (s, None),
    };
    let arg = || rest.ok_or_else(|| format!("{name} needs a parameter, e.g. {name}:..."));
    let pair = |r: &str| -> Result<(usize, f64), String> {
        let (a, v) = r.split_once(':').ok_or_else(|| format!("{name} expects axis:value"))?;
        Ok((axis(a)?, number(v)?))
    };
    let no_arg = |t: ConformalTransform| match rest {
        None => Ok(t),
        Some(_) => Err(format!("{name} takes no parameter")),
    };
    match name.trim().to_ascii_lowercase().as_str() {
        "inversion" | "invert" => no_arg(ConformalTransform::Inversion),
        "identity" => no_arg(ConformalTransform::identity()),
        "translate" | "translation" => Ok(ConformalTransform::Translation(FourMomentum(parse_vec4(arg()?)?))),
        "dilate" | "dilatation" => Ok(ConformalTransform::Dilatation(number(arg()?)?)),
        "sc" | "special-conformal" | "special_conformal" => {
            Ok(ConformalTransform::SpecialConformal(FourMomentum(parse_vec4(arg()?)?)))
        }
        "boost" => {
            let (a, eta) = pair(arg()?)?;
            Ok(ConformalTransform::Lorentz(LorentzMatrix::boost(a, eta)))
        }
        "rotate" | "rotation" => {
            let (a, th) = pair(arg()?)?;
            Ok(ConformalTransform::Lorentz(LorentzMatrix::rotation(a, th)))
        }
        other => Err(format!(
            "unknown op {other:?}; expected inversion, identity, translate, dilate, sc, boost or rotate"
        )),
    }
}

/// `--corrupt site=N,eps=X` (comma or space separated).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corruption {
    pub site: usize,
    pub eps: f64,
}

pub fn parse_corruption(s: &str) -> Result<Corruption, String> {
    let (mut site, mut eps) = (None, None);
    for item in s.split([',', ' ']).filter(|t| !t.is_empty()) {
        match item.split_once('=') {
            Some(("site", v)) => site = Some(v.parse::<usize>().map_err(|_| format!("bad site {v:?}"))?),
            Some(("eps", v)) => eps = Some(number(v)?),
            _ => return Err(format!("unexpected {item:?}; use site=N,eps=X")),
        }
    }
    Ok(Corruption {
        site: site.ok_or("missing site=N")?,
        eps: eps.ok_or("missing eps=X")?,
    })
}

/// Reads a JSON field from a path, or from stdin for `-`.
pub fn read_field(path: &str) -> Result<MomentumLatticeField, CliError> {
    let field = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        io::from_json_str(&s)
    } else {
        io::read_json_file(Path::new(path))
    };
    let f = field.map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if !f.is_finite() {
        return Err(CliError::Input(format!("{path}: field contains non-finite values")));
    }
    Ok(f)
}

/// The seeded field used when no `--in` is given.
pub fn demo_field(cfg: &RunConfig, components: usize) -> Result<MomentumLatticeField, CliError> {
    if components == 0 {
        return Err(CliError::Input("components must be >= 1".into()));
    }
    Ok(MomentumLatticeField::random(cfg.lattice()?, components, cfg.seed))
}

pub fn write_field(path: &Path, f: &MomentumLatticeField) -> Result<(), CliError> {
    io::write_json_file(path, f).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
