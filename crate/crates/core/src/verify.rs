//! Residual checks for doubled fields.
//!
//! Derivatives act analytically on the basis `e^{−iq·x − iQ(x₅ − t₅)}`:
//! `∂_μ∂^μ → −q²` and `∂₅² → −Q²`. The coupled condition
//! `∂²φ± + (∂₅² + M²)φ∓ = 0` therefore reads `−q²φ± + (M² − Q∓²)φ∓ = 0`
//! sitewise. `q²` is always re-derived from the lattice coordinates; `Q`
//! is read from the field under test so that planted corruption shows up.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decomposition::{assemble_pm, extend_spectral, projector_apply, DecomposedField, Sign, SpectralField5D};
use crate::domain::Hyperboloid;
use crate::error::{Error, Result};
use crate::fourier::{to_momentum, to_position};
use crate::lattice::{MomentumLatticeField, PositionLatticeField};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub name: String,
    pub linf: f64,
    /// Root-mean-square residual.
    pub l2: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    /// Builds a report from residual magnitudes; `pass ⇔ linf ≤ tolerance`.
    pub fn from_residuals(name: impl Into<String>, residuals: impl IntoIterator<Item = f64>, tolerance: f64) -> Self {
        let (mut linf, mut sq, mut n) = (0.0f64, 0.0f64, 0usize);
        for r in residuals {
            // NaN must fail, so propagate it explicitly.
            linf = if r.is_nan() || linf.is_nan() {
                f64::NAN
            } else {
                linf.max(r)
            };
            sq += r * r;
            n += 1;
        }
        let l2 = if n == 0 { 0.0 } else { (sq / n as f64).sqrt() };
        ResidualReport {
            name: name.into(),
            linf,
            l2,
            tolerance,
            pass: linf <= tolerance,
        }
    }

    pub fn all_pass(reports: &[ResidualReport]) -> bool {
        reports.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Identity-class checks, relative to the field sup-norm.
    pub identity: f64,
    /// Checks that go through an FFT.
    pub fft: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: 1e-10,
            fft: 1e-8,
        }
    }
}

fn ensure_pair(a: &SpectralField5D, b: &SpectralField5D) -> Result<()> {
    a.amplitudes.ensure_compatible(&b.amplitudes)?;
    if a.q5.len() != a.amplitudes.num_sites() || b.q5.len() != b.amplitudes.num_sites() {
        return Err(Error::LatticeMismatch("fifth-momentum table has wrong length".into()));
    }
    Ok(())
}

/// Coupled condition for an explicit pair of 5D fields `φ₊`, `φ₋`.
///
/// The tolerance is `rel_tol` times the larger amplitude sup-norm.
pub fn check_coupled_pair(
    plus: &SpectralField5D,
    minus: &SpectralField5D,
    x5s: &[f64],
    rel_tol: f64,
) -> Result<ResidualReport> {
    ensure_pair(plus, minus)?;
    let lattice = *plus.lattice();
    let m2 = lattice.mass * lattice.mass;
    let c = plus.amplitudes.components();
    let tolerance = rel_tol * plus.amplitudes.sup_norm().max(minus.amplitudes.sup_norm());
    let mut residuals = Vec::with_capacity(2 * x5s.len() * plus.amplitudes.values().len());
    for &x5 in x5s {
        for s in 0..lattice.num_sites() {
            let q2 = lattice.momentum(s).minkowski_square();
            let pp = plus.phase(s, x5);
            let pm = minus.phase(s, x5);
            let kp = m2 - plus.q5[s] * plus.q5[s];
            let km = m2 - minus.q5[s] * minus.q5[s];
            for k in 0..c {
                let fp = plus.amplitudes.site(s)[k] * pp;
                let fm = minus.amplitudes.site(s)[k] * pm;
                residuals.push((fp * (-q2) + fm * km).norm());
                residuals.push((fm * (-q2) + fp * kp).norm());
            }
        }
    }
    Ok(ResidualReport::from_residuals(
        "coupled_condition",
        residuals,
        tolerance,
    ))
}

/// Coupled condition for the doubled pair built from `d`.
pub fn check_coupled_condition(d: &DecomposedField, x5s: &[f64], rel_tol: f64) -> Result<ResidualReport> {
    let plus = extend_spectral(d, Sign::Plus, 0.0)?;
    let minus = extend_spectral(d, Sign::Minus, 0.0)?;
    check_coupled_pair(&plus, &minus, x5s, rel_tol)
}

fn tilde(j: &SpectralField5D, phi: &SpectralField5D, m2: f64) -> Result<SpectralField5D> {
    ensure_pair(j, phi)?;
    if j.q5 != phi.q5 || j.t5 != phi.t5 {
        return Err(Error::LatticeMismatch(
            "source and field carry different fifth momenta".into(),
        ));
    }
    Ok(SpectralField5D {
        amplitudes: j.amplitudes.zip_with(&phi.amplitudes, |a, b| a - b * m2)?,
        q5: j.q5.clone(),
        t5: j.t5,
    })
}

/// `j̃± = j± − m±²φ±` must satisfy the coupled condition; pair-level form.
pub fn check_source_pair(
    j: [&SpectralField5D; 2],
    phi: [&SpectralField5D; 2],
    m_plus2: f64,
    m_minus2: f64,
    x5s: &[f64],
    rel_tol: f64,
) -> Result<ResidualReport> {
    let tp = tilde(j[0], phi[0], m_plus2)?;
    let tm = tilde(j[1], phi[1], m_minus2)?;
    let mut r = check_coupled_pair(&tp, &tm, x5s, rel_tol)?;
    r.name = "source_condition".into();
    Ok(r)
}

/// Source condition for doubled `j` and `φ` built from decomposed parts.
///
/// With `m₊² ≠ m₋²` and `φ ≠ 0` the combination `j̃±` is not itself a
/// doubled field, and the check fails by `|m₊² − m₋²|·|q²φ|`.
pub fn check_source_condition(
    j: &DecomposedField,
    phi: &DecomposedField,
    m_plus2: f64,
    m_minus2: f64,
    x5s: &[f64],
    rel_tol: f64,
) -> Result<ResidualReport> {
    j.lattice().ensure_same(phi.lattice())?;
    let jp = extend_spectral(j, Sign::Plus, 0.0)?;
    let jm = extend_spectral(j, Sign::Minus, 0.0)?;
    let pp = extend_spectral(phi, Sign::Plus, 0.0)?;
    let pm = extend_spectral(phi, Sign::Minus, 0.0)?;
    check_source_pair([&jp, &jm], [&pp, &pm], m_plus2, m_minus2, x5s, rel_tol)
}

/// `(M² − Q²)φ± = m∓²φ∓ − j∓` at one `x₅`.
pub fn check_consistency_4_10(
    phi: &DecomposedField,
    j: &DecomposedField,
    m_plus2: f64,
    m_minus2: f64,
    x5: f64,
    rel_tol: f64,
) -> Result<ResidualReport> {
    phi.lattice().ensure_same(j.lattice())?;
    if phi.components() != j.components() {
        return Err(Error::LatticeMismatch("component count".into()));
    }
    let m2 = phi.mass() * phi.mass();
    let fields = |d: &DecomposedField| -> Result<[SpectralField5D; 2]> {
        Ok([
            extend_spectral(d, Sign::Plus, 0.0)?,
            extend_spectral(d, Sign::Minus, 0.0)?,
        ])
    };
    let [pp, pm] = fields(phi)?;
    let [jp, jm] = fields(j)?;
    let tolerance = rel_tol * phi.sup_norm().max(j.sup_norm());
    let c = phi.components();
    let mut residuals = Vec::new();
    for s in 0..phi.lattice().num_sites() {
        let lhs_w = m2 - pp.q5[s] * pp.q5[s];
        let (ph_p, ph_m) = (pp.phase(s, x5), pm.phase(s, x5));
        for k in 0..c {
            let fp = pp.amplitudes.site(s)[k] * ph_p;
            let fm = pm.amplitudes.site(s)[k] * ph_m;
            let gp = jp.amplitudes.site(s)[k] * ph_p;
            let gm = jm.amplitudes.site(s)[k] * ph_m;
            residuals.push((fp * lhs_w - (fm * m_minus2 - gm)).norm());
            residuals.push((fm * lhs_w - (fp * m_plus2 - gp)).norm());
        }
    }
    Ok(ResidualReport::from_residuals("consistency", residuals, tolerance))
}

/// `φ±(x₅ = 0)` against `Φ±`; exact comparison.
pub fn check_boundary(dp: &DecomposedField, sign: Sign, t5: f64) -> Result<ResidualReport> {
    check_boundary_at(dp, sign, t5, 0.0)
}

/// `φ±(x₅ = boundary)` against `Φ±`; passes exactly when `boundary = t5`.
pub fn check_boundary_at(dp: &DecomposedField, sign: Sign, t5: f64, boundary: f64) -> Result<ResidualReport> {
    let ext = extend_spectral(dp, sign, t5)?.at(boundary);
    let reference = assemble_pm(dp, sign);
    let mut r = compare_fields("boundary", &ext, &reference, 0.0)?;
    r.name = "boundary".into();
    Ok(r)
}

/// Sitewise `|a − b|` report.
pub fn compare_fields(
    name: &str,
    a: &MomentumLatticeField,
    b: &MomentumLatticeField,
    tolerance: f64,
) -> Result<ResidualReport> {
    a.ensure_compatible(b)?;
    Ok(ResidualReport::from_residuals(
        name,
        a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()),
        tolerance,
    ))
}

/// `P_aP_b = δ_ab P_a` and `P₁ + P₂ = 1` on `f`; exact.
pub fn check_projector_algebra(f: &MomentumLatticeField) -> Result<ResidualReport> {
    let p1 = projector_apply(Hyperboloid::One, f);
    let p2 = projector_apply(Hyperboloid::Two, f);
    let zero = MomentumLatticeField::zeros(*f.lattice(), f.components());
    let checks = [
        (projector_apply(Hyperboloid::One, &p1), p1.clone()),
        (projector_apply(Hyperboloid::Two, &p2), p2.clone()),
        (projector_apply(Hyperboloid::One, &p2), zero.clone()),
        (projector_apply(Hyperboloid::Two, &p1), zero),
        (p1.add(&p2)?, f.clone()),
    ];
    let mut worst = Vec::new();
    for (a, b) in &checks {
        worst.push(a.max_abs_diff(b)?);
    }
    Ok(ResidualReport::from_residuals("projector_algebra", worst, 0.0))
}

/// Periodic second-order d'Alembertian `Σ g_μμ δ²_μ` in position space.
pub fn fd_dalembertian(f: &PositionLatticeField) -> PositionLatticeField {
    let lat = *f.lattice();
    let c = f.components();
    let dx = lat.position_spacing();
    let mut out = vec![Complex64::new(0.0, 0.0); f.values().len()];
    for s in 0..lat.num_sites() {
        let idx = lat.site_coords(s);
        for axis in 0..4 {
            let n = lat.dims[axis];
            if n == 1 {
                continue;
            }
            let mut up = idx;
            let mut down = idx;
            up[axis] = (idx[axis] + 1) % n;
            down[axis] = (idx[axis] + n - 1) % n;
            let (su, sd) = (lat.site_index(up), lat.site_index(down));
            let w = crate::cone::METRIC_4D[axis] / (dx[axis] * dx[axis]);
            for k in 0..c {
                out[s * c + k] += (f.site(su)[k] - f.site(s)[k] * 2.0 + f.site(sd)[k]) * w;
            }
        }
    }
    PositionLatticeField::from_values(lat, c, out).expect("same layout")
}

/// Exact lattice symbol of [`fd_dalembertian`] at `site`.
pub fn fd_symbol(lattice: &crate::lattice::Lattice, site: usize) -> f64 {
    let q = lattice.momentum(site).0;
    let dx = lattice.position_spacing();
    -(0..4)
        .map(|a| {
            let s = 2.0 / dx[a] * (0.5 * q[a] * dx[a]).sin();
            crate::cone::METRIC_4D[a] * s * s
        })
        .sum::<f64>()
}

/// Validates the lattice Fourier conventions: the finite-difference
/// d'Alembertian of `to_position(f)`, transformed back, must equal
/// `f` times the stencil symbol.
pub fn fd_crosscheck(f: &MomentumLatticeField, rel_tol: f64) -> Result<ResidualReport> {
    let lat = *f.lattice();
    let applied = to_momentum(&fd_dalembertian(&to_position(f)));
    let expected = f.map_sites(|s, _, src, dst| {
        let w = fd_symbol(&lat, s);
        for (d, v) in dst.iter_mut().zip(src) {
            *d = v * w;
        }
    });
    let scale = expected.sup_norm().max(f.sup_norm());
    let mut r = compare_fields("fd_crosscheck", &applied, &expected, rel_tol * scale)?;
    r.name = "fd_crosscheck".into();
    Ok(r)
}

/// Continuum symbol `−q²` applied to `f`, for comparison with [`fd_crosscheck`].
pub fn spectral_dalembertian(f: &MomentumLatticeField) -> MomentumLatticeField {
    f.map_sites(|_, q2, src, dst| {
        for (d, v) in dst.iter_mut().zip(src) {
            *d = v * (-q2);
        }
    })
}
