//! Linear `x₅`-derivative constraints and the mass/source relations they
//! induce.
//!
//! Charged scalars obey `(i/M)∂₅φ± = α±φ₊ + β±φ₋ + C±`. Writing
//! `D = [[α₊, β₊], [α₋, β₋]]`, the consistency relation turns into
//! `M²(1 − D²)φ = (m₋²φ₋, m₊²φ₊)` plus source terms, so the diagonal of
//! `1 − D²` must vanish (`α₊² + α₋β₊ = 1`, `β₋² + α₋β₊ = 1`) and the
//! off-diagonal entries give the masses. Neutral scalars use `(1/M)∂₅`,
//! which flips the sign of `D²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cone::{minkowski_dot, ConePoint};
use crate::decomposition::{Sign, SpectralField5D};
use crate::error::{Error, Result};
use crate::lattice::MomentumLatticeField;
use crate::verify::ResidualReport;

/// Central value of `sin²θ` for the weak mixing angle.
pub const WEAK_MIXING_SIN2: f64 = 0.222;
/// Quoted uncertainty on [`WEAK_MIXING_SIN2`].
pub const WEAK_MIXING_SIN2_ERR: f64 = 0.011;

/// Consistency tolerance accepted by [`charged_masses`].
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// `g = −e/sinθ` and `g' = −e/cosθ`.
pub fn electroweak_couplings(e: f64) -> (f64, f64) {
    let s = WEAK_MIXING_SIN2.sqrt();
    let c = (1.0 - WEAK_MIXING_SIN2).sqrt();
    (-e / s, -e / c)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintParams {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
    #[serde(rename = "M")]
    pub mass: f64,
}

impl ConstraintParams {
    /// Completes `(α₊, β₊)` to a charged parameter set: `β₋ = α₊`,
    /// `α₋ = (1 − α₊²)/β₊`.
    pub fn charged(alpha_plus: f64, beta_plus: f64, mass: f64) -> Result<Self> {
        Self::completed(alpha_plus, beta_plus, mass, 1.0)
    }

    /// Neutral completion: `β₋ = α₊`, `α₋ = (−1 − α₊²)/β₊`.
    pub fn neutral(alpha_plus: f64, beta_plus: f64, mass: f64) -> Result<Self> {
        Self::completed(alpha_plus, beta_plus, mass, -1.0)
    }

    fn completed(alpha_plus: f64, beta_plus: f64, mass: f64, rhs: f64) -> Result<Self> {
        if beta_plus == 0.0 {
            return Err(Error::ZeroBeta);
        }
        if !(mass > 0.0) {
            return Err(Error::NonPositiveScale { kplus: 1.0, mass });
        }
        Ok(ConstraintParams {
            alpha_plus,
            alpha_minus: (rhs - alpha_plus * alpha_plus) / beta_plus,
            beta_plus,
            beta_minus: alpha_plus,
            mass,
        })
    }

    /// Largest violation of `α₊² + α₋β₊ = 1`, `β₋² + α₋β₊ = 1`.
    pub fn charged_residual(&self) -> f64 {
        let ab = self.alpha_minus * self.beta_plus;
        (self.alpha_plus * self.alpha_plus + ab - 1.0)
            .abs()
            .max((self.beta_minus * self.beta_minus + ab - 1.0).abs())
    }

    /// Largest violation of the neutral conditions (both equal to −1).
    pub fn neutral_residual(&self) -> f64 {
        let ab = self.alpha_minus * self.beta_plus;
        (self.alpha_plus * self.alpha_plus + ab + 1.0)
            .abs()
            .max((self.beta_minus * self.beta_minus + ab + 1.0).abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassPair {
    pub m_plus2: f64,
    pub m_minus2: f64,
}

impl MassPair {
    pub fn new(m_plus2: f64, m_minus2: f64) -> Self {
        MassPair { m_plus2, m_minus2 }
    }

    pub fn physical(&self) -> bool {
        self.m_plus2 >= 0.0 && self.m_minus2 >= 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargedMasses {
    #[serde(flatten)]
    pub masses: MassPair,
    /// `α₊β₊ < 0` and `|α₊| < 1`.
    pub physical: bool,
}

/// `m₋² = −M²β₊(α₊ + β₋)`, `m₊² = −M²α₋(α₊ + β₋)`.
///
/// On `β₋ = α₊` these are `−2M²α₊β₊` and `−2M²α₊(1 − α₊²)/β₊`; on
/// `β₋ = −α₊` both vanish exactly.
pub fn charged_masses(p: &ConstraintParams) -> Result<ChargedMasses> {
    if p.beta_plus == 0.0 {
        return Err(Error::ZeroBeta);
    }
    let r = p.charged_residual();
    if !(r <= CONSISTENCY_TOL) {
        return Err(Error::InconsistentParams(r));
    }
    let m2 = p.mass * p.mass;
    let s = p.alpha_plus + p.beta_minus;
    // `+ 0.0` turns a signed zero into +0.
    let masses = MassPair::new(-m2 * p.alpha_minus * s + 0.0, -m2 * p.beta_plus * s + 0.0);
    Ok(ChargedMasses {
        masses,
        physical: p.alpha_plus * p.beta_plus < 0.0 && p.alpha_plus.abs() < 1.0,
    })
}

/// Both solutions `α₊² = ½ ± ½√(1 − m₊²m₋²/M⁴)`, larger first.
pub fn fermion_alpha_branches(m_plus: f64, m_minus: f64, mass: f64) -> Result<(f64, f64)> {
    if !(m_plus > 0.0 && m_minus > 0.0) {
        return Err(Error::NonPositiveMass(m_plus * m_plus, m_minus * m_minus));
    }
    let m2 = mass * mass;
    let product = m_plus * m_minus;
    if product > m2 {
        return Err(Error::MassBoundViolated { product, bound: m2 });
    }
    let p = product / m2;
    let big = 0.5 + 0.5 * (1.0 - p * p).sqrt();
    // The small root from the product avoids cancellation.
    let small = p * p / (4.0 * big);
    Ok((big, small))
}

/// Inverts [`charged_masses`]. `Sign::Plus` selects the larger `α₊²`.
/// `α₊` is taken negative so that `β₊ > 0` and `m₋² > 0`.
pub fn charged_params_from_masses(m: MassPair, mass: f64, branch: Sign) -> Result<ConstraintParams> {
    if !(m.m_plus2 > 0.0 && m.m_minus2 > 0.0) {
        return Err(Error::NonPositiveMass(m.m_plus2, m.m_minus2));
    }
    let (big, small) = fermion_alpha_branches(m.m_plus2.sqrt(), m.m_minus2.sqrt(), mass)?;
    let a2 = match branch {
        Sign::Plus => big,
        Sign::Minus => small,
    };
    let alpha_plus = -a2.sqrt();
    let beta_plus = m.m_minus2 / (2.0 * mass * mass * a2.sqrt());
    ConstraintParams::charged(alpha_plus, beta_plus, mass)
}

/// `m₊²/m₋² = −(1 + α₊²)/β₊²`, negative for every real parameter set.
pub fn neutral_mass_ratio(p: &ConstraintParams) -> Result<f64> {
    if p.beta_plus == 0.0 {
        return Err(Error::ZeroBeta);
    }
    Ok(-(1.0 + p.alpha_plus * p.alpha_plus) / (p.beta_plus * p.beta_plus))
}

/// `m₊² = −2M²α₊(1 + α₊²)/β₊`, `m₋² = 2M²α₊β₊`.
pub fn neutral_masses(p: &ConstraintParams) -> Result<MassPair> {
    if p.beta_plus == 0.0 {
        return Err(Error::ZeroBeta);
    }
    let m2 = p.mass * p.mass;
    let a = p.alpha_plus;
    Ok(MassPair::new(
        -2.0 * m2 * a * (1.0 + a * a) / p.beta_plus,
        2.0 * m2 * a * p.beta_plus,
    ))
}

/// `m₊² = α²m₋²` for the alternative neutral constraint `φ₋ = αφ₊ + G`.
pub fn neutral_alt_mass(alpha: f64, m_minus2: f64) -> Result<f64> {
    if m_minus2 < 0.0 {
        return Err(Error::NegativeMass(m_minus2));
    }
    Ok(alpha * alpha * m_minus2)
}

/// `j₋ = (j₊ + F)/α`, from `αj₋ − j₊ = F`.
pub fn neutral_source_transfer(
    alpha: f64,
    j_plus: &MomentumLatticeField,
    f: &MomentumLatticeField,
) -> Result<MomentumLatticeField> {
    if alpha == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    j_plus.zip_with(f, |j, g| (j + g) / alpha)
}

/// Charged sources at `x₅`:
/// `j₊ = M²(α₋C₊ + β₋C₋ + (i/M)∂₅C₋)`, `j₋ = M²(α₊C₊ + β₊C₋ + (i/M)∂₅C₊)`.
pub fn charged_sources(
    p: &ConstraintParams,
    c_plus: &SpectralField5D,
    c_minus: &SpectralField5D,
    x5: f64,
) -> Result<(MomentumLatticeField, MomentumLatticeField)> {
    c_plus.amplitudes.ensure_compatible(&c_minus.amplitudes)?;
    let m = p.mass;
    let m2 = Complex64::new(m * m, 0.0);
    let cp = c_plus.at(x5);
    let cm = c_minus.at(x5);
    // (i/M)∂₅ on e^{−iQ(x₅−t₅)} is Q/M.
    let dcp = c_plus.apply_symbol_at(x5, |q| Complex64::new(q / m, 0.0));
    let dcm = c_minus.apply_symbol_at(x5, |q| Complex64::new(q / m, 0.0));
    let lin = |a: f64, b: f64, d: &MomentumLatticeField| -> Result<MomentumLatticeField> {
        let base = cp.zip_with(&cm, |x, y| x * a + y * b)?;
        Ok(base.add(d)?.scaled(m2))
    };
    Ok((
        lin(p.alpha_minus, p.beta_minus, &dcm)?,
        lin(p.alpha_plus, p.beta_plus, &dcp)?,
    ))
}

/// Sitewise check of `[1 − (i/M)∂₅]φ± = C±` and
/// `M²[1 + (i/M)∂₅]C∓ = m±²φ± − j±`.
///
/// Arrays are ordered `[+, −]`. Tolerance is `rel_tol` times the largest
/// sup-norm among the inputs.
pub fn check_charged_constraint(
    phi: [&SpectralField5D; 2],
    c: [&SpectralField5D; 2],
    j: [&SpectralField5D; 2],
    masses: MassPair,
    x5s: &[f64],
    rel_tol: f64,
) -> Result<ResidualReport> {
    for f in phi.iter().chain(&c).chain(&j) {
        phi[0].amplitudes.ensure_compatible(&f.amplitudes)?;
    }
    let m = phi[0].lattice().mass;
    let scale = phi
        .iter()
        .chain(&c)
        .chain(&j)
        .map(|f| f.amplitudes.sup_norm())
        .fold(0.0, f64::max);
    let mass2 = [masses.m_plus2, masses.m_minus2];
    let mut residuals = Vec::new();
    for &x5 in x5s {
        for k in 0..2 {
            let lhs_a = phi[k].apply_symbol_at(x5, |q| Complex64::new(1.0 - q / m, 0.0));
            residuals.push(lhs_a.max_abs_diff(&c[k].at(x5))?);
            let lhs_b = c[1 - k].apply_symbol_at(x5, |q| Complex64::new(m * m * (1.0 + q / m), 0.0));
            let rhs_b = phi[k].at(x5).zip_with(&j[k].at(x5), |f, s| f * mass2[k] - s)?;
            residuals.push(lhs_b.max_abs_diff(&rhs_b)?);
        }
    }
    Ok(ResidualReport::from_residuals(
        "charged_constraint",
        residuals,
        rel_tol * scale,
    ))
}

/// Fifth gauge component and the induced scale shift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A5Shift {
    /// `a₅ = −a₆`.
    pub a5: Complex64,
    /// `κ₋'/κ₊` of the shifted point.
    pub kminus_ratio: Complex64,
}

/// `a₅ = (−a_νκ^ν − κ^νa_ν + e·a_νa^ν)/(2Mκ₊)`, the value that keeps
/// `κ_A − e·a_A` on the cone with `κ₊` unchanged when `a₆ = −a₅`.
///
/// The shifted point has `κ₋' = κ₋ − 2e·a₅/M`.
pub fn a5_from_a4(a: &[Complex64; 4], kappa: &ConePoint, e: f64) -> Result<A5Shift> {
    let kp = kappa.kplus();
    if !(kp.abs() >= crate::cone::ConeConfig::default().scale_epsilon) {
        return Err(Error::DegenerateScale(kp));
    }
    let k = kappa.kappa;
    let mdot = |x: &[Complex64; 4], y: &[Complex64; 4]| -> Complex64 {
        (0..4).map(|i| x[i] * y[i] * crate::cone::METRIC_4D[i]).sum()
    };
    let kc: [Complex64; 4] = std::array::from_fn(|i| Complex64::new(k[i], 0.0));
    let a_k = mdot(a, &kc);
    let k_a = mdot(&kc, a);
    let a_a = mdot(a, a);
    let m = kappa.mass;
    let a5 = (-a_k - k_a + a_a * e) / (2.0 * m * kp);
    Ok(A5Shift {
        a5,
        kminus_ratio: Complex64::new(kappa.kminus() / kp, 0.0) - a5 * (2.0 * e / (m * kp)),
    })
}

/// The real 6D point `κ_A − e·a_A` with `a = (a_μ, a₅, −a₅)`.
pub fn shifted_point(a: &[f64; 4], kappa: &ConePoint, e: f64) -> Result<ConePoint> {
    let ac: [Complex64; 4] = std::array::from_fn(|i| Complex64::new(a[i], 0.0));
    let a5 = a5_from_a4(&ac, kappa, e)?.a5.re;
    Ok(ConePoint::new_unchecked(
        std::array::from_fn(|i| kappa.kappa[i] - e * a[i]),
        kappa.k5() - e * a5,
        kappa.k6() + e * a5,
        kappa.mass,
    ))
}

/// `−a·κ/(Mκ₊)`: the `e = 0` limit of [`a5_from_a4`] for real `a`.
pub fn a5_linear(a: &[f64; 4], kappa: &ConePoint) -> f64 {
    -minkowski_dot(a, &kappa.kappa) / (kappa.mass * kappa.kplus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{cone_form, embed, FourMomentum};
    use crate::decomposition::{decompose, extend_spectral};
    use crate::lattice::Lattice;

    // Independent oracle: K = M²(1 ∓ D²) must have zero diagonal and the
    // masses off the diagonal.
    fn square_oracle(p: &ConstraintParams, sign: f64) -> [[f64; 2]; 2] {
        let d = [[p.alpha_plus, p.beta_plus], [p.alpha_minus, p.beta_minus]];
        let m2 = p.mass * p.mass;
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let dd = d[i][0] * d[0][j] + d[i][1] * d[1][j];
                m2 * (f64::from(u8::from(i == j)) - sign * dd)
            })
        })
    }

    #[test]
    fn charged_example() {
        let p = ConstraintParams::charged(-0.6, 0.4, 1.0).unwrap();
        let r = charged_masses(&p).unwrap();
        assert!((r.masses.m_minus2 - 0.48).abs() < 1e-15);
        assert!((r.masses.m_plus2 - 1.92).abs() < 1e-14);
        assert!((r.masses.m_plus2 / r.masses.m_minus2 - 0.64 / 0.16).abs() < 1e-12);
        assert!(r.physical);
        let k = square_oracle(&p, 1.0);
        assert!(k[0][0].abs() < 1e-15 && k[1][1].abs() < 1e-15);
        assert!((k[0][1] - r.masses.m_minus2).abs() < 1e-15);
        assert!((k[1][0] - r.masses.m_plus2).abs() < 1e-14);
    }

    #[test]
    fn charged_massless_and_unphysical() {
        let p = ConstraintParams::charged(0.0, 0.7, 1.0).unwrap();
        let r = charged_masses(&p).unwrap();
        assert_eq!(r.masses, MassPair::new(0.0, 0.0));
        assert!(r.masses.m_plus2.is_sign_positive());
        let q = ConstraintParams::charged(0.6, 0.4, 1.0).unwrap();
        let r = charged_masses(&q).unwrap();
        assert!((r.masses.m_minus2 + 0.48).abs() < 1e-15);
        assert!(!r.physical);
        // α₊ = −β₋ branch of the consistency conditions.
        let s = ConstraintParams {
            beta_minus: -0.3,
            ..ConstraintParams::charged(0.3, 0.5, 1.0).unwrap()
        };
        assert_eq!(charged_masses(&s).unwrap().masses, MassPair::new(0.0, 0.0));
    }

    #[test]
    fn charged_errors() {
        assert_eq!(ConstraintParams::charged(0.1, 0.0, 1.0), Err(Error::ZeroBeta));
        let bad = ConstraintParams {
            alpha_minus: 3.0,
            ..ConstraintParams::charged(0.2, 0.5, 1.0).unwrap()
        };
        assert!(matches!(charged_masses(&bad), Err(Error::InconsistentParams(_))));
    }

    #[test]
    fn inverse_examples() {
        let p = charged_params_from_masses(MassPair::new(1.0, 1.0), 1.0, Sign::Plus).unwrap();
        assert!((p.alpha_plus * p.alpha_plus - 0.5).abs() < 1e-15);
        let p = charged_params_from_masses(MassPair::new(1.92, 0.48), 1.0, Sign::Minus).unwrap();
        assert!((p.alpha_plus.abs() - 0.6).abs() < 1e-12);
        assert!((p.beta_plus.abs() - 0.4).abs() < 1e-12);
        let m = 1.1f64.sqrt();
        assert!(matches!(
            charged_params_from_masses(MassPair::new(m * m, m * m), 1.0, Sign::Plus),
            Err(Error::MassBoundViolated { .. })
        ));
        assert!(matches!(
            charged_params_from_masses(MassPair::new(0.0, 1.0), 1.0, Sign::Plus),
            Err(Error::NonPositiveMass(..))
        ));
    }

    #[test]
    fn branches() {
        assert_eq!(fermion_alpha_branches(1.0, 1.0, 1.0).unwrap(), (0.5, 0.5));
        let (a, b) = fermion_alpha_branches(1.92f64.sqrt(), 0.48f64.sqrt(), 1.0).unwrap();
        assert!((a - 0.64).abs() < 1e-12 && (b - 0.36).abs() < 1e-12);
        assert!((a * b - 1.92 * 0.48 / 4.0).abs() < 1e-12);
        let (a, b) = fermion_alpha_branches(1e-8, 1e-8, 1.0).unwrap();
        assert!((a - 1.0).abs() < 1e-15 && b > 0.0 && b < 1e-15);
        assert!(matches!(
            fermion_alpha_branches(2.0, 2.0, 1.0),
            Err(Error::MassBoundViolated { .. })
        ));
    }

    #[test]
    fn neutral_examples() {
        let p = ConstraintParams::neutral(0.5, 1.0, 1.0).unwrap();
        assert_eq!(neutral_mass_ratio(&p).unwrap(), -1.25);
        assert!(p.neutral_residual() < 1e-15);
        let m = neutral_masses(&p).unwrap();
        assert!((m.m_plus2 / m.m_minus2 + 1.25).abs() < 1e-15);
        let k = square_oracle(&p, -1.0);
        assert!(k[0][0].abs() < 1e-15 && k[1][1].abs() < 1e-15);
        assert!((k[0][1] - m.m_minus2).abs() < 1e-15);
        assert!((k[1][0] - m.m_plus2).abs() < 1e-15);
        let p0 = ConstraintParams::neutral(0.0, 2.0, 1.0).unwrap();
        assert_eq!(neutral_mass_ratio(&p0).unwrap(), -0.25);
        assert_eq!(ConstraintParams::neutral(0.5, 0.0, 1.0), Err(Error::ZeroBeta));
    }

    #[test]
    fn neutral_alt() {
        assert_eq!(neutral_alt_mass(1.0, 0.3).unwrap(), 0.3);
        assert_eq!(neutral_alt_mass(2.0, 0.25).unwrap(), 1.0);
        assert_eq!(neutral_alt_mass(2.0, -0.25), Err(Error::NegativeMass(-0.25)));
        let lat = Lattice::cubic(2, 1.0, 1.0).unwrap();
        let j = MomentumLatticeField::random(lat, 1, 1);
        let f = MomentumLatticeField::random(lat, 1, 2);
        assert_eq!(neutral_source_transfer(0.0, &j, &f), Err(Error::ZeroAlpha));
        let jm = neutral_source_transfer(2.0, &j, &f).unwrap();
        // α j₋ − j₊ = F
        let back = jm.scaled(Complex64::new(2.0, 0.0)).sub(&j).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-15);
    }

    #[test]
    fn sources_satisfy_consistency() {
        // With (i/M)∂₅φ = Dφ + C the consistency relation must hold with
        // the sources from `charged_sources`. Build φ from C by solving the
        // constraint sitewise: (Q/M − D)φ = C.
        let lat = Lattice::cubic(4, 0.5, 1.0).unwrap();
        let p = ConstraintParams::charged(-0.6, 0.4, 1.0).unwrap();
        let masses = charged_masses(&p).unwrap().masses;
        let base = decompose(&MomentumLatticeField::random(lat, 1, 3));
        let template = extend_spectral(&base, Sign::Plus, 0.0).unwrap();
        let mut phi_p = template.clone();
        let mut phi_m = template.clone();
        let c_p = SpectralField5D {
            amplitudes: MomentumLatticeField::random(lat, 1, 4),
            ..template.clone()
        };
        let c_m = SpectralField5D {
            amplitudes: MomentumLatticeField::random(lat, 1, 5),
            ..template.clone()
        };
        for s in 0..lat.num_sites() {
            let w = template.q5[s] / p.mass;
            let a = [[w - p.alpha_plus, -p.beta_plus], [-p.alpha_minus, w - p.beta_minus]];
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            let (x, y) = (c_p.amplitudes.site(s)[0], c_m.amplitudes.site(s)[0]);
            phi_p.amplitudes.site_mut(s)[0] = (x * a[1][1] - y * a[0][1]) / det;
            phi_m.amplitudes.site_mut(s)[0] = (y * a[0][0] - x * a[1][0]) / det;
        }
        for x5 in [0.0, 0.9] {
            let (jp, jm) = charged_sources(&p, &c_p, &c_m, x5).unwrap();
            let m2 = p.mass * p.mass;
            for s in 0..lat.num_sites() {
                let q = template.q5[s];
                let ph = template.phase(s, x5);
                let fp = phi_p.amplitudes.site(s)[0] * ph;
                let fm = phi_m.amplitudes.site(s)[0] * ph;
                let lhs_p = fp * (m2 - q * q);
                let lhs_m = fm * (m2 - q * q);
                let scale = 1.0 + fp.norm() + fm.norm();
                assert!((lhs_p - (fm * masses.m_minus2 - jm.site(s)[0])).norm() < 1e-10 * scale);
                assert!((lhs_m - (fp * masses.m_plus2 - jp.site(s)[0])).norm() < 1e-10 * scale);
            }
        }
    }

    #[test]
    fn charged_constraint_checker() {
        let lat = Lattice::cubic(4, 0.5, 1.0).unwrap();
        let masses = MassPair::new(1.3, 0.7);
        let d = decompose(&MomentumLatticeField::random(lat, 1, 7));
        let phi_p = extend_spectral(&d, Sign::Plus, 0.0).unwrap();
        let phi_m = extend_spectral(&d, Sign::Minus, 0.0).unwrap();
        let m = lat.mass;
        let c_of = |phi: &SpectralField5D| SpectralField5D {
            amplitudes: phi.apply_symbol_at(phi.t5, |q| Complex64::new(1.0 - q / m, 0.0)),
            ..phi.clone()
        };
        let (c_p, c_m) = (c_of(&phi_p), c_of(&phi_m));
        // j± = m±²φ± − M²(1 + Q/M)C∓
        let j_of = |phi: &SpectralField5D, c: &SpectralField5D, m2: f64| SpectralField5D {
            amplitudes: phi
                .amplitudes
                .scaled(Complex64::new(m2, 0.0))
                .sub(&c.apply_symbol_at(c.t5, |q| Complex64::new(m * m * (1.0 + q / m), 0.0)))
                .unwrap(),
            ..phi.clone()
        };
        let j_p = j_of(&phi_p, &c_m, masses.m_plus2);
        let j_m = j_of(&phi_m, &c_p, masses.m_minus2);
        let x5s = [0.0, 0.4, 2.0];
        let r = check_charged_constraint([&phi_p, &phi_m], [&c_p, &c_m], [&j_p, &j_m], masses, &x5s, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        let wrong = MassPair::new(1.0, 0.7);
        assert!(
            !check_charged_constraint([&phi_p, &phi_m], [&c_p, &c_m], [&j_p, &j_m], wrong, &x5s, 1e-10)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn a5_examples() {
        let kappa = embed(&FourMomentum::new(0.3, 0.1, -0.2, 0.4), 1.5, 1.0).unwrap();
        let z = [Complex64::new(0.0, 0.0); 4];
        assert_eq!(a5_from_a4(&z, &kappa, 0.7).unwrap().a5, Complex64::new(0.0, 0.0));
        let a = [0.2, -0.5, 0.1, 0.3];
        let ac = a.map(|x| Complex64::new(x, 0.0));
        let r = a5_from_a4(&ac, &kappa, 0.0).unwrap();
        assert!((r.a5.re - a5_linear(&a, &kappa)).abs() < 1e-15);
        for e in [0.0, 0.3, -1.2] {
            let shifted = shifted_point(&a, &kappa, e).unwrap();
            assert!(cone_form(&shifted).abs() < 1e-12);
            assert!((shifted.kplus() - kappa.kplus()).abs() < 1e-14);
            let ratio = a5_from_a4(&ac, &kappa, e).unwrap().kminus_ratio.re;
            assert!((shifted.kminus() / shifted.kplus() - ratio).abs() < 1e-12);
        }
        let degenerate = ConePoint::new_unchecked([0.0; 4], 1.0, -1.0, 1.0);
        assert!(matches!(
            a5_from_a4(&ac, &degenerate, 0.1),
            Err(Error::DegenerateScale(_))
        ));
    }

    #[test]
    fn couplings() {
        let (g, gp) = electroweak_couplings(0.3);
        assert!(((0.3 / g).powi(2) - WEAK_MIXING_SIN2).abs() < 1e-15);
        assert!(((0.3 / gp).powi(2) + WEAK_MIXING_SIN2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_shapes() {
        let p = ConstraintParams::charged(-0.6, 0.4, 1.0).unwrap();
        let v = serde_json::to_value(p).unwrap();
        assert!(v.get("M").is_some() && v.get("alpha_plus").is_some());
        let r = serde_json::to_value(charged_masses(&p).unwrap()).unwrap();
        for key in ["m_plus2", "m_minus2", "physical"] {
            assert!(r.get(key).is_some());
        }
    }
}
