//! Momentum-space equations of motion on the lattice.
//!
//! `(∂² + m²)Φ = J` becomes `(m² − q²)Φ(q) = J(q)`; poles at `q² = m²` are
//! regularized with `−iε` or excised in principal-value mode.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cone::METRIC_4D;
use crate::decomposition::{decompose, DecomposedField};
use crate::error::{Error, Result};
use crate::fourier::{to_momentum, to_position};
use crate::lattice::{MomentumLatticeField, PositionLatticeField};
use crate::verify::ResidualReport;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleRegularization {
    /// Width of the `iε` shift, in units of `M²`.
    pub epsilon: f64,
    /// When set, sites with `|m² − q²| < band` are zeroed instead.
    pub principal_value_band: Option<f64>,
}

impl PoleRegularization {
    pub const DEFAULT_EPSILON: f64 = 1e-6;

    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidRegularization(epsilon));
        }
        Ok(PoleRegularization {
            epsilon,
            principal_value_band: None,
        })
    }

    /// Default width `1e−6·M²`.
    pub fn for_mass(mass: f64) -> Self {
        PoleRegularization {
            epsilon: Self::DEFAULT_EPSILON * mass * mass,
            principal_value_band: None,
        }
    }

    pub fn principal_value(epsilon: f64, band: f64) -> Result<Self> {
        if !(band > 0.0) {
            return Err(Error::InvalidRegularization(band));
        }
        Ok(PoleRegularization {
            principal_value_band: Some(band),
            ..Self::new(epsilon)?
        })
    }

    fn denominator(&self, m2: f64, q2: f64) -> Complex64 {
        Complex64::new(m2 - q2, -self.epsilon)
    }
}

/// `Φ = J/(m² − q² − iε)`, or `J/(m² − q²)` with pole sites zeroed in
/// principal-value mode.
pub fn kg_solve(j: &MomentumLatticeField, m2: f64, reg: &PoleRegularization) -> MomentumLatticeField {
    j.map_sites(|_, q2, src, dst| match reg.principal_value_band {
        Some(band) if (m2 - q2).abs() < band => {}
        Some(_) => dst.iter_mut().zip(src).for_each(|(d, v)| *d = v / (m2 - q2)),
        None => {
            let den = reg.denominator(m2, q2);
            dst.iter_mut().zip(src).for_each(|(d, v)| *d = v / den);
        }
    })
}

/// `(m² − q² − iε)Φ` when `reg` is given (and not in principal-value mode),
/// else `(m² − q²)Φ`.
pub fn kg_forward(phi: &MomentumLatticeField, m2: f64, reg: Option<&PoleRegularization>) -> MomentumLatticeField {
    phi.map_sites(|_, q2, src, dst| {
        let w = match reg {
            Some(r) if r.principal_value_band.is_none() => r.denominator(m2, q2),
            _ => Complex64::new(m2 - q2, 0.0),
        };
        dst.iter_mut().zip(src).for_each(|(d, v)| *d = v * w);
    })
}

/// Splits an on-shell source `𝒥` into its domain parts.
pub fn source_decompose(j_full: &MomentumLatticeField) -> DecomposedField {
    decompose(j_full)
}

/// `J = aΦ² + bΦ³`, with products taken pointwise in position space.
pub fn phi4_source(phi: &MomentumLatticeField, a: f64, b: f64) -> MomentumLatticeField {
    let mut x = to_position(phi);
    x.values_mut().iter_mut().for_each(|v| {
        let p = *v;
        *v = p * p * a + p * p * p * b;
    });
    to_momentum(&x)
}

/// `Φ'(x) = e^{ih·x}Φ(x)` with the Minkowski product and complex `h`.
///
/// A real field only admits `h = i·r`, giving the damping `e^{−r·x}`.
pub fn gauge_translate(f: &PositionLatticeField, h: [Complex64; 4]) -> Result<PositionLatticeField> {
    if f.is_real() {
        if let Some(i) = h.iter().position(|c| c.re != 0.0) {
            return Err(Error::RealityViolation(i));
        }
    }
    let lat = *f.lattice();
    let c = f.components();
    let mut out = f.clone();
    for s in 0..lat.num_sites() {
        let x = lat.position(s);
        let hx: Complex64 = (0..4).map(|a| h[a] * (METRIC_4D[a] * x[a])).sum();
        let w = (Complex64::i() * hx).exp();
        let w = if f.is_real() { Complex64::new(w.re, 0.0) } else { w };
        out.values_mut()[s * c..(s + 1) * c].iter_mut().for_each(|v| *v *= w);
    }
    Ok(out.with_reality(f.is_real()))
}

/// `g(k) = f(k + shift)` on centered modes, wrapped periodically.
pub fn shift_spectrum(f: &MomentumLatticeField, shift: [i64; 4]) -> MomentumLatticeField {
    let lat = *f.lattice();
    f.map_sites(|s, _, _, dst| {
        let k = lat.mode(s);
        let src = lat.site_of_mode(std::array::from_fn(|a| k[a] + shift[a]));
        dst.copy_from_slice(f.site(src));
    })
}

pub type Matrix4 = [[Complex64; 4]; 4];

/// Dirac-representation `γ⁰ = diag(1, 1, −1, −1)`, `γᵏ = [[0, σᵏ], [−σᵏ, 0]]`.
pub fn gamma_matrices() -> [Matrix4; 4] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let sigma = [[[z, o], [o, z]], [[z, -i], [i, z]], [[o, z], [z, -o]]];
    let mut g = [[[z; 4]; 4]; 4];
    for (k, row) in g[0].iter_mut().enumerate() {
        row[k] = if k < 2 { o } else { -o };
    }
    for (k, s) in sigma.iter().enumerate() {
        for r in 0..2 {
            for c in 0..2 {
                g[k + 1][r][c + 2] = s[r][c];
                g[k + 1][r + 2][c] = -s[r][c];
            }
        }
    }
    g
}

/// `γ^μ v_μ = γ⁰v⁰ − γᵏvᵏ` for a contravariant `v`.
pub fn slash(v: [Complex64; 4]) -> Matrix4 {
    let g = gamma_matrices();
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] += g[mu][r][c] * v[mu] * METRIC_4D[mu];
            }
        }
    }
    out
}

fn apply(m: &Matrix4, v: &[Complex64]) -> [Complex64; 4] {
    std::array::from_fn(|r| (0..4).map(|c| m[r][c] * v[c]).sum())
}

/// Position-space field `(iγ^μ∂_μ − eγ^μA_μ − m)Ψ`.
///
/// `∂_μ` acts spectrally (`iγ^μ∂_μ → γ^μq_μ`); `A` holds the contravariant
/// components `A^μ` and multiplies pointwise.
pub fn dirac_operator(
    psi: &MomentumLatticeField,
    a: &[PositionLatticeField; 4],
    m: f64,
    e: f64,
) -> Result<PositionLatticeField> {
    if psi.components() != 4 {
        return Err(Error::LatticeMismatch(format!(
            "spinor needs 4 components, got {}",
            psi.components()
        )));
    }
    for f in a {
        psi.lattice().ensure_same(f.lattice())?;
        if f.components() != 1 {
            return Err(Error::LatticeMismatch("gauge field components must be scalar".into()));
        }
    }
    let lat = *psi.lattice();
    let kinetic = psi.map_sites(|s, _, src, dst| {
        let q = lat.momentum(s).0.map(|x| Complex64::new(x, 0.0));
        dst.copy_from_slice(&apply(&slash(q), src));
    });
    let mut out = to_position(&kinetic);
    let psi_x = to_position(psi);
    for s in 0..lat.num_sites() {
        let av: [Complex64; 4] = std::array::from_fn(|mu| a[mu].values()[s]);
        let v = psi_x.site(s);
        let ga = apply(&slash(av), v);
        for k in 0..4 {
            out.values_mut()[s * 4 + k] -= ga[k] * e + v[k] * m;
        }
    }
    Ok(out)
}

/// Norms of [`dirac_operator`]; passes when `linf ≤ tol`.
pub fn dirac_residual(
    psi: &MomentumLatticeField,
    a: &[PositionLatticeField; 4],
    m: f64,
    e: f64,
    tol: f64,
) -> Result<ResidualReport> {
    let r = dirac_operator(psi, a, m, e)?;
    Ok(ResidualReport::from_residuals(
        "dirac",
        r.values().iter().map(|v| v.norm()),
        tol,
    ))
}

/// Four zero gauge-field components on `lattice`.
pub fn zero_gauge(lattice: crate::lattice::Lattice) -> [PositionLatticeField; 4] {
    std::array::from_fn(|_| PositionLatticeField::from_fn(lattice, 1, |_, _| Complex64::new(0.0, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn lat() -> Lattice {
        Lattice::cubic(4, 0.25, 1.0).unwrap()
    }

    #[test]
    fn kg_examples() {
        let reg = PoleRegularization::for_mass(1.0);
        let z = MomentumLatticeField::zeros(lat(), 1);
        assert_eq!(kg_solve(&z, 1.0, &reg).sup_norm(), 0.0);

        let l = lat();
        let origin = l.site_of_mode([0; 4]);
        let mut j = MomentumLatticeField::zeros(l, 1);
        j.values_mut()[origin] = Complex64::new(0.5, 0.0);
        let phi = kg_solve(&j, 1.0, &reg);
        assert!((phi.values()[origin] - Complex64::new(0.5, 0.0)).norm() < 1e-6);

        // q = (0.25, 0, 0, 0): q² = 1/16 = m².
        let s = l.site_of_mode([1, 0, 0, 0]);
        let mut j = MomentumLatticeField::zeros(l, 1);
        j.values_mut()[s] = Complex64::new(2.0, 0.0);
        let phi = kg_solve(&j, 0.0625, &reg);
        assert!((phi.values()[s].norm() - 2.0 / reg.epsilon).abs() < 1e-6 * 2.0 / reg.epsilon);
    }

    #[test]
    fn kg_reconstruction() {
        let j = MomentumLatticeField::random(lat(), 2, 9);
        let reg = PoleRegularization::for_mass(1.0);
        let m2 = 0.0625;
        let phi = kg_solve(&j, m2, &reg);
        let back = kg_forward(&phi, m2, Some(&reg));
        for s in 0..j.num_sites() {
            for k in 0..2 {
                let (a, b) = (back.site(s)[k], j.site(s)[k]);
                assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
            }
        }
        // Unregularized forward operator: off by ε/|m² − q²| at most.
        let raw = kg_forward(&phi, m2, None);
        for (s, &q2) in j.mode_q2().iter().enumerate() {
            let d = (m2 - q2).abs();
            if d > 1e3 * reg.epsilon {
                let (a, b) = (raw.site(s)[0], j.site(s)[0]);
                assert!((a - b).norm() <= 1.01 * reg.epsilon / d * b.norm() + 1e-15);
            }
        }
        let pv = PoleRegularization::principal_value(1e-6, 1e-3).unwrap();
        let phi = kg_solve(&j, m2, &pv);
        let back = kg_forward(&phi, m2, Some(&pv));
        for (s, &q2) in j.mode_q2().iter().enumerate() {
            if (m2 - q2).abs() < 1e-3 {
                assert_eq!(phi.site(s)[0], Complex64::new(0.0, 0.0));
            } else {
                assert!((back.site(s)[0] - j.site(s)[0]).norm() <= 1e-12 * j.site(s)[0].norm().max(1.0));
            }
        }
        assert!(PoleRegularization::new(0.0).is_err());
    }

    #[test]
    fn source_parts() {
        let l = Lattice::new([8, 8, 2, 2], [0.5, 0.5, 1.0, 1.0], 1.0).unwrap();
        // q = (0.5, 1.5, 0, 0): q² = −2.
        let s = l.site_of_mode([1, 3, 0, 0]);
        assert_eq!(l.momentum(s).minkowski_square(), -2.0);
        let mut j = MomentumLatticeField::zeros(l, 1);
        j.values_mut()[s] = Complex64::new(1.0, 0.0);
        let d = source_decompose(&j);
        for label in crate::domain::DomainLabel::ALL {
            assert_eq!(d.part(label).sup_norm() > 0.0, label == crate::domain::DomainLabel::III);
        }
    }

    #[test]
    fn phi4_matches_direct_products() {
        let l = Lattice::cubic(4, 0.5, 1.0).unwrap();
        let phi = MomentumLatticeField::random(l, 1, 2);
        let j = phi4_source(&phi, 0.3, -0.7);
        let x = to_position(&phi);
        let jx = to_position(&j);
        for (p, v) in x.values().iter().zip(jx.values()) {
            let expect = p * p * 0.3 - p * p * p * 0.7;
            assert!((expect - v).norm() < 1e-12);
        }
    }

    #[test]
    fn gauge_identity_and_inverse() {
        let l = lat();
        let f = to_position(&MomentumLatticeField::random(l, 2, 3));
        let zero = [Complex64::new(0.0, 0.0); 4];
        assert_eq!(gauge_translate(&f, zero).unwrap(), f);
        let h = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.0),
            Complex64::new(0.0, 0.4),
            Complex64::new(1.1, -0.2),
        ];
        let back = gauge_translate(&gauge_translate(&f, h).unwrap(), h.map(|c| -c)).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
    }

    #[test]
    fn gauge_shift_duality() {
        let l = Lattice::new([4, 6, 4, 8], [0.3, 0.2, 0.5, 0.25], 1.0).unwrap();
        let f = MomentumLatticeField::random(l, 1, 4);
        let mode = [1, -2, 1, 3];
        let h: [Complex64; 4] = std::array::from_fn(|a| Complex64::new(mode[a] as f64 * l.spacing[a], 0.0));
        let shifted = to_momentum(&gauge_translate(&to_position(&f), h).unwrap());
        let expect = shift_spectrum(&f, mode);
        assert!(shifted.max_abs_diff(&expect).unwrap() < 1e-10);
    }

    #[test]
    fn gauge_real_field() {
        let l = lat();
        let vals: Vec<f64> = (0..l.num_sites()).map(|i| (i as f64 * 0.37).sin()).collect();
        let f = PositionLatticeField::from_real(l, 1, vals).unwrap();
        assert_eq!(
            gauge_translate(
                &f,
                [
                    Complex64::new(0.1, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0)
                ]
            ),
            Err(Error::RealityViolation(0))
        );
        let r = [0.1, -0.2, 0.05, 0.0];
        let out = gauge_translate(&f, r.map(|x| Complex64::new(0.0, x))).unwrap();
        assert!(out.is_real());
        for s in 0..l.num_sites() {
            let x = l.position(s);
            let rx: f64 = (0..4).map(|a| METRIC_4D[a] * r[a] * x[a]).sum();
            let expect = (-rx).exp() * f.values()[s].re;
            assert!((out.values()[s].re - expect).abs() < 1e-12 * expect.abs().max(1.0));
            assert_eq!(out.values()[s].im, 0.0);
        }
    }

    #[test]
    fn clifford_algebra() {
        let g = gamma_matrices();
        for mu in 0..4 {
            for nu in 0..4 {
                for r in 0..4 {
                    for c in 0..4 {
                        let ac: Complex64 = (0..4)
                            .map(|k| g[mu][r][k] * g[nu][k][c] + g[nu][r][k] * g[mu][k][c])
                            .sum();
                        let expect = if mu == nu && r == c { 2.0 * METRIC_4D[mu] } else { 0.0 };
                        assert_eq!(ac, Complex64::new(expect, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn dirac_rest_spinor() {
        let l = Lattice::cubic(8, 0.25, 1.0).unwrap();
        let m = 0.5;
        let s = l.site_of_mode([2, 0, 0, 0]);
        let mut psi = MomentumLatticeField::zeros(l, 4);
        psi.site_mut(s)[0] = Complex64::new(1.0, 0.0);
        let r = dirac_residual(&psi, &zero_gauge(l), m, 0.3, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        let zero = MomentumLatticeField::zeros(l, 4);
        assert_eq!(dirac_residual(&zero, &zero_gauge(l), m, 0.3, 0.0).unwrap().linf, 0.0);
    }

    #[test]
    fn dirac_planted_residual() {
        // (q̸ − m)ψ = r  ⇔  ψ = (q̸ + m) r/(q² − m²).
        let l = lat();
        let m = 0.3;
        let r = MomentumLatticeField::random(l, 4, 6);
        let psi = r.map_sites(|s, q2, src, dst| {
            let q = l.momentum(s).0.map(|x| Complex64::new(x, 0.0));
            let mut op = slash(q);
            for (k, row) in op.iter_mut().enumerate() {
                row[k] += m;
            }
            let v = apply(&op, src);
            for (d, x) in dst.iter_mut().zip(v) {
                *d = x / (q2 - m * m);
            }
        });
        let report = dirac_residual(&psi, &zero_gauge(l), m, 0.0, 1e-10).unwrap();
        let planted = to_position(&r);
        let norm = planted.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!((report.linf - norm).abs() < 1e-10);
        let field = dirac_operator(&psi, &zero_gauge(l), m, 0.0).unwrap();
        assert!(field.max_abs_diff(&planted).unwrap() < 1e-10);
    }

    #[test]
    fn dirac_gauge_term_is_pointwise() {
        // Constant A = (a, 0, 0, 0) shifts the energy: q̸ − eγ⁰a.
        let l = Lattice::cubic(8, 0.25, 1.0).unwrap();
        let m = 0.5;
        let e = 0.25;
        let a0 = 1.0;
        let mut gauge = zero_gauge(l);
        gauge[0] = PositionLatticeField::from_fn(l, 1, |_, _| Complex64::new(a0, 0.0));
        // (q⁰ − e a⁰) = m with q⁰ = 0.75.
        let s = l.site_of_mode([3, 0, 0, 0]);
        let mut psi = MomentumLatticeField::zeros(l, 4);
        psi.site_mut(s)[1] = Complex64::new(1.0, 0.0);
        assert!(dirac_residual(&psi, &gauge, m, e, 1e-10).unwrap().pass);
        assert!(!dirac_residual(&psi, &zero_gauge(l), m, e, 1e-10).unwrap().pass);
    }
}
