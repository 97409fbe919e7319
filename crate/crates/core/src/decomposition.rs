//! Domain doubling of lattice fields.
//!
//! A field `φ(q, q₅²)` evaluated on the on-shell `q₅²` of each site's domain
//! is split into the four domain parts `Φ_I..Φ_IV`. The parts recombine into
//! the doubled pair `Φ± = (Φ_I + Φ_III) ± (Φ_II + Φ_IV)` and extend into the
//! fifth dimension as `Σ_N ±Φ_N e^{−iQ_a(x₅ − t₅)}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::{classify, q5_squared_on, DomainLabel, Hyperboloid};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, MomentumLatticeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Weight of domain `label` in `Φ±`.
    pub fn weight(self, label: DomainLabel) -> f64 {
        match label.hyperboloid() {
            Hyperboloid::One => 1.0,
            Hyperboloid::Two => self.factor(),
        }
    }
}

/// The four domain parts of a field.
#[derive(Clone, Debug, PartialEq)]
pub struct DecomposedField {
    parts: [MomentumLatticeField; 4],
}

impl DecomposedField {
    /// Validates that each part is supported only on its own domain.
    pub fn new(parts: [MomentumLatticeField; 4]) -> Result<Self> {
        let d = Self::from_parts_unchecked(parts)?;
        if let Some((label, site)) = d.support_violation() {
            return Err(Error::LatticeMismatch(format!(
                "part {label} is nonzero at site {site} outside its domain"
            )));
        }
        Ok(d)
    }

    /// Only checks that the parts share one lattice layout; support may leak.
    pub fn from_parts_unchecked(parts: [MomentumLatticeField; 4]) -> Result<Self> {
        for p in &parts[1..] {
            parts[0].ensure_compatible(p)?;
        }
        Ok(DecomposedField { parts })
    }

    pub fn part(&self, label: DomainLabel) -> &MomentumLatticeField {
        &self.parts[label.index()]
    }

    pub fn part_mut(&mut self, label: DomainLabel) -> &mut MomentumLatticeField {
        &mut self.parts[label.index()]
    }

    pub fn parts(&self) -> &[MomentumLatticeField; 4] {
        &self.parts
    }

    pub fn lattice(&self) -> &Lattice {
        self.parts[0].lattice()
    }

    pub fn components(&self) -> usize {
        self.parts[0].components()
    }

    pub fn mass(&self) -> f64 {
        self.lattice().mass
    }

    /// First `(part, site)` where a part is nonzero off its domain.
    pub fn support_violation(&self) -> Option<(DomainLabel, usize)> {
        let q2 = self.parts[0].mode_q2();
        let m = self.mass();
        for label in DomainLabel::ALL {
            let p = self.part(label);
            for (s, &q2s) in q2.iter().enumerate() {
                if classify(q2s, m) != label && p.site(s).iter().any(|v| *v != Complex64::new(0.0, 0.0)) {
                    return Some((label, s));
                }
            }
        }
        None
    }

    /// `Φ_I + Φ_II + Φ_III + Φ_IV`.
    pub fn reconstruct(&self) -> MomentumLatticeField {
        let mut out = self.parts[0].clone();
        for p in &self.parts[1..] {
            for (o, v) in out.values_mut().iter_mut().zip(p.values()) {
                *o += v;
            }
        }
        out
    }

    pub fn map_parts(&self, f: impl Fn(&MomentumLatticeField) -> MomentumLatticeField) -> Result<Self> {
        Self::from_parts_unchecked([
            f(&self.parts[0]),
            f(&self.parts[1]),
            f(&self.parts[2]),
            f(&self.parts[3]),
        ])
    }

    pub fn sup_norm(&self) -> f64 {
        self.parts.iter().map(|p| p.sup_norm()).fold(0.0, f64::max)
    }
}

/// Splits `f` into its domain parts.
pub fn decompose(f: &MomentumLatticeField) -> DecomposedField {
    let m = f.lattice().mass;
    let part = |label: DomainLabel| {
        f.map_sites(|_, q2, src, dst| {
            if classify(q2, m) == label {
                dst.copy_from_slice(src);
            }
        })
    };
    DecomposedField {
        parts: [
            part(DomainLabel::I),
            part(DomainLabel::II),
            part(DomainLabel::III),
            part(DomainLabel::IV),
        ],
    }
}

/// `Φ± = (Φ_I + Φ_III) ± (Φ_II + Φ_IV)` sitewise.
pub fn assemble_pm(d: &DecomposedField, sign: Sign) -> MomentumLatticeField {
    let mut out = MomentumLatticeField::zeros(*d.lattice(), d.components());
    for label in DomainLabel::ALL {
        let w = sign.weight(label);
        for (o, v) in out.values_mut().iter_mut().zip(d.part(label).values()) {
            *o += v * w;
        }
    }
    out
}

/// `(Φ₊ + Φ₋)/2` and `(Φ₊ − Φ₋)/2`: the hyperboloid-1 and hyperboloid-2 halves.
pub fn split_components(
    plus: &MomentumLatticeField,
    minus: &MomentumLatticeField,
) -> Result<(MomentumLatticeField, MomentumLatticeField)> {
    Ok((
        plus.zip_with(minus, |a, b| (a + b) * 0.5)?,
        plus.zip_with(minus, |a, b| (a - b) * 0.5)?,
    ))
}

/// On-shell fifth momentum `Q_a = √(Q_a²)` of every site, from its own domain.
pub fn site_q5(lattice: &Lattice) -> Result<Vec<f64>> {
    let m = lattice.mass;
    lattice
        .mode_q2()
        .into_iter()
        .enumerate()
        .map(|(s, q2)| {
            let q5sq = q5_squared_on(classify(q2, m).hyperboloid(), q2, m);
            if q5sq < 0.0 {
                Err(Error::NegativeQ5Squared(q5sq, s))
            } else {
                Ok(q5sq.sqrt())
            }
        })
        .collect()
}

/// A 5D field in mixed representation: `φ(q, x₅) = A(q) e^{−iQ(q)(x₅ − t₅)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField5D {
    pub amplitudes: MomentumLatticeField,
    /// Fifth momentum per site; the `x₅` derivative acts as `−iQ`.
    pub q5: Vec<f64>,
    pub t5: f64,
}

impl SpectralField5D {
    pub fn lattice(&self) -> &Lattice {
        self.amplitudes.lattice()
    }

    pub fn phase(&self, site: usize, x5: f64) -> Complex64 {
        let shift = x5 - self.t5;
        if shift == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, -self.q5[site] * shift)
        }
    }

    /// Sample at `x₅`.
    pub fn at(&self, x5: f64) -> MomentumLatticeField {
        self.amplitudes.map_sites(|s, _, src, dst| {
            let ph = self.phase(s, x5);
            for (d, v) in dst.iter_mut().zip(src) {
                *d = v * ph;
            }
        })
    }

    /// Applies `g(Q)` sitewise at `x₅`: the symbol of a polynomial in `∂₅`.
    pub fn apply_symbol_at(&self, x5: f64, g: impl Fn(f64) -> Complex64) -> MomentumLatticeField {
        self.amplitudes.map_sites(|s, _, src, dst| {
            let w = self.phase(s, x5) * g(self.q5[s]);
            for (d, v) in dst.iter_mut().zip(src) {
                *d = v * w;
            }
        })
    }
}

/// `φ±` of `d` as a spectral 5D field with boundary offset `t5`.
pub fn extend_spectral(d: &DecomposedField, sign: Sign, t5: f64) -> Result<SpectralField5D> {
    Ok(SpectralField5D {
        amplitudes: assemble_pm(d, sign),
        q5: site_q5(d.lattice())?,
        t5,
    })
}

/// `φ±(q, x₅) = Σ_N ±Φ_N(q) e^{−iQ_a(x₅ − t₅)}`; equals [`assemble_pm`] at
/// `x₅ = t₅`.
pub fn extend_5d(d: &DecomposedField, x5: f64, sign: Sign, t5: f64) -> Result<MomentumLatticeField> {
    Ok(extend_spectral(d, sign, t5)?.at(x5))
}

/// Momentum-space projector `P_a`: multiplication by `Λ_a(q²)`.
pub fn projector_apply(a: Hyperboloid, f: &MomentumLatticeField) -> MomentumLatticeField {
    let m = f.lattice().mass;
    f.map_sites(|_, q2, src, dst| {
        if classify(q2, m).hyperboloid() == a {
            dst.copy_from_slice(src);
        }
    })
}

/// κ₊-dependence of the 6D field used when reducing to 5D.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleProfile {
    /// `ς = δ(κ₊ − 𝓜)·ς(𝓜)`.
    DeltaAt(f64),
    /// `ς = θ(κ₊ − 𝓜)·ς(𝓜)` over the tabulated range.
    ThetaAbove(f64),
    /// Use the tabulated samples as they are.
    Tabulated,
}

/// `ς(q, q₅², κ₊)` for one `(q, q₅²)` tabulated on an ascending κ₊ grid.
#[derive(Clone, Debug, PartialEq)]
pub struct KPlusTable {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl KPlusTable {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if grid.len() != values.len() {
            return Err(Error::Format(format!(
                "grid has {} points but {} samples",
                grid.len(),
                values.len()
            )));
        }
        if let Some(&k) = grid.iter().find(|k| !(**k >= 0.0)) {
            return Err(Error::NonPositiveKPlus(k));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::UnsortedGrid);
        }
        Ok(KPlusTable { grid, values })
    }

    pub fn from_fn(grid: Vec<f64>, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.iter().map(|&k| f(k)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Linear interpolation inside the grid.
    pub fn interpolate(&self, k: f64) -> Result<Complex64> {
        let g = &self.grid;
        if !(k >= g[0] && k <= g[g.len() - 1]) {
            return Err(Error::OutsideGrid(k));
        }
        let hi = g.partition_point(|&x| x < k);
        if hi == 0 || g[hi] == k {
            return Ok(self.values[hi]);
        }
        let (x0, x1) = (g[hi - 1], g[hi]);
        let t = (k - x0) / (x1 - x0);
        Ok(self.values[hi - 1] * (1.0 - t) + self.values[hi] * t)
    }
}

/// `φ(q, q₅²) = (M²/2) ∫ κ₊³ θ(κ₊) ς(q, q₅², κ₊) dκ₊` on the tabulated grid.
pub fn reduce_6d(table: &KPlusTable, profile: ScaleProfile, mass: f64) -> Result<Complex64> {
    let pref = 0.5 * mass * mass;
    match profile {
        ScaleProfile::Tabulated => {
            let g = &table.grid;
            let v = &table.values;
            let sum = g
                .windows(2)
                .zip(v.windows(2))
                .map(|(k, s)| (s[0] * k[0].powi(3) + s[1] * k[1].powi(3)) * (0.5 * (k[1] - k[0])))
                .fold(Complex64::new(0.0, 0.0), |a, b| a + b);
            Ok(sum * pref)
        }
        ScaleProfile::DeltaAt(scale) => {
            if !(scale > 0.0) {
                return Err(Error::InvalidProfile(scale));
            }
            Ok(table.interpolate(scale)? * (pref * scale.powi(3)))
        }
        ScaleProfile::ThetaAbove(scale) => {
            if !(scale > 0.0) {
                return Err(Error::InvalidProfile(scale));
            }
            let at = table.interpolate(scale)?;
            let top = table.grid[table.grid.len() - 1];
            Ok(at * (pref * (top.powi(4) - scale.powi(4)) / 4.0))
        }
    }
}

/// Reduces a per-site table to a lattice field (one component).
pub fn reduce_6d_field(
    lattice: Lattice,
    profile: ScaleProfile,
    mut table_at: impl FnMut(usize) -> Result<KPlusTable>,
) -> Result<MomentumLatticeField> {
    let values = (0..lattice.num_sites())
        .map(|s| reduce_6d(&table_at(s)?, profile, lattice.mass))
        .collect::<Result<Vec<_>>>()?;
    MomentumLatticeField::from_values(lattice, 1, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice() -> Lattice {
        Lattice::cubic(4, 0.5, 1.0).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn decompose_constant_gives_indicators() {
        let f = MomentumLatticeField::from_fn(lattice(), 1, |_, _| one());
        let d = decompose(&f);
        for label in DomainLabel::ALL {
            for (s, &q2) in f.mode_q2().iter().enumerate() {
                let expect = if classify(q2, 1.0) == label { 1.0 } else { 0.0 };
                assert_eq!(d.part(label).values()[s], Complex64::new(expect, 0.0));
            }
        }
        assert_eq!(d.reconstruct(), f);
        assert!(d.support_violation().is_none());
    }

    #[test]
    fn single_site_in_domain_two() {
        // q = (1.5, 0.5, 0, 0): q² = 2 = 2M².
        let lat = Lattice::new([8, 8, 2, 2], [0.5; 4], 1.0).unwrap();
        let s = lat.site_of_mode([3, 1, 0, 0]);
        assert_eq!(lat.momentum(s).minkowski_square(), 2.0);
        let mut f = MomentumLatticeField::zeros(lat, 1);
        f.values_mut()[s] = Complex64::new(0.3, -0.2);
        let d = decompose(&f);
        for label in DomainLabel::ALL {
            let nonzero = d.part(label).sup_norm() > 0.0;
            assert_eq!(nonzero, label == DomainLabel::II);
        }
    }

    #[test]
    fn assemble_sign_pattern() {
        let f = MomentumLatticeField::from_fn(lattice(), 1, |_, _| one());
        let d = decompose(&f);
        let plus = assemble_pm(&d, Sign::Plus);
        let minus = assemble_pm(&d, Sign::Minus);
        assert_eq!(plus, f);
        for (s, &q2) in f.mode_q2().iter().enumerate() {
            let expect = match classify(q2, 1.0).hyperboloid() {
                Hyperboloid::One => 1.0,
                Hyperboloid::Two => -1.0,
            };
            assert_eq!(minus.values()[s], Complex64::new(expect, 0.0));
        }
    }

    #[test]
    fn extend_at_zero_is_assemble() {
        let f = MomentumLatticeField::random(lattice(), 2, 5);
        let d = decompose(&f);
        for sign in [Sign::Plus, Sign::Minus] {
            assert_eq!(extend_5d(&d, 0.0, sign, 0.0).unwrap(), assemble_pm(&d, sign));
            assert_eq!(extend_5d(&d, 0.7, sign, 0.7).unwrap(), assemble_pm(&d, sign));
        }
    }

    #[test]
    fn extend_phase_single_site() {
        // q² = 0.5 with M = 1: Q₁ = √0.5, x₅ = π/√0.5 gives e^{−iπ} = −1.
        let lat = Lattice::cubic(4, 0.5, 1.0).unwrap();
        let s = (0..lat.num_sites())
            .find(|&s| lat.momentum(s).minkowski_square() == 0.5)
            .expect("site with q² = 0.5");
        let mut f = MomentumLatticeField::zeros(lat, 1);
        f.values_mut()[s] = one();
        let d = decompose(&f);
        let x5 = std::f64::consts::PI / 0.5f64.sqrt();
        let e = extend_5d(&d, x5, Sign::Plus, 0.0).unwrap();
        assert!((e.values()[s] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn extend_is_unimodular() {
        let f = MomentumLatticeField::random(lattice(), 1, 9);
        let d = decompose(&f);
        for x5 in [-2.3, 0.4, 11.0] {
            let e = extend_5d(&d, x5, Sign::Minus, 0.1).unwrap();
            for (a, b) in e.values().iter().zip(f.values()) {
                assert!((a.norm() - b.norm()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn projector_algebra() {
        let f = MomentumLatticeField::random(lattice(), 2, 1);
        let p1 = projector_apply(Hyperboloid::One, &f);
        let p2 = projector_apply(Hyperboloid::Two, &f);
        assert_eq!(projector_apply(Hyperboloid::Two, &p1).sup_norm(), 0.0);
        assert_eq!(projector_apply(Hyperboloid::One, &p1), p1);
        assert_eq!(p1.add(&p2).unwrap(), f);
    }

    #[test]
    fn doubling_identity() {
        let f = MomentumLatticeField::random(lattice(), 1, 2);
        let d = decompose(&f);
        let (h1, h2) = split_components(&assemble_pm(&d, Sign::Plus), &assemble_pm(&d, Sign::Minus)).unwrap();
        let one = d.part(DomainLabel::I).add(d.part(DomainLabel::III)).unwrap();
        let two = d.part(DomainLabel::II).add(d.part(DomainLabel::IV)).unwrap();
        assert_eq!(h1, one);
        assert_eq!(h2, two);
    }

    #[test]
    fn unchecked_parts_report_leak() {
        let f = MomentumLatticeField::from_fn(lattice(), 1, |_, _| one());
        let d = decompose(&f);
        let mut parts = d.parts().clone();
        parts.swap(0, 1);
        assert!(DecomposedField::new(parts.clone()).is_err());
        let leaky = DecomposedField::from_parts_unchecked(parts).unwrap();
        assert!(leaky.support_violation().is_some());
    }

    #[test]
    fn reduce_zero_and_delta() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.04).collect();
        let zero = KPlusTable::from_fn(grid.clone(), |_| Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(
            reduce_6d(&zero, ScaleProfile::Tabulated, 1.0).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let c = Complex64::new(0.7, -0.1);
        let t = KPlusTable::from_fn(grid, |_| c).unwrap();
        let r = reduce_6d(&t, ScaleProfile::DeltaAt(2.0), 1.0).unwrap();
        assert!((r - c * 4.0).norm() < 1e-15);
    }

    #[test]
    fn reduce_trapezoid_matches_euler_maclaurin() {
        // Trapezoid of κ³ on uniform [0,1] is exactly 1/4 + h²/4.
        let n = 1000;
        let h = 1.0 / n as f64;
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        let t = KPlusTable::from_fn(grid, |_| one()).unwrap();
        let r = reduce_6d(&t, ScaleProfile::Tabulated, 1.0).unwrap();
        assert!((r.re - 0.5 * (0.25 + h * h / 4.0)).abs() < 1e-14);
        assert!((r.re - 0.125).abs() < 2e-7);
    }

    #[test]
    fn reduce_theta_above() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.3).collect();
        let t = KPlusTable::from_fn(grid, |k| Complex64::new(k, 0.0)).unwrap();
        let r = reduce_6d(&t, ScaleProfile::ThetaAbove(1.5), 2.0).unwrap();
        let expect = 2.0 * 1.5 * (3.0f64.powi(4) - 1.5f64.powi(4)) / 4.0;
        assert!((r.re - expect).abs() < 1e-12);
    }

    #[test]
    fn reduce_errors() {
        assert_eq!(KPlusTable::new(vec![], vec![]), Err(Error::EmptyGrid));
        assert_eq!(
            KPlusTable::new(vec![-0.1, 1.0], vec![one(); 2]),
            Err(Error::NonPositiveKPlus(-0.1))
        );
        assert_eq!(
            KPlusTable::new(vec![1.0, 0.5], vec![one(); 2]),
            Err(Error::UnsortedGrid)
        );
        let t = KPlusTable::new(vec![0.5, 1.0], vec![one(); 2]).unwrap();
        assert_eq!(
            reduce_6d(&t, ScaleProfile::DeltaAt(2.0), 1.0),
            Err(Error::OutsideGrid(2.0))
        );
        assert_eq!(
            reduce_6d(&t, ScaleProfile::DeltaAt(0.0), 1.0),
            Err(Error::InvalidProfile(0.0))
        );
    }
}
