//! Four-momenta, points on the 6D cone and the conformal group acting on both.
//!
//! A four-momentum `q` is embedded on the null cone
//! `κ_μκ^μ + κ₅² − κ₆² = 0` through `κ_μ = q_μ κ₊` and
//! `κ₋ = −q² κ₊ / M²`, where `κ± = (κ₅ ± κ₆)/M`. Every conformal map of `q`
//! (translation, Lorentz rotation, dilatation, inversion and their
//! compositions) is then a linear map of the six components, and
//! `q = κ_μ/κ₊` recovers the transformed momentum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `g = diag(+,−,−,−)`.
pub const METRIC_4D: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// `g = diag(+,−,−,−,+,−)` over `(κ₀, κ₁, κ₂, κ₃, κ₅, κ₆)`.
pub const METRIC_6D: [f64; 6] = [1.0, -1.0, -1.0, -1.0, 1.0, -1.0];

/// A four-momentum `q^μ = (q0, q1, q2, q3)` in units of `M`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourMomentum(pub [f64; 4]);

impl FourMomentum {
    pub const ZERO: FourMomentum = FourMomentum([0.0; 4]);

    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        FourMomentum([q0, q1, q2, q3])
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    /// Minkowski product with `diag(+,−,−,−)`.
    pub fn dot(&self, other: &FourMomentum) -> f64 {
        minkowski_dot(&self.0, &other.0)
    }

    pub fn minkowski_square(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, s: f64) -> Self {
        FourMomentum(self.0.map(|c| c * s))
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl std::ops::Add for FourMomentum {
    type Output = FourMomentum;
    fn add(self, rhs: FourMomentum) -> FourMomentum {
        FourMomentum(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl std::ops::Sub for FourMomentum {
    type Output = FourMomentum;
    fn sub(self, rhs: FourMomentum) -> FourMomentum {
        FourMomentum(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl std::ops::Neg for FourMomentum {
    type Output = FourMomentum;
    fn neg(self) -> FourMomentum {
        FourMomentum(self.0.map(|c| -c))
    }
}

pub(crate) fn minkowski_dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// `q0² − q1² − q2² − q3²`.
pub fn minkowski_square(q: &FourMomentum) -> f64 {
    q.minkowski_square()
}

/// Tolerances shared by the cone operations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeConfig {
    /// Relative on-cone tolerance: `|cone_form| ≤ tol·(1 + ‖κ‖²)`.
    pub on_cone_tol: f64,
    /// Below this magnitude `κ₊`, `q²` and the special-conformal
    /// denominator are treated as zero.
    pub scale_epsilon: f64,
    /// Reject inversions that would produce `κ₊ ≤ 0` instead of returning
    /// the projectively equivalent representative `−κ_A`.
    pub strict_inversion: bool,
}

impl Default for ConeConfig {
    fn default() -> Self {
        ConeConfig {
            on_cone_tol: 1e-12,
            scale_epsilon: 1e-14,
            strict_inversion: false,
        }
    }
}

/// A point `κ_A` on (or near) the 6D cone together with its scale `M`.
///
/// The two extra coordinates are held as the light-cone pair `(κ₊, κ₋)` so
/// that transformations leaving `κ₊` alone preserve it bit for bit; `κ₅`
/// and `κ₆` are derived. Points built through [`ConePoint::new`] or
/// [`embed`] always carry `κ₊ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    pub kappa: [f64; 4],
    kplus: f64,
    kminus: f64,
    pub mass: f64,
}

impl ConePoint {
    pub fn new(kappa: [f64; 4], k5: f64, k6: f64, mass: f64) -> Result<Self> {
        let p = Self::new_unchecked(kappa, k5, k6, mass);
        if !(mass > 0.0) || !(p.kplus > 0.0) {
            return Err(Error::NonPositiveScale { kplus: p.kplus, mass });
        }
        Ok(p)
    }

    /// Builds a point without enforcing `κ₊ > 0`.
    pub fn new_unchecked(kappa: [f64; 4], k5: f64, k6: f64, mass: f64) -> Self {
        ConePoint {
            kappa,
            kplus: (k5 + k6) / mass,
            kminus: (k5 - k6) / mass,
            mass,
        }
    }

    /// Builds a point from `κ_μ` and the light-cone pair `(κ₊, κ₋)`.
    pub fn from_light_cone(kappa: [f64; 4], kplus: f64, kminus: f64, mass: f64) -> Self {
        ConePoint {
            kappa,
            kplus,
            kminus,
            mass,
        }
    }

    pub fn kplus(&self) -> f64 {
        self.kplus
    }

    pub fn kminus(&self) -> f64 {
        self.kminus
    }

    /// `κ₅ = M(κ₊ + κ₋)/2`.
    pub fn k5(&self) -> f64 {
        0.5 * self.mass * (self.kplus + self.kminus)
    }

    /// `κ₆ = M(κ₊ − κ₋)/2`.
    pub fn k6(&self) -> f64 {
        0.5 * self.mass * (self.kplus - self.kminus)
    }

    /// Components ordered `(κ₀, κ₁, κ₂, κ₃, κ₅, κ₆)`.
    pub fn components(&self) -> [f64; 6] {
        let k = self.kappa;
        [k[0], k[1], k[2], k[3], self.k5(), self.k6()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components().iter().map(|c| c * c).sum()
    }

    fn negated(&self) -> Self {
        ConePoint {
            kappa: self.kappa.map(|c| -c),
            kplus: -self.kplus,
            kminus: -self.kminus,
            mass: self.mass,
        }
    }

    /// `κ₊ ↔ κ₋`, i.e. `κ₆ → −κ₆`.
    fn swapped(&self) -> Self {
        ConePoint {
            kplus: self.kminus,
            kminus: self.kplus,
            ..*self
        }
    }
}

/// `κ_μκ^μ + κ₅² − κ₆²`, evaluated as `κ_μκ^μ + M²κ₊κ₋`.
pub fn cone_form(k: &ConePoint) -> f64 {
    minkowski_dot(&k.kappa, &k.kappa) + k.mass * k.mass * k.kplus * k.kminus
}

fn on_cone_bound(k: &ConePoint, cfg: &ConeConfig) -> f64 {
    cfg.on_cone_tol * (1.0 + k.norm_sqr())
}

/// Places `q` on the cone at projective scale `kplus`.
pub fn embed(q: &FourMomentum, kplus: f64, mass: f64) -> Result<ConePoint> {
    if !(kplus > 0.0) || !(mass > 0.0) {
        return Err(Error::NonPositiveScale { kplus, mass });
    }
    let kappa = q.0.map(|c| c * kplus);
    let kminus = -q.minkowski_square() * kplus / (mass * mass);
    Ok(ConePoint::from_light_cone(kappa, kplus, kminus, mass))
}

/// `q_μ = κ_μ/κ₊` with the default degeneracy threshold.
pub fn project(k: &ConePoint) -> Result<FourMomentum> {
    project_with(k, &ConeConfig::default())
}

pub fn project_with(k: &ConePoint, cfg: &ConeConfig) -> Result<FourMomentum> {
    let kplus = k.kplus();
    if !(kplus.abs() >= cfg.scale_epsilon) {
        return Err(Error::DegenerateScale(kplus));
    }
    Ok(FourMomentum(k.kappa.map(|c| c / kplus)))
}

/// A 4×4 matrix satisfying `Λᵀ g Λ = g`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzMatrix([[f64; 4]; 4]);

impl LorentzMatrix {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(m: [[f64; 4]; 4]) -> Result<Self> {
        let dev = lorentz_defect(&m);
        if !(dev <= Self::TOLERANCE) {
            return Err(Error::NotLorentz(dev));
        }
        Ok(LorentzMatrix(m))
    }

    pub fn identity() -> Self {
        LorentzMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 })
        }))
    }

    /// Pure boost with rapidity `eta` along spatial axis `axis ∈ {1,2,3}`.
    pub fn boost(axis: usize, eta: f64) -> Self {
        assert!((1..=3).contains(&axis), "boost axis must be 1, 2 or 3");
        let mut m = Self::identity().0;
        let (c, s) = (eta.cosh(), eta.sinh());
        m[0][0] = c;
        m[0][axis] = s;
        m[axis][0] = s;
        m[axis][axis] = c;
        LorentzMatrix(m)
    }

    /// Spatial rotation by `angle` about axis `axis ∈ {1,2,3}`.
    pub fn rotation(axis: usize, angle: f64) -> Self {
        assert!((1..=3).contains(&axis), "rotation axis must be 1, 2 or 3");
        let (i, j) = match axis {
            1 => (2, 3),
            2 => (3, 1),
            _ => (1, 2),
        };
        let mut m = Self::identity().0;
        let (c, s) = (angle.cos(), angle.sin());
        m[i][i] = c;
        m[i][j] = -s;
        m[j][i] = s;
        m[j][j] = c;
        LorentzMatrix(m)
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &LorentzMatrix) -> Self {
        let (a, b) = (&self.0, &other.0);
        LorentzMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum())
        }))
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.0
    }

    pub fn apply(&self, v: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v[j]).sum())
    }
}

/// `max |Λᵀ g Λ − g|` entrywise.
pub fn lorentz_defect(m: &[[f64; 4]; 4]) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let v: f64 = (0..4).map(|k| m[k][a] * METRIC_4D[k] * m[k][b]).sum();
            let g = if a == b { METRIC_4D[a] } else { 0.0 };
            worst = worst.max((v - g).abs());
        }
    }
    if worst.is_nan() {
        f64::INFINITY
    } else {
        worst
    }
}

/// One element of the conformal group acting on four-momenta.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConformalTransform {
    Translation(FourMomentum),
    Lorentz(LorentzMatrix),
    Dilatation(f64),
    Inversion,
    SpecialConformal(FourMomentum),
    /// Applied left to right: the first element acts first.
    Composition(Vec<ConformalTransform>),
}

impl ConformalTransform {
    pub fn identity() -> Self {
        ConformalTransform::Composition(Vec::new())
    }

    /// `self` followed by `next`.
    pub fn then(self, next: ConformalTransform) -> Self {
        match self {
            ConformalTransform::Composition(mut v) => {
                v.push(next);
                ConformalTransform::Composition(v)
            }
            t => ConformalTransform::Composition(vec![t, next]),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConformalTransform::Translation(_) => "translation",
            ConformalTransform::Lorentz(_) => "lorentz",
            ConformalTransform::Dilatation(_) => "dilatation",
            ConformalTransform::Inversion => "inversion",
            ConformalTransform::SpecialConformal(_) => "special_conformal",
            ConformalTransform::Composition(_) => "composition",
        }
    }
}

// Linear pieces on the raw six components; sign normalisation happens after.

fn raw_translate(k: &ConePoint, h: &FourMomentum) -> ConePoint {
    let kp = k.kplus();
    let m2 = k.mass * k.mass;
    let kappa = std::array::from_fn(|i| k.kappa[i] + h.0[i] * kp);
    let kminus = k.kminus() - (2.0 * minkowski_dot(&h.0, &k.kappa) + h.minkowski_square() * kp) / m2;
    ConePoint::from_light_cone(kappa, kp, kminus, k.mass)
}

fn raw_invert(k: &ConePoint) -> ConePoint {
    k.swapped()
}

fn normalize_sign(k: ConePoint, cfg: &ConeConfig, err: impl Fn(f64) -> Error) -> Result<ConePoint> {
    let kp = k.kplus();
    if !(kp.abs() >= cfg.scale_epsilon) {
        return Err(err(kp));
    }
    if kp > 0.0 {
        Ok(k)
    } else if cfg.strict_inversion {
        Err(Error::DegenerateScale(kp))
    } else {
        Ok(k.negated())
    }
}

/// Applies `t` to a cone point using the 6D (linear) representation.
pub fn apply_cone(t: &ConformalTransform, k: &ConePoint) -> Result<ConePoint> {
    apply_cone_with(t, k, &ConeConfig::default())
}

pub fn apply_cone_with(t: &ConformalTransform, k: &ConePoint, cfg: &ConeConfig) -> Result<ConePoint> {
    let residual = cone_form(k).abs();
    let bound = on_cone_bound(k, cfg);
    if !(residual <= bound) {
        return Err(Error::OffCone { residual, bound });
    }
    apply_on_cone(t, k, cfg)
}

fn apply_on_cone(t: &ConformalTransform, k: &ConePoint, cfg: &ConeConfig) -> Result<ConePoint> {
    match t {
        ConformalTransform::Translation(h) => Ok(raw_translate(k, h)),
        ConformalTransform::Lorentz(l) => Ok(ConePoint {
            kappa: l.apply(&k.kappa),
            ..*k
        }),
        ConformalTransform::Dilatation(lambda) => {
            let kappa = k.kappa;
            Ok(ConePoint::from_light_cone(
                kappa,
                (-lambda).exp() * k.kplus(),
                lambda.exp() * k.kminus(),
                k.mass,
            ))
        }
        ConformalTransform::Inversion => normalize_sign(raw_invert(k), cfg, Error::DegenerateScale),
        ConformalTransform::SpecialConformal(h) => {
            let out = raw_invert(&raw_translate(&raw_invert(k), h));
            normalize_sign(out, cfg, Error::SingularDenominator)
        }
        ConformalTransform::Composition(steps) => {
            let mut cur = *k;
            for s in steps {
                cur = apply_on_cone(s, &cur, cfg)?;
            }
            Ok(cur)
        }
    }
}

/// Applies `t` directly to the four-momentum.
pub fn apply_4d(t: &ConformalTransform, q: &FourMomentum, mass: f64) -> Result<FourMomentum> {
    apply_4d_with(t, q, mass, &ConeConfig::default())
}

pub fn apply_4d_with(t: &ConformalTransform, q: &FourMomentum, mass: f64, cfg: &ConeConfig) -> Result<FourMomentum> {
    let m2 = mass * mass;
    match t {
        ConformalTransform::Translation(h) => Ok(*q + *h),
        ConformalTransform::Lorentz(l) => Ok(FourMomentum(l.apply(&q.0))),
        ConformalTransform::Dilatation(lambda) => Ok(q.scale(lambda.exp())),
        ConformalTransform::Inversion => {
            let q2 = q.minkowski_square();
            if !(q2.abs() >= cfg.scale_epsilon) {
                return Err(Error::NullMomentumInversion(q2));
            }
            Ok(q.scale(-m2 / q2))
        }
        ConformalTransform::SpecialConformal(h) => {
            let q2 = q.minkowski_square();
            let den = 1.0 - 2.0 * q.dot(h) / m2 + h.minkowski_square() * q2 / (m2 * m2);
            if !(den.abs() >= cfg.scale_epsilon) {
                return Err(Error::SingularDenominator(den));
            }
            Ok((*q - h.scale(q2 / m2)).scale(1.0 / den))
        }
        ConformalTransform::Composition(steps) => {
            let mut cur = *q;
            for s in steps {
                cur = apply_4d_with(s, &cur, mass, cfg)?;
            }
            Ok(cur)
        }
    }
}

/// Euclidean distance between the 6D route and the 4D route.
pub fn isomorphism_residual(t: &ConformalTransform, q: &FourMomentum, kplus: f64, mass: f64) -> Result<f64> {
    isomorphism_residual_with(t, q, kplus, mass, &ConeConfig::default())
}

pub fn isomorphism_residual_with(
    t: &ConformalTransform,
    q: &FourMomentum,
    kplus: f64,
    mass: f64,
    cfg: &ConeConfig,
) -> Result<f64> {
    let via_cone = project_with(&apply_cone_with(t, &embed(q, kplus, mass)?, cfg)?, cfg)?;
    let direct = apply_4d_with(t, q, mass, cfg)?;
    Ok((via_cone - direct).euclidean_norm())
}
