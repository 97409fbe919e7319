//! The exact partition of `q²` into domains I–IV and their placement on the
//! two 5D hyperboloids.
//!
//! | domain | `q²` | hyperboloid | `q₅²` |
//! |--------|------|-------------|-------|
//! | I   | `[0, M²]`     | `q² + q₅² = M²`  | `[0, M²]` |
//! | II  | `(M², ∞)`     | `q² − q₅² = −M²` | `(2M², ∞)` |
//! | III | `(−∞, −M²)`   | `q² + q₅² = M²`  | `(2M², ∞)` |
//! | IV  | `[−M², 0)`    | `q² − q₅² = −M²` | `[0, M²)` |
//!
//! Boundaries are assigned with exact comparisons (0 and `M²` to I, `−M²`
//! to IV), so `Λ₁ + Λ₂ = 1` holds for every finite `q²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two 5D hyperboloids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hyperboloid {
    /// `q² + q₅² = M²`
    One,
    /// `q² − q₅² = −M²`
    Two,
}

impl Hyperboloid {
    pub fn index(self) -> u8 {
        match self {
            Hyperboloid::One => 1,
            Hyperboloid::Two => 2,
        }
    }

    pub fn from_index(a: u8) -> Option<Self> {
        match a {
            1 => Some(Hyperboloid::One),
            2 => Some(Hyperboloid::Two),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DomainLabel {
    I,
    II,
    III,
    IV,
}

impl DomainLabel {
    pub const ALL: [DomainLabel; 4] = [DomainLabel::I, DomainLabel::II, DomainLabel::III, DomainLabel::IV];

    pub fn hyperboloid(self) -> Hyperboloid {
        match self {
            DomainLabel::I | DomainLabel::III => Hyperboloid::One,
            DomainLabel::II | DomainLabel::IV => Hyperboloid::Two,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            DomainLabel::I => "I",
            DomainLabel::II => "II",
            DomainLabel::III => "III",
            DomainLabel::IV => "IV",
        }
    }

    /// The interval predicate of this domain.
    pub fn contains(self, q2: f64, mass: f64) -> bool {
        let m2 = mass * mass;
        match self {
            DomainLabel::I => 0.0 <= q2 && q2 <= m2,
            DomainLabel::II => m2 < q2,
            DomainLabel::III => q2 < -m2,
            DomainLabel::IV => -m2 <= q2 && q2 < 0.0,
        }
    }
}

impl std::fmt::Display for DomainLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Domain of `q2` for scale `mass`. `q2` must be finite.
pub fn classify(q2: f64, mass: f64) -> DomainLabel {
    let m2 = mass * mass;
    if q2 >= 0.0 {
        if q2 <= m2 {
            DomainLabel::I
        } else {
            DomainLabel::II
        }
    } else if q2 >= -m2 {
        DomainLabel::IV
    } else {
        DomainLabel::III
    }
}

/// On-shell fifth momentum squared `Q_a²` for a site in `label`.
pub fn q5_squared(label: DomainLabel, q2: f64, mass: f64) -> Result<f64> {
    let actual = classify(q2, mass);
    if actual != label {
        return Err(Error::DomainMismatch {
            q2,
            expected: label.name(),
            actual: actual.name(),
        });
    }
    Ok(q5_squared_on(label.hyperboloid(), q2, mass))
}

/// `M² − q²` on hyperboloid 1, `M² + q²` on hyperboloid 2.
pub fn q5_squared_on(h: Hyperboloid, q2: f64, mass: f64) -> f64 {
    let m2 = mass * mass;
    match h {
        Hyperboloid::One => m2 - q2,
        Hyperboloid::Two => m2 + q2,
    }
}

/// Characteristic function `Λ_a(q²)` of hyperboloid `a`'s domains.
pub fn lambda_indicator(a: Hyperboloid, q2: f64, mass: f64) -> u8 {
    u8::from(classify(q2, mass).hyperboloid() == a)
}

/// Inversion `q² → M⁴/q²` with the label of the image.
pub fn invert_domain(q2: f64, mass: f64) -> Result<(f64, DomainLabel)> {
    if q2 == 0.0 {
        return Err(Error::NullSquare);
    }
    let m2 = mass * mass;
    // ±M² are fixed points; keep them exact.
    if q2 == m2 || q2 == -m2 {
        return Ok((q2, classify(q2, mass)));
    }
    let mut image = m2 * m2 / q2;
    // An interior point one ulp from ±M² can round onto the fixed point;
    // nudge it back so the image label follows the interior mapping.
    if image == m2 {
        image = if q2 < m2 { m2.next_up() } else { m2.next_down() };
    } else if image == -m2 {
        image = if q2 > -m2 { (-m2).next_down() } else { (-m2).next_up() };
    }
    Ok((image, classify(image, mass)))
}

/// Reflection `q² → −q²` with the label of the image.
pub fn reflect_domain(q2: f64, mass: f64) -> (f64, DomainLabel) {
    let image = -q2;
    (image, classify(image, mass))
}
