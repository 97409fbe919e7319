use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("scale parameters must be positive (kappa_plus = {kplus}, M = {mass})")]
    NonPositiveScale { kplus: f64, mass: f64 },
    #[error("projective scale kappa_plus = {0} is degenerate")]
    DegenerateScale(f64),
    #[error("point is off the cone: |cone_form| = {residual:e} exceeds {bound:e}")]
    OffCone { residual: f64, bound: f64 },
    #[error("inversion of a null momentum (q^2 = {0})")]
    NullMomentumInversion(f64),
    #[error("special conformal denominator vanishes ({0:e})")]
    SingularDenominator(f64),
    #[error("matrix is not a Lorentz transformation: max |L^T g L - g| = {0:e}")]
    NotLorentz(f64),

    #[error("q^2 = {q2} lies in domain {actual}, not {expected}")]
    DomainMismatch {
        q2: f64,
        expected: &'static str,
        actual: &'static str,
    },
    #[error("q^2 = 0 has no inverse")]
    NullSquare,

    #[error("kappa_plus grid is empty")]
    EmptyGrid,
    #[error("kappa_plus grid point {0} is negative")]
    NonPositiveKPlus(f64),
    #[error("kappa_plus grid must be strictly ascending")]
    UnsortedGrid,
    #[error("scale profile requires a positive scale, got {0}")]
    InvalidProfile(f64),
    #[error("scale {0} lies outside the tabulated kappa_plus grid")]
    OutsideGrid(f64),
    #[error("negative fifth momentum squared {0} at site {1}")]
    NegativeQ5Squared(f64, usize),

    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("field contains a non-finite value at index {0}")]
    NonFinite(usize),

    #[error("beta_plus must be non-zero")]
    ZeroBeta,
    #[error("alpha must be non-zero for the source transfer")]
    ZeroAlpha,
    #[error("parameters violate the charged consistency conditions (residual {0:e})")]
    InconsistentParams(f64),
    #[error("mass bound violated: m+ m- = {product} exceeds M^2 = {bound}")]
    MassBoundViolated { product: f64, bound: f64 },
    #[error("masses must be positive (m+^2 = {0}, m-^2 = {1})")]
    NonPositiveMass(f64, f64),
    #[error("negative mass squared {0}")]
    NegativeMass(f64),

    #[error("a real field requires a purely imaginary translation (component {0} has real part)")]
    RealityViolation(usize),
    #[error("pole regularization width must be positive, got {0}")]
    InvalidRegularization(f64),

    #[error("field format: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
