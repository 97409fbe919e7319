//! Conformal transformations of four-momenta realised as rotations on the
//! 6D cone, the four-domain partition of `q²`, domain doubling of lattice
//! momentum fields into `Φ±`, spectral residual checks of the coupled 5D
//! conditions, and the closed-form constraint algebra relating the doubled
//! masses and sources.
//!
//! Conventions used throughout:
//!
//! * 4D metric `diag(+,−,−,−)`, 6D metric `diag(+,−,−,−,+,−)`.
//! * Momenta are measured in units of the scale `M`, and `κ± = (κ₅ ± κ₆)/M`.
//! * Fourier kernel `e^{−iq·x}` with the Minkowski product `q·x`.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`cone`] | [`FourMomentum`], [`ConePoint`], [`ConformalTransform`] |
//! | [`domain`] | [`DomainLabel`], `classify`, indicators, domain maps |
//! | [`lattice`] | [`MomentumLatticeField`], [`PositionLatticeField`] |
//! | [`fourier`] | lattice transforms between momentum and position |
//! | [`decomposition`] | [`DecomposedField`], `Φ±` assembly, 5D extension |
//! | [`verify`] | [`ResidualReport`] and the residual checks |
//! | [`constraints`] | mass/parameter relations and source transfers |
//! | [`dynamics`] | Klein–Gordon solve, gauge translation, Dirac residual |
//! | [`io`] | JSON / binary field exchange format |

#![forbid(unsafe_code)]
// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cone;
pub mod constraints;
pub mod decomposition;
pub mod domain;
pub mod dynamics;
pub mod error;
pub mod fourier;
pub mod io;
pub mod lattice;
pub mod verify;

pub use cone::{ConeConfig, ConePoint, ConformalTransform, FourMomentum, LorentzMatrix};
pub use constraints::{ConstraintParams, MassPair};
pub use decomposition::{DecomposedField, ScaleProfile, Sign, SpectralField5D};
pub use domain::{DomainLabel, Hyperboloid};
pub use error::{Error, Result};
pub use lattice::{Lattice, MomentumLatticeField, PositionLatticeField};
pub use verify::{ResidualReport, Tolerances};

pub use num_complex::Complex64;
