pub mod classify;
pub mod constraints;
pub mod fields;
pub mod transform;

use clap::Subcommand;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a conformal transformation to a four-momentum via both routes.
    Transform(transform::TransformArgs),
    /// Domain labels of q² values, or per-domain site counts of the lattice.
    Classify(classify::ClassifyArgs),
    /// Split a field into its four domain parts and form Φ±.
    Decompose(fields::DecomposeArgs),
    /// Run the residual battery on a field.
    Verify(fields::VerifyArgs),
    /// Masses and branches of the linear constraints.
    Constraints(constraints::ConstraintArgs),
    /// Solve (m² − q²)Φ = J on the lattice.
    Solve(fields::SolveArgs),
    /// Emit the seeded demo field.
    Demo(fields::DemoArgs),
}
