//! Bound states of the Dirac equation with a Möbius-square plus Yukawa
//! (or quasi-Yukawa) potential and a Coulomb-like tensor term, in the spin
//! and pseudospin symmetry limits.
//!
//! The centrifugal and Yukawa terms are replaced by Pekeris-type
//! expressions, which makes the reduced radial equation shape invariant.
//! [`spectrum::solve_energy`] extracts energies from the resulting
//! closed-form condition, [`wavefn`] builds the matching spinor
//! components, and [`oracle`] re-derives everything by Numerov shooting.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod error;
pub mod model;
pub mod oracle;
pub mod spectrum;
pub mod susy;
pub mod wavefn;

pub use error::{Error, Result};
pub use model::{
    PotentialChoice, PotentialParams, QuantumState, QuasiTail, RadialGrid, Spacing, SymmetryLimit, SymmetrySpec,
};
pub use spectrum::{solve_energy, BoundState, BranchPolicy};
pub use susy::Branch;
pub use wavefn::WaveSpec;
