//! Bound states of spin-0 and spin-1 Duffin–Kemmer–Petiau bosons in a mixed
//! minimal/nonminimal inversely linear vector background.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: exact 5×5 and 10×10 β-matrix representations and their identities
//! - [`special`]: Laguerre polynomials, Kummer's M, quadrature
//! - [`spectrum`]: the effective Kratzer problem and the closed-form levels
//! - [`wavefunction`]: odd-parity eigenfunctions, orthonormality, parity selection
//! - [`current`]: full DKP spinors and the conserved four-current
//! - [`oracle`]: independent shooting solver for the energy-dependent ODE
//! - [`verify`]: invariant suites with pass/fail reports
//! - [`cli`]: the `dkp` command line
//!
//! Natural units ħ = c = 1 are used throughout.

// `!(x < y)` guards are meant to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod current;
pub mod error;
pub mod ode;
pub mod oracle;
pub mod special;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

pub use algebra::{build_representation, verify_algebra, verify_conjugation, BetaRepresentation, Spin};
pub use error::{DkpError, Result};
pub use spectrum::{energy_level, exponent_s, spectrum, BoundState, CouplingConfig};
