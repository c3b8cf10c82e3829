//! Exact verification of Dubrovin duality and Landau-Ginzburg mirror symmetry for the
//! equivariant quantum cohomology of ADE resolutions.
//!
//! Everything is computed over the rationals: Fourier polynomials in `q_a = e^{x_a}`,
//! residues of rational functions in the spectral parameter, and structure constants at
//! rational points.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod frobdual;
pub mod gw;
pub mod invariants;
pub mod lg;
pub mod rootsys;

pub use error::{Error, Result};
