//! Exact rational arithmetic, Laurent polynomials, residues and linear algebra.

pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod tensor;
pub mod unirat;

pub use laurent::MultiLaurent;
pub use matrix::{determinant, mat_inverse, nonzero_det_certificate, RatMatrix};
pub use rational::{frac, int, parse_rational, pow_i, to_plain, to_pq, Rational};
pub use tensor::Tensor3;
pub use unirat::{coprime, residue_at, residue_at_infinity, residue_sum_at_roots, series_div, UniPoly, UniRational};
