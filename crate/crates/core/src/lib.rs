//! Exact computation of the first homology of Milnor fibers of hyperplane
//! multi-arrangements.
//!
//! The pipeline goes from braid monodromy to a finite presentation of the
//! complement's fundamental group, through Fox calculus to Alexander
//! matrices, and from there either to ranks over cyclotomic / finite fields
//! (characteristic varieties, field dimensions) or to the integral chain
//! complex of the cyclic cover (torsion and monodromy).
//!
//! Everything is exact: arbitrary-precision integers and rationals,
//! cyclotomic fields `Q(zeta_N)` and finite fields `F_{p^m}`.

pub mod braidword;
pub mod error;
pub mod exactla;
pub mod exactnum;
pub mod foxcalc;
pub mod grouppres;
pub mod milnorfiber;

pub use error::{Error, Result};
