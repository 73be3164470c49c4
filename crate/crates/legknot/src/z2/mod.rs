//! Exact linear and multilinear algebra over Z2.

mod barannikov;
mod complex;
mod dga;
mod matrix;
mod poly;

pub use barannikov::{barannikov_pairing, BarannikovError, BarannikovPairing};
pub use complex::{homology_dims, reduce as reduce_degree, ComplexError, GradedComplex};
pub use dga::{dga_check, Dga, DgaCheckError, Generator};
pub use matrix::Z2Matrix;
pub use poly::Z2Poly;
