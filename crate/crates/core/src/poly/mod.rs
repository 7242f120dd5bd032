//! Exact polynomial arithmetic over the Gaussian rationals.

mod gaussian;
mod gcd;
mod order;
mod parse;
mod polynomial;
mod univariate;

pub use gaussian::GaussianRational;
pub use gcd::{content_split, gcd, gcd_many};
pub use order::{ExponentVector, OrderKind, TermOrder};
pub use parse::parse;
pub use polynomial::{divide_exact, MultiPolynomial};
pub use univariate::{aberth_roots, locate_roots, CirclePosition, LocatedRoot, UniPoly};
