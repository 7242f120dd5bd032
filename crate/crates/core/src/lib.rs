//! Cyclicity of polynomial families in Hardy and Dirichlet-type spaces on
//! the polydisk, and numerical maximal-domain diagnostics for weighted
//! Bergman-type spaces `H_{v,n}` on the disk.
//!
//! * [`poly`]: exact sparse polynomials over `Q(i)`, gcd, root location.
//! * [`ideal`]: Gröbner bases, codimension, variety solving.
//! * [`catalog`]: function spaces, maximal domains and cyclicity verdicts.
//! * [`lab`]: high-precision Gram matrices and evaluation-functional norms.

pub mod catalog;
pub mod error;
pub mod ideal;
pub mod lab;
pub mod poly;

pub use catalog::{CyclicityVerdict, SpaceSpec, Status};
pub use error::{Error, Result};
pub use ideal::{GroebnerBasis, IdealCertificate};
pub use lab::{Arc, Classification, WeightSpec};
pub use poly::{parse, GaussianRational, MultiPolynomial, TermOrder};
