//! Ideals of `P_d`: Gröbner bases, quotients, and zero-dimensional varieties.

mod certificate;
mod factor;
mod groebner;
mod quotient;
mod variety;

pub use certificate::{IdealCertificate, StandardMonomials};
pub use factor::{factor_ideal, IdealFactorization, IdealFactorizationRecord};
pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use quotient::{codimension, eliminant, multiplication_matrix, QuotientBasis};
pub use variety::{circle_positions, solve_variety, SolveOptions, VarietyPoint, VarietySolution};
