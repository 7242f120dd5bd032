//! Numerical diagnostics for weighted spaces `H_{v,n}` on the disk.

mod gram;
mod kernel;
mod mp;
mod quadrature;
mod reciprocal;
mod weight;

pub use gram::{gram_matrix, GramMatrix, WeightedSpace};
pub use kernel::{
    classify_point, dist_to_invariant_subspace, distance_schedule, lambda_n, lambda_schedule, log_slope,
    Classification, KernelDiagnostic, Thresholds,
};
pub use mp::precision_bits;
pub use quadrature::{gauss_legendre, QuadratureGrid};
pub use reciprocal::{reciprocal_norm, ReciprocalNorm};
pub use weight::{auto_coefficients, dist_between, dist_to_arcs, Arc, SeriesTerm, Weight, WeightSpec};
