//! Function spaces on the polydisk, their maximal domains, and exact
//! cyclicity verdicts for polynomials and polynomial families.

mod arcs;
mod decide;
mod space;
mod torus;
mod verdict;
mod zeros;

pub use decide::{is_cyclic, is_jointly_cyclic, is_jointly_cyclic_with, product_cyclicity_check, ProductConsistency};
pub use space::{
    catalog_info, maximal_domain, CatalogInfo, DomainKind, MaximalDomainSpec, Membership, SpaceSpec, BOUNDARY_MARGIN,
};
pub use torus::{torus_zero_finiteness, TorusZeros};
pub use verdict::{
    membership_from_positions, verify_certificate, Certificate, CyclicityVerdict, PipelinePoint, PipelineTrace,
    Status, Witness, WITNESS_TOLERANCE,
};
