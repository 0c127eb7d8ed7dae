//! Binary quadratic forms over Z: reduction, equivalence, Pell units and
//! integral orthogonal groups.

pub mod field;
pub mod orthogonal;
pub mod pell;
pub mod reduce;

pub use field::{sign_with_sqrt, QuadFieldElem};
pub use orthogonal::{
    negative_pell_criterion, orthogonal_bruteforce, orthogonal_group, orthogonal_group_any,
    divisible_shape_scan, in_orthogonal, pell_generator, r_f, GroupStructure, OrthGroup,
};
pub use pell::{fundamental_t, pell_bruteforce, pell_least, unit_power, PellSolution};
pub use reduce::{quad_equivalent, quad_kind, reduce_quad, QuadKind, Reduction};
