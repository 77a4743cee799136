//! Covering numbers and related invariants.

mod abelian;
mod action;
mod cyclic;
mod laws;
mod oracle;

pub use abelian::{maximal_abelian_subgroups, nac};
pub use action::{cc, ncc, ActionKind, AutAction, CoverCertificate};
pub use cyclic::{cyclic_subgroups, maximal_cyclic_subgroups, meo, peo, CyclicLattice};
pub use laws::{
    check_index_bound, check_normal_subgroup_bound, check_orders_law, check_product_law,
    check_quotient_bound, check_simple_power_bound, d_min_generators, is_simple, LawReport,
};
pub use oracle::ncc_oracle;
