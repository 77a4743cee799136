//! Classical `p`-group families and the graph of central quotients.

mod catalog;
mod gamma;

pub use catalog::{
    cyclic, dihedral, elementary_abelian, extraspecial, generalized_quaternion,
    modular_maximal_cyclic, semidihedral, Construct,
};
pub use gamma::{
    branch_lemma_check, build_gamma_graph, build_gamma_graph_from, central_order_p_in_frattini,
    corpus, BranchReport, GammaEdge, GammaGraph, PGroupVertex,
};
