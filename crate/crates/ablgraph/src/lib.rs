//! Girth and abelian girth of finite multigraphs.
//!
//! The abelian girth of a graph is the length of its shortest closed
//! non-backtracking walk that traverses every edge the same number of times
//! in each direction (equivalently, the girth of the universal abelian
//! cover). This crate computes both invariants exactly on small graphs,
//! produces machine-checkable certificates for upper bounds on larger ones,
//! and constructs the Lubotzky-Phillips-Sarnak graphs X^{p,q} from integral
//! quaternions.

pub mod abl;
pub mod cert;
pub mod edgelist;
pub mod flow;
pub mod gen;
pub mod girth;
pub mod graph;
pub mod lps;
pub mod moore;
pub mod walk;

pub use abl::{
    abelian_girth, abl_oracle, AblEvidence, AblResult, AblValue, AblWitness, SubgraphWitness,
};
pub use cert::Certificate;
pub use gen::{
    enumerate_small, make_barbell, make_complete, make_cycle, make_figure_eight, make_theta,
    random_regular,
};
pub use girth::{enumerate_nb_walks, girth, nb_distance_table, GirthResult};
pub use graph::{
    abelian_length, classify_chi_minus_one, DirectedEdge, GraphError, Multigraph, Subgraph,
    SubgraphClass,
};
pub use moore::{certify_abl_upper, moore_h, scholium_certify, MooreCertificate};
pub use walk::{commutator, triple_word, NetEdgeCount, Walk, WalkError};
