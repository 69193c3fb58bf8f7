//! Graph-labeling analysis toolkit built around neighbourhood sequences.
//!
//! The crate groups into three layers:
//!
//! * structural: [`graph`] (simple graphs, generators, compositions) and
//!   [`nbh`] (neighbourhood sequences and their walk/trail/chain/cycle
//!   taxonomy);
//! * chain machinery: [`chains`] (type-1/type-2 chain verification and
//!   search), [`grid`] (explicit diagonal constructions in cylindrical
//!   grids), and [`weighting`] (rational equal-sum weightings used to probe
//!   label propagation along a chain);
//! * labeling decisions: [`solver`] (distance magic labelings, exhaustive
//!   and pruned exact search, non-magicness certificates).
//!
//! [`io`] carries the JSON/edge-list/DOT wire formats shared with the CLI.

pub mod chains;
pub mod compose;
pub mod fixtures;
pub mod graph;
pub mod grid;
pub mod io;
pub mod nbh;
pub mod solver;
pub mod weighting;

pub use chains::{
    difference_identities, find_even_t1, find_t1, verify_t1, verify_t2, ChainT1,
    DifferenceIdentities, EndSide, EvenSearch, SearchOutcome, T1Rejection, T2Pair, T2Rejection,
};
pub use compose::{
    amalgamation, disjoint_union, parallel, rooted_product, series, TwoTerminalGraph, VertexMap,
};
pub use graph::{Graph, GraphError, VertexLabel, VertexSet};
pub use grid::{chain_end_sets, construct_t2, diagonal_chain, GridChainSpec, GridError};
pub use nbh::{nsg, Connectivity, NbhFamily, NsgGraph, SeqClass};
pub use solver::{
    candidate_constants, certify_ndm, certify_ndm_with, check_certificate, forbidden_pair, solve,
    solve_exhaustive, verify_labeling, Certificate, CertifyMethod, CertifyOutcome, Labeling,
    MagicResult, SearchStats, DEFAULT_CHAIN_BUDGET, DEFAULT_ORACLE_CAP,
};
pub use weighting::{sample_equal_sum_weightings, Weighting};
