//! Embedding 3-ary n-cubes into cylinders and trees.
//!
//! The guest [`QCube`] and the four host topologies are built with the
//! labelings under which the lexicographic (identity) embedding is optimal.
//! Its wirelength is computed three independent ways, which are expected to
//! agree exactly:
//!
//! * closed forms ([`formulas`]);
//! * summing congestion-lemma values over a verified edge-cut family
//!   ([`embedding::wirelength_by_cuts`]);
//! * summing host distances over the guest edges
//!   ([`embedding::wirelength_by_distance`]).
//!
//! [`search`] looks for embeddings that would beat the closed forms.

pub mod embedding;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod hosts;
pub mod qcube;
pub mod search;

pub use embedding::{
    congestion_lemma_value, congestion_per_edge, lex_embedding, verify_cut_family,
    wirelength_by_cuts, wirelength_by_distance, CongestionReport, CutCheck, EmbeddingInstance,
    Routing, VerificationReport,
};
pub use error::{Error, Result};
pub use formulas::{cross_check, wl_formula, WirelengthRecord};
pub use graph::{
    build_graph, cartesian_product, CutFamily, Distances, Edge, EdgeCut, ExportFormat, LabeledGraph,
};
pub use hosts::{build_host, HostKind, HostSpec};
pub use qcube::{
    brute_force_iso, build_qcube, digit_complement, iso_closed_form, iso_profile,
    lex_prefix_induced, ternary_decompose, IsoProfile, QCube, TernaryDecomposition, TernaryWord,
};
pub use search::{
    exhaustive_search, local_search, AnnealSchedule, LocalSearchConfig, SearchMethod, SearchResult,
};
