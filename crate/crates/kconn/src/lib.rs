//! Structural and spectral analysis of minimally k-(edge)-connected graphs.
//!
//! The crate provides:
//!
//! * a bitset-backed simple-graph type with the named families the analysis
//!   revolves around ([`graph`]);
//! * a bit-exact graph6 short-form codec and isomorph-free enumeration of all
//!   graphs on up to 7 vertices ([`graph6`], [`canon`]);
//! * exact vertex/edge connectivity with witness cuts, minimality
//!   certificates, brute-force oracles and a recursive edge-cut decomposition
//!   ([`connectivity`]);
//! * spectral radius and Perron vector by shifted power iteration, with a
//!   dense Jacobi eigensolver as an independent oracle ([`spectral`]);
//! * verifiers for the classical edge bounds and the Perron level-set
//!   structure of near-extremal graphs ([`structure`]);
//! * the peel-and-rewire transformation toward the complete bipartite graph,
//!   certified through the Rayleigh quotient ([`rewire`]);
//! * corpus scanning and verification suites used by the `kconn` CLI
//!   ([`scan`], [`verify`]).
//!
//! ```
//! use kconn::{certify_minimality, spectral_radius, ConnKind, Graph};
//!
//! // K_{2,5}: minimally 2-connected, spectral radius sqrt(2 * 5).
//! let g = Graph::complete_bipartite(2, 7)?;
//! assert!(certify_minimality(&g, 2, ConnKind::Vertex).valid());
//! let perron = spectral_radius(&g, 1e-12)?;
//! assert!((perron.rho - 10f64.sqrt()).abs() < 1e-9);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod canon;
pub mod connectivity;
mod flow;
pub mod graph;
pub mod graph6;
pub mod rewire;
pub mod scan;
pub mod spectral;
pub mod structure;
pub mod util;
pub mod verify;

pub use canon::{canonical_code, enumerate_graphs, CanonicalCode};
pub use connectivity::{
    brute_force_connectivity, certify_minimality, decompose, edge_connectivity,
    find_j_edge_connected_subgraph, vertex_connectivity, ConnKind, ConnectivityReport, CutWitness,
    DecompositionTree, MinimalityCertificate,
};
pub use graph::{Graph, GraphError, VertexSet};
pub use rewire::{certify_rayleigh_increase, partition_lvu, peel_order, rewire_to_l, RewirePlan};
pub use scan::{scan, ExtremalReport, ScanRecord};
pub use spectral::{dense_spectrum, rayleigh_quotient, spectral_radius, PerronResult, Spectrum};
pub use structure::{
    check_global_bounds, check_subgraph_bounds, degree_k_census, dominant_set_report, forest_check,
    level_sets, BoundReport, LevelSets,
};
pub use verify::{run_suite, Suite, VerifyReport};
