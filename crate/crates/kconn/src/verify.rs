//! Verification suites: run one family of checks over every graph in a
//! corpus that passes the minimality filter, and summarize pass/fail counts
//! with failure witnesses.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{
    certify_minimality, decompose, edge_connectivity, vertex_connectivity, ConnKind,
};
use crate::graph::{Graph, VertexSet};
use crate::scan::ScanError;
use crate::spectral::{dense_spectrum, spectral_radius};
use crate::structure::{
    check_global_bounds, check_subgraph_bounds, degree_k_census, dominant_set_report_with,
    forest_check, level_sets,
};
use crate::util::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    BoundsGlobal,
    BoundsSubgraph,
    DegreeK,
    Forest,
    Heredity,
    EigenReport,
    Decomposition,
}

pub const ALL_SUITES: [Suite; 7] = [
    Suite::BoundsGlobal,
    Suite::BoundsSubgraph,
    Suite::DegreeK,
    Suite::Forest,
    Suite::Heredity,
    Suite::EigenReport,
    Suite::Decomposition,
];

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::BoundsGlobal => "bounds-global",
            Suite::BoundsSubgraph => "bounds-subgraph",
            Suite::DegreeK => "degree-k",
            Suite::Forest => "forest",
            Suite::Heredity => "heredity",
            Suite::EigenReport => "eigen-report",
            Suite::Decomposition => "decomposition",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        ALL_SUITES
            .iter()
            .find(|suite| suite.as_str() == s)
            .copied()
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown suite '{0}'; expected one of bounds-global, bounds-subgraph, degree-k, forest, heredity, eigen-report, decomposition")]
pub struct UnknownSuite(pub String);

/// Per-graph suite outcome. Only graphs passing the minimality filter are
/// examined.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub graph6: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub k: usize,
    pub mode: ConnKind,
    /// Graphs in the input stream.
    pub scanned: usize,
    /// Graphs that passed the minimality filter and were checked.
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<SuiteOutcome>,
}

/// Run `suite` over every minimally k-(edge)-connected graph in `graphs`.
/// Outcomes come back in input order regardless of thread count.
pub fn run_suite(
    graphs: &[Graph],
    suite: Suite,
    k: usize,
    mode: ConnKind,
    tol: f64,
) -> Result<(Vec<SuiteOutcome>, VerifyReport), ScanError> {
    let outcomes: Vec<Option<SuiteOutcome>> = graphs
        .par_iter()
        .map(|g| {
            if !certify_minimality(g, k, mode).valid() {
                return Ok(None);
            }
            let code = if g.n() <= crate::canon::MAX_CANON_VERTICES {
                crate::canon::canonical_code(g)
                    .expect("n <= 8")
                    .into_string()
            } else {
                crate::graph6::encode(g)?
            };
            let (pass, detail) = check_one(g, suite, k, mode, tol);
            Ok(Some(SuiteOutcome {
                graph6: code,
                pass,
                detail,
            }))
        })
        .collect::<Result<_, ScanError>>()?;
    let outcomes: Vec<SuiteOutcome> = outcomes.into_iter().flatten().collect();
    let checked = outcomes.len();
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let failures: Vec<SuiteOutcome> = outcomes.iter().filter(|o| !o.pass).cloned().collect();
    let report = VerifyReport {
        suite: suite.as_str(),
        k,
        mode,
        scanned: graphs.len(),
        checked,
        passed,
        failed: checked - passed,
        failures,
    };
    Ok((outcomes, report))
}

fn check_one(g: &Graph, suite: Suite, k: usize, mode: ConnKind, tol: f64) -> (bool, String) {
    match suite {
        Suite::BoundsGlobal => check_bounds_global(g, k, mode),
        Suite::BoundsSubgraph => check_bounds_subgraph(g, k, mode),
        Suite::DegreeK => {
            let count = degree_k_census(g, k);
            (count > k, format!("degree-{k} vertices: {count}"))
        }
        Suite::Forest => {
            let check = forest_check(g, k);
            let detail = match &check.cycle {
                None => "acyclic after removing degree-k vertices".to_string(),
                Some(c) => format!("cycle through {c:?} survives"),
            };
            (check.ok, detail)
        }
        Suite::Heredity => check_heredity(g, k, mode),
        Suite::EigenReport => check_eigen_report(g, k, tol),
        Suite::Decomposition => check_decomposition(g, k),
    }
}

fn check_bounds_global(g: &Graph, k: usize, mode: ConnKind) -> (bool, String) {
    let reports = check_global_bounds(g, k, mode);
    let mut problems = Vec::new();
    for r in &reports {
        if !r.holds {
            problems.push(format!("{}: {} > {}", r.bound_id, r.lhs, r.rhs));
        }
        // Equality at the k(n-k) bound characterizes the complete bipartite
        // graph in the regimes where uniqueness is known.
        if r.bound_id == "mader-knk" && r.tight {
            let unique_regime = match mode {
                ConnKind::Edge => g.n() >= 3 * k,
                ConnKind::Vertex => k >= 2 && g.n() + 1 >= 3 * k,
            };
            if unique_regime && r.extremal_match != Some(true) {
                problems.push(format!(
                    "mader-knk tight at e = {} but the graph is not K_{{{k},{}}}",
                    r.lhs,
                    g.n() - k
                ));
            }
        }
    }
    summarize(problems, || {
        reports
            .iter()
            .map(|r| format!("{} {}<={}", r.bound_id, r.lhs, r.rhs))
            .collect::<Vec<_>>()
            .join("; ")
    })
}

fn check_bounds_subgraph(g: &Graph, k: usize, mode: ConnKind) -> (bool, String) {
    let reports = check_subgraph_bounds(g, k, mode);
    let mut problems = Vec::new();
    for r in &reports {
        if !r.holds {
            problems.push(format!(
                "{}: subset {:?} has {} > {}",
                r.bound_id, r.witness, r.lhs, r.rhs
            ));
        }
        if r.bound_id == "thm1.0-b" && r.tight && r.extremal_match == Some(false) {
            problems.push(format!(
                "thm1.0-b equality attained by a non-bipartite subset {:?}",
                r.witness
            ));
        }
    }
    summarize(problems, || "all induced subgraphs within bounds".into())
}

const HEREDITY_FULL_CAP: usize = 12;
const HEREDITY_SAMPLES: usize = 10_000;

fn check_heredity(g: &Graph, k: usize, mode: ConnKind) -> (bool, String) {
    let n = g.n();
    let mut inherited = 0usize;
    let mut problem: Option<String> = None;
    let mut consider = |s: &VertexSet| {
        if problem.is_some() || s.len() < 2 {
            return;
        }
        let h = g.induced(s).expect("|s| >= 2");
        let conn = match mode {
            ConnKind::Edge => edge_connectivity(&h).value,
            ConnKind::Vertex => vertex_connectivity(&h).map(|r| r.value).unwrap_or(0),
        };
        if conn >= k {
            inherited += 1;
            if !certify_minimality(&h, k, mode).valid() {
                problem = Some(format!(
                    "subgraph on {:?} is {k}-connected but not minimally so",
                    s
                ));
            }
        }
    };
    if n <= HEREDITY_FULL_CAP {
        for mask in 0u64..(1u64 << n) {
            let s: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            consider(&s);
        }
    } else {
        let mut rng = SplitMix64::new(0x4E45_5244);
        for _ in 0..HEREDITY_SAMPLES {
            let mut s = VertexSet::EMPTY;
            for base in (0..n).step_by(64) {
                let bits = rng.next_u64();
                for b in 0..64.min(n - base) {
                    if bits & (1 << b) != 0 {
                        s.insert(base + b);
                    }
                }
            }
            consider(&s);
        }
        consider(&g.vertex_set());
    }
    match problem {
        Some(p) => (false, p),
        None => (true, format!("{inherited} connected subgraphs all minimal")),
    }
}

fn check_eigen_report(g: &Graph, k: usize, tol: f64) -> (bool, String) {
    let perron = match spectral_radius(g, tol) {
        Ok(p) => p,
        Err(e) => return (false, format!("spectral radius failed: {e}")),
    };
    let mut problems = Vec::new();
    if !perron.vector.iter().all(|&x| x > 0.0) {
        problems.push("Perron vector not strictly positive".to_string());
    }
    let sets = level_sets(g, &perron, k);
    if !sets.l_gamma0.is_subset_of(&sets.l_beta) || !sets.l_beta.is_subset_of(&sets.l_alpha) {
        problems.push("level sets fail to nest".to_string());
    }
    let jacobi = dense_spectrum(g).max();
    if (perron.rho - jacobi).abs() > 1e-8 {
        problems.push(format!(
            "power iteration {} disagrees with dense solver {}",
            perron.rho, jacobi
        ));
    }
    let report = dominant_set_report_with(g, k, &perron);
    summarize(problems, || {
        format!(
            "rho={:.9}; |L|={}; coord_ok={}; degree_ok={}",
            perron.rho, report.size_l, report.coord_ok, report.degree_ok
        )
    })
}

fn check_decomposition(g: &Graph, k: usize) -> (bool, String) {
    let tree = decompose(g, k);
    let mut problems = Vec::new();
    if !tree.bound_holds {
        problems.push(format!(
            "edge bound fails: {} > {}",
            tree.bound_lhs, tree.bound_rhs
        ));
    }
    let leaves = tree.leaf_parts();
    let mut union = VertexSet::EMPTY;
    let mut total = 0usize;
    for (part, k_edge_connected) in &leaves {
        total += part.len();
        union = union.union(part);
        if part.len() == 1 {
            continue;
        }
        let sub = g.induced(part).expect("leaf parts are nonempty");
        let actual = edge_connectivity(&sub).value;
        if *k_edge_connected != (actual >= k) || actual < k {
            problems.push(format!(
                "leaf {:?} has edge connectivity {actual}, expected >= {k}",
                part
            ));
        }
    }
    if total != g.n() || union.len() != g.n() {
        problems.push("leaf parts do not partition the vertex set".to_string());
    }
    summarize(problems, || {
        format!(
            "splits={}; leaves={}; bound {} <= {}",
            tree.splits,
            leaves.len(),
            tree.bound_lhs,
            tree.bound_rhs
        )
    })
}

fn summarize(problems: Vec<String>, ok_detail: impl FnOnce() -> String) -> (bool, String) {
    if problems.is_empty() {
        (true, ok_detail())
    } else {
        (false, problems.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::enumerate_graphs;
    use crate::spectral::DEFAULT_TOL;

    fn corpus(n: usize) -> Vec<Graph> {
        enumerate_graphs(n, 0).unwrap().collect()
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in ALL_SUITES {
            assert_eq!(suite.as_str().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn degree_k_suite_passes_on_small_edge_corpus() {
        let graphs = corpus(5);
        let (outcomes, report) =
            run_suite(&graphs, Suite::DegreeK, 2, ConnKind::Edge, DEFAULT_TOL).unwrap();
        assert!(report.checked > 0);
        assert_eq!(report.failed, 0, "failures: {:?}", report.failures);
        assert_eq!(outcomes.len(), report.checked);
    }

    #[test]
    fn forest_suite_passes_on_small_vertex_corpus() {
        let graphs = corpus(6);
        let (_, report) =
            run_suite(&graphs, Suite::Forest, 2, ConnKind::Vertex, DEFAULT_TOL).unwrap();
        assert!(report.checked > 0);
        assert_eq!(report.failed, 0, "failures: {:?}", report.failures);
    }

    #[test]
    fn decomposition_suite_passes_both_modes() {
        let graphs = corpus(5);
        for mode in [ConnKind::Vertex, ConnKind::Edge] {
            let (_, report) =
                run_suite(&graphs, Suite::Decomposition, 2, mode, DEFAULT_TOL).unwrap();
            assert_eq!(report.failed, 0, "failures: {:?}", report.failures);
        }
    }

    #[test]
    fn eigen_suite_checks_oracle_agreement() {
        let graphs = corpus(5);
        let (_, report) = run_suite(
            &graphs,
            Suite::EigenReport,
            2,
            ConnKind::Vertex,
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(report.failed, 0, "failures: {:?}", report.failures);
    }
}
