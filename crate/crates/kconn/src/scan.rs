//! Corpus scanning: per-graph records and extremal reduction over the
//! minimally k-(edge)-connected population.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_code, MAX_CANON_VERTICES};
use crate::connectivity::{certify_minimality, edge_connectivity, vertex_connectivity, ConnKind};
use crate::graph::Graph;
use crate::graph6;
use crate::spectral::spectral_radius;
use crate::structure::degree_k_census;

/// Spectral radii this close to the maximum are surfaced as near-ties rather
/// than silently ordered; the power-iteration tolerance is far tighter.
pub const NEAR_TIE_WINDOW: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("scan inputs must share one vertex count; saw both {first} and {other}")]
    MixedN { first: usize, other: usize },
    #[error("graph6 encoding failed: {0}")]
    Encode(#[from] graph6::Graph6Error),
    #[error("spectral computation failed: {0}")]
    Spectral(#[from] crate::spectral::SpectralError),
}

/// One scanned graph. `graph6` is the canonical code where the canonical
/// sweep applies (n <= 8) and the plain encoding otherwise; `kappa` is None
/// for the single-vertex graph, where vertex connectivity is undefined.
/// `rho` is computed only for graphs passing the minimality filter.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub graph6: String,
    pub n: usize,
    pub e: usize,
    pub kappa: Option<usize>,
    pub kappa_prime: usize,
    pub minimal: bool,
    pub rho: Option<f64>,
    pub degree_k_count: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RhoEntry {
    pub graph6: String,
    pub rho: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EdgeEntry {
    pub graph6: String,
    pub e: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub k: usize,
    pub mode: ConnKind,
    pub n: usize,
    /// Count of minimally k-(edge)-connected graphs scanned.
    pub population: usize,
    pub argmax_rho: Option<RhoEntry>,
    pub near_ties: Vec<RhoEntry>,
    pub argmax_edges: Option<EdgeEntry>,
    #[serde(rename = "matches_Kknk")]
    pub matches_kknk: bool,
}

/// Stable per-record key: canonical when available, plain graph6 otherwise.
fn record_code(g: &Graph) -> Result<String, ScanError> {
    if g.n() <= MAX_CANON_VERTICES {
        Ok(canonical_code(g).expect("n <= 8").into_string())
    } else {
        Ok(graph6::encode(g)?)
    }
}

/// Per-graph records in input order. Safe to call from a rayon pool of any
/// size; the output never depends on the schedule.
pub fn scan_records(
    graphs: &[Graph],
    k: usize,
    mode: ConnKind,
    tol: f64,
) -> Result<Vec<ScanRecord>, ScanError> {
    graphs
        .par_iter()
        .map(|g| {
            let cert = certify_minimality(g, k, mode);
            let minimal = cert.valid();
            let rho = if minimal {
                Some(spectral_radius(g, tol)?.rho)
            } else {
                None
            };
            Ok(ScanRecord {
                graph6: record_code(g)?,
                n: g.n(),
                e: g.edge_count(),
                kappa: vertex_connectivity(g).ok().map(|r| r.value),
                kappa_prime: edge_connectivity(g).value,
                minimal,
                rho,
                degree_k_count: degree_k_census(g, k),
            })
        })
        .collect()
}

/// Reduce records to the extremal summary. The argmax entries use exact
/// value comparison with the record code as a deterministic tie-break, so
/// the report is independent of input order and parallel schedule.
pub fn extremal_report(
    records: &[ScanRecord],
    k: usize,
    mode: ConnKind,
    n: usize,
) -> ExtremalReport {
    let minimal: Vec<&ScanRecord> = records.iter().filter(|r| r.minimal).collect();
    let population = minimal.len();

    let argmax_rho = minimal
        .iter()
        .filter_map(|r| r.rho.map(|rho| (rho, &r.graph6)))
        .max_by(|(ra, ca), (rb, cb)| {
            ra.partial_cmp(rb)
                .expect("rho is finite")
                .then_with(|| cb.cmp(ca))
        })
        .map(|(rho, code)| RhoEntry {
            graph6: code.clone(),
            rho,
        });

    let near_ties = match &argmax_rho {
        None => Vec::new(),
        Some(best) => {
            let mut ties: Vec<RhoEntry> = minimal
                .iter()
                .filter_map(|r| r.rho.map(|rho| (rho, &r.graph6)))
                .filter(|(rho, code)| *rho >= best.rho - NEAR_TIE_WINDOW && **code != best.graph6)
                .map(|(rho, code)| RhoEntry {
                    graph6: code.clone(),
                    rho,
                })
                .collect();
            ties.sort_by(|a, b| a.graph6.cmp(&b.graph6));
            ties
        }
    };

    let argmax_edges = minimal
        .iter()
        .max_by(|a, b| a.e.cmp(&b.e).then_with(|| b.graph6.cmp(&a.graph6)))
        .map(|r| EdgeEntry {
            graph6: r.graph6.clone(),
            e: r.e,
        });

    let matches_kknk = match &argmax_rho {
        None => false,
        Some(best) => match graph6::decode(best.graph6.as_bytes()) {
            Ok(g) => g.is_complete_bipartite_with_part(k),
            Err(_) => false,
        },
    };

    ExtremalReport {
        k,
        mode,
        n,
        population,
        argmax_rho,
        near_ties,
        argmax_edges,
        matches_kknk,
    }
}

/// Scan a same-order corpus end to end.
pub fn scan(
    graphs: &[Graph],
    k: usize,
    mode: ConnKind,
    tol: f64,
) -> Result<(Vec<ScanRecord>, ExtremalReport), ScanError> {
    let n = graphs.first().map(|g| g.n()).unwrap_or(0);
    if let Some(other) = graphs.iter().find(|g| g.n() != n) {
        return Err(ScanError::MixedN {
            first: n,
            other: other.n(),
        });
    }
    let records = scan_records(graphs, k, mode, tol)?;
    let report = extremal_report(&records, k, mode, n);
    Ok((records, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::enumerate_graphs;
    use crate::spectral::DEFAULT_TOL;

    #[test]
    fn scan_n5_k2_vertex_finds_complete_bipartite() {
        let graphs: Vec<Graph> = enumerate_graphs(5, 0).unwrap().collect();
        let (records, report) = scan(&graphs, 2, ConnKind::Vertex, DEFAULT_TOL).unwrap();
        assert_eq!(records.len(), graphs.len());
        // Minimally 2-connected graphs on 5 vertices: C_5 and K_{2,3}.
        assert_eq!(report.population, 2);
        let best = report.argmax_rho.unwrap();
        assert!((best.rho - 6.0f64.sqrt()).abs() < 1e-9);
        assert!(report.matches_kknk);
        assert!(report.near_ties.is_empty());
        assert_eq!(report.argmax_edges.unwrap().e, 6);
    }

    #[test]
    fn scan_rejects_mixed_n() {
        let graphs = vec![Graph::cycle(4).unwrap(), Graph::cycle(5).unwrap()];
        assert!(matches!(
            scan(&graphs, 2, ConnKind::Vertex, DEFAULT_TOL),
            Err(ScanError::MixedN { first: 4, other: 5 })
        ));
    }

    #[test]
    fn empty_population_reports_null_argmax() {
        // No graph on 5 vertices is 5-(edge)-connected.
        let graphs: Vec<Graph> = enumerate_graphs(5, 0).unwrap().collect();
        let (_, report) = scan(&graphs, 5, ConnKind::Vertex, DEFAULT_TOL).unwrap();
        assert_eq!(report.population, 0);
        assert!(report.argmax_rho.is_none());
        assert!(report.argmax_edges.is_none());
        assert!(!report.matches_kknk);
    }

    #[test]
    fn records_are_input_ordered_and_schedule_independent() {
        let graphs: Vec<Graph> = enumerate_graphs(4, 0).unwrap().collect();
        let a = scan_records(&graphs, 2, ConnKind::Edge, DEFAULT_TOL).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let b = pool
            .install(|| scan_records(&graphs, 2, ConnKind::Edge, DEFAULT_TOL))
            .unwrap();
        let codes_a: Vec<&str> = a.iter().map(|r| r.graph6.as_str()).collect();
        let codes_b: Vec<&str> = b.iter().map(|r| r.graph6.as_str()).collect();
        assert_eq!(codes_a, codes_b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
