//! Exact vertex and edge connectivity with witness cuts, minimality
//! certificates, brute-force oracles, and the recursive edge-cut
//! decomposition used by the subgraph edge-bound checks.

use serde::Serialize;
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnKind {
    Vertex,
    Edge,
}

impl ConnKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConnKind::Vertex => "vertex",
            ConnKind::Edge => "edge",
        }
    }
}

impl std::str::FromStr for ConnKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vertex" => Ok(ConnKind::Vertex),
            "edge" => Ok(ConnKind::Edge),
            other => Err(format!("unknown connectivity kind '{other}'")),
        }
    }
}

/// An explicit certificate for the reported connectivity value: a vertex
/// separator or an edge cut whose removal disconnects the graph (or, for the
/// complete-graph vertex case, leaves the trivial graph).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutWitness {
    Vertices(VertexSet),
    Edges(Vec<(usize, usize)>),
}

impl CutWitness {
    pub fn size(&self) -> usize {
        match self {
            CutWitness::Vertices(s) => s.len(),
            CutWitness::Edges(es) => es.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub kind: ConnKind,
    pub value: usize,
    pub witness: CutWitness,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("vertex connectivity needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("brute-force connectivity exceeds its caps: {0}")]
    ExceedsCaps(String),
}

/// Edge connectivity with a witness cut. By convention the one-vertex graph
/// has edge connectivity 0 (empty witness), and so does any disconnected
/// graph.
pub fn edge_connectivity(g: &Graph) -> ConnectivityReport {
    let n = g.n();
    if n == 1 {
        return ConnectivityReport {
            kind: ConnKind::Edge,
            value: 0,
            witness: CutWitness::Edges(Vec::new()),
        };
    }
    let mut net = FlowNetwork::new(n);
    for (u, v) in g.edges() {
        net.add_arc(u, v, 1);
        net.add_arc(v, u, 1);
    }
    let mut best = usize::MAX;
    let mut best_t = 1;
    for t in 1..n {
        net.reset();
        let f = net.max_flow(0, t);
        if f < best {
            best = f;
            best_t = t;
        }
    }
    net.reset();
    net.max_flow(0, best_t);
    let reach = net.residual_reachable(0);
    let witness: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| reach[u] != reach[v])
        .collect();
    debug_assert_eq!(witness.len(), best);
    ConnectivityReport {
        kind: ConnKind::Edge,
        value: best,
        witness: CutWitness::Edges(witness),
    }
}

/// The source side of the minimum edge cut that [`edge_connectivity`] reports,
/// as a vertex set. For a disconnected graph this is the component of the
/// lowest-index vertex.
pub fn min_cut_side(g: &Graph) -> VertexSet {
    let report = edge_connectivity(g);
    let cut = match &report.witness {
        CutWitness::Edges(es) => es.clone(),
        CutWitness::Vertices(_) => unreachable!(),
    };
    let mut h = g.clone();
    for (u, v) in cut {
        h = h.without_edge(u, v);
    }
    h.component_of(0, &h.vertex_set())
}

fn vertex_flow_network(g: &Graph) -> FlowNetwork {
    // Standard vertex-splitting: v_in = 2v, v_out = 2v+1, unit arc through
    // each vertex, wide arcs along each edge in both directions.
    let n = g.n();
    let wide = n as i32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1, 1);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, wide);
        net.add_arc(2 * v + 1, 2 * u, wide);
    }
    net
}

fn separator_from_flow(net: &FlowNetwork, n: usize, source_out: usize) -> VertexSet {
    let reach = net.residual_reachable(source_out);
    (0..n)
        .filter(|&w| reach[2 * w] && !reach[2 * w + 1])
        .collect()
}

/// Vertex connectivity with a witness separator. Complete graphs get
/// value n-1 with witness {0, .., n-2} (removal leaves the trivial graph);
/// otherwise the value is the minimum over non-adjacent pairs of the
/// internally-disjoint path count.
pub fn vertex_connectivity(g: &Graph) -> Result<ConnectivityReport, ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall(n));
    }
    if g.is_complete() {
        return Ok(ConnectivityReport {
            kind: ConnKind::Vertex,
            value: n - 1,
            witness: CutWitness::Vertices((0..n - 1).collect()),
        });
    }
    let mut net = vertex_flow_network(g);
    let mut best = usize::MAX;
    let mut best_pair = (0, 0);
    for u in 0..n {
        for v in (u + 1)..n {
            if g.has_edge(u, v) {
                continue;
            }
            net.reset();
            let f = net.max_flow(2 * u + 1, 2 * v);
            if f < best {
                best = f;
                best_pair = (u, v);
            }
        }
    }
    debug_assert_ne!(
        best,
        usize::MAX,
        "non-complete graph has a non-adjacent pair"
    );
    net.reset();
    net.max_flow(2 * best_pair.0 + 1, 2 * best_pair.1);
    let witness = separator_from_flow(&net, n, 2 * best_pair.0 + 1);
    debug_assert_eq!(witness.len(), best);
    Ok(ConnectivityReport {
        kind: ConnKind::Vertex,
        value: best,
        witness: CutWitness::Vertices(witness),
    })
}

/// Connectivity of the requested kind via the flow machinery. For the vertex
/// kind on a single vertex this reports 0 with an empty witness, which is the
/// convention used by the scan records.
pub fn connectivity_value(g: &Graph, kind: ConnKind) -> usize {
    match kind {
        ConnKind::Edge => edge_connectivity(g).value,
        ConnKind::Vertex => match vertex_connectivity(g) {
            Ok(r) => r.value,
            Err(_) => 0,
        },
    }
}

const BRUTE_VERTEX_CAP: usize = 12;
const BRUTE_EDGE_FULL_CAP: usize = 24;
const BRUTE_EDGE_SIZE_CAP: usize = 8;

/// Independent oracle: exhaustively test removal sets in increasing size and
/// return the first that disconnects the graph (vertex case: or leaves the
/// trivial graph). Deliberately shares no code with the flow-based routines.
pub fn brute_force_connectivity(
    g: &Graph,
    kind: ConnKind,
) -> Result<ConnectivityReport, ConnectivityError> {
    match kind {
        ConnKind::Vertex => brute_force_vertex(g),
        ConnKind::Edge => brute_force_edge(g),
    }
}

fn components_within(g: &Graph, within: &VertexSet) -> usize {
    let mut seen = VertexSet::EMPTY;
    let mut count = 0;
    for v in within.iter() {
        if !seen.contains(v) {
            seen = seen.union(&g.component_of(v, within));
            count += 1;
        }
    }
    count
}

fn brute_force_vertex(g: &Graph) -> Result<ConnectivityReport, ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall(n));
    }
    if n > BRUTE_VERTEX_CAP {
        return Err(ConnectivityError::ExceedsCaps(format!(
            "vertex oracle capped at n <= {BRUTE_VERTEX_CAP}, got {n}"
        )));
    }
    let all: Vec<usize> = (0..n).collect();
    for size in 0..n {
        let mut found = None;
        for_each_combination(&all, size, &mut |subset| {
            if found.is_some() {
                return;
            }
            let removed: VertexSet = subset.iter().copied().collect();
            let rest = VertexSet::full(n).difference(&removed);
            let disconnects = if rest.len() == 1 {
                true // trivial graph
            } else {
                components_within(g, &rest) >= 2
            };
            if disconnects {
                found = Some(removed);
            }
        });
        if let Some(witness) = found {
            return Ok(ConnectivityReport {
                kind: ConnKind::Vertex,
                value: size,
                witness: CutWitness::Vertices(witness),
            });
        }
    }
    unreachable!("removing n-1 vertices always leaves the trivial graph")
}

fn brute_force_edge(g: &Graph) -> Result<ConnectivityReport, ConnectivityError> {
    let n = g.n();
    if n == 1 {
        return Ok(ConnectivityReport {
            kind: ConnKind::Edge,
            value: 0,
            witness: CutWitness::Edges(Vec::new()),
        });
    }
    let edges = g.edges();
    let cap = if edges.len() <= BRUTE_EDGE_FULL_CAP {
        edges.len()
    } else {
        BRUTE_EDGE_SIZE_CAP
    };
    for size in 0..=cap {
        let mut found = None;
        for_each_combination(&edges, size, &mut |subset| {
            if found.is_some() {
                return;
            }
            let mut h = g.clone();
            for &(u, v) in subset {
                h = h.without_edge(u, v);
            }
            if components_within(&h, &h.vertex_set()) >= 2 {
                found = Some(subset.to_vec());
            }
        });
        if let Some(witness) = found {
            return Ok(ConnectivityReport {
                kind: ConnKind::Edge,
                value: size,
                witness: CutWitness::Edges(witness),
            });
        }
    }
    Err(ConnectivityError::ExceedsCaps(format!(
        "no disconnecting edge set of size <= {cap} found (e = {})",
        edges.len()
    )))
}

/// Visit all size-`k` combinations of `items` in lexicographic order.
fn for_each_combination<T: Clone>(items: &[T], k: usize, visit: &mut dyn FnMut(&[T])) {
    let mut indices: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return;
    }
    loop {
        let subset: Vec<T> = indices.iter().map(|&i| items[i].clone()).collect();
        visit(&subset);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if indices[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        indices[i] += 1;
        for j in (i + 1)..k {
            indices[j] = indices[j - 1] + 1;
        }
    }
}

/// Per-edge evidence that the graph is minimally k-(edge)-connected: the base
/// connectivity meets k, and deleting any single edge admits a cut of size
/// at most k-1.
///
/// Minimality forces the connectivity to be exactly k; certifying
/// "connectivity >= k plus a sub-k cut in every G-e" is equivalent.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalityCertificate {
    pub k: usize,
    pub kind: ConnKind,
    /// Whether the graph itself is k-(edge)-connected.
    pub base_ok: bool,
    pub per_edge: Vec<EdgeDrop>,
}

/// For one edge, a witness cut of size < k in G - e, or None if G - e is
/// still k-(edge)-connected (which refutes minimality).
#[derive(Debug, Clone, Serialize)]
pub struct EdgeDrop {
    pub edge: (usize, usize),
    pub witness: Option<CutWitness>,
}

impl MinimalityCertificate {
    pub fn valid(&self) -> bool {
        self.base_ok && self.per_edge.iter().all(|d| d.witness.is_some())
    }
}

/// Certify that `g` is minimally k-(edge)-connected. Failure is expressed in
/// the certificate, never as an error.
pub fn certify_minimality(g: &Graph, k: usize, kind: ConnKind) -> MinimalityCertificate {
    debug_assert!(k >= 1);
    let base_ok = match kind {
        ConnKind::Edge => edge_connectivity(g).value >= k,
        ConnKind::Vertex => match vertex_connectivity(g) {
            Ok(r) => r.value >= k,
            Err(_) => false, // single vertex: never k-connected for k >= 1
        },
    };
    let per_edge = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let h = g.without_edge(u, v);
            let report = match kind {
                ConnKind::Edge => edge_connectivity(&h),
                // h has >= 2 vertices (an edge existed) and is not complete
                // (u, v are now non-adjacent), so the flow path always runs.
                ConnKind::Vertex => vertex_connectivity(&h).expect("n >= 2"),
            };
            let witness = (report.value < k).then_some(report.witness);
            EdgeDrop {
                edge: (u, v),
                witness,
            }
        })
        .collect();
    MinimalityCertificate {
        k,
        kind,
        base_ok,
        per_edge,
    }
}

/// Search for a vertex set inducing a j-edge-connected subgraph with at
/// least 2 vertices. Recursively splits along minimum edge cuts: a
/// j-edge-connected subgraph cannot straddle a cut of fewer than j edges,
/// so it survives on one side of every split.
pub fn find_j_edge_connected_subgraph(g: &Graph, j: usize) -> Option<VertexSet> {
    debug_assert!(j >= 1);
    find_j_in_part(g, &g.vertex_set(), j)
}

fn find_j_in_part(g: &Graph, part: &VertexSet, j: usize) -> Option<VertexSet> {
    if part.len() < 2 {
        return None;
    }
    let sub = g.induced(part).expect("part is nonempty");
    let labels: Vec<usize> = part.iter().collect();
    let report = edge_connectivity(&sub);
    if report.value >= j {
        return Some(*part);
    }
    let side_local = min_cut_side(&sub);
    let side: VertexSet = side_local.iter().map(|i| labels[i]).collect();
    let rest = part.difference(&side);
    debug_assert!(!side.is_empty() && !rest.is_empty());
    find_j_in_part(g, &side, j).or_else(|| find_j_in_part(g, &rest, j))
}

/// One node of the recursive edge-cut decomposition.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompNode {
    Leaf {
        part: VertexSet,
        k_edge_connected: bool,
    },
    Split {
        cut_size: usize,
        left: Box<DecompNode>,
        right: Box<DecompNode>,
    },
}

/// Full recursion of the splitting procedure: every part with edge
/// connectivity below k and at least 2 vertices splits along a minimum edge
/// cut; leaves induce k-edge-connected subgraphs or are singletons. The tree
/// stores the edge-count inequality e(G) <= sum of leaf edges + (k-1) * splits,
/// which holds because each recorded cut has at most k-1 edges.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionTree {
    pub k: usize,
    pub root: DecompNode,
    pub splits: usize,
    pub leaf_edge_total: usize,
    pub bound_lhs: usize,
    pub bound_rhs: usize,
    pub bound_holds: bool,
}

pub fn decompose(g: &Graph, k: usize) -> DecompositionTree {
    debug_assert!(k >= 1);
    let mut splits = 0usize;
    let mut leaf_edge_total = 0usize;
    let root = decompose_part(g, &g.vertex_set(), k, &mut splits, &mut leaf_edge_total);
    let bound_lhs = g.edge_count();
    let bound_rhs = leaf_edge_total + (k - 1) * splits;
    DecompositionTree {
        k,
        root,
        splits,
        leaf_edge_total,
        bound_lhs,
        bound_rhs,
        bound_holds: bound_lhs <= bound_rhs,
    }
}

fn decompose_part(
    g: &Graph,
    part: &VertexSet,
    k: usize,
    splits: &mut usize,
    leaf_edge_total: &mut usize,
) -> DecompNode {
    if part.len() == 1 {
        return DecompNode::Leaf {
            part: *part,
            k_edge_connected: false,
        };
    }
    let sub = g.induced(part).expect("part is nonempty");
    let labels: Vec<usize> = part.iter().collect();
    let report = edge_connectivity(&sub);
    if report.value >= k {
        *leaf_edge_total += sub.edge_count();
        return DecompNode::Leaf {
            part: *part,
            k_edge_connected: true,
        };
    }
    let side_local = min_cut_side(&sub);
    let side: VertexSet = side_local.iter().map(|i| labels[i]).collect();
    let rest = part.difference(&side);
    *splits += 1;
    let left = decompose_part(g, &side, k, splits, leaf_edge_total);
    let right = decompose_part(g, &rest, k, splits, leaf_edge_total);
    DecompNode::Split {
        cut_size: report.value,
        left: Box::new(left),
        right: Box::new(right),
    }
}

impl DecompositionTree {
    /// Leaf parts in left-to-right order; they partition the vertex set.
    pub fn leaf_parts(&self) -> Vec<(VertexSet, bool)> {
        let mut out = Vec::new();
        collect_leaves(&self.root, &mut out);
        out
    }
}

fn collect_leaves(node: &DecompNode, out: &mut Vec<(VertexSet, bool)>) {
    match node {
        DecompNode::Leaf {
            part,
            k_edge_connected,
        } => out.push((*part, *k_edge_connected)),
        DecompNode::Split { left, right, .. } => {
            collect_leaves(left, out);
            collect_leaves(right, out);
        }
    }
}
