//! The peel-and-rewire transformation: strip the outside vertices of their
//! stray edges and reattach them fully to a chosen high-coordinate k-set L,
//! certifying the spectral-radius change through the Rayleigh quotient.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::spectral::{spectral_radius, PerronResult, DEFAULT_TOL};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewireError {
    #[error("L must be nonempty")]
    EmptyL,
    #[error("L contains vertex {v}, out of range for n = {n}")]
    LOutOfRange { v: usize, n: usize },
    #[error("L must have exactly k = {expected} vertices, got {got}")]
    LSizeMismatch { expected: usize, got: usize },
    #[error("graphs must share a vertex set: {left} vs {right} vertices")]
    VertexCountMismatch { left: usize, right: usize },
}

/// One step of the peel order: the vertex removed, its edge counts into L and
/// into the rest of the shrinking graph at removal time, and whether the
/// degree stayed within the 2k budget. `removed` lists the non-L neighbors
/// whose edges get deleted by the rewrite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub vertex: usize,
    pub d_to_l: usize,
    pub d_rest: usize,
    pub bound_ok: bool,
    pub removed: Vec<usize>,
}

/// The full transformation record: the partition (L, common neighborhood V,
/// outside set U), the peel steps, and the rewired graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewirePlan {
    pub k: usize,
    pub l: VertexSet,
    pub v_common: VertexSet,
    pub u_set: VertexSet,
    pub steps: Vec<PeelStep>,
    #[serde(skip)]
    pub result: Graph,
}

fn validate_l(g: &Graph, l: &VertexSet) -> Result<(), RewireError> {
    if l.is_empty() {
        return Err(RewireError::EmptyL);
    }
    if let Some(v) = l.iter().find(|&v| v >= g.n()) {
        return Err(RewireError::LOutOfRange { v, n: g.n() });
    }
    Ok(())
}

/// Split V(G) around L: `v_common` collects the vertices outside L adjacent
/// to all of L, and U is everything else.
pub fn partition_lvu(g: &Graph, l: &VertexSet) -> Result<(VertexSet, VertexSet), RewireError> {
    validate_l(g, l)?;
    let mut v_common = VertexSet::EMPTY;
    for v in 0..g.n() {
        if !l.contains(v) && l.is_subset_of(g.neighbors(v)) {
            v_common.insert(v);
        }
    }
    let u_set = g.vertex_set().difference(&l.union(&v_common));
    Ok((v_common, u_set))
}

/// Peel U greedily by minimum current degree (ties to the lowest index),
/// recording each step. A degree above 2k is recorded via `bound_ok = false`
/// rather than treated as an error: the transformation stays well defined.
pub fn peel_order(g: &Graph, l: &VertexSet, k: usize) -> Result<Vec<PeelStep>, RewireError> {
    let (_, u_set) = partition_lvu(g, l)?;
    let mut alive = g.vertex_set();
    let mut remaining = u_set;
    let mut steps = Vec::with_capacity(remaining.len());
    while let Some(first) = remaining.min_elem() {
        let mut pick = first;
        let mut pick_deg = g.neighbors(pick).intersection_len(&alive);
        for v in remaining.iter().skip(1) {
            let d = g.neighbors(v).intersection_len(&alive);
            if d < pick_deg {
                pick = v;
                pick_deg = d;
            }
        }
        let d_to_l = g.degree_in(pick, l);
        let removed: Vec<usize> = g
            .neighbors(pick)
            .intersection(&alive)
            .difference(l)
            .iter()
            .collect();
        let d_rest = removed.len();
        debug_assert_eq!(d_to_l + d_rest, pick_deg);
        steps.push(PeelStep {
            vertex: pick,
            d_to_l,
            d_rest,
            bound_ok: d_to_l + d_rest <= 2 * k,
            removed,
        });
        alive.remove(pick);
        remaining.remove(pick);
    }
    Ok(steps)
}

/// Apply the rewrite: every peeled vertex loses its edges into the rest of
/// the shrinking graph and gains all missing edges into L. Edges inside
/// L and its common neighborhood are untouched. In the result, every vertex
/// of U has neighborhood exactly L.
pub fn rewire_to_l(g: &Graph, l: &VertexSet, k: usize) -> Result<RewirePlan, RewireError> {
    validate_l(g, l)?;
    if l.len() != k {
        return Err(RewireError::LSizeMismatch {
            expected: k,
            got: l.len(),
        });
    }
    let (v_common, u_set) = partition_lvu(g, l)?;
    let steps = peel_order(g, l, k)?;
    let mut result = g.clone();
    for step in &steps {
        for &v in &step.removed {
            result = result.without_edge(step.vertex, v);
        }
        for v in l.iter() {
            if !result.has_edge(step.vertex, v) {
                result = result
                    .with_edge(step.vertex, v)
                    .expect("L vertices are in range and distinct from U");
            }
        }
    }
    Ok(RewirePlan {
        k,
        l: *l,
        v_common,
        u_set,
        steps,
        result,
    })
}

/// The default L: the k vertices with the largest Perron coordinates,
/// breaking ties toward lower indices.
pub fn top_coordinate_set(perron: &PerronResult, k: usize) -> VertexSet {
    let mut order: Vec<usize> = (0..perron.vector.len()).collect();
    order.sort_by(|&a, &b| {
        perron.vector[b]
            .partial_cmp(&perron.vector[a])
            .expect("Perron coordinates are finite")
            .then(a.cmp(&b))
    });
    order.into_iter().take(k).collect()
}

/// Rayleigh comparison of an edit under a fixed vector x (normally the
/// Perron vector of the old graph): delta is the edge-sum difference
/// sum_{E(new)} x_u x_v - sum_{E(old)} x_u x_v. A positive delta forces
/// rho(new) > rho(old) when x is the old Perron vector; the report also
/// recomputes both radii directly when both graphs are connected.
#[derive(Debug, Clone, Serialize)]
pub struct RayleighCertificate {
    pub delta: f64,
    pub rho_before: Option<f64>,
    pub rho_after: Option<f64>,
    pub rho_increase_confirmed: Option<bool>,
}

pub fn certify_rayleigh_increase(
    g_old: &Graph,
    g_new: &Graph,
    x: &[f64],
) -> Result<RayleighCertificate, RewireError> {
    if g_old.n() != g_new.n() {
        return Err(RewireError::VertexCountMismatch {
            left: g_old.n(),
            right: g_new.n(),
        });
    }
    if x.len() != g_old.n() {
        return Err(RewireError::VertexCountMismatch {
            left: g_old.n(),
            right: x.len(),
        });
    }
    let edge_sum = |g: &Graph| -> f64 { g.edges().iter().map(|&(u, v)| x[u] * x[v]).sum() };
    let delta = edge_sum(g_new) - edge_sum(g_old);
    let rho_before = spectral_radius(g_old, DEFAULT_TOL).ok().map(|p| p.rho);
    let rho_after = spectral_radius(g_new, DEFAULT_TOL).ok().map(|p| p.rho);
    let rho_increase_confirmed = match (rho_before, rho_after) {
        (Some(b), Some(a)) => Some(a > b),
        _ => None,
    };
    Ok(RayleighCertificate {
        delta,
        rho_before,
        rho_after,
        rho_increase_confirmed,
    })
}

/// Per-step lower-bound terms for the Rayleigh delta of a plan under x:
/// (k - d_i) * min over L of x_v minus the sum of x over the removed
/// neighbors. Summing x_{u_i} times these terms bounds delta from below.
pub fn peel_step_terms(plan: &RewirePlan, x: &[f64]) -> Vec<f64> {
    let min_l = plan.l.iter().map(|v| x[v]).fold(f64::INFINITY, f64::min);
    plan.steps
        .iter()
        .map(|step| {
            let removed_sum: f64 = step.removed.iter().map(|&v| x[v]).sum();
            (plan.k - step.d_to_l) as f64 * min_l - removed_sum
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6;

    /// K_{2,4} with a pendant vertex attached to one right-side vertex.
    fn perturbed_bipartite() -> Graph {
        let mut edges = Vec::new();
        for u in 0..2 {
            for v in 2..6 {
                edges.push((u, v));
            }
        }
        edges.push((6, 2));
        Graph::from_edges(7, &edges).unwrap()
    }

    #[test]
    fn partition_on_complete_bipartite() {
        let g = Graph::complete_bipartite(3, 10).unwrap();
        let l: VertexSet = (0..3).collect();
        let (v_common, u_set) = partition_lvu(&g, &l).unwrap();
        assert_eq!(v_common.len(), 7);
        assert!(u_set.is_empty());
    }

    #[test]
    fn partition_with_pendant() {
        let g = perturbed_bipartite();
        let l: VertexSet = (0..2).collect();
        let (v_common, u_set) = partition_lvu(&g, &l).unwrap();
        assert_eq!(v_common.to_vec(), vec![2, 3, 4, 5]);
        assert_eq!(u_set.to_vec(), vec![6]);
    }

    #[test]
    fn partition_on_cycle() {
        let g = Graph::cycle(5).unwrap();
        let l = VertexSet::singleton(0);
        let (v_common, u_set) = partition_lvu(&g, &l).unwrap();
        assert_eq!(v_common.to_vec(), vec![1, 4]);
        assert_eq!(u_set.to_vec(), vec![2, 3]);
    }

    #[test]
    fn partition_errors() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(
            partition_lvu(&g, &VertexSet::EMPTY),
            Err(RewireError::EmptyL)
        );
        assert_eq!(
            partition_lvu(&g, &VertexSet::singleton(9)),
            Err(RewireError::LOutOfRange { v: 9, n: 5 })
        );
    }

    #[test]
    fn peel_order_empty_u() {
        let g = Graph::complete_bipartite(2, 6).unwrap();
        let l: VertexSet = (0..2).collect();
        assert!(peel_order(&g, &l, 2).unwrap().is_empty());
    }

    #[test]
    fn peel_order_pendant() {
        let g = perturbed_bipartite();
        let l: VertexSet = (0..2).collect();
        let steps = peel_order(&g, &l, 2).unwrap();
        assert_eq!(steps.len(), 1);
        let s = &steps[0];
        assert_eq!((s.vertex, s.d_to_l, s.d_rest), (6, 0, 1));
        assert!(s.bound_ok);
        assert_eq!(s.removed, vec![2]);
    }

    #[test]
    fn peel_order_on_cycle() {
        let g = Graph::cycle(5).unwrap();
        let l = VertexSet::singleton(0);
        let steps = peel_order(&g, &l, 1).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].vertex, 2);
        assert_eq!(steps[0].d_to_l + steps[0].d_rest, 2);
        assert!(steps[0].bound_ok);
        assert_eq!(steps[1].vertex, 3);
        assert_eq!(steps[1].d_rest, 1);
    }

    #[test]
    fn rewire_is_identity_on_complete_bipartite() {
        let g = Graph::complete_bipartite(3, 9).unwrap();
        let l: VertexSet = (0..3).collect();
        let plan = rewire_to_l(&g, &l, 3).unwrap();
        assert!(plan.steps.is_empty());
        assert_eq!(plan.result, g);
    }

    #[test]
    fn rewire_pendant_to_complete_bipartite() {
        let g = perturbed_bipartite();
        let l: VertexSet = (0..2).collect();
        let plan = rewire_to_l(&g, &l, 2).unwrap();
        let expected = Graph::complete_bipartite(2, 7).unwrap();
        assert_eq!(
            graph6::encode(&plan.result).unwrap(),
            graph6::encode(&expected).unwrap()
        );
        let x = spectral_radius(&g, DEFAULT_TOL).unwrap().vector;
        let cert = certify_rayleigh_increase(&g, &plan.result, &x).unwrap();
        assert!(cert.delta > 0.0);
        assert_eq!(cert.rho_increase_confirmed, Some(true));
        assert!((cert.rho_after.unwrap() - 10.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn rewire_detaches_u_to_u_edges() {
        // L = {0, 1}; 2 and 3 are common neighbors; 4 and 5 are U-vertices
        // joined to each other and one L-vertex each.
        let g = Graph::from_edges(6, &[(0, 2), (1, 2), (0, 3), (1, 3), (4, 5), (4, 0), (5, 1)])
            .unwrap();
        let l: VertexSet = (0..2).collect();
        let plan = rewire_to_l(&g, &l, 2).unwrap();
        assert!(!plan.result.has_edge(4, 5));
        assert_eq!(plan.result.neighbors(4).to_vec(), vec![0, 1]);
        assert_eq!(plan.result.neighbors(5).to_vec(), vec![0, 1]);
        assert!(plan.result.is_complete_bipartite_with_part(2));
    }

    #[test]
    fn rewire_is_idempotent() {
        let g = perturbed_bipartite();
        let l: VertexSet = (0..2).collect();
        let once = rewire_to_l(&g, &l, 2).unwrap();
        let twice = rewire_to_l(&once.result, &l, 2).unwrap();
        assert_eq!(twice.result, once.result);
        // After one pass, the former U-vertices joined the common neighborhood.
        let (_, u_after) = partition_lvu(&once.result, &l).unwrap();
        assert!(u_after.is_empty());
    }

    #[test]
    fn rewire_rejects_wrong_l_size() {
        let g = Graph::cycle(5).unwrap();
        let l: VertexSet = (0..2).collect();
        assert_eq!(
            rewire_to_l(&g, &l, 3),
            Err(RewireError::LSizeMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn certificate_identity_rewire_has_zero_delta() {
        let g = Graph::complete_bipartite(2, 6).unwrap();
        let x = spectral_radius(&g, DEFAULT_TOL).unwrap().vector;
        let cert = certify_rayleigh_increase(&g, &g, &x).unwrap();
        assert_eq!(cert.delta, 0.0);
    }

    #[test]
    fn certificate_edge_removal_has_negative_delta() {
        let g = Graph::cycle(4).unwrap();
        let x = spectral_radius(&g, DEFAULT_TOL).unwrap().vector;
        let h = g.without_edge(0, 1);
        let cert = certify_rayleigh_increase(&g, &h, &x).unwrap();
        assert!(cert.delta < 0.0);
    }

    #[test]
    fn certificate_rejects_mismatched_inputs() {
        let g = Graph::cycle(4).unwrap();
        let h = Graph::cycle(5).unwrap();
        assert!(certify_rayleigh_increase(&g, &h, &[1.0; 4]).is_err());
        assert!(certify_rayleigh_increase(&g, &g, &[1.0; 3]).is_err());
    }

    #[test]
    fn top_coordinate_set_picks_the_heavy_side() {
        let g = Graph::complete_bipartite(3, 12).unwrap();
        let p = spectral_radius(&g, DEFAULT_TOL).unwrap();
        assert_eq!(top_coordinate_set(&p, 3).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn step_terms_bound_the_delta() {
        let g = perturbed_bipartite();
        let l: VertexSet = (0..2).collect();
        let plan = rewire_to_l(&g, &l, 2).unwrap();
        let x = spectral_radius(&g, DEFAULT_TOL).unwrap().vector;
        let terms = peel_step_terms(&plan, &x);
        assert_eq!(terms.len(), 1);
        let lower: f64 = plan
            .steps
            .iter()
            .zip(terms.iter())
            .map(|(s, t)| x[s.vertex] * t)
            .sum();
        let cert = certify_rayleigh_increase(&g, &plan.result, &x).unwrap();
        assert!(cert.delta >= lower - 1e-12);
    }
}
