//! Spectral radius and Perron vector by shifted power iteration, with a
//! dense Jacobi eigensolver as an independent oracle.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Default eigen-residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Iteration cap for the power method.
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("spectral radius requires a connected graph")]
    Disconnected,
    #[error(
        "power iteration did not converge within {iterations} iterations (residual {residual:.3e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("vector must not be all zeros")]
    ZeroVector,
    #[error("vector has dimension {got}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dominant eigenpair of the adjacency matrix of a connected graph.
///
/// The vector is max-normalized: entries lie in [0, 1] with at least one
/// entry exactly 1, and all entries are strictly positive for a connected
/// graph. `residual` is the sup norm of A*x - rho*x for the returned pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronResult {
    pub rho: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl PerronResult {
    /// Index of the maximum coordinate (lowest index on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &x) in self.vector.iter().enumerate() {
            if x > self.vector[best] {
                best = i;
            }
        }
        best
    }
}

fn adjacency_mul(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, slot) in out.iter_mut().enumerate() {
        let mut sum = 0.0;
        for u in g.neighbors(v).iter() {
            sum += x[u];
        }
        *slot = sum;
    }
}

/// Power iteration on A + I. The shift keeps the iteration from oscillating
/// on bipartite graphs, whose adjacency spectrum contains -rho; it changes
/// the dominant eigenvalue by exactly one and leaves the eigenvector alone.
/// Terminates when the eigen-residual drops below `tol * max(rho, 1)`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<PerronResult, SpectralError> {
    if tol <= 0.0 {
        return Err(SpectralError::NonPositiveTolerance(tol));
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = g.n();
    let mut x = vec![1.0f64; n];
    let mut ax = vec![0.0f64; n];
    let mut iterations = 0usize;
    loop {
        adjacency_mul(g, &x, &mut ax);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let xax: f64 = x.iter().zip(ax.iter()).map(|(a, b)| a * b).sum();
        let rho = xax / xx;
        let residual = x
            .iter()
            .zip(ax.iter())
            .map(|(&xi, &axi)| (axi - rho * xi).abs())
            .fold(0.0f64, f64::max);
        if residual <= tol * rho.max(1.0) {
            return Ok(PerronResult {
                rho,
                vector: x,
                residual,
                iterations,
            });
        }
        if iterations >= MAX_ITERATIONS {
            return Err(SpectralError::NonConvergence {
                iterations,
                residual,
            });
        }
        // One step of (A + I) x, renormalized to max coordinate 1.
        let mut max = 0.0f64;
        for i in 0..n {
            ax[i] += x[i];
            if ax[i] > max {
                max = ax[i];
            }
        }
        for i in 0..n {
            x[i] = ax[i] / max;
        }
        iterations += 1;
    }
}

/// All eigenvalues of the symmetric adjacency matrix, sorted ascending.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("n >= 1")
    }
}

const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below 1e-12.
pub fn dense_spectrum(g: &Graph) -> Spectrum {
    let n = g.n();
    let mut a = vec![0.0f64; n * n];
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            a[u * n + v] = 1.0;
        }
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += 2.0 * a[p * n + q] * a[p * n + q];
                }
            }
            s.sqrt()
        };
        if off <= JACOBI_OFF_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p * n + i];
                    let aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Spectrum { eigenvalues }
}

/// Rayleigh quotient x'Ax / x'x = 2 * sum over edges of x_u x_v / |x|^2.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != g.n() {
        return Err(SpectralError::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let norm_sq: f64 = x.iter().map(|v| v * v).sum();
    if norm_sq == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    let edge_sum: f64 = g.edges().iter().map(|&(u, v)| x[u] * x[v]).sum();
    Ok(2.0 * edge_sum / norm_sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_rho_is_sqrt_kn() {
        let g = Graph::complete_bipartite(2, 7).unwrap();
        let p = spectral_radius(&g, DEFAULT_TOL).unwrap();
        assert!((p.rho - 10.0f64.sqrt()).abs() < 1e-9, "rho = {}", p.rho);
        // Left side carries the max coordinate 1; right side is 2/sqrt(10).
        let expected_right = 2.0 / 10.0f64.sqrt();
        for v in 0..2 {
            assert!((p.vector[v] - 1.0).abs() < 1e-9);
        }
        for v in 2..7 {
            assert!((p.vector[v] - expected_right).abs() < 1e-9);
        }
    }

    #[test]
    fn cycles_have_rho_two() {
        for n in [3, 4, 5, 6, 10] {
            let p = spectral_radius(&Graph::cycle(n).unwrap(), DEFAULT_TOL).unwrap();
            assert!((p.rho - 2.0).abs() < 1e-9, "C_{n}: rho = {}", p.rho);
        }
    }

    #[test]
    fn single_vertex_has_rho_zero() {
        let p = spectral_radius(&Graph::empty(1).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(p.rho, 0.0);
        assert_eq!(p.vector, vec![1.0]);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(
            spectral_radius(&g, DEFAULT_TOL),
            Err(SpectralError::Disconnected)
        );
    }

    #[test]
    fn perron_vector_is_positive_and_normalized() {
        let g = Graph::path(7).unwrap();
        let p = spectral_radius(&g, DEFAULT_TOL).unwrap();
        assert!(p.vector.iter().all(|&x| x > 0.0 && x <= 1.0));
        assert!(p.vector.contains(&1.0));
        assert!(p.residual <= DEFAULT_TOL * p.rho.max(1.0));
    }

    #[test]
    fn dense_spectrum_of_k3() {
        let s = dense_spectrum(&Graph::complete(3).unwrap());
        let expected = [-1.0, -1.0, 2.0];
        for (got, want) in s.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn dense_spectrum_of_star() {
        let s = dense_spectrum(&Graph::star(5).unwrap());
        let expected = [-2.0, 0.0, 0.0, 0.0, 2.0];
        for (got, want) in s.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn dense_spectrum_of_p3() {
        let s = dense_spectrum(&Graph::path(3).unwrap());
        let r2 = 2.0f64.sqrt();
        let expected = [-r2, 0.0, r2];
        for (got, want) in s.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn spectrum_trace_identities() {
        let g = Graph::complete_bipartite(3, 8).unwrap();
        let s = dense_spectrum(&g);
        let sum: f64 = s.eigenvalues.iter().sum();
        let sum_sq: f64 = s.eigenvalues.iter().map(|l| l * l).sum();
        assert!(sum.abs() < 1e-8);
        assert!((sum_sq - 2.0 * g.edge_count() as f64).abs() < 1e-8);
    }

    #[test]
    fn rayleigh_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!((rayleigh_quotient(&k2, &[1.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);

        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(rayleigh_quotient(&c4, &[1.0, 0.0, 1.0, 0.0]).unwrap(), 0.0);

        let g = Graph::complete_bipartite(2, 6).unwrap();
        let p = spectral_radius(&g, DEFAULT_TOL).unwrap();
        let rq = rayleigh_quotient(&g, &p.vector).unwrap();
        assert!((rq - p.rho).abs() < 1e-9);
    }

    #[test]
    fn rayleigh_errors() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(
            rayleigh_quotient(&g, &[0.0; 4]),
            Err(SpectralError::ZeroVector)
        );
        assert!(matches!(
            rayleigh_quotient(&g, &[1.0; 3]),
            Err(SpectralError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn power_iteration_matches_jacobi_on_families() {
        for g in [
            Graph::complete(6).unwrap(),
            Graph::complete_bipartite(3, 9).unwrap(),
            Graph::path(11).unwrap(),
            Graph::cycle(9).unwrap(),
        ] {
            let p = spectral_radius(&g, DEFAULT_TOL).unwrap();
            let s = dense_spectrum(&g);
            assert!(
                (p.rho - s.max()).abs() < 1e-8,
                "power {} vs jacobi {}",
                p.rho,
                s.max()
            );
        }
    }
}
