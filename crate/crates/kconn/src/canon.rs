//! Canonical forms by exhaustive permutation sweep, and isomorph-free
//! enumeration of all graphs on very few vertices.
//!
//! The canonical code of a graph is the lexicographically smallest graph6
//! encoding over all vertex relabelings. Sweeping every permutation is only
//! viable for n <= 8 (40320 permutations); larger corpora are expected to
//! arrive pre-deduplicated in graph6 form.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6;

/// Largest n for which the canonical code is computed.
pub const MAX_CANON_VERTICES: usize = 8;

/// Largest n accepted by [`enumerate_graphs`].
pub const MAX_ENUM_VERTICES: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("canonical code requires n <= {MAX_CANON_VERTICES}, got {0}")]
    TooLargeForCanon(usize),
    #[error("enumeration requires n <= {MAX_ENUM_VERTICES}, got {0}; ingest larger corpora from graph6 files")]
    TooLargeForEnum(usize),
}

/// Lexicographically minimal graph6 encoding over all vertex permutations.
/// Two graphs on at most [`MAX_CANON_VERTICES`] vertices have equal codes
/// iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

/// Pairs (i, j), i < j, in graph6 column order: (0,1),(0,2),(1,2),(0,3),...
fn pair_positions(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Packed adjacency code: position p of the column-order bit sequence is
/// stored at integer bit (nbits-1-p), so that ascending integers correspond
/// to ascending graph6 strings.
fn pack(g: &Graph, pairs: &[(usize, usize)]) -> u32 {
    let nbits = pairs.len();
    let mut code = 0u32;
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if g.has_edge(i, j) {
            code |= 1 << (nbits - 1 - p);
        }
    }
    code
}

fn unpack(n: usize, code: u32, pairs: &[(usize, usize)]) -> Graph {
    let nbits = pairs.len();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(p, _)| code & (1 << (nbits - 1 - p)) != 0)
        .map(|(_, &pair)| pair)
        .collect();
    Graph::from_edges(n, &edges).expect("unpack produces valid edges")
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    while next_permutation(&mut perm) {
        out.push(perm.clone());
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Bit-position maps: for each permutation, maps[perm][p] is the packed bit
/// position that the edge at position p lands on after relabeling.
struct PermTables {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// One entry per permutation; entry[p] = target bit position.
    maps: Vec<Vec<u8>>,
}

impl PermTables {
    fn build(n: usize) -> PermTables {
        let pairs = pair_positions(n);
        let mut pos_of = vec![vec![0usize; n]; n];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            pos_of[i][j] = p;
            pos_of[j][i] = p;
        }
        let maps = all_permutations(n)
            .into_iter()
            .map(|perm| {
                pairs
                    .iter()
                    .map(|&(i, j)| pos_of[perm[i]][perm[j]] as u8)
                    .collect()
            })
            .collect();
        PermTables { n, pairs, maps }
    }

    fn nbits(&self) -> usize {
        self.pairs.len()
    }

    fn apply(&self, code: u32, map: &[u8]) -> u32 {
        let nbits = self.nbits();
        let mut out = 0u32;
        let mut rest = code;
        while rest != 0 {
            let bit = 31 - rest.leading_zeros() as usize;
            rest &= !(1 << bit);
            let p = nbits - 1 - bit;
            out |= 1 << (nbits - 1 - map[p] as usize);
        }
        out
    }

    /// Minimal packed code over all permutations.
    fn min_code(&self, code: u32) -> u32 {
        self.maps
            .iter()
            .map(|map| self.apply(code, map))
            .min()
            .expect("at least the identity permutation")
    }

    /// Whether no permutation produces a strictly smaller packed code.
    fn is_canonical(&self, code: u32) -> bool {
        self.maps.iter().all(|map| self.apply(code, map) >= code)
    }

    /// Per-vertex mask of packed bit positions for the pairs containing v.
    fn degree_masks(&self) -> Vec<u32> {
        let nbits = self.nbits();
        let mut masks = vec![0u32; self.n];
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            masks[i] |= 1 << (nbits - 1 - p);
            masks[j] |= 1 << (nbits - 1 - p);
        }
        masks
    }
}

/// Canonical code of `g`, by full permutation minimization. Requires
/// n <= [`MAX_CANON_VERTICES`].
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(CanonError::TooLargeForCanon(n));
    }
    let tables = PermTables::build(n);
    let min = tables.min_code(pack(g, &tables.pairs));
    let canon = unpack(n, min, &tables.pairs);
    Ok(CanonicalCode(
        graph6::encode(&canon).expect("n <= 8 always encodes"),
    ))
}

/// Iterator over one representative per isomorphism class of simple graphs
/// on n vertices with minimum degree >= `min_degree`, in ascending canonical
/// code order.
pub fn enumerate_graphs(n: usize, min_degree: usize) -> Result<GraphEnumeration, CanonError> {
    if n > MAX_ENUM_VERTICES {
        return Err(CanonError::TooLargeForEnum(n));
    }
    let tables = PermTables::build(n);
    let degree_masks = tables.degree_masks();
    let end = if n == 0 { 0 } else { 1u64 << tables.nbits() };
    Ok(GraphEnumeration {
        n,
        min_degree,
        next_code: 0,
        end,
        tables,
        degree_masks,
    })
}

pub struct GraphEnumeration {
    n: usize,
    min_degree: usize,
    next_code: u64,
    end: u64,
    tables: PermTables,
    degree_masks: Vec<u32>,
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_code < self.end {
            let code = self.next_code as u32;
            self.next_code += 1;
            let degree_ok = self
                .degree_masks
                .iter()
                .all(|&m| (code & m).count_ones() as usize >= self.min_degree);
            if !degree_ok {
                continue;
            }
            // Ascending packed codes are ascending graph6 strings, so emitting
            // codes that no permutation can shrink yields each class exactly
            // once, in ascending canonical order.
            if self.tables.is_canonical(code) {
                return Some(unpack(self.n, code, &self.tables.pairs));
            }
        }
        None
    }
}
