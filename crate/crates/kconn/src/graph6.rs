//! The graph6 short-form text encoding for simple undirected graphs.
//!
//! Format: one byte `n + 63`, then the upper-triangle adjacency bits in
//! column order (0,1),(0,2),(1,2),(0,3),... packed big-endian into 6-bit
//! groups, each offset by 63 and zero-padded at the end. Only the short form
//! (n <= 62) is supported; decoding rejects anything that the encoder would
//! not produce, so `encode(decode(s)) == s` for every accepted string.

use thiserror::Error;

use crate::graph::Graph;

/// Largest vertex count encodable in the single-byte short form.
pub const MAX_GRAPH6_VERTICES: usize = 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("long-form header byte 126 ('~') is not supported")]
    LongForm,
    #[error("header byte {0} outside the short-form range [63, 125]")]
    HeaderOutOfRange(u8),
    #[error("graph6 string encodes zero vertices")]
    ZeroVertices,
    #[error("body byte {byte} at position {pos} outside the valid range [63, 126]")]
    BodyByteOutOfRange { pos: usize, byte: u8 },
    #[error("truncated body: expected {expected} bytes after the header, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing garbage: expected {expected} bytes after the header, got {got}")]
    TrailingGarbage { expected: usize, got: usize },
    #[error("nonzero padding bits past the last adjacency bit")]
    NonzeroPadding,
    #[error("graph on {0} vertices exceeds the graph6 short-form limit of {MAX_GRAPH6_VERTICES}")]
    TooManyVertices(usize),
}

fn body_len(n: usize) -> usize {
    let bits = n * (n - 1) / 2;
    bits.div_ceil(6)
}

/// Encode a graph as a graph6 short-form string.
pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decode a graph6 short-form byte string.
pub fn decode(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (&header, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if header == 126 {
        return Err(Graph6Error::LongForm);
    }
    if !(63..=125).contains(&header) {
        return Err(Graph6Error::HeaderOutOfRange(header));
    }
    let n = (header - 63) as usize;
    if n == 0 {
        return Err(Graph6Error::ZeroVertices);
    }
    let expected = body_len(n);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            got: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage {
            expected,
            got: body.len(),
        });
    }
    let mut edges = Vec::new();
    let mut pos = 0usize;
    let nbits = n * (n - 1) / 2;
    for (b_idx, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BodyByteOutOfRange {
                pos: b_idx + 1,
                byte: b,
            });
        }
        let group = b - 63;
        for bit in (0..6).rev() {
            let set = group & (1 << bit) != 0;
            if pos >= nbits {
                if set {
                    return Err(Graph6Error::NonzeroPadding);
                }
                pos += 1;
                continue;
            }
            if set {
                edges.push(pair_at(pos));
            }
            pos += 1;
        }
    }
    match Graph::from_edges(n, &edges) {
        Ok(g) => Ok(g),
        // n <= 62 and endpoints come from pair_at, so construction cannot fail
        Err(e) => unreachable!("graph6 decode produced invalid edges: {e}"),
    }
}

/// The (i, j) pair at upper-triangle column-order position `pos`:
/// (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),...
fn pair_at(pos: usize) -> (usize, usize) {
    let mut j = 1usize;
    let mut base = 0usize;
    while base + j <= pos {
        base += j;
        j += 1;
    }
    (pos - base, j)
}
