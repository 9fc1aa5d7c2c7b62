//! graph6 codec.
//!
//! Layout: the order `N(n)` followed by the upper triangle of the adjacency
//! matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits
//! per byte, most significant bit first, each byte offset by 63. The last
//! byte is padded with zero bits.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

const OFFSET: u8 = 63;
const MAX_ORDER: usize = 68_719_476_735; // 2^36 - 1

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n, &mut out);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    assert!(n <= MAX_ORDER, "graph6 cannot encode n = {n}");
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(b'~');
        push_sextets(n, 3, out);
    } else {
        out.extend_from_slice(b"~~");
        push_sextets(n, 6, out);
    }
}

fn push_sextets(n: usize, count: u32, out: &mut Vec<u8>) {
    for k in (0..count).rev() {
        out.push(((n >> (6 * k)) & 0x3f) as u8 + OFFSET);
    }
}

/// Parses one graph6 string. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside the printable range 63..=126")));
    }
    let (n, body) = decode_order(bytes)?;

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "n = {n} needs {expected} adjacency bytes, found {}",
            body.len()
        )));
    }
    let pad = expected * 6 - bits;
    if pad > 0 {
        let last = body[expected - 1] - OFFSET;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }

    let mut edges = BTreeSet::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.insert(Edge::new(i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edge_set(n, edges))
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let sextets = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - OFFSET));
    match bytes {
        [] => Err(Error::Graph6("empty input".into())),
        [b'~', b'~', rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte order header".into()));
            }
            let n = sextets(&rest[..6]);
            if n <= 258_047 {
                return Err(Error::Graph6(format!("non-canonical long header for n = {n}")));
            }
            Ok((n, &rest[6..]))
        }
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte order header".into()));
            }
            let n = sextets(&rest[..3]);
            if n <= 62 {
                return Err(Error::Graph6(format!("non-canonical 4-byte header for n = {n}")));
            }
            Ok((n, &rest[3..]))
        }
        [b, rest @ ..] => Ok((usize::from(b - OFFSET), rest)),
    }
}

/// Parses a graph6 corpus, one graph per line; blank lines are skipped.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}
