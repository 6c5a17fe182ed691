//! graph6 encoding, short form only (`n <= 62`).
//!
//! Layout: one length byte `n + 63`, followed by the upper triangle of the
//! adjacency matrix in column order (`(0,1), (0,2), (1,2), (0,3), ..`) packed
//! big-endian into 6-bit groups, each offset by 63. Padding bits in the last
//! group are zero.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Largest vertex count representable by the single-byte length header.
pub const SHORT_FORM_MAX: usize = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty line")]
    Empty,
    #[error("malformed length byte {0:#04x} (short form needs 63..=125)")]
    LengthByte(u8),
    #[error("character {byte:#04x} at offset {offset} is outside 63..=126")]
    CharOutOfRange { offset: usize, byte: u8 },
    #[error("expected {expected} adjacency bytes, found {found}")]
    DataLength { expected: usize, found: usize },
    #[error("nonzero padding bits in the final byte")]
    TrailingBits,
    #[error("graph6 short form holds at most {SHORT_FORM_MAX} vertices, got {0}")]
    TooLarge(usize),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let (&head, data) = text.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=125).contains(&head) {
        return Err(Graph6Error::LengthByte(head));
    }
    let n = (head - 63) as usize;
    if let Some(offset) = data.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::CharOutOfRange {
            offset: offset + 1,
            byte: data[offset],
        });
    }
    let expected = data_len(n);
    if data.len() != expected {
        return Err(Graph6Error::DataLength {
            expected,
            found: data.len(),
        });
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |i: usize| (data[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    if (total_bits..expected * 6).any(bit) {
        return Err(Graph6Error::TrailingBits);
    }

    let mut rows = vec![VertexSet::EMPTY; n];
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                rows[u].insert(v);
                rows[v].insert(u);
            }
            i += 1;
        }
    }
    Ok(Graph::from_rows(rows).expect("graph6 rows are symmetric by construction"))
}

pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, Graph6Error> {
    let n = g.n();
    if n > SHORT_FORM_MAX {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

/// [`emit_graph6`] as a `String`; graph6 is printable ASCII.
pub fn to_graph6_string(g: &Graph) -> Result<String, Graph6Error> {
    emit_graph6(g).map(|b| String::from_utf8(b).expect("graph6 is ASCII"))
}
