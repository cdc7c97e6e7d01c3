//! graph6 text encoding of simple graphs.
//!
//! One graph per line: a printable header carrying the order, then the
//! upper-triangle adjacency bits packed big-endian into 6-bit groups, each
//! offset by 63. Bits run column by column: (0,1), (0,2), (1,2), (0,3), ...
//! Decoding is strict: exact length, zero padding, bytes in `63..=126`.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 input")]
    Empty,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("graph6 order {0} exceeds the {MAX_VERTICES}-vertex capacity")]
    TooLarge(u64),
    #[error("truncated graph6 input: need {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing graph6 data at offset {0}")]
    TrailingData(usize),
    #[error("nonzero padding bits at offset {0}")]
    BadPadding(usize),
}

/// Encodes a graph as a single graph6 line (without the newline).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // Long form: '~' then 18 bits of n, big-endian in 6-bit groups.
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut group = 0u8;
    let mut fill = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            fill += 1;
            if fill == 6 {
                out.push(group + 63);
                group = 0;
                fill = 0;
            }
        }
    }
    if fill > 0 {
        out.push((group << (6 - fill)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. Errors carry the byte offset of the problem.
pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let sextet = |offset: usize| -> Result<u64, Graph6Error> {
        match bytes.get(offset) {
            None => Err(Graph6Error::Truncated {
                expected: offset + 1,
                found: bytes.len(),
            }),
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(&b) => Err(Graph6Error::InvalidByte { byte: b, offset }),
        }
    };
    let (n, header_len) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            // 8-byte header encodes n up to 2^36; always beyond our capacity.
            let mut n: u64 = 0;
            for k in 0..6 {
                n = n << 6 | sextet(2 + k)?;
            }
            return Err(Graph6Error::TooLarge(n));
        }
        let n = sextet(1)? << 12 | sextet(2)? << 6 | sextet(3)?;
        (n, 4)
    } else {
        (sextet(0)?, 1)
    };
    if n > MAX_VERTICES as u64 {
        return Err(Graph6Error::TooLarge(n));
    }
    let n = n as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let body_len = bit_count.div_ceil(6);
    let expected = header_len + body_len;
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingData(expected));
    }
    let mut adj = vec![0u64; n];
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(header_len + pos / 6)?;
            if byte >> (5 - pos % 6) & 1 == 1 {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            pos += 1;
        }
    }
    // Remaining bits in the last group must be zero padding.
    while pos < body_len * 6 {
        if sextet(header_len + pos / 6)? >> (5 - pos % 6) & 1 == 1 {
            return Err(Graph6Error::BadPadding(header_len + pos / 6));
        }
        pos += 1;
    }
    Ok(Graph::from_adj(adj).expect("decoded adjacency is symmetric and loop-free"))
}
