//! graph6 encoding: vertex count, then the upper triangle of the adjacency
//! matrix in column order, six bits per printable byte offset by 63.

use thiserror::Error;

use crate::space::OrthoSpace;
use crate::vertex_set::MAX_VERTICES;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed graph6 header: {0}")]
    Header(String),
    #[error("invalid graph6 byte {:?} ({byte:#04x}) at position {position}", char::from(*.byte))]
    InvalidByte { position: usize, byte: u8 },
    #[error("graph6 body for {n} vertices needs {expected} bytes, found {found}")]
    LengthMismatch { n: usize, expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
    #[error("graph6 describes {0} vertices, more than the supported 64")]
    TooLarge(usize),
}

fn check_byte(position: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::InvalidByte { position, byte })
    }
}

/// Parses one graph6 line; surrounding whitespace and an optional
/// `>>graph6<<` prefix are ignored.
pub fn parse_graph6(text: &str) -> Result<OrthoSpace, Graph6Error> {
    let trimmed = text.trim();
    let (offset, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, trimmed),
    };
    let bytes = body.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    let (n, start) = if first == b'~' {
        if bytes.get(1) == Some(&b'~') {
            return Err(Graph6Error::Header(
                "eight-byte vertex counts exceed the 64-vertex capacity".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Header("truncated four-byte vertex count".into()));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | check_byte(offset + 1 + i, b)? as usize;
        }
        if n < 63 {
            return Err(Graph6Error::Header(format!(
                "vertex count {n} must use the one-byte form"
            )));
        }
        (n, 4)
    } else {
        (check_byte(offset, first)? as usize, 1)
    };
    if n == 0 {
        return Err(Graph6Error::Header("zero vertices".into()));
    }
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[start..];
    for (i, &b) in data.iter().enumerate() {
        check_byte(offset + start + i, b)?;
    }
    if data.len() != expected {
        return Err(Graph6Error::LengthMismatch { n, expected, found: data.len() });
    }
    let bit = |k: usize| ((data[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let pad = expected * 6 - bits;
    if (bits..bits + pad).any(bit) {
        return Err(Graph6Error::NonzeroPadding);
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(OrthoSpace::from_raw(&rows))
}

pub fn write_graph6(space: &OrthoSpace) -> String {
    let rows: Vec<u64> = space.rows().iter().map(|r| r.bits()).collect();
    write_rows(&rows)
}

pub(crate) fn write_rows(rows: &[u64]) -> String {
    let n = rows.len();
    let mut out = Vec::with_capacity(4 + (n * n).div_ceil(12));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | ((rows[i] >> j) & 1) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}
