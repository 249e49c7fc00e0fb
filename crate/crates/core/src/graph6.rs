//! The graph6 interchange format, restricted to orders up to [`MAX_ORDER`].
//!
//! Layout: one size byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order `(0,1),(0,2),(1,2),(0,3),...`, packed six bits per
//! byte (most significant first), zero padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

/// Optional header accepted by [`decode`].
pub const HEADER: &str = ">>graph6<<";

/// Number of data bytes following the size byte.
pub fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode(g: &Graph) -> String {
    String::from_utf8(encode_bytes(g)).expect("graph6 is ASCII")
}

pub fn encode_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let col = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | ((col >> i) & 1) as u8;
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
    out
}

pub fn decode(text: &str) -> Result<Graph> {
    decode_bytes(text.as_bytes())
}

pub fn decode_bytes(bytes: &[u8]) -> Result<Graph> {
    let mut bytes = bytes.strip_prefix(HEADER.as_bytes()).unwrap_or(bytes);
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    let (&size, data) = bytes
        .split_first()
        .ok_or_else(|| Error::Format("empty input".into()))?;
    if !(63..=63 + MAX_ORDER as u8).contains(&size) {
        return Err(Error::Format(format!(
            "size byte {size} out of range (orders 0..={MAX_ORDER} supported)"
        )));
    }
    let n = (size - 63) as usize;
    if data.len() != data_len(n) {
        return Err(Error::Format(format!(
            "expected {} data bytes for order {n}, found {}",
            data_len(n),
            data.len()
        )));
    }
    let mut rows = [0u32; MAX_ORDER];
    let mut pos = 0usize;
    let total = n * n.saturating_sub(1) / 2;
    let mut j = 1;
    let mut i = 0;
    for &b in data {
        if !(63..=126).contains(&b) {
            return Err(Error::Format(format!("byte {b} outside the graph6 alphabet")));
        }
        let six = b - 63;
        for shift in (0..6).rev() {
            let set = (six >> shift) & 1 == 1;
            if pos >= total {
                if set {
                    return Err(Error::Format("nonzero padding bits".into()));
                }
                continue;
            }
            if set {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            pos += 1;
            i += 1;
            if i == j {
                j += 1;
                i = 0;
            }
        }
    }
    Graph::from_rows(&rows[..n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // A 5-vertex graph with edges ac, ae, bd, de.
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn decode_accepts_header_and_newline() {
        let g = decode(">>graph6<<Bw\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
    }

    #[test]
    fn decode_rejects_malformed() {
        assert!(matches!(decode(""), Err(Error::Format(_))));
        assert!(matches!(decode("B"), Err(Error::Format(_))));
        assert!(matches!(decode("Bww"), Err(Error::Format(_))));
        // Order 32 is beyond the supported cap.
        assert!(matches!(decode("_"), Err(Error::Format(_))));
        // 'x' = 57 = 111001: the last three bits are padding and must be zero.
        assert!(matches!(decode("Bx"), Err(Error::Format(_))));
        assert!(matches!(decode("B "), Err(Error::Format(_))));
    }

    #[test]
    fn round_trip_max_order() {
        let g = Graph::cycle(MAX_ORDER).unwrap();
        assert_eq!(decode(&encode(&g)).unwrap(), g);
    }
}
