//! graph6 text encoding: 6-bit chunks offset by 63, upper triangle in
//! column-major order. Strict on parse: the padding bits must be zero and
//! the length must match the header exactly.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;

/// Serializes a graph to its graph6 form.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(OFFSET + n as u8);
    } else {
        // 18-bit length form, needed for n = 63 and 64
        out.push(126);
        out.push(OFFSET + ((n >> 12) & 0x3f) as u8);
        out.push(OFFSET + ((n >> 6) & 0x3f) as u8);
        out.push(OFFSET + (n & 0x3f) as u8);
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk <<= 1;
            if g.has_edge(u, v) {
                chunk |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (chunk << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses a graph6 string (surrounding whitespace ignored).
pub fn from_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Error::MalformedEncoding("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(OFFSET..=126).contains(&b)) {
        return Err(Error::MalformedEncoding(format!(
            "byte {b:#04x} outside graph6 alphabet"
        )));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::MalformedEncoding(
                "36-bit length form exceeds the 64-vertex cap".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(Error::MalformedEncoding("truncated length header".into()));
        }
        let n = ((bytes[1] - OFFSET) as usize) << 12
            | ((bytes[2] - OFFSET) as usize) << 6
            | (bytes[3] - OFFSET) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };
    if n > MAX_VERTICES {
        return Err(Error::SizeCap {
            what: "graph6 vertex count",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    let nbits = n * (n.saturating_sub(1)) / 2;
    let expect = nbits.div_ceil(6);
    if body.len() != expect {
        return Err(Error::MalformedEncoding(format!(
            "body has {} chars, expected {expect} for n={n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for &b in body {
        let chunk = b - OFFSET;
        for shift in (0..6).rev() {
            let bit_set = chunk >> shift & 1 == 1;
            if k < nbits {
                if bit_set {
                    // bit k is entry (u, v) of the column-major upper triangle
                    let (u, v) = unrank(k);
                    g.add_edge(u, v);
                }
            } else if bit_set {
                return Err(Error::MalformedEncoding("nonzero padding bits".into()));
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Inverse of the column-major upper-triangle bit order:
/// k = 0 -> (0,1), 1 -> (0,2), 2 -> (1,2), 3 -> (0,3), ...
fn unrank(k: usize) -> (usize, usize) {
    let mut v = 1;
    let mut base = 0;
    while base + v <= k {
        base += v;
        v += 1;
    }
    (k - base, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn known_vectors() {
        // 5 vertices, edges 0-2, 0-4, 1-3, 3-4: the format's worked example
        let ex = g(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(to_graph6(&ex), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), ex);

        let k3 = g(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(to_graph6(&k3), "Bw");
        assert_eq!(from_graph6("Bw").unwrap(), k3);

        assert_eq!(to_graph6(&g(0, &[])), "?");
        assert_eq!(to_graph6(&g(1, &[])), "@");
    }

    #[test]
    fn long_header_for_63_and_64() {
        let e63 = Graph::empty(63).unwrap();
        let s = to_graph6(&e63);
        assert!(s.starts_with("~??~"));
        assert_eq!(s.len(), 4 + (63 * 62 / 2usize).div_ceil(6));
        assert_eq!(from_graph6(&s).unwrap(), e63);

        let mut g64 = Graph::empty(64).unwrap();
        g64.add_edge(0, 63);
        g64.add_edge(12, 40);
        let s = to_graph6(&g64);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g64);
    }

    #[test]
    fn round_trip_exhaustive_small() {
        // all labeled graphs on up to 4 vertices
        for n in 0..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let gr = g(n, &edges);
                assert_eq!(from_graph6(&to_graph6(&gr)).unwrap(), gr);
            }
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err()); // truncated body
        assert!(from_graph6("DQcX").is_err()); // trailing garbage
        assert!(from_graph6("D!c").is_err()); // '!' outside the alphabet
        assert!(from_graph6("  Bw\n").is_ok()); // surrounding whitespace is fine
    }

    #[test]
    fn rejects_nonzero_padding() {
        // "A" header says n=2 (1 bit of body); body char with low bits set
        let bad = "A?".replace('?', "~"); // "A~": padding bits nonzero
        assert!(from_graph6(&bad).is_err());
    }
}
