//! graph6 encoding as used by nauty's `geng`/`showg` tools.
//!
//! Layout: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte with 63 added to each byte.

use crate::error::{Error, Result};

use super::{Graph, GraphBuilder, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

impl Graph {
    pub fn to_graph6(&self) -> String {
        String::from_utf8(self.to_graph6_bytes()).expect("graph6 is ASCII")
    }

    pub fn to_graph6_bytes(&self) -> Vec<u8> {
        let n = self.n();
        let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
        push_size(&mut out, n);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
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

    /// Decodes one graph6 record. An optional `>>graph6<<` header and a
    /// trailing newline are accepted.
    pub fn from_graph6(s: &str) -> Result<Graph> {
        Self::from_graph6_bytes(s.as_bytes())
    }

    pub fn from_graph6_bytes(raw: &[u8]) -> Result<Graph> {
        let mut start = 0;
        if raw.starts_with(HEADER.as_bytes()) {
            start = HEADER.len();
        }
        let mut end = raw.len();
        while end > start && (raw[end - 1] == b'\n' || raw[end - 1] == b'\r') {
            end -= 1;
        }
        let data = &raw[start..end];
        let err = |offset: usize, message: &str| Error::Parse {
            offset: start + offset,
            message: message.to_string(),
        };
        for (i, &b) in data.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(err(i, "byte outside the printable graph6 range 63..=126"));
            }
        }
        let (n, mut pos) = match data {
            [] => return Err(err(0, "empty input")),
            [126, 126, rest @ ..] => {
                if rest.len() < 6 {
                    return Err(err(data.len(), "truncated 36-bit size header"));
                }
                (read_bits(&rest[..6]), 8)
            }
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(err(data.len(), "truncated 18-bit size header"));
                }
                (read_bits(&rest[..3]), 4)
            }
            [b, ..] => ((*b - 63) as u64, 1),
        };
        if n > MAX_VERTICES as u64 {
            return Err(err(0, &format!("vertex count {n} exceeds the cap of {MAX_VERTICES}")));
        }
        let n = n as usize;
        let bits = n * n.saturating_sub(1) / 2;
        let need = bits.div_ceil(6);
        if data.len() - pos < need {
            return Err(err(data.len(), "truncated adjacency bit vector"));
        }
        if data.len() - pos > need {
            return Err(err(pos + need, "trailing bytes after adjacency bit vector"));
        }
        let mut b = GraphBuilder::new(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = data[pos + k / 6] - 63;
                if (byte >> (5 - k % 6)) & 1 == 1 {
                    b.add_edge_unchecked(i, j);
                }
                k += 1;
            }
        }
        pos += need;
        if !bits.is_multiple_of(6) {
            let last = data[pos - 1] - 63;
            let pad = 6 - bits % 6;
            if last & ((1 << pad) - 1) != 0 {
                return Err(err(pos - 1, "nonzero padding bits"));
            }
        }
        Ok(b.build())
    }
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    let n = n as u64;
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn read_bits(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_known_strings() {
        assert_eq!(Graph::path(2).unwrap().to_graph6(), "A_");
        assert_eq!(Graph::empty(0).unwrap().to_graph6(), "?");
        assert_eq!(Graph::empty(1).unwrap().to_graph6(), "@");
        // Strings below were produced by networkx.to_graph6_bytes.
        assert_eq!(Graph::complete(4).unwrap().to_graph6(), "C~");
        assert_eq!(Graph::cycle(5).unwrap().to_graph6(), "Dhc");
        assert_eq!(Graph::path(5).unwrap().to_graph6(), "DhC");
        assert_eq!(Graph::star(7).unwrap().to_graph6(), "FsaC?");
    }

    #[test]
    fn long_header_for_large_n() {
        let g = Graph::star(100).unwrap();
        let s = g.to_graph6();
        assert_eq!(&s[..4], "~?@c");
        assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn accepts_header_and_newline() {
        let g = Graph::from_graph6(">>graph6<<Dhc\n").unwrap();
        assert_eq!(g, Graph::cycle(5).unwrap());
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        let cases: &[(&[u8], usize)] = &[
            (b"", 0),
            (b"D", 1),
            (b"Dh", 2),
            (b"Dhcc", 3),
            (b"D h", 1),
            (b"~?", 2),
            (b"A`", 1),
        ];
        for &(input, offset) in cases {
            match Graph::from_graph6_bytes(input) {
                Err(Error::Parse { offset: o, .. }) => assert_eq!(o, offset, "{input:?}"),
                other => panic!("{input:?} gave {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=62, seed in any::<u64>()) {
            let mut b = GraphBuilder::new(n).unwrap();
            let mut state = seed | 1;
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state & 1 == 1 {
                        b.add_edge_unchecked(u, v);
                    }
                }
            }
            let g = b.build();
            prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
        }
    }
}
