//! graph6 format: one ASCII line per labeled simple graph, compatible with
//! nauty's geng output.
//!
//! Layout: optional ">>graph6<<" header, a size field N(n), then the upper
//! adjacency triangle in column-major order (0,1),(0,2),(1,2),(0,3),...
//! packed big-endian into 6-bit groups, each offset by 63. Pad bits are zero.

use crate::error::Error;
use crate::graph::{upper_triangle_pairs, Graph, MAX_VERTICES};
use crate::Result;

const HEADER: &str = ">>graph6<<";

/// Parse one graph6 record (trailing newline and optional header allowed).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = match line.strip_prefix(HEADER) {
        Some(rest) => rest,
        None if line.starts_with(">>") => return Err(Error::MalformedHeader),
        None => line,
    };
    let bytes = line.as_bytes();
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::InvalidByte(b));
        }
    }
    let (n, body) = decode_size(bytes)?;
    if n > MAX_VERTICES as u64 {
        return Err(Error::GraphTooLarge(n));
    }
    let n = n as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            got: body.len(),
        });
    }
    let mut g = Graph::empty(n)?;
    for (k, (i, j)) in upper_triangle_pairs(n).enumerate() {
        let chunk = body[k / 6] - 63;
        if chunk >> (5 - k % 6) & 1 == 1 {
            g.set_edge(i, j);
        }
    }
    // trailing pad bits of the last chunk must be zero
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::NonzeroPadding);
        }
    }
    g.recount_edges();
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(u64, &[u8])> {
    match bytes {
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::LengthMismatch {
                    expected: 6,
                    got: rest.len(),
                });
            }
            Ok((pack_size(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::LengthMismatch {
                    expected: 3,
                    got: rest.len(),
                });
            }
            Ok((pack_size(&rest[..3]), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as u64, rest)),
        [] => Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        }),
    }
}

fn pack_size(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64)
}

/// Serialize to a canonical graph6 record (shortest size form, no header,
/// no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut fill = 0;
    for (i, j) in upper_triangle_pairs(n) {
        chunk = chunk << 1 | g.has_edge(i, j) as u8;
        fill += 1;
        if fill == 6 {
            out.push(chunk + 63);
            chunk = 0;
            fill = 0;
        }
    }
    if fill > 0 {
        out.push((chunk << (6 - fill)) + 63);
    }
    String::from_utf8(out).expect("all bytes in 63..=126")
}

/// Parse a whole graph6 file body: one record per line, blank lines and an
/// optional leading header line skipped. Errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == HEADER {
            continue;
        }
        match parse_graph6(line) {
            Ok(g) => out.push(g),
            Err(e) => {
                return Err(Error::ParseError {
                    line: idx + 1,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn k3_is_bw() {
        // Upper triangle of K3 is 111; padded to 111000 -> 56 -> '8'+63 = 'w'.
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2));
        let k3 = generate::gen_named(generate::Family::Complete, 3).unwrap();
        assert_eq!(to_graph6(&k3), "Bw");
    }

    #[test]
    fn c5_fixed_labeling_is_dhc() {
        // C5 with edges {01,12,23,34,40}: upper-triangle bits (column-major)
        // are 1 0 1 0 0 1 1 0 0 1 -> chunks 101001=41->'h', 1001(00)=36->'c'.
        let g = parse_graph6("Dhc").unwrap();
        assert_eq!(g.n(), 5);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(to_graph6(&g), "Dhc");
    }

    #[test]
    fn empty_graph_is_question_mark() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
    }

    #[test]
    fn header_is_stripped() {
        let g = parse_graph6(">>graph6<<Bw\n").unwrap();
        assert_eq!(g.m(), 3);
        assert!(matches!(parse_graph6(">>digraph6<<Bw"), Err(Error::MalformedHeader)));
    }

    #[test]
    fn long_form_size_accepted() {
        // n=63 needs the 3-byte form: 126, then 63 in three 6-bit groups.
        let g = generate::gen_named(generate::Family::Path, 63).unwrap();
        let rec = to_graph6(&g);
        assert_eq!(rec.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&rec).unwrap(), g);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(parse_graph6("B\x1f"), Err(Error::InvalidByte(0x1f))));
        assert!(matches!(parse_graph6("Bww"), Err(Error::LengthMismatch { .. })));
        assert!(matches!(parse_graph6("B"), Err(Error::LengthMismatch { .. })));
        // K3 record with a nonzero pad bit: 111001 -> 57+63 = 'x'
        assert!(matches!(parse_graph6("Bx"), Err(Error::NonzeroPadding)));
    }

    #[test]
    fn round_trip_random_graphs() {
        for seed in 0..50 {
            let n = 1 + (seed as usize * 7) % 70;
            let g = generate::gen_gnp(n, 0.4, seed).unwrap();
            assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn line_errors_carry_line_numbers() {
        let err = parse_graph6_lines("Bw\nBad~~~line\n").unwrap_err();
        match err {
            Error::ParseError { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
