//! Instance file format.
//!
//! Text lines, 1-indexed vertices:
//!   `# ...`        comment
//!   `p <n> <m>`    header, exactly once, before any weight or edge line
//!   `w <v> <x>`    vertex weight; x is an integer, or a decimal when a
//!                  power-of-ten scale is given
//!   `e <u> <v>`    edge
//!
//! Unspecified weights default to zero. Every weight (decimal or not) is
//! multiplied by 10^scale, keeping all arithmetic exact.

use std::fmt;

use mconvex::graph::WeightedGraph;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "parse error: {}", self.message)
        } else {
            write!(f, "parse error at line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Parses a decimal string into an exact integer scaled by 10^scale.
fn parse_scaled(s: &str, scale: u32, line: usize) -> Result<i64, ParseError> {
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err(line, format!("invalid number {s:?}")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err(line, format!("invalid number {s:?}")));
    }
    if frac_part.len() > scale as usize {
        return Err(err(
            line,
            format!("{s:?} has {} decimal digits; rerun with --scale >= {}", frac_part.len(), frac_part.len()),
        ));
    }
    let mut value: i128 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        value = value * 10 + (c as u8 - b'0') as i128;
        if value > i64::MAX as i128 {
            return Err(err(line, format!("{s:?} out of range")));
        }
    }
    for _ in 0..scale as usize - frac_part.len() {
        value *= 10;
        if value > i64::MAX as i128 {
            return Err(err(line, format!("{s:?} out of range after scaling")));
        }
    }
    Ok((sign * value) as i64)
}

pub fn parse(text: &str, scale: u32) -> Result<WeightedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<i64>> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate header line"));
                }
                let [_, n, m] = fields[..] else {
                    return Err(err(line, "header must be `p <n> <m>`"));
                };
                let n: usize = n.parse().map_err(|_| err(line, "invalid vertex count"))?;
                let m: usize = m.parse().map_err(|_| err(line, "invalid edge count"))?;
                header = Some((n, m));
                weights = vec![None; n];
            }
            "w" => {
                let Some((n, _)) = header else {
                    return Err(err(line, "weight line before header"));
                };
                let [_, v, x] = fields[..] else {
                    return Err(err(line, "weight line must be `w <v> <value>`"));
                };
                let v: usize = v.parse().map_err(|_| err(line, "invalid vertex id"))?;
                if v == 0 || v > n {
                    return Err(err(line, format!("vertex {v} out of range 1..={n}")));
                }
                if weights[v - 1].is_some() {
                    return Err(err(line, format!("duplicate weight for vertex {v}")));
                }
                weights[v - 1] = Some(parse_scaled(x, scale, line)?);
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(err(line, "edge line before header"));
                };
                let [_, u, v] = fields[..] else {
                    return Err(err(line, "edge line must be `e <u> <v>`"));
                };
                let u: usize = u.parse().map_err(|_| err(line, "invalid vertex id"))?;
                let v: usize = v.parse().map_err(|_| err(line, "invalid vertex id"))?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line, format!("vertex {x} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(line, format!("self-loop at vertex {u}")));
                }
                let pair = (u.min(v) as u32 - 1, u.max(v) as u32 - 1);
                if edges.contains(&pair) {
                    return Err(err(line, format!("duplicate edge {u} {v}")));
                }
                edges.push(pair);
            }
            other => return Err(err(line, format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(err(0, "missing `p <n> <m>` header"));
    };
    if edges.len() != m {
        return Err(err(0, format!("header announces {m} edges, file has {}", edges.len())));
    }
    let weights: Vec<i64> = weights.into_iter().map(|w| w.unwrap_or(0)).collect();
    WeightedGraph::new(n, &edges, weights).map_err(|e| err(0, e.to_string()))
}

/// Canonical rendering: header, nonzero weights ascending, edges sorted.
/// `parse(serialize(g), 0)` reproduces `g`, and serializing a parsed
/// canonical file reproduces the file.
pub fn serialize(g: &WeightedGraph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for v in 0..g.vertex_count() as u32 {
        if g.weight(v) != 0 {
            out.push_str(&format!("w {} {}\n", v + 1, g.weight(v)));
        }
    }
    let mut edges = g.edges();
    edges.sort();
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fig7_shape() {
        let text = "# fixture\np 8 14\nw 1 1\nw 3 -1\nw 4 -4\nw 5 -1\nw 6 4\nw 7 -2\nw 8 3\n\
                    e 1 2\ne 2 3\ne 3 4\ne 2 4\ne 2 5\ne 4 5\ne 2 6\ne 4 6\ne 6 7\ne 2 7\ne 4 7\ne 2 8\ne 4 8\ne 7 8\n";
        let g = parse(text, 0).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 14);
        assert_eq!(g.weight(1), 0); // unspecified defaults to zero
        assert_eq!(g.weight(5), 4);
    }

    #[test]
    fn edgeless_header_only() {
        let g = parse("p 3 0\n", 0).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.weights(), &[0, 0, 0]);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse("p 3 1\ne 1 9\n", 0).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("p 3 2\ne 1 2\ne 2 1\n", 0).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate edge"));
        let e = parse("p 2 0\nq 1\n", 0).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("e 1 2\n", 0).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("before header"));
    }

    #[test]
    fn scaling() {
        let g = parse("p 2 1\nw 1 1.25\nw 2 -3\ne 1 2\n", 2).unwrap();
        assert_eq!(g.weights(), &[125, -300]);
        let e = parse("p 1 0\nw 1 1.25\n", 1).unwrap_err();
        assert!(e.message.contains("--scale"));
    }

    #[test]
    fn round_trip() {
        let text = "p 4 3\nw 2 -7\nw 4 9\ne 1 2\ne 2 3\ne 3 4\n";
        let g = parse(text, 0).unwrap();
        assert_eq!(serialize(&g), text);
        let again = parse(&serialize(&g), 0).unwrap();
        assert_eq!(again.edges(), g.edges());
        assert_eq!(again.weights(), g.weights());
    }
}
