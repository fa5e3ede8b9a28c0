//! Text formats.
//!
//! * digraph6 for oriented graphs: `&`, the vertex count `N(n)`, then the
//!   `n * n` adjacency bits row-major in 6-bit groups offset by 63. On
//!   decode a digon `u -> v`, `v -> u` becomes the undirected edge `{u, v}`,
//!   so every mixed graph also has a digraph6 form.
//! * mixed line format: a `mixed <n>` header, then `u > v` per arc and
//!   `u - v` per edge.
//! * signed line format: a `signed <n>` header, then `u + v` or `u - v`.
//!
//! Blank lines and lines starting with `#` are ignored by the line parsers.

use super::{GraphError, MixedGraph, Relation, Sign, SignedGraph};
use std::fmt::Write;

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

pub fn encode_digraph6(g: &MixedGraph) -> String {
    let n = g.n();
    let mut bits = vec![false; n * n];
    for &(u, v) in g.arcs() {
        bits[u * n + v] = true;
    }
    for &(u, v) in g.edges() {
        bits[u * n + v] = true;
        bits[v * n + u] = true;
    }
    let mut out = String::with_capacity(2 + (n * n).div_ceil(6));
    out.push('&');
    push_size(&mut out, n);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - i);
            }
        }
        out.push((byte + 63) as char);
    }
    out
}

fn sextet(c: u8) -> Result<usize, GraphError> {
    if (63..=126).contains(&c) {
        Ok((c - 63) as usize)
    } else {
        Err(parse_err(1, format!("invalid digraph6 byte {c:#04x}")))
    }
}

pub fn decode_digraph6(s: &str) -> Result<MixedGraph, GraphError> {
    let bytes = s.trim().as_bytes();
    let body = bytes
        .strip_prefix(b"&")
        .ok_or_else(|| parse_err(1, "digraph6 must start with '&'"))?;
    let (n, rest) = match body {
        [126, 126, rest @ ..] if rest.len() >= 6 => {
            let mut n = 0;
            for &c in &rest[..6] {
                n = (n << 6) | sextet(c)?;
            }
            (n, &rest[6..])
        }
        [126, rest @ ..] if rest.len() >= 3 => {
            let mut n = 0;
            for &c in &rest[..3] {
                n = (n << 6) | sextet(c)?;
            }
            (n, &rest[3..])
        }
        [c, rest @ ..] if *c != 126 => (sextet(*c)?, rest),
        _ => return Err(parse_err(1, "truncated digraph6 size field")),
    };
    let needed = (n * n).div_ceil(6);
    if rest.len() != needed {
        return Err(parse_err(
            1,
            format!("expected {needed} data bytes for n = {n}, found {}", rest.len()),
        ));
    }
    let mut bits = vec![false; n * n];
    for (i, &c) in rest.iter().enumerate() {
        let x = sextet(c)?;
        for j in 0..6 {
            let idx = i * 6 + j;
            if idx < n * n {
                bits[idx] = (x >> (5 - j)) & 1 == 1;
            } else if (x >> (5 - j)) & 1 == 1 {
                return Err(parse_err(1, "nonzero padding bits"));
            }
        }
    }
    let mut rel = vec![Relation::None; n * n];
    for u in 0..n {
        if bits[u * n + u] {
            return Err(GraphError::SelfLoop(u));
        }
        for v in (u + 1)..n {
            let r = match (bits[u * n + v], bits[v * n + u]) {
                (false, false) => Relation::None,
                (true, false) => Relation::Forward,
                (false, true) => Relation::Backward,
                (true, true) => Relation::Undirected,
            };
            rel[u * n + v] = r;
            rel[v * n + u] = r.reversed();
        }
    }
    Ok(MixedGraph::from_relations(n, &rel))
}

pub fn to_mixed_text(g: &MixedGraph) -> String {
    let mut out = format!("mixed {}\n", g.n());
    for &(u, v) in g.arcs() {
        writeln!(out, "{u} > {v}").unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "{u} - {v}").unwrap();
    }
    out
}

pub fn to_signed_text(g: &SignedGraph) -> String {
    let mut out = format!("signed {}\n", g.n());
    for &(u, v, s) in g.edges() {
        let c = if s == Sign::Plus { '+' } else { '-' };
        writeln!(out, "{u} {c} {v}").unwrap();
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(text: &str, keyword: &str) -> Result<(usize, usize), GraphError> {
    let (line, header) = content_lines(text)
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected '{keyword} <n>' header")));
    }
    let n = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line, "missing or invalid vertex count"))?;
    if parts.next().is_some() {
        return Err(parse_err(line, "trailing tokens after header"));
    }
    Ok((line, n))
}

fn parse_triple(line: usize, l: &str) -> Result<(usize, char, usize), GraphError> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    let [u, op, v] = toks[..] else {
        return Err(parse_err(line, "expected '<u> <op> <v>'"));
    };
    let u = u
        .parse()
        .map_err(|_| parse_err(line, format!("invalid vertex '{u}'")))?;
    let v = v
        .parse()
        .map_err(|_| parse_err(line, format!("invalid vertex '{v}'")))?;
    let mut op_chars = op.chars();
    match (op_chars.next(), op_chars.next()) {
        (Some(c), None) => Ok((u, c, v)),
        _ => Err(parse_err(line, format!("invalid operator '{op}'"))),
    }
}

pub fn parse_mixed_text(text: &str) -> Result<MixedGraph, GraphError> {
    let (header_line, n) = parse_header(text, "mixed")?;
    let mut arcs = Vec::new();
    let mut edges = Vec::new();
    for (line, l) in content_lines(text).filter(|(i, _)| *i > header_line) {
        match parse_triple(line, l)? {
            (u, '>', v) => arcs.push((u, v)),
            (u, '<', v) => arcs.push((v, u)),
            (u, '-', v) => edges.push((u, v)),
            (_, c, _) => return Err(parse_err(line, format!("unknown relation '{c}'"))),
        }
    }
    MixedGraph::new(n, arcs, edges)
}

pub fn parse_signed_text(text: &str) -> Result<SignedGraph, GraphError> {
    let (header_line, n) = parse_header(text, "signed")?;
    let mut edges = Vec::new();
    for (line, l) in content_lines(text).filter(|(i, _)| *i > header_line) {
        match parse_triple(line, l)? {
            (u, '+', v) => edges.push((u, v, Sign::Plus)),
            (u, '-', v) => edges.push((u, v, Sign::Minus)),
            (_, c, _) => return Err(parse_err(line, format!("unknown sign '{c}'"))),
        }
    }
    SignedGraph::new(n, edges)
}

/// A parsed graph file of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphText {
    Mixed(MixedGraph),
    Signed(SignedGraph),
}

/// Detects the format from the first content line: `&...` (digraph6),
/// `mixed <n>` or `signed <n>`.
pub fn parse_graph_text(text: &str) -> Result<GraphText, GraphError> {
    let (line, first) = content_lines(text)
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    if first.starts_with('&') {
        if content_lines(text).nth(1).is_some() {
            return Err(parse_err(line + 1, "expected a single digraph6 line"));
        }
        decode_digraph6(first).map(GraphText::Mixed)
    } else if first.starts_with("mixed") {
        parse_mixed_text(text).map(GraphText::Mixed)
    } else if first.starts_with("signed") {
        parse_signed_text(text).map(GraphText::Signed)
    } else {
        Err(parse_err(
            line,
            "unrecognized format (expected digraph6, 'mixed <n>' or 'signed <n>')",
        ))
    }
}
