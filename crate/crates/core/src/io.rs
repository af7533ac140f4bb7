//! Text formats for graphs and words.
//!
//! Graph documents are line oriented, with `#` starting a comment:
//!
//! ```text
//! # BS(1,6) = <x, t | t x t^-1 = x^6>
//! vertex v
//! edge e : v -> v [6, 1]
//! ```
//!
//! In `edge NAME : V1 -> V2 [L1, L2]`, `L1` is the label at the `V1` end.
//! The presentation is then `τ_e a_{V2}^{L2} τ_e^-1 = a_{V1}^{L1}`.
//!
//! Words are whitespace-separated tokens: `v^3` (a vertex syllable), `e`
//! (crossing `e` forwards) and `~e` (crossing it backwards).

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{GraphError, ParseError, WordError};
use crate::graph::{EdgeEnd, EdgeId, GbsGraph, ValidationIssue, VertexId};
use crate::words::PathWord;

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic { line, message: message.into() }
}

pub fn parse_graph(text: &str) -> Result<GbsGraph, ParseError> {
    parse_document(text, true)
}

/// Checks syntax and duplicate names only, so that the result can be
/// passed to [`GbsGraph::validate`] for a full report.
pub fn parse_graph_unchecked(text: &str) -> Result<GbsGraph, ParseError> {
    parse_document(text, false)
}

fn parse_document(text: &str, strict: bool) -> Result<GbsGraph, ParseError> {
    let mut g = GbsGraph::new();
    let mut edge_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("vertex") {
            let name = rest.trim();
            if !rest.starts_with(char::is_whitespace) || !is_name(name) {
                return Err(syntax(line, format!("expected `vertex NAME`, found `{content}`")));
            }
            if g.edge(&EdgeId::new(name)).is_some() || g.has_vertex(&VertexId::new(name)) {
                return Err(semantic(line, format!("duplicate name {name}")));
            }
            g.add_vertex(name).map_err(|e| semantic(line, e.to_string()))?;
        } else if let Some(rest) = content.strip_prefix("edge") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(syntax(line, format!("unknown declaration `{content}`")));
            }
            edge_lines.push((line, parse_edge(line, rest.trim())?));
        } else {
            return Err(syntax(line, format!("unknown declaration `{content}`")));
        }
    }
    for (line, (name, from, to, a, b)) in edge_lines {
        if g.has_vertex(&VertexId::new(&name)) || g.edge(&EdgeId::new(&name)).is_some() {
            return Err(semantic(line, format!("duplicate name {name}")));
        }
        for v in [&from, &to] {
            if strict && !g.has_vertex(&VertexId::new(v)) {
                return Err(semantic(line, format!("unknown vertex {v}")));
            }
        }
        if strict && (a == BigInt::from(0) || b == BigInt::from(0)) {
            return Err(semantic(line, format!("zero label on edge {name}")));
        }
        g.add_edge(name, from, to, a, b).map_err(|e| semantic(line, e.to_string()))?;
    }
    let report = g.validate();
    if let Some(issue) = report.issues.first().filter(|_| strict) {
        let message = match issue {
            ValidationIssue::Empty => "graph has no vertices".to_string(),
            other => other.to_string(),
        };
        return Err(ParseError::Graph(message));
    }
    Ok(g)
}

type EdgeDecl = (String, String, String, BigInt, BigInt);

fn parse_edge(line: usize, rest: &str) -> Result<EdgeDecl, ParseError> {
    let bad = || syntax(line, format!("expected `edge NAME : V1 -> V2 [L1, L2]`, found `edge {rest}`"));
    let (name, rest) = rest.split_once(':').ok_or_else(bad)?;
    let (ends, labels) = rest.split_once('[').ok_or_else(bad)?;
    let (from, to) = ends.split_once("->").ok_or_else(bad)?;
    let labels = labels.trim().strip_suffix(']').ok_or_else(bad)?;
    let (a, b) = labels.split_once(',').ok_or_else(bad)?;
    let (name, from, to) = (name.trim(), from.trim(), to.trim());
    if !is_name(name) || !is_name(from) || !is_name(to) {
        return Err(bad());
    }
    let label = |s: &str| -> Result<BigInt, ParseError> {
        s.trim().parse().map_err(|_| syntax(line, format!("`{}` is not an integer label", s.trim())))
    };
    Ok((name.into(), from.into(), to.into(), label(a)?, label(b)?))
}

/// Vertices then edges, each sorted by name.
pub fn serialize_graph(g: &GbsGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "vertex {v}").expect("string write");
    }
    for (id, e) in g.edges() {
        writeln!(
            out,
            "edge {id} : {} -> {} [{}, {}]",
            e.origin, e.terminus, e.origin_label, e.terminus_label
        )
        .expect("string write");
    }
    out.truncate(out.trim_end().len());
    out
}

/// Parses a word over `g`. The base is the vertex of the first syllable or
/// the origin of the first crossing; an empty word is the identity at the
/// least vertex.
pub fn parse_word(g: &GbsGraph, text: &str) -> Result<PathWord, WordError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let malformed = |msg: String| WordError::Malformed(msg);
    let Some(first) = tokens.first() else {
        let base = g
            .vertices()
            .next()
            .ok_or_else(|| WordError::Graph(GraphError::Invalid("empty graph".into())))?;
        return Ok(PathWord::identity(base.clone()));
    };
    enum Token {
        Power(VertexId, BigInt),
        Cross(EdgeEnd),
    }
    let parse_token = |t: &str| -> Result<Token, WordError> {
        if let Some((v, k)) = t.split_once('^') {
            let v = VertexId::new(v);
            if !g.has_vertex(&v) {
                return Err(malformed(format!("unknown vertex {v} in `{t}`")));
            }
            let k = k.parse().map_err(|_| malformed(format!("bad exponent in `{t}`")))?;
            return Ok(Token::Power(v, k));
        }
        let (name, reversed) = match t.strip_prefix('~') {
            Some(name) => (name, true),
            None => (t, false),
        };
        let edge = EdgeId::new(name);
        if g.edge(&edge).is_none() {
            let hint = if g.has_vertex(&VertexId::new(name)) { " (vertex syllables need ^)" } else { "" };
            return Err(malformed(format!("unknown edge {name}{hint}")));
        }
        Ok(Token::Cross(EdgeEnd { edge, reversed }))
    };
    let base = match parse_token(first)? {
        Token::Power(v, _) => v,
        Token::Cross(x) => g.origin(&x).clone(),
    };
    let mut w = PathWord::identity(base.clone());
    let mut at = base;
    for t in &tokens {
        match parse_token(t)? {
            Token::Power(v, k) => {
                if v != at {
                    return Err(malformed(format!("`{t}` is not at the current vertex {at}")));
                }
                w.push_power(&k);
            }
            Token::Cross(x) => {
                if g.origin(&x) != &at {
                    return Err(malformed(format!("{x} does not start at the current vertex {at}")));
                }
                at = g.terminus(&x).clone();
                w.push_edge(x);
            }
        }
    }
    Ok(w)
}

/// Inverse of [`parse_word`]; see [`PathWord::display`].
pub fn serialize_word(g: &GbsGraph, w: &PathWord) -> String {
    w.display(g).to_string()
}
