//! Fundamental-group elements as based path words.
//!
//! A word `a^k0 τ_e1 a^k1 ... τ_en a^kn` walks the graph from its base
//! vertex: `k_i` is an exponent of the generator of the vertex group at the
//! current vertex, `τ_e` crosses the oriented edge `e`. The defining
//! relation for each oriented edge is
//!
//! ```text
//! τ_e · a_{∂1 e}^{λ(~e)} · τ_e^{-1} = a_{∂0 e}^{λ(e)}
//! ```
//!
//! so the loop `e : v -> v [6, 1]` presents `<x, t | t x t^-1 = x^6>`.
//!
//! After Britton reduction, the number of edge letters is the distance
//! between the base lift `x0` and `w·x0` in the Bass–Serre tree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::WordError;
use crate::graph::{divides, EdgeEnd, GbsGraph, VertexId};
use crate::iso::Isomorphism;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    base: VertexId,
    exponents: Vec<BigInt>,
    edges: Vec<EdgeEnd>,
}

impl PathWord {
    pub fn identity(base: VertexId) -> Self {
        PathWord { base, exponents: vec![BigInt::zero()], edges: Vec::new() }
    }

    pub fn syllable(base: VertexId, k: impl Into<BigInt>) -> Self {
        PathWord { base, exponents: vec![k.into()], edges: Vec::new() }
    }

    /// Builds a word from its parts; `exponents.len()` must be
    /// `edges.len() + 1`. Incidence is checked against a graph by
    /// [`PathWord::check`].
    pub fn from_parts(
        base: VertexId,
        exponents: Vec<BigInt>,
        edges: Vec<EdgeEnd>,
    ) -> Result<Self, WordError> {
        if exponents.len() != edges.len() + 1 {
            return Err(WordError::Malformed(format!(
                "{} exponents for {} edge letters",
                exponents.len(),
                edges.len()
            )));
        }
        Ok(PathWord { base, exponents, edges })
    }

    pub fn base(&self) -> &VertexId {
        &self.base
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn edges(&self) -> &[EdgeEnd] {
        &self.edges
    }

    /// Number of edge letters.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty() && self.exponents[0].is_zero()
    }

    pub fn push_edge(&mut self, x: EdgeEnd) {
        self.edges.push(x);
        self.exponents.push(BigInt::zero());
    }

    pub fn push_power(&mut self, k: &BigInt) {
        *self.exponents.last_mut().expect("nonempty exponents") += k;
    }

    pub fn end_vertex<'g>(&'g self, g: &'g GbsGraph) -> &'g VertexId {
        self.edges.last().map(|x| g.terminus(x)).unwrap_or(&self.base)
    }

    pub fn check(&self, g: &GbsGraph) -> Result<(), WordError> {
        if !g.has_vertex(&self.base) {
            return Err(WordError::Malformed(format!("unknown base vertex {}", self.base)));
        }
        let mut at = &self.base;
        for x in &self.edges {
            if !g.has_end(x) {
                return Err(WordError::Malformed(format!("unknown edge {}", x.edge)));
            }
            if g.origin(x) != at {
                return Err(WordError::Malformed(format!("edge {x} does not start at {at}")));
            }
            at = g.terminus(x);
        }
        Ok(())
    }

    pub fn is_closed(&self, g: &GbsGraph) -> bool {
        self.end_vertex(g) == &self.base
    }

    fn ensure_closed(&self, g: &GbsGraph) -> Result<(), WordError> {
        self.check(g)?;
        if !self.is_closed(g) {
            return Err(WordError::NotClosed {
                start: self.base.to_string(),
                end: self.end_vertex(g).to_string(),
            });
        }
        Ok(())
    }

    /// `self · other`; `other` must start where `self` ends.
    pub fn concat(&self, g: &GbsGraph, other: &PathWord) -> Result<PathWord, WordError> {
        let end = self.end_vertex(g);
        if end != &other.base {
            return Err(WordError::Malformed(format!(
                "cannot append a word based at {} to a path ending at {end}",
                other.base
            )));
        }
        let mut out = self.clone();
        *out.exponents.last_mut().expect("nonempty") += &other.exponents[0];
        out.edges.extend(other.edges.iter().cloned());
        out.exponents.extend(other.exponents[1..].iter().cloned());
        Ok(out)
    }

    pub fn inverse(&self, g: &GbsGraph) -> PathWord {
        PathWord {
            base: self.end_vertex(g).clone(),
            exponents: self.exponents.iter().rev().map(|k| -k).collect(),
            edges: self.edges.iter().rev().map(EdgeEnd::reverse).collect(),
        }
    }

    pub fn power(&self, g: &GbsGraph, n: usize) -> Result<PathWord, WordError> {
        let mut out = PathWord::identity(self.base.clone());
        for _ in 0..n {
            out = out.concat(g, self)?;
        }
        Ok(out)
    }

    /// Text form: `v^3 e w^-1 ~f`; zero syllables are omitted.
    pub fn display<'a>(&'a self, g: &'a GbsGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph: g }
    }
}

pub struct WordDisplay<'a> {
    word: &'a PathWord,
    graph: &'a GbsGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word;
        let mut tokens = Vec::new();
        let mut at = &w.base;
        for (i, k) in w.exponents.iter().enumerate() {
            if !k.is_zero() {
                tokens.push(format!("{at}^{k}"));
            }
            if let Some(x) = w.edges.get(i) {
                tokens.push(x.to_string());
                at = self.graph.terminus(x);
            }
        }
        if tokens.is_empty() {
            tokens.push(format!("{}^0", w.base));
        }
        f.write_str(&tokens.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Elliptic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordClassification {
    pub kind: ElementKind,
    pub translation_length: usize,
    /// Cyclically reduced conjugate in normal form.
    pub witness: PathWord,
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(divides(b, a));
    a / b
}

/// Is `τ_f a^m τ_{~f}` a pinch, i.e. does `λ(~f)` divide `m`?
fn pinches(g: &GbsGraph, f: &EdgeEnd, m: &BigInt, next: &EdgeEnd) -> bool {
    *next == f.reverse() && divides(g.label(next), m)
}

/// `τ_f a^m τ_{~f} = a_{∂0 f}^{m·λ(f)/λ(~f)}`
fn pinch_value(g: &GbsGraph, f: &EdgeEnd, m: &BigInt) -> BigInt {
    exact_div(&(m * g.label(f)), g.label(&f.reverse()))
}

/// Positions `i` (0-based edge index) where `τ_{e_i} a^{k_i} τ_{e_{i+1}}`
/// is a pinch.
pub fn pinch_sites(g: &GbsGraph, w: &PathWord) -> Vec<usize> {
    (0..w.edges.len().saturating_sub(1))
        .filter(|&i| pinches(g, &w.edges[i], &w.exponents[i + 1], &w.edges[i + 1]))
        .collect()
}

/// Applies the pinch at site `i` (see [`pinch_sites`]).
pub fn apply_pinch(g: &GbsGraph, w: &PathWord, i: usize) -> Option<PathWord> {
    let (f, m, next) = (w.edges.get(i)?, w.exponents.get(i + 1)?, w.edges.get(i + 1)?);
    if !pinches(g, f, m, next) {
        return None;
    }
    let value = pinch_value(g, f, m);
    let mut exponents = w.exponents[..=i].to_vec();
    *exponents.last_mut().expect("nonempty") += value + &w.exponents[i + 2];
    exponents.extend(w.exponents[i + 3..].iter().cloned());
    let mut edges = w.edges[..i].to_vec();
    edges.extend(w.edges[i + 2..].iter().cloned());
    Some(PathWord { base: w.base.clone(), exponents, edges })
}

/// Removes every pinch (stack reduction, left to right).
pub fn pinch_reduce(g: &GbsGraph, w: &PathWord) -> PathWord {
    let mut exponents = vec![w.exponents[0].clone()];
    let mut edges: Vec<EdgeEnd> = Vec::with_capacity(w.edges.len());
    for (x, k) in w.edges.iter().zip(&w.exponents[1..]) {
        let pinch = match edges.last() {
            Some(f) => pinches(g, f, exponents.last().expect("nonempty"), x),
            None => false,
        };
        if pinch {
            let f = edges.pop().expect("checked");
            let m = exponents.pop().expect("checked");
            let value = pinch_value(g, &f, &m);
            *exponents.last_mut().expect("nonempty") += value + k;
        } else {
            edges.push(x.clone());
            exponents.push(k.clone());
        }
    }
    PathWord { base: w.base.clone(), exponents, edges }
}

/// Canonical coset representatives: from the last syllable backwards,
/// `k_i` is replaced by `k_i mod |λ(~e_i)|` and the quotient is carried
/// across `τ_{e_i}` by the defining relation. Pinch-freeness is preserved.
pub fn normal_form(g: &GbsGraph, w: &PathWord) -> PathWord {
    let mut out = w.clone();
    for i in (1..=out.edges.len()).rev() {
        let e = &out.edges[i - 1];
        let across = g.label(&e.reverse());
        let r = out.exponents[i].mod_floor(&across.abs());
        let q = exact_div(&(&out.exponents[i] - &r), across);
        out.exponents[i - 1] += q * g.label(e);
        out.exponents[i] = r;
    }
    out
}

/// Pinch reduction followed by [`normal_form`]. Two words represent the
/// same element iff their reductions are equal.
pub fn britton_reduce(g: &GbsGraph, w: &PathWord) -> Result<PathWord, WordError> {
    w.check(g)?;
    Ok(normal_form(g, &pinch_reduce(g, w)))
}

/// `d(x0, w·x0)` for the base lift `x0`.
pub fn displacement(g: &GbsGraph, w: &PathWord) -> Result<usize, WordError> {
    w.ensure_closed(g)?;
    Ok(pinch_reduce(g, w).len())
}

/// Conjugates a reduced closed word until the junction `τ_{e_n} · τ_{e_1}`
/// is no longer a pinch.
pub fn cyclic_reduce(g: &GbsGraph, w: &PathWord) -> PathWord {
    let mut cur = w.clone();
    loop {
        let n = cur.edges.len();
        if n < 2 {
            return cur;
        }
        let c = &cur.exponents[n] + &cur.exponents[0];
        let (first, last) = (&cur.edges[0], &cur.edges[n - 1]);
        if !pinches(g, last, &c, first) {
            // rotate the base syllable into the last one
            let mut out = cur.clone();
            out.exponents[n] = c;
            out.exponents[0] = BigInt::zero();
            return out;
        }
        let value = pinch_value(g, last, &c);
        let base = g.terminus(first).clone();
        let mut exponents = cur.exponents[1..n].to_vec();
        *exponents.last_mut().expect("n >= 2") += value;
        let edges = cur.edges[1..n - 1].to_vec();
        cur = PathWord { base, exponents, edges };
    }
}

pub fn classify_word(g: &GbsGraph, w: &PathWord) -> Result<WordClassification, WordError> {
    w.ensure_closed(g)?;
    let reduced = cyclic_reduce(g, &pinch_reduce(g, w));
    let witness = normal_form(g, &reduced);
    let n = witness.len();
    Ok(WordClassification {
        kind: if n == 0 { ElementKind::Elliptic } else { ElementKind::Hyperbolic },
        translation_length: n,
        witness,
    })
}

/// Translation length from the growth of `d(x0, w^n x0)`, n = 1..=powers.
///
/// Hyperbolic elements have `d_n = n·ℓ + 2·d(x0, axis)`, elliptic ones
/// have `d_n ≤ d_1`. Anything else within the budget is inconclusive.
pub fn translation_length_oracle(
    g: &GbsGraph,
    w: &PathWord,
    powers: usize,
) -> Result<usize, WordError> {
    w.ensure_closed(g)?;
    let powers = powers.max(3);
    let mut d = Vec::with_capacity(powers);
    let mut p = w.clone();
    for n in 1..=powers {
        if n > 1 {
            p = p.concat(g, w)?;
        }
        d.push(pinch_reduce(g, &p).len());
    }
    if d.iter().all(|&x| x <= d[0]) {
        return Ok(0);
    }
    let k = d.len();
    let (a, b, c) = (d[k - 3] as i64, d[k - 2] as i64, d[k - 1] as i64);
    if c - b == b - a && c > b {
        return Ok((c - b) as usize);
    }
    Err(WordError::Inconclusive(powers))
}

/// Equality in the fundamental group (same base vertex required).
pub fn words_equal(g: &GbsGraph, a: &PathWord, b: &PathWord) -> Result<bool, WordError> {
    Ok(britton_reduce(g, a)? == britton_reduce(g, b)?)
}

impl Isomorphism {
    /// Transports a word over `source`: `a_v^k ↦ a_{φv}^{±k}` with the
    /// vertex flip sign, `τ_x ↦ τ_{φx}`. Edge flips leave crossing letters
    /// unchanged.
    pub fn map_word(&self, source: &GbsGraph, w: &PathWord) -> PathWord {
        let mut at = &w.base;
        let mut exponents = Vec::with_capacity(w.exponents.len());
        for (i, k) in w.exponents.iter().enumerate() {
            exponents.push(k * BigInt::from(self.vertex_sign(at)));
            if let Some(x) = w.edges.get(i) {
                at = source.terminus(x);
            }
        }
        PathWord {
            base: self.vertices[&w.base].clone(),
            exponents,
            edges: w.edges.iter().map(|x| self.ends[x].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;
    use crate::io::parse_word;

    fn bs16() -> GbsGraph {
        GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)])
    }

    fn word(g: &GbsGraph, text: &str) -> PathWord {
        parse_word(g, text).unwrap()
    }

    #[test]
    fn britton_golden_cases() {
        let g = bs16();
        let r = britton_reduce(&g, &word(&g, "e v^1 ~e")).unwrap();
        assert_eq!(r, word(&g, "v^6"));
        let r = britton_reduce(&g, &word(&g, "~e v^6 e")).unwrap();
        assert_eq!(r, word(&g, "v^1"));
        let r = britton_reduce(&g, &word(&g, "v^3")).unwrap();
        assert_eq!(r, word(&g, "v^3"));
    }

    #[test]
    fn commutator_is_elliptic() {
        let g = bs16();
        let w = word(&g, "v^1 e v^-1 ~e");
        assert_eq!(britton_reduce(&g, &w).unwrap(), word(&g, "v^-5"));
        let c = classify_word(&g, &w).unwrap();
        assert_eq!(c.kind, ElementKind::Elliptic);
        assert_eq!(c.translation_length, 0);
    }

    #[test]
    fn stable_letter_is_hyperbolic() {
        let g = bs16();
        let t = word(&g, "e");
        let c = classify_word(&g, &t).unwrap();
        assert_eq!((c.kind, c.translation_length), (ElementKind::Hyperbolic, 1));
        assert_eq!(translation_length_oracle(&g, &t, 5).unwrap(), 1);
        assert_eq!(translation_length_oracle(&g, &word(&g, "v^1"), 5).unwrap(), 0);
        let g23 = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 3)]);
        assert_eq!(translation_length_oracle(&g23, &word(&g23, "e"), 5).unwrap(), 1);
    }

    #[test]
    fn displacement_examples() {
        let g = bs16();
        assert_eq!(displacement(&g, &word(&g, "")).unwrap(), 0);
        assert_eq!(displacement(&g, &word(&g, "e")).unwrap(), 1);
        assert_eq!(displacement(&g, &word(&g, "e v^1 ~e")).unwrap(), 0);
        let c = classify_word(&g, &word(&g, "")).unwrap();
        assert_eq!((c.kind, c.translation_length), (ElementKind::Elliptic, 0));
    }

    #[test]
    fn normal_form_moves_quotients_left() {
        // loop (2,3): e a^3 = a^2 e, so e v^7 = v^4 e v^1
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 3)]);
        let w = normal_form(&g, &word(&g, "e v^7"));
        assert_eq!(w, word(&g, "v^4 e v^1"));
        assert!(words_equal(&g, &word(&g, "e v^7"), &w).unwrap());
    }

    #[test]
    fn conjugate_reduces_cyclically() {
        let g = bs16();
        // ~e e pinches away, leaving a conjugate of e
        let w = word(&g, "v^1 ~e e e v^-1");
        let c = classify_word(&g, &w).unwrap();
        assert_eq!(c.translation_length, 1);
        // e v^2 ~e pinches to v^12
        let w = word(&g, "~e e e v^2 ~e");
        assert_eq!(classify_word(&g, &w).unwrap().kind, ElementKind::Elliptic);
    }

    #[test]
    fn open_words_rejected() {
        let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
        let mut w = PathWord::identity(crate::graph::VertexId::new("u"));
        w.push_edge(EdgeEnd::forward(EdgeId::new("e")));
        assert!(matches!(classify_word(&g, &w), Err(WordError::NotClosed { .. })));
        assert_eq!(displacement(&g, &w), Err(WordError::NotClosed {
            start: "u".into(),
            end: "w".into(),
        }));
    }
}
