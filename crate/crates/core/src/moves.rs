//! Elementary moves as exact label rewrites, and the induced rewriting of
//! path words.
//!
//! | move | graph | words |
//! |------|-------|-------|
//! | collapse `x : u -> w`, `|λ(x)| = 1` | `u` merges into `w`; other ends at `u` get `λ·λ(x)·λ(~x)` | `τ_x ↦ 1`, `a_u^k ↦ a_w^{k·λ(x)·λ(~x)}` |
//! | expansion at `v` by `m`, pulling `S` | new edge `v -> v' [m, 1]`; ends in `S` move to `v'` with `λ/m` | `τ_x ↦ τ_ε τ_x` for `x ∈ S` |
//! | slide `f` over `e` | `f` moves to `∂1 e` with `λ(f)·λ(~e)/λ(e)` | `τ_f ↦ τ_e τ_f` |
//! | subdivision of `e` | `e : a -> z [λ(e), 1]`, `e' : z -> b [1, λ(~e)]` | `τ_e ↦ τ_e τ_e'` |
//!
//! Unsubdivision is the collapse of the second half.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::MoveError;
use crate::graph::{divides, Edge, EdgeEnd, EdgeId, GbsGraph, VertexId};
use crate::iso::Isomorphism;
use crate::words::PathWord;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveDescriptor {
    Collapse {
        end: EdgeEnd,
    },
    Expansion {
        vertex: VertexId,
        modulus: BigInt,
        ends: BTreeSet<EdgeEnd>,
        new_vertex: VertexId,
        new_edge: EdgeId,
    },
    Slide {
        end: EdgeEnd,
        over: EdgeEnd,
    },
    Subdivision {
        edge: EdgeId,
        new_vertex: VertexId,
        new_edge: EdgeId,
    },
    UnSubdivision {
        vertex: VertexId,
        removed: EdgeId,
    },
}

impl MoveDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            MoveDescriptor::Collapse { .. } => "collapse",
            MoveDescriptor::Expansion { .. } => "expand",
            MoveDescriptor::Slide { .. } => "slide",
            MoveDescriptor::Subdivision { .. } => "subdivide",
            MoveDescriptor::UnSubdivision { .. } => "unsubdivide",
        }
    }

    pub fn is_elementary(&self) -> bool {
        matches!(self, MoveDescriptor::Collapse { .. } | MoveDescriptor::Expansion { .. })
    }

    /// An expansion pulling `ends` across a new edge of modulus `modulus`,
    /// with fresh names chosen in `g`.
    pub fn expansion(
        g: &GbsGraph,
        vertex: VertexId,
        modulus: impl Into<BigInt>,
        ends: impl IntoIterator<Item = EdgeEnd>,
    ) -> Self {
        let new_vertex = g.fresh_vertex_name(vertex.as_str());
        let new_edge = g.fresh_edge_name("x");
        MoveDescriptor::Expansion {
            new_vertex,
            new_edge,
            vertex,
            modulus: modulus.into(),
            ends: ends.into_iter().collect(),
        }
    }

    pub fn subdivision(g: &GbsGraph, edge: EdgeId) -> Self {
        MoveDescriptor::Subdivision {
            new_vertex: g.fresh_vertex_name("z"),
            new_edge: g.fresh_edge_name(edge.as_str()),
            edge,
        }
    }
}

/// Compact textual form, e.g. `collapse(e)`, `expand(v,2,[e,~f])`,
/// `slide(~f,e)`, `subdivide(e)`, `unsubdivide(z,e_1)`. Fresh names are
/// not part of the text; they are re-derived when parsing against a graph.
impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveDescriptor::Collapse { end } => write!(f, "collapse({end})"),
            MoveDescriptor::Expansion { vertex, modulus, ends, .. } => {
                write!(f, "expand({vertex},{modulus},[{}])", ends.iter().join(","))
            }
            MoveDescriptor::Slide { end, over } => write!(f, "slide({end},{over})"),
            MoveDescriptor::Subdivision { edge, .. } => write!(f, "subdivide({edge})"),
            MoveDescriptor::UnSubdivision { vertex, removed } => {
                write!(f, "unsubdivide({vertex},{removed})")
            }
        }
    }
}

/// Caps for move enumeration and deformation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest expansion modulus enumerated (moduli are positive; negative
    /// ones give isomorphic results).
    pub max_modulus: u64,
    /// Largest set of ends pulled by one expansion.
    pub max_subset_size: usize,
    /// Maximal number of moves in a deformation path.
    pub max_depth: usize,
    /// States with more geometric edges are not explored.
    pub max_edges: usize,
    /// States with a label of larger absolute value are not explored.
    pub max_label: u64,
    /// Total number of distinct states the search may visit.
    pub max_states: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_modulus: 6,
            max_subset_size: 3,
            max_depth: 4,
            max_edges: 4,
            max_label: 64,
            max_states: 200_000,
        }
    }
}

/// One letter substitution step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Substitution {
    /// `a_v^k ↦ a_{v'}^{k·c}`; absent vertices map to themselves.
    vertices: BTreeMap<VertexId, (VertexId, BigInt)>,
    /// `τ_x ↦ τ_{y1} ... τ_{yr}`; absent ends map to themselves.
    ends: BTreeMap<EdgeEnd, Vec<EdgeEnd>>,
}

impl Substitution {
    fn set_end(&mut self, x: EdgeEnd, image: Vec<EdgeEnd>) {
        let reversed = image.iter().rev().map(EdgeEnd::reverse).collect();
        self.ends.insert(x.reverse(), reversed);
        self.ends.insert(x, image);
    }

    fn from_isomorphism(iso: &Isomorphism) -> Self {
        Substitution {
            vertices: iso
                .vertices
                .iter()
                .map(|(v, w)| (v.clone(), (w.clone(), BigInt::from(iso.vertex_sign(v)))))
                .collect(),
            ends: iso.ends.iter().map(|(x, y)| (x.clone(), vec![y.clone()])).collect(),
        }
    }

    fn apply(&self, source: &GbsGraph, w: &PathWord) -> PathWord {
        let map_vertex = |v: &VertexId| -> (VertexId, BigInt) {
            self.vertices.get(v).cloned().unwrap_or_else(|| (v.clone(), BigInt::one()))
        };
        let (base, c0) = map_vertex(w.base());
        let mut out = PathWord::syllable(base, &w.exponents()[0] * c0);
        for (x, k) in w.edges().iter().zip(&w.exponents()[1..]) {
            match self.ends.get(x) {
                Some(image) => image.iter().for_each(|y| out.push_edge(y.clone())),
                None => out.push_edge(x.clone()),
            }
            let (_, c) = map_vertex(source.terminus(x));
            out.push_power(&(k * c));
        }
        out
    }
}

/// Rewrites path words of `source` into path words of `target`,
/// representing the isomorphism of fundamental groups induced by a move
/// (or a chain of moves and graph isomorphisms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMap {
    source: GbsGraph,
    target: GbsGraph,
    /// Each step with the graph it reads from.
    steps: Vec<(GbsGraph, Substitution)>,
}

impl WordMap {
    pub fn identity(g: &GbsGraph) -> Self {
        WordMap { source: g.clone(), target: g.clone(), steps: Vec::new() }
    }

    pub fn from_isomorphism(source: &GbsGraph, target: &GbsGraph, iso: &Isomorphism) -> Self {
        WordMap {
            source: source.clone(),
            target: target.clone(),
            steps: vec![(source.clone(), Substitution::from_isomorphism(iso))],
        }
    }

    pub fn source(&self) -> &GbsGraph {
        &self.source
    }

    pub fn target(&self) -> &GbsGraph {
        &self.target
    }

    /// `self` followed by `next`. `next` must start at `self`'s target.
    pub fn then(mut self, next: WordMap) -> WordMap {
        debug_assert_eq!(self.target, next.source);
        self.steps.extend(next.steps);
        self.target = next.target;
        self
    }

    pub fn map(&self, w: &PathWord) -> PathWord {
        self.steps.iter().fold(w.clone(), |w, (g, s)| s.apply(g, &w))
    }
}

fn inapplicable(msg: impl Into<String>) -> MoveError {
    MoveError::Inapplicable(msg.into())
}

fn require_end(g: &GbsGraph, x: &EdgeEnd) -> Result<(), MoveError> {
    if g.has_end(x) {
        Ok(())
    } else {
        Err(inapplicable(format!("unknown edge {}", x.edge)))
    }
}

fn check_collapse(g: &GbsGraph, x: &EdgeEnd) -> Result<(), MoveError> {
    require_end(g, x)?;
    if g.is_loop(&x.edge) {
        return Err(inapplicable(format!("{} is a loop", x.edge)));
    }
    if !g.label(x).abs().is_one() {
        return Err(inapplicable(format!("|λ({x})| = {} is not 1", g.label(x).abs())));
    }
    Ok(())
}

fn check_fresh(g: &GbsGraph, v: &VertexId, e: &EdgeId) -> Result<(), MoveError> {
    let clash = |name: &str| {
        g.has_vertex(&VertexId::new(name)) || g.edge(&EdgeId::new(name)).is_some()
    };
    if clash(v.as_str()) || clash(e.as_str()) || v.as_str() == e.as_str() {
        return Err(inapplicable(format!("names {v}/{e} are not fresh")));
    }
    Ok(())
}

/// Checks the applicability predicate of `m` on `g`.
pub fn check_move(g: &GbsGraph, m: &MoveDescriptor) -> Result<(), MoveError> {
    match m {
        MoveDescriptor::Collapse { end } => check_collapse(g, end),
        MoveDescriptor::Expansion { vertex, modulus, ends, new_vertex, new_edge } => {
            if !g.has_vertex(vertex) {
                return Err(inapplicable(format!("unknown vertex {vertex}")));
            }
            if modulus.is_zero() {
                return Err(inapplicable("expansion modulus is zero"));
            }
            check_fresh(g, new_vertex, new_edge)?;
            for x in ends {
                require_end(g, x)?;
                if g.origin(x) != vertex {
                    return Err(inapplicable(format!("{x} does not start at {vertex}")));
                }
                if !divides(modulus, g.label(x)) {
                    return Err(inapplicable(format!("{modulus} does not divide λ({x})")));
                }
            }
            Ok(())
        }
        MoveDescriptor::Slide { end, over } => {
            require_end(g, end)?;
            require_end(g, over)?;
            if end.edge == over.edge {
                return Err(inapplicable("cannot slide an edge over itself"));
            }
            if g.origin(end) != g.origin(over) {
                return Err(inapplicable(format!("{end} and {over} are not adjacent")));
            }
            if !divides(g.label(over), g.label(end)) {
                return Err(inapplicable(format!(
                    "λ({over}) = {} does not divide λ({end}) = {}",
                    g.label(over),
                    g.label(end)
                )));
            }
            Ok(())
        }
        MoveDescriptor::Subdivision { edge, new_vertex, new_edge } => {
            if g.edge(edge).is_none() {
                return Err(inapplicable(format!("unknown edge {edge}")));
            }
            check_fresh(g, new_vertex, new_edge)
        }
        MoveDescriptor::UnSubdivision { vertex, removed } => {
            if !g.has_vertex(vertex) {
                return Err(inapplicable(format!("unknown vertex {vertex}")));
            }
            let ends = g.ends_at(vertex);
            if ends.len() != 2 || ends[0].edge == ends[1].edge {
                return Err(inapplicable(format!("{vertex} is not a subdivision vertex")));
            }
            if ends.iter().any(|x| !g.label(x).abs().is_one()) {
                return Err(inapplicable(format!("labels at {vertex} are not ±1")));
            }
            if !ends.iter().any(|x| &x.edge == removed) {
                return Err(inapplicable(format!("{removed} is not incident to {vertex}")));
            }
            Ok(())
        }
    }
}

/// Applies `m`, returning the new graph and the induced word map.
pub fn apply_move(g: &GbsGraph, m: &MoveDescriptor) -> Result<(GbsGraph, WordMap), MoveError> {
    g.ensure_valid()?;
    check_move(g, m)?;
    let (h, sub) = apply_unchecked(g, m);
    let map = WordMap { source: g.clone(), target: h.clone(), steps: vec![(g.clone(), sub)] };
    Ok((h, map))
}

fn collapse(g: &GbsGraph, x: &EdgeEnd) -> (GbsGraph, Substitution) {
    let mut h = g.clone();
    let u = g.origin(x).clone();
    let w = g.terminus(x).clone();
    let factor = g.label(x) * g.label(&x.reverse());
    for y in g.ends_at(&u) {
        if y.edge == x.edge {
            continue;
        }
        h.set_label(&y, g.label(&y) * &factor);
        h.set_origin(&y, w.clone());
    }
    h.remove_edge(&x.edge);
    h.remove_vertex(&u);
    let mut sub = Substitution::default();
    sub.vertices.insert(u, (w, factor));
    sub.set_end(x.clone(), Vec::new());
    (h, sub)
}

fn apply_unchecked(g: &GbsGraph, m: &MoveDescriptor) -> (GbsGraph, Substitution) {
    match m {
        MoveDescriptor::Collapse { end } => collapse(g, end),
        MoveDescriptor::Expansion { vertex, modulus, ends, new_vertex, new_edge } => {
            let mut h = g.clone();
            h.insert_vertex(new_vertex.clone());
            h.insert_edge(
                new_edge.clone(),
                Edge {
                    origin: vertex.clone(),
                    terminus: new_vertex.clone(),
                    origin_label: modulus.clone(),
                    terminus_label: BigInt::one(),
                },
            );
            for x in ends {
                h.set_label(x, g.label(x) / modulus);
                h.set_origin(x, new_vertex.clone());
            }
            let eps = EdgeEnd::forward(new_edge.clone());
            let mut sub = Substitution::default();
            for x in ends {
                if x.reversed && ends.contains(&x.reverse()) {
                    continue; // handled with its forward end
                }
                let mut image = vec![eps.clone(), x.clone()];
                if ends.contains(&x.reverse()) {
                    image.push(eps.reverse());
                }
                sub.set_end(x.clone(), image);
            }
            (h, sub)
        }
        MoveDescriptor::Slide { end, over } => {
            let mut h = g.clone();
            let label = g.label(end) * g.label(&over.reverse()) / g.label(over);
            h.set_label(end, label);
            h.set_origin(end, g.terminus(over).clone());
            let mut sub = Substitution::default();
            sub.set_end(end.clone(), vec![over.clone(), end.clone()]);
            (h, sub)
        }
        MoveDescriptor::Subdivision { edge, new_vertex, new_edge } => {
            let mut h = g.clone();
            let old = g.edge(edge).expect("checked").clone();
            h.insert_vertex(new_vertex.clone());
            h.insert_edge(
                edge.clone(),
                Edge {
                    origin: old.origin.clone(),
                    terminus: new_vertex.clone(),
                    origin_label: old.origin_label.clone(),
                    terminus_label: BigInt::one(),
                },
            );
            h.insert_edge(
                new_edge.clone(),
                Edge {
                    origin: new_vertex.clone(),
                    terminus: old.terminus,
                    origin_label: BigInt::one(),
                    terminus_label: old.terminus_label,
                },
            );
            let mut sub = Substitution::default();
            sub.set_end(
                EdgeEnd::forward(edge.clone()),
                vec![EdgeEnd::forward(edge.clone()), EdgeEnd::forward(new_edge.clone())],
            );
            (h, sub)
        }
        MoveDescriptor::UnSubdivision { vertex, removed } => {
            let x = g
                .ends_at(vertex)
                .into_iter()
                .find(|x| &x.edge == removed)
                .expect("checked");
            collapse(g, &x)
        }
    }
}

/// A move on `after = apply_move(before, m)` whose result is isomorphic to
/// `before` (equal, for expansions, slides and subdivisions).
pub fn inverse_move(before: &GbsGraph, m: &MoveDescriptor) -> Result<MoveDescriptor, MoveError> {
    check_move(before, m)?;
    Ok(match m {
        MoveDescriptor::Collapse { end } => collapse_inverse(before, end),
        MoveDescriptor::UnSubdivision { vertex, removed } => {
            let x = before
                .ends_at(vertex)
                .into_iter()
                .find(|x| &x.edge == removed)
                .expect("checked");
            collapse_inverse(before, &x)
        }
        MoveDescriptor::Expansion { new_edge, .. } => {
            MoveDescriptor::Collapse { end: EdgeEnd::backward(new_edge.clone()) }
        }
        MoveDescriptor::Slide { end, over } => {
            MoveDescriptor::Slide { end: end.clone(), over: over.reverse() }
        }
        MoveDescriptor::Subdivision { new_vertex, new_edge, .. } => {
            MoveDescriptor::UnSubdivision { vertex: new_vertex.clone(), removed: new_edge.clone() }
        }
    })
}

fn collapse_inverse(before: &GbsGraph, x: &EdgeEnd) -> MoveDescriptor {
    let u = before.origin(x);
    MoveDescriptor::Expansion {
        vertex: before.terminus(x).clone(),
        modulus: before.label(x) * before.label(&x.reverse()),
        ends: before.ends_at(u).into_iter().filter(|y| y.edge != x.edge).collect(),
        new_vertex: u.clone(),
        new_edge: x.edge.clone(),
    }
}

/// Expresses a slide of `f` over `e` as an expansion at `∂0 e` by `λ(e)`
/// pulling `e` and `f`, followed by the collapse of `e`.
pub fn slide_as_expansion_collapse(
    g: &GbsGraph,
    slide: &MoveDescriptor,
) -> Result<(MoveDescriptor, MoveDescriptor), MoveError> {
    let MoveDescriptor::Slide { end, over } = slide else {
        return Err(inapplicable("not a slide"));
    };
    check_move(g, slide)?;
    let v = g.origin(over).clone();
    let expansion =
        MoveDescriptor::expansion(g, v, g.label(over).clone(), [over.clone(), end.clone()]);
    // after pulling, `over` starts at the new vertex with label ±1
    let collapse = MoveDescriptor::Collapse { end: over.clone() };
    Ok((expansion, collapse))
}

/// Renames a move on `g` to the isomorphic graph `h`; fresh names are
/// re-chosen in `h`.
pub fn transport_move(
    iso: &Isomorphism,
    h: &GbsGraph,
    m: &MoveDescriptor,
) -> MoveDescriptor {
    let end = |x: &EdgeEnd| iso.ends[x].clone();
    match m {
        MoveDescriptor::Collapse { end: x } => MoveDescriptor::Collapse { end: end(x) },
        MoveDescriptor::Expansion { vertex, modulus, ends, .. } => MoveDescriptor::expansion(
            h,
            iso.vertices[vertex].clone(),
            modulus.clone(),
            ends.iter().map(end),
        ),
        MoveDescriptor::Slide { end: f, over } => {
            MoveDescriptor::Slide { end: end(f), over: end(over) }
        }
        MoveDescriptor::Subdivision { edge, .. } => {
            MoveDescriptor::subdivision(h, end(&EdgeEnd::forward(edge.clone())).edge)
        }
        MoveDescriptor::UnSubdivision { vertex, removed } => MoveDescriptor::UnSubdivision {
            vertex: iso.vertices[vertex].clone(),
            removed: end(&EdgeEnd::forward(removed.clone())).edge,
        },
    }
}

/// Every collapse and slide, one subdivision per edge, and expansions with
/// modulus `1..=max_modulus` pulling up to `max_subset_size` ends, in
/// sorted order.
pub fn enumerate_moves(g: &GbsGraph, bounds: &SearchBounds) -> Result<Vec<MoveDescriptor>, MoveError> {
    g.ensure_valid()?;
    let mut moves = collapses(g);
    moves.extend(slides(g));
    moves.extend(g.edges().map(|(id, _)| MoveDescriptor::subdivision(g, id.clone())));
    moves.extend(expansions(g, bounds));
    moves.sort();
    Ok(moves)
}

/// Collapses and expansions only.
pub fn enumerate_elementary_moves(g: &GbsGraph, bounds: &SearchBounds) -> Vec<MoveDescriptor> {
    let mut moves = collapses(g);
    moves.extend(expansions(g, bounds));
    moves.sort();
    moves
}

pub fn collapses(g: &GbsGraph) -> Vec<MoveDescriptor> {
    g.ends()
        .into_iter()
        .filter(|x| check_collapse(g, x).is_ok())
        .map(|end| MoveDescriptor::Collapse { end })
        .collect()
}

pub fn slides(g: &GbsGraph) -> Vec<MoveDescriptor> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let ends = g.ends_at(v);
        for f in &ends {
            for e in &ends {
                if e.edge != f.edge && divides(g.label(e), g.label(f)) {
                    out.push(MoveDescriptor::Slide { end: f.clone(), over: e.clone() });
                }
            }
        }
    }
    out
}

fn expansions(g: &GbsGraph, bounds: &SearchBounds) -> Vec<MoveDescriptor> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let ends = g.ends_at(v);
        for m in 1..=bounds.max_modulus {
            let m = BigInt::from(m);
            let eligible: Vec<&EdgeEnd> =
                ends.iter().filter(|x| divides(&m, g.label(x))).collect();
            for size in 0..=bounds.max_subset_size.min(eligible.len()) {
                for subset in eligible.iter().combinations(size) {
                    out.push(MoveDescriptor::expansion(
                        g,
                        v.clone(),
                        m.clone(),
                        subset.into_iter().map(|x| (*x).clone()),
                    ));
                }
            }
        }
    }
    out
}

/// Parses the text form produced by `Display`, choosing fresh names in `g`.
pub fn parse_move(g: &GbsGraph, text: &str) -> Result<MoveDescriptor, MoveError> {
    let text = text.trim();
    let bad = || inapplicable(format!("cannot parse move `{text}`"));
    let open = text.find('(').ok_or_else(bad)?;
    if !text.ends_with(')') {
        return Err(bad());
    }
    let kind = &text[..open];
    let inner = &text[open + 1..text.len() - 1];
    let parse_end = |s: &str| -> Result<EdgeEnd, MoveError> {
        let s = s.trim();
        match s.strip_prefix('~') {
            Some(name) => Ok(EdgeEnd::backward(EdgeId::new(name))),
            None if !s.is_empty() => Ok(EdgeEnd::forward(EdgeId::new(s))),
            None => Err(bad()),
        }
    };
    let args: Vec<&str> = inner.split(',').map(str::trim).collect();
    let m = match kind {
        "collapse" if args.len() == 1 => MoveDescriptor::Collapse { end: parse_end(args[0])? },
        "slide" if args.len() == 2 => {
            MoveDescriptor::Slide { end: parse_end(args[0])?, over: parse_end(args[1])? }
        }
        "subdivide" if args.len() == 1 => MoveDescriptor::subdivision(g, EdgeId::new(args[0])),
        "unsubdivide" if args.len() == 2 => MoveDescriptor::UnSubdivision {
            vertex: VertexId::new(args[0]),
            removed: EdgeId::new(args[1]),
        },
        "expand" => {
            let (head, list) = inner.split_once('[').ok_or_else(bad)?;
            let list = list.strip_suffix(']').ok_or_else(bad)?;
            let head: Vec<&str> =
                head.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            if head.len() != 2 {
                return Err(bad());
            }
            let modulus: BigInt = head[1].parse().map_err(|_| bad())?;
            let ends = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_end)
                .collect::<Result<Vec<_>, _>>()?;
            MoveDescriptor::expansion(g, VertexId::new(head[0]), modulus, ends)
        }
        _ => return Err(bad()),
    };
    check_move(g, &m)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    fn two_loops(a: i64) -> GbsGraph {
        GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", a, 3)])
    }

    #[test]
    fn loop_2_4_has_no_collapse_or_slide() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4)]);
        let moves = enumerate_moves(&g, &SearchBounds::default()).unwrap();
        assert!(moves.iter().all(|m| !matches!(
            m,
            MoveDescriptor::Collapse { .. } | MoveDescriptor::Slide { .. }
        )));
    }

    #[test]
    fn segment_1_2_single_collapse() {
        let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2)]);
        assert_eq!(
            collapses(&g),
            vec![MoveDescriptor::Collapse { end: EdgeEnd::forward(EdgeId::new("e")) }]
        );
        let (h, _) = apply_move(&g, &collapses(&g)[0]).unwrap();
        assert_eq!(h, GbsGraph::from_edges::<i64>(&["w"], &[]));
    }

    #[test]
    fn slide_of_8_end_over_2_end() {
        let g = two_loops(8);
        let slide = MoveDescriptor::Slide {
            end: EdgeEnd::forward(EdgeId::new("f")),
            over: EdgeEnd::forward(EdgeId::new("e")),
        };
        assert!(slides(&g).contains(&slide));
        let (h, _) = apply_move(&g, &slide).unwrap();
        assert_eq!(h, two_loops(16));
    }

    #[test]
    fn expansion_round_trip() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4)]);
        let m = MoveDescriptor::expansion(&g, VertexId::new("v"), 2, [EdgeEnd::backward(EdgeId::new("e"))]);
        let (h, _) = apply_move(&g, &m).unwrap();
        let eps = h.edge(&EdgeId::new("x_1")).unwrap();
        assert_eq!((eps.origin_label.clone(), eps.terminus_label.clone()), (2.into(), 1.into()));
        assert_eq!(h.edge(&EdgeId::new("e")).unwrap().terminus_label, BigInt::from(2));
        let back = inverse_move(&g, &m).unwrap();
        let (g2, _) = apply_move(&h, &back).unwrap();
        assert_eq!(g2, g);
    }

    #[test]
    fn collapse_round_trip_is_isomorphic() {
        let g = GbsGraph::from_edges(
            &["u", "w"],
            &[("e", "u", "w", -1, 3), ("l", "u", "u", 2, 5), ("k", "w", "w", 7, 4)],
        );
        let m = MoveDescriptor::Collapse { end: EdgeEnd::forward(EdgeId::new("e")) };
        let (h, _) = apply_move(&g, &m).unwrap();
        let back = inverse_move(&g, &m).unwrap();
        let (g2, _) = apply_move(&h, &back).unwrap();
        assert!(are_isomorphic(&g, &g2).is_some());
    }

    #[test]
    fn slide_factorization() {
        let g = two_loops(8);
        let slide = MoveDescriptor::Slide {
            end: EdgeEnd::forward(EdgeId::new("f")),
            over: EdgeEnd::forward(EdgeId::new("e")),
        };
        let (exp, col) = slide_as_expansion_collapse(&g, &slide).unwrap();
        assert_eq!(exp.to_string(), "expand(v,2,[e,f])");
        let (mid, _) = apply_move(&g, &exp).unwrap();
        let (end, _) = apply_move(&mid, &col).unwrap();
        assert!(are_isomorphic(&end, &two_loops(16)).is_some());
    }

    #[test]
    fn slide_with_equal_labels() {
        let g = GbsGraph::from_edges(&["v", "w"], &[("e", "v", "w", 3, 2), ("f", "v", "v", 3, 5)]);
        let slide = MoveDescriptor::Slide {
            end: EdgeEnd::forward(EdgeId::new("f")),
            over: EdgeEnd::forward(EdgeId::new("e")),
        };
        let (direct, _) = apply_move(&g, &slide).unwrap();
        let (exp, col) = slide_as_expansion_collapse(&g, &slide).unwrap();
        let (mid, _) = apply_move(&g, &exp).unwrap();
        let (composite, _) = apply_move(&mid, &col).unwrap();
        assert!(are_isomorphic(&direct, &composite).is_some());
    }

    #[test]
    fn inapplicable_slide_rejected() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 5), ("f", "v", "v", 3, 7)]);
        let slide = MoveDescriptor::Slide {
            end: EdgeEnd::forward(EdgeId::new("f")),
            over: EdgeEnd::forward(EdgeId::new("e")),
        };
        assert!(matches!(
            slide_as_expansion_collapse(&g, &slide),
            Err(MoveError::Inapplicable(_))
        ));
        assert!(apply_move(&g, &slide).is_err());
    }

    #[test]
    fn loop_collapse_rejected() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 1, 1)]);
        let m = MoveDescriptor::Collapse { end: EdgeEnd::forward(EdgeId::new("e")) };
        assert!(apply_move(&g, &m).is_err());
    }

    #[test]
    fn subdivision_and_back() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);
        let m = MoveDescriptor::subdivision(&g, EdgeId::new("e"));
        let (h, _) = apply_move(&g, &m).unwrap();
        assert_eq!(h.vertex_count(), 2);
        let back = inverse_move(&g, &m).unwrap();
        assert_eq!(apply_move(&h, &back).unwrap().0, g);
    }

    #[test]
    fn text_form_round_trip() {
        let g = two_loops(8);
        for m in enumerate_moves(&g, &SearchBounds::default()).unwrap() {
            let parsed = parse_move(&g, &m.to_string()).unwrap();
            assert_eq!(parsed, m);
        }
    }
}
