//! Reduction by collapses, canonical forms, and bounded search for
//! elementary deformations.
//!
//! Deformation equivalence is only semi-decided here. [`decide_equivalence`]
//! answers with a certified path, with an invariant that separates the two
//! graphs, or with `Unknown` when the budgeted search runs out of depth.

use std::collections::{BTreeMap, HashMap};

use crate::error::{DeformError, GraphError};
use crate::graph::GbsGraph;
use crate::invariants::{modular_image, ModularImage};
use crate::iso::{are_isomorphic, canonical_code, canonical_relabeling, CanonicalCode, Isomorphism};
use crate::moves::{
    apply_move, collapses, enumerate_elementary_moves, inverse_move, transport_move,
    MoveDescriptor, SearchBounds, WordMap,
};

/// A maximal sequence of collapses and the reduced graph it ends at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub moves: Vec<MoveDescriptor>,
    pub result: GbsGraph,
}

/// How [`reduce_graph_with`] picks the next collapse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Always the least applicable collapse.
    Deterministic,
    /// The given collapses in order, then deterministic.
    Given(Vec<MoveDescriptor>),
}

pub fn reduce_graph(g: &GbsGraph) -> Result<ReductionTrace, GraphError> {
    match reduce_graph_with(g, &ReductionStrategy::Deterministic) {
        Ok(trace) => Ok(trace),
        Err(DeformError::Graph(e)) => Err(e),
        Err(e) => unreachable!("deterministic reduction cannot fail with {e}"),
    }
}

pub fn reduce_graph_with(
    g: &GbsGraph,
    strategy: &ReductionStrategy,
) -> Result<ReductionTrace, DeformError> {
    g.ensure_valid()?;
    let mut cur = g.clone();
    let mut moves = Vec::new();
    if let ReductionStrategy::Given(order) = strategy {
        for m in order {
            if !matches!(m, MoveDescriptor::Collapse { .. }) {
                return Err(crate::error::MoveError::Inapplicable(format!(
                    "{m} is not a collapse"
                ))
                .into());
            }
            cur = apply_move(&cur, m)?.0;
            moves.push(m.clone());
        }
    }
    while let Some(m) = collapses(&cur).into_iter().min() {
        cur = apply_move(&cur, &m)?.0;
        moves.push(m);
    }
    Ok(ReductionTrace { moves, result: cur })
}

/// Every graph reachable by a maximal collapse sequence, one per
/// isomorphism class, ordered by canonical code.
pub fn all_maximal_reductions(g: &GbsGraph, cap: usize) -> Result<Vec<GbsGraph>, DeformError> {
    g.ensure_valid()?;
    if g.edge_count() > cap {
        return Err(DeformError::CapExceeded { edges: g.edge_count(), cap });
    }
    let mut seen: HashMap<CanonicalCode, ()> = HashMap::new();
    let mut stack = vec![g.clone()];
    seen.insert(canonical_code(g), ());
    let mut finals: Vec<GbsGraph> = Vec::new();
    while let Some(cur) = stack.pop() {
        let ms = collapses(&cur);
        if ms.is_empty() {
            if !finals.iter().any(|h| are_isomorphic(h, &cur).is_some()) {
                finals.push(cur);
            }
            continue;
        }
        for m in ms {
            let next = apply_move(&cur, &m)?.0;
            if seen.insert(canonical_code(&next), ()).is_none() {
                stack.push(next);
            }
        }
    }
    finals.sort_by_cached_key(canonical_code);
    Ok(finals)
}

/// Which degenerate group an elementary graph presents.
pub fn elementary_case(reduced: &GbsGraph) -> Option<&'static str> {
    if !reduced.classify().ok()?.is_elementary {
        return None;
    }
    let edges: Vec<_> = reduced.edges().map(|(id, e)| (id.clone(), e.is_loop())).collect();
    Some(match edges.as_slice() {
        [] => "point: the group is Z",
        [(id, true)] if reduced.edge_sign(id) > 0 => "loop (1, 1): the group is Z^2",
        _ => "Klein bottle group",
    })
}

/// The reduced, relabeled and sign-normalized form of `g` when the
/// reduction is strongly slide-free, `None` otherwise.
pub fn canonical_form(g: &GbsGraph) -> Result<Option<(GbsGraph, ReductionTrace)>, DeformError> {
    let trace = reduce_graph(g)?;
    if let Some(case) = elementary_case(&trace.result) {
        return Err(DeformError::Elementary(case));
    }
    if !trace.result.classify()?.is_strongly_slide_free {
        return Ok(None);
    }
    let form = canonical_relabeling(&trace.result);
    Ok(Some((form, trace)))
}

/// A sequence of moves from `source` to a graph isomorphic to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationPath {
    pub source: GbsGraph,
    pub target: GbsGraph,
    pub moves: Vec<MoveDescriptor>,
    /// The graph the moves end at.
    pub end: GbsGraph,
    /// Witness `end ≅ target`.
    pub to_target: Isomorphism,
    /// The moves followed by `to_target`, on words.
    pub word_map: WordMap,
    /// Whether the search proved that no shorter path exists within the
    /// explored space.
    pub shortest: bool,
}

impl DeformationPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the moves and checks the final isomorphism.
    pub fn verify(&self) -> bool {
        let mut cur = self.source.clone();
        for m in &self.moves {
            match apply_move(&cur, m) {
                Ok((next, _)) => cur = next,
                Err(_) => return false,
            }
        }
        cur == self.end && self.to_target.verify(&self.end, &self.target)
    }
}

struct Node {
    graph: GbsGraph,
    depth: usize,
    /// Parent key and the move applied to the parent's graph.
    parent: Option<(CanonicalCode, MoveDescriptor)>,
}

struct Side {
    nodes: HashMap<CanonicalCode, Node>,
    frontier: Vec<CanonicalCode>,
    depth: usize,
}

impl Side {
    fn new(g: &GbsGraph) -> Self {
        let key = canonical_code(g);
        let mut nodes = HashMap::new();
        nodes.insert(key.clone(), Node { graph: g.clone(), depth: 0, parent: None });
        Side { nodes, frontier: vec![key], depth: 0 }
    }

    /// Moves from the root to `key`, with the graph each move applies to.
    fn chain(&self, key: &CanonicalCode) -> Vec<(GbsGraph, MoveDescriptor)> {
        let mut out = Vec::new();
        let mut cur = key;
        while let Some((parent, m)) = &self.nodes[cur].parent {
            out.push((self.nodes[parent].graph.clone(), m.clone()));
            cur = parent;
        }
        out.reverse();
        out
    }
}

fn within_bounds(g: &GbsGraph, bounds: &SearchBounds) -> bool {
    let max_label = num_bigint::BigInt::from(bounds.max_label);
    g.edge_count() <= bounds.max_edges
        && g.edges().all(|(_, e)| {
            num_traits::Signed::abs(&e.origin_label) <= max_label
                && num_traits::Signed::abs(&e.terminus_label) <= max_label
        })
}

/// Bidirectional breadth-first search over collapses and expansions.
///
/// Levels are expanded whole, alternating toward the smaller frontier, so
/// the first level producing a meeting yields a shortest path; ties are
/// broken by the text of the moves. `Ok(None)` means no path within
/// `bounds.max_depth` moves among states inside the bounds.
pub fn deformation_path(
    g1: &GbsGraph,
    g2: &GbsGraph,
    bounds: &SearchBounds,
) -> Result<Option<DeformationPath>, DeformError> {
    g1.ensure_valid()?;
    g2.ensure_valid()?;
    let mut fwd = Side::new(g1);
    let mut bwd = Side::new(g2);
    if let Some(key) = fwd.frontier.first().filter(|k| bwd.nodes.contains_key(*k)) {
        return Ok(Some(assemble(g1, g2, &fwd, &bwd, key, true)?));
    }
    let mut states = 2;
    while fwd.depth + bwd.depth < bounds.max_depth {
        if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
            break;
        }
        let forward_turn =
            !fwd.frontier.is_empty() && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
        let (grow, other) = if forward_turn { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        let mut next = Vec::new();
        let mut meetings: Vec<CanonicalCode> = Vec::new();
        for key in std::mem::take(&mut grow.frontier) {
            let graph = grow.nodes[&key].graph.clone();
            for m in enumerate_elementary_moves(&graph, bounds) {
                let (child, _) = apply_move(&graph, &m)?;
                if !within_bounds(&child, bounds) {
                    continue;
                }
                let ck = canonical_code(&child);
                if grow.nodes.contains_key(&ck) {
                    continue;
                }
                states += 1;
                if states > bounds.max_states {
                    return Err(DeformError::BudgetExhausted(states));
                }
                if other.nodes.contains_key(&ck) {
                    meetings.push(ck.clone());
                }
                grow.nodes.insert(
                    ck.clone(),
                    Node { graph: child, depth: grow.depth + 1, parent: Some((key.clone(), m)) },
                );
                next.push(ck);
            }
        }
        grow.depth += 1;
        grow.frontier = next;
        if !meetings.is_empty() {
            let best = meetings
                .iter()
                .map(|k| {
                    let len = fwd.nodes[k].depth + bwd.nodes[k].depth;
                    let text: Vec<String> = fwd
                        .chain(k)
                        .iter()
                        .chain(bwd.chain(k).iter().rev())
                        .map(|(_, m)| m.to_string())
                        .collect();
                    (len, text, k)
                })
                .min()
                .map(|(_, _, k)| k.clone())
                .expect("nonempty");
            return Ok(Some(assemble(g1, g2, &fwd, &bwd, &best, true)?));
        }
    }
    Ok(None)
}

/// Joins the forward chain to `key` with the reversed backward chain.
fn assemble(
    g1: &GbsGraph,
    g2: &GbsGraph,
    fwd: &Side,
    bwd: &Side,
    key: &CanonicalCode,
    shortest: bool,
) -> Result<DeformationPath, DeformError> {
    let forward: Vec<MoveDescriptor> = fwd.chain(key).into_iter().map(|(_, m)| m).collect();
    let backward = bwd.chain(key);
    let meet = bwd.nodes[key].graph.clone();
    join_paths(g1, g2, forward, &meet, backward, shortest)
}

/// Applies `forward` to `g1`, then walks `backward` (a chain of moves from
/// `g2` ending at a graph isomorphic to `meet`) in reverse by transporting
/// inverse moves through isomorphisms.
fn join_paths(
    g1: &GbsGraph,
    g2: &GbsGraph,
    forward: Vec<MoveDescriptor>,
    meet: &GbsGraph,
    backward: Vec<(GbsGraph, MoveDescriptor)>,
    shortest: bool,
) -> Result<DeformationPath, DeformError> {
    let mut cur = g1.clone();
    let mut map = WordMap::identity(g1);
    let mut moves = Vec::new();
    let mut step = |cur: &mut GbsGraph, m: MoveDescriptor| -> Result<(), DeformError> {
        let (next, wm) = apply_move(cur, &m)?;
        map = std::mem::replace(&mut map, WordMap::identity(g1)).then(wm);
        moves.push(m);
        *cur = next;
        Ok(())
    };
    for m in forward {
        step(&mut cur, m)?;
    }
    let mut node = meet.clone();
    for (parent, m) in backward.into_iter().rev() {
        let phi = are_isomorphic(&cur, &node).ok_or_else(|| {
            GraphError::Invalid("search bookkeeping lost an isomorphism".into())
        })?;
        let inv = inverse_move(&parent, &m)?;
        let local = transport_move(&phi.inverse(), &cur, &inv);
        step(&mut cur, local)?;
        node = parent;
    }
    let to_target = are_isomorphic(&cur, g2)
        .ok_or_else(|| GraphError::Invalid("path does not reach the target".into()))?;
    let word_map = map.then(WordMap::from_isomorphism(&cur, g2, &to_target));
    Ok(DeformationPath {
        source: g1.clone(),
        target: g2.clone(),
        moves,
        end: cur,
        to_target,
        word_map,
        shortest,
    })
}

/// Reason two graphs cannot be related by an elementary deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantWitness {
    BettiNumber { left: usize, right: usize },
    ModularImage { left: ModularImage, right: ModularImage },
    /// Both reduce to strongly slide-free graphs, which are unique in their
    /// deformation spaces, and these are not isomorphic.
    CanonicalForm { left: String, right: String },
}

#[derive(Clone, Debug)]
pub enum Equivalence {
    Equivalent(Box<DeformationPath>),
    NotEquivalent(InvariantWitness),
    Unknown,
}

/// Invariant screening, then search, then (if both graphs have canonical
/// forms) the path through the common reduced graph.
pub fn decide_equivalence(
    g1: &GbsGraph,
    g2: &GbsGraph,
    bounds: &SearchBounds,
) -> Result<Equivalence, DeformError> {
    let (b1, b2) = (g1.betti_number()?, g2.betti_number()?);
    if b1 != b2 {
        return Ok(Equivalence::NotEquivalent(InvariantWitness::BettiNumber {
            left: b1,
            right: b2,
        }));
    }
    let (m1, m2) = (modular_image(g1)?, modular_image(g2)?);
    if m1 != m2 {
        return Ok(Equivalence::NotEquivalent(InvariantWitness::ModularImage {
            left: m1,
            right: m2,
        }));
    }
    let forms = match (canonical_form(g1), canonical_form(g2)) {
        (Ok(Some(a)), Ok(Some(b))) => Some((a, b)),
        _ => None,
    };
    if let Some(((f1, _), (f2, _))) = &forms {
        if f1 != f2 {
            return Ok(Equivalence::NotEquivalent(InvariantWitness::CanonicalForm {
                left: crate::io::serialize_graph(f1),
                right: crate::io::serialize_graph(f2),
            }));
        }
    }
    if let Some(path) = deformation_path(g1, g2, bounds)? {
        return Ok(Equivalence::Equivalent(Box::new(path)));
    }
    if let Some(((_, t1), (_, t2))) = forms {
        let backward = reduction_chain(g2, &t2)?;
        let path = join_paths(g1, g2, t1.moves, &t2.result, backward, false)?;
        return Ok(Equivalence::Equivalent(Box::new(path)));
    }
    Ok(Equivalence::Unknown)
}

fn reduction_chain(
    g: &GbsGraph,
    trace: &ReductionTrace,
) -> Result<Vec<(GbsGraph, MoveDescriptor)>, DeformError> {
    let mut cur = g.clone();
    let mut out = Vec::new();
    for m in &trace.moves {
        let next = apply_move(&cur, m)?.0;
        out.push((std::mem::replace(&mut cur, next), m.clone()));
    }
    Ok(out)
}

/// Reduced graphs reachable from `g`, keyed by canonical code; used by
/// tests to compare reduction outcomes across deformations.
pub fn reduction_classes(g: &GbsGraph, cap: usize) -> Result<BTreeMap<CanonicalCode, GbsGraph>, DeformError> {
    Ok(all_maximal_reductions(g, cap)?
        .into_iter()
        .map(|h| (canonical_code(&h), h))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeEnd, EdgeId, VertexId};
    use crate::words::{classify_word, PathWord};

    fn two_loops(a: i64) -> GbsGraph {
        GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", a, 3)])
    }

    fn g6() -> GbsGraph {
        GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2), ("l", "w", "w", 3, 5)])
    }

    #[test]
    fn reduction_examples() {
        let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2)]);
        let t = reduce_graph(&seg).unwrap();
        assert_eq!(t.moves.len(), 1);
        assert_eq!(t.result.vertex_count(), 1);
        assert_eq!(t.result.edge_count(), 0);

        let loop24 = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4)]);
        let t = reduce_graph(&loop24).unwrap();
        assert!(t.moves.is_empty());
        assert_eq!(t.result, loop24);

        let t = reduce_graph(&g6()).unwrap();
        assert_eq!(t.moves.len(), 1);
        assert_eq!(t.result, GbsGraph::from_edges(&["w"], &[("l", "w", "w", 3, 5)]));
        assert!(t.result.classify().unwrap().is_reduced);
    }

    #[test]
    fn given_order() {
        let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 1), ("l", "w", "w", 2, 3)]);
        let m = MoveDescriptor::Collapse { end: EdgeEnd::backward(EdgeId::new("e")) };
        let t = reduce_graph_with(&g, &ReductionStrategy::Given(vec![m.clone()])).unwrap();
        assert_eq!(t.moves, vec![m]);
        assert!(t.result.has_vertex(&VertexId::new("u")));
    }

    #[test]
    fn maximal_reductions() {
        let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2)]);
        assert_eq!(all_maximal_reductions(&seg, 4).unwrap().len(), 1);
        assert!(matches!(
            all_maximal_reductions(&two_loops(8), 1),
            Err(DeformError::CapExceeded { edges: 2, cap: 1 })
        ));
    }

    #[test]
    fn canonical_forms() {
        let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
        let (form, _) = canonical_form(&seg).unwrap().unwrap();
        assert!(are_isomorphic(&form, &seg).is_some());
        let loop24 = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4)]);
        assert!(canonical_form(&loop24).unwrap().is_none());
        let point = GbsGraph::from_edges::<i64>(&["v"], &[]);
        assert!(matches!(canonical_form(&point), Err(DeformError::Elementary(_))));
    }

    #[test]
    fn slide_path_has_length_two() {
        let path = deformation_path(&two_loops(8), &two_loops(16), &SearchBounds::default())
            .unwrap()
            .unwrap();
        assert_eq!(path.len(), 2);
        assert!(path.verify());
        assert!(path.moves.iter().all(MoveDescriptor::is_elementary));
        let v = VertexId::new("v");
        let mut w = PathWord::syllable(v, 1);
        w.push_edge(EdgeEnd::forward(EdgeId::new("f")));
        w.push_power(&0.into());
        let image = path.word_map.map(&w);
        assert!(image.check(&two_loops(16)).is_ok());
        assert_eq!(
            classify_word(&two_loops(8), &w).unwrap().kind,
            classify_word(&two_loops(16), &image).unwrap().kind
        );
    }

    #[test]
    fn empty_path_to_self() {
        let g = two_loops(8);
        let path = deformation_path(&g, &g, &SearchBounds::default()).unwrap().unwrap();
        assert!(path.is_empty());
        assert!(path.verify());
    }

    #[test]
    fn modular_mismatch_is_reported() {
        let a = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);
        let b = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 1)]);
        let bounds = SearchBounds { max_depth: 2, ..SearchBounds::default() };
        assert!(deformation_path(&a, &b, &bounds).unwrap().is_none());
        match decide_equivalence(&a, &b, &bounds).unwrap() {
            Equivalence::NotEquivalent(InvariantWitness::ModularImage { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_route_certifies_long_paths() {
        // segment (2,3) with two expansions on top: too deep for a depth-1 search
        let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
        let big = GbsGraph::from_edges(
            &["u", "w", "a", "b"],
            &[("e", "u", "w", 2, 3), ("x", "a", "u", 1, 1), ("y", "w", "b", 3, 1)],
        );
        let bounds = SearchBounds { max_depth: 1, ..SearchBounds::default() };
        match decide_equivalence(&big, &seg, &bounds).unwrap() {
            Equivalence::Equivalent(p) => {
                assert!(p.verify());
                assert!(!p.shortest);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let bounds = SearchBounds { max_states: 3, max_depth: 6, ..SearchBounds::default() };
        let a = two_loops(8);
        let b = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", 32, 3)]);
        assert!(matches!(deformation_path(&a, &b, &bounds), Err(DeformError::BudgetExhausted(_))));
    }
}
