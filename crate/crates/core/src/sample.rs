//! Seeded random graphs, words and deformations for property tests,
//! examples and the acceptance suite.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{EdgeEnd, GbsGraph, VertexId};
use crate::moves::{apply_move, enumerate_moves, MoveDescriptor, SearchBounds};
use crate::words::PathWord;

#[derive(Clone, Copy, Debug)]
pub struct GraphShape {
    pub max_vertices: usize,
    /// Extra edges beyond a spanning tree (loops included).
    pub max_extra_edges: usize,
    pub max_label: i64,
}

impl Default for GraphShape {
    fn default() -> Self {
        GraphShape { max_vertices: 3, max_extra_edges: 2, max_label: 12 }
    }
}

fn label(rng: &mut impl Rng, max: i64) -> BigInt {
    let k = rng.gen_range(1..=max);
    BigInt::from(if rng.gen_bool(0.25) { -k } else { k })
}

/// A connected graph: a random tree on up to `max_vertices` vertices plus
/// up to `max_extra_edges` further edges.
pub fn random_graph(rng: &mut impl Rng, shape: GraphShape) -> GbsGraph {
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let mut g = GbsGraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).expect("fresh");
    }
    let mut k = 0;
    let mut add = |g: &mut GbsGraph, a: usize, b: usize, rng: &mut _| {
        let (la, lb) = (label(rng, shape.max_label), label(rng, shape.max_label));
        g.add_edge(format!("e{k}"), format!("v{a}"), format!("v{b}"), la, lb).expect("fresh");
        k += 1;
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        if rng.gen_bool(0.5) {
            add(&mut g, i, j, rng);
        } else {
            add(&mut g, j, i, rng);
        }
    }
    for _ in 0..rng.gen_range(0..=shape.max_extra_edges) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        add(&mut g, a, b, rng);
    }
    g
}

/// A closed word: a random walk of up to `max_crossings` steps from a random
/// vertex, closed up along the spanning tree, with random syllables of
/// absolute value at most `max_exponent`.
pub fn random_closed_word(
    rng: &mut impl Rng,
    g: &GbsGraph,
    max_crossings: usize,
    max_exponent: i64,
) -> PathWord {
    let vertices: Vec<&VertexId> = g.vertices().collect();
    let base = (*vertices.choose(rng).expect("nonempty")).clone();
    let syllable = |rng: &mut _| -> BigInt {
        if Rng::gen_bool(rng, 0.3) {
            BigInt::from(0)
        } else {
            BigInt::from(Rng::gen_range(rng, -max_exponent..=max_exponent))
        }
    };
    let mut w = PathWord::syllable(base.clone(), syllable(rng));
    let mut at = base.clone();
    for _ in 0..rng.gen_range(0..=max_crossings) {
        let ends = g.ends_at(&at);
        let Some(x) = ends.choose(rng) else { break };
        at = g.terminus(x).clone();
        w.push_edge(x.clone());
        w.push_power(&syllable(rng));
    }
    for x in tree_path(g, &at, &base) {
        w.push_edge(x);
        w.push_power(&syllable(rng));
    }
    w
}

/// Path from `a` to `b` inside the spanning tree.
fn tree_path(g: &GbsGraph, a: &VertexId, b: &VertexId) -> Vec<EdgeEnd> {
    let tree = g.spanning_tree();
    let to_root = |v: &VertexId| -> Vec<EdgeEnd> {
        let mut path = Vec::new();
        let mut cur = v.clone();
        while let Some(x) = tree.iter().find(|x| g.terminus(x) == &cur) {
            path.push(x.reverse());
            cur = g.origin(x).clone();
        }
        path
    };
    let (mut up, down) = (to_root(a), to_root(b));
    let mut down: Vec<EdgeEnd> = down.iter().rev().map(EdgeEnd::reverse).collect();
    // drop the common part near the root
    while let (Some(x), Some(y)) = (up.last(), down.first()) {
        if x.reverse() == *y {
            up.pop();
            down.remove(0);
        } else {
            break;
        }
    }
    up.extend(down);
    up
}

fn max_abs_label(g: &GbsGraph) -> BigInt {
    g.edges()
        .flat_map(|(_, e)| [e.origin_label.abs(), e.terminus_label.abs()])
        .max()
        .unwrap_or_default()
}

/// A uniformly chosen applicable move whose result keeps labels at most
/// `max_label` in absolute value.
pub fn random_move(
    rng: &mut impl Rng,
    g: &GbsGraph,
    bounds: &SearchBounds,
    max_label: i64,
) -> Option<(MoveDescriptor, GbsGraph)> {
    let mut moves = enumerate_moves(g, bounds).ok()?;
    moves.shuffle(rng);
    let cap = BigInt::from(max_label);
    moves.into_iter().find_map(|m| {
        let (h, _) = apply_move(g, &m).ok()?;
        (max_abs_label(&h) <= cap).then_some((m, h))
    })
}

/// Up to `steps` random moves of every kind, with labels bounded.
pub fn random_deformation(
    rng: &mut impl Rng,
    g: &GbsGraph,
    steps: usize,
    max_label: i64,
) -> (GbsGraph, Vec<MoveDescriptor>) {
    let bounds = SearchBounds { max_modulus: 4, max_subset_size: 2, ..SearchBounds::default() };
    let mut cur = g.clone();
    let mut moves = Vec::new();
    for _ in 0..rng.gen_range(1..=steps.max(1)) {
        match random_move(rng, &cur, &bounds, max_label) {
            Some((m, next)) => {
                moves.push(m);
                cur = next;
            }
            None => break,
        }
    }
    (cur, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let g = random_graph(&mut rng, GraphShape::default());
            assert!(g.is_valid());
            let w = random_closed_word(&mut rng, &g, 6, 5);
            assert!(w.check(&g).is_ok());
            assert!(w.is_closed(&g));
            let (h, _) = random_deformation(&mut rng, &g, 4, 30);
            assert!(h.is_valid());
        }
    }
}
