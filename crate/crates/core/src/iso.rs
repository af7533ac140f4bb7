//! Flip-respecting isomorphisms of labeled graphs, and canonical codes.
//!
//! Two GBS graphs present the same G-tree when there is a graph
//! isomorphism carrying labels to labels after changing some generators:
//! inverting the generator at a vertex negates every label at that
//! vertex, inverting the generator of an edge group negates both labels of
//! that edge. [`are_isomorphic`] searches for such a witness by
//! backtracking. [`canonical_code`] is a second, independent route: the
//! lexicographically least sign-normalized encoding over all admissible
//! labelings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::graph::{Edge, EdgeEnd, EdgeId, GbsGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    /// Both orientations of every edge are present; `ends[~x] = ~ends[x]`.
    pub ends: BTreeMap<EdgeEnd, EdgeEnd>,
    /// Source vertices whose generator is inverted.
    pub vertex_flips: BTreeSet<VertexId>,
    /// Source edges whose generator is inverted.
    pub edge_flips: BTreeSet<EdgeId>,
}

impl Isomorphism {
    pub fn identity(g: &GbsGraph) -> Self {
        Isomorphism {
            vertices: g.vertices().map(|v| (v.clone(), v.clone())).collect(),
            ends: g.ends().into_iter().map(|x| (x.clone(), x)).collect(),
            vertex_flips: BTreeSet::new(),
            edge_flips: BTreeSet::new(),
        }
    }

    pub fn vertex_sign(&self, v: &VertexId) -> i32 {
        if self.vertex_flips.contains(v) {
            -1
        } else {
            1
        }
    }

    pub fn edge_sign(&self, e: &EdgeId) -> i32 {
        if self.edge_flips.contains(e) {
            -1
        } else {
            1
        }
    }

    /// Checks incidence, involution and flipped-label equality.
    pub fn verify(&self, source: &GbsGraph, target: &GbsGraph) -> bool {
        if source.vertex_count() != target.vertex_count()
            || source.edge_count() != target.edge_count()
        {
            return false;
        }
        let images: BTreeSet<&VertexId> = self.vertices.values().collect();
        if images.len() != target.vertex_count()
            || source.vertices().any(|v| !self.vertices.contains_key(v))
            || images.iter().any(|v| !target.has_vertex(v))
        {
            return false;
        }
        let end_images: BTreeSet<&EdgeEnd> = self.ends.values().collect();
        if end_images.len() != 2 * target.edge_count() {
            return false;
        }
        for x in source.ends() {
            let Some(y) = self.ends.get(&x) else { return false };
            if !target.has_end(y) || self.ends.get(&x.reverse()) != Some(&y.reverse()) {
                return false;
            }
            if self.vertices[source.origin(&x)] != *target.origin(y) {
                return false;
            }
            let sign = self.vertex_sign(source.origin(&x)) * self.edge_sign(&x.edge);
            let expected = source.label(&x) * BigInt::from(sign);
            if &expected != target.label(y) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            vertices: self.vertices.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            ends: self.ends.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            vertex_flips: self.vertex_flips.iter().map(|v| self.vertices[v].clone()).collect(),
            edge_flips: self
                .edge_flips
                .iter()
                .map(|e| self.ends[&EdgeEnd::forward(e.clone())].edge.clone())
                .collect(),
        }
    }
}

fn sign_ratio(a: &BigInt, b: &BigInt) -> i32 {
    if a.is_negative() == b.is_negative() {
        1
    } else {
        -1
    }
}

/// Given vertex and end bijections that match absolute labels, solve for
/// the flips. The system `s(∂0 x)·t(edge x) = sign(λ'(φx))·sign(λ(x))` is
/// linear over Z/2; the solution (when it exists) is unique up to the
/// global flip, fixed here by leaving the smallest source vertex unflipped.
pub fn solve_flips(
    source: &GbsGraph,
    target: &GbsGraph,
    vertices: &BTreeMap<VertexId, VertexId>,
    ends: &BTreeMap<EdgeEnd, EdgeEnd>,
) -> Option<Isomorphism> {
    let sigma = |x: &EdgeEnd| -> Option<i32> {
        let y = ends.get(x)?;
        if !target.has_end(y) || source.label(x).abs() != target.label(y).abs() {
            return None;
        }
        Some(sign_ratio(source.label(x), target.label(y)))
    };
    let mut vsign: BTreeMap<&VertexId, i32> = BTreeMap::new();
    for root in source.vertices() {
        if vsign.contains_key(root) {
            continue;
        }
        vsign.insert(root, 1);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for x in source.ends_at(u) {
                let product = sigma(&x)? * sigma(&x.reverse())?;
                let w = source.terminus(&x);
                let want = vsign[u] * product;
                match vsign.get(w) {
                    Some(&s) if s != want => return None,
                    Some(_) => {}
                    None => {
                        vsign.insert(w, want);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let mut edge_flips = BTreeSet::new();
    for (id, e) in source.edges() {
        let x = EdgeEnd::forward(id.clone());
        if vsign[&e.origin] * sigma(&x)? == -1 {
            edge_flips.insert(id.clone());
        }
    }
    let iso = Isomorphism {
        vertices: vertices.clone(),
        ends: ends.clone(),
        vertex_flips: vsign.iter().filter(|(_, &s)| s == -1).map(|(v, _)| (*v).clone()).collect(),
        edge_flips,
    };
    iso.verify(source, target).then_some(iso)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct VertexInvariant {
    valence: usize,
    loops: usize,
    labels: Vec<BigInt>,
}

fn vertex_invariant(g: &GbsGraph, v: &VertexId) -> VertexInvariant {
    let ends = g.ends_at(v);
    let mut labels: Vec<BigInt> = ends.iter().map(|x| g.label(x).abs()).collect();
    labels.sort();
    let loops = ends.iter().filter(|x| !x.reversed && g.is_loop(&x.edge)).count();
    VertexInvariant { valence: ends.len(), loops, labels }
}

/// Sorted absolute label pairs of the edges joining `a` to `b`, read from
/// `a`'s side (loops unordered).
fn pair_profile(g: &GbsGraph, a: &VertexId, b: &VertexId) -> Vec<(BigInt, BigInt)> {
    let mut out: Vec<(BigInt, BigInt)> = g
        .ends_at(a)
        .into_iter()
        .filter(|x| g.terminus(x) == b)
        .filter(|x| a != b || !x.reversed)
        .map(|x| {
            let p = (g.label(&x).abs(), g.label(&x.reverse()).abs());
            if a == b && p.0 > p.1 {
                (p.1, p.0)
            } else {
                p
            }
        })
        .collect();
    out.sort();
    out
}

/// Backtracking search for a flip-respecting isomorphism.
pub fn are_isomorphic(g1: &GbsGraph, g2: &GbsGraph) -> Option<Isomorphism> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let inv1: BTreeMap<&VertexId, VertexInvariant> =
        g1.vertices().map(|v| (v, vertex_invariant(g1, v))).collect();
    let inv2: BTreeMap<&VertexId, VertexInvariant> =
        g2.vertices().map(|v| (v, vertex_invariant(g2, v))).collect();
    let mut m1: Vec<&VertexInvariant> = inv1.values().collect();
    let mut m2: Vec<&VertexInvariant> = inv2.values().collect();
    m1.sort();
    m2.sort();
    if m1 != m2 {
        return None;
    }
    // rarest invariant first
    let mut order: Vec<&VertexId> = g1.vertices().collect();
    order.sort_by_key(|v| (m1.iter().filter(|i| ***i == inv1[*v]).count(), (*v).clone()));
    let targets: Vec<&VertexId> = g2.vertices().collect();
    let mut assignment: Vec<&VertexId> = Vec::new();
    let mut used = BTreeSet::new();
    search_vertices(g1, g2, &order, &targets, &inv1, &inv2, &mut assignment, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search_vertices<'a>(
    g1: &GbsGraph,
    g2: &'a GbsGraph,
    order: &[&VertexId],
    targets: &[&'a VertexId],
    inv1: &BTreeMap<&VertexId, VertexInvariant>,
    inv2: &BTreeMap<&VertexId, VertexInvariant>,
    assignment: &mut Vec<&'a VertexId>,
    used: &mut BTreeSet<&'a VertexId>,
) -> Option<Isomorphism> {
    let depth = assignment.len();
    if depth == order.len() {
        let vmap: BTreeMap<VertexId, VertexId> = order
            .iter()
            .zip(assignment.iter())
            .map(|(a, b)| ((*a).clone(), (*b).clone()))
            .collect();
        return match_edges(g1, g2, &vmap);
    }
    let v = order[depth];
    for &w in targets {
        if used.contains(w) || inv1[v] != inv2[w] {
            continue;
        }
        let consistent = order[..=depth].iter().zip(assignment.iter().chain([&w])).all(
            |(a, b)| pair_profile(g1, v, a) == pair_profile(g2, w, b),
        );
        if !consistent {
            continue;
        }
        assignment.push(w);
        used.insert(w);
        let found = search_vertices(g1, g2, order, targets, inv1, inv2, assignment, used);
        assignment.pop();
        used.remove(w);
        if found.is_some() {
            return found;
        }
    }
    None
}

fn match_edges(
    g1: &GbsGraph,
    g2: &GbsGraph,
    vmap: &BTreeMap<VertexId, VertexId>,
) -> Option<Isomorphism> {
    let edges1: Vec<EdgeId> = g1.edges().map(|(id, _)| id.clone()).collect();
    let mut ends = BTreeMap::new();
    let mut used = BTreeSet::new();
    assign_edges(g1, g2, vmap, &edges1, &mut ends, &mut used)
}

fn candidate_images(
    g1: &GbsGraph,
    g2: &GbsGraph,
    vmap: &BTreeMap<VertexId, VertexId>,
    e: &EdgeId,
) -> Vec<EdgeEnd> {
    let x = EdgeEnd::forward(e.clone());
    let (o, t) = (&vmap[g1.origin(&x)], &vmap[g1.terminus(&x)]);
    let (a, b) = (g1.label(&x).abs(), g1.label(&x.reverse()).abs());
    g2.ends_at(o)
        .into_iter()
        .filter(|y| g2.terminus(y) == t)
        .filter(|y| g2.label(y).abs() == a && g2.label(&y.reverse()).abs() == b)
        .collect()
}

fn assign_edges(
    g1: &GbsGraph,
    g2: &GbsGraph,
    vmap: &BTreeMap<VertexId, VertexId>,
    edges1: &[EdgeId],
    ends: &mut BTreeMap<EdgeEnd, EdgeEnd>,
    used: &mut BTreeSet<EdgeId>,
) -> Option<Isomorphism> {
    let depth = ends.len() / 2;
    if depth == edges1.len() {
        return solve_flips(g1, g2, vmap, ends);
    }
    let e = &edges1[depth];
    let x = EdgeEnd::forward(e.clone());
    for y in candidate_images(g1, g2, vmap, e) {
        if used.contains(&y.edge) {
            continue;
        }
        used.insert(y.edge.clone());
        ends.insert(x.clone(), y.clone());
        ends.insert(x.reverse(), y.reverse());
        let found = assign_edges(g1, g2, vmap, edges1, ends, used);
        ends.remove(&x);
        ends.remove(&x.reverse());
        used.remove(&y.edge);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Isomorphism-invariant encoding: vertex count plus the oriented, signed
/// edge list `(i, j, λ at i, λ at j)` of the least labeling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize, BigInt, BigInt)>,
}

type RawEdge = (usize, usize, BigInt, BigInt);

pub fn canonical_code(g: &GbsGraph) -> CanonicalCode {
    let invariants: BTreeMap<&VertexId, VertexInvariant> =
        g.vertices().map(|v| (v, vertex_invariant(g, v))).collect();
    let mut cells: BTreeMap<&VertexInvariant, Vec<&VertexId>> = BTreeMap::new();
    for (v, inv) in &invariants {
        cells.entry(inv).or_default().push(v);
    }
    let cell_orders: Vec<Vec<Vec<&VertexId>>> = cells
        .values()
        .map(|cell| cell.iter().copied().permutations(cell.len()).collect())
        .collect();
    let n = g.vertex_count();
    let mut best: Option<Vec<RawEdge>> = None;
    for choice in cell_orders.iter().map(|c| c.iter()).multi_cartesian_product() {
        let index: BTreeMap<&VertexId, usize> =
            choice.into_iter().flatten().copied().enumerate().map(|(i, v)| (v, i)).collect();
        best_for_ordering(g, &index, n, &mut best);
    }
    CanonicalCode { vertex_count: n, edges: best.unwrap_or_default() }
}

fn best_for_ordering(
    g: &GbsGraph,
    index: &BTreeMap<&VertexId, usize>,
    n: usize,
    best: &mut Option<Vec<RawEdge>>,
) {
    // orient each edge low index -> high index; loops small |label| first
    let mut oriented: Vec<(RawEdge, bool)> = g
        .edges()
        .map(|(_, e): (&EdgeId, &Edge)| {
            let (i, j) = (index[&e.origin], index[&e.terminus]);
            let (a, b) = (e.origin_label.clone(), e.terminus_label.clone());
            if i < j || (i == j && a.abs() < b.abs()) {
                ((i, j, a, b), false)
            } else if i == j && a.abs() == b.abs() {
                ((i, j, a, b), true)
            } else {
                ((j, i, b, a), false)
            }
        })
        .collect();
    oriented.sort_by_key(|p| abs_key(&p.0));
    let groups: Vec<Vec<(RawEdge, bool)>> = oriented
        .into_iter()
        .chunk_by(|p| abs_key(&p.0))
        .into_iter()
        .map(|(_, grp)| grp.collect())
        .collect();
    let group_variants: Vec<Vec<Vec<RawEdge>>> = groups.iter().map(|grp| group_orders(grp)).collect();
    if group_variants.is_empty() {
        let code = Vec::new();
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    for choice in group_variants.iter().map(|v| v.iter()).multi_cartesian_product() {
        let list: Vec<RawEdge> = choice.into_iter().flatten().cloned().collect();
        let code = normalize_raw(n, list);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
    }
}

fn abs_key(e: &RawEdge) -> (usize, usize, BigInt, BigInt) {
    (e.0, e.1, e.2.abs(), e.3.abs())
}

/// All orderings of a tie group, with both orientations of symmetric loops.
fn group_orders(group: &[(RawEdge, bool)]) -> Vec<Vec<RawEdge>> {
    let mut out = Vec::new();
    for perm in group.iter().permutations(group.len()) {
        let options: Vec<Vec<RawEdge>> = perm
            .iter()
            .map(|(e, symmetric)| {
                if *symmetric {
                    vec![e.clone(), (e.1, e.0, e.3.clone(), e.2.clone())]
                } else {
                    vec![e.clone()]
                }
            })
            .collect();
        for pick in options.iter().map(|o| o.iter()).multi_cartesian_product() {
            out.push(pick.into_iter().cloned().collect());
        }
    }
    out
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Sign normalization of an indexed edge list (same rule as
/// [`GbsGraph::normalize_signs`], with the list order standing in for names).
fn normalize_raw(n: usize, edges: Vec<RawEdge>) -> Vec<RawEdge> {
    let mut vsign = vec![0i32; n];
    let mut esign = vec![0i32; edges.len()];
    if n > 0 {
        vsign[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for (k, (i, j, a, b)) in edges.iter().enumerate() {
                let (near, far, far_label, near_label) = if *i == u {
                    (*i, *j, b, a)
                } else if *j == u {
                    (*j, *i, a, b)
                } else {
                    continue;
                };
                if vsign[far] != 0 {
                    continue;
                }
                esign[k] = vsign[near] * sign_of(near_label);
                vsign[far] = esign[k] * sign_of(far_label);
                queue.push_back(far);
            }
        }
    }
    edges
        .into_iter()
        .enumerate()
        .map(|(k, (i, j, a, b))| {
            if esign[k] == 0 {
                esign[k] = vsign[i] * sign_of(&a);
            }
            let s = BigInt::from(esign[k]);
            let a2 = &a * &s * BigInt::from(vsign[i]);
            let b2 = &b * &s * BigInt::from(vsign[j]);
            debug_assert!(!a2.is_zero());
            (i, j, a2, b2)
        })
        .collect()
}

/// The graph spelled by [`canonical_code`], with vertices `v0, v1, ...` and
/// edges `e0, e1, ...`, then sign-normalized.
pub fn canonical_relabeling(g: &GbsGraph) -> GbsGraph {
    let code = canonical_code(g);
    let mut out = GbsGraph::new();
    for i in 0..code.vertex_count {
        out.add_vertex(format!("v{i}")).expect("fresh names");
    }
    for (k, (i, j, a, b)) in code.edges.iter().enumerate() {
        out.add_edge(format!("e{k}"), format!("v{i}"), format!("v{j}"), a.clone(), b.clone())
            .expect("fresh names");
    }
    out.normalize_signs().unwrap_or(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph(a: i64, b: i64) -> GbsGraph {
        GbsGraph::from_edges(&["v"], &[("e", "v", "v", a, b)])
    }

    #[test]
    fn edge_flip_witness() {
        let iso = are_isomorphic(&loop_graph(6, 1), &loop_graph(-6, -1)).expect("isomorphic");
        assert!(iso.edge_flips.contains(&EdgeId::new("e")));
        assert!(iso.vertex_flips.is_empty());
    }

    #[test]
    fn cycle_sign_separates() {
        assert!(are_isomorphic(&loop_graph(6, 1), &loop_graph(6, -1)).is_none());
        assert_ne!(canonical_code(&loop_graph(6, 1)), canonical_code(&loop_graph(6, -1)));
    }

    #[test]
    fn identity_witness() {
        let g = GbsGraph::from_edges(
            &["a", "b"],
            &[("e", "a", "b", 2, 3), ("f", "a", "b", 2, 3), ("l", "a", "a", 5, 7)],
        );
        let iso = are_isomorphic(&g, &g).unwrap();
        assert!(iso.verify(&g, &g));
        assert!(Isomorphism::identity(&g).verify(&g, &g));
    }

    #[test]
    fn renamed_and_reversed_edges() {
        let g1 = GbsGraph::from_edges(&["a", "b"], &[("e", "a", "b", 2, -3), ("l", "b", "b", 4, 5)]);
        let g2 = GbsGraph::from_edges(&["x", "y"], &[("f", "y", "x", 3, 2), ("m", "y", "y", -5, -4)]);
        let iso = are_isomorphic(&g1, &g2).unwrap();
        assert!(iso.verify(&g1, &g2));
        assert!(iso.inverse().verify(&g2, &g1));
        assert_eq!(canonical_code(&g1), canonical_code(&g2));
    }

    #[test]
    fn loop_orientation_matters_for_labels() {
        assert!(are_isomorphic(&loop_graph(2, 4), &loop_graph(4, 2)).is_some());
        assert!(are_isomorphic(&loop_graph(2, 4), &loop_graph(2, 8)).is_none());
    }

    #[test]
    fn relabeling_is_isomorphic() {
        let g = GbsGraph::from_edges(
            &["p", "q", "r"],
            &[("a", "p", "q", -2, 3), ("b", "q", "r", 5, -7), ("c", "r", "p", 4, 9)],
        );
        let c = canonical_relabeling(&g);
        assert!(are_isomorphic(&g, &c).is_some());
        assert_eq!(canonical_relabeling(&c), c);
    }
}
