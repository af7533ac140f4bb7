//! GBS graphs: finite connected graphs with a nonzero integer label at
//! every edge-end.
//!
//! An edge `e : u -> w [a, b]` carries the label `a` at its origin `u` and
//! `b` at its terminus `w`. The vertex group at `u` is infinite cyclic with
//! generator `a_u`; the edge group includes into it as `a_u^a`. Oriented
//! edges are [`EdgeEnd`]s: `e` starts at `u`, its reverse `~e` starts at `w`.
//! The label of an end is the label at the vertex it starts from.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Self {
        VertexId(name.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl EdgeId {
    pub fn new(name: impl Into<String>) -> Self {
        EdgeId(name.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An oriented edge. `EdgeEnd::forward(e)` leaves the origin of `e`,
/// its reverse (the involution) leaves the terminus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub reversed: bool,
}

impl EdgeEnd {
    pub fn forward(edge: EdgeId) -> Self {
        EdgeEnd { edge, reversed: false }
    }

    pub fn backward(edge: EdgeId) -> Self {
        EdgeEnd { edge, reversed: true }
    }

    pub fn reverse(&self) -> Self {
        EdgeEnd { edge: self.edge.clone(), reversed: !self.reversed }
    }
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "~{}", self.edge)
        } else {
            write!(f, "{}", self.edge)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub origin: VertexId,
    pub terminus: VertexId,
    pub origin_label: BigInt,
    pub terminus_label: BigInt,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.origin == self.terminus
    }
}

/// Finite quotient presentation of a cocompact GBS tree.
///
/// The builder methods only reject duplicate names; everything else
/// (zero labels, dangling endpoints, disconnection) is reported by
/// [`GbsGraph::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GbsGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum ValidationIssue {
    Empty,
    ZeroLabel { end: String },
    UnknownVertex { edge: String, vertex: String },
    SharedName { name: String },
    Disconnected { components: usize },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::Empty => write!(f, "graph has no vertices"),
            ValidationIssue::ZeroLabel { end } => write!(f, "zero label at edge-end {end}"),
            ValidationIssue::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} references unknown vertex {vertex}")
            }
            ValidationIssue::SharedName { name } => {
                write!(f, "name {name} is used for both a vertex and an edge")
            }
            ValidationIssue::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Tree-level properties of the G-tree, read off from label arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphFlags {
    pub is_minimal: bool,
    pub is_reduced: bool,
    pub is_proper: bool,
    pub is_slide_free: bool,
    pub is_strongly_slide_free: bool,
    pub is_elementary: bool,
}

/// `|a|` divides `|b|`. Containment of subgroups of Z ignores signs.
pub fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    b.is_multiple_of(a)
}

impl GbsGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) -> Result<VertexId, GraphError> {
        let id = VertexId(v.into());
        if !self.vertices.insert(id.clone()) {
            return Err(GraphError::DuplicateName(id.0));
        }
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        origin: impl Into<String>,
        terminus: impl Into<String>,
        origin_label: impl Into<BigInt>,
        terminus_label: impl Into<BigInt>,
    ) -> Result<EdgeId, GraphError> {
        let id = EdgeId(name.into());
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateName(id.0));
        }
        self.edges.insert(
            id.clone(),
            Edge {
                origin: VertexId(origin.into()),
                terminus: VertexId(terminus.into()),
                origin_label: origin_label.into(),
                terminus_label: terminus_label.into(),
            },
        );
        Ok(id)
    }

    /// Panicking shorthand used by fixtures and examples.
    pub fn from_edges<L: Into<BigInt> + Clone>(
        vertices: &[&str],
        edges: &[(&str, &str, &str, L, L)],
    ) -> Self {
        let mut g = GbsGraph::new();
        for v in vertices {
            g.add_vertex(*v).expect("duplicate vertex");
        }
        for (name, a, b, la, lb) in edges {
            g.add_edge(*name, *a, *b, la.clone(), lb.clone()).expect("duplicate edge");
        }
        g
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &Edge)> + '_ {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&Edge> {
        self.edges.get(e)
    }

    pub fn has_end(&self, x: &EdgeEnd) -> bool {
        self.edges.contains_key(&x.edge)
    }

    /// All edge-ends, forward before reverse, sorted by edge name.
    pub fn ends(&self) -> Vec<EdgeEnd> {
        self.edges
            .keys()
            .flat_map(|e| [EdgeEnd::forward(e.clone()), EdgeEnd::backward(e.clone())])
            .collect()
    }

    fn edge_of(&self, x: &EdgeEnd) -> &Edge {
        self.edges
            .get(&x.edge)
            .unwrap_or_else(|| panic!("edge {} not in graph", x.edge))
    }

    /// `∂0 x`. Panics if the edge is absent.
    pub fn origin(&self, x: &EdgeEnd) -> &VertexId {
        let e = self.edge_of(x);
        if x.reversed {
            &e.terminus
        } else {
            &e.origin
        }
    }

    /// `∂1 x`.
    pub fn terminus(&self, x: &EdgeEnd) -> &VertexId {
        self.origin(&x.reverse())
    }

    /// `λ(x)`.
    pub fn label(&self, x: &EdgeEnd) -> &BigInt {
        let e = self.edge_of(x);
        if x.reversed {
            &e.terminus_label
        } else {
            &e.origin_label
        }
    }

    pub fn is_loop(&self, e: &EdgeId) -> bool {
        self.edges.get(e).map(Edge::is_loop).unwrap_or(false)
    }

    /// Edge-ends leaving `v`, in sorted order. A loop contributes both ends.
    pub fn ends_at(&self, v: &VertexId) -> Vec<EdgeEnd> {
        let mut out = Vec::new();
        for (id, e) in &self.edges {
            if &e.origin == v {
                out.push(EdgeEnd::forward(id.clone()));
            }
            if &e.terminus == v {
                out.push(EdgeEnd::backward(id.clone()));
            }
        }
        out
    }

    pub fn valence(&self, v: &VertexId) -> usize {
        self.ends_at(v).len()
    }

    pub(crate) fn set_label(&mut self, x: &EdgeEnd, label: BigInt) {
        let e = self.edges.get_mut(&x.edge).expect("edge not in graph");
        if x.reversed {
            e.terminus_label = label;
        } else {
            e.origin_label = label;
        }
    }

    pub(crate) fn set_origin(&mut self, x: &EdgeEnd, v: VertexId) {
        let e = self.edges.get_mut(&x.edge).expect("edge not in graph");
        if x.reversed {
            e.terminus = v;
        } else {
            e.origin = v;
        }
    }

    pub(crate) fn remove_edge(&mut self, e: &EdgeId) -> Option<Edge> {
        self.edges.remove(e)
    }

    pub(crate) fn remove_vertex(&mut self, v: &VertexId) -> bool {
        self.vertices.remove(v)
    }

    pub(crate) fn insert_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub(crate) fn insert_edge(&mut self, id: EdgeId, edge: Edge) {
        self.edges.insert(id, edge);
    }

    /// A vertex name not yet used by any vertex or edge, derived from `hint`.
    pub fn fresh_vertex_name(&self, hint: &str) -> VertexId {
        VertexId(self.fresh_name(hint))
    }

    pub fn fresh_edge_name(&self, hint: &str) -> EdgeId {
        EdgeId(self.fresh_name(hint))
    }

    fn fresh_name(&self, hint: &str) -> String {
        let taken = |s: &str| {
            self.vertices.contains(&VertexId(s.to_string()))
                || self.edges.contains_key(&EdgeId(s.to_string()))
        };
        (1u64..)
            .map(|k| format!("{hint}_{k}"))
            .find(|s| !taken(s))
            .expect("unbounded name supply")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        if self.vertices.is_empty() {
            issues.push(ValidationIssue::Empty);
        }
        for (id, e) in &self.edges {
            if self.vertices.contains(&VertexId(id.0.clone())) {
                issues.push(ValidationIssue::SharedName { name: id.0.clone() });
            }
            for v in [&e.origin, &e.terminus] {
                if !self.vertices.contains(v) {
                    issues.push(ValidationIssue::UnknownVertex {
                        edge: id.0.clone(),
                        vertex: v.0.clone(),
                    });
                }
            }
            if e.origin_label.is_zero() {
                issues.push(ValidationIssue::ZeroLabel { end: id.0.clone() });
            }
            if e.terminus_label.is_zero() {
                issues.push(ValidationIssue::ZeroLabel { end: format!("~{id}") });
            }
        }
        let components = self.component_count();
        if components > 1 {
            issues.push(ValidationIssue::Disconnected { components });
        }
        ValidationReport { issues }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), GraphError> {
        let report = self.validate();
        match report.issues.into_iter().next() {
            None => Ok(()),
            Some(issue) => Err(GraphError::Invalid(issue.to_string())),
        }
    }

    fn adjacency(&self) -> BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>> {
        let mut adj: BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId)>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (id, e) in &self.edges {
            if let Some(list) = adj.get_mut(&e.origin) {
                list.push((id, &e.terminus));
            }
            if let Some(list) = adj.get_mut(&e.terminus) {
                list.push((id, &e.origin));
            }
        }
        for list in adj.values_mut() {
            list.sort();
        }
        adj
    }

    fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for v in &self.vertices {
            if !seen.insert(v) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for (_, w) in &adj[u] {
                    if adj.contains_key(w) && seen.insert(*w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// BFS spanning tree from the smallest vertex, scanning edges by name.
    /// Returns tree edges as ends pointing away from the root, in BFS order.
    pub fn spanning_tree(&self) -> Vec<EdgeEnd> {
        let mut tree = Vec::new();
        let Some(root) = self.vertices.iter().next() else {
            return tree;
        };
        let mut seen = BTreeSet::from([root.clone()]);
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(u) = queue.pop_front() {
            for x in self.ends_at(&u) {
                let w = self.terminus(&x).clone();
                if seen.insert(w.clone()) {
                    tree.push(x);
                    queue.push_back(w);
                }
            }
        }
        tree
    }

    /// Number of geometric edges minus vertices plus one.
    pub fn betti_number(&self) -> Result<usize, GraphError> {
        self.ensure_valid()?;
        Ok(self.edges.len() + 1 - self.vertices.len())
    }

    pub fn classify(&self) -> Result<GraphFlags, GraphError> {
        self.ensure_valid()?;
        let is_minimal = self.vertices.iter().all(|v| {
            let ends = self.ends_at(v);
            ends.len() != 1 || self.label(&ends[0]).abs() >= BigInt::from(2)
        });
        let is_reduced = self.edges.values().all(|e| {
            e.is_loop() || (!e.origin_label.abs().is_one() && !e.terminus_label.abs().is_one())
        });
        let is_proper = self.edges.values().all(|e| {
            e.origin_label.abs() >= BigInt::from(2) && e.terminus_label.abs() >= BigInt::from(2)
        });
        let (slide_free_pairs, strongly_pairs) = self.divisibility_scan();
        let is_elementary = crate::deform::reduce_graph(self)
            .map(|trace| is_elementary_reduced(&trace.result))
            .unwrap_or(false);
        Ok(GraphFlags {
            is_minimal,
            is_reduced,
            is_proper,
            is_slide_free: is_minimal && slide_free_pairs,
            is_strongly_slide_free: is_minimal && strongly_pairs,
            is_elementary,
        })
    }

    /// (no dividing pair other than `x, ~x`; no dividing pair at all)
    fn divisibility_scan(&self) -> (bool, bool) {
        let mut slide_free = true;
        let mut strongly = true;
        for v in &self.vertices {
            let ends = self.ends_at(v);
            for x in &ends {
                for y in &ends {
                    if x == y || !divides(self.label(x), self.label(y)) {
                        continue;
                    }
                    strongly = false;
                    if y.edge != x.edge {
                        slide_free = false;
                    }
                }
            }
        }
        (slide_free, strongly)
    }

    /// Sign-canonical representative of the flip class.
    ///
    /// Tree edges (from [`GbsGraph::spanning_tree`]) are made positive at
    /// both ends, processed root to leaf: an edge flip fixes the parent end,
    /// a vertex flip at the child fixes the child end. Each remaining edge
    /// gets a positive origin label by an edge flip; the sign left at its
    /// terminus is a flip invariant.
    pub fn normalize_signs(&self) -> Result<GbsGraph, GraphError> {
        self.ensure_valid()?;
        let mut g = self.clone();
        let tree = g.spanning_tree();
        let tree_edges: BTreeSet<EdgeId> = tree.iter().map(|x| x.edge.clone()).collect();
        for x in &tree {
            if g.label(x).is_negative() {
                g.flip_edge(&x.edge);
            }
            let back = x.reverse();
            if g.label(&back).is_negative() {
                let child = g.origin(&back).clone();
                g.flip_vertex(&child);
            }
        }
        let others: Vec<EdgeId> =
            g.edges.keys().filter(|e| !tree_edges.contains(*e)).cloned().collect();
        for e in others {
            if g.edges[&e].origin_label.is_negative() {
                g.flip_edge(&e);
            }
        }
        Ok(g)
    }

    /// Replace the generator of the vertex group at `v` by its inverse.
    pub fn flip_vertex(&mut self, v: &VertexId) {
        for x in self.ends_at(v) {
            let l = -self.label(&x).clone();
            self.set_label(&x, l);
        }
    }

    /// Replace the generator of the edge group of `e` by its inverse.
    pub fn flip_edge(&mut self, e: &EdgeId) {
        if let Some(edge) = self.edges.get_mut(e) {
            edge.origin_label = -edge.origin_label.clone();
            edge.terminus_label = -edge.terminus_label.clone();
        }
    }

    /// Sign of `λ(x)·λ(~x)` for each edge: the product along a cycle is
    /// invariant under flips.
    pub fn edge_sign(&self, e: &EdgeId) -> i8 {
        let edge = &self.edges[e];
        if edge.origin_label.is_negative() == edge.terminus_label.is_negative() {
            1
        } else {
            -1
        }
    }

    /// Fundamental cycles of [`GbsGraph::spanning_tree`]: for every non-tree
    /// edge `e`, the closed walk root → ∂0 e, across e, ∂1 e → root.
    pub fn fundamental_cycles(&self) -> Vec<Vec<EdgeEnd>> {
        let tree = self.spanning_tree();
        let tree_edges: BTreeSet<&EdgeId> = tree.iter().map(|x| &x.edge).collect();
        let mut parent: BTreeMap<VertexId, EdgeEnd> = BTreeMap::new();
        for x in &tree {
            parent.insert(self.terminus(x).clone(), x.clone());
        }
        let path_from_root = |v: &VertexId| -> Vec<EdgeEnd> {
            let mut path = Vec::new();
            let mut cur = v.clone();
            while let Some(x) = parent.get(&cur) {
                path.push(x.clone());
                cur = self.origin(x).clone();
            }
            path.reverse();
            path
        };
        let mut cycles = Vec::new();
        for id in self.edges.keys() {
            if tree_edges.contains(id) {
                continue;
            }
            let x = EdgeEnd::forward(id.clone());
            let mut cycle = path_from_root(self.origin(&x));
            cycle.push(x.clone());
            let back: Vec<EdgeEnd> =
                path_from_root(self.terminus(&x)).iter().rev().map(EdgeEnd::reverse).collect();
            cycle.extend(back);
            cycles.push(cycle);
        }
        cycles
    }
}

/// A reduced graph whose Bass-Serre tree is a point or a line: every vertex
/// has `Σ|λ| ≤ 2`. These are the point, the loops `(±1, ±1)` and the
/// segment `(±2, ±2)`.
fn is_elementary_reduced(g: &GbsGraph) -> bool {
    g.vertices.iter().all(|v| {
        let valence: BigInt = g.ends_at(v).iter().map(|x| g.label(x).abs()).sum();
        valence <= BigInt::from(2)
    })
}

/// Free-standing form of [`GbsGraph::validate`].
pub fn validate(g: &GbsGraph) -> ValidationReport {
    g.validate()
}

pub fn classify_graph(g: &GbsGraph) -> Result<GraphFlags, GraphError> {
    g.classify()
}

pub fn normalize_signs(g: &GbsGraph) -> Result<GbsGraph, GraphError> {
    g.normalize_signs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph(a: i64, b: i64) -> GbsGraph {
        GbsGraph::from_edges(&["v"], &[("e", "v", "v", a, b)])
    }

    #[test]
    fn single_vertex_is_valid() {
        let g = GbsGraph::from_edges::<i64>(&["v"], &[]);
        assert!(g.validate().is_valid());
    }

    #[test]
    fn bs16_loop_is_valid() {
        assert!(loop_graph(6, 1).validate().is_valid());
    }

    #[test]
    fn zero_label_reported() {
        let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 0, 3)]);
        let report = g.validate();
        assert_eq!(report.issues, vec![ValidationIssue::ZeroLabel { end: "e".into() }]);
    }

    #[test]
    fn structural_issues_reported() {
        let g = GbsGraph::from_edges(&["u", "w", "x"], &[("e", "u", "z", 2, 3)]);
        let report = g.validate();
        assert!(report
            .issues
            .contains(&ValidationIssue::UnknownVertex { edge: "e".into(), vertex: "z".into() }));
        assert!(report.issues.iter().any(|i| matches!(i, ValidationIssue::Disconnected { .. })));
        assert_eq!(GbsGraph::new().validate().issues, vec![ValidationIssue::Empty]);
    }

    #[test]
    fn loop_2_4_slide_free_not_strongly() {
        let flags = loop_graph(2, 4).classify().unwrap();
        assert!(flags.is_slide_free);
        assert!(!flags.is_strongly_slide_free);
    }

    #[test]
    fn segment_2_3_flags() {
        let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
        let flags = g.classify().unwrap();
        assert!(flags.is_strongly_slide_free && flags.is_proper && flags.is_reduced);
        assert!(!flags.is_elementary);
    }

    #[test]
    fn loop_6_1_reduced_not_proper() {
        let flags = loop_graph(6, 1).classify().unwrap();
        assert!(flags.is_reduced);
        assert!(!flags.is_proper);
    }

    #[test]
    fn elementary_cases() {
        let point = GbsGraph::from_edges::<i64>(&["v"], &[]);
        assert!(point.classify().unwrap().is_elementary);
        assert!(loop_graph(1, -1).classify().unwrap().is_elementary);
        let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 5)]);
        assert!(seg.classify().unwrap().is_elementary);
        assert!(!loop_graph(1, 2).classify().unwrap().is_elementary);
        let klein = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, -2)]);
        assert!(klein.classify().unwrap().is_elementary);
        let trefoil = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
        assert!(!trefoil.classify().unwrap().is_elementary);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(loop_graph(-6, -1).normalize_signs().unwrap(), loop_graph(6, 1));
        assert_eq!(loop_graph(6, -1).normalize_signs().unwrap(), loop_graph(6, -1));
        let g = loop_graph(-6, 1).normalize_signs().unwrap();
        assert_eq!(g, loop_graph(6, -1));
        assert_eq!(g.normalize_signs().unwrap(), g);
    }

    #[test]
    fn normalize_makes_tree_positive() {
        let g = GbsGraph::from_edges(
            &["a", "b", "c"],
            &[("e", "a", "b", -2, 3), ("f", "b", "c", -5, -7), ("h", "c", "a", -4, 9)],
        );
        let n = g.normalize_signs().unwrap();
        for x in n.spanning_tree() {
            assert!(n.label(&x).is_positive() && n.label(&x.reverse()).is_positive());
        }
        let cycle_sign = |g: &GbsGraph| -> i8 {
            g.edges().map(|(id, _)| g.edge_sign(id)).product()
        };
        assert_eq!(cycle_sign(&g), cycle_sign(&n));
    }

    #[test]
    fn fundamental_cycles_are_closed() {
        let g = GbsGraph::from_edges(
            &["a", "b"],
            &[("e", "a", "b", 2, 3), ("f", "a", "b", 5, 7), ("l", "b", "b", 2, 4)],
        );
        let cycles = g.fundamental_cycles();
        assert_eq!(cycles.len(), 2);
        for c in cycles {
            let start = g.origin(&c[0]).clone();
            for pair in c.windows(2) {
                assert_eq!(g.terminus(&pair[0]), g.origin(&pair[1]));
            }
            assert_eq!(g.terminus(c.last().unwrap()), &start);
        }
    }
}
