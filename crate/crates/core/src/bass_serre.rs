//! Finite balls in the Bass-Serre tree, the collapse map on them, and a
//! check of the quasi-isometry bounds `(d - 2)/3 <= d' <= d`.
//!
//! A lift of a quotient vertex `u` has one neighbor for every end `x` at
//! `u` and every coset of the edge group in the vertex group, that is
//! `|λ(x)|` neighbors across `x`. Coset indices are kept as plain integers
//! `0..|λ(x)|`; the coset containing the parent is index 0.
//!
//! Balls are stored in breadth-first order as flat arrays, so parents come
//! before children and every depth is a contiguous range.
//!
//! # Distances in the image
//!
//! Collapsing an edge `e` of the quotient contracts every lift of `e`. Each
//! component of the contracted set is a connected subtree, so the image of
//! the ball is again a tree and the image of the path from `x` to `y` is
//! the image geodesic. Hence `d'(x, y)` is the number of uncontracted edges
//! on the path, and distances inside the image of the ball are exact.
//! The lower bound is equivalent to `c - 2n <= 2` for every path with `c`
//! contracted and `n` uncontracted edges: a maximum-weight path problem,
//! solved exactly over all pairs by one pass over the tree.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::BallError;
use crate::graph::{EdgeEnd, GbsGraph, VertexId};
use crate::moves::{apply_move, check_move, MoveDescriptor};

const NONE: u32 = u32::MAX;

/// Default cap on the number of ball vertices.
pub const DEFAULT_BALL_BUDGET: u64 = 40_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeBall {
    graph: GbsGraph,
    vertex_names: Vec<VertexId>,
    end_list: Vec<EdgeEnd>,
    end_origin: Vec<u32>,
    end_terminus: Vec<u32>,
    end_reverse: Vec<u32>,
    root_vertex: u32,
    radius: usize,
    parent: Vec<u32>,
    /// End crossed from the parent, as an index into `end_list`.
    via: Vec<u32>,
    coset: Vec<u32>,
    /// `level_start[k]..level_start[k + 1]` are the vertices at depth `k`.
    level_start: Vec<usize>,
}

fn abs_label(g: &GbsGraph, x: &EdgeEnd) -> u64 {
    g.label(x).abs().to_u64().unwrap_or(u64::MAX)
}

/// Number of vertices of the radius-`r` ball at a lift of `v`, from the
/// recursion on valences (independent of [`build_ball`]).
pub fn expected_ball_size(g: &GbsGraph, v: &VertexId, r: usize) -> Result<u128, BallError> {
    g.ensure_valid()?;
    if !g.has_vertex(v) {
        return Err(BallError::UnknownVertex(v.to_string()));
    }
    if r == 0 {
        return Ok(1);
    }
    let ends = g.ends();
    // hang[x]: vertices beyond a tree-edge crossing x, k levels deep
    let mut hang: Vec<u128> = vec![1; ends.len()];
    for _ in 1..r {
        hang = ends
            .iter()
            .map(|x| {
                let back = x.reverse();
                ends.iter().zip(&hang).filter(|(y, _)| g.origin(y) == g.terminus(x)).fold(
                    1u128,
                    |acc, (y, h)| {
                        let count = u128::from(abs_label(g, y)) - u128::from(*y == back);
                        acc.saturating_add(count.saturating_mul(*h))
                    },
                )
            })
            .collect();
    }
    Ok(ends
        .iter()
        .zip(&hang)
        .filter(|(y, _)| g.origin(y) == v)
        .fold(1u128, |acc, (y, h)| acc.saturating_add(u128::from(abs_label(g, y)).saturating_mul(*h))))
}

pub fn build_ball(g: &GbsGraph, v: &VertexId, r: usize) -> Result<TreeBall, BallError> {
    build_ball_with_budget(g, v, r, DEFAULT_BALL_BUDGET)
}

/// Breadth-first construction; children are generated in the order of the
/// sorted ends at the vertex, then by coset.
pub fn build_ball_with_budget(
    g: &GbsGraph,
    v: &VertexId,
    r: usize,
    budget: u64,
) -> Result<TreeBall, BallError> {
    let expected = expected_ball_size(g, v, r)?;
    if expected > u128::from(budget) || expected >= u128::from(NONE) {
        return Err(BallError::BudgetExceeded(budget.min(u64::from(NONE)) as usize));
    }
    let vertex_names: Vec<VertexId> = g.vertices().cloned().collect();
    let index = |w: &VertexId| vertex_names.binary_search(w).expect("vertex") as u32;
    let end_list = g.ends();
    let end_index = |x: &EdgeEnd| end_list.binary_search(x).expect("end") as u32;
    let end_origin: Vec<u32> = end_list.iter().map(|x| index(g.origin(x))).collect();
    let end_terminus: Vec<u32> = end_list.iter().map(|x| index(g.terminus(x))).collect();
    let end_reverse: Vec<u32> = end_list.iter().map(|x| end_index(&x.reverse())).collect();
    let ends_at: Vec<Vec<(u32, u32)>> = vertex_names
        .iter()
        .map(|w| {
            g.ends_at(w)
                .iter()
                .map(|x| (end_index(x), abs_label(g, x) as u32))
                .collect()
        })
        .collect();

    let n = expected as usize;
    let mut parent = Vec::with_capacity(n);
    let mut via = Vec::with_capacity(n);
    let mut coset = Vec::with_capacity(n);
    let mut level_start = vec![0, 1];
    let root_vertex = index(v);
    parent.push(NONE);
    via.push(NONE);
    coset.push(0);
    let vertex_of = |via: &[u32], i: usize| -> u32 {
        if via[i] == NONE {
            root_vertex
        } else {
            end_terminus[via[i] as usize]
        }
    };
    for depth in 0..r {
        let (lo, hi) = (level_start[depth], level_start[depth + 1]);
        for i in lo..hi {
            let u = vertex_of(&via, i);
            let back = if via[i] == NONE { NONE } else { end_reverse[via[i] as usize] };
            for &(x, count) in &ends_at[u as usize] {
                let first = u32::from(x == back);
                for c in first..count {
                    parent.push(i as u32);
                    via.push(x);
                    coset.push(c);
                }
            }
        }
        level_start.push(parent.len());
    }
    debug_assert_eq!(parent.len(), n);
    Ok(TreeBall {
        graph: g.clone(),
        vertex_names,
        end_list,
        end_origin,
        end_terminus,
        end_reverse,
        root_vertex,
        radius: r,
        parent,
        via,
        coset,
        level_start,
    })
}

impl TreeBall {
    pub fn graph(&self) -> &GbsGraph {
        &self.graph
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root_vertex(&self) -> &VertexId {
        &self.vertex_names[self.root_vertex as usize]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        (self.parent[i] != NONE).then(|| self.parent[i] as usize)
    }

    pub fn depth(&self, i: usize) -> usize {
        self.level_start.partition_point(|&s| s <= i) - 1
    }

    /// Vertices at depth `k`.
    pub fn level(&self, k: usize) -> std::ops::Range<usize> {
        self.level_start[k]..self.level_start[k + 1]
    }

    fn vertex_index(&self, i: usize) -> u32 {
        match self.via[i] {
            NONE => self.root_vertex,
            x => self.end_terminus[x as usize],
        }
    }

    /// The quotient vertex lifted by `i`.
    pub fn quotient_vertex(&self, i: usize) -> &VertexId {
        &self.vertex_names[self.vertex_index(i) as usize]
    }

    /// The end crossed from the parent of `i` to `i`, and its coset index.
    pub fn parent_edge(&self, i: usize) -> Option<(&EdgeEnd, u32)> {
        match self.via[i] {
            NONE => None,
            x => Some((&self.end_list[x as usize], self.coset[i])),
        }
    }

    /// Number of children of every vertex.
    pub fn child_counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.len()];
        for &p in &self.parent[1..] {
            counts[p as usize] += 1;
        }
        counts
    }

    /// Interior vertices whose valence differs from `Σ |λ|` at their
    /// quotient vertex, with the observed valence.
    pub fn valence_violations(&self) -> Vec<(usize, u64)> {
        let expected: Vec<u64> = (0..self.vertex_names.len() as u32)
            .map(|u| {
                self.end_origin
                    .iter()
                    .zip(&self.end_list)
                    .filter(|(o, _)| **o == u)
                    .map(|(_, x)| abs_label(&self.graph, x))
                    .sum()
            })
            .collect();
        let counts = self.child_counts();
        let interior_end = self.level_start[self.radius];
        (0..interior_end)
            .filter_map(|i| {
                let valence = u64::from(counts[i]) + u64::from(i != 0);
                (valence != expected[self.vertex_index(i) as usize]).then_some((i, valence))
            })
            .collect()
    }

    /// Tree distance, by walking up from the deeper vertex.
    pub fn distance(&self, mut a: usize, mut b: usize) -> usize {
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        let mut d = 0;
        while da > db {
            a = self.parent[a] as usize;
            da -= 1;
            d += 1;
        }
        while db > da {
            b = self.parent[b] as usize;
            db -= 1;
            d += 1;
        }
        while a != b {
            a = self.parent[a] as usize;
            b = self.parent[b] as usize;
            d += 2;
        }
        d
    }
}

/// A map from ball vertices onto a rooted tree given by parent pointers.
/// Image vertex 0 is the root and `image_parent[c] < c` for `c > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub image: Vec<u32>,
    pub image_parent: Vec<u32>,
}

impl VertexMap {
    pub fn image_len(&self) -> usize {
        self.image_parent.len()
    }

    fn image_depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.image_parent.len()];
        for c in 1..depth.len() {
            depth[c] = depth[self.image_parent[c] as usize] + 1;
        }
        depth
    }

    fn image_distance(&self, depth: &[u32], mut a: u32, mut b: u32) -> usize {
        let mut d = 0;
        while depth[a as usize] > depth[b as usize] {
            a = self.image_parent[a as usize];
            d += 1;
        }
        while depth[b as usize] > depth[a as usize] {
            b = self.image_parent[b as usize];
            d += 1;
        }
        while a != b {
            a = self.image_parent[a as usize];
            b = self.image_parent[b as usize];
            d += 2;
        }
        d
    }
}

/// The image of a ball under the collapse of one quotient edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedBall {
    /// The collapsed quotient graph.
    pub graph: GbsGraph,
    pub map: VertexMap,
    /// Quotient vertex (of `graph`) of every image vertex.
    pub image_vertex: Vec<VertexId>,
    /// Whether the tree-edge from each ball vertex to its parent is a lift
    /// of the collapsed edge.
    pub contracted: Vec<bool>,
}

/// Contracts every lift of the collapsed edge in `ball`.
pub fn collapse_ball(
    g: &GbsGraph,
    collapse: &EdgeEnd,
    ball: &TreeBall,
) -> Result<CollapsedBall, BallError> {
    let m = MoveDescriptor::Collapse { end: collapse.clone() };
    check_move(g, &m).map_err(|e| BallError::NotCollapsible(format!("{collapse}: {e}")))?;
    if ball.graph != *g {
        return Err(BallError::MapMismatch("the ball was built on a different graph".into()));
    }
    let (h, _) = apply_move(g, &m).map_err(|e| BallError::NotCollapsible(e.to_string()))?;
    let merged = g.origin(collapse).clone();
    let into = g.terminus(collapse).clone();
    let n = ball.len();
    let mut contracted = vec![false; n];
    let mut image = vec![0u32; n];
    let mut image_parent = vec![NONE];
    let mut image_vertex = vec![VertexId::new("")];
    let name_in_h = |v: &VertexId| if *v == merged { into.clone() } else { v.clone() };
    image_vertex[0] = name_in_h(ball.quotient_vertex(0));
    for i in 1..n {
        let p = ball.parent[i] as usize;
        let x = &ball.end_list[ball.via[i] as usize];
        if x.edge == collapse.edge {
            contracted[i] = true;
            image[i] = image[p];
        } else {
            image[i] = image_parent.len() as u32;
            image_parent.push(image[p]);
            image_vertex.push(name_in_h(ball.quotient_vertex(i)));
        }
    }
    Ok(CollapsedBall { graph: h, map: VertexMap { image, image_parent }, image_vertex, contracted })
}

/// The largest radius `r'` such that the image of a radius-`r` ball
/// contains the full radius-`r'` ball of the collapsed tree. Contracted
/// components have diameter at most 2, so an image vertex at depth `k`
/// comes from ball vertices at depth at most `3k + 2`, whose neighbors lie
/// at depth at most `3k + 3`.
pub fn shared_radius(r: usize) -> usize {
    r / 3
}

/// Whether the image tree, cut at depth `r'`, is isomorphic as a rooted
/// tree with quotient-vertex labels to `other` cut at depth `r'`.
pub fn image_matches_ball(collapsed: &CollapsedBall, other: &TreeBall, r_prime: usize) -> bool {
    let image_depths = collapsed.map.image_depths();
    let mut interner: HashMap<(String, Vec<u32>), u32> = HashMap::new();
    let a = rooted_code(
        &collapsed.map.image_parent,
        |c| collapsed.image_vertex[c].to_string(),
        |c| image_depths[c] as usize,
        r_prime,
        &mut interner,
    );
    let b = rooted_code(
        &other.parent,
        |i| other.quotient_vertex(i).to_string(),
        |i| other.depth(i),
        r_prime,
        &mut interner,
    );
    a == b
}

/// AHU code of the root, over vertices of depth at most `limit`. Parents
/// must precede children.
fn rooted_code(
    parent: &[u32],
    label: impl Fn(usize) -> String,
    depth: impl Fn(usize) -> usize,
    limit: usize,
    interner: &mut HashMap<(String, Vec<u32>), u32>,
) -> u32 {
    let keep: Vec<usize> = (0..parent.len()).filter(|&i| depth(i) <= limit).collect();
    let mut children: HashMap<usize, Vec<u32>> = HashMap::new();
    let mut code = HashMap::new();
    for &i in keep.iter().rev() {
        let mut kids = children.remove(&i).unwrap_or_default();
        kids.sort_unstable();
        let next = interner.len() as u32;
        let c = *interner.entry((label(i), kids)).or_insert(next);
        code.insert(i, c);
        if parent[i] != NONE {
            children.entry(parent[i] as usize).or_default().push(c);
        }
    }
    code[&0]
}

/// Which pairs to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QiSample {
    AllPairs,
    Random { pairs: usize, seed: u64 },
}

/// Balls up to this size may be checked pair by pair when the map is not a
/// contraction.
pub const PAIRWISE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QiViolation {
    pub x: usize,
    pub y: usize,
    pub d: usize,
    pub d_image: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QiReport {
    /// `tree_dp` (exact over all pairs) or `pairwise`.
    pub method: &'static str,
    pub vertices: usize,
    pub image_vertices: usize,
    /// Unordered pairs of distinct vertices covered by the check.
    pub pairs: u128,
    /// Largest `d - 3 d'` over the checked pairs; the lower bound holds
    /// iff this is at most 2.
    pub max_excess: i64,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    /// Violations found; the tree DP reports one extremal witness.
    pub violations: Vec<QiViolation>,
    pub violation_count: u64,
    pub contracted_components: usize,
    pub max_component_diameter: usize,
}

impl QiReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.max_component_diameter <= 2
    }
}

fn check_map_shape(ball: &TreeBall, map: &VertexMap) -> Result<(), BallError> {
    if map.image.len() != ball.len() {
        return Err(BallError::MapMismatch(format!(
            "map has {} entries for {} ball vertices",
            map.image.len(),
            ball.len()
        )));
    }
    if map.image_parent.first() != Some(&NONE)
        || map.image_parent.iter().enumerate().skip(1).any(|(c, &p)| p as usize >= c)
    {
        return Err(BallError::MapMismatch("image is not a rooted tree in parent order".into()));
    }
    if map.image.iter().any(|&c| c as usize >= map.image_parent.len()) {
        return Err(BallError::MapMismatch("image index out of range".into()));
    }
    Ok(())
}

/// Whether `map` contracts a set of ball edges and is a bijection on the
/// remaining structure; then `d'` counts uncontracted edges.
#[allow(clippy::needless_range_loop)]
fn contracted_edges(ball: &TreeBall, map: &VertexMap) -> Option<Vec<bool>> {
    let n = ball.len();
    let mut contracted = vec![false; n];
    let mut count = 0usize;
    for i in 1..n {
        let (a, b) = (map.image[i], map.image[ball.parent[i] as usize]);
        if a == b {
            contracted[i] = true;
            count += 1;
        } else if map.image_parent[a as usize] != b && map.image_parent[b as usize] != a {
            return None;
        }
    }
    let mut hit = vec![false; map.image_len()];
    map.image.iter().for_each(|&c| hit[c as usize] = true);
    (hit.iter().all(|&h| h) && n - count == map.image_len()).then_some(contracted)
}

pub fn qi_check(ball: &TreeBall, map: &VertexMap, sample: QiSample) -> Result<QiReport, BallError> {
    check_map_shape(ball, map)?;
    let contracted = contracted_edges(ball, map);
    let (components, diameter) = match &contracted {
        Some(c) => component_stats(ball, c),
        None => component_stats_pairwise(ball, map),
    };
    let mut report = match (sample, &contracted) {
        (QiSample::AllPairs, Some(c)) => qi_tree_dp(ball, map, c),
        (QiSample::AllPairs, None) if ball.len() <= PAIRWISE_LIMIT => {
            let n = ball.len();
            qi_pairwise(ball, map, (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))))
        }
        (QiSample::AllPairs, None) => {
            return Err(BallError::MapMismatch(
                "map is not an edge contraction and the ball is too large for a pairwise check"
                    .into(),
            ))
        }
        (QiSample::Random { pairs, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = ball.len();
            let sampled: Vec<(usize, usize)> =
                (0..pairs).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            qi_pairwise(ball, map, sampled.into_iter().filter(|(x, y)| x != y))
        }
    };
    report.contracted_components = components;
    report.max_component_diameter = diameter;
    Ok(report)
}

/// Exact all-pairs check for contractions. Edge weights are `+1` for a
/// contracted edge and `-2` otherwise, so a path has weight `d - 3d'`.
fn qi_tree_dp(ball: &TreeBall, map: &VertexMap, contracted: &[bool]) -> QiReport {
    let n = ball.len();
    // best downward path weight from i, and where it ends
    let mut down = vec![0i64; n];
    let mut down_end: Vec<u32> = (0..n as u32).collect();
    let mut best = (0i64, 0usize, 0usize);
    // first and second best child contributions per vertex
    let mut top: Vec<[(i64, u32); 2]> = vec![[(0, NONE), (0, NONE)]; n];
    for i in (0..n).rev() {
        let [a, b] = top[i];
        down[i] = a.0.max(0);
        down_end[i] = if a.0 > 0 { a.1 } else { i as u32 };
        let through = a.0.max(0) + b.0.max(0);
        if through > best.0 {
            let ea = if a.0 > 0 { a.1 as usize } else { i };
            let eb = if b.0 > 0 { b.1 as usize } else { i };
            best = (through, ea, eb);
        }
        if i > 0 {
            let w = if contracted[i] { 1 } else { -2 };
            let contribution = (w + down[i], down_end[i]);
            let p = ball.parent[i] as usize;
            let slot = &mut top[p];
            if contribution.0 > slot[0].0 || slot[0].1 == NONE {
                slot[1] = slot[0];
                slot[0] = contribution;
            } else if contribution.0 > slot[1].0 || slot[1].1 == NONE {
                slot[1] = contribution;
            }
        }
    }
    let any_contracted = contracted.iter().any(|&c| c);
    let any_kept = contracted.iter().skip(1).any(|&c| !c);
    let mut violations = Vec::new();
    if best.0 > 2 {
        let depths = map.image_depths();
        let (x, y) = (best.1, best.2);
        violations.push(QiViolation {
            x,
            y,
            d: ball.distance(x, y),
            d_image: map.image_distance(&depths, map.image[x], map.image[y]),
        });
    }
    let nn = n as u128;
    QiReport {
        method: "tree_dp",
        vertices: n,
        image_vertices: map.image_len(),
        pairs: nn * nn.saturating_sub(1) / 2,
        max_excess: best.0,
        min_ratio: (n > 1).then_some(if any_contracted { 0.0 } else { 1.0 }),
        max_ratio: (n > 1).then_some(if any_kept { 1.0 } else { 0.0 }),
        violation_count: violations.len() as u64,
        violations,
        contracted_components: 0,
        max_component_diameter: 0,
    }
}

fn qi_pairwise(
    ball: &TreeBall,
    map: &VertexMap,
    pairs: impl Iterator<Item = (usize, usize)>,
) -> QiReport {
    let depths = map.image_depths();
    let mut report = QiReport {
        method: "pairwise",
        vertices: ball.len(),
        image_vertices: map.image_len(),
        pairs: 0,
        max_excess: 0,
        min_ratio: None,
        max_ratio: None,
        violations: Vec::new(),
        violation_count: 0,
        contracted_components: 0,
        max_component_diameter: 0,
    };
    for (x, y) in pairs {
        report.pairs += 1;
        let d = ball.distance(x, y);
        let d_image = map.image_distance(&depths, map.image[x], map.image[y]);
        report.max_excess = report.max_excess.max(d as i64 - 3 * d_image as i64);
        if d > 0 {
            let ratio = d_image as f64 / d as f64;
            report.min_ratio = Some(report.min_ratio.map_or(ratio, |r| r.min(ratio)));
            report.max_ratio = Some(report.max_ratio.map_or(ratio, |r| r.max(ratio)));
        }
        if d_image > d || d as i64 - 3 * d_image as i64 > 2 {
            report.violation_count += 1;
            if report.violations.len() < 16 {
                report.violations.push(QiViolation { x, y, d, d_image });
            }
        }
    }
    report
}

/// Number of contracted components (fibers of size at least 2) and the
/// largest diameter among them, measured in the ball.
fn component_stats(ball: &TreeBall, contracted: &[bool]) -> (usize, usize) {
    let n = ball.len();
    let mut height = vec![0usize; n];
    let mut second = vec![0usize; n];
    let mut diameter = 0;
    let mut components = 0;
    for i in (0..n).rev() {
        diameter = diameter.max(height[i] + second[i]);
        if i > 0 && contracted[i] {
            let p = ball.parent[i] as usize;
            let h = height[i] + 1;
            if h > height[p] {
                second[p] = height[p];
                height[p] = h;
            } else if h > second[p] {
                second[p] = h;
            }
        } else if height[i] > 0 {
            components += 1;
        }
    }
    (components, diameter)
}

fn component_stats_pairwise(ball: &TreeBall, map: &VertexMap) -> (usize, usize) {
    let mut fibers: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, &c) in map.image.iter().enumerate() {
        fibers.entry(c).or_default().push(i);
    }
    let mut components = 0;
    let mut diameter = 0;
    for members in fibers.values().filter(|m| m.len() > 1) {
        components += 1;
        if members.len() > PAIRWISE_LIMIT {
            diameter = usize::MAX;
            continue;
        }
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                diameter = diameter.max(ball.distance(a, b));
            }
        }
    }
    (components, diameter)
}

/// DOT text for the ball. Nodes are `n<i>` in breadth-first order,
/// labeled with their quotient vertex and depth; edges are labeled with
/// the end crossed from the parent and the coset index.
pub fn export_dot(ball: &TreeBall) -> String {
    let mut out = String::from("graph ball {\n");
    for k in 0..=ball.radius {
        for i in ball.level(k) {
            writeln!(out, "  n{i} [label=\"{} d{k}\"];", ball.quotient_vertex(i))
                .expect("string write");
        }
    }
    for i in 1..ball.len() {
        let (x, c) = ball.parent_edge(i).expect("non-root");
        writeln!(out, "  n{} -- n{i} [label=\"{x}:{c}\"];", ball.parent[i]).expect("string write");
    }
    out.push_str("}\n");
    out
}
