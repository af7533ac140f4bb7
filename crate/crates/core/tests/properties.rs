//! Property tests for graphs, moves, words, invariants, deformations and
//! tree balls.

use std::collections::BTreeMap;

use gbs_deform::bass_serre::expected_ball_size;
use gbs_deform::graph::{EdgeEnd, EdgeId, VertexId};
use gbs_deform::iso::{canonical_code, Isomorphism};
use gbs_deform::io::{parse_graph, serialize_graph};
use gbs_deform::moves::{check_move, collapses, inverse_move, slides, MoveDescriptor};
use gbs_deform::sample::{random_closed_word, random_graph, random_move, GraphShape};
use gbs_deform::words::{apply_pinch, cyclic_reduce, normal_form, pinch_sites, ElementKind, PathWord};
use gbs_deform::{
    apply_move, are_isomorphic, betti_number, britton_reduce, build_ball, classify_graph,
    classify_word, collapse_ball, deformation_path, displacement, enumerate_moves, modular_image,
    normalize_signs, q_of_word, qi_check, reduce_graph, slide_as_expansion_collapse,
    translation_length_oracle, GbsGraph, QiSample, SearchBounds, WordMap,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A connected graph: a tree on `n` vertices plus extra edges.
fn graph_strategy(max_vertices: usize, max_extra: usize, max_label: i64) -> impl Strategy<Value = GbsGraph> {
    let label = (1..=max_label, any::<bool>()).prop_map(|(k, neg)| if neg { -k } else { k });
    (1..=max_vertices).prop_flat_map(move |n| {
        let tree = proptest::collection::vec((0..n.max(1), any::<bool>(), label.clone(), label.clone()), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, label.clone(), label.clone()), 0..=max_extra);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut g = GbsGraph::new();
            for i in 0..n {
                g.add_vertex(format!("v{i}")).unwrap();
            }
            let mut k = 0;
            for (i, (p, flip, a, b)) in tree.into_iter().enumerate() {
                let (child, parent) = (i + 1, p % (i + 1));
                let (x, y) = if flip { (child, parent) } else { (parent, child) };
                g.add_edge(format!("e{k}"), format!("v{x}"), format!("v{y}"), a, b).unwrap();
                k += 1;
            }
            for (x, y, a, b) in extra {
                g.add_edge(format!("e{k}"), format!("v{x}"), format!("v{y}"), a, b).unwrap();
                k += 1;
            }
            g
        })
    })
}

fn graphs() -> impl Strategy<Value = GbsGraph> {
    graph_strategy(3, 2, 12)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bounds() -> SearchBounds {
    SearchBounds { max_modulus: 3, max_subset_size: 2, ..SearchBounds::default() }
}

/// `sign(λ(e)) sign(λ(~e))` multiplied around a cycle.
fn cycle_sign(g: &GbsGraph, cycle: &[EdgeEnd]) -> i8 {
    cycle.iter().map(|x| g.edge_sign(&x.edge)).product()
}

/// Every fundamental cycle of `g` keeps its sign when carried to `h`.
fn preserves_cycle_signs(g: &GbsGraph, h: &GbsGraph, iso: &Isomorphism) -> bool {
    g.fundamental_cycles().iter().all(|c| {
        let image: Vec<EdgeEnd> = c.iter().map(|x| iso.ends[x].clone()).collect();
        cycle_sign(g, c) == cycle_sign(h, &image)
    })
}

/// Random vertex and edge flips followed by a random renaming.
fn scramble(g: &GbsGraph, rng: &mut ChaCha8Rng) -> GbsGraph {
    let mut h = g.clone();
    for v in g.vertices() {
        if rng.gen_bool(0.5) {
            h.flip_vertex(v);
        }
    }
    for (e, _) in g.edges() {
        if rng.gen_bool(0.5) {
            h.flip_edge(e);
        }
    }
    let mut names: Vec<usize> = (0..g.vertex_count()).collect();
    names.shuffle(rng);
    let rename: BTreeMap<&VertexId, String> =
        g.vertices().zip(names).map(|(v, i)| (v, format!("x{i}"))).collect();
    let mut out = GbsGraph::new();
    let mut vs: Vec<&String> = rename.values().collect();
    vs.sort();
    for v in vs {
        out.add_vertex(v.clone()).unwrap();
    }
    let mut edges: Vec<_> = h.edges().collect();
    edges.shuffle(rng);
    for (i, (_, e)) in edges.into_iter().enumerate() {
        let (o, t) = (&rename[&e.origin], &rename[&e.terminus]);
        if rng.gen_bool(0.5) {
            out.add_edge(format!("f{i}"), o.clone(), t.clone(), e.origin_label.clone(), e.terminus_label.clone())
                .unwrap();
        } else {
            out.add_edge(format!("f{i}"), t.clone(), o.clone(), e.terminus_label.clone(), e.origin_label.clone())
                .unwrap();
        }
    }
    out
}

fn word_at(g: &GbsGraph, seed: u64) -> PathWord {
    random_closed_word(&mut rng(seed), g, 6, 5)
}

/// Two closed words at the same base vertex.
fn word_pair(g: &GbsGraph, seed: u64) -> (PathWord, PathWord) {
    let mut r = rng(seed);
    let a = random_closed_word(&mut r, g, 5, 4);
    loop {
        let b = random_closed_word(&mut r, g, 5, 4);
        if b.base() == a.base() {
            return (a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn flag_implications(g in graphs()) {
        let f = classify_graph(&g).unwrap();
        prop_assert!(!f.is_reduced || f.is_minimal);
        prop_assert!(!f.is_proper || f.is_reduced);
        prop_assert!(!f.is_strongly_slide_free || f.is_slide_free);
        prop_assert!(!f.is_strongly_slide_free || f.is_proper);
    }

    #[test]
    fn normalize_is_idempotent_and_isomorphic(g in graphs()) {
        let n = normalize_signs(&g).unwrap();
        prop_assert_eq!(normalize_signs(&n).unwrap(), n.clone());
        let iso = are_isomorphic(&g, &n).expect("normal form is isomorphic");
        prop_assert!(iso.verify(&g, &n));
        prop_assert!(preserves_cycle_signs(&g, &n, &iso));
    }

    #[test]
    fn isomorphism_is_an_equivalence(g in graphs(), seed in any::<u64>()) {
        let mut r = rng(seed);
        prop_assert!(are_isomorphic(&g, &g).is_some());
        let (h, k) = (scramble(&g, &mut r), scramble(&g, &mut r));
        let gh = are_isomorphic(&g, &h).expect("scrambled copy");
        prop_assert!(gh.verify(&g, &h));
        prop_assert!(are_isomorphic(&h, &g).is_some());
        prop_assert!(are_isomorphic(&h, &k).is_some());
        prop_assert!(gh.inverse().verify(&h, &g));
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        prop_assert_eq!(canonical_code(&h), canonical_code(&k));
        prop_assert!(preserves_cycle_signs(&g, &h, &gh));
    }

    #[test]
    fn canonical_code_agrees_with_isomorphism_search(a in graph_strategy(2, 2, 4), b in graph_strategy(2, 2, 4)) {
        prop_assert_eq!(are_isomorphic(&a, &b).is_some(), canonical_code(&a) == canonical_code(&b));
    }

    #[test]
    fn graph_text_round_trips(g in graphs()) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn moves_give_valid_graphs_and_preserve_invariants(g in graphs(), seed in any::<u64>()) {
        let moves = enumerate_moves(&g, &bounds()).unwrap();
        let (betti, image) = (betti_number(&g).unwrap(), modular_image(&g).unwrap());
        let w = word_at(&g, seed);
        let (kind, q) = (classify_word(&g, &w).unwrap().kind, q_of_word(&g, &w).unwrap());
        for m in &moves {
            let (h, map) = apply_move(&g, m).unwrap();
            prop_assert!(h.is_valid(), "{} gave an invalid graph", m);
            prop_assert_eq!(betti_number(&h).unwrap(), betti);
            prop_assert_eq!(&modular_image(&h).unwrap(), &image);
            let image_word = map.map(&w);
            prop_assert_eq!(classify_word(&h, &image_word).unwrap().kind, kind, "{}", m);
            prop_assert_eq!(&q_of_word(&h, &image_word).unwrap(), &q, "{}", m);
        }
    }

    #[test]
    fn inverse_moves_round_trip(g in graphs(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let Some((m, h)) = random_move(&mut r, &g, &bounds(), i64::MAX) else { return Ok(()) };
        let inv = inverse_move(&g, &m).unwrap();
        let (back, back_map) = apply_move(&h, &inv).unwrap();
        let iso = are_isomorphic(&back, &g).expect("inverse returns an isomorphic graph");
        let (_, forward) = apply_move(&g, &m).unwrap();
        let round = forward.then(back_map).then(WordMap::from_isomorphism(&back, &g, &iso));
        for _ in 0..4 {
            let w = random_closed_word(&mut r, &g, 5, 4);
            let image = round.map(&w);
            // an automorphism may move the base, so compare invariants there
            prop_assert_eq!(classify_word(&g, &image).unwrap().kind, classify_word(&g, &w).unwrap().kind);
            prop_assert_eq!(q_of_word(&g, &image).unwrap(), q_of_word(&g, &w).unwrap());
            if image.base() == w.base() && iso.vertex_flips.is_empty() && back == g {
                prop_assert_eq!(britton_reduce(&g, &image).unwrap(), britton_reduce(&g, &w).unwrap());
            }
        }
    }

    #[test]
    fn expansion_then_collapse_is_identity(g in graphs(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let vs: Vec<VertexId> = g.vertices().cloned().collect();
        let v = vs.choose(&mut r).unwrap().clone();
        let ends: Vec<EdgeEnd> = g.ends_at(&v).into_iter().filter(|_| r.gen_bool(0.4)).collect();
        let m = BigInt::from(r.gen_range(1..=4));
        let ok = ends.iter().all(|x| (g.label(x) % &m).is_zero());
        prop_assume!(ok);
        let exp = MoveDescriptor::expansion(&g, v, m, ends);
        let (h, map_in) = apply_move(&g, &exp).unwrap();
        let MoveDescriptor::Expansion { new_edge, .. } = &exp else { unreachable!() };
        let col = MoveDescriptor::Collapse { end: EdgeEnd::backward(new_edge.clone()) };
        let (back, map_out) = apply_move(&h, &col).unwrap();
        prop_assert_eq!(&back, &g);
        let round = map_in.then(map_out);
        for _ in 0..4 {
            let w = random_closed_word(&mut r, &g, 5, 4);
            prop_assert_eq!(britton_reduce(&g, &round.map(&w)).unwrap(), britton_reduce(&g, &w).unwrap());
        }
    }

    #[test]
    fn slides_factor_through_expansion_and_collapse(g in graph_strategy(2, 3, 12)) {
        for s in slides(&g) {
            let (slid, _) = apply_move(&g, &s).unwrap();
            let (exp, col) = slide_as_expansion_collapse(&g, &s).unwrap();
            let (mid, _) = apply_move(&g, &exp).unwrap();
            let (end, _) = apply_move(&mid, &col).unwrap();
            prop_assert!(are_isomorphic(&slid, &end).is_some(), "{}", s);
        }
    }

    #[test]
    fn subdivision_adds_one_per_crossing(g in graphs(), seed in any::<u64>()) {
        prop_assume!(g.edge_count() > 0);
        let mut r = rng(seed);
        let edges: Vec<EdgeId> = g.edges().map(|(e, _)| e.clone()).collect();
        let e = edges.choose(&mut r).unwrap().clone();
        let m = MoveDescriptor::subdivision(&g, e.clone());
        let (h, map) = apply_move(&g, &m).unwrap();
        for _ in 0..4 {
            let w = random_closed_word(&mut r, &g, 6, 5);
            let before = classify_word(&g, &w).unwrap();
            let after = classify_word(&h, &map.map(&w)).unwrap();
            let crossings = before.witness.edges().iter().filter(|x| x.edge == e).count();
            prop_assert_eq!(after.translation_length, before.translation_length + crossings);
        }
    }

    #[test]
    fn pinch_order_does_not_matter(g in graphs(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_closed_word(&mut r, &g, 8, 5);
        let mut cur = w.clone();
        loop {
            let sites = pinch_sites(&g, &cur);
            let Some(&i) = sites.choose(&mut r) else { break };
            cur = apply_pinch(&g, &cur, i).unwrap();
        }
        let reduced = britton_reduce(&g, &w).unwrap();
        prop_assert_eq!(cur.len(), reduced.len());
        prop_assert_eq!(normal_form(&g, &cur), reduced);
    }

    #[test]
    fn odd_displacement_is_hyperbolic(g in graphs(), seed in any::<u64>()) {
        let w = word_at(&g, seed);
        if displacement(&g, &w).unwrap() % 2 == 1 {
            prop_assert_eq!(classify_word(&g, &w).unwrap().kind, ElementKind::Hyperbolic);
        }
    }

    #[test]
    fn segments_are_hyperbolic_of_length_two(g in graphs(), seed in any::<u64>(), j in -50i64..50, k in -50i64..50) {
        prop_assume!(g.edge_count() > 0);
        let ends = g.ends();
        let x = ends[(seed % ends.len() as u64) as usize].clone();
        let (j, k) = (BigInt::from(j), BigInt::from(k));
        prop_assume!(!(&j % g.label(&x)).is_zero() && !(&k % g.label(&x.reverse())).is_zero());
        let w = PathWord::from_parts(g.origin(&x).clone(), vec![j, k, BigInt::zero()], vec![x.clone(), x.reverse()]).unwrap();
        let c = classify_word(&g, &w).unwrap();
        prop_assert_eq!((c.kind, c.translation_length), (ElementKind::Hyperbolic, 2));
    }

    #[test]
    fn oracle_agrees_with_classification(g in graphs(), seed in any::<u64>()) {
        let w = word_at(&g, seed);
        let c = classify_word(&g, &w).unwrap();
        if let Ok(oracle) = translation_length_oracle(&g, &w, 6) {
            prop_assert_eq!(oracle, c.translation_length);
        }
        prop_assert_eq!(c.kind == ElementKind::Hyperbolic, c.translation_length > 0);
        prop_assert_eq!(cyclic_reduce(&g, &c.witness).len(), c.witness.len());
    }

    #[test]
    fn displacement_triangle_inequality(g in graphs(), seed in any::<u64>()) {
        let (a, b) = word_pair(&g, seed);
        let ab = a.concat(&g, &b).unwrap();
        prop_assert!(displacement(&g, &ab).unwrap() <= displacement(&g, &a).unwrap() + displacement(&g, &b).unwrap());
    }

    #[test]
    fn powers_scale_translation_length(g in graphs(), seed in any::<u64>()) {
        let w = word_at(&g, seed);
        let l = classify_word(&g, &w).unwrap().translation_length;
        for n in 1..=4 {
            let wn = w.power(&g, n).unwrap();
            prop_assert_eq!(classify_word(&g, &wn).unwrap().translation_length, n * l);
        }
    }

    #[test]
    fn q_is_multiplicative_and_in_image(g in graphs(), seed in any::<u64>()) {
        let (a, b) = word_pair(&g, seed);
        let ab = a.concat(&g, &b).unwrap();
        let (qa, qb) = (q_of_word(&g, &a).unwrap(), q_of_word(&g, &b).unwrap());
        prop_assert_eq!(q_of_word(&g, &ab).unwrap(), &qa * &qb);
        let image = modular_image(&g).unwrap();
        prop_assert!(image.contains(&qa) && image.contains(&qb));
        prop_assert_eq!(q_of_word(&g, &a.inverse(&g)).unwrap(), qa.recip());
    }

    #[test]
    fn reductions_are_reduced(g in graph_strategy(4, 2, 12)) {
        let trace = reduce_graph(&g).unwrap();
        prop_assert!(classify_graph(&trace.result).unwrap().is_reduced);
        prop_assert!(collapses(&trace.result).is_empty());
        let mut cur = g.clone();
        for m in &trace.moves {
            check_move(&cur, m).unwrap();
            cur = apply_move(&cur, m).unwrap().0;
        }
        prop_assert_eq!(&cur, &trace.result);
    }

    #[test]
    fn screening_is_sound(a in graph_strategy(2, 1, 6), b in graph_strategy(2, 1, 6)) {
        let differ = betti_number(&a).unwrap() != betti_number(&b).unwrap()
            || modular_image(&a).unwrap() != modular_image(&b).unwrap();
        let bounds = SearchBounds { max_depth: 2, max_modulus: 2, max_subset_size: 1, max_states: 5_000, ..SearchBounds::default() };
        if let Ok(Some(path)) = deformation_path(&a, &b, &bounds) {
            prop_assert!(!differ, "path between graphs with different invariants");
            prop_assert!(path.verify());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn balls_have_expected_valences_and_size(g in graph_strategy(3, 2, 4), r in 0usize..=5) {
        let v = g.vertices().next().unwrap().clone();
        let expected = expected_ball_size(&g, &v, r).unwrap();
        prop_assume!(expected <= 200_000);
        let ball = build_ball(&g, &v, r).unwrap();
        prop_assert_eq!(ball.len() as u128, expected);
        prop_assert!(ball.valence_violations().is_empty());
    }

    #[test]
    fn collapses_are_quasi_isometries(g in graph_strategy(3, 1, 4), r in 1usize..=6) {
        for m in collapses(&g) {
            let MoveDescriptor::Collapse { end } = &m else { unreachable!() };
            let root = g.terminus(end).clone();
            prop_assume!(expected_ball_size(&g, &root, r).unwrap() <= 100_000);
            let ball = build_ball(&g, &root, r).unwrap();
            let c = collapse_ball(&g, end, &ball).unwrap();
            let report = qi_check(&ball, &c.map, QiSample::AllPairs).unwrap();
            prop_assert!(report.passed(), "{} at radius {}: {:?}", m, r, report.violations);
            prop_assert!(report.max_component_diameter <= 2);
        }
    }

    #[test]
    fn deformation_paths_certify(g in graph_strategy(2, 1, 6), seed in any::<u64>()) {
        let mut r = rng(seed);
        let Some((_, h)) = random_move(&mut r, &g, &bounds(), 40) else { return Ok(()) };
        let bounds = SearchBounds { max_depth: 2, max_modulus: 3, max_subset_size: 2, ..SearchBounds::default() };
        if let Some(path) = deformation_path(&g, &h, &bounds).unwrap() {
            prop_assert!(path.verify());
            let mut cur = g.clone();
            for m in &path.moves {
                cur = apply_move(&cur, m).unwrap().0;
            }
            prop_assert!(are_isomorphic(&cur, &h).is_some());
            let w = random_closed_word(&mut r, &g, 5, 4);
            let image = path.word_map.map(&w);
            prop_assert_eq!(classify_word(&h, &image).unwrap().kind, classify_word(&g, &w).unwrap().kind);
            prop_assert_eq!(q_of_word(&h, &image).unwrap().abs(), q_of_word(&g, &w).unwrap());
        }
    }
}

#[test]
fn random_graph_sampler_round_trips() {
    let mut r = rng(11);
    for _ in 0..100 {
        let g = random_graph(&mut r, GraphShape::default());
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }
}
