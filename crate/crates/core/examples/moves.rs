// Collapse, expansion, slide and subdivision as label rewrites, and how
// each move carries words along.
//
// Run with `cargo run --example moves`.

use std::error::Error;

use gbs_deform::moves::{inverse_move, parse_move};
use gbs_deform::{
    apply_move, classify_word, enumerate_moves, parse_word, q_of_word, serialize_graph,
    slide_as_expansion_collapse, GbsGraph, SearchBounds,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2), ("f", "w", "w", 3, 5)]);

    let bounds = SearchBounds { max_modulus: 2, max_subset_size: 1, ..SearchBounds::default() };
    let moves = enumerate_moves(&g, &bounds)?;
    println!("{} moves with modulus <= 2, for example:", moves.len());
    for m in moves.iter().take(5) {
        println!("  {m}");
    }

    // Collapsing e merges u into w; a word through u is rewritten.
    let collapse = parse_move(&g, "collapse(e)")?;
    let (h, map) = apply_move(&g, &collapse)?;
    println!("after {collapse}:\n{}", serialize_graph(&h));
    let w = parse_word(&g, "u^1 e f ~e")?;
    let image = map.map(&w);
    println!("{} -> {}", w.display(&g), image.display(&h));
    assert_eq!(q_of_word(&g, &w)?, q_of_word(&h, &image)?);
    assert_eq!(classify_word(&g, &w)?.kind, classify_word(&h, &image)?.kind);

    // The inverse of a collapse is an expansion.
    let back = inverse_move(&g, &collapse)?;
    println!("inverse: {back}");

    // A slide is an expansion followed by a collapse.
    let two = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", 8, 3)]);
    let slide = parse_move(&two, "slide(f,e)")?;
    let (slid, _) = apply_move(&two, &slide)?;
    let (expand, collapse) = slide_as_expansion_collapse(&two, &slide)?;
    let (mid, _) = apply_move(&two, &expand)?;
    let (end, _) = apply_move(&mid, &collapse)?;
    println!("{slide} = {expand} then {collapse}");
    println!("{}", serialize_graph(&slid));
    assert!(gbs_deform::are_isomorphic(&slid, &end).is_some());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
