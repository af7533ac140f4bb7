// Tree properties of a GBS graph read off from its labels.
//
// Run with `cargo run --example graph_flags`.

use std::error::Error;

use gbs_deform::{are_isomorphic, classify_graph, normalize_signs, GbsGraph};

pub fn run() -> Result<(), Box<dyn Error>> {
    // The loop (2,4) is slide-free but not strongly slide-free.
    let loop24 = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4)]);
    let flags = classify_graph(&loop24)?;
    println!("loop (2,4): {flags:?}");
    assert!(flags.is_slide_free && !flags.is_strongly_slide_free);

    // An edge with label 1 at one end can be collapsed, so this is not reduced.
    let g6 = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2), ("f", "w", "w", 3, 5)]);
    let flags = classify_graph(&g6)?;
    println!("g6: reduced = {}, minimal = {}", flags.is_reduced, flags.is_minimal);
    assert!(!flags.is_reduced);

    // Z x Z as a loop (1,1) is elementary.
    let torus = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 1, 1)]);
    println!("loop (1,1): elementary = {}", classify_graph(&torus)?.is_elementary);

    // Flipping signs at a vertex or along an edge gives the same group.
    let a = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", -2, 3), ("f", "u", "w", 4, -5)]);
    let b = normalize_signs(&a)?;
    println!("normalized:\n{}", gbs_deform::serialize_graph(&b));
    assert!(are_isomorphic(&a, &b).is_some());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
