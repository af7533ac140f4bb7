// Reduction, canonical forms and the three-valued equivalence test.
//
// Run with `cargo run --example deformation`.

use std::error::Error;

use gbs_deform::{
    all_maximal_reductions, canonical_form, decide_equivalence, reduce_graph, serialize_graph,
    Equivalence, GbsGraph, InvariantWitness, SearchBounds,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    let g = GbsGraph::from_edges(
        &["a", "b", "c"],
        &[("e", "a", "b", 1, 2), ("f", "b", "c", 3, 1), ("g", "b", "b", 3, 5)],
    );
    let trace = reduce_graph(&g)?;
    let moves: Vec<String> = trace.moves.iter().map(ToString::to_string).collect();
    println!("reduce: [{}]\n{}", moves.join(", "), serialize_graph(&trace.result));

    // Every order of collapses reaches the same reduced graph here.
    let classes = all_maximal_reductions(&g, 8)?;
    println!("maximal reductions: {} class(es)", classes.len());

    let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
    if let Some((form, _)) = canonical_form(&seg)? {
        println!("canonical form of the trefoil segment:\n{}", serialize_graph(&form));
    }

    let bounds = SearchBounds::default();
    let pairs = [
        (
            GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", 8, 3)]),
            GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", 16, 3)]),
        ),
        (
            GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]),
            GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 1)]),
        ),
    ];
    for (a, b) in &pairs {
        match decide_equivalence(a, b, &bounds)? {
            Equivalence::Equivalent(path) => {
                let moves: Vec<String> = path.moves.iter().map(ToString::to_string).collect();
                println!("YES via [{}], verified: {}", moves.join(", "), path.verify());
            }
            Equivalence::NotEquivalent(InvariantWitness::ModularImage { left, right }) => {
                println!("NO: modular images {left} and {right} differ")
            }
            Equivalence::NotEquivalent(w) => println!("NO: {w:?}"),
            Equivalence::Unknown => println!("UNKNOWN"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
