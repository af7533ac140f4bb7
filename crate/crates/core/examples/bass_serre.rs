// Balls in the Bass-Serre tree and the quasi-isometry bounds of a collapse.
//
// Run with `cargo run --release --example bass_serre`.

use std::error::Error;

use gbs_deform::graph::{EdgeEnd, EdgeId, VertexId};
use gbs_deform::{build_ball, collapse_ball, export_dot, qi_check, GbsGraph, QiSample};

pub fn run() -> Result<(), Box<dyn Error>> {
    // Every vertex of the BS(1,6) tree has 6 + 1 neighbours.
    let bs16 = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);
    let ball = build_ball(&bs16, &VertexId::new("v"), 4)?;
    println!("BS(1,6) ball of radius 4: {} vertices", ball.len());
    assert_eq!(ball.len(), 1814);
    assert!(ball.valence_violations().is_empty());

    let small = build_ball(&bs16, &VertexId::new("v"), 1)?;
    print!("{}", export_dot(&small));

    // Collapse e in the edge (1,2) plus loop (3,5) graph and compare
    // distances before and after.
    let g6 = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 1, 2), ("f", "w", "w", 3, 5)]);
    let ball = build_ball(&g6, &VertexId::new("w"), 5)?;
    let collapsed = collapse_ball(&g6, &EdgeEnd::forward(EdgeId::new("e")), &ball)?;
    let report = qi_check(&ball, &collapsed.map, QiSample::AllPairs)?;
    println!(
        "{} vertices, {} pairs, {} violations, contracted diameter {}",
        report.vertices, report.pairs, report.violation_count, report.max_component_diameter
    );
    assert!(report.passed());

    let sampled = qi_check(&ball, &collapsed.map, QiSample::Random { pairs: 2000, seed: 7 })?;
    println!("sampled: {} pairs checked, passed = {}", sampled.pairs, sampled.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
