// Britton reduction and the elliptic/hyperbolic dichotomy on BS(1,6).
//
// Run with `cargo run --example words`.

use std::error::Error;

use gbs_deform::words::ElementKind;
use gbs_deform::{
    britton_reduce, classify_word, displacement, parse_word, translation_length_oracle, GbsGraph,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    // <x, t | t x t^-1 = x^6>: the loop e at v with labels (6, 1).
    let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);

    let conj = parse_word(&g, "e v^1 ~e")?;
    let reduced = britton_reduce(&g, &conj)?;
    println!("t x t^-1 = {}", reduced.display(&g));
    assert_eq!(reduced.display(&g).to_string(), "v^6");

    for text in ["v^1 e v^-1 ~e", "e", "e e v^3", "e v^2 ~e v^1"] {
        let w = parse_word(&g, text)?;
        let c = classify_word(&g, &w)?;
        let oracle = translation_length_oracle(&g, &w, 6)?;
        println!(
            "{text:>14}: {:?}, length {}, oracle {oracle}, displacement {}",
            c.kind,
            c.translation_length,
            displacement(&g, &w)?
        );
        assert_eq!(c.translation_length, oracle);
    }

    // On the trefoil segment (2,3) a product of elements fixing the two
    // ends of the edge, neither fixing the other end, is hyperbolic.
    let seg = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
    let w = parse_word(&seg, "u^1 e w^1 ~e")?;
    let c = classify_word(&seg, &w)?;
    println!("a b on the trefoil: {:?}, length {}", c.kind, c.translation_length);
    assert_eq!((c.kind, c.translation_length), (ElementKind::Hyperbolic, 2));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
