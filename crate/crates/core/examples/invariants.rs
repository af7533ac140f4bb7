// The modular homomorphism and the first Betti number.
//
// Run with `cargo run --example invariants`.

use std::error::Error;

use gbs_deform::{betti_number, modular_image, parse_word, q_of_word, GbsGraph};
use num_rational::BigRational;

pub fn run() -> Result<(), Box<dyn Error>> {
    let bs16 = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);
    let image = modular_image(&bs16)?;
    println!("BS(1,6): image {image}, betti {}", betti_number(&bs16)?);

    let t = parse_word(&bs16, "e")?;
    let q = q_of_word(&bs16, &t)?;
    println!("q(t) = {q}");
    assert_eq!(q, BigRational::from_integer(6.into()));
    assert!(image.contains(&q));

    // Two loops generate a rank 2 lattice; the canonical basis is unique.
    let two = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 3), ("f", "v", "v", 5, 7)]);
    let image = modular_image(&two)?;
    println!("loops (2,3),(5,7): {image}, primes {:?}", image.primes);
    assert_eq!(image.rank(), 2);

    // A tree has trivial image: the group is unimodular.
    let tree = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
    assert!(modular_image(&tree)?.is_trivial());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
