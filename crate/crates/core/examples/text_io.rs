// The graph file format, word syntax and the command line entry point.
//
// Run with `cargo run --example text_io`.

use std::error::Error;

use gbs_deform::cli::run_with;
use gbs_deform::{parse_graph, parse_word, serialize_graph, serialize_word};

const DOC: &str = "\
# BS(1,6)
vertex v
edge e : v -> v [6, 1]
";

pub fn run() -> Result<(), Box<dyn Error>> {
    let g = parse_graph(DOC)?;
    let text = serialize_graph(&g);
    println!("{text}");
    assert_eq!(parse_graph(&text)?, g);

    let w = parse_word(&g, "v^1 e v^-1 ~e")?;
    println!("word: {}", serialize_word(&g, &w));

    match parse_graph("vertex u\nvertex w\nedge e : u -> w [0, 3]\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("zero labels are invalid"),
    }

    // The same library behind the `gbs` binary.
    let path = std::env::temp_dir().join(format!("text_io_{}.gbs", std::process::id()));
    std::fs::write(&path, DOC)?;
    let file = path.to_str().ok_or("non-UTF-8 temp path")?;
    let mut out = Vec::new();
    let code = run_with(["gbs", "--json", "modular", file], &mut out, &mut std::io::sink());
    print!("exit {code}\n{}", String::from_utf8(out)?);
    std::fs::remove_file(path)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
