//! The `gbs` command line.
//!
//! Exit codes: 0 for success or a true answer, 1 for a false, absent or
//! unknown answer, 2 for usage and parse errors, 3 when a search or ball
//! budget is exceeded. With `--json` every command prints one JSON object
//! carrying `schema_version` and `command`; see `schema/output.schema.json`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bass_serre::{build_ball, collapse_ball, export_dot, qi_check, QiSample};
use crate::deform::{
    all_maximal_reductions, canonical_form, decide_equivalence, reduce_graph, Equivalence,
    InvariantWitness,
};
use crate::error::{BallError, DeformError};
use crate::graph::{EdgeEnd, EdgeId, GbsGraph, VertexId};
use crate::invariants::{modular_image, q_of_word, ModularImage};
use crate::io::{parse_graph, parse_graph_unchecked, parse_word, serialize_graph, serialize_word};
use crate::moves::{apply_move, check_move, enumerate_moves, parse_move, MoveDescriptor, SearchBounds};
use crate::words::{classify_word, translation_length_oracle, ElementKind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "gbs", version, about = "Elementary deformations of GBS graphs")]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural invariants of a graph file.
    Validate { file: PathBuf },
    /// Minimal, reduced, proper, slide-free, strongly slide-free, elementary.
    Flags { file: PathBuf },
    /// Collapse until no collapse applies.
    Reduce {
        file: PathBuf,
        /// Every maximal collapse sequence, up to isomorphism.
        #[arg(long)]
        all: bool,
        /// Largest number of edges accepted with --all.
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// The strongly slide-free reduced form, if there is one.
    Canonical { file: PathBuf },
    /// The image of the modular homomorphism.
    Modular { file: PathBuf },
    /// Elliptic or hyperbolic, with translation length.
    Classify {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// The modular homomorphism evaluated on a word.
    Qword {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Search for an elementary deformation between two graphs.
    Equivalent {
        file1: PathBuf,
        file2: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Build a ball in the Bass-Serre tree.
    Ball {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        radius: usize,
        /// Write the ball as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the quasi-isometry bounds of a collapse on a ball.
    QiCheck {
        file: PathBuf,
        /// Edge to collapse; `~e` selects the reverse orientation.
        #[arg(long)]
        edge: String,
        #[arg(long)]
        radius: usize,
        /// Root of the ball; defaults to the vertex that survives the collapse.
        #[arg(long)]
        vertex: Option<String>,
        /// Check this many random pairs instead of all pairs.
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List applicable moves, or apply moves in sequence.
    Moves {
        file: PathBuf,
        /// Moves such as `collapse(e)`, `slide(~f,e)`, `expand(v,2,[e])`.
        #[arg(long, num_args = 1..)]
        apply: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_modulus: u64,
        #[arg(long, default_value_t = 2)]
        max_subset: usize,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Longest path searched.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 6)]
    max_modulus: u64,
    #[arg(long, default_value_t = 64)]
    max_label: u64,
    #[arg(long, default_value_t = 4)]
    max_edges: usize,
    #[arg(long, default_value_t = 3)]
    max_subset: usize,
    #[arg(long, default_value_t = 200_000)]
    max_states: usize,
}

impl BoundArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            max_modulus: self.max_modulus,
            max_subset_size: self.max_subset,
            max_depth: self.depth,
            max_edges: self.max_edges,
            max_label: self.max_label,
            max_states: self.max_states,
        }
    }
}

/// What a command produced: an exit code, text, and the JSON payload.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Outcome { code, text: text.into(), json }
    }
}

/// Failures mapped to exit codes.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "usage", message: message.into() }
}

fn budget(message: impl Into<String>) -> Failure {
    Failure { code: 3, kind: "budget", message: message.into() }
}

fn int(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn graph_json(g: &GbsGraph) -> Value {
    json!({
        "vertices": g.vertices().map(ToString::to_string).collect::<Vec<_>>(),
        "edges": g.edges().map(|(id, e)| json!({
            "name": id.to_string(),
            "origin": e.origin.to_string(),
            "terminus": e.terminus.to_string(),
            "labels": [int(&e.origin_label), int(&e.terminus_label)],
        })).collect::<Vec<_>>(),
        "text": serialize_graph(g),
    })
}

fn image_json(m: &ModularImage) -> Value {
    json!({
        "generators": m.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "primes": m.primes.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "basis": m.basis.iter().map(|row| row.iter().map(int).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "rank": m.rank(),
    })
}

fn move_strings(moves: &[MoveDescriptor]) -> Vec<String> {
    moves.iter().map(ToString::to_string).collect()
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<GbsGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure {
        code: 2,
        kind: "parse",
        message: format!("{}: {e}", path.display()),
    })
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    let (name, result) = dispatch(cli.command);
    match result {
        Ok(outcome) => {
            if json {
                let mut value = json!({ "schema_version": SCHEMA_VERSION, "command": name });
                if let (Value::Object(dst), Value::Object(src)) = (&mut value, outcome.json) {
                    dst.extend(src);
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            } else {
                let _ = write!(out, "{}", outcome.text);
                if !outcome.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            outcome.code
        }
        Err(f) => {
            if json {
                let value = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "error": { "kind": f.kind, "message": f.message },
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(command: Command) -> (&'static str, Result<Outcome, Failure>) {
    match command {
        Command::Validate { file } => ("validate", validate(&file)),
        Command::Flags { file } => ("flags", flags(&file)),
        Command::Reduce { file, all, cap } => ("reduce", reduce(&file, all, cap)),
        Command::Canonical { file } => ("canonical", canonical(&file)),
        Command::Modular { file } => ("modular", modular(&file)),
        Command::Classify { file, word } => ("classify", classify(&file, &word)),
        Command::Qword { file, word } => ("qword", qword(&file, &word)),
        Command::Equivalent { file1, file2, bounds } => {
            ("equivalent", equivalent(&file1, &file2, &bounds.bounds()))
        }
        Command::Ball { file, vertex, radius, dot } => {
            ("ball", ball(&file, &vertex, radius, dot.as_ref()))
        }
        Command::QiCheck { file, edge, radius, vertex, pairs, seed } => {
            ("qi-check", qi(&file, &edge, radius, vertex.as_deref(), pairs, seed))
        }
        Command::Moves { file, apply, max_modulus, max_subset } => {
            ("moves", moves(&file, &apply, max_modulus, max_subset))
        }
    }
}

fn validate(file: &PathBuf) -> Result<Outcome, Failure> {
    let text = read(file)?;
    let g = parse_graph_unchecked(&text).map_err(|e| Failure {
        code: 2,
        kind: "parse",
        message: format!("{}: {e}", file.display()),
    })?;
    let report = g.validate();
    let issues: Vec<String> = report.issues.iter().map(ToString::to_string).collect();
    let text = if report.is_valid() {
        "valid\n".to_string()
    } else {
        format!("invalid\n{}", indent(&issues.join("\n")))
    };
    let json = json!({
        "valid": report.is_valid(),
        "issues": report.issues,
    });
    Ok(Outcome::new(if report.is_valid() { 0 } else { 1 }, text, json))
}

fn flags(file: &PathBuf) -> Result<Outcome, Failure> {
    let g = load(file)?;
    let f = g.classify().map_err(|e| usage(e.to_string()))?;
    let rows = [
        ("minimal", f.is_minimal),
        ("reduced", f.is_reduced),
        ("proper", f.is_proper),
        ("slide_free", f.is_slide_free),
        ("strongly_slide_free", f.is_strongly_slide_free),
        ("elementary", f.is_elementary),
    ];
    let text: String = rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
    let json = json!({ "flags": rows.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect::<serde_json::Map<_, _>>() });
    Ok(Outcome::new(0, text, json))
}

fn reduce(file: &PathBuf, all: bool, cap: usize) -> Result<Outcome, Failure> {
    let g = load(file)?;
    if all {
        let classes = all_maximal_reductions(&g, cap).map_err(|e| match e {
            DeformError::CapExceeded { .. } => budget(e.to_string()),
            other => usage(other.to_string()),
        })?;
        let mut text = format!("classes: {}\n", classes.len());
        for (i, h) in classes.iter().enumerate() {
            text += &format!("class {}:\n{}", i + 1, indent(&serialize_graph(h)));
        }
        let json = json!({ "classes": classes.iter().map(graph_json).collect::<Vec<_>>() });
        return Ok(Outcome::new(0, text, json));
    }
    let trace = reduce_graph(&g).map_err(|e| usage(e.to_string()))?;
    let text = format!(
        "moves: [{}]\nresult:\n{}",
        move_strings(&trace.moves).join(", "),
        indent(&serialize_graph(&trace.result))
    );
    let json = json!({ "moves": move_strings(&trace.moves), "result": graph_json(&trace.result) });
    Ok(Outcome::new(0, text, json))
}

fn canonical(file: &PathBuf) -> Result<Outcome, Failure> {
    let g = load(file)?;
    match canonical_form(&g) {
        Ok(Some((form, trace))) => {
            let text = format!("canonical:\n{}", indent(&serialize_graph(&form)));
            let json = json!({
                "status": "canonical",
                "canonical": graph_json(&form),
                "reduction": move_strings(&trace.moves),
            });
            Ok(Outcome::new(0, text, json))
        }
        Ok(None) => {
            let trace = reduce_graph(&g).map_err(|e| usage(e.to_string()))?;
            let text = format!(
                "none: the reduced graph is not strongly slide-free\nreduced:\n{}",
                indent(&serialize_graph(&trace.result))
            );
            let json = json!({ "status": "not_strongly_slide_free", "reduced": graph_json(&trace.result) });
            Ok(Outcome::new(1, text, json))
        }
        Err(DeformError::Elementary(case)) => {
            let text = format!("none: elementary graph ({case})\n");
            Ok(Outcome::new(1, text, json!({ "status": "elementary", "case": case })))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

fn modular(file: &PathBuf) -> Result<Outcome, Failure> {
    let g = load(file)?;
    let m = modular_image(&g).map_err(|e| usage(e.to_string()))?;
    let gens: Vec<String> = m.generators().iter().map(ToString::to_string).collect();
    let text = format!("generators: [{}]\n", gens.join(", "));
    Ok(Outcome::new(0, text, image_json(&m)))
}

fn load_word(file: &PathBuf, word: &str) -> Result<(GbsGraph, crate::words::PathWord), Failure> {
    let g = load(file)?;
    let w = parse_word(&g, word).map_err(|e| usage(e.to_string()))?;
    if !w.is_closed(&g) {
        return Err(usage(format!("word `{word}` is not closed")));
    }
    Ok((g, w))
}

fn classify(file: &PathBuf, word: &str) -> Result<Outcome, Failure> {
    let (g, w) = load_word(file, word)?;
    let c = classify_word(&g, &w).map_err(|e| usage(e.to_string()))?;
    let oracle = translation_length_oracle(&g, &w, 6).ok();
    let kind = match c.kind {
        ElementKind::Elliptic => "elliptic",
        ElementKind::Hyperbolic => "hyperbolic",
    };
    let witness = serialize_word(&g, &c.witness);
    let oracle_text = oracle.map_or("inconclusive".to_string(), |n| n.to_string());
    let text = format!(
        "kind: {kind}\ntranslation_length: {}\nwitness: {witness}\noracle: {oracle_text}\n",
        c.translation_length
    );
    let json = json!({
        "kind": kind,
        "translation_length": c.translation_length,
        "witness": witness,
        "oracle_translation_length": oracle,
    });
    Ok(Outcome::new(0, text, json))
}

fn qword(file: &PathBuf, word: &str) -> Result<Outcome, Failure> {
    let (g, w) = load_word(file, word)?;
    let q = q_of_word(&g, &w).map_err(|e| usage(e.to_string()))?;
    let m = modular_image(&g).map_err(|e| usage(e.to_string()))?;
    let text = format!("q: {q}\n");
    Ok(Outcome::new(0, text, json!({ "q": q.to_string(), "in_image": m.contains(&q) })))
}

fn equivalent(file1: &PathBuf, file2: &PathBuf, bounds: &SearchBounds) -> Result<Outcome, Failure> {
    let (g1, g2) = (load(file1)?, load(file2)?);
    let answer = decide_equivalence(&g1, &g2, bounds).map_err(|e| match e {
        DeformError::BudgetExhausted(_) => budget(e.to_string()),
        other => usage(other.to_string()),
    })?;
    Ok(match answer {
        Equivalence::Equivalent(path) => {
            let moves = move_strings(&path.moves);
            let mut text = format!("YES: path of length {}\n", path.len());
            for m in &moves {
                text += &format!("  {m}\n");
            }
            let json = json!({
                "answer": "yes",
                "path": moves,
                "length": path.len(),
                "shortest": path.shortest,
                "verified": path.verify(),
                "end": graph_json(&path.end),
            });
            Outcome::new(0, text, json)
        }
        Equivalence::NotEquivalent(witness) => {
            let (reason, detail) = match &witness {
                InvariantWitness::BettiNumber { left, right } => (
                    format!("Betti numbers differ: {left} vs {right}"),
                    json!({ "invariant": "betti_number", "left": left, "right": right }),
                ),
                InvariantWitness::ModularImage { left, right } => (
                    format!("modular images differ: {left} vs {right}"),
                    json!({ "invariant": "modular_image", "left": image_json(left), "right": image_json(right) }),
                ),
                InvariantWitness::CanonicalForm { left, right } => (
                    "strongly slide-free reduced forms differ".to_string(),
                    json!({ "invariant": "canonical_form", "left": left, "right": right }),
                ),
            };
            Outcome::new(1, format!("NO: {reason}\n"), json!({ "answer": "no", "witness": detail }))
        }
        Equivalence::Unknown => Outcome::new(
            1,
            format!("UNKNOWN: no path of length at most {} within the bounds\n", bounds.max_depth),
            json!({ "answer": "unknown", "depth": bounds.max_depth }),
        ),
    })
}

fn ball_failure(e: BallError) -> Failure {
    match e {
        BallError::BudgetExceeded(_) => budget(e.to_string()),
        other => usage(other.to_string()),
    }
}

fn ball(file: &PathBuf, vertex: &str, radius: usize, dot: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let g = load(file)?;
    let b = build_ball(&g, &VertexId::new(vertex), radius).map_err(ball_failure)?;
    let violations = b.valence_violations().len();
    if let Some(path) = dot {
        std::fs::write(path, export_dot(&b)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    let leaves = b.level(radius).len();
    let text = format!(
        "vertices: {}\nradius: {radius}\nboundary: {leaves}\nvalence_violations: {violations}\n",
        b.len()
    );
    let json = json!({
        "vertices": b.len(),
        "radius": radius,
        "root": vertex,
        "boundary": leaves,
        "valence_violations": violations,
    });
    Ok(Outcome::new(if violations == 0 { 0 } else { 1 }, text, json))
}

fn collapse_end(g: &GbsGraph, edge: &str) -> Result<EdgeEnd, Failure> {
    let (name, reversed) = match edge.strip_prefix('~') {
        Some(n) => (n, true),
        None => (edge, false),
    };
    let x = EdgeEnd { edge: EdgeId::new(name), reversed };
    let ok = |x: &EdgeEnd| check_move(g, &MoveDescriptor::Collapse { end: x.clone() }).is_ok();
    if ok(&x) {
        Ok(x)
    } else if !edge.starts_with('~') && g.has_end(&x) && ok(&x.reverse()) {
        Ok(x.reverse())
    } else {
        Err(usage(format!("edge {edge} cannot be collapsed")))
    }
}

fn qi(
    file: &PathBuf,
    edge: &str,
    radius: usize,
    vertex: Option<&str>,
    pairs: Option<usize>,
    seed: u64,
) -> Result<Outcome, Failure> {
    let g = load(file)?;
    let x = collapse_end(&g, edge)?;
    let root = vertex.map_or_else(|| g.terminus(&x).clone(), VertexId::new);
    let b = build_ball(&g, &root, radius).map_err(ball_failure)?;
    let c = collapse_ball(&g, &x, &b).map_err(ball_failure)?;
    let sample = pairs.map_or(QiSample::AllPairs, |pairs| QiSample::Random { pairs, seed });
    let report = qi_check(&b, &c.map, sample).map_err(ball_failure)?;
    let passed = report.passed();
    let text = format!(
        "collapse: {x}\nroot: {root}\nvertices: {}\nimage_vertices: {}\npairs: {}\nmethod: {}\nmax_excess: {}\nviolations: {}\nmax_component_diameter: {}\nresult: {}\n",
        report.vertices,
        report.image_vertices,
        report.pairs,
        report.method,
        report.max_excess,
        report.violation_count,
        report.max_component_diameter,
        if passed { "pass" } else { "fail" }
    );
    let mut json = serde_json::to_value(&report).expect("json");
    if let Value::Object(map) = &mut json {
        map.insert("pairs".into(), Value::String(report.pairs.to_string()));
        map.insert("passed".into(), Value::Bool(passed));
        map.insert("collapse".into(), Value::String(x.to_string()));
        map.insert("root".into(), Value::String(root.to_string()));
    }
    Ok(Outcome::new(if passed { 0 } else { 1 }, text, json))
}

fn moves(file: &PathBuf, apply: &[String], max_modulus: u64, max_subset: usize) -> Result<Outcome, Failure> {
    let g = load(file)?;
    if apply.is_empty() {
        let bounds = SearchBounds { max_modulus, max_subset_size: max_subset, ..SearchBounds::default() };
        let list = enumerate_moves(&g, &bounds).map_err(|e| usage(e.to_string()))?;
        let texts = move_strings(&list);
        let text: String = texts.iter().map(|m| format!("{m}\n")).collect();
        return Ok(Outcome::new(0, text, json!({ "moves": texts })));
    }
    let mut cur = g;
    let mut applied = Vec::new();
    for (i, m) in apply.iter().enumerate() {
        let parsed = match parse_move(&cur, m) {
            Ok(p) => p,
            Err(e) => {
                let text = format!("move {} ({m}) failed: {e}\n", i + 1);
                let json = json!({ "applied": applied, "failed": m, "reason": e.to_string(), "result": graph_json(&cur) });
                return Ok(Outcome::new(1, text, json));
            }
        };
        cur = apply_move(&cur, &parsed).map_err(|e| usage(e.to_string()))?.0;
        applied.push(parsed.to_string());
    }
    let text = format!("result:\n{}", indent(&serialize_graph(&cur)));
    Ok(Outcome::new(0, text, json!({ "applied": applied, "result": graph_json(&cur) })))
}
