//! Elementary deformations of generalized Baumslag-Solitar graphs.
//!
//! A GBS graph is a finite graph with a nonzero integer at every edge end.
//! It presents a group acting on a tree (its Bass-Serre tree) with infinite
//! cyclic vertex and edge stabilizers. This crate works entirely with the
//! labels: predicates on the tree become divisibility tests, moves become
//! label rewrites, and group elements become path words reduced by Britton's
//! lemma.

pub mod bass_serre;
pub mod cli;
pub mod deform;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod moves;
pub mod sample;
pub mod words;

pub use bass_serre::{build_ball, collapse_ball, export_dot, qi_check, QiReport, QiSample, TreeBall, VertexMap};
pub use deform::{
    all_maximal_reductions, canonical_form, decide_equivalence, deformation_path, reduce_graph,
    DeformationPath, Equivalence, InvariantWitness, ReductionTrace,
};
pub use error::{BallError, DeformError, GraphError, MoveError, ParseError, WordError};
pub use graph::{classify_graph, normalize_signs, validate, EdgeEnd, EdgeId, GbsGraph, GraphFlags, VertexId};
pub use invariants::{betti_number, modular_image, q_of_word, ModularImage};
pub use io::{parse_graph, parse_word, serialize_graph, serialize_word};
pub use iso::{are_isomorphic, canonical_code, Isomorphism};
pub use moves::{apply_move, enumerate_moves, slide_as_expansion_collapse, MoveDescriptor, SearchBounds, WordMap};
pub use words::{britton_reduce, classify_word, displacement, translation_length_oracle, PathWord};
