//! Exact computation and verification of `F`-isolation numbers of small graphs.
//!
//! A set `D` of vertices is `𝓕`-isolating in `G` when `G - N[D]` contains no
//! copy of any member of `𝓕`; `ι(G, 𝓕)` is the size of a smallest one.

pub mod canon;
pub mod constructions;
pub mod enumeration;
pub mod graph;
pub mod graph6;
pub mod pattern;
pub mod solver;
pub mod verifier;

pub use canon::{canonical_form, canonical_graph, is_isomorphic, vertex_orbits, CanonicalForm};
pub use constructions::{
    build_special, enumerate_f_plus_e, enumerate_pure_special, enumerate_special,
    recognize_extremal, ConstructionError, ExtremalClass, Layout, Recognizer, SpecialGraph,
    SpecialSpec, Verdict,
};
pub use enumeration::{enumerate_graphs, ingest_graph6, EnumError, EnumSpec, IngestError};
pub use graph::{named, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6, to_graph6_string, Graph6Error};
pub use pattern::{contains_copy, enumerate_copies, Pattern, PatternError};
pub use solver::{
    is_isolating, solve, solve_oracle, solve_with_forced, Family, FamilyError, SolveResult,
};
pub use verifier::{
    verify_bound, verify_extremal, verify_lemma_suites, verify_special_corpus, verify_two_copies,
    CorpusConfig, LemmaConfig, RunOptions, SuiteReport, TheoremReport, VerifyError,
};
