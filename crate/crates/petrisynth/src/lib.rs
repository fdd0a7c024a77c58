//! Synthesis of weighted Petri nets from finite labelled transition systems,
//! with two divide-and-conquer strategies: factorization into disjoint
//! products (nets recombined by disjoint sums) and articulation around
//! shared states (nets recombined through side conditions). Produced nets
//! are verified by reachability-graph isomorphism.
//!
//! The runnable examples under `examples/` walk through each capability; the
//! `petrisynth` binary exposes them as subcommands over the text formats of
//! [`io`].

pub mod articulation;
pub mod bench;
pub mod decomposer;
pub mod factorization;
pub mod fixtures;
pub mod io;
pub mod lts;
pub mod petri;
pub mod region;
pub mod simplex;
pub mod synthesis;
pub mod testgen;

pub use lts::{are_isomorphic, articulate as articulate_lts, product, Lts, LtsBuilder};
pub use petri::{
    add_complement_places, articulate as articulate_pn, disjoint_sum, is_dominated, Marking,
    PetriNet, PetriNetBuilder,
};
pub use synthesis::{
    presynthesis, synthesize, synthesize_adequate, verify, Outcome, SynthesisReport,
};
