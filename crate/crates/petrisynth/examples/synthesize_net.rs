//! Monolithic synthesis: from a 23-state labelled transition system to a
//! weighted Petri net, verified by reachability-graph isomorphism.
//!
//!     cargo run --release --example synthesize_net

use petrisynth::fixtures;
use petrisynth::io::emit_pn;
use petrisynth::synthesis::{synthesize, verify};

fn main() {
    let lts = fixtures::ts21();
    println!(
        "input: {} states, {} labels, {} arcs",
        lts.num_states(),
        lts.num_labels(),
        lts.num_arcs()
    );

    let report = synthesize(&lts);
    let net = report.solved_net().expect("this system is solvable");
    println!(
        "solved in {} ms: {} regions became places, {} separation problems reused a region",
        report.elapsed_ms, report.regions_used, report.problems_reused
    );

    let ok = verify(net, &lts).expect("bounded");
    println!("verification (reachability graph isomorphic to input): {ok}");
    println!("\n{}", emit_pn(net));
}
