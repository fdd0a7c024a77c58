//! Firing semantics: build the reachability graph of the published net,
//! check the state equation along a run, and look at boundedness.
//!
//!     cargo run --release --example reachability_graph

use petrisynth::fixtures;
use petrisynth::io::emit_lts;
use petrisynth::lts::are_isomorphic;
use petrisynth::petri::{DEFAULT_STATE_CAP, PetriNetBuilder};

fn main() {
    let net = fixtures::net21();
    let (rg, markings) = net
        .reachability_graph_with_markings(DEFAULT_STATE_CAP)
        .expect("bounded");
    println!(
        "reachability graph: {} states, {} arcs; matches the published system: {}",
        rg.num_states(),
        rg.num_arcs(),
        are_isomorphic(&rg, &fixtures::ts21()).unwrap().is_some()
    );
    println!(
        "tightest bound: {} tokens (largest count over all reachable markings)",
        net.k_bound(DEFAULT_STATE_CAP).unwrap()
    );

    // State equation along one run: marking = initial + incidence * counts.
    let c = net.incidence();
    let mut m = net.initial_marking().clone();
    let mut counts = vec![0i64; net.num_transitions()];
    'outer: for _ in 0..8 {
        for t in net.transitions() {
            if net.enabled(&m, t).unwrap() {
                m = net.fire(&m, t).unwrap();
                counts[t.0] += 1;
                continue 'outer;
            }
        }
        break;
    }
    let consistent = net.places().all(|p| {
        let delta: i64 = (0..net.num_transitions())
            .map(|t| c.get(p, petrisynth::petri::TransitionId(t)) * counts[t])
            .sum();
        m.tokens(p) as i64 == net.initial_marking().tokens(p) as i64 + delta
    });
    println!("state equation holds along a greedy 8-step run: {consistent}");
    let _ = markings;

    // A transition producing into a place it never empties is unbounded.
    let mut b = PetriNetBuilder::new();
    b.place("p", 0);
    b.transition("grow");
    b.produce("grow", "p", 1).unwrap();
    let unbounded = b.build();
    println!(
        "unbounded guard trips on a token source: {:?}",
        unbounded.reachability_graph(DEFAULT_STATE_CAP).err().map(|e| e.to_string())
    );

    println!("\nfirst lines of the graph file:");
    for line in emit_lts(&rg).lines().take(5) {
        println!("  {line}");
    }
}
