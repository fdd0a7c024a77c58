//! Adequate solutions: why articulation needs a non-dominated junction
//! marking, and the two ways to force one (a fresh loop label, or
//! complement places).
//!
//!     cargo run --release --example adequate_solutions

use std::collections::BTreeSet;

use petrisynth::fixtures;
use petrisynth::lts::Mode;
use petrisynth::petri::{
    add_complement_places, is_dominated, Marking, PetriNetBuilder, DEFAULT_STATE_CAP,
};
use petrisynth::synthesis::{marking_for_state, synthesize_adequate, verify};

fn main() {
    // The two-a chain admits a solution whose final marking is dominated:
    // one place with two tokens feeding `a` and producing nothing.
    let mut b = PetriNetBuilder::new();
    b.place("p0", 2);
    b.transition("a");
    b.consume("p0", "a", 1).unwrap();
    let drained = b.build();
    let (_, markings) = drained
        .reachability_graph_with_markings(DEFAULT_STATE_CAP)
        .unwrap();
    let last = Marking(vec![0]);
    println!(
        "naive solution of the two-step chain: final marking dominated: {}",
        is_dominated(&last, &markings)
    );
    println!("such a net cannot anchor an articulation: the second component could start early");

    // Complement places remove every domination without changing the graph.
    let complemented = add_complement_places(&drained, &markings);
    let (_, markings2) = complemented
        .reachability_graph_with_markings(DEFAULT_STATE_CAP)
        .unwrap();
    let still_dominated = markings2.iter().any(|m| {
        let others: Vec<Marking> = markings2.iter().filter(|o| *o != m).cloned().collect();
        is_dominated(m, &others)
    });
    println!("after adding complement places: any domination left: {still_dominated}");

    // The loop-label route: synthesize with a fresh self-loop at the state,
    // then erase the loop transition from the result.
    let aabb = fixtures::aabb();
    let a_only: BTreeSet<_> = [aabb.label_id("a").unwrap()].into_iter().collect();
    let chain = aabb.restrict(&a_only, Mode::Directed);
    let s2 = chain.state_id("s2").unwrap();
    let report = synthesize_adequate(&chain, s2).unwrap();
    let net = report.solved_net().expect("solvable");
    let at_s2 = marking_for_state(net, &chain, s2).unwrap();
    let (_, reachable) = net
        .reachability_graph_with_markings(DEFAULT_STATE_CAP)
        .unwrap();
    let others: Vec<Marking> = reachable.into_iter().filter(|m| *m != at_s2).collect();
    println!(
        "forced solution of the same chain: marking at the junction dominated: {}, verifies: {}",
        is_dominated(&at_s2, &others),
        verify(net, &chain).unwrap()
    );
}
