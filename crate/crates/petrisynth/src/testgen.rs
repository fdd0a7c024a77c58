//! Random generation of small bounded nets, used by the test suites and the
//! runnable examples to stress the synthesis pipeline against the
//! reachability-graph oracle.

use rand::prelude::*;

use crate::petri::{PetriNet, PetriNetBuilder};

/// Draws a random net with up to the given numbers of places and transitions,
/// arc weights up to `max_weight` and initial token counts up to `max_tokens`.
/// The result is not necessarily bounded; callers filter on the guard of
/// [`PetriNet::reachability_graph`].
pub fn random_net(
    rng: &mut impl Rng,
    max_places: usize,
    max_transitions: usize,
    max_weight: u64,
    max_tokens: u64,
) -> PetriNet {
    let places = rng.gen_range(1..=max_places);
    let transitions = rng.gen_range(1..=max_transitions);
    let mut b = PetriNetBuilder::new();
    for p in 0..places {
        b.place(&format!("p{p}"), rng.gen_range(0..=max_tokens));
    }
    for t in 0..transitions {
        b.transition(&format!("t{t}"));
    }
    for p in 0..places {
        for t in 0..transitions {
            if rng.gen_bool(0.4) {
                b.consume(&format!("p{p}"), &format!("t{t}"), rng.gen_range(1..=max_weight))
                    .expect("declared");
            }
            if rng.gen_bool(0.4) {
                b.produce(&format!("t{t}"), &format!("p{p}"), rng.gen_range(1..=max_weight))
                    .expect("declared");
            }
        }
    }
    b.build()
}

/// Draws a random bounded net whose reachability graph fits the cap and has
/// no dead transition (dead transitions appear as useless labels in the
/// graph, which the synthesis pipeline rejects). Retries until one fits.
pub fn random_solvable_net(
    rng: &mut impl Rng,
    max_places: usize,
    max_transitions: usize,
    max_weight: u64,
    max_tokens: u64,
    state_cap: usize,
) -> PetriNet {
    loop {
        let net = random_net(rng, max_places, max_transitions, max_weight, max_tokens);
        let Ok(rg) = net.reachability_graph(state_cap) else {
            continue;
        };
        let fired = rg.useful_labels().len();
        if fired == 0 {
            continue;
        }
        if fired < net.num_transitions() {
            // Drop dead transitions so the graph is weakly live.
            let dead: Vec<_> = net
                .transitions()
                .filter(|&t| rg.label_id(net.transition_name(t)).map_or(true, |l| {
                    !rg.useful_labels().contains(&l)
                }))
                .collect();
            let mut trimmed = net;
            for t in dead.into_iter().rev() {
                trimmed = trimmed.without_transition(t);
            }
            if trimmed.num_transitions() == 0 {
                continue;
            }
            return trimmed;
        }
        return net;
    }
}

/// Renames every transition of `net` with the given suffix, keeping places.
pub fn suffix_transitions(net: &PetriNet, suffix: &str) -> PetriNet {
    let mut b = PetriNetBuilder::new();
    for p in net.places() {
        b.place(net.place_name(p), net.initial_marking().tokens(p));
    }
    for t in net.transitions() {
        b.transition(&format!("{}{suffix}", net.transition_name(t)));
    }
    for p in net.places() {
        for t in net.transitions() {
            let renamed = format!("{}{suffix}", net.transition_name(t));
            let w = net.weight_consume(p, t);
            if w > 0 {
                b.consume(net.place_name(p), &renamed, w).expect("declared");
            }
            let w = net.weight_produce(t, p);
            if w > 0 {
                b.produce(&renamed, net.place_name(p), w).expect("declared");
            }
        }
    }
    b.build()
}
