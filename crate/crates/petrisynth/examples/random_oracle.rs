//! Round-trip oracle: draw random bounded nets, take their reachability
//! graphs, synthesize those back, and verify. Reachability graphs are
//! solvable by construction, so any failure is a bug.
//!
//!     cargo run --release --example random_oracle

use rand::prelude::*;

use petrisynth::decomposer::synthesize_mixed;
use petrisynth::synthesis::{synthesize, verify};
use petrisynth::testgen::random_solvable_net;

fn main() {
    let mut rng = StdRng::seed_from_u64(7);
    let rounds = 50;
    let mut decomposed = 0;
    for round in 0..rounds {
        let net = random_solvable_net(&mut rng, 4, 4, 2, 2, 64);
        let lts = net.reachability_graph(64).expect("generator filtered");
        let mono = synthesize(&lts);
        let solved = mono.solved_net().expect("graphs of nets are solvable");
        assert!(verify(solved, &lts).expect("bounded"), "round {round}");
        let mixed = synthesize_mixed(&lts);
        assert!(mixed.is_solved());
        assert!(verify(mixed.solved_net().unwrap(), &lts).unwrap());
        if mixed.regions_used < mono.regions_used {
            decomposed += 1;
        }
    }
    println!("{rounds} random nets synthesized back from their graphs and verified");
    println!("{decomposed} of them needed fewer regions under decomposition");
}
