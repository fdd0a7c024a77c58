//! Product decomposition: split a system into label-disjoint factors, solve
//! each factor, and recombine the nets as a disjoint sum.
//!
//!     cargo run --release --example factorize_product

use petrisynth::factorization::{factor, gdiam_violations, label_classes, synthesize_factorized};
use petrisynth::fixtures;
use petrisynth::lts::are_isomorphic;
use petrisynth::petri::DEFAULT_STATE_CAP;
use petrisynth::synthesis::verify;

fn main() {
    let grid = fixtures::grid6();
    println!("input: the 6-state grid (a-chain x bb-chain)");

    println!("general-diamond violations: {:?}", gdiam_violations(&grid));
    println!("label classes: {}", label_classes(&grid).render(&grid));

    let factors = factor(&grid).expect("the grid is a genuine product");
    for (i, f) in factors.iter().enumerate() {
        println!(
            "factor {i}: {} states over labels {:?}",
            f.num_states(),
            f.label_names()
        );
    }
    assert!(are_isomorphic(&factors[0], &fixtures::chain_a()).unwrap().is_some());
    assert!(are_isomorphic(&factors[1], &fixtures::chain_bb()).unwrap().is_some());

    let report = synthesize_factorized(&grid);
    let net = report.solved_net().expect("solvable");
    println!(
        "factorized synthesis: {} places in {} ms, verification: {}",
        net.num_places(),
        report.elapsed_ms,
        verify(net, &grid).unwrap()
    );

    // The other direction: a disjoint sum of nets has the product of the
    // component reachability graphs as its own reachability graph.
    let rg = net.reachability_graph(DEFAULT_STATE_CAP).unwrap();
    let rebuilt = petrisynth::product(
        &fixtures::chain_a(),
        &fixtures::chain_bb(),
    )
    .unwrap();
    println!(
        "sum graph isomorphic to factor-graph product: {}",
        are_isomorphic(&rg, &rebuilt).unwrap().is_some()
    );
}
