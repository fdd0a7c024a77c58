//! Articulation detection: refine the label partition, build the bipartite
//! class/state graph, fuse cycles, and synthesize component-wise with
//! side-condition recombination.
//!
//!     cargo run --release --example articulate_system

use petrisynth::articulation::{
    articul_expression, articulation_partition, build_graph, refine_partition,
    synthesize_articulated,
};
use petrisynth::factorization::LabelPartition;
use petrisynth::fixtures;
use petrisynth::synthesis::verify;

fn main() {
    let lts = fixtures::bigfix();
    println!(
        "input: {} states, {} labels, {} arcs",
        lts.num_states(),
        lts.num_labels(),
        lts.num_arcs()
    );

    let refined = refine_partition(&lts, &LabelPartition::singletons(&lts));
    println!("after adjacency refinement: {}", refined.render(&lts));
    let graph = build_graph(&lts, &refined);
    println!(
        "graph: {} classes, {} state nodes, acyclic: {}",
        graph.blocks.len(),
        graph.state_nodes.len(),
        graph.is_acyclic()
    );

    let (partition, graph) = articulation_partition(&lts);
    println!("after cycle fusion: {}", partition.render(&lts));
    let graph = graph.expect("non-trivial");
    let nodes: Vec<&str> = graph.state_nodes.iter().map(|&s| lts.state_name(s)).collect();
    println!("state nodes: {nodes:?}, acyclic: {}", graph.is_acyclic());

    let expr = articul_expression(&lts).expect("non-trivial");
    println!("expression: {}", expr.render(&lts));

    let report = synthesize_articulated(&lts);
    let net = report.solved_net().expect("solvable");
    println!(
        "articulated synthesis: {} places in {} ms, verification: {}",
        net.num_places(),
        report.elapsed_ms,
        verify(net, &lts).unwrap()
    );
}
