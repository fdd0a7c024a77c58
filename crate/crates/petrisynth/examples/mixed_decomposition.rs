//! Mixed decomposition: products and articulations alternate freely; the
//! sequence-with-diamond system splits into four one-arc components. Also
//! shows the ambiguous all-loops form where both readings exist.
//!
//!     cargo run --release --example mixed_decomposition

use petrisynth::decomposer::{ambiguous_form, decompose, synthesize_mixed};
use petrisynth::fixtures;
use petrisynth::lts::are_isomorphic;
use petrisynth::synthesis::verify;

fn main() {
    let sd = fixtures::seqdiamond();
    let tree = decompose(&sd);
    println!("decomposition: {}", tree.render());
    let rebuilt = tree.evaluate();
    println!(
        "evaluating the tree rebuilds the input: {}",
        are_isomorphic(&rebuilt, &sd).unwrap().is_some()
    );

    let report = synthesize_mixed(&sd);
    let net = report.solved_net().expect("solvable");
    println!(
        "mixed synthesis: {} places in {} ms, verification: {}",
        net.num_places(),
        report.elapsed_ms,
        verify(net, &sd).unwrap()
    );

    // Loop labels can make products and articulations interchangeable: one
    // family of labels loops at every state, another only at one state.
    let fig = fixtures::fig15();
    let form = ambiguous_form(&fig).expect("the two-state loop system is ambiguous");
    println!(
        "\nambiguous form: core {} states, everywhere-loops {:?}, loops at {:?}: {:?}",
        form.core.num_states(),
        form.everywhere_loops,
        form.anchor,
        form.anchored_loops
    );
    let report = synthesize_mixed(&fig);
    let net = report.solved_net().expect("solvable");
    println!(
        "its net keeps the everywhere-loop transitions isolated; verification: {}",
        verify(net, &fig).unwrap()
    );
}
