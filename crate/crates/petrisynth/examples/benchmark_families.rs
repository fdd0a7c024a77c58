//! The benchmark harness: generate growing articulated families, time the
//! strategies against each other, and fit growth models to the results.
//!
//!     cargo run --release --example benchmark_families

use petrisynth::bench::{
    fit, generate, predicted_gain, records_to_csv, run_bench, Family, FamilySpec, FitModel,
    Strategy,
};
use petrisynth::fixtures;

fn main() {
    // Size laws: articulated families grow linearly, products exponentially.
    let star10 = FamilySpec {
        family: Family::Star,
        component: fixtures::ts21(),
        n: 10,
        attach: None,
    };
    println!("star of 10 copies of the 23-state system: {} states", generate(&star10).num_states());

    // Expected gains under a quadratic cost model.
    println!(
        "predicted gains at h=2, k=2, 100 states: product {}, articulation {}",
        predicted_gain(Family::ProductPower, 2.0, 2, 100.0),
        predicted_gain(Family::Star, 2.0, 2, 100.0)
    );

    // A small sweep at desk scale; every run is verified.
    let spec = FamilySpec {
        family: Family::Caterpillar,
        component: fixtures::ts21(),
        n: 4,
        attach: None,
    };
    let records = run_bench(&spec, &[Strategy::Mono, Strategy::Mixed, Strategy::ComponentSum], 3);
    print!("{}", records_to_csv(&records));

    // Fit the monolithic growth in the number of components.
    let mono: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.strategy == "mono" && r.elapsed_ms > 0)
        .map(|r| (r.n as f64, r.elapsed_ms as f64))
        .collect();
    if mono.len() >= 3 {
        if let Ok((a, b)) = fit(&mono, FitModel::Power) {
            println!("monolithic time ~ {a:.3} * n^{b:.2}");
        }
        if let Ok((a, b)) = fit(&mono, FitModel::Exponential) {
            println!("              or {a:.3} * {b:.3}^n");
        }
    }
}
