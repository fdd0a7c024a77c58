//! Region theory up close: the separation problems of a system, their
//! linear constraint systems, and how a solved region becomes a place.
//!
//!     cargo run --release --example separation_problems

use petrisynth::fixtures;
use petrisynth::region::{
    base_constraints, enumerate_essp, enumerate_ssp, feasible, net_from_regions, region_solves,
    solve_separation, RegionContext,
};
use petrisynth::synthesis::verify;

fn main() {
    let grid = fixtures::grid6();
    let ssp = enumerate_ssp(&grid);
    let essp = enumerate_essp(&grid);
    println!(
        "grid: {} state separation problems, {} event/state separation problems",
        ssp.len(),
        essp.len()
    );

    let base = base_constraints(&grid);
    println!(
        "base system: {} variables (|S| + 2|T|), {} rows, homogeneous: all-zero point feasible: {}",
        base.num_vars,
        base.rows.len(),
        feasible(&base).is_some()
    );

    // Solve the first event/state problem through the full system.
    let problem = essp[0];
    let region = solve_separation(&grid, &base, &problem).expect("solvable");
    println!(
        "solved {} directly: region rho={:?} backward={:?} forward={:?}",
        problem.render(&grid),
        region.rho,
        region.backward,
        region.forward
    );
    assert!(region.is_valid(&grid));
    assert!(region_solves(&region, &problem));

    // The reduced solver answers the same problems from a smaller system.
    let ctx = RegionContext::new(&grid);
    let mut regions = Vec::new();
    for p in essp.iter().chain(ssp.iter()) {
        if regions.iter().any(|r| region_solves(r, p)) {
            continue;
        }
        regions.push(ctx.solve(p).expect("grid is solvable"));
    }
    println!("{} regions cover all {} problems", regions.len(), ssp.len() + essp.len());

    let net = net_from_regions(&grid, &regions);
    println!(
        "one place per region, one transition per label: verification: {}",
        verify(&net, &grid).unwrap()
    );
}
