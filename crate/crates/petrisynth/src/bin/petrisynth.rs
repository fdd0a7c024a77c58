//! Command line front end over the library: synthesis, decomposition,
//! reachability graphs and the benchmark sweep, all on the plain text
//! formats.
//!
//! Exit codes: 0 success / solved; 1 unsolvable, rejected, or no
//! decomposition where one was demanded; 2 input or format error;
//! 3 resource limits (unbounded net, state cap).

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use petrisynth::articulation::{articul_expression, synthesize_articulated};
use petrisynth::bench::{self, Family, FamilySpec, Strategy};
use petrisynth::decomposer::{decompose_with, synthesize_mixed_with, DecomposeOptions};
use petrisynth::factorization::{factor, synthesize_factorized, NotAProduct};
use petrisynth::io::{emit_lts, emit_pn, parse_lts, parse_pn};
use petrisynth::lts::{Lts, Mode};
use petrisynth::petri::{PnError, DEFAULT_STATE_CAP};
use petrisynth::synthesis::{synthesize, verify_capped, Outcome};

const EXIT_UNSOLVABLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "petrisynth", about = "Petri net synthesis from labelled transition systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Mono,
    Factor,
    Artic,
    Mixed,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a net whose reachability graph matches the input system.
    Synth {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "mono")]
        strategy: StrategyArg,
        /// Check the produced net by reachability-graph isomorphism.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        max_states: usize,
        /// Drop useless labels at load time instead of rejecting them.
        #[arg(long)]
        strip_useless: bool,
    },
    /// Print the product/articulation decomposition tree.
    Decompose {
        input: PathBuf,
        /// Try articulations before products.
        #[arg(long)]
        prefer_articulation: bool,
    },
    /// Split into product factors.
    Factorize {
        input: PathBuf,
        /// Write one LTS file per factor into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Detect an articulation and print its expression.
    Articulate {
        input: PathBuf,
        /// Write one LTS file per component into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Compute the reachability graph of a net.
    Rg {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        max_states: usize,
    },
    /// Time the synthesis strategies over a generated family.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long)]
        component: PathBuf,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        csv: PathBuf,
        /// Strategies to time (default: mono and mixed).
        #[arg(long, value_delimiter = ',')]
        strategies: Option<Vec<String>>,
    },
}

fn load_lts(path: &Path, strip_useless: bool) -> Result<Lts, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    let lts = parse_lts(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_INPUT
    })?;
    if strip_useless && lts.useful_labels().len() != lts.num_labels() {
        let useful: BTreeSet<_> = lts.useful_labels();
        return Ok(lts.restrict(&useful, Mode::Directed));
    }
    Ok(lts)
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), u8> {
    match path {
        Some(path) => fs::write(path, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_INPUT
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn resource_exit(err: &PnError) -> u8 {
    match err {
        PnError::Unbounded(..) | PnError::StateCapExceeded(_) => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn run_synth(
    input: &Path,
    output: &Option<PathBuf>,
    strategy: StrategyArg,
    verify: bool,
    max_states: usize,
    strip_useless: bool,
) -> Result<(), u8> {
    let lts = load_lts(input, strip_useless)?;
    let report = match strategy {
        StrategyArg::Mono => synthesize(&lts),
        StrategyArg::Factor => synthesize_factorized(&lts),
        StrategyArg::Artic => synthesize_articulated(&lts),
        StrategyArg::Mixed => synthesize_mixed_with(&lts, DecomposeOptions::default()),
    };
    match report.outcome {
        Outcome::Solved(net) => {
            if verify {
                match verify_capped(&net, &lts, max_states) {
                    Ok(true) => println!("verified: reachability graph matches the input"),
                    Ok(false) => {
                        eprintln!("error: produced net failed verification");
                        return Err(EXIT_UNSOLVABLE);
                    }
                    Err(e) => {
                        eprintln!("error: verification failed: {e}");
                        return Err(resource_exit(&e));
                    }
                }
            }
            println!(
                "solved: {} places, {} transitions, {} regions, {} reused, {} ms",
                net.num_places(),
                net.num_transitions(),
                report.regions_used,
                report.problems_reused,
                report.elapsed_ms
            );
            write_or_print(output, &emit_pn(&net))
        }
        Outcome::Unsolvable(witness) => {
            println!("unsolvable: {witness}");
            Err(EXIT_UNSOLVABLE)
        }
        Outcome::Rejected(check) => {
            println!("rejected: {check}");
            Err(EXIT_UNSOLVABLE)
        }
    }
}

fn run_decompose(input: &Path, prefer_articulation: bool) -> Result<(), u8> {
    let lts = load_lts(input, false)?;
    if let Err(check) = petrisynth::presynthesis(&lts) {
        println!("rejected: {check}");
        return Err(EXIT_UNSOLVABLE);
    }
    let tree = decompose_with(&lts, DecomposeOptions { prefer_articulation });
    println!("{}", tree.render());
    Ok(())
}

fn run_factorize(input: &Path, emit_dir: &Option<PathBuf>) -> Result<(), u8> {
    let lts = load_lts(input, false)?;
    if let Err(check) = petrisynth::presynthesis(&lts) {
        println!("rejected: {check}");
        return Err(EXIT_UNSOLVABLE);
    }
    match factor(&lts) {
        Ok(factors) if factors.len() >= 2 => {
            println!("{} factors", factors.len());
            for (i, f) in factors.iter().enumerate() {
                println!(
                    "factor {i}: {} states, {} arcs, labels {}",
                    f.num_states(),
                    f.num_arcs(),
                    f.label_names().into_iter().collect::<Vec<_>>().join(",")
                );
                if let Some(dir) = emit_dir {
                    fs::create_dir_all(dir).map_err(|_| EXIT_INPUT)?;
                    let path = dir.join(format!("factor{i}.lts"));
                    fs::write(&path, emit_lts(f)).map_err(|_| EXIT_INPUT)?;
                }
            }
            Ok(())
        }
        Ok(_) => {
            println!("no non-trivial factorization");
            Err(EXIT_UNSOLVABLE)
        }
        Err(err) => {
            let _: &NotAProduct = &err;
            println!("not a product: {err}");
            Err(EXIT_UNSOLVABLE)
        }
    }
}

fn run_articulate(input: &Path, emit_dir: &Option<PathBuf>) -> Result<(), u8> {
    let lts = load_lts(input, false)?;
    if let Err(check) = petrisynth::presynthesis(&lts) {
        println!("rejected: {check}");
        return Err(EXIT_UNSOLVABLE);
    }
    match articul_expression(&lts) {
        Some(expr) => {
            println!("{}", expr.render(&lts));
            if let Some(dir) = emit_dir {
                fs::create_dir_all(dir).map_err(|_| EXIT_INPUT)?;
                let mut index = 0;
                emit_components(&lts, &expr, dir, &mut index)?;
            }
            Ok(())
        }
        None => {
            println!("no non-trivial articulation");
            Err(EXIT_UNSOLVABLE)
        }
    }
}

fn emit_components(
    lts: &Lts,
    expr: &petrisynth::articulation::ArticulationExpression,
    dir: &Path,
    index: &mut usize,
) -> Result<(), u8> {
    use petrisynth::articulation::{component_lts, ArticulationExpression};
    match expr {
        ArticulationExpression::Component { labels, root } => {
            let component = component_lts(lts, labels, *root);
            let path = dir.join(format!("component{index}.lts"));
            *index += 1;
            fs::write(&path, emit_lts(&component)).map_err(|_| EXIT_INPUT)
        }
        ArticulationExpression::Joint { left, right, .. } => {
            emit_components(lts, left, dir, index)?;
            emit_components(lts, right, dir, index)
        }
    }
}

fn run_rg(input: &Path, output: &Option<PathBuf>, max_states: usize) -> Result<(), u8> {
    let text = fs::read_to_string(input).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", input.display());
        EXIT_INPUT
    })?;
    let net = parse_pn(&text).map_err(|e| {
        eprintln!("error: {}: {e}", input.display());
        EXIT_INPUT
    })?;
    match net.reachability_graph(max_states) {
        Ok(rg) => {
            println!("{} states, {} arcs", rg.num_states(), rg.num_arcs());
            write_or_print(output, &emit_lts(&rg))
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(resource_exit(&e))
        }
    }
}

fn run_bench_cmd(
    family: &str,
    component: &Path,
    max_n: usize,
    reps: usize,
    csv: &Path,
    strategies: &Option<Vec<String>>,
) -> Result<(), u8> {
    let Some(family) = Family::parse(family) else {
        eprintln!("error: unknown family {family:?} (star, daisy, caterpillar, product_power)");
        return Err(EXIT_INPUT);
    };
    let component = load_lts(component, false)?;
    let strategies: Vec<Strategy> = match strategies {
        None => vec![Strategy::Mono, Strategy::Mixed],
        Some(names) => {
            let mut out = Vec::new();
            for name in names {
                let Some(s) = Strategy::parse(name) else {
                    eprintln!("error: unknown strategy {name:?}");
                    return Err(EXIT_INPUT);
                };
                out.push(s);
            }
            out
        }
    };
    let spec = FamilySpec { family, component, n: max_n, attach: None };
    let records = bench::run_bench(&spec, &strategies, reps);
    for r in &records {
        println!(
            "{} n={} states={} {}: {} ms (verified: {})",
            r.family, r.n, r.states, r.strategy, r.elapsed_ms, r.verified
        );
    }
    fs::write(csv, bench::records_to_csv(&records)).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", csv.display());
        EXIT_INPUT
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth { input, output, strategy, verify, max_states, strip_useless } => {
            run_synth(input, output, *strategy, *verify, *max_states, *strip_useless)
        }
        Command::Decompose { input, prefer_articulation } => {
            run_decompose(input, *prefer_articulation)
        }
        Command::Factorize { input, emit_dir } => run_factorize(input, emit_dir),
        Command::Articulate { input, emit_dir } => run_articulate(input, emit_dir),
        Command::Rg { input, output, max_states } => run_rg(input, output, *max_states),
        Command::Bench { family, component, max_n, reps, csv, strategies } => {
            run_bench_cmd(family, component, *max_n, *reps, csv, strategies)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
