//! Generators for the articulation and product families, timing runs over
//! the synthesis strategies, predicted decomposition gains, and log-space
//! regression fits.

use std::time::Instant;

use thiserror::Error;

use crate::decomposer::synthesize_mixed;
use crate::factorization::synthesize_factorized;
use crate::articulation::synthesize_articulated;
use crate::lts::{self, Lts, LtsBuilder, StateId};
use crate::synthesis::{synthesize, verify, SynthesisReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// All copies articulated around the initial state.
    Star,
    /// Copies 2..n articulated around distinct non-initial states of copy 1,
    /// round-robin when there are more copies than anchor states.
    Daisy,
    /// Copy i+1 articulated on a designated non-initial state of copy i.
    Caterpillar,
    /// n-fold disjoint product.
    ProductPower,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Daisy => "daisy",
            Family::Caterpillar => "caterpillar",
            Family::ProductPower => "product_power",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "star" => Some(Family::Star),
            "daisy" => Some(Family::Daisy),
            "caterpillar" => Some(Family::Caterpillar),
            "product_power" | "product-power" => Some(Family::ProductPower),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub family: Family,
    pub component: Lts,
    pub n: usize,
    /// Anchor states (component names); defaults to the non-initial states
    /// in discovery order.
    pub attach: Option<Vec<String>>,
}

/// Copy of the component with every state and label name suffixed.
fn suffixed_copy(component: &Lts, index: usize) -> Lts {
    let mut b = LtsBuilder::new();
    let rename_state = |s: StateId| format!("{}_{index}", component.state_name(s));
    let rename_label = |l: crate::lts::LabelId| format!("{}_{index}", component.label_name(l));
    b.initial(&rename_state(component.initial()));
    for s in component.states() {
        b.state(&rename_state(s));
    }
    for l in component.labels() {
        b.label(&rename_label(l));
    }
    for arc in component.arcs() {
        b.arc(
            &rename_state(arc.source),
            &rename_label(arc.label),
            &rename_state(arc.target),
        )
        .expect("copies keep arcs distinct");
    }
    b.build()
}

fn anchor_names(spec: &FamilySpec) -> Vec<String> {
    if let Some(attach) = &spec.attach {
        return attach.clone();
    }
    spec.component
        .states()
        .filter(|&s| s != spec.component.initial())
        .map(|s| spec.component.state_name(s).to_string())
        .collect()
}

/// Instantiates the family. Articulation families have `|S| * n - n + 1`
/// states, the product family `|S| ^ n`.
pub fn generate(spec: &FamilySpec) -> Lts {
    assert!(spec.n >= 1, "families need at least one copy");
    if spec.n == 1 {
        return spec.component.clone();
    }
    let copies: Vec<Lts> = (1..=spec.n).map(|i| suffixed_copy(&spec.component, i)).collect();
    let anchors = anchor_names(spec);
    match spec.family {
        Family::ProductPower => {
            let mut acc = copies[0].clone();
            for c in &copies[1..] {
                acc = lts::product(&acc, c).expect("copies are label-disjoint");
            }
            acc
        }
        Family::Star => {
            let mut acc = copies[0].clone();
            let initial = acc.initial();
            for c in &copies[1..] {
                acc = lts::articulate(&acc, initial, c).expect("copies are label-disjoint");
            }
            acc
        }
        Family::Daisy => {
            assert!(
                !anchors.is_empty(),
                "daisy needs a non-initial anchor state"
            );
            let mut acc = copies[0].clone();
            for (k, c) in copies[1..].iter().enumerate() {
                let anchor = format!("{}_1", anchors[k % anchors.len()]);
                let s = acc.state_id(&anchor).expect("anchor names a copy-1 state");
                acc = lts::articulate(&acc, s, c).expect("copies are label-disjoint");
            }
            acc
        }
        Family::Caterpillar => {
            assert!(
                !anchors.is_empty(),
                "caterpillar needs a non-initial anchor state"
            );
            let mut acc = copies[0].clone();
            for (k, c) in copies[1..].iter().enumerate() {
                // Plug on the designated state of the previous copy; suffixed
                // names are unique, so they survive the articulation.
                let anchor = format!("{}_{}", anchors[k % anchors.len()], k + 1);
                let s = acc.state_id(&anchor).expect("anchor names a previous-copy state");
                acc = lts::articulate(&acc, s, c).expect("copies are label-disjoint");
            }
            acc
        }
    }
}

/// Expected speedup of a decomposition under a polynomial synthesis cost of
/// degree `h`: splitting into `k` factors gains about
/// `states^(h (1 - 1/k)) / k`, articulating into `k` components about
/// `k^(h-1)`.
pub fn predicted_gain(kind: Family, h: f64, k: u32, states: f64) -> f64 {
    assert!(h > 0.0 && k >= 1);
    let k = k as f64;
    match kind {
        Family::ProductPower => states.powf(h * (1.0 - 1.0 / k)) / k,
        _ => k.powf(h - 1.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Mono,
    Factor,
    Artic,
    Mixed,
    /// Synthesizes the n copies separately: the baseline a decomposition has
    /// to beat.
    ComponentSum,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Mono => "mono",
            Strategy::Factor => "factor",
            Strategy::Artic => "artic",
            Strategy::Mixed => "mixed",
            Strategy::ComponentSum => "per-component-sum",
        }
    }

    pub fn parse(name: &str) -> Option<Strategy> {
        match name {
            "mono" => Some(Strategy::Mono),
            "factor" => Some(Strategy::Factor),
            "artic" => Some(Strategy::Artic),
            "mixed" => Some(Strategy::Mixed),
            "per-component-sum" | "component-sum" => Some(Strategy::ComponentSum),
            _ => None,
        }
    }

    pub fn run(&self, lts: &Lts) -> SynthesisReport {
        match self {
            Strategy::Mono => synthesize(lts),
            Strategy::Factor => synthesize_factorized(lts),
            Strategy::Artic => synthesize_articulated(lts),
            Strategy::Mixed => synthesize_mixed(lts),
            Strategy::ComponentSum => unreachable!("handled per copy"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub states: usize,
    pub strategy: String,
    /// Median wall time over the repetitions, milliseconds.
    pub elapsed_ms: u128,
    pub repetitions: usize,
    pub verified: bool,
}

fn median(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

/// Times every strategy on every family size up to `spec.n`, verifying each
/// produced net. Synthesis failures are recorded as unverified rows rather
/// than aborting the sweep.
pub fn run_bench(spec: &FamilySpec, strategies: &[Strategy], repetitions: usize) -> Vec<BenchRecord> {
    assert!(repetitions >= 1);
    let mut records = Vec::new();
    for n in 1..=spec.n {
        let sized = FamilySpec { n, ..spec.clone() };
        let instance = generate(&sized);
        for &strategy in strategies {
            let mut samples = Vec::with_capacity(repetitions);
            let mut verified = true;
            for _ in 0..repetitions {
                if strategy == Strategy::ComponentSum {
                    let start = Instant::now();
                    let mut ok = true;
                    for i in 1..=n {
                        let copy = suffixed_copy(&spec.component, i);
                        let report = synthesize(&copy);
                        match report.solved_net() {
                            Some(net) => ok &= verify(net, &copy).unwrap_or(false),
                            None => ok = false,
                        }
                    }
                    samples.push(start.elapsed().as_millis());
                    verified &= ok;
                } else {
                    let start = Instant::now();
                    let report = strategy.run(&instance);
                    samples.push(start.elapsed().as_millis());
                    match report.solved_net() {
                        Some(net) => verified &= verify(net, &instance).unwrap_or(false),
                        None => verified = false,
                    }
                }
            }
            records.push(BenchRecord {
                family: spec.family.name().to_string(),
                n,
                states: instance.num_states(),
                strategy: strategy.name().to_string(),
                elapsed_ms: median(samples),
                repetitions,
                verified,
            });
        }
    }
    records
}

/// CSV rendering, header included, newline-terminated.
pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("family,n,states,strategy,elapsed_ms,verified\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.family, r.n, r.states, r.strategy, r.elapsed_ms, r.verified
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    /// y = a * x^b, fitted as log y = log a + b log x.
    Power,
    /// y = a * b^x, fitted as log y = log a + x log b.
    Exponential,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("degenerate data: need at least three positive points with distinct x")]
    DegenerateData,
}

/// Least squares in log space; returns the coefficient and the exponent
/// (power model) or base (exponential model).
pub fn fit(data: &[(f64, f64)], model: FitModel) -> Result<(f64, f64), FitError> {
    if data.len() < 3 || data.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(FitError::DegenerateData);
    }
    let points: Vec<(f64, f64)> = data
        .iter()
        .map(|&(x, y)| {
            let u = match model {
                FitModel::Power => x.ln(),
                FitModel::Exponential => x,
            };
            (u, y.ln())
        })
        .collect();
    let n = points.len() as f64;
    let su: f64 = points.iter().map(|p| p.0).sum();
    let sv: f64 = points.iter().map(|p| p.1).sum();
    let suu: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let suv: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * suu - su * su;
    if denom.abs() < 1e-12 {
        return Err(FitError::DegenerateData);
    }
    let slope = (n * suv - su * sv) / denom;
    let intercept = (sv - slope * su) / n;
    let coefficient = intercept.exp();
    let second = match model {
        FitModel::Power => slope,
        FitModel::Exponential => slope.exp(),
    };
    Ok((coefficient, second))
}
