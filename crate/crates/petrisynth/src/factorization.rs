//! Product decomposition: general-diamond checking, the classes of
//! non-diamondisable labels, factor extraction and factorized synthesis.

use std::collections::BTreeSet;
use std::time::Instant;

use thiserror::Error;

use crate::lts::{self, LabelId, Lts, Mode, SignedLabel};
use crate::petri::{self};
use crate::synthesis::{presynthesis, synthesize, Outcome, SynthesisReport, Witness};

/// Disjoint non-empty label blocks covering the label set; blocks are kept
/// sorted by their alphabetically smallest label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPartition {
    pub blocks: Vec<BTreeSet<LabelId>>,
}

impl LabelPartition {
    pub fn singletons(lts: &Lts) -> LabelPartition {
        let mut blocks: Vec<BTreeSet<LabelId>> = lts
            .labels()
            .map(|l| [l].into_iter().collect())
            .collect();
        sort_blocks(lts, &mut blocks);
        LabelPartition { blocks }
    }

    pub fn single_block(lts: &Lts) -> LabelPartition {
        LabelPartition {
            blocks: vec![lts.labels().collect()],
        }
    }

    pub fn render(&self, lts: &Lts) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let mut names: Vec<&str> = b.iter().map(|&l| lts.label_name(l)).collect();
                names.sort_unstable();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        format!("{{{}}}", blocks.join(", "))
    }
}

pub(crate) fn sort_blocks(lts: &Lts, blocks: &mut [BTreeSet<LabelId>]) {
    blocks.sort_by_key(|b| {
        b.iter()
            .map(|&l| lts.label_name(l).to_string())
            .min()
            .expect("blocks are non-empty")
    });
}

/// Why the input is not a product of its label-class restrictions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotAProduct {
    #[error("product of factors would have {expected} states, input has {actual}")]
    StateCount { expected: usize, actual: usize },
    #[error("product of factors is not isomorphic to the input")]
    NotIsomorphic,
}

/// Signed edges incident to a state: the label together with the state on
/// the other end.
fn incident_edges(lts: &Lts, s: crate::lts::StateId) -> Vec<(SignedLabel, crate::lts::StateId)> {
    let mut edges = Vec::new();
    for a in lts.arcs_from(s) {
        edges.push((SignedLabel::forward(a.label), a.target));
    }
    for a in lts.arcs_into(s) {
        edges.push((SignedLabel::reverse(a.label), a.source));
    }
    edges
}

fn diamond_closes(
    lts: &Lts,
    s1: crate::lts::StateId,
    v: SignedLabel,
    s2: crate::lts::StateId,
    u: SignedLabel,
) -> bool {
    let from_s1: BTreeSet<_> = lts.signed_steps(s1, v).into_iter().collect();
    if from_s1.is_empty() {
        return false;
    }
    lts.signed_steps(s2, u)
        .into_iter()
        .any(|s| from_s1.contains(&s))
}

/// Unordered label pairs that fail the general diamond property somewhere:
/// for every state with two incident signed edges over distinct labels, the
/// two closing edges must exist.
pub fn gdiam_violations(lts: &Lts) -> BTreeSet<(LabelId, LabelId)> {
    let mut violations = BTreeSet::new();
    for s in lts.states() {
        let edges = incident_edges(lts, s);
        for (i, &(u, s1)) in edges.iter().enumerate() {
            for &(v, s2) in edges.iter().skip(i + 1) {
                if u.label == v.label {
                    continue;
                }
                let key = if u.label < v.label {
                    (u.label, v.label)
                } else {
                    (v.label, u.label)
                };
                if violations.contains(&key) {
                    continue;
                }
                if !diamond_closes(lts, s1, v, s2, u) {
                    violations.insert(key);
                }
            }
        }
    }
    violations
}

/// Finest label partition closed under the "no general diamond" relation.
/// The scan stops as soon as a single class remains.
pub fn label_classes(lts: &Lts) -> LabelPartition {
    let n = lts.num_labels();
    if n == 0 {
        return LabelPartition { blocks: Vec::new() };
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut classes = n;
    'scan: for s in lts.states() {
        let edges = incident_edges(lts, s);
        for (i, &(u, s1)) in edges.iter().enumerate() {
            for &(v, s2) in edges.iter().skip(i + 1) {
                if u.label == v.label {
                    continue;
                }
                let ru = find(&mut parent, u.label.0);
                let rv = find(&mut parent, v.label.0);
                if ru == rv {
                    continue;
                }
                if !diamond_closes(lts, s1, v, s2, u) {
                    parent[ru] = rv;
                    classes -= 1;
                    if classes == 1 {
                        break 'scan;
                    }
                }
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, BTreeSet<LabelId>> = Default::default();
    for l in 0..n {
        let root = find(&mut parent, l);
        by_root.entry(root).or_default().insert(LabelId(l));
    }
    let mut blocks: Vec<BTreeSet<LabelId>> = by_root.into_values().collect();
    sort_blocks(lts, &mut blocks);
    LabelPartition { blocks }
}

/// One directed restriction per label class. With a single class the input
/// itself is the only factor. With several classes, the product of the
/// restrictions must reproduce the input; a mismatch certifies that the
/// whole system has no solution.
pub fn factor(lts: &Lts) -> Result<Vec<Lts>, NotAProduct> {
    let classes = label_classes(lts);
    if classes.blocks.len() <= 1 {
        return Ok(vec![lts.clone()]);
    }
    let factors: Vec<Lts> = classes
        .blocks
        .iter()
        .map(|block| lts.restrict(block, Mode::Directed))
        .collect();
    let expected: usize = factors.iter().map(|f| f.num_states()).product();
    if expected != lts.num_states() {
        return Err(NotAProduct::StateCount {
            expected,
            actual: lts.num_states(),
        });
    }
    let mut combined = factors[0].clone();
    for f in &factors[1..] {
        combined = lts::product(&combined, f).expect("classes are disjoint");
    }
    match lts::are_isomorphic(&combined, lts) {
        Ok(Some(_)) => Ok(factors),
        _ => Err(NotAProduct::NotIsomorphic),
    }
}

/// Per-state coordinates in the factors: follows one path per state and
/// replays its per-class projections inside each factor.
pub fn factor_coordinates(lts: &Lts, factors: &[Lts]) -> Vec<Vec<crate::lts::StateId>> {
    let mut coord: Vec<Option<Vec<crate::lts::StateId>>> = vec![None; lts.num_states()];
    coord[lts.initial().0] = Some(factors.iter().map(|f| f.initial()).collect());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(lts.initial());
    while let Some(s) = queue.pop_front() {
        for arc in lts.arcs_from(s) {
            if coord[arc.target.0].is_some() {
                continue;
            }
            let mut c = coord[s.0].clone().expect("visited");
            let name = lts.label_name(arc.label);
            let (i, f) = factors
                .iter()
                .enumerate()
                .find(|(_, f)| f.label_id(name).is_some())
                .expect("classes cover the labels");
            let l = f.label_id(name).expect("just found");
            c[i] = f.step(c[i], l).expect("factor follows the projection");
            coord[arc.target.0] = Some(c);
            queue.push_back(arc.target);
        }
    }
    coord
        .into_iter()
        .map(|c| c.expect("totally reachable"))
        .collect()
}

/// Synthesizes every factor separately and combines the solutions as a
/// disjoint sum.
pub fn synthesize_factorized(lts: &Lts) -> SynthesisReport {
    let start = Instant::now();
    if let Err(check) = presynthesis(lts) {
        return SynthesisReport {
            outcome: Outcome::Rejected(check),
            regions_used: 0,
            problems_reused: 0,
            elapsed_ms: start.elapsed().as_millis(),
        };
    }
    let factors = match factor(lts) {
        Ok(factors) => factors,
        Err(mismatch) => {
            let witness = match mismatch {
                NotAProduct::StateCount { expected, actual } => {
                    Witness::ProductStateCount { expected, actual }
                }
                NotAProduct::NotIsomorphic => Witness::ProductNotIsomorphic,
            };
            return SynthesisReport {
                outcome: Outcome::Unsolvable(witness),
                regions_used: 0,
                problems_reused: 0,
                elapsed_ms: start.elapsed().as_millis(),
            };
        }
    };
    let mut regions_used = 0;
    let mut problems_reused = 0;
    let mut nets = Vec::new();
    for f in &factors {
        let report = synthesize(f);
        regions_used += report.regions_used;
        problems_reused += report.problems_reused;
        match report.outcome {
            Outcome::Solved(net) => nets.push(net),
            other => {
                return SynthesisReport {
                    outcome: other,
                    regions_used,
                    problems_reused,
                    elapsed_ms: start.elapsed().as_millis(),
                }
            }
        }
    }
    let mut net = nets.remove(0);
    for other in nets {
        net = petri::disjoint_sum(&net, &other).expect("factors have disjoint labels");
    }
    SynthesisReport {
        outcome: Outcome::Solved(net),
        regions_used,
        problems_reused,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
