//! Finite labelled transition systems with an initial state.
//!
//! States and labels are interned symbols; arcs form a set of
//! (source, label, target) triples. Arcs are indexed both by source and by
//! target so that reverse traversal costs the same as forward traversal.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Index of a state inside its owning [`Lts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

/// Index of a label inside its owning [`Lts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub usize);

/// One labelled edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub source: StateId,
    pub label: LabelId,
    pub target: StateId,
}

/// A label with a direction flag; `reversed` means the arc is taken backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedLabel {
    pub label: LabelId,
    pub reversed: bool,
}

impl SignedLabel {
    pub fn forward(label: LabelId) -> Self {
        SignedLabel { label, reversed: false }
    }

    pub fn reverse(label: LabelId) -> Self {
        SignedLabel { label, reversed: true }
    }

    pub fn inverse(self) -> Self {
        SignedLabel { label: self.label, reversed: !self.reversed }
    }
}

/// A sequence of signed labels (a general path description).
pub type GeneralWord = Vec<SignedLabel>;

/// Signed occurrence counts, indexed by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhVector(pub Vec<i64>);

impl ParikhVector {
    pub fn zero(num_labels: usize) -> Self {
        ParikhVector(vec![0; num_labels])
    }

    pub fn get(&self, label: LabelId) -> i64 {
        self.0[label.0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Traversal direction for reachability queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Follow forward arcs only.
    Directed,
    /// Follow arcs in both directions.
    General,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LtsError {
    #[error("label sets overlap on {0:?}")]
    LabelOverlap(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate arc ({0} {1} {2})")]
    DuplicateArc(String, String, String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(&'static str),
}

/// A finite labelled transition system with initial state.
#[derive(Debug, Clone)]
pub struct Lts {
    states: Vec<String>,
    labels: Vec<String>,
    arcs: Vec<Arc>,
    initial: StateId,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
    state_index: HashMap<String, StateId>,
    label_index: HashMap<String, LabelId>,
}

/// Incremental construction of an [`Lts`]; states and labels are interned in
/// first-mention order (the discovery order used everywhere downstream).
#[derive(Debug, Default)]
pub struct LtsBuilder {
    states: Vec<String>,
    labels: Vec<String>,
    arcs: Vec<(StateId, LabelId, StateId)>,
    arc_set: BTreeSet<(usize, usize, usize)>,
    initial: Option<StateId>,
    state_index: HashMap<String, StateId>,
    label_index: HashMap<String, LabelId>,
}

impl LtsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.state_index.get(name) {
            return id;
        }
        let id = StateId(self.states.len());
        self.states.push(name.to_string());
        self.state_index.insert(name.to_string(), id);
        id
    }

    pub fn label(&mut self, name: &str) -> LabelId {
        if let Some(&id) = self.label_index.get(name) {
            return id;
        }
        let id = LabelId(self.labels.len());
        self.labels.push(name.to_string());
        self.label_index.insert(name.to_string(), id);
        id
    }

    pub fn initial(&mut self, name: &str) -> &mut Self {
        let id = self.state(name);
        self.initial = Some(id);
        self
    }

    pub fn arc(&mut self, source: &str, label: &str, target: &str) -> Result<&mut Self, LtsError> {
        let s = self.state(source);
        let l = self.label(label);
        let t = self.state(target);
        if !self.arc_set.insert((s.0, l.0, t.0)) {
            return Err(LtsError::DuplicateArc(
                source.to_string(),
                label.to_string(),
                target.to_string(),
            ));
        }
        self.arcs.push((s, l, t));
        Ok(self)
    }

    pub fn build(self) -> Lts {
        let initial = self.initial.expect("initial state must be set");
        let mut by_source = vec![Vec::new(); self.states.len()];
        let mut by_target = vec![Vec::new(); self.states.len()];
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .map(|&(source, label, target)| Arc { source, label, target })
            .collect();
        for (i, arc) in arcs.iter().enumerate() {
            by_source[arc.source.0].push(i);
            by_target[arc.target.0].push(i);
        }
        Lts {
            states: self.states,
            labels: self.labels,
            arcs,
            initial,
            by_source,
            by_target,
            state_index: self.state_index,
            label_index: self.label_index,
        }
    }
}

impl Lts {
    /// Single state, no labels, no arcs.
    pub fn trivial(state_name: &str) -> Lts {
        let mut b = LtsBuilder::new();
        b.initial(state_name);
        b.build()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).map(StateId)
    }

    pub fn labels(&self) -> impl Iterator<Item = LabelId> + '_ {
        (0..self.labels.len()).map(LabelId)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.labels[l.0]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.label_index.get(name).copied()
    }

    pub fn label_names(&self) -> BTreeSet<String> {
        self.labels.iter().cloned().collect()
    }

    pub fn arcs_from(&self, s: StateId) -> impl Iterator<Item = &Arc> + '_ {
        self.by_source[s.0].iter().map(move |&i| &self.arcs[i])
    }

    pub fn arcs_into(&self, s: StateId) -> impl Iterator<Item = &Arc> + '_ {
        self.by_target[s.0].iter().map(move |&i| &self.arcs[i])
    }

    /// Unique forward step, if any (meaningful on deterministic systems).
    pub fn step(&self, s: StateId, label: LabelId) -> Option<StateId> {
        self.arcs_from(s).find(|a| a.label == label).map(|a| a.target)
    }

    /// Unique backward step, if any.
    pub fn step_back(&self, s: StateId, label: LabelId) -> Option<StateId> {
        self.arcs_into(s).find(|a| a.label == label).map(|a| a.source)
    }

    /// All one-step successors following a signed label.
    pub fn signed_steps(&self, s: StateId, sl: SignedLabel) -> Vec<StateId> {
        if sl.reversed {
            self.arcs_into(s)
                .filter(|a| a.label == sl.label)
                .map(|a| a.source)
                .collect()
        } else {
            self.arcs_from(s)
                .filter(|a| a.label == sl.label)
                .map(|a| a.target)
                .collect()
        }
    }

    /// True iff the label occurs as a self-loop on the given state.
    pub fn has_loop(&self, s: StateId, label: LabelId) -> bool {
        self.arcs_from(s).any(|a| a.label == label && a.target == s)
    }

    /// Forward and backward determinism.
    pub fn is_deterministic(&self) -> bool {
        for s in self.states() {
            let mut out = BTreeSet::new();
            for a in self.arcs_from(s) {
                if !out.insert(a.label) {
                    return false;
                }
            }
            let mut inc = BTreeSet::new();
            for a in self.arcs_into(s) {
                if !inc.insert(a.label) {
                    return false;
                }
            }
        }
        true
    }

    /// Forward determinism only (used to name the failed pre-synthesis check).
    pub fn is_forward_deterministic(&self) -> bool {
        for s in self.states() {
            let mut out = BTreeSet::new();
            for a in self.arcs_from(s) {
                if !out.insert(a.label) {
                    return false;
                }
            }
        }
        true
    }

    /// Backward determinism only.
    pub fn is_backward_deterministic(&self) -> bool {
        for s in self.states() {
            let mut inc = BTreeSet::new();
            for a in self.arcs_into(s) {
                if !inc.insert(a.label) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_totally_reachable(&self) -> bool {
        let all: BTreeSet<LabelId> = self.labels().collect();
        self.reachable(self.initial, &all, Mode::Directed).len() == self.num_states()
    }

    /// States reachable from `from` using only arcs labelled in `restrict`.
    pub fn reachable(
        &self,
        from: StateId,
        restrict: &BTreeSet<LabelId>,
        mode: Mode,
    ) -> BTreeSet<StateId> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(from);
        queue.push_back(from);
        while let Some(s) = queue.pop_front() {
            for a in self.arcs_from(s) {
                if restrict.contains(&a.label) && seen.insert(a.target) {
                    queue.push_back(a.target);
                }
            }
            if mode == Mode::General {
                for a in self.arcs_into(s) {
                    if restrict.contains(&a.label) && seen.insert(a.source) {
                        queue.push_back(a.source);
                    }
                }
            }
        }
        seen
    }

    /// Sub-LTS induced by the states reachable from the initial state within
    /// the label subset. The label set of the result is exactly `labels`.
    pub fn restrict(&self, labels: &BTreeSet<LabelId>, mode: Mode) -> Lts {
        let keep = self.reachable(self.initial, labels, mode);
        let mut b = LtsBuilder::new();
        b.initial(self.state_name(self.initial));
        for &s in &keep {
            b.state(self.state_name(s));
        }
        let mut label_names: Vec<&str> = labels.iter().map(|&l| self.label_name(l)).collect();
        label_names.sort_unstable();
        for name in label_names {
            b.label(name);
        }
        for a in &self.arcs {
            if labels.contains(&a.label) && keep.contains(&a.source) && keep.contains(&a.target) {
                b.arc(
                    self.state_name(a.source),
                    self.label_name(a.label),
                    self.state_name(a.target),
                )
                .expect("source arcs are a set");
            }
        }
        b.build()
    }

    /// Restriction to the sub-LTS spanned by an explicit state set, keeping
    /// only arcs labelled in `labels`. Initial state is `root`.
    pub fn restrict_to_states(
        &self,
        states: &BTreeSet<StateId>,
        labels: &BTreeSet<LabelId>,
        root: StateId,
    ) -> Lts {
        let mut b = LtsBuilder::new();
        b.initial(self.state_name(root));
        for &s in states {
            b.state(self.state_name(s));
        }
        let mut label_names: Vec<&str> = labels.iter().map(|&l| self.label_name(l)).collect();
        label_names.sort_unstable();
        for name in label_names {
            b.label(name);
        }
        for a in &self.arcs {
            if labels.contains(&a.label) && states.contains(&a.source) && states.contains(&a.target)
            {
                b.arc(
                    self.state_name(a.source),
                    self.label_name(a.label),
                    self.state_name(a.target),
                )
                .expect("source arcs are a set");
            }
        }
        b.build()
    }

    /// Signed occurrence counts of a word: count(t) minus count(-t).
    pub fn parikh(&self, word: &GeneralWord) -> ParikhVector {
        let mut v = ParikhVector::zero(self.num_labels());
        for sl in word {
            if sl.reversed {
                v.0[sl.label.0] -= 1;
            } else {
                v.0[sl.label.0] += 1;
            }
        }
        v
    }

    /// Labels occurring on at least one arc.
    pub fn useful_labels(&self) -> BTreeSet<LabelId> {
        self.arcs.iter().map(|a| a.label).collect()
    }

    /// States incident to an arc labelled in the subset; `{initial}` when the
    /// subset is empty or contains only useless labels.
    pub fn adjacency(&self, labels: &BTreeSet<LabelId>) -> BTreeSet<StateId> {
        let mut adj = BTreeSet::new();
        for a in &self.arcs {
            if labels.contains(&a.label) {
                adj.insert(a.source);
                adj.insert(a.target);
            }
        }
        if adj.is_empty() {
            adj.insert(self.initial);
        }
        adj
    }

    /// Replays a forward word from a state, if every step exists.
    pub fn replay(&self, from: StateId, word: &[LabelId]) -> Option<StateId> {
        let mut cur = from;
        for &l in word {
            cur = self.step(cur, l)?;
        }
        Some(cur)
    }
}

impl fmt::Display for Lts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lts({} states, {} labels, {} arcs)",
            self.num_states(),
            self.num_labels(),
            self.num_arcs()
        )
    }
}

/// Picks a fresh name: `base` itself if unused, else `base` plus the lowest
/// unused numeric suffix.
pub(crate) fn fresh_name(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    for i in 0.. {
        let candidate = format!("{base}{i}");
        if !taken(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Disjoint product of two label-disjoint systems (full Cartesian state set).
pub fn product(a: &Lts, b: &Lts) -> Result<Lts, LtsError> {
    for l in b.labels() {
        if a.label_id(b.label_name(l)).is_some() {
            return Err(LtsError::LabelOverlap(b.label_name(l).to_string()));
        }
    }
    let mut b_out = LtsBuilder::new();
    let mut names: HashMap<(usize, usize), String> = HashMap::new();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for sa in a.states() {
        for sb in b.states() {
            let base = format!("{}_{}", a.state_name(sa), b.state_name(sb));
            let name = fresh_name(&base, &|n: &str| taken.contains(n));
            taken.insert(name.clone());
            names.insert((sa.0, sb.0), name);
        }
    }
    b_out.initial(&names[&(a.initial().0, b.initial().0)]);
    for sa in a.states() {
        for sb in b.states() {
            b_out.state(&names[&(sa.0, sb.0)]);
        }
    }
    for l in a.labels() {
        b_out.label(a.label_name(l));
    }
    for l in b.labels() {
        b_out.label(b.label_name(l));
    }
    for arc in a.arcs() {
        for sb in b.states() {
            b_out
                .arc(
                    &names[&(arc.source.0, sb.0)],
                    a.label_name(arc.label),
                    &names[&(arc.target.0, sb.0)],
                )
                .expect("product arcs are distinct");
        }
    }
    for arc in b.arcs() {
        for sa in a.states() {
            b_out
                .arc(
                    &names[&(sa.0, arc.source.0)],
                    b.label_name(arc.label),
                    &names[&(sa.0, arc.target.0)],
                )
                .expect("product arcs are distinct");
        }
    }
    Ok(b_out.build())
}

/// Articulation: plugs `b` onto state `s` of `a`, identifying `b`'s initial
/// state with `s`. Clashing names on `b`'s side get the lowest unused numeric
/// suffix.
pub fn articulate(a: &Lts, s: StateId, b: &Lts) -> Result<Lts, LtsError> {
    if s.0 >= a.num_states() {
        return Err(LtsError::UnknownState(format!("#{}", s.0)));
    }
    for l in b.labels() {
        if a.label_id(b.label_name(l)).is_some() {
            return Err(LtsError::LabelOverlap(b.label_name(l).to_string()));
        }
    }
    let mut out = LtsBuilder::new();
    out.initial(a.state_name(a.initial()));
    for st in a.states() {
        out.state(a.state_name(st));
    }
    for l in a.labels() {
        out.label(a.label_name(l));
    }
    for l in b.labels() {
        out.label(b.label_name(l));
    }
    // Rename b's states: initial maps onto s, the rest keep their name unless
    // it clashes with a name already present.
    let mut rename: HashMap<usize, String> = HashMap::new();
    let mut taken: BTreeSet<String> =
        a.states().map(|st| a.state_name(st).to_string()).collect();
    rename.insert(b.initial().0, a.state_name(s).to_string());
    for sb in b.states() {
        if sb == b.initial() {
            continue;
        }
        let name = fresh_name(b.state_name(sb), &|n: &str| taken.contains(n));
        taken.insert(name.clone());
        rename.insert(sb.0, name);
    }
    for sb in b.states() {
        out.state(&rename[&sb.0]);
    }
    for arc in a.arcs() {
        out.arc(
            a.state_name(arc.source),
            a.label_name(arc.label),
            a.state_name(arc.target),
        )
        .expect("left arcs are a set");
    }
    for arc in b.arcs() {
        out.arc(
            &rename[&arc.source.0],
            b.label_name(arc.label),
            &rename[&arc.target.0],
        )
        .expect("label-disjoint arcs cannot clash");
    }
    Ok(out.build())
}

/// Label-preserving bijection between two state sets.
#[derive(Debug, Clone)]
pub struct StateBijection {
    /// Pairs (state of `a`, state of `b`), indexed by the state of `a`.
    pub forward: Vec<StateId>,
}

impl StateBijection {
    pub fn map(&self, s: StateId) -> StateId {
        self.forward[s.0]
    }

    pub fn invert(&self) -> StateBijection {
        let mut forward = vec![StateId(0); self.forward.len()];
        for (i, &t) in self.forward.iter().enumerate() {
            forward[t.0] = StateId(i);
        }
        StateBijection { forward }
    }

    pub fn compose(&self, then: &StateBijection) -> StateBijection {
        StateBijection {
            forward: self.forward.iter().map(|&m| then.map(m)).collect(),
        }
    }
}

/// Label-preserving isomorphism test by synchronized breadth-first traversal.
///
/// Both systems must be deterministic and totally reachable; under those
/// assumptions the traversal either produces the unique candidate bijection or
/// proves none exists.
pub fn are_isomorphic(a: &Lts, b: &Lts) -> Result<Option<StateBijection>, LtsError> {
    for (name, lts) in [("left", a), ("right", b)] {
        if !lts.is_deterministic() {
            let _ = name;
            return Err(LtsError::UnsupportedInput("non-deterministic input"));
        }
        if !lts.is_totally_reachable() {
            return Err(LtsError::UnsupportedInput("input not totally reachable"));
        }
    }
    if a.num_states() != b.num_states()
        || a.num_arcs() != b.num_arcs()
        || a.label_names() != b.label_names()
    {
        return Ok(None);
    }
    let label_map: Vec<LabelId> = (0..a.num_labels())
        .map(|l| b.label_id(a.label_name(LabelId(l))).expect("same label sets"))
        .collect();

    let mut map: Vec<Option<StateId>> = vec![None; a.num_states()];
    let mut image_used = vec![false; b.num_states()];
    map[a.initial().0] = Some(b.initial());
    image_used[b.initial().0] = true;
    let mut queue = VecDeque::new();
    queue.push_back(a.initial());
    while let Some(sa) = queue.pop_front() {
        let sb = map[sa.0].expect("queued states are mapped");
        let mut out_a: Vec<(LabelId, StateId)> =
            a.arcs_from(sa).map(|arc| (arc.label, arc.target)).collect();
        let mut out_b: Vec<(LabelId, StateId)> =
            b.arcs_from(sb).map(|arc| (arc.label, arc.target)).collect();
        if out_a.len() != out_b.len() {
            return Ok(None);
        }
        out_a.sort_by_key(|&(l, _)| label_map[l.0]);
        out_b.sort_by_key(|&(l, _)| l);
        for (&(la, ta), &(lb, tb)) in out_a.iter().zip(out_b.iter()) {
            if label_map[la.0] != lb {
                return Ok(None);
            }
            match map[ta.0] {
                Some(t) => {
                    if t != tb {
                        return Ok(None);
                    }
                }
                None => {
                    if image_used[tb.0] {
                        return Ok(None);
                    }
                    map[ta.0] = Some(tb);
                    image_used[tb.0] = true;
                    queue.push_back(ta);
                }
            }
        }
    }
    // Totally reachable, equal counts: the traversal covered everything and
    // forward arcs matched one-to-one; backward determinism of both sides
    // makes the incoming arcs match as well.
    let forward: Vec<StateId> = map.into_iter().map(|m| m.expect("total")).collect();
    Ok(Some(StateBijection { forward }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn signed(lts: &Lts, spec: &[(&str, bool)]) -> GeneralWord {
        spec.iter()
            .map(|&(name, reversed)| SignedLabel {
                label: lts.label_id(name).unwrap(),
                reversed,
            })
            .collect()
    }

    #[test]
    fn determinism_flags() {
        assert!(fixtures::grid6().is_deterministic());
        let left = fixtures::fig7_left();
        assert!(left.is_forward_deterministic());
        assert!(!left.is_backward_deterministic());
        let right = fixtures::fig7_right();
        assert!(!right.is_forward_deterministic());
        assert!(Lts::trivial("s").is_deterministic());
    }

    #[test]
    fn total_reachability() {
        assert!(fixtures::ts21().is_totally_reachable());
        assert!(fixtures::chain_bb().is_totally_reachable());
        let mut b = LtsBuilder::new();
        b.initial("i");
        b.arc("i", "a", "s").unwrap();
        b.state("island");
        assert!(!b.build().is_totally_reachable());
    }

    #[test]
    fn reachable_sets() {
        let grid = fixtures::grid6();
        let a = grid.label_id("a").unwrap();
        let only_a: BTreeSet<_> = [a].into_iter().collect();
        let got = grid.reachable(grid.initial(), &only_a, Mode::Directed);
        let names: BTreeSet<&str> = got.iter().map(|&s| grid.state_name(s)).collect();
        assert_eq!(names, ["0_i", "1_i"].into_iter().collect());

        let empty = BTreeSet::new();
        assert_eq!(
            grid.reachable(grid.initial(), &empty, Mode::Directed),
            [grid.initial()].into_iter().collect()
        );

        let bigfix = fixtures::bigfix();
        let ab: BTreeSet<_> = ["a", "b"]
            .iter()
            .map(|n| bigfix.label_id(n).unwrap())
            .collect();
        let got = bigfix.reachable(bigfix.initial(), &ab, Mode::Directed);
        let names: BTreeSet<&str> = got.iter().map(|&s| bigfix.state_name(s)).collect();
        assert_eq!(names, ["i", "s1"].into_iter().collect());
    }

    #[test]
    fn restriction() {
        let grid = fixtures::grid6();
        let a: BTreeSet<_> = [grid.label_id("a").unwrap()].into_iter().collect();
        let restricted = grid.restrict(&a, Mode::Directed);
        assert!(are_isomorphic(&restricted, &fixtures::chain_a())
            .unwrap()
            .is_some());

        let all: BTreeSet<_> = grid.labels().collect();
        let full = grid.restrict(&all, Mode::Directed);
        assert!(are_isomorphic(&full, &grid).unwrap().is_some());

        let bigfix = fixtures::bigfix();
        let cde: BTreeSet<_> = ["c", "d", "e"]
            .iter()
            .map(|n| bigfix.label_id(n).unwrap())
            .collect();
        let r = bigfix.restrict(&cde, Mode::Directed);
        assert_eq!(r.num_states(), 1);
        assert_eq!(r.num_arcs(), 0);
        assert_eq!(r.state_name(r.initial()), "i");
    }

    #[test]
    fn parikh_counts() {
        let grid = fixtures::grid6();
        let w = signed(&grid, &[("a", false), ("b", false), ("a", true)]);
        let v = grid.parikh(&w);
        assert_eq!(v.get(grid.label_id("a").unwrap()), 0);
        assert_eq!(v.get(grid.label_id("b").unwrap()), 1);
        assert!(grid.parikh(&Vec::new()).is_zero());
        let w = signed(&grid, &[("a", false), ("a", false), ("b", true)]);
        let v = grid.parikh(&w);
        assert_eq!(v.get(grid.label_id("a").unwrap()), 2);
        assert_eq!(v.get(grid.label_id("b").unwrap()), -1);
    }

    #[test]
    fn parikh_of_word_and_its_inverse_is_zero() {
        let grid = fixtures::grid6();
        let w = signed(&grid, &[("a", false), ("b", true), ("b", false), ("a", false)]);
        let mut round_trip = w.clone();
        round_trip.extend(w.iter().rev().map(|sl| sl.inverse()));
        assert!(grid.parikh(&round_trip).is_zero());
    }

    #[test]
    fn product_matches_grid() {
        let p = product(&fixtures::chain_a(), &fixtures::chain_bb()).unwrap();
        assert_eq!(p.num_states(), 6);
        assert_eq!(p.num_arcs(), 7);
        assert!(are_isomorphic(&p, &fixtures::grid6()).unwrap().is_some());
    }

    #[test]
    fn product_neutral_and_symmetry() {
        let a = fixtures::chain_a();
        let neutral = Lts::trivial("n");
        let p = product(&a, &neutral).unwrap();
        assert!(are_isomorphic(&p, &a).unwrap().is_some());

        let ab = product(&fixtures::chain_a(), &fixtures::chain_bb()).unwrap();
        let ba = product(&fixtures::chain_bb(), &fixtures::chain_a()).unwrap();
        assert!(are_isomorphic(&ab, &ba).unwrap().is_some());
    }

    #[test]
    fn product_size_laws() {
        let a = fixtures::abc2();
        let b = fixtures::def2();
        let p = product(&a, &b).unwrap();
        assert_eq!(p.num_states(), a.num_states() * b.num_states());
        assert_eq!(
            p.num_arcs(),
            a.num_arcs() * b.num_states() + b.num_arcs() * a.num_states()
        );
    }

    #[test]
    fn product_rejects_label_overlap() {
        let a = fixtures::chain_a();
        assert_eq!(
            product(&a, &a).unwrap_err(),
            LtsError::LabelOverlap("a".to_string())
        );
    }

    #[test]
    fn articulation_fig9() {
        let abc2 = fixtures::abc2();
        let def2 = fixtures::def2();
        let s = abc2.state_id("s").unwrap();
        let ts3 = articulate(&abc2, s, &def2).unwrap();
        assert_eq!(ts3.num_states(), 3);
        assert_eq!(ts3.num_arcs(), 6);
        assert!(are_isomorphic(&ts3, &fixtures::fig9_ts3()).unwrap().is_some());

        let ts4 = articulate(&abc2, abc2.initial(), &def2).unwrap();
        assert!(are_isomorphic(&ts4, &fixtures::fig9_ts4()).unwrap().is_some());
    }

    #[test]
    fn articulation_right_neutral() {
        let abc2 = fixtures::abc2();
        let for_each_state: Vec<StateId> = abc2.states().collect();
        for s in for_each_state {
            let r = articulate(&abc2, s, &Lts::trivial("z")).unwrap();
            assert!(are_isomorphic(&r, &abc2).unwrap().is_some());
        }
    }

    #[test]
    fn articulation_commutes_at_initials() {
        let a = fixtures::abc2();
        let b = fixtures::def2();
        let left = articulate(&a, a.initial(), &b).unwrap();
        let right = articulate(&b, b.initial(), &a).unwrap();
        assert!(are_isomorphic(&left, &right).unwrap().is_some());
    }

    #[test]
    fn articulation_associativity_laws() {
        // Plain associativity on the three two-state components.
        let a = fixtures::abc2();
        let b = fixtures::def2();
        let c = fixtures::gh2();
        let s_a = a.state_id("s").unwrap();

        let inner = articulate(&b, b.state_id("s").unwrap(), &c).unwrap();
        let nested_right = articulate(&a, s_a, &inner).unwrap();

        let ab = articulate(&a, s_a, &b).unwrap();
        let s2_in_ab = ab.state_id("s0").unwrap(); // renamed copy of b's `s`
        let nested_left = articulate(&ab, s2_in_ab, &c).unwrap();
        assert!(are_isomorphic(&nested_right, &nested_left).unwrap().is_some());

        // Commutative associativity: both satellites plugged on states of `a`.
        let one = articulate(&articulate(&a, s_a, &b).unwrap(), ab.initial(), &c).unwrap();
        let other = {
            let ac = articulate(&a, a.initial(), &c).unwrap();
            articulate(&ac, ac.state_id("s").unwrap(), &b).unwrap()
        };
        assert!(are_isomorphic(&one, &other).unwrap().is_some());
    }

    #[test]
    fn adjacency_sets() {
        let bigfix = fixtures::bigfix();
        let ab: BTreeSet<_> = ["a", "b"]
            .iter()
            .map(|n| bigfix.label_id(n).unwrap())
            .collect();
        let names: BTreeSet<&str> = bigfix
            .adjacency(&ab)
            .iter()
            .map(|&s| bigfix.state_name(s))
            .collect();
        assert_eq!(names, ["i", "s1"].into_iter().collect());

        let ij: BTreeSet<_> = ["i", "j"]
            .iter()
            .map(|n| bigfix.label_id(n).unwrap())
            .collect();
        let names: BTreeSet<&str> = bigfix
            .adjacency(&ij)
            .iter()
            .map(|&s| bigfix.state_name(s))
            .collect();
        assert_eq!(names, ["s2", "s7"].into_iter().collect());

        assert_eq!(
            bigfix.adjacency(&BTreeSet::new()),
            [bigfix.initial()].into_iter().collect()
        );
    }

    #[test]
    fn useful_labels_excludes_unused() {
        let grid = fixtures::grid6();
        assert_eq!(grid.useful_labels().len(), 2);

        let mut b = LtsBuilder::new();
        b.initial("i");
        b.arc("i", "a", "s").unwrap();
        b.label("z");
        let lts = b.build();
        let useful: BTreeSet<&str> = lts
            .useful_labels()
            .iter()
            .map(|&l| lts.label_name(l))
            .collect();
        assert_eq!(useful, ["a"].into_iter().collect());

        assert!(Lts::trivial("s").useful_labels().is_empty());
    }

    #[test]
    fn isomorphism_is_an_equivalence() {
        let grid = fixtures::grid6();
        let id = are_isomorphic(&grid, &grid).unwrap().unwrap();
        for s in grid.states() {
            assert_eq!(id.map(s), s);
        }

        let p = product(&fixtures::chain_a(), &fixtures::chain_bb()).unwrap();
        let fwd = are_isomorphic(&p, &grid).unwrap().unwrap();
        let back = are_isomorphic(&grid, &p).unwrap().unwrap();
        let round = fwd.compose(&back);
        for s in p.states() {
            assert_eq!(round.map(s), s);
        }

        assert!(are_isomorphic(&fixtures::chain_a(), &fixtures::chain_bb())
            .unwrap()
            .is_none());
    }

    #[test]
    fn isomorphism_rejects_unsupported_inputs() {
        let err = are_isomorphic(&fixtures::fig7_right(), &fixtures::fig7_right()).unwrap_err();
        assert!(matches!(err, LtsError::UnsupportedInput(_)));
    }
}
