//! Weighted place/transition nets with firing semantics.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::lts::{self, Lts, LtsBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(pub usize);

/// Token counts, one entry per place of the owning net.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Marking(pub Vec<u64>);

impl Marking {
    pub fn tokens(&self, p: PlaceId) -> u64 {
        self.0[p.0]
    }

    /// Componentwise less-or-equal and distinct.
    pub fn strictly_below(&self, other: &Marking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b) && self.0 != other.0
    }
}

/// True iff some marking in `others` strictly dominates `m`.
pub fn is_dominated(m: &Marking, others: &[Marking]) -> bool {
    others.iter().any(|o| m.strictly_below(o))
}

/// Signed token effect per (place, transition).
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    pub entries: Vec<Vec<i64>>, // [place][transition]
}

impl IncidenceMatrix {
    pub fn get(&self, p: PlaceId, t: TransitionId) -> i64 {
        self.entries[p.0][t.0]
    }
}

#[derive(Debug, Clone)]
pub struct UnboundedWitness {
    /// A reachable marking and a strictly larger marking reachable from it.
    pub from: Marking,
    pub to: Marking,
}

#[derive(Debug, Error)]
pub enum PnError {
    #[error("unknown transition {0:?}")]
    UnknownTransition(String),
    #[error("transition {0:?} is not enabled")]
    NotEnabled(String),
    #[error("net is unbounded: {0:?} covers {1:?}")]
    Unbounded(Vec<u64>, Vec<u64>),
    #[error("state cap of {0} states exceeded")]
    StateCapExceeded(usize),
    #[error("transition sets overlap on {0:?}")]
    TransitionOverlap(String),
    #[error("marking is dominated by another reachable marking")]
    NotAdequate,
    #[error("marking is not reachable")]
    Unreachable,
}

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A weighted place/transition net with initial marking.
#[derive(Debug, Clone)]
pub struct PetriNet {
    places: Vec<String>,
    transitions: Vec<String>,
    consume: Vec<Vec<u64>>, // [place][transition] = F(p, t)
    produce: Vec<Vec<u64>>, // [place][transition] = F(t, p)
    initial: Marking,
    place_index: HashMap<String, PlaceId>,
    transition_index: HashMap<String, TransitionId>,
}

#[derive(Debug, Default)]
pub struct PetriNetBuilder {
    places: Vec<String>,
    tokens: Vec<u64>,
    transitions: Vec<String>,
    consume: Vec<Vec<u64>>,
    produce: Vec<Vec<u64>>,
    place_index: HashMap<String, PlaceId>,
    transition_index: HashMap<String, TransitionId>,
}

impl PetriNetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(&mut self, name: &str, tokens: u64) -> PlaceId {
        if let Some(&id) = self.place_index.get(name) {
            self.tokens[id.0] = tokens;
            return id;
        }
        let id = PlaceId(self.places.len());
        self.places.push(name.to_string());
        self.tokens.push(tokens);
        self.consume.push(vec![0; self.transitions.len()]);
        self.produce.push(vec![0; self.transitions.len()]);
        self.place_index.insert(name.to_string(), id);
        id
    }

    pub fn transition(&mut self, name: &str) -> TransitionId {
        if let Some(&id) = self.transition_index.get(name) {
            return id;
        }
        let id = TransitionId(self.transitions.len());
        self.transitions.push(name.to_string());
        for row in &mut self.consume {
            row.push(0);
        }
        for row in &mut self.produce {
            row.push(0);
        }
        self.transition_index.insert(name.to_string(), id);
        id
    }

    /// Arc place -> transition.
    pub fn consume(&mut self, place: &str, transition: &str, weight: u64) -> Result<(), PnError> {
        let p = *self
            .place_index
            .get(place)
            .ok_or_else(|| PnError::UnknownTransition(place.to_string()))?;
        let t = *self
            .transition_index
            .get(transition)
            .ok_or_else(|| PnError::UnknownTransition(transition.to_string()))?;
        self.consume[p.0][t.0] = weight;
        Ok(())
    }

    /// Arc transition -> place.
    pub fn produce(&mut self, transition: &str, place: &str, weight: u64) -> Result<(), PnError> {
        let p = *self
            .place_index
            .get(place)
            .ok_or_else(|| PnError::UnknownTransition(place.to_string()))?;
        let t = *self
            .transition_index
            .get(transition)
            .ok_or_else(|| PnError::UnknownTransition(transition.to_string()))?;
        self.produce[p.0][t.0] = weight;
        Ok(())
    }

    pub fn build(self) -> PetriNet {
        PetriNet {
            places: self.places,
            transitions: self.transitions,
            consume: self.consume,
            produce: self.produce,
            initial: Marking(self.tokens),
            place_index: self.place_index,
            transition_index: self.transition_index,
        }
    }
}

impl PetriNet {
    /// Net with the given transitions and no places.
    pub fn transitions_only(names: &[&str]) -> PetriNet {
        let mut b = PetriNetBuilder::new();
        for name in names {
            b.transition(name);
        }
        b.build()
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn places(&self) -> impl Iterator<Item = PlaceId> + '_ {
        (0..self.places.len()).map(PlaceId)
    }

    pub fn transitions(&self) -> impl Iterator<Item = TransitionId> + '_ {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p.0]
    }

    pub fn transition_name(&self, t: TransitionId) -> &str {
        &self.transitions[t.0]
    }

    pub fn place_id(&self, name: &str) -> Option<PlaceId> {
        self.place_index.get(name).copied()
    }

    pub fn transition_id(&self, name: &str) -> Option<TransitionId> {
        self.transition_index.get(name).copied()
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.initial
    }

    pub fn weight_consume(&self, p: PlaceId, t: TransitionId) -> u64 {
        self.consume[p.0][t.0]
    }

    pub fn weight_produce(&self, t: TransitionId, p: PlaceId) -> u64 {
        self.produce[p.0][t.0]
    }

    pub fn incidence(&self) -> IncidenceMatrix {
        let entries = (0..self.places.len())
            .map(|p| {
                (0..self.transitions.len())
                    .map(|t| self.produce[p][t] as i64 - self.consume[p][t] as i64)
                    .collect()
            })
            .collect();
        IncidenceMatrix { entries }
    }

    pub fn enabled(&self, m: &Marking, t: TransitionId) -> Result<bool, PnError> {
        if t.0 >= self.transitions.len() {
            return Err(PnError::UnknownTransition(format!("#{}", t.0)));
        }
        Ok(self.places().all(|p| m.tokens(p) >= self.consume[p.0][t.0]))
    }

    pub fn fire(&self, m: &Marking, t: TransitionId) -> Result<Marking, PnError> {
        if !self.enabled(m, t)? {
            return Err(PnError::NotEnabled(self.transition_name(t).to_string()));
        }
        let tokens = self
            .places()
            .map(|p| m.tokens(p) - self.consume[p.0][t.0] + self.produce[p.0][t.0])
            .collect();
        Ok(Marking(tokens))
    }

    /// Breadth-first reachability graph with canonical state names
    /// `m0`, `m1`, ... in discovery order; transitions are explored in
    /// declared order. A marking that strictly dominates one of its
    /// exploration-tree ancestors witnesses unboundedness.
    pub fn reachability_graph(&self, max_states: usize) -> Result<Lts, PnError> {
        Ok(self.reachability_graph_with_markings(max_states)?.0)
    }

    /// Like [`reachability_graph`](Self::reachability_graph) but also returns
    /// the marking behind each state, indexed like the state names.
    pub fn reachability_graph_with_markings(
        &self,
        max_states: usize,
    ) -> Result<(Lts, Vec<Marking>), PnError> {
        let mut index: HashMap<Marking, usize> = HashMap::new();
        let mut markings: Vec<Marking> = Vec::new();
        let mut parent: Vec<Option<usize>> = Vec::new();
        let mut arcs: Vec<(usize, TransitionId, usize)> = Vec::new();
        let mut queue = VecDeque::new();

        index.insert(self.initial.clone(), 0);
        markings.push(self.initial.clone());
        parent.push(None);
        queue.push_back(0usize);

        while let Some(cur) = queue.pop_front() {
            for t in self.transitions() {
                let m = &markings[cur];
                if !self.enabled(m, t)? {
                    continue;
                }
                let next = self.fire(m, t)?;
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        // Walk the exploration tree; strict domination of an
                        // ancestor certifies a pumpable, unbounded run.
                        let mut anc = Some(cur);
                        while let Some(i) = anc {
                            if markings[i].strictly_below(&next) {
                                return Err(PnError::Unbounded(
                                    markings[i].0.clone(),
                                    next.0.clone(),
                                ));
                            }
                            anc = parent[i];
                        }
                        if markings.len() >= max_states {
                            return Err(PnError::StateCapExceeded(max_states));
                        }
                        let id = markings.len();
                        index.insert(next.clone(), id);
                        markings.push(next);
                        parent.push(Some(cur));
                        queue.push_back(id);
                        id
                    }
                };
                arcs.push((cur, t, id));
            }
        }

        let mut b = LtsBuilder::new();
        b.initial("m0");
        for i in 0..markings.len() {
            b.state(&format!("m{i}"));
        }
        for t in self.transitions() {
            b.label(self.transition_name(t));
        }
        for (s, t, g) in arcs {
            b.arc(&format!("m{s}"), self.transition_name(t), &format!("m{g}"))
                .expect("deterministic exploration yields distinct arcs");
        }
        Ok((b.build(), markings))
    }

    /// Maximum token count of any place over all reachable markings.
    pub fn k_bound(&self, max_states: usize) -> Result<u64, PnError> {
        let (_, markings) = self.reachability_graph_with_markings(max_states)?;
        Ok(markings
            .iter()
            .flat_map(|m| m.0.iter().copied())
            .max()
            .unwrap_or(0))
    }

    /// Drops a transition and all its flow entries; places are untouched.
    pub fn without_transition(&self, t: TransitionId) -> PetriNet {
        let mut b = PetriNetBuilder::new();
        for p in self.places() {
            b.place(self.place_name(p), self.initial.tokens(p));
        }
        for other in self.transitions() {
            if other == t {
                continue;
            }
            b.transition(self.transition_name(other));
        }
        for p in self.places() {
            for other in self.transitions() {
                if other == t {
                    continue;
                }
                let w = self.weight_consume(p, other);
                if w > 0 {
                    b.consume(self.place_name(p), self.transition_name(other), w)
                        .expect("declared");
                }
                let w = self.weight_produce(other, p);
                if w > 0 {
                    b.produce(self.transition_name(other), self.place_name(p), w)
                        .expect("declared");
                }
            }
        }
        b.build()
    }
}

impl fmt::Display for PetriNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "net({} places, {} transitions)",
            self.num_places(),
            self.num_transitions()
        )
    }
}

/// Copies `net` into `builder` with places renamed to avoid `taken` names;
/// returns the new place names in place order.
fn copy_renamed(
    net: &PetriNet,
    builder: &mut PetriNetBuilder,
    taken: &mut std::collections::BTreeSet<String>,
) -> Vec<String> {
    let mut names = Vec::new();
    for p in net.places() {
        let name = lts::fresh_name(net.place_name(p), &|n: &str| taken.contains(n));
        taken.insert(name.clone());
        builder.place(&name, net.initial_marking().tokens(p));
        names.push(name);
    }
    for t in net.transitions() {
        builder.transition(net.transition_name(t));
    }
    for p in net.places() {
        for t in net.transitions() {
            let w = net.weight_consume(p, t);
            if w > 0 {
                builder
                    .consume(&names[p.0], net.transition_name(t), w)
                    .expect("declared");
            }
            let w = net.weight_produce(t, p);
            if w > 0 {
                builder
                    .produce(net.transition_name(t), &names[p.0], w)
                    .expect("declared");
            }
        }
    }
    names
}

/// Side-by-side union of two transition-disjoint nets; places are renamed
/// with the lowest unused numeric suffix when names clash.
pub fn disjoint_sum(a: &PetriNet, b: &PetriNet) -> Result<PetriNet, PnError> {
    for t in b.transitions() {
        if a.transition_id(b.transition_name(t)).is_some() {
            return Err(PnError::TransitionOverlap(b.transition_name(t).to_string()));
        }
    }
    let mut taken: std::collections::BTreeSet<String> = a
        .transitions()
        .map(|t| a.transition_name(t).to_string())
        .chain(b.transitions().map(|t| b.transition_name(t).to_string()))
        .collect();
    let mut builder = PetriNetBuilder::new();
    copy_renamed(a, &mut builder, &mut taken);
    copy_renamed(b, &mut builder, &mut taken);
    Ok(builder.build())
}

/// Plugs `b` onto the reachable, non-dominated marking `m` of `a`: both nets
/// side by side plus the side conditions that freeze one net while the other
/// is away from the junction marking.
pub fn articulate(
    a: &PetriNet,
    m: &Marking,
    b: &PetriNet,
    max_states: usize,
) -> Result<PetriNet, PnError> {
    for t in b.transitions() {
        if a.transition_id(b.transition_name(t)).is_some() {
            return Err(PnError::TransitionOverlap(b.transition_name(t).to_string()));
        }
    }
    let (_, reachable) = a.reachability_graph_with_markings(max_states)?;
    if !reachable.iter().any(|r| r == m) {
        return Err(PnError::Unreachable);
    }
    if is_dominated(m, &reachable) {
        return Err(PnError::NotAdequate);
    }

    let mut taken: std::collections::BTreeSet<String> = a
        .transitions()
        .map(|t| a.transition_name(t).to_string())
        .chain(b.transitions().map(|t| b.transition_name(t).to_string()))
        .collect();
    let mut builder = PetriNetBuilder::new();
    let names_a = copy_renamed(a, &mut builder, &mut taken);
    let names_b = copy_renamed(b, &mut builder, &mut taken);

    // Transitions of `a` enabled at the junction marking read the initial
    // marking of `b`; transitions of `b` enabled initially read the junction
    // marking of `a`. Every created pair has equal weights both ways.
    for t in a.transitions() {
        if !a.enabled(m, t)? {
            continue;
        }
        for p in b.places() {
            let w = b.initial_marking().tokens(p);
            if w > 0 {
                builder
                    .consume(&names_b[p.0], a.transition_name(t), w)
                    .expect("declared");
                builder
                    .produce(a.transition_name(t), &names_b[p.0], w)
                    .expect("declared");
            }
        }
    }
    for t in b.transitions() {
        if !b.enabled(b.initial_marking(), t)? {
            continue;
        }
        for p in a.places() {
            let w = m.tokens(p);
            if w > 0 {
                builder
                    .consume(&names_a[p.0], b.transition_name(t), w)
                    .expect("declared");
                builder
                    .produce(b.transition_name(t), &names_a[p.0], w)
                    .expect("declared");
            }
        }
    }
    Ok(builder.build())
}

/// Adds, for every place, a mirror place with swapped flow whose initial
/// marking keeps the place pair sum constant. The reachability graph is
/// unchanged and no reachable marking dominates another afterwards.
///
/// `rg_markings` must be the reachable markings of `net`.
pub fn add_complement_places(net: &PetriNet, rg_markings: &[Marking]) -> PetriNet {
    let mut taken: std::collections::BTreeSet<String> = net
        .places()
        .map(|p| net.place_name(p).to_string())
        .chain(net.transitions().map(|t| net.transition_name(t).to_string()))
        .collect();
    let mut builder = PetriNetBuilder::new();
    for p in net.places() {
        builder.place(net.place_name(p), net.initial_marking().tokens(p));
    }
    for t in net.transitions() {
        builder.transition(net.transition_name(t));
    }
    for p in net.places() {
        for t in net.transitions() {
            let w = net.weight_consume(p, t);
            if w > 0 {
                builder
                    .consume(net.place_name(p), net.transition_name(t), w)
                    .expect("declared");
            }
            let w = net.weight_produce(t, p);
            if w > 0 {
                builder
                    .produce(net.transition_name(t), net.place_name(p), w)
                    .expect("declared");
            }
        }
    }
    for p in net.places() {
        let bound = rg_markings.iter().map(|m| m.tokens(p)).max().unwrap_or(0);
        let max_produce = net
            .transitions()
            .map(|t| net.weight_produce(t, p))
            .max()
            .unwrap_or(0);
        let name = lts::fresh_name(&format!("{}_c", net.place_name(p)), &|n: &str| {
            taken.contains(n)
        });
        taken.insert(name.clone());
        builder.place(&name, bound - net.initial_marking().tokens(p) + max_produce);
        for t in net.transitions() {
            let w = net.weight_consume(p, t);
            if w > 0 {
                builder
                    .produce(net.transition_name(t), &name, w)
                    .expect("declared");
            }
            let w = net.weight_produce(t, p);
            if w > 0 {
                builder
                    .consume(&name, net.transition_name(t), w)
                    .expect("declared");
            }
        }
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lts::are_isomorphic;

    fn two_state_chain() -> PetriNet {
        let mut b = PetriNetBuilder::new();
        b.place("p", 1);
        b.place("q", 0);
        b.transition("a");
        b.consume("p", "a", 1).unwrap();
        b.produce("a", "q", 1).unwrap();
        b.build()
    }

    #[test]
    fn enablement_and_firing() {
        let net = two_state_chain();
        let a = net.transition_id("a").unwrap();
        assert!(net.enabled(net.initial_marking(), a).unwrap());
        let m = net.fire(net.initial_marking(), a).unwrap();
        assert_eq!(m.0, vec![0, 1]);
        assert!(!net.enabled(&m, a).unwrap());
        assert!(matches!(net.fire(&m, a), Err(PnError::NotEnabled(_))));
    }

    #[test]
    fn side_condition_keeps_marking() {
        let mut b = PetriNetBuilder::new();
        b.place("p", 1);
        b.transition("a");
        b.consume("p", "a", 1).unwrap();
        b.produce("a", "p", 1).unwrap();
        let net = b.build();
        let a = net.transition_id("a").unwrap();
        let m = net.fire(net.initial_marking(), a).unwrap();
        assert_eq!(&m, net.initial_marking());
    }

    #[test]
    fn state_equation_along_random_runs() {
        use rand::prelude::*;
        let net = fixtures::net21();
        let c = net.incidence();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let mut m = net.initial_marking().clone();
            let mut counts = vec![0i64; net.num_transitions()];
            for _ in 0..30 {
                let enabled: Vec<TransitionId> = net
                    .transitions()
                    .filter(|&t| net.enabled(&m, t).unwrap())
                    .collect();
                let Some(&t) = enabled.choose(&mut rng) else {
                    break;
                };
                m = net.fire(&m, t).unwrap();
                counts[t.0] += 1;
            }
            for p in net.places() {
                let base = net.initial_marking().tokens(p) as i64;
                let delta: i64 = (0..net.num_transitions())
                    .map(|t| c.get(p, TransitionId(t)) * counts[t])
                    .sum();
                assert_eq!(m.tokens(p) as i64, base + delta);
            }
        }
    }

    #[test]
    fn reachability_graph_of_chain() {
        let net = two_state_chain();
        let rg = net.reachability_graph(DEFAULT_STATE_CAP).unwrap();
        assert!(are_isomorphic(&rg, &fixtures::chain_a()).unwrap().is_some());
        assert!(rg.is_deterministic());
        assert!(rg.is_totally_reachable());
    }

    #[test]
    fn unbounded_detection() {
        let mut b = PetriNetBuilder::new();
        b.place("p", 0);
        b.transition("a");
        b.produce("a", "p", 1).unwrap();
        let net = b.build();
        assert!(matches!(
            net.reachability_graph(DEFAULT_STATE_CAP),
            Err(PnError::Unbounded(_, _))
        ));
    }

    #[test]
    fn state_cap() {
        let net = fixtures::net21();
        assert!(matches!(
            net.reachability_graph(5),
            Err(PnError::StateCapExceeded(5))
        ));
    }

    #[test]
    fn rg_emission_is_deterministic() {
        let net = fixtures::net21();
        let a = crate::io::emit_lts(&net.reachability_graph(DEFAULT_STATE_CAP).unwrap());
        let b = crate::io::emit_lts(&net.reachability_graph(DEFAULT_STATE_CAP).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn domination() {
        assert!(is_dominated(&Marking(vec![0]), &[Marking(vec![1])]));
        assert!(!is_dominated(
            &Marking(vec![1, 0]),
            &[Marking(vec![0, 1])]
        ));
        assert!(!is_dominated(&Marking(vec![1]), &[Marking(vec![1])]));
    }

    #[test]
    fn fig12_initial_dominates_drained_place() {
        // A single place with two tokens feeding `a` and no output place:
        // after two firings the marking is empty, dominated by the start.
        let mut b = PetriNetBuilder::new();
        b.place("p0", 2);
        b.transition("a");
        b.consume("p0", "a", 1).unwrap();
        let net = b.build();
        let (_, markings) = net
            .reachability_graph_with_markings(DEFAULT_STATE_CAP)
            .unwrap();
        let at_s2 = Marking(vec![0]);
        assert!(is_dominated(&at_s2, &markings));
        // Complement places remove the domination without changing the graph.
        let fixed = add_complement_places(&net, &markings);
        let (rg2, markings2) = fixed
            .reachability_graph_with_markings(DEFAULT_STATE_CAP)
            .unwrap();
        assert!(are_isomorphic(
            &rg2,
            &net.reachability_graph(DEFAULT_STATE_CAP).unwrap()
        )
        .unwrap()
        .is_some());
        for m in &markings2 {
            let others: Vec<Marking> = markings2.iter().filter(|&o| o != m).cloned().collect();
            assert!(!is_dominated(m, &others));
        }
    }

    #[test]
    fn net21_frozen_oracle_values() {
        // Computed once by evaluating the firing rule and exhaustive
        // reachability on the published net; frozen here.
        let net = fixtures::net21();
        let enabled: Vec<&str> = net
            .transitions()
            .filter(|&t| net.enabled(net.initial_marking(), t).unwrap())
            .map(|t| net.transition_name(t))
            .collect();
        assert_eq!(enabled, vec!["a", "c"]);
        assert_eq!(net.k_bound(DEFAULT_STATE_CAP).unwrap(), 7);
    }

    #[test]
    fn articulation_bound_is_max_of_components() {
        let left = {
            let mut b = PetriNetBuilder::new();
            b.place("p", 3);
            b.place("q", 0);
            b.transition("a");
            b.consume("p", "a", 1).unwrap();
            b.produce("a", "q", 1).unwrap();
            b.build()
        };
        let right = {
            let mut b = PetriNetBuilder::new();
            b.place("r", 1);
            b.place("s", 0);
            b.transition("z");
            b.consume("r", "z", 1).unwrap();
            b.produce("z", "s", 1).unwrap();
            b.build()
        };
        let m = left.initial_marking().clone();
        let joined = articulate(&left, &m, &right, DEFAULT_STATE_CAP).unwrap();
        let expected = left
            .k_bound(DEFAULT_STATE_CAP)
            .unwrap()
            .max(right.k_bound(DEFAULT_STATE_CAP).unwrap());
        assert_eq!(joined.k_bound(DEFAULT_STATE_CAP).unwrap(), expected);
    }

    #[test]
    fn k_bounds() {
        let net = two_state_chain();
        assert_eq!(net.k_bound(DEFAULT_STATE_CAP).unwrap(), 1);
        let other = {
            let mut b = PetriNetBuilder::new();
            b.place("r", 1);
            b.place("q", 0);
            b.transition("z");
            b.consume("r", "z", 1).unwrap();
            b.produce("z", "q", 1).unwrap();
            b.build()
        };
        let sum = disjoint_sum(&fixtures::net21(), &other).unwrap();
        assert_eq!(
            sum.k_bound(DEFAULT_STATE_CAP).unwrap(),
            fixtures::net21()
                .k_bound(DEFAULT_STATE_CAP)
                .unwrap()
                .max(1)
        );
    }

    #[test]
    fn sum_rejects_shared_transitions() {
        let net = two_state_chain();
        assert!(matches!(
            disjoint_sum(&net, &net),
            Err(PnError::TransitionOverlap(_))
        ));
    }

    #[test]
    fn sum_neutral() {
        let net = fixtures::net21();
        let empty = PetriNetBuilder::new().build();
        let sum = disjoint_sum(&net, &empty).unwrap();
        let rg_sum = sum.reachability_graph(DEFAULT_STATE_CAP).unwrap();
        let rg = net.reachability_graph(DEFAULT_STATE_CAP).unwrap();
        assert!(are_isomorphic(&rg_sum, &rg).unwrap().is_some());
    }

    #[test]
    fn articulation_needs_reachable_non_dominated_marking() {
        let net = two_state_chain();
        let other = {
            let mut b = PetriNetBuilder::new();
            b.place("r", 1);
            b.transition("z");
            b.consume("r", "z", 1).unwrap();
            b.produce("z", "r", 1).unwrap();
            b.build()
        };
        assert!(matches!(
            articulate(&net, &Marking(vec![5, 5]), &other, DEFAULT_STATE_CAP),
            Err(PnError::Unreachable)
        ));

        let mut b = PetriNetBuilder::new();
        b.place("p0", 2);
        b.transition("a");
        b.consume("p0", "a", 1).unwrap();
        let draining = b.build();
        assert!(matches!(
            articulate(&draining, &Marking(vec![0]), &other, DEFAULT_STATE_CAP),
            Err(PnError::NotAdequate)
        ));
    }

    #[test]
    fn articulation_with_inert_second_net_is_plain_union() {
        let net = two_state_chain();
        // No initial tokens and no initially enabled transition on the right.
        let mut b = PetriNetBuilder::new();
        b.place("r", 0);
        b.transition("z");
        b.consume("r", "z", 1).unwrap();
        let inert = b.build();
        let joined = articulate(&net, net.initial_marking(), &inert, DEFAULT_STATE_CAP).unwrap();
        let mut side_conditions = 0;
        for p in joined.places() {
            for t in joined.transitions() {
                let c = joined.weight_consume(p, t);
                let pr = joined.weight_produce(t, p);
                if c > 0 && c == pr {
                    side_conditions += 1;
                }
            }
        }
        assert_eq!(side_conditions, 0);
    }

    #[test]
    fn complement_keeps_graph_on_random_nets() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 50 {
            let net = crate::testgen::random_net(&mut rng, 3, 3, 2, 2);
            let Ok((rg, markings)) = net.reachability_graph_with_markings(64) else {
                continue;
            };
            let with = add_complement_places(&net, &markings);
            let rg2 = with.reachability_graph(256).unwrap();
            assert!(are_isomorphic(&rg, &rg2).unwrap().is_some());
            checked += 1;
        }
    }
}
