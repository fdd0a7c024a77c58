//! Recursive decomposition alternating products and articulations, the
//! ambiguous loop-label form, and end-to-end divide-and-conquer synthesis.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::articulation::{articul_expression, component_lts, ArticulationExpression};
use crate::factorization::{factor, factor_coordinates};
use crate::lts::{self, LabelId, Lts, StateId};
use crate::petri::{self, PetriNet, PetriNetBuilder, DEFAULT_STATE_CAP};
use crate::synthesis::{
    marking_for_state, presynthesis, synthesize_adequate_at, Outcome, SynthesisReport, Witness,
};

/// How a system was split into components.
#[derive(Debug, Clone)]
pub struct DecompositionTree {
    /// The sub-system this node stands for.
    pub lts: Lts,
    pub node: TreeNode,
}

#[derive(Debug, Clone)]
pub enum TreeNode {
    Leaf,
    Product {
        children: Vec<DecompositionTree>,
        /// Per state of this node, its coordinate in each child.
        coordinates: BTreeMap<String, Vec<String>>,
    },
    Articulation {
        left: Box<DecompositionTree>,
        /// Joint state name (valid in this node and in the left child).
        state: String,
        right: Box<DecompositionTree>,
    },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecomposeOptions {
    /// Try articulation before factorization; the default order is the
    /// opposite (products compose nets by plain disjoint sums, which
    /// preserves more net subclasses).
    pub prefer_articulation: bool,
}

impl DecompositionTree {
    fn leaf(lts: Lts) -> DecompositionTree {
        DecompositionTree { lts, node: TreeNode::Leaf }
    }

    pub fn render(&self) -> String {
        match &self.node {
            TreeNode::Leaf => {
                let mut labels: Vec<&str> = self
                    .lts
                    .labels()
                    .map(|l| self.lts.label_name(l))
                    .collect();
                labels.sort_unstable();
                format!("leaf{{{}}}", labels.join(","))
            }
            TreeNode::Product { children, .. } => {
                let parts: Vec<String> = children.iter().map(|c| c.render()).collect();
                format!("product({})", parts.join(", "))
            }
            TreeNode::Articulation { left, state, right } => {
                format!("artic({} <{}> {})", left.render(), state, right.render())
            }
        }
    }

    /// Number of leaves.
    pub fn leaf_count(&self) -> usize {
        match &self.node {
            TreeNode::Leaf => 1,
            TreeNode::Product { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
            TreeNode::Articulation { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Rebuilds an LTS isomorphic to this node's system from the children.
    pub fn evaluate(&self) -> Lts {
        match &self.node {
            TreeNode::Leaf => self.lts.clone(),
            TreeNode::Product { children, .. } => {
                let mut evaluated = children.iter().map(|c| c.evaluate());
                let mut acc = evaluated.next().expect("products have children");
                for next in evaluated {
                    acc = lts::product(&acc, &next).expect("children are label-disjoint");
                }
                acc
            }
            TreeNode::Articulation { left, state, right } => {
                let l = left.evaluate();
                let r = right.evaluate();
                // The evaluated left child is isomorphic to the stored one;
                // look the joint up through the bijection.
                let bijection = lts::are_isomorphic(&l, &left.lts)
                    .expect("children are deterministic and totally reachable")
                    .expect("evaluation rebuilds the child");
                let joint_in_child = left.lts.state_id(state).expect("joint name is valid");
                let joint = l
                    .states()
                    .find(|&s| bijection.map(s) == joint_in_child)
                    .expect("bijection is total");
                lts::articulate(&l, joint, &r).expect("sides are label-disjoint")
            }
        }
    }
}

fn expression_to_tree(lts: &Lts, expr: &ArticulationExpression, options: DecomposeOptions) -> DecompositionTree {
    match expr {
        ArticulationExpression::Component { labels, root } => {
            decompose_with(&component_lts(lts, labels, *root), options)
        }
        ArticulationExpression::Joint { left, state, right } => {
            let left_tree = expression_to_tree(lts, left, options);
            let right_tree = expression_to_tree(lts, right, options);
            let carrier = carrier_of(lts, expr);
            DecompositionTree {
                lts: carrier,
                node: TreeNode::Articulation {
                    left: Box::new(left_tree),
                    state: lts.state_name(*state).to_string(),
                    right: Box::new(right_tree),
                },
            }
        }
    }
}

fn carrier_of(lts: &Lts, expr: &ArticulationExpression) -> Lts {
    fn collect(expr: &ArticulationExpression, labels: &mut BTreeSet<LabelId>) -> StateId {
        match expr {
            ArticulationExpression::Component { labels: block, root } => {
                labels.extend(block.iter().copied());
                *root
            }
            ArticulationExpression::Joint { left, right, .. } => {
                let root = collect(left, labels);
                collect(right, labels);
                root
            }
        }
    }
    let mut labels = BTreeSet::new();
    let root = collect(expr, &mut labels);
    let states: BTreeSet<StateId> = {
        let mut acc = BTreeSet::new();
        fn states_of(lts: &Lts, expr: &ArticulationExpression, acc: &mut BTreeSet<StateId>) {
            match expr {
                ArticulationExpression::Component { labels, .. } => {
                    acc.extend(lts.adjacency(labels));
                }
                ArticulationExpression::Joint { left, right, .. } => {
                    states_of(lts, left, acc);
                    states_of(lts, right, acc);
                }
            }
        }
        states_of(lts, expr, &mut acc);
        acc
    };
    lts.restrict_to_states(&states, &labels, root)
}

fn try_product(lts: &Lts, options: DecomposeOptions) -> Option<DecompositionTree> {
    let factors = factor(lts).ok()?;
    if factors.len() < 2 {
        return None;
    }
    let coordinates_by_state = factor_coordinates(lts, &factors);
    let mut coordinates = BTreeMap::new();
    for s in lts.states() {
        coordinates.insert(
            lts.state_name(s).to_string(),
            coordinates_by_state[s.0]
                .iter()
                .enumerate()
                .map(|(i, &c)| factors[i].state_name(c).to_string())
                .collect(),
        );
    }
    let children = factors
        .iter()
        .map(|f| decompose_with(f, options))
        .collect();
    Some(DecompositionTree {
        lts: lts.clone(),
        node: TreeNode::Product { children, coordinates },
    })
}

fn try_articulation(lts: &Lts, options: DecomposeOptions) -> Option<DecompositionTree> {
    let expr = articul_expression(lts)?;
    Some(expression_to_tree(lts, &expr, options))
}

/// Splits recursively, products first (articulation first under the option),
/// stopping at prime components. Every split strictly partitions the label
/// set, which bounds the recursion depth.
pub fn decompose_with(lts: &Lts, options: DecomposeOptions) -> DecompositionTree {
    let attempts: [fn(&Lts, DecomposeOptions) -> Option<DecompositionTree>; 2] =
        if options.prefer_articulation {
            [try_articulation, try_product]
        } else {
            [try_product, try_articulation]
        };
    for attempt in attempts {
        if let Some(tree) = attempt(lts, options) {
            return tree;
        }
    }
    DecompositionTree::leaf(lts.clone())
}

pub fn decompose(lts: &Lts) -> DecompositionTree {
    decompose_with(lts, DecomposeOptions::default())
}

/// The shape where a product and an articulation coexist: some labels loop
/// at every state, some loop at a single state, and the rest form the core.
#[derive(Debug, Clone)]
pub struct AmbiguousForm {
    /// The input without its loop labels.
    pub core: Lts,
    /// State (of the core and of the input) carrying the anchored loops.
    pub anchor: String,
    /// Labels looping at every state.
    pub everywhere_loops: BTreeSet<String>,
    /// Labels looping only at the anchor.
    pub anchored_loops: BTreeSet<String>,
}

/// Detects the ambiguous form. Both loop families must be non-empty and the
/// remaining core, extended back with the loops, must rebuild the input.
pub fn ambiguous_form(lts: &Lts) -> Option<AmbiguousForm> {
    let mut everywhere = BTreeSet::new();
    let mut anchored: BTreeMap<LabelId, StateId> = BTreeMap::new();
    let mut core_labels = BTreeSet::new();
    for l in lts.labels() {
        let arcs: Vec<_> = lts.arcs().iter().filter(|a| a.label == l).collect();
        let all_loops = !arcs.is_empty() && arcs.iter().all(|a| a.source == a.target);
        if all_loops && arcs.len() == lts.num_states() {
            everywhere.insert(l);
        } else if all_loops && arcs.len() == 1 {
            anchored.insert(l, arcs[0].source);
        } else {
            core_labels.insert(l);
        }
    }
    if everywhere.is_empty() || anchored.is_empty() {
        return None;
    }
    let anchors: BTreeSet<StateId> = anchored.values().copied().collect();
    if anchors.len() != 1 {
        return None;
    }
    let anchor = *anchors.iter().next().expect("non-empty");
    let all_states: BTreeSet<StateId> = lts.states().collect();
    let core = lts.restrict_to_states(&all_states, &core_labels, lts.initial());

    // The shape must rebuild the input: (core x everywhere-loops) joined at
    // the anchor with the anchored loops.
    let mut b = lts::LtsBuilder::new();
    b.initial("l");
    for l in &everywhere {
        b.arc("l", lts.label_name(*l), "l").expect("distinct labels");
    }
    let loops = b.build();
    let product = lts::product(&core, &loops).ok()?;
    let mut b = lts::LtsBuilder::new();
    b.initial("l");
    for l in anchored.keys() {
        b.arc("l", lts.label_name(*l), "l").expect("distinct labels");
    }
    let anchored_lts = b.build();
    let anchor_name = format!("{}_l", lts.state_name(anchor));
    let joint = product.state_id(&anchor_name)?;
    let rebuilt = lts::articulate(&product, joint, &anchored_lts).ok()?;
    match lts::are_isomorphic(&rebuilt, lts) {
        Ok(Some(_)) => Some(AmbiguousForm {
            core,
            anchor: lts.state_name(anchor).to_string(),
            everywhere_loops: everywhere
                .iter()
                .map(|&l| lts.label_name(l).to_string())
                .collect(),
            anchored_loops: anchored
                .keys()
                .map(|&l| lts.label_name(l).to_string())
                .collect(),
        }),
        _ => None,
    }
}

fn synthesize_tree(
    tree: &DecompositionTree,
    required: &BTreeSet<String>,
    regions_used: &mut usize,
    problems_reused: &mut usize,
) -> Result<(PetriNet, Lts), Witness> {
    match &tree.node {
        TreeNode::Leaf => {
            let states: BTreeSet<StateId> = required
                .iter()
                .filter_map(|name| tree.lts.state_id(name))
                .filter(|&s| s != tree.lts.initial())
                .collect();
            let report = synthesize_adequate_at(&tree.lts, &states);
            *regions_used += report.regions_used;
            *problems_reused += report.problems_reused;
            match report.outcome {
                Outcome::Solved(net) => Ok((net, tree.lts.clone())),
                Outcome::Unsolvable(w) => Err(w),
                Outcome::Rejected(_) => unreachable!("components pass the pre-checks"),
            }
        }
        TreeNode::Product { children, coordinates } => {
            // Adequacy at a product state means adequacy at each coordinate.
            let mut per_child: Vec<BTreeSet<String>> = vec![BTreeSet::new(); children.len()];
            for name in required {
                if let Some(coords) = coordinates.get(name) {
                    for (i, c) in coords.iter().enumerate() {
                        per_child[i].insert(c.clone());
                    }
                }
            }
            let mut nets = Vec::new();
            for (child, req) in children.iter().zip(per_child.iter()) {
                let (net, _) = synthesize_tree(child, req, regions_used, problems_reused)?;
                nets.push(net);
            }
            let mut net = nets.remove(0);
            for other in nets {
                net = petri::disjoint_sum(&net, &other).expect("children are label-disjoint");
            }
            Ok((net, tree.lts.clone()))
        }
        TreeNode::Articulation { left, state, right } => {
            let mut required_left: BTreeSet<String> = required
                .iter()
                .filter(|name| left.lts.state_id(name).is_some())
                .cloned()
                .collect();
            required_left.insert(state.clone());
            let required_right: BTreeSet<String> = required
                .iter()
                .filter(|name| *name != state && right.lts.state_id(name).is_some())
                .cloned()
                .collect();
            let (net_l, carrier_l) =
                synthesize_tree(left, &required_left, regions_used, problems_reused)?;
            let (net_r, carrier_r) =
                synthesize_tree(right, &required_right, regions_used, problems_reused)?;
            let joint = carrier_l.state_id(state).expect("joint in left carrier");
            let marking = marking_for_state(&net_l, &carrier_l, joint)
                .expect("left net solves its carrier");
            let net = petri::articulate(&net_l, &marking, &net_r, DEFAULT_STATE_CAP)
                .expect("adequate synthesis provides a junction marking");
            let carrier = lts::articulate(&carrier_l, joint, &carrier_r)
                .expect("sides are label-disjoint");
            Ok((net, carrier))
        }
    }
}

/// Builds the net of the ambiguous form: an adequate solution of the core,
/// one isolated transition per everywhere-loop, and one side-condition
/// transition per anchored loop wired to the anchor marking.
fn synthesize_ambiguous(form: &AmbiguousForm, start: Instant) -> SynthesisReport {
    let anchor = form.core.state_id(&form.anchor).expect("anchor in core");
    let report = synthesize_adequate_at(&form.core, &[anchor].into_iter().collect());
    let (regions_used, problems_reused) = (report.regions_used, report.problems_reused);
    let core_net = match report.outcome {
        Outcome::Solved(net) => net,
        outcome => {
            return SynthesisReport {
                outcome,
                regions_used,
                problems_reused,
                elapsed_ms: start.elapsed().as_millis(),
            }
        }
    };
    let marking = marking_for_state(&core_net, &form.core, anchor)
        .expect("core net solves the core");
    let mut b = PetriNetBuilder::new();
    for p in core_net.places() {
        b.place(core_net.place_name(p), core_net.initial_marking().tokens(p));
    }
    for t in core_net.transitions() {
        b.transition(core_net.transition_name(t));
    }
    for label in form.everywhere_loops.iter().chain(form.anchored_loops.iter()) {
        b.transition(label);
    }
    for p in core_net.places() {
        for t in core_net.transitions() {
            let w = core_net.weight_consume(p, t);
            if w > 0 {
                b.consume(core_net.place_name(p), core_net.transition_name(t), w)
                    .expect("declared");
            }
            let w = core_net.weight_produce(t, p);
            if w > 0 {
                b.produce(core_net.transition_name(t), core_net.place_name(p), w)
                    .expect("declared");
            }
        }
    }
    for label in &form.anchored_loops {
        for p in core_net.places() {
            let w = marking.tokens(p);
            if w > 0 {
                b.consume(core_net.place_name(p), label, w).expect("declared");
                b.produce(label, core_net.place_name(p), w).expect("declared");
            }
        }
    }
    SynthesisReport {
        outcome: Outcome::Solved(b.build()),
        regions_used,
        problems_reused,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Divide-and-conquer synthesis: decompose, solve the components (adequately
/// where an enclosing joint requires it), recombine bottom-up with disjoint
/// sums and side conditions.
pub fn synthesize_mixed(lts: &Lts) -> SynthesisReport {
    synthesize_mixed_with(lts, DecomposeOptions::default())
}

pub fn synthesize_mixed_with(lts: &Lts, options: DecomposeOptions) -> SynthesisReport {
    let start = Instant::now();
    if let Err(check) = presynthesis(lts) {
        return SynthesisReport {
            outcome: Outcome::Rejected(check),
            regions_used: 0,
            problems_reused: 0,
            elapsed_ms: start.elapsed().as_millis(),
        };
    }
    let has_loop_labels = lts.arcs().iter().any(|a| a.source == a.target);
    if has_loop_labels {
        if let Some(form) = ambiguous_form(lts) {
            return synthesize_ambiguous(&form, start);
        }
    }
    let tree = decompose_with(lts, options);
    let mut regions_used = 0;
    let mut problems_reused = 0;
    let outcome = match synthesize_tree(
        &tree,
        &BTreeSet::new(),
        &mut regions_used,
        &mut problems_reused,
    ) {
        Ok((net, _)) => Outcome::Solved(net),
        Err(witness) => Outcome::Unsolvable(witness),
    };
    SynthesisReport {
        outcome,
        regions_used,
        problems_reused,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
