//! Articulation detection and articulated synthesis.
//!
//! Detection refines the label partition until adjacency sets pairwise share
//! at most one state, builds the bipartite class/state graph, fuses the
//! classes on cycles, and reads an articulation expression off the resulting
//! tree. Synthesis solves each component with the required adequacy and
//! recombines the nets with side conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::factorization::{sort_blocks, LabelPartition};
use crate::lts::{self, LabelId, Lts, Mode, StateId};
use crate::petri::{self, PetriNet, DEFAULT_STATE_CAP};
use crate::synthesis::{
    marking_for_state, presynthesis, synthesize, synthesize_adequate_at, Outcome, SynthesisReport,
    Witness,
};

/// Repeatedly merges blocks whose adjacency sets share more than one state.
pub fn refine_partition(lts: &Lts, start: &LabelPartition) -> LabelPartition {
    let mut blocks = start.blocks.clone();
    loop {
        let adjacency: Vec<BTreeSet<StateId>> =
            blocks.iter().map(|b| lts.adjacency(b)).collect();
        let mut merge = None;
        'search: for i in 0..blocks.len() {
            for j in (i + 1)..blocks.len() {
                if adjacency[i].intersection(&adjacency[j]).nth(1).is_some() {
                    merge = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = merge else {
            sort_blocks(lts, &mut blocks);
            return LabelPartition { blocks };
        };
        let absorbed = blocks.remove(j);
        blocks[i].extend(absorbed);
    }
}

/// The bipartite graph of partition blocks and the states certifying their
/// singleton adjacency intersections.
#[derive(Debug, Clone)]
pub struct ArticulationGraph {
    pub blocks: Vec<BTreeSet<LabelId>>,
    pub state_nodes: Vec<StateId>,
    /// Pairs (state node index, block index).
    pub edges: BTreeSet<(usize, usize)>,
}

impl ArticulationGraph {
    pub fn state_neighbors(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |&&(_, b)| b == block)
            .map(|&(s, _)| s)
    }

    pub fn block_neighbors(&self, state_node: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |&&(s, _)| s == state_node)
            .map(|&(_, b)| b)
    }

    fn num_nodes(&self) -> usize {
        self.blocks.len() + self.state_nodes.len()
    }

    /// Undirected adjacency over block nodes (0..blocks) followed by state
    /// nodes (blocks..blocks+states).
    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes()];
        for &(s, b) in &self.edges {
            let sn = self.blocks.len() + s;
            adj[b].push(sn);
            adj[sn].push(b);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.num_nodes() == 0 {
            return true;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.num_nodes()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 0;
        while let Some(n) = stack.pop() {
            count += 1;
            for &m in &adj[n] {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        count == self.num_nodes()
    }

    /// Block indices lying on some cycle, or `None` when acyclic.
    pub fn find_cycle_blocks(&self) -> Option<BTreeSet<usize>> {
        let adj = self.adjacency_lists();
        let n = self.num_nodes();
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            // Iterative DFS keeping the parent chain for cycle recovery.
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some((node, from, next)) = stack.pop() {
                if next == 0 {
                    state[node] = 1;
                    parent[node] = from;
                }
                if next < adj[node].len() {
                    stack.push((node, from, next + 1));
                    let m = adj[node][next];
                    if m == from {
                        continue;
                    }
                    match state[m] {
                        0 => stack.push((m, node, 0)),
                        1 => {
                            // Cycle: walk back from `node` to `m`.
                            let mut blocks = BTreeSet::new();
                            let mut cur = node;
                            loop {
                                if cur < self.blocks.len() {
                                    blocks.insert(cur);
                                }
                                if cur == m {
                                    break;
                                }
                                cur = parent[cur];
                            }
                            return Some(blocks);
                        }
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle_blocks().is_none()
    }
}

/// Builds the bipartite graph: a state becomes a node whenever it is the
/// single shared adjacency state of two blocks, with edges to both. Under
/// weak liveness and total reachability the graph is connected.
pub fn build_graph(lts: &Lts, partition: &LabelPartition) -> ArticulationGraph {
    let adjacency: Vec<BTreeSet<StateId>> =
        partition.blocks.iter().map(|b| lts.adjacency(b)).collect();
    let mut state_nodes: Vec<StateId> = Vec::new();
    let mut node_of: BTreeMap<StateId, usize> = BTreeMap::new();
    let mut edges = BTreeSet::new();
    for i in 0..partition.blocks.len() {
        for j in (i + 1)..partition.blocks.len() {
            let mut inter = adjacency[i].intersection(&adjacency[j]);
            let (Some(&s), None) = (inter.next(), inter.next()) else {
                continue;
            };
            let node = *node_of.entry(s).or_insert_with(|| {
                state_nodes.push(s);
                state_nodes.len() - 1
            });
            edges.insert((node, i));
            edges.insert((node, j));
        }
    }
    let graph = ArticulationGraph {
        blocks: partition.blocks.clone(),
        state_nodes,
        edges,
    };
    assert!(graph.is_connected(), "articulation graph must be connected");
    graph
}

/// Fuses the blocks of every cycle, re-refining and rebuilding until the
/// graph is acyclic; returns the final partition (possibly one block).
pub fn fuse_cycles(lts: &Lts, graph: &ArticulationGraph) -> LabelPartition {
    let mut graph = graph.clone();
    loop {
        let Some(cycle_blocks) = graph.find_cycle_blocks() else {
            let mut blocks = graph.blocks.clone();
            sort_blocks(lts, &mut blocks);
            return LabelPartition { blocks };
        };
        let mut merged: BTreeSet<LabelId> = BTreeSet::new();
        let mut rest = Vec::new();
        for (i, block) in graph.blocks.iter().enumerate() {
            if cycle_blocks.contains(&i) {
                merged.extend(block.iter().copied());
            } else {
                rest.push(block.clone());
            }
        }
        rest.push(merged);
        let refined = refine_partition(lts, &LabelPartition { blocks: rest });
        if refined.blocks.len() <= 1 {
            return refined;
        }
        graph = build_graph(lts, &refined);
    }
}

/// The full detection pipeline: singleton partition, adjacency refinement,
/// cycle fusion. Returns the final partition and, when it is non-trivial,
/// the acyclic graph.
pub fn articulation_partition(lts: &Lts) -> (LabelPartition, Option<ArticulationGraph>) {
    let refined = refine_partition(lts, &LabelPartition::singletons(lts));
    if refined.blocks.len() <= 1 {
        return (refined, None);
    }
    let graph = build_graph(lts, &refined);
    let fused = fuse_cycles(lts, &graph);
    if fused.blocks.len() <= 1 {
        return (fused, None);
    }
    let graph = build_graph(lts, &fused);
    (fused, Some(graph))
}

/// An articulation plan: components over label blocks joined at states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArticulationExpression {
    Component {
        labels: BTreeSet<LabelId>,
        root: StateId,
    },
    Joint {
        left: Box<ArticulationExpression>,
        state: StateId,
        right: Box<ArticulationExpression>,
    },
}

impl ArticulationExpression {
    pub fn joint_states(&self) -> BTreeSet<StateId> {
        match self {
            ArticulationExpression::Component { .. } => BTreeSet::new(),
            ArticulationExpression::Joint { left, state, right } => {
                let mut set = left.joint_states();
                set.insert(*state);
                set.extend(right.joint_states());
                set
            }
        }
    }

    pub fn render(&self, lts: &Lts) -> String {
        match self {
            ArticulationExpression::Component { labels, root } => {
                let mut names: Vec<&str> = labels.iter().map(|&l| lts.label_name(l)).collect();
                names.sort_unstable();
                format!("[{} @{}]", names.join(","), lts.state_name(*root))
            }
            ArticulationExpression::Joint { left, state, right } => format!(
                "({} <{}> {})",
                left.render(lts),
                lts.state_name(*state),
                right.render(lts)
            ),
        }
    }
}

/// The sub-LTS of one component: its block's adjacency set, rooted at the
/// chosen state.
pub fn component_lts(lts: &Lts, labels: &BTreeSet<LabelId>, root: StateId) -> Lts {
    lts.restrict_to_states(&lts.adjacency(labels), labels, root)
}

/// Rebuilds the articulated system from an expression.
pub fn evaluate_expression(lts: &Lts, expr: &ArticulationExpression) -> Lts {
    match expr {
        ArticulationExpression::Component { labels, root } => component_lts(lts, labels, *root),
        ArticulationExpression::Joint { left, state, right } => {
            let l = evaluate_expression(lts, left);
            let r = evaluate_expression(lts, right);
            let joint = l
                .state_id(lts.state_name(*state))
                .expect("joint lies in the left carrier");
            lts::articulate(&l, joint, &r).expect("blocks are label-disjoint")
        }
    }
}

fn smallest_label_name<'a>(lts: &'a Lts, block: &BTreeSet<LabelId>) -> &'a str {
    block
        .iter()
        .map(|&l| lts.label_name(l))
        .min()
        .expect("blocks are non-empty")
}

fn expression_for_block(
    lts: &Lts,
    graph: &ArticulationGraph,
    block: usize,
    root: StateId,
    via: Option<usize>,
) -> ArticulationExpression {
    let mut expr = ArticulationExpression::Component {
        labels: graph.blocks[block].clone(),
        root,
    };
    let mut children: Vec<(usize, usize)> = Vec::new();
    for sn in graph.state_neighbors(block) {
        if Some(sn) == via {
            continue;
        }
        for sub in graph.block_neighbors(sn) {
            if sub != block {
                children.push((sn, sub));
            }
        }
    }
    children.sort_by_key(|&(_, b)| smallest_label_name(lts, &graph.blocks[b]).to_string());
    for (sn, sub) in children {
        let joint = graph.state_nodes[sn];
        let right = expression_for_block(lts, graph, sub, joint, Some(sn));
        expr = ArticulationExpression::Joint {
            left: Box::new(expr),
            state: joint,
            right: Box::new(right),
        };
    }
    expr
}

/// Builds the articulation expression of the system, or `None` when the
/// final partition is a single block.
pub fn articul_expression(lts: &Lts) -> Option<ArticulationExpression> {
    let (_, graph) = articulation_partition(lts);
    let graph = graph?;
    let initial = lts.initial();
    let expr = if let Some(init_node) = graph.state_nodes.iter().position(|&s| s == initial) {
        // Star around the initial state: articulate every satellite there.
        let mut satellites: Vec<usize> = graph.block_neighbors(init_node).collect();
        satellites
            .sort_by_key(|&b| smallest_label_name(lts, &graph.blocks[b]).to_string());
        let mut exprs = satellites
            .into_iter()
            .map(|b| expression_for_block(lts, &graph, b, initial, Some(init_node)));
        let mut acc = exprs.next().expect("state nodes have degree at least two");
        for next in exprs {
            acc = ArticulationExpression::Joint {
                left: Box::new(acc),
                state: initial,
                right: Box::new(next),
            };
        }
        acc
    } else {
        // The initial state touches exactly one block after refinement.
        let root_block = graph
            .blocks
            .iter()
            .position(|b| lts.adjacency(b).contains(&initial))
            .expect("weak liveness covers every state");
        expression_for_block(lts, &graph, root_block, initial, None)
    };
    debug_assert!(
        lts::are_isomorphic(&evaluate_expression(lts, &expr), lts)
            .map(|b| b.is_some())
            .unwrap_or(false),
        "expression must rebuild the input"
    );
    Some(expr)
}

/// Sequence test for a joint: either the joint is a home state and dead end
/// of the left component, or the right component's initial state lies on no
/// non-trivial cycle.
pub fn is_sequence_joint(left: &Lts, s: StateId, right: &Lts) -> bool {
    let all_left: BTreeSet<LabelId> = left.labels().collect();
    let dead_end = left.arcs_from(s).next().is_none();
    let home = left
        .states()
        .all(|s1| left.reachable(s1, &all_left, Mode::Directed).contains(&s));
    if dead_end && home {
        return true;
    }
    let all_right: BTreeSet<LabelId> = right.labels().collect();
    let initial = right.initial();
    let on_cycle = right.arcs_from(initial).any(|a| {
        a.target == initial
            || right
                .reachable(a.target, &all_right, Mode::Directed)
                .contains(&initial)
    });
    !on_cycle
}

fn synthesize_expression(
    lts: &Lts,
    expr: &ArticulationExpression,
    joints: &BTreeSet<StateId>,
    regions_used: &mut usize,
    problems_reused: &mut usize,
) -> Result<(PetriNet, Lts), Witness> {
    match expr {
        ArticulationExpression::Component { labels, root } => {
            let component = component_lts(lts, labels, *root);
            // Adequacy is needed at every joint state the component carries;
            // its own initial state never dominates in a bounded net.
            let required: BTreeSet<StateId> = joints
                .iter()
                .filter(|&&j| j != *root)
                .filter_map(|&j| component.state_id(lts.state_name(j)))
                .collect();
            let report = synthesize_adequate_at(&component, &required);
            *regions_used += report.regions_used;
            *problems_reused += report.problems_reused;
            match report.outcome {
                Outcome::Solved(net) => Ok((net, component)),
                Outcome::Unsolvable(w) => Err(w),
                Outcome::Rejected(_) => unreachable!("components pass the pre-checks"),
            }
        }
        ArticulationExpression::Joint { left, state, right } => {
            let (net_l, carrier_l) =
                synthesize_expression(lts, left, joints, regions_used, problems_reused)?;
            let (net_r, carrier_r) =
                synthesize_expression(lts, right, joints, regions_used, problems_reused)?;
            let joint_in_left = carrier_l
                .state_id(lts.state_name(*state))
                .expect("joint lies in the left carrier");
            let marking = marking_for_state(&net_l, &carrier_l, joint_in_left)
                .expect("left net solves its carrier");
            let net = petri::articulate(&net_l, &marking, &net_r, DEFAULT_STATE_CAP)
                .expect("adequate synthesis provides a junction marking");
            let carrier = lts::articulate(&carrier_l, joint_in_left, &carrier_r)
                .expect("blocks are label-disjoint");
            Ok((net, carrier))
        }
    }
}

/// Detects an articulation and synthesizes component-wise, recombining the
/// solutions via side conditions. Falls back to monolithic synthesis when no
/// non-trivial articulation exists.
pub fn synthesize_articulated(lts: &Lts) -> SynthesisReport {
    let start = Instant::now();
    if let Err(check) = presynthesis(lts) {
        return SynthesisReport {
            outcome: Outcome::Rejected(check),
            regions_used: 0,
            problems_reused: 0,
            elapsed_ms: start.elapsed().as_millis(),
        };
    }
    let Some(expr) = articul_expression(lts) else {
        let mut report = synthesize(lts);
        report.elapsed_ms = start.elapsed().as_millis();
        return report;
    };
    let joints = expr.joint_states();
    let mut regions_used = 0;
    let mut problems_reused = 0;
    let outcome =
        match synthesize_expression(lts, &expr, &joints, &mut regions_used, &mut problems_reused) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lts::are_isomorphic;
    use crate::synthesis::verify;

    fn block_names(lts: &Lts, partition: &LabelPartition) -> Vec<Vec<String>> {
        partition
            .blocks
            .iter()
            .map(|b| {
                let mut v: Vec<String> =
                    b.iter().map(|&l| lts.label_name(l).to_string()).collect();
                v.sort();
                v
            })
            .collect()
    }

    #[test]
    fn refinement_on_grid_and_aabb() {
        let grid = fixtures::grid6();
        let refined = refine_partition(&grid, &LabelPartition::singletons(&grid));
        assert_eq!(block_names(&grid, &refined), vec![vec!["a", "b"]]);

        let aabb = fixtures::aabb();
        let refined = refine_partition(&aabb, &LabelPartition::singletons(&aabb));
        assert_eq!(block_names(&aabb, &refined), vec![vec!["a"], vec!["b"]]);
    }

    #[test]
    fn bigfix_detection_matches_published_partition() {
        let bigfix = fixtures::bigfix();
        let (partition, graph) = articulation_partition(&bigfix);
        assert_eq!(
            block_names(&bigfix, &partition),
            vec![
                vec!["a", "b"],
                vec!["c", "d", "e"],
                vec!["f"],
                vec!["g", "h"],
                vec!["i", "j"],
                vec!["k"],
            ]
        );
        let graph = graph.expect("non-trivial");
        assert!(graph.is_acyclic());
        assert!(graph.is_connected());
        let mut nodes: Vec<&str> = graph
            .state_nodes
            .iter()
            .map(|&s| bigfix.state_name(s))
            .collect();
        nodes.sort();
        assert_eq!(nodes, vec!["s1", "s2", "s3", "s7"]);
        for (i, _) in graph.state_nodes.iter().enumerate() {
            assert!(graph.block_neighbors(i).count() >= 2);
        }
    }

    #[test]
    fn plain_refinement_on_bigfix_needs_cycle_fusion() {
        // Adjacency refinement alone keeps the inner cycle labels separate;
        // only the cycle rule merges them.
        let bigfix = fixtures::bigfix();
        let refined = refine_partition(&bigfix, &LabelPartition::singletons(&bigfix));
        assert_eq!(
            block_names(&bigfix, &refined),
            vec![
                vec!["a", "b"],
                vec!["c"],
                vec!["d"],
                vec!["e"],
                vec!["f"],
                vec!["g", "h"],
                vec!["i", "j"],
                vec!["k"],
            ]
        );
        let graph = build_graph(&bigfix, &refined);
        assert!(!graph.is_acyclic());
        let fused = fuse_cycles(&bigfix, &graph);
        assert_eq!(fused.blocks.len(), 6);
    }

    #[test]
    fn cycle_fusion_on_pure_triangle() {
        // A three-class cycle (the smallest possible: two classes sharing
        // two state nodes would have been merged by refinement already)
        // collapses to a single block.
        let mut b = crate::lts::LtsBuilder::new();
        b.initial("s1");
        b.arc("s1", "c", "s2").unwrap();
        b.arc("s2", "d", "s3").unwrap();
        b.arc("s3", "e", "s1").unwrap();
        let triangle = b.build();
        let refined = refine_partition(&triangle, &LabelPartition::singletons(&triangle));
        assert_eq!(refined.blocks.len(), 3);
        let graph = build_graph(&triangle, &refined);
        assert!(!graph.is_acyclic());
        let fused = fuse_cycles(&triangle, &graph);
        assert_eq!(fused.blocks.len(), 1);
        assert!(articul_expression(&triangle).is_none());
    }

    #[test]
    fn single_block_graph_is_trivial() {
        let grid = fixtures::grid6();
        let refined = refine_partition(&grid, &LabelPartition::singletons(&grid));
        let graph = build_graph(&grid, &refined);
        assert!(graph.state_nodes.is_empty());
        assert!(graph.is_acyclic());
        assert_eq!(fuse_cycles(&grid, &graph).blocks.len(), 1);
        assert!(articul_expression(&grid).is_none());
    }

    #[test]
    fn aabb_expression() {
        let aabb = fixtures::aabb();
        let expr = articul_expression(&aabb).expect("articulated around s2");
        let s2 = aabb.state_id("s2").unwrap();
        match &expr {
            ArticulationExpression::Joint { left, state, right } => {
                assert_eq!(*state, s2);
                assert!(matches!(**left, ArticulationExpression::Component { .. }));
                assert!(matches!(**right, ArticulationExpression::Component { .. }));
            }
            other => panic!("unexpected expression {other:?}"),
        }
        let rebuilt = evaluate_expression(&aabb, &expr);
        assert!(are_isomorphic(&rebuilt, &aabb).unwrap().is_some());
    }

    #[test]
    fn bigfix_expression_rebuilds_input() {
        let bigfix = fixtures::bigfix();
        let expr = articul_expression(&bigfix).expect("non-trivial");
        let rebuilt = evaluate_expression(&bigfix, &expr);
        assert!(are_isomorphic(&rebuilt, &bigfix).unwrap().is_some());
        // Six components, five joints.
        fn count(expr: &ArticulationExpression) -> (usize, usize) {
            match expr {
                ArticulationExpression::Component { .. } => (1, 0),
                ArticulationExpression::Joint { left, right, .. } => {
                    let (lc, lj) = count(left);
                    let (rc, rj) = count(right);
                    (lc + rc, lj + rj + 1)
                }
            }
        }
        assert_eq!(count(&expr), (6, 5));
    }

    #[test]
    fn evolutions_alternate_through_the_joint() {
        // Every path of an articulated system alternates component runs
        // separated by visits of the joint state.
        use rand::prelude::*;
        let cycles = fixtures::cycles4();
        let expr = articul_expression(&cycles).expect("articulated around s");
        let ArticulationExpression::Joint { left, state, .. } = &expr else {
            panic!("expected a joint");
        };
        let ArticulationExpression::Component { labels: left_labels, .. } = &**left else {
            panic!("expected a component on the left");
        };
        let joint = *state;
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let mut s = cycles.initial();
            let mut previous_side: Option<bool> = None;
            for _ in 0..12 {
                let arcs: Vec<_> = cycles.arcs_from(s).collect();
                let Some(arc) = arcs.choose(&mut rng) else { break };
                let side = left_labels.contains(&arc.label);
                if let Some(prev) = previous_side {
                    if prev != side {
                        assert_eq!(s, joint, "component switches happen at the joint");
                    }
                }
                previous_side = Some(side);
                s = arc.target;
            }
        }
    }

    #[test]
    fn sequence_joints() {
        let sd = fixtures::seqdiamond();
        let start: BTreeSet<_> = [sd.label_id("start").unwrap()].into_iter().collect();
        let left = component_lts(&sd, &start, sd.initial());
        let s1 = left.state_id("s1").unwrap();
        let inner: BTreeSet<_> = ["a", "b"].iter().map(|n| sd.label_id(n).unwrap()).collect();
        let right = component_lts(&sd, &inner, sd.state_id("s1").unwrap());
        assert!(is_sequence_joint(&left, s1, &right));

        let abc2 = fixtures::abc2();
        let def2 = fixtures::def2();
        let s = abc2.state_id("s").unwrap();
        assert!(!is_sequence_joint(&abc2, s, &def2));

        let mut b = crate::lts::LtsBuilder::new();
        b.initial("i");
        b.arc("i", "f", "sp").unwrap();
        let single_arc = b.build();
        assert!(is_sequence_joint(&abc2, s, &single_arc));
    }

    #[test]
    fn articulated_synthesis_of_cycles4() {
        let cycles = fixtures::cycles4();
        let report = synthesize_articulated(&cycles);
        let net = report.solved_net().expect("solvable");
        assert!(verify(net, &cycles).unwrap());
        // The junction glue shows up as side-condition pairs.
        let mut pairs = 0;
        for p in net.places() {
            for t in net.transitions() {
                let c = net.weight_consume(p, t);
                if c > 0 && c == net.weight_produce(t, p) {
                    pairs += 1;
                }
            }
        }
        assert!(pairs >= 2, "expected at least two side conditions, got {pairs}");
    }

    #[test]
    fn articulated_synthesis_of_aabb() {
        let aabb = fixtures::aabb();
        let report = synthesize_articulated(&aabb);
        let net = report.solved_net().expect("solvable");
        assert!(verify(net, &aabb).unwrap());
    }

    #[test]
    fn articulated_equals_monolithic_on_trivial_partition() {
        let grid = fixtures::grid6();
        let report = synthesize_articulated(&grid);
        assert!(report.is_solved());
        assert!(verify(report.solved_net().unwrap(), &grid).unwrap());
    }

    #[test]
    fn side_conditions_weights_match_both_ways() {
        let cycles = fixtures::cycles4();
        let report = synthesize_articulated(&cycles);
        let net = report.solved_net().unwrap();
        let rg_then = net.reachability_graph(DEFAULT_STATE_CAP).unwrap();
        assert!(are_isomorphic(&rg_then, &cycles).unwrap().is_some());
    }

    #[test]
    fn articulated_net_graph_matches_lts_articulation() {
        // Combining the component nets and articulating the component
        // systems commute.
        let aabb = fixtures::aabb();
        let expr = articul_expression(&aabb).expect("non-trivial");
        let ArticulationExpression::Joint { left, state, right } = expr else {
            panic!("expected a joint");
        };
        let (ArticulationExpression::Component { labels: bl, root: rl },
             ArticulationExpression::Component { labels: br, root: rr }) = (&*left, &*right)
        else {
            panic!("expected two components");
        };
        let left_lts = component_lts(&aabb, bl, *rl);
        let right_lts = component_lts(&aabb, br, *rr);
        let joint_in_left = left_lts.state_id(aabb.state_name(state)).unwrap();

        let left_net = synthesize_adequate_at(&left_lts, &[joint_in_left].into_iter().collect());
        let right_net = synthesize(&right_lts);
        let (nl, nr) = (
            left_net.solved_net().unwrap(),
            right_net.solved_net().unwrap(),
        );
        let m = marking_for_state(nl, &left_lts, joint_in_left).unwrap();
        let combined = petri::articulate(nl, &m, nr, DEFAULT_STATE_CAP).unwrap();
        let rg = combined.reachability_graph(DEFAULT_STATE_CAP).unwrap();
        let expected = lts::articulate(&left_lts, joint_in_left, &right_lts).unwrap();
        assert!(are_isomorphic(&rg, &expected).unwrap().is_some());
        assert!(are_isomorphic(&rg, &aabb).unwrap().is_some());
    }
}
