//! Region theory: separation problems, their linear constraint systems, and
//! the translation of regions into places.
//!
//! Two solving routes are provided. [`solve_separation`] appends the strict
//! rows to the full constraint system of [`base_constraints`] and runs the
//! exact simplex on it; it is the reference used by tests and for witness
//! revalidation. [`RegionContext`] solves the same problems after a
//! structural reduction (state values expressed through spanning-tree Parikh
//! vectors, backward weights eliminated against their bounds), which shrinks
//! each run to a handful of unknowns; the synthesis loop uses it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lts::{Lts, LabelId, StateId};
use crate::petri::{PetriNet, PetriNetBuilder};
use crate::simplex::{self, Relation, Row};

/// A state or event/state separation problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationProblem {
    Ssp { s1: StateId, s2: StateId },
    Essp { state: StateId, label: LabelId },
}

impl SeparationProblem {
    pub fn render(&self, lts: &Lts) -> String {
        match *self {
            SeparationProblem::Ssp { s1, s2 } => {
                format!("SSP({}, {})", lts.state_name(s1), lts.state_name(s2))
            }
            SeparationProblem::Essp { state, label } => {
                format!("ESSP({}, {})", lts.state_name(state), lts.label_name(label))
            }
        }
    }
}

/// All unordered state pairs, ordered by discovery index.
pub fn enumerate_ssp(lts: &Lts) -> Vec<SeparationProblem> {
    let n = lts.num_states();
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(SeparationProblem::Ssp {
                s1: StateId(i),
                s2: StateId(j),
            });
        }
    }
    out
}

/// All (state, label) pairs where the label is not enabled, ordered by
/// (state discovery index, label name).
pub fn enumerate_essp(lts: &Lts) -> Vec<SeparationProblem> {
    let labels = alphabetical_labels(lts);
    let mut out = Vec::new();
    for s in lts.states() {
        let enabled: std::collections::BTreeSet<LabelId> =
            lts.arcs_from(s).map(|a| a.label).collect();
        for &l in &labels {
            if !enabled.contains(&l) {
                out.push(SeparationProblem::Essp { state: s, label: l });
            }
        }
    }
    out
}

/// Labels sorted by name; fixes the variable order of the constraint systems.
pub fn alphabetical_labels(lts: &Lts) -> Vec<LabelId> {
    let mut labels: Vec<LabelId> = lts.labels().collect();
    labels.sort_by_key(|&l| lts.label_name(l));
    labels
}

/// Variable layout of the full system: one value per state in discovery
/// order, then one backward and one forward weight per label, labels
/// alphabetical.
#[derive(Debug, Clone)]
pub struct VarLayout {
    pub num_states: usize,
    pub labels: Vec<LabelId>,
    backward_pos: Vec<usize>,
    forward_pos: Vec<usize>,
}

impl VarLayout {
    pub fn new(lts: &Lts) -> VarLayout {
        let labels = alphabetical_labels(lts);
        let mut backward_pos = vec![0; lts.num_labels()];
        let mut forward_pos = vec![0; lts.num_labels()];
        for (i, &l) in labels.iter().enumerate() {
            backward_pos[l.0] = lts.num_states() + i;
            forward_pos[l.0] = lts.num_states() + labels.len() + i;
        }
        VarLayout {
            num_states: lts.num_states(),
            labels,
            backward_pos,
            forward_pos,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_states + 2 * self.labels.len()
    }

    pub fn rho(&self, s: StateId) -> usize {
        s.0
    }

    pub fn backward(&self, l: LabelId) -> usize {
        self.backward_pos[l.0]
    }

    pub fn forward(&self, l: LabelId) -> usize {
        self.forward_pos[l.0]
    }
}

/// Sparse linear relations over nonnegative variables; right-hand sides are
/// 0 for the structural rows and 1 for the normalized strict rows.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub num_vars: usize,
    pub rows: Vec<SparseRow>,
}

#[derive(Debug, Clone)]
pub struct SparseRow {
    pub coeffs: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl ConstraintSystem {
    pub fn new(num_vars: usize) -> ConstraintSystem {
        ConstraintSystem { num_vars, rows: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        self.rows.push(SparseRow { coeffs, relation, rhs });
    }

    fn dense_rows(&self) -> Vec<Row> {
        self.rows
            .iter()
            .map(|r| {
                let mut coeffs = vec![0i64; self.num_vars];
                for &(j, c) in &r.coeffs {
                    coeffs[j] += c;
                }
                Row::from_i64(&coeffs, r.relation, r.rhs)
            })
            .collect()
    }
}

/// The behaviour constraints of a place over the transition system: for each
/// arc (s, a, s'), the value at s covers the backward weight of a, and the
/// value difference along the arc equals forward minus backward weight.
pub fn base_constraints(lts: &Lts) -> ConstraintSystem {
    let layout = VarLayout::new(lts);
    let mut system = ConstraintSystem::new(layout.num_vars());
    for arc in lts.arcs() {
        system.push(
            vec![(layout.rho(arc.source), 1), (layout.backward(arc.label), -1)],
            Relation::Ge,
            0,
        );
        system.push(
            vec![
                (layout.rho(arc.target), 1),
                (layout.rho(arc.source), -1),
                (layout.forward(arc.label), -1),
                (layout.backward(arc.label), 1),
            ],
            Relation::Eq,
            0,
        );
    }
    system
}

/// Exact rational feasibility of a constraint system (variables implicitly
/// nonnegative). Returns a satisfying point or `None` when infeasible.
pub fn feasible(system: &ConstraintSystem) -> Option<Vec<BigRational>> {
    simplex::feasible_point(system.num_vars, &system.dense_rows())
}

/// An integer region: one place candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    /// Token value per state, indexed by state discovery order.
    pub rho: Vec<u64>,
    /// Backward (consumption) weight per label, indexed by label id.
    pub backward: Vec<u64>,
    /// Forward (production) weight per label, indexed by label id.
    pub forward: Vec<u64>,
}

impl Region {
    /// The defining conditions, checked arc by arc.
    pub fn is_valid(&self, lts: &Lts) -> bool {
        lts.arcs().iter().all(|arc| {
            let s = self.rho[arc.source.0] as i64;
            let t = self.rho[arc.target.0] as i64;
            let b = self.backward[arc.label.0] as i64;
            let f = self.forward[arc.label.0] as i64;
            s >= b && t - s == f - b
        })
    }
}

/// Whether the region separates the given problem.
pub fn region_solves(region: &Region, problem: &SeparationProblem) -> bool {
    match *problem {
        SeparationProblem::Ssp { s1, s2 } => region.rho[s1.0] != region.rho[s2.0],
        SeparationProblem::Essp { state, label } => {
            region.rho[state.0] < region.backward[label.0]
        }
    }
}

fn strict_rows(layout: &VarLayout, problem: &SeparationProblem) -> Vec<Vec<(usize, i64)>> {
    match *problem {
        SeparationProblem::Essp { state, label } => vec![vec![
            (layout.backward(label), 1),
            (layout.rho(state), -1),
        ]],
        SeparationProblem::Ssp { s1, s2 } => vec![
            vec![(layout.rho(s1), 1), (layout.rho(s2), -1)],
            vec![(layout.rho(s2), 1), (layout.rho(s1), -1)],
        ],
    }
}

fn region_from_point(lts: &Lts, layout: &VarLayout, point: &[BigRational]) -> Region {
    let ints = simplex::scale_to_integers(point);
    let to_u64 = |v: &BigInt| -> u64 {
        u64::try_from(v.clone()).expect("scaled region weights are small nonnegative integers")
    };
    let rho = (0..layout.num_states)
        .map(|i| to_u64(&ints[i]))
        .collect();
    let mut backward = vec![0u64; lts.num_labels()];
    let mut forward = vec![0u64; lts.num_labels()];
    for &l in &layout.labels {
        backward[l.0] = to_u64(&ints[layout.backward(l)]);
        forward[l.0] = to_u64(&ints[layout.forward(l)]);
    }
    Region { rho, backward, forward }
}

/// Reference route: append the normalized strict rows to the base system and
/// run the exact simplex. An event/state problem takes one feasibility run,
/// a state pair takes up to two (the value difference tried in both signs).
/// `None` means every run was infeasible: the problem is unsolvable.
pub fn solve_separation(
    lts: &Lts,
    base: &ConstraintSystem,
    problem: &SeparationProblem,
) -> Option<Region> {
    let layout = VarLayout::new(lts);
    for strict in strict_rows(&layout, problem) {
        let mut system = base.clone();
        system.push(strict, Relation::Ge, 1);
        if let Some(point) = feasible(&system) {
            let region = region_from_point(lts, &layout, &point);
            debug_assert!(region.is_valid(lts));
            debug_assert!(region_solves(&region, problem));
            return Some(region);
        }
    }
    None
}

/// One place per region: consumption is the backward weight, production the
/// forward weight, and the initial marking the value at the initial state.
pub fn net_from_regions(lts: &Lts, regions: &[Region]) -> PetriNet {
    let mut b = PetriNetBuilder::new();
    for (i, region) in regions.iter().enumerate() {
        b.place(&format!("p{i}"), region.rho[lts.initial().0]);
    }
    for l in lts.labels() {
        b.transition(lts.label_name(l));
    }
    for (i, region) in regions.iter().enumerate() {
        for l in lts.labels() {
            let w = region.backward[l.0];
            if w > 0 {
                b.consume(&format!("p{i}"), lts.label_name(l), w)
                    .expect("declared");
            }
            let w = region.forward[l.0];
            if w > 0 {
                b.produce(lts.label_name(l), &format!("p{i}"), w)
                    .expect("declared");
            }
        }
    }
    b.build()
}

/// Pre-computed structural reduction for one transition system.
///
/// State values are written as `rho(initial) + psi(s) . e`, where `psi(s)` is
/// the Parikh vector of a spanning-tree path and `e` the per-label effect
/// vector, itself constrained to the null space of the fundamental-cycle
/// Parikh vectors. Backward weights drop out: their feasibility interval is
/// nonempty exactly when the remaining state rows hold, so one small system
/// over `rho(initial)` and the cycle-space coordinates decides each problem.
#[derive(Debug)]
pub struct RegionContext<'a> {
    lts: &'a Lts,
    /// Parikh vector of the tree path per state (|T| entries each).
    psi: Vec<Vec<i64>>,
    /// Integer basis of the effect null space, one column per free direction.
    basis: Vec<Vec<BigInt>>,
    /// Per state, the coefficients of the cycle-space coordinates.
    state_rows: Vec<Vec<BigInt>>,
}

impl<'a> RegionContext<'a> {
    /// Requires a totally reachable system.
    pub fn new(lts: &'a Lts) -> RegionContext<'a> {
        assert!(lts.is_totally_reachable(), "context needs total reachability");
        let n = lts.num_states();
        let t = lts.num_labels();

        // Breadth-first spanning tree; an arc is a tree arc iff it was the
        // first to discover its target.
        let mut psi: Vec<Option<Vec<i64>>> = vec![None; n];
        let mut discovered_by: Vec<Option<usize>> = vec![None; n];
        psi[lts.initial().0] = Some(vec![0; t]);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(lts.initial());
        while let Some(s) = queue.pop_front() {
            for (i, arc) in lts.arcs().iter().enumerate() {
                if arc.source == s && psi[arc.target.0].is_none() {
                    let mut v = psi[s.0].clone().expect("visited");
                    v[arc.label.0] += 1;
                    psi[arc.target.0] = Some(v);
                    discovered_by[arc.target.0] = Some(i);
                    queue.push_back(arc.target);
                }
            }
        }
        let mut non_tree: Vec<&crate::lts::Arc> = Vec::new();
        for (i, arc) in lts.arcs().iter().enumerate() {
            if discovered_by[arc.target.0] != Some(i) {
                non_tree.push(arc);
            }
        }
        let psi: Vec<Vec<i64>> = psi.into_iter().map(|v| v.expect("totally reachable")).collect();

        let mut cycle_rows: Vec<Vec<BigRational>> = Vec::new();
        for arc in non_tree {
            let mut row = vec![BigRational::zero(); t];
            for l in 0..t {
                let c = psi[arc.source.0][l] - psi[arc.target.0][l];
                row[l] = BigRational::from(BigInt::from(c));
            }
            row[arc.label.0] += BigRational::from(BigInt::from(1));
            cycle_rows.push(row);
        }
        let basis = nullspace_basis(&mut cycle_rows, t);
        let state_rows = psi
            .iter()
            .map(|p| {
                basis
                    .iter()
                    .map(|col| {
                        let mut acc = BigInt::zero();
                        for (l, c) in col.iter().enumerate() {
                            if p[l] != 0 {
                                acc += c * BigInt::from(p[l]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        RegionContext { lts, psi, basis, state_rows }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Solves one separation problem through the reduced system.
    pub fn solve(&self, problem: &SeparationProblem) -> Option<Region> {
        match *problem {
            SeparationProblem::Essp { state, label } => {
                let diffs: Vec<Vec<BigInt>> = self
                    .lts
                    .arcs()
                    .iter()
                    .filter(|a| a.label == label)
                    .map(|a| self.row_difference(a.source, state))
                    .collect();
                self.run(&diffs, problem)
            }
            SeparationProblem::Ssp { s1, s2 } => {
                let first = vec![self.row_difference(s1, s2)];
                if let Some(r) = self.run(&first, problem) {
                    return Some(r);
                }
                let second = vec![self.row_difference(s2, s1)];
                self.run(&second, problem)
            }
        }
    }

    fn row_difference(&self, a: StateId, b: StateId) -> Vec<BigInt> {
        self.state_rows[a.0]
            .iter()
            .zip(&self.state_rows[b.0])
            .map(|(x, y)| x - y)
            .collect()
    }

    /// Feasibility of: every state value nonnegative, every strict row >= 1.
    /// Variables are rho(initial) and the split cycle coordinates.
    fn run(&self, strict: &[Vec<BigInt>], problem: &SeparationProblem) -> Option<Region> {
        let d = self.dim();
        let num_vars = 1 + 2 * d;
        let mut rows: Vec<Row> = Vec::with_capacity(self.state_rows.len() + strict.len());
        let expand = |coeffs: &[BigInt], with_rho: bool, rhs: i64| -> Row {
            let mut c = vec![BigRational::zero(); num_vars];
            if with_rho {
                c[0] = BigRational::from(BigInt::from(1));
            }
            for (j, v) in coeffs.iter().enumerate() {
                let v = BigRational::from(v.clone());
                c[1 + 2 * j] = v.clone();
                c[2 + 2 * j] = -v;
            }
            Row { coeffs: c, relation: Relation::Ge, rhs: BigRational::from(BigInt::from(rhs)) }
        };
        for state_row in &self.state_rows {
            rows.push(expand(state_row, true, 0));
        }
        for s in strict {
            rows.push(expand(s, false, 1));
        }
        let point = simplex::feasible_point(num_vars, &rows)?;
        Some(self.region_from_reduced(&point, problem))
    }

    fn region_from_reduced(&self, point: &[BigRational], problem: &SeparationProblem) -> Region {
        let d = self.dim();
        let rho_iota = point[0].clone();
        let y: Vec<BigRational> = (0..d)
            .map(|j| &point[1 + 2 * j] - &point[2 + 2 * j])
            .collect();
        // Per-label effects e = basis . y.
        let t = self.lts.num_labels();
        let mut effect = vec![BigRational::zero(); t];
        for (j, col) in self.basis.iter().enumerate() {
            if y[j].is_zero() {
                continue;
            }
            for l in 0..t {
                if !col[l].is_zero() {
                    effect[l] += BigRational::from(col[l].clone()) * &y[j];
                }
            }
        }
        let rho: Vec<BigRational> = self
            .psi
            .iter()
            .map(|p| {
                let mut acc = rho_iota.clone();
                for (l, &count) in p.iter().enumerate() {
                    if count != 0 {
                        acc += &effect[l] * BigRational::from(BigInt::from(count));
                    }
                }
                acc
            })
            .collect();
        // Backward weight: the least value admitted by its lower bounds; the
        // forward weight follows from the effect.
        let mut backward = vec![BigRational::zero(); t];
        for l in 0..t {
            if effect[l].is_negative() {
                backward[l] = -effect[l].clone();
            }
            if let SeparationProblem::Essp { state, label } = *problem {
                if label.0 == l {
                    let needed = &rho[state.0] + BigRational::from(BigInt::from(1));
                    if needed > backward[l] {
                        backward[l] = needed;
                    }
                }
            }
        }
        let forward: Vec<BigRational> =
            (0..t).map(|l| &effect[l] + &backward[l]).collect();

        let mut all: Vec<BigRational> = Vec::with_capacity(rho.len() + 2 * t);
        all.extend(rho.iter().cloned());
        all.extend(backward.iter().cloned());
        all.extend(forward.iter().cloned());
        let ints = simplex::scale_to_integers(&all);
        let to_u64 = |v: &BigInt| -> u64 {
            u64::try_from(v.clone()).expect("scaled region weights are small nonnegative integers")
        };
        let n = rho.len();
        let region = Region {
            rho: (0..n).map(|i| to_u64(&ints[i])).collect(),
            backward: (0..t).map(|l| to_u64(&ints[n + l])).collect(),
            forward: (0..t).map(|l| to_u64(&ints[n + t + l])).collect(),
        };
        debug_assert!(region.is_valid(self.lts), "reduced route produced an invalid region");
        debug_assert!(region_solves(&region, problem));
        region
    }
}

/// Reduces `rows` (dense rational, `width` columns) and returns an integer
/// basis of their common null space, one vector per free column.
fn nullspace_basis(rows: &mut [Vec<BigRational>], width: usize) -> Vec<Vec<BigInt>> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for cell in rows[rank].iter_mut() {
            *cell /= &p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..width {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; width];
        for (r, &c) in pivot_cols.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..width {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut vector = vec![BigRational::zero(); width];
        vector[free] = BigRational::from(BigInt::from(1));
        for (r, &c) in pivot_cols.iter().enumerate() {
            vector[c] = -rows[r][free].clone();
        }
        basis.push(simplex::scale_to_integers_signed(&vector));
    }
    basis
}
