// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Rooted complete minors in line graphs.
//!
//! Given `H`, a partition `𝔠` of `E(H)` into `k` matchings with pairwise
//! connected unions, and a transversal `T`, [`solve`] returns `k` bags:
//! connected, pairwise disjoint, pairwise incident edge sets, each holding
//! exactly one edge of `T`. Read as vertex sets of `L(H)` they are the
//! branching sets of a `K_k` minor rooted at `T`.
//!
//! The recursion works on `|E(H)|`:
//!
//! 1. `k <= 2` is handled directly.
//! 2. Parallel edges force a rigid structure handled by [`solve_parallel`].
//! 3. If some vertex `v` has degree `k`, its edges `U` form a `k`-clique in
//!    `L(H)`. Either `k` disjoint `U,T`-paths exist (and are the answer) or
//!    a separator `S` of size `k - 1` splits `H - S` into sides `C' ∋ v` and
//!    `D'`. The side `C'` is contracted, the smaller instance solved, and
//!    each bag is lifted back through edge-disjoint `v,w`-paths found with
//!    `D'` contracted to `w`.
//! 4. Otherwise `H` must be `K_k` and [`solve_complete`] applies.
//!
//! Every structural fact the recursion depends on is checked at runtime and
//! reported as [`SolveError::InternalAssertion`] if it fails.

mod complete;
mod parallel;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::coloring::{
    verify_kempe, verify_matching_partition, verify_transversal, KempeViolation, MatchingPartition, PartitionViolation,
    Transversal, TransversalViolation, Verdict,
};
use crate::graph::{contract, edge_components, line_graph, EdgeId, Multigraph, VertexId};
use crate::paths::{disjoint_paths_or_separator, edge_disjoint_paths, split_sides, MengerOutcome};

pub use complete::{assert_complete_fallback, solve_complete, FallbackReport};
pub use parallel::solve_parallel;

/// Bags of a rooted clique minor, one per color class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BagSystem {
    pub bags: Vec<BTreeSet<EdgeId>>,
}

impl BagSystem {
    pub fn new(bags: Vec<BTreeSet<EdgeId>>) -> Self {
        BagSystem { bags }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Orders bags by the class of their transversal edge.
    pub fn sort_by_class(&mut self, partition: &MatchingPartition, t: &Transversal) {
        let class = partition.class_index();
        self.bags.sort_by_key(|b| {
            b.iter().find(|e| t.contains(**e)).and_then(|e| class.get(e).copied()).unwrap_or(usize::MAX)
        });
    }

    /// Bags as an order-independent set, for comparisons in tests.
    pub fn canonical(&self) -> BTreeSet<BTreeSet<EdgeId>> {
        self.bags.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParallelCase {
    /// The transversal edges are pairwise incident.
    Singletons,
    /// One bag merges three edges around the two parallel edges.
    Merged { merged: BTreeSet<EdgeId> },
}

/// Witnesses of one separator-and-contract step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorStep {
    pub depth: usize,
    pub k: usize,
    pub vertex: VertexId,
    pub hub: BTreeSet<EdgeId>,
    pub separator: BTreeSet<EdgeId>,
    /// Class index of each separator edge.
    pub separator_classes: BTreeMap<EdgeId, usize>,
    /// The unique class missing the separator.
    pub free_class: usize,
    pub side_c: BTreeSet<EdgeId>,
    pub side_d: BTreeSet<EdgeId>,
    /// Vertex that `D'` was contracted to.
    pub contracted_d: VertexId,
    /// Vertex that `C'` was contracted to.
    pub contracted_c: VertexId,
    /// `P_e` for every separator edge `e`.
    pub lifting_paths: BTreeMap<EdgeId, Vec<EdgeId>>,
    pub edges_before: usize,
    pub edges_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    Base { depth: usize, k: usize },
    ParallelPeel { depth: usize, pair: (EdgeId, EdgeId), peeled: EdgeId },
    ParallelClose { depth: usize, pair: (EdgeId, EdgeId), case: ParallelCase },
    MengerSuccess { depth: usize, vertex: VertexId, hub: BTreeSet<EdgeId>, paths: Vec<Vec<EdgeId>> },
    SeparatorContraction(SeparatorStep),
    CompleteFallback { depth: usize, report: FallbackReport },
}

impl ReductionStep {
    pub fn depth(&self) -> usize {
        match self {
            Self::Base { depth, .. }
            | Self::ParallelPeel { depth, .. }
            | Self::ParallelClose { depth, .. }
            | Self::MengerSuccess { depth, .. }
            | Self::CompleteFallback { depth, .. } => *depth,
            Self::SeparatorContraction(s) => s.depth,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Base { .. } => "base",
            Self::ParallelPeel { .. } => "parallel-peel",
            Self::ParallelClose { .. } => "parallel-close",
            Self::MengerSuccess { .. } => "menger-success",
            Self::SeparatorContraction(_) => "separator-contraction",
            Self::CompleteFallback { .. } => "complete-fallback",
        }
    }
}

/// Steps in the order they were taken (outermost first).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn separator_steps(&self) -> impl Iterator<Item = &SeparatorStep> + '_ {
        self.steps.iter().filter_map(|s| match s {
            ReductionStep::SeparatorContraction(step) => Some(step),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub bags: BagSystem,
    pub trace: ReductionTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputProblem {
    Partition(Vec<PartitionViolation>),
    Kempe(Vec<KempeViolation>),
    Transversal(Vec<TransversalViolation>),
    NoParallelEdges,
    NotComplete,
    TooFewVertices(usize),
    TransversalSize { expected: usize, found: usize },
    UnknownEdge(EdgeId),
}

impl fmt::Display for InputProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Partition(v) => write!(f, "not a matching partition ({})", Verdict::from_violations(v.clone())),
            Self::Kempe(v) => write!(f, "not a Kempe partition ({})", Verdict::from_violations(v.clone())),
            Self::Transversal(v) => write!(f, "not a transversal ({})", Verdict::from_violations(v.clone())),
            Self::NoParallelEdges => write!(f, "graph has no parallel edges"),
            Self::NotComplete => write!(f, "graph is not a simple complete graph"),
            Self::TooFewVertices(n) => write!(f, "complete graph needs at least 3 vertices, got {n}"),
            Self::TransversalSize { expected, found } => {
                write!(f, "expected {expected} prescribed edges, got {found}")
            }
            Self::UnknownEdge(e) => write!(f, "edge {e} is not in the graph"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("invalid input: {0}")]
    InvalidInput(InputProblem),
    #[error("internal assertion failed: {fact}")]
    InternalAssertion { fact: String },
}

pub(crate) fn assertion(fact: impl Into<String>) -> SolveError {
    SolveError::InternalAssertion { fact: fact.into() }
}

pub(crate) fn ensure(cond: bool, fact: impl FnOnce() -> String) -> Result<(), SolveError> {
    if cond {
        Ok(())
    } else {
        Err(assertion(fact()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BagViolation {
    WrongBagCount { expected: usize, found: usize },
    EmptyBag { bag: usize },
    UnknownEdge { bag: usize, edge: EdgeId },
    Overlap { edge: EdgeId, bags: (usize, usize) },
    Disconnected { bag: usize, components: usize },
    NotIncident { bags: (usize, usize) },
    TransversalCount { bag: usize, count: usize },
    UnusedTransversalEdge { edge: EdgeId },
}

impl fmt::Display for BagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongBagCount { expected, found } => write!(f, "expected {expected} bags, found {found}"),
            Self::EmptyBag { bag } => write!(f, "bag {bag} is empty"),
            Self::UnknownEdge { bag, edge } => write!(f, "bag {bag} names unknown edge {edge}"),
            Self::Overlap { edge, bags } => write!(f, "edge {edge} is in bags {} and {}", bags.0, bags.1),
            Self::Disconnected { bag, components } => write!(f, "bag {bag} has {components} components"),
            Self::NotIncident { bags } => write!(f, "bags {} and {} are not incident", bags.0, bags.1),
            Self::TransversalCount { bag, count } => {
                write!(f, "bag {bag} holds {count} prescribed edges")
            }
            Self::UnusedTransversalEdge { edge } => write!(f, "prescribed edge {edge} is in no bag"),
        }
    }
}

/// Checks bags against `H` and the prescribed edges, without a partition.
pub fn check_bags(h: &Multigraph, prescribed: &BTreeSet<EdgeId>, bags: &BagSystem) -> Verdict<BagViolation> {
    let mut violations = Vec::new();
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, bag) in bags.bags.iter().enumerate() {
        if bag.is_empty() {
            violations.push(BagViolation::EmptyBag { bag: i });
        }
        for &e in bag {
            if !h.has_edge(e) {
                violations.push(BagViolation::UnknownEdge { bag: i, edge: e });
            }
            if let Some(&first) = owner.get(&e) {
                violations.push(BagViolation::Overlap { edge: e, bags: (first, i) });
            } else {
                owner.insert(e, i);
            }
        }
        let known: BTreeSet<EdgeId> = bag.iter().copied().filter(|e| h.has_edge(*e)).collect();
        if !known.is_empty() {
            let components = edge_components(h, &known).map_or(0, |p| p.len());
            if components != 1 {
                violations.push(BagViolation::Disconnected { bag: i, components });
            }
        }
        let count = bag.intersection(prescribed).count();
        if count != 1 {
            violations.push(BagViolation::TransversalCount { bag: i, count });
        }
    }
    let covered: Vec<BTreeSet<VertexId>> = bags.bags.iter().map(|b| h.covered(b)).collect();
    for i in 0..covered.len() {
        for j in i + 1..covered.len() {
            if covered[i].is_disjoint(&covered[j]) {
                violations.push(BagViolation::NotIncident { bags: (i, j) });
            }
        }
    }
    for &t in prescribed {
        if !owner.contains_key(&t) {
            violations.push(BagViolation::UnusedTransversalEdge { edge: t });
        }
    }
    Verdict::from_violations(violations)
}

/// Accepts iff `bags` is a rooted clique minor for `(H, 𝔠, T)`.
pub fn verify_solution(
    h: &Multigraph,
    partition: &MatchingPartition,
    t: &Transversal,
    bags: &BagSystem,
) -> Verdict<BagViolation> {
    let mut verdict = check_bags(h, t.edges(), bags);
    if bags.len() != partition.k() {
        verdict.violations.insert(0, BagViolation::WrongBagCount { expected: partition.k(), found: bags.len() });
    }
    verdict
}

/// Runs the three input verifiers in order and reports the first rejection.
pub fn validate_input(h: &Multigraph, partition: &MatchingPartition, t: &Transversal) -> Result<(), SolveError> {
    let verdict = verify_matching_partition(h, partition);
    if !verdict.accepted() {
        return Err(SolveError::InvalidInput(InputProblem::Partition(verdict.violations)));
    }
    let verdict = verify_kempe(h, partition);
    if !verdict.accepted() {
        return Err(SolveError::InvalidInput(InputProblem::Kempe(verdict.violations)));
    }
    let verdict = verify_transversal(partition, t);
    if !verdict.accepted() {
        return Err(SolveError::InvalidInput(InputProblem::Transversal(verdict.violations)));
    }
    Ok(())
}

pub fn solve(h: &Multigraph, partition: &MatchingPartition, t: &Transversal) -> Result<Solution, SolveError> {
    validate_input(h, partition, t)?;
    let mut trace = ReductionTrace::default();
    let bags = solve_level(h, partition, t, 0, &mut trace)?;
    let mut bags = BagSystem::new(bags);
    bags.sort_by_class(partition, t);
    let verdict = verify_solution(h, partition, t, &bags);
    ensure(verdict.accepted(), || format!("final bag system is valid ({verdict})"))?;
    Ok(Solution { bags, trace })
}

pub(crate) fn solve_level(
    h: &Multigraph,
    partition: &MatchingPartition,
    t: &Transversal,
    depth: usize,
    trace: &mut ReductionTrace,
) -> Result<Vec<BTreeSet<EdgeId>>, SolveError> {
    let h = h.without_isolated();
    let k = partition.k();
    ensure(partition.classes().iter().all(|c| !c.is_empty()), || {
        format!("every color class is nonempty at depth {depth}")
    })?;

    let bags = if k <= 2 {
        trace.steps.push(ReductionStep::Base { depth, k });
        small_k(&h, t)?
    } else if h.parallel_pair().is_some() {
        parallel::parallel_level(&h, partition, t, depth, trace)?
    } else if let Some(v) = h.vertices().find(|&v| h.degree(v) >= k) {
        ensure(h.degree(v) == k, || format!("degree of {v} is at most k = {k}"))?;
        full_degree(&h, partition, t, v, depth, trace)?
    } else {
        let report = assert_complete_fallback(&h, partition)?;
        trace.steps.push(ReductionStep::CompleteFallback { depth, report });
        complete::complete_bags(&h, t.edges())?
    };

    let system = BagSystem::new(bags);
    let verdict = check_bags(&h, t.edges(), &system);
    ensure(verdict.accepted() && system.len() == k, || format!("bag system at depth {depth} is valid ({verdict})"))?;
    Ok(system.bags)
}

/// `k <= 2`: `E(H)` is a single path or cycle when `k = 2`.
fn small_k(h: &Multigraph, t: &Transversal) -> Result<Vec<BTreeSet<EdgeId>>, SolveError> {
    let prescribed: Vec<EdgeId> = t.edges().iter().copied().collect();
    match prescribed.as_slice() {
        [] => Ok(Vec::new()),
        [only] => Ok(vec![BTreeSet::from([*only])]),
        [a, b] => {
            // shortest a,b-walk in L(H); {a} and the rest are contiguous runs
            let lg = line_graph(h);
            let mut prev: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
            let mut queue = VecDeque::from([*a]);
            let mut seen = BTreeSet::from([*a]);
            while let Some(x) = queue.pop_front() {
                if x == *b {
                    break;
                }
                for y in lg.neighbors(x) {
                    if seen.insert(y) {
                        prev.insert(y, x);
                        queue.push_back(y);
                    }
                }
            }
            ensure(seen.contains(b), || "the two color classes form one connected edge set".into())?;
            let mut second = BTreeSet::new();
            let mut x = *b;
            while x != *a {
                second.insert(x);
                x = prev[&x];
            }
            Ok(vec![BTreeSet::from([*a]), second])
        }
        _ => Err(assertion("at most two prescribed edges when k <= 2")),
    }
}

fn full_degree(
    h: &Multigraph,
    partition: &MatchingPartition,
    t: &Transversal,
    v: VertexId,
    depth: usize,
    trace: &mut ReductionTrace,
) -> Result<Vec<BTreeSet<EdgeId>>, SolveError> {
    let k = partition.k();
    let hub = h.incident_edges(v).clone();
    let lg = line_graph(h);
    let outcome = disjoint_paths_or_separator(&lg, &hub, t.edges(), k)
        .map_err(|e| assertion(format!("hub and transversal are nodes of L(H) ({e})")))?;
    let separator = match outcome {
        MengerOutcome::Paths(ps) => {
            let bags = ps.paths.iter().map(|p| p.iter().copied().collect()).collect();
            trace.steps.push(ReductionStep::MengerSuccess { depth, vertex: v, hub, paths: ps.paths });
            return Ok(bags);
        }
        MengerOutcome::Separator(sep) => sep.nodes,
    };

    ensure(separator.len() == k - 1, || {
        format!("minimum hub/transversal separator has k - 1 = {} edges, found {}", k - 1, separator.len())
    })?;
    let class = partition.class_index();
    let separator_classes: BTreeMap<EdgeId, usize> = separator.iter().map(|e| (*e, class[e])).collect();
    let hit: BTreeSet<usize> = separator_classes.values().copied().collect();
    ensure(hit.len() == k - 1, || "separator edges come from distinct classes".into())?;
    let free_class = (0..k).find(|i| !hit.contains(i)).expect("k - 1 of k classes hit");

    let split =
        split_sides(h, &separator).map_err(|e| assertion(format!("H - S has exactly two edge components ({e})")))?;
    let hub_rest: BTreeSet<EdgeId> = hub.difference(&separator).copied().collect();
    let split = if hub_rest.is_subset(&split.side_c) {
        split
    } else if hub_rest.is_subset(&split.side_d) {
        split.swapped()
    } else {
        return Err(assertion("all hub edges outside S lie on one side"));
    };
    ensure(split.covered_c.contains(&v), || format!("{v} lies in side C'"))?;
    ensure(t.edges().is_disjoint(&split.side_c), || "side C' carries no transversal edge".into())?;
    let free = partition.class(free_class);
    ensure(!free.is_disjoint(&split.side_c) && !free.is_disjoint(&split.side_d), || {
        format!("class {free_class} missing S has edges on both sides")
    })?;

    // H': D' contracted to w; lifting paths live here
    let (h_prime, w) = contract(h, &split.side_d).map_err(|e| assertion(format!("side D' contracts cleanly ({e})")))?;
    let restricted = partition.restrict(&split.side_d);
    ensure(restricted.classes().iter().all(|c| !c.is_empty()), || {
        "every class keeps an edge after contracting D'".into()
    })?;
    ensure(h_prime.degree(w) == k - 1, || format!("contracted vertex {w} has degree k - 1"))?;
    let lifting = edge_disjoint_paths(&h_prime, v, w, k - 1)
        .map_err(|e| assertion(format!("k - 1 edge-disjoint v,w-paths exist ({e})")))?;
    let mut lifting_paths: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for path in lifting.paths {
        let on_separator: Vec<EdgeId> = path.iter().copied().filter(|e| separator.contains(e)).collect();
        ensure(on_separator.len() == 1, || "each lifting path uses exactly one separator edge".into())?;
        lifting_paths.insert(on_separator[0], path);
    }
    ensure(lifting_paths.len() == k - 1, || "lifting paths are indexed by distinct separator edges".into())?;

    // H'': C' contracted; recurse
    let (h_second, u) =
        contract(h, &split.side_c).map_err(|e| assertion(format!("side C' contracts cleanly ({e})")))?;
    let reduced = partition.restrict(&split.side_c);
    ensure(reduced.classes().iter().all(|c| !c.is_empty()), || {
        "every class keeps an edge after contracting C'".into()
    })?;
    ensure(h_second.edge_count() < h.edge_count(), || "recursion strictly decreases |E(H)|".into())?;

    trace.steps.push(ReductionStep::SeparatorContraction(SeparatorStep {
        depth,
        k,
        vertex: v,
        hub,
        separator: separator.clone(),
        separator_classes,
        free_class,
        side_c: split.side_c.clone(),
        side_d: split.side_d.clone(),
        contracted_d: w,
        contracted_c: u,
        lifting_paths: lifting_paths.clone(),
        edges_before: h.edge_count(),
        edges_after: h_second.edge_count(),
    }));

    let inner = solve_level(&h_second, &reduced, t, depth + 1, trace)?;
    Ok(inner
        .into_iter()
        .map(|mut bag| {
            let crossing: Vec<EdgeId> = bag.intersection(&separator).copied().collect();
            for e in crossing {
                bag.extend(lifting_paths[&e].iter().copied());
            }
            bag
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn k4_factorization() -> MatchingPartition {
        MatchingPartition::new(vec![set(&[0, 5]), set(&[1, 4]), set(&[2, 3])])
    }

    #[test]
    fn triangle_with_singleton_classes() {
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let p = MatchingPartition::new(vec![set(&[0]), set(&[1]), set(&[2])]);
        let t = Transversal::new([e(0), e(1), e(2)]);
        let sol = solve(&tri, &p, &t).unwrap();
        assert_eq!(sol.bags.bags, vec![set(&[0]), set(&[1]), set(&[2])]);
        assert!(matches!(sol.trace.steps[0], ReductionStep::CompleteFallback { .. }));
    }

    #[test]
    fn k4_star_transversal() {
        let h = k4();
        let p = k4_factorization();
        let t = Transversal::new([e(0), e(1), e(2)]);
        let sol = solve(&h, &p, &t).unwrap();
        assert!(verify_solution(&h, &p, &t, &sol.bags).accepted());
        assert_eq!(sol.bags.bags, vec![set(&[0]), set(&[1]), set(&[2])]);
    }

    #[test]
    fn verify_solution_cases() {
        let h = k4();
        let p = k4_factorization();
        let t = Transversal::new([e(0), e(1), e(2)]);
        let good = BagSystem::new(vec![set(&[0]), set(&[1]), set(&[2])]);
        assert!(verify_solution(&h, &p, &t, &good).accepted());

        // {01},{23},{02}: 01 and 23 do not touch
        let t2 = Transversal::new([e(0), e(5), e(1)]);
        let apart = BagSystem::new(vec![set(&[0]), set(&[5]), set(&[1])]);
        assert!(verify_solution(&h, &p, &t2, &apart).violations.contains(&BagViolation::NotIncident { bags: (0, 1) }));

        let doubled = BagSystem::new(vec![set(&[0, 1]), set(&[2]), set(&[4])]);
        let v = verify_solution(&h, &p, &t, &doubled).violations;
        assert!(v.contains(&BagViolation::TransversalCount { bag: 0, count: 2 }));
        assert!(v.contains(&BagViolation::TransversalCount { bag: 2, count: 0 }));

        let short = BagSystem::new(vec![set(&[0]), set(&[1, 2])]);
        assert_eq!(
            verify_solution(&h, &p, &t, &short).violations[0],
            BagViolation::WrongBagCount { expected: 3, found: 2 }
        );

        let split = BagSystem::new(vec![set(&[0, 5]), set(&[1]), set(&[2])]);
        assert!(verify_solution(&h, &p, &t, &split)
            .violations
            .contains(&BagViolation::Disconnected { bag: 0, components: 2 }));
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let h = k4();
        let p = k4_factorization();
        let t = Transversal::new([e(0), e(5), e(1)]);
        assert!(matches!(solve(&h, &p, &t), Err(SolveError::InvalidInput(InputProblem::Transversal(_)))));
        let bad = MatchingPartition::new(vec![set(&[0, 1]), set(&[2, 3, 4, 5])]);
        assert!(matches!(solve(&h, &bad, &t), Err(SolveError::InvalidInput(InputProblem::Partition(_)))));
        let disjoint = graph(4, &[(0, 1), (2, 3)]);
        let p2 = MatchingPartition::new(vec![set(&[0]), set(&[1])]);
        assert!(matches!(
            solve(&disjoint, &p2, &Transversal::new([e(0), e(1)])),
            Err(SolveError::InvalidInput(InputProblem::Kempe(_)))
        ));
    }

    #[test]
    fn two_classes_on_a_path() {
        // alternating path 0-1-2-3-4-5 with T at both ends
        let h = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let p = MatchingPartition::new(vec![set(&[0, 2, 4]), set(&[1, 3])]);
        let t = Transversal::new([e(0), e(3)]);
        let sol = solve(&h, &p, &t).unwrap();
        assert_eq!(sol.bags.bags, vec![set(&[0]), set(&[1, 2, 3])]);
    }

    #[test]
    fn two_classes_on_an_even_cycle() {
        let h = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let p = MatchingPartition::new(vec![set(&[0, 2, 4]), set(&[1, 3, 5])]);
        let t = Transversal::new([e(2), e(5)]);
        let sol = solve(&h, &p, &t).unwrap();
        assert!(verify_solution(&h, &p, &t, &sol.bags).accepted());
    }

    #[test]
    fn one_class_matching() {
        let h = graph(4, &[(0, 1), (2, 3)]);
        let p = MatchingPartition::new(vec![set(&[0, 1])]);
        let t = Transversal::new([e(1)]);
        assert_eq!(solve(&h, &p, &t).unwrap().bags.bags, vec![set(&[1])]);
    }

    #[test]
    fn separator_branch_on_prism_minus_vertex() {
        // triangular prism a1 a2 a3 / b1 b2 b3 (vertices 0..5), a1 = 0 deleted.
        // remaining: a2=1 a3=2 b1=3 b2=4 b3=5
        // e0=a2a3 e1=a2b2 e2=a3b3 e3=b1b2 e4=b2b3 e5=b1b3
        let h = Multigraph::build(
            [v(1), v(2), v(3), v(4), v(5)],
            [(0, 1, 2), (1, 1, 4), (2, 2, 5), (3, 3, 4), (4, 4, 5), (5, 3, 5)]
                .map(|(i, a, b)| crate::graph::EdgeRecord::new(e(i), v(a), v(b))),
        )
        .unwrap();
        let p = MatchingPartition::new(vec![set(&[0, 4]), set(&[5, 1]), set(&[3, 2])]);
        let t = Transversal::new([e(0), e(1), e(2)]);
        let sol = solve(&h, &p, &t).unwrap();
        let steps: Vec<_> = sol.trace.separator_steps().collect();
        assert_eq!(steps.len(), 1);
        let step = steps[0];
        assert_eq!(step.vertex, v(4));
        assert_eq!(step.separator, set(&[1, 2]));
        assert_eq!(step.free_class, 0);
        assert_eq!(step.side_d, set(&[0]));
        assert!(step.edges_after < step.edges_before);
        assert_eq!(sol.bags.canonical(), BTreeSet::from([set(&[0]), set(&[1]), set(&[2, 4])]));
    }
}
