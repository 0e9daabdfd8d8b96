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

//! Instances with a pair of parallel edges.
//!
//! Parallel edges `e, f` between `x` and `y` form singleton classes, and
//! every other edge touches `x` or `y`. Singleton classes are peeled off;
//! what remains is at most three classes `{x a_i, y b_i}` glued cyclically.

use std::collections::BTreeSet;

use super::{
    assertion, ensure, solve_level, validate_input, BagSystem, InputProblem, ParallelCase, ReductionStep,
    ReductionTrace, Solution, SolveError,
};
use crate::coloring::{MatchingPartition, Transversal};
use crate::graph::{EdgeId, Multigraph, VertexId};

pub fn solve_parallel(h: &Multigraph, partition: &MatchingPartition, t: &Transversal) -> Result<Solution, SolveError> {
    validate_input(h, partition, t)?;
    if h.parallel_pair().is_none() {
        return Err(SolveError::InvalidInput(InputProblem::NoParallelEdges));
    }
    let mut trace = ReductionTrace::default();
    let bags = solve_level(h, partition, t, 0, &mut trace)?;
    let mut bags = BagSystem::new(bags);
    bags.sort_by_class(partition, t);
    Ok(Solution { bags, trace })
}

/// The two edges of a two-edge class, split by which of `x`, `y` they touch.
struct Rung {
    class: usize,
    at_x: EdgeId,
    a: VertexId,
    at_y: EdgeId,
    b: VertexId,
    prescribed: EdgeId,
}

pub(super) fn parallel_level(
    h: &Multigraph,
    partition: &MatchingPartition,
    t: &Transversal,
    depth: usize,
    trace: &mut ReductionTrace,
) -> Result<Vec<BTreeSet<EdgeId>>, SolveError> {
    let (e, f) = h.parallel_pair().expect("caller checked");
    let k = partition.k();
    let (ce, cf) = match (partition.class_of(e), partition.class_of(f)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(assertion("parallel edges are colored")),
    };
    ensure(partition.class(ce).len() == 1 && partition.class(cf).len() == 1, || {
        format!("parallel edges {e} and {f} form singleton classes")
    })?;
    let (x, y) = h.ends(e).expect("edge exists");

    let others: Vec<usize> = (0..k).filter(|&i| i != ce && i != cf).collect();
    if let Some(&i) = others.iter().find(|&&i| partition.class(i).len() == 1) {
        let g = *partition.class(i).iter().next().expect("singleton");
        ensure(h.edge_ids().all(|o| o == g || h.are_incident(o, g)), || {
            format!("singleton class edge {g} meets every other edge")
        })?;
        trace.steps.push(ReductionStep::ParallelPeel { depth, pair: (e, f), peeled: g });
        let smaller = h.without_edges(&BTreeSet::from([g]));
        let sub_t = Transversal::new(t.edges().iter().copied().filter(|&o| o != g));
        let mut bags = solve_level(&smaller, &partition.without_class(i), &sub_t, depth + 1, trace)?;
        bags.push(BTreeSet::from([g]));
        return Ok(bags);
    }

    let mut rungs = Vec::with_capacity(others.len());
    for &i in &others {
        let class = partition.class(i);
        ensure(class.len() == 2, || format!("class {i} has two edges"))?;
        let mut at_x = None;
        let mut at_y = None;
        for &g in class {
            let r = h.edge(g).expect("edge exists");
            match (r.other_end(x), r.other_end(y)) {
                (Some(a), None) => at_x = Some((g, a)),
                (None, Some(b)) => at_y = Some((g, b)),
                _ => return Err(assertion(format!("edge {g} touches exactly one of {x}, {y}"))),
            }
        }
        let ((at_x, a), (at_y, b)) = match (at_x, at_y) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(assertion(format!("class {i} has one edge at {x} and one at {y}"))),
        };
        let prescribed = *class
            .intersection(t.edges())
            .next()
            .ok_or_else(|| assertion(format!("class {i} has a prescribed edge")))?;
        rungs.push(Rung { class: i, at_x, a, at_y, b, prescribed });
    }
    ensure(rungs.len() <= 3, || format!("at most three two-edge classes, found {}", rungs.len()))?;

    let prescribed: Vec<EdgeId> = t.edges().iter().copied().collect();
    let pairwise =
        prescribed.iter().enumerate().all(|(i, &p)| prescribed[i + 1..].iter().all(|&q| h.are_incident(p, q)));
    if pairwise {
        trace.steps.push(ReductionStep::ParallelClose { depth, pair: (e, f), case: ParallelCase::Singletons });
        return Ok(prescribed.into_iter().map(|p| BTreeSet::from([p])).collect());
    }

    // Orient so that exactly one prescribed rung edge sits at the "x" end,
    // then glue it to the rung whose x-end meets its y-end.
    for flip in [false, true] {
        let view = |r: &Rung| {
            if flip {
                (r.at_y, r.b, r.at_x, r.a)
            } else {
                (r.at_x, r.a, r.at_y, r.b)
            }
        };
        let near: Vec<&Rung> = rungs.iter().filter(|r| r.prescribed == view(r).0).collect();
        let [first] = near[..] else { continue };
        let (first_near, _, first_far, first_b) = view(first);
        let Some(second) = rungs.iter().find(|r| r.class != first.class && view(r).1 == first_b) else {
            continue;
        };
        let merged = BTreeSet::from([first_near, view(second).0, first_far]);
        trace.steps.push(ReductionStep::ParallelClose {
            depth,
            pair: (e, f),
            case: ParallelCase::Merged { merged: merged.clone() },
        });
        let mut bags = vec![BTreeSet::from([e]), BTreeSet::from([f]), merged];
        bags.extend(rungs.iter().filter(|r| r.class != first.class).map(|r| BTreeSet::from([r.prescribed])));
        return Ok(bags);
    }
    Err(assertion("two-edge classes glue cyclically around the parallel pair"))
}
