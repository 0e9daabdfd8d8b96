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

//! Exhaustive search for rooted bag systems on small graphs.
//!
//! Every prescribed edge is pinned to its own bag (in ascending order), and
//! each remaining edge is tried in every bag and finally left unused.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{edge_components, EdgeId, Multigraph, VertexId};
use crate::solver::{check_bags, BagSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_edges: usize,
    pub max_assignments: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_edges: 12, max_assignments: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Solution(BagSystem),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {0} assignments exhausted")]
    BudgetExceeded(u64),
    #[error("graph has {edges} edges, budget allows {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("budget caps must be positive")]
    InvalidBudget,
    #[error("prescribed edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
}

const UNUSED: usize = usize::MAX;

struct Search<'a> {
    h: &'a Multigraph,
    k: usize,
    free: Vec<EdgeId>,
    bags: Vec<BTreeSet<EdgeId>>,
    roots: Vec<EdgeId>,
    explored: u64,
    cap: u64,
}

impl Search<'_> {
    /// Relaxation: let every bag also use all undecided edges. If some bag then
    /// cannot hold its edges together, or two bags cannot meet, prune.
    fn viable(&self, undecided: &[EdgeId]) -> bool {
        let mut territory: Vec<BTreeSet<VertexId>> = Vec::with_capacity(self.k);
        for (i, bag) in self.bags.iter().enumerate() {
            let mut pool = bag.clone();
            pool.extend(undecided.iter().copied());
            let comps = edge_components(self.h, &pool).expect("edges from the graph");
            let Some(own) = comps.into_iter().find(|c| c.contains(&self.roots[i])) else {
                return false;
            };
            if !bag.is_subset(&own) {
                return false;
            }
            territory.push(self.h.covered(&own));
        }
        (0..self.k).all(|i| (i + 1..self.k).all(|j| !territory[i].is_disjoint(&territory[j])))
    }

    fn run(&mut self, next: usize) -> Result<bool, OracleError> {
        self.explored += 1;
        if self.explored > self.cap {
            return Err(OracleError::BudgetExceeded(self.cap));
        }
        if !self.viable(&self.free[next..]) {
            return Ok(false);
        }
        if next == self.free.len() {
            return Ok(true);
        }
        let e = self.free[next];
        for choice in (0..self.k).chain([UNUSED]) {
            if choice != UNUSED {
                self.bags[choice].insert(e);
            }
            if self.run(next + 1)? {
                return Ok(true);
            }
            if choice != UNUSED {
                self.bags[choice].remove(&e);
            }
        }
        Ok(false)
    }
}

pub fn oracle_solve(
    h: &Multigraph,
    prescribed: &BTreeSet<EdgeId>,
    budget: OracleBudget,
) -> Result<OracleOutcome, OracleError> {
    if budget.max_edges == 0 || budget.max_assignments == 0 {
        return Err(OracleError::InvalidBudget);
    }
    if h.edge_count() > budget.max_edges {
        return Err(OracleError::TooManyEdges { edges: h.edge_count(), max: budget.max_edges });
    }
    if let Some(&e) = prescribed.iter().find(|e| !h.has_edge(**e)) {
        return Err(OracleError::UnknownEdge(e));
    }
    let roots: Vec<EdgeId> = prescribed.iter().copied().collect();
    let mut search = Search {
        h,
        k: roots.len(),
        free: h.edge_ids().filter(|e| !prescribed.contains(e)).collect(),
        bags: roots.iter().map(|&r| BTreeSet::from([r])).collect(),
        roots,
        explored: 0,
        cap: budget.max_assignments,
    };
    if !search.run(0)? {
        return Ok(OracleOutcome::Infeasible);
    }
    let bags = BagSystem::new(search.bags);
    debug_assert!(check_bags(h, prescribed, &bags).accepted());
    Ok(OracleOutcome::Solution(bags))
}
