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

//! Rooted clique minors in line graphs of Kempe-colored multigraphs.
//!
//! Given a multigraph `H` whose edges are partitioned into `k` matchings with
//! connected pairwise unions, and one prescribed edge per matching, [`solve`]
//! returns `k` pairwise disjoint, connected, pairwise incident edge sets
//! ("bags"), each holding exactly one prescribed edge.

pub mod coloring;
pub mod corpus;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod solver;

pub use coloring::{MatchingPartition, Transversal, Verdict};
pub use graph::{EdgeId, EdgeRecord, GraphError, Multigraph, VertexId};
pub use instance::{Instance, Labels};
pub use solver::{solve, verify_solution, BagSystem, ReductionTrace, Solution, SolveError};
