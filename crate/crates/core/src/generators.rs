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

//! Kempe-colored instance generators.
//!
//! * [`gen_circulant`]: bipartite `H(m, a)` on `Z_m × {0, 1}` whose classes
//!   `M_i = {(z,0)(z+a_i,1)}` form a perfect 1-factorization whenever every
//!   shift difference is a unit mod `m`.
//! * [`splice`]: glue two perfect 1-factorizations of the same order at a
//!   vertex each, bridging the class-`j` stubs.
//! * [`delete_vertex`]: a perfect 1-factorization minus one vertex, where
//!   every pair union becomes a Hamilton path.
//!
//! Each generator re-verifies its output before returning it.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coloring::{
    is_perfect_one_factorization, pairs_without_shape, verify_kempe, verify_matching_partition, MatchingPartition,
    UnionShape,
};
use crate::graph::{EdgeId, EdgeRecord, GraphError, Multigraph, VertexId};
use crate::instance::{Instance, Labels};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("modulus {m} shares a factor with shift difference {difference}")]
    BadModulus { m: u64, difference: u64 },
    #[error("shift {shift} is not below the modulus {m}")]
    ShiftOutOfRange { shift: u64, m: u64 },
    #[error("at least one shift is required")]
    NoShifts,
    #[error("instances have {first} and {second} classes")]
    OrderMismatch { first: usize, second: usize },
    #[error("input is not a perfect 1-factorization")]
    NotPerfect,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("generated instance failed its own check: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parameters of the circulant construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSpec {
    pub m: u64,
    pub shifts: Vec<u64>,
}

impl CirculantSpec {
    pub fn new(m: u64, shifts: Vec<u64>) -> Self {
        CirculantSpec { m, shifts }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.shifts.is_empty() {
            return Err(GenError::NoShifts);
        }
        for &s in &self.shifts {
            if s >= self.m {
                return Err(GenError::ShiftOutOfRange { shift: s, m: self.m });
            }
        }
        for (i, &a) in self.shifts.iter().enumerate() {
            for &b in &self.shifts[i + 1..] {
                let difference = a.abs_diff(b);
                if gcd(difference, self.m) != 1 {
                    return Err(GenError::BadModulus { m: self.m, difference });
                }
            }
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn self_check(inst: &Instance, want: Option<UnionShape>) -> Result<(), GenError> {
    let verdict = verify_matching_partition(&inst.graph, &inst.partition);
    if !verdict.accepted() {
        return Err(GenError::SelfCheck(verdict.to_string()));
    }
    let verdict = verify_kempe(&inst.graph, &inst.partition);
    if !verdict.accepted() {
        return Err(GenError::SelfCheck(verdict.to_string()));
    }
    if let Some(shape) = want {
        let bad = pairs_without_shape(&inst.graph, &inst.partition, shape);
        if !bad.is_empty() {
            return Err(GenError::SelfCheck(format!("class pairs {bad:?} are not {shape:?}")));
        }
    }
    Ok(())
}

pub fn gen_circulant(spec: &CirculantSpec) -> Result<Instance, GenError> {
    spec.validate()?;
    let m = spec.m;
    let vid = |z: u64, side: u64| VertexId((side * m + z) as u32);
    let mut labels = Labels::default();
    for side in 0..2 {
        for z in 0..m {
            labels.set_vertex(vid(z, side), format!("{z}_{side}"));
        }
    }
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    for (i, &a) in spec.shifts.iter().enumerate() {
        let mut class = BTreeSet::new();
        for z in 0..m {
            let id = EdgeId((i as u64 * m + z) as u32);
            edges.push(EdgeRecord::new(id, vid(z, 0), vid((z + a) % m, 1)));
            labels.set_edge(id, format!("m{i}_{z}"));
            class.insert(id);
        }
        classes.push(class);
    }
    let graph = Multigraph::build((0..2 * m).map(|i| VertexId(i as u32)), edges)?;
    let inst = Instance::new(graph, MatchingPartition::new(classes), labels);
    let shape = (spec.shifts.len() >= 2).then_some(UnionShape::HamiltonCycle);
    self_check(&inst, shape)?;
    Ok(inst)
}

/// Two perfect 1-factorizations of equal order and a vertex in each.
#[derive(Clone, Copy, Debug)]
pub struct SpliceSpec<'a> {
    pub first: &'a Instance,
    pub first_vertex: VertexId,
    pub second: &'a Instance,
    pub second_vertex: VertexId,
}

pub fn splice(spec: SpliceSpec<'_>) -> Result<Instance, GenError> {
    let SpliceSpec { first, first_vertex, second, second_vertex } = spec;
    if first.k() != second.k() {
        return Err(GenError::OrderMismatch { first: first.k(), second: second.k() });
    }
    for (inst, v) in [(first, first_vertex), (second, second_vertex)] {
        if !inst.graph.has_vertex(v) {
            return Err(GenError::UnknownVertex(v));
        }
        if !is_perfect_one_factorization(&inst.graph, &inst.partition) {
            return Err(GenError::NotPerfect);
        }
    }
    let k = first.k();

    let mut labels = Labels::default();
    let mut vertex_map: [BTreeMap<VertexId, VertexId>; 2] = Default::default();
    let mut next_vertex = 0u32;
    let mut next_edge = 0u32;
    let mut edges = Vec::new();
    let mut classes: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); k];
    // stub[side][j] = endpoint of the class-j edge at the removed vertex
    let mut stubs: [Vec<VertexId>; 2] = Default::default();

    for (side, (inst, removed, prefix)) in
        [(first, first_vertex, "a."), (second, second_vertex, "b.")].into_iter().enumerate()
    {
        for v in inst.graph.vertices().filter(|&v| v != removed) {
            let id = VertexId(next_vertex);
            next_vertex += 1;
            vertex_map[side].insert(v, id);
            labels.set_vertex(id, format!("{prefix}{}", inst.labels.vertex(v)));
        }
        for (j, class) in inst.partition.classes().iter().enumerate() {
            let mut stub = None;
            for &e in class {
                let r = inst.graph.edge(e).expect("partition verified");
                if let Some(other) = r.other_end(removed) {
                    stub = Some(vertex_map[side][&other]);
                    continue;
                }
                let id = EdgeId(next_edge);
                next_edge += 1;
                edges.push(EdgeRecord::new(id, vertex_map[side][&r.ends.0], vertex_map[side][&r.ends.1]));
                labels.set_edge(id, format!("{prefix}{}", inst.labels.edge(e)));
                classes[j].insert(id);
            }
            stubs[side].push(stub.ok_or(GenError::NotPerfect)?);
        }
    }
    for j in 0..k {
        let id = EdgeId(next_edge);
        next_edge += 1;
        edges.push(EdgeRecord::new(id, stubs[0][j], stubs[1][j]));
        labels.set_edge(id, format!("f{j}"));
        classes[j].insert(id);
    }
    let graph = Multigraph::build((0..next_vertex).map(VertexId), edges)?;
    let inst = Instance::new(graph, MatchingPartition::new(classes), labels);
    self_check(&inst, Some(UnionShape::HamiltonCycle))?;
    Ok(inst)
}

/// `H - v` with every class losing its edge at `v`; ids are renumbered
/// compactly and names are kept.
pub fn delete_vertex(inst: &Instance, v: VertexId) -> Result<Instance, GenError> {
    if !inst.graph.has_vertex(v) {
        return Err(GenError::UnknownVertex(v));
    }
    if !is_perfect_one_factorization(&inst.graph, &inst.partition) {
        return Err(GenError::NotPerfect);
    }
    let removed = inst.graph.incident_edges(v).clone();
    let graph = inst.graph.without_vertex(v)?;
    let partition = inst.partition.restrict(&removed);
    let out = Instance::new(graph, partition, inst.labels.clone()).compacted();
    self_check(&out, Some(UnionShape::HamiltonPath))?;
    Ok(out)
}

/// `K_4` with classes `{01,23}, {02,13}, {03,12}`.
pub fn k4_seed() -> Instance {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut labels = Labels::default();
    for i in 0..4 {
        labels.set_vertex(VertexId(i), i.to_string());
    }
    let edges: Vec<EdgeRecord> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            labels.set_edge(EdgeId(i as u32), format!("e{a}{b}"));
            EdgeRecord::new(EdgeId(i as u32), VertexId(a), VertexId(b))
        })
        .collect();
    let graph = Multigraph::build((0..4).map(VertexId), edges).expect("static graph");
    let ids = |xs: &[u32]| xs.iter().map(|&i| EdgeId(i)).collect::<BTreeSet<_>>();
    let partition = MatchingPartition::new(vec![ids(&[0, 5]), ids(&[1, 4]), ids(&[2, 3])]);
    let inst = Instance::new(graph, partition, labels);
    debug_assert!(self_check(&inst, Some(UnionShape::HamiltonCycle)).is_ok());
    inst
}

/// Simple complete graph `K_n` with edges numbered in lexicographic pair order.
pub fn complete_graph(n: u32) -> Multigraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push(EdgeRecord::new(EdgeId(edges.len() as u32), VertexId(a), VertexId(b)));
        }
    }
    Multigraph::build((0..n).map(VertexId), edges).expect("complete graph is well formed")
}
