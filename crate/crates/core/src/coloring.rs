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

//! Partitions of `E(H)` into matchings and their verification.
//!
//! A partition whose pairwise unions are connected edge sets is exactly a
//! Kempe coloring of the line graph `L(H)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{edge_components, EdgeId, Multigraph, VertexId};

/// The color classes, indexed by position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchingPartition {
    classes: Vec<BTreeSet<EdgeId>>,
}

impl MatchingPartition {
    pub fn new(classes: Vec<BTreeSet<EdgeId>>) -> Self {
        MatchingPartition { classes }
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[BTreeSet<EdgeId>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &BTreeSet<EdgeId> {
        &self.classes[i]
    }

    pub fn class_of(&self, e: EdgeId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&e))
    }

    /// Map from edge to class index.
    pub fn class_index(&self) -> BTreeMap<EdgeId, usize> {
        self.classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&e| (e, i))).collect()
    }

    /// Every class with `removed` taken out. Classes may become empty.
    pub fn restrict(&self, removed: &BTreeSet<EdgeId>) -> MatchingPartition {
        MatchingPartition { classes: self.classes.iter().map(|c| c - removed).collect() }
    }

    pub fn without_class(&self, i: usize) -> MatchingPartition {
        let mut classes = self.classes.clone();
        classes.remove(i);
        MatchingPartition { classes }
    }

    pub fn union_of(&self, i: usize, j: usize) -> BTreeSet<EdgeId> {
        &self.classes[i] | &self.classes[j]
    }
}

/// The prescribed edges: one per class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transversal {
    edges: BTreeSet<EdgeId>,
}

impl Transversal {
    pub fn new<I: IntoIterator<Item = EdgeId>>(edges: I) -> Self {
        Transversal { edges: edges.into_iter().collect() }
    }

    /// The least edge of every class.
    pub fn least_of(partition: &MatchingPartition) -> Self {
        Transversal::new(partition.classes().iter().filter_map(|c| c.iter().next().copied()))
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(class index, edge)` pairs, by class index. Edges outside every
    /// class are left out.
    pub fn by_class(&self, partition: &MatchingPartition) -> Vec<(usize, EdgeId)> {
        let mut out: Vec<_> = self.edges.iter().filter_map(|&e| partition.class_of(e).map(|i| (i, e))).collect();
        out.sort();
        out
    }
}

/// Result of a structural check: accepted iff there are no violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<V> {
    pub violations: Vec<V>,
}

impl<V> Verdict<V> {
    pub fn from_violations(violations: Vec<V>) -> Self {
        Verdict { violations }
    }

    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<V: fmt::Display> fmt::Display for Verdict<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "accept");
        }
        write!(f, "reject: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionViolation {
    UnknownEdge { class: usize, edge: EdgeId },
    EmptyClass { class: usize },
    RepeatedEdge { edge: EdgeId, first: usize, second: usize },
    UncoveredEdge { edge: EdgeId },
    NotAMatching { class: usize, edges: (EdgeId, EdgeId), vertex: VertexId },
}

impl fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownEdge { class, edge } => write!(f, "class {class} names unknown edge {edge}"),
            Self::EmptyClass { class } => write!(f, "class {class} is empty"),
            Self::RepeatedEdge { edge, first, second } => {
                write!(f, "edge {edge} is in classes {first} and {second}")
            }
            Self::UncoveredEdge { edge } => write!(f, "edge {edge} is in no class"),
            Self::NotAMatching { class, edges, vertex } => {
                write!(f, "class {class} is not a matching: {} and {} share {vertex}", edges.0, edges.1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KempeViolation {
    /// The union of classes `pair.0` and `pair.1` splits into `components` parts.
    DisconnectedPair { pair: (usize, usize), components: usize },
}

impl fmt::Display for KempeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DisconnectedPair { pair, components } => {
                write!(f, "union of classes {} and {} has {components} components", pair.0, pair.1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalViolation {
    ClassMissed { class: usize },
    ClassHitTwice { class: usize, edges: Vec<EdgeId> },
    StrayEdge { edge: EdgeId },
}

impl fmt::Display for TransversalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ClassMissed { class } => write!(f, "class {class} has no transversal edge"),
            Self::ClassHitTwice { class, edges } => {
                write!(f, "class {class} has {} transversal edges", edges.len())
            }
            Self::StrayEdge { edge } => write!(f, "transversal edge {edge} is in no class"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
}

pub fn verify_matching_partition(h: &Multigraph, partition: &MatchingPartition) -> Verdict<PartitionViolation> {
    let mut violations = Vec::new();
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, class) in partition.classes().iter().enumerate() {
        if class.is_empty() {
            violations.push(PartitionViolation::EmptyClass { class: i });
        }
        let mut at: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
        for &e in class {
            let Some((a, b)) = h.ends(e) else {
                violations.push(PartitionViolation::UnknownEdge { class: i, edge: e });
                continue;
            };
            if let Some(&first) = owner.get(&e) {
                violations.push(PartitionViolation::RepeatedEdge { edge: e, first, second: i });
            } else {
                owner.insert(e, i);
            }
            for x in [a, b] {
                if let Some(&other) = at.get(&x) {
                    violations.push(PartitionViolation::NotAMatching { class: i, edges: (other, e), vertex: x });
                } else {
                    at.insert(x, e);
                }
            }
        }
    }
    for e in h.edge_ids() {
        if !owner.contains_key(&e) {
            violations.push(PartitionViolation::UncoveredEdge { edge: e });
        }
    }
    Verdict::from_violations(violations)
}

/// Checks that every pair of classes has a connected union. Stops at the
/// first failing pair (lexicographic order).
pub fn verify_kempe(h: &Multigraph, partition: &MatchingPartition) -> Verdict<KempeViolation> {
    let k = partition.k();
    for i in 0..k {
        for j in i + 1..k {
            let union: BTreeSet<EdgeId> = partition.union_of(i, j).into_iter().filter(|e| h.has_edge(*e)).collect();
            let components = edge_components(h, &union).map_or(0, |p| p.len());
            if components != 1 {
                return Verdict::from_violations(vec![KempeViolation::DisconnectedPair { pair: (i, j), components }]);
            }
        }
    }
    Verdict::from_violations(Vec::new())
}

pub fn verify_transversal(partition: &MatchingPartition, t: &Transversal) -> Verdict<TransversalViolation> {
    let mut violations = Vec::new();
    for (i, class) in partition.classes().iter().enumerate() {
        let hits: Vec<EdgeId> = class.intersection(t.edges()).copied().collect();
        match hits.len() {
            0 => violations.push(TransversalViolation::ClassMissed { class: i }),
            1 => {}
            _ => violations.push(TransversalViolation::ClassHitTwice { class: i, edges: hits }),
        }
    }
    for &e in t.edges() {
        if partition.class_of(e).is_none() {
            violations.push(TransversalViolation::StrayEdge { edge: e });
        }
    }
    Verdict::from_violations(violations)
}

/// Vertices where the pair subgraph `H(A, B)` ends, i.e. vertices of degree
/// one in the union of classes `i` and `j`.
pub fn pair_ends(h: &Multigraph, partition: &MatchingPartition, i: usize, j: usize) -> BTreeSet<VertexId> {
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in partition.union_of(i, j) {
        if let Some((a, b)) = h.ends(e) {
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
    }
    degree.into_iter().filter(|&(_, d)| d == 1).map(|(v, _)| v).collect()
}

/// Number of class pairs whose pair subgraph ends at `v`.
pub fn pair_end_count(h: &Multigraph, partition: &MatchingPartition, v: VertexId) -> Result<usize, ColoringError> {
    if !h.has_vertex(v) {
        return Err(ColoringError::UnknownVertex(v));
    }
    // a pair ends at v iff exactly one of the two classes covers v
    let covering: Vec<bool> =
        partition.classes().iter().map(|c| h.incident_edges(v).iter().any(|e| c.contains(e))).collect();
    let k = covering.len();
    let mut count = 0;
    for i in 0..k {
        for j in i + 1..k {
            if covering[i] != covering[j] {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionShape {
    HamiltonCycle,
    HamiltonPath,
    Other,
}

/// Classifies an edge set relative to all vertices of `h`.
pub fn union_shape(h: &Multigraph, edges: &BTreeSet<EdgeId>) -> UnionShape {
    let n = h.vertex_count();
    let mut degree: BTreeMap<VertexId, usize> = h.vertices().map(|v| (v, 0)).collect();
    for &e in edges {
        let Some((a, b)) = h.ends(e) else {
            return UnionShape::Other;
        };
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    let connected = matches!(edge_components(h, edges), Ok(p) if p.len() == 1);
    if !connected || n < 2 {
        return UnionShape::Other;
    }
    let ones = degree.values().filter(|&&d| d == 1).count();
    if degree.values().all(|&d| d == 2) && edges.len() == n {
        UnionShape::HamiltonCycle
    } else if ones == 2 && degree.values().all(|&d| d == 1 || d == 2) && edges.len() == n - 1 {
        UnionShape::HamiltonPath
    } else {
        UnionShape::Other
    }
}

/// Class pairs whose union does not have the wanted shape.
pub fn pairs_without_shape(h: &Multigraph, partition: &MatchingPartition, want: UnionShape) -> Vec<(usize, usize)> {
    let k = partition.k();
    let mut bad = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if union_shape(h, &partition.union_of(i, j)) != want {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// A matching partition in which every pair union is a Hamilton cycle.
pub fn is_perfect_one_factorization(h: &Multigraph, partition: &MatchingPartition) -> bool {
    partition.k() >= 2
        && verify_matching_partition(h, partition).accepted()
        && pairs_without_shape(h, partition, UnionShape::HamiltonCycle).is_empty()
}
