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

//! Multigraphs with stable edge identities.
//!
//! Edges keep their [`EdgeId`] for their whole life: contraction merges
//! vertices and drops the contracted edges, but every surviving edge is the
//! same object it was before. The solver relies on this when it lifts a
//! solution found in a contracted graph back into the original one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An edge together with its two (distinct) endpoints.
///
/// Ends are stored in ascending order so that two records describing the
/// same undirected edge compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub ends: (VertexId, VertexId),
}

impl EdgeRecord {
    pub fn new(id: EdgeId, a: VertexId, b: VertexId) -> Self {
        let ends = if a <= b { (a, b) } else { (b, a) };
        EdgeRecord { id, ends }
    }

    pub fn has_end(&self, v: VertexId) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint at all.
    pub fn other_end(&self, v: VertexId) -> Option<VertexId> {
        if self.ends.0 == v {
            Some(self.ends.1)
        } else if self.ends.1 == v {
            Some(self.ends.0)
        } else {
            None
        }
    }

    pub fn is_incident_to(&self, other: &EdgeRecord) -> bool {
        self.has_end(other.ends.0) || self.has_end(other.ends.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at {vertex}")]
    LoopEdge { edge: EdgeId, vertex: VertexId },
    #[error("edge id {0} is used more than once")]
    DuplicateEdgeId(EdgeId),
    #[error("vertex id {0} is declared more than once")]
    DuplicateVertexId(VertexId),
    #[error("edge {edge} has endpoint {vertex} which is not a vertex of the graph")]
    UnknownEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("edge {0} is not in the graph")]
    UnknownEdgeId(EdgeId),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("cannot contract an empty edge set")]
    EmptyContractionSet,
    #[error("contraction set is not a connected edge set")]
    DisconnectedContractionSet,
    #[error("contracting would turn edge {0} into a loop")]
    WouldCreateLoop(EdgeId),
}

/// Finite undirected loopless multigraph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, EdgeRecord>,
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
}

impl Multigraph {
    pub fn build<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = EdgeRecord>,
    {
        let mut g = Multigraph::default();
        for v in vertices {
            if !g.vertices.insert(v) {
                return Err(GraphError::DuplicateVertexId(v));
            }
            g.incidence.insert(v, BTreeSet::new());
        }
        for e in edges {
            g.insert_edge(e)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, e: EdgeRecord) -> Result<(), GraphError> {
        let (a, b) = e.ends;
        if a == b {
            return Err(GraphError::LoopEdge { edge: e.id, vertex: a });
        }
        for v in [a, b] {
            if !self.vertices.contains(&v) {
                return Err(GraphError::UnknownEndpoint { edge: e.id, vertex: v });
            }
        }
        if self.edges.contains_key(&e.id) {
            return Err(GraphError::DuplicateEdgeId(e.id));
        }
        self.edges.insert(e.id, e);
        self.incidence.entry(a).or_default().insert(e.id);
        self.incidence.entry(b).or_default().insert(e.id);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &EdgeRecord> + '_ {
        self.edges.values()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_id_set(&self) -> BTreeSet<EdgeId> {
        self.edges.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&EdgeRecord> {
        self.edges.get(&e)
    }

    pub fn ends(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).map(|r| r.ends)
    }

    /// Edges incident with `v` (`E_H(v)`), empty for unknown vertices.
    pub fn incident_edges(&self, v: VertexId) -> &BTreeSet<EdgeId> {
        static EMPTY: BTreeSet<EdgeId> = BTreeSet::new();
        self.incidence.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Minimum degree over vertices that carry at least one edge.
    pub fn min_positive_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).filter(|&d| d > 0).min().unwrap_or(0)
    }

    /// Two distinct edges sharing an endpoint (parallel edges share two).
    pub fn are_incident(&self, e: EdgeId, f: EdgeId) -> bool {
        if e == f {
            return false;
        }
        match (self.edges.get(&e), self.edges.get(&f)) {
            (Some(a), Some(b)) => a.is_incident_to(b),
            _ => false,
        }
    }

    /// Least pair of parallel edges, if any.
    pub fn parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut seen: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        let mut best: Option<(EdgeId, EdgeId)> = None;
        for r in self.edges.values() {
            if let Some(&first) = seen.get(&r.ends) {
                let pair = (first, r.id);
                if best.is_none_or(|b| pair < b) {
                    best = Some(pair);
                }
            } else {
                seen.insert(r.ends, r.id);
            }
        }
        best
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_pair().is_none()
    }

    /// Simple and every pair of vertices joined by an edge.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.is_simple() && self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// Vertices covered by at least one edge of `edges`.
    pub fn covered<'a, I>(&self, edges: I) -> BTreeSet<VertexId>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut out = BTreeSet::new();
        for e in edges {
            if let Some(r) = self.edges.get(e) {
                out.insert(r.ends.0);
                out.insert(r.ends.1);
            }
        }
        out
    }

    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.iter().next_back().map_or(0, |v| v.0 + 1))
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }

    /// Copy of the graph without the given edges; vertices are kept.
    pub fn without_edges(&self, removed: &BTreeSet<EdgeId>) -> Multigraph {
        let mut g = self.clone();
        for e in removed {
            if let Some(r) = g.edges.remove(e) {
                for v in [r.ends.0, r.ends.1] {
                    if let Some(set) = g.incidence.get_mut(&v) {
                        set.remove(e);
                    }
                }
            }
        }
        g
    }

    /// `H - v`: the vertex and all its edges removed.
    pub fn without_vertex(&self, v: VertexId) -> Result<Multigraph, GraphError> {
        if !self.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut g = self.without_edges(self.incident_edges(v));
        g.vertices.remove(&v);
        g.incidence.remove(&v);
        Ok(g)
    }

    /// Copy of the graph with all degree-0 vertices dropped.
    pub fn without_isolated(&self) -> Multigraph {
        let mut g = self.clone();
        g.vertices.retain(|v| !self.incident_edges(*v).is_empty());
        g.incidence.retain(|_, es| !es.is_empty());
        g
    }
}

/// The line graph `L(H)`: one node per edge of `H`, two nodes adjacent iff
/// the underlying edges are distinct and share an endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraphView {
    adjacency: BTreeMap<EdgeId, BTreeSet<EdgeId>>,
}

impl LineGraphView {
    pub fn of(h: &Multigraph) -> Self {
        let mut adjacency: BTreeMap<EdgeId, BTreeSet<EdgeId>> = h.edge_ids().map(|e| (e, BTreeSet::new())).collect();
        for r in h.edges() {
            let nbrs = adjacency.get_mut(&r.id).expect("node exists");
            for v in [r.ends.0, r.ends.1] {
                nbrs.extend(h.incident_edges(v).iter().filter(|&&f| f != r.id));
            }
        }
        LineGraphView { adjacency }
    }

    pub fn nodes(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_node(&self, e: EdgeId) -> bool {
        self.adjacency.contains_key(&e)
    }

    pub fn neighbors(&self, e: EdgeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adjacency.get(&e).into_iter().flatten().copied()
    }

    pub fn degree(&self, e: EdgeId) -> usize {
        self.adjacency.get(&e).map_or(0, |s| s.len())
    }

    pub fn is_adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        self.adjacency.get(&e).is_some_and(|s| s.contains(&f))
    }

    /// Number of unordered adjacent pairs.
    pub fn adjacency_count(&self) -> usize {
        self.adjacency.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Unordered adjacent pairs `(e, f)` with `e < f`, ascending.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (EdgeId, EdgeId)> + '_ {
        self.adjacency.iter().flat_map(|(&e, s)| s.range(e..).filter(move |&&f| f != e).map(move |&f| (e, f)))
    }
}

pub fn line_graph(h: &Multigraph) -> LineGraphView {
    LineGraphView::of(h)
}

/// Splits `set` into maximal connected edge sets, ordered by least member.
pub fn edge_components(h: &Multigraph, set: &BTreeSet<EdgeId>) -> Result<Vec<BTreeSet<EdgeId>>, GraphError> {
    if let Some(&bad) = set.iter().find(|e| !h.has_edge(**e)) {
        return Err(GraphError::UnknownEdgeId(bad));
    }
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut parts = Vec::new();
    for &start in set {
        if seen.contains(&start) {
            continue;
        }
        let mut part = BTreeSet::from([start]);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            let (a, b) = h.ends(e).expect("checked above");
            for v in [a, b] {
                for &f in h.incident_edges(v) {
                    if set.contains(&f) && seen.insert(f) {
                        part.insert(f);
                        stack.push(f);
                    }
                }
            }
        }
        parts.push(part);
    }
    Ok(parts)
}

/// A nonempty edge set forming a single edge component.
pub fn is_connected_edge_set(h: &Multigraph, set: &BTreeSet<EdgeId>) -> bool {
    matches!(edge_components(h, set), Ok(parts) if parts.len() == 1)
}

/// Merges every vertex covered by `set` into one fresh vertex `w`.
///
/// The edge set of the result is exactly `E(H) \ set`, with the same ids.
/// Vertices left without edges are kept.
pub fn contract(h: &Multigraph, set: &BTreeSet<EdgeId>) -> Result<(Multigraph, VertexId), GraphError> {
    if set.is_empty() {
        return Err(GraphError::EmptyContractionSet);
    }
    let parts = edge_components(h, set)?;
    if parts.len() != 1 {
        return Err(GraphError::DisconnectedContractionSet);
    }
    let merged = h.covered(set);
    let w = h.next_vertex_id();

    let mut edges = Vec::with_capacity(h.edge_count() - set.len());
    for r in h.edges() {
        if set.contains(&r.id) {
            continue;
        }
        let a = if merged.contains(&r.ends.0) { w } else { r.ends.0 };
        let b = if merged.contains(&r.ends.1) { w } else { r.ends.1 };
        if a == b {
            return Err(GraphError::WouldCreateLoop(r.id));
        }
        edges.push(EdgeRecord::new(r.id, a, b));
    }
    let vertices = h.vertices().filter(|v| !merged.contains(v)).chain(std::iter::once(w));
    let g = Multigraph::build(vertices, edges)?;
    Ok((g, w))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    pub fn e(i: u32) -> EdgeId {
        EdgeId(i)
    }

    pub fn graph(n: u32, edges: &[(u32, u32)]) -> Multigraph {
        Multigraph::build(
            (0..n).map(VertexId),
            edges.iter().enumerate().map(|(i, &(a, b))| EdgeRecord::new(EdgeId(i as u32), VertexId(a), VertexId(b))),
        )
        .unwrap()
    }

    /// K_4 with e0=01 e1=02 e2=03 e3=12 e4=13 e5=23.
    pub fn k4() -> Multigraph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    pub fn set(ids: &[u32]) -> BTreeSet<EdgeId> {
        ids.iter().map(|&i| EdgeId(i)).collect()
    }
}
