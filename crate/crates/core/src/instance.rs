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

use std::collections::BTreeMap;

use crate::coloring::{MatchingPartition, Transversal};
use crate::graph::{EdgeId, EdgeRecord, Multigraph, VertexId};

/// Human-readable names for ids, as they appear in documents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    vertices: BTreeMap<VertexId, String>,
    edges: BTreeMap<EdgeId, String>,
}

impl Labels {
    pub fn set_vertex(&mut self, v: VertexId, name: impl Into<String>) {
        self.vertices.insert(v, name.into());
    }

    pub fn set_edge(&mut self, e: EdgeId, name: impl Into<String>) {
        self.edges.insert(e, name.into());
    }

    /// Vertices created by contraction have no label and print as `#<id>`.
    pub fn vertex(&self, v: VertexId) -> String {
        self.vertices.get(&v).cloned().unwrap_or_else(|| format!("#{}", v.0))
    }

    pub fn edge(&self, e: EdgeId) -> String {
        self.edges.get(&e).cloned().unwrap_or_else(|| format!("#{}", e.0))
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().find(|(_, n)| n.as_str() == name).map(|(&v, _)| v)
    }

    pub fn find_edge(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().find(|(_, n)| n.as_str() == name).map(|(&e, _)| e)
    }

    /// Labels every vertex and edge of `h` by its numeric id.
    pub fn numeric(h: &Multigraph) -> Labels {
        let mut labels = Labels::default();
        for v in h.vertices() {
            labels.set_vertex(v, v.0.to_string());
        }
        for e in h.edge_ids() {
            labels.set_edge(e, format!("e{}", e.0));
        }
        labels
    }
}

/// A colored graph, optionally with a prescribed transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Multigraph,
    pub partition: MatchingPartition,
    pub transversal: Option<Transversal>,
    pub labels: Labels,
}

impl Instance {
    pub fn new(graph: Multigraph, partition: MatchingPartition, labels: Labels) -> Self {
        Instance { graph, partition, transversal: None, labels }
    }

    pub fn with_transversal(mut self, t: Transversal) -> Self {
        self.transversal = Some(t);
        self
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    /// The declared transversal, or the least edge of every class.
    pub fn transversal_or_default(&self) -> Transversal {
        self.transversal.clone().unwrap_or_else(|| Transversal::least_of(&self.partition))
    }

    /// Number of distinct transversals (product of class sizes), saturating.
    pub fn transversal_count(&self) -> u128 {
        self.partition.classes().iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// All transversals in lexicographic class order, if there are at most `limit`.
    pub fn all_transversals(&self, limit: usize) -> Option<Vec<Transversal>> {
        if self.transversal_count() > limit as u128 {
            return None;
        }
        let classes: Vec<Vec<EdgeId>> = self.partition.classes().iter().map(|c| c.iter().copied().collect()).collect();
        let mut out = vec![Vec::new()];
        for class in &classes {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<EdgeId>| {
                    class.iter().map(move |&e| {
                        let mut next = prefix.clone();
                        next.push(e);
                        next
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(Transversal::new).collect())
    }

    /// Renumbers vertices and edges to `0..n` and `0..m`, keeping their order,
    /// classes and names.
    pub fn compacted(&self) -> Instance {
        let vmap: BTreeMap<VertexId, VertexId> =
            self.graph.vertices().enumerate().map(|(i, v)| (v, VertexId(i as u32))).collect();
        let emap: BTreeMap<EdgeId, EdgeId> =
            self.graph.edge_ids().enumerate().map(|(i, e)| (e, EdgeId(i as u32))).collect();
        let edges = self.graph.edges().map(|r| EdgeRecord::new(emap[&r.id], vmap[&r.ends.0], vmap[&r.ends.1]));
        let graph = Multigraph::build(vmap.values().copied(), edges).expect("renumbering keeps the graph valid");
        let partition = MatchingPartition::new(
            self.partition.classes().iter().map(|c| c.iter().filter_map(|e| emap.get(e).copied()).collect()).collect(),
        );
        let mut labels = Labels::default();
        for (old, new) in &vmap {
            labels.set_vertex(*new, self.labels.vertex(*old));
        }
        for (old, new) in &emap {
            labels.set_edge(*new, self.labels.edge(*old));
        }
        Instance {
            graph,
            partition,
            transversal: self
                .transversal
                .as_ref()
                .map(|t| Transversal::new(t.edges().iter().filter_map(|e| emap.get(e).copied()))),
            labels,
        }
    }
}
