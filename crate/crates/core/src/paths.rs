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

//! Menger-type path systems and separators.
//!
//! Both routines reduce to unit-capacity maximum flow, augmented along
//! shortest residual paths with neighbors scanned in ascending id order, so
//! results are deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{edge_components, EdgeId, LineGraphView, Multigraph, VertexId};

const INF: u64 = u64::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disjointness {
    Vertex,
    Edge,
}

/// Paths as edge-id sequences. In vertex mode the ids are nodes of `L(H)`;
/// in edge mode they are the consecutive edges of a walk in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub mode: Disjointness,
    pub paths: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub nodes: BTreeSet<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MengerOutcome {
    Paths(PathSystem),
    Separator(Separator),
}

/// The two edge components of `H - S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideSplit {
    pub side_c: BTreeSet<EdgeId>,
    pub side_d: BTreeSet<EdgeId>,
    pub covered_c: BTreeSet<VertexId>,
    pub covered_d: BTreeSet<VertexId>,
}

impl SideSplit {
    pub fn swapped(self) -> SideSplit {
        SideSplit { side_c: self.side_d, side_d: self.side_c, covered_c: self.covered_d, covered_d: self.covered_c }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathsError {
    #[error("{0} is not a node of the line graph")]
    UnknownNode(EdgeId),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("path endpoints must differ")]
    SameEndpoints,
    #[error("wanted {wanted} edge-disjoint paths, only {found} exist")]
    InsufficientConnectivity { wanted: usize, found: usize },
    #[error("removing the separator leaves {components} edge components and {} stranded vertices", stranded.len())]
    NotTwoSides { components: usize, stranded: Vec<VertexId> },
}

/// Residual network; arc `i ^ 1` is the reverse of arc `i`.
struct FlowNetwork {
    out: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<u64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { out: vec![Vec::new(); nodes], to: Vec::new(), residual: Vec::new() }
    }

    fn push_pair(&mut self, u: usize, v: usize, forward: u64, backward: u64) -> usize {
        let idx = self.to.len();
        self.to.push(v);
        self.residual.push(forward);
        self.out[u].push(idx);
        self.to.push(u);
        self.residual.push(backward);
        self.out[v].push(idx + 1);
        idx
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.push_pair(u, v, cap, 0)
    }

    /// Undirected unit edge: one arc pair, each the other's reverse.
    fn add_undirected(&mut self, u: usize, v: usize) -> usize {
        self.push_pair(u, v, 1, 1)
    }

    /// Pushes the bottleneck of one shortest augmenting path, at most `cap`.
    fn augment(&mut self, s: usize, t: usize, cap: u64) -> u64 {
        let mut via: Vec<Option<usize>> = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.to[a];
                if self.residual[a] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = Some(a);
                    if v == t {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return 0;
        }
        let mut push = cap;
        let mut v = t;
        while let Some(a) = via[v] {
            push = push.min(self.residual[a]);
            v = self.to[a ^ 1];
        }
        let mut v = t;
        while let Some(a) = via[v] {
            self.residual[a] -= push;
            self.residual[a ^ 1] += push;
            v = self.to[a ^ 1];
        }
        push
    }

    /// Augments until `limit` units flow or no augmenting path remains.
    fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let mut flow = 0;
        while flow < limit {
            let pushed = self.augment(s, t, limit - flow);
            if pushed == 0 {
                break;
            }
            flow += pushed;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let v = self.to[a];
                if self.residual[a] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

fn node_in(i: usize) -> usize {
    2 + 2 * i
}

fn node_out(i: usize) -> usize {
    3 + 2 * i
}

/// Node-split network: source 0, sink 1, `node_in(i) -> node_out(i)` carrying
/// `weight(node)`, and infinite arcs for adjacency and terminals.
fn split_network(
    g: &LineGraphView,
    nodes: &[EdgeId],
    index: &BTreeMap<EdgeId, usize>,
    sources: &BTreeSet<EdgeId>,
    targets: &BTreeSet<EdgeId>,
    weight: impl Fn(EdgeId) -> u64,
) -> (FlowNetwork, Vec<(EdgeId, usize)>, Vec<usize>) {
    let mut net = FlowNetwork::new(2 + 2 * nodes.len());
    let mut source_arcs = Vec::new();
    for &u in sources {
        source_arcs.push((u, net.add_arc(0, node_in(index[&u]), INF)));
    }
    let mut split_arcs = Vec::with_capacity(nodes.len());
    for (i, &e) in nodes.iter().enumerate() {
        split_arcs.push(net.add_arc(node_in(i), node_out(i), weight(e)));
        for f in g.neighbors(e) {
            net.add_arc(node_out(i), node_in(index[&f]), INF);
        }
        if targets.contains(&e) {
            net.add_arc(node_out(i), 1, INF);
        }
    }
    (net, source_arcs, split_arcs)
}

/// Either `k` vertex-disjoint `U,T`-paths in `g`, or a minimum `U,T`
/// separator of size below `k`.
///
/// Paths run from a `U`-node and stop at the first `T`-node they meet, so
/// each one contains exactly one node of `T`. Separator nodes may belong
/// to `U` or `T`.
pub fn disjoint_paths_or_separator(
    g: &LineGraphView,
    sources: &BTreeSet<EdgeId>,
    targets: &BTreeSet<EdgeId>,
    k: usize,
) -> Result<MengerOutcome, PathsError> {
    if let Some(&bad) = sources.iter().chain(targets).find(|e| !g.has_node(**e)) {
        return Err(PathsError::UnknownNode(bad));
    }
    let nodes: Vec<EdgeId> = g.nodes().collect();
    let index: BTreeMap<EdgeId, usize> = nodes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let (s, t) = (0, 1);

    let (mut net, source_arcs, split_arcs) = split_network(g, &nodes, &index, sources, targets, |_| 1);
    let flow = net.max_flow(s, t, k as u64) as usize;
    if flow < k {
        // Among minimum separators prefer one with the fewest U or T nodes:
        // weight W per node plus one per terminal, W larger than any count.
        let w = nodes.len() as u64 + 1;
        let terminal = |e: EdgeId| sources.contains(&e) || targets.contains(&e);
        let (mut weighted, _, _) =
            split_network(g, &nodes, &index, sources, targets, |e| if terminal(e) { w + 1 } else { w });
        weighted.max_flow(s, t, INF);
        let seen = weighted.reachable(s);
        let cut: BTreeSet<EdgeId> =
            (0..nodes.len()).filter(|&i| seen[node_in(i)] && !seen[node_out(i)]).map(|i| nodes[i]).collect();
        debug_assert_eq!(cut.len(), flow);
        return Ok(MengerOutcome::Separator(Separator { nodes: cut }));
    }

    // Each used node carries one unit, so following flow from a source
    // arc is deterministic and never revisits a node.
    let carries = |net: &FlowNetwork, a: usize| net.residual[a ^ 1] > 0 && a.is_multiple_of(2);
    let mut paths = Vec::with_capacity(k);
    for (u, arc) in source_arcs {
        if !carries(&net, arc) {
            continue;
        }
        let mut path = Vec::new();
        let mut i = index[&u];
        loop {
            let e = nodes[i];
            path.push(e);
            if targets.contains(&e) {
                break;
            }
            let next = net.out[node_out(i)]
                .iter()
                .copied()
                .find(|&a| carries(&net, a) && net.to[a] != t)
                .expect("flow conservation");
            i = (net.to[next] - 2) / 2;
        }
        debug_assert!(net.residual[split_arcs[index[&u]]] == 0);
        paths.push(path);
    }
    Ok(MengerOutcome::Paths(PathSystem { mode: Disjointness::Vertex, paths }))
}

/// `k` pairwise edge-disjoint `a,b`-paths in `h`, each a simple path given
/// by its edges in order from `a` to `b`.
pub fn edge_disjoint_paths(h: &Multigraph, a: VertexId, b: VertexId, k: usize) -> Result<PathSystem, PathsError> {
    for x in [a, b] {
        if !h.has_vertex(x) {
            return Err(PathsError::UnknownVertex(x));
        }
    }
    if a == b {
        return Err(PathsError::SameEndpoints);
    }
    let verts: Vec<VertexId> = h.vertices().collect();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut net = FlowNetwork::new(verts.len());
    let mut arc_edge: BTreeMap<usize, EdgeId> = BTreeMap::new();
    for r in h.edges() {
        let arc = net.add_undirected(index[&r.ends.0], index[&r.ends.1]);
        arc_edge.insert(arc, r.id);
        arc_edge.insert(arc + 1, r.id);
    }
    let (s, t) = (index[&a], index[&b]);
    let found = net.max_flow(s, t, k as u64) as usize;
    if found < k {
        return Err(PathsError::InsufficientConnectivity { wanted: k, found });
    }

    // An arc carries flow when its residual dropped from 1 to 0.
    let mut used = vec![false; net.to.len()];
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let mut walk_vertices = vec![s];
        let mut walk_edges: Vec<EdgeId> = Vec::new();
        let mut cur = s;
        while cur != t {
            let arc = net.out[cur]
                .iter()
                .copied()
                .filter(|&a| net.residual[a] == 0 && !used[a])
                .min_by_key(|a| arc_edge[a])
                .expect("flow conservation");
            used[arc] = true;
            cur = net.to[arc];
            // shortcut loops so the path stays simple
            if let Some(pos) = walk_vertices.iter().position(|&x| x == cur) {
                walk_vertices.truncate(pos + 1);
                walk_edges.truncate(pos);
            } else {
                walk_vertices.push(cur);
                walk_edges.push(arc_edge[&arc]);
            }
        }
        paths.push(walk_edges);
    }
    Ok(PathSystem { mode: Disjointness::Edge, paths })
}

/// Splits `E(H) \ S` into its two edge components.
///
/// Sides are ordered by least edge id. Fails unless there are exactly two
/// components and every vertex covered by `S` is also covered by one side.
pub fn split_sides(h: &Multigraph, separator: &BTreeSet<EdgeId>) -> Result<SideSplit, PathsError> {
    if let Some(&bad) = separator.iter().find(|e| !h.has_edge(**e)) {
        return Err(PathsError::UnknownEdge(bad));
    }
    let rest: BTreeSet<EdgeId> = h.edge_ids().filter(|e| !separator.contains(e)).collect();
    let parts = edge_components(h, &rest).expect("subset of E(H)");
    let covered_rest = h.covered(&rest);
    let stranded: Vec<VertexId> = h.covered(separator).difference(&covered_rest).copied().collect();
    if parts.len() != 2 || !stranded.is_empty() {
        return Err(PathsError::NotTwoSides { components: parts.len(), stranded });
    }
    let mut parts = parts.into_iter();
    let side_c = parts.next().expect("two parts");
    let side_d = parts.next().expect("two parts");
    Ok(SideSplit { covered_c: h.covered(&side_c), covered_d: h.covered(&side_d), side_c, side_d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::line_graph;

    /// Brute force: size of a smallest node set meeting every U,T-path.
    fn brute_min_separator(g: &LineGraphView, u: &BTreeSet<EdgeId>, t: &BTreeSet<EdgeId>) -> usize {
        let nodes: Vec<EdgeId> = g.nodes().collect();
        let n = nodes.len();
        let mut best = n;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size >= best {
                continue;
            }
            let removed: BTreeSet<EdgeId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| nodes[i]).collect();
            if !connects(g, u, t, &removed) {
                best = size;
            }
        }
        best
    }

    fn connects(g: &LineGraphView, u: &BTreeSet<EdgeId>, t: &BTreeSet<EdgeId>, removed: &BTreeSet<EdgeId>) -> bool {
        let mut seen: BTreeSet<EdgeId> = u.difference(removed).copied().collect();
        let mut stack: Vec<EdgeId> = seen.iter().copied().collect();
        while let Some(x) = stack.pop() {
            if t.contains(&x) {
                return true;
            }
            for y in g.neighbors(x) {
                if !removed.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        false
    }

    fn check_vertex_paths(g: &LineGraphView, u: &BTreeSet<EdgeId>, t: &BTreeSet<EdgeId>, ps: &PathSystem, k: usize) {
        assert_eq!(ps.paths.len(), k);
        let mut all = BTreeSet::new();
        for p in &ps.paths {
            assert!(u.contains(&p[0]));
            assert!(t.contains(p.last().unwrap()));
            assert_eq!(p.iter().filter(|x| t.contains(x)).count(), 1);
            for w in p.windows(2) {
                assert!(g.is_adjacent(w[0], w[1]));
            }
            for x in p {
                assert!(all.insert(*x), "paths share {x}");
            }
        }
    }

    #[test]
    fn identical_sources_and_targets_give_trivial_paths() {
        let g = line_graph(&k4());
        let u = set(&[0, 1, 2]);
        match disjoint_paths_or_separator(&g, &u, &u, 3).unwrap() {
            MengerOutcome::Paths(ps) => assert_eq!(ps.paths, vec![vec![e(0)], vec![e(1)], vec![e(2)]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_star_to_mixed_targets() {
        // U = {01,02,03}, T = {01,13,23}
        let g = line_graph(&k4());
        let (u, t) = (set(&[0, 1, 2]), set(&[0, 4, 5]));
        assert_eq!(brute_min_separator(&g, &u, &t), 3);
        match disjoint_paths_or_separator(&g, &u, &t, 3).unwrap() {
            MengerOutcome::Paths(ps) => {
                check_vertex_paths(&g, &u, &t, &ps, 3);
                assert_eq!(ps.paths, vec![vec![e(0)], vec![e(1), e(5)], vec![e(2), e(4)]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn path_graph_has_cut_node() {
        // L(a-b-c-d) = p-q-r
        let g = line_graph(&graph(4, &[(0, 1), (1, 2), (2, 3)]));
        let outcome = disjoint_paths_or_separator(&g, &set(&[0]), &set(&[2]), 2).unwrap();
        assert_eq!(outcome, MengerOutcome::Separator(Separator { nodes: set(&[1]) }));
    }

    #[test]
    fn unknown_nodes_are_rejected() {
        let g = line_graph(&k4());
        assert_eq!(disjoint_paths_or_separator(&g, &set(&[7]), &set(&[0]), 1), Err(PathsError::UnknownNode(e(7))));
    }

    #[test]
    fn flow_agrees_with_brute_force_on_small_graphs() {
        let cases: Vec<(Multigraph, BTreeSet<EdgeId>, BTreeSet<EdgeId>)> = vec![
            (k4(), set(&[0, 1, 2]), set(&[3, 4, 5])),
            (k4(), set(&[0]), set(&[5])),
            (graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]), set(&[0, 5]), set(&[2, 3])),
            (
                graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
                set(&[0, 1, 2]),
                set(&[3, 4, 5]),
            ),
            (graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]), set(&[0, 5]), set(&[2, 3])),
        ];
        for (h, u, t) in cases {
            let g = line_graph(&h);
            let brute = brute_min_separator(&g, &u, &t);
            for k in 1..=4 {
                match disjoint_paths_or_separator(&g, &u, &t, k).unwrap() {
                    MengerOutcome::Paths(ps) => {
                        assert!(brute >= k);
                        check_vertex_paths(&g, &u, &t, &ps, k);
                    }
                    MengerOutcome::Separator(sep) => {
                        assert!(k > brute);
                        assert_eq!(sep.nodes.len(), brute);
                        assert!(!connects(&g, &u, &t, &sep.nodes));
                    }
                }
            }
        }
    }

    fn check_edge_paths(h: &Multigraph, a: VertexId, b: VertexId, ps: &PathSystem) {
        let mut used = BTreeSet::new();
        for p in &ps.paths {
            let mut at = a;
            let mut visited = BTreeSet::from([a]);
            for &x in p {
                assert!(used.insert(x), "edge {x} reused");
                at = h.edge(x).unwrap().other_end(at).expect("walk is contiguous");
                assert!(visited.insert(at), "path is not simple");
            }
            assert_eq!(at, b);
        }
    }

    #[test]
    fn k4_has_three_edge_disjoint_paths() {
        let h = k4();
        let ps = edge_disjoint_paths(&h, v(0), v(1), 3).unwrap();
        check_edge_paths(&h, v(0), v(1), &ps);
        // 01 | 02,12 | 03,13
        assert_eq!(ps.paths, vec![vec![e(0)], vec![e(1), e(3)], vec![e(2), e(4)]]);
    }

    #[test]
    fn single_edge_paths() {
        let h = graph(2, &[(0, 1)]);
        assert_eq!(edge_disjoint_paths(&h, v(0), v(1), 1).unwrap().paths, vec![vec![e(0)]]);
        assert_eq!(
            edge_disjoint_paths(&h, v(0), v(1), 2),
            Err(PathsError::InsufficientConnectivity { wanted: 2, found: 1 })
        );
        assert_eq!(edge_disjoint_paths(&h, v(0), v(0), 1), Err(PathsError::SameEndpoints));
    }

    #[test]
    fn parallel_edges_count_separately() {
        let h = graph(3, &[(0, 1), (0, 1), (1, 2), (0, 2)]);
        let ps = edge_disjoint_paths(&h, v(0), v(1), 3).unwrap();
        check_edge_paths(&h, v(0), v(1), &ps);
    }

    #[test]
    fn split_sides_cases() {
        let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let split = split_sides(&path, &set(&[1])).unwrap();
        assert_eq!((split.side_c, split.side_d), (set(&[0]), set(&[2])));

        let h = k4();
        let split = split_sides(&h, &set(&[1, 2, 3, 4])).unwrap();
        assert_eq!((split.side_c.clone(), split.side_d.clone()), (set(&[0]), set(&[5])));
        assert_eq!(split.covered_c, BTreeSet::from([v(0), v(1)]));

        assert_eq!(split_sides(&h, &set(&[0])), Err(PathsError::NotTwoSides { components: 1, stranded: vec![] }));
    }

    #[test]
    fn stranded_vertex_is_reported() {
        // 0-1-2-3 plus pendant 1-4 cut off by S={1-4, 1-2}
        let h = graph(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
        assert_eq!(
            split_sides(&h, &set(&[1, 3])),
            Err(PathsError::NotTwoSides { components: 2, stranded: vec![v(4)] })
        );
    }
}
