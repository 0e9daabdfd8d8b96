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

//! Complete host graphs.
//!
//! On `K_n` any `n` prescribed edges can be rooted, whether or not they
//! form a transversal. The recursion removes a vertex `v` of degree at most
//! two in `H[T]` and patches the bag system of `K_n - v`.

use std::collections::{BTreeMap, BTreeSet};

use super::{assertion, ensure, BagSystem, InputProblem, SolveError};
use crate::coloring::MatchingPartition;
use crate::graph::{EdgeId, Multigraph, VertexId};

type Pair = (VertexId, VertexId);

fn pair(a: VertexId, b: VertexId) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Diagnostics gathered when no vertex has full degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FallbackReport {
    pub k: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub vertex_count: usize,
    /// `(Δ+1)·Δ·(k−Δ) − k·(k−1)`; zero exactly when the bound is tight.
    pub cubic_gap: i64,
    /// `d·(k−d) − Δ·(k−Δ)` for every vertex.
    pub degree_gaps: Vec<(VertexId, i64)>,
}

/// Confirms that a simple Kempe-colored graph without a vertex of degree
/// `k` is the complete graph `K_k`.
pub fn assert_complete_fallback(h: &Multigraph, partition: &MatchingPartition) -> Result<FallbackReport, SolveError> {
    let h = h.without_isolated();
    let k = partition.k();
    let delta = h.max_degree();
    let min_degree = h.min_positive_degree();
    let n = h.vertex_count();
    let (ki, di) = (k as i64, delta as i64);
    let cubic_gap = (di + 1) * di * (ki - di) - ki * (ki - 1);
    let degree_gaps = h
        .vertices()
        .map(|v| {
            let d = h.degree(v) as i64;
            (v, d * (ki - d) - di * (ki - di))
        })
        .collect();
    let report = FallbackReport { k, max_degree: delta, min_degree, vertex_count: n, cubic_gap, degree_gaps };

    ensure(k >= 3, || format!("fallback needs k >= 3, got {k}"))?;
    ensure(h.is_simple(), || "fallback graph is simple".into())?;
    ensure(delta < k, || format!("no vertex has degree k = {k} (max degree {delta})"))?;
    ensure(2 * delta > k, || format!("max degree {delta} is at least (k+1)/2"))?;
    ensure(min_degree + delta > k, || format!("min degree {min_degree} is at least k + 1 - {delta}"))?;
    ensure(delta == k - 1, || format!("max degree {delta} equals k - 1 = {}", k - 1))?;
    ensure(cubic_gap == 0, || format!("(Δ+1)·Δ·(k−Δ) = k·(k−1), gap {cubic_gap}"))?;
    ensure(n == delta + 1, || format!("vertex count {n} equals Δ + 1"))?;
    ensure(h.vertices().all(|v| h.degree(v) == delta), || "graph is regular of degree Δ".into())?;
    ensure(h.is_complete(), || "graph is complete".into())?;
    Ok(report)
}

/// Bags for any `n` edges of the simple complete graph `K_n`, `n >= 3`.
pub fn solve_complete(h: &Multigraph, prescribed: &BTreeSet<EdgeId>) -> Result<BagSystem, SolveError> {
    if let Some(&bad) = prescribed.iter().find(|e| !h.has_edge(**e)) {
        return Err(SolveError::InvalidInput(InputProblem::UnknownEdge(bad)));
    }
    let h = h.without_isolated();
    if !h.is_complete() {
        return Err(SolveError::InvalidInput(InputProblem::NotComplete));
    }
    let n = h.vertex_count();
    if n < 3 {
        return Err(SolveError::InvalidInput(InputProblem::TooFewVertices(n)));
    }
    if prescribed.len() != n {
        return Err(SolveError::InvalidInput(InputProblem::TransversalSize { expected: n, found: prescribed.len() }));
    }
    Ok(BagSystem::new(complete_bags(&h, prescribed)?))
}

pub(super) fn complete_bags(
    h: &Multigraph,
    prescribed: &BTreeSet<EdgeId>,
) -> Result<Vec<BTreeSet<EdgeId>>, SolveError> {
    let by_pair: BTreeMap<Pair, EdgeId> = h.edges().map(|r| (r.ends, r.id)).collect();
    let t: BTreeSet<Pair> = prescribed
        .iter()
        .map(|e| h.ends(*e).ok_or(SolveError::InvalidInput(InputProblem::UnknownEdge(*e))))
        .collect::<Result<_, _>>()?;
    let verts: BTreeSet<VertexId> = h.vertex_set().clone();
    let bags = rooted(&verts, &t)?;
    Ok(bags.into_iter().map(|bag| bag.into_iter().map(|p| by_pair[&p]).collect()).collect())
}

fn star(v: VertexId, verts: &BTreeSet<VertexId>) -> BTreeSet<Pair> {
    verts.iter().filter(|&&u| u != v).map(|&u| pair(v, u)).collect()
}

fn t_neighbors(v: VertexId, t: &BTreeSet<Pair>) -> Vec<VertexId> {
    t.iter()
        .filter_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
        .collect()
}

fn rooted(verts: &BTreeSet<VertexId>, t: &BTreeSet<Pair>) -> Result<Vec<BTreeSet<Pair>>, SolveError> {
    let n = verts.len();
    ensure(t.len() == n, || format!("K_{n} step has {n} prescribed edges"))?;
    if n == 3 {
        return Ok(t.iter().map(|&p| BTreeSet::from([p])).collect());
    }
    // average degree of H[T] is 2
    let mut v = verts
        .iter()
        .copied()
        .find(|&x| t_neighbors(x, t).len() <= 2)
        .ok_or_else(|| assertion("H[T] has a vertex of degree at most 2"))?;
    let mut nbrs = t_neighbors(v, t);

    if let [x, y] = nbrs[..] {
        let rest: BTreeSet<Pair> = t.iter().copied().filter(|&p| p != pair(v, x) && p != pair(v, y)).collect();
        if rest.iter().all(|&(a, b)| a == x || b == x) {
            // T minus v's edges is a spanning star at x in K_n - v; one of
            // its leaves other than y has degree one in H[T]
            v = verts
                .iter()
                .copied()
                .find(|&z| z != v && z != x && t_neighbors(z, t).len() == 1)
                .ok_or_else(|| assertion("spanning star in H[T] - v has a leaf of degree 1"))?;
            nbrs = t_neighbors(v, t);
        }
    }

    let smaller: BTreeSet<VertexId> = verts.iter().copied().filter(|&u| u != v).collect();
    match nbrs[..] {
        [x] => {
            let mut sub_t = t.clone();
            sub_t.remove(&pair(v, x));
            let mut bags = rooted(&smaller, &sub_t)?;
            bags.push(star(v, verts));
            Ok(bags)
        }
        [x, y] => {
            let z = smaller
                .iter()
                .copied()
                .find(|&z| z != x && !t.contains(&pair(x, z)))
                .ok_or_else(|| assertion("x has a non-prescribed edge in K_n - v"))?;
            let mut sub_t = t.clone();
            sub_t.remove(&pair(v, x));
            sub_t.remove(&pair(v, y));
            sub_t.insert(pair(x, z));
            let mut bags = rooted(&smaller, &sub_t)?;
            let f = bags
                .iter()
                .position(|b| b.contains(&pair(x, z)))
                .ok_or_else(|| assertion("substitute edge xz lies in some bag"))?;
            bags[f].insert(pair(v, x));
            let mut rest = star(v, verts);
            rest.remove(&pair(v, x));
            bags.push(rest);
            Ok(bags)
        }
        [] => {
            let xy = *t.iter().next().expect("n > 3 prescribed edges");
            let mut sub_t = t.clone();
            sub_t.remove(&xy);
            let mut bags = rooted(&smaller, &sub_t)?;
            let Some(f) = bags.iter().position(|b| b.contains(&xy)) else {
                let mut bag = star(v, verts);
                bag.insert(xy);
                bags.push(bag);
                return Ok(bags);
            };
            let (mut x, mut y) = xy;
            let wz = *bags[f]
                .intersection(&sub_t)
                .next()
                .ok_or_else(|| assertion("bag containing xy has a prescribed edge"))?;
            let w = if wz.0 != x && wz.0 != y { wz.0 } else { wz.1 };
            ensure(w != x && w != y, || "prescribed edge wz has an end outside {x, y}".into())?;
            let without: BTreeSet<Pair> = bags[f].iter().copied().filter(|&p| p != xy).collect();
            if !joined(&without, w, x) {
                ensure(joined(&without, w, y), || "w is joined to x or y in H[F] - xy".into())?;
                std::mem::swap(&mut x, &mut y);
            }
            let mut f_prime = without;
            f_prime.insert(pair(v, w));
            f_prime.insert(pair(v, y));
            let mut f_second = star(v, verts);
            f_second.remove(&pair(v, w));
            f_second.remove(&pair(v, y));
            f_second.insert(xy);
            bags[f] = f_prime;
            bags.push(f_second);
            Ok(bags)
        }
        _ => Err(assertion("selected vertex has degree at most 2 in H[T]")),
    }
}

/// Whether `a` and `b` are joined by a path of `edges` (or equal).
fn joined(edges: &BTreeSet<Pair>, a: VertexId, b: VertexId) -> bool {
    let mut seen = BTreeSet::from([a]);
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        if x == b {
            return true;
        }
        for &(p, q) in edges {
            let next = if p == x {
                q
            } else if q == x {
                p
            } else {
                continue;
            };
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::solver::check_bags;

    fn complete(n: u32) -> Multigraph {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                pairs.push((a, b));
            }
        }
        graph(n, &pairs)
    }

    fn id_of(h: &Multigraph, a: u32, b: u32) -> EdgeId {
        h.edges().find(|r| r.ends == pair(v(a), v(b))).unwrap().id
    }

    #[test]
    fn triangle_gives_singletons() {
        let h = complete(3);
        let t = set(&[0, 1, 2]);
        let bags = solve_complete(&h, &t).unwrap();
        assert_eq!(bags.bags, vec![set(&[0]), set(&[1]), set(&[2])]);
    }

    #[test]
    fn four_cycle_in_k4() {
        let h = complete(4);
        let t: BTreeSet<EdgeId> = [(0, 1), (1, 2), (2, 3), (0, 3)].iter().map(|&(a, b)| id_of(&h, a, b)).collect();
        let bags = solve_complete(&h, &t).unwrap();
        assert!(check_bags(&h, &t, &bags).accepted());
        assert_eq!(bags.len(), 4);
    }

    #[test]
    fn five_cycle_in_k5() {
        let h = complete(5);
        let t: BTreeSet<EdgeId> =
            [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)].iter().map(|&(a, b)| id_of(&h, a, b)).collect();
        let bags = solve_complete(&h, &t).unwrap();
        assert!(check_bags(&h, &t, &bags).accepted());
    }

    #[test]
    fn star_transversal_forces_leaf_reselection() {
        // v=0 has T-neighbors 1,2 and the rest of T is a star at 1
        let h = complete(5);
        let t: BTreeSet<EdgeId> =
            [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4)].iter().map(|&(a, b)| id_of(&h, a, b)).collect();
        let bags = solve_complete(&h, &t).unwrap();
        assert!(check_bags(&h, &t, &bags).accepted());
    }

    #[test]
    fn input_checks() {
        let h = complete(4);
        assert_eq!(
            solve_complete(&h, &set(&[0, 1])),
            Err(SolveError::InvalidInput(InputProblem::TransversalSize { expected: 4, found: 2 }))
        );
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(solve_complete(&path, &set(&[0, 1])), Err(SolveError::InvalidInput(InputProblem::NotComplete)));
        let edge = complete(2);
        assert_eq!(solve_complete(&edge, &set(&[0])), Err(SolveError::InvalidInput(InputProblem::TooFewVertices(2))));
    }

    #[test]
    fn fallback_on_triangle() {
        let h = complete(3);
        let p = MatchingPartition::new(vec![set(&[0]), set(&[1]), set(&[2])]);
        let report = assert_complete_fallback(&h, &p).unwrap();
        assert_eq!((report.k, report.max_degree, report.vertex_count, report.cubic_gap), (3, 2, 3, 0));
        assert!(report.degree_gaps.iter().all(|&(_, g)| g == 0));
    }

    #[test]
    fn fallback_rejects_full_degree_and_non_complete() {
        let h = k4();
        let p = MatchingPartition::new(vec![set(&[0, 5]), set(&[1, 4]), set(&[2, 3])]);
        assert!(matches!(assert_complete_fallback(&h, &p), Err(SolveError::InternalAssertion { .. })));

        let hexagon = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let p = MatchingPartition::new(vec![set(&[0, 3]), set(&[1, 4]), set(&[2, 5])]);
        assert!(matches!(assert_complete_fallback(&hexagon, &p), Err(SolveError::InternalAssertion { .. })));
    }
}
