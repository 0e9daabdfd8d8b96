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

//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use kempe_minors::coloring::pair_end_count;
use kempe_minors::corpus::{standard_corpus, CorpusEntry};
use kempe_minors::generators::complete_graph;
use kempe_minors::oracle::{oracle_solve, OracleBudget, OracleOutcome};
use kempe_minors::solver::{solve_complete, solve_parallel, SeparatorStep};
use kempe_minors::{
    solve, verify_solution, BagSystem, EdgeId, EdgeRecord, Instance, MatchingPartition, Multigraph, Transversal,
    VertexId,
};

const SAMPLES: usize = 50;

/// Independent bag check: disjoint, connected (union-find over endpoints),
/// pairwise sharing a vertex, one prescribed edge each.
fn bags_ok(h: &Multigraph, prescribed: &BTreeSet<EdgeId>, bags: &BagSystem) -> bool {
    let mut seen = BTreeSet::new();
    let mut spans: Vec<BTreeSet<VertexId>> = Vec::new();
    for bag in &bags.bags {
        if bag.is_empty() || bag.iter().filter(|e| prescribed.contains(e)).count() != 1 {
            return false;
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        fn find(p: &mut BTreeMap<VertexId, VertexId>, x: VertexId) -> VertexId {
            let up = *p.entry(x).or_insert(x);
            if up == x {
                return x;
            }
            let root = find(p, up);
            p.insert(x, root);
            root
        }
        for &e in bag {
            if !seen.insert(e) {
                return false;
            }
            let Some((a, b)) = h.ends(e) else { return false };
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent.insert(ra, rb);
        }
        let verts: Vec<VertexId> = parent.keys().copied().collect();
        let roots: BTreeSet<VertexId> = verts.iter().map(|&v| find(&mut parent, v)).collect();
        if roots.len() != 1 {
            return false;
        }
        spans.push(verts.into_iter().collect());
    }
    (0..spans.len()).all(|i| (i + 1..spans.len()).all(|j| !spans[i].is_disjoint(&spans[j])))
}

fn transversals(inst: &Instance, seed: u64) -> Vec<Transversal> {
    if let Some(all) = inst.all_transversals(SAMPLES) {
        return all;
    }
    let mut rng = StdRng::seed_from_u64(seed);
    (0..SAMPLES)
        .map(|_| {
            Transversal::new(inst.partition.classes().iter().map(|c| {
                let i = rng.gen_range(0..c.len());
                *c.iter().nth(i).expect("in range")
            }))
        })
        .collect()
}

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn record(&mut self, id: usize, title: &str, result: Result<String, String>) {
        let (ok, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let line = format!("{} criterion {id}: {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((ok, line));
    }
}

/// Solve-then-check over the corpus; returns separator steps seen.
fn totality(corpus: &[CorpusEntry]) -> (Result<String, String>, Vec<(usize, SeparatorStep)>) {
    let start = Instant::now();
    let results: Vec<Result<(usize, Vec<SeparatorStep>), String>> = corpus
        .par_iter()
        .enumerate()
        .map(|(idx, entry)| {
            let inst = &entry.instance;
            let mut steps = Vec::new();
            let ts = transversals(inst, 0x5eed ^ idx as u64);
            for t in &ts {
                let sol = solve(&inst.graph, &inst.partition, t)
                    .map_err(|e| format!("{}: solve failed for {:?}: {e}", entry.name, t.edges()))?;
                if !verify_solution(&inst.graph, &inst.partition, t, &sol.bags).accepted()
                    || !bags_ok(&inst.graph, t.edges(), &sol.bags)
                    || sol.bags.len() != inst.k()
                {
                    return Err(format!("{}: rejected bags for {:?}", entry.name, t.edges()));
                }
                steps.extend(sol.trace.separator_steps().cloned());
            }
            Ok((ts.len(), steps))
        })
        .collect();
    let elapsed = start.elapsed();
    let mut runs = 0;
    let mut steps = Vec::new();
    for (idx, r) in results.into_iter().enumerate() {
        match r {
            Ok((n, s)) => {
                runs += n;
                steps.extend(s.into_iter().map(|s| (idx, s)));
            }
            Err(e) => return (Err(e), steps),
        }
    }
    let detail = format!("{} instances, {runs} solves accepted in {:.2?}", corpus.len(), elapsed);
    if elapsed > Duration::from_secs(10) {
        return (Err(format!("{detail} (over 10 s)")), steps);
    }
    (Ok(detail), steps)
}

fn oracle_equivalence(corpus: &[CorpusEntry]) -> Result<String, String> {
    let small: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.instance.graph.edge_count() <= 10).collect();
    if small.is_empty() {
        return Err("no corpus instance has at most 10 edges".into());
    }
    let mut checked = 0;
    for entry in &small {
        let inst = &entry.instance;
        for t in inst.all_transversals(usize::MAX).expect("small") {
            match oracle_solve(&inst.graph, t.edges(), OracleBudget::default()) {
                Ok(OracleOutcome::Solution(bags)) if bags_ok(&inst.graph, t.edges(), &bags) => {}
                other => return Err(format!("{}: oracle gave {other:?} for {:?}", entry.name, t.edges())),
            }
            let sol = solve(&inst.graph, &inst.partition, &t).map_err(|e| format!("{}: {e}", entry.name))?;
            if !verify_solution(&inst.graph, &inst.partition, &t, &sol.bags).accepted() {
                return Err(format!("{}: solver output rejected", entry.name));
            }
            checked += 1;
        }
    }
    Ok(format!("{} instances, {checked} transversals, oracle always feasible", small.len()))
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut c in choose(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn complete_sweep() -> Result<String, String> {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 3..=5u32 {
        let h = complete_graph(n);
        let edges: Vec<EdgeId> = h.edge_ids().collect();
        let subsets = choose(edges.len(), n as usize);
        for s in &subsets {
            let t: BTreeSet<EdgeId> = s.iter().map(|&i| edges[i]).collect();
            let bags = solve_complete(&h, &t).map_err(|e| format!("K_{n}, T={t:?}: {e}"))?;
            if bags.len() != n as usize || !bags_ok(&h, &t, &bags) {
                return Err(format!("K_{n}, T={t:?}: rejected"));
            }
        }
        counts.push(subsets.len());
    }
    let elapsed = start.elapsed();
    if counts != [1, 15, 252] {
        return Err(format!("unexpected case counts {counts:?}"));
    }
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("{counts:?} cases accepted in {elapsed:.2?}"))
}

fn kn_edges(h: &Multigraph, pairs: &[(u32, u32)]) -> BTreeSet<EdgeId> {
    pairs
        .iter()
        .map(|&(a, b)| {
            h.edges()
                .find(|r| r.ends == (VertexId(a.min(b)), VertexId(a.max(b))))
                .expect("complete graph has every pair")
                .id
        })
        .collect()
}

fn infeasible_families() -> Result<String, String> {
    let mut done = Vec::new();
    let k5 = complete_graph(5);
    let k23 = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
    let mut k23_plus = k23.to_vec();
    k23_plus.extend([(0, 1), (2, 3)]);
    let k6 = complete_graph(6);
    let mut k24_plus: Vec<(u32, u32)> = (2..6).flat_map(|b| [(0, b), (1, b)]).collect();
    k24_plus.extend([(0, 1), (2, 3)]);
    let cases = [
        ("K_5 with K_2,3", &k5, kn_edges(&k5, &k23), 12),
        ("K_5 with K_2,3 plus two edges", &k5, kn_edges(&k5, &k23_plus), 12),
        ("K_6 with K_2,4 plus two edges", &k6, kn_edges(&k6, &k24_plus), 15),
    ];
    for (name, h, t, max_edges) in cases {
        let start = Instant::now();
        let budget = OracleBudget { max_edges, ..OracleBudget::default() };
        match oracle_solve(h, &t, budget) {
            Ok(OracleOutcome::Infeasible) => {}
            other => return Err(format!("{name}: expected infeasible, got {other:?}")),
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(60) {
            return Err(format!("{name}: took {elapsed:.2?}"));
        }
        done.push(format!("{name} ({elapsed:.2?})"));
    }
    Ok(format!("infeasible: {}", done.join(", ")))
}

/// Independent check that `edges` form one cycle (or path) through every vertex.
fn spans_as(h: &Multigraph, edges: &BTreeSet<EdgeId>, cycle: bool) -> bool {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &e in edges {
        let (a, b) = h.ends(e).expect("edge exists");
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if deg.len() != h.vertex_count() {
        return false;
    }
    let ends = deg.values().filter(|&&d| d == 1).count();
    let degrees_ok =
        if cycle { deg.values().all(|&d| d == 2) } else { ends == 2 && deg.values().all(|&d| d == 1 || d == 2) };
    if !degrees_ok {
        return false;
    }
    let start = *deg.keys().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == h.vertex_count()
}

fn certification(corpus: &[CorpusEntry]) -> Result<String, String> {
    let mut cycles = 0;
    let mut paths = 0;
    for entry in corpus {
        let inst = &entry.instance;
        let deleted = entry.name.ends_with("-minus-0");
        for i in 0..inst.k() {
            for j in i + 1..inst.k() {
                let union = inst.partition.union_of(i, j);
                if !spans_as(&inst.graph, &union, !deleted) {
                    return Err(format!("{}: classes {i},{j} fail", entry.name));
                }
                if deleted {
                    paths += 1;
                } else {
                    cycles += 1;
                }
            }
        }
    }
    Ok(format!("{cycles} Hamilton cycles, {paths} Hamilton paths"))
}

fn counting(corpus: &[CorpusEntry]) -> Result<String, String> {
    let mut vertices = 0;
    let mut edges = 0;
    for entry in corpus {
        let (h, p) = (&entry.instance.graph, &entry.instance.partition);
        let k = p.k();
        for v in h.vertices() {
            let d = h.degree(v);
            let got = pair_end_count(h, p, v).map_err(|e| e.to_string())?;
            if got != d * (k - d) {
                return Err(format!("{}: vertex {v} has {got} pair ends, expected {}", entry.name, d * (k - d)));
            }
            vertices += 1;
        }
        for r in h.edges() {
            if h.degree(r.ends.0) + h.degree(r.ends.1) < k + 1 {
                return Err(format!("{}: edge {} has degree sum below k+1", entry.name, r.id));
            }
            edges += 1;
        }
    }
    Ok(format!("{vertices} vertices and {edges} edges satisfy both identities"))
}

fn separator_steps(corpus: &[CorpusEntry], steps: &[(usize, SeparatorStep)]) -> Result<String, String> {
    if steps.is_empty() {
        return Err("no separator step in any corpus trace".into());
    }
    for (idx, s) in steps {
        let name = &corpus[*idx].name;
        if s.separator.len() + 1 != s.k {
            return Err(format!("{name}: |S| = {} with k = {}", s.separator.len(), s.k));
        }
        let classes: BTreeSet<usize> = s.separator_classes.values().copied().collect();
        let avoiding: Vec<usize> = (0..s.k).filter(|c| !classes.contains(c)).collect();
        if avoiding != [s.free_class] {
            return Err(format!("{name}: classes avoiding S are {avoiding:?}"));
        }
        if s.side_c.is_empty() || s.side_d.is_empty() || !s.side_c.is_disjoint(&s.side_d) {
            return Err(format!("{name}: sides are not two disjoint nonempty sets"));
        }
    }
    let instances: BTreeSet<usize> = steps.iter().map(|(i, _)| *i).collect();
    Ok(format!("{} separator steps across {} instances", steps.len(), instances.len()))
}

fn instance(n: u32, edges: &[(u32, u32, u32)], classes: &[&[u32]]) -> (Multigraph, MatchingPartition) {
    let h = Multigraph::build(
        (0..n).map(VertexId),
        edges.iter().map(|&(i, a, b)| EdgeRecord::new(EdgeId(i), VertexId(a), VertexId(b))),
    )
    .expect("valid graph");
    let p = MatchingPartition::new(classes.iter().map(|c| c.iter().map(|&i| EdgeId(i)).collect()).collect());
    (h, p)
}

fn ids(xs: &[u32]) -> BTreeSet<EdgeId> {
    xs.iter().map(|&i| EdgeId(i)).collect()
}

fn parallel_regression() -> Result<String, String> {
    // x=0, y=1; e=0, f=1 both xy
    // two rungs: a1=2, b1=a2=3, b2=4; xa1=2, yb1=3, xa2=4, yb2=5
    let (h, p) = instance(
        5,
        &[(0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 1, 3), (4, 0, 3), (5, 1, 4)],
        &[&[0], &[1], &[2, 3], &[4, 5]],
    );
    let t = Transversal::new(ids(&[0, 1, 2, 5]));
    let sol = solve_parallel(&h, &p, &t).map_err(|e| e.to_string())?;
    if !verify_solution(&h, &p, &t, &sol.bags).accepted() {
        return Err("two-rung output rejected".into());
    }
    let expected = BTreeSet::from([ids(&[0]), ids(&[1]), ids(&[2, 4, 3]), ids(&[5])]);
    if sol.bags.canonical() != expected {
        return Err(format!("two-rung output {:?}", sol.bags.canonical()));
    }
    // three rungs: p=2, q=3, r=4 with classes {xp,yq}, {xq,yr}, {xr,yp}
    let (h, p) = instance(
        5,
        &[(0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 1, 3), (4, 0, 3), (5, 1, 4), (6, 0, 4), (7, 1, 2)],
        &[&[0], &[1], &[2, 3], &[4, 5], &[6, 7]],
    );
    let t = Transversal::new(ids(&[0, 1, 2, 5, 7]));
    let sol = solve_parallel(&h, &p, &t).map_err(|e| e.to_string())?;
    if !verify_solution(&h, &p, &t, &sol.bags).accepted() || !bags_ok(&h, t.edges(), &sol.bags) {
        return Err("three-rung output rejected".into());
    }
    Ok("two-rung output is {{e},{f},{xa1,xa2,yb1},{yb2}}; three-rung output accepted".into())
}

fn main() -> ExitCode {
    let mut report = Report { lines: Vec::new() };
    let corpus = match standard_corpus() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus generation: {e}");
            return ExitCode::FAILURE;
        }
    };
    let (result, steps) = totality(&corpus);
    report.record(1, "solve-then-verify totality", result);
    report.record(2, "oracle equivalence", oracle_equivalence(&corpus));
    report.record(3, "complete-graph sweep", complete_sweep());
    report.record(4, "infeasible prescriptions", infeasible_families());
    report.record(5, "perfect 1-factorization certification", certification(&corpus));
    report.record(6, "counting identities", counting(&corpus));
    report.record(7, "separator step structure", separator_steps(&corpus, &steps));
    report.record(8, "parallel-edge regression", parallel_regression());

    let failed = report.lines.iter().filter(|(ok, _)| !ok).count();
    println!("{} of {} criteria passed", report.lines.len() - failed, report.lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
