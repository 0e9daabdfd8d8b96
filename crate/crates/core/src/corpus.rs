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

//! The standard instance corpus and a directory runner.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::generators::{delete_vertex, gen_circulant, k4_seed, splice, CirculantSpec, GenError, SpliceSpec};
use crate::graph::VertexId;
use crate::instance::Instance;
use crate::io::{emit_instance, parse_instance};
use crate::solver::{solve, verify_solution, SolveError};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub instance: Instance,
}

/// Circulant parameter sets: for every modulus in {5, 7, 11, 13} and size in
/// 3..=5, the consecutive shifts `0..s` and the even shifts `0, 2, .., 2(s-1)`
/// where they are valid.
pub fn circulant_specs() -> Vec<CirculantSpec> {
    let mut specs = Vec::new();
    for m in [5u64, 7, 11, 13] {
        for s in 3..=5u64 {
            for step in [1, 2] {
                let spec = CirculantSpec::new(m, (0..s).map(|i| i * step).collect());
                if spec.validate().is_ok() {
                    specs.push(spec);
                }
            }
        }
    }
    specs
}

/// Circulants, the `K_4` seed, splices of every unordered pair of base
/// instances with equal class count (an instance with itself included), and
/// one vertex deletion of each.
pub fn standard_corpus() -> Result<Vec<CorpusEntry>, GenError> {
    let mut base = vec![CorpusEntry { name: "k4".into(), instance: k4_seed() }];
    for spec in circulant_specs() {
        let shifts: Vec<String> = spec.shifts.iter().map(u64::to_string).collect();
        base.push(CorpusEntry {
            name: format!("circ-{}-{}", spec.m, shifts.join("_")),
            instance: gen_circulant(&spec)?,
        });
    }
    let mut spliced = Vec::new();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.instance.k() != b.instance.k() {
                continue;
            }
            let last = b.instance.graph.vertices().last().expect("nonempty");
            let instance = splice(SpliceSpec {
                first: &a.instance,
                first_vertex: VertexId(0),
                second: &b.instance,
                second_vertex: last,
            })?;
            spliced.push(CorpusEntry { name: format!("splice({},{})", a.name, b.name), instance });
        }
    }
    let mut all = base;
    all.extend(spliced);
    let mut deleted = Vec::with_capacity(all.len());
    for entry in &all {
        deleted.push(CorpusEntry {
            name: format!("{}-minus-0", entry.name),
            instance: delete_vertex(&entry.instance, VertexId(0))?,
        });
    }
    all.extend(deleted);
    Ok(all)
}

/// Writes every corpus instance to `<dir>/<name>.json`.
pub fn write_corpus(dir: &Path, entries: &[CorpusEntry]) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(entries.len());
    for entry in entries {
        let file: String = entry
            .name
            .chars()
            .filter(|&c| c != ')')
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '.' })
            .collect();
        let path = dir.join(format!("{file}.json"));
        fs::write(&path, emit_instance(&entry.instance))?;
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Accepted {
        bags: usize,
    },
    Failed(String),
    /// The solver hit an internal assertion.
    Internal(String),
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub path: PathBuf,
    pub outcome: RunOutcome,
}

/// Solves and checks one instance file against its declared transversal,
/// or the least edge of each class when none is declared.
pub fn run_file(path: &Path) -> RunOutcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return RunOutcome::Failed(e.to_string()),
    };
    let inst = match parse_instance(&text, true) {
        Ok(i) => i,
        Err(e) => return RunOutcome::Failed(e.to_string()),
    };
    let t = inst.transversal_or_default();
    match solve(&inst.graph, &inst.partition, &t) {
        Ok(sol) => {
            let verdict = verify_solution(&inst.graph, &inst.partition, &t, &sol.bags);
            if verdict.accepted() {
                RunOutcome::Accepted { bags: sol.bags.len() }
            } else {
                RunOutcome::Failed(verdict.to_string())
            }
        }
        Err(e @ SolveError::InternalAssertion { .. }) => RunOutcome::Internal(e.to_string()),
        Err(e) => RunOutcome::Failed(e.to_string()),
    }
}

/// Runs every `*.json` file in `dir` concurrently, sorted by path.
pub fn run_dir(dir: &Path) -> std::io::Result<Vec<RunRecord>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files.into_par_iter().map(|path| RunRecord { outcome: run_file(&path), path }).collect())
}
