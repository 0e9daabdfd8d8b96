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

//! JSON documents for instances and solutions, and DOT rendering.
//!
//! Vertices and edges are named by strings in documents. On parse, the i-th
//! declared vertex (edge) gets id `i`, so declaration order is the total
//! order used by every tie-break in the solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coloring::{
    verify_kempe, verify_matching_partition, verify_transversal, KempeViolation, MatchingPartition, PartitionViolation,
    Transversal, TransversalViolation, Verdict,
};
use crate::graph::{line_graph, EdgeId, EdgeRecord, GraphError, Multigraph, VertexId};
use crate::instance::{Instance, Labels};
use crate::solver::{BagSystem, ParallelCase, ReductionStep, ReductionTrace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
    pub classes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub bags: Vec<Vec<String>>,
    /// The prescribed edges the bags were built around.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Parse { location: location.into(), message: message.into() }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema { path: path.into(), message: message.into() }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = message.split(" at line ").next().unwrap_or(&message).to_string();
        parse_err(format!("line {} column {}", e.line(), e.column()), message)
    })
}

/// Verdicts of the three structural checks on an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub partition: Verdict<PartitionViolation>,
    pub kempe: Verdict<KempeViolation>,
    pub transversal: Option<Verdict<TransversalViolation>>,
}

impl InstanceReport {
    pub fn accepted(&self) -> bool {
        self.partition.accepted() && self.kempe.accepted() && self.transversal.as_ref().is_none_or(|t| t.accepted())
    }
}

impl fmt::Display for InstanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matching partition: {}", self.partition)?;
        writeln!(f, "kempe: {}", self.kempe)?;
        match &self.transversal {
            Some(v) => write!(f, "transversal: {v}"),
            None => write!(f, "transversal: none declared"),
        }
    }
}

/// Runs the matching-partition, Kempe and (if declared) transversal checks.
pub fn verify_instance(inst: &Instance) -> InstanceReport {
    InstanceReport {
        partition: verify_matching_partition(&inst.graph, &inst.partition),
        kempe: verify_kempe(&inst.graph, &inst.partition),
        transversal: inst.transversal.as_ref().map(|t| verify_transversal(&inst.partition, t)),
    }
}

/// Builds an instance from a document. With `verify`, rejects documents
/// whose classes are not a Kempe matching partition or whose transversal
/// misses a class.
pub fn instance_from_document(doc: &InstanceDocument, verify: bool) -> Result<Instance, IoError> {
    let mut labels = Labels::default();
    let mut vertex_ids: BTreeMap<&str, VertexId> = BTreeMap::new();
    for (i, name) in doc.vertices.iter().enumerate() {
        let id = VertexId(i as u32);
        if vertex_ids.insert(name, id).is_some() {
            return Err(parse_err(format!("vertices[{i}]"), format!("duplicate vertex id {name:?}")));
        }
        labels.set_vertex(id, name.clone());
    }
    let mut edge_ids: BTreeMap<&str, EdgeId> = BTreeMap::new();
    let mut records = Vec::with_capacity(doc.edges.len());
    for (i, entry) in doc.edges.iter().enumerate() {
        let id = EdgeId(i as u32);
        if edge_ids.insert(&entry.id, id).is_some() {
            return Err(parse_err(format!("edges[{i}].id"), format!("duplicate edge id {:?}", entry.id)));
        }
        let mut ends = [VertexId(0); 2];
        for (j, end) in entry.ends.iter().enumerate() {
            ends[j] = *vertex_ids
                .get(end.as_str())
                .ok_or_else(|| schema(format!("edges[{i}].ends[{j}]"), format!("unknown vertex {end:?}")))?;
        }
        if ends[0] == ends[1] {
            return Err(schema(format!("edges[{i}].ends"), "edge is a loop"));
        }
        labels.set_edge(id, entry.id.clone());
        records.push(EdgeRecord::new(id, ends[0], ends[1]));
    }
    let lookup = |name: &str, path: String| {
        edge_ids.get(name).copied().ok_or_else(|| schema(path, format!("unknown edge {name:?}")))
    };
    let mut classes = Vec::with_capacity(doc.classes.len());
    for (i, class) in doc.classes.iter().enumerate() {
        let mut set = BTreeSet::new();
        for (j, name) in class.iter().enumerate() {
            set.insert(lookup(name, format!("classes[{i}][{j}]"))?);
        }
        classes.push(set);
    }
    let transversal = match &doc.transversal {
        Some(names) => {
            let mut edges = Vec::with_capacity(names.len());
            for (j, name) in names.iter().enumerate() {
                edges.push(lookup(name, format!("transversal[{j}]"))?);
            }
            Some(Transversal::new(edges))
        }
        None => None,
    };
    let graph = Multigraph::build((0..doc.vertices.len()).map(|i| VertexId(i as u32)), records)
        .map_err(|e: GraphError| schema("edges", e.to_string()))?;
    let inst = Instance { graph, partition: MatchingPartition::new(classes), transversal, labels };
    if verify {
        let report = verify_instance(&inst);
        if !report.accepted() {
            return Err(IoError::Invalid(report.to_string().replace('\n', "; ")));
        }
    }
    Ok(inst)
}

pub fn parse_instance(text: &str, verify: bool) -> Result<Instance, IoError> {
    instance_from_document(&from_json(text)?, verify)
}

pub fn instance_document(inst: &Instance) -> InstanceDocument {
    let names = |set: &BTreeSet<EdgeId>| set.iter().map(|&e| inst.labels.edge(e)).collect::<Vec<_>>();
    InstanceDocument {
        vertices: inst.graph.vertices().map(|v| inst.labels.vertex(v)).collect(),
        edges: inst
            .graph
            .edges()
            .map(|r| EdgeEntry {
                id: inst.labels.edge(r.id),
                ends: [inst.labels.vertex(r.ends.0), inst.labels.vertex(r.ends.1)],
            })
            .collect(),
        classes: inst.partition.classes().iter().map(names).collect(),
        transversal: inst.transversal.as_ref().map(|t| names(t.edges())),
    }
}

pub fn emit_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&instance_document(inst)).expect("documents serialize") + "\n"
}

/// A solution resolved against its instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSolution {
    pub bags: BagSystem,
    pub transversal: Option<Transversal>,
}

pub fn parse_solution(inst: &Instance, text: &str) -> Result<ParsedSolution, IoError> {
    let doc: SolutionDocument = from_json(text)?;
    let lookup = |name: &str, path: String| {
        inst.labels
            .find_edge(name)
            .filter(|e| inst.graph.has_edge(*e))
            .ok_or_else(|| schema(path, format!("unknown edge {name:?}")))
    };
    let mut bags = Vec::with_capacity(doc.bags.len());
    for (i, bag) in doc.bags.iter().enumerate() {
        let mut set = BTreeSet::new();
        for (j, name) in bag.iter().enumerate() {
            if !set.insert(lookup(name, format!("bags[{i}][{j}]"))?) {
                return Err(schema(format!("bags[{i}][{j}]"), format!("edge {name:?} repeated in bag")));
            }
        }
        bags.push(set);
    }
    let transversal = match &doc.transversal {
        Some(names) => {
            let mut edges = Vec::with_capacity(names.len());
            for (j, name) in names.iter().enumerate() {
                edges.push(lookup(name, format!("transversal[{j}]"))?);
            }
            Some(Transversal::new(edges))
        }
        None => None,
    };
    Ok(ParsedSolution { bags: BagSystem::new(bags), transversal })
}

pub fn solution_document(
    inst: &Instance,
    bags: &BagSystem,
    transversal: &Transversal,
    trace: Option<&ReductionTrace>,
) -> SolutionDocument {
    let labels = &inst.labels;
    SolutionDocument {
        bags: bags.bags.iter().map(|b| b.iter().map(|&e| labels.edge(e)).collect()).collect(),
        transversal: Some(transversal.edges().iter().map(|&e| labels.edge(e)).collect()),
        trace: trace.map(|t| t.steps.iter().map(|s| step_json(labels, s)).collect()),
    }
}

pub fn emit_solution(
    inst: &Instance,
    bags: &BagSystem,
    transversal: &Transversal,
    trace: Option<&ReductionTrace>,
) -> String {
    serde_json::to_string_pretty(&solution_document(inst, bags, transversal, trace)).expect("documents serialize")
        + "\n"
}

fn edge_names<'a>(labels: &Labels, edges: impl IntoIterator<Item = &'a EdgeId>) -> Vec<String> {
    edges.into_iter().map(|&e| labels.edge(e)).collect()
}

/// One trace step with ids replaced by document names.
pub fn step_json(labels: &Labels, step: &ReductionStep) -> Value {
    let kind = step.kind();
    let depth = step.depth();
    match step {
        ReductionStep::Base { k, .. } => json!({ "kind": kind, "depth": depth, "k": k }),
        ReductionStep::ParallelPeel { pair, peeled, .. } => json!({
            "kind": kind,
            "depth": depth,
            "pair": [labels.edge(pair.0), labels.edge(pair.1)],
            "peeled": labels.edge(*peeled),
        }),
        ReductionStep::ParallelClose { pair, case, .. } => {
            let merged = match case {
                ParallelCase::Singletons => Value::Null,
                ParallelCase::Merged { merged } => json!(edge_names(labels, merged)),
            };
            json!({
                "kind": kind,
                "depth": depth,
                "pair": [labels.edge(pair.0), labels.edge(pair.1)],
                "merged": merged,
            })
        }
        ReductionStep::MengerSuccess { vertex, hub, paths, .. } => json!({
            "kind": kind,
            "depth": depth,
            "vertex": labels.vertex(*vertex),
            "hub": edge_names(labels, hub),
            "paths": paths.iter().map(|p| edge_names(labels, p)).collect::<Vec<_>>(),
        }),
        ReductionStep::SeparatorContraction(s) => json!({
            "kind": kind,
            "depth": depth,
            "k": s.k,
            "vertex": labels.vertex(s.vertex),
            "hub": edge_names(labels, &s.hub),
            "separator": edge_names(labels, &s.separator),
            "separator_classes": s.separator_classes.iter().map(|(e, c)| (labels.edge(*e), json!(c))).collect::<serde_json::Map<_, _>>(),
            "free_class": s.free_class,
            "side_c": edge_names(labels, &s.side_c),
            "side_d": edge_names(labels, &s.side_d),
            "lifting_paths": s.lifting_paths.iter().map(|(e, p)| (labels.edge(*e), json!(edge_names(labels, p)))).collect::<serde_json::Map<_, _>>(),
            "edges_before": s.edges_before,
            "edges_after": s.edges_after,
        }),
        ReductionStep::CompleteFallback { report, .. } => json!({
            "kind": kind,
            "depth": depth,
            "k": report.k,
            "vertices": report.vertex_count,
            "max_degree": report.max_degree,
            "min_degree": report.min_degree,
            "cubic_gap": report.cubic_gap,
        }),
    }
}

const PALETTE: [&str; 10] =
    ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gold3", "gray40"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `H` with class-indexed edge colors. With `bags`, bag members are drawn
/// bold and labeled `B<i>`; edges outside every bag are dashed.
pub fn instance_dot(inst: &Instance, bags: Option<&BagSystem>) -> String {
    let class_of = inst.partition.class_index();
    let owner: BTreeMap<EdgeId, usize> = bags
        .map(|b| b.bags.iter().enumerate().flat_map(|(i, bag)| bag.iter().map(move |&e| (e, i))).collect())
        .unwrap_or_default();
    let mut out = String::from("graph H {\n  node [shape=circle];\n");
    for v in inst.graph.vertices() {
        let _ = writeln!(out, "  {};", quote(&inst.labels.vertex(v)));
    }
    for r in inst.graph.edges() {
        let color = class_of.get(&r.id).map_or("black", |&c| PALETTE[c % PALETTE.len()]);
        let mut attrs = vec![format!("color={color}")];
        let mut label = inst.labels.edge(r.id);
        if let Some(&c) = class_of.get(&r.id) {
            label.push_str(&format!(" c{c}"));
        }
        if bags.is_some() {
            match owner.get(&r.id) {
                Some(&b) => {
                    label.push_str(&format!(" B{b}"));
                    attrs.push("penwidth=3".into());
                }
                None => attrs.push("style=dashed".into()),
            }
        }
        attrs.push(format!("label={}", quote(&label)));
        let _ = writeln!(
            out,
            "  {} -- {} [{}];",
            quote(&inst.labels.vertex(r.ends.0)),
            quote(&inst.labels.vertex(r.ends.1)),
            attrs.join(", ")
        );
    }
    out.push_str("}\n");
    out
}

/// `L(H)`: one node per edge, colored by class.
pub fn line_graph_dot(inst: &Instance) -> String {
    let class_of = inst.partition.class_index();
    let lg = line_graph(&inst.graph);
    let mut out = String::from("graph L {\n  node [shape=box, style=filled, fontcolor=white];\n");
    for e in lg.nodes() {
        let color = class_of.get(&e).map_or("black", |&c| PALETTE[c % PALETTE.len()]);
        let _ = writeln!(out, "  {} [fillcolor={color}];", quote(&inst.labels.edge(e)));
    }
    for (a, b) in lg.adjacent_pairs() {
        let _ = writeln!(out, "  {} -- {};", quote(&inst.labels.edge(a)), quote(&inst.labels.edge(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::k4_seed;

    const K4: &str = r#"{
        "vertices": ["0", "1", "2", "3"],
        "edges": [
            {"id": "e01", "ends": ["0", "1"]}, {"id": "e02", "ends": ["0", "2"]},
            {"id": "e03", "ends": ["0", "3"]}, {"id": "e12", "ends": ["1", "2"]},
            {"id": "e13", "ends": ["1", "3"]}, {"id": "e23", "ends": ["2", "3"]}
        ],
        "classes": [["e01", "e23"], ["e02", "e13"], ["e03", "e12"]]
    }"#;

    #[test]
    fn parses_k4() {
        let inst = parse_instance(K4, true).unwrap();
        assert!(verify_kempe(&inst.graph, &inst.partition).accepted());
        assert_eq!(inst, k4_seed());
    }

    #[test]
    fn unknown_class_edge_is_schema_violation() {
        let text = K4.replace(r#"["e03", "e12"]"#, r#"["e03", "e99"]"#);
        assert_eq!(
            parse_instance(&text, true).unwrap_err(),
            IoError::Schema { path: "classes[2][1]".into(), message: "unknown edge \"e99\"".into() }
        );
    }

    #[test]
    fn duplicate_edge_is_parse_error() {
        let text = K4.replace(r#""id": "e13""#, r#""id": "e12""#);
        assert!(matches!(
            parse_instance(&text, true).unwrap_err(),
            IoError::Parse { location, .. } if location == "edges[4].id"
        ));
    }

    #[test]
    fn malformed_json_reports_line() {
        let err = parse_instance("{\n  \"vertices\": [1]\n}", true).unwrap_err();
        assert!(matches!(err, IoError::Parse { ref location, .. } if location.starts_with("line 2")), "{err}");
    }

    #[test]
    fn verification_can_be_skipped() {
        let text = K4.replace(r#"[["e01", "e23"], ["e02", "e13"], ["e03", "e12"]]"#, r#"[["e01", "e02"]]"#);
        assert!(matches!(parse_instance(&text, true), Err(IoError::Invalid(_))));
        assert!(parse_instance(&text, false).is_ok());
    }

    #[test]
    fn round_trips() {
        let inst = k4_seed().with_transversal(Transversal::new([EdgeId(0), EdgeId(1), EdgeId(2)]));
        assert_eq!(parse_instance(&emit_instance(&inst), true).unwrap(), inst);
        let bags = BagSystem::new(vec![
            BTreeSet::from([EdgeId(0)]),
            BTreeSet::from([EdgeId(1), EdgeId(3)]),
            BTreeSet::from([EdgeId(2), EdgeId(4)]),
        ]);
        let t = inst.transversal.clone().unwrap();
        let parsed = parse_solution(&inst, &emit_solution(&inst, &bags, &t, None)).unwrap();
        assert_eq!(parsed, ParsedSolution { bags, transversal: Some(t) });
    }

    #[test]
    fn dot_output_mentions_every_edge() {
        let inst = k4_seed();
        let dot = instance_dot(&inst, None);
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("color=red"));
        let lg = line_graph_dot(&inst);
        assert_eq!(lg.matches(" -- ").count(), 12);
    }
}
