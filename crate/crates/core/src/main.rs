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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kempe_minors::corpus::{run_dir, standard_corpus, write_corpus, RunOutcome};
use kempe_minors::generators::{delete_vertex, gen_circulant, k4_seed, splice, CirculantSpec, SpliceSpec};
use kempe_minors::io::{
    emit_instance, emit_solution, instance_dot, line_graph_dot, parse_instance, parse_solution, verify_instance,
    IoError,
};
use kempe_minors::oracle::{oracle_solve, OracleBudget, OracleError, OracleOutcome};
use kempe_minors::{solve, verify_solution, Instance, SolveError};

/// Rooted clique minors in line graphs of Kempe-colored multigraphs.
#[derive(Parser)]
#[command(name = "kempe-minors", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a bag system for the instance's transversal.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Include the reduction trace in the solution document.
        #[arg(long)]
        trace: bool,
        /// Also write a DOT rendering of the bags.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a solution document against an instance.
    Check {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Report matching-partition, Kempe and transversal verdicts.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write a generated instance.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Exhaustive search on a small instance, using its declared edge set.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = OracleBudget::default().max_edges)]
        max_edges: usize,
    },
    /// Write the line graph as DOT.
    Linegraph {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Corpus operations.
    Corpus {
        #[command(subcommand)]
        action: Corpus,
    },
}

#[derive(Subcommand)]
enum Generate {
    Circulant {
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        shifts: Vec<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    Splice {
        #[arg(short = 'a', long)]
        first: PathBuf,
        #[arg(short = 'b', long)]
        second: PathBuf,
        #[arg(long)]
        va: String,
        #[arg(long)]
        vb: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    DeleteVertex {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    K4 {
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum Corpus {
    /// Solve and check every instance file in a directory.
    Run {
        #[arg(long)]
        dir: PathBuf,
    },
    /// Write the standard generated corpus into a directory.
    Generate {
        #[arg(long)]
        dir: PathBuf,
    },
}

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure { code, message: message.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = if matches!(e, IoError::Invalid(_)) { REJECT } else { USAGE };
        Failure::new(code, e)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = if matches!(e, SolveError::InternalAssertion { .. }) { INTERNAL } else { REJECT };
        Failure::new(code, e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn load(path: &Path, verify: bool) -> Result<Instance, Failure> {
    parse_instance(&read(path)?, verify).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn vertex_named(inst: &Instance, name: &str) -> Result<kempe_minors::VertexId, Failure> {
    inst.labels.find_vertex(name).ok_or_else(|| Failure::new(USAGE, format!("no vertex named {name:?}")))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { input, output, trace, dot } => {
            let inst = load(&input, true)?;
            let t = inst.transversal_or_default();
            let sol = solve(&inst.graph, &inst.partition, &t)?;
            write(&output, &emit_solution(&inst, &sol.bags, &t, trace.then_some(&sol.trace)))?;
            if let Some(dot) = dot {
                write(&dot, &instance_dot(&inst, Some(&sol.bags)))?;
            }
            println!("solved: {} bags", sol.bags.len());
            Ok(ACCEPT)
        }
        Command::Check { input, solution } => {
            let inst = load(&input, true)?;
            let parsed = parse_solution(&inst, &read(&solution)?)?;
            let t = parsed.transversal.unwrap_or_else(|| inst.transversal_or_default());
            let verdict = verify_solution(&inst.graph, &inst.partition, &t, &parsed.bags);
            println!("{verdict}");
            Ok(if verdict.accepted() { ACCEPT } else { REJECT })
        }
        Command::Verify { input } => {
            let inst = load(&input, false)?;
            let report = verify_instance(&inst);
            println!("{report}");
            Ok(if report.accepted() { ACCEPT } else { REJECT })
        }
        Command::Generate { kind } => {
            let (inst, output) = match kind {
                Generate::Circulant { m, shifts, output } => (gen_circulant(&CirculantSpec::new(m, shifts)), output),
                Generate::Splice { first, second, va, vb, output } => {
                    let a = load(&first, true)?;
                    let b = load(&second, true)?;
                    let spec = SpliceSpec {
                        first: &a,
                        first_vertex: vertex_named(&a, &va)?,
                        second: &b,
                        second_vertex: vertex_named(&b, &vb)?,
                    };
                    (splice(spec), output)
                }
                Generate::DeleteVertex { input, vertex, output } => {
                    let inst = load(&input, true)?;
                    let v = vertex_named(&inst, &vertex)?;
                    (delete_vertex(&inst, v), output)
                }
                Generate::K4 { output } => (Ok(k4_seed()), output),
            };
            let inst = inst.map_err(|e| Failure::new(REJECT, e))?;
            write(&output, &emit_instance(&inst))?;
            Ok(ACCEPT)
        }
        Command::Oracle { input, max_edges } => {
            let inst = load(&input, false)?;
            let t = inst.transversal_or_default();
            let budget = OracleBudget { max_edges, ..OracleBudget::default() };
            match oracle_solve(&inst.graph, t.edges(), budget) {
                Ok(OracleOutcome::Solution(bags)) => {
                    print!("{}", emit_solution(&inst, &bags, &t, None));
                    Ok(ACCEPT)
                }
                Ok(OracleOutcome::Infeasible) => {
                    println!("infeasible");
                    Ok(REJECT)
                }
                Err(e @ OracleError::BudgetExceeded(_)) => Err(Failure::new(REJECT, e)),
                Err(e) => Err(Failure::new(USAGE, e)),
            }
        }
        Command::Linegraph { input, output } => {
            let inst = load(&input, false)?;
            write(&output, &line_graph_dot(&inst))?;
            Ok(ACCEPT)
        }
        Command::Corpus { action: Corpus::Generate { dir } } => {
            let entries = standard_corpus().map_err(|e| Failure::new(INTERNAL, e))?;
            let paths = write_corpus(&dir, &entries).map_err(|e| Failure::new(USAGE, e))?;
            println!("wrote {} instances", paths.len());
            Ok(ACCEPT)
        }
        Command::Corpus { action: Corpus::Run { dir } } => {
            let records = run_dir(&dir).map_err(|e| Failure::new(USAGE, format!("{}: {e}", dir.display())))?;
            let mut code = ACCEPT;
            for r in &records {
                match &r.outcome {
                    RunOutcome::Accepted { bags } => println!("ok    {} ({bags} bags)", r.path.display()),
                    RunOutcome::Failed(m) => {
                        code = code.max(REJECT);
                        println!("FAIL  {}: {m}", r.path.display());
                    }
                    RunOutcome::Internal(m) => {
                        code = INTERNAL;
                        println!("FAIL  {}: {m}", r.path.display());
                    }
                }
            }
            let ok = records.iter().filter(|r| matches!(r.outcome, RunOutcome::Accepted { .. })).count();
            println!("{ok}/{} accepted", records.len());
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
