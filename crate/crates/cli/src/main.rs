//! Command-line front end: parse net or matrix instances, run the analyses,
//! and emit verdicts, matrices, trajectories, and DOT exports as JSON or
//! DOT text.
//!
//! Exit codes: 0 for consistent / no violations / agreeing oracles, 1 for
//! the semantic failure of each command (inconsistent, violations found,
//! oracle disagreement), 2 for input or internal errors. Every error path
//! prints a JSON object with an `error` key on standard error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use pteg_core::maxplus::TropicalMatrix;
use pteg_core::oracle::{brute_infinite_weight, random_instance};
use pteg_core::periodic::{
    analyze_infinite_weight, build_slice, detect_infinite_weight, slice_to_dot,
    InfWeightVerdict, InfinitePathCertificate, NodeIndexMap, PumpablePair, SliceSpec,
};
use pteg_core::pteg::{ConsistencyVerdict, MatrixInstance, PTimeEventGraph, Trajectory, Violation};
use pteg_core::staticgraph::StaticGraph;

#[derive(Parser)]
#[command(
    name = "pteg",
    version,
    about = "Consistency analysis for P-time event graphs over the max-plus algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide consistency of a net or matrix instance
    Check {
        /// Net or matrix JSON file; standard input when omitted
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Output file; standard output when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Witness prefix length to construct in the consistent case
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Also list every pumpable pair the scan encounters
        #[arg(long)]
        exhaustive: bool,
    },
    /// Print the Kleene star of a finite slice of the periodic graph
    Star {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Symmetric slice radius (levels -r..=r); defaults to the
        /// transition count when neither --radius nor --depth is given
        #[arg(long, conflicts_with = "depth")]
        radius: Option<usize>,
        /// Natural slice depth (levels 1..=K)
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Emit a trajectory prefix that satisfies every constraint
    Witness {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Number of trajectory levels to emit
        #[arg(long, default_value_t = 10)]
        horizon: usize,
    },
    /// Check a trajectory against a net's timing constraints
    Validate {
        /// Net JSON file; standard input when omitted
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Trajectory JSON file: an array of per-level firing-date rows
        #[arg(long)]
        trajectory: PathBuf,
    },
    /// Run the fast detector and the brute-force oracle, compare classes
    OracleCompare {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded random net
    Gen {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Transition count
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Probability of a place per ordered transition pair
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Largest lower bound; upper bounds reach twice this
        #[arg(long = "weight-max", default_value_t = 5)]
        weight_max: i64,
        /// Largest initial marking
        #[arg(long = "marking-max", default_value_t = 1)]
        marking_max: usize,
    },
    /// Export the static graph, or one of its slices, as GraphViz DOT
    ExportDot {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Export the symmetric slice of this radius instead of the graph
        #[arg(long)]
        radius: Option<usize>,
    },
}

/// Instance JSON is either a net (keyed by `transitions`) or a matrix
/// triple (keyed by `n`).
enum Instance {
    Net(PTimeEventGraph),
    Matrices(MatrixInstance),
}

impl Instance {
    fn parse(text: &str) -> anyhow::Result<Instance> {
        let value: serde_json::Value =
            serde_json::from_str(text).context("input is not valid JSON")?;
        let object = match value.as_object() {
            Some(object) => object,
            None => bail!("input must be a JSON object"),
        };
        if object.contains_key("transitions") {
            let net = serde_json::from_value(value).context("malformed net")?;
            Ok(Instance::Net(net))
        } else if object.contains_key("n") {
            let matrices: MatrixInstance =
                serde_json::from_value(value).context("malformed matrix instance")?;
            matrices.validate()?;
            Ok(Instance::Matrices(matrices))
        } else {
            bail!(
                "input must be a net (with \"transitions\" and \"places\") or a matrix \
                 instance (with \"n\", \"M_minus\", \"M_zero\", \"M_plus\")"
            )
        }
    }

    fn reduced(&self) -> anyhow::Result<(TropicalMatrix, TropicalMatrix, TropicalMatrix)> {
        match self {
            Instance::Net(net) => Ok(net.reduced_matrices()?),
            Instance::Matrices(mi) => {
                Ok((mi.m_minus.clone(), mi.m_zero.clone(), mi.m_plus.clone()))
            }
        }
    }

    fn graph(&self) -> anyhow::Result<StaticGraph> {
        let (m_minus, m_zero, m_plus) = self.reduced()?;
        Ok(StaticGraph::from_matrices(&m_minus, &m_zero, &m_plus)?)
    }
}

#[derive(Serialize)]
struct CheckOutput {
    #[serde(flatten)]
    verdict: ConsistencyVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pumpable_pairs: Option<Vec<PumpablePair>>,
}

#[derive(Serialize)]
struct StarOutput {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    labels: Vec<String>,
    star: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ValidateOutput {
    count: usize,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct VerdictSummary {
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<InfinitePathCertificate>,
}

impl VerdictSummary {
    fn from_verdict(verdict: InfWeightVerdict) -> Self {
        match verdict {
            InfWeightVerdict::NoInfinitePath => VerdictSummary {
                class: "no_infinite_path",
                certificate: None,
            },
            InfWeightVerdict::InfiniteWeight(certificate) => VerdictSummary {
                class: match &certificate {
                    InfinitePathCertificate::PositiveCircuit(_) => "positive_circuit",
                    InfinitePathCertificate::PumpablePair(_) => "pumpable_pair",
                },
                certificate: Some(certificate),
            },
        }
    }
}

#[derive(Serialize)]
struct CompareOutput {
    agree: bool,
    detector: VerdictSummary,
    brute: VerdictSummary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{}", serde_json::json!({ "error": format!("{err:#}") }));
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Check {
            input,
            output,
            horizon,
            exhaustive,
        } => {
            let instance = Instance::parse(&read_input(&input)?)?;
            let verdict = match &instance {
                Instance::Net(net) => net.check_consistency(horizon)?,
                Instance::Matrices(mi) => mi.check(horizon)?,
            };
            let pumpable_pairs = if exhaustive {
                Some(analyze_infinite_weight(&instance.graph()?, true)?.pairs)
            } else {
                None
            };
            let code = u8::from(!verdict.is_consistent());
            write_json(
                &output,
                &CheckOutput {
                    verdict,
                    pumpable_pairs,
                },
            )?;
            Ok(code)
        }
        Command::Star {
            input,
            output,
            radius,
            depth,
        } => {
            let instance = Instance::parse(&read_input(&input)?)?;
            let graph = instance.graph()?;
            let spec = match (radius, depth) {
                (None, Some(depth)) => SliceSpec::Natural { depth },
                (r, None) => SliceSpec::Symmetric {
                    radius: r.unwrap_or(graph.n()),
                },
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            let map = NodeIndexMap::new(graph.n(), spec)?;
            let star = build_slice(&graph, &map)?.kleene_star()?.star;
            let labels = (1..=map.node_count())
                .map(|flat| map.label(flat))
                .collect::<pteg_core::Result<Vec<_>>>()?;
            let rendered = (0..map.node_count())
                .map(|r| {
                    (0..map.node_count())
                        .map(|c| star.get(r, c).to_string())
                        .collect()
                })
                .collect();
            write_json(
                &output,
                &StarOutput {
                    n: graph.n(),
                    radius,
                    depth,
                    labels,
                    star: rendered,
                },
            )?;
            Ok(0)
        }
        Command::Witness {
            input,
            output,
            horizon,
        } => {
            let instance = Instance::parse(&read_input(&input)?)?;
            let verdict = match &instance {
                Instance::Net(net) => net.check_consistency(horizon)?,
                Instance::Matrices(mi) => mi.check(horizon)?,
            };
            match verdict {
                ConsistencyVerdict::Consistent { witness } => {
                    write_json(&output, &witness)?;
                    Ok(0)
                }
                ConsistencyVerdict::Inconsistent { .. } => {
                    eprintln!(
                        "{}",
                        serde_json::json!({
                            "error": "the instance is inconsistent; no witness prefix exists"
                        })
                    );
                    Ok(1)
                }
            }
        }
        Command::Validate {
            input,
            output,
            trajectory,
        } => {
            let instance = Instance::parse(&read_input(&input)?)?;
            let Instance::Net(net) = instance else {
                bail!("validate needs a net input; constraints live on places");
            };
            let text = fs::read_to_string(&trajectory)
                .with_context(|| format!("cannot read {}", trajectory.display()))?;
            let trajectory: Trajectory =
                serde_json::from_str(&text).context("malformed trajectory")?;
            let violations = net.validate_trajectory(&trajectory)?;
            let code = u8::from(!violations.is_empty());
            write_json(
                &output,
                &ValidateOutput {
                    count: violations.len(),
                    violations,
                },
            )?;
            Ok(code)
        }
        Command::OracleCompare { input, output } => {
            let instance = Instance::parse(&read_input(&input)?)?;
            let (m_minus, m_zero, m_plus) = instance.reduced()?;
            let graph = StaticGraph::from_matrices(&m_minus, &m_zero, &m_plus)?;
            let detector = VerdictSummary::from_verdict(detect_infinite_weight(&graph)?);
            let brute =
                VerdictSummary::from_verdict(brute_infinite_weight(&m_minus, &m_zero, &m_plus)?);
            let agree = detector.class == brute.class;
            write_json(
                &output,
                &CompareOutput {
                    agree,
                    detector,
                    brute,
                },
            )?;
            Ok(u8::from(!agree))
        }
        Command::Gen {
            output,
            seed,
            n,
            density,
            weight_max,
            marking_max,
        } => {
            let net = random_instance(seed, n, density, weight_max, marking_max)?;
            write_json(&output, &net)?;
            Ok(0)
        }
        Command::ExportDot {
            input,
            output,
            radius,
        } => {
            let instance = Instance::parse(&read_input(&input)?)?;
            let graph = instance.graph()?;
            let dot = match radius {
                Some(radius) => {
                    let map = NodeIndexMap::new(graph.n(), SliceSpec::Symmetric { radius })?;
                    let slice = build_slice(&graph, &map)?;
                    slice_to_dot(&map, &slice)?
                }
                None => graph.to_dot(),
            };
            write_text(&output, &dot)?;
            Ok(0)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
        }
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("cannot read standard input")?;
            Ok(text)
        }
    }
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("cannot render output")?;
    text.push('\n');
    write_text(path, &text)
}

fn write_text(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    let mut owned;
    let text = if text.ends_with('\n') {
        text
    } else {
        owned = String::with_capacity(text.len() + 1);
        owned.push_str(text);
        owned.push('\n');
        &owned
    };
    match path {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
