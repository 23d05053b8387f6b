//! Command-line front end. All output is JSON on stdout; diagnostics go to
//! stderr. Exit codes: 0 success, 2 invalid input, 3 unsupported input or
//! exhausted budget.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cdg::{build_cdg, pp_bounded_circuit_test, pp_bounded_edge_test, pp_fixed_circuit_test};
use crate::circuits::{circuit_report, circuits_support_oracle};
use crate::ecw::{elementary_cone_condition, recognize_nd_parallelotope, symmetric_inner_cone_condition};
use crate::error::{Error, Result};
use crate::exactla::{is_totally_unimodular, parse_rational, sub, Rational};
use crate::families::{
    fig2, fig3_polytope, matroid_polytope, nd_parallelotope, partition_bounded, partition_fixed, random_integer_systems,
    random_simple_polytopes, random_unimodular, transportation, unit_cube, MatroidSpec, PartitionSpec, Skew,
    TransportationSpec,
};
use crate::json;
use crate::polyhedron::Polyhedron;
use crate::walks::{
    all_steps_reversible, classify_hierarchy, distances_and_diameters, walk, Classification, Directive, DistanceKind,
    DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(name = "polywalk", version, about = "Circuits, circuit walks and the circuit-walk hierarchy of small polytopes")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Polyhedron JSON file; stdin when omitted or "-".
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a polyhedron from a named family.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Write to FILE instead of stdout.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// List vertices with their tight rows.
    Vertices(Input),
    /// List canonical circuits.
    Circuits {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Rank)]
        method: Method,
    },
    /// Run a circuit walk from a vertex.
    Walk {
        #[command(flatten)]
        input: Input,
        /// Index of the start vertex in sorted vertex order.
        #[arg(long)]
        start: usize,
        /// Semicolon-separated directions, e.g. "1,0;0,-1"; "edge" steps to
        /// the next unvisited neighbor.
        #[arg(long, allow_hyphen_values = true)]
        dirs: String,
    },
    /// Place the polytope in the GCW/ICW/VCW/ECW hierarchy.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
        budget_points: u64,
        /// Also report whether every maximal step is reversible.
        #[arg(long)]
        reversibility: bool,
    },
    /// Total unimodularity of the stacked constraint matrix.
    CheckTu(Input),
    /// Edge-walk characterizations of a simple polytope.
    CheckEcw {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Via::All)]
        via: Via,
    },
    /// Pairwise vertex distances and the diameter.
    Diameter {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Kind::Combinatorial)]
        kind: Kind,
        #[arg(long, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
        budget_points: u64,
    },
    /// Clustering difference graph of two clusterings.
    Cdg {
        /// Partition spec JSON: {"n_items", "lower", "upper"}.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        y1: PathBuf,
        #[arg(long)]
        y2: PathBuf,
        #[arg(long, value_enum, default_value_t = CdgTest::Edge)]
        test: CdgTest,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Planar examples a..d.
    Fig2 {
        #[arg(long)]
        which: String,
    },
    /// 0/1-polytope in R^3 with a non-integral maximal step.
    Fig3,
    Cube {
        #[arg(long)]
        n: usize,
    },
    Transportation {
        #[arg(long, value_delimiter = ',')]
        u: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        v: Vec<u64>,
    },
    /// Bounded-size partition polytope.
    Partition {
        #[arg(long)]
        n_items: usize,
        #[arg(long, value_delimiter = ',')]
        lower: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        upper: Vec<usize>,
    },
    /// Fixed-size partition polytope.
    PartitionFixed {
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Polytope of the uniform matroid U(ground, rank).
    MatroidUniform {
        #[arg(long)]
        ground: usize,
        #[arg(long)]
        rank: u32,
    },
    /// Polytope of a graphic matroid; edges as "0-1,1-2".
    MatroidGraphic {
        #[arg(long)]
        edges: String,
    },
    Parallelotope {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Apply a random unimodular skew drawn from this seed.
        #[arg(long)]
        skew_seed: Option<u64>,
    },
    RandomSimple {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 10)]
        max_facets: usize,
    },
    RandomSystem {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Rank,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Elementary,
    Symmetric,
    Recognize,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Combinatorial,
    Circuit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CdgTest {
    Edge,
    Circuit,
}

/// Outcome that is not an [`Error`] but still gets a nonzero exit code.
enum Outcome {
    Done(Value),
    Unknown(Value),
}

fn read_text(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn read_json(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Value> {
    serde_json::from_str(&read_text(path, stdin)?).map_err(|e| Error::Parse(e.to_string()))
}

fn read_polyhedron(input: &Input, stdin: &mut dyn Read) -> Result<Polyhedron> {
    json::parse_polyhedron(&read_json(input.input.as_ref(), stdin)?)
}

fn parse_dirs(s: &str) -> Result<Vec<Directive>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t == "edge" {
                Ok(Directive::EdgeGreedy)
            } else {
                Ok(Directive::Circuit(t.split(',').map(|x| parse_rational(x.trim())).collect::<Result<_>>()?))
            }
        })
        .collect()
}

fn generate(family: &Family) -> Result<Polyhedron> {
    Ok(match family {
        Family::Fig2 { which } => fig2(which.parse()?),
        Family::Fig3 => fig3_polytope(),
        Family::Cube { n } => {
            if *n == 0 {
                return Err(Error::InvalidSpec("cube dimension must be positive".into()));
            }
            unit_cube(*n)
        }
        Family::Transportation { u, v } => transportation(&TransportationSpec::new(u.clone(), v.clone()))?,
        Family::Partition { n_items, lower, upper } => {
            partition_bounded(&PartitionSpec::bounded(*n_items, lower.clone(), upper.clone()))?
        }
        Family::PartitionFixed { sizes } => partition_fixed(&PartitionSpec::fixed(sizes.iter().sum(), sizes.clone()))?,
        Family::MatroidUniform { ground, rank } => matroid_polytope(&MatroidSpec::uniform(*ground, *rank)?)?,
        Family::MatroidGraphic { edges } => {
            let parse_edge = |e: &str| -> Result<(usize, usize)> {
                let bad = || Error::InvalidSpec(format!("edge {e:?} is not of the form u-v"));
                let (a, b) = e.trim().split_once('-').ok_or_else(bad)?;
                Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
            };
            let es = edges.split(',').filter(|e| !e.trim().is_empty()).map(parse_edge).collect::<Result<Vec<_>>>()?;
            matroid_polytope(&MatroidSpec::graphic(&es)?)?
        }
        Family::Parallelotope { n, d, skew_seed } => {
            let skew = skew_seed.map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                Skew { matrix: random_unimodular(&mut rng, *n), shift: vec![Rational::from(0); *n] }
            });
            nd_parallelotope(*n, *d, skew.as_ref())?
        }
        Family::RandomSimple { seed, index, max_dim, max_facets } => {
            random_simple_polytopes(index + 1, *max_dim, *max_facets, *seed)
                .into_iter()
                .nth(*index)
                .ok_or_else(|| Error::InvalidSpec("generator produced too few polytopes".into()))?
        }
        Family::RandomSystem { seed, index } => random_integer_systems(index + 1, *seed)
            .into_iter()
            .nth(*index)
            .ok_or_else(|| Error::InvalidSpec("generator produced too few systems".into()))?,
    })
}

fn execute(cmd: &Command, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Result<Outcome> {
    let done = |v: Value| Ok(Outcome::Done(v));
    match cmd {
        Command::Gen { family, .. } => done(json::polyhedron(&generate(family)?)),
        Command::Vertices(input) => done(json::vertices(read_polyhedron(input, stdin)?.vertices()?)),
        Command::Circuits { input, method } => {
            let p = read_polyhedron(input, stdin)?;
            match method {
                Method::Rank => {
                    let rep = circuit_report(&p)?;
                    if let Some(w) = &rep.warning {
                        let _ = writeln!(stderr, "warning: {w}");
                    }
                    done(json::circuits(&rep.circuits))
                }
                Method::Oracle => done(json::circuits(&circuits_support_oracle(&p)?)),
            }
        }
        Command::Walk { input, start, dirs } => {
            let p = read_polyhedron(input, stdin)?;
            let vs = p.vertices()?;
            let v = vs
                .get(*start)
                .ok_or_else(|| Error::InvalidSpec(format!("start index {start} but only {} vertices", vs.len())))?;
            done(json::walk(&walk(&p, &v.point, &parse_dirs(dirs)?)?))
        }
        Command::Classify { input, budget_points, reversibility } => {
            let p = read_polyhedron(input, stdin)?;
            let budget = *budget_points as usize;
            let c = classify_hierarchy(&p, budget)?;
            let mut out = json::classification(&c);
            if *reversibility {
                out["reversibility"] = match all_steps_reversible(&p, budget) {
                    Ok(r) => json::reversibility(&r),
                    Err(Error::BudgetExceeded(b)) => json!({"unknown_at_budget": b}),
                    Err(e) => return Err(e),
                };
            }
            Ok(match c {
                Classification::UnknownAtBudget { .. } => Outcome::Unknown(out),
                Classification::Level { .. } => Outcome::Done(out),
            })
        }
        Command::CheckTu(input) => {
            let p = read_polyhedron(input, stdin)?;
            done(json::tu_report(&is_totally_unimodular(&p.constraint_matrix())?))
        }
        Command::CheckEcw { input, via } => {
            let p = read_polyhedron(input, stdin)?;
            let mut out = serde_json::Map::new();
            if matches!(via, Via::Elementary | Via::All) {
                out.insert("elementary".into(), json::condition(&elementary_cone_condition(&p)?));
            }
            if matches!(via, Via::Symmetric | Via::All) {
                out.insert("symmetric".into(), json::condition(&symmetric_inner_cone_condition(&p)?));
            }
            if matches!(via, Via::Recognize | Via::All) {
                out.insert("recognize".into(), json::recognition(&recognize_nd_parallelotope(&p)?));
            }
            done(Value::Object(out))
        }
        Command::Diameter { input, kind, budget_points } => {
            let p = read_polyhedron(input, stdin)?;
            let kind = match kind {
                Kind::Combinatorial => DistanceKind::Combinatorial,
                Kind::Circuit => DistanceKind::Circuit,
            };
            done(json::distances(&distances_and_diameters(&p, kind, *budget_points as usize)?))
        }
        Command::Cdg { spec, y1, y2, test } => {
            let spec: PartitionSpec = serde_json::from_str(&read_text(Some(spec), stdin)?)
                .map_err(|e| Error::Parse(format!("spec: {e}")))?;
            spec.validate()?;
            let y1 = json::parse_clustering(&read_json(Some(y1), stdin)?)?;
            let y2 = json::parse_clustering(&read_json(Some(y2), stdin)?)?;
            let g = build_cdg(&spec, &y1, &y2)?;
            let mut out = json!({"cdg": json::cdg(&g)});
            match test {
                CdgTest::Edge => out["edge"] = json!(pp_bounded_edge_test(&spec, &y1, &y2)?),
                CdgTest::Circuit => {
                    let k = spec.k();
                    let diff = sub(&y2.to_vector(k), &y1.to_vector(k));
                    let is = if spec.is_fixed() {
                        pp_fixed_circuit_test(spec.n_items, k, &diff)
                    } else {
                        pp_bounded_circuit_test(spec.n_items, k, &diff)
                    };
                    out["circuit"] = json!(is);
                }
            }
            done(out)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_unsupported() {
        3
    } else {
        2
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let (value, code) = match execute(&cli.cmd, stdin, stderr) {
        Ok(Outcome::Done(v)) => (v, 0),
        Ok(Outcome::Unknown(v)) => {
            let _ = writeln!(stderr, "error: exploration budget exhausted before a decision");
            (v, 3)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    let written = match &cli.cmd {
        Command::Gen { output: Some(path), .. } => {
            std::fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))
        }
        _ => writeln!(stdout, "{text}").map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    code
}
