//! `kflow`: count nowhere-zero flows, enumerate totally cyclic orientations,
//! interpolate polynomial pieces and run the reciprocity and oracle checks
//! from the command line.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kflow::oracle::{oracle_enumerate, DEFAULT_ORACLE_CAP};
use kflow::orientations::{enumerate_totally_cyclic_capped, DEFAULT_ENUMERATION_CAP};
use kflow::{
    corpus, count_nowhere_zero_integer, count_nowhere_zero_kvec, count_nowhere_zero_zk,
    enumerate_flows, interpolate_piece, interpolate_univariate, probe_walls, reciprocity_check,
    tco_count_via_zero, BoundMode, CapacityVector, Counter, Error, FlowCountQuery, Multigraph,
    ZeroMode,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "kflow",
    version,
    about = "Nowhere-zero flow counting with per-edge capacities"
)]
struct Cli {
    #[command(flatten)]
    input: Input,

    /// Worker threads for parallel counting (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Largest edge count for which orientations are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_edges: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print the graph and exit: JSON, or the text format with `--format table`.
    #[arg(long, global = true)]
    dump_graph: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file: `n m` then one `tail head` line per edge, or JSON.
    #[arg(long, global = true, conflicts_with = "example")]
    graph: Option<String>,

    /// Built-in graph: k3, 2k2, 3k2, k4, prism, bridge, loop or union.
    #[arg(long, global = true)]
    example: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count nowhere-zero flows.
    Count {
        /// Per-edge capacities: count flows with 0 < |x_e| < k_e.
        #[arg(long, conflicts_with_all = ["k", "zk"])]
        kvec: Option<String>,
        /// Uniform capacity: count flows with 0 < |x_e| < k.
        #[arg(long, required_unless_present = "kvec")]
        k: Option<u64>,
        /// With --k, count nowhere-zero Z_k flows instead.
        #[arg(long, requires = "k")]
        zk: bool,
    },
    /// Count (and optionally list) the totally cyclic orientations.
    Tco {
        /// Print every orientation as a sign string.
        #[arg(long)]
        list: bool,
    },
    /// Interpolate the polynomial piece at a base point, or the univariate count.
    Interp {
        #[arg(long, required_unless_present = "univariate")]
        base: Option<String>,
        /// Fit the univariate integer count in k (Z_k count with --zk).
        #[arg(long, conflicts_with = "base")]
        univariate: bool,
        #[arg(long, requires = "univariate")]
        zk: bool,
    },
    /// Check reciprocity at negated capacities.
    Recip {
        #[arg(long)]
        kvec: String,
    },
    /// Compare a piece at zero with the number of totally cyclic orientations.
    Zero,
    /// Probe a segment for walls between polynomial pieces.
    Walls {
        /// Endpoints as `a,b,c:d,e,f`.
        #[arg(long)]
        segment: String,
        #[arg(long, default_value_t = 8)]
        steps: u64,
    },
    /// Compare the flow enumerator with the brute-force oracle.
    OracleCheck {
        #[arg(long)]
        kvec: String,
    },
}

/// A failure and its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EnumerationCap { .. } | Error::OracleCap { .. } => 3,
            Error::NoValidatedPiece { .. }
            | Error::PointOutsidePiece(_)
            | Error::ValidationFailed { .. }
            | Error::SingularSystem => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Command output: the JSON document and whether its verification passed.
struct Output {
    value: Value,
    pass: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, pass: true }
    }
}

fn load_graph(input: &Input) -> Result<(String, Multigraph), Failure> {
    match (&input.graph, &input.example) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| input_error(format!("cannot read {path}: {e}")))?;
            Ok((path.clone(), Multigraph::parse(&text)?))
        }
        (None, Some(name)) => corpus::by_name(name)
            .map(|g| (name.clone(), g))
            .ok_or_else(|| {
                input_error(format!(
                    "unknown example {name}; expected one of {}",
                    corpus::NAMES.join(", ")
                ))
            }),
        (None, None) => Err(input_error("one of --graph or --example is required")),
        (Some(_), Some(_)) => Err(input_error("--graph and --example are exclusive")),
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| input_error(format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}

fn parse_caps(g: &Multigraph, s: &str) -> Result<CapacityVector, Failure> {
    let values = parse_list(s)?;
    if values.len() != g.edge_count() {
        return Err(input_error(format!(
            "expected {} capacities, one per edge, found {}",
            g.edge_count(),
            values.len()
        )));
    }
    Ok(CapacityVector::new(values)?)
}

fn check_cap(g: &Multigraph, cap: usize) -> Result<(), Failure> {
    if g.edge_count() > cap {
        return Err(Error::EnumerationCap {
            edges: g.edge_count(),
            cap,
        }
        .into());
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn run(cli: &Cli, name: &str, g: &Multigraph, command: &Command) -> Result<Output, Failure> {
    let out = match command {
        Command::Count { kvec, k, zk } => {
            let (capacities, mode, count) = match (kvec, k) {
                (Some(s), _) => {
                    let caps = parse_caps(g, s)?;
                    let n = count_nowhere_zero_kvec(g, &caps)?;
                    (to_value(&caps), "kvec", n)
                }
                (None, Some(k)) if *zk => (json!(k), "zk", count_nowhere_zero_zk(g, *k)?),
                (None, Some(k)) => (json!(k), "integer", count_nowhere_zero_integer(g, *k)?),
                (None, None) => return Err(input_error("one of --kvec or --k is required")),
            };
            Output::ok(json!({
                "graph": name,
                "capacities": capacities,
                "mode": mode,
                "nowhere_zero": true,
                "count": count.to_string(),
            }))
        }
        Command::Tco { list } => {
            let set = enumerate_totally_cyclic_capped(g, cli.max_edges)?;
            let mut v = json!({ "graph": name, "count": set.len() });
            if *list {
                v["orientations"] = set.iter().map(|s| Value::String(s.to_string())).collect();
            }
            Output::ok(v)
        }
        Command::Interp {
            base,
            univariate,
            zk,
        } => {
            if *univariate {
                let counter = if *zk {
                    Counter::Modular
                } else {
                    Counter::Integer
                };
                let p = interpolate_univariate(counter, g, g.cyclomatic_number())?;
                Output::ok(json!({
                    "graph": name,
                    "mode": if *zk { "zk" } else { "integer" },
                    "polynomial": p.to_json(),
                    "display": p.to_string(),
                }))
            } else {
                let base = parse_caps(g, base.as_deref().unwrap_or_default())?;
                let r = interpolate_piece(g, &base)?;
                let mut v = to_value(&r);
                v["graph"] = json!(name);
                v["display"] = json!(r.piece.to_string());
                Output::ok(v)
            }
        }
        Command::Recip { kvec } => {
            check_cap(g, cli.max_edges)?;
            let r = reciprocity_check(g, &parse_caps(g, kvec)?)?;
            let mut v = to_value(&r);
            v["graph"] = json!(name);
            Output {
                value: v,
                pass: r.pass,
            }
        }
        Command::Zero => {
            check_cap(g, cli.max_edges)?;
            let r = tco_count_via_zero(g)?;
            let mut v = to_value(&r);
            v["graph"] = json!(name);
            Output {
                value: v,
                pass: r.pass,
            }
        }
        Command::Walls { segment, steps } => {
            let (a, b) = segment
                .split_once(':')
                .ok_or_else(|| input_error("--segment must look like a,b,c:d,e,f"))?;
            let r = probe_walls(g, &parse_caps(g, a)?, &parse_caps(g, b)?, *steps)?;
            let mut v = to_value(&r);
            v["graph"] = json!(name);
            Output::ok(v)
        }
        Command::OracleCheck { kvec } => {
            let caps = parse_caps(g, kvec)?;
            let mut modes = Vec::new();
            let mut pass = true;
            for bound in [BoundMode::Open, BoundMode::Closed] {
                for zeros in [ZeroMode::NowhereZero, ZeroMode::ZerosAllowed] {
                    let q = FlowCountQuery::new(caps.clone(), bound, zeros);
                    let mut fast = enumerate_flows(g, &q)?;
                    let mut slow = oracle_enumerate(g, &q)?;
                    fast.sort();
                    slow.sort();
                    let same = fast == slow;
                    pass &= same;
                    modes.push(json!({
                        "bound": bound,
                        "nowhere_zero": zeros == ZeroMode::NowhereZero,
                        "enumerated": fast.len(),
                        "oracle": slow.len(),
                        "match": same,
                    }));
                }
            }
            Output {
                value: json!({
                    "graph": name,
                    "capacities": to_value(&caps),
                    "oracle_cap": DEFAULT_ORACLE_CAP.to_string(),
                    "modes": modes,
                    "pass": pass,
                }),
                pass,
            }
        }
    };
    Ok(out)
}

/// Two-column rendering of a JSON object; nested values are printed inline.
fn table(v: &Value) -> String {
    let Value::Object(map) = v else {
        return v.to_string();
    };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (key, value) in map {
        let shown = match value {
            Value::String(t) => t.clone(),
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => items
                .iter()
                .map(|x| match x {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(", "),
            other => other.to_string(),
        };
        s.push_str(&format!("{key:<width$}  {shown}\n"));
    }
    s
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{v}"),
        Format::Table => print!("{}", table(v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_graph(&cli.input).and_then(|(name, g)| {
        if cli.dump_graph {
            match cli.format {
                Format::Json => println!("{}", g.to_json()),
                Format::Table => print!("{}", g.to_text()),
            }
            return Ok(true);
        }
        let Some(command) = &cli.command else {
            return Err(input_error("no subcommand given; see --help"));
        };
        let jobs = if cli.jobs == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            cli.jobs
        };
        let out = kflow::par::with_jobs(jobs, || run(&cli, &name, &g, command))?;
        emit(cli.format, &out.value);
        Ok(out.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
