//! The `spexlab` command line: construct, check, rho, transform, search,
//! verify.
//!
//! Exit codes: 0 success, 1 domain error (bad parameters, malformed graph6,
//! unreachable target, refused search), 2 a verification suite failed,
//! 3 internal or convergence error. Diagnostics go to standard error and
//! results to standard output or `--out`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructions::{
    construct, transform, transform_moves, transformation_chain_to, FamilySpec, GraphClass,
    PathPartition,
};
use crate::error::{invalid, Error, Result};
use crate::experiments::{run_suite, SuiteParams, SuiteResult, TraceabilityReport, SUITES};
use crate::forbidden::ForbiddenSpec;
use crate::graph::Graph;
use crate::recognition::{is_outerplanar, is_planar};
use crate::search::{exhaustive_spex, local_search_spex, SearchConfig, SearchMode, SearchReport, DEFAULT_EXHAUSTIVE_CAP};
use crate::spectral::{spectral_radius, DEFAULT_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SPEXLAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    G6,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "spexlab", version, about = "Spectral extremal graphs in outerplanar and planar classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write results here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Input {
    /// A graph in graph6.
    #[arg(long, conflicts_with = "input")]
    g6: Option<String>,
    /// A file with one graph6 string per line.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named family member, e.g. `k1hop:t=2,l=5,n=40`.
    Construct {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        output: Output,
    },
    /// Report planarity, outerplanarity, and forbidden-subgraph detection.
    Check {
        #[command(flatten)]
        input: Input,
        /// Forbidden graph: `C5`, `B3x5` (bouquet t=3, l=5), or `M4` (4K2).
        #[arg(long)]
        forbidden: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Spectral radius with its residual.
    Rho {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Apply a path-merging transformation, list all moves, or find a chain
    /// to a target partition.
    Transform {
        /// Path orders, e.g. `5,3,3,1`.
        #[arg(long)]
        partition: String,
        #[arg(long, requires = "j", conflicts_with = "target")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive or local extremal search.
    Search(SearchArgs),
    /// Run verification suites and print a traceability report.
    Verify {
        /// Suite id, repeatable; `all` runs every suite.
        #[arg(long, required = true)]
        suite: Vec<String>,
        /// `key = value` lines; `[suite-id]` sections scope keys to one suite.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override one parameter, e.g. `--set n=100,1000`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        sets: Vec<String>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value = "outerplanar")]
    class: String,
    #[arg(long)]
    forbidden: Option<String>,
    #[arg(long)]
    nmin: Option<usize>,
    #[arg(long)]
    nmax: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Include disconnected graphs.
    #[arg(long)]
    all: bool,
    /// Local search start graph (graph6); defaults to the star on `nmax`.
    #[arg(long)]
    start: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    restarts: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    cap: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Local,
}

/// A failed command: an error, or suites that reported failures.
enum Failure {
    Error(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Convergence { .. } | Error::Json(_) => EXIT_INTERNAL,
        _ => EXIT_DOMAIN,
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` (unless `--out` is given) and diagnostics to `err`. Returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    if let Err(e) = install_thread_cap() {
        let _ = writeln!(err, "error: {e}");
        return exit_code(&e);
    }
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => {
            let _ = writeln!(err, "verification failed");
            EXIT_VERIFY
        }
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn env_threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(invalid(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

fn install_thread_cap() -> Result<()> {
    if let Some(t) = env_threads()? {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(())
}

fn emit(output: &Output, out: &mut dyn Write, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn unsupported(cmd: &str, f: Format) -> Error {
    invalid(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn read_graphs(input: &Input) -> Result<Vec<Graph>> {
    match (&input.g6, &input.input) {
        (Some(s), _) => Ok(vec![Graph::from_graph6(s.trim())?]),
        (None, Some(path)) => read_g6_file(path),
        (None, None) => Err(invalid("give a graph with --g6 or --input")),
    }
}

fn read_g6_file(path: &Path) -> Result<Vec<Graph>> {
    fs::read_to_string(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(Graph::from_graph6)
        .collect()
}

fn json_lines(values: &[Value]) -> Result<String> {
    let mut s = String::new();
    for v in values {
        s.push_str(&serde_json::to_string(v)?);
        s.push('\n');
    }
    Ok(s)
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let map = |e: csv::Error| invalid(format!("csv: {e}"));
    w.write_record(header).map_err(map)?;
    for r in rows {
        w.write_record(r).map_err(map)?;
    }
    let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parse_parts(s: &str) -> Result<PathPartition> {
    let parts = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("cannot parse partition {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PathPartition::new(parts)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Construct { family, output } => cmd_construct(&family, &output, out)?,
        Command::Check {
            input,
            forbidden,
            output,
        } => cmd_check(&input, forbidden.as_deref(), &output, out)?,
        Command::Rho { input, tol, output } => cmd_rho(&input, tol, &output, out)?,
        Command::Transform {
            partition,
            i,
            j,
            target,
            output,
        } => cmd_transform(&partition, i.zip(j), target.as_deref(), &output, out)?,
        Command::Search(args) => cmd_search(&args, out)?,
        Command::Verify {
            suite,
            config,
            sets,
            nmax,
            seed,
            tol,
            output,
        } => {
            let mut flags = SuiteParams::default();
            for kv in &sets {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| invalid(format!("--set expects KEY=VALUE, got {kv:?}")))?;
                flags.set(k.trim(), v.trim())?;
            }
            flags.nmax = nmax.or(flags.nmax);
            flags.seed = seed.or(flags.seed);
            flags.tol = tol.or(flags.tol);
            let report = cmd_verify(&suite, config.as_deref(), &flags)?;
            let text = match output.format {
                Format::Json => report.to_json()?,
                Format::Text => report.to_markdown(),
                Format::Csv => csv_text(
                    &["suite", "cases", "passes", "failures", "indeterminates", "verdict"],
                    &report
                        .suites
                        .iter()
                        .map(|r| {
                            vec![
                                r.id.clone(),
                                r.cases.to_string(),
                                r.passes.to_string(),
                                r.failures.len().to_string(),
                                r.indeterminates.len().to_string(),
                                r.verdict().to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                )?,
                f => return Err(unsupported("verify", f).into()),
            };
            emit(&output, out, &text)?;
            if report.failed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn cmd_construct(family: &str, output: &Output, out: &mut dyn Write) -> Result<()> {
    let spec: FamilySpec = family.parse()?;
    let g = construct(&spec)?;
    let text = match output.format {
        Format::G6 => format!("{}\n", g.to_graph6()),
        Format::Json => {
            let mut v = json!({
                "family": spec.to_string(),
                "n": g.n(),
                "edges": g.edge_count(),
                "graph6": g.to_graph6(),
            });
            if let Some(p) = spec.partition()? {
                v["partition"] = json!(p.parts());
            }
            json_lines(&[v])?
        }
        Format::Text => g.to_edge_list(),
        f => return Err(unsupported("construct", f)),
    };
    emit(output, out, &text)
}

fn cmd_check(input: &Input, forbidden: Option<&str>, output: &Output, out: &mut dyn Write) -> Result<()> {
    let spec: Option<ForbiddenSpec> = forbidden.map(str::parse).transpose()?;
    let mut values = Vec::new();
    for g in read_graphs(input)? {
        let planar = is_planar(&g);
        let outer = is_outerplanar(&g);
        let mut v = json!({
            "graph6": g.to_graph6(),
            "n": g.n(),
            "edges": g.edge_count(),
            "connected": g.is_connected(),
            "planar": planar.planar,
            "outerplanar": outer.planar,
        });
        if let Some(w) = planar.witness {
            v["planar_witness"] = serde_json::to_value(w)?;
        }
        if let Some(w) = outer.witness {
            v["outerplanar_witness"] = serde_json::to_value(w)?;
        }
        if let Some(f) = &spec {
            let d = f.detect(&g)?;
            v["forbidden"] = json!({
                "spec": f.to_string(),
                "found": d.found,
                "witness": serde_json::to_value(&d.witness)?,
            });
        }
        values.push(v);
    }
    let text = match output.format {
        Format::Json => json_lines(&values)?,
        Format::Text => values
            .iter()
            .map(|v| {
                let mut line = format!(
                    "{}: n={} m={} connected={} planar={} outerplanar={}",
                    v["graph6"].as_str().unwrap_or_default(),
                    v["n"],
                    v["edges"],
                    v["connected"],
                    v["planar"],
                    v["outerplanar"]
                );
                if let Some(f) = v.get("forbidden") {
                    line.push_str(&format!(" {}-found={}", f["spec"].as_str().unwrap_or_default(), f["found"]));
                }
                line + "\n"
            })
            .collect(),
        Format::Csv => csv_text(
            &["graph6", "n", "edges", "connected", "planar", "outerplanar", "forbidden_found"],
            &values
                .iter()
                .map(|v| {
                    vec![
                        v["graph6"].as_str().unwrap_or_default().to_string(),
                        v["n"].to_string(),
                        v["edges"].to_string(),
                        v["connected"].to_string(),
                        v["planar"].to_string(),
                        v["outerplanar"].to_string(),
                        v.get("forbidden").map(|f| f["found"].to_string()).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        f => return Err(unsupported("check", f)),
    };
    emit(output, out, &text)
}

fn cmd_rho(input: &Input, tol: f64, output: &Output, out: &mut dyn Write) -> Result<()> {
    let mut rows = Vec::new();
    for g in read_graphs(input)? {
        let e = spectral_radius(&g, tol)?;
        rows.push((g.to_graph6(), e));
    }
    let text = match output.format {
        Format::Json => json_lines(
            &rows
                .iter()
                .map(|(g6, e)| {
                    json!({
                        "graph6": g6,
                        "rho": e.rho,
                        "residual": e.residual,
                        "iterations": e.iterations,
                    })
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Text => rows
            .iter()
            .map(|(g6, e)| format!("{g6}: rho = {:.15} (residual {:.2e})\n", e.rho, e.residual))
            .collect(),
        Format::Csv => csv_text(
            &["graph6", "rho", "residual", "iterations"],
            &rows
                .iter()
                .map(|(g6, e)| {
                    vec![
                        g6.clone(),
                        format!("{:.15}", e.rho),
                        format!("{:e}", e.residual),
                        e.iterations.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        f => return Err(unsupported("rho", f)),
    };
    emit(output, out, &text)
}

fn cmd_transform(
    partition: &str,
    ij: Option<(usize, usize)>,
    target: Option<&str>,
    output: &Output,
    out: &mut dyn Write,
) -> Result<()> {
    let h = parse_parts(partition)?;
    let (value, lines): (Value, Vec<String>) = if let Some((i, j)) = ij {
        let r = transform(&h, i, j)?;
        (
            json!({"from": h.parts(), "i": i, "j": j, "result": r.parts()}),
            vec![r.to_string()],
        )
    } else if let Some(t) = target {
        let target = parse_parts(t)?;
        let chain = transformation_chain_to(&h, &target)?;
        let lines = chain
            .iter()
            .map(|s| format!("({},{}) -> {}", s.s1, s.s2, s.result))
            .collect();
        (
            json!({"from": h.parts(), "target": target.parts(), "steps": chain}),
            lines,
        )
    } else {
        let moves = transform_moves(&h);
        let lines = moves
            .iter()
            .map(|s| format!("({},{}) -> {}", s.s1, s.s2, s.result))
            .collect();
        (json!({"from": h.parts(), "moves": moves}), lines)
    };
    let text = match output.format {
        Format::Json => json_lines(&[value])?,
        Format::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
        f => return Err(unsupported("transform", f)),
    };
    emit(output, out, &text)
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write) -> Result<()> {
    let class: GraphClass = a.class.parse()?;
    let threads = match (a.threads, env_threads()?) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let cfg = SearchConfig {
        n_min: a.nmin.unwrap_or(a.nmax),
        n_max: a.nmax,
        class,
        forbidden: a.forbidden.as_deref().map(str::parse).transpose()?,
        connected_only: !a.all,
        mode: match a.mode {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Local => SearchMode::Local,
        },
        seed: a.seed,
        threads,
        checkpoint: a.checkpoint.clone(),
        exhaustive_cap: a.cap,
        restarts: a.restarts,
        tol: a.tol,
    };
    let report: SearchReport = match cfg.mode {
        SearchMode::Exhaustive => exhaustive_spex(&cfg)?,
        SearchMode::Local => {
            let start = match &a.start {
                Some(s) => Graph::from_graph6(s.trim())?,
                None => Graph::star(a.nmax)?,
            };
            local_search_spex(&cfg, &start)?
        }
    };
    let text = match a.output.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv()?,
        Format::G6 => report
            .results
            .iter()
            .flat_map(|r| r.maximizers.iter().map(|m| format!("{m}\n")))
            .collect(),
        Format::Text => report
            .results
            .iter()
            .map(|r| {
                format!(
                    "n={} rho={} maximizers={} candidates={} seconds={:.2}\n",
                    r.n,
                    r.best_rho.map_or("-".to_string(), |x| format!("{x:.12}")),
                    r.maximizers.join(","),
                    r.candidates,
                    r.seconds
                )
            })
            .collect(),
    };
    emit(&a.output, out, &text)
}

/// Parses `key = value` lines; `[id]` starts a section scoped to suite `id`.
/// Returns the global parameters and per-suite overrides.
pub fn parse_config(text: &str) -> Result<(SuiteParams, Vec<(String, SuiteParams)>)> {
    let mut global = SuiteParams::default();
    let mut sections: Vec<(String, SuiteParams)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(id) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            sections.push((id.trim().to_string(), SuiteParams::default()));
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| invalid(format!("config line {}: expected key = value", no + 1)))?;
        let target = match sections.last_mut() {
            Some((_, p)) => p,
            None => &mut global,
        };
        target
            .set(k.trim(), v.trim().trim_matches('"'))
            .map_err(|e| invalid(format!("config line {}: {e}", no + 1)))?;
    }
    Ok((global, sections))
}

fn cmd_verify(ids: &[String], config: Option<&Path>, flags: &SuiteParams) -> Result<TraceabilityReport> {
    let (global, sections) = match config {
        Some(p) => parse_config(&fs::read_to_string(p)?)?,
        None => Default::default(),
    };
    let ids: Vec<String> = if ids.iter().any(|s| s == "all") {
        SUITES.iter().map(|s| s.id.to_string()).collect()
    } else {
        ids.to_vec()
    };
    let mut suites: Vec<SuiteResult> = Vec::new();
    for id in &ids {
        let mut p = global.clone();
        for (sid, sp) in &sections {
            if sid == id {
                p.merge(sp);
            }
        }
        p.merge(flags);
        suites.push(run_suite(id, &p)?);
    }
    Ok(TraceabilityReport { suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("spexlab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_g6_line() {
        let (code, out, _) = call(&["construct", "--family", "k1hop:t=2,l=5,n=40", "--format", "g6"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        assert_eq!(Graph::from_graph6(out.trim()).unwrap().n(), 40);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["rho", "--g6", "~~~"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["frobnicate"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["rho", "--g6", "C~", "--bogus"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["verify", "--suite", "claim-4.3"]).0, EXIT_VERIFY);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn config_sections() {
        let (g, s) = parse_config("nmax = 6 # global\n[lemma-lm1]\ncases=3\ns2 = 1..2\n").unwrap();
        assert_eq!(g.nmax, Some(6));
        assert_eq!(s[0].0, "lemma-lm1");
        assert_eq!(s[0].1.s2, Some(vec![1, 2]));
        assert!(parse_config("nonsense").is_err());
    }
}
