//! The `tiling` command line.
//!
//! Exit codes: `0` success (or "satisfied", or "found"), `1` a checked
//! condition fails, `2` bad input, `3` no structure exists or the search
//! failed, `4` the node budget ran out before a verdict.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tiling::absorbing::{
    absorb, build_absorbing_family, find_connecting_path, pipeline, AbsorbVia, AbsorbingFamily, FamilyParams,
    PathSearch, PipelineParams,
};
use tiling::constructions::{
    certify_uncoverable, complete_multipartite, extremal_classes, extremal_graph, hs_tight, pattern_power,
    transitive_tournament, Certificate, ExtremalParams, PowerKind,
};
use tiling::degseq::{parse_rational, DegreeCondition, Q};
use tiling::exchange::{blowup_iterate, expand_loop, trace_csv, ExpandParams};
use tiling::experiment::{self, ExperimentSpec};
use tiling::io::{self, AnyGraph};
use tiling::packing::{find_perfect_packing_within, max_packing, Search};
use tiling::random::{gnp, random_digraph, random_tournament, SeedSplitter};
use tiling::{Adjacency, Graph, Pattern, VertexSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSATISFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NONE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "tiling", version, about = "Perfect packings, degree conditions and absorbing structures")]
pub struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search-tree node limit for exact solvers.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Only the primary output, no reports on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph or digraph from a preset.
    Gen {
        #[arg(value_enum)]
        preset: Preset,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "C")]
        c: Option<usize>,
        /// Part sizes of the forbidden multipartite pattern, e.g. `2,2,2`.
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<usize>>,
        #[arg(long)]
        p: Option<f64>,
        /// Write an edge list instead of JSON.
        #[arg(long)]
        edge_list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate degree conditions on a graph file.
    Check {
        file: PathBuf,
        #[arg(long = "condition", default_value = "conjecture", value_delimiter = ',')]
        conditions: Vec<String>,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value = "0")]
        gamma: String,
    },
    /// Search for a perfect packing.
    Pack {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Search for a maximum packing by one or more patterns.
    Maxpack {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        pattern: Vec<String>,
    },
    /// Grow a T_r-packing by exchanges, upgrades and blow-ups.
    Improve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value = "0")]
        gamma: String,
        #[arg(long, default_value = "1/10")]
        eta: String,
        /// Blow-up rounds after the first expansion.
        #[arg(long, default_value_t = 0)]
        rounds: usize,
    },
    /// Find an H-path of a given length between two vertices.
    Path {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        beta_count: usize,
    },
    /// Build an absorbing family.
    Absorbfam {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Absorb a vertex set into a prebuilt family.
    Absorb {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated vertices.
        #[arg(long, value_delimiter = ',')]
        w: Vec<usize>,
    },
    /// Absorbing set, almost perfect packing, absorption.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Run a batch experiment from a JSON or TOML spec.
    Experiment {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a copy of a pattern through a vertex.
    Certify {
        file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        vertex: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Tr,
    Kr,
    KrPower,
    TrPower,
    Multipartite,
    ExtremalSquare,
    HsTight,
    Gnp,
    Digraph,
    Tournament,
    Upgrade,
}

#[derive(Clone, Debug, clap::Args)]
pub struct FamilyArgs {
    #[arg(long = "family-t", default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 64)]
    pub candidates: usize,
    #[arg(long, default_value_t = 12)]
    pub target_samples: usize,
    #[arg(long, default_value_t = 9)]
    pub pair_threshold: usize,
    #[arg(long, default_value_t = 1)]
    pub min_gadgets: usize,
    #[arg(long, default_value_t = 2)]
    pub max_gadgets: usize,
}

impl FamilyArgs {
    fn params(&self, budget: Option<u64>) -> FamilyParams {
        FamilyParams {
            t: self.t,
            candidates: self.candidates,
            target_samples: self.target_samples,
            pair_threshold: self.pair_threshold,
            min_gadgets: self.min_gadgets,
            max_gadgets: self.max_gadgets,
            budget_nodes: budget.or(FamilyParams::default().budget_nodes),
            ..FamilyParams::default()
        }
    }
}

/// Marks errors caused by the user's input, reported with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn read_graph(path: &Path) -> Result<AnyGraph> {
    let text = input(fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
    input(io::parse_any(&text).with_context(|| format!("parsing {}", path.display())))
}

fn rational(s: &str) -> Result<Q> {
    input(parse_rational(s))
}

fn pattern(s: &str) -> Result<Pattern> {
    input(Pattern::parse(s))
}

fn need(x: Option<usize>, name: &str) -> Result<usize> {
    x.ok_or_else(|| InputError(anyhow!("--{name} is required for this preset")).into())
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
}

impl Io<'_> {
    fn report(&mut self, s: impl AsRef<str>) -> Result<()> {
        if !self.quiet {
            writeln!(self.err, "{}", s.as_ref())?;
        }
        Ok(())
    }

    fn json(&mut self, v: &Value) -> Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v)?)?;
        Ok(())
    }
}

fn write_or_print(io: &mut Io, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io.out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut io = Io {
        out,
        err,
        quiet: cli.quiet,
    };
    match dispatch(&cli, &mut io) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<std::io::Error>().map(|e| e.kind()) == Some(std::io::ErrorKind::BrokenPipe) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                EXIT_INPUT
            } else {
                EXIT_NONE
            }
        }
    }
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<i32> {
    let seed = cli.seed.unwrap_or(0);
    let budget = cli.budget_nodes;
    match &cli.command {
        Command::Gen {
            preset,
            r,
            t,
            n,
            c,
            parts,
            p,
            edge_list,
            out,
        } => cmd_gen(io, *preset, *r, *t, *n, *c, parts.clone(), *p, *edge_list, out.as_deref(), seed),
        Command::Check {
            file,
            conditions,
            r,
            gamma,
        } => cmd_check(io, cli.format, file, conditions, *r, gamma),
        Command::Pack { file, pattern: p } => cmd_pack(io, file, p, budget),
        Command::Maxpack { file, pattern: ps } => cmd_maxpack(io, file, ps, budget),
        Command::Improve {
            file,
            r,
            gamma,
            eta,
            rounds,
        } => cmd_improve(io, cli.format, file, *r, gamma, eta, *rounds, budget),
        Command::Path {
            file,
            pattern: p,
            x,
            y,
            t,
            beta_count,
        } => cmd_path(io, file, p, *x, *y, *t, *beta_count, budget),
        Command::Absorbfam {
            file,
            pattern: p,
            family,
            out,
        } => {
            let host = read_graph(file)?;
            let pat = pattern(p)?;
            match build_absorbing_family(&host, &pat, &family.params(budget), seed) {
                Ok(fam) => {
                    let text = serde_json::to_string_pretty(&fam.to_json())? + "\n";
                    io.report(format!("{} gadgets covering {} vertices", fam.gadgets.len(), fam.m.len()))?;
                    write_or_print(io, out.as_deref(), &text)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    io.json(&json!({ "error": e.to_string() }))?;
                    Ok(EXIT_NONE)
                }
            }
        }
        Command::Absorb {
            file,
            pattern: p,
            family,
            w,
        } => {
            let host = read_graph(file)?;
            let pat = pattern(p)?;
            let text = input(fs::read_to_string(family).with_context(|| format!("reading {}", family.display())))?;
            let value: Value = input(serde_json::from_str(&text))?;
            let fam = input(AbsorbingFamily::from_json(&value))?;
            if let Some(&v) = w.iter().find(|&&v| v >= host.order()) {
                bail!(InputError(anyhow!("vertex {v} is not in the host")));
            }
            match absorb(&host, &pat, &fam, w, budget) {
                Ok(a) => {
                    let via = match &a.via {
                        AbsorbVia::Assignment(pairs) => json!({ "assignment": pairs }),
                        AbsorbVia::Global => json!("global"),
                    };
                    io.json(&json!({ "packing": a.packing.to_json(), "via": via }))?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    io.json(&json!({ "error": e.to_string() }))?;
                    Ok(EXIT_NONE)
                }
            }
        }
        Command::Pipeline {
            file,
            pattern: p,
            family,
        } => {
            let host = read_graph(file)?;
            let pat = pattern(p)?;
            let params = PipelineParams {
                family: family.params(budget),
                seed,
                budget_nodes: budget.or(PipelineParams::default().budget_nodes),
            };
            match pipeline(&host, &pat, &params) {
                Ok(s) => {
                    io.json(&json!({
                        "packing": s.packing.to_json(),
                        "absorbing_set": s.absorbing_set,
                        "leftover": s.leftover,
                    }))?;
                    Ok(EXIT_OK)
                }
                Err(f) => {
                    io.json(&json!({ "failure": { "stage": f.stage, "detail": f.detail } }))?;
                    Ok(EXIT_NONE)
                }
            }
        }
        Command::Experiment { spec, out } => cmd_experiment(io, spec, out.as_deref(), cli.seed, budget),
        Command::Certify {
            file,
            pattern: p,
            vertex,
        } => {
            let host = read_graph(file)?;
            let pat = pattern(p)?;
            if *vertex >= host.order() {
                bail!(InputError(anyhow!("vertex {vertex} is not in the host")));
            }
            match certify_uncoverable(&host, *vertex, &pat) {
                Certificate::NoneFound => {
                    io.json(&json!({ "vertex": vertex, "certificate": "none-found" }))?;
                    Ok(EXIT_OK)
                }
                Certificate::Refutation(c) => {
                    io.json(&json!({ "vertex": vertex, "certificate": { "copy": c.vertices } }))?;
                    Ok(EXIT_UNSATISFIED)
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    io: &mut Io,
    preset: Preset,
    r: Option<usize>,
    t: Option<usize>,
    n: Option<usize>,
    c: Option<usize>,
    parts: Option<Vec<usize>>,
    p: Option<f64>,
    edge_list: bool,
    out: Option<&Path>,
    seed: u64,
) -> Result<i32> {
    let mut rng = SeedSplitter::new(seed).rng(0);
    let prob = || -> Result<f64> {
        let p = p.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&p) {
            bail!(InputError(anyhow!("--p must be in [0, 1]")));
        }
        Ok(p)
    };
    let host: AnyGraph = match preset {
        Preset::Tr => transitive_tournament(need(r, "r")?).into(),
        Preset::Kr => Graph::complete(need(r, "r")?).into(),
        Preset::KrPower => pattern_power(PowerKind::K, need(r, "r")?, need(t, "t")?).arcs_graph()?,
        Preset::TrPower => pattern_power(PowerKind::T, need(r, "r")?, need(t, "t")?).arcs().clone().into(),
        Preset::Multipartite => complete_multipartite(&need_parts(parts.as_deref())?).into(),
        Preset::ExtremalSquare => {
            let r = need(r, "r")?;
            let sizes = parts.unwrap_or_else(|| vec![2; r]);
            let params = input(ExtremalParams::with_formula_stars(r, sizes, need(n, "n")?, c))?;
            let classes = input(extremal_classes(&params))?;
            let (g, v) = input(extremal_graph(&params))?;
            let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
            io.report(format!(
                "class sizes {sizes:?}, C = {}, stars {:?}, uncoverable vertex {v}",
                params.c, params.stars
            ))?;
            g.into()
        }
        Preset::HsTight => input(hs_tight(need(r, "r")?, need(n, "n")?))?.into(),
        Preset::Gnp => gnp(need(n, "n")?, prob()?, &mut rng).into(),
        Preset::Digraph => random_digraph(need(n, "n")?, prob()?, &mut rng).into(),
        Preset::Tournament => random_tournament(need(n, "n")?, &mut rng).into(),
        Preset::Upgrade => tiling::exchange::upgrade_instance().into(),
    };
    let text = if edge_list {
        io::to_edge_list(&host)
    } else {
        io::to_json(&host) + "\n"
    };
    write_or_print(io, out, &text)?;
    Ok(EXIT_OK)
}

fn need_parts(parts: Option<&[usize]>) -> Result<Vec<usize>> {
    match parts {
        Some(p) if !p.is_empty() && p.iter().all(|&x| x > 0) => Ok(p.to_vec()),
        _ => Err(InputError(anyhow!("--parts needs positive sizes, e.g. 2,2,2")).into()),
    }
}

trait PatternGraph {
    fn arcs_graph(&self) -> Result<AnyGraph>;
}

impl PatternGraph for Pattern {
    fn arcs_graph(&self) -> Result<AnyGraph> {
        self.as_graph()
            .cloned()
            .map(AnyGraph::from)
            .ok_or_else(|| anyhow!("pattern {} is directed", self.name()))
    }
}

fn cmd_check(io: &mut Io, format: Format, file: &Path, names: &[String], r: usize, gamma: &str) -> Result<i32> {
    let host = read_graph(file)?;
    let gamma = rational(gamma)?;
    let mut reports = Vec::new();
    for name in names {
        let cond = input(DegreeCondition::new(name, r, gamma))?;
        reports.push(input(cond.check(&host))?);
    }
    match format {
        Format::Json => {
            let items: Vec<Value> = reports
                .iter()
                .map(|rep| {
                    let mut v = rep.to_json();
                    if let Some(note) = &rep.note {
                        v["note"] = json!(note);
                    }
                    v
                })
                .collect();
            io.json(&Value::Array(items))?;
        }
        Format::Csv => {
            writeln!(io.out, "name,satisfied,first_violating_index,slack_min,note")?;
            for rep in &reports {
                let first = rep.first_violating_index.map(|i| i.to_string()).unwrap_or_default();
                let slack = rep.slack_min().map(|s| s.to_string()).unwrap_or_default();
                let note = rep.note.clone().unwrap_or_default().replace(',', ";");
                writeln!(io.out, "{},{},{first},{slack},{note}", rep.name, rep.satisfied)?;
            }
        }
    }
    for rep in reports.iter().filter(|r| !r.satisfied) {
        io.report(format!("{} fails: {}", rep.name, rep.note.as_deref().unwrap_or("")))?;
    }
    Ok(if reports.iter().all(|r| r.satisfied) {
        EXIT_OK
    } else {
        EXIT_UNSATISFIED
    })
}

fn cmd_pack(io: &mut Io, file: &Path, p: &str, budget: Option<u64>) -> Result<i32> {
    let host = read_graph(file)?;
    let pat = pattern(p)?;
    let out = find_perfect_packing_within(&host, &pat, &VertexSet::full(host.order()), budget);
    let (code, body) = match &out.result {
        Search::Found(pk) => {
            tiling::is_perfect_packing(&host, pk)?;
            (EXIT_OK, json!({ "result": "found", "packing": pk.to_json(), "nodes": out.nodes }))
        }
        Search::NoneExists => (EXIT_NONE, json!({ "result": "none", "nodes": out.nodes })),
        Search::BudgetExhausted => (EXIT_BUDGET, json!({ "result": "budget", "nodes": out.nodes })),
    };
    io.json(&body)?;
    Ok(code)
}

fn cmd_maxpack(io: &mut Io, file: &Path, ps: &[String], budget: Option<u64>) -> Result<i32> {
    let host = read_graph(file)?;
    if ps.is_empty() {
        bail!(InputError(anyhow!("--pattern is required")));
    }
    let family = ps.iter().map(|p| pattern(p)).collect::<Result<Vec<_>>>()?;
    let mp = max_packing(&host, &family, budget);
    tiling::verify_packing(&host, &mp.packing)?;
    io.json(&json!({
        "packing": mp.packing.to_json(),
        "covered": mp.packing.coverage(),
        "optimal": mp.optimal,
        "nodes": mp.nodes,
    }))?;
    Ok(if mp.optimal { EXIT_OK } else { EXIT_BUDGET })
}

#[allow(clippy::too_many_arguments)]
fn cmd_improve(
    io: &mut Io,
    format: Format,
    file: &Path,
    r: usize,
    gamma: &str,
    eta: &str,
    rounds: usize,
    budget: Option<u64>,
) -> Result<i32> {
    let host = read_graph(file)?;
    let d = match &host {
        AnyGraph::Digraph(d) => d.clone(),
        AnyGraph::Graph(g) => tiling::symmetrize(g),
    };
    if r < 2 {
        bail!(InputError(anyhow!("--r must be at least 2")));
    }
    let mut params = ExpandParams::new(r, rational(gamma)?, rational(eta)?);
    if budget.is_some() {
        params.budget_nodes = budget;
    }
    if rounds == 0 {
        let res = expand_loop(&d, &params, None);
        match format {
            Format::Csv => write!(io.out, "{}", trace_csv(&res.trace))?,
            Format::Json => io.json(&json!({
                "packing": res.packing.to_json(),
                "seed_coverage": res.seed_coverage,
                "covered": res.packing.coverage(),
                "swaps": res.swaps,
                "trace": res.trace,
                "diagnostics": res.diagnostics,
                "expectation": res.expectation,
            }))?,
        }
    } else {
        let res = input(blowup_iterate(&d, rounds, &params))?;
        match format {
            Format::Csv => write!(io.out, "{}", trace_csv(&res.trace))?,
            Format::Json => io.json(&json!({
                "host_order": res.host.order(),
                "covered": res.packing.coverage(),
                "proportions": res.proportions,
                "trace": res.trace,
            }))?,
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_path(
    io: &mut Io,
    file: &Path,
    p: &str,
    x: usize,
    y: usize,
    t: usize,
    beta_count: usize,
    budget: Option<u64>,
) -> Result<i32> {
    let host = read_graph(file)?;
    let pat = pattern(p)?;
    let n = host.order();
    if x >= n || y >= n || x == y || t == 0 || beta_count == 0 {
        bail!(InputError(anyhow!("need distinct x, y in the host, t >= 1 and beta-count >= 1")));
    }
    let search = PathSearch {
        beta_count,
        budget_nodes: budget.unwrap_or(PathSearch::default().budget_nodes),
        ..PathSearch::default()
    };
    match find_connecting_path(&host, &pat, x, y, t, &VertexSet::new(n), search) {
        Some(path) => {
            io.json(&json!({ "path": path }))?;
            Ok(EXIT_OK)
        }
        None => {
            io.json(&json!({ "path": null }))?;
            Ok(EXIT_NONE)
        }
    }
}

fn cmd_experiment(
    io: &mut Io,
    spec_path: &Path,
    out: Option<&Path>,
    seed: Option<u64>,
    budget: Option<u64>,
) -> Result<i32> {
    let text = input(fs::read_to_string(spec_path).with_context(|| format!("reading {}", spec_path.display())))?;
    let mut spec: ExperimentSpec = if text.trim_start().starts_with('{') {
        input(serde_json::from_str(&text))?
    } else {
        input(toml::from_str(&text))?
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    if budget.is_some() {
        spec.budget_nodes = budget;
    }
    let report = input(experiment::run(&spec))?;
    write_or_print(io, out, &report.to_csv())?;
    io.report(format!(
        "{} trials, {} accepted (rate {:.4}), {} found, {} none, {} budget",
        report.rows.len(),
        report.accepted,
        report.acceptance_rate(),
        report.found,
        report.none,
        report.budget
    ))?;
    for (trial, json) in report.counterexamples() {
        writeln!(io.err, "counterexample trial {trial}: {json}")?;
    }
    Ok(if report.none > 0 { EXIT_UNSATISFIED } else { EXIT_OK })
}
