//! `brokerage`: run the reference scenario, dataset replays, model sweeps
//! and profiles, and write their rows as CSV or JSON.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use brokerage_core::dynamics::DEFAULT_HORIZON;
use brokerage_core::experiment::{
    self, summarize, write_records, Exp1Config, Exp2Config, Fig1Summary, OutputFormat, Record, Sweep,
};
use brokerage_core::generators::{Generator, Model, ModelParams};
use brokerage_core::ingest::{
    self, dataset_stats, evenly_spaced_starts, events_from_snapshots, parse_events, snapshot_count, EdgeEvent,
    LabelMode, ParseOptions, SnapshotPolicy,
};
use brokerage_core::{Graph, RsetMode, TacticKind, VertexId};

#[derive(Parser, Debug)]
#[command(name = "brokerage", version, about = "Newcomer integration experiments on dynamic networks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Base seed; every trial derives its own seed from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials per setting (default: 100 for model sweeps).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Timestamps before a run counts as did-not-enter.
    #[arg(long, global = true, default_value_t = DEFAULT_HORIZON)]
    horizon: usize,
    /// Remote-center rule: example or strict.
    #[arg(long, global = true, default_value = "example")]
    rset_mode: RsetMode,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true, default_value = "csv")]
    format: OutputFormat,
    /// Record per-run wall time (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reference ten-vertex scenario; fails unless RMax and RBtw cost 2.
    Fig1,
    /// Replay a timestamped edge list from one or more start snapshots.
    Exp1(Exp1Args),
    /// Model sweep over the average degree.
    Exp2Degree(Exp2Args),
    /// Model sweep over the growth rate.
    Exp2Growth(Exp2Args),
    /// Per-snapshot size, diameter, center diameter and center distance.
    Profile(ProfileArgs),
    /// Grow a model network and export it as an edge-event stream.
    Generate(GenerateArgs),
    /// Statistics of the last snapshot of an edge-event stream.
    Stats(StatsArgs),
}

#[derive(Args, Debug)]
struct EventArgs {
    /// Edge-event file: `src dst time [+|-]` per line.
    #[arg(long)]
    events: PathBuf,
    /// Timestamp policy: per-event, period:<width> or every:<n>.
    #[arg(long, default_value = "per-event")]
    policy: SnapshotPolicy,
    /// Treat vertex labels as arbitrary strings instead of integers.
    #[arg(long)]
    string_labels: bool,
    /// Write the label table (`label<TAB>id`) here.
    #[arg(long)]
    labels_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Exp1Args {
    #[command(flatten)]
    input: EventArgs,
    /// Start snapshots, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "start_count")]
    starts: Vec<usize>,
    /// Number of evenly spaced start snapshots.
    #[arg(long)]
    start_count: Option<usize>,
    /// Stream events per timestamp.
    #[arg(long, default_value_t = 1)]
    interval: usize,
    /// Tactics, comma separated (default: the five compared tactics).
    #[arg(long, value_delimiter = ',')]
    tactics: Vec<TacticKind>,
    /// Write per-setting means and deviations here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// ba, jr, richclub or onion.
    #[arg(long, default_value = "ba")]
    model: Model,
    /// Average degree.
    #[arg(long, default_value_t = 6)]
    deg: u32,
    /// Initial network size.
    #[arg(long, default_value_t = 500)]
    size: usize,
    /// Vertices added per timestamp.
    #[arg(long, default_value_t = 1)]
    growth: usize,
    /// Friend-of-friend link probability of the jr model.
    #[arg(long)]
    jr_p: Option<f64>,
}

impl ModelArgs {
    fn model(&self) -> Model {
        with_jr_p(self.model, self.jr_p)
    }

    fn params(&self, seed: u64) -> ModelParams {
        ModelParams::new(self.model(), self.deg).size(self.size).growth(self.growth).seed(seed)
    }
}

fn with_jr_p(model: Model, p: Option<f64>) -> Model {
    match (model, p) {
        (Model::Jr { .. }, Some(p)) => Model::Jr { p },
        _ => model,
    }
}

#[derive(Args, Debug)]
struct Exp2Args {
    /// Models, comma separated (default: ba, jr, richclub, onion).
    #[arg(long, value_delimiter = ',')]
    models: Vec<Model>,
    /// Swept values: degrees for exp2-degree, growth rates for exp2-growth.
    #[arg(long, value_delimiter = ',')]
    values: Vec<usize>,
    /// Degree held fixed by exp2-growth.
    #[arg(long, default_value_t = 6)]
    deg: u32,
    /// Growth held fixed by exp2-degree.
    #[arg(long, default_value_t = 1)]
    growth: usize,
    #[arg(long, default_value_t = 500)]
    size: usize,
    #[arg(long)]
    jr_p: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    tactics: Vec<TacticKind>,
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    /// Profile an edge-event file.
    #[arg(long, conflicts_with_all = ["model", "reference_scenario"])]
    events: Option<PathBuf>,
    #[arg(long, default_value = "per-event")]
    policy: SnapshotPolicy,
    /// Profile a model grown for --steps timestamps.
    #[arg(long, conflicts_with = "reference_scenario")]
    model: Option<Model>,
    #[arg(long, default_value_t = 6)]
    deg: u32,
    #[arg(long, default_value_t = 500)]
    size: usize,
    #[arg(long, default_value_t = 1)]
    growth: usize,
    #[arg(long)]
    jr_p: Option<f64>,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Profile the ten-vertex reference scenario.
    #[arg(long)]
    reference_scenario: bool,
    /// Reference vertex (default: smallest-id center vertex).
    #[arg(long = "ref")]
    reference: Option<u32>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Growth timestamps after the initial network.
    #[arg(long, default_value_t = 0)]
    steps: usize,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    input: EventArgs,
    /// Null-model samples for the cp-coefficient (0 skips it).
    #[arg(long, default_value_t = 0)]
    cp_samples: usize,
    /// Write the degree histogram (`degree,count`) here.
    #[arg(long)]
    degrees: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<T: Record>(g: &Global, rows: &[T]) -> Result<()> {
    let mut w = output(g.out.as_deref())?;
    write_records(&mut w, rows, g.format)?;
    w.flush()?;
    Ok(())
}

fn write_summary(g: &Global, path: Option<&Path>, rows: &[experiment::ResultRow]) -> Result<()> {
    if let Some(p) = path {
        let mut w = output(Some(p))?;
        write_records(&mut w, &summarize(rows), g.format)?;
        w.flush()?;
    }
    Ok(())
}

fn load_events(a: &EventArgs) -> Result<Vec<EdgeEvent>> {
    let file = File::open(&a.events).with_context(|| format!("cannot open {}", a.events.display()))?;
    let labels = if a.string_labels { LabelMode::Table } else { LabelMode::Numeric };
    let parsed = parse_events(BufReader::new(file), ParseOptions { labels })
        .with_context(|| format!("reading {}", a.events.display()))?;
    let w = parsed.warnings;
    if w != Default::default() {
        log::warn!(
            "{}: {} duplicate additions, {} removals of absent edges, {} self-loops skipped",
            a.events.display(),
            w.duplicate_adds,
            w.missing_removes,
            w.self_loops
        );
    }
    if let Some(p) = &a.labels_out {
        let mut out = output(Some(p))?;
        parsed.labels.write(&mut out)?;
        out.flush()?;
    }
    Ok(parsed.events)
}

fn default_tactics(t: &[TacticKind]) -> Vec<TacticKind> {
    if t.is_empty() {
        TacticKind::COMPARED.to_vec()
    } else {
        t.to_vec()
    }
}

fn dataset_name(p: &Path) -> String {
    p.file_stem().map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned())
}

fn cmd_fig1(g: &Global) -> Result<ExitCode> {
    let report = experiment::fig1(g.rset_mode)?;
    eprint!("{}", Fig1Summary(&report));
    match g.format {
        OutputFormat::Csv => emit(g, &report.rows)?,
        OutputFormat::Json => {
            let mut w = output(g.out.as_deref())?;
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    if report.golden_ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: rmax and rbtw must both cost 2 on the reference scenario");
        Ok(ExitCode::from(2))
    }
}

fn cmd_exp1(g: &Global, a: &Exp1Args) -> Result<ExitCode> {
    let events = load_events(&a.input)?;
    let starts = match a.start_count {
        Some(n) => evenly_spaced_starts(snapshot_count(&events, a.input.policy)?, n),
        None if a.starts.is_empty() => bail!("give --starts or --start-count"),
        None => a.starts.clone(),
    };
    let mut cfg = Exp1Config::new(dataset_name(&a.input.events), a.input.policy, starts, a.interval);
    cfg.tactics = default_tactics(&a.tactics);
    cfg.horizon = g.horizon;
    cfg.rset_mode = g.rset_mode;
    cfg.timing = g.timing;
    let rows = experiment::experiment1(&events, &cfg)?;
    emit(g, &rows)?;
    write_summary(g, a.summary.as_deref(), &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_exp2(g: &Global, a: &Exp2Args, growth: bool) -> Result<ExitCode> {
    let mut cfg = if growth {
        Exp2Config::growth_sweep()
    } else {
        Exp2Config::degree_sweep()
    };
    if !a.values.is_empty() {
        cfg.sweep = if growth {
            Sweep::Growth(a.values.clone())
        } else {
            Sweep::Degree(a.values.iter().map(|&d| d as u32).collect())
        };
    }
    if !a.models.is_empty() {
        cfg.models = a.models.clone();
    }
    cfg.models = cfg.models.iter().map(|&m| with_jr_p(m, a.jr_p)).collect();
    cfg.tactics = default_tactics(&a.tactics);
    cfg.fixed_d = a.deg;
    cfg.fixed_ell = a.growth;
    cfg.size = a.size;
    cfg.trials = g.trials.unwrap_or(cfg.trials);
    cfg.seed = g.seed;
    cfg.horizon = g.horizon;
    cfg.rset_mode = g.rset_mode;
    cfg.timing = g.timing;
    let rows = experiment::experiment2(&cfg)?;
    emit(g, &rows)?;
    write_summary(g, a.summary.as_deref(), &rows)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ProfileRecord {
    step: usize,
    size: usize,
    gdiam: Option<u32>,
    cdiam: Option<u32>,
    dist_ref: Option<u32>,
}

impl Record for ProfileRecord {
    const HEADER: &'static [&'static str] = &["step", "size", "gdiam", "cdiam", "dist_ref"];
}

fn cmd_profile(g: &Global, a: &ProfileArgs) -> Result<ExitCode> {
    let reference = a.reference.map(VertexId);
    let rows = if a.reference_scenario {
        use brokerage_core::worked_example;
        experiment::profile_scripted(&worked_example::initial_graph(), &worked_example::trace(), reference)?
    } else if let Some(path) = &a.events {
        let input = EventArgs {
            events: path.clone(),
            policy: a.policy,
            string_labels: false,
            labels_out: None,
        };
        experiment::profile_events(&load_events(&input)?, a.policy, reference)?
    } else if let Some(model) = a.model {
        let params = ModelParams::new(with_jr_p(model, a.jr_p), a.deg)
            .size(a.size)
            .growth(a.growth)
            .seed(g.seed);
        experiment::profile_model(&params, a.steps, reference)?
    } else {
        bail!("give --events, --model or --reference-scenario");
    };
    let records: Vec<ProfileRecord> = rows
        .into_iter()
        .map(|r| ProfileRecord {
            step: r.step,
            size: r.size,
            gdiam: r.graph_diameter.finite(),
            cdiam: r.center_diameter.finite(),
            dist_ref: r.dist_ref.finite(),
        })
        .collect();
    emit(g, &records)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(g: &Global, a: &GenerateArgs) -> Result<ExitCode> {
    let params = a.model.params(g.seed);
    let mut gen = Generator::new(params)?;
    let mut graph = gen.build_initial()?;
    let mut snaps = vec![graph.clone()];
    for _ in 0..a.steps {
        let f = gen.step(&graph, None, params.growth)?;
        f.apply(&mut graph);
        snaps.push(graph.clone());
    }
    let mut w = output(g.out.as_deref())?;
    writeln!(
        w,
        "# model {} d={} n={} growth={} seed={} steps={}",
        params.model, params.d, params.n, params.growth, params.seed, a.steps
    )?;
    ingest::write_events(&mut w, &events_from_snapshots(&snaps))?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(g: &Global, a: &StatsArgs) -> Result<ExitCode> {
    let events = load_events(&a.input)?;
    let timestamps = snapshot_count(&events, a.input.policy)?;
    let last: Graph = ingest::SnapshotIter::new(&events, a.input.policy)?
        .last()
        .context("the event stream is empty")?;
    let stats = dataset_stats(&last, timestamps, a.cp_samples, g.seed)?;
    let mut w = output(g.out.as_deref())?;
    match g.format {
        OutputFormat::Csv => {
            writeln!(w, "{}", brokerage_core::ingest::DatasetStats::CSV_HEADER)?;
            writeln!(w, "{}", stats.csv_row())?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut w, &stats)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    if let Some(p) = &a.degrees {
        let measured = if last.is_connected() { last } else { last.largest_component() };
        let mut hist = BTreeMap::new();
        for v in measured.vertices() {
            *hist.entry(measured.degree(v).unwrap_or(0)).or_insert(0usize) += 1;
        }
        let mut out = csv::Writer::from_writer(output(Some(p))?);
        out.write_record(["degree", "count"])?;
        for (k, c) in hist {
            out.write_record([k.to_string(), c.to_string()])?;
        }
        out.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let g = &cli.global;
    if g.trials == Some(0) {
        bail!("--trials must be at least 1");
    }
    match &cli.command {
        Command::Fig1 => cmd_fig1(g),
        Command::Exp1(a) => cmd_exp1(g, a),
        Command::Exp2Degree(a) => cmd_exp2(g, a, false),
        Command::Exp2Growth(a) => cmd_exp2(g, a, true),
        Command::Profile(a) => cmd_profile(g, a),
        Command::Generate(a) => cmd_generate(g, a),
        Command::Stats(a) => cmd_stats(g, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
