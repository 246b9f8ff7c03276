//! Command-line front end.
//!
//! Every command writes its artifacts, then prints either a short summary or
//! (with `--json`) one JSON document. Exit status is 0 when all certificates
//! pass, 1 when one fails and 2 on errors, which go to stderr as JSON.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::det::{det_sparsify, DetConfig};
use crate::error::{Error, Result};
use crate::io::{parse, read_file, write, write_labels, Document, Instance};
use crate::lll::{cut_pipeline, spectral_pipeline, LllConfig};
use crate::model::{components, Graph, Hypergraph, DENSE_LIMIT};
use crate::report::{all_pass, QualityReport};
use crate::rng::Seed;
use crate::spectral::{build_plan, sample_sparsifier, DEFAULT_C_L};
use crate::verify::{
    additive_cut_bound, brute_force_cut_check, det_certificate, hypergraph_multiplicative_check,
    spectral_additive_check, CUT_LIMIT,
};

#[derive(Debug, Parser)]
#[command(name = "hypersparse", version, about = "Graph and hypergraph sparsifiers with certificates")]
pub struct Cli {
    /// Print one JSON document instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Additive cut sparsifier of an unweighted (hyper)graph.
    SparsifyCut(CutArgs),
    /// Additive spectral sparsifier of an unweighted graph.
    SparsifySpectral(CutArgs),
    /// Deterministic additive spectral sparsifier of an unweighted graph.
    SparsifyDet(DetArgs),
    /// Multiplicative spectral sparsifier of a weighted hypergraph.
    SparsifyHyper(HyperArgs),
    /// Re-certify a sparsifier against its source.
    Verify(VerifyArgs),
    /// Basic statistics of an instance.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IoArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Sparsifier output; defaults to `<input>.sparse`.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Report output; defaults to `<output>.report.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Skip certificates.
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CutArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, env = "HYPERSPARSE_EPS")]
    pub eps: f64,
    #[arg(long, env = "HYPERSPARSE_SEED")]
    pub seed: u64,
    #[arg(long, env = "HYPERSPARSE_DEVIATION_CONSTANT", default_value_t = 10.0)]
    pub deviation_constant: f64,
    #[arg(long, env = "HYPERSPARSE_C_ITER", default_value_t = 200.0)]
    pub c_iter: f64,
    #[arg(long, env = "HYPERSPARSE_CAP_FACTOR", default_value_t = 64.0)]
    pub cap_factor: f64,
    #[arg(long, env = "HYPERSPARSE_RETRIES", default_value_t = 3)]
    pub retries: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DetArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, env = "HYPERSPARSE_EPS")]
    pub eps: f64,
    #[arg(long, env = "HYPERSPARSE_C_T", default_value_t = 16.0)]
    pub c_t: f64,
    #[arg(long, env = "HYPERSPARSE_ETA_CONSTANT", default_value_t = 4.0)]
    pub eta_constant: f64,
    /// Constant `C` allowed in the certificate bound `C·ε·d_max`.
    #[arg(long, env = "HYPERSPARSE_SLACK", default_value_t = 8.0)]
    pub slack: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HyperArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, env = "HYPERSPARSE_EPS")]
    pub eps: f64,
    #[arg(long, env = "HYPERSPARSE_SEED")]
    pub seed: u64,
    #[arg(long, env = "HYPERSPARSE_C_L", default_value_t = DEFAULT_C_L)]
    pub c_l: f64,
    /// Random directions in the multiplicative check.
    #[arg(long, env = "HYPERSPARSE_TRIALS", default_value_t = 1000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Guarantee {
    Cut,
    Spectral,
    Det,
    Hyper,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub sparsifier: PathBuf,
    #[arg(long, value_enum)]
    pub kind: Guarantee,
    #[arg(long, env = "HYPERSPARSE_EPS")]
    pub eps: f64,
    #[arg(long, env = "HYPERSPARSE_SLACK", default_value_t = 8.0)]
    pub slack: f64,
    #[arg(long, env = "HYPERSPARSE_TRIALS", default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "HYPERSPARSE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StatsArgs {
    #[arg(long, short)]
    pub input: PathBuf,
}

/// Result of a command: what to print and whether certificates passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: Value,
    pub summary: String,
    pub pass: bool,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

fn load(path: &Path, known: Option<&[String]>) -> Result<Document> {
    parse(&read_file(path)?, known)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn require_graph(doc: &Document) -> Result<&Graph> {
    match &doc.instance {
        Instance::Graph(g) => Ok(g),
        Instance::Hypergraph(_) => Err(Error::Config("this command needs a graph (`g n m`) input".into())),
    }
}

/// Writes sparsifier, labels and report; assembles the outcome.
#[allow(clippy::too_many_arguments)]
fn finish(
    io: &IoArgs,
    doc: &Document,
    sparse: &Instance,
    scale: f64,
    command: &str,
    config: Value,
    construction: Value,
    reports: Vec<QualityReport>,
    skipped: Vec<String>,
) -> Result<Outcome> {
    let output = io.output.clone().unwrap_or_else(|| with_suffix(&io.input, ".sparse"));
    let report_path = io.report.clone().unwrap_or_else(|| with_suffix(&output, ".report.json"));
    write_file(&output, &write(sparse, Some(scale), doc.labels.as_deref()))?;
    let mut outputs = json!({ "sparsifier": output, "report": report_path });
    if let Some(labels) = &doc.labels {
        let path = with_suffix(&output, ".labels");
        write_file(&path, &write_labels(labels))?;
        outputs["labels"] = json!(path);
    }
    let pass = all_pass(&reports);
    let document = json!({
        "command": command,
        "config": config,
        "construction": construction,
        "input": { "n": doc.instance.n(), "m": doc.instance.m() },
        "output": { "m": sparse.m(), "scale": scale },
        "reports": reports.iter().map(QualityReport::to_json).collect::<Vec<_>>(),
        "skipped_certificates": skipped,
        "pass": pass,
        "outputs": outputs,
    });
    write_file(&report_path, &canonical(&document))?;
    let mut summary = format!(
        "{command}: kept {} of {} edges, scale c={scale}\n",
        sparse.m(),
        doc.instance.m()
    );
    for r in &reports {
        summary.push_str(&format!(
            "certificate {}: {} (worst violation {})\n",
            r.guarantee,
            if r.pass { "pass" } else { "FAIL" },
            r.worst_violation
        ));
    }
    for s in &document["skipped_certificates"].as_array().cloned().unwrap_or_default() {
        summary.push_str(&format!("certificate skipped: {}\n", s.as_str().unwrap_or_default()));
    }
    summary.push_str(&format!("config: {}\n", serde_json::to_string(&document["config"]).expect("json")));
    Ok(Outcome { document, summary, pass })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn lll_config(a: &CutArgs) -> LllConfig {
    LllConfig {
        deviation_constant: a.deviation_constant,
        c_iter: a.c_iter,
        cap_factor: a.cap_factor,
        retries: a.retries,
    }
}

fn sparsify_cut(a: &CutArgs) -> Result<Outcome> {
    check_eps(a.eps)?;
    let doc = load(&a.io.input, None)?;
    let h = doc.instance.to_hypergraph();
    let result = cut_pipeline(&h, a.eps, Seed(a.seed), &lll_config(a))?;
    let sparse_h = h.select(&result.selected);
    let sparse = match &doc.instance {
        Instance::Graph(g) => Instance::Graph(g.select(&result.selected)),
        Instance::Hypergraph(_) => Instance::Hypergraph(sparse_h.clone()),
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if a.io.no_verify {
        skipped.push("disabled by --no-verify".to_string());
    } else if h.n() <= CUT_LIMIT {
        let bound = additive_cut_bound(&h, a.eps);
        let mut r = brute_force_cut_check(&h, &sparse_h, result.scale, &bound)?;
        r.epsilon = Some(a.eps);
        r.seeds.push(a.seed);
        reports.push(r);
    } else {
        skipped.push(format!("cut_additive: exhaustive check needs n <= {CUT_LIMIT}"));
    }
    let config = json!({ "command": "sparsify-cut", "args": a });
    finish(&a.io, &doc, &sparse, result.scale, "sparsify-cut", config, json!(result.meta), reports, skipped)
}

fn sparsify_spectral(a: &CutArgs) -> Result<Outcome> {
    check_eps(a.eps)?;
    let doc = load(&a.io.input, None)?;
    let g = require_graph(&doc)?;
    let result = spectral_pipeline(g, a.eps, Seed(a.seed), &lll_config(a))?;
    let f = g.select(&result.selected);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if a.io.no_verify {
        skipped.push("disabled by --no-verify".to_string());
    } else if g.n() <= DENSE_LIMIT {
        let mut r = spectral_additive_check(g, &f, result.scale, a.eps)?;
        r.seeds.push(a.seed);
        reports.push(r);
    } else {
        skipped.push(format!("spectral_additive: dense check needs n <= {DENSE_LIMIT}"));
    }
    let config = json!({ "command": "sparsify-spectral", "args": a });
    finish(&a.io, &doc, &Instance::Graph(f), result.scale, "sparsify-spectral", config, json!(result.meta), reports, skipped)
}

fn sparsify_det(a: &DetArgs) -> Result<Outcome> {
    check_eps(a.eps)?;
    let doc = load(&a.io.input, None)?;
    let g = require_graph(&doc)?;
    let cfg = DetConfig {
        c_t: a.c_t,
        eta_constant: a.eta_constant,
    };
    let (result, transcript) = det_sparsify(g, a.eps, &cfg)?;
    let f = g.select(&result.selected);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if a.io.no_verify {
        skipped.push("disabled by --no-verify".to_string());
    } else {
        reports.push(det_certificate(g, &f, result.scale, a.eps, a.slack)?);
    }
    let fold = |v: &[f64], f: fn(f64) -> f64| v.iter().map(|&x| f(x)).fold(0.0, f64::max);
    let construction = json!({
        "meta": result.meta,
        "max_abs_trace_error": fold(&transcript.trace_errors, f64::abs),
        "max_payoff": transcript.payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        "max_width_ratio": fold(&transcript.width_ratios, |x| x),
        "regret": transcript.regret,
    });
    let config = json!({ "command": "sparsify-det", "args": a });
    finish(&a.io, &doc, &Instance::Graph(f), result.scale, "sparsify-det", config, construction, reports, skipped)
}

fn sparsify_hyper(a: &HyperArgs) -> Result<Outcome> {
    check_eps(a.eps)?;
    let doc = load(&a.io.input, None)?;
    let h = doc.instance.to_hypergraph();
    let plan = build_plan(&h, a.eps, a.c_l)?;
    let seed = Seed(a.seed);
    let sampled = sample_sparsifier(&h, &plan, seed.child(0))?;
    let sparse = match &doc.instance {
        Instance::Graph(_) => {
            let edges = sampled.hypergraph.edges().iter().map(|e| (e[0], e[1])).collect();
            let w = sampled.hypergraph.weights().map(<[f64]>::to_vec);
            Instance::Graph(Graph::with_weights(h.n(), edges, w)?)
        }
        Instance::Hypergraph(_) => Instance::Hypergraph(sampled.hypergraph.clone()),
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if a.io.no_verify {
        skipped.push("disabled by --no-verify".to_string());
    } else {
        let mut r = hypergraph_multiplicative_check(&h, &sampled.hypergraph, a.eps, a.trials, seed.child(1))?;
        r.seeds.insert(0, a.seed);
        reports.push(r);
    }
    let construction = json!({
        "kind": "importance_sampling",
        "c_l": a.c_l,
        "expected_size": plan.expected_size(),
        "buckets": plan.buckets.iter().map(|b| json!({
            "index": b.index, "edges": b.edges.len(), "eps": b.eps, "level": b.level,
        })).collect::<Vec<_>>(),
    });
    let config = json!({ "command": "sparsify-hyper", "args": a });
    finish(&a.io, &doc, &sparse, 1.0, "sparsify-hyper", config, construction, reports, skipped)
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    check_eps(a.eps)?;
    let doc = load(&a.input, None)?;
    let sp = load(&a.sparsifier, doc.labels.as_deref())?;
    let c = sp.scale.unwrap_or(1.0);
    let graph_pair = || -> Result<(&Graph, &Graph)> {
        match (&doc.instance, &sp.instance) {
            (Instance::Graph(g), Instance::Graph(f)) => Ok((g, f)),
            _ => Err(Error::Config("this guarantee needs graph inputs".into())),
        }
    };
    let report = match a.kind {
        Guarantee::Cut => {
            let h = doc.instance.to_hypergraph();
            let bound = additive_cut_bound(&h, a.eps);
            let mut r = brute_force_cut_check(&h, &sp.instance.to_hypergraph(), c, &bound)?;
            r.epsilon = Some(a.eps);
            r
        }
        Guarantee::Spectral => {
            let (g, f) = graph_pair()?;
            spectral_additive_check(g, f, c, a.eps)?
        }
        Guarantee::Det => {
            let (g, f) = graph_pair()?;
            det_certificate(g, f, c, a.eps, a.slack)?
        }
        Guarantee::Hyper => {
            let scaled = scaled_hypergraph(&sp.instance.to_hypergraph(), c)?;
            hypergraph_multiplicative_check(&doc.instance.to_hypergraph(), &scaled, a.eps, a.trials, Seed(a.seed))?
        }
    };
    let pass = report.pass;
    let document = json!({
        "command": "verify",
        "config": { "command": "verify", "args": a },
        "reports": [report.to_json()],
        "pass": pass,
    });
    if let Some(path) = &a.report {
        write_file(path, &canonical(&document))?;
    }
    let summary = format!(
        "verify: certificate {}: {} (worst violation {})\n",
        report.guarantee,
        if pass { "pass" } else { "FAIL" },
        report.worst_violation
    );
    Ok(Outcome { document, summary, pass })
}

fn scaled_hypergraph(h: &Hypergraph, c: f64) -> Result<Hypergraph> {
    if c == 1.0 {
        return Ok(h.clone());
    }
    h.reweighted((0..h.m()).map(|i| c * h.weight(i)).collect())
}

fn stats(a: &StatsArgs) -> Result<Outcome> {
    let doc = load(&a.input, None)?;
    let h = doc.instance.to_hypergraph();
    let pairs = h.edges().iter().flat_map(|e| e.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>());
    let (_, count) = components(h.n(), pairs);
    let kind = match doc.instance {
        Instance::Graph(_) => "graph",
        Instance::Hypergraph(_) => "hypergraph",
    };
    let document = json!({
        "command": "stats",
        "kind": kind,
        "n": h.n(),
        "m": h.m(),
        "rank": h.rank(),
        "weighted": !h.is_unweighted(),
        "total_weight": (0..h.m()).map(|i| h.weight(i)).sum::<f64>(),
        "max_degree": h.max_degree(),
        "average_degree": h.average_degree(),
        "components": count,
        "labelled": doc.labels.is_some(),
    });
    let summary = format!(
        "{kind}: n={} m={} rank={} max_degree={} average_degree={} components={count}\n",
        h.n(),
        h.m(),
        h.rank(),
        h.max_degree(),
        h.average_degree()
    );
    Ok(Outcome { document, summary, pass: true })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::SparsifyCut(a) => sparsify_cut(a),
        Command::SparsifySpectral(a) => sparsify_spectral(a),
        Command::SparsifyDet(a) => sparsify_det(a),
        Command::SparsifyHyper(a) => sparsify_hyper(a),
        Command::Verify(a) => verify(a),
        Command::Stats(a) => stats(a),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
        Error::InvalidEpsilon(_) | Error::Config(_) => "config",
        Error::SizeLimit { .. } => "size_limit",
        Error::ResampleCapExceeded { .. } => "resample_cap",
        Error::BisectionFailure(_) | Error::WidthCondition { .. } => "numerical",
        _ => "input",
    }
}

/// Runs the CLI on `args`; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json { canonical(&out.document) } else { out.summary };
            let _ = stdout.write_all(text.as_bytes());
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let doc = json!({ "error": e.to_string(), "kind": error_kind(&e) });
            let _ = stderr.write_all(canonical(&doc).as_bytes());
            2
        }
    }
}
