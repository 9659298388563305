use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tonelab::dense::{dense_params, edge_density, t_tone_color_dense, write_pass_reports};
use tonelab::exact::{exact_tau, t_tone_colorable, Colorability, SearchBudget};
use tonelab::experiments::{self, ExperimentReport, Planted};
use tonelab::io::{read_coloring, read_degrees, read_edge_list, write_coloring, write_edge_list};
use tonelab::random::{configuration_model, gnp, random_tree, DegreeSequence};
use tonelab::sparse::{sparse_color, SparseError, SparseParams};
use tonelab::tone::Color;
use tonelab::tree::{color_forest_2tone, color_forest_2tone_with_palette, greedy_t_tone_forest, min_greedy_palette};
use tonelab::{verify, Graph, ToneColoring, Verdict};

#[derive(Parser)]
#[command(name = "tonelab", version, about = "t-tone graph colouring toolkit")]
struct Cli {
    /// Base seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a colouring file against an edge list.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact τ_t, or decide colourability with a fixed palette.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Witness colouring; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colour a forest: exact 2-tone formula or escalating t-tone greedy.
    ColorTree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: Option<Color>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Respecting-partition colouring for dense graphs.
    ColorDense {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// Extraction target; defaults to the value derived from n and the edge density.
        #[arg(long)]
        s0: Option<usize>,
        /// Greedy completion takes over at this many remaining vertices.
        #[arg(long)]
        remainder: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Per-pass CSV report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Core/shell pipeline for sparse graphs. Exit 0 at kappa(Δ), 3 after
    /// escalation, 4 on a structural failure with escalation disabled.
    ColorSparse {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        b0: Option<f64>,
        #[arg(long)]
        no_escalate: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate an edge-list file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run an experiment and write its CSV; exit 0 only if every check passes.
    Experiment(ExperimentArgs),
}

#[derive(Subcommand)]
enum GenKind {
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: PathBuf,
    },
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Configuration model; writes the simple graph left after erasing loops
    /// and parallel edges, and prints whether the pairing was already simple.
    Config {
        #[arg(long)]
        degrees: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    TreeFormula,
    LowerBound,
    DenseRatio,
    Sparse,
    TreeScaling,
}

#[derive(Args)]
struct ExperimentArgs {
    name: ExperimentName,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Tones, comma separated.
    #[arg(long, value_delimiter = ',')]
    t: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    c: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    delta: Vec<usize>,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    b0: Option<f64>,
    /// Skip the planted-hub instance in the sparse experiment.
    #[arg(long)]
    no_planted: bool,
    /// Append a wall-time column (makes the output non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn or<T: Clone>(v: &[T], default: &[T]) -> Vec<T> {
    if v.is_empty() {
        default.to_vec()
    } else {
        v.to_vec()
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_edge_list(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn save_coloring(c: &ToneColoring, path: &Path) -> Result<()> {
    write_coloring(c, create(path)?).with_context(|| format!("writing {}", path.display()))
}

fn save_graph(g: &Graph, path: &Path) -> Result<()> {
    write_edge_list(g, create(path)?).with_context(|| format!("writing {}", path.display()))
}

fn check_valid(g: &Graph, c: &ToneColoring) -> Result<()> {
    match verify(g, c)? {
        Verdict::Valid => Ok(()),
        Verdict::Violated(v) => bail!("internal error: produced colouring violates {v}"),
    }
}

fn cmd_verify(graph: &Path, coloring: &Path) -> ExitCode {
    let loaded = load_graph(graph).and_then(|g| {
        let f = File::open(coloring).with_context(|| format!("opening {}", coloring.display()))?;
        let c = read_coloring(BufReader::new(f)).with_context(|| format!("reading {}", coloring.display()))?;
        Ok((g, c))
    });
    let verdict = loaded.and_then(|(g, c)| Ok(verify(&g, &c)?));
    match verdict {
        Ok(Verdict::Valid) => {
            println!("valid");
            ExitCode::SUCCESS
        }
        Ok(Verdict::Violated(v)) => {
            println!("{v}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_exact(graph: &Path, t: usize, k: Option<usize>, out: Option<&Path>) -> Result<()> {
    let g = load_graph(graph)?;
    let emit = |c: &ToneColoring| -> Result<()> {
        match out {
            Some(path) => save_coloring(c, path),
            None => Ok(write_coloring(c, std::io::stdout().lock())?),
        }
    };
    match k {
        Some(k) => match t_tone_colorable(&g, t, k, SearchBudget::unbounded())? {
            Colorability::Colorable(c) => {
                println!("colorable=yes");
                emit(&c)
            }
            Colorability::Infeasible => {
                println!("colorable=no");
                Ok(())
            }
        },
        None => {
            let r = exact_tau(&g, t, SearchBudget::unbounded())?;
            println!("tau={}", r.tau);
            emit(&r.witness)
        }
    }
}

fn cmd_color_tree(graph: &Path, t: usize, k: Option<Color>, out: &Path) -> Result<()> {
    let g = load_graph(graph)?;
    let c = match (t, k) {
        (2, None) => color_forest_2tone(&g)?,
        (2, Some(k)) => color_forest_2tone_with_palette(&g, k)?,
        (_, Some(k)) => greedy_t_tone_forest(&g, t, k)?,
        (_, None) => min_greedy_palette(&g, t)?.1,
    };
    check_valid(&g, &c)?;
    save_coloring(&c, out)?;
    println!("k_used={}", c.k());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_color_dense(
    graph: &Path,
    t: usize,
    seed: u64,
    s0: Option<usize>,
    remainder: Option<usize>,
    restarts: Option<usize>,
    out: &Path,
    report: Option<&Path>,
) -> Result<()> {
    let g = load_graph(graph)?;
    if g.n() < 3 {
        bail!("the dense colourer needs at least 3 vertices");
    }
    let p = edge_density(&g).clamp(1e-6, 1.0 - 1e-6);
    let mut params = dense_params(g.n(), p);
    if let Some(s0) = s0 {
        params.s0 = s0.max(1);
        params.s = params.s.max(params.s0);
    }
    if let Some(r) = remainder {
        params.remainder_threshold = r;
    }
    if let Some(r) = restarts {
        params.restart_budget = r.max(1);
    }
    let outcome = t_tone_color_dense(&g, t, &params, seed)?;
    if !outcome.diameter_ok {
        eprintln!("warning: diameter exceeds 2; distance constraints beyond 2 are not guaranteed");
    }
    save_coloring(&outcome.coloring, out)?;
    if let Some(path) = report {
        write_pass_reports(&outcome.reports, create(path)?)?;
    }
    println!("k_used={}", outcome.coloring.k());
    match verify(&g, &outcome.coloring)? {
        Verdict::Valid => Ok(()),
        Verdict::Violated(v) => bail!("colouring is not valid: {v}"),
    }
}

fn cmd_color_sparse(
    graph: &Path,
    t: usize,
    b0: Option<f64>,
    no_escalate: bool,
    out: &Path,
    report: Option<&Path>,
) -> Result<ExitCode> {
    let g = load_graph(graph)?;
    if t < 2 {
        bail!("the sparse pipeline needs t >= 2");
    }
    let mut params = SparseParams::new(g.n(), t).with_escalation(!no_escalate);
    if let Some(b0) = b0 {
        if !(b0 >= 0.0 && b0.is_finite()) {
            bail!("--b0 must be a finite non-negative number");
        }
        params = params.with_b0(b0);
    }
    match sparse_color(&g, &params) {
        Ok(o) => {
            save_coloring(&o.coloring, out)?;
            if let Some(path) = report {
                o.report.write_csv(create(path)?)?;
            }
            println!("k_used={} kappa={}", o.report.palette, o.report.target_palette);
            Ok(if o.report.at_target() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Err(e @ (SparseError::NotAForest { .. } | SparseError::Stuck(_))) => {
            eprintln!("structural failure: {e}");
            Ok(ExitCode::from(4))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_gen(kind: &GenKind, seed: u64) -> Result<()> {
    match kind {
        GenKind::Gnp { n, p, out } => {
            if !(0.0..=1.0).contains(p) {
                bail!("--p must lie in [0, 1]");
            }
            save_graph(&gnp(*n, *p, seed), out)
        }
        GenKind::Tree { n, out } => save_graph(&random_tree(*n, seed), out),
        GenKind::Config { degrees, out } => {
            let f = File::open(degrees).with_context(|| format!("opening {}", degrees.display()))?;
            let d = DegreeSequence::new(read_degrees(BufReader::new(f))?)?;
            let (multi, simple) = configuration_model(&d, seed);
            save_graph(&multi.erase_to_simple(), out)?;
            println!("simple={simple}");
            Ok(())
        }
    }
}

fn run_experiment(a: &ExperimentArgs, seed: u64) -> Result<ExperimentReport> {
    let r = match a.name {
        ExperimentName::TreeFormula => experiments::exp_tree_formula(a.trials.unwrap_or(300), a.n_max.unwrap_or(9), seed)?,
        ExperimentName::LowerBound => {
            experiments::exp_lower_bound(a.trials.unwrap_or(100), a.n_max.unwrap_or(10), &or(&a.t, &[2, 3]), seed)?
        }
        ExperimentName::DenseRatio => {
            let t = or(&a.t, &[2]);
            if t.len() != 1 {
                bail!("dense-ratio takes a single --t");
            }
            experiments::exp_dense_ratio(
                &or(&a.n, &[100, 200, 400]),
                &or(&a.p, &[0.3, 0.5]),
                t[0],
                a.seeds.unwrap_or(5),
                seed,
            )?
        }
        ExperimentName::Sparse => experiments::exp_sparse(
            &or(&a.n, &[1000, 10000]),
            &or(&a.c, &[0.5, 1.0, 2.0]),
            a.b0,
            a.seeds.unwrap_or(3),
            (!a.no_planted).then(Planted::default),
            seed,
        )?,
        ExperimentName::TreeScaling => experiments::exp_ttone_tree_scaling(
            &or(&a.t, &[3]),
            &or(&a.delta, &[4, 9, 16, 25, 36]),
            a.trials.unwrap_or(20),
            seed,
        )?,
    };
    Ok(r)
}

fn cmd_experiment(a: &ExperimentArgs, seed: u64) -> Result<ExitCode> {
    let report = run_experiment(a, seed)?;
    report.write_csv(create(&a.out)?, a.timings)?;
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, report.name, c.name);
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn set_jobs(jobs: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    set_jobs(cli.jobs)?;
    let seed = cli.seed;
    match &cli.command {
        Command::Verify { graph, coloring } => Ok(cmd_verify(graph, coloring)),
        Command::Exact { graph, t, k, out } => cmd_exact(graph, *t, *k, out.as_deref()).map(|_| ExitCode::SUCCESS),
        Command::ColorTree { graph, t, k, out } => cmd_color_tree(graph, *t, *k, out).map(|_| ExitCode::SUCCESS),
        Command::ColorDense {
            graph,
            t,
            s0,
            remainder,
            restarts,
            out,
            report,
        } => cmd_color_dense(graph, *t, seed, *s0, *remainder, *restarts, out, report.as_deref())
            .map(|_| ExitCode::SUCCESS),
        Command::ColorSparse {
            graph,
            t,
            b0,
            no_escalate,
            out,
            report,
        } => cmd_color_sparse(graph, *t, *b0, *no_escalate, out, report.as_deref()),
        Command::Gen { kind } => cmd_gen(kind, seed).map(|_| ExitCode::SUCCESS),
        Command::Experiment(a) => cmd_experiment(a, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
