//! Argument parsing and the subcommands.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kernelkit::gen::{self, Family, GenSpec};
use kernelkit::kernel::{self, kernelize_with, SplitConfig, Thresholds};
use kernelkit::{oracle, Graph, Instance, KernelOutcome, ProblemKind};

use crate::bench::{self, BenchSpec, CSV_HEADER};
use crate::io::{self, Format};
use crate::report::{RunReport, Trace};

#[derive(Debug, Parser)]
#[command(
    name = "kernelkit",
    version,
    about = "Kernels for cluster, trivially perfect and split edge modification problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernelize an instance and report the outcome.
    Kernelize(KernelizeArgs),
    /// Solve an instance exactly by branching.
    Exact(ExactArgs),
    /// Kernelize, solve the kernel exactly, and lift the solution back.
    Check(CheckArgs),
    /// Run a sweep of generated instances and write CSV rows.
    Bench(BenchArgs),
    /// Generate an instance.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// cluster-del, stc, tpc, split-del, split-comp, pseudo-del or pseudo-comp.
    pub problem: ProblemKind,
    /// Graph file; `-` reads standard input.
    pub input: PathBuf,
    /// Input format; detected from the first line when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdArg {
    Binomial,
    Literal,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Marking thresholds for the split pipelines.
    #[arg(long, value_enum, default_value = "binomial")]
    pub thresholds: ThresholdArg,
    /// Also force clique vertices with more than k marked neighbours.
    #[arg(long)]
    pub marked_degree_rule: bool,
}

impl SplitArgs {
    fn config(&self) -> SplitConfig {
        SplitConfig {
            thresholds: match self.thresholds {
                ThresholdArg::Binomial => Thresholds::Binomial,
                ThresholdArg::Literal => Thresholds::Literal,
            },
            marked_degree_rule: self.marked_degree_rule,
        }
    }
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: i64,
    /// Directory for kernel, report.json and (with --trace) trace.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit the reduction trace.
    #[arg(long)]
    pub trace: bool,
    /// Leave wall time out of the report.
    #[arg(long)]
    pub no_timing: bool,
    /// Echoed in the report.
    #[arg(long, env = "KERNELKIT_SEED")]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub split: SplitArgs,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest solution size searched; all pairs when absent.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: i64,
    #[command(flatten)]
    pub split: SplitArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// TOML sweep spec.
    pub spec: PathBuf,
    /// CSV file to append to; standard output when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// First seed of every sweep.
    #[arg(long, env = "KERNELKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Leave the millis column empty.
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub split: SplitArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Planted,
    Uniform,
    Fig3,
    Fig4,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub problem: ProblemKind,
    #[arg(long, value_enum, default_value = "planted")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: i64,
    /// Edge probability for the uniform family.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, env = "KERNELKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "el")]
    pub format: Format,
    /// Directory to write `instance.<ext>` into; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_input(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    io::parse(&text, format).with_context(|| format!("parsing {}", path.display()))
}

fn instance(args: &InputArgs, k: i64) -> Result<Instance> {
    if k < 0 {
        bail!("--k must be non-negative, got {k}");
    }
    Ok(Instance::new(args.problem, read_input(&args.input, args.format)?, k))
}

fn pairs(sol: &[(usize, usize)]) -> String {
    sol.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Kernelize(a) => kernelize_cmd(a, out),
        Command::Exact(a) => exact_cmd(a, out),
        Command::Check(a) => check_cmd(a, out),
        Command::Bench(a) => bench_cmd(a, out),
        Command::Gen(a) => gen_cmd(a, out),
    }
}

fn kernelize_cmd(a: KernelizeArgs, out: &mut dyn Write) -> Result<()> {
    let inst = instance(&a.input, a.k)?;
    let cfg = a.split.config();
    let start = Instant::now();
    let kz = kernelize_with(&inst, &cfg)?;
    let millis = (!a.no_timing).then(|| start.elapsed().as_millis() as u64);
    let report = RunReport::new(&kz, &cfg, millis, a.seed);
    let trace = Trace::new(&kz);
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let format = a.input.format.unwrap_or(Format::EdgeList);
            if let KernelOutcome::Kernel(k) = &kz.outcome {
                fs::write(dir.join(format!("kernel.{}", format.extension())), io::write(&k.graph, format))?;
            }
            fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
            if a.trace {
                fs::write(dir.join("trace.json"), serde_json::to_string_pretty(&trace)? + "\n")?;
            }
            writeln!(out, "{}", report.outcome)?;
        }
        None if a.trace => {
            let both = serde_json::json!({ "report": report, "trace": trace });
            writeln!(out, "{}", serde_json::to_string_pretty(&both)?)?;
        }
        None => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
    }
    Ok(())
}

fn exact_cmd(a: ExactArgs, out: &mut dyn Write) -> Result<()> {
    let g = read_input(&a.input.input, a.input.format)?;
    let cap = a.cap.unwrap_or(g.n() * g.n().saturating_sub(1) / 2);
    let r = oracle::solve_exact(a.input.problem, &g, cap);
    match r.opt {
        Some(o) => {
            writeln!(out, "opt {o}")?;
            writeln!(out, "witness {}", pairs(&kernel::to_labels(&g, &r.witness)))?;
        }
        None => writeln!(out, "opt > {cap}")?,
    }
    Ok(())
}

fn check_cmd(a: CheckArgs, out: &mut dyn Write) -> Result<()> {
    let inst = instance(&a.input, a.k)?;
    let kz = kernelize_with(&inst, &a.split.config())?;
    writeln!(out, "outcome {}", kz.outcome.tag())?;
    match kernel::resolve(&kz)? {
        Some(sol) => {
            let valid = oracle::validate_solution(inst.problem, &inst.graph, &kernel::to_pairs(&inst.graph, &sol)?);
            writeln!(out, "yes")?;
            writeln!(
                out,
                "solution {} ({} pairs, {})",
                pairs(&sol),
                sol.len(),
                if valid { "valid" } else { "INVALID" }
            )?;
            if !valid {
                bail!("lifted solution does not solve the input");
            }
        }
        None => writeln!(out, "no")?,
    }
    Ok(())
}

fn bench_cmd(a: BenchArgs, out: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&a.spec).with_context(|| format!("reading {}", a.spec.display()))?;
    let specs = BenchSpec::parse(&text)?.expand(a.seed)?;
    let rows = bench::run(&specs, &a.split.config(), !a.no_timing)?;
    let mut body = String::new();
    for r in &rows {
        body.push_str(&r.to_csv());
        body.push('\n');
    }
    match &a.csv {
        Some(path) => {
            let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let mut f = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            if fresh {
                writeln!(f, "{CSV_HEADER}")?;
            }
            f.write_all(body.as_bytes())?;
            let bad = rows.iter().filter(|r| !r.ok).count();
            writeln!(out, "{} rows appended to {} ({bad} over the bound)", rows.len(), path.display())?;
        }
        None => {
            writeln!(out, "{CSV_HEADER}")?;
            out.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

fn gen_cmd(a: GenArgs, out: &mut dyn Write) -> Result<()> {
    let family = match a.family {
        FamilyArg::Planted => Family::Planted,
        FamilyArg::Uniform => Family::UniformRandom { p: a.p },
        FamilyArg::Fig3 => Family::PaperFigure { name: "fig3".into() },
        FamilyArg::Fig4 => Family::PaperFigure { name: "fig4".into() },
    };
    let inst = gen::generate(&GenSpec { seed: a.seed, n: a.n, k: a.k, problem: a.problem, family })?;
    let mut text = format!("# {} k={} seed={}\n", inst.problem, inst.k, a.seed);
    if a.format == Format::Dimacs {
        text = text.replacen('#', "c", 1);
    }
    text.push_str(&io::write(&inst.graph, a.format));
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(format!("instance.{}", a.format.extension()));
            fs::write(&path, text)?;
            writeln!(out, "{}", path.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
