//! Parameter sweeps from a TOML spec, written as CSV rows.
//!
//! ```toml
//! [[sweep]]
//! problem = "cluster-del"
//! n = [20, 40]
//! k = [1, 2, 3]
//! seeds = 3          # instances per (n, k); default 1
//! family = "planted" # or "uniform-random" (with p) or "paper-figure" (with name)
//! p = 0.3
//! ```

use std::time::Instant;

use anyhow::{Context, Result};
use kernelkit::gen::{self, Family, GenSpec};
use kernelkit::kernel::{completion_edge_bound, kernelize_with, size_bound, SplitConfig};
use kernelkit::{KernelOutcome, ProblemKind};
use rayon::prelude::*;
use serde::Deserialize;

pub const CSV_HEADER: &str = "problem,n,m,k,outcome,n_kernel,m_kernel,k_kernel,bound,ok,millis";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSpec {
    pub sweep: Vec<Sweep>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub problem: ProblemKind,
    pub n: Vec<usize>,
    pub k: Vec<i64>,
    #[serde(default = "one")]
    pub seeds: u64,
    #[serde(default = "planted")]
    pub family: String,
    pub p: Option<f64>,
    pub name: Option<String>,
}

fn one() -> u64 {
    1
}

fn planted() -> String {
    "planted".into()
}

impl BenchSpec {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).context("bad bench spec")
    }

    /// Every generator spec, in sweep, n, k, seed order.
    pub fn expand(&self, base_seed: u64) -> Result<Vec<GenSpec>> {
        let mut out = Vec::new();
        for s in &self.sweep {
            let family = match s.family.as_str() {
                "planted" => Family::Planted,
                "uniform-random" => Family::UniformRandom { p: s.p.context("uniform-random needs p")? },
                "paper-figure" => Family::PaperFigure { name: s.name.clone().context("paper-figure needs name")? },
                other => anyhow::bail!("unknown family {other:?}"),
            };
            for &n in &s.n {
                for &k in &s.k {
                    for i in 0..s.seeds {
                        out.push(GenSpec { seed: base_seed + i, n, k, problem: s.problem, family: family.clone() });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub problem: ProblemKind,
    pub n: usize,
    pub m: usize,
    pub k: i64,
    pub outcome: &'static str,
    pub kernel: Option<(usize, usize, i64)>,
    pub bound: usize,
    pub ok: bool,
    pub millis: Option<u128>,
}

impl Row {
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        let (nk, mk, kk) = match self.kernel {
            Some((a, b, c)) => (a.to_string(), b.to_string(), c.to_string()),
            None => Default::default(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.problem.name(),
            self.n,
            self.m,
            self.k,
            self.outcome,
            nk,
            mk,
            kk,
            self.bound,
            self.ok,
            opt(self.millis.map(|m| m.to_string()))
        )
    }
}

pub fn run_one(spec: &GenSpec, cfg: &SplitConfig, timing: bool) -> Result<Row> {
    let inst = gen::generate(spec).with_context(|| format!("generating {spec:?}"))?;
    let start = Instant::now();
    let kz = kernelize_with(&inst, cfg)?;
    let millis = timing.then(|| start.elapsed().as_millis());
    let bound = size_bound(inst.problem, inst.k);
    let kernel = kz.outcome.kernel().map(|i| (i.graph.n(), i.graph.m(), i.k));
    let ok = match &kz.outcome {
        KernelOutcome::Kernel(i) => {
            let split_completion =
                matches!(inst.problem, ProblemKind::SplitCompletion | ProblemKind::PseudoSplitCompletion);
            i.graph.n() <= bound && (!split_completion || i.graph.m() <= completion_edge_bound(inst.k, i.graph.n()))
        }
        _ => true,
    };
    Ok(Row {
        problem: inst.problem,
        n: inst.graph.n(),
        m: inst.graph.m(),
        k: inst.k,
        outcome: kz.outcome.tag(),
        kernel,
        bound,
        ok,
        millis,
    })
}

/// Runs every spec on the rayon pool; rows come back in spec order.
pub fn run(specs: &[GenSpec], cfg: &SplitConfig, timing: bool) -> Result<Vec<Row>> {
    specs.par_iter().map(|s| run_one(s, cfg, timing)).collect()
}
