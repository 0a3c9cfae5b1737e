//! JSON run reports and traces.

use std::collections::BTreeMap;

use kernelkit::kernel::SplitConfig;
use kernelkit::{KernelOutcome, Kernelization, Label, ReductionStep, RuleId};
use serde::Serialize;

pub const TRACE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub problem: String,
    pub n: usize,
    pub m: usize,
    pub k: i64,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_kernel: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_kernel: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_kernel: Option<i64>,
    /// Surviving input vertices in the kernel.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kept_vertices: Option<usize>,
    /// Vertices added by merge and clean-up steps.
    pub gadget_vertices: usize,
    pub rules: BTreeMap<RuleId, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub config: SplitConfig,
}

impl RunReport {
    pub fn new(kz: &Kernelization, cfg: &SplitConfig, millis: Option<u64>, seed: Option<u64>) -> Self {
        let input = &kz.input;
        let kernel = kz.outcome.kernel();
        let added: std::collections::BTreeSet<Label> =
            kz.trace.iter().flat_map(|s| s.added_vertices.iter().copied()).collect();
        let kept = kernel.map(|i| i.graph.labels().iter().filter(|l| !added.contains(l)).count());
        let gadget = kernel.map_or(0, |i| i.graph.labels().iter().filter(|l| added.contains(l)).count());
        RunReport {
            problem: input.problem.name().to_string(),
            n: input.graph.n(),
            m: input.graph.m(),
            k: input.k,
            outcome: kz.outcome.tag().to_string(),
            n_kernel: kernel.map(|i| i.graph.n()),
            m_kernel: kernel.map(|i| i.graph.m()),
            k_kernel: kernel.map(|i| i.k),
            kept_vertices: kept,
            gadget_vertices: gadget,
            rules: kz.rule_counts(),
            millis,
            seed,
            config: *cfg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace<'a> {
    pub schema: u32,
    pub problem: &'a str,
    pub n: usize,
    pub k: i64,
    pub outcome: &'a str,
    /// Kernel vertex labels in kernel id order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_labels: Option<&'a [Label]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<&'a [(Label, Label)]>,
    pub steps: &'a [ReductionStep],
}

impl<'a> Trace<'a> {
    pub fn new(kz: &'a Kernelization) -> Self {
        Trace {
            schema: TRACE_SCHEMA,
            problem: kz.input.problem.name(),
            n: kz.input.graph.n(),
            k: kz.input.k,
            outcome: kz.outcome.tag(),
            kernel_labels: match &kz.outcome {
                KernelOutcome::Kernel(i) => Some(i.graph.labels()),
                _ => None,
            },
            certificate: kz.certificate.as_deref(),
            steps: &kz.trace,
        }
    }
}
