//! Edge-list and DIMACS graph files.
//!
//! Edge list: first data line `n m`, then `m` lines `u v` with 0-based ids.
//! DIMACS: `c` comments, `p edge n m`, then `e u v` with 1-based ids.
//! Blank lines and `#` comments are skipped in both.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use kernelkit::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(name = "el")]
    EdgeList,
    Dimacs,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::EdgeList => "el",
            Format::Dimacs => "dimacs",
        }
    }
}

/// Guesses DIMACS when the first non-blank, non-`#` line starts with `p` or `c`.
pub fn detect(text: &str) -> Format {
    let first = data_lines(text).next().map(|(_, l)| l);
    match first.and_then(|l| l.split_whitespace().next()) {
        Some("p") | Some("c") => Format::Dimacs,
        _ => Format::EdgeList,
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.with_context(|| format!("line {line}: missing {what}"))?;
    tok.parse().with_context(|| format!("line {line}: {what} {tok:?} is not a non-negative integer"))
}

pub fn parse(text: &str, format: Option<Format>) -> Result<Graph> {
    match format.unwrap_or_else(|| detect(text)) {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn add_edge(g: &mut Graph, u: usize, v: usize, line: usize) -> Result<()> {
    if u >= g.n() || v >= g.n() {
        bail!("line {line}: vertex out of range (n = {})", g.n());
    }
    if u == v {
        bail!("line {line}: self-loop at {u}");
    }
    if !g.add_edge(u, v) {
        bail!("line {line}: duplicate edge {u} {v}");
    }
    Ok(())
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().context("empty input: expected a header line `n m`")?;
    let mut t = header.split_whitespace();
    let n = num(t.next(), hl, "vertex count")?;
    let m = num(t.next(), hl, "edge count")?;
    if t.next().is_some() {
        bail!("line {hl}: header must be `n m`");
    }
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (ln, l) in lines {
        let mut t = l.split_whitespace();
        let u = num(t.next(), ln, "endpoint")?;
        let v = num(t.next(), ln, "endpoint")?;
        if t.next().is_some() {
            bail!("line {ln}: expected `u v`");
        }
        add_edge(&mut g, u, v, ln)?;
        seen += 1;
    }
    if seen != m {
        bail!("header announces {m} edges, found {seen}");
    }
    Ok(g)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut expected = 0;
    let mut seen = 0;
    for (ln, l) in data_lines(text) {
        let mut t = l.split_whitespace();
        match t.next() {
            Some("c") => {}
            Some("p") => {
                if g.is_some() {
                    bail!("line {ln}: second problem line");
                }
                match t.next() {
                    Some("edge") | Some("col") => {}
                    other => bail!("line {ln}: expected `p edge n m`, got format {other:?}"),
                }
                g = Some(Graph::new(num(t.next(), ln, "vertex count")?));
                expected = num(t.next(), ln, "edge count")?;
            }
            Some("e") => {
                let Some(graph) = g.as_mut() else { bail!("line {ln}: edge before the problem line") };
                let u = num(t.next(), ln, "endpoint")?;
                let v = num(t.next(), ln, "endpoint")?;
                if u == 0 || v == 0 {
                    bail!("line {ln}: DIMACS vertices are 1-based");
                }
                add_edge(graph, u - 1, v - 1, ln)?;
                seen += 1;
            }
            Some(other) => bail!("line {ln}: unknown DIMACS line type {other:?}"),
            None => {}
        }
    }
    let g = g.context("missing problem line `p edge n m`")?;
    if seen != expected {
        bail!("problem line announces {expected} edges, found {seen}");
    }
    Ok(g)
}

/// Writes `g` with internal ids. Labels that differ from the ids are listed
/// in a leading comment.
pub fn write(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    let identity = g.labels().iter().enumerate().all(|(i, &l)| i == l);
    let comment = if format == Format::Dimacs { "c" } else { "#" };
    if !identity {
        let labels: Vec<String> = g.labels().iter().map(|l| l.to_string()).collect();
        let _ = writeln!(out, "{comment} labels {}", labels.join(" "));
    }
    match format {
        Format::EdgeList => {
            let _ = writeln!(out, "{} {}", g.n(), g.m());
            for e in g.edges() {
                let _ = writeln!(out, "{} {}", e.u(), e.v());
            }
        }
        Format::Dimacs => {
            let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
            for e in g.edges() {
                let _ = writeln!(out, "e {} {}", e.u() + 1, e.v() + 1);
            }
        }
    }
    out
}
