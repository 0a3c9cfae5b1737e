//! Structural lemmas behind the rules, checked by the exact solver on every
//! graph up to seven vertices (up to isomorphism).

use kernelkit::gen::{nonisomorphic_graphs, paper_figure};
use kernelkit::verify::{self, pseudo_unsafe_vertices};
use kernelkit::Graph;

fn every_graph(max_n: usize, check: impl Fn(&Graph) -> Result<(), String>) {
    for n in 0..=max_n {
        for g in nonisomorphic_graphs(n) {
            if let Err(e) = check(&g) {
                panic!("{:?} (n={n}): {e}", g.labelled_edges());
            }
        }
    }
}

#[test]
fn sed_sandwich() {
    every_graph(7, verify::sed_sandwich);
}

#[test]
fn stc_never_exceeds_cluster_deletion() {
    every_graph(7, verify::stc_below_cluster);
}

#[test]
fn cluster_rule_identity() {
    every_graph(7, verify::rule_one_identity);
}

#[test]
fn unobstructed_vertices_are_safe() {
    every_graph(7, verify::safe_vertices_tp);
    every_graph(7, verify::safe_vertices_split);
    every_graph(7, verify::safe_vertices_pseudo);
}

#[test]
fn fig4_needs_the_c5_condition() {
    let g = paper_figure("fig4").unwrap();
    assert!(pseudo_unsafe_vertices(&g).contains(&5));
    let found = (0..=7).flat_map(nonisomorphic_graphs).filter(|g| !pseudo_unsafe_vertices(g).is_empty()).count();
    assert!(found > 0);
}

#[test]
fn minimal_completions_keep_structure() {
    for n in 0..=7 {
        for (i, g) in nonisomorphic_graphs(n).into_iter().enumerate() {
            verify::completion_structure(&g, i as u64).unwrap_or_else(|e| panic!("{:?}: {e}", g.labelled_edges()));
        }
    }
}

#[test]
fn modulator_partition_lemma() {
    every_graph(7, |g| verify::partition_lemma(g, false));
    every_graph(7, |g| verify::partition_lemma(g, true));
}

#[test]
fn cycle_structure_when_pseudo_is_cheaper() {
    every_graph(7, verify::c5_structure);
}
