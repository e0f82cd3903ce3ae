mod common;

use common::*;
use mpg_core::coloring::{enumerate_colorings, omega};
use mpg_core::generator::{generate, GenerateOptions};
use mpg_core::kempe::kempe_partition;
use mpg_core::PlaneGraph;
use std::collections::{BTreeSet, HashSet};

fn run(max: usize) -> Vec<PlaneGraph> {
    generate(&GenerateOptions::new(max)).unwrap().all().cloned().collect()
}

#[test]
fn generator_counts_match_flip_closure() {
    let gen = generate(&GenerateOptions::new(9)).unwrap();
    for n in 4..=9 {
        let oracle = triangulations_by_flips(n);
        assert_eq!(gen.count(n), oracle.len(), "order {n}");
        let mut classes = IsoClasses::default();
        for g in &gen.emitted[&n] {
            assert!(classes.insert(n, &edge_list(g)), "order {n}: two emitted graphs are isomorphic");
        }
    }
}

#[test]
fn canonical_form_separates_exactly_the_vf2_classes() {
    let graphs = run(9);
    let forms: HashSet<_> = graphs.iter().map(|g| g.canonical_form()).collect();
    assert_eq!(forms.len(), graphs.len());
    for g in &graphs {
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|v| (v * 5 + 3) % n).collect();
        let perm = if perm.iter().collect::<BTreeSet<_>>().len() == n { perm } else { (0..n).rev().collect() };
        let h = g.relabel(&perm);
        assert!(petgraph::algo::is_isomorphic(
            &ungraph(n, edge_list(g)),
            &ungraph(n, edge_list(&h))
        ));
        assert_eq!(h.canonical_form(), g.canonical_form());
        assert_eq!(g.mirror().canonical_form(), g.canonical_form());
    }
}

#[test]
fn flip_neighbors_are_found_by_canonical_form() {
    // Each flip of a graph is isomorphic to some generated graph, and the
    // canonical form identifies which one.
    let graphs = run(8);
    let known: HashSet<_> = graphs.iter().map(|g| g.canonical_form()).collect();
    for g in graphs.iter().filter(|g| g.n() == 8) {
        for h in flips(&faces_of(g)) {
            let h: Vec<Vec<usize>> = h.iter().map(|f| f.to_vec()).collect();
            let p = PlaneGraph::from_faces(8, &h, &h[0]).unwrap();
            assert!(known.contains(&p.canonical_form()));
        }
    }
}

#[test]
fn coloring_counts_match_brute_force() {
    for g in run(9) {
        let e = edge_list(&g);
        assert_eq!(enumerate_colorings(&g).unwrap().len(), brute_coloring_count(g.n(), &e));
    }
}

#[test]
fn omega_matches_union_find() {
    for g in run(8) {
        let e = edge_list(&g);
        for f in enumerate_colorings(&g).unwrap() {
            assert_eq!(omega(&g, &f), omega_by_union_find(g.n(), &e, &f.0));
        }
    }
}

#[test]
fn kempe_partition_matches_oracle() {
    for g in run(9) {
        let e = edge_list(&g);
        for class in kempe_partition(&g).unwrap() {
            let want = kempe_class_oracle(g.n(), &e, &class[0].0);
            let got: BTreeSet<Vec<u8>> = class.iter().map(|f| relabel_colors(&f.0)).collect();
            assert_eq!(got, want);
        }
    }
}
