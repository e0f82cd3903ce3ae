//! Enumeration of triangulations by repeated wheel extensions.
//!
//! The search runs over loopless multi-triangulations, starting from the
//! triangle with two faces. Extensions add one vertex (2- and 3-wheels) or
//! two (4- and 5-wheels), so each level is final once the two levels below
//! it have been expanded. Only simple triangulations are emitted.

use crate::ce_ops::{e2wo_graph, e3wo_graph, e4_sites, e4wo_graph, e5_sites, e5wo_graph};
use crate::embedding::{validate_mpg, CanonicalForm, PlaneGraph};
use crate::error::Result;
use crate::ubcycle::{classify_ubcmpg, UbReport, UbType};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub max_order: usize,
    pub min_degree: Option<usize>,
    /// Largest number of surplus parallel edges kept in intermediate graphs.
    pub max_parallel_excess: usize,
    /// Per-level cap on stored intermediate graphs; exceeding it marks the
    /// run incomplete.
    pub level_cap: usize,
}

impl GenerateOptions {
    pub fn new(max_order: usize) -> Self {
        GenerateOptions {
            max_order,
            min_degree: None,
            max_parallel_excess: 1,
            level_cap: 20_000_000,
        }
    }

    pub fn min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LevelStats {
    pub order: usize,
    /// Intermediate (possibly non-simple) graphs kept at this order.
    pub stored: usize,
    /// Simple triangulations passing the degree filter.
    pub emitted: usize,
}

#[derive(Clone, Debug)]
pub struct GenerationRun {
    pub max_order: usize,
    pub min_degree_filter: Option<usize>,
    /// Emitted graphs per order, sorted by canonical form.
    pub emitted: BTreeMap<usize, Vec<PlaneGraph>>,
    pub stats: Vec<LevelStats>,
    pub complete: bool,
}

impl GenerationRun {
    pub fn all(&self) -> impl Iterator<Item = &PlaneGraph> {
        self.emitted.values().flatten()
    }

    pub fn count(&self, order: usize) -> usize {
        self.emitted.get(&order).map_or(0, Vec::len)
    }
}

/// The triangle embedded with two faces.
pub fn seed() -> PlaneGraph {
    PlaneGraph::from_faces(3, &[vec![0, 1, 2], vec![0, 2, 1]], &[0, 1, 2]).expect("triangle")
}

fn deficit(g: &PlaneGraph, d: usize) -> usize {
    (0..g.n()).map(|v| d.saturating_sub(g.degree(v))).sum()
}

/// Whether a graph of order `n` can still lead to a graph of order at
/// most `max_order` with minimum degree `d`. One extension lowers the
/// total degree deficit by at most two per added vertex.
fn viable(g: &PlaneGraph, d: Option<usize>, max_order: usize) -> bool {
    match d {
        None => true,
        Some(d) => deficit(g, d) <= 2 * (max_order - g.n()),
    }
}

/// One extension site of a parent graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    E2(usize),
    E3(usize),
    E4(usize, usize),
    E5(usize, usize),
}

impl Extension {
    pub fn added_vertices(self) -> usize {
        match self {
            Extension::E2(_) | Extension::E3(_) => 1,
            _ => 2,
        }
    }

    pub fn apply(self, g: &PlaneGraph) -> Result<PlaneGraph> {
        Ok(match self {
            Extension::E2(d) => e2wo_graph(g, d)?.0,
            Extension::E3(d) => e3wo_graph(g, d)?.0,
            Extension::E4(d1, d3) => e4wo_graph(g, d1, d3)?.0,
            Extension::E5(d1, d3) => e5wo_graph(g, d1, d3)?.0,
        })
    }

    /// Degrees the extension gives to touched old vertices, and the
    /// degrees of the new vertices.
    fn degree_changes(self, g: &PlaneGraph) -> (Vec<(usize, usize)>, Vec<usize>) {
        let deg = |v| g.degree(v);
        match self {
            Extension::E2(d) => {
                let (u, v) = (g.origin(d), g.target(d));
                (vec![(u, deg(u) + 2), (v, deg(v) + 2)], vec![2])
            }
            Extension::E3(d) => {
                let t = g.face_vertices(g.face_of(d));
                (t.iter().map(|&v| (v, deg(v) + 1)).collect(), vec![3])
            }
            Extension::E4(d1, d3) | Extension::E5(d1, d3) => {
                let v2 = g.origin(d1);
                let k = deg(v2);
                let span = (g.position(d3) + k - g.position(d1)) % k;
                let (v1, v3) = (g.target(d1), g.target(d3));
                if let Extension::E4(..) = self {
                    (
                        vec![(v2, span + 2), (v1, deg(v1) + 2), (v3, deg(v3) + 2)],
                        vec![k - span + 2, 4],
                    )
                } else {
                    let v4 = g.target(g.next(d3));
                    (
                        vec![(v2, span + 2), (v1, deg(v1) + 2), (v3, deg(v3) + 1), (v4, deg(v4) + 1)],
                        vec![k - span + 1, 5],
                    )
                }
            }
        }
    }
}

/// Extension sites of `g`. Splits at a 4-path are listed once, since
/// swapping the two halves gives the same graph.
pub fn extension_sites(g: &PlaneGraph) -> Vec<Extension> {
    let mut out: Vec<Extension> = (0..g.dart_count()).map(Extension::E2).collect();
    for f in g.faces() {
        let darts = g.face_darts(f);
        if darts.len() == 3 {
            out.push(Extension::E3(darts[0]));
        }
    }
    out.extend(
        e4_sites(g)
            .into_iter()
            .filter(|&(d1, d3)| d1 < d3)
            .map(|(d1, d3)| Extension::E4(d1, d3)),
    );
    out.extend(e5_sites(g).into_iter().map(|(d1, d3)| Extension::E5(d1, d3)));
    out
}

/// All one-step extensions of `g`.
pub fn extensions(g: &PlaneGraph) -> Vec<PlaneGraph> {
    extension_sites(g).into_iter().filter_map(|e| e.apply(g).ok()).collect()
}

/// Degree deficit of the child built by `e`, given the parent's.
fn child_deficit(g: &PlaneGraph, e: Extension, d: usize, base: usize) -> usize {
    let (old, new) = e.degree_changes(g);
    let lack = |k: usize| d.saturating_sub(k);
    let mut def = base as isize;
    for (v, k) in old {
        def += lack(k) as isize - lack(g.degree(v)) as isize;
    }
    def += new.into_iter().map(|k| lack(k) as isize).sum::<isize>();
    def as usize
}

/// Children of `g` that can still lead to an emitted graph.
fn viable_children(g: &PlaneGraph, opts: &GenerateOptions) -> Vec<PlaneGraph> {
    let max = opts.max_order;
    let excess = g.parallel_excess();
    let base = opts.min_degree.map(|d| deficit(g, d));
    let mut out = Vec::new();
    for e in extension_sites(g) {
        let n = g.n() + e.added_vertices();
        if n > max {
            continue;
        }
        if let Extension::E2(_) = e {
            if excess + 1 > opts.max_parallel_excess || n == max {
                continue;
            }
        }
        if let (Some(d), Some(base)) = (opts.min_degree, base) {
            if child_deficit(g, e, d, base) > 2 * (max - n) {
                continue;
            }
        }
        let Ok(h) = e.apply(g) else { continue };
        let limit = if n == max { 0 } else { opts.max_parallel_excess };
        if h.parallel_excess() <= limit && viable(&h, opts.min_degree, max) {
            out.push(h);
        }
    }
    out
}

pub fn generate(opts: &GenerateOptions) -> Result<GenerationRun> {
    let max = opts.max_order;
    let mut levels: Vec<HashSet<CanonicalForm>> = vec![HashSet::new(); max + 3];
    let s = seed();
    levels[3].insert(s.canonical_form());
    let mut emitted = BTreeMap::new();
    let mut stats = Vec::new();
    let mut complete = true;
    for n in 3..=max {
        let mut current: Vec<CanonicalForm> = std::mem::take(&mut levels[n]).into_iter().collect();
        current.sort_unstable();
        let graphs: Vec<PlaneGraph> = current
            .par_iter()
            .map(|c| PlaneGraph::from_canonical(c).expect("stored codes decode"))
            .collect();
        let mut out: Vec<(CanonicalForm, PlaneGraph)> = graphs
            .iter()
            .zip(&current)
            .filter(|(g, _)| {
                validate_mpg(g).is_mpg && opts.min_degree.is_none_or(|d| g.min_degree() >= d)
            })
            .map(|(g, c)| (c.clone(), g.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        if n >= 4 {
            stats.push(LevelStats {
                order: n,
                stored: current.len(),
                emitted: out.len(),
            });
            emitted.insert(n, out.into_iter().map(|(_, g)| g).collect());
        }
        if n == max {
            break;
        }
        let children: Vec<(usize, CanonicalForm)> = graphs
            .par_iter()
            .flat_map_iter(|g| {
                viable_children(g, opts)
                    .into_iter()
                    .map(|h| (h.n(), h.canonical_form()))
                    .collect::<Vec<_>>()
            })
            .collect();
        for (m, c) in children {
            levels[m].insert(c);
        }
        for level in levels.iter().skip(n + 1) {
            if level.len() > opts.level_cap {
                complete = false;
            }
        }
        if !complete {
            break;
        }
    }
    Ok(GenerationRun {
        max_order: max,
        min_degree_filter: opts.min_degree,
        emitted,
        stats,
        complete,
    })
}

/// Classifies every emitted graph of a run with minimum degree at least 4.
pub fn ubcmpg_scan(run: &GenerationRun) -> Result<Vec<(PlaneGraph, UbReport)>> {
    let graphs: Vec<&PlaneGraph> = run.all().filter(|g| g.min_degree() >= 4).collect();
    let reports: Vec<Result<(PlaneGraph, UbReport)>> = graphs
        .par_iter()
        .map(|g| classify_ubcmpg(g).map(|r| ((*g).clone(), r)))
        .collect();
    let mut out = Vec::new();
    for r in reports {
        let (g, rep) = r?;
        if rep.kind != UbType::NotUbcmpg {
            out.push((g, rep));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_deficits_match_children() {
        let run = generate(&GenerateOptions::new(7)).unwrap();
        let mut graphs: Vec<PlaneGraph> = run.all().cloned().collect();
        graphs.push(seed());
        for g in &graphs {
            for e in extension_sites(g) {
                let Ok(h) = e.apply(g) else { continue };
                for d in 3..=6 {
                    assert_eq!(child_deficit(g, e, d, deficit(g, d)), deficit(&h, d), "{e:?}");
                }
            }
        }
    }

    #[test]
    fn small_orders() {
        let run = generate(&GenerateOptions::new(8)).unwrap();
        assert!(run.complete);
        let counts: Vec<usize> = (4..=8).map(|n| run.count(n)).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14]);
    }

    #[test]
    fn min_degree_five_starts_at_twelve() {
        let run = generate(&GenerateOptions::new(12).min_degree(5)).unwrap();
        for n in 4..12 {
            assert_eq!(run.count(n), 0, "order {n}");
        }
        assert_eq!(run.count(12), 1);
        let ico = &run.emitted[&12][0];
        assert_eq!(ico.canonical_form(), crate::fixtures::icosahedron().canonical_form());
    }
}
