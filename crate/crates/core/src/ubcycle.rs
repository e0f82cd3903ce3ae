//! Unchanged bichromatic cycles (UB-cycles) and the type of a UBCMPG.

use crate::coloring::{BichromaticCycle, Coloring, ColoringKind};
use crate::embedding::{Cycle, PlaneGraph};
use crate::error::{Error, Result};
use crate::kempe::GraphAnalysis;
use serde::Serialize;

/// How two cycles are judged to intersect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectRule {
    /// Each cycle has a vertex strictly inside the other.
    Mutual,
    /// At least one cycle has a vertex strictly inside the other.
    Either,
    /// One cycle has vertices strictly inside and strictly outside the other.
    Crossing,
}

impl IntersectRule {
    pub const ALL: [IntersectRule; 3] = [IntersectRule::Mutual, IntersectRule::Either, IntersectRule::Crossing];
}

/// The rule under which the cycle criterion agrees with the definition
/// across the exhaustive sweeps in the test suite.
pub const DEFAULT_RULE: IntersectRule = IntersectRule::Mutual;

pub fn intersecting(a: &Cycle, b: &Cycle, rule: IntersectRule) -> bool {
    let (va, vb) = (a.vertex_set(), b.vertex_set());
    let a_in_b = !va.is_disjoint(b.interior);
    let b_in_a = !vb.is_disjoint(a.interior);
    match rule {
        IntersectRule::Mutual => a_in_b && b_in_a,
        IntersectRule::Either => a_in_b || b_in_a,
        IntersectRule::Crossing => {
            (a_in_b && !va.is_disjoint(b.exterior)) || (b_in_a && !vb.is_disjoint(a.exterior))
        }
    }
}

fn require_min_degree(g: &PlaneGraph) -> Result<()> {
    if g.min_degree() < 4 {
        return Err(Error::Precondition(format!(
            "UB-cycle analysis needs minimum degree at least 4 (got {})",
            g.min_degree()
        )));
    }
    Ok(())
}

fn color_mask(f: &Coloring, c: &Cycle) -> u8 {
    c.vertices.iter().fold(0u8, |m, &v| m | 1 << f.get(v))
}

impl GraphAnalysis {
    /// Definition: cycle `c` stays bichromatic under every member of the
    /// class of coloring `m`.
    pub fn is_ub_by_definition(&self, m: usize, c: usize) -> bool {
        self.classes[self.class_of[m]]
            .iter()
            .all(|&h| self.is_bichromatic(c, h))
    }

    /// Cycle criterion: `c` does not intersect any cycle of the class's
    /// cycle set whose color set under coloring `m` differs from that of `c`.
    pub fn is_ub_by_criterion(&self, m: usize, c: usize, rule: IntersectRule) -> bool {
        let f = &self.colorings[m];
        let own = color_mask(f, &self.cycles[c]);
        self.class_cycles(self.class_of[m]).into_iter().all(|other| {
            other == c
                || color_mask(f, &self.cycles[other]) == own
                || !intersecting(&self.cycles[c], &self.cycles[other], rule)
        })
    }

    /// UB-cycles of coloring `m` (indices into `cycles`).
    pub fn ub_cycles_of(&self, m: usize) -> Vec<usize> {
        self.bicycles[m]
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| self.is_ub_by_definition(m, c))
            .collect()
    }
}

fn analysis_cycle(a: &GraphAnalysis, f: &Coloring, c: &BichromaticCycle) -> Result<(usize, usize)> {
    let m = a
        .index_of(f)
        .ok_or_else(|| Error::Precondition("coloring is not proper".into()))?;
    let key = c.cycle.key();
    let idx = a.bicycles[m]
        .iter()
        .map(|&(i, _)| i)
        .find(|&i| a.cycles[i].key() == key)
        .ok_or_else(|| Error::Precondition("cycle is not bichromatic under this coloring".into()))?;
    Ok((m, idx))
}

/// Definition-based test: `c` is bichromatic under every coloring in the
/// Kempe class of `f`.
pub fn is_ub_cycle(g: &PlaneGraph, f: &Coloring, c: &BichromaticCycle) -> Result<bool> {
    require_min_degree(g)?;
    let a = GraphAnalysis::new(g)?;
    let (m, i) = analysis_cycle(&a, f, c)?;
    Ok(a.is_ub_by_definition(m, i))
}

/// Criterion-based test with the default intersection rule.
pub fn is_ub_cycle_by_criterion(g: &PlaneGraph, f: &Coloring, c: &BichromaticCycle) -> Result<bool> {
    require_min_degree(g)?;
    let a = GraphAnalysis::new(g)?;
    let (m, i) = analysis_cycle(&a, f, c)?;
    Ok(a.is_ub_by_criterion(m, i, DEFAULT_RULE))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UbType {
    Pure,
    Tree,
    Cycle,
    Hybrid,
    NotUbcmpg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringClass {
    /// Has at least one UB-cycle.
    Ubc,
    Tree,
    /// A cycle-coloring without UB-cycles.
    CyclicCycle,
}

#[derive(Clone, Debug)]
pub struct ColoringReport {
    pub coloring: Coloring,
    pub class: ColoringClass,
    pub kempe_class: usize,
    pub ub_cycles: Vec<BichromaticCycle>,
}

#[derive(Clone, Debug)]
pub struct UbReport {
    pub graph: PlaneGraph,
    pub colorings: Vec<ColoringReport>,
    pub kind: UbType,
    pub ubc_count: usize,
    pub tree_count: usize,
    pub cyclic_count: usize,
}

pub fn classify_ubcmpg(g: &PlaneGraph) -> Result<UbReport> {
    require_min_degree(g)?;
    let a = GraphAnalysis::new(g)?;
    Ok(report_from_analysis(&a))
}

pub fn report_from_analysis(a: &GraphAnalysis) -> UbReport {
    let mut colorings = Vec::with_capacity(a.colorings.len());
    let (mut u, mut t, mut c) = (0, 0, 0);
    for (m, f) in a.colorings.iter().enumerate() {
        let ubs = a.ub_cycles_of(m);
        let class = if !ubs.is_empty() {
            u += 1;
            ColoringClass::Ubc
        } else if a.bicycles[m].is_empty() {
            t += 1;
            ColoringClass::Tree
        } else {
            c += 1;
            ColoringClass::CyclicCycle
        };
        let ub_cycles = a.bicycles[m]
            .iter()
            .filter(|(i, _)| ubs.contains(i))
            .map(|&(i, pair)| BichromaticCycle {
                cycle: a.cycles[i].clone(),
                pair,
            })
            .collect();
        colorings.push(ColoringReport {
            coloring: f.clone(),
            class,
            kempe_class: a.class_of[m],
            ub_cycles,
        });
    }
    let kind = match (u > 0, t > 0, c > 0) {
        (false, _, _) => UbType::NotUbcmpg,
        (true, false, false) => UbType::Pure,
        (true, true, false) => UbType::Tree,
        (true, false, true) => UbType::Cycle,
        (true, true, true) => UbType::Hybrid,
    };
    UbReport {
        graph: a.graph.clone(),
        colorings,
        kind,
        ubc_count: u,
        tree_count: t,
        cyclic_count: c,
    }
}

/// Sanity link between the two coloring taxonomies.
pub fn coloring_kind(report: &ColoringReport) -> ColoringKind {
    match report.class {
        ColoringClass::Tree => ColoringKind::Tree,
        _ => ColoringKind::Cycle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn order8_is_tree_type() {
        let r = classify_ubcmpg(&fixtures::order8_ubcmpg()).unwrap();
        assert_eq!(r.kind, UbType::Tree);
        assert_eq!((r.ubc_count, r.tree_count, r.cyclic_count), (2, 1, 0));
        for c in r.colorings.iter().filter(|c| c.class == ColoringClass::Ubc) {
            assert!(c.ub_cycles.iter().any(|b| b.cycle.len() == 4));
        }
    }

    #[test]
    fn low_degree_is_rejected() {
        assert!(classify_ubcmpg(&fixtures::k4()).is_err());
    }

    #[test]
    fn nested_cycles_intersect_only_loosely() {
        let g = fixtures::tree_family(3);
        let inner = crate::embedding::cycle_sides(&g, &[0, 1, 2, 3]).unwrap();
        let outer = crate::embedding::cycle_sides(&g, &[7, 8, 9, 10]).unwrap();
        assert!(!intersecting(&inner, &outer, IntersectRule::Mutual));
        assert!(!intersecting(&inner, &outer, IntersectRule::Crossing));
        assert_eq!(
            intersecting(&inner, &outer, IntersectRule::Either),
            !inner.vertex_set().is_disjoint(outer.interior) || !outer.vertex_set().is_disjoint(inner.interior)
        );
    }
}
