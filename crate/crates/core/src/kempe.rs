//! Kempe-equivalence classes and their bichromatic cycle sets.

use crate::coloring::{
    bichromatic_cycles, components_within, enumerate_colorings, simple_cycles_within, BichromaticCycle, Coloring,
    PAIRS,
};
use crate::embedding::{normalized, cycle_sides, Cycle, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use crate::vset::VertexSet;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// A Kempe class `F^f`: all canonical colorings reachable from the seed by
/// single K-changes, with the union of their bichromatic cycles.
#[derive(Clone, Debug)]
pub struct KempeClass {
    pub seed: Coloring,
    pub members: Vec<Coloring>,
    pub cycle_set: Vec<BichromaticCycle>,
}

impl KempeClass {
    pub fn contains(&self, f: &Coloring) -> bool {
        self.members.binary_search(&f.canonical()).is_ok()
    }
}

/// Canonical colorings one K-change away from `f` (only pairs whose
/// two-colored subgraph has at least two components).
pub fn kempe_neighbors(adj: &[VertexSet], f: &Coloring) -> Vec<Coloring> {
    let mut out = Vec::new();
    for &(i, j) in &PAIRS {
        let comps = components_within(adj, f.pair_set(i, j));
        if comps.len() < 2 {
            continue;
        }
        for c in comps {
            out.push(f.swapped_on(c, i, j).canonical());
        }
    }
    out
}

/// Members of the class of `f`, sorted.
pub fn kempe_class_members(g: &PlaneGraph, f: &Coloring) -> Result<Vec<Coloring>> {
    if !f.is_proper(g) {
        return Err(Error::Precondition("coloring is not proper".into()));
    }
    let adj = g.adjacency_sets();
    Ok(closure(&adj, f.canonical()))
}

fn closure(adj: &[VertexSet], seed: Coloring) -> Vec<Coloring> {
    let mut seen = BTreeSet::new();
    seen.insert(seed.clone());
    let mut queue = VecDeque::from([seed]);
    while let Some(f) = queue.pop_front() {
        for h in kempe_neighbors(adj, &f) {
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn kempe_class(g: &PlaneGraph, f: &Coloring) -> Result<KempeClass> {
    let members = kempe_class_members(g, f)?;
    let mut seen = HashMap::new();
    let mut cycle_set = Vec::new();
    for m in &members {
        for c in bichromatic_cycles(g, m)? {
            if seen.insert(c.cycle.key(), ()).is_none() {
                cycle_set.push(c);
            }
        }
    }
    Ok(KempeClass {
        seed: f.canonical(),
        members,
        cycle_set,
    })
}

/// The partition of all canonical colorings into Kempe classes, ordered by
/// least member.
pub fn kempe_partition(g: &PlaneGraph) -> Result<Vec<Vec<Coloring>>> {
    let all = enumerate_colorings(g)?;
    let adj = g.adjacency_sets();
    Ok(partition(&adj, &all))
}

fn partition(adj: &[VertexSet], all: &[Coloring]) -> Vec<Vec<Coloring>> {
    let mut assigned: BTreeSet<Coloring> = BTreeSet::new();
    let mut classes = Vec::new();
    for f in all {
        if assigned.contains(f) {
            continue;
        }
        let class = closure(adj, f.clone());
        assigned.extend(class.iter().cloned());
        classes.push(class);
    }
    classes
}

/// True iff all colorings of `g` form a single Kempe class.
pub fn is_kempe_graph(g: &PlaneGraph) -> Result<bool> {
    Ok(kempe_partition(g)?.len() <= 1)
}

/// Colorings, classes and bichromatic cycles of one graph, computed once.
///
/// Distinct cycles are stored once in `cycles`; colorings and classes
/// refer to them by index.
#[derive(Clone, Debug)]
pub struct GraphAnalysis {
    pub graph: PlaneGraph,
    pub adj: Vec<VertexSet>,
    pub colorings: Vec<Coloring>,
    pub cycles: Vec<Cycle>,
    /// For each coloring, its bichromatic cycles as `(cycle index, pair)`.
    pub bicycles: Vec<Vec<(usize, (u8, u8))>>,
    /// Classes as sorted lists of coloring indices.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    index: HashMap<Coloring, usize>,
}

impl GraphAnalysis {
    pub fn new(g: &PlaneGraph) -> Result<Self> {
        let colorings = enumerate_colorings(g)?;
        Self::with_colorings(g, colorings)
    }

    /// Builds the analysis over a given closed set of canonical colorings
    /// (closed under K-changes).
    pub fn with_colorings(g: &PlaneGraph, colorings: Vec<Coloring>) -> Result<Self> {
        let adj = g.adjacency_sets();
        let index: HashMap<Coloring, usize> = colorings.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut cycles = Vec::new();
        let mut cycle_index: HashMap<Vec<VertexId>, usize> = HashMap::new();
        let mut bicycles = Vec::with_capacity(colorings.len());
        for f in &colorings {
            let mut mine = Vec::new();
            for &(i, j) in &PAIRS {
                for vs in simple_cycles_within(&adj, f.pair_set(i, j)) {
                    let key = normalized(&vs);
                    let id = match cycle_index.get(&key) {
                        Some(&id) => id,
                        None => {
                            let id = cycles.len();
                            cycles.push(cycle_sides(g, &vs)?);
                            cycle_index.insert(key, id);
                            id
                        }
                    };
                    mine.push((id, (i, j)));
                }
            }
            bicycles.push(mine);
        }
        let parts = partition(&adj, &colorings);
        let mut class_of = vec![usize::MAX; colorings.len()];
        let mut classes = Vec::with_capacity(parts.len());
        for (k, part) in parts.into_iter().enumerate() {
            let mut ids = Vec::with_capacity(part.len());
            for c in part {
                let id = *index.get(&c).ok_or_else(|| {
                    Error::Precondition("coloring set is not closed under K-changes".into())
                })?;
                class_of[id] = k;
                ids.push(id);
            }
            ids.sort_unstable();
            classes.push(ids);
        }
        Ok(GraphAnalysis {
            graph: g.clone(),
            adj,
            colorings,
            cycles,
            bicycles,
            classes,
            class_of,
            index,
        })
    }

    pub fn index_of(&self, f: &Coloring) -> Option<usize> {
        self.index.get(&f.canonical()).copied()
    }

    /// Distinct cycle indices bichromatic under some member of class `k`.
    pub fn class_cycles(&self, k: usize) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        for &m in &self.classes[k] {
            set.extend(self.bicycles[m].iter().map(|&(c, _)| c));
        }
        set.into_iter().collect()
    }

    pub fn class(&self, k: usize) -> KempeClass {
        let members: Vec<Coloring> = self.classes[k].iter().map(|&i| self.colorings[i].clone()).collect();
        let mut cycle_set = Vec::new();
        let mut seen = BTreeSet::new();
        for &m in &self.classes[k] {
            for &(c, pair) in &self.bicycles[m] {
                if seen.insert(c) {
                    cycle_set.push(BichromaticCycle {
                        cycle: self.cycles[c].clone(),
                        pair,
                    });
                }
            }
        }
        KempeClass {
            seed: members[0].clone(),
            members,
            cycle_set,
        }
    }

    /// Whether the cycle `c` uses exactly two colors under coloring `m`.
    pub fn is_bichromatic(&self, c: usize, m: usize) -> bool {
        let f = &self.colorings[m];
        let mut mask = 0u8;
        for &v in &self.cycles[c].vertices {
            mask |= 1 << f.get(v);
        }
        mask.count_ones() == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_is_kempe() {
        assert!(is_kempe_graph(&fixtures::k4()).unwrap());
    }

    #[test]
    fn order8_splits_into_two_classes() {
        let g = fixtures::order8_ubcmpg();
        let parts = kempe_partition(&g).unwrap();
        let mut sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
        assert!(!is_kempe_graph(&g).unwrap());
    }

    #[test]
    fn analysis_matches_direct_computation() {
        let g = fixtures::icosahedron();
        let a = GraphAnalysis::new(&g).unwrap();
        for (k, class) in a.classes.iter().enumerate() {
            let f = &a.colorings[class[0]];
            let direct = kempe_class(&g, f).unwrap();
            let from_analysis = a.class(k);
            assert_eq!(direct.members, from_analysis.members);
            assert_eq!(direct.cycle_set.len(), from_analysis.cycle_set.len());
        }
    }
}
