//! Proper 4-colorings, two-colored components, Kempe changes and
//! complement (sigma) operations.

use crate::embedding::{cycle_sides, Cycle, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use crate::vset::VertexSet;
use serde::Serialize;
use std::fmt::Write as _;

pub type Color = u8;

pub const COLORS: [Color; 4] = [1, 2, 3, 4];

/// The six unordered color pairs `(i, j)` with `i < j`.
pub const PAIRS: [(Color, Color); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Colors of the pair complementary to `(i, j)`.
pub fn complement(i: Color, j: Color) -> (Color, Color) {
    let mut rest = COLORS.iter().copied().filter(|&c| c != i && c != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// A total assignment of colors `1..=4` to vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> Color {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn is_proper(&self, g: &PlaneGraph) -> bool {
        self.0.len() == g.n()
            && self.0.iter().all(|c| (1..=4).contains(c))
            && (0..g.dart_count()).all(|d| self.0[g.origin(d)] != self.0[g.target(d)])
    }

    /// Relabels colors by first appearance in vertex order; the least
    /// color vector among all 24 permutations.
    pub fn canonical(&self) -> Coloring {
        Coloring(canonical_colors(&self.0))
    }

    pub fn is_canonical(&self) -> bool {
        canonical_colors(&self.0) == self.0
    }

    /// Applies `perm[c]` to every color (index 0 unused).
    pub fn permuted(&self, perm: &[Color; 5]) -> Coloring {
        Coloring(self.0.iter().map(|&c| perm[c as usize]).collect())
    }

    pub fn class(&self, c: Color) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == c)
            .map(|(v, _)| v)
            .collect()
    }

    /// Vertices colored `i` or `j`.
    pub fn pair_set(&self, i: Color, j: Color) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == i || x == j)
            .map(|(v, _)| v)
            .collect()
    }

    /// Swaps `i` and `j` on `set`.
    pub fn swapped_on(&self, set: VertexSet, i: Color, j: Color) -> Coloring {
        let mut out = self.0.clone();
        for v in set.iter() {
            if out[v] == i {
                out[v] = j;
            } else if out[v] == j {
                out[v] = i;
            }
        }
        Coloring(out)
    }

    /// `v:color` lines, 1-based vertices.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, c) in self.0.iter().enumerate() {
            let _ = writeln!(s, "{}:{}", v + 1, c);
        }
        s
    }

    pub fn parse(text: &str, n: usize) -> Result<Coloring> {
        let mut colors = vec![0u8; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line, msg };
            let (v, c) = content
                .split_once(':')
                .ok_or_else(|| perr("expected `vertex:color`".into()))?;
            let v: usize = v.trim().parse().map_err(|_| perr(format!("bad vertex `{v}`")))?;
            let c: u8 = c.trim().parse().map_err(|_| perr(format!("bad color `{c}`")))?;
            if v == 0 || v > n {
                return Err(perr(format!("vertex {v} out of range")));
            }
            if !(1..=4).contains(&c) {
                return Err(perr(format!("color {c} not in 1..=4")));
            }
            colors[v - 1] = c;
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: format!("vertex {} has no color", v + 1),
            });
        }
        Ok(Coloring(colors))
    }
}

/// Coloring in which some vertices may still be uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PartialColoring(pub Vec<Option<Color>>);

impl PartialColoring {
    pub fn from_total(f: &Coloring) -> Self {
        PartialColoring(f.0.iter().map(|&c| Some(c)).collect())
    }

    pub fn pending(&self) -> Vec<VertexId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(v, _)| v)
            .collect()
    }

    pub fn to_total(&self) -> Option<Coloring> {
        self.0.iter().copied().collect::<Option<Vec<_>>>().map(Coloring)
    }

    /// No edge joins two colored vertices of the same color.
    pub fn is_proper(&self, g: &PlaneGraph) -> bool {
        self.0.len() == g.n()
            && (0..g.dart_count()).all(|d| match (self.0[g.origin(d)], self.0[g.target(d)]) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
    }
}

pub(crate) fn canonical_colors(colors: &[Color]) -> Vec<Color> {
    let mut map = [0u8; 5];
    let mut next = 1;
    colors
        .iter()
        .map(|&c| {
            if map[c as usize] == 0 {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect()
}

/// Least color missing from `used`, if any.
pub fn least_free(used: impl IntoIterator<Item = Color>) -> Option<Color> {
    let mut mask = 0u8;
    for c in used {
        mask |= 1 << c;
    }
    COLORS.iter().copied().find(|&c| mask & (1 << c) == 0)
}

fn check_size(g: &PlaneGraph) -> Result<()> {
    if g.n() > VertexSet::CAPACITY {
        return Err(Error::Precondition(format!(
            "coloring algorithms support at most {} vertices",
            VertexSet::CAPACITY
        )));
    }
    Ok(())
}

/// Backtracking search for proper 4-colorings.
///
/// Vertices are visited by decreasing degree, each next vertex adjacent to
/// one already placed where possible. Colors in `free` are interchangeable:
/// a vertex may only open the least unused one, so each class of colorings
/// modulo permutations of `free` is produced once.
struct Search<'a> {
    adj: Vec<VertexSet>,
    order: Vec<VertexId>,
    colors: Vec<Color>,
    free: &'a [Color],
    visit: &'a mut dyn FnMut(&[Color]) -> bool,
}

impl Search<'_> {
    fn run(&mut self, k: usize, used_mask: u8) -> bool {
        if k == self.order.len() {
            return (self.visit)(&self.colors);
        }
        let v = self.order[k];
        let mut blocked = 0u8;
        for w in self.adj[v].iter() {
            blocked |= 1 << self.colors[w];
        }
        let mut opened = false;
        for c in 1..=4u8 {
            if blocked & (1 << c) != 0 {
                continue;
            }
            let is_free = self.free.contains(&c);
            if is_free && used_mask & (1 << c) == 0 {
                if opened {
                    continue;
                }
                opened = true;
            }
            self.colors[v] = c;
            if !self.run(k + 1, used_mask | (1 << c)) {
                self.colors[v] = 0;
                return false;
            }
        }
        self.colors[v] = 0;
        true
    }
}

fn search_order(g: &PlaneGraph, adj: &[VertexSet], fixed: &[Option<Color>]) -> Vec<VertexId> {
    let n = g.n();
    let mut placed = VertexSet::empty();
    for (v, c) in fixed.iter().enumerate() {
        if c.is_some() {
            placed.insert(v);
        }
    }
    let mut order = Vec::with_capacity(n);
    while placed.len() < n {
        let frontier: Vec<VertexId> = (0..n)
            .filter(|&v| !placed.contains(v) && !adj[v].is_disjoint(placed))
            .collect();
        let pool: Vec<VertexId> = if frontier.is_empty() {
            (0..n).filter(|&v| !placed.contains(v)).collect()
        } else {
            frontier
        };
        let v = *pool
            .iter()
            .max_by_key(|&&v| (adj[v].intersection(placed).len(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed.insert(v);
        order.push(v);
    }
    order
}

/// Calls `visit` on proper colorings extending `fixed`, one per class
/// modulo permutations of colors not used by `fixed`; stops when `visit`
/// returns false.
pub fn for_each_coloring(
    g: &PlaneGraph,
    fixed: &[Option<Color>],
    visit: &mut dyn FnMut(&[Color]) -> bool,
) -> Result<()> {
    check_size(g)?;
    if fixed.len() != g.n() {
        return Err(Error::Precondition("fixed colors must cover every vertex slot".into()));
    }
    let adj = g.adjacency_sets();
    let colors: Vec<Color> = fixed.iter().map(|c| c.unwrap_or(0)).collect();
    for v in 0..g.n() {
        if colors[v] != 0 && adj[v].iter().any(|w| colors[w] == colors[v]) {
            return Ok(());
        }
    }
    let fixed_mask = colors.iter().fold(0u8, |m, &c| if c == 0 { m } else { m | 1 << c });
    let free: Vec<Color> = COLORS.iter().copied().filter(|&c| fixed_mask & (1 << c) == 0).collect();
    let order = search_order(g, &adj, fixed);
    let mut s = Search {
        adj,
        order,
        colors,
        free: &free,
        visit,
    };
    s.run(0, fixed_mask);
    Ok(())
}

/// All colorings up to color permutation, as sorted canonical
/// representatives.
pub fn enumerate_colorings(g: &PlaneGraph) -> Result<Vec<Coloring>> {
    let mut out = Vec::new();
    for_each_coloring(g, &vec![None; g.n()], &mut |c| {
        out.push(Coloring(canonical_colors(c)));
        true
    })?;
    out.sort();
    Ok(out)
}

pub fn first_coloring(g: &PlaneGraph) -> Result<Option<Coloring>> {
    let mut out = None;
    for_each_coloring(g, &vec![None; g.n()], &mut |c| {
        out = Some(Coloring(canonical_colors(c)));
        false
    })?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Path,
    Cycle,
    Other,
}

/// A connected component of the subgraph induced by two color classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IjComponent {
    pub pair: (Color, Color),
    pub vertices: VertexSet,
    pub kind: ComponentKind,
}

/// Connected components of the subgraph induced by `set`.
pub fn components_within(adj: &[VertexSet], set: VertexSet) -> Vec<VertexSet> {
    let mut rest = set;
    let mut out = Vec::new();
    while let Some(s) = rest.first() {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(adj[v]);
            }
            frontier = next.intersection(set).difference(comp);
            comp = comp.union(frontier);
        }
        rest = rest.difference(comp);
        out.push(comp);
    }
    out
}

fn kind_of(adj: &[VertexSet], comp: VertexSet) -> ComponentKind {
    let mut edges2 = 0;
    let mut max_deg = 0;
    for v in comp.iter() {
        let d = adj[v].intersection(comp).len();
        edges2 += d;
        max_deg = max_deg.max(d);
    }
    let edges = edges2 / 2;
    if max_deg <= 2 && edges + 1 == comp.len() {
        ComponentKind::Path
    } else if max_deg == 2 && edges == comp.len() && comp.len() >= 3 {
        ComponentKind::Cycle
    } else {
        ComponentKind::Other
    }
}

pub fn ij_components(g: &PlaneGraph, f: &Coloring, i: Color, j: Color) -> Vec<IjComponent> {
    let adj = g.adjacency_sets();
    let pair = (i.min(j), i.max(j));
    components_within(&adj, f.pair_set(i, j))
        .into_iter()
        .map(|vertices| IjComponent {
            pair,
            vertices,
            kind: kind_of(&adj, vertices),
        })
        .collect()
}

/// Total number of two-colored components over all six color pairs.
pub fn omega(g: &PlaneGraph, f: &Coloring) -> usize {
    let adj = g.adjacency_sets();
    PAIRS
        .iter()
        .map(|&(i, j)| components_within(&adj, f.pair_set(i, j)).len())
        .sum()
}

/// The `{i, j}`-component containing `v` (which must be colored `i` or `j`).
pub fn component_at(g: &PlaneGraph, f: &Coloring, v: VertexId, i: Color, j: Color) -> Option<IjComponent> {
    if f.get(v) != i && f.get(v) != j {
        return None;
    }
    ij_components(g, f, i, j)
        .into_iter()
        .find(|c| c.vertices.contains(v))
}

/// Swaps the two colors of `component`. Rejected when the component is
/// the only one of its pair, since the result is then a mere relabeling.
pub fn kempe_change(g: &PlaneGraph, f: &Coloring, component: &IjComponent) -> Result<Coloring> {
    let (i, j) = component.pair;
    let comps = ij_components(g, f, i, j);
    if !comps.iter().any(|c| c.vertices == component.vertices) {
        return Err(Error::Precondition(format!(
            "not a {i}{j}-component of this coloring"
        )));
    }
    if comps.len() < 2 {
        return Err(Error::Precondition(format!(
            "the {i}{j}-subgraph is connected; swapping it only permutes colors"
        )));
    }
    let out = f.swapped_on(component.vertices, i, j);
    debug_assert!(out.is_proper(g));
    Ok(out)
}

/// A cycle all of whose vertices carry the colors of `pair`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BichromaticCycle {
    pub cycle: Cycle,
    pub pair: (Color, Color),
}

impl BichromaticCycle {
    pub fn is_bichromatic_under(&self, f: &Coloring) -> bool {
        let mut mask = 0u8;
        for &v in &self.cycle.vertices {
            mask |= 1 << f.get(v);
        }
        mask.count_ones() == 2
    }
}

/// Swaps the complementary color pair on the interior of `c`.
pub fn sigma_operation(g: &PlaneGraph, f: &Coloring, c: &BichromaticCycle) -> Result<Coloring> {
    let (i, j) = c.pair;
    if !c.cycle.vertices.iter().all(|&v| f.get(v) == i || f.get(v) == j) || !c.is_bichromatic_under(f) {
        return Err(Error::Precondition("cycle is not bichromatic under this coloring".into()));
    }
    let (s, t) = complement(i, j);
    let out = f.swapped_on(c.cycle.interior, s, t);
    debug_assert!(out.is_proper(g));
    Ok(out)
}

/// Every simple cycle (length at least 3) of the subgraph induced by `set`,
/// as vertex lists starting at their least vertex.
pub fn simple_cycles_within(adj: &[VertexSet], set: VertexSet) -> Vec<Vec<VertexId>> {
    fn extend(
        adj: &[VertexSet],
        allowed: VertexSet,
        start: VertexId,
        path: &mut Vec<VertexId>,
        on_path: &mut VertexSet,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let v = *path.last().unwrap();
        for w in adj[v].intersection(allowed).iter() {
            if w == start {
                if path.len() >= 3 && path[1] < v {
                    out.push(path.clone());
                }
            } else if !on_path.contains(w) {
                path.push(w);
                on_path.insert(w);
                extend(adj, allowed, start, path, on_path, out);
                on_path.remove(w);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for comp in components_within(adj, set) {
        let mut allowed = comp;
        // Strip degree-one vertices repeatedly; they lie on no cycle.
        loop {
            let leaves: VertexSet = allowed
                .iter()
                .filter(|&v| adj[v].intersection(allowed).len() < 2)
                .collect();
            if leaves.is_empty() {
                break;
            }
            allowed = allowed.difference(leaves);
        }
        while let Some(s) = allowed.first() {
            let mut path = vec![s];
            let mut on_path = VertexSet::singleton(s);
            extend(adj, allowed, s, &mut path, &mut on_path, &mut out);
            allowed.remove(s);
        }
    }
    out
}

/// The bichromatic cycles of `f`, with interiors.
pub fn bichromatic_cycles(g: &PlaneGraph, f: &Coloring) -> Result<Vec<BichromaticCycle>> {
    check_size(g)?;
    let adj = g.adjacency_sets();
    let mut out = Vec::new();
    for &(i, j) in &PAIRS {
        for vs in simple_cycles_within(&adj, f.pair_set(i, j)) {
            out.push(BichromaticCycle {
                cycle: cycle_sides(g, &vs)?,
                pair: (i, j),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringKind {
    Tree,
    Cycle,
}

/// Tree-coloring iff every two-colored subgraph is a forest.
pub fn classify_coloring(g: &PlaneGraph, f: &Coloring) -> ColoringKind {
    let adj = g.adjacency_sets();
    for &(i, j) in &PAIRS {
        let set = f.pair_set(i, j);
        let comps = components_within(&adj, set).len();
        let edges: usize = set.iter().map(|v| adj[v].intersection(set).len()).sum::<usize>() / 2;
        if edges + comps != set.len() {
            return ColoringKind::Cycle;
        }
    }
    ColoringKind::Tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_has_one_coloring() {
        let g = fixtures::k4();
        let all = enumerate_colorings(&g).unwrap();
        assert_eq!(all, vec![Coloring(vec![1, 2, 3, 4])]);
        assert_eq!(omega(&g, &all[0]), 6);
        assert_eq!(classify_coloring(&g, &all[0]), ColoringKind::Tree);
    }

    #[test]
    fn icosahedron_has_ten_colorings() {
        let all = enumerate_colorings(&fixtures::icosahedron()).unwrap();
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(Coloring::is_canonical));
    }

    #[test]
    fn octahedron_colorings() {
        // Opposite vertices pair up: either all three antipodal pairs share
        // colors (3 colors) or exactly two of them do (4 colors, 3 ways).
        let all = enumerate_colorings(&fixtures::octahedron()).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn canonical_is_least_under_permutations() {
        let f = Coloring(vec![3, 1, 3, 4, 2]);
        let c = f.canonical();
        assert_eq!(c.0, vec![1, 2, 1, 3, 4]);
    }

    #[test]
    fn kempe_change_is_an_involution() {
        let g = fixtures::icosahedron();
        for f in enumerate_colorings(&g).unwrap() {
            for &(i, j) in &PAIRS {
                let comps = ij_components(&g, &f, i, j);
                if comps.len() < 2 {
                    assert!(kempe_change(&g, &f, &comps[0]).is_err());
                    continue;
                }
                for c in &comps {
                    let h = kempe_change(&g, &f, c).unwrap();
                    assert!(h.is_proper(&g));
                    let back = kempe_change(&g, &h, c).unwrap();
                    assert_eq!(back, f);
                }
            }
        }
    }

    #[test]
    fn sigma_on_empty_interior_is_identity() {
        let g = fixtures::octahedron();
        let f = Coloring(vec![1, 2, 3, 2, 3, 1]);
        assert!(f.is_proper(&g));
        let cycles = bichromatic_cycles(&g, &f).unwrap();
        assert!(!cycles.is_empty());
        for c in &cycles {
            let h = sigma_operation(&g, &f, c).unwrap();
            assert!(h.is_proper(&g));
            assert_eq!(sigma_operation(&g, &h, c).unwrap(), f);
        }
    }

    #[test]
    fn parse_round_trip() {
        let f = Coloring(vec![1, 2, 3, 4]);
        assert_eq!(Coloring::parse(&f.to_text(), 4).unwrap(), f);
        assert!(Coloring::parse("1:5\n", 1).is_err());
    }
}
