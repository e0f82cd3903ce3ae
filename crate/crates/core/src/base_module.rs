//! 4-base modules: two-colored boundary colorings, endpoint paths, the
//! module test by Kempe classes, module typing and shells.
//!
//! Corners `v1..v4` are the outer-face walk of the SMPG. Colorings in
//! `F2` are normalized to `v1, v3 -> 1` and `v2, v4 -> 2`, with 3 and 4
//! ordered by first appearance.

use crate::coloring::{
    bichromatic_cycles, for_each_coloring, kempe_change, sigma_operation, BichromaticCycle, Color, Coloring,
    IjComponent,
};
use crate::embedding::{outer_region, Cycle, PlaneGraph, SmpgView, VertexId};
use crate::error::{Error, Result};
use crate::generator::{generate, GenerateOptions};
use crate::kempe::kempe_partition;
use crate::vset::VertexSet;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Corners `[v1, v2, v3, v4]` of an SMPG bounded by a 4-cycle.
pub fn corners(s: &SmpgView) -> Result<[VertexId; 4]> {
    if s.outer_len() != 4 {
        return Err(Error::Precondition(format!(
            "outer cycle has length {}, expected 4",
            s.outer_len()
        )));
    }
    Ok([s.outer(0), s.outer(1), s.outer(2), s.outer(3)])
}

/// Renames the colors of `f` to the boundary agreement, or `None` if the
/// outer 4-cycle is not two-colored.
pub fn normalize_f2(f: &Coloring, c: [VertexId; 4]) -> Option<Coloring> {
    let (a, b) = (f.get(c[0]), f.get(c[1]));
    if f.get(c[2]) != a || f.get(c[3]) != b || a == b {
        return None;
    }
    let mut map = [0u8; 5];
    map[a as usize] = 1;
    map[b as usize] = 2;
    let mut next = 3;
    let colors = f
        .colors()
        .iter()
        .map(|&x| {
            if map[x as usize] == 0 {
                map[x as usize] = next;
                next += 1;
            }
            map[x as usize]
        })
        .collect();
    Some(Coloring(colors))
}

/// All colorings with a two-colored outer cycle, normalized and sorted.
pub fn f2_colorings(s: &SmpgView) -> Result<Vec<Coloring>> {
    let c = corners(s)?;
    let g = &s.graph;
    let mut fixed = vec![None; g.n()];
    fixed[c[0]] = Some(1);
    fixed[c[2]] = Some(1);
    fixed[c[1]] = Some(2);
    fixed[c[3]] = Some(2);
    let mut out = Vec::new();
    for_each_coloring(g, &fixed, &mut |cols| {
        out.push(normalize_f2(&Coloring(cols.to_vec()), c).expect("corners are fixed"));
        true
    })?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The `ji`-paths between two anchors under a coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointPathFamily {
    pub anchors: (VertexId, VertexId),
    pub colors: (Color, Color),
    pub paths: Vec<Vec<VertexId>>,
}

impl EndpointPathFamily {
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Simple paths from `a` to `b` inside `allowed`.
pub fn simple_paths(adj: &[VertexSet], allowed: VertexSet, a: VertexId, b: VertexId) -> Vec<Vec<VertexId>> {
    fn walk(
        adj: &[VertexSet],
        allowed: VertexSet,
        b: VertexId,
        path: &mut Vec<VertexId>,
        on: &mut VertexSet,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let v = *path.last().unwrap();
        if v == b {
            out.push(path.clone());
            return;
        }
        for w in adj[v].intersection(allowed).iter() {
            if on.contains(w) {
                continue;
            }
            on.insert(w);
            path.push(w);
            walk(adj, allowed, b, path, on, out);
            path.pop();
            on.remove(w);
        }
    }
    let mut out = Vec::new();
    if !allowed.contains(a) || !allowed.contains(b) {
        return out;
    }
    let mut on = VertexSet::empty();
    on.insert(a);
    walk(adj, allowed, b, &mut vec![a], &mut on, &mut out);
    out.sort();
    out
}

/// The four families `P13(v1,v3)`, `P14(v1,v3)`, `P23(v2,v4)`,
/// `P24(v2,v4)` for a normalized coloring in `F2`.
pub fn endpoint_paths(s: &SmpgView, f: &Coloring) -> Result<[EndpointPathFamily; 4]> {
    let c = corners(s)?;
    check_normalized(f, c)?;
    let adj = s.graph.adjacency_sets();
    let family = |x: VertexId, y: VertexId, j: Color, i: Color| EndpointPathFamily {
        anchors: (x, y),
        colors: (j, i),
        paths: simple_paths(&adj, f.pair_set(j, i), x, y),
    };
    Ok([
        family(c[0], c[2], 1, 3),
        family(c[0], c[2], 1, 4),
        family(c[1], c[3], 2, 3),
        family(c[1], c[3], 2, 4),
    ])
}

fn check_normalized(f: &Coloring, c: [VertexId; 4]) -> Result<()> {
    if f.get(c[0]) != 1 || f.get(c[2]) != 1 || f.get(c[1]) != 2 || f.get(c[3]) != 2 {
        return Err(Error::Precondition(
            "coloring must give 1 to v1, v3 and 2 to v2, v4".into(),
        ));
    }
    Ok(())
}

/// Which of the four families are nonempty, in the order 13, 14, 23, 24.
/// Only connectivity is computed.
pub fn nonempty_families(s: &SmpgView, f: &Coloring) -> Result<[bool; 4]> {
    let c = corners(s)?;
    check_normalized(f, c)?;
    let adj = s.graph.adjacency_sets();
    let joined = |x: VertexId, y: VertexId, j: Color, i: Color| {
        reach(&adj, f.pair_set(j, i), x).contains(y)
    };
    Ok([
        joined(c[0], c[2], 1, 3),
        joined(c[0], c[2], 1, 4),
        joined(c[1], c[3], 2, 3),
        joined(c[1], c[3], 2, 4),
    ])
}

fn reach(adj: &[VertexSet], allowed: VertexSet, a: VertexId) -> VertexSet {
    let mut seen = VertexSet::empty();
    if !allowed.contains(a) {
        return seen;
    }
    seen.insert(a);
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for w in adj[v].intersection(allowed).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum F2Class {
    Cross,
    /// No `1i`-endpoint paths: the module paths join `v2` and `v4`.
    SharedOn24,
    /// Both `1i`-endpoint paths exist.
    SharedOn13,
}

/// Cross or shared-endpoint. A pattern other than exactly two nonempty
/// families is reported as an alarm.
pub fn classify_f2(s: &SmpgView, f: &Coloring) -> Result<F2Class> {
    let [p13, p14, p23, p24] = nonempty_families(s, f)?;
    let count = [p13, p14, p23, p24].iter().filter(|&&x| x).count();
    if count != 2 || p13 == p24 || p14 == p23 {
        return Err(Error::Alarm(format!(
            "endpoint families 13/14/23/24 nonempty = {p13}/{p14}/{p23}/{p24} for coloring {}",
            f.to_text()
        )));
    }
    Ok(if (p13 && p23) || (p14 && p24) {
        F2Class::Cross
    } else if p13 {
        F2Class::SharedOn13
    } else {
        F2Class::SharedOn24
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharedPair {
    V2V4,
    V1V3,
}

impl SharedPair {
    fn of(c: F2Class) -> Option<SharedPair> {
        match c {
            F2Class::Cross => None,
            F2Class::SharedOn24 => Some(SharedPair::V2V4),
            F2Class::SharedOn13 => Some(SharedPair::V1V3),
        }
    }

    /// Corner indices of the anchors and the shared color.
    fn anchors(self) -> (usize, usize, Color) {
        match self {
            SharedPair::V2V4 => (1, 3, 2),
            SharedPair::V1V3 => (0, 2, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Tree,
    Cycle,
    CyclicCycle,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Smp,
    Mmp,
    Other,
    None,
}

/// Module paths of one module coloring: the two families between the
/// shared anchors.
#[derive(Clone, Debug, Serialize)]
pub struct ModulePaths {
    pub coloring: Coloring,
    pub families: [EndpointPathFamily; 2],
}

#[derive(Clone, Debug)]
pub struct BaseModuleReport {
    pub smpg: SmpgView,
    pub corners: [VertexId; 4],
    pub is_4_base_module: bool,
    pub witness_f0: Option<Coloring>,
    pub shared_pair: Option<SharedPair>,
    /// `F2` members of the witness's Kempe class with their module paths.
    pub module_paths: Vec<ModulePaths>,
    pub kind: ModuleKind,
    pub path_kind: PathKind,
    /// Bichromatic cycles of the witness's Kempe class (within the module)
    /// other than the outer cycle.
    pub class_cycles: Vec<Cycle>,
    /// Class cycles shown to be UB-cycles by a glued mate.
    pub ub_cycles: Vec<Cycle>,
    pub shells: Vec<Cycle>,
    pub mate_bound: usize,
}

impl BaseModuleReport {
    pub fn module_type(&self) -> ModuleKind {
        self.kind
    }

    pub fn path_type(&self) -> PathKind {
        self.path_kind
    }
}

/// Kempe classes of the SMPG restricted to `F2`, each as sorted normalized
/// colorings; classes without `F2` members are dropped.
pub fn f2_classes(s: &SmpgView) -> Result<Vec<Vec<Coloring>>> {
    let c = corners(s)?;
    let mut out = Vec::new();
    for class in kempe_partition(&s.graph)? {
        let mut members: Vec<Coloring> = class.iter().filter_map(|f| normalize_f2(f, c)).collect();
        if !members.is_empty() {
            members.sort();
            out.push(members);
        }
    }
    out.sort();
    Ok(out)
}

/// The module test: some class whose `F2` members are all shared-endpoint
/// colorings on one fixed pair. Typing fields are left at `None`; see
/// [`analyze_module`].
pub fn is_4_base_module(s: &SmpgView) -> Result<BaseModuleReport> {
    let c = corners(s)?;
    let mut report = BaseModuleReport {
        smpg: s.clone(),
        corners: c,
        is_4_base_module: false,
        witness_f0: None,
        shared_pair: None,
        module_paths: Vec::new(),
        kind: ModuleKind::None,
        path_kind: PathKind::None,
        class_cycles: Vec::new(),
        ub_cycles: Vec::new(),
        shells: Vec::new(),
        mate_bound: 0,
    };
    for members in f2_classes(s)? {
        let mut pair = None;
        let mut ok = true;
        for f in &members {
            let p = SharedPair::of(classify_f2(s, f)?);
            if p.is_none() || (pair.is_some() && pair != p) {
                ok = false;
                break;
            }
            pair = p;
        }
        if ok {
            let pair = pair.expect("class is nonempty");
            let (a, b, shared) = pair.anchors();
            let adj = s.graph.adjacency_sets();
            report.is_4_base_module = true;
            report.witness_f0 = Some(members[0].clone());
            report.shared_pair = Some(pair);
            report.module_paths = members
                .iter()
                .map(|f| ModulePaths {
                    coloring: f.clone(),
                    families: [3, 4].map(|i| EndpointPathFamily {
                        anchors: (c[a], c[b]),
                        colors: (shared, i),
                        paths: simple_paths(&adj, f.pair_set(shared, i), c[a], c[b]),
                    }),
                })
                .collect();
            break;
        }
    }
    Ok(report)
}

/// Full report: module test, class cycles, kind (using mates with at most
/// `mate_bound` interior vertices), path kind and shells.
pub fn analyze_module(s: &SmpgView, mate_bound: usize) -> Result<BaseModuleReport> {
    let mut report = is_4_base_module(s)?;
    report.mate_bound = mate_bound;
    let Some(f0) = report.witness_f0.clone() else {
        return Ok(report);
    };
    let g = &s.graph;
    let outer_key = s.outer_cycle.key();
    let members: Vec<Coloring> = report.module_paths.iter().map(|m| m.coloring.clone()).collect();
    let mut own: Vec<BichromaticCycle> = Vec::new();
    let mut seen = BTreeSet::new();
    for f in &members {
        let cs: Vec<BichromaticCycle> = bichromatic_cycles(g, f)?
            .into_iter()
            .filter(|b| b.cycle.key() != outer_key)
            .collect();
        if cs.is_empty() {
            report.kind = ModuleKind::Tree;
            report.witness_f0 = Some(f.clone());
            return Ok(report);
        }
        for b in cs {
            if seen.insert(b.cycle.key()) {
                own.push(b);
            }
        }
    }
    let mut cycles = own.clone();
    for f in crate::kempe::kempe_class_members(g, &f0)? {
        for b in bichromatic_cycles(g, &f)? {
            if b.cycle.key() != outer_key && seen.insert(b.cycle.key()) {
                cycles.push(b);
            }
        }
    }
    report.class_cycles = cycles.iter().map(|b| b.cycle.clone()).collect();
    let catalog = mates(mate_bound)?;
    for b in &own {
        if witness_ub_cycle(s, &catalog, &b.cycle)? {
            report.ub_cycles.push(b.cycle.clone());
        }
    }
    if report.ub_cycles.is_empty() {
        report.kind = ModuleKind::CyclicCycle;
        report.shells = shells(s, &report.class_cycles)?;
    } else {
        report.kind = ModuleKind::Cycle;
    }
    report.path_kind = path_kind(s, &report, &cycles)?;
    Ok(report)
}

fn path_kind(s: &SmpgView, report: &BaseModuleReport, cycles: &[BichromaticCycle]) -> Result<PathKind> {
    let first = &report.module_paths[0].families;
    let single = |fam: &[EndpointPathFamily; 2]| fam.iter().all(|p| p.paths.len() == 1);
    let same = report
        .module_paths
        .iter()
        .all(|m| single(&m.families) && m.families[0].paths == first[0].paths && m.families[1].paths == first[1].paths);
    if !same {
        return Ok(PathKind::Other);
    }
    let path_vertices: VertexSet = first.iter().flat_map(|p| p.paths[0].iter().copied()).collect();
    if cycles.iter().all(|b| b.cycle.interior.is_disjoint(path_vertices)) {
        return Ok(PathKind::Smp);
    }
    // Every pair of module colorings must be joined by sigma-operations on
    // cycles touching the paths, each step staying a module coloring with
    // the same paths.
    let c = report.corners;
    let members: BTreeSet<Coloring> = report.module_paths.iter().map(|m| m.coloring.clone()).collect();
    let touching: Vec<&BichromaticCycle> = cycles
        .iter()
        .filter(|b| !b.cycle.vertex_set().union(b.cycle.interior).is_disjoint(path_vertices))
        .collect();
    let start = report.module_paths[0].coloring.clone();
    let mut reached = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for b in &touching {
            if !b.is_bichromatic_under(&f) {
                continue;
            }
            let h = sigma_operation(&s.graph, &f, b)?;
            let Some(h) = normalize_f2(&h, c) else { continue };
            if members.contains(&h) && !reached.contains(&h) {
                reached.insert(h.clone());
                stack.push(h);
            }
        }
    }
    Ok(if reached.len() == members.len() {
        PathKind::Mmp
    } else {
        PathKind::Other
    })
}

/// Boundaries of the unions of the closed disks bounded by `cycles`.
/// Disks sharing an inner face or edge are merged; each union is filled
/// in before its boundary is read off.
pub fn shells(s: &SmpgView, cycles: &[Cycle]) -> Result<Vec<Cycle>> {
    let g = &s.graph;
    let outer = g.outer_face();
    let disks: Vec<Vec<bool>> = cycles.iter().map(|c| disk_faces(g, c)).collect();
    let mut covered = vec![false; g.face_count()];
    for d in &disks {
        for (f, &x) in d.iter().enumerate() {
            covered[f] |= x;
        }
    }
    // Group covered faces into edge-connected regions.
    let mut region = vec![usize::MAX; g.face_count()];
    let mut regions = 0;
    for f0 in g.faces() {
        if !covered[f0] || region[f0] != usize::MAX {
            continue;
        }
        region[f0] = regions;
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for d in g.face_darts(f) {
                let h = g.face_of(d ^ 1);
                if covered[h] && region[h] == usize::MAX {
                    region[h] = regions;
                    stack.push(h);
                }
            }
        }
        regions += 1;
    }
    let mut out = Vec::new();
    for r in 0..regions {
        // Fill holes: faces not reachable from the outer face without
        // entering the region belong to it.
        let free = outer_region(g, |d| region[g.face_of(d ^ 1)] == r);
        let filled: Vec<bool> = g.faces().map(|f| f != outer && !free[f]).collect();
        let boundary: Vec<usize> = (0..g.dart_count())
            .filter(|&d| filled[g.face_of(d)] && !filled[g.face_of(d ^ 1)])
            .collect();
        match boundary_cycle(g, &boundary) {
            Some(vs) => out.push(crate::embedding::cycle_sides(g, &vs)?),
            None => {
                // Pinched union: fall back to the maximal member cycles.
                for (i, c) in cycles.iter().enumerate() {
                    let inside_region = disks[i].iter().enumerate().any(|(f, &x)| x && region[f] == r);
                    let maximal = !cycles.iter().enumerate().any(|(j, _)| {
                        j != i && disks[j].iter().zip(&disks[i]).all(|(&a, &b)| a || !b) && disks[j] != disks[i]
                    });
                    if inside_region && maximal {
                        out.push(c.clone());
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| c.key());
    out.dedup_by_key(|c| c.key());
    Ok(out)
}

/// Inner faces enclosed by a cycle.
fn disk_faces(g: &PlaneGraph, c: &Cycle) -> Vec<bool> {
    let k = c.len();
    let mut cut = HashSet::new();
    for i in 0..k {
        if let Some(d) = g.find_dart(c.vertices[i], c.vertices[(i + 1) % k]) {
            cut.insert(d / 2);
        }
    }
    let free = outer_region(g, |d| cut.contains(&(d / 2)));
    free.iter().map(|&x| !x).collect()
}

/// Orders boundary darts into one simple closed walk, if they form one.
fn boundary_cycle(g: &PlaneGraph, darts: &[usize]) -> Option<Vec<VertexId>> {
    let mut next: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &d in darts {
        if next.insert(g.origin(d), d).is_some() {
            return None;
        }
    }
    let &start = darts.first()?;
    let mut vs = vec![g.origin(start)];
    let mut d = start;
    loop {
        let v = g.target(d);
        if v == g.origin(start) {
            break;
        }
        vs.push(v);
        d = *next.get(&v)?;
    }
    (vs.len() == darts.len()).then_some(vs)
}

/// All SMPGs bounded by a 4-cycle with at most `k` interior vertices, up
/// to rooted isomorphism.
pub fn mates(k: usize) -> Result<Vec<SmpgView>> {
    let run = generate(&GenerateOptions::new(5 + k))?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in run.all() {
        for w in 0..h.n() {
            if h.degree(w) != 4 {
                continue;
            }
            let s = SmpgView::from_mpg_deleting(h, w)?;
            if seen.insert(s.graph.canonical_form_rooted()) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Glues `mate` into the outer face of `module`, matching mate corner
/// `(i * dir + shift) mod 4` with module corner `i`. Mate interior
/// vertices are appended after the module's. Fails if the union is not
/// simple.
pub fn glue(module: &SmpgView, mate: &SmpgView, shift: usize, reverse: bool) -> Result<PlaneGraph> {
    let c = corners(module)?;
    let m = corners(mate)?;
    let g = &module.graph;
    let h = &mate.graph;
    let mut map = vec![usize::MAX; h.n()];
    for i in 0..4 {
        let j = if reverse { (shift + 4 - i) % 4 } else { (shift + i) % 4 };
        map[m[j]] = c[i];
    }
    let mut n = g.n();
    for v in 0..h.n() {
        if map[v] == usize::MAX {
            map[v] = n;
            n += 1;
        }
    }
    let mut faces: Vec<Vec<VertexId>> = g
        .faces()
        .filter(|&f| f != g.outer_face())
        .map(|f| g.face_vertices(f))
        .collect();
    let first = faces[0].clone();
    for f in h.faces().filter(|&f| f != h.outer_face()) {
        let mut vs: Vec<VertexId> = h.face_vertices(f).into_iter().map(|v| map[v]).collect();
        // Mate faces keep the mate's orientation only when its corner order
        // runs against the module's.
        if !reverse {
            vs.reverse();
        }
        faces.push(vs);
    }
    PlaneGraph::from_faces(n, &faces, &first)
}

/// A coloring of `g` under which `cycle` stays two-colored across its whole
/// Kempe class, if any.
pub fn ub_coloring_for(g: &PlaneGraph, cycle: &[VertexId]) -> Result<Option<Coloring>> {
    for class in kempe_partition(g)? {
        let two = |f: &Coloring| cycle.iter().map(|&v| f.get(v)).collect::<BTreeSet<_>>().len() == 2;
        if class.iter().all(two) {
            return Ok(Some(class[0].clone()));
        }
    }
    Ok(None)
}

/// Every placement of every mate in `catalog` into the outer face that
/// yields a simple triangulation.
pub fn glued_unions<'a>(
    module: &'a SmpgView,
    catalog: &'a [SmpgView],
) -> impl Iterator<Item = (usize, PlaneGraph)> + 'a {
    catalog.iter().enumerate().flat_map(move |(i, mate)| {
        (0..8).filter_map(move |k| glue(module, mate, k % 4, k >= 4).ok().map(|u| (i, u)))
    })
}

/// A mate from `catalog` whose union with the module keeps the outer
/// 4-cycle as a UB-cycle; returns the union and the coloring.
pub fn find_mate(s: &SmpgView, catalog: &[SmpgView]) -> Result<Option<(PlaneGraph, Coloring)>> {
    let c = corners(s)?;
    for (_, u) in glued_unions(s, catalog) {
        if let Some(f) = ub_coloring_for(&u, &c)? {
            return Ok(Some((u, f)));
        }
    }
    Ok(None)
}

fn witness_ub_cycle(s: &SmpgView, catalog: &[SmpgView], cycle: &Cycle) -> Result<bool> {
    let c = corners(s)?;
    for (_, u) in glued_unions(s, catalog) {
        if ub_coloring_for(&u, &c)?.is_some() && ub_coloring_for(&u, &cycle.vertices)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Glues the identity module so that its spine joins the corners that the
/// module's paths avoid.
pub fn glue_identity(s: &SmpgView, pair: SharedPair) -> Result<PlaneGraph> {
    let b4 = crate::fixtures::b4_smpg();
    let shift = match pair {
        SharedPair::V2V4 => 0,
        SharedPair::V1V3 => 1,
    };
    glue(s, &b4, shift, false)
}

/// A K-change on the module that keeps the coloring in `F2`, normalized.
pub fn module_kempe_change(s: &SmpgView, f: &Coloring, comp: &IjComponent) -> Result<Option<Coloring>> {
    let h = kempe_change(&s.graph, f, comp)?;
    Ok(normalize_f2(&h, corners(s)?))
}
