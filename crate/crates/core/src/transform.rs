//! Four-coloring of triangulations with minimum degree five through a
//! 4-base module.
//!
//! The pipeline removes a degree-5 vertex `v2` of a 55- or 56-configuration,
//! colors the rest, rotates the coloring of the link 5-cycle by K-changes
//! until its repeated color sits on `v3 v1` around `v4`, splits `v4` with a
//! 4-wheel, cuts out the module bounded by `v1 v2 v3 v4`, finds a coloring
//! of the module giving `v2` and `v4` different colors, and contracts the
//! wheel again.
//!
//! Vertex numbers inside a [`TransformTrace`] are 1-based.

use crate::base_module::{endpoint_paths, is_4_base_module};
use crate::ce_ops::{c4wo_graph, e4wo_graph};
use crate::coloring::{component_at, first_coloring, for_each_coloring, least_free, Color, Coloring};
use crate::embedding::surgery::Surgery;
use crate::embedding::{validate_mpg, DartId, PlaneGraph, SmpgView, VertexId};
use crate::error::{Error, Result};
use crate::kempe::kempe_neighbors;
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// A degree-5 vertex with a neighbor of degree 5 or 6.
///
/// `rim` lists the link of `v2` in rotation order as `[x1, y1, v3, v4, v1]`,
/// where `x1` is the configuration partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WernickeConfig {
    pub kind: u8,
    pub v2: VertexId,
    pub rim: [VertexId; 5],
}

impl WernickeConfig {
    pub fn x1(&self) -> VertexId {
        self.rim[0]
    }
    pub fn y1(&self) -> VertexId {
        self.rim[1]
    }
    pub fn v3(&self) -> VertexId {
        self.rim[2]
    }
    pub fn v4(&self) -> VertexId {
        self.rim[3]
    }
    pub fn v1(&self) -> VertexId {
        self.rim[4]
    }
}

fn require_min_degree_five(g: &PlaneGraph) -> Result<()> {
    if !validate_mpg(g).is_mpg {
        return Err(Error::Precondition("input is not a maximal planar graph".into()));
    }
    if g.min_degree() != 5 {
        return Err(Error::Precondition(format!(
            "minimum degree must be 5 (got {})",
            g.min_degree()
        )));
    }
    Ok(())
}

fn link(g: &PlaneGraph, v2: VertexId, start: VertexId) -> [VertexId; 5] {
    let nb: Vec<VertexId> = g.neighbors(v2).collect();
    let i = nb.iter().position(|&w| w == start).expect("start is a neighbor");
    std::array::from_fn(|k| nb[(i + k) % 5])
}

/// The 55-configuration at the least possible `v2`, else the 56 one.
pub fn find_wernicke_config(g: &PlaneGraph) -> Result<WernickeConfig> {
    require_min_degree_five(g)?;
    for partner in [5usize, 6] {
        for v2 in (0..g.n()).filter(|&v| g.degree(v) == 5) {
            if let Some(x1) = g.neighbors(v2).filter(|&w| g.degree(w) == partner).min() {
                return Ok(WernickeConfig {
                    kind: (50 + partner) as u8,
                    v2,
                    rim: link(g, v2, x1),
                });
            }
        }
    }
    Err(Error::Alarm("no 55- or 56-configuration in a triangulation with minimum degree 5".into()))
}

/// Triangle types `555`, `556`, `557`, `566` occurring as faces of `g`.
pub fn borodin_config_scan(g: &PlaneGraph) -> Result<BTreeSet<u16>> {
    require_min_degree_five(g)?;
    let mut out = BTreeSet::new();
    for f in g.faces() {
        let mut d: Vec<usize> = g.face_vertices(f).iter().map(|&v| g.degree(v)).collect();
        d.sort_unstable();
        let code = (d[0] * 100 + d[1] * 10 + d[2]) as u16;
        if [555, 556, 557, 566].contains(&code) {
            out.insert(code);
        }
    }
    Ok(out)
}

/// One recorded K-change: the swapped pair and the component's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KChange {
    pub pair: (Color, Color),
    pub vertices: VertexSet,
}

impl KChange {
    fn apply(&self, f: &Coloring) -> Coloring {
        f.swapped_on(self.vertices, self.pair.0, self.pair.1)
    }
}

/// Position (index into `rim`) of the middle of the bichromatic 2-path of
/// the link, or `None` when the link uses at most three colors.
pub fn two_path_center(f: &Coloring, rim: &[VertexId; 5]) -> Option<usize> {
    let distinct: BTreeSet<Color> = rim.iter().map(|&v| f.get(v)).collect();
    if distinct.len() < 4 {
        return None;
    }
    (0..5).find(|&i| f.get(rim[(i + 4) % 5]) == f.get(rim[(i + 1) % 5]))
}

fn kchange_at(g: &PlaneGraph, f: &Coloring, v: VertexId, other: Color) -> KChange {
    let comp = component_at(g, f, v, f.get(v), other).expect("vertex carries one of the pair");
    KChange {
        pair: (f.get(v), other),
        vertices: comp.vertices,
    }
}

/// Outcome of one step of the rotation around the link.
#[derive(Clone, Debug)]
pub enum RotationStep {
    /// The center of the 2-path is not joined to the rim vertex two back;
    /// swapping its component leaves three colors on the link.
    Reduced(KChange),
    /// The 2-path moved two positions back.
    Rotated(KChange),
}

/// One step for a link coloring whose 2-path is centered at `i`. `f` may
/// leave the center vertex of the wheel uncolored (color 0).
pub fn rotation_step(g: &PlaneGraph, rim: &[VertexId; 5], f: &Coloring, i: usize) -> Result<RotationStep> {
    let (center, back2) = (rim[i], rim[(i + 3) % 5]);
    let k = kchange_at(g, f, center, f.get(back2));
    if !k.vertices.contains(back2) {
        return Ok(RotationStep::Reduced(k));
    }
    let (p, q) = (rim[(i + 4) % 5], rim[(i + 2) % 5]);
    let k = kchange_at(g, f, p, f.get(q));
    if k.vertices.contains(q) {
        return Err(Error::Alarm(format!(
            "vertex {} is joined to {} by a {}{}-path and to {} by a {}{}-path, which planarity excludes",
            center + 1,
            back2 + 1,
            f.get(center),
            f.get(back2),
            q + 1,
            k.pair.0,
            k.pair.1
        )));
    }
    Ok(RotationStep::Rotated(k))
}

#[derive(Clone, Debug)]
pub struct Rotation {
    pub coloring: Coloring,
    pub steps: Vec<KChange>,
    /// True when the link ended with at most three colors.
    pub reduced: bool,
}

/// K-changes that bring the 2-path of the link to `v3 v4 v1`, or reduce the
/// link to three colors on the way.
pub fn rotate_to_bichromatic_path(g: &PlaneGraph, cfg: &WernickeConfig, f: &Coloring) -> Result<Rotation> {
    let mut f = f.clone();
    let mut steps = Vec::new();
    for _ in 0..5 {
        let Some(i) = two_path_center(&f, &cfg.rim) else {
            return Ok(Rotation {
                coloring: f,
                steps,
                reduced: true,
            });
        };
        if i == 3 {
            return Ok(Rotation {
                coloring: f,
                steps,
                reduced: false,
            });
        }
        match rotation_step(g, &cfg.rim, &f, i)? {
            RotationStep::Reduced(k) => {
                f = k.apply(&f);
                steps.push(k);
                if two_path_center(&f, &cfg.rim).is_some() {
                    return Err(Error::Alarm("K-change at the 2-path center left four link colors".into()));
                }
                return Ok(Rotation {
                    coloring: f,
                    steps,
                    reduced: true,
                });
            }
            RotationStep::Rotated(k) => {
                f = k.apply(&f);
                steps.push(k);
                if two_path_center(&f, &cfg.rim) != Some((i + 3) % 5) {
                    return Err(Error::Alarm("rotation K-change did not move the 2-path".into()));
                }
            }
        }
    }
    Err(Error::Alarm("the 2-path never reached v3 v4 v1".into()))
}

/// Renames colors so that `v3, v1 -> 1`, `v4 -> 2`, `x1 -> 3`, `y1 -> 4`.
fn normalize_link(f: &Coloring, cfg: &WernickeConfig) -> Coloring {
    let mut perm = [0u8; 5];
    perm[f.get(cfg.v3()) as usize] = 1;
    perm[f.get(cfg.v4()) as usize] = 2;
    perm[f.get(cfg.x1()) as usize] = 3;
    perm[f.get(cfg.y1()) as usize] = 4;
    f.permuted(&perm)
}

/// `G*`, its coloring `f''`, and the module `G* - {x, v4'}` bounded by
/// `v1 v2 v3 v4`. Module vertices keep their ids in `g`.
#[derive(Clone, Debug)]
pub struct ExtractedModule {
    pub gstar: PlaneGraph,
    pub split: VertexId,
    pub center: VertexId,
    pub f2: Coloring,
    pub module: SmpgView,
}

fn dart_between(g: &PlaneGraph, u: VertexId, v: VertexId) -> Result<DartId> {
    g.find_dart(u, v)
        .ok_or_else(|| Error::Alarm(format!("expected edge {}-{} is missing", u + 1, v + 1)))
}

fn split_v4(g: &PlaneGraph, cfg: &WernickeConfig) -> Result<(PlaneGraph, VertexId, VertexId)> {
    let e = dart_between(g, cfg.v4(), cfg.v2)?;
    let (gstar, split, center) = e4wo_graph(g, g.next(e), g.prev(e))?;
    let n = g.n();
    if split != n || center != n + 1 {
        return Err(Error::Alarm("4-wheel extension renumbered existing vertices".into()));
    }
    let split_nb: BTreeSet<VertexId> = gstar.neighbors(split).collect();
    let want: BTreeSet<VertexId> = [cfg.v1(), cfg.v2, cfg.v3(), center].into();
    if split_nb != want {
        return Err(Error::Alarm("split copy of v4 is not adjacent to exactly v1, v2, v3 and x".into()));
    }
    Ok((gstar, split, center))
}

/// The module `gstar - {split, center}` with the hole as outer face, read
/// from `v1`.
fn cut_module(gstar: &PlaneGraph, cfg: &WernickeConfig, split: VertexId, center: VertexId) -> Result<SmpgView> {
    let mut s = Surgery::new(gstar);
    s.remove_vertex(center);
    s.remove_vertex(split);
    let (h, _) = s.finish(&[])?;
    let hole = h
        .faces()
        .find(|&f| h.face_len(f) == 4)
        .ok_or_else(|| Error::Alarm("removing x and v4' left no 4-face".into()))?;
    let d = h
        .face_darts(hole)
        .into_iter()
        .find(|&d| h.origin(d) == cfg.v1())
        .ok_or_else(|| Error::Alarm("v1 is not on the module boundary".into()))?;
    let module = SmpgView::new(h.with_outer_dart(d))
        .map_err(|e| Error::Alarm(format!("module is not a valid SMPG: {e}")))?;
    let ring: BTreeSet<VertexId> = module.outer_cycle.vertices.iter().copied().collect();
    let want: BTreeSet<VertexId> = [cfg.v1(), cfg.v2, cfg.v3(), cfg.v4()].into();
    if ring != want {
        return Err(Error::Alarm("module boundary is not v1 v2 v3 v4".into()));
    }
    Ok(module)
}

/// Splits `v4` and builds `f''`. `f` must be normalized with the 2-path at
/// `v3 v4 v1` and `v2` uncolored.
pub fn extract_module(g: &PlaneGraph, cfg: &WernickeConfig, f: &Coloring) -> Result<ExtractedModule> {
    let (gstar, split, center) = split_v4(g, cfg)?;
    let mut cols = f.colors().to_vec();
    cols.resize(gstar.n(), 0);
    cols[split] = 3;
    cols[cfg.v2] = 2;
    cols[center] = 4;
    let f2 = Coloring(cols);
    if !f2.is_proper(&gstar) {
        return Err(Error::Alarm("recolored 5-cycle does not give a proper coloring of G*".into()));
    }
    let module = cut_module(&gstar, cfg, split, center)?;
    if module.graph.degree(cfg.v2) != 4 {
        return Err(Error::Alarm(format!(
            "v2 has degree {} in the module, expected 4",
            module.graph.degree(cfg.v2)
        )));
    }
    Ok(ExtractedModule {
        gstar,
        split,
        center,
        f2,
        module,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecycleMethod {
    /// Kempe-class search from `f''`, used when the module is not a 4-base
    /// module.
    ClassSearch,
    /// Two K-changes and a recoloring of `v2`, for parallel module paths.
    Constructive,
    Exhaustive,
}

fn module_coloring(f2: &Coloring, n: usize) -> Coloring {
    Coloring(f2.colors()[..n].to_vec())
}

fn class_search(g: &PlaneGraph, f: &Coloring, v2: VertexId, v4: VertexId) -> Option<Coloring> {
    let adj = g.adjacency_sets();
    let mut seen = HashSet::from([f.canonical()]);
    let mut queue = VecDeque::from([f.clone()]);
    while let Some(h) = queue.pop_front() {
        if h.get(v2) != h.get(v4) {
            return Some(h);
        }
        for k in kempe_neighbors(&adj, &h) {
            if seen.insert(k.canonical()) {
                queue.push_back(k);
            }
        }
    }
    None
}

/// Parallel module paths: a 23-path and a 24-path between `v2` and `v4`
/// sharing only their ends.
fn parallel_module_paths(s: &SmpgView, f: &Coloring) -> Result<bool> {
    let fam = endpoint_paths(s, f)?;
    let inner = |p: &Vec<VertexId>| -> VertexSet { p[1..p.len() - 1].iter().copied().collect() };
    Ok(fam[2]
        .paths
        .iter()
        .any(|a| fam[3].paths.iter().any(|b| inner(a).is_disjoint(inner(b)))))
}

fn constructive(g: &PlaneGraph, cfg: &WernickeConfig, f: &Coloring) -> Result<Coloring> {
    let k = kchange_at(g, f, cfg.v1(), 4);
    let f = k.apply(f);
    let k = kchange_at(g, &f, cfg.v3(), if f.get(cfg.v3()) == 1 { 3 } else { 1 });
    let mut f = k.apply(&f);
    f.0[cfg.v2] = 1;
    if !f.is_proper(g) || f.get(cfg.v2) == f.get(cfg.v4()) {
        return Err(Error::Alarm(
            "parallel module paths, but the two K-changes did not free color 1 at v2".into(),
        ));
    }
    Ok(f)
}

fn exhaustive(g: &PlaneGraph, v2: VertexId, v4: VertexId) -> Result<Option<Coloring>> {
    let mut out = None;
    for_each_coloring(g, &vec![None; g.n()], &mut |c| {
        if c[v2] != c[v4] {
            out = Some(Coloring(c.to_vec()));
            false
        } else {
            true
        }
    })?;
    Ok(out)
}

/// A module coloring `f*` with `f*(v2) != f*(v4)`.
pub fn decycle(s: &SmpgView, cfg: &WernickeConfig, f2: &Coloring) -> Result<(Coloring, DecycleMethod)> {
    let g = &s.graph;
    let f = module_coloring(f2, g.n());
    if !f.is_proper(g) {
        return Err(Error::Precondition("module coloring is not proper".into()));
    }
    let (v2, v4) = (cfg.v2, cfg.v4());
    if !is_4_base_module(s)?.is_4_base_module {
        if let Some(h) = class_search(g, &f, v2, v4) {
            return Ok((h, DecycleMethod::ClassSearch));
        }
    } else if g.degree(v2) == 4 && parallel_module_paths(s, &f)? {
        return Ok((constructive(g, cfg, &f)?, DecycleMethod::Constructive));
    }
    match exhaustive(g, v2, v4)? {
        Some(h) => Ok((h, DecycleMethod::Exhaustive)),
        None => Err(Error::Alarm("module has no coloring separating v2 and v4".into())),
    }
}

/// Extends `f*` to `G*` and contracts the 4-wheel at `x`, merging `v4'`
/// into `v4`.
pub fn restore_and_color(
    g: &PlaneGraph,
    cfg: &WernickeConfig,
    m: &ExtractedModule,
    fstar: &Coloring,
) -> Result<Coloring> {
    let mut cols = fstar.colors().to_vec();
    cols.resize(m.gstar.n(), 0);
    cols[m.split] = cols[cfg.v4()];
    let rim: Vec<Color> = m.gstar.neighbors(m.center).map(|w| cols[w]).collect();
    cols[m.center] = least_free(rim).ok_or_else(|| Error::Alarm("4-wheel rim uses four colors".into()))?;
    let full = Coloring(cols);
    if !full.is_proper(&m.gstar) {
        return Err(Error::Alarm("decycle coloring does not extend to G*".into()));
    }
    if full.get(cfg.v4()) != full.get(m.split) {
        return Err(Error::Alarm("v4 and its copy differ before contraction".into()));
    }
    let (h, vmap) = c4wo_graph(&m.gstar, m.center, cfg.v4(), m.split)?;
    if h.canonical_form() != g.canonical_form() || (0..g.n()).any(|v| vmap[v] != Some(v)) {
        return Err(Error::Alarm("contracting the 4-wheel did not give back the input".into()));
    }
    let out = Coloring(full.colors()[..g.n()].to_vec());
    if !out.is_proper(g) {
        return Err(Error::Alarm("restored coloring is not proper".into()));
    }
    Ok(out)
}

/// The triangulation `g - v2` with the hole fanned from one rim vertex, if
/// some fan keeps minimum degree 5. Vertices above `v2` shift down by one.
pub fn host_without(g: &PlaneGraph, v2: VertexId) -> Option<PlaneGraph> {
    let rim: Vec<VertexId> = g.neighbors(v2).collect();
    let k = rim.len();
    let shift = |v: VertexId| if v > v2 { v - 1 } else { v };
    // Rim successor in the orientation of the faces around v2.
    let mut succ = vec![usize::MAX; g.n()];
    let mut kept = Vec::new();
    for f in g.faces() {
        let vs = g.face_vertices(f);
        if let Some(i) = vs.iter().position(|&v| v == v2) {
            succ[vs[(i + 1) % 3]] = vs[(i + 2) % 3];
        } else {
            kept.push(vs.iter().map(|&v| shift(v)).collect::<Vec<_>>());
        }
    }
    for &r in &rim {
        let walk: Vec<VertexId> = std::iter::successors(Some(r), |&v| Some(succ[v])).take(k).collect();
        if g.has_edge(r, walk[2]) || g.has_edge(r, walk[3]) {
            continue;
        }
        if g.degree(walk[1]) < 6 || g.degree(walk[k - 1]) < 6 {
            continue;
        }
        let mut faces = kept.clone();
        for j in 1..k - 1 {
            faces.push(vec![shift(r), shift(walk[j]), shift(walk[j + 1])]);
        }
        let outer = faces[0].clone();
        if let Ok(h) = PlaneGraph::from_faces(g.n() - 1, &faces, &outer) {
            if h.min_degree() == 5 && validate_mpg(&h).is_mpg {
                return Some(h);
            }
        }
    }
    None
}

fn zero_based(vs: &[usize]) -> Result<Vec<VertexId>> {
    vs.iter()
        .map(|&v| {
            v.checked_sub(1)
                .ok_or_else(|| Error::Precondition("trace vertex numbers are 1-based".into()))
        })
        .collect()
}

fn one_based(vs: impl IntoIterator<Item = VertexId>) -> Vec<usize> {
    vs.into_iter().map(|v| v + 1).collect()
}

/// How the coloring of `g - v2` was obtained.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BaseColoring {
    /// From the pipeline run on the host triangulation (see
    /// [`host_without`]); `coloring` is the restriction to `g - v2`.
    Recursion { coloring: Vec<Color>, host: Box<TransformTrace> },
    Backtracking { coloring: Vec<Color> },
    /// First coloring of `g - v2` whose link 2-path is already centered at
    /// `v4` (see [`TransformOptions::force_module`]).
    Search { coloring: Vec<Color> },
}

impl BaseColoring {
    pub fn coloring(&self) -> &[Color] {
        match self {
            BaseColoring::Recursion { coloring, .. }
            | BaseColoring::Backtracking { coloring }
            | BaseColoring::Search { coloring } => coloring,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum TraceStep {
    ConfigFound {
        config: u8,
        v2: usize,
        /// `[x1, y1, v3, v4, v1]`.
        rim: [usize; 5],
    },
    Kchange {
        pair: [Color; 2],
        vertices: Vec<usize>,
    },
    /// Colors `vertex` directly; ends the run.
    Extend { vertex: usize, color: Color },
    E4wo {
        path: [usize; 3],
        split: usize,
        center: usize,
        order: usize,
    },
    /// `coloring` is `f''` on `G*`.
    ModuleExtracted {
        boundary: Vec<usize>,
        degree_v2: usize,
        degree_v3: usize,
        coloring: Vec<Color>,
    },
    Decycle {
        method: DecycleMethod,
        coloring: Vec<Color>,
    },
    C4wo {
        center: usize,
        merged: [usize; 2],
        coloring: Vec<Color>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformTrace {
    /// Input triangulation in `.rot` format.
    pub input: String,
    pub base: BaseColoring,
    pub steps: Vec<TraceStep>,
    pub output: Vec<Color>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TransformOptions {
    /// Start from a coloring of `g - v2` whose link is four-colored with
    /// the 2-path at `v3 v4 v1`, when one exists, so that the module steps
    /// run instead of a direct extension.
    pub force_module: bool,
}

fn base_coloring(g: &PlaneGraph, cfg: &WernickeConfig, opts: TransformOptions) -> Result<BaseColoring> {
    let v2 = cfg.v2;
    let lift = |h: &Coloring| -> Vec<Color> {
        (0..g.n())
            .map(|v| match v.cmp(&v2) {
                std::cmp::Ordering::Less => h.get(v),
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => h.get(v - 1),
            })
            .collect()
    };
    let s = SmpgView::from_mpg_deleting(g, v2)?;
    if opts.force_module {
        let mut found = None;
        for_each_coloring(&s.graph, &vec![None; s.graph.n()], &mut |c| {
            let f = Coloring(lift(&Coloring(c.to_vec())));
            if two_path_center(&f, &cfg.rim) == Some(3) {
                found = Some(f);
                false
            } else {
                true
            }
        })?;
        if let Some(f) = found {
            return Ok(BaseColoring::Search { coloring: f.0 });
        }
    }
    if let Some(host) = host_without(g, v2) {
        let (h, trace) = transform_with(&host, opts)?;
        return Ok(BaseColoring::Recursion {
            coloring: lift(&h),
            host: Box::new(trace),
        });
    }
    let h = first_coloring(&s.graph)?
        .ok_or_else(|| Error::Alarm("a planar graph has no 4-coloring".into()))?;
    Ok(BaseColoring::Backtracking { coloring: lift(&h) })
}

fn proper_off(g: &PlaneGraph, f: &Coloring, skip: VertexId) -> bool {
    (0..g.n()).all(|v| {
        if v == skip {
            return f.get(v) == 0;
        }
        (1..=4).contains(&f.get(v)) && g.neighbors(v).all(|w| w == skip || f.get(w) != f.get(v))
    })
}

fn kchange_step(k: &KChange) -> TraceStep {
    TraceStep::Kchange {
        pair: [k.pair.0, k.pair.1],
        vertices: one_based(k.vertices.iter()),
    }
}

/// Colors `v2` with the least color missing on its link.
fn extend_v2(g: &PlaneGraph, v2: VertexId, f: &Coloring) -> Result<(Coloring, TraceStep)> {
    let c = least_free(g.neighbors(v2).map(|w| f.get(w)))
        .ok_or_else(|| Error::Alarm("link of v2 still uses four colors".into()))?;
    let mut out = f.clone();
    out.0[v2] = c;
    Ok((out, TraceStep::Extend { vertex: v2 + 1, color: c }))
}

/// Runs the pipeline on `g`, returning a proper coloring and its trace.
pub fn transform(g: &PlaneGraph) -> Result<(Coloring, TransformTrace)> {
    transform_with(g, TransformOptions::default())
}

pub fn transform_with(g: &PlaneGraph, opts: TransformOptions) -> Result<(Coloring, TransformTrace)> {
    let cfg = find_wernicke_config(g)?;
    let mut steps = vec![TraceStep::ConfigFound {
        config: cfg.kind,
        v2: cfg.v2 + 1,
        rim: std::array::from_fn(|i| cfg.rim[i] + 1),
    }];
    let base = base_coloring(g, &cfg, opts)?;
    let f = Coloring(base.coloring().to_vec());
    if !proper_off(g, &f, cfg.v2) {
        return Err(Error::Alarm("base coloring of g - v2 is not proper".into()));
    }
    let rot = rotate_to_bichromatic_path(g, &cfg, &f)?;
    steps.extend(rot.steps.iter().map(kchange_step));
    let out = if rot.reduced {
        let (out, step) = extend_v2(g, cfg.v2, &rot.coloring)?;
        steps.push(step);
        out
    } else {
        let f = normalize_link(&rot.coloring, &cfg);
        let m = extract_module(g, &cfg, &f)?;
        steps.push(TraceStep::E4wo {
            path: [cfg.v3() + 1, cfg.v4() + 1, cfg.v1() + 1],
            split: m.split + 1,
            center: m.center + 1,
            order: m.gstar.n(),
        });
        steps.push(TraceStep::ModuleExtracted {
            boundary: one_based(m.module.outer_cycle.vertices.iter().copied()),
            degree_v2: m.module.graph.degree(cfg.v2),
            degree_v3: m.module.graph.degree(cfg.v3()),
            coloring: m.f2.colors().to_vec(),
        });
        let (fstar, method) = decycle(&m.module, &cfg, &m.f2)?;
        steps.push(TraceStep::Decycle {
            method,
            coloring: fstar.colors().to_vec(),
        });
        let out = restore_and_color(g, &cfg, &m, &fstar)?;
        steps.push(TraceStep::C4wo {
            center: m.center + 1,
            merged: [cfg.v4() + 1, m.split + 1],
            coloring: out.colors().to_vec(),
        });
        out
    };
    let trace = TransformTrace {
        input: g.to_rot_string(),
        base,
        steps,
        output: out.colors().to_vec(),
    };
    Ok((out, trace))
}

fn replay_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(format!("trace does not replay: {}", msg.into())))
}

/// Re-executes a trace against its input and returns the final coloring.
/// Every recorded intermediate state is checked.
pub fn replay(trace: &TransformTrace) -> Result<Coloring> {
    let g = PlaneGraph::parse_rot(&trace.input)?;
    let Some(TraceStep::ConfigFound { config, v2, rim }) = trace.steps.first() else {
        return replay_err("first step must be config_found");
    };
    let cfg = find_wernicke_config(&g)?;
    let rim0 = zero_based(rim)?;
    if *config != cfg.kind || v2.checked_sub(1) != Some(cfg.v2) || rim0 != cfg.rim {
        return replay_err("recorded configuration differs");
    }
    if let BaseColoring::Recursion { coloring, host } = &trace.base {
        let h = replay(host)?;
        let expect: Vec<Color> = (0..g.n())
            .map(|v| match v.cmp(&cfg.v2) {
                std::cmp::Ordering::Less => h.get(v),
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => h.get(v - 1),
            })
            .collect();
        if &expect != coloring {
            return replay_err("base coloring is not the host coloring");
        }
    }
    let mut f = Coloring(trace.base.coloring().to_vec());
    if f.len() != g.n() || !proper_off(&g, &f, cfg.v2) {
        return replay_err("base coloring is not a proper coloring of g - v2");
    }
    let mut module: Option<ExtractedModule> = None;
    let mut done = false;
    for step in &trace.steps[1..] {
        if done {
            return replay_err("steps after the final coloring");
        }
        match step {
            TraceStep::ConfigFound { .. } => return replay_err("repeated config_found"),
            TraceStep::Kchange { pair, vertices } => {
                let vs: VertexSet = zero_based(vertices)?.into_iter().collect();
                let Some(v) = vs.first() else {
                    return replay_err("empty K-change");
                };
                match component_at(&g, &f, v, pair[0], pair[1]) {
                    Some(c) if c.vertices == vs => {}
                    _ => return replay_err("K-change vertices are not a component"),
                }
                f = f.swapped_on(vs, pair[0], pair[1]);
            }
            TraceStep::Extend { vertex, color } => {
                let (out, _) = extend_v2(&g, cfg.v2, &f)?;
                if *vertex != cfg.v2 + 1 || out.get(cfg.v2) != *color {
                    return replay_err("extension differs");
                }
                f = out;
                done = true;
            }
            TraceStep::E4wo { split, center, order, .. } => {
                if two_path_center(&f, &cfg.rim) != Some(3) {
                    return replay_err("2-path is not at v3 v4 v1 before the split");
                }
                let norm = normalize_link(&f, &cfg);
                let m = extract_module(&g, &cfg, &norm)?;
                if *split != m.split + 1 || *center != m.center + 1 || *order != m.gstar.n() {
                    return replay_err("4-wheel extension differs");
                }
                module = Some(m);
            }
            TraceStep::ModuleExtracted { coloring, .. } => {
                let Some(m) = &module else {
                    return replay_err("module before e4wo");
                };
                if coloring != m.f2.colors() {
                    return replay_err("f'' differs");
                }
            }
            TraceStep::Decycle { coloring, .. } => {
                let Some(m) = &module else {
                    return replay_err("decycle before e4wo");
                };
                let h = Coloring(coloring.clone());
                if h.len() != g.n() || !h.is_proper(&m.module.graph) || h.get(cfg.v2) == h.get(cfg.v4()) {
                    return replay_err("recorded decycle coloring is invalid");
                }
                f = h;
            }
            TraceStep::C4wo { coloring, .. } => {
                let Some(m) = &module else {
                    return replay_err("c4wo before e4wo");
                };
                let out = restore_and_color(&g, &cfg, m, &f)?;
                if out.colors() != coloring.as_slice() {
                    return replay_err("restored coloring differs");
                }
                f = out;
                done = true;
            }
        }
    }
    if !done || f.colors() != trace.output.as_slice() || !f.is_proper(&g) {
        return replay_err("output differs");
    }
    Ok(f)
}
