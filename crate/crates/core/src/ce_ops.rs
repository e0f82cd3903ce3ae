//! Extending and contracting wheel operators.
//!
//! Extending operators append their new vertices after the existing ones
//! (the split copy `v2'` first, then the wheel center). Contracting
//! operators delete vertices and renumber the rest in order, so a
//! contraction undoes the matching extension label for label.

use crate::coloring::{least_free, Color, Coloring, PartialColoring};
use crate::embedding::surgery::Surgery;
use crate::embedding::{DartId, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Operator {
    E2WO,
    C2WO,
    E3WO,
    C3WO,
    E4WO,
    C4WO,
    E5WO,
    C5WO,
}

impl Operator {
    pub const ALL: [Operator; 8] = [
        Operator::E2WO,
        Operator::C2WO,
        Operator::E3WO,
        Operator::C3WO,
        Operator::E4WO,
        Operator::C4WO,
        Operator::E5WO,
        Operator::C5WO,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::E2WO => "e2wo",
            Operator::C2WO => "c2wo",
            Operator::E3WO => "e3wo",
            Operator::C3WO => "c3wo",
            Operator::E4WO => "e4wo",
            Operator::C4WO => "c4wo",
            Operator::E5WO => "e5wo",
            Operator::C5WO => "c5wo",
        }
    }

    pub fn from_name(s: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|o| o.name().eq_ignore_ascii_case(s))
    }

    /// Number of vertices in the site description.
    pub fn site_arity(self) -> usize {
        match self {
            Operator::E2WO => 2,
            Operator::E3WO => 3,
            Operator::C2WO | Operator::C3WO => 1,
            Operator::E4WO => 3,
            Operator::E5WO => 4,
            Operator::C4WO | Operator::C5WO => 3,
        }
    }
}

/// Where an operator acts, in vertex terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Site {
    /// Edge `uv`; the new parallel edge goes clockwise after `u -> v` at `u`.
    Edge { u: VertexId, v: VertexId },
    /// The face traced by `a -> b -> c`.
    Face { a: VertexId, b: VertexId, c: VertexId },
    /// A wheel center to delete.
    Vertex { x: VertexId },
    /// The 2-path `v1 v2 v3`; `v2` is split.
    Path { v1: VertexId, v2: VertexId, v3: VertexId },
    /// Path `v1 v2` and triangle `v2 v3 v4`, `v4` following `v3`
    /// clockwise around `v2`; `v2` is split.
    Funnel { v1: VertexId, v2: VertexId, v3: VertexId, v4: VertexId },
    /// Wheel `center` whose rim vertices `a` and `b` are identified.
    Wheel { center: VertexId, a: VertexId, b: VertexId },
}

impl Site {
    /// Builds a site for `op` from a vertex list.
    pub fn from_vertices(op: Operator, vs: &[VertexId]) -> Result<Site> {
        if vs.len() != op.site_arity() {
            return Err(Error::InvalidSite(format!(
                "{} takes {} vertices, got {}",
                op.name(),
                op.site_arity(),
                vs.len()
            )));
        }
        Ok(match op {
            Operator::E2WO => Site::Edge { u: vs[0], v: vs[1] },
            Operator::E3WO => Site::Face { a: vs[0], b: vs[1], c: vs[2] },
            Operator::C2WO | Operator::C3WO => Site::Vertex { x: vs[0] },
            Operator::E4WO => Site::Path { v1: vs[0], v2: vs[1], v3: vs[2] },
            Operator::E5WO => Site::Funnel { v1: vs[0], v2: vs[1], v3: vs[2], v4: vs[3] },
            Operator::C4WO | Operator::C5WO => Site::Wheel { center: vs[0], a: vs[1], b: vs[2] },
        })
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        match *self {
            Site::Edge { u, v } => vec![u, v],
            Site::Face { a, b, c } => vec![a, b, c],
            Site::Vertex { x } => vec![x],
            Site::Path { v1, v2, v3 } => vec![v1, v2, v3],
            Site::Funnel { v1, v2, v3, v4 } => vec![v1, v2, v3, v4],
            Site::Wheel { center, a, b } => vec![center, a, b],
        }
    }
}

/// One operator application with its before/after states.
#[derive(Clone, Debug)]
pub struct OperatorApplication {
    pub operator: Operator,
    pub site: Site,
    pub before: PlaneGraph,
    pub before_coloring: Option<Coloring>,
    pub after: PlaneGraph,
    pub after_coloring: Option<PartialColoring>,
    /// Vertices created by an extension (in the new graph).
    pub new_vertices: Vec<VertexId>,
    /// For contractions: the identified pair (old labels).
    pub contracted: Option<(VertexId, VertexId)>,
    /// For contractions: old vertex -> new vertex.
    pub vertex_map: Vec<Option<VertexId>>,
}

fn site_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidSite(msg.into()))
}

fn outer_prefs(g: &PlaneGraph) -> Vec<DartId> {
    let mut v = vec![g.outer_dart()];
    v.extend(g.face_darts(g.outer_face()));
    v.extend(0..g.dart_count());
    v
}

/// Doubles the edge of `d` and puts a new degree-2 vertex into the digon.
pub fn e2wo_graph(g: &PlaneGraph, d: DartId) -> Result<(PlaneGraph, VertexId)> {
    let mut s = Surgery::new(g);
    let (u, v) = (g.origin(d), g.target(d));
    let p = s.new_edge(u, v);
    s.insert_after(d, p);
    s.insert_before(d ^ 1, p ^ 1);
    let x = s.fill_face(&[p, d ^ 1]);
    let (h, _) = s.finish(&outer_prefs(g))?;
    Ok((h, x))
}

/// Puts a new vertex into the triangular face of `d`.
pub fn e3wo_graph(g: &PlaneGraph, d: DartId) -> Result<(PlaneGraph, VertexId)> {
    let face = g.face_darts(g.face_of(d));
    if face.len() != 3 {
        return site_err(format!("face has length {}, not 3", face.len()));
    }
    let mut s = Surgery::new(g);
    let x = s.fill_face(&face);
    let (h, _) = s.finish(&outer_prefs(g))?;
    Ok((h, x))
}

/// Splits `v2 = origin(d1) = origin(d3)` along the path `target(d1) v2
/// target(d3)` and fills the resulting quadrilateral. The darts strictly
/// clockwise between `d1` and `d3` stay at `v2`; the rest move to `v2'`.
pub fn e4wo_graph(g: &PlaneGraph, d1: DartId, d3: DartId) -> Result<(PlaneGraph, VertexId, VertexId)> {
    let v2 = g.origin(d1);
    if g.origin(d3) != v2 || d1 == d3 {
        return site_err("path darts must be distinct and leave the same vertex");
    }
    let (v1, v3) = (g.target(d1), g.target(d3));
    if v1 == v3 {
        return site_err("path ends coincide");
    }
    let rot = g.darts_of(v2);
    let deg = rot.len();
    let i1 = g.position(d1);
    let i3 = g.position(d3);
    let span = (i3 + deg - i1) % deg;
    let keep: Vec<DartId> = (0..=span).map(|k| rot[(i1 + k) % deg]).collect();
    let moved: Vec<DartId> = (1..deg - span).map(|k| rot[(i3 + k) % deg]).collect();
    let mut s = Surgery::new(g);
    let v2p = s.add_vertex();
    let n1 = s.new_edge(v2p, v1);
    let n3 = s.new_edge(v2p, v3);
    s.set_rotation(v2, keep);
    let mut rot_p = vec![n1, n3];
    rot_p.extend(moved);
    s.set_rotation(v2p, rot_p);
    s.insert_after(d1 ^ 1, n1 ^ 1);
    s.insert_before(d3 ^ 1, n3 ^ 1);
    let quad = [n1 ^ 1, n3, d3 ^ 1, d1];
    debug_assert_eq!(s.face_darts(n1 ^ 1).len(), 4);
    let x = s.fill_face(&quad);
    let (h, _) = s.finish(&outer_prefs(g))?;
    Ok((h, v2p, x))
}

/// Splits `v2` at the funnel `target(d1) v2` / `v2 target(d3) target(d4)`
/// with `d4 = next(d3)`, and fills the resulting pentagon. `v2` keeps the
/// darts from `d1` clockwise through `d3`; `v2'` takes `d4` onwards.
pub fn e5wo_graph(g: &PlaneGraph, d1: DartId, d3: DartId) -> Result<(PlaneGraph, VertexId, VertexId)> {
    let v2 = g.origin(d1);
    if g.origin(d3) != v2 || d1 == d3 {
        return site_err("funnel darts must be distinct and leave the same vertex");
    }
    let d4 = g.next(d3);
    if d4 == d1 {
        return site_err("funnel needs a dart between the triangle and the path");
    }
    let (v1, v3, v4) = (g.target(d1), g.target(d3), g.target(d4));
    if v1 == v3 || v1 == v4 || v3 == v4 {
        return site_err("funnel vertices must be distinct");
    }
    let rot = g.darts_of(v2);
    let deg = rot.len();
    let i1 = g.position(d1);
    let i3 = g.position(d3);
    let span = (i3 + deg - i1) % deg;
    let keep: Vec<DartId> = (0..=span).map(|k| rot[(i1 + k) % deg]).collect();
    let moved: Vec<DartId> = (1..deg - span).map(|k| rot[(i3 + k) % deg]).collect();
    let mut s = Surgery::new(g);
    let v2p = s.add_vertex();
    let n1 = s.new_edge(v2p, v1);
    s.set_rotation(v2, keep);
    let mut rot_p = vec![n1];
    rot_p.extend(moved);
    s.set_rotation(v2p, rot_p);
    s.insert_after(d1 ^ 1, n1 ^ 1);
    let face = s.face_darts(n1 ^ 1);
    if face.len() != 5 {
        return site_err(format!("funnel does not open a pentagon (got {})", face.len()));
    }
    let x = s.fill_face(&face);
    let (h, _) = s.finish(&outer_prefs(g))?;
    Ok((h, v2p, x))
}

/// Deletes a degree-2 vertex between two parallel edges and one of them.
pub fn c2wo_graph(g: &PlaneGraph, x: VertexId) -> Result<(PlaneGraph, Vec<Option<VertexId>>)> {
    if g.degree(x) != 2 {
        return site_err(format!("vertex {} has degree {}, not 2", x + 1, g.degree(x)));
    }
    let a = g.darts_of(x)[0];
    let (u, v) = (g.target(a), g.target(g.darts_of(x)[1]));
    if u == v {
        return site_err("2-wheel rim must have two vertices");
    }
    // The digon left behind is bounded by the edges right before and after
    // the spokes around x.
    let spoke_u = a ^ 1;
    let before = g.prev(spoke_u);
    let after = g.next(spoke_u);
    let drop = [before, after]
        .into_iter()
        .find(|&d| g.target(d) == v)
        .ok_or_else(|| Error::InvalidSite("no parallel edge beside the 2-wheel".into()))?;
    let mut s = Surgery::new(g);
    s.remove_vertex(x);
    s.remove_edge(drop);
    s.finish(&outer_prefs(g))
}

pub fn c3wo_graph(g: &PlaneGraph, x: VertexId) -> Result<(PlaneGraph, Vec<Option<VertexId>>)> {
    if g.degree(x) != 3 {
        return site_err(format!("vertex {} has degree {}, not 3", x + 1, g.degree(x)));
    }
    let mut s = Surgery::new(g);
    s.remove_vertex(x);
    s.finish(&outer_prefs(g))
}

/// Rim of the wheel centered at `x`, in rotation order.
pub fn wheel_rim(g: &PlaneGraph, x: VertexId) -> Vec<VertexId> {
    g.neighbors(x).collect()
}

/// Deletes the center `x` of a 4- or 5-wheel and identifies rim vertex `b`
/// with `a`. For a 4-wheel `a`, `b` are opposite; for a 5-wheel they are
/// two apart.
pub fn contract_wheel(
    g: &PlaneGraph,
    x: VertexId,
    a: VertexId,
    b: VertexId,
    k: usize,
) -> Result<(PlaneGraph, Vec<Option<VertexId>>)> {
    if g.degree(x) != k {
        return site_err(format!("vertex {} has degree {}, not {k}", x + 1, g.degree(x)));
    }
    let rim = wheel_rim(g, x);
    let mut uniq = rim.clone();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != k {
        return site_err("wheel rim repeats a vertex");
    }
    let ia = rim.iter().position(|&v| v == a);
    let ib = rim.iter().position(|&v| v == b);
    let (Some(ia), Some(ib)) = (ia, ib) else {
        return site_err("contracted vertices must lie on the rim");
    };
    let gap = (ib + k - ia) % k;
    let ok = match k {
        4 => gap == 2,
        5 => gap == 2 || gap == 3,
        _ => false,
    };
    if !ok {
        return site_err("contracted vertices are not a valid rim pair");
    }
    if g.has_edge(a, b) {
        return site_err(format!("contracted vertices {} and {} are adjacent", a + 1, b + 1));
    }
    // Rim vertices adjacent to both a and b inside the wheel.
    let shared: Vec<VertexId> = (0..k)
        .map(|i| rim[i])
        .filter(|&m| {
            let im = rim.iter().position(|&v| v == m).unwrap();
            let adj_a = (im + 1) % k == ia || (ia + 1) % k == im;
            let adj_b = (im + 1) % k == ib || (ib + 1) % k == im;
            adj_a && adj_b
        })
        .collect();
    let xa = g.find_dart(a, x).expect("rim vertex meets center");
    let xb = g.find_dart(b, x).expect("rim vertex meets center");
    let rot_b = g.darts_of(b);
    let deg_b = rot_b.len();
    let pb = g.position(xb);
    let mut seq: Vec<DartId> = (1..deg_b).map(|i| rot_b[(pb + i) % deg_b]).collect();
    let mut dropped = Vec::new();
    if let Some(&first) = seq.first() {
        if shared.contains(&g.target(first)) {
            dropped.push(first);
        }
    }
    if let Some(&last) = seq.last() {
        if shared.contains(&g.target(last)) && !dropped.contains(&last) {
            dropped.push(last);
        }
    }
    if dropped.len() != shared.len() {
        return site_err("wheel is not embedded as a wheel around the contracted vertex");
    }
    seq.retain(|d| !dropped.contains(d));
    let mut s = Surgery::new(g);
    for &d in &dropped {
        s.remove_edge(d);
    }
    let pos_a = g.darts_of(a).iter().position(|&d| d == xa).unwrap();
    let mut rot_a: Vec<DartId> = g.darts_of(a).to_vec();
    rot_a.splice(pos_a..=pos_a, seq.iter().copied());
    // Remove the spokes; xa is already gone from rot_a.
    s.remove_vertex(x);
    s.set_rotation(a, rot_a);
    s.set_rotation(b, Vec::new());
    s.remove_vertex(b);
    s.finish(&outer_prefs(g))
}

pub fn c4wo_graph(g: &PlaneGraph, x: VertexId, a: VertexId, b: VertexId) -> Result<(PlaneGraph, Vec<Option<VertexId>>)> {
    contract_wheel(g, x, a, b, 4)
}

pub fn c5wo_graph(g: &PlaneGraph, x: VertexId, a: VertexId, b: VertexId) -> Result<(PlaneGraph, Vec<Option<VertexId>>)> {
    contract_wheel(g, x, a, b, 5)
}

fn dart(g: &PlaneGraph, u: VertexId, v: VertexId) -> Result<DartId> {
    if u >= g.n() || v >= g.n() {
        return site_err("vertex out of range");
    }
    g.find_dart(u, v)
        .ok_or_else(|| Error::InvalidSite(format!("{} and {} are not adjacent", u + 1, v + 1)))
}

/// Center color of a new wheel: the least color missing
/// from the rim when the rim uses at most three colors.
fn center_color(rim: &[Option<Color>]) -> Option<Color> {
    let used: Vec<Color> = rim.iter().flatten().copied().collect();
    if rim.iter().any(Option::is_none) {
        return None;
    }
    let mut distinct = used.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() > 3 {
        None
    } else {
        least_free(used)
    }
}

fn extend_coloring(
    f: &Coloring,
    h: &PlaneGraph,
    copies: &[(VertexId, VertexId)],
    center: VertexId,
) -> PartialColoring {
    let mut c: Vec<Option<Color>> = f.colors().iter().map(|&x| Some(x)).collect();
    c.resize(h.n(), None);
    for &(orig, copy) in copies {
        c[copy] = c[orig];
    }
    let rim: Vec<Option<Color>> = h.neighbors(center).map(|w| c[w]).collect();
    c[center] = center_color(&rim);
    PartialColoring(c)
}

fn restrict(f: &Coloring, vmap: &[Option<VertexId>], n: usize) -> PartialColoring {
    let mut c = vec![None; n];
    for (old, new) in vmap.iter().enumerate() {
        if let Some(new) = new {
            c[*new] = Some(f.get(old));
        }
    }
    PartialColoring(c)
}

/// Applies `op` at `site`, propagating `f` when given.
pub fn apply(g: &PlaneGraph, f: Option<&Coloring>, op: Operator, site: &Site) -> Result<OperatorApplication> {
    if let Some(f) = f {
        if !f.is_proper(g) {
            return Err(Error::Precondition("input coloring is not proper".into()));
        }
    }
    for v in site.vertices() {
        if v >= g.n() {
            return site_err(format!("vertex {} out of range", v + 1));
        }
    }
    let mut new_vertices = Vec::new();
    let mut contracted = None;
    let mut vertex_map: Vec<Option<VertexId>> = (0..g.n()).map(Some).collect();
    let (after, after_coloring) = match (op, site) {
        (Operator::E2WO, Site::Edge { u, v }) => {
            let (h, x) = e2wo_graph(g, dart(g, *u, *v)?)?;
            new_vertices.push(x);
            let c = f.map(|f| extend_coloring(f, &h, &[], x));
            (h, c)
        }
        (Operator::E3WO, Site::Face { a, b, c }) => {
            let d = dart(g, *a, *b)?;
            let face = g.face_vertices(g.face_of(d));
            if face != [*a, *b, *c] {
                return site_err("vertices do not trace a face in that order");
            }
            let (h, x) = e3wo_graph(g, d)?;
            new_vertices.push(x);
            let col = f.map(|f| extend_coloring(f, &h, &[], x));
            (h, col)
        }
        (Operator::E4WO, Site::Path { v1, v2, v3 }) => {
            let (h, v2p, x) = e4wo_graph(g, dart(g, *v2, *v1)?, dart(g, *v2, *v3)?)?;
            new_vertices.extend([v2p, x]);
            let c = f.map(|f| extend_coloring(f, &h, &[(*v2, v2p)], x));
            (h, c)
        }
        (Operator::E5WO, Site::Funnel { v1, v2, v3, v4 }) => {
            let d3 = dart(g, *v2, *v3)?;
            if g.target(g.next(d3)) != *v4 {
                return site_err(format!(
                    "{} does not follow {} clockwise around {}",
                    v4 + 1,
                    v3 + 1,
                    v2 + 1
                ));
            }
            let (h, v2p, x) = e5wo_graph(g, dart(g, *v2, *v1)?, d3)?;
            new_vertices.extend([v2p, x]);
            let c = f.map(|f| extend_coloring(f, &h, &[(*v2, v2p)], x));
            (h, c)
        }
        (Operator::C2WO, Site::Vertex { x }) => {
            let (h, map) = c2wo_graph(g, *x)?;
            let c = f.map(|f| restrict(f, &map, h.n()));
            vertex_map = map;
            (h, c)
        }
        (Operator::C3WO, Site::Vertex { x }) => {
            let (h, map) = c3wo_graph(g, *x)?;
            let c = f.map(|f| restrict(f, &map, h.n()));
            vertex_map = map;
            (h, c)
        }
        (Operator::C4WO | Operator::C5WO, Site::Wheel { center, a, b }) => {
            if let Some(f) = f {
                if f.get(*a) != f.get(*b) {
                    return site_err(format!(
                        "contracted vertices {} and {} have different colors",
                        a + 1,
                        b + 1
                    ));
                }
            }
            let k = if op == Operator::C4WO { 4 } else { 5 };
            let (h, map) = contract_wheel(g, *center, *a, *b, k)?;
            let c = f.map(|f| restrict(f, &map, h.n()));
            contracted = Some((*a, *b));
            vertex_map = map;
            (h, c)
        }
        _ => return site_err(format!("{} does not take this kind of site", op.name())),
    };
    Ok(OperatorApplication {
        operator: op,
        site: site.clone(),
        before: g.clone(),
        before_coloring: f.cloned(),
        after,
        after_coloring,
        new_vertices,
        contracted,
        vertex_map,
    })
}

/// Every E4 site: ordered pairs of distinct darts at a vertex whose
/// targets differ.
pub fn e4_sites(g: &PlaneGraph) -> Vec<(DartId, DartId)> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        for &d1 in g.darts_of(v) {
            for &d3 in g.darts_of(v) {
                if d1 != d3 && g.target(d1) != g.target(d3) {
                    out.push((d1, d3));
                }
            }
        }
    }
    out
}

/// Every E5 site `(d1, d3)`: `d1` outside `{d3, next(d3)}`, targets distinct.
pub fn e5_sites(g: &PlaneGraph) -> Vec<(DartId, DartId)> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        for &d1 in g.darts_of(v) {
            for &d3 in g.darts_of(v) {
                let d4 = g.next(d3);
                if d1 == d3 || d1 == d4 {
                    continue;
                }
                let t = [g.target(d1), g.target(d3), g.target(d4)];
                if t[0] != t[1] && t[0] != t[2] && t[1] != t[2] {
                    out.push((d1, d3));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_mpg;
    use crate::fixtures;

    #[test]
    fn e2_then_c2_restores_k4() {
        let g = fixtures::k4();
        let (h, x) = e2wo_graph(&g, 0).unwrap();
        assert_eq!(h.n(), 5);
        assert_eq!(h.degree(x), 2);
        assert!(h.is_triangulation());
        assert!(!h.is_simple());
        let (back, _) = c2wo_graph(&h, x).unwrap();
        assert_eq!(back.canonical_form(), g.canonical_form());
    }

    #[test]
    fn e3_colors_center_with_missing_color() {
        let g = fixtures::k4();
        let f = Coloring(vec![1, 2, 3, 4]);
        let d = g.find_dart(0, 1).unwrap();
        let face = g.face_vertices(g.face_of(d));
        let site = Site::Face { a: face[0], b: face[1], c: face[2] };
        let app = apply(&g, Some(&f), Operator::E3WO, &site).unwrap();
        let c = app.after_coloring.unwrap().to_total().unwrap();
        assert!(c.is_proper(&app.after));
        let missing = (1..=4).find(|k| !face.iter().any(|&v| f.get(v) == *k)).unwrap();
        assert_eq!(c.get(4), missing);
        assert!(validate_mpg(&app.after).is_mpg);
    }

    #[test]
    fn c2_rejects_wrong_degree() {
        let g = fixtures::octahedron();
        assert!(c2wo_graph(&g, 0).is_err());
    }

    #[test]
    fn e4_with_empty_side() {
        let g = fixtures::octahedron();
        let v = 0;
        let r = g.darts_of(v);
        // Consecutive darts: one side holds nothing.
        let (h, v2p, x) = e4wo_graph(&g, r[1], r[0]).unwrap();
        assert_eq!(h.degree(v2p), 3);
        assert_eq!(h.degree(x), 4);
        assert!(validate_mpg(&h).is_mpg);
    }

    fn cyclic_rotations(g: &PlaneGraph) -> Vec<Vec<usize>> {
        (0..g.n())
            .map(|v| {
                let mut r: Vec<usize> = g.neighbors(v).collect();
                let k = (0..r.len()).min_by_key(|&i| r[i]).unwrap_or(0);
                r.rotate_left(k);
                r
            })
            .collect()
    }

    #[test]
    fn round_trips_on_icosahedron() {
        let g = fixtures::icosahedron();
        let cf = g.canonical_form();
        for (d1, d3) in e4_sites(&g) {
            let v2 = g.origin(d1);
            let (h, v2p, x) = e4wo_graph(&g, d1, d3).unwrap();
            assert_eq!(h.degree(x), 4);
            let (back, _) = c4wo_graph(&h, x, v2, v2p).unwrap();
            assert_eq!(cyclic_rotations(&back), cyclic_rotations(&g));
            assert_eq!(back.canonical_form(), cf);
        }
        for (d1, d3) in e5_sites(&g) {
            let v2 = g.origin(d1);
            let (h, v2p, x) = e5wo_graph(&g, d1, d3).unwrap();
            assert_eq!(h.degree(x), 5);
            let (back, _) = c5wo_graph(&h, x, v2, v2p).unwrap();
            assert_eq!(back.canonical_form(), cf);
        }
    }

    #[test]
    fn e5_with_four_colored_rim_is_pending() {
        let g = fixtures::icosahedron();
        let f = crate::coloring::first_coloring(&g).unwrap().unwrap();
        let mut pending = 0;
        for (d1, d3) in e5_sites(&g) {
            let site = Site::Funnel {
                v1: g.target(d1),
                v2: g.origin(d1),
                v3: g.target(d3),
                v4: g.target(g.next(d3)),
            };
            let app = apply(&g, Some(&f), Operator::E5WO, &site).unwrap();
            let c = app.after_coloring.unwrap();
            assert!(c.is_proper(&app.after));
            let x = app.new_vertices[1];
            let rim: std::collections::BTreeSet<_> = app.after.neighbors(x).map(|w| c.0[w]).collect();
            if rim.len() == 4 {
                assert_eq!(c.0[x], None);
                pending += 1;
            } else {
                assert!(c.0[x].is_some());
            }
        }
        assert!(pending > 0);
    }

    #[test]
    fn c4_rejects_mismatched_colors() {
        let g = fixtures::icosahedron();
        let f = crate::coloring::first_coloring(&g).unwrap().unwrap();
        let (d1, d3) = e4_sites(&g)[0];
        let v2 = g.origin(d1);
        let site = Site::Path { v1: g.target(d1), v2, v3: g.target(d3) };
        let app = apply(&g, Some(&f), Operator::E4WO, &site).unwrap();
        let mut c = app.after_coloring.unwrap().to_total().unwrap();
        let (v2p, x) = (app.new_vertices[0], app.new_vertices[1]);
        let ok = apply(&app.after, Some(&c), Operator::C4WO, &Site::Wheel { center: x, a: v2, b: v2p });
        assert!(ok.is_ok());
        c.0[v2p] = (1..=4).find(|&k| k != c.get(v2)).unwrap();
        let bad = apply(&app.after, Some(&c), Operator::C4WO, &Site::Wheel { center: x, a: v2, b: v2p });
        assert!(bad.is_err());
    }
}
