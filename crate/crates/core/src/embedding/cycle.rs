//! Simple cycles, their two sides, and semi-maximal plane graphs.

use super::{surgery::Surgery, DartId, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// A simple cycle with its interior and exterior relative to the outer
/// face. `vertices` is stored open (the first vertex is not repeated).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub interior: VertexSet,
    pub exterior: VertexSet,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Rotation/reflection-invariant key: the lexicographically least of
    /// all rotations of both traversal directions.
    pub fn key(&self) -> Vec<VertexId> {
        normalized(&self.vertices)
    }
}

/// Least rotation over both directions of a closed walk.
pub fn normalized(vertices: &[VertexId]) -> Vec<VertexId> {
    let k = vertices.len();
    let mut best: Option<Vec<VertexId>> = None;
    for dir in [false, true] {
        for s in 0..k {
            let cand: Vec<VertexId> = (0..k)
                .map(|i| {
                    if dir {
                        vertices[(s + k - i) % k]
                    } else {
                        vertices[(s + i) % k]
                    }
                })
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Splits the remaining vertices into interior and exterior of the cycle
/// through `vertices` (closed: a repeated final vertex is accepted).
pub fn cycle_sides(g: &PlaneGraph, vertices: &[VertexId]) -> Result<Cycle> {
    let mut vs = vertices.to_vec();
    if vs.len() >= 2 && vs.first() == vs.last() {
        vs.pop();
    }
    if g.n() > VertexSet::CAPACITY {
        return Err(Error::Precondition(format!(
            "cycle analysis supports at most {} vertices",
            VertexSet::CAPACITY
        )));
    }
    if vs.len() < 3 {
        return Err(Error::NotACycle("fewer than three vertices".into()));
    }
    let mut on = VertexSet::empty();
    for &v in &vs {
        if v >= g.n() || on.contains(v) {
            return Err(Error::NotACycle(format!("vertex {} repeated or unknown", v + 1)));
        }
        on.insert(v);
    }
    let k = vs.len();
    let mut cut = vec![false; g.edge_count()];
    for i in 0..k {
        let (a, b) = (vs[i], vs[(i + 1) % k]);
        let d = g
            .find_dart(a, b)
            .ok_or_else(|| Error::NotACycle(format!("{} and {} are not adjacent", a + 1, b + 1)))?;
        cut[d / 2] = true;
    }
    let outside = outer_region(g, |d| cut[d / 2]);
    if outside.iter().all(|&x| x) {
        return Err(Error::NotACycle("cycle does not separate the plane".into()));
    }
    let mut interior = VertexSet::empty();
    let mut exterior = VertexSet::empty();
    for v in 0..g.n() {
        if on.contains(v) {
            continue;
        }
        if g.darts_of(v).iter().any(|&d| outside[g.face_of(d)]) {
            exterior.insert(v);
        } else {
            interior.insert(v);
        }
    }
    Ok(Cycle {
        vertices: vs,
        interior,
        exterior,
    })
}

/// Faces reachable from the outer face without crossing a blocked edge.
pub(crate) fn outer_region(g: &PlaneGraph, blocked: impl Fn(DartId) -> bool) -> Vec<bool> {
    let mut seen = vec![false; g.face_count()];
    let f0 = g.outer_face();
    seen[f0] = true;
    let mut stack = vec![f0];
    while let Some(f) = stack.pop() {
        for d in g.face_darts(f) {
            if blocked(d) {
                continue;
            }
            let h = g.face_of(d ^ 1);
            if !seen[h] {
                seen[h] = true;
                stack.push(h);
            }
        }
    }
    seen
}

/// A plane graph whose outer face is bounded by a cycle of length at least
/// four and whose other faces are all triangles.
#[derive(Clone, Debug)]
pub struct SmpgView {
    pub graph: PlaneGraph,
    pub outer_cycle: Cycle,
}

impl SmpgView {
    /// The outer cycle is read from the outer dart onwards.
    pub fn new(graph: PlaneGraph) -> Result<Self> {
        let mut walk = vec![graph.origin(graph.outer_dart())];
        let mut d = graph.face_next(graph.outer_dart());
        while d != graph.outer_dart() {
            walk.push(graph.origin(d));
            d = graph.face_next(d);
        }
        let outer_cycle = cycle_sides(&graph, &walk)
            .map_err(|e| Error::Precondition(format!("outer face is not bounded by a cycle: {e}")))?;
        if !validate_smpg(&graph, &outer_cycle)? {
            return Err(Error::Precondition(
                "not a semi-maximal plane graph (outer cycle length >= 4, inner faces triangles)".into(),
            ));
        }
        Ok(SmpgView { graph, outer_cycle })
    }

    /// The graph obtained from a triangulation by deleting `v`, with the
    /// hole left by `v` as outer face.
    pub fn from_mpg_deleting(g: &PlaneGraph, v: VertexId) -> Result<Self> {
        let mut s = Surgery::new(g);
        let hole = g.face_next(g.darts_of(v)[0]);
        s.remove_vertex(v);
        let (h, _) = s.finish(&[hole])?;
        SmpgView::new(h)
    }

    /// `i`-th outer vertex (0-based) in outer-face walk order.
    pub fn outer(&self, i: usize) -> VertexId {
        self.outer_cycle.vertices[i]
    }

    pub fn outer_len(&self) -> usize {
        self.outer_cycle.len()
    }

    pub fn interior(&self) -> VertexSet {
        self.outer_cycle.interior
    }
}

/// True iff `c` (which must bound the outer face) has length at least four
/// and every inner face is a triangle.
pub fn validate_smpg(g: &PlaneGraph, c: &Cycle) -> Result<bool> {
    let walk = g.face_vertices(g.outer_face());
    if super::cycle::normalized(&walk) != c.key() {
        return Err(Error::Precondition("cycle is not the boundary of the outer face".into()));
    }
    let outer = g.outer_face();
    Ok(c.len() >= 4 && g.is_simple() && g.faces().all(|f| f == outer || g.face_len(f) == 3))
}
