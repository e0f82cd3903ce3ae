//! Plane multigraphs stored as rotation systems.
//!
//! Half-edges ("darts") come in twin pairs `2e, 2e + 1`, so `twin(d) = d ^ 1`.
//! Each vertex keeps its outgoing darts in clockwise order. Faces are the
//! orbits of `d -> next(twin(d))`; walking a face from dart `u -> v` visits
//! `u, v, ...` in order.

mod canon;
mod cycle;
mod rot;
pub(crate) mod surgery;

pub use canon::CanonicalForm;
pub use cycle::{cycle_sides, normalized, validate_smpg, Cycle, SmpgView};
pub(crate) use cycle::outer_region;

use crate::error::{Error, Result};
use crate::vset::VertexSet;
use serde::Serialize;

pub type VertexId = usize;
pub type DartId = usize;

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    origin: Vec<VertexId>,
    rot: Vec<Vec<DartId>>,
    pos: Vec<usize>,
    face: Vec<usize>,
    face_start: Vec<DartId>,
    outer: DartId,
}

/// Result of [`validate_mpg`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MpgCheck {
    pub is_mpg: bool,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl PlaneGraph {
    /// Builds a graph from explicit darts. `rot[v]` lists the darts leaving
    /// `v` in clockwise order; dart `d` and `d ^ 1` are twins.
    pub(crate) fn from_darts(
        origin: Vec<VertexId>,
        rot: Vec<Vec<DartId>>,
        outer: DartId,
    ) -> Result<Self> {
        let n = rot.len();
        let darts = origin.len();
        if !darts.is_multiple_of(2) {
            return Err(Error::InvalidRotation("odd number of darts".into()));
        }
        if n == 0 {
            return Err(Error::InvalidRotation("no vertices".into()));
        }
        let mut pos = vec![usize::MAX; darts];
        for (v, list) in rot.iter().enumerate() {
            for (i, &d) in list.iter().enumerate() {
                if d >= darts || origin[d] != v || pos[d] != usize::MAX {
                    return Err(Error::InvalidRotation(format!(
                        "dart {d} misplaced in rotation of vertex {v}"
                    )));
                }
                pos[d] = i;
            }
        }
        if pos.contains(&usize::MAX) {
            return Err(Error::InvalidRotation("dart missing from rotations".into()));
        }
        for d in (0..darts).step_by(2) {
            if origin[d] == origin[d + 1] {
                return Err(Error::Loop(origin[d]));
            }
        }
        if outer >= darts.max(1) && darts > 0 {
            return Err(Error::InvalidRotation("outer dart out of range".into()));
        }
        let mut g = PlaneGraph {
            origin,
            rot,
            pos,
            face: Vec::new(),
            face_start: Vec::new(),
            outer,
        };
        g.check_connected()?;
        g.trace_faces();
        let euler = g.n() as i64 - g.edge_count() as i64 + g.face_count() as i64;
        if euler != 2 {
            return Err(Error::NotPlanar(euler));
        }
        Ok(g)
    }

    /// Builds a graph from per-vertex clockwise neighbour lists (0-based).
    ///
    /// Repeated neighbours denote parallel edges; their twin pairing is the
    /// first one (in a fixed search order) that satisfies Euler's formula.
    pub fn from_rotation(lists: &[Vec<VertexId>]) -> Result<Self> {
        rot::from_neighbor_lists(lists, None)
    }

    /// Like [`PlaneGraph::from_rotation`], with the outer face given by its
    /// boundary walk.
    pub fn from_rotation_with_outer(lists: &[Vec<VertexId>], outer: &[VertexId]) -> Result<Self> {
        rot::from_neighbor_lists(lists, Some(outer))
    }

    /// Builds a simple plane graph from its faces, each listed as a closed
    /// walk, all in the same orientation. `outer` must be one of the faces.
    pub fn from_faces(n: usize, faces: &[Vec<VertexId>], outer: &[VertexId]) -> Result<Self> {
        let mut succ: Vec<std::collections::BTreeMap<VertexId, VertexId>> = vec![Default::default(); n];
        let mut directed = std::collections::HashSet::new();
        for f in faces {
            let k = f.len();
            for i in 0..k {
                let (a, b, c) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
                if a >= n || b >= n || c >= n {
                    return Err(Error::InvalidRotation(format!("face {f:?} names an unknown vertex")));
                }
                if !directed.insert((b, c)) {
                    return Err(Error::InvalidRotation(format!(
                        "directed edge {}-{} used by two faces",
                        b + 1,
                        c + 1
                    )));
                }
                if succ[b].insert(a, c).is_some() {
                    return Err(Error::InvalidRotation(format!("corner at {} listed twice", b + 1)));
                }
            }
        }
        let mut lists = Vec::with_capacity(n);
        for (v, s) in succ.iter().enumerate() {
            let Some((&first, _)) = s.iter().next() else {
                return Err(Error::InvalidRotation(format!("vertex {} lies on no face", v + 1)));
            };
            let mut list = vec![first];
            let mut w = s[&first];
            while w != first {
                if list.len() > s.len() {
                    return Err(Error::InvalidRotation(format!("corners at {} do not close up", v + 1)));
                }
                list.push(w);
                w = *s.get(&w).ok_or_else(|| {
                    Error::InvalidRotation(format!("corners at {} do not close up", v + 1))
                })?;
            }
            if list.len() != s.len() {
                return Err(Error::InvalidRotation(format!("vertex {} is pinched", v + 1)));
            }
            lists.push(list);
        }
        Self::from_rotation_with_outer(&lists, outer)
    }

    pub fn parse_rot(text: &str) -> Result<Self> {
        rot::parse(text)
    }

    pub fn to_rot_string(&self) -> String {
        rot::write(self)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rot[v] {
                let w = self.target(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count == n {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn trace_faces(&mut self) {
        let darts = self.origin.len();
        self.face = vec![usize::MAX; darts];
        self.face_start.clear();
        for d0 in 0..darts {
            if self.face[d0] != usize::MAX {
                continue;
            }
            let id = self.face_start.len();
            self.face_start.push(d0);
            let mut d = d0;
            loop {
                self.face[d] = id;
                d = self.face_next(d);
                if d == d0 {
                    break;
                }
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rot.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    #[inline]
    pub fn face_count(&self) -> usize {
        self.face_start.len()
    }

    #[inline]
    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d]
    }

    #[inline]
    pub fn target(&self, d: DartId) -> VertexId {
        self.origin[d ^ 1]
    }

    #[inline]
    pub fn twin(d: DartId) -> DartId {
        d ^ 1
    }

    /// Clockwise successor of `d` around its origin.
    #[inline]
    pub fn next(&self, d: DartId) -> DartId {
        let list = &self.rot[self.origin[d]];
        list[(self.pos[d] + 1) % list.len()]
    }

    /// Counter-clockwise successor of `d` around its origin.
    #[inline]
    pub fn prev(&self, d: DartId) -> DartId {
        let list = &self.rot[self.origin[d]];
        list[(self.pos[d] + list.len() - 1) % list.len()]
    }

    /// Index of `d` in the rotation of its origin.
    #[inline]
    pub fn position(&self, d: DartId) -> usize {
        self.pos[d]
    }

    /// Next dart along the face containing `d`.
    #[inline]
    pub fn face_next(&self, d: DartId) -> DartId {
        self.next(d ^ 1)
    }

    #[inline]
    pub fn face_of(&self, d: DartId) -> usize {
        self.face[d]
    }

    pub fn face_darts(&self, face: usize) -> Vec<DartId> {
        let d0 = self.face_start[face];
        let mut out = vec![d0];
        let mut d = self.face_next(d0);
        while d != d0 {
            out.push(d);
            d = self.face_next(d);
        }
        out
    }

    pub fn face_vertices(&self, face: usize) -> Vec<VertexId> {
        self.face_darts(face).into_iter().map(|d| self.origin(d)).collect()
    }

    pub fn face_len(&self, face: usize) -> usize {
        self.face_darts(face).len()
    }

    pub fn faces(&self) -> impl Iterator<Item = usize> {
        0..self.face_count()
    }

    #[inline]
    pub fn outer_dart(&self) -> DartId {
        self.outer
    }

    #[inline]
    pub fn outer_face(&self) -> usize {
        self.face[self.outer]
    }

    /// Same embedding with the outer face moved to the face of `d`.
    pub fn with_outer_dart(&self, d: DartId) -> Self {
        let mut g = self.clone();
        g.outer = d;
        g
    }

    #[inline]
    pub fn darts_of(&self, v: VertexId) -> &[DartId] {
        &self.rot[v]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rot.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.rot.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rot.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbours of `v` in clockwise order, with repeats for parallel edges.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rot[v].iter().map(move |&d| self.target(d))
    }

    pub fn find_dart(&self, u: VertexId, v: VertexId) -> Option<DartId> {
        self.rot[u].iter().copied().find(|&d| self.target(d) == v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.find_dart(u, v).is_some()
    }

    /// Neighbourhood of `v` as a set. Panics above [`VertexSet::CAPACITY`].
    pub fn adjacency(&self, v: VertexId) -> VertexSet {
        assert!(self.n() <= VertexSet::CAPACITY, "graph too large for VertexSet");
        self.neighbors(v).collect()
    }

    pub fn adjacency_sets(&self) -> Vec<VertexSet> {
        (0..self.n()).map(|v| self.adjacency(v)).collect()
    }

    /// Number of edges beyond one per adjacent pair.
    pub fn parallel_excess(&self) -> usize {
        let mut excess = 0;
        for v in 0..self.n() {
            let mut seen: Vec<VertexId> = self.neighbors(v).collect();
            seen.sort_unstable();
            excess += seen.windows(2).filter(|w| w[0] == w[1]).count();
        }
        excess / 2
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_excess() == 0
    }

    pub fn is_triangulation(&self) -> bool {
        self.faces().all(|f| self.face_len(f) == 3)
    }

    /// Vertex `v` of this graph becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Self {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let origin = self.origin.iter().map(|&v| perm[v]).collect();
        let mut rot = vec![Vec::new(); n];
        for v in 0..n {
            rot[perm[v]] = self.rot[v].clone();
        }
        PlaneGraph::from_darts(origin, rot, self.outer).expect("relabel keeps validity")
    }

    /// Orientation-reversed copy (mirror image).
    pub fn mirror(&self) -> Self {
        let rot = self
            .rot
            .iter()
            .map(|l| l.iter().rev().copied().collect())
            .collect();
        // The outer face of the mirror is traced by the twin of the old dart.
        PlaneGraph::from_darts(self.origin.clone(), rot, self.outer ^ 1)
            .expect("mirror keeps validity")
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canon::canonical_form(self, None)
    }

    /// Canonical form with the root restricted to darts on the outer face;
    /// distinguishes embeddings whose outer faces differ.
    pub fn canonical_form_rooted(&self) -> CanonicalForm {
        let darts = self.face_darts(self.outer_face());
        canon::canonical_form(self, Some(&darts))
    }

    pub fn from_canonical(code: &CanonicalForm) -> Result<Self> {
        canon::decode(code)
    }
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.origin == other.origin && self.rot == other.rot && self.outer == other.outer
    }
}

impl Eq for PlaneGraph {}

/// Checks maximal planarity: simple, and every face (outer included) is a
/// triangle.
pub fn validate_mpg(g: &PlaneGraph) -> MpgCheck {
    let is_mpg = g.n() >= 3 && g.is_simple() && g.is_triangulation();
    MpgCheck {
        is_mpg,
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_is_mpg() {
        let g = fixtures::k4();
        let check = validate_mpg(&g);
        assert!(check.is_mpg);
        assert_eq!(check.min_degree, 3);
        assert_eq!(g.face_count(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn icosahedron_is_mpg_with_min_degree_five() {
        let g = fixtures::icosahedron();
        let check = validate_mpg(&g);
        assert!(check.is_mpg);
        assert_eq!(check.min_degree, 5);
        assert_eq!(check.max_degree, 5);
        assert_eq!(g.edge_count(), 3 * 12 - 6);
    }

    #[test]
    fn square_with_one_chord_is_not_mpg() {
        // K4 minus one edge: a square with a single chord. Both faces on the
        // outside of the chord merge into a quadrilateral.
        let g = PlaneGraph::from_rotation(&[vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]])
            .unwrap();
        let check = validate_mpg(&g);
        assert!(!check.is_mpg);
        assert!(g.faces().any(|f| g.face_len(f) == 4));
    }

    #[test]
    fn rejects_disconnected_input() {
        let err = PlaneGraph::from_rotation(&[vec![1], vec![0], vec![3], vec![2]]).unwrap_err();
        assert!(matches!(err, Error::Disconnected));
    }

    #[test]
    fn rejects_loops() {
        let err = PlaneGraph::from_rotation(&[vec![0, 1], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::Parse { .. } | Error::Loop(_) | Error::InvalidRotation(_)));
    }

    #[test]
    fn rejects_non_planar_rotation() {
        // K4 with one vertex's rotation reversed gives a torus embedding.
        let err = PlaneGraph::from_rotation(&[
            vec![1, 3, 2],
            vec![0, 3, 2],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NotPlanar(_)));
    }

    #[test]
    fn mirror_and_relabel_preserve_validity() {
        let g = fixtures::icosahedron();
        let m = g.mirror();
        assert!(validate_mpg(&m).is_mpg);
        let perm: Vec<usize> = (0..12).rev().collect();
        let r = g.relabel(&perm);
        assert!(validate_mpg(&r).is_mpg);
        assert_eq!(r.degree(11), g.degree(0));
    }

    #[test]
    fn parallel_edges_are_allowed() {
        // Two vertices joined by three parallel edges and a vertex inside one
        // of the digons is not a triangulation, but is a valid plane graph.
        let g = PlaneGraph::from_rotation(&[vec![1, 1, 2], vec![0, 2, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.parallel_excess(), 1);
        assert!(!g.is_simple());
    }
}
