//! Mutable scratch copy of a rotation system used to build new embeddings.
//!
//! Edits leave ids of untouched vertices and darts alone; [`Surgery::finish`]
//! compacts the survivors order-preservingly and revalidates.

use super::{DartId, PlaneGraph, VertexId};
use crate::error::Result;

#[derive(Clone, Debug)]
pub(crate) struct Surgery {
    origin: Vec<VertexId>,
    rot: Vec<Vec<DartId>>,
    vertex_alive: Vec<bool>,
    dart_alive: Vec<bool>,
}

impl Surgery {
    pub fn new(g: &PlaneGraph) -> Self {
        Surgery {
            origin: g.origin.clone(),
            rot: g.rot.clone(),
            vertex_alive: vec![true; g.n()],
            dart_alive: vec![true; g.dart_count()],
        }
    }

    fn index(&self, d: DartId) -> usize {
        self.rot[self.origin[d]]
            .iter()
            .position(|&x| x == d)
            .expect("dart is placed")
    }

    pub fn next(&self, d: DartId) -> DartId {
        let list = &self.rot[self.origin[d]];
        list[(self.index(d) + 1) % list.len()]
    }

    pub fn face_next(&self, d: DartId) -> DartId {
        self.next(d ^ 1)
    }

    pub fn face_darts(&self, d0: DartId) -> Vec<DartId> {
        let mut out = vec![d0];
        let mut d = self.face_next(d0);
        while d != d0 {
            out.push(d);
            d = self.face_next(d);
        }
        out
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.rot.push(Vec::new());
        self.vertex_alive.push(true);
        self.rot.len() - 1
    }

    /// Creates an unplaced edge; returns the dart `u -> v`.
    pub fn new_edge(&mut self, u: VertexId, v: VertexId) -> DartId {
        let d = self.origin.len();
        self.origin.push(u);
        self.origin.push(v);
        self.dart_alive.push(true);
        self.dart_alive.push(true);
        d
    }

    /// Places `d` clockwise right after `anchor` (same origin).
    pub fn insert_after(&mut self, anchor: DartId, d: DartId) {
        debug_assert_eq!(self.origin[anchor], self.origin[d]);
        let i = self.index(anchor);
        self.rot[self.origin[d]].insert(i + 1, d);
    }

    /// Places `d` clockwise right before `anchor` (same origin).
    pub fn insert_before(&mut self, anchor: DartId, d: DartId) {
        debug_assert_eq!(self.origin[anchor], self.origin[d]);
        let i = self.index(anchor);
        self.rot[self.origin[d]].insert(i, d);
    }

    pub fn set_rotation(&mut self, v: VertexId, darts: Vec<DartId>) {
        for &d in &darts {
            self.origin[d] = v;
        }
        self.rot[v] = darts;
    }

    fn unplace(&mut self, d: DartId) {
        let v = self.origin[d];
        if let Some(i) = self.rot[v].iter().position(|&x| x == d) {
            self.rot[v].remove(i);
        }
    }

    pub fn remove_edge(&mut self, d: DartId) {
        self.unplace(d);
        self.unplace(d ^ 1);
        self.dart_alive[d] = false;
        self.dart_alive[d ^ 1] = false;
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        for d in self.rot[v].clone() {
            self.remove_edge(d);
        }
        self.vertex_alive[v] = false;
    }

    /// Inserts a vertex into the face traced from `face_darts` (in order),
    /// joined to every corner. Returns the new vertex.
    pub fn fill_face(&mut self, face_darts: &[DartId]) -> VertexId {
        let x = self.add_vertex();
        let mut spokes = Vec::with_capacity(face_darts.len());
        for &e in face_darts {
            let q = self.origin[e];
            let d = self.new_edge(q, x);
            self.insert_before(e, d);
            spokes.push(d ^ 1);
        }
        spokes.reverse();
        self.set_rotation(x, spokes);
        x
    }

    /// Compacts ids and validates. The outer dart is the first surviving
    /// entry of `outer_prefs`, mapped to its new id.
    pub fn finish(&self, outer_prefs: &[DartId]) -> Result<(PlaneGraph, Vec<Option<VertexId>>)> {
        let mut vmap = vec![None; self.rot.len()];
        let mut count = 0;
        for v in 0..self.rot.len() {
            if self.vertex_alive[v] {
                vmap[v] = Some(count);
                count += 1;
            }
        }
        let mut dmap = vec![usize::MAX; self.origin.len()];
        let mut origin = Vec::new();
        for e in 0..self.origin.len() / 2 {
            if self.dart_alive[2 * e] {
                let k = origin.len();
                dmap[2 * e] = k;
                dmap[2 * e + 1] = k + 1;
                origin.push(vmap[self.origin[2 * e]].expect("live dart at live vertex"));
                origin.push(vmap[self.origin[2 * e + 1]].expect("live dart at live vertex"));
            }
        }
        let rot = (0..self.rot.len())
            .filter(|&v| self.vertex_alive[v])
            .map(|v| self.rot[v].iter().map(|&d| dmap[d]).collect())
            .collect();
        let outer = outer_prefs
            .iter()
            .copied()
            .find(|&d| d < dmap.len() && self.dart_alive[d])
            .map(|d| dmap[d])
            .unwrap_or(0);
        let g = PlaneGraph::from_darts(origin, rot, outer)?;
        Ok((g, vmap))
    }
}
