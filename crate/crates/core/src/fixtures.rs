//! Small named graphs used by tests, examples and the command line.
//!
//! Everything is built from oriented face lists; see
//! [`PlaneGraph::from_faces`].

use crate::embedding::{PlaneGraph, SmpgView, VertexId};

fn build(n: usize, faces: &[Vec<VertexId>], outer: usize) -> PlaneGraph {
    PlaneGraph::from_faces(n, faces, &faces[outer]).expect("fixture faces are consistent")
}

pub fn k4() -> PlaneGraph {
    build(4, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]], 0)
}

pub fn octahedron() -> PlaneGraph {
    let faces = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 1],
        vec![5, 2, 1],
        vec![5, 3, 2],
        vec![5, 4, 3],
        vec![5, 1, 4],
    ];
    build(6, &faces, 0)
}

/// Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> PlaneGraph {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, u(i), u(i + 1)]);
        faces.push(vec![u(i + 1), u(i), l(i)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![11, l(i + 1), l(i)]);
    }
    build(12, &faces, 0)
}

/// The identity module: the 4-cycle `0 1 2 3` (outer face) with interior
/// vertices 4 and 5, both adjacent to 0 and 2.
pub fn b4() -> PlaneGraph {
    let mut faces = banded_module([0, 1, 2, 3], 0, &mut 4);
    faces.push(vec![0, 3, 2, 1]);
    build(6, &faces, 6)
}

pub fn b4_smpg() -> SmpgView {
    SmpgView::new(b4()).expect("B4 is semi-maximal")
}

/// Order-8 non-Kempe triangulation: a 4-cycle `0 1 2 3` capped on both
/// sides by identity modules with perpendicular spines.
pub fn order8_ubcmpg() -> PlaneGraph {
    tree_family(2)
}

/// Faces of a module filling the 4-cycle `r`, seen from the side whose
/// boundary walk runs `r0 -> r1 -> r2 -> r3`: an apex joined to `r0, r1,
/// r2`, then `bands` antiprism bands, then a 4-wheel. With no bands this is
/// the identity module. New vertices are numbered from `*next`.
fn banded_module(r: [VertexId; 4], bands: usize, next: &mut VertexId) -> Vec<Vec<VertexId>> {
    let a = *next;
    *next += 1;
    let mut faces = vec![vec![r[0], r[1], a], vec![a, r[1], r[2]]];
    let mut q = [r[0], a, r[2], r[3]];
    for _ in 0..bands {
        let p = [*next, *next + 1, *next + 2, *next + 3];
        *next += 4;
        for i in 0..4 {
            let j = (i + 1) % 4;
            faces.push(vec![q[i], q[j], p[i]]);
            faces.push(vec![q[j], p[j], p[i]]);
        }
        q = p;
    }
    let c = *next;
    *next += 1;
    for i in 0..4 {
        faces.push(vec![q[i], q[(i + 1) % 4], c]);
    }
    faces
}

/// Tree-type family of order `4n` (n >= 2): the 4-cycle `0 1 2 3` with
/// the identity module on one side and, on the other, a module with
/// `n - 2` antiprism bands whose apex sits on the perpendicular diagonal.
pub fn tree_family(n: usize) -> PlaneGraph {
    assert!(n >= 2, "family starts at order 8");
    let mut next = 4;
    let mut faces = banded_module([0, 1, 2, 3], 0, &mut next);
    faces.extend(banded_module([1, 0, 3, 2], n - 2, &mut next));
    build(next, &faces, 0)
}

/// Vertex names of the Wernicke configuration fixtures.
pub mod config {
    pub const V1: usize = 0;
    pub const V2: usize = 1;
    pub const V3: usize = 2;
    pub const V4: usize = 3;
    pub const X1: usize = 4;
    pub const Y1: usize = 5;
}

/// A degree-5 vertex `v2` next to a degree-5 vertex `v3`, with their
/// closed neighbourhoods; the outer face is the 6-cycle around them.
pub fn config55() -> SmpgView {
    wernicke(5)
}

/// As [`config55`] with `v3` of degree 6 and a 7-cycle boundary.
pub fn config56() -> SmpgView {
    wernicke(6)
}

fn wernicke(deg_v3: usize) -> SmpgView {
    use config::*;
    let extra: Vec<VertexId> = (6..6 + deg_v3 - 3).collect();
    let n = 6 + extra.len();
    let mut faces = vec![
        vec![V2, V3, V4],
        vec![V2, V4, V1],
        vec![V2, V1, X1],
        vec![V2, X1, Y1],
        vec![V2, Y1, V3],
        vec![V4, V3, extra[0]],
    ];
    for w in extra.windows(2) {
        faces.push(vec![V3, w[1], w[0]]);
    }
    faces.push(vec![V3, Y1, *extra.last().unwrap()]);
    let mut outer = vec![V4];
    outer.extend(extra.iter().copied());
    outer.extend([Y1, X1, V1]);
    faces.push(outer);
    let last = faces.len() - 1;
    SmpgView::new(build(n, &faces, last)).expect("configuration is semi-maximal")
}

/// Pentakis dodecahedron: the icosahedron's vertices (degree 5) plus one
/// vertex per icosahedral face (degree 6), original edges removed. A
/// 32-vertex triangulation with minimum degree 5.
pub fn pentakis_dodecahedron() -> PlaneGraph {
    let ico = icosahedron();
    let f = ico.face_count();
    let mut faces = Vec::new();
    for u in 0..ico.n() {
        let around: Vec<usize> = ico.darts_of(u).iter().map(|&d| ico.face_of(d)).collect();
        let k = around.len();
        for i in 0..k {
            faces.push(vec![u, 12 + around[(i + 1) % k], 12 + around[i]]);
        }
    }
    PlaneGraph::from_faces(12 + f, &faces, &faces[0])
        .or_else(|_| {
            let flipped: Vec<Vec<usize>> = faces.iter().map(|f| f.iter().rev().copied().collect()).collect();
            PlaneGraph::from_faces(12 + f, &flipped, &flipped[0])
        })
        .expect("kleetope-dual faces are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_mpg;

    #[test]
    fn triangulations_are_valid() {
        for (g, n, min) in [
            (k4(), 4, 3),
            (octahedron(), 6, 4),
            (icosahedron(), 12, 5),
            (order8_ubcmpg(), 8, 4),
            (tree_family(3), 12, 4),
            (tree_family(4), 16, 4),
            (pentakis_dodecahedron(), 32, 5),
        ] {
            let c = validate_mpg(&g);
            assert!(c.is_mpg, "order {n}");
            assert_eq!(g.n(), n);
            assert_eq!(c.min_degree, min, "order {n}");
        }
    }

    #[test]
    fn configurations_have_the_named_degrees() {
        use config::*;
        let s = config55();
        assert_eq!(s.outer_len(), 6);
        assert_eq!(s.graph.degree(V2), 5);
        assert_eq!(s.graph.degree(V3), 5);
        let s = config56();
        assert_eq!(s.outer_len(), 7);
        assert_eq!(s.graph.degree(V3), 6);
    }

    #[test]
    fn order8_degrees() {
        let g = order8_ubcmpg();
        let mut d = g.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![4, 4, 4, 4, 5, 5, 5, 5]);
    }
}
