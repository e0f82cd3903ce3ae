//! Oracles for the integration tests. They work from face lists, edge sets
//! and petgraph, and never call the crate's canonical forms, generator or
//! coloring search.

#![allow(dead_code)]

use mpg_core::PlaneGraph;
use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Oriented triangular faces.
pub type Faces = Vec<[usize; 3]>;

pub fn faces_of(g: &PlaneGraph) -> Faces {
    g.faces()
        .map(|f| {
            let vs = g.face_vertices(f);
            assert_eq!(vs.len(), 3, "not a triangulation");
            [vs[0], vs[1], vs[2]]
        })
        .collect()
}

pub fn edge_list(g: &PlaneGraph) -> Vec<(usize, usize)> {
    let mut out = BTreeSet::new();
    for v in 0..g.n() {
        for w in g.neighbors(v) {
            out.insert((v.min(w), v.max(w)));
        }
    }
    out.into_iter().collect()
}

fn face_edges(faces: &Faces) -> BTreeSet<(usize, usize)> {
    faces
        .iter()
        .flat_map(|f| (0..3).map(move |i| (f[i].min(f[(i + 1) % 3]), f[i].max(f[(i + 1) % 3]))))
        .collect()
}

fn order_of(faces: &Faces) -> usize {
    faces.iter().flatten().max().map_or(0, |&m| m + 1)
}

pub fn ungraph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> UnGraph<(), ()> {
    let mut g = UnGraph::with_capacity(n, 3 * n);
    for _ in 0..n {
        g.add_node(());
    }
    for (a, b) in edges {
        g.add_edge((a as u32).into(), (b as u32).into(), ());
    }
    g
}

/// Isomorphism classes of simple graphs, bucketed by degree sequence and
/// compared with VF2.
#[derive(Default)]
pub struct IsoClasses {
    buckets: HashMap<Vec<usize>, Vec<UnGraph<(), ()>>>,
    len: usize,
}

impl IsoClasses {
    /// Inserts the graph; returns whether it opened a new class.
    pub fn insert(&mut self, n: usize, edges: &[(usize, usize)]) -> bool {
        let mut degs = vec![0; n];
        for &(a, b) in edges {
            degs[a] += 1;
            degs[b] += 1;
        }
        degs.sort_unstable();
        let g = ungraph(n, edges.iter().copied());
        let bucket = self.buckets.entry(degs).or_default();
        if bucket.iter().any(|h| is_isomorphic(h, &g)) {
            return false;
        }
        bucket.push(g);
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }
}

fn stacked(n: usize) -> Faces {
    let mut faces: Faces = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    for v in 4..n {
        let [a, b, c] = faces.pop().unwrap();
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    faces
}

/// Flips every flippable edge of a simple triangulation.
pub fn flips(faces: &Faces) -> Vec<Faces> {
    let edges = face_edges(faces);
    let mut by_dart = HashMap::new();
    for (k, f) in faces.iter().enumerate() {
        for i in 0..3 {
            by_dart.insert((f[i], f[(i + 1) % 3]), (k, f[(i + 2) % 3]));
        }
    }
    let mut out = Vec::new();
    for &(u, v) in &edges {
        let (k1, w) = by_dart[&(u, v)];
        let (k2, x) = by_dart[&(v, u)];
        if w == x || edges.contains(&(w.min(x), w.max(x))) {
            continue;
        }
        let mut h: Faces = faces
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != k1 && k != k2)
            .map(|(_, f)| *f)
            .collect();
        h.push([u, x, w]);
        h.push([x, v, w]);
        out.push(h);
    }
    out
}

/// One representative face list per isomorphism class of triangulations of
/// order `n`, found by closing a stacked triangulation under edge flips.
pub fn triangulations_by_flips(n: usize) -> Vec<Faces> {
    let mut classes = IsoClasses::default();
    let start = stacked(n);
    classes.insert(n, &face_edges(&start).into_iter().collect::<Vec<_>>());
    let mut reps = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for h in flips(&f) {
            let e: Vec<_> = face_edges(&h).into_iter().collect();
            if classes.insert(order_of(&h), &e) {
                reps.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    reps
}

/// All proper colorings with colors `1..=4`, counted up to renaming, by
/// plain backtracking in vertex order.
pub fn brute_coloring_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn go(v: usize, adj: &[Vec<usize>], c: &mut Vec<u8>, count: &mut usize) {
        if v == adj.len() {
            *count += 1;
            return;
        }
        for k in 1..=4 {
            if adj[v].iter().all(|&w| w > v || c[w] != k) {
                c[v] = k;
                go(v + 1, adj, c, count);
            }
        }
        c[v] = 0;
    }
    let mut count = 0;
    go(0, &adj, &mut vec![0; n], &mut count);
    count / 24
}

pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Components of the subgraph induced by colors `i` and `j`, as a root per
/// vertex (`None` for other colors).
pub fn pair_components(n: usize, edges: &[(usize, usize)], c: &[u8], i: u8, j: u8) -> Vec<Option<usize>> {
    let on = |v: usize| c[v] == i || c[v] == j;
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        if on(a) && on(b) {
            uf.union(a, b);
        }
    }
    (0..n).map(|v| on(v).then(|| uf.find(v))).collect()
}

pub const PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Sum over the six color pairs of the number of two-colored components.
pub fn omega_by_union_find(n: usize, edges: &[(usize, usize)], c: &[u8]) -> usize {
    PAIRS
        .iter()
        .map(|&(i, j)| {
            pair_components(n, edges, c, i, j)
                .into_iter()
                .flatten()
                .collect::<BTreeSet<_>>()
                .len()
        })
        .sum()
}

/// First-appearance relabeling of a color vector.
pub fn relabel_colors(c: &[u8]) -> Vec<u8> {
    let mut map = [0u8; 5];
    let mut next = 1;
    c.iter()
        .map(|&x| {
            if map[x as usize] == 0 {
                map[x as usize] = next;
                next += 1;
            }
            map[x as usize]
        })
        .collect()
}

/// Kempe class of `c` by breadth-first search over union-find components.
pub fn kempe_class_oracle(n: usize, edges: &[(usize, usize)], c: &[u8]) -> BTreeSet<Vec<u8>> {
    let start = relabel_colors(c);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for &(i, j) in &PAIRS {
            let comp = pair_components(n, edges, &f, i, j);
            let roots: BTreeSet<usize> = comp.iter().flatten().copied().collect();
            if roots.len() < 2 {
                continue;
            }
            for r in roots {
                let h: Vec<u8> = f
                    .iter()
                    .zip(&comp)
                    .map(|(&x, &k)| match k {
                        Some(k) if k == r => {
                            if x == i {
                                j
                            } else {
                                i
                            }
                        }
                        _ => x,
                    })
                    .collect();
                let h = relabel_colors(&h);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
    }
    seen
}

fn kuratowski_free_small(n: usize, adj: &[Vec<bool>]) -> bool {
    let subsets = |k: usize| (0u32..1 << n).filter(move |m| m.count_ones() as usize == k);
    let members = |m: u32| (0..n).filter(move |&v| m & (1 << v) != 0);
    // K5, or K5 with one edge subdivided by a sixth vertex.
    for s in subsets(5) {
        let vs: Vec<usize> = members(s).collect();
        let missing: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .map(|(a, b)| (vs[a], vs[b]))
            .filter(|&(a, b)| !adj[a][b])
            .collect();
        match missing.as_slice() {
            [] => return false,
            [(a, b)]
                if (0..n).any(|w| s & (1 << w) == 0 && adj[w][*a] && adj[w][*b]) => {
                    return false;
                }
            _ => {}
        }
    }
    // K3,3 on six vertices.
    if n == 6 {
        for left in subsets(3) {
            let right = (1u32 << 6) - 1 - left;
            if members(left).all(|a| members(right).all(|b| adj[a][b])) {
                return false;
            }
        }
    }
    true
}

/// Triangulations of order `n <= 6` up to isomorphism, by testing every
/// `3n - 6`-edge subset of `K_n` for planarity with Kuratowski subgraphs.
/// Only subdivisions that fit in six vertices are checked, which is all
/// of them at these orders.
pub fn triangulations_by_edge_subsets(n: usize) -> usize {
    assert!((4..=6).contains(&n));
    let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = 3 * n - 6;
    let mut classes = IsoClasses::default();
    for mask in 0u32..1 << all.len() {
        if mask.count_ones() as usize != m {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..all.len()).filter(|&i| mask & (1 << i) != 0).map(|i| all[i]).collect();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in &edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        if kuratowski_free_small(n, &adj) {
            classes.insert(n, &edges);
        }
    }
    classes.len()
}
