//! Canonical codes for embedded graphs, up to isomorphism and reflection.
//!
//! A code is produced by a breadth-first walk from a start dart in a fixed
//! orientation. Each vertex contributes, for every dart in rotation order
//! from its own start dart, the BFS number of the target and the position
//! of the twin dart in the target's rotation, followed by a `0`. The code
//! determines the rotation system completely, so equal codes mean
//! isomorphic embeddings. The canonical form is the least code over all
//! admissible start darts and both orientations.

use super::{DartId, PlaneGraph};
use crate::error::{Error, Result};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u16>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[u16] {
        &self.0
    }

    /// Big-endian byte string; byte order agrees with the `Ord` impl.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if !bytes.len().is_multiple_of(2) {
            return None;
        }
        Some(CanonicalForm(
            bytes
                .chunks_exact(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]))
                .collect(),
        ))
    }

    pub fn order(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }
}

struct Walker<'a> {
    g: &'a PlaneGraph,
    number: Vec<u16>,
    start: Vec<DartId>,
    queue: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(g: &'a PlaneGraph) -> Self {
        Walker {
            g,
            number: vec![0; g.n()],
            start: vec![0; g.n()],
            queue: Vec::with_capacity(g.n()),
        }
    }

    /// Emits the code for `(d0, mirrored)` into `out`, comparing against
    /// `best` on the fly. Returns the comparison with `best`; `Greater`
    /// aborts early and leaves `out` partial.
    fn run(&mut self, d0: DartId, mirrored: bool, best: Option<&[u16]>, out: &mut Vec<u16>) -> Ordering {
        let g = self.g;
        self.number.iter_mut().for_each(|x| *x = 0);
        self.queue.clear();
        out.clear();
        let mut state = if best.is_some() { Ordering::Equal } else { Ordering::Less };
        let push = |out: &mut Vec<u16>, x: u16, state: &mut Ordering| -> bool {
            if *state == Ordering::Equal {
                let b = best.unwrap()[out.len()];
                match x.cmp(&b) {
                    Ordering::Greater => return false,
                    Ordering::Less => *state = Ordering::Less,
                    Ordering::Equal => {}
                }
            }
            out.push(x);
            true
        };
        if !push(out, g.n() as u16, &mut state) || !push(out, g.edge_count() as u16, &mut state) {
            return Ordering::Greater;
        }
        let v0 = g.origin(d0);
        self.number[v0] = 1;
        self.start[v0] = d0;
        self.queue.push(v0);
        let mut head = 0;
        let mut next_number = 2u16;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let list = g.darts_of(v);
            let deg = list.len();
            let s = g.position(self.start[v]);
            for k in 0..deg {
                let idx = if mirrored { (s + deg - k) % deg } else { (s + k) % deg };
                let d = list[idx];
                let w = g.target(d);
                let t = d ^ 1;
                if self.number[w] == 0 {
                    self.number[w] = next_number;
                    next_number += 1;
                    self.start[w] = t;
                    self.queue.push(w);
                }
                let dw = g.degree(w);
                let sw = g.position(self.start[w]);
                let pt = g.position(t);
                let rel = if mirrored { (sw + dw - pt) % dw } else { (pt + dw - sw) % dw };
                if !push(out, self.number[w], &mut state) || !push(out, rel as u16, &mut state) {
                    return Ordering::Greater;
                }
            }
            if !push(out, 0, &mut state) {
                return Ordering::Greater;
            }
        }
        state
    }
}

/// With `roots = Some(darts)`, only those darts (and, in the mirrored
/// orientation, their twins) may start the walk.
pub(super) fn canonical_form(g: &PlaneGraph, roots: Option<&[DartId]>) -> CanonicalForm {
    let mut candidates: Vec<(DartId, bool)> = Vec::new();
    let key = |d: DartId| (g.degree(g.origin(d)), g.degree(g.target(d)));
    match roots {
        None => {
            let best = (0..g.dart_count()).map(key).max().unwrap_or((0, 0));
            for d in 0..g.dart_count() {
                if key(d) == best {
                    candidates.push((d, false));
                    candidates.push((d, true));
                }
            }
        }
        Some(darts) => {
            let best = darts
                .iter()
                .flat_map(|&d| [key(d), key(d ^ 1)])
                .max()
                .unwrap_or((0, 0));
            for &d in darts {
                if key(d) == best {
                    candidates.push((d, false));
                }
                if key(d ^ 1) == best {
                    candidates.push((d ^ 1, true));
                }
            }
        }
    }
    let mut walker = Walker::new(g);
    let mut best: Vec<u16> = Vec::new();
    let mut scratch: Vec<u16> = Vec::new();
    let mut have = false;
    for (d, m) in candidates {
        let ord = walker.run(d, m, if have { Some(&best) } else { None }, &mut scratch);
        if ord == Ordering::Less {
            std::mem::swap(&mut best, &mut scratch);
            have = true;
        }
    }
    CanonicalForm(best)
}

/// Rebuilds an embedding from a code. The start vertex's first dart is
/// the outer dart, so rooted codes decode with their outer face intact.
pub(super) fn decode(code: &CanonicalForm) -> Result<PlaneGraph> {
    let c = &code.0;
    let bad = || Error::InvalidRotation("malformed canonical code".into());
    if c.len() < 2 {
        return Err(bad());
    }
    let n = c[0] as usize;
    let e = c[1] as usize;
    let mut entries: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
    let mut i = 2;
    for _ in 0..n {
        let mut list = Vec::new();
        loop {
            let x = *c.get(i).ok_or_else(bad)? as usize;
            i += 1;
            if x == 0 {
                break;
            }
            let p = *c.get(i).ok_or_else(bad)? as usize;
            i += 1;
            if x > n {
                return Err(bad());
            }
            list.push((x - 1, p));
        }
        entries.push(list);
    }
    if i != c.len() {
        return Err(bad());
    }
    let mut id: Vec<Vec<usize>> = entries.iter().map(|l| vec![usize::MAX; l.len()]).collect();
    let mut origin = Vec::with_capacity(2 * e);
    for v in 0..n {
        for k in 0..entries[v].len() {
            if id[v][k] != usize::MAX {
                continue;
            }
            let (w, p) = entries[v][k];
            let back = entries.get(w).and_then(|l| l.get(p)).ok_or_else(bad)?;
            if *back != (v, k) || id[w][p] != usize::MAX {
                return Err(bad());
            }
            let d = origin.len();
            origin.push(v);
            origin.push(w);
            id[v][k] = d;
            id[w][p] = d + 1;
        }
    }
    if origin.len() != 2 * e {
        return Err(bad());
    }
    let outer = id.first().and_then(|l| l.first()).copied().unwrap_or(0);
    PlaneGraph::from_darts(origin, id, outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn relabeled_icosahedra_agree() {
        let g = fixtures::icosahedron();
        let perm: Vec<usize> = (0..12).map(|i| (i * 5 + 3) % 12).collect();
        assert_eq!(g.canonical_form(), g.relabel(&perm).canonical_form());
    }

    #[test]
    fn mirror_is_identified() {
        let g = fixtures::order8_ubcmpg();
        assert_eq!(g.canonical_form(), g.mirror().canonical_form());
    }

    #[test]
    fn decode_round_trip() {
        for g in [fixtures::k4(), fixtures::octahedron(), fixtures::icosahedron()] {
            let c = g.canonical_form();
            let h = PlaneGraph::from_canonical(&c).unwrap();
            assert_eq!(h.canonical_form(), c);
            assert_eq!(CanonicalForm::from_bytes(&c.to_bytes()), Some(c));
        }
    }

    #[test]
    fn rooted_form_keeps_outer_face() {
        let g = fixtures::b4();
        let c = g.canonical_form_rooted();
        let h = PlaneGraph::from_canonical(&c).unwrap();
        assert_eq!(h.face_len(h.outer_face()), 4);
        assert_eq!(h.canonical_form_rooted(), c);
    }

    #[test]
    fn different_degree_sequences_differ() {
        assert_ne!(fixtures::octahedron().canonical_form(), fixtures::k4().canonical_form());
    }
}
