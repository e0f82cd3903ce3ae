//! The `.rot` text format and construction from neighbour lists.

use super::{DartId, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Upper bound on parallel-edge pairings tried before giving up.
const MAX_PAIRINGS: usize = 1 << 16;

/// Slot positions of each unordered pair, seen from the smaller and the
/// larger end.
type SlotGroups = BTreeMap<(VertexId, VertexId), (Vec<usize>, Vec<usize>)>;

pub(super) fn from_neighbor_lists(
    lists: &[Vec<VertexId>],
    outer: Option<&[VertexId]>,
) -> Result<PlaneGraph> {
    let n = lists.len();
    if n == 0 {
        return Err(Error::InvalidRotation("no vertices".into()));
    }
    let mut groups = SlotGroups::new();
    for (u, list) in lists.iter().enumerate() {
        for (i, &w) in list.iter().enumerate() {
            if w >= n {
                return Err(Error::InvalidRotation(format!(
                    "vertex {} lists unknown neighbour {}",
                    u + 1,
                    w + 1
                )));
            }
            if w == u {
                return Err(Error::Loop(u));
            }
            let key = (u.min(w), u.max(w));
            let entry = groups.entry(key).or_default();
            if u < w {
                entry.0.push(i);
            } else {
                entry.1.push(i);
            }
        }
    }
    for (&(u, w), (a, b)) in &groups {
        if a.len() != b.len() {
            return Err(Error::InvalidRotation(format!(
                "edge {}-{} listed {} times at {} but {} times at {}",
                u + 1,
                w + 1,
                a.len(),
                u + 1,
                b.len(),
                w + 1
            )));
        }
    }
    let multi: Vec<(VertexId, VertexId)> = groups
        .iter()
        .filter(|(_, (a, _))| a.len() > 1)
        .map(|(&k, _)| k)
        .collect();
    let mut shifts = vec![0usize; multi.len()];
    let mut tried = 0usize;
    loop {
        tried += 1;
        let shift_of: BTreeMap<_, _> = multi.iter().copied().zip(shifts.iter().copied()).collect();
        let (origin, rot) = assemble(lists, &groups, &shift_of);
        match PlaneGraph::from_darts(origin, rot, 0) {
            Ok(g) => return attach_outer(g, outer),
            Err(Error::NotPlanar(x)) => {
                if !advance(&mut shifts, &multi, &groups) || tried >= MAX_PAIRINGS {
                    return Err(Error::NotPlanar(x));
                }
            }
            Err(e) => return Err(e),
        }
    }
}

fn advance(
    shifts: &mut [usize],
    multi: &[(VertexId, VertexId)],
    groups: &SlotGroups,
) -> bool {
    for (k, s) in shifts.iter_mut().enumerate() {
        let m = groups[&multi[k]].0.len();
        *s += 1;
        if *s < m {
            return true;
        }
        *s = 0;
    }
    false
}

fn assemble(
    lists: &[Vec<VertexId>],
    groups: &SlotGroups,
    shift_of: &BTreeMap<(VertexId, VertexId), usize>,
) -> (Vec<VertexId>, Vec<Vec<DartId>>) {
    let n = lists.len();
    let mut slot: Vec<Vec<DartId>> = lists.iter().map(|l| vec![usize::MAX; l.len()]).collect();
    let mut origin = Vec::new();
    for (&(u, w), (a, b)) in groups {
        let m = a.len();
        let s = shift_of.get(&(u, w)).copied().unwrap_or(0);
        for (i, &pu) in a.iter().enumerate() {
            // Parallel edges appear in opposite cyclic order at the far end.
            let pw = b[(s + m - i) % m];
            let d = origin.len();
            origin.push(u);
            origin.push(w);
            slot[u][pu] = d;
            slot[w][pw] = d + 1;
        }
    }
    debug_assert_eq!(slot.len(), n);
    (origin, slot)
}

fn attach_outer(g: PlaneGraph, outer: Option<&[VertexId]>) -> Result<PlaneGraph> {
    let Some(walk) = outer else {
        return Ok(g);
    };
    match find_face_dart(&g, walk) {
        Some(d) => Ok(g.with_outer_dart(d)),
        None => Err(Error::InvalidRotation(format!(
            "outer walk {:?} is not a face",
            walk.iter().map(|v| v + 1).collect::<Vec<_>>()
        ))),
    }
}

/// A dart `walk[0] -> walk[1]` whose face visits exactly `walk`.
pub(crate) fn find_face_dart(g: &PlaneGraph, walk: &[VertexId]) -> Option<DartId> {
    if walk.len() < 2 || walk.iter().any(|&v| v >= g.n()) {
        return None;
    }
    g.darts_of(walk[0])
        .iter()
        .copied()
        .filter(|&d| g.target(d) == walk[1])
        .find(|&d0| {
            let mut d = d0;
            for k in 0..walk.len() {
                if g.origin(d) != walk[k] {
                    return false;
                }
                d = g.face_next(d);
            }
            d == d0
        })
}

pub(super) fn parse(text: &str) -> Result<PlaneGraph> {
    let mut n: Option<usize> = None;
    let mut lists: Vec<Option<Vec<VertexId>>> = Vec::new();
    let mut outer: Option<Vec<VertexId>> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line, msg };
        let Some(count) = n else {
            let v: usize = content
                .parse()
                .map_err(|_| perr(format!("expected vertex count, found `{content}`")))?;
            if v == 0 {
                return Err(perr("vertex count must be positive".into()));
            }
            n = Some(v);
            lists = vec![None; v];
            continue;
        };
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| perr("expected `v: neighbours` or `outer: ...`".into()))?;
        let parse_vertex = |tok: &str| -> Result<VertexId> {
            let v: usize = tok
                .parse()
                .map_err(|_| perr(format!("`{tok}` is not a vertex number")))?;
            if v == 0 || v > count {
                return Err(perr(format!("vertex {v} out of range 1..={count}")));
            }
            Ok(v - 1)
        };
        let items: Vec<VertexId> = tail
            .split_whitespace()
            .map(parse_vertex)
            .collect::<Result<_>>()?;
        let head = head.trim();
        if head == "outer" {
            if outer.is_some() {
                return Err(perr("duplicate `outer` line".into()));
            }
            outer = Some(items);
        } else {
            let v = parse_vertex(head)?;
            if lists[v].is_some() {
                return Err(perr(format!("vertex {} listed twice", v + 1)));
            }
            lists[v] = Some(items);
        }
    }
    let Some(count) = n else {
        return Err(Error::Parse {
            line: last_line.max(1),
            msg: "empty input".into(),
        });
    };
    let mut full = Vec::with_capacity(count);
    for (v, l) in lists.into_iter().enumerate() {
        match l {
            Some(l) => full.push(l),
            None => {
                return Err(Error::Parse {
                    line: last_line.max(1),
                    msg: format!("vertex {} has no rotation line", v + 1),
                })
            }
        }
    }
    from_neighbor_lists(&full, outer.as_deref())
}

pub(super) fn write(g: &PlaneGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", g.n());
    for v in 0..g.n() {
        let _ = write!(s, "{}:", v + 1);
        for w in g.neighbors(v) {
            let _ = write!(s, " {}", w + 1);
        }
        s.push('\n');
    }
    if g.dart_count() > 0 {
        // Starts at the outer dart so that corner order survives a reload.
        let _ = write!(s, "outer:");
        let mut d = g.outer_dart();
        loop {
            let _ = write!(s, " {}", g.origin(d) + 1);
            d = g.face_next(d);
            if d == g.outer_dart() {
                break;
            }
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_preserves_embedding() {
        let g = fixtures::icosahedron();
        let text = g.to_rot_string();
        let h = PlaneGraph::parse_rot(&text).unwrap();
        assert_eq!(h.to_rot_string(), text);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = PlaneGraph::parse_rot("4\n1: 2 3 4\n2: 1 x\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_outer_line() {
        let text = "# tetrahedron\n4\n1: 2 3 4\n2: 1 4 3 # inline\n3: 1 2 4\n4: 1 3 2\nouter: 2 1 3\n";
        let g = PlaneGraph::parse_rot(text).unwrap();
        assert_eq!(g.face_vertices(g.outer_face()), vec![1, 0, 2]);
    }

    #[test]
    fn corner_order_survives_reload() {
        for k in 0..4 {
            let s = fixtures::b4_smpg();
            let d = s.graph.face_darts(s.graph.outer_face())[k];
            let g = s.graph.with_outer_dart(d);
            let back = PlaneGraph::parse_rot(&g.to_rot_string()).unwrap();
            assert_eq!(back.origin(back.outer_dart()), g.origin(d));
            assert_eq!(back.target(back.outer_dart()), g.target(d));
        }
    }

    #[test]
    fn outer_must_be_a_face() {
        let text = "4\n1: 2 3 4\n2: 1 4 3\n3: 1 2 4\n4: 1 3 2\nouter: 1 2 3\n";
        assert!(PlaneGraph::parse_rot(text).is_err());
    }

    #[test]
    fn multigraph_round_trip() {
        let g = fixtures::k4();
        let d = g.find_dart(0, 1).unwrap();
        let (h, _) = crate::ce_ops::e2wo_graph(&g, d).unwrap();
        let back = PlaneGraph::parse_rot(&h.to_rot_string()).unwrap();
        assert_eq!(back.canonical_form(), h.canonical_form());
    }
}
