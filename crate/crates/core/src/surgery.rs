//! Surgery (pinching two edges of a face together) and its inverse.
//!
//! For a face walked with the face on the right, three consecutive darts
//! `x -> a`, `a -> b`, `b -> c` carry edges `e1`, `e`, `e2`. Pinching `e1`
//! against `e2` inside the face creates a vertex `v` with neighbours
//! `a, x, c, b` counterclockwise, and a triangle `v a b`.

use std::fmt;

use crate::curves::is_atoroidal;
use crate::error::SurgeryError;
use crate::planemap::{dart, remove_vertex, vertex_of, PlaneMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurgeryMove {
    pub face: usize,
    pub e: usize,
    pub e1: usize,
    pub e2: usize,
}

impl fmt::Display for SurgeryMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "surgery f{} e{} {} {}", self.face, self.e, self.e1, self.e2)
    }
}

impl SurgeryMove {
    /// Parses `surgery f<face> e<edge> <edge1> <edge2>`.
    pub fn parse(s: &str) -> Option<SurgeryMove> {
        let t: Vec<&str> = s.split_whitespace().collect();
        if t.len() != 5 || t[0] != "surgery" {
            return None;
        }
        Some(SurgeryMove {
            face: t[1].strip_prefix('f')?.parse().ok()?,
            e: t[2].strip_prefix('e')?.parse().ok()?,
            e1: t[3].parse().ok()?,
            e2: t[4].parse().ok()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitMove {
    pub vertex: usize,
}

impl fmt::Display for SplitMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "split v{}", self.vertex)
    }
}

impl SplitMove {
    pub fn parse(s: &str) -> Option<SplitMove> {
        let t: Vec<&str> = s.split_whitespace().collect();
        if t.len() != 2 || t[0] != "split" {
            return None;
        }
        Some(SplitMove { vertex: t[1].strip_prefix('v')?.parse().ok()? })
    }
}

/// Every surgery on faces with more than three vertices. Both orders of the
/// pinched pair are listed; they give the same graph.
pub fn legal_surgeries(g: &PlaneMap) -> Vec<SurgeryMove> {
    let mut out = Vec::new();
    for (f, cycle) in g.faces().iter().enumerate() {
        let k = cycle.len();
        if k <= 3 {
            continue;
        }
        for i in 0..k {
            let e = g.edge_of(cycle[i] as usize);
            let prev = g.edge_of(cycle[(i + k - 1) % k] as usize);
            let next = g.edge_of(cycle[(i + 1) % k] as usize);
            out.push(SurgeryMove { face: f, e, e1: prev, e2: next });
            out.push(SurgeryMove { face: f, e, e1: next, e2: prev });
        }
    }
    out
}

pub fn apply_surgery(g: &PlaneMap, m: &SurgeryMove) -> Result<PlaneMap, SurgeryError> {
    let illegal = |why: &str| SurgeryError::IllegalMove(format!("{m}: {why}"));
    if m.face >= g.face_count() {
        return Err(illegal("no such face"));
    }
    let cycle = g.face(m.face);
    let k = cycle.len();
    if k <= 3 {
        return Err(illegal("face has at most three vertices"));
    }
    let i = cycle
        .iter()
        .position(|&d| g.edge_of(d as usize) == m.e)
        .ok_or_else(|| illegal("edge not on face"))?;
    let d1 = cycle[(i + k - 1) % k] as usize;
    let d2 = cycle[(i + 1) % k] as usize;
    let (p, q) = (g.edge_of(d1), g.edge_of(d2));
    if m.e1 == m.e2 || !((p == m.e1 && q == m.e2) || (p == m.e2 && q == m.e1)) {
        return Err(illegal("pinched edges are not the neighbours of e"));
    }
    let v = g.vertex_count();
    let mut mate = g.mates();
    mate.extend([0; 4]);
    let (m1, m2) = (g.mate(d1), g.mate(d2));
    let link = |mate: &mut Vec<usize>, a: usize, b: usize| {
        mate[a] = b;
        mate[b] = a;
    };
    link(&mut mate, m1, dart(v, 0));
    link(&mut mate, d1, dart(v, 1));
    link(&mut mate, m2, dart(v, 2));
    link(&mut mate, d2, dart(v, 3));
    Ok(PlaneMap::from_mates(v + 1, mate, g.free_loops())?)
}

/// Slots `k` at which the corner `(k, k+1)` of `v` is a triangle whose two
/// neighbouring corners at `v` lie in faces with more than three vertices.
fn simple_corners(g: &PlaneMap, v: usize) -> impl Iterator<Item = usize> + '_ {
    (0..4).filter(move |&k| {
        g.face_size(g.corner_face(v, k)) == 3
            && g.face_size(g.corner_face(v, (k + 3) % 4)) > 3
            && g.face_size(g.corner_face(v, (k + 1) % 4)) > 3
    })
}

/// All (vertex, triangle face) pairs making the vertex simple.
pub fn simple_vertices(g: &PlaneMap) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        for k in simple_corners(g, v) {
            out.push((v, g.corner_face(v, k)));
        }
    }
    out
}

/// Cuts open a simple vertex, returning the smaller map and the surgery on it
/// that restores `g`.
pub fn split_with_move(g: &PlaneMap, s: &SplitMove) -> Result<(PlaneMap, SurgeryMove), SurgeryError> {
    let v = s.vertex;
    if v >= g.vertex_count() {
        return Err(SurgeryError::NotSimpleVertex(v));
    }
    let k = simple_corners(g, v).next().ok_or(SurgeryError::NotSimpleVertex(v))?;
    // Triangle between slot k (towards b) and slot k+1 (towards a).
    let sa = g.mate(dart(v, k + 1));
    let sx = g.mate(dart(v, k + 2));
    let sc = g.mate(dart(v, k + 3));
    let sb = g.mate(dart(v, k));
    if [sa, sx, sc, sb].iter().any(|&d| vertex_of(d) == v) {
        return Err(SurgeryError::NotSimpleVertex(v));
    }
    let mut mate = g.mates();
    mate[sa] = sx;
    mate[sx] = sa;
    mate[sc] = sb;
    mate[sb] = sc;
    let relabel = remove_vertex(&mut mate, v);
    let h = PlaneMap::from_mates(g.vertex_count() - 1, mate, g.free_loops())?;
    // In h: sx runs x -> a, then a -> b, then sb runs b -> c.
    let (x_to_a, b_to_c) = (relabel[sx], relabel[sb]);
    let a_to_b = h.face_next(x_to_a);
    debug_assert_eq!(h.face_next(a_to_b), b_to_c);
    let mv = SurgeryMove {
        face: h.face_of(x_to_a),
        e: h.edge_of(a_to_b),
        e1: h.edge_of(x_to_a),
        e2: h.edge_of(b_to_c),
    };
    Ok((h, mv))
}

pub fn split_at(g: &PlaneMap, s: &SplitMove) -> Result<PlaneMap, SurgeryError> {
    split_with_move(g, s).map(|(h, _)| h)
}

/// Splits at every simple vertex and keeps the atoroidal results.
pub fn atoroidal_predecessors(g: &PlaneMap) -> Vec<(SplitMove, PlaneMap)> {
    let mut verts: Vec<usize> = simple_vertices(g).into_iter().map(|(v, _)| v).collect();
    verts.dedup();
    verts
        .into_iter()
        .filter_map(|v| {
            let s = SplitMove { vertex: v };
            let h = split_at(g, &s).ok()?;
            is_atoroidal(&h).then_some((s, h))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_code, is_isomorphic, Chirality};
    use crate::curves::is_hyperbolic;
    use crate::planemap::{exception, torus_graph, ExceptionKind};

    const M: Chirality = Chirality::ModReflection;

    #[test]
    fn move_counts() {
        assert!(legal_surgeries(&torus_graph(3).unwrap()).is_empty());
        assert_eq!(legal_surgeries(&torus_graph(4).unwrap()).len(), 16);
        assert!(legal_surgeries(&exception(ExceptionKind::TrefoilProjection)).is_empty());
    }

    #[test]
    fn t4_plus_is_unique() {
        let t4 = torus_graph(4).unwrap();
        let results: Vec<PlaneMap> =
            legal_surgeries(&t4).iter().map(|m| apply_surgery(&t4, m).unwrap()).collect();
        assert_eq!(results.len(), 16);
        let code = canonical_code(&results[0], M).unwrap();
        for r in &results {
            assert_eq!(r.vertex_count(), 9);
            assert_eq!(canonical_code(r, M).unwrap(), code);
        }
        assert!(is_hyperbolic(&results[0]));
    }

    #[test]
    fn surgery_on_t3_is_illegal() {
        let t3 = torus_graph(3).unwrap();
        let m = SurgeryMove { face: 0, e: 0, e1: 1, e2: 2 };
        assert!(matches!(apply_surgery(&t3, &m), Err(SurgeryError::IllegalMove(_))));
    }

    #[test]
    fn simple_vertices_of_initial_objects() {
        for n in 3..=7 {
            assert!(simple_vertices(&torus_graph(n).unwrap()).is_empty());
        }
    }

    #[test]
    fn created_vertex_is_simple_and_splits_back() {
        for n in 4..=6 {
            let t = torus_graph(n).unwrap();
            for m in legal_surgeries(&t) {
                let g = apply_surgery(&t, &m).unwrap();
                let v = g.vertex_count() - 1;
                assert!(simple_vertices(&g).iter().any(|&(w, _)| w == v));
                let (h, back) = split_with_move(&g, &SplitMove { vertex: v }).unwrap();
                assert!(is_isomorphic(&h, &t, M));
                assert!(is_isomorphic(&apply_surgery(&h, &back).unwrap(), &g, M));
            }
        }
    }

    #[test]
    fn t4_plus_predecessors() {
        let t4 = torus_graph(4).unwrap();
        let g = apply_surgery(&t4, &legal_surgeries(&t4)[0]).unwrap();
        let preds = atoroidal_predecessors(&g);
        assert!(preds.iter().any(|(s, h)| s.vertex == 8 && is_isomorphic(h, &t4, M)));
        assert!(atoroidal_predecessors(&t4).is_empty());
    }

    #[test]
    fn split_at_non_simple_vertex() {
        let t4 = torus_graph(4).unwrap();
        assert_eq!(split_at(&t4, &SplitMove { vertex: 0 }), Err(SurgeryError::NotSimpleVertex(0)));
        assert_eq!(split_at(&t4, &SplitMove { vertex: 99 }), Err(SurgeryError::NotSimpleVertex(99)));
    }

    #[test]
    fn move_text_round_trip() {
        let m = SurgeryMove { face: 3, e: 1, e1: 4, e2: 5 };
        assert_eq!(SurgeryMove::parse(&m.to_string()), Some(m));
        let s = SplitMove { vertex: 7 };
        assert_eq!(SplitMove::parse(&s.to_string()), Some(s));
    }
}
