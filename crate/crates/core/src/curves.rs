//! Simple closed curves meeting a map transversally, and triviality.
//!
//! A curve with `n > 0` crossings is stored as the cyclic sequence of darts it
//! crosses: crossing dart `d` means passing from the face on the right of `d`
//! to the face on its left. Several crossings of one edge are ordered by a
//! rank counted from the tail of the edge's lower dart.
//!
//! A candidate sequence is realized by building the overlay map of the graph
//! and the curve: every crossing point becomes a 4-valent vertex. The curve is
//! simple exactly when the overlay is spherical. Candidates with a removable
//! bigon against an edge are discarded, so each isotopy class appears once.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::canon::{is_isomorphic, Chirality};
use crate::error::CurveError;
use crate::planemap::{dart, exception, rotate, vertex_of, ExceptionKind, PlaneMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub dart: u32,
    pub rank: u8,
}

/// An isotopy class of simple closed curve in the complement of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveCode {
    crossings: Vec<Crossing>,
    /// Face holding a curve with no crossings. For a disconnected map this
    /// names the curve separating the first component from the rest.
    face: u32,
}

impl CurveCode {
    pub fn zero(face: usize) -> CurveCode {
        CurveCode { crossings: Vec::new(), face: face as u32 }
    }

    /// Normalized code from raw crossings (no validation).
    pub fn from_crossings(g: &PlaneMap, crossings: Vec<Crossing>) -> CurveCode {
        CurveCode { crossings: normalize(g, &crossings), face: 0 }
    }

    /// The same curve traversed the other way, not normalized.
    pub fn reversed(&self, g: &PlaneMap) -> CurveCode {
        let crossings = self
            .crossings
            .iter()
            .rev()
            .map(|c| Crossing { dart: g.mate(c.dart as usize) as u32, rank: c.rank })
            .collect();
        CurveCode { crossings, face: self.face }
    }

    pub fn degree(&self) -> usize {
        self.crossings.len()
    }

    pub fn raw(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn zero_face(&self) -> Option<usize> {
        self.crossings.is_empty().then_some(self.face as usize)
    }

    /// (edge, rank) for every crossing, in curve order.
    pub fn crossings(&self, g: &PlaneMap) -> Vec<(usize, usize)> {
        self.crossings.iter().map(|c| (g.edge_of(c.dart as usize), c.rank as usize)).collect()
    }

    /// Face traversed between crossing `i` and crossing `i+1`.
    pub fn passages(&self, g: &PlaneMap) -> Vec<usize> {
        if self.crossings.is_empty() {
            return vec![self.face as usize];
        }
        self.crossings.iter().map(|c| g.face_of(g.mate(c.dart as usize))).collect()
    }

    /// `n=<k>; e<edge>.<rank> f<face> ...`
    pub fn display<'a>(&'a self, g: &'a PlaneMap) -> impl fmt::Display + 'a {
        struct D<'a>(&'a CurveCode, &'a PlaneMap);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (c, g) = (self.0, self.1);
                write!(f, "n={};", c.degree())?;
                if c.crossings.is_empty() {
                    return write!(f, " f{}", c.face);
                }
                for ((e, r), face) in c.crossings(g).into_iter().zip(c.passages(g)) {
                    write!(f, " e{e}.{r} f{face}")?;
                }
                Ok(())
            }
        }
        D(self, g)
    }

    /// Compact dart form used by serialized trees: `c<dart>.<rank>` or `z<face>`.
    pub fn to_token_string(&self) -> String {
        if self.crossings.is_empty() {
            return format!("z{}", self.face);
        }
        self.crossings
            .iter()
            .map(|c| format!("c{}.{}", c.dart, c.rank))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_token_string(s: &str) -> Option<CurveCode> {
        if let Some(f) = s.strip_prefix('z') {
            return f.parse().ok().map(CurveCode::zero);
        }
        let crossings = s
            .split(',')
            .map(|t| {
                let (d, r) = t.strip_prefix('c')?.split_once('.')?;
                Some(Crossing { dart: d.parse().ok()?, rank: r.parse().ok()? })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CurveCode { crossings, face: 0 })
    }
}

/// Least representative over cyclic rotations and reversal. Reversing the
/// direction crosses every edge through its other dart.
fn normalize(g: &PlaneMap, c: &[Crossing]) -> Vec<Crossing> {
    let n = c.len();
    let reversed: Vec<Crossing> = c
        .iter()
        .rev()
        .map(|x| Crossing { dart: g.mate(x.dart as usize) as u32, rank: x.rank })
        .collect();
    let mut best: Option<Vec<Crossing>> = None;
    for seq in [c, &reversed[..]] {
        for s in 0..n {
            let cand: Vec<Crossing> = (0..n).map(|k| seq[(s + k) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// What the strand leaving a boundary point or a side dart runs into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    /// A dart at a vertex of the same side.
    Dart(usize),
    /// Another point where the curve meets the graph, by curve order.
    Boundary(usize),
}

/// The part of the graph inside one disk bounded by a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideGraphData {
    /// True for the disk on the left of the curve's stored direction.
    pub left: bool,
    /// Vertices of the graph inside this disk.
    pub vertices: Vec<usize>,
    /// For each crossing point, in curve order, where its strand leads.
    pub boundary_links: Vec<Link>,
    /// For each dart of a vertex inside this disk (indexed by dart), where
    /// its edge leads. `None` for darts of vertices on the other side.
    pub dart_links: Vec<Option<Link>>,
    /// Region of this disk touching the curve between crossing `i` and `i+1`.
    pub gap_regions: Vec<u32>,
    /// Pairs of regions of this disk separated by one segment of the graph.
    pub region_adjacency: BTreeSet<(u32, u32)>,
    /// Number of free circles inside this disk.
    pub circles: usize,
}

impl SideGraphData {
    pub fn boundary_len(&self) -> usize {
        self.boundary_links.len()
    }

    fn empty(left: bool, circles: usize) -> SideGraphData {
        SideGraphData {
            left,
            vertices: Vec::new(),
            boundary_links: Vec::new(),
            dart_links: Vec::new(),
            gap_regions: Vec::new(),
            region_adjacency: BTreeSet::new(),
            circles,
        }
    }

    fn link_of(&self, d: usize) -> Link {
        self.dart_links[d].expect("dart of a side vertex")
    }

    /// An arc inside this disk meeting the graph at most once whose ends cut
    /// the curve into two pieces with at least two crossings each.
    pub fn has_compression(&self) -> bool {
        let n = self.gap_regions.len();
        for i in 0..n {
            for j in i + 2..n {
                if n - (j - i) < 2 {
                    continue;
                }
                let (a, b) = (self.gap_regions[i], self.gap_regions[j]);
                if a == b || self.region_adjacency.contains(&(a.min(b), a.max(b))) {
                    return true;
                }
            }
        }
        false
    }

    fn is_vertex_neighborhood(&self) -> bool {
        self.circles == 0
            && self.boundary_len() == 4
            && self.vertices.len() == 1
            && (0..4).all(|k| matches!(self.link_of(dart(self.vertices[0], k)), Link::Boundary(_)))
    }
}

/// How one side of a curve meets the graph.
///
/// The four-point patterns double as the trivial sides of the bigon and
/// surgery arguments: two disjoint arcs are the neighborhood of two parallel
/// arcs, and two arcs crossing once are a vertex neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SidePattern {
    Empty,
    SingleArc,
    TwoParallelArcs,
    VertexNeighborhood,
    /// Three arcs, each joining neighbouring points.
    SixTrivialType1,
    /// Three arcs, one of them separating the other two.
    SixTrivialType2,
    /// A vertex neighbourhood beside one arc.
    SixTrivialType3,
    /// The neighbourhood of an edge joining two distinct vertices.
    SixTrivialType4,
    NonTrivial,
}

impl SidePattern {
    /// Patterns that make a 0-, 2- or 4-curve trivial.
    pub fn is_small_trivial(self) -> bool {
        matches!(
            self,
            SidePattern::Empty
                | SidePattern::SingleArc
                | SidePattern::TwoParallelArcs
                | SidePattern::VertexNeighborhood
        )
    }

    pub fn is_six_trivial(self) -> bool {
        matches!(
            self,
            SidePattern::SixTrivialType1
                | SidePattern::SixTrivialType2
                | SidePattern::SixTrivialType3
                | SidePattern::SixTrivialType4
        )
    }
}

pub fn classify_side(side: &SideGraphData) -> SidePattern {
    let n = side.boundary_len();
    if side.circles > 0 {
        return SidePattern::NonTrivial;
    }
    let k = side.vertices.len();
    let arc_to = |i: usize| match side.boundary_links[i] {
        Link::Boundary(j) => Some(j),
        Link::Dart(_) => None,
    };
    match (n, k) {
        (0, 0) => SidePattern::Empty,
        (2, 0) => SidePattern::SingleArc,
        (4, 0) => SidePattern::TwoParallelArcs,
        (4, 1) if side.is_vertex_neighborhood() => SidePattern::VertexNeighborhood,
        (6, 0) => {
            let adjacent = (0..6).all(|i| {
                let j = arc_to(i).unwrap();
                (i + 6 - j) % 6 == 1 || (j + 6 - i) % 6 == 1
            });
            if adjacent {
                SidePattern::SixTrivialType1
            } else {
                SidePattern::SixTrivialType2
            }
        }
        (6, 1) => {
            let v = side.vertices[0];
            let direct = (0..4).all(|s| matches!(side.link_of(dart(v, s)), Link::Boundary(_)));
            if direct {
                SidePattern::SixTrivialType3
            } else {
                SidePattern::NonTrivial
            }
        }
        (6, 2) => {
            let (a, b) = (side.vertices[0], side.vertices[1]);
            let mut between = 0;
            let mut to_boundary = 0;
            for v in [a, b] {
                for s in 0..4 {
                    match side.link_of(dart(v, s)) {
                        Link::Boundary(_) => to_boundary += 1,
                        Link::Dart(d) if vertex_of(d) != v => between += 1,
                        Link::Dart(_) => {}
                    }
                }
            }
            if between == 2 && to_boundary == 6 {
                SidePattern::SixTrivialType4
            } else {
                SidePattern::NonTrivial
            }
        }
        _ => SidePattern::NonTrivial,
    }
}

/// Overlay of a map and one curve. Vertices `0..V` are the graph's, vertex
/// `V+i` is crossing `i` with slots: 0 toward the head of the crossed edge's
/// lower dart, 1 on its left, 2 toward its tail, 3 on its right.
struct Overlay {
    mate: Vec<u32>,
    face_of: Vec<u32>,
    face_count: usize,
}

impl Overlay {
    fn corner_face(&self, v: usize, k: usize) -> usize {
        self.face_of[self.mate[dart(v, k)] as usize] as usize
    }
}

struct Realized {
    sides: [SideGraphData; 2],
}

/// Builds the overlay and both sides, or `None` if the sequence is not a
/// simple curve.
fn realize(g: &PlaneMap, cr: &[Crossing]) -> Option<Realized> {
    let nv = g.vertex_count();
    let n = cr.len();
    let total = nv + n;
    let mut mate = vec![u32::MAX; 4 * total];
    for d in 0..g.dart_count() {
        mate[d] = g.mate(d) as u32;
    }
    // Points on each edge, sorted by rank.
    let mut on_edge: Vec<Vec<(u8, usize)>> = vec![Vec::new(); g.edge_count()];
    for (i, c) in cr.iter().enumerate() {
        on_edge[g.edge_of(c.dart as usize)].push((c.rank, i));
    }
    for (e, pts) in on_edge.iter_mut().enumerate() {
        if pts.is_empty() {
            continue;
        }
        pts.sort_unstable();
        if pts.iter().enumerate().any(|(r, &(rank, _))| rank as usize != r) {
            return None;
        }
        let lo = g.edge_dart(e);
        let hi = g.mate(lo);
        let mut prev = lo;
        for &(_, i) in pts.iter() {
            let back = dart(nv + i, 2);
            mate[prev] = back as u32;
            mate[back] = prev as u32;
            prev = dart(nv + i, 0);
        }
        mate[prev] = hi as u32;
        mate[hi] = prev as u32;
    }
    let side_slot = |d: usize| if d == g.edge_dart(g.edge_of(d)) { 3 } else { 1 };
    for i in 0..n {
        let j = (i + 1) % n;
        let a = dart(nv + i, side_slot(g.mate(cr[i].dart as usize)));
        let b = dart(nv + j, side_slot(cr[j].dart as usize));
        if mate[a] != u32::MAX || mate[b] != u32::MAX {
            return None;
        }
        mate[a] = b as u32;
        mate[b] = a as u32;
    }

    let mut face_of = vec![u32::MAX; 4 * total];
    let mut face_count = 0usize;
    for start in 0..4 * total {
        if face_of[start] != u32::MAX {
            continue;
        }
        let mut d = start;
        loop {
            face_of[d] = face_count as u32;
            d = rotate(mate[d] as usize);
            if d == start {
                break;
            }
        }
        face_count += 1;
    }
    // Connected overlay with E = 2(V+n): spherical iff F = V + n + 2.
    if face_count != total + 2 {
        return None;
    }
    let ov = Overlay { mate, face_of, face_count };

    // Side of every graph vertex: 0 = left, 1 = right.
    let left_slot = |i: usize| {
        let d = cr[i].dart as usize;
        if d == g.edge_dart(g.edge_of(d)) {
            2
        } else {
            0
        }
    };
    let mut vside = vec![u8::MAX; nv];
    let mut stack = Vec::new();
    for i in 0..n {
        let l = left_slot(i);
        for (slot, s) in [(l, 0u8), (l ^ 2, 1u8)] {
            let far = ov.mate[dart(nv + i, slot)] as usize;
            let v = vertex_of(far);
            if v < nv {
                if vside[v] == u8::MAX {
                    vside[v] = s;
                    stack.push(v);
                } else if vside[v] != s {
                    return None;
                }
            }
        }
    }
    while let Some(v) = stack.pop() {
        for k in 0..4 {
            let w = vertex_of(ov.mate[dart(v, k)] as usize);
            if w < nv {
                if vside[w] == u8::MAX {
                    vside[w] = vside[v];
                    stack.push(w);
                } else if vside[w] != vside[v] {
                    return None;
                }
            }
        }
    }
    if vside.contains(&u8::MAX) {
        return None;
    }

    // Side of every overlay face, from corners.
    let mut fside = vec![u8::MAX; ov.face_count];
    let set_face = |f: usize, s: u8, fside: &mut Vec<u8>| -> bool {
        if fside[f] == u8::MAX {
            fside[f] = s;
            true
        } else {
            fside[f] == s
        }
    };
    for v in 0..nv {
        for k in 0..4 {
            if !set_face(ov.corner_face(v, k), vside[v], &mut fside) {
                return None;
            }
        }
    }
    for i in 0..n {
        let l = left_slot(i);
        for k in 0..4 {
            // Corner (k, k+1) touches slot l on the left side.
            let s = if k == l || (k + 1) % 4 == l { 0 } else { 1 };
            if !set_face(ov.corner_face(nv + i, k), s, &mut fside) {
                return None;
            }
        }
    }

    let mut sides = [SideGraphData::empty(true, 0), SideGraphData::empty(false, 0)];
    for (s, side) in sides.iter_mut().enumerate() {
        let s8 = s as u8;
        side.vertices = (0..nv).filter(|&v| vside[v] == s8).collect();
        let to_link = |x: usize| {
            let v = vertex_of(x);
            if v < nv {
                Link::Dart(x)
            } else {
                Link::Boundary(v - nv)
            }
        };
        side.dart_links = vec![None; g.dart_count()];
        for &v in &side.vertices {
            for k in 0..4 {
                side.dart_links[dart(v, k)] = Some(to_link(ov.mate[dart(v, k)] as usize));
            }
        }
        side.boundary_links = (0..n)
            .map(|i| {
                let l = left_slot(i);
                let slot = if s == 0 { l } else { l ^ 2 };
                to_link(ov.mate[dart(nv + i, slot)] as usize)
            })
            .collect();
        side.gap_regions = (0..n)
            .map(|i| {
                let p = side_slot(g.mate(cr[i].dart as usize));
                let f1 = ov.corner_face(nv + i, (p + 3) % 4);
                let f2 = ov.corner_face(nv + i, p);
                if fside[f1] == s8 {
                    f1 as u32
                } else {
                    f2 as u32
                }
            })
            .collect();
        // Graph segments: every overlay edge except the curve's.
        for x in 0..4 * total {
            let y = ov.mate[x] as usize;
            if x > y {
                continue;
            }
            let is_curve = vertex_of(x) >= nv && x % 2 == 1;
            if is_curve {
                continue;
            }
            let (a, b) = (ov.face_of[x], ov.face_of[y]);
            if fside[a as usize] == s8 && fside[b as usize] == s8 && a != b {
                side.region_adjacency.insert((a.min(b), a.max(b)));
            }
        }
    }
    Some(Realized { sides })
}

/// A curve sequence has a removable bigon if some passage joins two
/// neighbouring points on the same side of one edge.
fn has_edge_bigon(g: &PlaneMap, cr: &[Crossing]) -> bool {
    let n = cr.len();
    (0..n).any(|i| {
        let j = (i + 1) % n;
        g.mate(cr[i].dart as usize) == cr[j].dart as usize && cr[i].rank.abs_diff(cr[j].rank) == 1
    })
}

/// Depth-first search over crossing sequences of length `n`, calling `visit`
/// on every realizable taut curve. A curve may be visited more than once.
fn search_curves<F>(g: &PlaneMap, n: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Crossing], &Realized) -> ControlFlow<()>,
{
    if n == 0 || g.vertex_count() == 0 || !g.is_connected() {
        return ControlFlow::Continue(());
    }
    let mut seq: Vec<usize> = Vec::with_capacity(n);
    let mut cr = vec![Crossing { dart: 0, rank: 0 }; n];
    for d0 in 0..g.dart_count() {
        if g.mate(d0) < d0 {
            continue;
        }
        seq.clear();
        seq.push(d0);
        walk(g, n, &mut seq, &mut cr, &mut visit)?;
    }
    ControlFlow::Continue(())
}

fn walk<F>(
    g: &PlaneMap,
    n: usize,
    seq: &mut Vec<usize>,
    cr: &mut [Crossing],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Crossing], &Realized) -> ControlFlow<()>,
{
    let d0 = seq[0];
    let last = *seq.last().unwrap();
    let face = g.face_of(g.mate(last));
    let home = g.face_of(d0);
    for &d in g.face(face) {
        let d = d as usize;
        if d.min(g.mate(d)) < d0 {
            continue;
        }
        if seq.len() + 1 == n && g.face_of(g.mate(d)) != home {
            continue;
        }
        seq.push(d);
        if seq.len() == n {
            assign_ranks(g, seq, cr, visit)?;
        } else {
            walk(g, n, seq, cr, visit)?;
        }
        seq.pop();
    }
    ControlFlow::Continue(())
}

fn assign_ranks<F>(g: &PlaneMap, seq: &[usize], cr: &mut [Crossing], visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Crossing], &Realized) -> ControlFlow<()>,
{
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &d) in seq.iter().enumerate() {
        cr[i] = Crossing { dart: d as u32, rank: 0 };
        let e = g.edge_of(d);
        match groups.iter_mut().find(|(ge, _)| *ge == e) {
            Some((_, idx)) => idx.push(i),
            None => groups.push((e, vec![i])),
        }
    }
    groups.retain(|(_, idx)| idx.len() > 1);
    rank_groups(g, &groups, 0, cr, visit)
}

fn rank_groups<F>(
    g: &PlaneMap,
    groups: &[(usize, Vec<usize>)],
    k: usize,
    cr: &mut [Crossing],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Crossing], &Realized) -> ControlFlow<()>,
{
    if k == groups.len() {
        if has_edge_bigon(g, cr) {
            return ControlFlow::Continue(());
        }
        if let Some(r) = realize(g, cr) {
            visit(cr, &r)?;
        }
        return ControlFlow::Continue(());
    }
    let idx = &groups[k].1;
    let mut perm: Vec<u8> = (0..idx.len() as u8).collect();
    loop {
        for (p, &i) in idx.iter().enumerate() {
            cr[i].rank = perm[p];
        }
        rank_groups(g, groups, k + 1, cr, visit)?;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    ControlFlow::Continue(())
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn check_degree(n: usize) -> Result<(), CurveError> {
    if matches!(n, 0 | 2 | 4 | 6) {
        Ok(())
    } else {
        Err(CurveError::BadDegree(n))
    }
}

/// All taut simple curves with `n` crossings, up to isotopy, in code order.
///
/// Curves with crossings are only enumerated on connected maps with at least
/// one vertex; zero-crossing curves are listed one per face.
pub fn enumerate_curves(g: &PlaneMap, n: usize) -> BTreeSet<CurveCode> {
    let mut out = BTreeSet::new();
    if n == 0 {
        if g.vertex_count() == 0 {
            let regions = if g.free_loops() == 0 { 1 } else { g.free_loops() + 1 };
            for f in 0..regions {
                out.insert(CurveCode::zero(f));
            }
        } else {
            for f in 0..g.face_count() {
                out.insert(CurveCode::zero(f));
            }
        }
        return out;
    }
    if check_degree(n).is_err() {
        return out;
    }
    let _ = search_curves(g, n, |cr, _| {
        out.insert(CurveCode::from_crossings(g, cr.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// The two disks bounded by a curve: left side first.
pub fn split_sides(g: &PlaneMap, c: &CurveCode) -> Result<(SideGraphData, SideGraphData), CurveError> {
    if c.degree() == 0 {
        if !g.is_connected() {
            return Err(CurveError::NeedsConnected);
        }
        if g.vertex_count() == 0 {
            let mut inner = SideGraphData::empty(true, 0);
            inner.circles = 0;
            return Ok((inner, SideGraphData::empty(false, g.free_loops())));
        }
        if c.face as usize >= g.face_count() {
            return Err(CurveError::UnrealizableCode);
        }
        let mut rest = SideGraphData::empty(false, 0);
        rest.vertices = (0..g.vertex_count()).collect();
        rest.dart_links = (0..g.dart_count()).map(|d| Some(Link::Dart(g.mate(d)))).collect();
        return Ok((SideGraphData::empty(true, 0), rest));
    }
    check_degree(c.degree())?;
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(CurveError::NeedsConnected);
    }
    if c.crossings.iter().any(|x| x.dart as usize >= g.dart_count()) {
        return Err(CurveError::UnrealizableCode);
    }
    let cr = &c.crossings;
    let n = cr.len();
    for i in 0..n {
        let j = (i + 1) % n;
        if g.face_of(g.mate(cr[i].dart as usize)) != g.face_of(cr[j].dart as usize) {
            return Err(CurveError::UnrealizableCode);
        }
    }
    if has_edge_bigon(g, cr) {
        return Err(CurveError::UnrealizableCode);
    }
    let r = realize(g, cr).ok_or(CurveError::UnrealizableCode)?;
    let [a, b] = r.sides;
    Ok((a, b))
}

/// Triviality by side patterns: some side is empty, one arc, two parallel
/// arcs or a vertex neighbourhood.
pub fn is_trivial_by_patterns(a: &SideGraphData, b: &SideGraphData) -> bool {
    classify_side(a).is_small_trivial() || classify_side(b).is_small_trivial()
}

/// Triviality for curves with at least four crossings: the curve bounds a
/// vertex neighbourhood or has a compression on one side.
pub fn is_trivial_by_compression(a: &SideGraphData, b: &SideGraphData) -> bool {
    a.is_vertex_neighborhood() || b.is_vertex_neighborhood() || a.has_compression() || b.has_compression()
}

/// Triviality by the six-point disk patterns.
pub fn is_trivial_by_six_patterns(a: &SideGraphData, b: &SideGraphData) -> bool {
    classify_side(a).is_six_trivial() || classify_side(b).is_six_trivial()
}

fn trivial_for_degree(n: usize, a: &SideGraphData, b: &SideGraphData) -> bool {
    if n <= 4 {
        is_trivial_by_patterns(a, b)
    } else {
        is_trivial_by_compression(a, b)
    }
}

pub fn is_trivial(g: &PlaneMap, c: &CurveCode) -> Result<bool, CurveError> {
    let (a, b) = split_sides(g, c)?;
    Ok(trivial_for_degree(c.degree(), &a, &b))
}

fn first_nontrivial(g: &PlaneMap, n: usize) -> bool {
    search_curves(g, n, |_, r| {
        if trivial_for_degree(n, &r.sides[0], &r.sides[1]) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    })
    .is_break()
}

/// Every 0- and 2-curve is trivial.
pub fn is_irreducible(g: &PlaneMap) -> bool {
    g.is_connected() && !first_nontrivial(g, 2)
}

/// Every 0-, 2- and 4-curve is trivial.
pub fn is_atoroidal(g: &PlaneMap) -> bool {
    is_irreducible(g) && !first_nontrivial(g, 4)
}

/// Which of the four small exceptions `g` is, if any.
pub fn exception_kind(g: &PlaneMap) -> Option<ExceptionKind> {
    if g.vertex_count() > 3 {
        return None;
    }
    ExceptionKind::ALL
        .into_iter()
        .find(|&k| is_isomorphic(g, &exception(k), Chirality::ModReflection))
}

/// Atoroidal and not one of the four exceptions.
pub fn is_hyperbolic(g: &PlaneMap) -> bool {
    let by_exclusion = is_atoroidal(g) && exception_kind(g).is_none();
    debug_assert_eq!(by_exclusion, is_hyperbolic_by_faces(g));
    by_exclusion
}

/// Atoroidal with every face at least a triangle.
pub fn is_hyperbolic_by_faces(g: &PlaneMap) -> bool {
    g.vertex_count() > 0 && g.min_face_size().is_some_and(|m| m >= 3) && is_atoroidal(g)
}

/// A non-trivial curve of least degree up to `n_max`, least code first.
pub fn find_nontrivial_curve(g: &PlaneMap, n_max: usize) -> Option<(usize, CurveCode)> {
    if !g.is_connected() {
        // The separating curve between the first component and the rest.
        let face = if g.vertex_count() == 0 { 0 } else { g.face_of(0) };
        return Some((0, CurveCode::zero(face)));
    }
    for n in [2, 4] {
        if n > n_max {
            break;
        }
        for c in enumerate_curves(g, n) {
            if !is_trivial(g, &c).expect("enumerated curves are realizable") {
                return Some((n, c));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planemap::torus_graph;

    fn trefoil() -> PlaneMap {
        exception(ExceptionKind::TrefoilProjection)
    }

    #[test]
    fn unknot_zero_curves() {
        let u = exception(ExceptionKind::UnknotProjection);
        assert_eq!(enumerate_curves(&u, 0).len(), 2);
        assert!(enumerate_curves(&u, 2).is_empty());
        for c in enumerate_curves(&u, 0) {
            assert!(is_trivial(&u, &c).unwrap());
        }
        assert!(is_atoroidal(&u));
    }

    #[test]
    fn zero_curve_sides() {
        let g = torus_graph(3).unwrap();
        let (a, b) = split_sides(&g, &CurveCode::zero(3)).unwrap();
        assert_eq!(classify_side(&a), SidePattern::Empty);
        assert_eq!(b.vertices.len(), 6);
        assert!(is_trivial(&g, &CurveCode::zero(0)).unwrap());
    }

    #[test]
    fn figure_eight_has_no_taut_two_curves() {
        let g = exception(ExceptionKind::FigureEight);
        assert!(enumerate_curves(&g, 2).is_empty());
        assert!(is_irreducible(&g));
        assert!(is_atoroidal(&g));
    }

    #[test]
    fn hopf_vertex_separating_curve() {
        let g = exception(ExceptionKind::HopfProjection);
        let curves = enumerate_curves(&g, 4);
        let separating: Vec<_> = curves
            .iter()
            .filter(|c| {
                let (a, b) = split_sides(&g, c).unwrap();
                classify_side(&a) == SidePattern::VertexNeighborhood
                    && classify_side(&b) == SidePattern::VertexNeighborhood
            })
            .collect();
        assert!(!separating.is_empty());
        for c in separating {
            assert!(is_trivial(&g, c).unwrap());
        }
        assert!(is_atoroidal(&g));
    }

    #[test]
    fn trefoil_bigon_neighborhood() {
        let g = trefoil();
        let mut found = false;
        for c in enumerate_curves(&g, 4) {
            let (a, b) = split_sides(&g, &c).unwrap();
            let (pa, pb) = (classify_side(&a), classify_side(&b));
            if a.vertices.len() == 2 || b.vertices.len() == 2 {
                let big = if a.vertices.len() == 2 { pa } else { pb };
                let small = if a.vertices.len() == 2 { pb } else { pa };
                if small == SidePattern::VertexNeighborhood {
                    assert_eq!(big, SidePattern::NonTrivial);
                    found = true;
                }
            }
        }
        assert!(found);
        assert!(is_atoroidal(&g));
        assert!(!is_hyperbolic(&g));
    }

    #[test]
    fn triangle_curve_on_t4() {
        // The boundary of a neighbourhood of a vertex of T_4 crosses four edges.
        let g = torus_graph(4).unwrap();
        let n4 = enumerate_curves(&g, 4);
        let one_vertex = n4
            .iter()
            .filter(|c| {
                let (a, b) = split_sides(&g, c).unwrap();
                a.vertices.len() == 1 || b.vertices.len() == 1
            })
            .count();
        assert!(one_vertex >= 8);
    }

    #[test]
    fn octahedron_is_atoroidal() {
        let g = torus_graph(3).unwrap();
        assert!(is_irreducible(&g));
        assert!(is_atoroidal(&g));
        assert!(is_hyperbolic(&g));
        assert_eq!(find_nontrivial_curve(&g, 4), None);
        for c in enumerate_curves(&g, 2) {
            assert!(is_trivial(&g, &c).unwrap());
        }
    }

    #[test]
    fn disjoint_union_is_reducible() {
        let t = trefoil();
        let u = t.disjoint_union(&t);
        assert!(!is_irreducible(&u));
        assert_eq!(find_nontrivial_curve(&u, 4).map(|x| x.0), Some(0));
        assert_eq!(find_nontrivial_curve(&PlaneMap::circles(2), 4).map(|x| x.0), Some(0));
    }

    #[test]
    fn codes_are_normalized() {
        let g = torus_graph(4).unwrap();
        for n in [2, 4] {
            for c in enumerate_curves(&g, n) {
                assert_eq!(CurveCode::from_crossings(&g, c.raw().to_vec()), c);
                assert_eq!(CurveCode::from_crossings(&g, c.reversed(&g).raw().to_vec()), c);
                assert_eq!(CurveCode::from_token_string(&c.to_token_string()), Some(c.clone()));
            }
        }
    }

    #[test]
    fn unrealizable_codes_rejected() {
        let g = torus_graph(3).unwrap();
        let bad = CurveCode::from_crossings(&g, vec![Crossing { dart: 0, rank: 0 }, Crossing { dart: 5, rank: 0 }]);
        assert_eq!(split_sides(&g, &bad), Err(CurveError::UnrealizableCode));
        assert_eq!(is_trivial(&g, &bad), Err(CurveError::UnrealizableCode));
    }

    #[test]
    fn permutations() {
        let mut p = vec![0u8, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
