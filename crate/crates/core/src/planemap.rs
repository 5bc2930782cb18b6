//! Dart-based combinatorial maps of 4-valent graphs on the sphere.
//!
//! Vertex `v` owns darts `4v..4v+4`; slot order is counterclockwise, so the
//! rotation is implicit. `mate` pairs the two darts of an edge. The face to the
//! right of a dart `d` is traced by `d -> rotate(mate(d))`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::MapError;

pub type Dart = usize;

#[inline]
pub fn vertex_of(d: Dart) -> usize {
    d >> 2
}

#[inline]
pub fn slot_of(d: Dart) -> usize {
    d & 3
}

#[inline]
pub fn dart(v: usize, slot: usize) -> Dart {
    (v << 2) | (slot & 3)
}

/// Next dart counterclockwise around the same vertex.
#[inline]
pub fn rotate(d: Dart) -> Dart {
    (d & !3) | ((d + 1) & 3)
}

/// Next dart clockwise around the same vertex.
#[inline]
pub fn rotate_back(d: Dart) -> Dart {
    (d & !3) | ((d + 3) & 3)
}

/// The four special graphs with fewer than six vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionKind {
    UnknotProjection,
    FigureEight,
    HopfProjection,
    TrefoilProjection,
}

impl ExceptionKind {
    pub const ALL: [ExceptionKind; 4] = [
        ExceptionKind::UnknotProjection,
        ExceptionKind::FigureEight,
        ExceptionKind::HopfProjection,
        ExceptionKind::TrefoilProjection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExceptionKind::UnknotProjection => "unknot",
            ExceptionKind::FigureEight => "figure-eight",
            ExceptionKind::HopfProjection => "hopf",
            ExceptionKind::TrefoilProjection => "trefoil",
        }
    }
}

/// Number of faces of each size. Size counts vertex visits along the
/// boundary walk, with multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FaceVector {
    pub counts: BTreeMap<usize, usize>,
}

impl FaceVector {
    pub fn get(&self, size: usize) -> usize {
        self.counts.get(&size).copied().unwrap_or(0)
    }

    pub fn min_size(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn face_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn weighted_sum(&self) -> usize {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// A validated 4-valent map on the sphere, possibly with vertexless circles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneMap {
    vertex_count: usize,
    mate: Vec<u32>,
    free_loops: usize,
    face_of: Vec<u32>,
    faces: Vec<Vec<u32>>,
    edge_of: Vec<u32>,
    edges: Vec<u32>,
    vertex_component: Vec<u32>,
    vertex_components: usize,
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneMap(V={}, loops={}, mate={:?})", self.vertex_count, self.free_loops, self.mate)
    }
}

impl PlaneMap {
    /// Builds a map from explicit mate and rotation tables.
    ///
    /// The rotation orbit of every vertex must be exactly its own four darts;
    /// darts are relabeled so that slot order follows the given rotation
    /// starting from dart `4v`.
    pub fn build(
        vertex_count: usize,
        mate: &[usize],
        rotation: &[usize],
        free_loops: usize,
    ) -> Result<PlaneMap, MapError> {
        let n = 4 * vertex_count;
        if mate.len() != n {
            return Err(MapError::TableSize { expected: n, found: mate.len() });
        }
        if rotation.len() != n {
            return Err(MapError::TableSize { expected: n, found: rotation.len() });
        }
        let mut relabel = vec![usize::MAX; n];
        for v in 0..vertex_count {
            let mut d = 4 * v;
            for k in 0..4 {
                if d >= n || vertex_of(d) != v || relabel[d] != usize::MAX {
                    return Err(MapError::BadRotationOrbit { vertex: v });
                }
                relabel[d] = dart(v, k);
                d = rotation[d];
            }
            if d != 4 * v {
                return Err(MapError::BadRotationOrbit { vertex: v });
            }
        }
        let mut out = vec![0usize; n];
        for d in 0..n {
            let m = mate[d];
            if m >= n {
                return Err(MapError::DartOutOfRange { dart: d });
            }
            out[relabel[d]] = relabel[m];
        }
        PlaneMap::from_mates(vertex_count, out, free_loops)
    }

    /// Builds a map whose rotation is the implicit slot order.
    pub fn from_mates(
        vertex_count: usize,
        mate: Vec<usize>,
        free_loops: usize,
    ) -> Result<PlaneMap, MapError> {
        let n = 4 * vertex_count;
        if mate.len() != n {
            return Err(MapError::TableSize { expected: n, found: mate.len() });
        }
        for (d, &m) in mate.iter().enumerate() {
            if m >= n {
                return Err(MapError::DartOutOfRange { dart: d });
            }
            if m == d || mate[m] != d {
                return Err(MapError::NotInvolution { dart: d });
            }
        }
        let mate: Vec<u32> = mate.into_iter().map(|m| m as u32).collect();

        let mut face_of = vec![u32::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != u32::MAX {
                continue;
            }
            let id = faces.len() as u32;
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                cycle.push(d as u32);
                d = rotate(mate[d] as usize);
                if d == start {
                    break;
                }
            }
            faces.push(cycle);
        }

        let mut edge_of = vec![0u32; n];
        let mut edges = Vec::with_capacity(n / 2);
        for d in 0..n {
            let m = mate[d] as usize;
            if d < m {
                edge_of[d] = edges.len() as u32;
                edge_of[m] = edges.len() as u32;
                edges.push(d as u32);
            }
        }

        // Vertex components by flood fill.
        let mut vertex_component = vec![u32::MAX; vertex_count];
        let mut comps = 0u32;
        let mut stack = Vec::new();
        for v in 0..vertex_count {
            if vertex_component[v] != u32::MAX {
                continue;
            }
            vertex_component[v] = comps;
            stack.push(v);
            while let Some(u) = stack.pop() {
                for k in 0..4 {
                    let w = vertex_of(mate[dart(u, k)] as usize);
                    if vertex_component[w] == u32::MAX {
                        vertex_component[w] = comps;
                        stack.push(w);
                    }
                }
            }
            comps += 1;
        }

        let mut verts = vec![0i64; comps as usize];
        let mut nfaces = vec![0i64; comps as usize];
        let mut first = vec![usize::MAX; comps as usize];
        for v in 0..vertex_count {
            let c = vertex_component[v] as usize;
            verts[c] += 1;
            first[c] = first[c].min(v);
        }
        for cycle in &faces {
            nfaces[vertex_component[vertex_of(cycle[0] as usize)] as usize] += 1;
        }
        for c in 0..comps as usize {
            // E = 2V for a 4-valent component.
            let euler = verts[c] - 2 * verts[c] + nfaces[c];
            if euler != 2 {
                return Err(MapError::NotSpherical { vertex: first[c], euler });
            }
        }

        Ok(PlaneMap {
            vertex_count,
            mate,
            free_loops,
            face_of,
            faces,
            edge_of,
            edges,
            vertex_component,
            vertex_components: comps as usize,
        })
    }

    /// The map with no vertices and `k` circles.
    pub fn circles(k: usize) -> PlaneMap {
        PlaneMap::from_mates(0, Vec::new(), k).expect("empty map is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dart_count(&self) -> usize {
        4 * self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    #[inline]
    pub fn mate(&self, d: Dart) -> Dart {
        self.mate[d] as usize
    }

    pub(crate) fn mate_table(&self) -> &[u32] {
        &self.mate
    }

    pub fn mates(&self) -> Vec<usize> {
        self.mate.iter().map(|&m| m as usize).collect()
    }

    /// Successor of `d` along the boundary of the face on its right.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        rotate(self.mate[d] as usize)
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d] as usize
    }

    /// Face boundaries as dart cycles, ordered by their least dart.
    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[u32] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_size(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    #[inline]
    pub fn edge_of(&self, d: Dart) -> usize {
        self.edge_of[d] as usize
    }

    /// Lower dart of edge `e`; its mate is the other end.
    pub fn edge_dart(&self, e: usize) -> Dart {
        self.edges[e] as usize
    }

    /// Face containing the corner between slot `k` and slot `k+1` of `v`.
    pub fn corner_face(&self, v: usize, k: usize) -> usize {
        self.face_of(self.mate(dart(v, k)))
    }

    pub fn face_vector(&self) -> FaceVector {
        let mut counts = BTreeMap::new();
        for f in &self.faces {
            *counts.entry(f.len()).or_insert(0) += 1;
        }
        let circle_faces = match (self.vertex_count, self.free_loops) {
            (_, 0) => 0,
            (0, k) => k + 1,
            (_, k) => k,
        };
        if circle_faces > 0 {
            *counts.entry(0).or_insert(0) += circle_faces;
        }
        FaceVector { counts }
    }

    pub fn min_face_size(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len()).min()
    }

    /// Number of connected components, counting every free circle.
    pub fn component_count(&self) -> usize {
        self.vertex_components + self.free_loops
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn ensure_connected(&self) -> Result<(), MapError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(MapError::Disconnected)
        }
    }

    pub fn component_of_vertex(&self, v: usize) -> usize {
        self.vertex_component[v] as usize
    }

    /// Splits the map into its components: vertex components ordered by least
    /// vertex, then one circle per free loop.
    pub fn components(&self) -> Vec<PlaneMap> {
        let mut out = Vec::new();
        for c in 0..self.vertex_components {
            let keep: Vec<usize> = (0..self.vertex_count)
                .filter(|&v| self.vertex_component[v] as usize == c)
                .collect();
            out.push(self.induced(&keep, 0).expect("component of a valid map"));
        }
        for _ in 0..self.free_loops {
            out.push(PlaneMap::circles(1));
        }
        out
    }

    /// Submap on a set of vertices closed under adjacency.
    pub(crate) fn induced(&self, keep: &[usize], free_loops: usize) -> Result<PlaneMap, MapError> {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut mate = vec![0; 4 * keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for k in 0..4 {
                let m = self.mate(dart(v, k));
                let w = index[vertex_of(m)];
                if w == usize::MAX {
                    return Err(MapError::Disconnected);
                }
                mate[dart(i, k)] = dart(w, slot_of(m));
            }
        }
        PlaneMap::from_mates(keep.len(), mate, free_loops)
    }

    /// Disjoint union; the second map's vertices follow the first's.
    pub fn disjoint_union(&self, other: &PlaneMap) -> PlaneMap {
        let off = self.dart_count();
        let mut mate = self.mates();
        mate.extend(other.mate.iter().map(|&m| m as usize + off));
        PlaneMap::from_mates(
            self.vertex_count + other.vertex_count,
            mate,
            self.free_loops + other.free_loops,
        )
        .expect("union of valid maps")
    }

    /// Connected sum: the edge at dart `d1` and the edge at dart `d2` of
    /// `other` are cut and their ends joined across.
    pub fn connected_sum(&self, d1: Dart, other: &PlaneMap, d2: Dart) -> Result<PlaneMap, MapError> {
        let off = self.dart_count();
        if d1 >= off || d2 >= other.dart_count() {
            return Err(MapError::DartOutOfRange { dart: d1.max(d2) });
        }
        let mut mate = self.disjoint_union(other).mates();
        let (a1, b1) = (d1, self.mate(d1));
        let (a2, b2) = (d2 + off, other.mate(d2) + off);
        mate[a1] = a2;
        mate[a2] = a1;
        mate[b1] = b2;
        mate[b2] = b1;
        PlaneMap::from_mates(self.vertex_count + other.vertex_count, mate, self.free_loops + other.free_loops)
    }

    /// Mirror image: every rotation is reversed.
    pub fn mirror(&self) -> PlaneMap {
        let flip = |d: usize| dart(vertex_of(d), (4 - slot_of(d)) & 3);
        let mut mate = vec![0; self.dart_count()];
        for d in 0..self.dart_count() {
            mate[flip(d)] = flip(self.mate(d));
        }
        PlaneMap::from_mates(self.vertex_count, mate, self.free_loops).expect("mirror of a valid map")
    }

    /// Relabels vertices by `perm` (old vertex -> new vertex) and rotates the
    /// slots of every vertex by `shift[v]`. The embedded graph is unchanged.
    pub fn relabeled(&self, perm: &[usize], shift: &[usize]) -> PlaneMap {
        let map = |d: usize| dart(perm[vertex_of(d)], slot_of(d) + shift[vertex_of(d)]);
        let mut mate = vec![0; self.dart_count()];
        for d in 0..self.dart_count() {
            mate[map(d)] = map(self.mate(d));
        }
        PlaneMap::from_mates(self.vertex_count, mate, self.free_loops).expect("relabeling of a valid map")
    }
}

/// Removes vertex `v` from a raw mate table by moving the last vertex into
/// its slots. Returns the dart relabeling (old -> new, `usize::MAX` for the
/// removed darts). Darts formerly mated to `v` must already be re-mated.
pub(crate) fn remove_vertex(mate: &mut Vec<usize>, v: usize) -> Vec<usize> {
    let n = mate.len();
    let last = n / 4 - 1;
    let mut relabel: Vec<usize> = (0..n).collect();
    for k in 0..4 {
        relabel[dart(v, k)] = usize::MAX;
    }
    if v != last {
        for k in 0..4 {
            relabel[dart(last, k)] = dart(v, k);
        }
    }
    let mut out = vec![0; n - 4];
    for d in 0..n {
        let nd = relabel[d];
        if nd == usize::MAX {
            continue;
        }
        out[nd] = relabel[mate[d]];
    }
    *mate = out;
    relabel
}

/// Builds a map from a straight-line drawing of a simple graph.
pub fn from_drawing(points: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<PlaneMap, MapError> {
    let nv = points.len();
    let mut incident: Vec<Vec<(f64, usize, usize)>> = vec![Vec::new(); nv];
    for (i, &(a, b)) in edges.iter().enumerate() {
        let ang = |p: usize, q: usize| (points[q].1 - points[p].1).atan2(points[q].0 - points[p].0);
        incident[a].push((ang(a, b), i, 0));
        incident[b].push((ang(b, a), i, 1));
    }
    let mut end_dart = vec![[0usize; 2]; edges.len()];
    for (v, list) in incident.iter_mut().enumerate() {
        if list.len() != 4 {
            return Err(MapError::BadRotationOrbit { vertex: v });
        }
        list.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for (k, &(_, e, side)) in list.iter().enumerate() {
            end_dart[e][side] = dart(v, k);
        }
    }
    let mut mate = vec![0; 4 * nv];
    for ends in &end_dart {
        mate[ends[0]] = ends[1];
        mate[ends[1]] = ends[0];
    }
    PlaneMap::from_mates(nv, mate, 0)
}

/// The antiprism on `2n` vertices: projection of the (3,n) torus link.
pub fn torus_graph(n: usize) -> Result<PlaneMap, MapError> {
    if n < 3 {
        return Err(MapError::TableSize { expected: 3, found: n });
    }
    use std::f64::consts::PI;
    let mut points = Vec::with_capacity(2 * n);
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        points.push((t.cos(), t.sin()));
    }
    for i in 0..n {
        let t = 2.0 * PI * (i as f64 - 0.5) / n as f64;
        points.push((3.0 * t.cos(), 3.0 * t.sin()));
    }
    let mut edges = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        edges.push((i, j));
        edges.push((n + i, n + j));
        edges.push((i, n + i));
        edges.push((i, n + j));
    }
    from_drawing(&points, &edges)
}

/// The four exceptional atoroidal graphs.
pub fn exception(kind: ExceptionKind) -> PlaneMap {
    let (v, mate): (usize, Vec<usize>) = match kind {
        ExceptionKind::UnknotProjection => return PlaneMap::circles(1),
        // Two loops on adjacent slots.
        ExceptionKind::FigureEight => (1, vec![1, 0, 3, 2]),
        // Lens edges 0-5, 3-6 and outer arcs 1-4, 2-7.
        ExceptionKind::HopfProjection => (2, vec![5, 4, 7, 6, 1, 0, 3, 2]),
        ExceptionKind::TrefoilProjection => {
            let mut mate = vec![0; 12];
            for k in 0..3 {
                let next = (k + 1) % 3;
                mate[dart(k, 0)] = dart(next, 3);
                mate[dart(next, 3)] = dart(k, 0);
                mate[dart(k, 1)] = dart(next, 2);
                mate[dart(next, 2)] = dart(k, 1);
            }
            (3, mate)
        }
    };
    PlaneMap::from_mates(v, mate, 0).expect("exception tables are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(pairs: &[(usize, usize)]) -> FaceVector {
        FaceVector { counts: pairs.iter().copied().collect() }
    }

    #[test]
    fn octahedron_from_explicit_tables() {
        // Octahedron drawn as two nested triangles; checked V - E + F = 6 - 12 + 8.
        let g = torus_graph(3).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.face_count(), 8);
        assert_eq!(g.face_vector(), fv(&[(3, 8)]));
        let rebuilt = PlaneMap::build(6, &g.mates(), &(0..24).map(rotate).collect::<Vec<_>>(), 0).unwrap();
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn build_relabels_rotation_order() {
        // Same figure-eight, but the rotation visits slots in order 0,3,2,1.
        let rot = vec![3, 0, 1, 2];
        let mate = vec![3, 2, 1, 0];
        let g = PlaneMap::build(1, &mate, &rot, 0).unwrap();
        assert_eq!(g.face_vector(), fv(&[(1, 2), (2, 1)]));
    }

    #[test]
    fn build_errors() {
        let rot: Vec<usize> = (0..4).map(rotate).collect();
        assert_eq!(
            PlaneMap::build(1, &[0, 2, 1, 3], &rot, 0),
            Err(MapError::NotInvolution { dart: 0 })
        );
        assert!(matches!(
            PlaneMap::build(1, &[1, 0, 3, 2], &[1, 0, 3, 2], 0),
            Err(MapError::BadRotationOrbit { vertex: 0 })
        ));
        // Opposite slots paired: a torus embedding.
        assert!(matches!(
            PlaneMap::build(1, &[2, 3, 0, 1], &rot, 0),
            Err(MapError::NotSpherical { .. })
        ));
        assert!(matches!(PlaneMap::build(1, &[1, 0], &rot, 0), Err(MapError::TableSize { .. })));
    }

    #[test]
    fn unknot_has_no_darts() {
        let g = exception(ExceptionKind::UnknotProjection);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.free_loops(), 1);
        assert!(g.is_connected());
        assert_eq!(g.face_vector(), fv(&[(0, 2)]));
    }

    #[test]
    fn exception_face_vectors() {
        assert_eq!(exception(ExceptionKind::FigureEight).face_vector(), fv(&[(1, 2), (2, 1)]));
        let hopf = exception(ExceptionKind::HopfProjection);
        assert_eq!(hopf.face_vector(), fv(&[(2, 4)]));
        assert_eq!(hopf.edge_count(), 4);
        assert_eq!(exception(ExceptionKind::TrefoilProjection).face_vector(), fv(&[(2, 3), (3, 2)]));
    }

    #[test]
    fn torus_graph_shapes() {
        assert_eq!(torus_graph(4).unwrap().face_vector(), fv(&[(3, 8), (4, 2)]));
        let t5 = torus_graph(5).unwrap();
        assert_eq!((t5.vertex_count(), t5.edge_count(), t5.face_count()), (10, 20, 12));
        assert!(torus_graph(2).is_err());
        for n in 3..=64 {
            let g = torus_graph(n).unwrap();
            assert_eq!(g.vertex_count(), 2 * n);
            assert_eq!(g.face_count(), 2 * n + 2);
            if n > 3 {
                assert_eq!(g.face_vector(), fv(&[(3, 2 * n), (n, 2)]));
            }
        }
    }

    #[test]
    fn faces_partition_darts() {
        let g = torus_graph(6).unwrap();
        let mut seen = vec![0; g.dart_count()];
        for f in g.faces() {
            for &d in f {
                seen[d as usize] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        assert_eq!(g.face_vector().weighted_sum(), 4 * g.vertex_count());
    }

    #[test]
    fn components_and_union() {
        let t = exception(ExceptionKind::TrefoilProjection);
        let u = t.disjoint_union(&t);
        assert!(!u.is_connected());
        assert_eq!(u.component_count(), 2);
        let parts = u.components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], t);
        let two = PlaneMap::circles(2);
        assert_eq!(two.component_count(), 2);
        assert!(u.ensure_connected().is_err());
    }

    #[test]
    fn remove_vertex_relabels_last() {
        let mut mate = vec![1, 0, 3, 2, 5, 4, 7, 6];
        let relabel = remove_vertex(&mut mate, 0);
        assert_eq!(mate, vec![1, 0, 3, 2]);
        assert_eq!(relabel[4], 0);
    }
}
