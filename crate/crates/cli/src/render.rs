//! Straight-line drawings: Tutte's barycentric layout with the largest face
//! on the outside. Parallel edges and loops are bent through waypoints.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use atoro_core::planemap::vertex_of;
use atoro_core::PlaneMap;

type Point = (f64, f64);

#[derive(Debug, Clone)]
pub struct RenderLayout {
    pub positions: Vec<Point>,
    pub outer_face: Option<usize>,
    /// One polyline per edge, from the lower dart's vertex to its mate's.
    pub edges: Vec<Vec<Point>>,
    pub free_loops: usize,
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        if p.abs() < 1e-12 {
            continue;
        }
        for row in col + 1..n {
            let f = a[row][col] / p;
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = if a[row][row].abs() < 1e-12 { 0.0 } else { (b[row] - s) / a[row][row] };
    }
    x
}

fn component_layout(g: &PlaneMap, verts: &[usize]) -> (BTreeMap<usize, Point>, Option<usize>) {
    let mut pos = BTreeMap::new();
    if verts.len() == 1 {
        pos.insert(verts[0], (0.0, 0.0));
        return (pos, None);
    }
    let outer = (0..g.face_count())
        .filter(|&f| verts.contains(&vertex_of(g.face(f)[0] as usize)))
        .max_by(|&a, &b| g.face_size(a).cmp(&g.face_size(b)).then(b.cmp(&a)))
        .unwrap();
    let mut ring: Vec<usize> = Vec::new();
    for &d in g.face(outer) {
        let v = vertex_of(d as usize);
        if !ring.contains(&v) {
            ring.push(v);
        }
    }
    let k = ring.len();
    for (i, &v) in ring.iter().enumerate() {
        let t = PI / 2.0 - 2.0 * PI * i as f64 / k as f64;
        pos.insert(v, (t.cos(), t.sin()));
    }
    let inner: Vec<usize> = verts.iter().copied().filter(|v| !ring.contains(v)).collect();
    if !inner.is_empty() {
        let idx: BTreeMap<usize, usize> = inner.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = inner.len();
        for axis in 0..2 {
            let mut a = vec![vec![0.0; n]; n];
            let mut b = vec![0.0; n];
            for (i, &v) in inner.iter().enumerate() {
                for s in 0..4 {
                    let w = vertex_of(g.mate(4 * v + s));
                    if w == v {
                        continue;
                    }
                    a[i][i] += 1.0;
                    match idx.get(&w) {
                        Some(&j) => a[i][j] -= 1.0,
                        None => {
                            let p = pos[&w];
                            b[i] += if axis == 0 { p.0 } else { p.1 };
                        }
                    }
                }
            }
            let x = solve(a, b);
            for (i, &v) in inner.iter().enumerate() {
                let e = pos.entry(v).or_insert((0.0, 0.0));
                if axis == 0 {
                    e.0 = x[i];
                } else {
                    e.1 = x[i];
                }
            }
        }
    }
    (pos, Some(outer))
}

pub fn layout(g: &PlaneMap) -> RenderLayout {
    let nv = g.vertex_count();
    let mut positions = vec![(0.0, 0.0); nv];
    let mut outer_face = None;
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..nv {
        comps.entry(g.component_of_vertex(v)).or_default().push(v);
    }
    for (i, verts) in comps.values().enumerate() {
        let (pos, outer) = component_layout(g, verts);
        if i == 0 {
            outer_face = outer;
        }
        for (v, p) in pos {
            positions[v] = (p.0 + 3.0 * i as f64, p.1);
        }
    }

    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..g.edge_count() {
        let d = g.edge_dart(e);
        let (a, b) = (vertex_of(d), vertex_of(g.mate(d)));
        groups.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let mut edges = vec![Vec::new(); g.edge_count()];
    for ((a, b), es) in groups {
        let k = es.len();
        for (i, &e) in es.iter().enumerate() {
            let d = g.edge_dart(e);
            let (pa, pb) = (positions[vertex_of(d)], positions[vertex_of(g.mate(d))]);
            edges[e] = if a == b {
                loop_path(g, &positions, a, pa, i, k)
            } else if k == 1 {
                vec![pa, pb]
            } else {
                let (dx, dy) = (pb.0 - pa.0, pb.1 - pa.1);
                let off = (i as f64 - (k - 1) as f64 / 2.0) * 0.3;
                let mid = ((pa.0 + pb.0) / 2.0 - dy * off, (pa.1 + pb.1) / 2.0 + dx * off);
                vec![pa, mid, pb]
            };
        }
    }
    RenderLayout { positions, outer_face, edges, free_loops: g.free_loops() }
}

fn loop_path(g: &PlaneMap, positions: &[Point], v: usize, p: Point, i: usize, k: usize) -> Vec<Point> {
    let others: Vec<Point> = (0..4)
        .map(|s| vertex_of(g.mate(4 * v + s)))
        .filter(|&w| w != v)
        .map(|w| positions[w])
        .collect();
    let base = if others.is_empty() {
        0.0
    } else {
        let cx = others.iter().map(|q| q.0).sum::<f64>() / others.len() as f64;
        let cy = others.iter().map(|q| q.1).sum::<f64>() / others.len() as f64;
        (p.1 - cy).atan2(p.0 - cx)
    };
    let t = base + PI * i as f64 / k.max(1) as f64;
    let r = 0.35;
    let a = (p.0 + r * (t - 0.4).cos(), p.1 + r * (t - 0.4).sin());
    let b = (p.0 + r * (t + 0.4).cos(), p.1 + r * (t + 0.4).sin());
    vec![p, a, b, p]
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn same(a: Point, b: Point) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

fn segments_cross(p: Point, q: Point, r: Point, s: Point) -> bool {
    if same(p, r) || same(p, s) || same(q, r) || same(q, s) {
        return false;
    }
    let d1 = cross(r, s, p);
    let d2 = cross(r, s, q);
    let d3 = cross(p, q, r);
    let d4 = cross(p, q, s);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Pairs of segments from different edges that cross in their interiors.
pub fn crossing_count(l: &RenderLayout) -> usize {
    let segs: Vec<(usize, Point, Point)> = l
        .edges
        .iter()
        .enumerate()
        .flat_map(|(e, path)| path.windows(2).map(move |w| (e, w[0], w[1])))
        .collect();
    let mut count = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segs[i].0 != segs[j].0 && segs_cross(&segs[i], &segs[j]) {
                count += 1;
            }
        }
    }
    count
}

fn segs_cross(a: &(usize, Point, Point), b: &(usize, Point, Point)) -> bool {
    segments_cross(a.1, a.2, b.1, b.2)
}

pub fn to_svg(l: &RenderLayout, title: &str) -> String {
    let mut pts: Vec<Point> = l.edges.iter().flatten().copied().chain(l.positions.iter().copied()).collect();
    if pts.is_empty() {
        pts.push((0.0, 0.0));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in &pts {
        x0 = x0.min(p.0);
        y0 = y0.min(p.1);
        x1 = x1.max(p.0);
        y1 = y1.max(p.1);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let scale = 360.0 / span;
    let tx = |p: Point| (20.0 + (p.0 - x0) * scale, 20.0 + (y1 - p.1) * scale);
    let w = 40.0 + (x1 - x0) * scale;
    let h = 40.0 + (y1 - y0) * scale;
    let loops_w = 90.0 * l.free_loops as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.1} {:.1}">"#,
        w + loops_w,
        h,
        w + loops_w,
        h
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    if let Some(f) = l.outer_face {
        writeln!(out, "<desc>outer face {f}</desc>").unwrap();
    }
    writeln!(out, r#"<g class="edges" fill="none" stroke="black" stroke-width="2">"#).unwrap();
    for path in &l.edges {
        let s: Vec<String> = path
            .iter()
            .map(|&p| {
                let (x, y) = tx(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(out, r#"<polyline class="edge" points="{}"/>"#, s.join(" ")).unwrap();
    }
    for i in 0..l.free_loops {
        writeln!(out, r#"<circle class="loop" cx="{:.2}" cy="{:.2}" r="35"/>"#, w + 45.0 + 90.0 * i as f64, h / 2.0)
            .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g class="vertices" fill="black">"#).unwrap();
    for &p in &l.positions {
        let (x, y) = tx(p);
        writeln!(out, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="5"/>"#).unwrap();
    }
    writeln!(out, "</g>\n</svg>").unwrap();
    out
}
