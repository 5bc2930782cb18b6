//! Cutting maps along non-trivial curves until every piece is atoroidal.
//!
//! Cutting along a 4-curve caps each side with a new vertex; along a
//! 2-curve the two strand ends on each side are joined into one edge; along
//! a 0-curve the map falls apart into components. A [`Gluing`] keeps enough
//! to put the pieces back together exactly.

use std::fmt::Write as _;

use crate::curves::{find_nontrivial_curve, is_trivial, split_sides, CurveCode, Link, SideGraphData};
use crate::error::DecomposeError;
use crate::planar_code::{parse_planar_code, write_planar_code};
use crate::planemap::{dart, slot_of, vertex_of, PlaneMap};

const STUB: usize = usize::MAX;

/// Connects the strand ends of two open maps drawn in one dart table.
///
/// `ends[s][j]` is what boundary point `j` of side `s` leads to: a stub dart
/// (in `mate` labels) or another boundary point of the same side. Point `j`
/// of side 0 is glued to point `pair[j]` of side 1. Returns the number of
/// closed circles formed by arcs alone.
pub(crate) fn glue(mate: &mut [usize], ends: [&[Link]; 2], pair: &[usize]) -> Result<usize, String> {
    let n = pair.len();
    if ends[0].len() != n || ends[1].len() != n {
        return Err("boundary sizes differ".into());
    }
    let mut inv = vec![usize::MAX; n];
    for (j, &p) in pair.iter().enumerate() {
        if p >= n || inv[p] != usize::MAX {
            return Err("boundary pairing is not a bijection".into());
        }
        inv[p] = j;
    }
    let across = |s: usize, j: usize| if s == 0 { pair[j] } else { inv[j] };
    let mut seen = [vec![false; n], vec![false; n]];
    let mark = |seen: &mut [Vec<bool>; 2], s: usize, j: usize| -> Result<(), String> {
        if std::mem::replace(&mut seen[s][j], true) {
            return Err(format!("boundary point {j} of side {s} reached twice"));
        }
        Ok(())
    };
    let check_stub = |mate: &[usize], d: usize| -> Result<(), String> {
        if d >= mate.len() || mate[d] != STUB {
            return Err(format!("dart {d} is not a free end"));
        }
        Ok(())
    };
    for s0 in 0..2 {
        for j0 in 0..n {
            let Link::Dart(start) = ends[s0][j0] else { continue };
            if seen[s0][j0] {
                continue;
            }
            check_stub(mate, start)?;
            mark(&mut seen, s0, j0)?;
            let (mut s, mut j) = (s0, j0);
            loop {
                let t = 1 - s;
                let k = across(s, j);
                mark(&mut seen, t, k)?;
                match ends[t][k] {
                    Link::Dart(d) => {
                        check_stub(mate, d)?;
                        mate[start] = d;
                        mate[d] = start;
                        break;
                    }
                    Link::Boundary(k2) => {
                        if k2 >= n {
                            return Err(format!("boundary point {k2} out of range"));
                        }
                        mark(&mut seen, t, k2)?;
                        s = t;
                        j = k2;
                    }
                }
            }
        }
    }
    let mut circles = 0;
    for s0 in 0..2 {
        for j0 in 0..n {
            if seen[s0][j0] {
                continue;
            }
            circles += 1;
            let (mut s, mut j) = (s0, j0);
            loop {
                seen[s][j] = true;
                let Link::Boundary(j2) = ends[s][j] else {
                    return Err("inconsistent boundary".into());
                };
                if j2 >= n || ends[s][j2] != Link::Boundary(j) {
                    return Err("inconsistent boundary".into());
                }
                seen[s][j2] = true;
                let (t, k) = (1 - s, across(s, j2));
                if seen[t][k] {
                    break;
                }
                s = t;
                j = k;
            }
        }
    }
    if mate.contains(&STUB) {
        return Err("unmatched strand end".into());
    }
    Ok(circles)
}

/// How the two pieces of a cut fit back into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub degree: usize,
    /// Parent vertex of each piece vertex, left piece first. A vertex added
    /// by the cut is the last vertex of its piece and is not listed.
    pub vertices: [Vec<usize>; 2],
    /// For each boundary point, the piece dart standing at it: a dart of the
    /// added vertex for 4-curves, the joined edge's ends for 2-curves.
    pub ports: [Vec<usize>; 2],
}

/// Slot of the cap vertex that faces boundary point `j`.
fn cap_slot(left: bool, j: usize) -> usize {
    if left {
        (4 - j) % 4
    } else {
        j
    }
}

fn side_piece(side: &SideGraphData, n: usize) -> Result<(PlaneMap, Vec<usize>, Vec<usize>), DecomposeError> {
    let keep = side.vertices.clone();
    let mut index = std::collections::HashMap::new();
    for (i, &v) in keep.iter().enumerate() {
        index.insert(v, i);
    }
    let local = |d: usize| dart(index[&vertex_of(d)], slot_of(d));
    let cap = keep.len();
    let extra = usize::from(n == 4);
    let mut mate = vec![STUB; 4 * (cap + extra)];
    let mut toward = vec![STUB; n];
    for (i, &v) in keep.iter().enumerate() {
        for k in 0..4 {
            let link = side.dart_links[dart(v, k)].expect("dart of a side vertex");
            match link {
                Link::Dart(d) => mate[dart(i, k)] = local(d),
                Link::Boundary(j) => toward[j] = dart(i, k),
            }
        }
    }
    let ports = match n {
        4 => {
            let ports: Vec<usize> = (0..4).map(|j| dart(cap, cap_slot(side.left, j))).collect();
            for j in 0..4 {
                mate[ports[j]] = match side.boundary_links[j] {
                    Link::Dart(_) => toward[j],
                    Link::Boundary(j2) => ports[j2],
                };
                if toward[j] != STUB {
                    mate[toward[j]] = ports[j];
                }
            }
            ports
        }
        2 => {
            if toward.contains(&STUB) {
                return Err(DecomposeError::TrivialCurve);
            }
            mate[toward[0]] = toward[1];
            mate[toward[1]] = toward[0];
            toward
        }
        _ => return Err(DecomposeError::BadDegree(n)),
    };
    let g = PlaneMap::from_mates(cap + extra, mate, side.circles)?;
    Ok((g, keep, ports))
}

fn split_components(g: &PlaneMap) -> Result<(PlaneMap, PlaneMap, Gluing), DecomposeError> {
    if g.is_connected() {
        return Err(DecomposeError::TrivialCurve);
    }
    let (first, rest): (Vec<usize>, Vec<usize>) = if g.vertex_count() == 0 {
        (Vec::new(), Vec::new())
    } else {
        let c = g.component_of_vertex(0);
        (0..g.vertex_count()).partition(|&v| g.component_of_vertex(v) == c)
    };
    let (first_loops, rest_loops) = if g.vertex_count() == 0 { (1, g.free_loops() - 1) } else { (0, g.free_loops()) };
    let a = g.induced(&first, first_loops)?;
    let b = g.induced(&rest, rest_loops)?;
    let gluing = Gluing { degree: 0, vertices: [first, rest], ports: [Vec::new(), Vec::new()] };
    Ok((a, b, gluing))
}

/// Cuts `g` along a non-trivial curve into the piece on its left and the
/// piece on its right. A 0-curve separates the component of the first
/// vertex from the rest of the map.
pub fn cut_along(g: &PlaneMap, c: &CurveCode) -> Result<(PlaneMap, PlaneMap, Gluing), DecomposeError> {
    let n = c.degree();
    match n {
        0 => return split_components(g),
        2 | 4 => {}
        _ => return Err(DecomposeError::BadDegree(n)),
    }
    if is_trivial(g, c)? {
        return Err(DecomposeError::TrivialCurve);
    }
    let (l, r) = split_sides(g, c)?;
    let (a, va, pa) = side_piece(&l, n)?;
    let (b, vb, pb) = side_piece(&r, n)?;
    Ok((a, b, Gluing { degree: n, vertices: [va, vb], ports: [pa, pb] }))
}

/// Inverse of [`cut_along`], reproducing the parent's labels exactly.
pub fn glue_pieces(a: &PlaneMap, b: &PlaneMap, gl: &Gluing) -> Result<PlaneMap, DecomposeError> {
    let bad = |m: &str| DecomposeError::InconsistentGluing(m.to_string());
    let n = gl.degree;
    if !matches!(n, 0 | 2 | 4) {
        return Err(DecomposeError::BadDegree(n));
    }
    let pieces = [a, b];
    let extra = usize::from(n == 4);
    let total = gl.vertices[0].len() + gl.vertices[1].len();
    let mut placed = vec![false; total];
    for s in 0..2 {
        if pieces[s].vertex_count() != gl.vertices[s].len() + extra {
            return Err(bad("piece size does not match its vertex list"));
        }
        if gl.ports[s].len() != n {
            return Err(bad("wrong number of ports"));
        }
        for &p in &gl.vertices[s] {
            if p >= total || std::mem::replace(&mut placed[p], true) {
                return Err(bad("vertex lists do not partition the parent"));
            }
        }
    }
    let mut mate = vec![STUB; 4 * total];
    let mut ends: [Vec<Link>; 2] = [Vec::new(), Vec::new()];
    for s in 0..2 {
        let g = pieces[s];
        let map = &gl.vertices[s];
        let kept = map.len();
        let lift = |d: usize| dart(map[vertex_of(d)], slot_of(d));
        let ports = &gl.ports[s];
        if ports.iter().any(|&p| p >= g.dart_count()) {
            return Err(bad("port out of range"));
        }
        let port_index = |d: usize| ports.iter().position(|&p| p == d);
        match n {
            4 => {
                if ports.iter().any(|&p| vertex_of(p) != kept) {
                    return Err(bad("4-curve ports must lie on the added vertex"));
                }
                for &p in ports {
                    let m = g.mate(p);
                    ends[s].push(if vertex_of(m) == kept {
                        Link::Boundary(port_index(m).ok_or_else(|| bad("port missing"))?)
                    } else {
                        Link::Dart(lift(m))
                    });
                }
            }
            2 => {
                if g.mate(ports[0]) != ports[1] {
                    return Err(bad("2-curve ports are not one edge"));
                }
                ends[s] = ports.iter().map(|&p| Link::Dart(lift(p))).collect();
            }
            _ => {}
        }
        for i in 0..kept {
            for k in 0..4 {
                let d = dart(i, k);
                let m = g.mate(d);
                if vertex_of(m) >= kept || (n == 2 && port_index(d).is_some()) {
                    continue;
                }
                mate[lift(d)] = lift(m);
            }
        }
    }
    let pair: Vec<usize> = (0..n).collect();
    let circles = glue(&mut mate, [&ends[0], &ends[1]], &pair).map_err(|m| bad(&m))?;
    let loops = a.free_loops() + b.free_loops() + circles;
    PlaneMap::from_mates(total, mate, loops).map_err(|e| bad(&e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionTree {
    Leaf(PlaneMap),
    Cut {
        curve: CurveCode,
        gluing: Gluing,
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
    },
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&PlaneMap> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a PlaneMap>) {
        match self {
            DecompositionTree::Leaf(g) => out.push(g),
            DecompositionTree::Cut { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecompositionTree::Leaf(_) => 0,
            DecompositionTree::Cut { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Indented text, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        match self {
            DecompositionTree::Leaf(g) => {
                let code = write_planar_code(g);
                writeln!(out, "{pad}leaf {}", code.trim_end().replace('\n', " | ")).unwrap();
            }
            DecompositionTree::Cut { curve, gluing, left, right } => {
                let list = |v: &[usize]| {
                    if v.is_empty() {
                        "-".to_string()
                    } else {
                        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    }
                };
                writeln!(
                    out,
                    "{pad}cut n={} curve={} left={} right={} ports={}/{}",
                    gluing.degree,
                    curve.to_token_string(),
                    list(&gluing.vertices[0]),
                    list(&gluing.vertices[1]),
                    list(&gluing.ports[0]),
                    list(&gluing.ports[1]),
                )
                .unwrap();
                left.write_text(indent + 2, out);
                right.write_text(indent + 2, out);
            }
        }
    }

    pub fn from_text(text: &str) -> Result<DecompositionTree, DecomposeError> {
        let lines: Vec<(usize, usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l.len() - l.trim_start().len(), l.trim()))
            .collect();
        let mut pos = 0;
        let tree = parse_node(&lines, &mut pos, 0)?;
        if pos != lines.len() {
            return Err(tree_error(lines[pos].0, "trailing lines"));
        }
        Ok(tree)
    }
}

fn tree_error(line: usize, msg: &str) -> DecomposeError {
    DecomposeError::InconsistentGluing(format!("line {line}: {msg}"))
}

fn parse_node(lines: &[(usize, usize, &str)], pos: &mut usize, indent: usize) -> Result<DecompositionTree, DecomposeError> {
    let &(no, ind, text) = lines.get(*pos).ok_or_else(|| tree_error(0, "missing node"))?;
    if ind != indent {
        return Err(tree_error(no, "unexpected indentation"));
    }
    *pos += 1;
    if let Some(rest) = text.strip_prefix("leaf ") {
        let g = parse_planar_code(&rest.replace(" | ", "\n")).map_err(|e| tree_error(no, &e.to_string()))?;
        return Ok(DecompositionTree::Leaf(g));
    }
    let rest = text.strip_prefix("cut ").ok_or_else(|| tree_error(no, "expected `leaf` or `cut`"))?;
    let mut fields = std::collections::HashMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| tree_error(no, "expected key=value"))?;
        fields.insert(k, v);
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| tree_error(no, &format!("missing {k}")));
    let list = |s: &str| -> Result<Vec<usize>, DecomposeError> {
        if s == "-" {
            return Ok(Vec::new());
        }
        s.split(',').map(|x| x.parse().map_err(|_| tree_error(no, "bad number"))).collect()
    };
    let degree: usize = get("n")?.parse().map_err(|_| tree_error(no, "bad degree"))?;
    let curve = CurveCode::from_token_string(get("curve")?).ok_or_else(|| tree_error(no, "bad curve"))?;
    let (pl, pr) = get("ports")?.split_once('/').ok_or_else(|| tree_error(no, "bad ports"))?;
    let gluing = Gluing {
        degree,
        vertices: [list(get("left")?)?, list(get("right")?)?],
        ports: [list(pl)?, list(pr)?],
    };
    let left = parse_node(lines, pos, indent + 2)?;
    let right = parse_node(lines, pos, indent + 2)?;
    Ok(DecompositionTree::Cut { curve, gluing, left: Box::new(left), right: Box::new(right) })
}

/// Repeatedly cuts along a least non-trivial curve of least degree.
pub fn decompose(g: &PlaneMap) -> DecompositionTree {
    match find_nontrivial_curve(g, 4) {
        None => DecompositionTree::Leaf(g.clone()),
        Some((_, c)) => {
            let (a, b, gluing) = cut_along(g, &c).expect("a non-trivial curve can be cut along");
            DecompositionTree::Cut {
                curve: c,
                gluing,
                left: Box::new(decompose(&a)),
                right: Box::new(decompose(&b)),
            }
        }
    }
}

pub fn reassemble(t: &DecompositionTree) -> Result<PlaneMap, DecomposeError> {
    match t {
        DecompositionTree::Leaf(g) => Ok(g.clone()),
        DecompositionTree::Cut { gluing, left, right, .. } => {
            glue_pieces(&reassemble(left)?, &reassemble(right)?, gluing)
        }
    }
}
