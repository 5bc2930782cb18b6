//! Canonical codes for maps up to homeomorphism of the sphere.
//!
//! For a root dart and a traversal direction, darts are numbered in
//! breadth-first order: each newly reached vertex gets the next four labels,
//! starting at the entry dart and following the rotation. The code is the
//! mate table written in those labels; the canonical code is the least such
//! table over every root (and both directions when reflections are allowed).

use std::cmp::Ordering;
use std::fmt;

use crate::error::MapError;
use crate::planemap::{rotate, rotate_back, PlaneMap};

const FORMAT_VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Chirality {
    /// Mirror images are identified.
    #[default]
    ModReflection,
    /// Mirror images are distinct.
    Oriented,
}

impl Chirality {
    pub fn as_str(self) -> &'static str {
        match self {
            Chirality::ModReflection => "mod-reflection",
            Chirality::Oriented => "oriented",
        }
    }

    pub fn parse(s: &str) -> Option<Chirality> {
        match s {
            "mod-reflection" => Some(Chirality::ModReflection),
            "oriented" => Some(Chirality::Oriented),
            _ => None,
        }
    }
}

/// Byte layout: version, mode, V (u16 BE), free loops (u16 BE), then the
/// `4V` mate labels (one byte each when `4V <= 256`, else u16 BE).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    bytes: Vec<u8>,
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl CanonicalCode {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn mode(&self) -> Chirality {
        if self.bytes[1] == 0 {
            Chirality::ModReflection
        } else {
            Chirality::Oriented
        }
    }

    pub fn vertex_count(&self) -> usize {
        u16::from_be_bytes([self.bytes[2], self.bytes[3]]) as usize
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<CanonicalCode> {
        let s = s.trim();
        if !s.len().is_multiple_of(2) || s.len() < 12 {
            return None;
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        if bytes[0] != FORMAT_VERSION || bytes[1] > 1 {
            return None;
        }
        let code = CanonicalCode { bytes };
        let v = code.vertex_count();
        let width = if 4 * v <= 256 { 1 } else { 2 };
        if code.bytes.len() != 6 + width * 4 * v {
            return None;
        }
        Some(code)
    }

    /// Rebuilds a representative map from the code.
    pub fn to_map(&self) -> Result<PlaneMap, MapError> {
        let v = self.vertex_count();
        let loops = u16::from_be_bytes([self.bytes[4], self.bytes[5]]) as usize;
        let body = &self.bytes[6..];
        let mate: Vec<usize> = if 4 * v <= 256 {
            body.iter().map(|&b| b as usize).collect()
        } else {
            body.chunks(2).map(|c| u16::from_be_bytes([c[0], c[1]]) as usize).collect()
        };
        PlaneMap::from_mates(v, mate, loops)
    }
}

/// Writes the BFS mate table from `root` into `out`, aborting as soon as the
/// prefix is greater than `best`. Returns the comparison against `best`.
fn bfs_code(
    mate: &[u32],
    root: usize,
    reflect: bool,
    best: Option<&[u16]>,
    label: &mut [u16],
    order: &mut Vec<usize>,
    out: &mut Vec<u16>,
) -> Ordering {
    let n = mate.len();
    label.fill(u16::MAX);
    order.clear();
    out.clear();
    let step = |d: usize| if reflect { rotate_back(d) } else { rotate(d) };
    let assign = |d0: usize, order: &mut Vec<usize>, label: &mut [u16]| {
        let mut d = d0;
        for _ in 0..4 {
            label[d] = order.len() as u16;
            order.push(d);
            d = step(d);
        }
    };
    assign(root, order, label);
    let mut cmp = Ordering::Equal;
    for i in 0..n {
        let d = order[i];
        let m = mate[d] as usize;
        if label[m] == u16::MAX {
            assign(m, order, label);
        }
        let value = label[m];
        out.push(value);
        if cmp == Ordering::Equal {
            if let Some(b) = best {
                cmp = value.cmp(&b[i]);
                if cmp == Ordering::Greater {
                    return cmp;
                }
            }
        }
    }
    if best.is_none() {
        Ordering::Less
    } else {
        cmp
    }
}

fn encode(mode: Chirality, v: usize, loops: usize, table: &[u16]) -> CanonicalCode {
    let mut bytes = vec![FORMAT_VERSION, mode as u8];
    bytes.extend_from_slice(&(v as u16).to_be_bytes());
    bytes.extend_from_slice(&(loops as u16).to_be_bytes());
    if 4 * v <= 256 {
        bytes.extend(table.iter().map(|&x| x as u8));
    } else {
        for &x in table {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
    }
    CanonicalCode { bytes }
}

/// Least BFS mate table over all roots, and the root that achieves it.
pub(crate) fn min_table(g: &PlaneMap, mode: Chirality) -> (Vec<u16>, usize, bool) {
    let n = g.dart_count();
    let mut label = vec![0u16; n];
    let mut order = Vec::with_capacity(n);
    let mut scratch = Vec::with_capacity(n);
    let mut best: Option<Vec<u16>> = None;
    let mut best_root = (0, false);
    let dirs: &[bool] = match mode {
        Chirality::ModReflection => &[false, true],
        Chirality::Oriented => &[false],
    };
    for &reflect in dirs {
        for root in 0..n {
            let cmp = bfs_code(g.mate_table(), root, reflect, best.as_deref(), &mut label, &mut order, &mut scratch);
            if cmp == Ordering::Less {
                best = Some(scratch.clone());
                best_root = (root, reflect);
            }
        }
    }
    (best.unwrap_or_default(), best_root.0, best_root.1)
}

/// Whether a connected mate table, already in breadth-first labels from
/// root 0, is the least table over all roots.
pub(crate) fn is_canonical_table(mate: &[u32], mode: Chirality) -> bool {
    let n = mate.len();
    let best: Vec<u16> = mate.iter().map(|&m| m as u16).collect();
    let mut label = vec![0u16; n];
    let mut order = Vec::with_capacity(n);
    let mut scratch = Vec::with_capacity(n);
    let dirs: &[bool] = match mode {
        Chirality::ModReflection => &[false, true],
        Chirality::Oriented => &[false],
    };
    for &reflect in dirs {
        for root in 0..n {
            if bfs_code(mate, root, reflect, Some(&best), &mut label, &mut order, &mut scratch) == Ordering::Less {
                return false;
            }
        }
    }
    true
}

/// Canonical code of a connected map.
pub fn canonical_code(g: &PlaneMap, mode: Chirality) -> Result<CanonicalCode, MapError> {
    if !g.is_connected() {
        return Err(MapError::Disconnected);
    }
    if g.vertex_count() > u16::MAX as usize / 4 {
        return Err(MapError::TooLarge(g.vertex_count()));
    }
    let (table, _, _) = min_table(g, mode);
    Ok(encode(mode, g.vertex_count(), g.free_loops(), &table))
}

/// Canonical code, falling back to the sorted component codes joined into
/// one byte string for disconnected maps.
pub fn multiset_code(g: &PlaneMap, mode: Chirality) -> Vec<CanonicalCode> {
    let mut codes: Vec<CanonicalCode> = g
        .components()
        .iter()
        .map(|c| canonical_code(c, mode).expect("components are connected"))
        .collect();
    codes.sort();
    codes
}

/// Isomorphism of embedded graphs; disconnected maps compare componentwise.
pub fn is_isomorphic(a: &PlaneMap, b: &PlaneMap, mode: Chirality) -> bool {
    if a.vertex_count() != b.vertex_count() || a.free_loops() != b.free_loops() {
        return false;
    }
    if a.is_connected() && b.is_connected() {
        return canonical_code(a, mode).unwrap() == canonical_code(b, mode).unwrap();
    }
    multiset_code(a, mode) == multiset_code(b, mode)
}

/// The connected map in canonical labeling.
pub fn canonical_form(g: &PlaneMap, mode: Chirality) -> Result<PlaneMap, MapError> {
    canonical_code(g, mode)?.to_map()
}
