//! Gluing the complements of vertex neighbourhoods of two graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon::{canonical_code, CanonicalCode};
use crate::curves::{exception_kind, Link};
use crate::decompose::glue;
use crate::error::EnumerateError;
use crate::planemap::{dart, slot_of, vertex_of, ExceptionKind, PlaneMap};

use super::EnumerationStore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Catalogue {
    #[default]
    PrimeProjections,
    BasicPolyhedra,
}

impl Catalogue {
    pub fn allows(self, kind: Option<ExceptionKind>) -> bool {
        match kind {
            None => true,
            Some(ExceptionKind::TrefoilProjection) => self == Catalogue::PrimeProjections,
            Some(_) => false,
        }
    }
}

/// Strand `k` around the first vertex meets strand `(rotation - k) mod 4`
/// around the second, after mirroring the second graph if `reflected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GluingChoice {
    pub rotation: u8,
    pub reflected: bool,
}

impl GluingChoice {
    pub fn all() -> impl Iterator<Item = GluingChoice> {
        (0..8u8).map(|i| GluingChoice { rotation: i % 4, reflected: i >= 4 })
    }
}

/// Removes `v` and reports where each of its four strands leads, with
/// the remaining vertices shifted to start at `offset`.
fn open_at(g: &PlaneMap, v: usize, offset: usize, mate: &mut [usize]) -> Vec<Link> {
    let lift = |w: usize| offset + if w > v { w - 1 } else { w };
    for w in (0..g.vertex_count()).filter(|&w| w != v) {
        for k in 0..4 {
            let m = g.mate(dart(w, k));
            if vertex_of(m) != v {
                mate[dart(lift(w), k)] = dart(lift(vertex_of(m)), slot_of(m));
            }
        }
    }
    (0..4)
        .map(|k| {
            let m = g.mate(dart(v, k));
            if vertex_of(m) == v {
                Link::Boundary(slot_of(m))
            } else {
                Link::Dart(dart(lift(vertex_of(m)), slot_of(m)))
            }
        })
        .collect()
}

/// Glue without catalogue checks.
pub(crate) fn join_complements(
    g1: &PlaneMap,
    v1: usize,
    g2: &PlaneMap,
    v2: usize,
    choice: GluingChoice,
) -> Result<PlaneMap, EnumerateError> {
    if v1 >= g1.vertex_count() {
        return Err(EnumerateError::BadVertex(v1));
    }
    if v2 >= g2.vertex_count() {
        return Err(EnumerateError::BadVertex(v2));
    }
    let mirrored;
    let (g2, v2) = if choice.reflected {
        mirrored = g2.mirror();
        (&mirrored, v2)
    } else {
        (g2, v2)
    };
    let n1 = g1.vertex_count() - 1;
    let total = n1 + g2.vertex_count() - 1;
    let mut mate = vec![usize::MAX; 4 * total];
    let a = open_at(g1, v1, 0, &mut mate);
    let b = open_at(g2, v2, n1, &mut mate);
    let r = choice.rotation as usize % 4;
    let pair: Vec<usize> = (0..4).map(|k| (r + 4 - k) % 4).collect();
    let circles = glue(&mut mate, [&a, &b], &pair).map_err(EnumerateError::InvariantViolation)?;
    Ok(PlaneMap::from_mates(total, mate, g1.free_loops() + g2.free_loops() + circles)?)
}

/// Recombination for prime projections: the unknot, figure-eight and Hopf
/// projections are refused.
pub fn recombine(
    g1: &PlaneMap,
    v1: usize,
    g2: &PlaneMap,
    v2: usize,
    choice: GluingChoice,
) -> Result<PlaneMap, EnumerateError> {
    recombine_in(Catalogue::PrimeProjections, g1, v1, g2, v2, choice)
}

pub fn recombine_in(
    catalogue: Catalogue,
    g1: &PlaneMap,
    v1: usize,
    g2: &PlaneMap,
    v2: usize,
    choice: GluingChoice,
) -> Result<PlaneMap, EnumerateError> {
    for g in [g1, g2] {
        let kind = exception_kind(g);
        if !catalogue.allows(kind) {
            return Err(EnumerateError::ForbiddenPiece(kind.map_or("unknown", |k| k.name()).to_string()));
        }
    }
    join_complements(g1, v1, g2, v2, choice)
}

/// The allowed pieces of the store together with everything obtained from
/// them by repeated recombination, up to `max_v` vertices.
pub fn enumerate_recombinations(
    store: &EnumerationStore,
    max_v: usize,
    catalogue: Catalogue,
) -> BTreeSet<CanonicalCode> {
    let mode = store.chirality;
    let mut known: BTreeMap<CanonicalCode, PlaneMap> = store
        .entries()
        .filter(|(_, e)| e.map.vertex_count() <= max_v && e.map.vertex_count() > 0)
        .filter(|(_, e)| catalogue.allows(e.exception))
        .map(|(c, e)| (c.clone(), e.map.clone()))
        .collect();
    let mut queue: Vec<CanonicalCode> = known.keys().cloned().collect();
    while let Some(code) = queue.pop() {
        let a = known[&code].clone();
        let partners: Vec<PlaneMap> = known.values().cloned().collect();
        for b in partners {
            if a.vertex_count() + b.vertex_count() - 2 > max_v {
                continue;
            }
            for v1 in 0..a.vertex_count() {
                for v2 in 0..b.vertex_count() {
                    for choice in GluingChoice::all() {
                        let g = join_complements(&a, v1, &b, v2, choice).expect("valid vertices");
                        let c = canonical_code(&g, mode).expect("recombination is connected");
                        if !known.contains_key(&c) {
                            known.insert(c.clone(), g);
                            queue.push(c);
                        }
                    }
                }
            }
        }
    }
    known.into_keys().collect()
}
