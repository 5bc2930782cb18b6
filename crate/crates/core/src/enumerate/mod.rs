//! Enumeration of atoroidal graphs by surgery, recombination into prime
//! projections, and an exhaustive oracle.

mod checkpoint;
mod oracle;
mod recombine;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canon::{canonical_code, CanonicalCode, Chirality};
use crate::curves::{exception_kind, is_atoroidal};
use crate::error::EnumerateError;
use crate::planemap::{exception, torus_graph, ExceptionKind, PlaneMap};
use crate::surgery::{apply_surgery, legal_surgeries, SurgeryMove};

pub use checkpoint::{read_checkpoint, resume, write_checkpoint};
pub use oracle::{all_maps, all_maps_with_min_face, count_rooted_maps, oracle_enumerate, oracle_enumerate_with, ORACLE_LIMIT};
pub use recombine::{
    enumerate_recombinations, recombine, recombine_in, Catalogue, GluingChoice,
};

pub const DEFAULT_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    /// The graph in canonical labels.
    pub map: PlaneMap,
    /// One surgery per distinct parent producing this graph, on the
    /// parent's canonical labels.
    pub predecessors: Vec<(CanonicalCode, SurgeryMove)>,
    pub exception: Option<ExceptionKind>,
    pub torus_n: Option<usize>,
    pub hyperbolic: bool,
}

impl Entry {
    fn new(map: PlaneMap, code: &CanonicalCode, chirality: Chirality) -> Entry {
        let v = map.vertex_count();
        let exception = exception_kind(&map);
        let torus_n = (v >= 6 && v.is_multiple_of(2))
            .then(|| canonical_code(&torus_graph(v / 2).expect("antiprism"), chirality).unwrap())
            .filter(|t| t == code)
            .map(|_| v / 2);
        Entry { map, predecessors: Vec::new(), exception, torus_n, hyperbolic: exception.is_none() }
    }

    pub fn is_initial(&self) -> bool {
        self.exception.is_some() || self.torus_n.is_some()
    }
}

/// Atoroidal graphs by vertex count, complete up to `max_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationStore {
    pub chirality: Chirality,
    pub levels: BTreeMap<usize, BTreeSet<CanonicalCode>>,
    pub meta: BTreeMap<CanonicalCode, Entry>,
}

impl EnumerationStore {
    pub fn new(chirality: Chirality) -> EnumerationStore {
        EnumerationStore { chirality, levels: BTreeMap::new(), meta: BTreeMap::new() }
    }

    /// Highest complete level, if any.
    pub fn max_v(&self) -> Option<usize> {
        self.levels.keys().next_back().copied()
    }

    pub fn level_counts(&self) -> Vec<(usize, usize)> {
        self.levels.iter().map(|(&v, s)| (v, s.len())).collect()
    }

    pub fn total(&self) -> usize {
        self.meta.len()
    }

    pub fn get(&self, code: &CanonicalCode) -> Option<&Entry> {
        self.meta.get(code)
    }

    /// Entries in level order, codes ascending within a level.
    pub fn entries(&self) -> impl Iterator<Item = (&CanonicalCode, &Entry)> {
        self.levels.values().flatten().map(move |c| (c, &self.meta[c]))
    }

    /// Proper descendants of `code` under surgery within the store.
    pub fn descendants_of(&self, code: &CanonicalCode) -> BTreeSet<CanonicalCode> {
        let mut out: BTreeSet<CanonicalCode> = BTreeSet::new();
        for (c, e) in self.entries() {
            if e.predecessors.iter().any(|(p, _)| p == code || out.contains(p)) {
                out.insert(c.clone());
            }
        }
        out
    }

    /// Surgery children of the hyperbolic graphs at `v - 1`, with the move
    /// that produced each, in a run-independent order.
    fn children(&self, v: usize) -> Vec<(CanonicalCode, CanonicalCode, SurgeryMove, PlaneMap)> {
        let parents: Vec<(&CanonicalCode, &Entry)> = match v.checked_sub(1).and_then(|u| self.levels.get(&u)) {
            Some(level) => level.iter().map(|c| (c, &self.meta[c])).filter(|(_, e)| e.hyperbolic).collect(),
            None => Vec::new(),
        };
        let mode = self.chirality;
        parents
            .par_iter()
            .map(|(pc, pe)| {
                let mut seen = BTreeSet::new();
                let mut out = Vec::new();
                for m in legal_surgeries(&pe.map) {
                    let child = apply_surgery(&pe.map, &m).expect("listed moves are legal");
                    let code = canonical_code(&child, mode).expect("surgery keeps maps connected");
                    if seen.insert(code.clone()) {
                        out.push(((*pc).clone(), code, m, child));
                    }
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    /// Computes level `v` from level `v - 1` and the initial objects.
    fn push_level(&mut self, v: usize) -> Result<(), EnumerateError> {
        let mode = self.chirality;
        let mut fresh: BTreeMap<CanonicalCode, Entry> = BTreeMap::new();
        for g in initial_objects(v).into_iter().filter(|g| g.vertex_count() == v) {
            let code = canonical_code(&g, mode)?;
            let map = code.to_map()?;
            fresh.insert(code.clone(), Entry::new(map, &code, mode));
        }
        for (parent, code, m, _) in self.children(v) {
            let entry = fresh.entry(code.clone()).or_insert_with(|| {
                let map = code.to_map().expect("valid code");
                Entry::new(map, &code, mode)
            });
            entry.predecessors.push((parent, m));
        }
        let broken: Vec<String> = fresh
            .par_iter()
            .filter(|(_, e)| !is_atoroidal(&e.map))
            .map(|(c, _)| c.to_hex())
            .collect();
        if let Some(c) = broken.first() {
            return Err(EnumerateError::InvariantViolation(format!("surgery produced non-atoroidal graph {c}")));
        }
        self.levels.insert(v, fresh.keys().cloned().collect());
        self.meta.extend(fresh);
        Ok(())
    }

    /// Adds levels until the store is complete up to `max_v`.
    pub fn extend_to(&mut self, max_v: usize, limit: usize) -> Result<(), EnumerateError> {
        if max_v > limit {
            return Err(EnumerateError::LimitExceeded { requested: max_v, limit });
        }
        let start = self.max_v().map_or(0, |m| m + 1);
        for v in start..=max_v {
            self.push_level(v)?;
        }
        Ok(())
    }
}

/// The four exceptions with at most `max_v` vertices, then `T_n` for
/// `6 <= 2n <= max_v`.
pub fn initial_objects(max_v: usize) -> Vec<PlaneMap> {
    let mut out: Vec<PlaneMap> = ExceptionKind::ALL
        .into_iter()
        .map(exception)
        .filter(|g| g.vertex_count() <= max_v)
        .collect();
    out.extend((3..=max_v / 2).map(|n| torus_graph(n).expect("antiprism")));
    out
}

pub fn enumerate_atoroidal(max_v: usize) -> Result<EnumerationStore, EnumerateError> {
    enumerate_atoroidal_with(max_v, Chirality::ModReflection, DEFAULT_LIMIT)
}

/// Surgery closure of the initial objects, level by level.
pub fn enumerate_atoroidal_with(
    max_v: usize,
    chirality: Chirality,
    limit: usize,
) -> Result<EnumerationStore, EnumerateError> {
    let mut store = EnumerationStore::new(chirality);
    store.extend_to(max_v, limit)?;
    Ok(store)
}

/// Proper descendants of `T_n` under repeated surgery, up to `max_v`
/// vertices. Computed directly, without an enumeration store.
pub fn descendant_set(n: usize, max_v: usize) -> BTreeSet<CanonicalCode> {
    let mode = Chirality::ModReflection;
    let mut out = BTreeSet::new();
    if n < 3 || 2 * n > max_v {
        return out;
    }
    let mut frontier = vec![torus_graph(n).expect("antiprism")];
    for _ in 2 * n..max_v {
        let mut next: BTreeMap<CanonicalCode, PlaneMap> = BTreeMap::new();
        for g in &frontier {
            for m in legal_surgeries(g) {
                let h = apply_surgery(g, &m).expect("listed moves are legal");
                let code = canonical_code(&h, mode).expect("connected");
                next.entry(code).or_insert(h);
            }
        }
        out.extend(next.keys().cloned());
        frontier = next.into_values().collect();
    }
    out
}
