//! Brute-force generation of connected 4-valent sphere maps.
//!
//! Maps are generated directly as breadth-first mate tables from root dart 0:
//! darts are visited in label order, and each unmatched dart is matched with
//! a later free dart of an existing vertex or with slot 0 of a new vertex.
//! Every rooted map then appears exactly once, and keeping the tables that
//! are least over all roots leaves one table per isomorphism class.
//!
//! The explored part is always connected, so an edge keeps it planar exactly
//! when it joins two free darts of the same open face. Such an edge splits
//! the face's free darts in two, and each part must stay even.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canon::{canonical_code, is_canonical_table, CanonicalCode, Chirality};
use crate::curves::is_atoroidal;
use crate::error::EnumerateError;
use crate::planemap::{rotate, PlaneMap};

pub const ORACLE_LIMIT: usize = 9;

const FREE: u32 = u32::MAX;

#[derive(Clone)]
struct State {
    target: usize,
    min_face: usize,
    mate: Vec<u32>,
    created: usize,
    next: usize,
}

impl State {
    fn new(target: usize, min_face: usize) -> State {
        State { target, min_face, mate: vec![FREE; 4 * target], created: 1, next: 0 }
    }

    /// Whether the face through `d`, if it just closed, is long enough.
    fn face_ok(&self, d: usize) -> bool {
        let mut x = d;
        for _ in 1..self.min_face {
            x = rotate(self.mate[x] as usize);
            if self.mate[x] == FREE {
                return true;
            }
            if x == d {
                return false;
            }
        }
        true
    }

    fn link(&mut self, a: usize, b: usize) {
        self.mate[a] = b as u32;
        self.mate[b] = a as u32;
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.mate[a] = FREE;
        self.mate[b] = FREE;
    }
}

struct Search<'a, F: FnMut(&[u32])> {
    stubs: Vec<Vec<usize>>,
    leaf: &'a mut F,
    split_at: Option<usize>,
    tasks: Vec<State>,
}

impl<F: FnMut(&[u32])> Search<'_, F> {
    fn run(&mut self, st: &mut State, depth: usize) {
        let mut i = st.next;
        while i < 4 * st.created && st.mate[i] != FREE {
            i += 1;
        }
        if i == 4 * st.created {
            if st.created == st.target {
                (self.leaf)(&st.mate);
            }
            return;
        }
        if self.split_at == Some(depth) {
            let mut t = st.clone();
            t.next = i;
            self.tasks.push(t);
            return;
        }
        let saved = st.next;
        st.next = i + 1;
        let mut stubs = std::mem::take(&mut self.stubs[depth]);
        stubs.clear();
        let mut x = i;
        loop {
            x = rotate(x);
            while st.mate[x] != FREE {
                x = rotate(st.mate[x] as usize);
            }
            if x == i {
                break;
            }
            stubs.push(x);
        }
        for &j in stubs.iter().step_by(2) {
            st.link(i, j);
            if st.face_ok(i) && st.face_ok(j) {
                self.run(st, depth + 1);
            }
            st.unlink(i, j);
        }
        self.stubs[depth] = stubs;
        if st.created < st.target {
            let j = 4 * st.created;
            st.created += 1;
            st.link(i, j);
            self.run(st, depth + 1);
            st.unlink(i, j);
            st.created -= 1;
        }
        st.next = saved;
    }
}

fn search<F: FnMut(&[u32])>(st: &mut State, split_at: Option<usize>, leaf: &mut F) -> Vec<State> {
    let n = st.mate.len();
    let mut s = Search { stubs: vec![Vec::new(); n + 1], leaf, split_at, tasks: Vec::new() };
    s.run(st, 0);
    s.tasks
}

/// Calls `leaf` on the breadth-first table of every rooted connected sphere
/// map with `v >= 1` vertices, in parallel over subtrees.
fn for_each_rooted<T, F>(v: usize, min_face: usize, init: T, leaf: F) -> Vec<T>
where
    T: Send + Sync + Clone,
    F: Fn(&mut T, &[u32]) + Sync,
{
    let mut early = init.clone();
    let tasks = search(&mut State::new(v, min_face), Some(v.min(6)), &mut |m: &[u32]| leaf(&mut early, m));
    let mut out: Vec<T> = tasks
        .into_par_iter()
        .map(|mut t| {
            let mut acc = init.clone();
            search(&mut t, None, &mut |m: &[u32]| leaf(&mut acc, m));
            acc
        })
        .collect();
    out.push(early);
    out
}

/// Number of rooted connected 4-valent sphere maps with `v` vertices.
pub fn count_rooted_maps(v: usize) -> u64 {
    if v == 0 {
        return 0;
    }
    for_each_rooted(v, 0, 0u64, |c, _| *c += 1).into_iter().sum()
}

/// All isomorphism classes of connected 4-valent sphere maps with `v`
/// vertices.
pub fn all_maps(v: usize, mode: Chirality) -> Vec<PlaneMap> {
    all_maps_with_min_face(v, mode, 0)
}

/// Like [`all_maps`], keeping only maps whose faces all have at least
/// `min_face` sides; short faces are pruned during generation.
pub fn all_maps_with_min_face(v: usize, mode: Chirality, min_face: usize) -> Vec<PlaneMap> {
    if v == 0 {
        return if min_face == 0 { vec![PlaneMap::circles(1)] } else { Vec::new() };
    }
    let parts = for_each_rooted(v, min_face, Vec::new(), |acc: &mut Vec<Vec<u32>>, m| {
        if is_canonical_table(m, mode) {
            acc.push(m.to_vec());
        }
    });
    let mut tables: Vec<Vec<u32>> = parts.into_iter().flatten().collect();
    tables.sort();
    tables
        .into_iter()
        .map(|t| {
            let mate = t.into_iter().map(|x| x as usize).collect();
            PlaneMap::from_mates(v, mate, 0).expect("generated tables are sphere maps")
        })
        .collect()
}

/// Atoroidal maps by exhaustive generation, without surgery.
pub fn oracle_enumerate(max_v: usize) -> Result<BTreeMap<usize, BTreeSet<CanonicalCode>>, EnumerateError> {
    oracle_enumerate_with(max_v, Chirality::ModReflection)
}

pub fn oracle_enumerate_with(
    max_v: usize,
    mode: Chirality,
) -> Result<BTreeMap<usize, BTreeSet<CanonicalCode>>, EnumerateError> {
    if max_v > ORACLE_LIMIT {
        return Err(EnumerateError::LimitExceeded { requested: max_v, limit: ORACLE_LIMIT });
    }
    let mut out = BTreeMap::new();
    for v in 0..=max_v {
        let level: BTreeSet<CanonicalCode> = all_maps(v, mode)
            .into_par_iter()
            .filter(is_atoroidal)
            .map(|g| canonical_code(&g, mode).expect("connected"))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        out.insert(v, level);
    }
    Ok(out)
}
