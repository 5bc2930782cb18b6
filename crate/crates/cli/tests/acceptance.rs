//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use atoro_core::curves::{is_trivial_by_compression, is_trivial_by_patterns, is_trivial_by_six_patterns};
use atoro_core::enumerate::{
    descendant_set, enumerate_atoroidal, oracle_enumerate, recombine_in, Catalogue, EnumerationStore, GluingChoice,
};
use atoro_core::{
    apply_surgery, atoroidal_predecessors, canonical_code, decompose, enumerate_curves, exception, is_atoroidal,
    is_hyperbolic, is_isomorphic, legal_surgeries, reassemble, split_sides, torus_graph, Chirality, ExceptionKind,
    PlaneMap,
};

const M: Chirality = Chirality::ModReflection;
const GOLDEN_12: [usize; 13] = [1, 1, 1, 1, 0, 0, 1, 0, 1, 1, 2, 2, 9];

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn store_graphs(store: &EnumerationStore, max_v: usize) -> Vec<PlaneMap> {
    store.entries().filter(|(_, e)| e.map.vertex_count() <= max_v).map(|(_, e)| e.map.clone()).collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let oracle = oracle_enumerate(9).map_err(|e| e.to_string())?;
    let store = enumerate_atoroidal(9).map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for v in 0..=9 {
        let a = oracle.get(&v).cloned().unwrap_or_default();
        let b = store.levels.get(&v).cloned().unwrap_or_default();
        if a != b {
            return Err(format!("level {v}: oracle has {}, enumeration has {}", a.len(), b.len()));
        }
        counts.push(a.len());
    }
    if counts != GOLDEN_12[..10] {
        return Err(format!("counts {counts:?}"));
    }
    Ok(format!("levels 0..9 agree, counts {counts:?}, {:.1}s", start.elapsed().as_secs_f64()))
}

fn surgery_preserves_atoroidality(store: &EnumerationStore) -> Outcome {
    let mut moves = 0;
    for g in store_graphs(store, 10) {
        for m in legal_surgeries(&g) {
            let h = apply_surgery(&g, &m).map_err(|e| e.to_string())?;
            if !is_atoroidal(&h) {
                return Err(format!("{m} on {} is not atoroidal", canonical_code(&g, M).unwrap()));
            }
            moves += 1;
        }
    }
    Ok(format!("{moves} surgeries on graphs with at most 10 vertices"))
}

fn every_graph_has_a_predecessor(store: &EnumerationStore) -> Outcome {
    let mut checked = 0;
    for (code, e) in store.entries().filter(|(_, e)| e.map.vertex_count() <= 11) {
        let preds = atoroidal_predecessors(&e.map);
        if e.is_initial() {
            if !preds.is_empty() {
                return Err(format!("initial graph {code} has a predecessor"));
            }
        } else if !is_hyperbolic(&e.map) || preds.is_empty() {
            return Err(format!("{code} has no atoroidal predecessor"));
        }
        checked += 1;
    }
    for n in 3..=5 {
        if !atoroidal_predecessors(&torus_graph(n).unwrap()).is_empty() {
            return Err(format!("T_{n} has a predecessor"));
        }
    }
    for k in ExceptionKind::ALL {
        if !atoroidal_predecessors(&exception(k)).is_empty() {
            return Err(format!("{} has a predecessor", k.name()));
        }
    }
    Ok(format!("{checked} graphs with at most 11 vertices"))
}

fn torus_plus_unique() -> Outcome {
    for n in 4..=6 {
        let t = torus_graph(n).unwrap();
        let codes: BTreeSet<_> = legal_surgeries(&t)
            .iter()
            .map(|m| canonical_code(&apply_surgery(&t, m).unwrap(), M).unwrap())
            .collect();
        if codes.len() != 1 {
            return Err(format!("T_{n} has {} surgery classes", codes.len()));
        }
    }
    Ok("T_4, T_5, T_6 each give one class".into())
}

fn chain_containment() -> Outcome {
    let c4 = descendant_set(4, 12);
    let c5 = descendant_set(5, 12);
    let c6 = descendant_set(6, 12);
    if !c5.is_subset(&c4) {
        return Err("C5 is not contained in C4".into());
    }
    if !c6.is_subset(&c5) {
        return Err("C6 is not contained in C5".into());
    }
    Ok(format!("|C4|={} |C5|={} |C6|={}", c4.len(), c5.len(), c6.len()))
}

fn triviality_routes_agree(store: &EnumerationStore) -> Outcome {
    let (mut fours, mut sixes) = (0, 0);
    for g in store_graphs(store, 8) {
        if g.vertex_count() == 0 {
            continue;
        }
        for (n, count) in [(4, &mut fours), (6, &mut sixes)] {
            for c in enumerate_curves(&g, n) {
                let (a, b) = split_sides(&g, &c).map_err(|e| e.to_string())?;
                let by_patterns =
                    if n == 4 { is_trivial_by_patterns(&a, &b) } else { is_trivial_by_six_patterns(&a, &b) };
                if by_patterns != is_trivial_by_compression(&a, &b) {
                    return Err(format!("{} on {} disagrees", c.display(&g), canonical_code(&g, M).unwrap()));
                }
                *count += 1;
            }
        }
    }
    Ok(format!("{fours} 4-curves and {sixes} 6-curves"))
}

fn decomposition_round_trip(store: &EnumerationStore) -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let pieces: Vec<PlaneMap> = store
        .entries()
        .filter(|(_, e)| Catalogue::PrimeProjections.allows(e.exception) && e.map.vertex_count() > 0)
        .map(|(_, e)| e.map.clone())
        .collect();
    let mut pool = pieces.clone();
    let (mut built, mut cut4, mut max_leaves) = (0, 0, 0);
    while built < 200 {
        let a = pool.choose(&mut rng).unwrap().clone();
        let b = pieces.choose(&mut rng).unwrap();
        if a.vertex_count() + b.vertex_count() - 2 > 14 {
            continue;
        }
        let choice = GluingChoice { rotation: rng.gen_range(0..4), reflected: rng.gen() };
        let (va, vb) = (rng.gen_range(0..a.vertex_count()), rng.gen_range(0..b.vertex_count()));
        let g = recombine_in(Catalogue::PrimeProjections, &a, va, b, vb, choice).map_err(|e| e.to_string())?;
        let tree = decompose(&g);
        let back = reassemble(&tree).map_err(|e| e.to_string())?;
        if !is_isomorphic(&back, &g, Chirality::Oriented) {
            return Err(format!("composite {built} does not reassemble"));
        }
        if let Some(bad) = tree.leaves().into_iter().find(|l| !is_atoroidal(l)) {
            return Err(format!("composite {built} has a toroidal leaf with {} vertices", bad.vertex_count()));
        }
        if tree.to_text().contains("cut n=4") {
            cut4 += 1;
        }
        max_leaves = max_leaves.max(tree.leaves().len());
        pool.push(g);
        built += 1;
    }
    Ok(format!("200 composites, {cut4} with a 4-curve cut, up to {max_leaves} leaves"))
}

fn canonical_invariance(store: &EnumerationStore) -> Outcome {
    let mut rng = StdRng::seed_from_u64(99);
    let corpus = store_graphs(store, 12);
    let mut chiral = 0;
    for g in &corpus {
        let v = g.vertex_count();
        let (cm, co) = (canonical_code(g, M).unwrap(), canonical_code(g, Chirality::Oriented).unwrap());
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..v).collect();
            perm.shuffle(&mut rng);
            let shift: Vec<usize> = (0..v).map(|_| rng.gen_range(0..4)).collect();
            let h = g.relabeled(&perm, &shift);
            if canonical_code(&h, M).unwrap() != cm || canonical_code(&h, Chirality::Oriented).unwrap() != co {
                return Err(format!("relabeling changes the code of {cm}"));
            }
        }
        let m = g.mirror();
        if canonical_code(&m, M).unwrap() != cm {
            return Err(format!("mirror of {cm} has a different code"));
        }
        let mo = canonical_code(&m, Chirality::Oriented).unwrap();
        if mo != co {
            chiral += 1;
            if cm.bytes()[2..] != *std::cmp::min(&co.bytes()[2..], &mo.bytes()[2..]) {
                return Err(format!("{cm} is not the lesser oriented code"));
            }
        }
    }
    if chiral == 0 {
        return Err("no chiral graph in the corpus".into());
    }
    Ok(format!("{} graphs x 100 relabelings, {chiral} chiral", corpus.len()))
}

fn run_enumerate(out: &std::path::Path) -> Result<(Duration, String), String> {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_atoro"))
        .args(["enumerate", "--max-crossings", "12", "--out"])
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !output.status.success() {
        return Err(String::from_utf8_lossy(&output.stderr).into_owned());
    }
    Ok((elapsed, String::from_utf8_lossy(&output.stdout).into_owned()))
}

fn performance(dir: &std::path::Path) -> Outcome {
    let (elapsed, table) = run_enumerate(&dir.join("run1.txt"))?;
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {:.1}s", elapsed.as_secs_f64()));
    }
    let counts: Vec<usize> = table
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with("total"))
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    if counts != GOLDEN_12 {
        return Err(format!("counts {counts:?}"));
    }
    for line in table.lines() {
        println!("      {line}");
    }
    Ok(format!("{:.2}s, counts {counts:?}", elapsed.as_secs_f64()))
}

fn determinism(dir: &std::path::Path) -> Outcome {
    run_enumerate(&dir.join("run2.txt"))?;
    let a = std::fs::read(dir.join("run1.txt")).map_err(|e| e.to_string())?;
    let b = std::fs::read(dir.join("run2.txt")).map_err(|e| e.to_string())?;
    if a != b {
        return Err("checkpoints differ".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let dir = std::env::temp_dir().join(format!("atoro-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let store = enumerate_atoroidal(12).expect("enumeration to 12");
    let criteria: Vec<(&str, Check)> = vec![
        ("oracle equivalence up to 9 vertices", Box::new(oracle_equivalence)),
        ("surgery keeps graphs atoroidal", Box::new(|| surgery_preserves_atoroidality(&store))),
        ("non-initial graphs have atoroidal predecessors", Box::new(|| every_graph_has_a_predecessor(&store))),
        ("T_n surgery classes are unique", Box::new(torus_plus_unique)),
        ("descendant chains are nested", Box::new(chain_containment)),
        ("triviality routes agree", Box::new(|| triviality_routes_agree(&store))),
        ("decomposition round trip", Box::new(|| decomposition_round_trip(&store))),
        ("canonical codes are invariant", Box::new(|| canonical_invariance(&store))),
        ("enumerate to 12 within 60s", Box::new(|| performance(&dir))),
        ("checkpoints are deterministic", Box::new(|| determinism(&dir))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
