#![allow(dead_code)]

use frontdga::disks::{all_disks, check_d_squared, grading_violations, DiskConfig};
use frontdga::homology::{duality_check, fp_mismatches, graded_homology};
use frontdga::linearized::bilinearized_complex;
use frontdga::GradedModule;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use surgery::catalog::Construction;
use surgery::ops::{commute, reidemeister1, reidemeister2, reidemeister3};
use surgery::{KinkSide, Passing, Rewrite};

/// Builds a module from (shift, rank, torsion) triples, Z[s] sitting in
/// degree -s.
pub fn shifted(parts: &[(i64, usize, &[i64])]) -> GradedModule {
    let flipped: Vec<(i64, usize, &[i64])> = parts.iter().map(|&(s, r, t)| (-s, r, t)).collect();
    GradedModule::from_parts(&flipped)
}

#[derive(Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>) -> Outcome {
    Outcome { name, passed: failures.is_empty(), detail: failures.join("; ") }
}

/// Every ordered pair of augmentation labels, equal pairs included.
pub fn label_pairs(c: &Construction) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for a in &c.labels {
        for b in &c.labels {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// The structural checks that hold on every front with augmentations.
pub fn structural(c: &Construction) -> Vec<Outcome> {
    let dga = c.dga();
    let l = c.legendrian();
    let d = l.diagram().unwrap();
    let p = l.potential().unwrap();
    let knot = dga.components == 1;
    let tb = d.classical_invariants().total_tb;
    let mut out = Vec::new();

    let bad: Vec<String> = check_d_squared(dga).into_iter().map(|(g, _)| dga.names[g].clone()).collect();
    out.push(outcome("d^2 = 0", bad));

    let disks = all_disks(&d, &p, DiskConfig::default()).unwrap();
    let drops: Vec<String> = grading_violations(dga, &disks).into_iter().map(|(a, _)| dga.names[a].clone()).collect();
    out.push(outcome("disk grading drop", drops));

    let mut chi = Vec::new();
    let mut ranks = Vec::new();
    let mut fp = Vec::new();
    let mut duality = Vec::new();
    for (a, b) in label_pairs(c) {
        let e1 = c.augmentation(&a).unwrap();
        let e2 = c.augmentation(&b).unwrap();
        let cx = bilinearized_complex(dga, &e1, &e2);
        let h = graded_homology(&cx).unwrap();
        if knot && cx.euler_characteristic() != tb {
            chi.push(format!("({a},{b}): chi {} vs tb {}", cx.euler_characteristic(), tb));
        }
        if knot && a == b {
            let r = |k: i64| h.rank(k);
            let sym = h.degrees().map(|(k, _)| k).filter(|k| k.abs() > 1).all(|k| r(k) == r(-k));
            if r(1) != 1 + r(-1) || !sym || r(0) % 2 != 0 {
                ranks.push(format!("{a}: {}", h));
            }
        }
        for prime in [2u64, 3, 5] {
            let m = fp_mismatches(&cx, &h, prime);
            if !m.is_empty() {
                fp.push(format!("({a},{b}) mod {prime}: degrees {:?}", m));
            }
        }
        if knot {
            let report = duality_check(dga, tb, &e1, &e2).unwrap();
            for name in ["duality_iso", "torsion_symmetry"] {
                if let Some(check) = report.check(name) {
                    if !check.passed {
                        duality.push(format!("({a},{b}) {name}: {}", check.witness));
                    }
                }
            }
        }
    }
    out.push(outcome("chi = tb", chi));
    out.push(outcome("rank constraints", ranks));
    out.push(outcome("duality and torsion symmetry", duality));
    out.push(outcome("F_p cross-check", fp));
    out
}

fn all_homology(c: &Construction) -> Vec<GradedModule> {
    label_pairs(c).iter().map(|(a, b)| c.homology(a, b).unwrap()).collect()
}

/// A random isotopy move on the current front: a random kind of move,
/// then random positions until one applies. Kinds with no site are skipped.
fn random_move(c: &Construction, rng: &mut StdRng) -> Option<Rewrite> {
    let l = c.legendrian();
    let len = l.events().len();
    let d = l.diagram().ok()?;
    let mut kinds = vec![0, 1, 2, 3];
    while !kinds.is_empty() {
        let kind = kinds.swap_remove(rng.gen_range(0..kinds.len()));
        let mut positions: Vec<usize> = (0..=len).collect();
        while !positions.is_empty() {
            let pos = positions.swap_remove(rng.gen_range(0..positions.len()));
            let rw = match kind {
                0 => {
                    let n = d.column(pos).len();
                    if n == 0 {
                        continue;
                    }
                    let side = if rng.gen_bool(0.5) { KinkSide::Above } else { KinkSide::Below };
                    reidemeister1(l, pos, rng.gen_range(1..=n), side)
                }
                1 => reidemeister2(l, pos, if rng.gen_bool(0.5) { Passing::Above } else { Passing::Below }),
                2 => reidemeister3(l, pos),
                _ => commute(l, pos),
            };
            if let Ok(rw) = rw {
                return Some(rw);
            }
        }
    }
    None
}

/// Runs `count` random move sequences of length `steps` and compares every
/// bilinearized homology with the original one. Returns the failures.
pub fn reidemeister_invariance(c: &Construction, count: usize, steps: usize, seed: u64) -> Vec<String> {
    let reference = all_homology(c);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for run in 0..count {
        let mut cur = c.clone();
        for step in 0..steps {
            let Some(rw) = random_move(&cur, &mut rng) else { break };
            let created = rw.created.clone();
            if let Err(e) = cur.pipeline.apply(rw) {
                failures.push(format!("run {run} step {step} ({created:?}): {e}"));
                break;
            }
            if all_homology(&cur) != reference {
                failures.push(format!("run {run} step {step} ({created:?}): homology changed"));
                break;
            }
        }
    }
    failures
}
