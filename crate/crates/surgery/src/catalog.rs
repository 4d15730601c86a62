//! Named constructions, each built from a few base fronts by surgery.

use std::collections::BTreeMap;

use frontdga::disks::DiskConfig;
use frontdga::homology::graded_homology;
use frontdga::linearized::bilinearized_complex;
use frontdga::{Augmentation, Dga, GradedModule};
use num_bigint::BigInt;

use crate::error::{Result, SurgeryError};
use crate::legendrian::Legendrian;
use crate::ops::{interlace_unknot, stack, InterlaceNames, KinkSide};
use crate::pipeline::{NamedAugmentation, Pipeline};

pub const TREFOIL: &str = "lc 1\nlc 3\nx 2 b1\nx 2 b2\nbp 4 +\nx 2 b3\nrc 1 a1\nrc 1 a2\n";
pub const HOPF: &str = "lc 1\nbp 2 +\nlc 3\nbp 4 +\nx 2 b1\nx 2 b2\nrc 1 a1\nrc 1 a2\n";

/// Integer parameters given as `name=value` or `name=v1,v2,...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn parse<S: AsRef<str>>(pairs: &[S]) -> Result<Params> {
        let mut values = BTreeMap::new();
        for p in pairs {
            let p = p.as_ref();
            let (k, v) = p.split_once('=').ok_or_else(|| SurgeryError::ParameterOutOfRange {
                name: p.to_string(),
                value: String::new(),
                reason: "expected name=value".into(),
            })?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params { values })
    }

    pub fn with(mut self, name: &str, value: &str) -> Params {
        self.values.insert(name.to_string(), value.to_string());
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|v| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.values.keys()
    }

    pub fn ints(&self, name: &str, default: &[i64]) -> Result<Vec<i64>> {
        let Some(v) = self.values.get(name) else { return Ok(default.to_vec()) };
        v.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim().parse().map_err(|_| SurgeryError::ParameterOutOfRange {
                    name: name.to_string(),
                    value: v.clone(),
                    reason: "not an integer list".into(),
                })
            })
            .collect()
    }

    pub fn int(&self, name: &str, default: i64) -> Result<i64> {
        let v = self.ints(name, &[default])?;
        match v.as_slice() {
            [x] => Ok(*x),
            _ => Err(SurgeryError::ParameterOutOfRange {
                name: name.to_string(),
                value: self.values[name].clone(),
                reason: "expected a single integer".into(),
            }),
        }
    }
}

fn out_of_range(name: &str, value: impl ToString, reason: &str) -> SurgeryError {
    SurgeryError::ParameterOutOfRange { name: name.to_string(), value: value.to_string(), reason: reason.to_string() }
}

fn named(values: &[(&str, i64)]) -> NamedAugmentation {
    values.iter().map(|(k, v)| (k.to_string(), BigInt::from(*v))).collect()
}

/// A front with labelled augmentations carried along its construction.
#[derive(Clone, Debug)]
pub struct Construction {
    pub pipeline: Pipeline,
    pub labels: Vec<String>,
}

impl Construction {
    pub fn new(legendrian: Legendrian, augs: Vec<(String, NamedAugmentation)>) -> Result<Construction> {
        let (labels, values): (Vec<String>, Vec<NamedAugmentation>) = augs.into_iter().unzip();
        let pipeline = Pipeline::new(legendrian, &values, DiskConfig::default())?;
        Ok(Construction { pipeline, labels })
    }

    pub fn legendrian(&self) -> &Legendrian {
        &self.pipeline.legendrian
    }

    pub fn dga(&self) -> &Dga {
        self.pipeline.dga()
    }

    pub fn augmentation(&self, label: &str) -> Option<Augmentation> {
        self.labels.iter().position(|l| l == label).map(|i| self.pipeline.augmentation(i))
    }

    pub fn named_augmentations(&self) -> impl Iterator<Item = (&String, &NamedAugmentation)> {
        self.labels.iter().zip(self.pipeline.augmentations.iter())
    }

    /// Bilinearized homology for the labelled pair (equal labels give the
    /// linearized homology).
    pub fn homology(&self, first: &str, second: &str) -> Result<GradedModule> {
        let missing = |l: &str| out_of_range("augmentation", l, "no such augmentation");
        let e1 = self.augmentation(first).ok_or_else(|| missing(first))?;
        let e2 = self.augmentation(second).ok_or_else(|| missing(second))?;
        Ok(graded_homology(&bilinearized_complex(self.dga(), &e1, &e2))?)
    }

    pub fn event_of(&self, name: &str) -> Option<usize> {
        self.legendrian().events().iter().position(|e| e.label.as_deref() == Some(name))
    }

    fn event(&self, name: &str) -> Result<(usize, usize)> {
        let e = self.event_of(name).ok_or_else(|| out_of_range("generator", name, "not in the front"))?;
        Ok((e, self.legendrian().events()[e].slot))
    }

    /// Connected sum with `other`, which is placed below this front right
    /// after its first event and shifted so the two facing strands agree.
    /// Only augmentation labels present in both survive.
    pub fn sum_with(self, other: Construction) -> Result<Construction> {
        let a = self.legendrian();
        let m = a.diagram()?.column(1).len();
        let delta = a.potential_at(1, m)? - other.legendrian().potential_at(1, 1)?;
        let (leg, renames) = stack(a, 1, other.legendrian(), delta)?;
        let rename = |k: &String| renames.get(k).cloned().unwrap_or_else(|| k.clone());
        let mut augs = Vec::new();
        for (label, vals) in self.named_augmentations() {
            let Some(j) = other.labels.iter().position(|l| l == label) else { continue };
            let mut merged = vals.clone();
            merged.extend(other.pipeline.augmentations[j].iter().map(|(k, v)| (rename(k), v.clone())));
            augs.push((label.clone(), merged));
        }
        let mut c = Construction::new(leg, augs)?;
        c.pipeline.step(|l| crate::ops::connected_sum(l, 2, m))?;
        Ok(c)
    }
}

fn trefoil_augmentations(n: i64) -> Vec<(String, NamedAugmentation)> {
    vec![
        ("eps".into(), named(&[("b1", -1), ("b2", n), ("b3", 0)])),
        ("ex1".into(), named(&[("b1", -1), ("b2", 0), ("b3", 0)])),
        ("ex2".into(), named(&[("b1", -1), ("b2", n), ("b3", 0)])),
        ("eps1".into(), named(&[("b1", 0), ("b2", 0), ("b3", -1)])),
        ("eps2".into(), named(&[("b1", -1), ("b2", n), ("b3", 0)])),
    ]
}

/// The right-handed trefoil with ε_n and the two bilinearized pairs.
pub fn trefoil(n: i64) -> Result<Construction> {
    Construction::new(Legendrian::parse(TREFOIL, &[])?, trefoil_augmentations(n))
}

/// Trefoil with unknots threading its two bottom strands, one per shift.
pub fn interlaced_trefoil(ks: &[i64], n: i64) -> Result<(Construction, Vec<Vec<String>>)> {
    let mut leg = Legendrian::parse(TREFOIL, &[])?;
    let mut created = Vec::new();
    for (i, &k) in ks.iter().enumerate() {
        let pos = leg.events().iter().position(|e| e.label.as_deref() == Some("b3")).unwrap();
        let names = if i == 0 {
            InterlaceNames { cusp: Some("a3".into()), up: vec!["d1".into(), "d2".into()], down: vec!["c1".into(), "c2".into()] }
        } else {
            let s = i + 1;
            InterlaceNames {
                cusp: Some(format!("a3_{}", s)),
                up: vec![format!("d1_{}", s), format!("d2_{}", s)],
                down: vec![format!("c1_{}", s), format!("c2_{}", s)],
            }
        };
        let rw = interlace_unknot(&leg, pos, 4, 2, k, &names)?;
        created.push(rw.created.clone());
        leg = rw.result;
    }
    Ok((Construction::new(leg, trefoil_augmentations(n))?, created))
}

/// Λ^T_k̄: every interlaced unknot summed into the trefoil.
pub fn torsion_knot(ks: &[i64], n: i64) -> Result<Construction> {
    let (mut c, created) = interlaced_trefoil(ks, n)?;
    for (names, &k) in created.iter().zip(ks) {
        // names: cusp, up (d1, d2), down (c1, c2)
        if k >= 0 {
            let (pos, slot) = c.event(&names[3])?;
            c.pipeline.kinked_sum(pos, slot, KinkSide::Above)?;
        } else {
            let (pos, slot) = c.event(&names[2])?;
            c.pipeline.kinked_sum(pos, slot, KinkSide::Below)?;
        }
    }
    Ok(c)
}

/// Hopf link whose crossings have gradings k and -k, with ε_0 = 0.
pub fn hopf(k: i64) -> Result<Construction> {
    let leg = Legendrian::parse(HOPF, &[0, -k - 1])?;
    Construction::new(leg, vec![("eps".into(), NamedAugmentation::new())])
}

/// The Hopf link made into a knot by a connected sum.
pub fn hopf_sum(k: i64) -> Result<Construction> {
    let mut c = hopf(k)?;
    if k >= 0 {
        let (pos, _) = c.event("a1")?;
        c.pipeline.kinked_sum(pos, 2, KinkSide::Below)?;
    } else {
        let (pos, _) = c.event("b2")?;
        c.pipeline.kinked_sum(pos, 2, KinkSide::Above)?;
    }
    Ok(c)
}

/// Connected sum of the knots `hopf_sum(k)` for every k.
pub fn free_sum(ks: &[i64]) -> Result<Construction> {
    let mut it = ks.iter();
    let first = it.next().ok_or_else(|| out_of_range("k", "", "at least one grading"))?;
    let mut c = hopf_sum(*first)?;
    for &k in it {
        c = c.sum_with(hopf_sum(k)?)?;
    }
    Ok(c)
}

/// The knot realising Z[-1] ⊕ F ⊕ F̄ ⊕ Z^{2d}[0] ⊕ T ⊕ T̄[1] for linearized
/// homology: `free` lists the gradings of F, and each torsion group i is
/// Z/(n_i - 1) in the gradings of `torsion[i]`.
pub fn theorem1(free: &[i64], torsion: &[(i64, Vec<i64>)]) -> Result<Construction> {
    let mut parts = Vec::new();
    for (n, ls) in torsion {
        let c = torsion_knot(ls, *n)?;
        let eps = c.pipeline.augmentations[c.labels.iter().position(|l| l == "eps").unwrap()].clone();
        parts.push(Construction::new(c.legendrian().clone(), vec![("eps".into(), eps)])?);
    }
    if !free.is_empty() {
        parts.push(free_sum(free)?);
    }
    let mut it = parts.into_iter();
    let mut c = it.next().ok_or_else(|| out_of_range("free", "", "nothing to assemble"))?;
    for p in it {
        c = c.sum_with(p)?;
    }
    Ok(c)
}

/// Front of the N-copy of the standard unknot, lens N on top. Lenses open
/// in the order `opening` and close in the order `closing`; the order only
/// moves cusps past each other and does not change the algebra.
fn copy_front(count: usize, opening: &[usize], closing: &[usize]) -> String {
    // (lens, upper?) per slot, top to bottom
    let mut slots: Vec<(usize, bool)> = Vec::new();
    let mut out = String::new();
    for &lens in opening {
        let s = slots.iter().filter(|(l, _)| *l > lens).count();
        out.push_str(&format!("lc {}\n", s + 1));
        out.push_str(&format!("bp {} +\n", s + 2));
        slots.insert(s, (lens, false));
        slots.insert(s, (lens, true));
    }
    let mut rounds: Vec<Vec<usize>> = Vec::new();
    for r in 1..count {
        rounds.push((0..count - r).map(|q| r + 1 + 2 * q).collect());
    }
    let swap = |slots: &mut Vec<(usize, bool)>, s: usize, left: bool, out: &mut String| {
        let (top, bottom) = (slots[s - 1], slots[s]);
        // on the left the descending strand is the lower strand of a lens
        let (i, j) = if left == !top.1 { (top.0, bottom.0) } else { (bottom.0, top.0) };
        out.push_str(&format!("x {} b{}_{}\n", s, i, j));
        slots.swap(s - 1, s);
    };
    for round in &rounds {
        for &s in round {
            swap(&mut slots, s, true, &mut out);
        }
    }
    for round in rounds.iter().rev() {
        for &s in round {
            swap(&mut slots, s, false, &mut out);
        }
    }
    for &lens in closing {
        let s = slots.iter().position(|(l, _)| *l == lens).unwrap();
        out.push_str(&format!("rc {} a{}\n", s + 1, lens));
        slots.drain(s..s + 2);
    }
    out
}

/// The 2n-copy of the unknot with ε1(b_{2i,2i-1}) = 1 and
/// ε2(b_{2i+1,2i}) = 1, zero elsewhere.
pub fn two_n_copy(n: i64) -> Result<Construction> {
    if n < 1 {
        return Err(out_of_range("n", n, "at least 1"));
    }
    let count = 2 * n as usize;
    let top_down: Vec<usize> = (1..=count).rev().collect();
    copy_with(n, &top_down, &top_down)
}

pub fn copy_with(n: i64, opening: &[usize], closing: &[usize]) -> Result<Construction> {
    let count = 2 * n as usize;
    // components are numbered in opening order
    let shifts: Vec<i64> = opening.iter().map(|&l| l as i64).collect();
    let leg = Legendrian::parse(&copy_front(count, opening, closing), &shifts)?;
    let mut e1 = NamedAugmentation::new();
    let mut e2 = NamedAugmentation::new();
    for i in 2..=count {
        let target = if i % 2 == 0 { &mut e1 } else { &mut e2 };
        target.insert(format!("b{}_{}", i, i - 1), BigInt::from(1));
    }
    Construction::new(leg, vec![("eps1".into(), e1), ("eps2".into(), e2)])
}

/// The 2n-copy after the double connected sums joining the odd lenses into
/// one component and the even lenses into another. Odd lenses open first
/// and close first, so each sum happens next to a cusp after one kink.
pub fn even_odd_link(n: i64) -> Result<Construction> {
    even_odd_with(n, KinkSide::Below, KinkSide::Below)
}

pub fn even_odd_with(n: i64, left: KinkSide, right: KinkSide) -> Result<Construction> {
    if n < 1 {
        return Err(out_of_range("n", n, "at least 1"));
    }
    let count = 2 * n as usize;
    let odd_first: Vec<usize> =
        (1..=count).rev().filter(|l| l % 2 == 1).chain((1..=count).rev().filter(|l| l % 2 == 0)).collect();
    let mut c = copy_with(n, &odd_first, &odd_first)?;
    // left: L_{2i+1} sits at slot 2(n-1-i)+2 above U_{2i-1}
    let mut pos = 2 * n as usize;
    for i in 1..n as usize {
        let slot = 2 * (n as usize - 1 - i) + 2;
        let x = c.pipeline.kinked_sum(pos, slot, left)?;
        pos = c.event_of(&x).unwrap() + 1;
    }
    // right: the even lenses remain once the odd ones have closed
    for i in 1..n as usize {
        let pos = c.event_of(&format!("a{}", count)).unwrap();
        let slot = 2 * (n as usize - 1 - i) + 2;
        c.pipeline.kinked_sum(pos, slot, right)?;
    }
    Ok(c)
}

/// The trefoil with an unknot through its right eye, shifted so the two
/// crossings between the unknot and the top trefoil strand have gradings
/// k and -k. The pair (`eps1`, `eps2`) gives (m-1)-torsion in degree k-1.
pub fn lambda_mk(m: i64, k: i64) -> Result<Construction> {
    if [0, 1, 2].contains(&m) {
        return Err(out_of_range("m", m, "m must avoid 0, 1 and 2"));
    }
    let (c, _) = interlaced_trefoil(&[-k], m)?;
    let aug = |label: &str| c.named_augmentations().find(|(l, _)| *l == label).unwrap().1.clone();
    let (e1, e2) = (aug("eps2"), aug("eps1"));
    Construction::new(c.legendrian().clone(), vec![("eps1".into(), e1), ("eps2".into(), e2)])
}

/// Λ^min_4: the 4-copy with its two odd lenses summed on the left, then a
/// kink on lens 3, an R2 pushing the even lens past it, the even sum, a
/// second R2 and an R3 that sets up the clasp between `b3_4` and the
/// second R2's crossing. The clasp is removed and the two components are
/// summed once more.
///
/// With our disk conventions the second R2 forces the clasp crossing to
/// -1 under `eps1`, so the unclasp step reports `NoExtension`.
pub fn min_four() -> Result<Construction> {
    use crate::ops::{clasp_sites, commute, connected_sum, connected_sum_sites, reidemeister1, reidemeister2, reidemeister3, unclasp, Passing};
    let mut c = copy_with(2, &[3, 1, 4, 2], &[3, 1, 4, 2])?;
    c.pipeline.kinked_sum(4, 2, KinkSide::Below)?;
    let p = c.event_of("a3").ok_or_else(|| missing("a3"))?;
    let made = c.pipeline.step(|l| reidemeister1(l, p, 5, KinkSide::Above))?;
    let kink = c.event_of(&made[1]).ok_or_else(|| missing(&made[1]))?;
    c.pipeline.step(|l| commute(l, kink))?;
    let p = c.event_of("a3").ok_or_else(|| missing("a3"))?;
    c.pipeline.step(|l| reidemeister2(l, p, Passing::Below))?;
    let p = c.event_of("a3").ok_or_else(|| missing("a3"))?;
    let even = c.pipeline.step(|l| connected_sum(l, p, 2))?;
    let p = c.event_of("a3").ok_or_else(|| missing("a3"))?;
    c.pipeline.step(|l| reidemeister2(l, p, Passing::Above))?;
    // the even-sum crossing sits in the middle of the R3 triangle
    let mid = c.event_of(&even[0]).ok_or_else(|| missing(&even[0]))?;
    c.pipeline.step(|l| reidemeister3(l, mid - 1))?;
    let site = clasp_sites(c.legendrian())
        .into_iter()
        .find(|&s| c.legendrian().events()[s].label.as_deref() == Some("b3_4"))
        .ok_or_else(|| missing("clasp at b3_4"))?;
    c.pipeline.step(|l| unclasp(l, site))?;
    let (q, s) = *connected_sum_sites(c.legendrian())?.first().ok_or_else(|| missing("sum site"))?;
    c.pipeline.step(|l| connected_sum(l, q, s))?;
    Ok(c)
}

fn missing(what: &str) -> SurgeryError {
    SurgeryError::WindowMismatch(format!("{} not found", what))
}
