//! Local rewrites of fronts.

use std::collections::{BTreeMap, BTreeSet};

use frontdga::algebra::evaluate;
use frontdga::{AlgebraElement, Augmentation, Dga, Event, EventKind, Word};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, SurgeryError};
use crate::legendrian::Legendrian;

/// Suggested augmentation values for the generators a rewrite creates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hint {
    Value(String, i64),
    /// The two crossings of a second Reidemeister move: the one of higher
    /// grading goes to 0 and the other to ∓ε(v) where ∂a = ±b + v.
    Pair(String, String),
    /// Keep the old value but let the extension search move it.
    Free(String),
    /// Alternative sets of old generators whose values change sign. Tried
    /// in order; the first that extends wins.
    Signs(Vec<Vec<String>>),
}

#[derive(Clone, Debug)]
pub struct Rewrite {
    pub result: Legendrian,
    pub created: Vec<String>,
    pub removed: Vec<String>,
    pub hints: Vec<Hint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkSide {
    /// Loop above the strand, new crossing augmented by -1.
    Above,
    /// Loop below the strand, new crossing augmented by +1.
    Below,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Passing {
    /// The cusp passes the strand just above it.
    Above,
    Below,
}

fn taken_with(l: &Legendrian) -> BTreeSet<String> {
    l.names()
}

fn fresh_exact(l: &Legendrian, want: &str, taken: &mut BTreeSet<String>) -> String {
    let name = if taken.contains(want) || l.names().contains(want) {
        (1..).map(|j| format!("{}_{}", want, j)).find(|n| !taken.contains(n)).unwrap()
    } else {
        want.to_string()
    };
    taken.insert(name.clone());
    name
}

fn fresh(l: &Legendrian, stem: &str, taken: &mut BTreeSet<String>) -> String {
    let name = l.fresh(stem, taken);
    taken.insert(name.clone());
    name
}

fn column_len(l: &Legendrian, pos: usize) -> Result<usize> {
    if pos > l.events().len() {
        return Err(SurgeryError::WindowMismatch(format!("position {} past the end", pos)));
    }
    Ok(l.diagram()?.column(pos).len())
}

/// Joins the strands at `slot` and `slot + 1` just before event `pos` by a
/// new crossing. The base point of the later component is dropped.
pub fn connected_sum(l: &Legendrian, pos: usize, slot: usize) -> Result<Rewrite> {
    let d = l.diagram()?;
    if slot == 0 || slot + 1 > column_len(l, pos)? {
        return Err(SurgeryError::WindowMismatch(format!("no strands at slots {}, {} before event {}", slot, slot + 1, pos)));
    }
    let (s1, s2) = (d.strand_at(pos, slot), d.strand_at(pos, slot + 1));
    let (c1, c2) = (d.strands()[s1].component, d.strands()[s2].component);
    if c1 == c2 {
        return Err(SurgeryError::SameComponent { pos, slot });
    }
    let p = l.potential()?;
    let (u, w) = (p.potential[s1], p.potential[s2]);
    if u != w {
        return Err(SurgeryError::PotentialMismatch { pos, slot, upper: u, lower: w });
    }
    let drop = d.components()[c1.max(c2)].base_point;
    let mut taken = taken_with(l);
    let name = fresh(l, "c", &mut taken);
    let mut shifts = Vec::new();
    let mut events = Vec::new();
    let mut ordinal = 0;
    for (e, ev) in l.events().iter().enumerate() {
        if e == pos {
            events.push(Event::x(slot).named(&name));
        }
        if ev.kind == EventKind::BasePoint {
            if e != drop {
                shifts.push(l_shift(l, ordinal));
            }
            ordinal += 1;
        }
        if e != drop {
            events.push(ev.clone());
        }
    }
    if pos == l.events().len() {
        events.push(Event::x(slot).named(&name));
    }
    let result = l.rewrite(events, shifts)?;
    // The dropped base point slides along the joined knot to the one kept.
    // With t = -1 every crossing branch it passes flips that generator.
    let at = if pos <= drop { drop + 1 } else { drop };
    let slot_at = l.events()[drop].slot;
    let flips = [true, false].iter().map(|&right| base_point_path(&result, at, slot_at, right)).collect::<Result<_>>()?;
    Ok(Rewrite {
        result,
        created: vec![name.clone()],
        removed: Vec::new(),
        hints: vec![Hint::Value(name, -1), Hint::Signs(flips)],
    })
}

/// Crossings passed an odd number of times when walking from the point at
/// `slot` just before event `pos` to the base point of its component.
fn base_point_path(l: &Legendrian, pos: usize, slot: usize, rightwards: bool) -> Result<Vec<String>> {
    let d = l.diagram()?;
    let ev = l.events();
    let mut strand = d.strand_at(pos, slot);
    let mut passed: BTreeMap<usize, bool> = BTreeMap::new();
    let mut toggle = |e: usize| {
        let v = passed.entry(e).or_insert(false);
        *v = !*v;
    };
    let on = |e: usize, s: usize| -> bool {
        match ev[e].kind {
            EventKind::Crossing => {
                let (a, b) = d.event_strands(e);
                a == s || b == s
            }
            EventKind::BasePoint => d.strand_at(e, ev[e].slot) == s,
            _ => false,
        }
    };
    let (mut p, mut right) = (pos, rightwards);
    for _ in 0..=2 * d.strands().len() {
        let st = &d.strands()[strand];
        let span: Vec<usize> = if right { (p..st.end).collect() } else { (st.start + 1..p).rev().collect() };
        for e in span {
            if !on(e, strand) {
                continue;
            }
            if ev[e].kind == EventKind::BasePoint {
                return Ok(passed.into_iter().filter(|(_, odd)| *odd).filter_map(|(e, _)| ev[e].label.clone()).collect());
            }
            toggle(e);
        }
        let cusp = if right { st.end } else { st.start };
        let (a, b) = d.event_strands(cusp);
        strand = if a == strand { b } else { a };
        right = !right;
        p = if right { cusp + 1 } else { cusp };
    }
    Err(SurgeryError::WindowMismatch("base point not reached".into()))
}

fn l_shift(l: &Legendrian, ordinal: usize) -> i64 {
    l.bp_shifts()[ordinal]
}

/// Every place where a connected sum is allowed.
pub fn connected_sum_sites(l: &Legendrian) -> Result<Vec<(usize, usize)>> {
    let d = l.diagram()?;
    let p = l.potential()?;
    let mut out = Vec::new();
    for pos in 0..=l.events().len() {
        let col = d.column(pos);
        for s in 1..col.len() {
            let (a, b) = (col[s - 1], col[s]);
            if d.strands()[a].component != d.strands()[b].component && p.potential[a] == p.potential[b] {
                out.push((pos, s));
            }
        }
    }
    Ok(out)
}

fn insert_at(l: &Legendrian, pos: usize, new: Vec<Event>, new_shifts: &[(usize, i64)]) -> Result<Legendrian> {
    let mut events = l.events().to_vec();
    let tail = events.split_off(pos);
    events.extend(new);
    events.extend(tail);
    let mut shifts = l.bp_shifts();
    for &(ordinal, s) in new_shifts.iter().rev() {
        shifts.insert(ordinal, s);
    }
    l.rewrite(events, shifts)
}

/// First Reidemeister move: a kink on the strand at `slot` before `pos`.
pub fn reidemeister1(l: &Legendrian, pos: usize, slot: usize, side: KinkSide) -> Result<Rewrite> {
    if slot == 0 || slot > column_len(l, pos)? {
        return Err(SurgeryError::PatternMismatch { op: "R1", pos, reason: format!("no strand at slot {}", slot) });
    }
    let mut taken = taken_with(l);
    let b = fresh(l, "bI", &mut taken);
    let a = fresh(l, "aI", &mut taken);
    let (new, value) = match side {
        KinkSide::Above => (vec![Event::lc(slot), Event::x(slot + 1).named(&b), Event::rc(slot).named(&a)], -1),
        KinkSide::Below => (vec![Event::lc(slot + 1), Event::x(slot).named(&b), Event::rc(slot + 1).named(&a)], 1),
    };
    Ok(Rewrite {
        result: insert_at(l, pos, new, &[])?,
        created: vec![b.clone(), a],
        removed: Vec::new(),
        hints: vec![Hint::Value(b, value)],
    })
}

/// Second Reidemeister move: the cusp at event `pos` passes through the
/// neighbouring strand, creating two crossings.
pub fn reidemeister2(l: &Legendrian, pos: usize, passing: Passing) -> Result<Rewrite> {
    let ev = l.events().get(pos).ok_or_else(|| SurgeryError::PatternMismatch {
        op: "R2",
        pos,
        reason: "no such event".into(),
    })?;
    let n = column_len(l, pos)?;
    let i = ev.slot;
    let mismatch = |reason: &str| SurgeryError::PatternMismatch { op: "R2", pos, reason: reason.into() };
    let mut taken = taken_with(l);
    let x1 = fresh(l, "bII", &mut taken);
    let x2 = fresh(l, "bII", &mut taken);
    let new = match (ev.kind, passing) {
        (EventKind::RightCusp, Passing::Above) if i >= 2 => {
            vec![Event::x(i - 1).named(&x1), Event::x(i).named(&x2), Event { slot: i - 1, ..ev.clone() }]
        }
        (EventKind::RightCusp, Passing::Below) if i + 2 <= n => {
            vec![Event::x(i + 1).named(&x1), Event::x(i).named(&x2), Event { slot: i + 1, ..ev.clone() }]
        }
        (EventKind::LeftCusp, Passing::Above) if i >= 2 => {
            vec![Event::lc(i - 1), Event::x(i).named(&x1), Event::x(i - 1).named(&x2)]
        }
        (EventKind::LeftCusp, Passing::Below) if i <= n => {
            vec![Event::lc(i + 1), Event::x(i).named(&x1), Event::x(i + 1).named(&x2)]
        }
        (EventKind::RightCusp | EventKind::LeftCusp, _) => return Err(mismatch("no strand to pass")),
        _ => return Err(mismatch("event is not a cusp")),
    };
    let mut events = l.events().to_vec();
    events.splice(pos..pos + 1, new);
    Ok(Rewrite {
        result: l.rewrite(events, l.bp_shifts())?,
        created: vec![x1.clone(), x2.clone()],
        removed: Vec::new(),
        hints: vec![Hint::Pair(x1, x2)],
    })
}

/// Third Reidemeister move on the crossings at `pos`, `pos+1`, `pos+2`.
pub fn reidemeister3(l: &Legendrian, pos: usize) -> Result<Rewrite> {
    let ev = l.events();
    let mismatch = |reason: &str| SurgeryError::PatternMismatch { op: "R3", pos, reason: reason.into() };
    if pos + 2 >= ev.len() {
        return Err(mismatch("window runs past the end"));
    }
    let w = &ev[pos..pos + 3];
    if w.iter().any(|e| e.kind != EventKind::Crossing) {
        return Err(mismatch("three consecutive crossings expected"));
    }
    let (i, j) = (w[0].slot, w[1].slot);
    if w[2].slot != i || (j != i + 1 && j + 1 != i) {
        return Err(mismatch("slots must read i, i±1, i"));
    }
    let new = vec![
        Event { slot: j, ..w[2].clone() },
        Event { slot: i, ..w[1].clone() },
        Event { slot: j, ..w[0].clone() },
    ];
    let middle = w[1].label.clone().unwrap_or_default();
    let mut events = ev.to_vec();
    events.splice(pos..pos + 3, new);
    Ok(Rewrite {
        result: l.rewrite(events, l.bp_shifts())?,
        created: Vec::new(),
        removed: Vec::new(),
        hints: vec![Hint::Free(middle)],
    })
}

// Strands an event reads in its input column, and the strands it leaves in
// its output column.
fn footprint(ev: &Event) -> (Vec<usize>, Vec<usize>) {
    let s = ev.slot;
    match ev.kind {
        EventKind::LeftCusp => (Vec::new(), vec![s, s + 1]),
        EventKind::RightCusp => (vec![s, s + 1], Vec::new()),
        EventKind::Crossing => (vec![s, s + 1], vec![s, s + 1]),
        EventKind::BasePoint => (vec![s], vec![s]),
    }
}

// Where position `p` of the output column sits in the input column.
fn back_through(ev: &Event, p: usize) -> usize {
    match ev.kind {
        EventKind::LeftCusp if p >= ev.slot + 2 => p - 2,
        EventKind::RightCusp if p >= ev.slot => p + 2,
        _ => p,
    }
}

// Where position `p` of the input column sits in the output column.
fn forward_through(ev: &Event, p: usize) -> usize {
    match ev.kind {
        EventKind::LeftCusp if p >= ev.slot => p + 2,
        EventKind::RightCusp if p >= ev.slot + 2 => p - 2,
        _ => p,
    }
}

/// Swaps the events at `pos` and `pos + 1` when they touch disjoint
/// strands. A planar isotopy: the algebra does not change.
pub fn commute(l: &Legendrian, pos: usize) -> Result<Rewrite> {
    let ev = l.events();
    let mismatch = |reason: &str| SurgeryError::PatternMismatch { op: "commute", pos, reason: reason.into() };
    if pos + 1 >= ev.len() {
        return Err(mismatch("window runs past the end"));
    }
    let (e1, e2) = (&ev[pos], &ev[pos + 1]);
    let (_, out1) = footprint(e1);
    let (in2, _) = footprint(e2);
    if in2.iter().any(|p| out1.contains(p)) {
        return Err(mismatch("the events share a strand"));
    }
    // two strands adjacent after a right cusp may sit on either side of it
    if in2.len() == 2 && back_through(e1, in2[1]) != back_through(e1, in2[0]) + 1 {
        return Err(mismatch("the second event's strands are not adjacent before the first"));
    }
    if e2.kind == EventKind::LeftCusp && out1.len() == 2 && e2.slot == out1[1] {
        return Err(mismatch("the cusp opens between the strands of the first event"));
    }
    if e2.kind == EventKind::LeftCusp && e1.kind == EventKind::RightCusp && e2.slot == e1.slot {
        return Err(mismatch("the cusp opens where the first event closes"));
    }
    let mut first = e2.clone();
    first.slot = back_through(e1, e2.slot);
    let mut second = e1.clone();
    second.slot = forward_through(&first, e1.slot);
    let mut events = ev.to_vec();
    events[pos] = first;
    events[pos + 1] = second;
    let mut shifts = l.bp_shifts();
    if e1.kind == EventKind::BasePoint && e2.kind == EventKind::BasePoint {
        let k = ev[..pos].iter().filter(|e| e.kind == EventKind::BasePoint).count();
        shifts.swap(k, k + 1);
    }
    Ok(Rewrite { result: l.rewrite(events, shifts)?, created: Vec::new(), removed: Vec::new(), hints: Vec::new() })
}

/// Removes the crossing at `pos` and the next crossing between the same
/// two strands. Not an isotopy.
pub fn unclasp(l: &Legendrian, pos: usize) -> Result<Rewrite> {
    let d = l.diagram()?;
    let mismatch = |reason: String| SurgeryError::PatternMismatch { op: "unclasp", pos, reason };
    if l.events().get(pos).map(|e| e.kind) != Some(EventKind::Crossing) {
        return Err(mismatch("not a crossing".into()));
    }
    let (u, v) = d.event_strands(pos);
    let pair = [u, v];
    let mut partner = None;
    for e in pos + 1..l.events().len() {
        let ev = &l.events()[e];
        match ev.kind {
            EventKind::BasePoint | EventKind::LeftCusp => continue,
            _ => {}
        }
        let (a, b) = d.event_strands(e);
        let hits = pair.contains(&a) as u8 + pair.contains(&b) as u8;
        match (ev.kind, hits) {
            (_, 0) => {}
            (EventKind::Crossing, 2) => {
                partner = Some(e);
                break;
            }
            _ => return Err(mismatch(format!("event {} touches the clasp strands", e))),
        }
    }
    let end = partner.ok_or_else(|| mismatch("no second crossing between these strands".into()))?;
    let mut events = Vec::new();
    for (e, ev) in l.events().iter().enumerate() {
        if e == pos || e == end {
            continue;
        }
        let mut ev = ev.clone();
        if e > pos && e < end && ev.kind == EventKind::BasePoint {
            let col = d.column(e);
            let s = col[ev.slot - 1];
            if s == u || s == v {
                let other = if s == u { v } else { u };
                ev.slot = col.iter().position(|&x| x == other).unwrap() + 1;
            }
        }
        events.push(ev);
    }
    let removed = [pos, end].iter().filter_map(|&e| l.events()[e].label.clone()).collect();
    Ok(Rewrite { result: l.rewrite(events, l.bp_shifts())?, created: Vec::new(), removed, hints: Vec::new() })
}

/// Clasps available in the front: pairs of crossings `unclasp` accepts.
pub fn clasp_sites(l: &Legendrian) -> Vec<usize> {
    (0..l.events().len()).filter(|&e| unclasp(l, e).is_ok()).collect()
}

/// Names for the generators an interlaced unknot creates.
#[derive(Clone, Debug, Default)]
pub struct InterlaceNames {
    pub cusp: Option<String>,
    /// Crossings met while the unknot climbs, bottom strand first.
    pub up: Vec<String>,
    /// Crossings met while it descends, bottom strand first.
    pub down: Vec<String>,
}

/// Inserts before event `pos` an unknot whose upper strand climbs through
/// the `count` strands ending at slot `bottom` and comes back down.
/// The unknot's lower strand gets potential `shift` above the potential of
/// the strand at `bottom`.
pub fn interlace_unknot(
    l: &Legendrian,
    pos: usize,
    bottom: usize,
    count: usize,
    shift: i64,
    names: &InterlaceNames,
) -> Result<Rewrite> {
    let n = column_len(l, pos)?;
    if count == 0 || bottom > n || bottom < count {
        return Err(SurgeryError::WindowMismatch(format!(
            "{} strands ending at slot {} do not exist before event {} ({} strands)",
            count, bottom, pos, n
        )));
    }
    let base = l.potential_at(pos, bottom)?;
    let mut taken = taken_with(l);
    let cusp = match &names.cusp {
        Some(c) => fresh_exact(l, c, &mut taken),
        None => fresh(l, "ap", &mut taken),
    };
    let pick = |list: &Vec<String>, stem: &str, i: usize, taken: &mut BTreeSet<String>| match list.get(i) {
        Some(c) => fresh_exact(l, c, taken),
        None => fresh_exact(l, &format!("{}{}_{}", stem, l.op_counter(), i + 1), taken),
    };
    let up: Vec<String> = (0..count).map(|i| pick(&names.up, "cp", i, &mut taken)).collect();
    let down: Vec<String> = (0..count).map(|i| pick(&names.down, "dp", i, &mut taken)).collect();
    let mut new = vec![Event::lc(bottom + 1), Event::bp(bottom + 2, 1)];
    for i in 0..count {
        new.push(Event::x(bottom - i).named(&up[i]));
    }
    for i in (0..count).rev() {
        new.push(Event::x(bottom - i).named(&down[i]));
    }
    new.push(Event::rc(bottom + 1).named(&cusp));
    let ordinal = l.events()[..pos].iter().filter(|e| e.kind == EventKind::BasePoint).count();
    let result = insert_at(l, pos, new, &[(ordinal, base + shift)])?;
    let mut created = vec![cusp];
    created.extend(up);
    created.extend(down);
    Ok(Rewrite { result, created, removed: Vec::new(), hints: Vec::new() })
}

/// Places `b` below every strand of `a` just before event `pos` of `a`,
/// with `b`'s potentials raised by `delta`. Names of `b` that clash with
/// `a` get a suffix; the renaming is returned.
pub fn stack(a: &Legendrian, pos: usize, b: &Legendrian, delta: i64) -> Result<(Legendrian, BTreeMap<String, String>)> {
    let m = column_len(a, pos)?;
    let mut taken = a.names();
    let mut renames = BTreeMap::new();
    let mut inner = Vec::new();
    for ev in b.events() {
        let mut ev = ev.clone();
        ev.slot += m;
        if let Some(name) = &ev.label {
            let new = fresh_exact(a, name, &mut taken);
            if &new != name {
                renames.insert(name.clone(), new.clone());
            }
            ev.label = Some(new);
        }
        inner.push(ev);
    }
    let before = a.events()[..pos].iter().filter(|e| e.kind == EventKind::BasePoint).count();
    let mut shifts = a.bp_shifts();
    let tail = shifts.split_off(before);
    shifts.extend(b.bp_shifts().into_iter().map(|s| s + delta));
    shifts.extend(tail);
    let mut events = a.events().to_vec();
    let rest = events.split_off(pos);
    events.extend(inner);
    events.extend(rest);
    Ok((a.rewrite(events, shifts)?, renames))
}

/// Default values for the generators a rewrite touched, computed from the
/// hints and an augmentation `base` of the old front, given by name.
pub fn transport(dga: &Dga, base: &BTreeMap<String, BigInt>, hints: &[Hint]) -> BTreeMap<String, BigInt> {
    let mut out = BTreeMap::new();
    for h in hints {
        match h {
            Hint::Value(name, v) => {
                out.insert(name.clone(), BigInt::from(*v));
            }
            Hint::Signs(_) => {}
            Hint::Free(name) => {
                out.insert(name.clone(), base.get(name).cloned().unwrap_or_default());
            }
            Hint::Pair(x, y) => {
                let (Some(gx), Some(gy)) = (dga.index(x), dga.index(y)) else { continue };
                let (hi, lo) = if dga.gradings[gx] > dga.gradings[gy] { (gx, gy) } else { (gy, gx) };
                out.insert(dga.names[hi].clone(), BigInt::zero());
                if dga.gradings[hi] != dga.gradings[lo] + 1 || dga.gradings[lo] != 0 {
                    out.insert(dga.names[lo].clone(), BigInt::zero());
                    continue;
                }
                let mut eps = Augmentation::zero();
                for (g, name) in dga.names.iter().enumerate() {
                    if dga.gradings[g] == 0 {
                        if let Some(v) = out.get(name).or_else(|| base.get(name)) {
                            eps.set(g, v.clone());
                        }
                    }
                }
                eps.set(lo, BigInt::zero());
                let da = &dga.differential[hi];
                let sign = da.coefficient(&Word::gen(lo));
                let v = da.sub(&AlgebraElement::from_word(Word::gen(lo), sign.clone()));
                let value = if sign.is_one() { -evaluate(&eps, &v) } else { evaluate(&eps, &v) };
                out.insert(dga.names[lo].clone(), value);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use frontdga::disks::{check_d_squared, DiskConfig};

    const TREFOIL: &str = "lc 1\nlc 3\nx 2\nx 2\nbp 4 +\nx 2\nrc 1\nrc 1\n";

    fn unknot() -> Legendrian {
        Legendrian::parse("lc 1\nbp 2 +\nrc 1\n", &[]).unwrap()
    }

    #[test]
    fn kink_sides() {
        for (side, want) in [(KinkSide::Above, "1 + bI1"), (KinkSide::Below, "1 - bI1")] {
            let r = reidemeister1(&unknot(), 2, 1, side).unwrap();
            let dga = r.result.dga(DiskConfig::default()).unwrap();
            assert_eq!(dga.gradings[dga.index("bI1").unwrap()], 0);
            let d = dga.format(&dga.differential[dga.index("aI1").unwrap()]);
            assert_eq!(d, want);
        }
    }

    #[test]
    fn same_component_rejected() {
        let l = Legendrian::parse(TREFOIL, &[]).unwrap();
        assert!(matches!(connected_sum(&l, 2, 1), Err(SurgeryError::SameComponent { .. })));
    }

    #[test]
    fn r3_round_trip() {
        let l = Legendrian::parse("lc 1\nlc 3\nlc 5\nx 2\nx 3\nx 2\nx 2\nx 3\nx 2\nrc 5\nrc 3\nrc 1\n", &[]).unwrap();
        let pos = l.events().iter().position(|e| e.kind == EventKind::Crossing).unwrap();
        assert!(reidemeister3(&l, pos - 1).is_err());
        let r = reidemeister3(&l, pos).unwrap();
        let back = reidemeister3(&r.result, pos).unwrap();
        assert_eq!(back.result.events(), l.events());
        assert!(check_d_squared(&r.result.dga(DiskConfig::default()).unwrap()).is_empty());
    }
}
