//! Fronts in event-list form.
//!
//! A front is read left to right as a list of events. Each event happens at
//! a slot, counted from the top starting at 1. The strand count starts and
//! ends at zero.
//!
//! ```text
//! lc <slot>            left cusp, inserts strands slot, slot+1
//! rc <slot> [name]     right cusp joining strands slot, slot+1
//! x <slot> [name]      crossing of strands slot, slot+1
//! bp <slot> <+|->      base point on the strand at slot
//! ```
//!
//! The sign of a base point is the orientation of its strand: `+` when the
//! oriented strand runs left to right through the point.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
    BasePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub kind: EventKind,
    pub slot: usize,
    /// Orientation sign, only for base points.
    pub sign: Option<i8>,
    /// User-provided generator name.
    pub label: Option<String>,
}

impl Event {
    pub fn lc(slot: usize) -> Event {
        Event { kind: EventKind::LeftCusp, slot, sign: None, label: None }
    }

    pub fn rc(slot: usize) -> Event {
        Event { kind: EventKind::RightCusp, slot, sign: None, label: None }
    }

    pub fn x(slot: usize) -> Event {
        Event { kind: EventKind::Crossing, slot, sign: None, label: None }
    }

    pub fn bp(slot: usize, sign: i8) -> Event {
        Event { kind: EventKind::BasePoint, slot, sign: Some(sign), label: None }
    }

    pub fn named(mut self, name: &str) -> Event {
        self.label = Some(name.to_string());
        self
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EventKind::LeftCusp => write!(f, "lc {}", self.slot)?,
            EventKind::RightCusp => write!(f, "rc {}", self.slot)?,
            EventKind::Crossing => write!(f, "x {}", self.slot)?,
            EventKind::BasePoint => {
                let s = if self.sign.unwrap_or(1) > 0 { '+' } else { '-' };
                write!(f, "bp {} {}", self.slot, s)?
            }
        }
        if let Some(l) = &self.label {
            write!(f, " {}", l)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    Crossing,
    RightCusp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    /// Index of the event in the front.
    pub event: usize,
}

/// A maximal arc of the front between a left cusp and a right cusp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub start: usize,
    pub end: usize,
    pub upper_at_start: bool,
    pub upper_at_end: bool,
    pub component: usize,
    /// +1 when oriented left to right.
    pub direction: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Strands in the order of the orientation, starting at the base point.
    pub strands: Vec<usize>,
    pub base_point: usize,
    /// Cusps passed from the upper to the lower strand, and the other way.
    pub down_cusps: usize,
    pub up_cusps: usize,
}

#[derive(Clone, Debug)]
pub struct FrontDiagram {
    events: Vec<Event>,
    columns: Vec<Vec<usize>>,
    strands: Vec<Strand>,
    components: Vec<Component>,
    generators: Vec<Generator>,
    generator_at: Vec<Option<usize>>,
    inserted_base_points: Vec<usize>,
}

impl PartialEq for FrontDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events
    }
}

impl Eq for FrontDiagram {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotentialAssignment {
    /// Maslov potential per strand.
    pub potential: Vec<i64>,
    /// Potential of the base-point strand of each component.
    pub shifts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalInvariants {
    pub tb: Vec<i64>,
    pub rotation: Vec<i64>,
    pub total_tb: i64,
    pub writhe: i64,
    pub right_cusps: usize,
}

struct Trace {
    columns: Vec<Vec<usize>>,
    strands: Vec<(usize, usize, bool, bool)>,
}

fn trace(events: &[Event], lines: Option<&[usize]>) -> Result<Trace> {
    let line_of = |e: usize| lines.map(|l| l[e]);
    let mut columns = Vec::with_capacity(events.len() + 1);
    let mut current: Vec<usize> = Vec::new();
    // (start, end, upper at start, upper at end)
    let mut strands: Vec<(usize, usize, bool, bool)> = Vec::new();
    for (e, ev) in events.iter().enumerate() {
        columns.push(current.clone());
        let n = current.len();
        let bad = || Error::SlotOutOfRange {
            event: e,
            line: line_of(e),
            slot: ev.slot,
            count: n,
        };
        if ev.slot == 0 {
            return Err(bad());
        }
        let i = ev.slot - 1;
        match ev.kind {
            EventKind::LeftCusp => {
                if i > n {
                    return Err(bad());
                }
                let id = strands.len();
                strands.push((e, usize::MAX, true, false));
                strands.push((e, usize::MAX, false, false));
                current.insert(i, id + 1);
                current.insert(i, id);
            }
            EventKind::RightCusp => {
                if i + 1 >= n {
                    return Err(bad());
                }
                let u = current[i];
                let l = current[i + 1];
                strands[u].1 = e;
                strands[u].3 = true;
                strands[l].1 = e;
                strands[l].3 = false;
                current.drain(i..i + 2);
            }
            EventKind::Crossing => {
                if i + 1 >= n {
                    return Err(bad());
                }
                current.swap(i, i + 1);
            }
            EventKind::BasePoint => {
                if i >= n {
                    return Err(bad());
                }
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::NonzeroFinalCount(current.len()));
    }
    columns.push(current);
    Ok(Trace { columns, strands })
}

fn partner_at_start(strands: &[(usize, usize, bool, bool)], s: usize) -> usize {
    // strands created by one left cusp have consecutive ids, upper first
    if strands[s].2 {
        s + 1
    } else {
        s - 1
    }
}

fn partner_at_end(columns: &[Vec<usize>], events: &[Event], strands: &[(usize, usize, bool, bool)], s: usize) -> usize {
    let e = strands[s].1;
    let i = events[e].slot - 1;
    let col = &columns[e];
    if col[i] == s {
        col[i + 1]
    } else {
        col[i]
    }
}

impl FrontDiagram {
    pub fn from_events(events: Vec<Event>) -> Result<FrontDiagram> {
        Self::build(events, None)
    }

    fn build(mut events: Vec<Event>, mut lines: Option<Vec<usize>>) -> Result<FrontDiagram> {
        let t = trace(&events, lines.as_deref())?;
        let comp_of = unoriented_components(&events, &t);
        let ncomp = comp_of.iter().copied().max().map_or(0, |c| c + 1);
        let mut bps: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (e, ev) in events.iter().enumerate() {
            if ev.kind == EventKind::BasePoint {
                let s = t.columns[e][ev.slot - 1];
                bps[comp_of[s]].push(e);
            }
        }
        for (c, list) in bps.iter().enumerate() {
            if list.len() > 1 {
                return Err(Error::MultipleBasePoints { component: c, count: list.len() });
            }
        }
        let missing: Vec<usize> = (0..ncomp).filter(|&c| bps[c].is_empty()).collect();
        if !missing.is_empty() {
            // lower strand of the first left cusp of each bare component
            let mut inserts: Vec<(usize, usize)> = missing
                .iter()
                .map(|&c| {
                    let s = (0..t.strands.len()).find(|&s| comp_of[s] == c).unwrap();
                    let e = t.strands[s].0;
                    (e + 1, events[e].slot + 1)
                })
                .collect();
            inserts.sort();
            for (k, (pos, slot)) in inserts.iter().enumerate() {
                events.insert(pos + k, Event::bp(*slot, 1));
                if let Some(l) = lines.as_mut() {
                    let line = l[pos + k - 1];
                    l.insert(pos + k, line);
                }
            }
            let mut d = Self::build(events, lines)?;
            let mut inserted: Vec<usize> = inserts
                .iter()
                .enumerate()
                .map(|(k, (pos, _))| pos + k)
                .map(|e| d.component_of_event(e))
                .collect();
            inserted.sort();
            d.inserted_base_points = inserted;
            return Ok(d);
        }

        let mut strands: Vec<Strand> = t
            .strands
            .iter()
            .map(|&(start, end, us, ue)| Strand {
                start,
                end,
                upper_at_start: us,
                upper_at_end: ue,
                component: 0,
                direction: 0,
            })
            .collect();
        // components ordered by their first strand
        let mut order: Vec<usize> = Vec::new();
        for s in 0..strands.len() {
            if !order.contains(&comp_of[s]) {
                order.push(comp_of[s]);
            }
        }
        let mut components = Vec::new();
        for (ci, &c) in order.iter().enumerate() {
            let bp = bps[c][0];
            let ev = &events[bp];
            let s0 = t.columns[bp][ev.slot - 1];
            let mut dir = ev.sign.unwrap_or(1);
            let mut s = s0;
            let mut list = Vec::new();
            let (mut down, mut up) = (0, 0);
            loop {
                strands[s].component = ci;
                strands[s].direction = dir;
                list.push(s);
                let (next, upper) = if dir > 0 {
                    (partner_at_end(&t.columns, &events, &t.strands, s), strands[s].upper_at_end)
                } else {
                    (partner_at_start(&t.strands, s), strands[s].upper_at_start)
                };
                if upper {
                    down += 1;
                } else {
                    up += 1;
                }
                s = next;
                dir = -dir;
                if s == s0 {
                    break;
                }
            }
            components.push(Component { strands: list, base_point: bp, down_cusps: down, up_cusps: up });
        }

        let mut generators = Vec::new();
        let mut generator_at = vec![None; events.len()];
        let (mut na, mut nb) = (0, 0);
        let mut seen = HashSet::new();
        for (e, ev) in events.iter().enumerate() {
            let (kind, auto) = match ev.kind {
                EventKind::RightCusp => {
                    na += 1;
                    (GeneratorKind::RightCusp, format!("a{}", na))
                }
                EventKind::Crossing => {
                    nb += 1;
                    (GeneratorKind::Crossing, format!("b{}", nb))
                }
                _ => continue,
            };
            let name = ev.label.clone().unwrap_or(auto);
            if !seen.insert(name.clone()) || !valid_name(&name) {
                return Err(Error::DuplicateName(name));
            }
            generator_at[e] = Some(generators.len());
            generators.push(Generator { name, kind, event: e });
        }

        Ok(FrontDiagram {
            events,
            columns: t.columns,
            strands,
            components,
            generators,
            generator_at,
            inserted_base_points: Vec::new(),
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Strand ids present just before event `pos`, top to bottom.
    pub fn column(&self, pos: usize) -> &[usize] {
        &self.columns[pos]
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_at_event(&self, e: usize) -> Option<usize> {
        self.generator_at[e]
    }

    pub fn generator_by_name(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Components whose base point was inserted during validation.
    pub fn inserted_base_points(&self) -> &[usize] {
        &self.inserted_base_points
    }

    pub fn strand_at(&self, pos: usize, slot: usize) -> usize {
        self.columns[pos][slot - 1]
    }

    pub fn component_of_event(&self, e: usize) -> usize {
        let ev = &self.events[e];
        let col = if ev.kind == EventKind::LeftCusp { &self.columns[e + 1] } else { &self.columns[e] };
        self.strands[col[ev.slot - 1]].component
    }

    /// The two strands meeting at a crossing or cusp event, upper first
    /// (for a crossing, as seen just left of it).
    pub fn event_strands(&self, e: usize) -> (usize, usize) {
        let ev = &self.events[e];
        let i = ev.slot - 1;
        let col = if ev.kind == EventKind::LeftCusp { &self.columns[e + 1] } else { &self.columns[e] };
        (col[i], col[i + 1])
    }

    pub fn to_text(&self) -> String {
        serialize_events(&self.events)
    }

    pub fn maslov_potential(&self, shifts: &[i64]) -> Result<PotentialAssignment> {
        let mut potential = vec![0i64; self.strands.len()];
        let mut out_shifts = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.down_cusps != comp.up_cusps {
                return Err(Error::NoPotential {
                    component: ci,
                    rotation: (comp.down_cusps as i64 - comp.up_cusps as i64) / 2,
                });
            }
            let shift = shifts.get(ci).copied().unwrap_or(0);
            out_shifts.push(shift);
            let mut p = shift;
            for &s in &comp.strands {
                potential[s] = p;
                let st = &self.strands[s];
                let upper = if st.direction > 0 { st.upper_at_end } else { st.upper_at_start };
                p += if upper { -1 } else { 1 };
            }
        }
        Ok(PotentialAssignment { potential, shifts: out_shifts })
    }

    pub fn gradings(&self, p: &PotentialAssignment) -> Vec<i64> {
        self.generators
            .iter()
            .map(|g| match g.kind {
                GeneratorKind::RightCusp => 1,
                GeneratorKind::Crossing => {
                    let (u, l) = self.event_strands(g.event);
                    p.potential[u] - p.potential[l]
                }
            })
            .collect()
    }

    /// +1 when both strands of the crossing run in the same x-direction.
    pub fn crossing_sign(&self, e: usize) -> i64 {
        let (u, l) = self.event_strands(e);
        if self.strands[u].direction == self.strands[l].direction {
            1
        } else {
            -1
        }
    }

    pub fn classical_invariants(&self) -> ClassicalInvariants {
        let n = self.components.len();
        let mut tb = vec![0i64; n];
        let mut writhe = 0;
        let mut right_cusps = 0;
        for (e, ev) in self.events.iter().enumerate() {
            match ev.kind {
                EventKind::Crossing => {
                    let sign = self.crossing_sign(e);
                    writhe += sign;
                    let (u, l) = self.event_strands(e);
                    let (cu, cl) = (self.strands[u].component, self.strands[l].component);
                    if cu == cl {
                        tb[cu] += sign;
                    }
                }
                EventKind::RightCusp => {
                    right_cusps += 1;
                    tb[self.component_of_event(e)] -= 1;
                }
                _ => {}
            }
        }
        let rotation = self
            .components
            .iter()
            .map(|c| (c.down_cusps as i64 - c.up_cusps as i64) / 2)
            .collect();
        ClassicalInvariants { tb, rotation, total_tb: writhe - right_cusps as i64, writhe, right_cusps: right_cusps as usize }
    }
}

fn valid_name(name: &str) -> bool {
    let reserved = name.starts_with('t') && name[1..].chars().all(|c| c.is_ascii_digit());
    !name.is_empty() && !reserved && !name.starts_with('#')
}

fn unoriented_components(events: &[Event], t: &Trace) -> Vec<usize> {
    let n = t.strands.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s0 in 0..n {
        if comp[s0] != usize::MAX {
            continue;
        }
        let mut stack = vec![s0];
        while let Some(s) = stack.pop() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(partner_at_start(&t.strands, s));
            stack.push(partner_at_end(&t.columns, events, &t.strands, s));
        }
        next += 1;
    }
    comp
}

pub fn serialize_events(events: &[Event]) -> String {
    let mut out = String::new();
    for ev in events {
        out.push_str(&ev.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_front(text: &str) -> Result<FrontDiagram> {
    let (events, lines) = parse_events(text)?;
    FrontDiagram::build(events, Some(lines))
}

/// Parses the event list without validating the front.
pub fn parse_events(text: &str) -> Result<(Vec<Event>, Vec<usize>)> {
    let mut events = Vec::new();
    let mut lines = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut col = 0;
        for piece in body.split_inclusive(char::is_whitespace) {
            let word = piece.trim_end();
            if !word.is_empty() {
                toks.push((col + 1, word));
            }
            col += piece.chars().count();
        }
        if toks.is_empty() {
            continue;
        }
        let err = |col: usize, msg: &str| Error::Syntax { line, col, msg: msg.to_string() };
        let (kcol, kw) = toks[0];
        let kind = match kw {
            "lc" => EventKind::LeftCusp,
            "rc" => EventKind::RightCusp,
            "x" => EventKind::Crossing,
            "bp" => EventKind::BasePoint,
            _ => return Err(err(kcol, &format!("unknown event `{}`", kw))),
        };
        let (scol, stok) = *toks.get(1).ok_or_else(|| err(kcol + kw.len(), "missing slot"))?;
        let slot: usize = stok.parse().map_err(|_| err(scol, "slot must be a positive integer"))?;
        if slot == 0 {
            return Err(err(scol, "slot must be a positive integer"));
        }
        let mut ev = Event { kind, slot, sign: None, label: None };
        match kind {
            EventKind::LeftCusp => {
                if let Some(&(c, _)) = toks.get(2) {
                    return Err(err(c, "left cusps take no name"));
                }
            }
            EventKind::RightCusp | EventKind::Crossing => {
                if let Some(&(_, name)) = toks.get(2) {
                    ev.label = Some(name.to_string());
                }
                if let Some(&(c, _)) = toks.get(3) {
                    return Err(err(c, "unexpected token"));
                }
            }
            EventKind::BasePoint => {
                let (c, s) = *toks.get(2).ok_or_else(|| err(scol + stok.len(), "missing base point sign"))?;
                ev.sign = Some(match s {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(err(c, "base point sign must be + or -")),
                });
                if let Some(&(c, _)) = toks.get(3) {
                    return Err(err(c, "unexpected token"));
                }
            }
        }
        events.push(ev);
        lines.push(line);
    }
    Ok((events, lines))
}

/// Per-component Maslov shifts from a `# shifts s1 s2 ...` comment line,
/// if the text carries one.
pub fn parse_shifts_header(text: &str) -> Result<Option<Vec<i64>>> {
    for (ln, raw) in text.lines().enumerate() {
        let Some(rest) = raw.trim_start().strip_prefix('#') else { continue };
        let mut toks = rest.split_whitespace();
        if toks.next() != Some("shifts") {
            continue;
        }
        let vals = toks
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Syntax {
                    line: ln + 1,
                    col: raw.find(t).unwrap_or(0) + 1,
                    msg: format!("shift `{}` is not an integer", t),
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        return Ok(Some(vals));
    }
    Ok(None)
}

/// Gradings keyed by name, handy for reports.
pub fn named_gradings(d: &FrontDiagram, p: &PotentialAssignment) -> BTreeMap<String, i64> {
    d.names().into_iter().zip(d.gradings(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "lc 1\nlc 3\nx 2\nx 2\nbp 4 +\nx 2\nrc 1\nrc 1\n";

    #[test]
    fn shifts_header() {
        assert_eq!(parse_shifts_header("# shifts 3 -1\nlc 1\nrc 1\n").unwrap(), Some(vec![3, -1]));
        assert_eq!(parse_shifts_header("# note\nlc 1\nrc 1\n").unwrap(), None);
        assert!(parse_shifts_header("# shifts 1 x\n").is_err());
    }

    #[test]
    fn trefoil_generators() {
        let d = parse_front(TREFOIL).unwrap();
        let names: Vec<_> = d.names();
        assert_eq!(names, ["b1", "b2", "b3", "a1", "a2"]);
        let p = d.maslov_potential(&[]).unwrap();
        assert_eq!(d.gradings(&p), [0, 0, 0, 1, 1]);
        let inv = d.classical_invariants();
        assert_eq!(inv.tb, [1]);
        assert_eq!(inv.rotation, [0]);
    }

    #[test]
    fn unknot_and_auto_base_point() {
        let d = parse_front("lc 1\nrc 1\n").unwrap();
        assert_eq!(d.inserted_base_points(), &[0]);
        assert_eq!(d.to_text(), "lc 1\nbp 2 +\nrc 1\n");
        let inv = d.classical_invariants();
        assert_eq!((inv.tb[0], inv.rotation[0]), (-1, 0));
    }

    #[test]
    fn slot_out_of_range() {
        let e = parse_front("lc 1\nrc 3\n").unwrap_err();
        assert!(matches!(e, Error::SlotOutOfRange { line: Some(2), slot: 3, .. }));
        assert!(matches!(parse_front("lc 1\n"), Err(Error::NonzeroFinalCount(2))));
        assert!(matches!(parse_front("lc 1\nfoo 2\n"), Err(Error::Syntax { line: 2, col: 1, .. })));
        assert!(matches!(parse_front("lc 1\nbp 1 *\nrc 1"), Err(Error::Syntax { line: 2, col: 6, .. })));
    }

    #[test]
    fn stabilized_unknot_has_no_potential() {
        // zigzag: the component turns down twice more than up
        let d = parse_front("lc 1\nlc 2\nrc 1\nrc 1\n").unwrap();
        assert!(matches!(d.maslov_potential(&[]), Err(Error::NoPotential { .. })));
        assert_ne!(d.classical_invariants().rotation[0], 0);
    }

    #[test]
    fn round_trip_keeps_user_names_only() {
        let text = "lc 1 # start\nlc 3\nx 2 q\nx 2\nbp 4 -\nx 2\nrc 1 top\nrc 1\n";
        let d = parse_front(text).unwrap();
        assert_eq!(d.names(), ["q", "b2", "b3", "top", "a2"]);
        let out = d.to_text();
        assert_eq!(out, "lc 1\nlc 3\nx 2 q\nx 2\nbp 4 -\nx 2\nrc 1 top\nrc 1\n");
        assert_eq!(parse_front(&out).unwrap().events(), d.events());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(matches!(
            parse_front("lc 1\nx 1 b2\nx 1\nrc 1\n").unwrap_err(),
            Error::DuplicateName(_)
        ));
        assert!(matches!(
            parse_front("lc 1\nlc 1\nx 2 b2\nx 2\nrc 1\nrc 1\n").unwrap_err(),
            Error::DuplicateName(_)
        ));
        assert!(matches!(parse_front("lc 1\nrc 1 t3\n").unwrap_err(), Error::DuplicateName(_)));
    }
}
