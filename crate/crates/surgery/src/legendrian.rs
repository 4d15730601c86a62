use std::collections::{BTreeMap, BTreeSet};

use frontdga::diagram::serialize_events;
use frontdga::disks::{differential, DiskConfig};
use frontdga::{Dga, Event, EventKind, FrontDiagram, PotentialAssignment};

use crate::error::{Result, SurgeryError};

/// A front together with its Maslov shifts.
///
/// Every generator carries an explicit name and every component an explicit
/// base point, so names survive rewrites. Shifts are stored per base point,
/// in the order base points appear in the event list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Legendrian {
    events: Vec<Event>,
    shifts: Vec<i64>,
    ops: usize,
}

impl Legendrian {
    /// `shifts` are per component, in the diagram's component order.
    pub fn new(events: Vec<Event>, shifts: &[i64]) -> Result<Legendrian> {
        let d = FrontDiagram::from_events(events)?;
        let names = d.names();
        let mut events = d.events().to_vec();
        for (g, gen) in d.generators().iter().enumerate() {
            events[gen.event].label = Some(names[g].clone());
        }
        let mut by_bp = Vec::new();
        for (e, ev) in events.iter().enumerate() {
            if ev.kind == EventKind::BasePoint {
                let c = d.component_of_event(e);
                by_bp.push(shifts.get(c).copied().unwrap_or(0));
            }
        }
        Ok(Legendrian { events, shifts: by_bp, ops: 0 })
    }

    pub fn parse(text: &str, shifts: &[i64]) -> Result<Legendrian> {
        let (events, _) = frontdga::diagram::parse_events(text)?;
        Legendrian::new(events, shifts)
    }

    /// Reads a front file; shifts come from its `# shifts` line, or are 0.
    pub fn from_file(text: &str) -> Result<Legendrian> {
        let shifts = frontdga::diagram::parse_shifts_header(text)?.unwrap_or_default();
        Legendrian::parse(text, &shifts)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn diagram(&self) -> Result<FrontDiagram> {
        Ok(FrontDiagram::from_events(self.events.clone())?)
    }

    /// Shifts in component order.
    pub fn component_shifts(&self) -> Result<Vec<i64>> {
        let d = self.diagram()?;
        let ordinal = self.bp_ordinals();
        d.components()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                ordinal.get(&c.base_point).map(|&k| self.shifts[k]).ok_or(SurgeryError::MissingBasePoint(i))
            })
            .collect()
    }

    pub fn potential(&self) -> Result<PotentialAssignment> {
        let d = self.diagram()?;
        Ok(d.maslov_potential(&self.component_shifts()?)?)
    }

    pub fn dga(&self, config: DiskConfig) -> Result<Dga> {
        let d = self.diagram()?;
        let p = d.maslov_potential(&self.component_shifts()?)?;
        Ok(differential(&d, &p, config)?)
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.events.iter().filter_map(|e| e.label.clone()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# shifts");
        for s in self.component_shifts().unwrap_or_default() {
            out.push_str(&format!(" {}", s));
        }
        out.push('\n');
        out.push_str(&serialize_events(&self.events));
        out
    }

    fn bp_ordinals(&self) -> BTreeMap<usize, usize> {
        self.events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == EventKind::BasePoint)
            .enumerate()
            .map(|(k, (e, _))| (e, k))
            .collect()
    }

    /// Potential of the strand at `slot` just before event `pos`.
    pub fn potential_at(&self, pos: usize, slot: usize) -> Result<i64> {
        let d = self.diagram()?;
        let p = d.maslov_potential(&self.component_shifts()?)?;
        Ok(p.potential[d.strand_at(pos, slot)])
    }

    pub(crate) fn op_counter(&self) -> usize {
        self.ops + 1
    }

    /// A name built from `stem` and the operation counter, unused so far.
    pub(crate) fn fresh(&self, stem: &str, taken: &BTreeSet<String>) -> String {
        let base = format!("{}{}", stem, self.op_counter());
        if !taken.contains(&base) && !self.names().contains(&base) {
            return base;
        }
        (1..)
            .map(|j| format!("{}_{}", base, j))
            .find(|n| !taken.contains(n) && !self.names().contains(n))
            .unwrap()
    }

    /// Replaces the event list. `shifts` are per base point of the new list.
    pub(crate) fn rewrite(&self, events: Vec<Event>, shifts: Vec<i64>) -> Result<Legendrian> {
        let out = Legendrian { events, shifts, ops: self.ops + 1 };
        out.component_shifts()?;
        Ok(out)
    }

    /// Shifts per base point, for rewrites that keep every base point.
    pub(crate) fn bp_shifts(&self) -> Vec<i64> {
        self.shifts.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_frozen() {
        let l = Legendrian::parse("lc 1\nlc 3\nx 2\nx 2\nx 2\nrc 1\nrc 1\n", &[]).unwrap();
        assert_eq!(l.names().into_iter().collect::<Vec<_>>(), vec!["a1", "a2", "b1", "b2", "b3"]);
        assert!(l.events().iter().any(|e| e.kind == EventKind::BasePoint));
        let again = Legendrian::from_file(&l.to_text()).unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn shifts_follow_base_points() {
        let l = Legendrian::parse("lc 1\nlc 3\nbp 4 +\nbp 2 +\nrc 3\nrc 1\n", &[2, 5]).unwrap();
        assert_eq!(l.component_shifts().unwrap(), vec![2, 5]);
        assert_eq!(Legendrian::from_file(&l.to_text()).unwrap(), l);
    }
}
