//! Catalog entries and surgery moves, registered by name and picked at
//! runtime.

use std::collections::BTreeMap;

use crate::catalog::{self, Construction, Params};
use crate::error::{Result, SurgeryError};
use crate::legendrian::Legendrian;
use crate::ops::{self, InterlaceNames, KinkSide, Passing, Rewrite};

/// One documented parameter of a catalog entry or move.
#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

const fn param(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, default, doc }
}

pub trait CatalogEntry: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn parameters(&self) -> &'static [ParamSpec];
    fn build(&self, params: &Params) -> Result<Construction>;
}

type Builder = fn(&Params) -> Result<Construction>;

struct Entry {
    name: &'static str,
    summary: &'static str,
    params: &'static [ParamSpec],
    build: Builder,
}

impl CatalogEntry for Entry {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn parameters(&self) -> &'static [ParamSpec] {
        self.params
    }
    fn build(&self, params: &Params) -> Result<Construction> {
        check_keys(self.name, self.params, params)?;
        (self.build)(params)
    }
}

fn check_keys(entry: &str, specs: &[ParamSpec], params: &Params) -> Result<()> {
    match params.keys().find(|k| !specs.iter().any(|s| s.name == k.as_str())) {
        Some(k) => Err(SurgeryError::ParameterOutOfRange {
            name: k.clone(),
            value: String::new(),
            reason: format!("`{}` takes no such parameter", entry),
        }),
        None => Ok(()),
    }
}

fn int(p: &Params, name: &str, specs: &[ParamSpec]) -> Result<i64> {
    let d = specs.iter().find(|s| s.name == name).map(|s| s.default.parse().unwrap()).unwrap_or(0);
    p.int(name, d)
}

fn ints(p: &Params, name: &str, specs: &[ParamSpec]) -> Result<Vec<i64>> {
    let d: Vec<i64> = specs
        .iter()
        .find(|s| s.name == name)
        .map(|s| s.default.split(',').filter(|x| !x.is_empty()).map(|x| x.parse().unwrap()).collect())
        .unwrap_or_default();
    p.ints(name, &d)
}

fn same_length(a: &str, x: &[i64], b: &str, y: &[i64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(SurgeryError::ParameterOutOfRange {
            name: b.to_string(),
            value: format!("{:?}", y),
            reason: format!("needs as many entries as {}", a),
        });
    }
    Ok(())
}

const TREFOIL: &[ParamSpec] = &[param("n", "2", "value of ε on b2")];
const INTERLACED: &[ParamSpec] =
    &[param("k", "1", "Maslov shift of each interlaced unknot"), param("n", "3", "value of ε on b2")];
const HOPF: &[ParamSpec] = &[param("k", "1", "grading of the first crossing")];
const FREE: &[ParamSpec] = &[param("k", "2", "one Hopf summand per grading")];
const THEOREM1: &[ParamSpec] = &[
    param("free", "2", "gradings of the free summands"),
    param("n", "3", "one torsion group Z/(n-1) per entry"),
    param("k", "-1", "grading of each torsion group, paired with n"),
];
const COPY: &[ParamSpec] = &[param("n", "2", "half the number of copies")];
const MK: &[ParamSpec] = &[param("m", "3", "value of ε1 on b2, not 0, 1 or 2"), param("k", "2", "Maslov shift")];

fn standard_entries() -> Vec<Entry> {
    vec![
        Entry {
            name: "trefoil",
            summary: "right-handed trefoil with ε_n and the two bilinearized pairs",
            params: TREFOIL,
            build: |p| catalog::trefoil(int(p, "n", TREFOIL)?),
        },
        Entry {
            name: "interlaced-trefoil",
            summary: "trefoil with one unknot per shift threading its two bottom strands",
            params: INTERLACED,
            build: |p| Ok(catalog::interlaced_trefoil(&ints(p, "k", INTERLACED)?, int(p, "n", INTERLACED)?)?.0),
        },
        Entry {
            name: "torsion-knot",
            summary: "interlaced trefoil with every unknot summed in",
            params: INTERLACED,
            build: |p| catalog::torsion_knot(&ints(p, "k", INTERLACED)?, int(p, "n", INTERLACED)?),
        },
        Entry {
            name: "hopf",
            summary: "Hopf link with crossings of grading k and -k",
            params: HOPF,
            build: |p| catalog::hopf(int(p, "k", HOPF)?),
        },
        Entry {
            name: "hopf-sum",
            summary: "Hopf link closed into a knot by a connected sum",
            params: HOPF,
            build: |p| catalog::hopf_sum(int(p, "k", HOPF)?),
        },
        Entry {
            name: "free-sum",
            summary: "connected sum of Hopf knots, one per grading",
            params: FREE,
            build: |p| catalog::free_sum(&ints(p, "k", FREE)?),
        },
        Entry {
            name: "theorem1",
            summary: "knot with prescribed free and torsion linearized homology",
            params: THEOREM1,
            build: |p| {
                let ns = ints(p, "n", THEOREM1)?;
                let ks = ints(p, "k", THEOREM1)?;
                same_length("n", &ns, "k", &ks)?;
                let torsion: Vec<(i64, Vec<i64>)> = ns.iter().zip(&ks).map(|(&n, &k)| (n, vec![k])).collect();
                catalog::theorem1(&ints(p, "free", THEOREM1)?, &torsion)
            },
        },
        Entry {
            name: "2n-copy",
            summary: "2n parallel copies of the standard unknot with the pair eps1, eps2",
            params: COPY,
            build: |p| catalog::two_n_copy(int(p, "n", COPY)?),
        },
        Entry {
            name: "even-odd",
            summary: "2n-copy with the odd and the even copies summed together",
            params: COPY,
            build: |p| catalog::even_odd_link(int(p, "n", COPY)?),
        },
        Entry {
            name: "lambda-mk",
            summary: "trefoil interlaced with an unknot at its right eye, (m-1)-torsion in degree k-1",
            params: MK,
            build: |p| catalog::lambda_mk(int(p, "m", MK)?, int(p, "k", MK)?),
        },
        Entry {
            name: "min-four",
            summary: "4-copy with double sum, unclasp and final sum (minimal free part)",
            params: &[],
            build: |_| catalog::min_four(),
        },
    ]
}

/// Catalog entries by name.
pub struct Catalog {
    entries: BTreeMap<&'static str, Box<dyn CatalogEntry>>,
}

impl Catalog {
    pub fn empty() -> Catalog {
        Catalog { entries: BTreeMap::new() }
    }

    pub fn standard() -> Catalog {
        let mut c = Catalog::empty();
        for e in standard_entries() {
            c.register(Box::new(e));
        }
        c
    }

    pub fn register(&mut self, entry: Box<dyn CatalogEntry>) {
        self.entries.insert(entry.name(), entry);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CatalogEntry> {
        self.entries.get(name).map(|e| e.as_ref()).ok_or_else(|| SurgeryError::UnknownEntry(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn build(&self, name: &str, params: &Params) -> Result<Construction> {
        self.get(name)?.build(params)
    }
}

/// A local rewrite of a front, addressed by event position and slot.
pub trait SurgeryOp: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn parameters(&self) -> &'static [ParamSpec];
    fn apply(&self, l: &Legendrian, params: &Params) -> Result<Rewrite>;
}

type Rewriter = fn(&Legendrian, &Params) -> Result<Rewrite>;

struct Op {
    name: &'static str,
    summary: &'static str,
    params: &'static [ParamSpec],
    apply: Rewriter,
}

impl SurgeryOp for Op {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn parameters(&self) -> &'static [ParamSpec] {
        self.params
    }
    fn apply(&self, l: &Legendrian, params: &Params) -> Result<Rewrite> {
        check_keys(self.name, self.params, params)?;
        (self.apply)(l, params)
    }
}

fn index(p: &Params, name: &str) -> Result<usize> {
    let v = p.int(name, -1)?;
    usize::try_from(v).map_err(|_| SurgeryError::ParameterOutOfRange {
        name: name.to_string(),
        value: v.to_string(),
        reason: "required, and not negative".into(),
    })
}

fn word(p: &Params, name: &str, default: &str) -> String {
    p.get(name).unwrap_or(default).to_string()
}

fn side(p: &Params) -> Result<KinkSide> {
    match word(p, "side", "below").as_str() {
        "above" => Ok(KinkSide::Above),
        "below" => Ok(KinkSide::Below),
        v => Err(SurgeryError::ParameterOutOfRange { name: "side".into(), value: v.into(), reason: "above or below".into() }),
    }
}

fn passing(p: &Params) -> Result<Passing> {
    match word(p, "passing", "below").as_str() {
        "above" => Ok(Passing::Above),
        "below" => Ok(Passing::Below),
        v => Err(SurgeryError::ParameterOutOfRange { name: "passing".into(), value: v.into(), reason: "above or below".into() }),
    }
}

const POS: ParamSpec = param("pos", "", "event index, 0-based");
const SLOT: ParamSpec = param("slot", "", "upper slot, 1-based from the top");
const SUM: &[ParamSpec] = &[POS, SLOT];
const R1: &[ParamSpec] = &[POS, SLOT, param("side", "below", "loop above or below the strand")];
const R2: &[ParamSpec] = &[POS, param("passing", "below", "the cusp passes the strand above or below it")];
const AT: &[ParamSpec] = &[POS];
const INTERLACE: &[ParamSpec] = &[
    POS,
    param("bottom", "", "slot of the lowest threaded strand"),
    param("count", "", "number of threaded strands"),
    param("shift", "0", "potential of the unknot's lower strand over the bottom strand"),
];

fn standard_ops() -> Vec<Op> {
    vec![
        Op {
            name: "sum",
            summary: "connected sum of the strands at slot and slot+1 before event pos",
            params: SUM,
            apply: |l, p| ops::connected_sum(l, index(p, "pos")?, index(p, "slot")?),
        },
        Op {
            name: "r1",
            summary: "first Reidemeister move: a kink on the strand at slot",
            params: R1,
            apply: |l, p| ops::reidemeister1(l, index(p, "pos")?, index(p, "slot")?, side(p)?),
        },
        Op {
            name: "r2",
            summary: "second Reidemeister move: the cusp at pos passes a neighbouring strand",
            params: R2,
            apply: |l, p| ops::reidemeister2(l, index(p, "pos")?, passing(p)?),
        },
        Op {
            name: "r3",
            summary: "third Reidemeister move on the crossings at pos, pos+1, pos+2",
            params: AT,
            apply: |l, p| ops::reidemeister3(l, index(p, "pos")?),
        },
        Op {
            name: "commute",
            summary: "swap the events at pos and pos+1 when they share no strand",
            params: AT,
            apply: |l, p| ops::commute(l, index(p, "pos")?),
        },
        Op {
            name: "unclasp",
            summary: "remove the crossing at pos and the next crossing of the same two strands",
            params: AT,
            apply: |l, p| ops::unclasp(l, index(p, "pos")?),
        },
        Op {
            name: "interlace",
            summary: "insert an unknot threading `count` strands ending at slot `bottom`",
            params: INTERLACE,
            apply: |l, p| {
                let names = InterlaceNames::default();
                ops::interlace_unknot(l, index(p, "pos")?, index(p, "bottom")?, index(p, "count")?, p.int("shift", 0)?, &names)
            },
        },
    ]
}

/// Surgery moves by name.
pub struct OpRegistry {
    ops: BTreeMap<&'static str, Box<dyn SurgeryOp>>,
}

impl OpRegistry {
    pub fn empty() -> OpRegistry {
        OpRegistry { ops: BTreeMap::new() }
    }

    pub fn standard() -> OpRegistry {
        let mut r = OpRegistry::empty();
        for op in standard_ops() {
            r.register(Box::new(op));
        }
        r
    }

    pub fn register(&mut self, op: Box<dyn SurgeryOp>) {
        self.ops.insert(op.name(), op);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SurgeryOp> {
        self.ops.get(name).map(|o| o.as_ref()).ok_or_else(|| SurgeryError::UnknownEntry(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.ops.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_errors() {
        assert!(matches!(Catalog::standard().get("nope"), Err(SurgeryError::UnknownEntry(_))));
        assert!(matches!(OpRegistry::standard().get("r4"), Err(SurgeryError::UnknownEntry(_))));
    }

    #[test]
    fn stray_parameters_are_rejected() {
        let p = Params::parse(&["q=1"]).unwrap();
        assert!(Catalog::standard().build("trefoil", &p).is_err());
    }

    #[test]
    fn moves_run_by_name() {
        let t = Catalog::standard().build("trefoil", &Params::default()).unwrap();
        let p = Params::parse(&["pos=2", "slot=1"]).unwrap();
        let rw = OpRegistry::standard().get("r1").unwrap().apply(t.legendrian(), &p).unwrap();
        assert_eq!(rw.created.len(), 2);
    }
}
