//! Disks of the front and the Chekanov-Eliashberg differential.
//!
//! A disk is swept from its positive corner towards the left. At every
//! x-position its image is a union of sheets, each a vertical interval
//! between two strands (`top < bottom` as slots). Sheets are born at the
//! positive corner, split when they pass to the left of a right cusp that
//! pokes into them, turn at crossings (negative corners) and die at left
//! cusps. Which sheets can still be closed off further left is independent
//! of the other sheets, so it is tabulated once per front and used to prune
//! the sweep.
//!
//! The boundary word is read counterclockwise from the positive corner:
//! along the top of a sheet going left, then through its children, then
//! back along its bottom going right.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, Dga, Letter, Word};
use crate::diagram::{EventKind, FrontDiagram, GeneratorKind, PotentialAssignment};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CornerKind {
    /// Crossing corner filling the quadrant above the crossing.
    Up,
    /// Crossing corner filling the quadrant below the crossing.
    Down,
    /// Right cusp, the disk runs along both sides of the upper branch.
    ComplementUpper,
    /// Right cusp, the disk runs along both sides of the lower branch.
    ComplementLower,
    /// Right cusp, the disk covers everything near the cusp but the
    /// left-facing region; contributes the letter twice.
    ComplementLeftRegion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CornerLabel {
    pub generator: usize,
    pub kind: CornerKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub positive: usize,
    pub corners: Vec<CornerLabel>,
    /// Signed base point count on each boundary arc between corners.
    pub windings: Vec<i64>,
    pub sign: i64,
    pub word: Word,
    /// Largest number of sheets stacked over a point during the sweep.
    pub max_multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiskConfig {
    pub cap: usize,
}

impl Default for DiskConfig {
    fn default() -> Self {
        DiskConfig { cap: 4 }
    }
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Corner(CornerLabel),
    Base { comp: usize, exp: i64 },
}

#[derive(Clone, Debug)]
enum Trans {
    End,
    One {
        t: usize,
        b: usize,
        top: Option<Item>,
        bottom: Option<Item>,
        down_even: bool,
    },
    Split {
        p: (usize, usize),
        q: (usize, usize),
        corner: Option<CornerLabel>,
    },
}

fn one(t: usize, b: usize) -> Trans {
    Trans::One { t, b, top: None, bottom: None, down_even: false }
}

#[derive(Clone, Debug, Default)]
struct Node {
    top: Vec<Item>,
    bottom: Vec<Item>,
    split: Option<(usize, Option<CornerLabel>, usize)>,
}

#[derive(Clone, Debug)]
struct State {
    sheets: Vec<(usize, usize, usize)>,
    nodes: Vec<Node>,
    down_even: usize,
    max_mult: usize,
}

struct Sweep<'a> {
    d: &'a FrontDiagram,
    gradings: Vec<i64>,
    width: usize,
    alive: Vec<Vec<bool>>,
    config: DiskConfig,
}

impl<'a> Sweep<'a> {
    fn new(d: &'a FrontDiagram, p: &PotentialAssignment, config: DiskConfig) -> Sweep<'a> {
        let n = d.events().len();
        let width = (0..=n).map(|pos| d.column(pos).len()).max().unwrap_or(0) + 2;
        let mut s = Sweep { d, gradings: d.gradings(p), width, alive: Vec::with_capacity(n + 1), config };
        s.alive.push(vec![false; width * width]);
        for pos in 1..=n {
            let count = d.column(pos).len();
            let mut row = vec![false; width * width];
            for t in 1..=count {
                for b in t + 1..=count {
                    row[t * width + b] = s.transitions(pos - 1, t, b).iter().any(|tr| match tr {
                        Trans::End => true,
                        Trans::One { t, b, .. } => s.alive[pos - 1][t * width + b],
                        Trans::Split { p, q, .. } => {
                            s.alive[pos - 1][p.0 * width + p.1] && s.alive[pos - 1][q.0 * width + q.1]
                        }
                    });
                }
            }
            s.alive.push(row);
        }
        s
    }

    fn is_alive(&self, pos: usize, t: usize, b: usize) -> bool {
        self.alive[pos][t * self.width + b]
    }

    /// Ways a sheet between slots t < b just right of event `e` continues
    /// just left of it.
    fn transitions(&self, e: usize, t: usize, b: usize) -> Vec<Trans> {
        let ev = &self.d.events()[e];
        let i = ev.slot;
        match ev.kind {
            EventKind::Crossing => {
                let g = self.d.generator_at_event(e).unwrap();
                if t == i && b == i + 1 {
                    vec![]
                } else if t == i {
                    vec![one(i + 1, b)]
                } else if b == i + 1 {
                    vec![one(t, i)]
                } else if t == i + 1 {
                    let corner = CornerLabel { generator: g, kind: CornerKind::Down };
                    vec![
                        one(i, b),
                        Trans::One {
                            t: i + 1,
                            b,
                            top: Some(Item::Corner(corner)),
                            bottom: None,
                            down_even: self.gradings[g].rem_euclid(2) == 0,
                        },
                    ]
                } else if b == i {
                    let corner = CornerLabel { generator: g, kind: CornerKind::Up };
                    vec![
                        one(t, i + 1),
                        Trans::One { t, b: i, top: None, bottom: Some(Item::Corner(corner)), down_even: false },
                    ]
                } else {
                    vec![one(t, b)]
                }
            }
            EventKind::RightCusp => {
                let g = self.d.generator_at_event(e).unwrap();
                if b < i {
                    vec![one(t, b)]
                } else if t >= i {
                    vec![one(t + 2, b + 2)]
                } else {
                    let c = |kind| Some(CornerLabel { generator: g, kind });
                    vec![
                        one(t, b + 2),
                        Trans::Split { p: (t, i), q: (i + 1, b + 2), corner: c(CornerKind::ComplementLeftRegion) },
                        Trans::Split { p: (t, i), q: (i, b + 2), corner: c(CornerKind::ComplementUpper) },
                        Trans::Split { p: (t, i + 1), q: (i + 1, b + 2), corner: c(CornerKind::ComplementLower) },
                        Trans::Split { p: (t, i + 1), q: (i, b + 2), corner: None },
                    ]
                }
            }
            EventKind::LeftCusp => {
                if t == i && b == i + 1 {
                    vec![Trans::End]
                } else if t == i || t == i + 1 || b == i || b == i + 1 {
                    vec![]
                } else if b < i {
                    vec![one(t, b)]
                } else if t > i + 1 {
                    vec![one(t - 2, b - 2)]
                } else {
                    vec![one(t, b - 2)]
                }
            }
            EventKind::BasePoint => {
                let comp = self.d.component_of_event(e);
                let sign = ev.sign.unwrap_or(1) as i64;
                let top = (t == i).then_some(Item::Base { comp, exp: -sign });
                let bottom = (b == i).then_some(Item::Base { comp, exp: sign });
                vec![Trans::One { t, b, top, bottom, down_even: false }]
            }
        }
    }

    fn enumerate(&self, a: usize) -> Result<Vec<Disk>> {
        let gen = &self.d.generators()[a];
        let pos = gen.event;
        let i = self.d.events()[pos].slot;
        let mut out = Vec::new();
        if !self.is_alive(pos, i, i + 1) {
            return Ok(out);
        }
        let state = State {
            sheets: vec![(i, i + 1, 0)],
            nodes: vec![Node::default()],
            down_even: 0,
            max_mult: 1,
        };
        self.descend(a, pos, state, &mut out)?;
        out.sort_by(|x, y| {
            (&x.corners, &x.windings, &x.word).cmp(&(&y.corners, &y.windings, &y.word))
        });
        Ok(out)
    }

    fn descend(&self, a: usize, pos: usize, state: State, out: &mut Vec<Disk>) -> Result<()> {
        if state.sheets.is_empty() {
            out.push(self.finish(a, &state));
            return Ok(());
        }
        let next = State { sheets: Vec::new(), ..state.clone() };
        self.choose(a, pos, &state.sheets, 0, next, out)
    }

    fn choose(
        &self,
        a: usize,
        pos: usize,
        sheets: &[(usize, usize, usize)],
        j: usize,
        state: State,
        out: &mut Vec<Disk>,
    ) -> Result<()> {
        if j == sheets.len() {
            let mut state = state;
            let m = multiplicity(&state.sheets, self.d.column(pos - 1).len());
            if m > self.config.cap {
                return Err(Error::CapExceeded { generator: self.d.generators()[a].name.clone(), cap: self.config.cap });
            }
            state.max_mult = state.max_mult.max(m);
            return self.descend(a, pos - 1, state, out);
        }
        let (t, b, node) = sheets[j];
        let options: Vec<Trans> = self
            .transitions(pos - 1, t, b)
            .into_iter()
            .filter(|tr| match tr {
                Trans::End => true,
                Trans::One { t, b, .. } => self.is_alive(pos - 1, *t, *b),
                Trans::Split { p, q, .. } => self.is_alive(pos - 1, p.0, p.1) && self.is_alive(pos - 1, q.0, q.1),
            })
            .collect();
        let last = options.len().saturating_sub(1);
        let mut state = Some(state);
        for (k, tr) in options.into_iter().enumerate() {
            let mut st = if k == last { state.take().unwrap() } else { state.clone().unwrap() };
            match tr {
                Trans::End => {}
                Trans::One { t, b, top, bottom, down_even } => {
                    if let Some(it) = top {
                        st.nodes[node].top.push(it);
                    }
                    if let Some(it) = bottom {
                        st.nodes[node].bottom.push(it);
                    }
                    if down_even {
                        st.down_even += 1;
                    }
                    st.sheets.push((t, b, node));
                }
                Trans::Split { p, q, corner } => {
                    let np = st.nodes.len();
                    st.nodes.push(Node::default());
                    st.nodes.push(Node::default());
                    st.nodes[node].split = Some((np, corner, np + 1));
                    st.sheets.push((p.0, p.1, np));
                    st.sheets.push((q.0, q.1, np + 1));
                }
            }
            self.choose(a, pos, sheets, j + 1, st, out)?;
        }
        Ok(())
    }

    fn finish(&self, a: usize, state: &State) -> Disk {
        let mut items = Vec::new();
        flatten(&state.nodes, 0, &mut items);
        let mut corners = Vec::new();
        let mut windings = vec![0i64];
        let mut word = Word::empty();
        for it in items {
            match it {
                Item::Corner(c) => {
                    corners.push(c);
                    windings.push(0);
                    word.push(Letter::Gen(c.generator));
                    if c.kind == CornerKind::ComplementLeftRegion {
                        word.push(Letter::Gen(c.generator));
                    }
                }
                Item::Base { comp, exp } => {
                    *windings.last_mut().unwrap() += exp;
                    word.push(Letter::T { comp, exp });
                }
            }
        }
        Disk {
            positive: a,
            corners,
            windings,
            sign: if state.down_even % 2 == 0 { 1 } else { -1 },
            word,
            max_multiplicity: state.max_mult,
        }
    }
}

fn flatten(nodes: &[Node], n: usize, out: &mut Vec<Item>) {
    let node = &nodes[n];
    out.extend(node.top.iter().copied());
    if let Some((p, corner, q)) = node.split {
        flatten(nodes, p, out);
        if let Some(c) = corner {
            out.push(Item::Corner(c));
        }
        flatten(nodes, q, out);
    }
    out.extend(node.bottom.iter().rev().copied());
}

fn multiplicity(sheets: &[(usize, usize, usize)], count: usize) -> usize {
    (1..count.max(1))
        .map(|g| sheets.iter().filter(|&&(t, b, _)| t <= g && g < b).count())
        .max()
        .unwrap_or(0)
}

/// All disks with positive corner at generator `a`, in a fixed order.
pub fn enumerate_disks(d: &FrontDiagram, p: &PotentialAssignment, a: usize, config: DiskConfig) -> Result<Vec<Disk>> {
    Sweep::new(d, p, config).enumerate(a)
}

/// Disks for every generator, indexed by generator.
pub fn all_disks(d: &FrontDiagram, p: &PotentialAssignment, config: DiskConfig) -> Result<Vec<Vec<Disk>>> {
    let sweep = Sweep::new(d, p, config);
    (0..d.generators().len()).into_par_iter().map(|a| sweep.enumerate(a)).collect()
}

pub fn differential_from_disks(d: &FrontDiagram, p: &PotentialAssignment, disks: &[Vec<Disk>]) -> Dga {
    let differential = disks
        .iter()
        .enumerate()
        .map(|(a, list)| {
            let mut x = if d.generators()[a].kind == GeneratorKind::RightCusp {
                AlgebraElement::one()
            } else {
                AlgebraElement::zero()
            };
            for u in list {
                x.add_term(u.word.clone(), BigInt::from(u.sign));
            }
            x
        })
        .collect();
    Dga { names: d.names(), gradings: d.gradings(p), components: d.component_count(), differential }
}

pub fn differential(d: &FrontDiagram, p: &PotentialAssignment, config: DiskConfig) -> Result<Dga> {
    let disks = all_disks(d, p, config)?;
    Ok(differential_from_disks(d, p, &disks))
}

/// Generators whose ∂∂ is not zero, with the residue.
pub fn check_d_squared(dga: &Dga) -> Vec<(usize, AlgebraElement)> {
    (0..dga.len())
        .into_par_iter()
        .filter_map(|a| {
            let r = dga.apply(&dga.differential[a]);
            (!r.is_zero()).then_some((a, r))
        })
        .collect()
}

/// Disks violating the grading law |w(u)| = |a| - 1.
pub fn grading_violations(dga: &Dga, disks: &[Vec<Disk>]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for (a, list) in disks.iter().enumerate() {
        for (k, u) in list.iter().enumerate() {
            if u.word.grading(&dga.gradings) != dga.gradings[a] - 1 {
                bad.push((a, k));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_front;

    const TREFOIL: &str = "lc 1\nlc 3\nx 2\nx 2\nbp 4 +\nx 2\nrc 1\nrc 1\n";

    fn dga(text: &str) -> Dga {
        let d = parse_front(text).unwrap();
        let p = d.maslov_potential(&[]).unwrap();
        differential(&d, &p, DiskConfig::default()).unwrap()
    }

    #[test]
    fn trefoil_differential() {
        let g = dga(TREFOIL);
        let a1 = g.index("a1").unwrap();
        let a2 = g.index("a2").unwrap();
        assert_eq!(g.format(&g.differential[a1]), "1 + b1 + b3 + b1 b2 b3");
        assert_eq!(g.format(&g.differential[a2]), "1 - b1 t - b3 t - b3 b2 b1 t");
        for b in ["b1", "b2", "b3"] {
            assert!(g.differential[g.index(b).unwrap()].is_zero());
        }
        assert!(check_d_squared(&g).is_empty());
    }

    #[test]
    fn unknot() {
        let g = dga("lc 1\nbp 2 +\nrc 1\n");
        assert_eq!(g.format(&g.differential[0]), "1 + t");
        let g = dga("lc 1\nbp 1 +\nrc 1\n");
        assert_eq!(g.format(&g.differential[0]), "1 + t^-1");
    }

    #[test]
    fn sign_flip_is_detected() {
        let mut g = dga(TREFOIL);
        let a1 = g.index("a1").unwrap();
        let b2 = g.index("b2").unwrap();
        g.differential[b2] = AlgebraElement::gen(g.index("b1").unwrap());
        g.gradings[b2] = 1;
        let _ = a1;
        assert!(!check_d_squared(&g).is_empty());
    }
}
