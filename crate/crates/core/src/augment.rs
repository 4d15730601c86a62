//! Integral augmentations: verification, search, homotopy and extension.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{evaluate, AlgebraElement, Dga, Letter};
use crate::error::{Error, Result};
use crate::homology::smith_with_transforms;
use crate::linearized::bilinearized_complex;
use crate::matrix::Matrix;

/// Values on generators; every t_i goes to -1 and is not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Augmentation {
    values: BTreeMap<usize, BigInt>,
}

impl Augmentation {
    pub fn zero() -> Augmentation {
        Augmentation::default()
    }

    pub fn value(&self, g: usize) -> BigInt {
        self.values.get(&g).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, g: usize, v: BigInt) {
        if v.is_zero() {
            self.values.remove(&g);
        } else {
            self.values.insert(g, v);
        }
    }

    pub fn values(&self) -> &BTreeMap<usize, BigInt> {
        &self.values
    }

    /// Builds from `name -> value`; rejects unknown names and nonzero values
    /// off grading 0.
    pub fn from_named<S: AsRef<str>>(dga: &Dga, named: &[(S, i64)]) -> Result<Augmentation> {
        let big: Vec<(&str, BigInt)> = named.iter().map(|(n, v)| (n.as_ref(), BigInt::from(*v))).collect();
        Augmentation::from_named_big(dga, &big)
    }

    pub fn from_named_big(dga: &Dga, named: &[(&str, BigInt)]) -> Result<Augmentation> {
        let mut eps = Augmentation::zero();
        for (name, v) in named {
            let g = dga.index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            if dga.gradings[g] != 0 && !v.is_zero() {
                return Err(Error::NonzeroOffDegree { name: name.to_string(), grading: dga.gradings[g], value: v.to_string() });
            }
            eps.set(g, v.clone());
        }
        Ok(eps)
    }

    pub fn to_named(&self, dga: &Dga) -> BTreeMap<String, BigInt> {
        self.values.iter().map(|(g, v)| (dga.names[*g].clone(), v.clone())).collect()
    }

    /// Values of every grading-0 generator, zeros included, in id order.
    pub fn to_file(&self, dga: &Dga) -> String {
        let mut s = String::new();
        for g in 0..dga.len() {
            if dga.gradings[g] == 0 {
                s.push_str(&format!("{} {}\n", dga.names[g], self.value(g)));
            }
        }
        s
    }

    /// Reads `name value` lines; `#` starts a comment.
    pub fn parse(dga: &Dga, text: &str) -> Result<Augmentation> {
        let mut named = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::AugmentationFormat { line: ln + 1, msg: msg.to_string() };
            if toks.len() != 2 {
                return Err(err("expected `name value`"));
            }
            let v: BigInt = toks[1].parse().map_err(|_| err("value must be an integer"))?;
            named.push((toks[0], v));
        }
        Augmentation::from_named_big(dga, &named)
    }

    pub fn format(&self, dga: &Dga) -> String {
        let parts: Vec<String> = (0..dga.len())
            .filter(|&g| dga.gradings[g] == 0)
            .map(|g| format!("{}={}", dga.names[g], self.value(g)))
            .collect();
        parts.join(" ")
    }
}

/// Generators whose differential does not vanish under ε, with ε(∂a).
pub fn residues(dga: &Dga, eps: &Augmentation) -> Vec<(usize, BigInt)> {
    (0..dga.len())
        .filter_map(|a| {
            let v = evaluate(eps, &dga.differential[a]);
            (!v.is_zero()).then_some((a, v))
        })
        .collect()
}

pub fn verify_augmentation(dga: &Dga, eps: &Augmentation) -> bool {
    eps.values.iter().all(|(g, v)| v.is_zero() || dga.gradings[*g] == 0) && residues(dga, eps).is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    /// Integers in [-B, B].
    Box(i64),
    /// Residues 0..m-1, equations checked mod m.
    Modulus(i64),
}

pub const DEFAULT_SEARCH_LIMIT: usize = 24;

/// One polynomial constraint ε(∂a) = 0, restricted to the words made of
/// grading-0 letters, over variable positions.
struct Constraint {
    terms: Vec<(Vec<usize>, BigInt)>,
    last: usize,
}

fn constraints(dga: &Dga, vars: &[usize], fixed: &Augmentation) -> Vec<Constraint> {
    let pos: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let mut out = Vec::new();
    for a in 0..dga.len() {
        if dga.gradings[a] != 1 {
            continue;
        }
        let mut terms = Vec::new();
        let mut last = 0;
        for (w, c) in dga.differential[a].terms() {
            let mut idx = Vec::new();
            let mut sign = c.clone();
            let mut ok = true;
            for l in w.letters() {
                match *l {
                    Letter::Gen(g) => match pos.get(&g) {
                        Some(&p) => {
                            idx.push(p);
                            last = last.max(p);
                        }
                        None if dga.gradings[g] == 0 => sign *= fixed.value(g),
                        None => ok = false,
                    },
                    Letter::T { exp, .. } => {
                        if exp.rem_euclid(2) == 1 {
                            sign = -sign;
                        }
                    }
                }
            }
            if ok && !sign.is_zero() {
                terms.push((idx, sign));
            }
        }
        if !terms.is_empty() {
            out.push(Constraint { terms, last });
        }
    }
    out
}

fn constraint_value(c: &Constraint, values: &[i64]) -> BigInt {
    c.terms
        .iter()
        .map(|(idx, coeff)| {
            let mut v = coeff.clone();
            for &i in idx {
                if values[i] == 0 {
                    return BigInt::zero();
                }
                v *= values[i];
            }
            v
        })
        .sum()
}

/// Exhaustive search for augmentations whose values lie in the given space,
/// in lexicographic order of the value vector (generator-id order).
pub fn search_augmentations(dga: &Dga, space: SearchSpace, limit: usize) -> Result<Vec<Augmentation>> {
    let vars: Vec<usize> = (0..dga.len()).filter(|&g| dga.gradings[g] == 0).collect();
    if vars.len() > limit {
        return Err(Error::SearchTooLarge { count: vars.len(), limit });
    }
    Ok(search_over(dga, &vars, &Augmentation::zero(), space))
}

/// Search over the values of `vars`, other generators fixed by `fixed`.
fn search_over(dga: &Dga, vars: &[usize], fixed: &Augmentation, space: SearchSpace) -> Vec<Augmentation> {
    let cons = constraints(dga, vars, fixed);
    let (lo, hi, modulus) = match space {
        SearchSpace::Box(b) => (-b.abs(), b.abs(), None),
        SearchSpace::Modulus(m) => (0, m - 1, Some(BigInt::from(m))),
    };
    // constraints grouped by the last variable they mention
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); vars.len()];
    let mut constant_fail = false;
    for (k, c) in cons.iter().enumerate() {
        if c.terms.iter().all(|(idx, _)| idx.is_empty()) {
            let v = constraint_value(c, &[]);
            if !holds(&v, modulus.as_ref()) {
                constant_fail = true;
            }
        } else {
            by_last[c.last].push(k);
        }
    }
    if constant_fail {
        return Vec::new();
    }
    let assemble = |vals: Vec<i64>| {
        let mut eps = fixed.clone();
        for (i, v) in vals.into_iter().enumerate() {
            eps.set(vars[i], BigInt::from(v));
        }
        eps
    };
    if vars.is_empty() {
        return vec![assemble(Vec::new())];
    }
    let ctx = SearchCtx { cons: &cons, by_last: &by_last, lo, hi, modulus: modulus.as_ref(), n: vars.len() };
    let found: Vec<Vec<Vec<i64>>> = (lo..=hi)
        .into_par_iter()
        .map(|v0| {
            let mut values = vec![0i64; vars.len()];
            values[0] = v0;
            let mut out = Vec::new();
            if ctx.consistent(0, &values) {
                ctx.extend(1, &mut values, &mut out);
            }
            out
        })
        .collect();
    found.into_iter().flatten().map(assemble).collect()
}

fn holds(v: &BigInt, modulus: Option<&BigInt>) -> bool {
    match modulus {
        Some(m) => v.mod_floor(m).is_zero(),
        None => v.is_zero(),
    }
}

struct SearchCtx<'a> {
    cons: &'a [Constraint],
    by_last: &'a [Vec<usize>],
    lo: i64,
    hi: i64,
    modulus: Option<&'a BigInt>,
    n: usize,
}

impl SearchCtx<'_> {
    fn consistent(&self, k: usize, values: &[i64]) -> bool {
        self.by_last[k].iter().all(|&c| holds(&constraint_value(&self.cons[c], values), self.modulus))
    }

    fn extend(&self, k: usize, values: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == self.n {
            out.push(values.clone());
            return;
        }
        for v in self.lo..=self.hi {
            values[k] = v;
            if self.consistent(k, values) {
                self.extend(k + 1, values, out);
            }
        }
        values[k] = 0;
    }
}

/// An (ε1, ε2)-derivation given by its values on grading -1 generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub k: BTreeMap<usize, BigInt>,
}

impl HomotopyWitness {
    /// K on a word: Σ ε1(prefix) K(letter) ε2(suffix).
    pub fn apply(&self, dga: &Dga, eps1: &Augmentation, eps2: &Augmentation, x: &AlgebraElement) -> BigInt {
        let mut total = BigInt::zero();
        for (w, c) in x.terms() {
            let letters = w.letters();
            for (pos, l) in letters.iter().enumerate() {
                let Letter::Gen(g) = *l else { continue };
                let kv = match self.k.get(&g) {
                    Some(v) if !v.is_zero() => v,
                    _ => continue,
                };
                let pre = crate::algebra::Word::from_letters(letters[..pos].iter().copied());
                let suf = crate::algebra::Word::from_letters(letters[pos + 1..].iter().copied());
                let mut sign = 0i64;
                for l in &letters[..pos] {
                    if let Letter::Gen(h) = l {
                        sign += dga.gradings[*h];
                    }
                }
                let mut term = c * kv * crate::algebra::evaluate_word(eps1, &pre) * crate::algebra::evaluate_word(eps2, &suf);
                if sign.rem_euclid(2) == 1 {
                    term = -term;
                }
                total += term;
            }
        }
        total
    }

    /// Checks ε1 - ε2 = K∘∂ on every generator.
    pub fn verify(&self, dga: &Dga, eps1: &Augmentation, eps2: &Augmentation) -> bool {
        (0..dga.len()).all(|a| eps1.value(a) - eps2.value(a) == self.apply(dga, eps1, eps2, &dga.differential[a]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homotopy {
    Homotopic(HomotopyWitness),
    NotHomotopic,
}

/// Decides dga-homotopy of two augmentations over Z.
///
/// K(∂a) for |a| = 0 is linear in the unknowns K(g), |g| = -1, with the
/// matrix of the (ε1, ε2)-bilinearized differential from degree 0 to -1.
pub fn dga_homotopic(dga: &Dga, eps1: &Augmentation, eps2: &Augmentation) -> Homotopy {
    let complex = bilinearized_complex(dga, eps1, eps2);
    let rows: Vec<usize> = complex.basis(0).to_vec();
    let cols: Vec<usize> = complex.basis(-1).to_vec();
    let rhs: Vec<BigInt> = rows.iter().map(|&a| eps1.value(a) - eps2.value(a)).collect();
    if cols.is_empty() {
        return if rhs.iter().all(|v| v.is_zero()) {
            Homotopy::Homotopic(HomotopyWitness { k: BTreeMap::new() })
        } else {
            Homotopy::NotHomotopic
        };
    }
    let a = complex.matrix(0).transpose();
    match solve_integer(&a, &rhs) {
        Some(x) => Homotopy::Homotopic(HomotopyWitness {
            k: cols.iter().zip(x).filter(|(_, v)| !v.is_zero()).map(|(g, v)| (*g, v)).collect(),
        }),
        None => Homotopy::NotHomotopic,
    }
}

/// An integer solution of A x = b, if one exists.
pub fn solve_integer(a: &Matrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_with_transforms(a);
    let ub = snf.u.mul_vec(b);
    let r = snf.factors.len();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, v) in ub.iter().enumerate() {
        if i < r {
            let (q, rem) = v.div_rem(&snf.factors[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Extends `base` (values by name) to an augmentation of `dga`.
///
/// `defaults` override `base`; other generators start at 0. When this
/// candidate fails, the grading-0 generators absent from `base` or listed in
/// `defaults` are searched in [-bound, bound] with the rest held fixed.
pub fn extend_augmentation(
    dga: &Dga,
    base: &BTreeMap<String, BigInt>,
    defaults: &BTreeMap<String, BigInt>,
    bound: i64,
) -> Result<Augmentation> {
    let mut eps = Augmentation::zero();
    for (name, v) in base.iter().chain(defaults.iter()) {
        if let Some(g) = dga.index(name) {
            if dga.gradings[g] == 0 {
                eps.set(g, v.clone());
            } else if !v.is_zero() {
                return Err(Error::NonzeroOffDegree { name: name.clone(), grading: dga.gradings[g], value: v.to_string() });
            }
        }
    }
    if verify_augmentation(dga, &eps) {
        return Ok(eps);
    }
    let free: Vec<usize> = (0..dga.len())
        .filter(|&g| dga.gradings[g] == 0 && (!base.contains_key(&dga.names[g]) || defaults.contains_key(&dga.names[g])))
        .collect();
    if free.len() > DEFAULT_SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { count: free.len(), limit: DEFAULT_SEARCH_LIMIT });
    }
    let found = search_over(dga, &free, &eps, SearchSpace::Box(bound));
    // prefer the solution closest to the defaults
    let dist = |e: &Augmentation| -> BigInt { free.iter().map(|&g| (e.value(g) - eps.value(g)).abs()).sum() };
    found
        .into_iter()
        .filter(|cand| verify_augmentation(dga, cand))
        .min_by(|x, y| dist(x).cmp(&dist(y)))
        .ok_or(Error::NoExtension { bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_front;
    use crate::disks::{differential, DiskConfig};
    use num_traits::One;

    const TREFOIL: &str = "lc 1\nlc 3\nx 2\nx 2\nbp 4 +\nx 2\nrc 1\nrc 1\n";

    fn trefoil() -> Dga {
        let d = parse_front(TREFOIL).unwrap();
        let p = d.maslov_potential(&[]).unwrap();
        differential(&d, &p, DiskConfig::default()).unwrap()
    }

    fn eps(dga: &Dga, v: [i64; 3]) -> Augmentation {
        Augmentation::from_named(dga, &[("b1", v[0]), ("b2", v[1]), ("b3", v[2])]).unwrap()
    }

    #[test]
    fn verify_trefoil() {
        let g = trefoil();
        for n in -5..=5 {
            assert!(verify_augmentation(&g, &eps(&g, [-1, n, 0])));
        }
        let z = Augmentation::zero();
        let r = residues(&g, &z);
        assert_eq!(r[0], (g.index("a1").unwrap(), BigInt::one()));
    }

    #[test]
    fn mod_two_count() {
        let g = trefoil();
        let found = search_augmentations(&g, SearchSpace::Modulus(2), 24).unwrap();
        assert_eq!(found.len(), 5);
    }

    #[test]
    fn homotopy_trefoil() {
        let g = trefoil();
        let e0 = eps(&g, [-1, 0, 0]);
        let e5 = eps(&g, [-1, 5, 0]);
        assert_eq!(dga_homotopic(&g, &e0, &e5), Homotopy::NotHomotopic);
        assert!(matches!(dga_homotopic(&g, &e5, &e5), Homotopy::Homotopic(_)));
    }

    #[test]
    fn augmentation_file_round_trip() {
        let g = trefoil();
        let e = eps(&g, [-1, 3, 0]);
        let text = e.to_file(&g);
        assert_eq!(text, "b1 -1\nb2 3\nb3 0\n");
        assert_eq!(Augmentation::parse(&g, &text).unwrap(), e);
        assert!(matches!(Augmentation::parse(&g, "a1 1\n"), Err(Error::NonzeroOffDegree { .. })));
        assert!(matches!(Augmentation::parse(&g, "b1\n"), Err(Error::AugmentationFormat { line: 1, .. })));
    }

    #[test]
    fn extension_search_fills_new_values() {
        let g = trefoil();
        let mut base = BTreeMap::new();
        base.insert("b2".to_string(), BigInt::from(4));
        base.insert("b3".to_string(), BigInt::zero());
        let e = extend_augmentation(&g, &base, &BTreeMap::new(), 2).unwrap();
        assert_eq!(e.value(g.index("b1").unwrap()), BigInt::from(-1));
    }
}
