//! The free unital algebra over Z on the generators of a front and the
//! invertible letters t_i, one per component.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::augment::Augmentation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gen(usize),
    T { comp: usize, exp: i64 },
}

/// A word in canonical form: no two adjacent t-letters of one component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter::Gen(g)])
    }

    pub fn t(comp: usize, exp: i64) -> Word {
        let mut w = Word::empty();
        w.push(Letter::T { comp, exp });
        w
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, letter: Letter) {
        if let Letter::T { comp, exp } = letter {
            if exp == 0 {
                return;
            }
            if let Some(Letter::T { comp: c, exp: e }) = self.0.last_mut() {
                if *c == comp {
                    *e += exp;
                    if *e == 0 {
                        self.0.pop();
                    }
                    return;
                }
            }
        }
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn grading(&self, gradings: &[i64]) -> i64 {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Gen(g) => gradings[*g],
                Letter::T { .. } => 0,
            })
            .sum()
    }

    pub fn format(&self, names: &[String], components: usize) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match *l {
                Letter::Gen(g) => names[g].clone(),
                Letter::T { comp, exp } => {
                    let base = if components == 1 { "t".to_string() } else { format!("t{}", comp + 1) };
                    if exp == 1 {
                        base
                    } else {
                        format!("{}^{}", base, exp)
                    }
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// A finite Z-linear combination of words with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, BigInt>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement::from_word(Word::empty(), BigInt::one())
    }

    pub fn gen(g: usize) -> AlgebraElement {
        AlgebraElement::from_word(Word::gen(g), BigInt::one())
    }

    pub fn t(comp: usize, exp: i64) -> AlgebraElement {
        AlgebraElement::from_word(Word::t(comp, exp), BigInt::one())
    }

    pub fn from_word(w: Word, c: BigInt) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        x.add_term(w, c);
        x
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// The set of gradings of the words; a single value when homogeneous.
    pub fn gradings(&self, gradings: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().map(|w| w.grading(gradings)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn format(&self, names: &[String], components: usize) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                let _ = write!(out, "{}", abs);
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{} ", abs);
                }
                out.push_str(&w.format(names, components));
            }
        }
        out
    }
}

/// Applies the differential given on generators by `table`, extended by
/// linearity and the graded Leibniz rule; t-letters are cycles.
pub fn apply_differential(x: &AlgebraElement, gradings: &[i64], table: &[AlgebraElement]) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (w, c) in x.terms() {
        let letters = w.letters();
        let mut sign_grading = 0i64;
        for (k, l) in letters.iter().enumerate() {
            if let Letter::Gen(g) = *l {
                let dg = table.get(g).ok_or(Error::MissingDifferential(g))?;
                let prefix = Word::from_letters(letters[..k].iter().copied());
                let suffix = Word::from_letters(letters[k + 1..].iter().copied());
                let coeff = if sign_grading.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
                for (dw, dc) in dg.terms() {
                    out.add_term(prefix.concat(dw).concat(&suffix), &coeff * dc);
                }
                sign_grading += gradings[g];
            }
        }
    }
    Ok(out)
}

/// Evaluates an element under an augmentation, with every t_i sent to -1.
pub fn evaluate(eps: &Augmentation, x: &AlgebraElement) -> BigInt {
    x.terms().map(|(w, c)| c * evaluate_word(eps, w)).sum()
}

pub fn evaluate_word(eps: &Augmentation, w: &Word) -> BigInt {
    let mut v = BigInt::one();
    for l in w.letters() {
        match *l {
            Letter::Gen(g) => {
                let e = eps.value(g);
                if e.is_zero() {
                    return BigInt::zero();
                }
                v *= e;
            }
            Letter::T { exp, .. } => {
                if exp.rem_euclid(2) == 1 {
                    v = -v;
                }
            }
        }
    }
    v
}

/// The differential graded algebra of a front, as computed from its disks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    pub names: Vec<String>,
    pub gradings: Vec<i64>,
    pub components: usize,
    pub differential: Vec<AlgebraElement>,
}

impl Dga {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        apply_differential(x, &self.gradings, &self.differential).expect("table covers all generators")
    }

    pub fn format(&self, x: &AlgebraElement) -> String {
        x.format(&self.names, self.components)
    }

    /// Parses a sum of words such as `1 - b1 t - 2 b3 b2 b1 t^-1`; used in
    /// tests and for hand-written tables.
    pub fn parse_element(&self, text: &str) -> Option<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        let spaced = text.replace('-', " - ").replace('+', " + ").replace("^ - ", "^-");
        let mut sign = BigInt::one();
        let mut coeff: Option<BigInt> = None;
        let mut word = Word::empty();
        let mut started = false;
        let flush = |out: &mut AlgebraElement, sign: &BigInt, coeff: &mut Option<BigInt>, word: &mut Word| {
            let c = coeff.take().unwrap_or_else(BigInt::one);
            out.add_term(std::mem::take(word), sign * c);
        };
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if started {
                        flush(&mut out, &sign, &mut coeff, &mut word);
                    }
                    sign = if tok == "-" { -BigInt::one() } else { BigInt::one() };
                    started = false;
                }
                _ => {
                    started = true;
                    if let Ok(n) = tok.parse::<BigInt>() {
                        coeff = Some(coeff.unwrap_or_else(BigInt::one) * n);
                        continue;
                    }
                    let (base, exp) = match tok.split_once('^') {
                        Some((b, e)) => (b, e.parse::<i64>().ok()?),
                        None => (tok, 1),
                    };
                    if base == "t" {
                        word.push(Letter::T { comp: 0, exp });
                    } else if let Some(c) = base.strip_prefix('t').and_then(|s| s.parse::<usize>().ok()) {
                        word.push(Letter::T { comp: c.checked_sub(1)?, exp });
                    } else {
                        let g = self.index(base)?;
                        for _ in 0..exp {
                            word.push(Letter::Gen(g));
                        }
                    }
                }
            }
        }
        if started {
            flush(&mut out, &sign, &mut coeff, &mut word);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn t_letters_merge_and_cancel() {
        let x = AlgebraElement::t(0, 1).mul(&AlgebraElement::t(0, -1));
        assert_eq!(x, AlgebraElement::one());
        let y = AlgebraElement::t(0, 2).mul(&AlgebraElement::t(1, -1));
        assert_eq!(y.terms().next().unwrap().0.len(), 2);
    }

    #[test]
    fn products() {
        let b = |g| AlgebraElement::gen(g);
        let b2b3 = b(1).mul(&b(2));
        assert_eq!(b(0).mul(&b2b3), AlgebraElement::from_word(Word::from_letters([Letter::Gen(0), Letter::Gen(1), Letter::Gen(2)]), big(1)));
        let lhs = AlgebraElement::one().add(&b(0)).mul(&b(2));
        assert_eq!(lhs, b(2).add(&b(0).mul(&b(2))));
    }

    #[test]
    fn formatting_is_graded_lex() {
        let names: Vec<String> = ["b1", "b2", "b3"].iter().map(|s| s.to_string()).collect();
        let mut x = AlgebraElement::zero();
        x.add_term(Word::from_letters([Letter::Gen(2), Letter::Gen(1), Letter::Gen(0), Letter::T { comp: 0, exp: 1 }]), big(-1));
        x.add_term(Word::from_letters([Letter::Gen(0), Letter::T { comp: 0, exp: -1 }]), big(-1));
        x.add_term(Word::empty(), big(1));
        assert_eq!(x.format(&names, 1), "1 - b1 t^-1 - b3 b2 b1 t");
    }
}
