//! Linearized and bilinearized complexes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{evaluate_word, Dga, Letter, Word};
use crate::augment::Augmentation;
use crate::matrix::Matrix;

/// Free graded module on the generators with ∂_k : C_k → C_{k-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    basis: BTreeMap<i64, Vec<usize>>,
    /// matrices[k] has rows indexed by basis[k-1] and columns by basis[k].
    matrices: BTreeMap<i64, Matrix>,
}

impl GradedComplex {
    pub fn new(basis: BTreeMap<i64, Vec<usize>>, matrices: BTreeMap<i64, Matrix>) -> GradedComplex {
        GradedComplex { basis, matrices }
    }

    /// A complex given directly by its matrices; the basis is numbered
    /// degree by degree. Handy for tests.
    pub fn from_matrices(dims: &[(i64, usize)], maps: Vec<(i64, Matrix)>) -> GradedComplex {
        let mut basis = BTreeMap::new();
        let mut next = 0;
        for &(k, n) in dims {
            basis.insert(k, (next..next + n).collect());
            next += n;
        }
        let mut matrices: BTreeMap<i64, Matrix> = maps.into_iter().collect();
        for &(k, n) in dims {
            let below = basis.get(&(k - 1)).map_or(0, |b: &Vec<usize>| b.len());
            matrices.entry(k).or_insert_with(|| Matrix::zeros(below, n));
        }
        GradedComplex { basis, matrices }
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.basis.keys().copied().collect()
    }

    pub fn basis(&self, k: i64) -> &[usize] {
        self.basis.get(&k).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    /// ∂_k, possibly with zero rows or columns.
    pub fn matrix(&self, k: i64) -> Matrix {
        self.matrices
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(k - 1), self.dim(k)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|(k, b)| if k.rem_euclid(2) == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    /// Degrees where ∂_{k-1} ∂_k is nonzero.
    pub fn square_defects(&self) -> Vec<i64> {
        self.degrees()
            .into_iter()
            .filter(|&k| {
                let a = self.matrix(k - 1);
                let b = self.matrix(k);
                a.rows() > 0 && b.cols() > 0 && !a.mul(&b).is_zero()
            })
            .collect()
    }
}

/// ε1 on the letters before position k, ε2 on the letters after it.
pub fn bilinear_coefficient(eps1: &Augmentation, eps2: &Augmentation, letters: &[Letter], k: usize) -> BigInt {
    let pre = Word::from_letters(letters[..k].iter().copied());
    let v = evaluate_word(eps1, &pre);
    if v.is_zero() {
        return v;
    }
    let suf = Word::from_letters(letters[k + 1..].iter().copied());
    v * evaluate_word(eps2, &suf)
}

/// The (ε1, ε2)-bilinearized complex; ε1 = ε2 gives the linearized one.
pub fn bilinearized_complex(dga: &Dga, eps1: &Augmentation, eps2: &Augmentation) -> GradedComplex {
    let mut basis: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut index = vec![0usize; dga.len()];
    for g in 0..dga.len() {
        let list = basis.entry(dga.gradings[g]).or_default();
        index[g] = list.len();
        list.push(g);
    }
    let mut matrices: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (&k, cols) in &basis {
        let rows = basis.get(&(k - 1)).map_or(0, |b| b.len());
        matrices.insert(k, Matrix::zeros(rows, cols.len()));
    }
    for a in 0..dga.len() {
        let k = dga.gradings[a];
        for (w, c) in dga.differential[a].terms() {
            let letters = w.letters();
            for (pos, l) in letters.iter().enumerate() {
                let Letter::Gen(b) = *l else { continue };
                if dga.gradings[b] != k - 1 {
                    continue;
                }
                let v = bilinear_coefficient(eps1, eps2, letters, pos);
                if !v.is_zero() {
                    let m = matrices.get_mut(&k).unwrap();
                    m[(index[b], index[a])] += c * v;
                }
            }
        }
    }
    GradedComplex { basis, matrices }
}

/// b ↦ ε2(b) - ε1(b) on grading-0 generators.
pub fn tau0_chain_map(dga: &Dga, eps1: &Augmentation, eps2: &Augmentation) -> BTreeMap<usize, BigInt> {
    (0..dga.len())
        .filter(|&g| dga.gradings[g] == 0)
        .map(|g| (g, eps2.value(g) - eps1.value(g)))
        .collect()
}

/// Image of each generator of C_k under the complex differential, as a
/// sparse list of (generator, coefficient); for printing.
pub fn describe(dga: &Dga, c: &GradedComplex) -> Vec<(usize, Vec<(usize, BigInt)>)> {
    let mut out = Vec::new();
    for k in c.degrees() {
        let m = c.matrix(k);
        let rows = c.basis(k - 1);
        for (j, &a) in c.basis(k).iter().enumerate() {
            let image: Vec<(usize, BigInt)> = (0..m.rows())
                .filter(|&i| !m[(i, j)].is_zero())
                .map(|i| (rows[i], m[(i, j)].clone()))
                .collect();
            out.push((a, image));
        }
    }
    out.sort_by_key(|(a, _)| *a);
    let _ = dga;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_front;
    use crate::disks::{differential, DiskConfig};

    const TREFOIL: &str = "lc 1\nlc 3\nx 2\nx 2\nbp 4 +\nx 2\nrc 1\nrc 1\n";

    fn image(dga: &Dga, c: &GradedComplex, name: &str) -> Vec<(String, i64)> {
        let a = dga.index(name).unwrap();
        describe(dga, c)
            .into_iter()
            .find(|(g, _)| *g == a)
            .unwrap()
            .1
            .into_iter()
            .map(|(g, v)| (dga.names[g].clone(), i64::try_from(v).unwrap()))
            .collect()
    }

    #[test]
    fn trefoil_linearized() {
        let d = parse_front(TREFOIL).unwrap();
        let p = d.maslov_potential(&[]).unwrap();
        let dga = differential(&d, &p, DiskConfig::default()).unwrap();
        for n in [0, 2, 3, 5] {
            let e = Augmentation::from_named(&dga, &[("b1", -1), ("b2", n), ("b3", 0)]).unwrap();
            let c = bilinearized_complex(&dga, &e, &e);
            let want = vec![("b1".to_string(), 1), ("b3".to_string(), 1 - n)];
            let want: Vec<_> = want.into_iter().filter(|(_, v)| *v != 0).collect();
            assert_eq!(image(&dga, &c, "a1"), want);
            assert_eq!(image(&dga, &c, "a2"), want);
            assert!(c.square_defects().is_empty());
        }
    }

    #[test]
    fn example_pair() {
        let d = parse_front(TREFOIL).unwrap();
        let p = d.maslov_potential(&[]).unwrap();
        let dga = differential(&d, &p, DiskConfig::default()).unwrap();
        let n = 3;
        let e1 = Augmentation::from_named(&dga, &[("b1", -1), ("b2", 0), ("b3", 0)]).unwrap();
        let e2 = Augmentation::from_named(&dga, &[("b1", -1), ("b2", n), ("b3", 0)]).unwrap();
        let c = bilinearized_complex(&dga, &e1, &e2);
        assert_eq!(image(&dga, &c, "a1"), vec![("b1".to_string(), 1), ("b3".to_string(), 1)]);
        assert_eq!(image(&dga, &c, "a2"), vec![("b1".to_string(), 1), ("b3".to_string(), 1 - n)]);
        let tau = tau0_chain_map(&dga, &e1, &e2);
        assert_eq!(tau[&dga.index("b2").unwrap()], BigInt::from(n));
    }
}
