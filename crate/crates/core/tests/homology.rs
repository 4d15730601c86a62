use frontdga::homology::{graded_homology, smith_with_transforms};
use frontdga::linearized::GradedComplex;
use frontdga::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows).prop_map(move |r| {
        if rows == 0 {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(&r)
        }
    })
}

fn sized_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// gcd of all k by k minors.
fn determinantal_divisor(m: &Matrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn square(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Number of vectors of F_p^n, by enumeration.
fn vectors(n: usize, p: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..p).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn apply_mod(m: &Matrix, v: &[i64], p: i64) -> Vec<i64> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| i64::try_from(&m[(r, c)]).unwrap() * v[c]).sum::<i64>().rem_euclid(p)).collect()
}

/// dim H over F_p as log_p(|ker| / |im|), by brute force.
fn brute_dim(out_map: &Matrix, in_map: &Matrix, n: usize, p: i64) -> usize {
    let kernel = vectors(n, p).into_iter().filter(|v| apply_mod(out_map, v, p).iter().all(|&x| x == 0)).count();
    let image: std::collections::BTreeSet<Vec<i64>> = vectors(in_map.cols(), p).iter().map(|v| apply_mod(in_map, v, p)).collect();
    let mut ratio = kernel / image.len();
    let mut d = 0;
    while ratio > 1 {
        ratio /= p as usize;
        d += 1;
    }
    d
}

/// C2 -> C1 = A + B -> C0, with d2 landing in B and d1 killing B.
fn complex() -> impl Strategy<Value = (Vec<(i64, usize)>, Matrix, Matrix)> {
    (0usize..=2, 1usize..=2, 0usize..=2, 1usize..=2).prop_flat_map(|(n0, a, b, n2)| {
        (matrix(n0, a), matrix(b, n2)).prop_map(move |(m1, m2)| {
            let mut d1 = Matrix::zeros(n0, a + b);
            for r in 0..n0 {
                for c in 0..a {
                    d1[(r, c)] = m1[(r, c)].clone();
                }
            }
            let mut d2 = Matrix::zeros(a + b, n2);
            for r in 0..b {
                for c in 0..n2 {
                    d2[(a + r, c)] = m2[(r, c)].clone();
                }
            }
            (vec![(0, n0), (1, a + b), (2, n2)], d1, d2)
        })
    })
}

proptest! {
    #[test]
    fn smith_form_matches_determinantal_divisors(m in sized_matrix()) {
        let snf = smith_with_transforms(&m);
        let mut prefix = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let dk = determinantal_divisor(&m, k);
            match snf.factors.get(k - 1) {
                Some(f) => {
                    prefix *= f;
                    prop_assert_eq!(&prefix, &dk);
                }
                None => prop_assert!(dk.is_zero()),
            }
        }
        for w in snf.factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn smith_transforms_diagonalize(m in sized_matrix()) {
        let snf = smith_with_transforms(&m);
        prop_assert!(det(&square(&snf.u)).abs().is_one());
        prop_assert!(det(&square(&snf.v)).abs().is_one());
        let d = snf.u.mul(&m).mul(&snf.v);
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let expected = if r == c { snf.factors.get(r).cloned().unwrap_or_default() } else { BigInt::zero() };
                prop_assert_eq!(d[(r, c)].abs(), expected);
            }
        }
    }

    #[test]
    fn homology_mod_p_matches_enumeration((dims, d1, d2) in complex(), p in prop::sample::select(vec![2i64, 3, 5])) {
        let cx = GradedComplex::from_matrices(&dims, vec![(1, d1.clone()), (2, d2.clone())]);
        let h = graded_homology(&cx).unwrap();
        let divisible = |k: i64| h.torsion(k).iter().filter(|t| t.is_multiple_of(&BigInt::from(p))).count();
        let zero = |rows: usize, cols: usize| Matrix::zeros(rows, cols);
        let (n0, n1, n2) = (dims[0].1, dims[1].1, dims[2].1);
        let brute = [
            brute_dim(&zero(0, n0), &d1, n0, p),
            brute_dim(&d1, &d2, n1, p),
            brute_dim(&d2, &zero(n2, 0), n2, p),
        ];
        for (k, &b) in brute.iter().enumerate() {
            let k = k as i64;
            prop_assert_eq!(h.rank(k) + divisible(k) + divisible(k - 1), b, "degree {}", k);
        }
    }
}
