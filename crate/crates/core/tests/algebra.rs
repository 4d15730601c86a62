use frontdga::algebra::{evaluate, AlgebraElement, Letter, Word};
use frontdga::diagram::parse_front;
use frontdga::disks::{differential, DiskConfig};
use frontdga::{Augmentation, Dga};
use num_bigint::BigInt;
use proptest::prelude::*;

const TREFOIL: &str = "lc 1\nlc 3\nx 2\nx 2\nbp 4 +\nx 2\nrc 1\nrc 1\n";

fn trefoil() -> Dga {
    let d = parse_front(TREFOIL).unwrap();
    let p = d.maslov_potential(&[]).unwrap();
    differential(&d, &p, DiskConfig::default()).unwrap()
}

fn letter(gens: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        3 => (0..gens).prop_map(Letter::Gen),
        1 => (-2i64..=2).prop_map(|exp| Letter::T { comp: 0, exp }),
    ]
}

fn word(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(gens), 0..4).prop_map(Word::from_letters)
}

fn element(gens: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((word(gens), -3i64..=3), 0..4).prop_map(|terms| {
        let mut x = AlgebraElement::zero();
        for (w, c) in terms {
            x.add_term(w, BigInt::from(c));
        }
        x
    })
}

proptest! {
    #[test]
    fn product_is_associative(x in element(4), y in element(4), z in element(4)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn product_distributes(x in element(4), y in element(4), z in element(4)) {
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(y.add(&z).mul(&x), y.mul(&x).add(&z.mul(&x)));
    }

    #[test]
    fn t_letters_cancel(e in -3i64..=3) {
        prop_assert_eq!(AlgebraElement::t(0, e).mul(&AlgebraElement::t(0, -e)), AlgebraElement::one());
    }

    #[test]
    fn leibniz_on_the_trefoil(x in word(5), y in word(5)) {
        let dga = trefoil();
        let (xe, ye) = (AlgebraElement::from_word(x.clone(), BigInt::from(1)), AlgebraElement::from_word(y, BigInt::from(1)));
        let sign = if x.grading(&dga.gradings).rem_euclid(2) == 1 { -1 } else { 1 };
        let rhs = dga.apply(&xe).mul(&ye).add(&xe.mul(&dga.apply(&ye)).scale(&BigInt::from(sign)));
        prop_assert_eq!(dga.apply(&xe.mul(&ye)), rhs);
    }

    #[test]
    fn differential_squares_to_zero(x in element(5)) {
        let dga = trefoil();
        prop_assert!(dga.apply(&dga.apply(&x)).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(values in prop::collection::vec(-3i64..=3, 4), x in element(4), y in element(4)) {
        let mut eps = Augmentation::zero();
        for (g, v) in values.into_iter().enumerate() {
            eps.set(g, BigInt::from(v));
        }
        prop_assert_eq!(evaluate(&eps, &x.mul(&y)), evaluate(&eps, &x) * evaluate(&eps, &y));
        prop_assert_eq!(evaluate(&eps, &x.add(&y)), evaluate(&eps, &x) + evaluate(&eps, &y));
        prop_assert_eq!(evaluate(&eps, &AlgebraElement::one()), BigInt::from(1));
    }
}
