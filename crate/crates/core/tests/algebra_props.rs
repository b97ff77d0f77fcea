mod common;

use grpcert::character::{Cyclotomic, Rational};
use grpcert::zg::matrix::{kernel, smith};
use grpcert::zg::IntMatrix;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i128..=6, r * c).prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| v[i * c + j]))
    })
}

fn cyclotomic(conductor: u32) -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec((0..conductor, -5i128..=5, 1i128..=3), 0..5).prop_map(move |terms| {
        let mut acc = Cyclotomic::zero();
        for (k, num, den) in terms {
            acc += &Cyclotomic::root_of_unity(conductor, k).scale(Rational::new(num, den));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in matrix()) {
        let s = smith(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < s.rank() { s.diagonal[i] } else { 0 };
                prop_assert_eq!(d.get(i, j), want);
            }
        }
        prop_assert!(s.u.mul(&s.u_inv).is_identity());
        prop_assert!(s.v.mul(&s.v_inv).is_identity());
        for w in s.diagonal.windows(2) {
            prop_assert!(w[0] > 0 && w[1] % w[0] == 0);
        }
        prop_assert_eq!(s.rank(), common::rational_rank(&a));
    }

    #[test]
    fn kernel_is_saturated_and_complete(a in matrix()) {
        let k = kernel(&a);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - common::rational_rank(&a));
        if k.cols() > 0 {
            prop_assert!(smith(&k).diagonal.iter().all(|&d| d == 1));
        }
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(9), b in cyclotomic(9), c in cyclotomic(9)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn mixed_conductors_agree_after_lifting(a in cyclotomic(3), b in cyclotomic(5)) {
        let sum = &a + &b;
        prop_assert_eq!(&sum - &b, a.clone());
        prop_assert_eq!(a.lift(15), a);
    }
}
