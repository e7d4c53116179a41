mod common;

use common::{poly, rational};
use pcx_core::polyalg::{parse_poly, Chart, Polynomial};
use proptest::prelude::*;

fn xyz() -> Chart {
    Chart::new(["x", "y", "z"]).unwrap()
}

fn p3() -> impl Strategy<Value = Polynomial> {
    poly(xyz(), 3, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(a in p3()) {
        let text = a.to_string();
        prop_assert_eq!(parse_poly(&text, &xyz()).unwrap(), a);
    }

    #[test]
    fn ring_laws(a in p3(), b in p3(), c in p3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in p3(), b in p3(), v in 0usize..3) {
        let lhs = (&a * &b).diff_index(v);
        let rhs = &(&a.diff_index(v) * &b) + &(&a * &b.diff_index(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn clairaut(a in p3(), u in 0usize..3, v in 0usize..3) {
        prop_assert_eq!(a.diff_index(u).diff_index(v), a.diff_index(v).diff_index(u));
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in p3(), b in p3(), pt in prop::collection::vec(rational(), 3)) {
        let ea = a.eval_at(&pt).unwrap();
        let eb = b.eval_at(&pt).unwrap();
        prop_assert_eq!((&a + &b).eval_at(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval_at(&pt).unwrap(), &ea * &eb);
        prop_assert_eq!(Polynomial::one(&xyz()).eval_at(&pt).unwrap(), pcx_core::polyalg::int(1));
    }

    #[test]
    fn named_and_indexed_derivatives_agree(a in p3()) {
        for (i, n) in ["x", "y", "z"].iter().enumerate() {
            prop_assert_eq!(a.diff(n).unwrap(), a.diff_index(i));
        }
    }
}
