use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qbbw::glmn;
use qbbw::module::{format_weight, parse_weight, Rank};
use qbbw::qfield::LaurentPoly;
use qbbw::QScalar;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..4)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| QScalar::new(n, d).ok())
}

fn point() -> impl Strategy<Value = BigRational> {
    (1i64..=9, 1i64..=7).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        let back: QScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), q0 in point()) {
        let (Ok(x), Ok(y)) = (a.eval_at(&q0), b.eval_at(&q0)) else { return Ok(()) };
        prop_assert_eq!((&a * &b).eval_at(&q0).unwrap(), &x * &y);
        prop_assert_eq!((&a + &b).eval_at(&q0).unwrap(), &x + &y);
    }

    #[test]
    fn q_integers_are_bar_invariant(k in -6i64..=6) {
        let a = QScalar::q_int(k);
        let b = QScalar::q_int(-k);
        prop_assert!((&a + &b).is_zero());
        prop_assert_eq!(a.eval_at(&BigRational::from_integer(1.into())).unwrap(), BigRational::from_integer(k.into()));
    }

    #[test]
    fn weight_round_trip(v in prop::collection::vec(-9i64..=9, 3)) {
        let rank = Rank::new(2, 1).unwrap();
        let w: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        prop_assert_eq!(parse_weight(rank, &format_weight(rank, &w)).unwrap(), w);
    }

    #[test]
    fn kac_dimension_and_character(a in 0i64..=2, d in 0i64..=2, b in -2i64..=2) {
        let rank = Rank::new(2, 1).unwrap();
        let lam: Vec<BigRational> = [a + d, d, b].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let kac = glmn::build_kac_module(rank, &lam).unwrap();
        let v0 = glmn::build_even_irrep(rank, &lam).unwrap();
        prop_assert_eq!(kac.dim(), 4 * v0.dim());
        let total: usize = kac.character().iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, kac.dim());
    }
}
