use proptest::prelude::*;

use hint_core::hvalue::{add, mul, sum_described, HNonNeg, HValue, SeqDescriptor};
use hint_core::intervals::Interval;
use hint_core::rational::{render_rational, ExtRational, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=1000).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn dim() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (0i64..=4, 1i64..=2).prop_map(|(p, q)| Rational::new(p.into(), q.into())),
        (0i64..=1000, 1i64..=1000).prop_map(|(p, q)| Rational::new(p.into(), q.into())),
    ]
}

fn ext() -> impl Strategy<Value = ExtRational> {
    prop_oneof![
        8 => rational().prop_map(ExtRational::Finite),
        1 => Just(ExtRational::PosInf),
        1 => Just(ExtRational::NegInf),
    ]
}

fn hvalue() -> impl Strategy<Value = HValue> {
    (dim(), ext()).prop_map(|(d, m)| HValue::of(d, m).unwrap())
}

fn nonneg() -> impl Strategy<Value = HNonNeg> {
    (dim(), prop_oneof![8 => (0i64..=1000, 1i64..=100).prop_map(|(p, q)| ExtRational::Finite(Rational::new(p.into(), q.into()))), 1 => Just(ExtRational::PosInf)])
        .prop_map(|(d, m)| HNonNeg::of(d, m).unwrap())
}

proptest! {
    #[test]
    fn hvalue_round_trips(v in hvalue()) {
        let text = v.to_string();
        prop_assert_eq!(text.parse::<HValue>().unwrap(), v.clone());
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<HValue>(&json).unwrap(), v);
    }

    #[test]
    fn rationals_round_trip(r in rational()) {
        prop_assert_eq!(hint_core::rational::parse_rational(&render_rational(&r)).unwrap(), r);
    }

    #[test]
    fn order_is_lexicographic(a in hvalue(), b in hvalue()) {
        let expected = a.d.cmp(&b.d).then(a.m.cmp(&b.m));
        prop_assert_eq!(a.cmp(&b), expected);
    }

    #[test]
    fn addition_keeps_the_larger_dimension(a in hvalue(), b in hvalue()) {
        match add(&a, &b) {
            Ok(s) => {
                prop_assert_eq!(&s.d, std::cmp::max(&a.d, &b.d));
                if a.d != b.d {
                    prop_assert!(s == a || s == b);
                }
            }
            Err(_) => {
                prop_assert_eq!(&a.d, &b.d);
                prop_assert!(!a.m.is_finite() && !b.m.is_finite() && a.m != b.m);
            }
        }
    }

    #[test]
    fn nonneg_sums_never_fail(a in nonneg(), b in nonneg(), c in nonneg()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(c.mul(&a.add(&b)), c.mul(&a).add(&c.mul(&b)));
    }

    #[test]
    fn series_distribute(a in nonneg(), prefix in proptest::collection::vec(nonneg(), 0..6), tail in nonneg()) {
        let s = SeqDescriptor { prefix, tail };
        let left = mul(a.value(), sum_described(&s).value());
        let right = sum_described(&s.map(|v| a.mul(v))).into_value();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn intervals_round_trip(lo in rational(), len in 1i64..100, lc in any::<bool>(), hc in any::<bool>()) {
        let hi = &lo + Rational::from_integer(len.into());
        let i = Interval::new(lo, hi, lc, hc).unwrap();
        prop_assert_eq!(i.to_string().parse::<Interval>().unwrap(), i);
    }
}
