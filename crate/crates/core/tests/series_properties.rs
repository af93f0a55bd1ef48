use eulerian_slices::series::{RationalFunction, Ring, TruncatedSeries, Var, Q};
use proptest::prelude::*;

const ORDER: usize = 6;

fn series(nonzero_constant: bool) -> impl Strategy<Value = TruncatedSeries<Q>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), ORDER + 1).prop_map(move |v| {
        let mut c: Vec<Q> = v
            .into_iter()
            .map(|(n, d)| Q::new(n.into(), d.into()))
            .collect();
        if nonzero_constant && c[0].is_zero() {
            c[0] = Q::one();
        }
        TruncatedSeries::new(Var::G, c)
    })
}

fn small_rf() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(-5i64..=5, 1..4),
        prop::collection::vec(-5i64..=5, 1..4),
    )
        .prop_filter_map("zero denominator", |(n, d)| {
            (d.iter().any(|&c| c != 0)).then(|| RationalFunction::from_ints(&n, &d))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_distributes(a in series(false), b in series(false), c in series(false)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn division_undoes_multiplication(a in series(false), b in series(true)) {
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn reversion_is_a_compositional_inverse(mut a in series(false)) {
        let mut c = a.coeffs().to_vec();
        c[0] = Q::zero();
        if c[1].is_zero() {
            c[1] = Q::one();
        }
        a = TruncatedSeries::new(Var::G, c);
        let inv = a.revert(Var::G).unwrap();
        prop_assert_eq!(a.compose(&inv).unwrap(), TruncatedSeries::variable(Var::G, ORDER));
    }

    #[test]
    fn square_root_squares_back(mut a in series(true)) {
        let mut c = a.coeffs().to_vec();
        c[0] = Q::one();
        a = TruncatedSeries::new(Var::G, c);
        let r = a.sqrt().unwrap();
        prop_assert_eq!(&r * &r, a);
    }

    #[test]
    fn rational_functions_form_a_field(f in small_rf(), g in small_rf()) {
        prop_assume!(!g.is_zero_fn());
        prop_assert_eq!(f.mul(&g).checked_div(&g).unwrap(), f.clone());
        prop_assert_eq!(f.add(&g).sub(&g), f);
    }
}
