use num_complex::Complex64;
use proptest::prelude::*;

use qfactor_core::exact::{fmt_rational, parse_rational, rat, BigRational, LaurentPoly};
use qfactor_core::families::{from_x_basis, to_x_basis, ultraspherical};
use qfactor_core::operators::dx_beta_q;
use qfactor_core::qkernel::mu_n;
use qfactor_core::QContext;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    small_rational().prop_filter("non-zero", |r| *r != rat(0, 1))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, small_rational()), 0..6).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("non-zero", |p| !p.is_zero())
}

fn symmetric() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(small_rational(), 1..6).prop_map(|c| from_x_basis(&c))
}

fn context() -> impl Strategy<Value = QContext> {
    let s = prop::sample::select(vec![rat(1, 2), rat(1, 3), rat(3, 5), rat(2, 7)]);
    let beta = prop::sample::select(vec![rat(0, 1), rat(1, 2), rat(-1, 3), rat(7, 8), rat(5, 3)]);
    (s, beta).prop_map(|(s, b)| QContext::new(s, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_add_under_multiplication(a in nonzero_laurent(), b in nonzero_laurent()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.max_deg(), Some(a.max_deg().unwrap() + b.max_deg().unwrap()));
        prop_assert_eq!(prod.min_deg(), Some(a.min_deg().unwrap() + b.min_deg().unwrap()));
    }

    #[test]
    fn rescale_round_trips(p in laurent(), c in nonzero_rational()) {
        let back = p.rescale_z(&c).unwrap().rescale_z(&c.recip()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in laurent(), d in nonzero_laurent()) {
        prop_assert_eq!((&p * &d).exact_divide(&d).unwrap(), p);
    }

    #[test]
    fn multiplication_commutes_and_distributes(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn x_basis_round_trips(p in symmetric()) {
        prop_assert_eq!(from_x_basis(&to_x_basis(&p).unwrap()), p);
    }

    #[test]
    fn operator_preserves_symmetry(p in symmetric(), ctx in context()) {
        let image = dx_beta_q(&ctx).apply_poly(&p).unwrap();
        prop_assert!(image.is_symmetric());
    }

    #[test]
    fn operator_is_linear(a in symmetric(), b in symmetric(), c in small_rational(), ctx in context()) {
        let d = dx_beta_q(&ctx);
        let combined = d.apply_poly(&(&a.scale(&c) + &b)).unwrap();
        let split = &d.apply_poly(&a).unwrap().scale(&c) + &d.apply_poly(&b).unwrap();
        prop_assert_eq!(combined, split);
    }

    #[test]
    fn rationals_round_trip_through_text(r in small_rational()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&r)), Some(r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The exact eigen-relation, re-evaluated pointwise in floating point.
    #[test]
    fn exact_and_numeric_operator_agree(ctx in context(), n in 0u32..=10, theta in 0.2f64..2.9) {
        let c = ultraspherical(n, &ctx);
        let s = ctx.s_f64();
        let beta = ctx.beta_f64();
        let z = Complex64::from_polar(1.0, theta);
        let one = Complex64::new(1.0, 0.0);
        let z2 = z * z;
        let plus = (one - beta / z2) / (one - one / z2) * c.eval(z / s);
        let minus = (one - beta * z2) / (one - z2) * c.eval(z * s);
        let mu = qfactor_core::exact::to_f64(mu_n(&ctx, n).value());
        let lhs = plus + minus;
        let rhs = c.eval(z) * mu;
        let scale = plus.norm() + minus.norm();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale, "{} vs {}", lhs, rhs);
    }
}
