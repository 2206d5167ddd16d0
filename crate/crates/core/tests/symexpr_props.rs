use num_complex::Complex64;
use proptest::prelude::*;
use weng_zeta::numeric::special::xi_via_zeta;
use weng_zeta::symexpr::{
    reflect_linfactor, ExpDatum, LinFactor, WeylTag, XiLinear, XiProduct, ZetaExpression, ZetaTerm,
    Q,
};

fn half_integer() -> impl Strategy<Value = Q> {
    (-30i64..30, 1i64..=2).prop_map(|(n, d)| Q::new(n, d))
}

fn xi_linear() -> impl Strategy<Value = XiLinear> {
    (-4i64..=4, half_integer()).prop_map(|(k, h)| XiLinear::raw(k, h))
}

fn xi_product() -> impl Strategy<Value = XiProduct> {
    prop::collection::vec((xi_linear(), -3i64..=3), 0..6).prop_map(|v| v.into_iter().collect())
}

fn lin_factor() -> impl Strategy<Value = LinFactor> {
    (-3i64..=3, half_integer())
        .prop_filter("nonzero", |(k, b)| *k != 0 || *b != Q::from_integer(0))
        .prop_map(|(k, b)| LinFactor::raw(k, b))
}

fn exp_datum() -> impl Strategy<Value = ExpDatum> {
    (
        prop::collection::vec(half_integer(), 3),
        prop::collection::vec(half_integer(), 3),
    )
        .prop_map(|(a, b)| ExpDatum::new(a, b))
}

fn term() -> impl Strategy<Value = ZetaTerm> {
    (
        (-20i64..20, 1i64..6).prop_filter("nonzero", |(n, _)| *n != 0),
        prop::option::of(prop::collection::vec(-2i8..=2, 9)),
        exp_datum(),
        prop::collection::vec(lin_factor(), 0..4),
        xi_product(),
    )
        .prop_map(|((n, d), tag, expd, den, xi)| {
            ZetaTerm::new(Q::new(n, d), tag.map(WeylTag), expd, den, xi)
        })
}

fn expression() -> impl Strategy<Value = ZetaExpression> {
    prop::collection::vec(term(), 0..6).prop_map(ZetaExpression::new)
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(x in xi_linear()) {
        let c = x.canonical();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical(), c);
    }

    #[test]
    fn canonical_form_has_the_same_value(x in xi_linear(), re in -1.5f64..1.5, im in 0.5f64..3.0) {
        prop_assume!(x.k() != 0 || (x.h() != Q::from_integer(0) && x.h() != Q::from_integer(1)));
        let s = Complex64::new(re, im);
        let at = |y: XiLinear| xi_via_zeta(s * y.k() as f64 + *y.h().numer() as f64 / *y.h().denom() as f64);
        let (a, b) = (at(x), at(x.canonical()));
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1e-300), "{} {} {}", x, a, b);
    }

    #[test]
    fn reflect_is_involutive(x in xi_linear(), c in half_integer()) {
        prop_assert_eq!(x.reflect(c).reflect(c), x.canonical());
    }

    #[test]
    fn products_are_canonical(p in xi_product()) {
        prop_assert!(p.iter().all(|(x, e)| x.is_canonical() && *e != 0));
    }

    #[test]
    fn reflect_distributes_over_products(a in xi_product(), b in xi_product(), c in half_integer()) {
        prop_assert_eq!(a.mul(&b).reflect(c), a.reflect(c).mul(&b.reflect(c)));
    }

    #[test]
    fn product_laws(a in xi_product(), b in xi_product(), d in xi_product()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
        prop_assert!(a.mul(&a.inverse()).is_empty());
        prop_assert_eq!(a.div(&b).mul(&b), a.clone());
        prop_assert_eq!(a.numerator().div(&a.denominator()), a);
    }

    #[test]
    fn linear_factor_sign_extraction(f in lin_factor(), c in half_integer()) {
        let (sign, g) = f.canonical();
        prop_assert!(g.is_canonical());
        prop_assert_eq!((sign * g.k(), Q::from_integer(sign) * g.b()), (f.k(), f.b()));
        let (s1, r1) = reflect_linfactor(f, c);
        let (s2, r2) = reflect_linfactor(r1, c);
        prop_assert_eq!(r2, g);
        prop_assert_eq!(s1 * s2, sign);
    }

    #[test]
    fn expression_reflection_is_involutive(e in expression(), c in half_integer()) {
        prop_assert_eq!(e.reflect(c).reflect(c), e);
    }

    #[test]
    fn two_reflections_make_a_shift(e in expression(), c in half_integer(), d in half_integer()) {
        prop_assert_eq!(e.reflect(c).reflect(d), e.shift(d - c));
    }

    #[test]
    fn shifts_compose(e in expression(), a in half_integer(), b in half_integer()) {
        prop_assert_eq!(e.shift(a).shift(b), e.shift(a + b));
    }

    #[test]
    fn json_round_trip(e in expression()) {
        let text = e.to_json();
        prop_assert_eq!(ZetaExpression::from_json(&text).unwrap(), e);
    }

    #[test]
    fn renderings_are_nonempty(e in expression()) {
        prop_assert!(!e.to_text().is_empty());
        prop_assert!(!e.to_latex().is_empty());
        prop_assert_eq!(e.is_empty(), e.to_text() == "0");
    }
}
