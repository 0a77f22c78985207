use newton_commutant::algebra::{parse_bi, parse_uni, BiPoly, LaurentBiPoly, Rational, UniPoly};
use newton_commutant::derivation::{hamiltonian, newton_derivation, LaurentDerivation, PlanarDerivation};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=5).prop_map(UniPoly::new)
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(unipoly(), 0..=4).prop_map(BiPoly::new)
}

fn derivation() -> impl Strategy<Value = PlanarDerivation> {
    (bipoly(), bipoly()).prop_map(|(a, b)| PlanarDerivation::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn uni_ring_axioms(a in unipoly(), b in unipoly(), c in unipoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, UniPoly::zero());
        prop_assert_eq!(&a * &UniPoly::one(), a.clone());
    }

    #[test]
    fn bi_ring_axioms(a in bipoly(), b in bipoly(), c in bipoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), BiPoly::zero());
    }

    #[test]
    fn uni_division(a in unipoly(), b in unipoly()) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a.clone());
        prop_assert!(rem.degree() < b.degree());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in bipoly(), b in bipoly(), x in rational(), y in rational()) {
        prop_assert_eq!((&a * &b).eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
        prop_assert_eq!((&a + &b).eval(&x, &y), a.eval(&x, &y) + b.eval(&x, &y));
    }

    #[test]
    fn leibniz(d in derivation(), p in bipoly(), q in bipoly()) {
        prop_assert_eq!(d.apply(&(&p * &q)), &(&d.apply(&p) * &q) + &(&p * &d.apply(&q)));
    }

    #[test]
    fn jacobi(a in derivation(), b in derivation(), c in derivation()) {
        let sum = a.bracket(&b).bracket(&c)
            .add(&b.bracket(&c).bracket(&a))
            .add(&c.bracket(&a).bracket(&b));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric(a in derivation(), b in derivation()) {
        prop_assert_eq!(a.bracket(&b), b.bracket(&a).scale(&Rational::from_integer((-1).into())));
    }

    #[test]
    fn integrate_then_differentiate(p in unipoly(), q in bipoly()) {
        prop_assert_eq!(p.integrate().derivative(), p.clone());
        prop_assert!(p.integrate().coeff(0) == Rational::from_integer(0.into()));
        prop_assert_eq!(q.integrate_dx().dx(), q);
    }

    #[test]
    fn newton_field_preserves_h(f in unipoly()) {
        let delta = newton_derivation(&f);
        prop_assert!(delta.apply(&hamiltonian(&f)).is_zero());
        prop_assert!(delta.is_divergence_free());
    }

    #[test]
    fn printing_round_trips(p in bipoly()) {
        prop_assert_eq!(parse_bi(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn laurent_embedding_preserves_brackets(a in derivation(), b in derivation(), t in 1u32..=4) {
        let la = LaurentDerivation::from_planar(&a, t);
        let lb = LaurentDerivation::from_planar(&b, t);
        let bracket = la.bracket(&lb).unwrap();
        prop_assert_eq!(bracket.to_planar().unwrap(), a.bracket(&b));
    }

    #[test]
    fn laurent_embedding_is_multiplicative(p in bipoly(), q in bipoly(), t in 1u32..=4) {
        let lp = LaurentBiPoly::from_bipoly(&p, t);
        let lq = LaurentBiPoly::from_bipoly(&q, t);
        prop_assert_eq!((&lp * &lq).to_bipoly().unwrap(), &p * &q);
        prop_assert_eq!(lp.dx().to_bipoly().unwrap(), p.dx());
    }
}

#[test]
fn hamiltonian_examples() {
    assert_eq!(hamiltonian(&parse_uni("x").unwrap()), parse_bi("y^2 - x^2").unwrap());
    assert_eq!(hamiltonian(&parse_uni("x^2").unwrap()), parse_bi("y^2 - 2/3*x^3").unwrap());
}
