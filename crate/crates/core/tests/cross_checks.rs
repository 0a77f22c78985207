use newton_commutant::algebra::{parse_uni, Rational, UniPoly};
use newton_commutant::commutant::{decompose_in_h, expected_dimension, solve_commutant, touches_cap};
use newton_commutant::derivation::newton_derivation;
use newton_commutant::parity::{build_system, solve_system, SystemKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_f(rng: &mut ChaCha8Rng) -> UniPoly {
    let deg = rng.gen_range(2..=5);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4..=4)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    UniPoly::from_ints(&c)
}

#[test]
fn doubled_cap_finds_nothing_new() {
    for fs in ["x^2 + 1", "x^2 - 3*x", "x^3", "2*x^3 - x + 1"] {
        let f = parse_uni(fs).unwrap();
        for m in [1, 3, 5] {
            let base = solve_commutant(&f, m, None).unwrap();
            let wide = solve_commutant(&f, m, Some(2 * base.xcap)).unwrap();
            assert_eq!(base.dimension(), wide.dimension(), "f = {fs}, M = {m}");
            assert_eq!(base.basis, wide.basis);
        }
    }
}

#[test]
fn random_forces_have_rank_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let f = random_f(&mut rng);
        let m = rng.gen_range(1..=5);
        let basis = solve_commutant(&f, m, None).unwrap();
        assert_eq!(basis.dimension(), expected_dimension(m as usize), "f = {f}, M = {m}");
        assert!(!touches_cap(&basis), "f = {f}, M = {m}");
        let delta = newton_derivation(&f);
        for g in &basis.basis {
            assert!(delta.commutes_with(g));
            decompose_in_h(&f, g).unwrap();
        }
    }
}

#[test]
fn parity_systems_recombine_to_commutant() {
    for fs in ["x^2", "x^3 - x", "x"] {
        let f = parse_uni(fs).unwrap();
        for m in 2..=6usize {
            // Systems for M include every lower-degree solution.
            let split: usize = SystemKind::pair_for(m)
                .iter()
                .map(|k| solve_system(&build_system(*k, m, &f).unwrap(), None).dimension())
                .sum();
            let whole = solve_commutant(&f, m as i64, None).unwrap().dimension();
            assert_eq!(split, whole, "f = {fs}, m = {m}");
        }
    }
}

#[test]
fn scaling_gamma_scales_q() {
    let f = parse_uni("x^3 - 2").unwrap();
    let basis = solve_commutant(&f, 5, None).unwrap();
    let lambda = Rational::new((-7).into(), 2.into());
    for g in &basis.basis {
        let base = decompose_in_h(&f, g).unwrap();
        let scaled = decompose_in_h(&f, &g.scale(&lambda)).unwrap();
        let expect: Vec<Rational> = base.q_coeffs.iter().map(|c| c * &lambda).collect();
        assert_eq!(scaled.q_coeffs, expect);
    }
}

#[test]
fn low_degree_lemma() {
    for fs in ["x^2 + x", "x^4 - 1", "3*x^3"] {
        let f = parse_uni(fs).unwrap();
        let b = solve_commutant(&f, 1, None).unwrap();
        assert_eq!(b.basis, vec![newton_derivation(&f)]);
    }
}
