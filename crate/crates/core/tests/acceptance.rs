//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#![allow(clippy::manual_div_ceil, clippy::type_complexity)]

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use newton_commutant::algebra::{parse_uni, BiPoly, Rational, UniPoly};
use newton_commutant::commutant::{decompose_in_h, solve_commutant};
use newton_commutant::derivation::{hamiltonian, newton_derivation, PlanarDerivation};
use newton_commutant::integrability::{companion_for_linear, example_fixture, rectification_defect, rk4};
use newton_commutant::laurent_family::{alpha, build_family, first_integral, pm_witness};
use newton_commutant::obstruction::{build_obstruction, rational_roots, rational_roots_with_multiplicity};
use newton_commutant::parity::{build_system, solve_system, SystemKind, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Σ q_k H^k · (y, f)` built from scratch.
fn rebuild(f: &UniPoly, q_coeffs: &[Rational]) -> PlanarDerivation {
    let h = BiPoly::y().pow(2) - BiPoly::from_uni(f.integrate().scale(&q(2, 1)));
    let mut scalar = BiPoly::zero();
    for (k, c) in q_coeffs.iter().enumerate() {
        scalar = scalar + h.pow(k as u32).scale(c);
    }
    PlanarDerivation::new(&scalar * &BiPoly::y(), scalar.mul_uni(f))
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    for fs in ["6*x^2 + 5", "x^2", "x^3 - x", "x^5 + 2*x^2 - 1"] {
        let f = parse_uni(fs).unwrap();
        let delta = PlanarDerivation::new(BiPoly::y(), BiPoly::from_uni(f.clone()));
        for m in [1i64, 3, 5, 7] {
            let basis = solve_commutant(&f, m, None).map_err(|e| e.to_string())?;
            let want = ((m - 1) / 2 + 1) as usize;
            ensure(basis.dimension() == want, || {
                format!("f = {fs}, M = {m}: dimension {} ≠ {want}", basis.dimension())
            })?;
            for g in &basis.basis {
                ensure(delta.bracket(g).is_zero(), || format!("{g} does not commute with δ_f"))?;
                let dec = decompose_in_h(&f, g).map_err(|e| format!("f = {fs}, M = {m}: {e}"))?;
                ensure(rebuild(&f, &dec.q_coeffs) == *g, || format!("q(H)·δ_f ≠ {g}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} basis elements over 16 (f, M) pairs"))
}

fn criterion_2() -> Outcome {
    let f = UniPoly::x();
    let basis = solve_commutant(&f, 1, None).map_err(|e| e.to_string())?;
    let euler = PlanarDerivation::new(BiPoly::x(), BiPoly::y());
    ensure(euler.bracket(&newton_derivation(&f)).is_zero(), || "(x, y) does not commute with (y, x)".into())?;
    let failing = basis.basis.iter().filter(|g| decompose_in_h(&f, g).is_err()).count();
    ensure(failing > 0, || "no element of the f = x commutant fails decompose_in_H".into())?;

    // 200 points of the 5^6 grid by a fixed stride coprime to 5.
    let mut tested = 0;
    for i in 0..200u64 {
        let mut idx = (i * 78 + 11) % 15625;
        let mut co = [0i64; 6];
        for c in &mut co {
            *c = (idx % 5) as i64 - 2;
            idx /= 5;
        }
        if co.iter().all(|c| *c == 0) {
            continue;
        }
        let [a, b, c, e, ff, g] = co.map(|v| q(v, 1));
        let d = PlanarDerivation::new(
            BiPoly::x().scale(&a) + BiPoly::y().scale(&b) + BiPoly::constant(c),
            BiPoly::x().scale(&e) + BiPoly::y().scale(&ff) + BiPoly::constant(g),
        );
        let r = companion_for_linear(&d).map_err(|e| format!("{d}: {e}"))?;
        ensure(d.bracket(&r.delta).is_zero(), || format!("[{d}, {}] ≠ 0", r.delta))?;
        let det = &d.act_x * &r.delta.act_y - &d.act_y * &r.delta.act_x;
        ensure(!det.is_zero(), || format!("{d} and {} are parallel", r.delta))?;
        tested += 1;
    }
    Ok(format!("{failing} basis element(s) outside K[H]·δ_x; {tested} affine companions"))
}

fn criterion_3() -> Outcome {
    let mut checks = 0;
    for fs in ["x^2", "x^3"] {
        let f = parse_uni(fs).unwrap();
        for m in 2..=8usize {
            let solve = |kind| solve_system(&build_system(kind, m, &f).unwrap(), None);
            if m % 2 == 1 {
                let io = solve(SystemKind::Io);
                ensure(io.dimension() == (m + 1) / 2, || {
                    format!("f = {fs}: dim (Io)_{m} = {} ≠ {}", io.dimension(), (m + 1) / 2)
                })?;
                let iio = solve(SystemKind::IIo);
                ensure(iio.forced.contains(&Var::d(m)), || format!("f = {fs}: d_{m} free in (IIo)_{m}"))?;
            } else {
                let ie = solve(SystemKind::Ie);
                ensure(ie.forced.contains(&Var::d(m)), || format!("f = {fs}: d_{m} free in (Ie)_{m}"))?;
                let iie = solve(SystemKind::IIe);
                ensure(iie.forced.contains(&Var::c(m)), || format!("f = {fs}: c_{m} free in (IIe)_{m}"))?;
            }
            checks += 2;
        }
    }
    Ok(format!("{checks} lemma instances"))
}

fn criterion_4() -> Outcome {
    let p3 = build_obstruction(3).map_err(|e| e.to_string())?.p;
    ensure(p3 == UniPoly::from_ints(&[-6, 4, 2]), || format!("P_3 = {p3}"))?;
    for m in [3usize, 5, 7, 9, 11] {
        let p = build_obstruction(m).map_err(|e| e.to_string())?.p;
        let half = (m - 1) / 2;
        ensure(p.degree() <= ((m + 1) / 2) as i64, || format!("deg P_{m} = {}", p.degree()))?;
        ensure(!p.eval(&q(-1, 1)).is_zero(), || format!("P_{m}(-1) = 0"))?;
        let mut s: BTreeSet<Rational> = (1..=half as i64).map(|k| -q(2 * k + 1, 2 * k - 1)).collect();
        s.insert(Rational::one());
        ensure(s.iter().all(|r| p.eval(r).is_zero()), || format!("P_{m} misses an element of S"))?;
        let roots = rational_roots(&p).map_err(|e| e.to_string())?;
        ensure(roots == s, || format!("roots of P_{m}: {roots:?}"))?;
        let total: u32 = rational_roots_with_multiplicity(&p).unwrap().iter().map(|(_, k)| k).sum();
        ensure(i64::from(total) == p.degree().finite().unwrap(), || format!("P_{m} does not split over ℚ"))?;
    }
    Ok("m = 3, 5, 7, 9, 11; P_3 = 2X^2 + 4X - 6".into())
}

fn criterion_5() -> Outcome {
    for k in 1..=5u32 {
        let e = q(2 * i64::from(k) + 1, 2 * i64::from(k) - 1);
        for a_top in [q(1, 1), q(-2, 1), q(7, 3)] {
            let fam = build_family(k, &a_top).map_err(|e| e.to_string())?;
            ensure(fam.alpha.bracket(&fam.beta).unwrap().is_zero(), || format!("[α, β] ≠ 0 at k = {k}"))?;
            for j in 0..=i64::from(k) {
                let lhs = &e * &fam.a[2 * j as usize];
                let rhs = q(2 * j + 1, 2 * j - 1) * &fam.a[2 * j as usize + 1];
                ensure(lhs == rhs, || format!("ratio identity fails at k = {k}, j = {j}"))?;
            }
        }
        let r = first_integral(k).unwrap();
        ensure(alpha(k).apply(&r).unwrap().is_zero(), || format!("α(r) ≠ 0 at k = {k}"))?;
    }
    let mut witnesses = 0;
    for m in (3..=11usize).step_by(2) {
        for k in 1..=((m - 1) / 2) as u32 {
            let w = pm_witness(m, k).map_err(|e| e.to_string())?;
            ensure(w.alpha.bracket(&w.witness).unwrap().is_zero(), || format!("witness ({m}, {k}) does not commute"))?;
            ensure(!w.witness.act_y.ycoeff(m).is_zero(), || format!("d_{m} = 0 for witness k = {k}"))?;
            witnesses += 1;
        }
    }
    Ok(format!("15 families, {witnesses} witnesses"))
}

fn criterion_6() -> Outcome {
    let fx = example_fixture();
    let (fx1, fx2) = (fx.d.act_x.to_f64_evaluator(), fx.d.act_y.to_f64_evaluator());
    let tr = rk4(|x, y| (fx1.eval(x, y), fx2.eval(x, y)), 0.0, 1.0, 1.0, 10_000);
    let err = tr
        .points
        .iter()
        .map(|&(t, x, y)| (x - t.tan()).abs().max((y - t.cos().powi(2)).abs()))
        .fold(0.0, f64::max);
    ensure(err < 1e-6, || format!("trajectory error {err:e}"))?;
    let report = rectification_defect(&fx.d, &fx.delta, &Rational::zero(), &Rational::one(), 1.0, 10_000)
        .map_err(|e| e.to_string())?;
    ensure(report.max_defect < 1e-6, || format!("max defect {:e}", report.max_defect))?;
    Ok(format!("trajectory error {err:.2e}, max defect {:.2e}", report.max_defect))
}

fn bipoly_strategy(max: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 0..=max), 1..=max).prop_map(|rows| {
        BiPoly::new(rows.iter().map(|r| UniPoly::from_ints(r)).collect())
    })
}

fn derivation_strategy() -> impl Strategy<Value = PlanarDerivation> {
    (bipoly_strategy(3), bipoly_strategy(3)).prop_map(|(a, b)| PlanarDerivation::new(a, b))
}

fn criterion_7() -> Outcome {
    let config = Config { cases: 200, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(
        config.clone(),
        proptest::test_runner::TestRng::deterministic_rng(config.rng_algorithm),
    );
    let strategy = (
        bipoly_strategy(4),
        bipoly_strategy(4),
        derivation_strategy(),
        derivation_strategy(),
        derivation_strategy(),
    );
    runner
        .run(&strategy, |(p, qq, d1, d2, d3)| {
            prop_assert_eq!(d1.apply(&(&p * &qq)), &d1.apply(&p) * &qq + &p * &d1.apply(&qq));
            let jacobi = d1.bracket(&d2).bracket(&d3).add(&d2.bracket(&d3).bracket(&d1)).add(&d3.bracket(&d1).bracket(&d2));
            prop_assert!(jacobi.is_zero());
            prop_assert_eq!(p.integrate_dx().dx(), p.clone());
            if let Some(u) = p.as_uni() {
                prop_assert_eq!(u.integrate().derivative(), u);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let mut newton = TestRunner::new_with_rng(
        Config { cases: 50, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(config.rng_algorithm),
    );
    newton
        .run(&prop::collection::vec(-9i64..=9, 1..=7), |coeffs| {
            let f = UniPoly::from_ints(&coeffs);
            let delta = newton_derivation(&f);
            prop_assert!(delta.apply(&hamiltonian(&f)).is_zero());
            prop_assert!(delta.divergence().is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("200 Leibniz/Jacobi/antiderivative cases, 50 Newton fields".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 7] = [
        (1, "rank-one certificate", 60, criterion_1),
        (2, "degree-one negative control", 30, criterion_2),
        (3, "parity lemmas", 120, criterion_3),
        (4, "obstruction polynomials", 5, criterion_4),
        (5, "Laurent family", 30, criterion_5),
        (6, "classical formula (numeric)", 10, criterion_6),
        (7, "calculus kernel", 10, criterion_7),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (verdict, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; {elapsed:.2?} exceeds {budget} s")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} criterion {id} ({name}) [{:.2?} / {budget} s]: {detail}", elapsed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
