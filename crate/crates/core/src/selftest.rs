//! Runs the seven acceptance checks in-process and reports one verdict each.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{parse_uni, rational, BiPoly, Rational, UniPoly};
use crate::commutant::{decompose_in_h, expected_dimension, solve_commutant};
use crate::derivation::{hamiltonian, newton_derivation, PlanarDerivation};
use crate::error::Result;
use crate::integrability::{
    companion_for_linear, example_fixture, linear_grid, rectification_defect_with_reference, rk4,
};
use crate::laurent_family::{alpha, build_family, first_integral, pm_witness};
use crate::obstruction::{build_obstruction, report_for, ObstructionPoly};
use crate::parity::{check_lemma_suite, SystemKind};

pub type ObstructionBuilder = fn(usize) -> Result<ObstructionPoly>;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub all_pass: bool,
}

impl std::fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.criteria {
            writeln!(
                f,
                "{} criterion {}: {} ({} ms) {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.elapsed_ms,
                c.detail
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Selftest {
    pub seed: u64,
    obstruction: ObstructionBuilder,
}

impl Default for Selftest {
    fn default() -> Self {
        Selftest { seed: 0, obstruction: build_obstruction }
    }
}

type Check = fn(&Selftest) -> (bool, String);

impl Selftest {
    pub fn new(seed: u64) -> Self {
        Selftest { seed, ..Self::default() }
    }

    /// Replaces the obstruction constructor, for mutation testing.
    pub fn with_obstruction(mut self, builder: ObstructionBuilder) -> Self {
        self.obstruction = builder;
        self
    }

    pub fn run(&self) -> SelftestReport {
        let table: [(u32, &str, u64, Check); 7] = [
            (1, "rank-one certificate", 60, Self::rank_one),
            (2, "degree-one negative control", 30, Self::negative_control),
            (3, "parity lemmas", 120, Self::parity_lemmas),
            (4, "obstruction polynomials", 5, Self::obstruction_roots),
            (5, "Laurent family", 30, Self::laurent_family),
            (6, "classical formula (numeric)", 10, Self::classical_formula),
            (7, "calculus kernel", 10, Self::calculus_kernel),
        ];
        let criteria: Vec<CriterionResult> = table
            .iter()
            .map(|&(id, name, budget, check)| {
                let start = Instant::now();
                let (ok, detail) = check(self);
                let elapsed = start.elapsed();
                let budget = Duration::from_secs(budget);
                let pass = ok && elapsed <= budget;
                let detail = if ok && !pass { format!("{detail}; over time budget") } else { detail };
                CriterionResult {
                    id,
                    name: name.to_string(),
                    pass,
                    detail,
                    elapsed_ms: elapsed.as_millis(),
                    budget_ms: budget.as_millis(),
                }
            })
            .collect();
        let all_pass = criteria.iter().all(|c| c.pass);
        SelftestReport { seed: self.seed, criteria, all_pass }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn rank_one(&self) -> (bool, String) {
        let fs = ["6*x^2 + 5", "x^2", "x^3 - x", "x^5 + 2*x^2 - 1"];
        for fs in fs {
            let f = parse_uni(fs).expect("literal");
            for m in [1, 3, 5, 7] {
                let basis = match solve_commutant(&f, m, None) {
                    Ok(b) => b,
                    Err(e) => return (false, format!("f = {fs}, M = {m}: {e}")),
                };
                let want = expected_dimension(m as usize);
                if basis.dimension() != want {
                    return (false, format!("f = {fs}, M = {m}: dimension {} ≠ {want}", basis.dimension()));
                }
                if let Some(g) = basis.basis.iter().find(|g| decompose_in_h(&f, g).is_err()) {
                    return (false, format!("f = {fs}, M = {m}: {g} is not in K[H]·δ_f"));
                }
            }
        }
        (true, "16 (f, M) pairs".into())
    }

    fn negative_control(&self) -> (bool, String) {
        let f = UniPoly::x();
        let basis = match solve_commutant(&f, 1, None) {
            Ok(b) => b,
            Err(e) => return (false, e.to_string()),
        };
        let outside = basis.basis.iter().filter(|g| decompose_in_h(&f, g).is_err()).count();
        if outside == 0 {
            return (false, "every element of the f = x commutant lies in K[H]·δ_f".into());
        }
        let grid = linear_grid(200, self.seed);
        for co in &grid {
            let d = co.to_derivation();
            match companion_for_linear(&d) {
                Ok(r) if d.commutes_with(&r.delta) && !r.determinant().is_zero() => {}
                Ok(r) => return (false, format!("companion {} for {d} fails", r.delta)),
                Err(e) => return (false, format!("{d}: {e}")),
            }
        }
        (true, format!("{outside} of {} basis elements outside K[H]·δ_x; 200 affine companions", basis.dimension()))
    }

    fn parity_lemmas(&self) -> (bool, String) {
        let mut total = 0;
        for fs in ["x^2", "x^3"] {
            let f = parse_uni(fs).expect("literal");
            let report = match check_lemma_suite(&f, 8) {
                Ok(r) => r,
                Err(e) => return (false, e.to_string()),
            };
            if let Some(c) = report.checks.iter().find(|c| !c.pass) {
                return (false, format!("f = {fs}: ({}){} {} failed: {}", c.kind, c.m, c.claim, c.detail));
            }
            let expected_kinds = (2..=8).map(|m| SystemKind::pair_for(m).len()).sum::<usize>();
            if report.checks.len() != expected_kinds {
                return (false, format!("f = {fs}: {} checks, expected {expected_kinds}", report.checks.len()));
            }
            total += report.checks.len();
        }
        (true, format!("{total} checks"))
    }

    fn obstruction_roots(&self) -> (bool, String) {
        for m in [3, 5, 7, 9, 11] {
            let ob = match (self.obstruction)(m) {
                Ok(ob) => ob,
                Err(e) => return (false, format!("m = {m}: {e}")),
            };
            if m == 3 && ob.p != UniPoly::from_ints(&[-6, 4, 2]) {
                return (false, format!("P_3 = {} ≠ 2X^2 + 4X - 6", ob.p.format_in("X")));
            }
            let report = match report_for(&ob) {
                Ok(r) => r,
                Err(e) => return (false, format!("m = {m}: {e}")),
            };
            if !report.passed() {
                return (
                    false,
                    format!(
                        "m = {m}: roots {:?} vs expected {:?}, P(-1) = {}",
                        report.roots.iter().map(|r| &r.root).collect::<Vec<_>>(),
                        report.expected,
                        report.p_at_minus_one
                    ),
                );
            }
        }
        (true, "m = 3, 5, 7, 9, 11".into())
    }

    fn laurent_family(&self) -> (bool, String) {
        for k in 1..=5u32 {
            for a_top in [rational::int(1), rational::int(-2), rational::rat(7, 3)] {
                let fam = match build_family(k, &a_top) {
                    Ok(f) => f,
                    Err(e) => return (false, format!("k = {k}: {e}")),
                };
                if !fam.commutes() || !fam.ratio_identity_holds() {
                    return (false, format!("k = {k}, a_top = {}", rational::format(&a_top)));
                }
            }
            let r = first_integral(k).expect("k ≥ 1");
            if !alpha(k).apply(&r).map(|v| v.is_zero()).unwrap_or(false) {
                return (false, format!("α(r) ≠ 0 for k = {k}"));
            }
        }
        let mut count = 0;
        for m in (3..=11).step_by(2) {
            for k in 1..=((m - 1) / 2) as u32 {
                let w = match pm_witness(m, k) {
                    Ok(w) => w,
                    Err(e) => return (false, format!("m = {m}, k = {k}: {e}")),
                };
                if !w.commutes() || w.witness.act_y.ycoeff(m).is_zero() {
                    return (false, format!("witness m = {m}, k = {k}"));
                }
                count += 1;
            }
        }
        (true, format!("15 families, {count} witnesses"))
    }

    fn classical_formula(&self) -> (bool, String) {
        let fx = example_fixture();
        let d64x = fx.d.act_x.to_f64_evaluator();
        let d64y = fx.d.act_y.to_f64_evaluator();
        let tr = rk4(|x, y| (d64x.eval(x, y), d64y.eval(x, y)), 0.0, 1.0, 1.0, 10_000);
        let traj_err = tr
            .points
            .iter()
            .map(|&(t, x, y)| (x - t.tan()).abs().max((y - t.cos().powi(2)).abs()))
            .fold(0.0, f64::max);
        let reference = |t: f64| fx.solution(0.0, 1.0, t);
        let zero = Rational::zero();
        let one = rational::int(1);
        match rectification_defect_with_reference(&fx.d, &fx.delta, &zero, &one, 1.0, 10_000, Some(&reference)) {
            Ok(r) => {
                let pass = traj_err < 1e-6 && r.max_defect < 1e-6;
                (pass, format!("trajectory error {traj_err:.2e}, max defect {:.2e}", r.max_defect))
            }
            Err(e) => (false, e.to_string()),
        }
    }

    fn calculus_kernel(&self) -> (bool, String) {
        let mut rng = self.rng(7);
        for case in 0..200 {
            let p = random_bipoly(&mut rng, 3);
            let q = random_bipoly(&mut rng, 3);
            let d1 = random_derivation(&mut rng);
            let d2 = random_derivation(&mut rng);
            let d3 = random_derivation(&mut rng);
            if d1.apply(&(&p * &q)) != &(&d1.apply(&p) * &q) + &(&p * &d1.apply(&q)) {
                return (false, format!("Leibniz fails at case {case}"));
            }
            let jacobi = d1
                .bracket(&d2)
                .bracket(&d3)
                .add(&d2.bracket(&d3).bracket(&d1))
                .add(&d3.bracket(&d1).bracket(&d2));
            if !jacobi.is_zero() {
                return (false, format!("Jacobi fails at case {case}"));
            }
            if p.integrate_dx().dx() != p {
                return (false, format!("∂x∫dx fails at case {case}"));
            }
            let u = random_unipoly(&mut rng, 0, 5);
            if u.integrate().derivative() != u {
                return (false, format!("(∫u)' fails at case {case}"));
            }
        }
        for case in 0..50 {
            let f = random_unipoly(&mut rng, 0, 6);
            let delta = newton_derivation(&f);
            if !delta.apply(&hamiltonian(&f)).is_zero() || !delta.divergence().is_zero() {
                return (false, format!("δ_f(H) or div δ_f nonzero at case {case}, f = {f}"));
            }
        }
        (true, "200 identity cases, 50 Newton fields".into())
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rational::rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_unipoly(rng: &mut ChaCha8Rng, min_deg: usize, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut coeffs: Vec<Rational> = (0..=deg).map(|_| random_rational(rng)).collect();
    if coeffs[deg].is_zero() {
        coeffs[deg] = rational::int(1);
    }
    UniPoly::new(coeffs)
}

pub fn random_bipoly(rng: &mut ChaCha8Rng, max_deg: usize) -> BiPoly {
    let ydeg = rng.gen_range(0..=max_deg);
    BiPoly::new((0..=ydeg).map(|_| random_unipoly(rng, 0, max_deg)).collect())
}

fn random_derivation(rng: &mut ChaCha8Rng) -> PlanarDerivation {
    PlanarDerivation::new(random_bipoly(rng, 2), random_bipoly(rng, 2))
}
