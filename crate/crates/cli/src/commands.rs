use std::collections::BTreeMap;
use std::io::Write;

use newton_commutant::algebra::{parse_bi, parse_uni, rational, Rational, UniPoly};
use newton_commutant::commutant::{certify_rank_one, decompose_in_h, solve_commutant, verdict_str};
use newton_commutant::derivation::PlanarDerivation;
use newton_commutant::integrability::{companion_for_linear, rectification_defect};
use newton_commutant::laurent_family::{build_family, pm_witness, pm_witness_linear};
use newton_commutant::obstruction::certify_obstruction;
use newton_commutant::parity::{build_system, check_lemma_suite, run_lemma_checks, solve_system, SystemKind};
use newton_commutant::selftest::Selftest;
use newton_commutant::Error;
use serde::Serialize;

use crate::{Cli, Command};

pub const OK: u8 = 0;
pub const FAIL: u8 = 1;
pub const USAGE: u8 = 2;

/// Sizes the global pool from `COMMUTANT_THREADS` when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("COMMUTANT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("COMMUTANT_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("COMMUTANT_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::NotAMultiple(_)
        | Error::NotDivisible
        | Error::SingularDelta { .. }
        | Error::DegenerateRecurrence { .. } => FAIL,
        Error::Syntax { .. } | Error::RingMismatch(_) | Error::InvalidInput(_) | Error::HypothesisViolation(_) => {
            USAGE
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    let body = if json { serde_json::to_string_pretty(value).expect("serializable report") } else { text() };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn status(pass: bool) -> u8 {
    if pass {
        OK
    } else {
        FAIL
    }
}

pub fn run(cli: Cli) -> u8 {
    match dispatch(cli.json, cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn uni(text: &str) -> Result<UniPoly, Error> {
    parse_uni(text)
}

fn derivation(dx: &str, dy: &str) -> Result<PlanarDerivation, Error> {
    Ok(PlanarDerivation::new(parse_bi(dx)?, parse_bi(dy)?))
}

fn dispatch(json: bool, command: Command) -> Result<u8, Error> {
    match command {
        Command::Commutant { f, max_deg_y, x_cap } => {
            let basis = solve_commutant(&uni(&f)?, max_deg_y, x_cap)?;
            emit(json, &basis.to_json(), || {
                let mut out = format!(
                    "f = {}, M = {}, x-cap = {}\ndimension: {}",
                    basis.f,
                    basis.max_deg_y,
                    basis.xcap,
                    basis.dimension()
                );
                for (i, g) in basis.basis.iter().enumerate() {
                    let q = decompose_in_h(&basis.f, g)
                        .map(|h| format!("q = {h}"))
                        .unwrap_or_else(|_| "not in K[H]·δ_f".to_string());
                    out.push_str(&format!("\n[{i}] {g}    {q}"));
                }
                out
            });
            Ok(OK)
        }
        Command::HDecompose { f, gamma_dx, gamma_dy } => {
            let f = uni(&f)?;
            let gamma = derivation(&gamma_dx, &gamma_dy)?;
            let dec = decompose_in_h(&f, &gamma)?;
            #[derive(Serialize)]
            struct Out {
                q_coeffs: Vec<String>,
                q: String,
            }
            let out = Out { q_coeffs: dec.q_coeffs.iter().map(rational::format).collect(), q: dec.to_string() };
            emit(json, &out, || format!("q = {dec}"));
            Ok(OK)
        }
        Command::Certify { f, max_deg_y } => {
            let cert = certify_rank_one(&uni(&f)?, max_deg_y)?;
            emit(json, &cert.to_json(), || {
                let mut out = format!(
                    "f = {}, H = {}\ndimension: {} (expected {})",
                    cert.f,
                    newton_commutant::derivation::hamiltonian(&cert.f),
                    cert.dimension(),
                    cert.expected_dimension
                );
                for e in &cert.entries {
                    match &e.decomposition {
                        Ok(h) => out.push_str(&format!("\n  q = {h}    {}", e.derivation)),
                        Err(err) => out.push_str(&format!("\n  FAIL {}: {err}", e.derivation)),
                    }
                }
                out.push('\n');
                out.push_str(verdict_str(cert.passed()));
                out
            });
            Ok(status(cert.passed()))
        }
        Command::Parity { kind, m, f, x_cap } => {
            let kind: SystemKind = kind.parse()?;
            let sys = build_system(kind, m, &uni(&f)?)?;
            let space = solve_system(&sys, x_cap);
            #[derive(Serialize)]
            struct Out {
                equations: Vec<String>,
                #[serde(flatten)]
                solution: newton_commutant::parity::SolutionJson,
            }
            let out = Out {
                equations: sys.equations.iter().map(|e| e.to_string()).collect(),
                solution: space.to_json(),
            };
            emit(json, &out, || {
                let mut text = sys.to_string();
                text.push_str(&format!("dimension: {}\nforced: {{", space.dimension()));
                text.push_str(&space.forced.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "));
                text.push('}');
                for (i, a) in space.basis.iter().enumerate() {
                    let parts: Vec<String> = a.iter().map(|(v, p)| format!("{v} = {p}")).collect();
                    text.push_str(&format!("\n[{i}] {}", parts.join(", ")));
                }
                text
            });
            Ok(OK)
        }
        Command::Lemmas { f, m_max, allow_degenerate } => {
            let f = uni(&f)?;
            let report = if allow_degenerate { run_lemma_checks(&f, m_max) } else { check_lemma_suite(&f, m_max)? };
            emit(json, &report, || report.to_string().trim_end().to_string());
            Ok(status(report.all_pass()))
        }
        Command::Pm { m } => {
            let report = certify_obstruction(m)?;
            emit(json, &report, || report.to_string());
            Ok(status(report.passed()))
        }
        Command::PmWitness { m, k } => {
            let w = match k {
                Some(k) => pm_witness(m, k)?,
                None => pm_witness_linear(m)?,
            };
            emit(json, &w.to_json(), || {
                format!(
                    "alpha = {}\nwitness = {}\nN = deg h = {}\ncommutes: {}\nshape: {}\nP_{m}(N) = 0: {}\n{}",
                    w.alpha,
                    w.witness,
                    rational::format(&w.h_degree()),
                    w.commutes(),
                    w.shape_holds(),
                    w.p_vanishes_at_degree(),
                    verdict_str(w.passed())
                )
            });
            Ok(status(w.passed()))
        }
        Command::LaurentFamily { k, a_top } => {
            let a_top: Rational = rational::parse(&a_top)?;
            let fam = build_family(k, &a_top)?;
            let out = fam.to_json();
            let pass = out.commutes && out.ratio_identity && out.alpha_kills_r;
            emit(json, &out, || {
                let a: BTreeMap<usize, String> = fam.a.iter().map(rational::format).enumerate().collect();
                let coeffs: Vec<String> = a.iter().map(|(i, v)| format!("a_{i} = {v}")).collect();
                format!(
                    "t = {}\n{}\nalpha = {}\nbeta = {}\nr = {}\n[alpha, beta] = 0: {}\nratio identity: {}\nalpha(r) = 0: {}\n{}",
                    fam.t(),
                    coeffs.join(", "),
                    fam.alpha,
                    fam.beta,
                    out.first_integral,
                    out.commutes,
                    out.ratio_identity,
                    out.alpha_kills_r,
                    verdict_str(pass)
                )
            });
            Ok(status(pass))
        }
        Command::Linearize { dx, dy } => {
            let r = companion_for_linear(&derivation(&dx, &dy)?)?;
            emit(json, &r.to_json(), || {
                let mut out = format!("d = {}\n{}\ndelta = {}", r.d, r.case, r.delta);
                if let Some((x0, y0)) = &r.shift {
                    out.push_str(&format!("\nshift: u = x - ({}), v = y - ({})", rational::format(x0), rational::format(y0)));
                }
                out.push_str(&format!("\nDelta = {}", r.determinant()));
                out
            });
            Ok(OK)
        }
        Command::FlowCheck { dx, dy, gx, gy, x0, y0, t_end, steps } => {
            let d = derivation(&dx, &dy)?;
            let delta = derivation(&gx, &gy)?;
            let report = rectification_defect(&d, &delta, &rational::parse(&x0)?, &rational::parse(&y0)?, t_end, steps)?;
            emit(json, &report, || report.to_string());
            Ok(status(report.passed))
        }
        Command::Selftest { seed } => {
            let report = Selftest::new(seed).run();
            emit(json, &report, || {
                format!("{}{}", report, if report.all_pass { "all criteria PASS" } else { "some criteria FAIL" })
            });
            Ok(status(report.all_pass))
        }
    }
}
