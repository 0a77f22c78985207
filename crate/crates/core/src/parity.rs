//! The four parity systems `(Io)_m`, `(IIo)_m`, `(Ie)_m`, `(IIe)_m`.
//!
//! Equation `e_k` is the coefficient of `y^k` in one component of
//! `[δ_f, γ] = 0`: the `x`-component reads
//! `c_{k-1}' + (k+1) f c_{k+1} = d_k` and the `y`-component reads
//! `d_{k-1}' + (k+1) f d_{k+1} = f' c_k`, with indices above `m` dropped.
//! Class I systems keep the `x`-rows at even `k` and the `y`-rows at odd `k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rational, BiPoly, Rational, UniPoly};
use crate::commutant::{
    decompose_in_h, default_xcap, expected_dimension, verdict_str, Component, ParityClass, RowKey,
    Unknown,
};
use crate::derivation::PlanarDerivation;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SystemKind {
    Io,
    IIo,
    Ie,
    IIe,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] = [SystemKind::Io, SystemKind::IIo, SystemKind::Ie, SystemKind::IIe];

    pub fn class(self) -> ParityClass {
        match self {
            SystemKind::Io | SystemKind::Ie => ParityClass::I,
            SystemKind::IIo | SystemKind::IIe => ParityClass::II,
        }
    }

    /// Whether the kind is meant for odd `m`.
    pub fn is_odd(self) -> bool {
        matches!(self, SystemKind::Io | SystemKind::IIo)
    }

    /// The two kinds that together make up the full system for `m`.
    pub fn pair_for(m: usize) -> [SystemKind; 2] {
        if m % 2 == 1 {
            [SystemKind::Io, SystemKind::IIo]
        } else {
            [SystemKind::Ie, SystemKind::IIe]
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SystemKind::Io => "Io",
            SystemKind::IIo => "IIo",
            SystemKind::Ie => "Ie",
            SystemKind::IIe => "IIe",
        };
        f.write_str(s)
    }
}

impl FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Io" => Ok(SystemKind::Io),
            "IIo" => Ok(SystemKind::IIo),
            "Ie" => Ok(SystemKind::Ie),
            "IIe" => Ok(SystemKind::IIe),
            other => Err(Error::invalid(format!("unknown system kind {other:?}"))),
        }
    }
}

/// One of the coefficient functions `c_i` or `d_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub comp: Component,
    pub index: usize,
}

impl Var {
    pub fn c(index: usize) -> Self {
        Var { comp: Component::C, index }
    }

    pub fn d(index: usize) -> Self {
        Var { comp: Component::D, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.comp {
            Component::C => 'c',
            Component::D => 'd',
        };
        write!(f, "{letter}_{}", self.index)
    }
}

/// Polynomial factor multiplying a variable in a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    One,
    F,
    FPrime,
}

/// `coeff · factor · var` or `coeff · factor · var'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub factor: Factor,
    pub var: Var,
    pub derivative: bool,
}

impl Term {
    fn eval(&self, value: &UniPoly, f: &UniPoly, fp: &UniPoly) -> UniPoly {
        let base = if self.derivative { value.derivative() } else { value.clone() };
        let base = match self.factor {
            Factor::One => base,
            Factor::F => f * &base,
            Factor::FPrime => fp * &base,
        };
        base.scale(&rational::int(self.coeff))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{}", self.coeff)?;
        }
        match self.factor {
            Factor::One => {}
            Factor::F => f.write_str("f")?,
            Factor::FPrime => f.write_str("f'")?,
        }
        write!(f, "{}", self.var)?;
        if self.derivative {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// `e_label: lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub label: usize,
    /// Component of the bracket this equation is read from.
    pub comp: Component,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl Equation {
    /// `lhs - rhs` under an assignment; absent variables are zero.
    pub fn residual(&self, values: &BTreeMap<Var, UniPoly>, f: &UniPoly) -> UniPoly {
        let fp = f.derivative();
        let zero = UniPoly::zero();
        let side = |terms: &[Term]| {
            terms.iter().fold(UniPoly::zero(), |acc, t| {
                &acc + &t.eval(values.get(&t.var).unwrap_or(&zero), f, &fp)
            })
        };
        &side(&self.lhs) - &side(&self.rhs)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lhs.iter().chain(&self.rhs).map(|t| t.var)
    }
}

fn join_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.iter().map(Term::to_string).collect::<Vec<_>>().join(" + ")
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{}: {} = {}", self.label, join_terms(&self.lhs), join_terms(&self.rhs))
    }
}

#[derive(Debug, Clone)]
pub struct ParitySystem {
    pub kind: SystemKind,
    pub m: usize,
    pub f: UniPoly,
    /// `e_{m+1}` first, `e_0` last.
    pub equations: Vec<Equation>,
}

/// Materializes the system of the given kind; `m ≥ 2`.
pub fn build_system(kind: SystemKind, m: usize, f: &UniPoly) -> Result<ParitySystem> {
    if m < 2 {
        return Err(Error::invalid(format!("parity systems need m ≥ 2, got {m}")));
    }
    let x_rows_even = kind.class() == ParityClass::I;
    let equations = (0..=m + 1)
        .rev()
        .map(|k| {
            let x_row = (k % 2 == 0) == x_rows_even;
            equation(k, m, x_row)
        })
        .collect();
    Ok(ParitySystem { kind, m, f: f.clone(), equations })
}

fn equation(k: usize, m: usize, x_row: bool) -> Equation {
    type Ctor = fn(usize) -> Var;
    let (own, cross): (Ctor, Ctor) =
        if x_row { (Var::c, Var::d) } else { (Var::d, Var::c) };
    let mut lhs = Vec::new();
    if k >= 1 && k - 1 <= m {
        lhs.push(Term { coeff: 1, factor: Factor::One, var: own(k - 1), derivative: true });
    }
    if k < m {
        lhs.push(Term { coeff: (k + 1) as i64, factor: Factor::F, var: own(k + 1), derivative: false });
    }
    let mut rhs = Vec::new();
    if k <= m {
        let factor = if x_row { Factor::One } else { Factor::FPrime };
        rhs.push(Term { coeff: 1, factor, var: cross(k), derivative: false });
    }
    Equation {
        label: k,
        comp: if x_row { Component::C } else { Component::D },
        lhs,
        rhs,
    }
}

impl ParitySystem {
    /// The variables that occur, ordered by index desc with `c` before `d`.
    pub fn vars(&self) -> Vec<Var> {
        let set: BTreeSet<Var> = self.equations.iter().flat_map(|e| e.vars()).collect();
        let mut vars: Vec<Var> = set.into_iter().collect();
        vars.sort_by(|a, b| b.index.cmp(&a.index).then(a.comp.cmp(&b.comp)));
        vars
    }

    /// Coefficient rows keyed like the commutant system, columns by unknown.
    pub fn coefficient_rows(&self, xcap: usize) -> BTreeMap<RowKey, BTreeMap<Unknown, Rational>> {
        let fp = self.f.derivative();
        let mut rows: BTreeMap<RowKey, BTreeMap<Unknown, Rational>> = BTreeMap::new();
        for eq in &self.equations {
            for (sign, terms) in [(1, &eq.lhs), (-1, &eq.rhs)] {
                for t in terms.iter() {
                    for j in 0..=xcap {
                        let unknown = Unknown { comp: t.var.comp, yexp: t.var.index, xexp: j };
                        let poly = t.eval(&UniPoly::monomial(Rational::one(), j), &self.f, &fp);
                        for (i, c) in poly.coeffs().iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let entry = rows
                                .entry((eq.comp, eq.label, i))
                                .or_default()
                                .entry(unknown)
                                .or_insert_with(Rational::zero);
                            *entry += c * rational::int(sign);
                        }
                    }
                }
            }
        }
        for row in rows.values_mut() {
            row.retain(|_, v| !v.is_zero());
        }
        rows.retain(|_, r| !r.is_empty());
        rows
    }
}

impl fmt::Display for ParitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "({}){} with f = {}", self.kind, self.m, self.f)?;
        for e in &self.equations {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

pub type Assignment = BTreeMap<Var, UniPoly>;

#[derive(Debug, Clone)]
pub struct SolutionSpace {
    pub kind: SystemKind,
    pub m: usize,
    pub xcap: usize,
    pub basis: Vec<Assignment>,
    /// Variables that vanish in every solution.
    pub forced: BTreeSet<Var>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> SolutionJson {
        SolutionJson {
            kind: self.kind.to_string(),
            m: self.m,
            x_cap: self.xcap,
            dimension: self.dimension(),
            forced: self.forced.iter().map(Var::to_string).collect(),
            basis: self
                .basis
                .iter()
                .map(|a| a.iter().map(|(v, p)| (v.to_string(), p.to_string())).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionJson {
    pub kind: String,
    pub m: usize,
    pub x_cap: usize,
    pub dimension: usize,
    pub forced: Vec<String>,
    pub basis: Vec<BTreeMap<String, String>>,
}

/// Polynomial solutions with every variable of degree at most `xcap`.
pub fn solve_system(sys: &ParitySystem, xcap: Option<usize>) -> SolutionSpace {
    let xcap = xcap.unwrap_or_else(|| default_xcap(&sys.f, sys.m));
    let vars = sys.vars();
    let columns: Vec<Unknown> = vars
        .iter()
        .flat_map(|v| (0..=xcap).rev().map(move |j| Unknown { comp: v.comp, yexp: v.index, xexp: j }))
        .collect();
    let index: BTreeMap<Unknown, usize> = columns.iter().enumerate().map(|(k, u)| (*u, k)).collect();
    let rows = sys.coefficient_rows(xcap).into_values().map(|row| {
        row.into_iter().map(|(u, c)| (index[&u], c)).collect::<SparseRow>()
    });
    let kernel = linalg::nullspace(rows, columns.len());

    let basis: Vec<Assignment> = kernel
        .iter()
        .map(|v| {
            let mut coeffs: BTreeMap<Var, Vec<Rational>> = vars
                .iter()
                .map(|var| (*var, vec![Rational::zero(); xcap + 1]))
                .collect();
            for (&col, val) in v {
                let u = columns[col];
                coeffs.get_mut(&Var { comp: u.comp, index: u.yexp }).unwrap()[u.xexp] = val.clone();
            }
            coeffs
                .into_iter()
                .map(|(var, c)| (var, UniPoly::new(c)))
                .filter(|(_, p)| !p.is_zero())
                .collect()
        })
        .collect();
    let forced = vars
        .iter()
        .filter(|v| basis.iter().all(|a| !a.contains_key(v)))
        .copied()
        .collect();
    SolutionSpace { kind: sys.kind, m: sys.m, xcap, basis, forced }
}

/// The derivation `(Σ c_i y^i, Σ d_i y^i)` described by an assignment.
pub fn assignment_to_derivation(a: &Assignment) -> PlanarDerivation {
    let mut act_x = BiPoly::zero();
    let mut act_y = BiPoly::zero();
    for (var, p) in a {
        let term = BiPoly::times_y_pow(p.clone(), var.index);
        match var.comp {
            Component::C => act_x = &act_x + &term,
            Component::D => act_y = &act_y + &term,
        }
    }
    PlanarDerivation::new(act_x, act_y)
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub kind: SystemKind,
    pub m: usize,
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub f: String,
    pub m_max: usize,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, kind: SystemKind, m: usize) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.kind == kind && c.m == m)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} ({}){}: {} [{}]", verdict_str(c.pass), c.kind, c.m, c.claim, c.detail)?;
        }
        Ok(())
    }
}

/// Checks the parity lemmas for every `2 ≤ m ≤ m_max`; requires `deg f ≥ 2`.
pub fn check_lemma_suite(f: &UniPoly, m_max: usize) -> Result<LemmaReport> {
    if f.degree() < 2 {
        return Err(Error::HypothesisViolation(format!(
            "lemma suite needs deg f ≥ 2, got {}",
            f.degree()
        )));
    }
    Ok(run_lemma_checks(f, m_max))
}

/// Same checks as [`check_lemma_suite`] without the degree hypothesis.
pub fn run_lemma_checks(f: &UniPoly, m_max: usize) -> LemmaReport {
    let jobs: Vec<(SystemKind, usize)> = (2..=m_max)
        .flat_map(|m| SystemKind::pair_for(m).into_iter().map(move |k| (k, m)))
        .collect();
    let mut checks: Vec<LemmaCheck> = jobs.par_iter().map(|&(kind, m)| check_one(f, kind, m)).collect();
    checks.sort_by_key(|c| (c.m, c.kind));
    LemmaReport { f: f.to_string(), m_max, checks }
}

fn check_one(f: &UniPoly, kind: SystemKind, m: usize) -> LemmaCheck {
    let sys = build_system(kind, m, f).expect("m ≥ 2");
    let space = solve_system(&sys, None);
    let forced_check = |var: Var| {
        let pass = space.forced.contains(&var);
        LemmaCheck {
            kind,
            m,
            claim: format!("{var} = 0"),
            pass,
            detail: format!("dimension {}, forced {{{}}}", space.dimension(), list(&space.forced)),
        }
    };
    match kind {
        SystemKind::Io => {
            let want = expected_dimension(m);
            let failures: Vec<String> = space
                .basis
                .iter()
                .filter_map(|a| decompose_in_h(f, &assignment_to_derivation(a)).err())
                .map(|e| e.to_string())
                .collect();
            let pass = space.dimension() == want && failures.is_empty();
            let mut detail = format!("dimension {} (expected {want})", space.dimension());
            if let Some(first) = failures.first() {
                detail.push_str(&format!(", {} not in K[H]·δ_f: {first}", failures.len()));
            }
            LemmaCheck {
                kind,
                m,
                claim: format!("dim = {want}, solutions are q(H)·δ_f"),
                pass,
                detail,
            }
        }
        SystemKind::IIo | SystemKind::Ie => forced_check(Var::d(m)),
        SystemKind::IIe => forced_check(Var::c(m)),
    }
}

fn list(vars: &BTreeSet<Var>) -> String {
    vars.iter().map(Var::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_uni;
    use crate::commutant::CoefficientSystem;

    fn eqs(sys: &ParitySystem) -> Vec<String> {
        sys.equations.iter().map(Equation::to_string).collect()
    }

    #[test]
    fn io3_table() {
        let sys = build_system(SystemKind::Io, 3, &parse_uni("x^2").unwrap()).unwrap();
        assert_eq!(
            eqs(&sys),
            vec![
                "e_4: c_3' = 0",
                "e_3: d_2' = f'c_3",
                "e_2: c_1' + 3fc_3 = d_2",
                "e_1: d_0' + 2fd_2 = f'c_1",
                "e_0: fc_1 = d_0",
            ]
        );
    }

    #[test]
    fn even_tables() {
        let f = parse_uni("x^2").unwrap();
        let ie = build_system(SystemKind::Ie, 2, &f).unwrap();
        assert_eq!(
            eqs(&ie),
            vec!["e_3: d_2' = 0", "e_2: c_1' = d_2", "e_1: d_0' + 2fd_2 = f'c_1", "e_0: fc_1 = d_0"]
        );
        let iie = build_system(SystemKind::IIe, 2, &f).unwrap();
        assert_eq!(
            eqs(&iie),
            vec!["e_3: c_2' = 0", "e_2: d_1' = f'c_2", "e_1: c_0' + 2fc_2 = d_1", "e_0: fd_1 = f'c_0"]
        );
    }

    #[test]
    fn iio5_middle_rows() {
        let sys = build_system(SystemKind::IIo, 5, &parse_uni("x").unwrap()).unwrap();
        assert_eq!(sys.equations.len(), 7);
        assert_eq!(sys.equations[1].to_string(), "e_5: c_4' = d_5");
        assert_eq!(sys.equations[2].to_string(), "e_4: d_3' + 5fd_5 = f'c_4");
        assert_eq!(sys.equations[6].to_string(), "e_0: fd_1 = f'c_0");
    }

    #[test]
    fn small_m_rejected() {
        assert!(build_system(SystemKind::Io, 1, &UniPoly::x()).is_err());
    }

    #[test]
    fn union_matches_commutant_matrix() {
        for (fs, m) in [("x^2", 3usize), ("x^3 - x", 4), ("6*x^2 + 5", 5)] {
            let f = parse_uni(fs).unwrap();
            let xcap = default_xcap(&f, m);
            let mut union: BTreeMap<RowKey, BTreeMap<Unknown, Rational>> = BTreeMap::new();
            for kind in SystemKind::pair_for(m) {
                let rows = build_system(kind, m, &f).unwrap().coefficient_rows(xcap);
                for (k, r) in rows {
                    assert!(union.insert(k, r).is_none(), "row {k:?} in both systems");
                }
            }
            let full = CoefficientSystem::build(&f, m, xcap);
            let full_rows: BTreeMap<RowKey, BTreeMap<Unknown, Rational>> = full
                .rows
                .iter()
                .map(|(k, r)| (*k, r.iter().map(|(c, v)| (full.columns[*c], v.clone())).collect()))
                .collect();
            assert_eq!(union, full_rows, "f = {fs}, m = {m}");
        }
    }

    #[test]
    fn io3_dimension_two() {
        let sys = build_system(SystemKind::Io, 3, &parse_uni("x^2").unwrap()).unwrap();
        let space = solve_system(&sys, None);
        assert_eq!(space.dimension(), 2);
        for a in &space.basis {
            for e in &sys.equations {
                assert!(e.residual(a, &sys.f).is_zero());
            }
        }
    }

    #[test]
    fn forced_examples() {
        let ie = build_system(SystemKind::Ie, 4, &parse_uni("x^3").unwrap()).unwrap();
        assert!(solve_system(&ie, None).forced.contains(&Var::d(4)));
        let iie = build_system(SystemKind::IIe, 2, &parse_uni("x^2").unwrap()).unwrap();
        assert!(solve_system(&iie, None).forced.contains(&Var::c(2)));
    }

    #[test]
    fn recombined_low_degree() {
        let f = parse_uni("x^3 + 2").unwrap();
        let dims: usize = SystemKind::pair_for(3)
            .iter()
            .map(|k| solve_system(&build_system(*k, 3, &f).unwrap(), None).dimension())
            .sum();
        let commutant = crate::commutant::solve_commutant(&f, 3, None).unwrap();
        assert_eq!(dims, commutant.dimension());
    }

    #[test]
    fn suites() {
        let r = check_lemma_suite(&parse_uni("x^2").unwrap(), 6).unwrap();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.checks.len(), 10);
        let r = check_lemma_suite(&parse_uni("6*x^2 + 5").unwrap(), 8).unwrap();
        assert!(r.all_pass(), "{r}");
        let fx = parse_uni("x").unwrap();
        assert!(matches!(check_lemma_suite(&fx, 4), Err(Error::HypothesisViolation(_))));
        let r = run_lemma_checks(&fx, 4);
        assert!(!r.get(SystemKind::IIo, 3).unwrap().pass);
    }

    #[test]
    fn json() {
        let sys = build_system(SystemKind::IIe, 2, &parse_uni("x^2").unwrap()).unwrap();
        let v = serde_json::to_value(solve_system(&sys, None).to_json()).unwrap();
        assert_eq!(v["kind"], "IIe");
        assert!(v["forced"].as_array().unwrap().contains(&serde_json::json!("c_2")));
    }
}
