//! The commutant of `δ_f` up to a bound on the `y`-degree.
//!
//! Writing `γ(x) = Σ c_i(x) y^i`, `γ(y) = Σ d_i(x) y^i` with `i ≤ M` and each
//! `c_i, d_i` of `x`-degree at most `xcap`, the bracket `[δ_f, γ]` is linear in
//! the coefficients of the `c_i, d_i`. Equating the coefficient of every
//! `x^j y^i` in both components to zero gives a sparse linear system over ℚ
//! whose kernel is the truncated commutant.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{rational, BiPoly, Degree, Rational, UniPoly};
use crate::derivation::{hamiltonian, newton_derivation, DerivationJson, PlanarDerivation};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};

/// Which component of `γ` an unknown belongs to: `c_i` lives in `γ(x)`,
/// `d_i` in `γ(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    C,
    D,
}

/// The coefficient of `x^xexp` in `c_yexp` or `d_yexp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub comp: Component,
    pub yexp: usize,
    pub xexp: usize,
}

impl Unknown {
    /// Parity class: `I` holds odd `c_i` and even `d_i`, `II` the rest.
    pub fn class(&self) -> ParityClass {
        match (self.comp, self.yexp % 2) {
            (Component::C, 1) | (Component::D, 0) => ParityClass::I,
            _ => ParityClass::II,
        }
    }

    fn derivation(&self) -> PlanarDerivation {
        let m = BiPoly::monomial(Rational::one(), self.xexp, self.yexp);
        match self.comp {
            Component::C => PlanarDerivation::new(m, BiPoly::zero()),
            Component::D => PlanarDerivation::new(BiPoly::zero(), m),
        }
    }
}

/// The two independent halves of the coefficient system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ParityClass {
    I,
    II,
}

/// Row label: coefficient of `x^xexp y^yexp` in component `comp` of the bracket.
pub type RowKey = (Component, usize, usize);

/// The coefficient-matching system of `[δ_f, γ] = 0`.
#[derive(Debug, Clone)]
pub struct CoefficientSystem {
    pub max_deg_y: usize,
    pub xcap: usize,
    /// Column `k` is `columns[k]`; the order is (`y`-degree desc, `c` before
    /// `d`, `x`-degree desc).
    pub columns: Vec<Unknown>,
    pub rows: BTreeMap<RowKey, SparseRow>,
}

impl CoefficientSystem {
    pub fn build(f: &UniPoly, max_deg_y: usize, xcap: usize) -> Self {
        let columns = column_order(max_deg_y, xcap);
        let delta = newton_derivation(f);
        let mut rows: BTreeMap<RowKey, SparseRow> = BTreeMap::new();
        for (col, unknown) in columns.iter().enumerate() {
            let br = delta.bracket(&unknown.derivation());
            for (comp, poly) in [(Component::C, &br.act_x), (Component::D, &br.act_y)] {
                for (c, i, j) in poly.terms() {
                    rows.entry((comp, j, i)).or_default().insert(col, c.clone());
                }
            }
        }
        CoefficientSystem { max_deg_y, xcap, columns, rows }
    }

    pub fn column_index(&self, u: &Unknown) -> Option<usize> {
        self.columns.iter().position(|c| c == u)
    }

    /// Reassembles a kernel vector as a derivation.
    pub fn to_derivation(&self, v: &SparseRow) -> PlanarDerivation {
        let mut cx: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        let mut dy: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (&col, val) in v {
            let u = self.columns[col];
            let target = match u.comp {
                Component::C => &mut cx,
                Component::D => &mut dy,
            };
            let coeffs = target.entry(u.yexp).or_insert_with(|| vec![Rational::zero(); self.xcap + 1]);
            coeffs[u.xexp] = val.clone();
        }
        let assemble = |m: BTreeMap<usize, Vec<Rational>>| {
            let mut ys = vec![UniPoly::zero(); self.max_deg_y + 1];
            for (i, coeffs) in m {
                ys[i] = UniPoly::new(coeffs);
            }
            BiPoly::new(ys)
        };
        PlanarDerivation::new(assemble(cx), assemble(dy))
    }

    /// Kernel basis restricted to one parity class, canonical echelon form.
    pub fn kernel_of_class(&self, class: ParityClass) -> Vec<SparseRow> {
        let ncols = self.columns.len();
        let mask: Vec<bool> = self.columns.iter().map(|u| u.class() == class).collect();
        let rows = self
            .rows
            .values()
            .filter(|r| r.keys().next().is_some_and(|c| mask[*c]))
            .cloned();
        // Columns of the other class are pinned to zero by identity rows.
        let pins = (0..ncols)
            .filter(|c| !mask[*c])
            .map(|c| SparseRow::from([(c, Rational::one())]));
        linalg::nullspace(rows.chain(pins), ncols)
    }
}

fn column_order(max_deg_y: usize, xcap: usize) -> Vec<Unknown> {
    let mut cols = Vec::with_capacity(2 * (max_deg_y + 1) * (xcap + 1));
    for yexp in (0..=max_deg_y).rev() {
        for comp in [Component::C, Component::D] {
            for xexp in (0..=xcap).rev() {
                cols.push(Unknown { comp, yexp, xexp });
            }
        }
    }
    cols
}

/// `ceil((M+1)/2)·(N+1) + 1` with `N = deg f`.
pub fn default_xcap(f: &UniPoly, max_deg_y: usize) -> usize {
    let n = f.degree().finite().unwrap_or(0).max(0) as usize;
    (max_deg_y + 1).div_ceil(2) * (n + 1) + 1
}

/// `|basis|` predicted for `deg f ≥ 2`: the number of `k ≥ 0` with `2k + 1 ≤ M`.
pub fn expected_dimension(max_deg_y: usize) -> usize {
    max_deg_y.div_ceil(2)
}

#[derive(Debug, Clone)]
pub struct CommutantBasis {
    pub f: UniPoly,
    pub max_deg_y: usize,
    pub xcap: usize,
    pub basis: Vec<PlanarDerivation>,
}

impl CommutantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// A canonical `K`-basis of `{γ : [δ_f, γ] = 0, deg_y γ ≤ M}` with coefficient
/// degrees capped at `xcap` (default [`default_xcap`]).
pub fn solve_commutant(f: &UniPoly, max_deg_y: i64, xcap: Option<usize>) -> Result<CommutantBasis> {
    if max_deg_y < 0 {
        return Err(Error::invalid(format!("max y-degree must be ≥ 0, got {max_deg_y}")));
    }
    if f.is_zero() {
        return Err(Error::invalid("f must be nonzero"));
    }
    let m = max_deg_y as usize;
    let xcap = xcap.unwrap_or_else(|| default_xcap(f, m));
    let system = CoefficientSystem::build(f, m, xcap);
    let (first, second) = rayon::join(
        || system.kernel_of_class(ParityClass::I),
        || system.kernel_of_class(ParityClass::II),
    );
    let mut vectors: Vec<SparseRow> = first.into_iter().chain(second).collect();
    vectors.sort_by_key(|v| *v.keys().next().expect("nonzero kernel vector"));
    let basis = vectors.iter().map(|v| system.to_derivation(v)).collect();
    Ok(CommutantBasis { f: f.clone(), max_deg_y: m, xcap, basis })
}

/// `q ∈ K[H]` with `γ = q·δ_f`; `q_coeffs[k]` multiplies `H^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HDecomposition {
    pub q_coeffs: Vec<Rational>,
}

impl HDecomposition {
    /// `q` as a polynomial in `x, y`.
    pub fn q(&self, f: &UniPoly) -> BiPoly {
        let h = hamiltonian(f);
        let mut acc = BiPoly::zero();
        let mut power = BiPoly::one();
        for c in &self.q_coeffs {
            acc = &acc + &power.scale(c);
            power = &power * &h;
        }
        acc
    }

    pub fn reconstruct(&self, f: &UniPoly) -> PlanarDerivation {
        newton_derivation(f).scale_by(&self.q(f))
    }

    pub fn as_h_polynomial(&self) -> UniPoly {
        UniPoly::new(self.q_coeffs.clone())
    }
}

impl std::fmt::Display for HDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.as_h_polynomial().format_in("H"))
    }
}

/// Writes `γ = q(H)·δ_f` by peeling leading terms of `q = γ(x)/y`, or reports
/// the step at which `γ` fails to be such a multiple.
pub fn decompose_in_h(f: &UniPoly, gamma: &PlanarDerivation) -> Result<HDecomposition> {
    let not_multiple = |msg: String| Error::NotAMultiple(msg);
    let q_full = gamma
        .act_x
        .exact_div(&BiPoly::y())
        .map_err(|_| not_multiple(format!("γ(x) = {} is not divisible by y", gamma.act_x)))?;
    if q_full.mul_uni(f) != gamma.act_y {
        return Err(not_multiple(format!(
            "q·f ≠ γ(y) for q = γ(x)/y = {q_full}"
        )));
    }
    let h = hamiltonian(f);
    let mut q = q_full.clone();
    let mut coeffs: Vec<Rational> = Vec::new();
    while !q.is_zero() {
        let deg = q.deg_y().finite().expect("nonzero") as usize;
        if deg % 2 == 1 {
            return Err(not_multiple(format!("remainder {q} has odd y-degree {deg}")));
        }
        let lead = q.ycoeff(deg);
        if !lead.is_constant() {
            return Err(not_multiple(format!(
                "remainder {q} has non-constant leading coefficient {lead}"
            )));
        }
        let lambda = lead.coeff(0);
        let s = deg / 2;
        if coeffs.len() <= s {
            coeffs.resize(s + 1, Rational::zero());
        }
        coeffs[s] = lambda.clone();
        q = &q - &h.pow(s as u32).scale(&lambda);
    }
    let decomposition = HDecomposition { q_coeffs: UniPoly::new(coeffs).coeffs().to_vec() };
    debug_assert_eq!(decomposition.q(f), q_full);
    Ok(decomposition)
}

#[derive(Debug, Clone)]
pub struct CertificateEntry {
    pub derivation: PlanarDerivation,
    pub decomposition: Result<HDecomposition>,
}

/// Outcome of checking that every commuting derivation up to `y`-degree `M`
/// lies in `K[H]·δ_f`.
#[derive(Debug, Clone)]
pub struct RankOneCertificate {
    pub f: UniPoly,
    pub max_deg_y: usize,
    pub xcap: usize,
    pub expected_dimension: usize,
    pub entries: Vec<CertificateEntry>,
}

impl RankOneCertificate {
    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn passed(&self) -> bool {
        self.dimension() == self.expected_dimension
            && self.entries.iter().all(|e| e.decomposition.is_ok())
    }

    /// First element that is not a `K[H]`-multiple of `δ_f`, if any.
    pub fn counterexample(&self) -> Option<&PlanarDerivation> {
        self.entries
            .iter()
            .find(|e| e.decomposition.is_err())
            .map(|e| &e.derivation)
    }

    pub fn to_json(&self) -> CommutantJson {
        CommutantJson {
            f: self.f.to_string(),
            hamiltonian: hamiltonian(&self.f).to_string(),
            max_deg_y: self.max_deg_y,
            x_cap: self.xcap,
            dimension: self.dimension(),
            expected_dimension: Some(self.expected_dimension),
            verdict: Some(verdict_str(self.passed()).to_string()),
            basis: self.entries.iter().map(BasisEntryJson::from_entry).collect(),
        }
    }
}

pub fn verdict_str(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs [`solve_commutant`] and decomposes every basis element in `K[H]`.
pub fn certify_rank_one(f: &UniPoly, max_deg_y: i64) -> Result<RankOneCertificate> {
    if f.degree() < 2 {
        return Err(Error::HypothesisViolation(format!(
            "deg f = {} < 2; the commutant has rank > 1",
            f.degree()
        )));
    }
    let basis = solve_commutant(f, max_deg_y, None)?;
    Ok(certificate_from_basis(basis))
}

pub fn certificate_from_basis(basis: CommutantBasis) -> RankOneCertificate {
    let entries = basis
        .basis
        .iter()
        .map(|g| CertificateEntry {
            derivation: g.clone(),
            decomposition: decompose_in_h(&basis.f, g),
        })
        .collect();
    RankOneCertificate {
        expected_dimension: expected_dimension(basis.max_deg_y),
        f: basis.f,
        max_deg_y: basis.max_deg_y,
        xcap: basis.xcap,
        entries,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntryJson {
    pub derivation: DerivationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_coeffs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_a_multiple: Option<String>,
}

impl BasisEntryJson {
    fn from_entry(e: &CertificateEntry) -> Self {
        match &e.decomposition {
            Ok(h) => BasisEntryJson {
                derivation: e.derivation.to_json(),
                q_coeffs: Some(h.q_coeffs.iter().map(rational::format).collect()),
                q: Some(h.to_string()),
                not_a_multiple: None,
            },
            Err(err) => BasisEntryJson {
                derivation: e.derivation.to_json(),
                q_coeffs: None,
                q: None,
                not_a_multiple: Some(err.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutantJson {
    pub f: String,
    pub hamiltonian: String,
    pub max_deg_y: usize,
    pub x_cap: usize,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub basis: Vec<BasisEntryJson>,
}

impl CommutantBasis {
    pub fn to_json(&self) -> CommutantJson {
        let mut json = certificate_from_basis(self.clone()).to_json();
        json.expected_dimension = None;
        json.verdict = None;
        json
    }
}

/// `true` when the solver's degree bound matters: the top `x`-degree slot of
/// some basis coefficient is occupied.
pub fn touches_cap(basis: &CommutantBasis) -> bool {
    basis.basis.iter().any(|g| {
        g.act_x.deg_x().max(g.act_y.deg_x()) >= Degree::Finite(basis.xcap as i64)
    })
}
