//! Explicit commuting pairs `(α, β)` over `K[x^(±1/t), y]` with `t = 2k - 1`,
//! and the derivations built from them whose `h`-degrees are the roots of
//! `P_m`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{rational, LaurentBiPoly, LaurentPoly, Rational};
use crate::commutant::verdict_str;
use crate::derivation::{DerivationJson, LaurentDerivation};
use crate::error::{Error, Result};
use crate::obstruction::build_obstruction;

#[derive(Debug, Clone)]
pub struct LaurentFamily {
    pub k: u32,
    /// `a[i]` is `a_i` for `0 ≤ i ≤ 2k + 1`.
    pub a: Vec<Rational>,
    pub alpha: LaurentDerivation,
    pub beta: LaurentDerivation,
}

/// `(2k + 1)/(2k - 1)`, the negated `x`-degree of `α(y)`.
fn exponent_ratio(k: u32) -> Rational {
    let k = i64::from(k);
    rational::rat(2 * k + 1, 2 * k - 1)
}

/// Runs the two interleaved recurrences from `a_{2k+1} = a_{2k} = a_top`.
pub fn coefficients(k: u32, a_top: &Rational) -> Result<Vec<Rational>> {
    if k < 1 {
        return Err(Error::invalid("k must be ≥ 1"));
    }
    if a_top.is_zero() {
        return Err(Error::invalid("a_top must be nonzero"));
    }
    let e = exponent_ratio(k);
    let one_minus_e = Rational::one() - &e;
    let k = k as usize;
    let mut a = vec![Rational::zero(); 2 * k + 2];
    a[2 * k + 1] = a_top.clone();
    a[2 * k] = a_top.clone();
    for l in 1..=k {
        let j = k - l;
        let lr = rational::int(l as i64);
        let odd_den = &one_minus_e * &lr;
        if odd_den.is_zero() {
            return Err(Error::DegenerateRecurrence { l: l as u32 });
        }
        a[2 * j + 1] = (-(&e * &a[2 * j + 2]) - rational::int(2 * j as i64 + 3) * &a[2 * j + 3]) / odd_den;
        let even_den = &one_minus_e * &lr + Rational::one();
        if even_den.is_zero() {
            return Err(Error::DegenerateRecurrence { l: l as u32 });
        }
        a[2 * j] = (&a[2 * j + 1] - rational::int(2 * j as i64 + 2) * &a[2 * j + 2]) / even_den;
    }
    Ok(a)
}

/// `α = (y, x^(-(2k+1)/(2k-1)))`.
pub fn alpha(k: u32) -> LaurentDerivation {
    let t = 2 * k - 1;
    let act_y = LaurentPoly::monomial(t, Rational::one(), -(2 * i64::from(k) + 1));
    LaurentDerivation::new(LaurentBiPoly::y(t), LaurentBiPoly::from_laurent(act_y))
        .expect("same t")
}

pub fn build_family(k: u32, a_top: &Rational) -> Result<LaurentFamily> {
    let a = coefficients(k, a_top)?;
    let t = 2 * k - 1;
    let ti = i64::from(t);
    let kk = k as usize;
    let mut bx = vec![LaurentPoly::zero(t); 2 * kk + 2];
    let mut by = vec![LaurentPoly::zero(t); 2 * kk + 2];
    for l in 0..=kk {
        let j = kk - l;
        let li = l as i64;
        bx[2 * j] = LaurentPoly::monomial(t, a[2 * j].clone(), ti - 2 * li);
        by[2 * j + 1] = LaurentPoly::monomial(t, a[2 * j + 1].clone(), -2 * li);
    }
    let beta = LaurentDerivation::new(LaurentBiPoly::new(t, bx)?, LaurentBiPoly::new(t, by)?)?;
    Ok(LaurentFamily { k, a, alpha: alpha(k), beta })
}

/// `r = y² + (2k - 1)·x^(-2/(2k-1))`, annihilated by `α`.
pub fn first_integral(k: u32) -> Result<LaurentBiPoly> {
    if k < 1 {
        return Err(Error::invalid("k must be ≥ 1"));
    }
    let t = 2 * k - 1;
    let tail = LaurentPoly::monomial(t, rational::int(i64::from(t)), -2);
    Ok(&LaurentBiPoly::y(t).pow(2) + &LaurentBiPoly::from_laurent(tail))
}

impl LaurentFamily {
    pub fn t(&self) -> u32 {
        2 * self.k - 1
    }

    pub fn commutes(&self) -> bool {
        self.alpha.commutes_with(&self.beta).expect("same t")
    }

    /// `(2k+1)/(2k-1)·a_{2j} = (2j+1)/(2j-1)·a_{2j+1}` for every `0 ≤ j ≤ k`.
    pub fn ratio_identity_holds(&self) -> bool {
        let e = exponent_ratio(self.k);
        (0..=self.k as i64).all(|j| {
            let lhs = &e * &self.a[2 * j as usize];
            let rhs = rational::rat(2 * j + 1, 2 * j - 1) * &self.a[2 * j as usize + 1];
            lhs == rhs
        })
    }

    /// Every monomial sits where the recurrence put it: `β(x)` has
    /// `z^(t-2l) y^(2(k-l))` and `β(y)` has `z^(-2l) y^(2(k-l)+1)`.
    pub fn shape_holds(&self) -> bool {
        let t = i64::from(self.t());
        let k = self.k as usize;
        let bx = self.beta.act_x.ycoeffs();
        let by = self.beta.act_y.ycoeffs();
        let mut ok = self.beta.act_x.deg_y() == 2 * k as i64 && self.beta.act_y.deg_y() == 2 * k as i64 + 1;
        for (i, c) in bx.iter().enumerate() {
            let expected = (i % 2 == 0).then(|| t - 2 * (k - i / 2) as i64);
            ok &= monomial_at(c, expected, &self.a[i]);
        }
        for (i, c) in by.iter().enumerate() {
            let expected = (i % 2 == 1).then(|| -2 * (k - i / 2) as i64);
            ok &= monomial_at(c, expected, &self.a[i]);
        }
        ok
    }

    pub fn to_json(&self) -> FamilyJson {
        let r = first_integral(self.k).expect("k ≥ 1");
        FamilyJson {
            k: self.k,
            t: self.t(),
            a: self.a.iter().map(rational::format).collect(),
            alpha: self.alpha.to_json(),
            beta: self.beta.to_json(),
            first_integral: r.to_string(),
            commutes: self.commutes(),
            ratio_identity: self.ratio_identity_holds(),
            alpha_kills_r: self.alpha.apply(&r).map(|v| v.is_zero()).unwrap_or(false),
        }
    }
}

fn monomial_at(c: &LaurentPoly, zexp: Option<i64>, coeff: &Rational) -> bool {
    match zexp {
        None => c.is_zero(),
        Some(e) => c.terms().len() == 1 && c.coeff(e) == *coeff,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyJson {
    pub k: u32,
    pub t: u32,
    pub a: Vec<String>,
    pub alpha: DerivationJson,
    pub beta: DerivationJson,
    pub first_integral: String,
    pub commutes: bool,
    pub ratio_identity: bool,
    pub alpha_kills_r: bool,
}

/// A derivation commuting with `(y, h)` whose shape forces `P_m(deg h) = 0`.
#[derive(Debug, Clone)]
pub struct PmWitness {
    pub m: usize,
    /// `None` for the polynomial witness over `(y, x)`.
    pub k: Option<u32>,
    pub alpha: LaurentDerivation,
    pub witness: LaurentDerivation,
}

impl PmWitness {
    /// `N`, the `x`-degree of `h = α(y)`.
    pub fn h_degree(&self) -> Rational {
        self.alpha
            .act_y
            .ycoeff(0)
            .x_degree()
            .expect("α(y) is a nonzero monomial in x")
    }

    pub fn commutes(&self) -> bool {
        self.alpha.commutes_with(&self.witness).expect("same t")
    }

    /// `γ(x)` has only even `y`-powers below `m`, `γ(y)` only odd `y`-powers
    /// up to `m`, and the coefficient `d_m` of `y^m` is nonzero.
    pub fn shape_holds(&self) -> bool {
        let xs = self.witness.act_x.ycoeffs();
        let ys = self.witness.act_y.ycoeffs();
        let even_x = xs.iter().enumerate().all(|(i, c)| c.is_zero() || (i % 2 == 0 && i < self.m));
        let odd_y = ys.iter().enumerate().all(|(i, c)| c.is_zero() || (i % 2 == 1 && i <= self.m));
        even_x && odd_y && !self.witness.act_y.ycoeff(self.m).is_zero()
    }

    pub fn p_vanishes_at_degree(&self) -> bool {
        build_obstruction(self.m)
            .map(|ob| ob.eval(&self.h_degree()).is_zero())
            .unwrap_or(false)
    }

    pub fn passed(&self) -> bool {
        self.commutes() && self.shape_holds() && self.p_vanishes_at_degree()
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            m: self.m,
            k: self.k,
            alpha: self.alpha.to_json(),
            witness: self.witness.to_json(),
            h_degree: rational::format(&self.h_degree()),
            commutes: self.commutes(),
            shape: self.shape_holds(),
            p_m_vanishes: self.p_vanishes_at_degree(),
            verdict: verdict_str(self.passed()).to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub alpha: DerivationJson,
    pub witness: DerivationJson,
    pub h_degree: String,
    pub commutes: bool,
    pub shape: bool,
    pub p_m_vanishes: bool,
    pub verdict: String,
}

fn check_m(m: usize) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::invalid(format!("m must be odd and ≥ 3, got {m}")));
    }
    Ok(())
}

/// `r^((m-2k-1)/2)·β` for the family with `a_top = 1`.
pub fn pm_witness(m: usize, k: u32) -> Result<PmWitness> {
    check_m(m)?;
    if k < 1 || 2 * k as usize + 1 > m {
        return Err(Error::invalid(format!("k must lie in 1..={} for m = {m}, got {k}", (m - 1) / 2)));
    }
    let family = build_family(k, &Rational::one())?;
    let s = (m - 2 * k as usize - 1) / 2;
    let r = first_integral(k)?.pow(s as u32);
    let witness = family.beta.scale_by(&r)?;
    Ok(PmWitness { m, k: Some(k), alpha: family.alpha, witness })
}

/// `(y² - x²)^((m-1)/2)·(x, y)`, commuting with `(y, x)`; witnesses the root 1.
pub fn pm_witness_linear(m: usize) -> Result<PmWitness> {
    check_m(m)?;
    let x = LaurentBiPoly::x(1);
    let y = LaurentBiPoly::y(1);
    let alpha = LaurentDerivation::new(y.clone(), x.clone())?;
    let euler = LaurentDerivation::new(x.clone(), y.clone())?;
    let r = &y.pow(2) - &x.pow(2);
    let witness = euler.scale_by(&r.pow(((m - 1) / 2) as u32))?;
    Ok(PmWitness { m, k: None, alpha, witness })
}

/// One witness per element of the expected root set of `P_m`.
pub fn all_witnesses(m: usize) -> Result<Vec<PmWitness>> {
    let mut out = vec![pm_witness_linear(m)?];
    for k in 1..=((m - 1) / 2) as u32 {
        out.push(pm_witness(m, k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_laurent_bi;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn k1_by_hand() {
        let fam = build_family(1, &int(1)).unwrap();
        assert_eq!(fam.a, vec![int(-1), int(3), int(1), int(1)]);
        assert_eq!(fam.beta.act_x, parse_laurent_bi("x*y^2 - x^(-1)", 1).unwrap());
        assert_eq!(fam.beta.act_y, parse_laurent_bi("y^3 + 3*x^(-2)*y", 1).unwrap());
        assert_eq!(fam.alpha.act_y, parse_laurent_bi("x^(-3)", 1).unwrap());
        assert!(fam.commutes());
        assert_eq!(fam.a[1], -int(3) * &fam.a[0]);
    }

    #[test]
    fn k2_exponent() {
        let fam = build_family(2, &int(1)).unwrap();
        assert_eq!(fam.t(), 3);
        assert_eq!(fam.alpha.act_y.ycoeff(0).x_degree(), Some(rat(-5, 3)));
        assert!(fam.commutes());
    }

    #[test]
    fn families_commute() {
        for k in 1..=5 {
            for a_top in [int(1), int(-2), rat(7, 3)] {
                let fam = build_family(k, &a_top).unwrap();
                assert!(fam.commutes(), "k = {k}");
                assert!(fam.ratio_identity_holds(), "k = {k}");
                assert!(fam.shape_holds(), "k = {k}");
            }
        }
    }

    #[test]
    fn bad_family_input() {
        assert!(matches!(build_family(0, &int(1)), Err(Error::InvalidInput(_))));
        assert!(matches!(build_family(2, &int(0)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn first_integrals() {
        let r1 = first_integral(1).unwrap();
        assert_eq!(r1, parse_laurent_bi("y^2 + x^(-2)", 1).unwrap());
        for k in 1..=4 {
            let r = first_integral(k).unwrap();
            let a = alpha(k);
            assert!(a.apply(&r).unwrap().is_zero());
            assert!(a.apply(&r.pow(2)).unwrap().is_zero());
        }
        assert_eq!(first_integral(2).unwrap(), parse_laurent_bi("y^2 + 3*x^(-2/3)", 3).unwrap());
    }

    #[test]
    fn witnesses() {
        let w = pm_witness(3, 1).unwrap();
        assert_eq!(w.witness, build_family(1, &int(1)).unwrap().beta);
        for (m, k) in [(5, 1), (5, 2), (7, 2)] {
            let w = pm_witness(m, k).unwrap();
            assert_eq!(w.witness.act_y.deg_y(), m as i64);
            assert!(w.passed(), "m = {m}, k = {k}");
        }
        assert_eq!(pm_witness(5, 2).unwrap().h_degree(), rat(-5, 3));
        assert!(pm_witness(5, 3).is_err());
        assert!(pm_witness(4, 1).is_err());
    }

    #[test]
    fn linear_witness() {
        for m in [3, 5, 7] {
            let w = pm_witness_linear(m).unwrap();
            assert_eq!(w.h_degree(), int(1));
            assert!(w.passed());
        }
        assert_eq!(all_witnesses(7).unwrap().len(), 4);
    }
}
