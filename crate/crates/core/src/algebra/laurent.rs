//! Laurent polynomials in `z = x^(1/t)`, and their extension by `y`.
//!
//! Exponents are stored as integers in `z`; the `x`-exponent of `z^k` is
//! `k/t`. Arithmetic keeps the declared `t` and refuses to mix rings with
//! different `t`; [`LaurentPoly::normalize_t`] shrinks it on request.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::print;
use super::rational::{self, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

fn check_t(t: u32) -> Result<()> {
    if t == 0 {
        Err(Error::invalid("root index t must be positive"))
    } else {
        Ok(())
    }
}

fn same_t(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::mismatch(format!("operands over t = {a} and t = {b}")))
    }
}

/// An element of `K[x^(1/t), x^(-1/t)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    t: u32,
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn new(t: u32, terms: impl IntoIterator<Item = (i64, Rational)>) -> Result<Self> {
        check_t(t)?;
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            let slot: &mut Rational = map.entry(k).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { t, terms: map })
    }

    pub fn zero(t: u32) -> Self {
        assert!(t > 0, "root index t must be positive");
        LaurentPoly { t, terms: BTreeMap::new() }
    }

    pub fn constant(t: u32, c: Rational) -> Self {
        Self::monomial(t, c, 0)
    }

    /// `c · z^zexp`.
    pub fn monomial(t: u32, c: Rational, zexp: i64) -> Self {
        let mut p = Self::zero(t);
        if !c.is_zero() {
            p.terms.insert(zexp, c);
        }
        p
    }

    /// `c · x^exp` for a rational exponent; `exp` must be a multiple of `1/t`.
    pub fn x_power(t: u32, c: Rational, exp: &Rational) -> Result<Self> {
        check_t(t)?;
        let scaled = exp * rational::int(t as i64);
        let zexp = rational::to_i64(&scaled).ok_or_else(|| {
            Error::mismatch(format!(
                "exponent {} is not a multiple of 1/{t}",
                rational::format(exp)
            ))
        })?;
        Ok(Self::monomial(t, c, zexp))
    }

    pub fn from_unipoly(p: &UniPoly, t: u32) -> Self {
        let mut out = Self::zero(t);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(k as i64 * t as i64, c.clone());
            }
        }
        out
    }

    /// The polynomial in `x` when every exponent is a nonnegative integer.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        let t = self.t as i64;
        let mut coeffs = Vec::new();
        for (&k, c) in &self.terms {
            if k < 0 || k % t != 0 {
                return None;
            }
            let e = (k / t) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn coeff(&self, zexp: i64) -> Rational {
        self.terms.get(&zexp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `z`-exponent.
    pub fn max_zexp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `deg h` as a rational `x`-exponent; `None` for zero.
    pub fn x_degree(&self) -> Option<Rational> {
        self.max_zexp().map(|k| rat_exp(k, self.t))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.t);
        }
        LaurentPoly {
            t: self.t,
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// `d/dx`: `z^k ↦ (k/t)·z^(k-t)`.
    pub fn derivative(&self) -> Self {
        let t = self.t as i64;
        LaurentPoly {
            t: self.t,
            terms: self
                .terms
                .iter()
                .filter(|(&k, _)| k != 0)
                .map(|(&k, c)| (k - t, c * rat_exp(k, self.t)))
                .collect(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        same_t(self.t, rhs.t)?;
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            let slot = terms.entry(*k).or_insert_with(Rational::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { t: self.t, terms })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        same_t(self.t, rhs.t)?;
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let slot = terms.entry(a + b).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { t: self.t, terms })
    }

    /// Exact division in the Laurent ring: after pulling out the lowest power of
    /// `z` from each side, the divisor must divide the dividend in `K[z]`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        same_t(self.t, divisor.t)?;
        let Some(&dlow) = divisor.terms.keys().next() else {
            return Err(Error::invalid("division by the zero polynomial"));
        };
        let Some(&nlow) = self.terms.keys().next() else {
            return Ok(Self::zero(self.t));
        };
        let as_z_poly = |p: &Self, low: i64| {
            let mut coeffs = Vec::new();
            for (&k, c) in &p.terms {
                let e = (k - low) as usize;
                if coeffs.len() <= e {
                    coeffs.resize(e + 1, Rational::zero());
                }
                coeffs[e] = c.clone();
            }
            UniPoly::new(coeffs)
        };
        let q = as_z_poly(self, nlow).exact_div(&as_z_poly(divisor, dlow))?;
        let shift = nlow - dlow;
        Ok(LaurentPoly {
            t: self.t,
            terms: q
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as i64 + shift, c.clone()))
                .collect(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.t, Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the element over `K[x^(1/new_t), ...]`; `t` must divide `new_t`.
    pub fn lift(&self, new_t: u32) -> Result<Self> {
        check_t(new_t)?;
        if !new_t.is_multiple_of(self.t) {
            return Err(Error::mismatch(format!(
                "cannot lift from t = {} to t = {new_t}",
                self.t
            )));
        }
        let f = (new_t / self.t) as i64;
        Ok(LaurentPoly {
            t: new_t,
            terms: self.terms.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
        })
    }

    /// The same element over the smallest root index that represents it.
    pub fn normalize_t(&self) -> Self {
        let g = self
            .terms
            .keys()
            .fold(self.t as i64, |g, &k| g.gcd(&k))
            .max(1);
        LaurentPoly {
            t: (self.t as i64 / g) as u32,
            terms: self.terms.iter().map(|(&k, c)| (k / g, c.clone())).collect(),
        }
    }

    /// Evaluates at a positive real `x`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let t = self.t as f64;
        self.terms
            .iter()
            .map(|(&k, c)| rational::to_f64(c) * x.powf(k as f64 / t))
            .sum()
    }

    fn format_in(&self, var: &str) -> String {
        print::format_terms(
            self.terms
                .iter()
                .rev()
                .map(|(&k, c)| (c.clone(), print::frac_power(var, k, self.t as i64))),
        )
    }
}

fn rat_exp(k: i64, t: u32) -> Rational {
    rational::rat(k, t as i64)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent ring mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent ring mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent ring mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            t: self.t,
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

crate::algebra::forward_ops!(LaurentPoly);

/// An element of `K[x^(1/t), x^(-1/t), y]`; all coefficients share `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentBiPoly {
    t: u32,
    ycoeffs: Vec<LaurentPoly>,
}

impl LaurentBiPoly {
    pub fn new(t: u32, mut ycoeffs: Vec<LaurentPoly>) -> Result<Self> {
        check_t(t)?;
        if let Some(bad) = ycoeffs.iter().find(|p| p.t != t) {
            return Err(Error::mismatch(format!(
                "coefficient over t = {} in a ring with t = {t}",
                bad.t
            )));
        }
        while ycoeffs.last().is_some_and(LaurentPoly::is_zero) {
            ycoeffs.pop();
        }
        Ok(LaurentBiPoly { t, ycoeffs })
    }

    fn from_parts(t: u32, ycoeffs: Vec<LaurentPoly>) -> Self {
        Self::new(t, ycoeffs).expect("coefficients share t")
    }

    pub fn zero(t: u32) -> Self {
        assert!(t > 0, "root index t must be positive");
        LaurentBiPoly { t, ycoeffs: Vec::new() }
    }

    pub fn one(t: u32) -> Self {
        Self::from_laurent(LaurentPoly::constant(t, Rational::one()))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        let t = p.t;
        Self::from_parts(t, vec![p])
    }

    pub fn y(t: u32) -> Self {
        Self::times_y_pow(LaurentPoly::constant(t, Rational::one()), 1)
    }

    pub fn x(t: u32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(t, Rational::one(), t as i64))
    }

    /// `p · y^j`.
    pub fn times_y_pow(p: LaurentPoly, yexp: usize) -> Self {
        let t = p.t;
        let mut ycoeffs = vec![LaurentPoly::zero(t); yexp + 1];
        ycoeffs[yexp] = p;
        Self::from_parts(t, ycoeffs)
    }

    pub fn from_bipoly(p: &BiPoly, t: u32) -> Self {
        Self::from_parts(
            t,
            p.ycoeffs()
                .iter()
                .map(|c| LaurentPoly::from_unipoly(c, t))
                .collect(),
        )
    }

    pub fn to_bipoly(&self) -> Option<BiPoly> {
        self.ycoeffs
            .iter()
            .map(LaurentPoly::to_unipoly)
            .collect::<Option<Vec<_>>>()
            .map(BiPoly::new)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn ycoeffs(&self) -> &[LaurentPoly] {
        &self.ycoeffs
    }

    pub fn ycoeff(&self, i: usize) -> LaurentPoly {
        self.ycoeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.t))
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn deg_y(&self) -> super::Degree {
        match self.ycoeffs.len() {
            0 => super::Degree::NegInf,
            n => super::Degree::Finite(n as i64 - 1),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_parts(self.t, self.ycoeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Result<Self> {
        same_t(self.t, p.t)?;
        Ok(Self::from_parts(
            self.t,
            self.ycoeffs.iter().map(|q| q * p).collect(),
        ))
    }

    pub fn dx(&self) -> Self {
        Self::from_parts(
            self.t,
            self.ycoeffs.iter().map(LaurentPoly::derivative).collect(),
        )
    }

    pub fn dy(&self) -> Self {
        Self::from_parts(
            self.t,
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&rational::int(j as i64)))
                .collect(),
        )
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        same_t(self.t, rhs.t)?;
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        Ok(Self::from_parts(
            self.t,
            (0..n).map(|j| &self.ycoeff(j) + &rhs.ycoeff(j)).collect(),
        ))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        same_t(self.t, rhs.t)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.t));
        }
        let mut out = vec![LaurentPoly::zero(self.t); self.ycoeffs.len() + rhs.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            for (j, b) in rhs.ycoeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_parts(self.t, out))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.t);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn lift(&self, new_t: u32) -> Result<Self> {
        let ycoeffs = self
            .ycoeffs
            .iter()
            .map(|p| p.lift(new_t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(new_t, ycoeffs)
    }
}

impl fmt::Display for LaurentBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.t as i64;
        let terms = self.ycoeffs.iter().enumerate().rev().flat_map(|(j, p)| {
            p.terms.iter().rev().map(move |(&k, c)| {
                (
                    c.clone(),
                    print::join_monomials(print::frac_power("x", k, t), print::power("y", j as i64)),
                )
            })
        });
        f.write_str(&print::format_terms(terms))
    }
}

impl<'a> Add<&'a LaurentBiPoly> for &'a LaurentBiPoly {
    type Output = LaurentBiPoly;

    fn add(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        self.checked_add(rhs).expect("Laurent ring mismatch")
    }
}

impl<'a> Sub<&'a LaurentBiPoly> for &'a LaurentBiPoly {
    type Output = LaurentBiPoly;

    fn sub(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        self.checked_sub(rhs).expect("Laurent ring mismatch")
    }
}

impl<'a> Mul<&'a LaurentBiPoly> for &'a LaurentBiPoly {
    type Output = LaurentBiPoly;

    fn mul(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        self.checked_mul(rhs).expect("Laurent ring mismatch")
    }
}

impl Neg for &LaurentBiPoly {
    type Output = LaurentBiPoly;

    fn neg(self) -> LaurentBiPoly {
        LaurentBiPoly {
            t: self.t,
            ycoeffs: self.ycoeffs.iter().map(|p| -p).collect(),
        }
    }
}

crate::algebra::forward_ops!(LaurentBiPoly);
