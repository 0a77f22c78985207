//! The integer polynomials `T_i(X)` and `P_m(X)` constraining the degree of
//! `h` in a derivation `(y, h)` with an odd-degree commuting partner, and
//! their rational roots.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{rational, Rational, UniPoly};
use crate::commutant::verdict_str;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionPoly {
    pub m: usize,
    /// `t[i]` is `T_i`.
    pub t: Vec<UniPoly>,
    pub p: UniPoly,
}

fn linear(c0: i64, c1: i64) -> UniPoly {
    UniPoly::from_ints(&[c0, c1])
}

fn odd_at_least_three(m: usize) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::invalid(format!("m must be odd and ≥ 3, got {m}")));
    }
    Ok(())
}

/// Runs the `T` recurrences down from `T_m = T_{m-1} = 1` and forms `P_m`.
pub fn build_obstruction(m: usize) -> Result<ObstructionPoly> {
    odd_at_least_three(m)?;
    let mut t = vec![UniPoly::zero(); m + 1];
    t[m] = UniPoly::one();
    t[m - 1] = UniPoly::one();
    let x = UniPoly::x();
    for k in 1..=(m - 1) / 2 {
        let ki = k as i64;
        let mi = m as i64;
        let i = m - 2 * k;
        // (k-1)(X+1) + 1
        let g = linear(ki, ki - 1);
        t[i] = &(&x * &t[i + 1]) - &(&g * &t[i + 2]).scale(&rational::int(mi - 2 * ki + 2));
        // T_{m-2k-1} = T_{m-2k} - (m-2k+1) k (X+1) T_{m-2k+1}
        let step = &linear(1, 1) * &t[i + 1];
        t[i - 1] = &t[i] - &step.scale(&rational::int((mi - 2 * ki + 1) * ki));
    }
    let half = ((m - 1) / 2) as i64;
    let p = &(&linear(half + 1, half) * &t[1]) - &(&x * &t[0]);
    Ok(ObstructionPoly { m, t, p })
}

/// `{1} ∪ {-(2k+1)/(2k-1) : 1 ≤ k ≤ (m-1)/2}`.
pub fn expected_root_set(m: usize) -> Result<BTreeSet<Rational>> {
    odd_at_least_three(m)?;
    let mut s = BTreeSet::from([Rational::one()]);
    for k in 1..=((m - 1) / 2) as i64 {
        s.insert(-rational::rat(2 * k + 1, 2 * k - 1));
    }
    Ok(s)
}

/// Distinct rational roots with multiplicities, in increasing order.
pub fn rational_roots_with_multiplicity(p: &UniPoly) -> Result<Vec<(Rational, u32)>> {
    if p.is_zero() {
        return Err(Error::invalid("the zero polynomial has every number as a root"));
    }
    let mut rest = p.clone();
    let mut found = Vec::new();
    let mut zero_mult = 0;
    while rest.coeff(0).is_zero() {
        rest = rest.exact_div(&UniPoly::x())?;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        found.push((Rational::zero(), zero_mult));
    }
    let ints = integer_coefficients(&rest);
    let lead = ints.last().expect("nonzero").abs();
    let constant = ints[0].abs();
    // Cauchy: every root satisfies |r| ≤ 1 + max |a_i / a_n|.
    let bound = Rational::one()
        + ints
            .iter()
            .map(|c| Rational::new(c.abs(), lead.clone()))
            .max()
            .unwrap_or_else(Rational::zero);
    let (nums, dens) = (divisors(&constant), divisors(&lead));
    let mut candidates = BTreeSet::new();
    for q in &dens {
        for num in &nums {
            if Rational::new(num.clone(), q.clone()) > bound {
                break;
            }
            for p in [num.clone(), -num] {
                if vanishes_at(&ints, &p, q) {
                    candidates.insert(Rational::new(p, q.clone()));
                }
            }
        }
    }
    for r in candidates {
        let factor = UniPoly::new(vec![-r.clone(), Rational::one()]);
        let mut mult = 0;
        while !rest.is_constant() && rest.eval(&r).is_zero() {
            rest = rest.exact_div(&factor)?;
            mult += 1;
        }
        if mult > 0 {
            found.push((r, mult));
        }
    }
    found.sort();
    Ok(found)
}

pub fn rational_roots(p: &UniPoly) -> Result<BTreeSet<Rational>> {
    Ok(rational_roots_with_multiplicity(p)?.into_iter().map(|(r, _)| r).collect())
}

/// `Σ a_i p^i q^(n-i) = 0`, i.e. `p/q` is a root, in integer arithmetic.
fn vanishes_at(ints: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for a in ints.iter().rev() {
        acc = acc * p + a * &qpow;
        qpow *= q;
    }
    acc.is_zero()
}

/// Clears denominators; the result has the same roots.
fn integer_coefficients(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut power = d.clone();
            for _ in 0..=e {
                next.push(power.clone());
                power *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl ObstructionPoly {
    pub fn half(&self) -> usize {
        (self.m - 1) / 2
    }

    /// `deg T_{m-2k} ≤ k` and `deg T_{m-2k-1} ≤ k` for every `k`.
    pub fn t_degrees_bounded(&self) -> bool {
        (0..=self.half()).all(|k| {
            let bound = k as i64;
            self.t[self.m - 2 * k].degree() <= bound && self.t[self.m - 2 * k - 1].degree() <= bound
        })
    }

    /// `T_{m-2k-1}(-1) = T_{m-2k}(-1) ≠ 0` for every `k`.
    pub fn t_values_at_minus_one(&self) -> bool {
        let minus_one = rational::int(-1);
        (0..=self.half()).all(|k| {
            let a = self.t[self.m - 2 * k].eval(&minus_one);
            let b = self.t[self.m - 2 * k - 1].eval(&minus_one);
            a == b && !a.is_zero()
        })
    }

    pub fn integer_coefficients(&self) -> bool {
        self.t.iter().chain([&self.p]).all(|q| q.coeffs().iter().all(|c| c.is_integer()))
    }

    pub fn degree_bounded(&self) -> bool {
        self.p.degree() <= self.m.div_ceil(2) as i64
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.p.eval(x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootJson {
    pub root: String,
    pub multiplicity: u32,
}

/// Everything `pm` reports about one `m`.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub m: usize,
    pub t: Vec<String>,
    pub p: String,
    pub degree: i64,
    pub p_at_minus_one: String,
    pub roots: Vec<RootJson>,
    pub expected: Vec<String>,
    pub splits: bool,
    pub degree_bounded: bool,
    pub t_degrees_bounded: bool,
    pub t_values_at_minus_one: bool,
    pub roots_match: bool,
    pub verdict: String,
}

impl ObstructionReport {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

pub fn certify_obstruction(m: usize) -> Result<ObstructionReport> {
    report_for(&build_obstruction(m)?)
}

/// Checks an already-built obstruction against the expected root set.
pub fn report_for(ob: &ObstructionPoly) -> Result<ObstructionReport> {
    let m = ob.m;
    let roots = rational_roots_with_multiplicity(&ob.p)?;
    let expected = expected_root_set(m)?;
    let found: BTreeSet<Rational> = roots.iter().map(|(r, _)| r.clone()).collect();
    let total: u32 = roots.iter().map(|(_, k)| k).sum();
    let degree = ob.p.degree().finite().unwrap_or(-1);
    let splits = i64::from(total) == degree;
    let roots_match = found == expected;
    let p_at_minus_one = ob.p.eval(&rational::int(-1));
    let pass = roots_match
        && splits
        && ob.degree_bounded()
        && ob.t_degrees_bounded()
        && ob.t_values_at_minus_one()
        && ob.integer_coefficients()
        && !p_at_minus_one.is_zero();
    Ok(ObstructionReport {
        m,
        t: (0..=m).rev().map(|i| format!("T_{i} = {}", ob.t[i].format_in("X"))).collect(),
        p: ob.p.format_in("X"),
        degree,
        p_at_minus_one: rational::format(&p_at_minus_one),
        roots: roots
            .iter()
            .map(|(r, k)| RootJson { root: rational::format(r), multiplicity: *k })
            .collect(),
        expected: expected.iter().map(rational::format).collect(),
        splits,
        degree_bounded: ob.degree_bounded(),
        t_degrees_bounded: ob.t_degrees_bounded(),
        t_values_at_minus_one: ob.t_values_at_minus_one(),
        roots_match,
        verdict: verdict_str(pass).to_string(),
    })
}

impl std::fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for t in &self.t {
            writeln!(f, "{t}")?;
        }
        writeln!(f, "P_{} = {}", self.m, self.p)?;
        writeln!(f, "P_{}(-1) = {}", self.m, self.p_at_minus_one)?;
        let roots: Vec<String> = self
            .roots
            .iter()
            .map(|r| {
                if r.multiplicity == 1 {
                    r.root.clone()
                } else {
                    format!("{} (x{})", r.root, r.multiplicity)
                }
            })
            .collect();
        writeln!(f, "rational roots: {{{}}}", roots.join(", "))?;
        writeln!(f, "expected S: {{{}}}", self.expected.join(", "))?;
        write!(f, "{}", self.verdict)
    }
}
