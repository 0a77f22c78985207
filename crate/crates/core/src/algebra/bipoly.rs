//! `K[x, y]` as polynomials in `y` with coefficients in `K[x]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::degree::Degree;
use super::print;
use super::rational::{self, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// An element of `K[x, y]`. `ycoeffs[i]` is the coefficient of `y^i`; the
/// last entry is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    ycoeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut ycoeffs: Vec<UniPoly>) -> Self {
        while ycoeffs.last().is_some_and(UniPoly::is_zero) {
            ycoeffs.pop();
        }
        BiPoly { ycoeffs }
    }

    pub fn zero() -> Self {
        BiPoly { ycoeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_uni(UniPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_uni(UniPoly::constant(c))
    }

    pub fn from_uni(p: UniPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn x() -> Self {
        Self::from_uni(UniPoly::x())
    }

    pub fn y() -> Self {
        Self::new(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// `c · x^i · y^j`.
    pub fn monomial(c: Rational, xexp: usize, yexp: usize) -> Self {
        let mut ycoeffs = vec![UniPoly::zero(); yexp + 1];
        ycoeffs[yexp] = UniPoly::monomial(c, xexp);
        Self::new(ycoeffs)
    }

    /// `p(x) · y^j`.
    pub fn times_y_pow(p: UniPoly, yexp: usize) -> Self {
        let mut ycoeffs = vec![UniPoly::zero(); yexp + 1];
        ycoeffs[yexp] = p;
        Self::new(ycoeffs)
    }

    pub fn ycoeffs(&self) -> &[UniPoly] {
        &self.ycoeffs
    }

    /// Coefficient of `y^i` (zero past the degree).
    pub fn ycoeff(&self, i: usize) -> UniPoly {
        self.ycoeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, xexp: usize, yexp: usize) -> Rational {
        self.ycoeffs
            .get(yexp)
            .map(|p| p.coeff(xexp))
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn deg_y(&self) -> Degree {
        match self.ycoeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    pub fn deg_x(&self) -> Degree {
        self.ycoeffs
            .iter()
            .map(UniPoly::degree)
            .max()
            .unwrap_or(Degree::NegInf)
    }

    pub fn total_degree(&self) -> Degree {
        self.ycoeffs
            .iter()
            .enumerate()
            .map(|(j, p)| p.degree() + Degree::Finite(j as i64))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Returns the polynomial in `x` if no positive power of `y` occurs.
    pub fn as_uni(&self) -> Option<UniPoly> {
        match self.ycoeffs.len() {
            0 => Some(UniPoly::zero()),
            1 => Some(self.ycoeffs[0].clone()),
            _ => None,
        }
    }

    /// Iterates nonzero terms as `(coeff, xexp, yexp)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, usize, usize)> {
        self.ycoeffs.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (c, i, j))
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.ycoeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_uni(&self, p: &UniPoly) -> Self {
        Self::new(self.ycoeffs.iter().map(|q| q * p).collect())
    }

    /// `∂/∂x`.
    pub fn dx(&self) -> Self {
        Self::new(self.ycoeffs.iter().map(UniPoly::derivative).collect())
    }

    /// `∂/∂y`.
    pub fn dy(&self) -> Self {
        Self::new(
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&rational::int(j as i64)))
                .collect(),
        )
    }

    /// `∫ a dx` with every `y^j`-coefficient's constant term zero.
    pub fn integrate_dx(&self) -> Self {
        Self::new(self.ycoeffs.iter().map(UniPoly::integrate).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.ycoeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, p| acc * y + p.eval(x))
    }

    /// Exact division in `K[x][y]` by a nonzero divisor, requiring zero remainder.
    pub fn exact_div(&self, divisor: &BiPoly) -> Result<BiPoly> {
        let lead = divisor
            .ycoeffs
            .last()
            .ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let dlen = divisor.ycoeffs.len();
        let mut rem = self.clone();
        let mut quot = vec![UniPoly::zero(); self.ycoeffs.len().saturating_sub(dlen) + 1];
        while rem.ycoeffs.len() >= dlen {
            let shift = rem.ycoeffs.len() - dlen;
            let top = rem.ycoeffs.last().expect("nonzero remainder");
            let c = top.exact_div(lead)?;
            let step = BiPoly::times_y_pow(c.clone(), shift);
            rem = &rem - &(&step * divisor);
            quot[shift] = c;
        }
        if rem.is_zero() {
            Ok(BiPoly::new(quot))
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Float evaluator for the numeric layer.
    pub fn to_f64_evaluator(&self) -> F64BiPoly {
        F64BiPoly {
            ycoeffs: self
                .ycoeffs
                .iter()
                .map(|p| p.coeffs().iter().map(rational::to_f64).collect())
                .collect(),
        }
    }
}

/// Binary64 copy of a [`BiPoly`], evaluated by nested Horner.
#[derive(Debug, Clone)]
pub struct F64BiPoly {
    ycoeffs: Vec<Vec<f64>>,
}

impl F64BiPoly {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.ycoeffs.iter().rev().fold(0.0, |acc, p| {
            acc * y + p.iter().rev().fold(0.0, |a, c| a * x + c)
        })
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ycoeffs.iter().enumerate().rev().flat_map(|(j, p)| {
            p.coeffs().iter().enumerate().rev().map(move |(i, c)| {
                (
                    c.clone(),
                    print::join_monomials(print::power("x", i as i64), print::power("y", j as i64)),
                )
            })
        });
        f.write_str(&print::format_terms(terms))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        BiPoly::new((0..n).map(|j| &self.ycoeff(j) + &rhs.ycoeff(j)).collect())
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        BiPoly::new((0..n).map(|j| &self.ycoeff(j) - &rhs.ycoeff(j)).collect())
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.ycoeffs.len() + rhs.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.ycoeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            ycoeffs: self.ycoeffs.iter().map(|p| -p).collect(),
        }
    }
}

crate::algebra::forward_ops!(BiPoly);

impl From<UniPoly> for BiPoly {
    fn from(p: UniPoly) -> Self {
        BiPoly::from_uni(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn integrate_bipoly_example() {
        // 3x^2 y + y^2  ->  x^3 y + x y^2
        let a = BiPoly::monomial(int(3), 2, 1) + BiPoly::monomial(int(1), 0, 2);
        let expect = BiPoly::monomial(int(1), 3, 1) + BiPoly::monomial(int(1), 1, 2);
        let i = a.integrate_dx();
        assert_eq!(i, expect);
        assert_eq!(i.dx(), a);
        for p in i.ycoeffs() {
            assert!(p.coeff(0).is_zero());
        }
    }

    #[test]
    fn partials() {
        // x^2 y^3
        let p = BiPoly::monomial(int(1), 2, 3);
        assert_eq!(p.dx(), BiPoly::monomial(int(2), 1, 3));
        assert_eq!(p.dy(), BiPoly::monomial(int(3), 2, 2));
        assert_eq!(BiPoly::constant(int(7)).dy(), BiPoly::zero());
    }

    #[test]
    fn exact_division_by_y_and_binomials() {
        let y = BiPoly::y();
        let p = BiPoly::monomial(int(2), 1, 3) + BiPoly::monomial(int(1), 0, 1);
        let q = p.exact_div(&y).unwrap();
        assert_eq!(&q * &y, p);
        let x = BiPoly::x();
        assert_eq!(x.exact_div(&y), Err(Error::NotDivisible));
        let sum = &x + &y;
        let sq = &sum * &sum;
        assert_eq!(sq.exact_div(&sum).unwrap(), sum);
    }

    #[test]
    fn display_order() {
        let h = BiPoly::y().pow(2) - BiPoly::monomial(int(4), 3, 0) - BiPoly::monomial(int(10), 1, 0);
        assert_eq!(h.to_string(), "y^2 - 4*x^3 - 10*x");
        let p = BiPoly::monomial(int(3), 2, 1) + BiPoly::monomial(int(1), 0, 2);
        assert_eq!(p.to_string(), "y^2 + 3*x^2*y");
    }

    #[test]
    fn degrees() {
        assert_eq!(BiPoly::zero().deg_y(), Degree::NegInf);
        let p = BiPoly::monomial(int(1), 4, 1) + BiPoly::monomial(int(1), 0, 3);
        assert_eq!(p.deg_y(), 3);
        assert_eq!(p.deg_x(), 4);
        assert_eq!(p.total_degree(), 5);
    }
}
