use std::fmt;

use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rational, BiPoly, Rational};
use crate::derivation::{DerivationJson, PlanarDerivation};
use crate::error::{Error, Result};

/// `d(x) = a x + b y + c`, `d(y) = e x + f y + g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCoefficients {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub e: Rational,
    pub f: Rational,
    pub g: Rational,
}

impl AffineCoefficients {
    pub fn from_derivation(d: &PlanarDerivation) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::invalid("the zero derivation has no companion"));
        }
        if d.degree() > 1 {
            return Err(Error::HypothesisViolation(format!(
                "companion_for_linear needs degree ≤ 1, got {}",
                d.degree()
            )));
        }
        Ok(AffineCoefficients {
            a: d.act_x.coeff(1, 0),
            b: d.act_x.coeff(0, 1),
            c: d.act_x.coeff(0, 0),
            e: d.act_y.coeff(1, 0),
            f: d.act_y.coeff(0, 1),
            g: d.act_y.coeff(0, 0),
        })
    }

    pub fn from_ints(v: [i64; 6]) -> Self {
        let [a, b, c, e, f, g] = v.map(rational::int);
        AffineCoefficients { a, b, c, e, f, g }
    }

    pub fn to_derivation(&self) -> PlanarDerivation {
        let affine = |p: &Rational, q: &Rational, r: &Rational| {
            &(&BiPoly::x().scale(p) + &BiPoly::y().scale(q)) + &BiPoly::constant(r.clone())
        };
        PlanarDerivation::new(affine(&self.a, &self.b, &self.c), affine(&self.e, &self.f, &self.g))
    }

    fn det(&self) -> Rational {
        &self.a * &self.f - &self.b * &self.e
    }

    fn linear_part_is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.e.is_zero() && self.f.is_zero()
    }

    fn linear_part_is_scalar(&self) -> bool {
        self.b.is_zero() && self.e.is_zero() && self.a == self.f
    }

    /// A point `(x0, y0)` with `A (x0, y0) + (c, g) = 0`, if one exists.
    fn fixed_point(&self) -> Option<(Rational, Rational)> {
        let det = self.det();
        if !det.is_zero() {
            let x0 = (&self.b * &self.g - &self.f * &self.c) / &det;
            let y0 = (&self.e * &self.c - &self.a * &self.g) / &det;
            return Some((x0, y0));
        }
        let (p, q, r) = if !(self.a.is_zero() && self.b.is_zero()) {
            (&self.a, &self.b, &self.c)
        } else {
            (&self.e, &self.f, &self.g)
        };
        let (x0, y0) = if !p.is_zero() {
            (-r / p, Rational::zero())
        } else {
            (Rational::zero(), -r / q)
        };
        let solves = (&self.a * &x0 + &self.b * &y0 + &self.c).is_zero()
            && (&self.e * &x0 + &self.f * &y0 + &self.g).is_zero();
        solves.then_some((x0, y0))
    }

    /// A nonzero `v` with `A v = 0`; only meaningful when `A` is singular.
    fn kernel_vector(&self) -> (Rational, Rational) {
        if !(self.a.is_zero() && self.b.is_zero()) {
            (-self.b.clone(), self.a.clone())
        } else {
            (-self.f.clone(), self.e.clone())
        }
    }
}

/// Which branch of the affine case analysis produced the companion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LinearCase {
    /// Constant derivation; any independent constant field commutes.
    Case0,
    /// `d = a·(x, y)`; companion `(y, x)`.
    Case1,
    /// Other linear `d`; companion `(x, y)`.
    Case2,
    /// Invertible linear part with a shift to the fixed point, then Case 1.
    Case3Scalar,
    /// Invertible linear part with a shift to the fixed point, then Case 2.
    Case3Linear,
    /// Singular linear part whose constant part is in its image: shift, then Case 2.
    Case4Shifted,
    /// Singular linear part, constant part outside the image: a constant
    /// kernel vector of the linear part.
    Case4Kernel,
}

impl fmt::Display for LinearCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LinearCase::Case0 => "Case 0",
            LinearCase::Case1 => "Case 1",
            LinearCase::Case2 => "Case 2",
            LinearCase::Case3Scalar => "Case 3 (shift, then Case 1)",
            LinearCase::Case3Linear => "Case 3 (shift, then Case 2)",
            LinearCase::Case4Shifted => "Case 4 (shift, then Case 2)",
            LinearCase::Case4Kernel => "Case 4 (constant kernel field)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct LinearizationResult {
    pub d: PlanarDerivation,
    pub delta: PlanarDerivation,
    pub case: LinearCase,
    /// `(x0, y0)` when the companion is written in `u = x - x0`, `v = y - y0`.
    pub shift: Option<(Rational, Rational)>,
}

impl LinearizationResult {
    /// `Δ = d(x) δ(y) - d(y) δ(x)`.
    pub fn determinant(&self) -> BiPoly {
        self.d.determinant(&self.delta)
    }

    pub fn to_json(&self) -> LinearizationJson {
        LinearizationJson {
            d: self.d.to_json(),
            delta: self.delta.to_json(),
            case: self.case.to_string(),
            shift: self
                .shift
                .as_ref()
                .map(|(x0, y0)| [rational::format(x0), rational::format(y0)]),
            determinant: self.determinant().to_string(),
            commutes: self.d.commutes_with(&self.delta),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearizationJson {
    pub d: DerivationJson,
    pub delta: DerivationJson,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<[String; 2]>,
    pub determinant: String,
    pub commutes: bool,
}

/// A derivation commuting with and transversal to a nonzero `d` of degree ≤ 1.
pub fn companion_for_linear(d: &PlanarDerivation) -> Result<LinearizationResult> {
    let co = AffineCoefficients::from_derivation(d)?;
    let x = BiPoly::x();
    let y = BiPoly::y();
    let shifted = |(x0, y0): &(Rational, Rational)| {
        (&x - &BiPoly::constant(x0.clone()), &y - &BiPoly::constant(y0.clone()))
    };
    let (delta, case, shift) = if co.linear_part_is_zero() {
        let delta = if co.g.is_zero() {
            PlanarDerivation::new(BiPoly::zero(), BiPoly::one())
        } else {
            PlanarDerivation::new(BiPoly::one(), BiPoly::zero())
        };
        (delta, LinearCase::Case0, None)
    } else if let Some(point) = co.fixed_point() {
        let (u, v) = shifted(&point);
        let no_shift = point.0.is_zero() && point.1.is_zero();
        let scalar = co.linear_part_is_scalar();
        let case = match (no_shift, scalar, co.det().is_zero()) {
            (true, true, _) => LinearCase::Case1,
            (true, false, _) => LinearCase::Case2,
            (false, true, _) => LinearCase::Case3Scalar,
            (false, false, false) => LinearCase::Case3Linear,
            (false, false, true) => LinearCase::Case4Shifted,
        };
        let delta = if scalar { PlanarDerivation::new(v, u) } else { PlanarDerivation::new(u, v) };
        (delta, case, (!no_shift).then_some(point))
    } else {
        let (v1, v2) = co.kernel_vector();
        let delta = PlanarDerivation::new(BiPoly::constant(v1), BiPoly::constant(v2));
        (delta, LinearCase::Case4Kernel, None)
    };
    let result = LinearizationResult { d: d.clone(), delta, case, shift };
    assert!(d.commutes_with(&result.delta), "companion for {d} does not commute");
    assert!(!result.determinant().is_zero(), "companion for {d} is not transversal");
    Ok(result)
}

/// `count` distinct nonzero affine derivations with coefficients in `{-2, …, 2}`,
/// drawn deterministically from `seed`.
pub fn linear_grid(count: usize, seed: u64) -> Vec<AffineCoefficients> {
    const SIDE: usize = 5;
    let total = SIDE.pow(6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // The index whose digits are all 2 encodes the zero derivation.
    let zero_index = (0..6).map(|i| 2 * SIDE.pow(i)).sum::<usize>();
    let mut picks: Vec<usize> = sample(&mut rng, total - 1, count.min(total - 1)).into_vec();
    for p in &mut picks {
        if *p >= zero_index {
            *p += 1;
        }
    }
    picks.sort_unstable();
    picks
        .into_iter()
        .map(|mut idx| {
            let mut v = [0i64; 6];
            for slot in &mut v {
                *slot = (idx % SIDE) as i64 - 2;
                idx /= SIDE;
            }
            AffineCoefficients::from_ints(v)
        })
        .collect()
}
