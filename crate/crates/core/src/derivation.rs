//! Derivations of `K[x, y]` and `K[x^(1/t), x^(-1/t), y]`.
//!
//! A derivation is fixed by its values on `x` and `y`; on any other element
//! it acts by `D(p) = ∂p/∂x · D(x) + ∂p/∂y · D(y)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_laurent_bi, BiPoly, Degree, LaurentBiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// A `K`-derivation of `K[x, y]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarDerivation {
    pub act_x: BiPoly,
    pub act_y: BiPoly,
}

impl PlanarDerivation {
    pub fn new(act_x: BiPoly, act_y: BiPoly) -> Self {
        PlanarDerivation { act_x, act_y }
    }

    pub fn zero() -> Self {
        Self::new(BiPoly::zero(), BiPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.act_x.is_zero() && self.act_y.is_zero()
    }

    pub fn apply(&self, p: &BiPoly) -> BiPoly {
        &(&p.dx() * &self.act_x) + &(&p.dy() * &self.act_y)
    }

    /// `[self, other] = self∘other − other∘self`, evaluated on `x` and `y`.
    pub fn bracket(&self, other: &PlanarDerivation) -> PlanarDerivation {
        PlanarDerivation {
            act_x: &self.apply(&other.act_x) - &other.apply(&self.act_x),
            act_y: &self.apply(&other.act_y) - &other.apply(&self.act_y),
        }
    }

    pub fn commutes_with(&self, other: &PlanarDerivation) -> bool {
        self.bracket(other).is_zero()
    }

    /// `q · self`.
    pub fn scale_by(&self, q: &BiPoly) -> PlanarDerivation {
        PlanarDerivation {
            act_x: q * &self.act_x,
            act_y: q * &self.act_y,
        }
    }

    pub fn scale(&self, c: &Rational) -> PlanarDerivation {
        PlanarDerivation {
            act_x: self.act_x.scale(c),
            act_y: self.act_y.scale(c),
        }
    }

    pub fn add(&self, other: &PlanarDerivation) -> PlanarDerivation {
        PlanarDerivation {
            act_x: &self.act_x + &other.act_x,
            act_y: &self.act_y + &other.act_y,
        }
    }

    pub fn sub(&self, other: &PlanarDerivation) -> PlanarDerivation {
        PlanarDerivation {
            act_x: &self.act_x - &other.act_x,
            act_y: &self.act_y - &other.act_y,
        }
    }

    /// `∂D(x)/∂x + ∂D(y)/∂y`.
    pub fn divergence(&self) -> BiPoly {
        &self.act_x.dx() + &self.act_y.dy()
    }

    pub fn is_divergence_free(&self) -> bool {
        self.divergence().is_zero()
    }

    /// Total degree of the vector field: the larger total degree of `D(x)`, `D(y)`.
    pub fn degree(&self) -> Degree {
        self.act_x.total_degree().max(self.act_y.total_degree())
    }

    /// `deg_y` of the derivation, as used for the commutant bound `M`.
    pub fn deg_y(&self) -> Degree {
        self.act_x.deg_y().max(self.act_y.deg_y())
    }

    /// `Δ = self(x)·other(y) − self(y)·other(x)`; nonzero iff the fields are
    /// transversal somewhere.
    pub fn determinant(&self, other: &PlanarDerivation) -> BiPoly {
        &(&self.act_x * &other.act_y) - &(&self.act_y * &other.act_x)
    }

    pub fn to_json(&self) -> DerivationJson {
        DerivationJson {
            ring: RingJson { t: 1 },
            dx: self.act_x.to_string(),
            dy: self.act_y.to_string(),
        }
    }

    pub fn from_json(json: &DerivationJson) -> Result<Self> {
        let d = LaurentDerivation::from_json(json)?;
        d.to_planar()
            .ok_or_else(|| Error::mismatch("derivation is not polynomial"))
    }
}

impl fmt::Display for PlanarDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x -> {}, y -> {})", self.act_x, self.act_y)
    }
}

/// `δ_f`: `x ↦ y`, `y ↦ f(x)`, the derivation of `ẍ = f(x)`.
pub fn newton_derivation(f: &UniPoly) -> PlanarDerivation {
    PlanarDerivation::new(BiPoly::y(), BiPoly::from_uni(f.clone()))
}

/// `H = y² − 2∫f dx`, the antiderivative taken with zero constant term.
pub fn hamiltonian(f: &UniPoly) -> BiPoly {
    let integral = f.integrate().scale(&crate::algebra::rational::int(2));
    &BiPoly::y().pow(2) - &BiPoly::from_uni(integral)
}

/// A `K`-derivation of `K[x^(1/t), x^(-1/t), y]`, given by its values on `x`
/// and `y`. All arithmetic happens in `z = x^(1/t)` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentDerivation {
    t: u32,
    pub act_x: LaurentBiPoly,
    pub act_y: LaurentBiPoly,
}

impl LaurentDerivation {
    pub fn new(act_x: LaurentBiPoly, act_y: LaurentBiPoly) -> Result<Self> {
        if act_x.t() != act_y.t() {
            return Err(Error::mismatch(format!(
                "components over t = {} and t = {}",
                act_x.t(),
                act_y.t()
            )));
        }
        Ok(LaurentDerivation { t: act_x.t(), act_x, act_y })
    }

    pub fn from_planar(d: &PlanarDerivation, t: u32) -> Self {
        LaurentDerivation {
            t,
            act_x: LaurentBiPoly::from_bipoly(&d.act_x, t),
            act_y: LaurentBiPoly::from_bipoly(&d.act_y, t),
        }
    }

    pub fn to_planar(&self) -> Option<PlanarDerivation> {
        Some(PlanarDerivation::new(
            self.act_x.to_bipoly()?,
            self.act_y.to_bipoly()?,
        ))
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.act_x.is_zero() && self.act_y.is_zero()
    }

    pub fn apply(&self, p: &LaurentBiPoly) -> Result<LaurentBiPoly> {
        if p.t() != self.t {
            return Err(Error::mismatch(format!(
                "element over t = {} for a derivation over t = {}",
                p.t(),
                self.t
            )));
        }
        Ok(&(&p.dx() * &self.act_x) + &(&p.dy() * &self.act_y))
    }

    pub fn bracket(&self, other: &LaurentDerivation) -> Result<LaurentDerivation> {
        if other.t != self.t {
            return Err(Error::mismatch(format!(
                "bracket of derivations over t = {} and t = {}",
                self.t, other.t
            )));
        }
        Ok(LaurentDerivation {
            t: self.t,
            act_x: &self.apply(&other.act_x)? - &other.apply(&self.act_x)?,
            act_y: &self.apply(&other.act_y)? - &other.apply(&self.act_y)?,
        })
    }

    pub fn commutes_with(&self, other: &LaurentDerivation) -> Result<bool> {
        Ok(self.bracket(other)?.is_zero())
    }

    pub fn scale_by(&self, q: &LaurentBiPoly) -> Result<LaurentDerivation> {
        Ok(LaurentDerivation {
            t: self.t,
            act_x: q.checked_mul(&self.act_x)?,
            act_y: q.checked_mul(&self.act_y)?,
        })
    }

    pub fn to_json(&self) -> DerivationJson {
        DerivationJson {
            ring: RingJson { t: self.t },
            dx: self.act_x.to_string(),
            dy: self.act_y.to_string(),
        }
    }

    pub fn from_json(json: &DerivationJson) -> Result<Self> {
        let t = json.ring.t;
        Self::new(parse_laurent_bi(&json.dx, t)?, parse_laurent_bi(&json.dy, t)?)
    }
}

impl fmt::Display for LaurentDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x -> {}, y -> {})", self.act_x, self.act_y)
    }
}

/// Wire form `{ "ring": {"t": int}, "dx": "<expr>", "dy": "<expr>" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub ring: RingJson,
    pub dx: String,
    pub dy: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub t: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::{parse_bi, parse_uni};

    fn pd(dx: &str, dy: &str) -> PlanarDerivation {
        PlanarDerivation::new(parse_bi(dx).unwrap(), parse_bi(dy).unwrap())
    }

    #[test]
    fn newton_on_generators() {
        let f = parse_uni("6*x^2 + 5").unwrap();
        let d = newton_derivation(&f);
        assert_eq!(d.apply(&BiPoly::x()), BiPoly::y());
        assert_eq!(d.apply(&BiPoly::y()), BiPoly::from_uni(f));
        assert_eq!(d.apply(&BiPoly::constant(rat(7, 3))), BiPoly::zero());
    }

    #[test]
    fn newton_on_y_cubed() {
        // Leibniz by hand: δ(y^3) = 3y^2·δ(y) = 3x^2y^2 for f = x^2.
        let d = newton_derivation(&parse_uni("x^2").unwrap());
        assert_eq!(d.apply(&parse_bi("y^3").unwrap()), parse_bi("3*x^2*y^2").unwrap());
    }

    #[test]
    fn trivial_newton_fields() {
        let d = newton_derivation(&UniPoly::zero());
        assert_eq!(d, pd("y", "0"));
        assert_eq!(newton_derivation(&UniPoly::x()), pd("y", "x"));
    }

    #[test]
    fn brackets() {
        let f = parse_uni("x^3 - x").unwrap();
        let d = newton_derivation(&f);
        assert!(d.bracket(&d).is_zero());
        let tan = pd("1 + x^2", "-2*x*y");
        assert!(tan.commutes_with(&pd("0", "y")));
        assert!(pd("y", "x").commutes_with(&pd("x", "y")));
        assert!(!pd("y", "x^2").commutes_with(&pd("x", "y")));
    }

    #[test]
    fn hamiltonian_values() {
        let f = parse_uni("6*x^2 + 5").unwrap();
        let h = hamiltonian(&f);
        assert_eq!(h, parse_bi("y^2 - 4*x^3 - 10*x").unwrap());
        assert!(newton_derivation(&f).apply(&h).is_zero());
        assert_eq!(hamiltonian(&UniPoly::zero()), parse_bi("y^2").unwrap());
        assert_eq!(
            hamiltonian(&parse_uni("x^2").unwrap()),
            parse_bi("y^2 - 2/3*x^3").unwrap()
        );
    }

    #[test]
    fn divergences() {
        let f = parse_uni("x^4 + 1").unwrap();
        assert!(newton_derivation(&f).is_divergence_free());
        assert!(pd("1 + x^2", "-2*x*y").is_divergence_free());
        assert_eq!(pd("x", "y").divergence(), BiPoly::constant(int(2)));
    }

    #[test]
    fn laurent_bracket_requires_same_t() {
        let a = LaurentDerivation::from_planar(&pd("y", "x"), 1);
        let b = LaurentDerivation::from_planar(&pd("x", "y"), 3);
        assert!(matches!(a.bracket(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.apply(&LaurentBiPoly::y(2)), Err(Error::RingMismatch(_))));
        let b1 = LaurentDerivation::from_planar(&pd("x", "y"), 1);
        assert!(a.commutes_with(&b1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = pd("1 + x^2", "-2*x*y");
        let json = serde_json::to_string(&d.to_json()).unwrap();
        assert!(json.contains("\"ring\":{\"t\":1}"));
        let back: DerivationJson = serde_json::from_str(&json).unwrap();
        assert_eq!(PlanarDerivation::from_json(&back).unwrap(), d);

        let alpha = LaurentDerivation::new(
            LaurentBiPoly::y(3),
            LaurentBiPoly::from_laurent(crate::algebra::parse_laurent("x^(-5/3)", 3).unwrap()),
        )
        .unwrap();
        let back = LaurentDerivation::from_json(&alpha.to_json()).unwrap();
        assert_eq!(back, alpha);
        assert!(PlanarDerivation::from_json(&alpha.to_json()).is_err());
    }
}
