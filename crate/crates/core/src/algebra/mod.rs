//! Exact arithmetic: rationals, `K[x]`, `K[x, y]`, and Laurent rings in a
//! fractional power of `x`.

pub mod bipoly;
pub mod degree;
pub mod laurent;
pub mod parse;
pub(crate) mod print;
pub mod rational;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use degree::Degree;
pub use laurent::{LaurentBiPoly, LaurentPoly};
pub use parse::{parse_bi, parse_laurent, parse_laurent_bi, parse_uni, Ring};
pub use rational::Rational;
pub use unipoly::UniPoly;

/// Derives the by-value operator impls from the `&T op &T` ones.
macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Add<&$t> for $t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                &self + rhs
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Sub<&$t> for $t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                &self - rhs
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::ops::Mul<&$t> for $t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                &self * rhs
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use forward_ops;
