//! Shared helpers for canonical printing.

use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};

/// Writes `Σ coeff·monomial` with explicit `*`, in the order given.
/// An empty monomial string denotes the constant term.
pub(crate) fn format_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (Rational, String)>,
{
    let mut out = String::new();
    for (coeff, mono) in terms {
        if coeff.is_zero() {
            continue;
        }
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&rational::format(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&rational::format(&magnitude));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `var^exp` with integer exponent; empty for exponent 0.
pub(crate) fn power(var: &str, exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e if e < 0 => format!("{var}^({e})"),
        e => format!("{var}^{e}"),
    }
}

/// `x^(p/q)` for the reduced fraction `num/den`; falls back to [`power`]
/// when the exponent is integral.
pub(crate) fn frac_power(var: &str, num: i64, den: i64) -> String {
    let g = num_integer::gcd(num, den);
    let (p, q) = if g == 0 { (0, 1) } else { (num / g, den / g) };
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    if q == 1 {
        power(var, p)
    } else {
        format!("{var}^({p}/{q})")
    }
}

/// Joins two monomial strings with `*`, skipping empty parts.
pub(crate) fn join_monomials(a: String, b: String) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (_, true) => a,
        _ => format!("{a}*{b}"),
    }
}
