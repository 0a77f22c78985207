//! Expression parser for the polynomial rings.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*        // '/' only by nonzero constants
//! unary    := ('-' | '+') unary | power
//! power    := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ('-' | '+')? int ('/' int)? ')'
//! atom     := int | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Everything is evaluated in `K[x^(1/t), x^(-1/t), y]` and then narrowed to
//! the requested ring.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bipoly::BiPoly;
use super::laurent::{LaurentBiPoly, LaurentPoly};
use super::rational::{self, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Which ring a text should be read into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Uni,
    Bi,
    Laurent { t: u32 },
    LaurentBi { t: u32 },
}

/// A parsed ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Uni(UniPoly),
    Bi(BiPoly),
    Laurent(LaurentPoly),
    LaurentBi(LaurentBiPoly),
}

pub fn parse_poly(text: &str, ring: Ring) -> Result<Parsed> {
    Ok(match ring {
        Ring::Uni => Parsed::Uni(parse_uni(text)?),
        Ring::Bi => Parsed::Bi(parse_bi(text)?),
        Ring::Laurent { t } => Parsed::Laurent(parse_laurent(text, t)?),
        Ring::LaurentBi { t } => Parsed::LaurentBi(parse_laurent_bi(text, t)?),
    })
}

pub fn parse_laurent_bi(text: &str, t: u32) -> Result<LaurentBiPoly> {
    if t == 0 {
        return Err(Error::invalid("root index t must be positive"));
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, t, len: text.len() };
    let value = parser.expr()?;
    if let Some(tok) = parser.tokens.get(parser.pos) {
        return Err(syntax(tok.pos, "unexpected trailing input"));
    }
    Ok(value)
}

pub fn parse_laurent(text: &str, t: u32) -> Result<LaurentPoly> {
    let p = parse_laurent_bi(text, t)?;
    match p.ycoeffs().len() {
        0 => Ok(LaurentPoly::zero(t)),
        1 => Ok(p.ycoeff(0)),
        _ => Err(Error::mismatch("y does not belong to K[x^(1/t), x^(-1/t)]")),
    }
}

pub fn parse_bi(text: &str) -> Result<BiPoly> {
    parse_laurent_bi(text, 1)?
        .to_bipoly()
        .ok_or_else(|| Error::mismatch("negative powers of x are not polynomial"))
}

pub fn parse_uni(text: &str) -> Result<UniPoly> {
    let p = parse_bi(text)?;
    p.as_uni()
        .ok_or_else(|| Error::mismatch("y does not belong to K[x]"))
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { pos, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push(Token {
                    tok: Tok::Int(digits.parse().expect("ascii digits")),
                    pos,
                });
                continue;
            }
            'x' | 'y' => Tok::Var(c),
            '+' => Tok::Plus,
            // Accept the typographic minus as well.
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        };
        out.push(Token { tok, pos });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    t: u32,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let pos = self.here();
        match self.bump() {
            Some(ref t) if *t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<LaurentBiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentBiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.here();
                    let divisor = self.unary()?;
                    let c = as_constant(&divisor)
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| syntax(pos, "can only divide by a nonzero constant"))?;
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentBiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentBiPoly> {
        let base_pos = self.here();
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.here();
        let exp = self.exponent()?;
        raise(&base, &exp, self.t).map_err(|e| match e {
            Error::Syntax { message, .. } => syntax(exp_pos.max(base_pos), message),
            other => other,
        })
    }

    fn exponent(&mut self) -> Result<Rational> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Rational::from_integer(n)),
            Some(Tok::Minus) => match self.bump() {
                Some(Tok::Int(n)) => Ok(-Rational::from_integer(n)),
                _ => Err(syntax(pos, "expected an integer exponent")),
            },
            Some(Tok::LParen) => {
                let negative = match self.peek() {
                    Some(Tok::Minus) => {
                        self.bump();
                        true
                    }
                    Some(Tok::Plus) => {
                        self.bump();
                        false
                    }
                    _ => false,
                };
                let num = self.int(pos)?;
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    self.int(pos)?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(syntax(pos, "zero denominator in exponent"));
                }
                self.expect(Tok::RParen, "')' after exponent")?;
                let e = Rational::new(num, den);
                Ok(if negative { -e } else { e })
            }
            _ => Err(syntax(pos, "expected an exponent")),
        }
    }

    fn int(&mut self, pos: usize) -> Result<BigInt> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(syntax(pos, "expected an integer")),
        }
    }

    fn atom(&mut self) -> Result<LaurentBiPoly> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(LaurentBiPoly::from_laurent(LaurentPoly::constant(
                self.t,
                Rational::from_integer(n),
            ))),
            Some(Tok::Var('x')) => Ok(LaurentBiPoly::x(self.t)),
            Some(Tok::Var(_)) => Ok(LaurentBiPoly::y(self.t)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(_) => Err(syntax(pos, "expected a number, variable, or '('")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn as_constant(p: &LaurentBiPoly) -> Option<Rational> {
    match p.ycoeffs() {
        [] => Some(Rational::zero()),
        [c] => match c.terms().iter().collect::<Vec<_>>().as_slice() {
            [] => Some(Rational::zero()),
            [(0, v)] => Some((*v).clone()),
            _ => None,
        },
        _ => None,
    }
}

/// Single term `c · z^k` with no `y`.
fn as_x_monomial(p: &LaurentBiPoly) -> Option<(Rational, i64)> {
    match p.ycoeffs() {
        [c] if c.terms().len() == 1 => {
            let (&k, v) = c.terms().iter().next().expect("one term");
            Some((v.clone(), k))
        }
        _ => None,
    }
}

fn raise(base: &LaurentBiPoly, exp: &Rational, t: u32) -> Result<LaurentBiPoly> {
    if exp.is_integer() && !exp.is_negative() {
        let n = exp
            .to_integer()
            .to_u32()
            .ok_or_else(|| syntax(0, "exponent too large"))?;
        return Ok(base.pow(n));
    }
    let (c, k) = as_x_monomial(base).ok_or_else(|| {
        Error::mismatch("negative or fractional powers are only defined for monomials in x")
    })?;
    let coeff = if exp.is_integer() {
        let n = exp.to_integer().to_i32().ok_or_else(|| syntax(0, "exponent too large"))?;
        num_traits::Pow::pow(&c, n)
    } else if c.is_one() {
        c
    } else {
        return Err(Error::mismatch("fractional power of a non-unit coefficient"));
    };
    let zexp = exp * rational::int(k);
    let zexp = rational::to_i64(&zexp).ok_or_else(|| {
        Error::mismatch(format!(
            "exponent {} is not a multiple of 1/{t}",
            rational::format(&(exp * rational::rat(k, t as i64)))
        ))
    })?;
    Ok(LaurentBiPoly::from_laurent(LaurentPoly::monomial(t, coeff, zexp)))
}
