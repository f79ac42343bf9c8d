//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*          juxtaposition multiplies
//! factor := atom ('^' exponent)?
//! exponent := ['-'] int | '(' ['-'] int ')'
//! atom   := 'a' | 'ad' | 'K' | 'I' | 'w' | 'g'int | rational
//!         | '[' expr ',' expr ']' | '(' expr ')'
//! rational := int | int '.' digits | int '/' int
//! ```
//!
//! `w` is `ζ = e^{iπ/λ}` and `g1 … g(λ-1)` are the formal `γ_r`. Brackets
//! desugar to `XY − YX` here, so later stages only see sums and products.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use super::expr::{Atom, OperatorExpr, ScalarLit};

/// Powers above this are rejected; they only serve to blow up rewriting.
const MAX_EXPONENT: i64 = 32;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }

    /// The source line with a caret under the offending position.
    pub fn render(&self, src: &str) -> String {
        let col = src[..self.position.min(src.len())].chars().count();
        format!("{src}\n{}^ {}", " ".repeat(col), self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(BigRational),
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: BigInt = src[start..i].parse().expect("digits");
            let value = if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let frac_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == frac_start {
                    return Err(ParseError::new(i, "expected digits after '.'"));
                }
                let frac: BigInt = src[frac_start..i].parse().expect("digits");
                let scale = BigInt::from(10).pow((i - frac_start) as u32);
                BigRational::new(int_part * &scale + frac, scale)
            } else if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                let den_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = src[den_start..i].parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::new(den_start, "zero denominator"));
                }
                BigRational::new(int_part, den)
            } else {
                BigRational::from_integer(int_part)
            };
            out.push((Tok::Number(value), start));
            continue;
        }
        return Err(ParseError::new(
            start,
            format!("unknown token '{}'", src[start..].chars().next().unwrap()),
        ));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    lambda: usize,
}

/// Parse `text` for the algebra with cyclic order `lambda`.
pub fn parse(text: &str, lambda: usize) -> Result<OperatorExpr, ParseError> {
    if lambda < 2 {
        return Err(ParseError::new(
            0,
            format!("lambda must be at least 2, got {lambda}"),
        ));
    }
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        lambda,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RBracket | Tok::RParen => Err(p.error("unmatched closing bracket")),
        t => Err(p.error(format!("unexpected {t:?}"))),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.offset(), msg)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else if *self.peek() == Tok::End {
            Err(self.error(format!(
                "expected {what}, found end of input (mismatched bracket?)"
            )))
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                OperatorExpr::Neg(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OperatorExpr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OperatorExpr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Number(_) | Tok::LBracket | Tok::LParen
        )
    }

    fn term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_atom() {
                return Ok(lhs);
            }
            lhs = OperatorExpr::mul(lhs, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret_at = self.offset();
        self.bump();
        let n = self.exponent()?;
        if n.abs() > MAX_EXPONENT {
            return Err(ParseError::new(
                caret_at,
                format!("exponent {n} exceeds {MAX_EXPONENT}"),
            ));
        }
        if n < 0 && !base.is_invertible_atom() {
            return Err(ParseError::new(
                caret_at,
                format!("negative power of non-invertible factor {base}"),
            ));
        }
        Ok(OperatorExpr::pow(base, n))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let at = self.offset();
        let n: i64 = match self.bump() {
            Tok::Number(r) if r.is_integer() => r
                .to_integer()
                .try_into()
                .map_err(|_| ParseError::new(at, "exponent out of range"))?,
            _ => return Err(ParseError::new(at, "expected integer exponent")),
        };
        if parens {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Ident(name) => self.ident(&name, at),
            Tok::Number(r) => Ok(OperatorExpr::Scalar(ScalarLit::Rational(r))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBracket => {
                let x = self.expr()?;
                self.expect(Tok::Comma, "',' in commutator")?;
                let y = self.expr()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(OperatorExpr::commutator(x, y))
            }
            Tok::End => Err(ParseError::new(at, "unexpected end of input")),
            Tok::RBracket | Tok::RParen => Err(ParseError::new(at, "unmatched closing bracket")),
            t => Err(ParseError::new(at, format!("unexpected {t:?}"))),
        }
    }

    fn ident(&self, name: &str, at: usize) -> Result<OperatorExpr, ParseError> {
        match name {
            "a" => Ok(OperatorExpr::Atom(Atom::A)),
            "ad" => Ok(OperatorExpr::Atom(Atom::Ad)),
            "K" => Ok(OperatorExpr::Atom(Atom::K)),
            "I" => Ok(OperatorExpr::Atom(Atom::I)),
            "w" => Ok(OperatorExpr::Scalar(ScalarLit::Zeta)),
            _ => {
                if let Some(digits) = name.strip_prefix('g') {
                    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                        let r: usize = digits
                            .parse()
                            .map_err(|_| ParseError::new(at, "gamma index out of range"))?;
                        if !(1..self.lambda).contains(&r) {
                            return Err(ParseError::new(
                                at,
                                format!("g{r}: gamma index must be in 1..{}", self.lambda - 1),
                            ));
                        }
                        return Ok(OperatorExpr::Scalar(ScalarLit::Gamma(r)));
                    }
                }
                Err(ParseError::new(at, format!("unknown token '{name}'")))
            }
        }
    }
}
