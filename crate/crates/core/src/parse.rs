//! Text form of polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT ("/" INT)? | VAR | "(" expr ")"
//! VAR    := ("x" | "a" | "b") INT          (1-based index)
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

use crate::poly::{Family, Monomial, Poly, ALPHA, BETA};
use crate::scalar::format_scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable {name} at position {position}: index out of range for dimension {n}")]
    VariableOutOfRange {
        name: String,
        position: usize,
        n: usize,
    },
}

pub fn parse_poly(text: &str, n: usize) -> Result<Poly, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error(format!("unexpected {:?}", parser.src[parser.pos] as char)));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self
                .digits()
                .ok_or_else(|| self.error("expected a non-negative integer exponent"))?;
            let e: u32 = e.parse().map_err(|_| ParseError::Syntax {
                position: start,
                message: "exponent too large".into(),
            })?;
            let mut out = Poly::one(self.n);
            for _ in 0..e {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = BigInt::from_str(&self.digits().expect("digit present")).expect("digits");
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self
                        .digits()
                        .ok_or_else(|| self.error("expected a denominator"))?;
                    let den = BigInt::from_str(&den).expect("digits");
                    if den.is_zero() {
                        return Err(ParseError::Syntax {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Poly::constant(self.n, value))
            }
            Some(c @ (b'x' | b'a' | b'b')) => {
                let start = self.pos;
                self.pos += 1;
                let idx = self
                    .digits()
                    .ok_or_else(|| self.error("expected a variable index"))?;
                let name = format!("{}{}", c as char, idx);
                let index: usize = idx.parse().unwrap_or(usize::MAX);
                if index == 0 || index > self.n {
                    return Err(ParseError::VariableOutOfRange {
                        name,
                        position: start,
                        n: self.n,
                    });
                }
                let family = match c {
                    b'x' => Family::X,
                    b'a' => ALPHA,
                    _ => BETA,
                };
                Ok(Poly::var(self.n, family, index - 1).expect("index checked"))
            }
            Some(c) => Err(self.error(format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn var_name(n: usize, pos: usize) -> String {
    let block = pos / n;
    let index = pos % n + 1;
    match block {
        0 => format!("x{index}"),
        1 => format!("a{index}"),
        2 => format!("b{index}"),
        k => format!("xi{}_{index}", k),
    }
}

fn format_monomial(n: usize, m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(pos, &e)| {
            if e == 1 {
                var_name(n, pos)
            } else {
                format!("{}^{}", var_name(n, pos), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text: terms by decreasing fiber degree, then decreasing key.
pub fn format_poly(p: &Poly) -> String {
    let n = p.dim();
    let mut terms: Vec<_> = p.terms().collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|(a, _), (b, _)| {
        b.fiber_degree(n)
            .cmp(&a.fiber_degree(n))
            .then_with(|| b.cmp(a))
    });
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = format_monomial(n, m);
        if mono.is_empty() {
            out.push_str(&format_scalar(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_scalar(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}
