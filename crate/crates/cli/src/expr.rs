//! The expression language: rational literals, `i`, `mu`, named variables,
//! `+ - *`, integer powers and parentheses.
//!
//! Precedence from loosest to tightest: binary `+ -`, `*`, unary `-`, `^`.
//! So `-x^2` is `-(x^2)` and `-a*b` is `(-a)*b`. A rational literal such as
//! `1/3` is a single token; there is no division operator. Exponents are
//! integers, negative only for constant bases (`mu^-1`).

use std::fmt;
use std::sync::Arc;

use moyal_core::{Coeff, Poly, Space};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    I,
    Mu,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if self.token != END {
            write!(f, " at '{}'", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

const END: &str = "end of input";

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn step(k: &mut usize, column: &mut usize, n: usize) {
    *k += n;
    *column += n;
}

fn lex(src: &str, first_line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (first_line, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = (line, column);
        let tok = match c {
            '\n' => {
                k += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                step(&mut k, &mut column, 1);
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let digits = |from: usize| {
                    let mut j = from;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    j
                };
                let end = digits(k);
                let num: BigInt = chars[k..end].iter().collect::<String>().parse().expect("digits");
                let (value, end) = if end < chars.len() && chars[end] == '/' {
                    let den_end = digits(end + 1);
                    let text: String = chars[k..den_end].iter().collect();
                    if den_end == end + 1 {
                        return Err(ParseError {
                            line: start.0,
                            column: start.1,
                            token: text,
                            message: "rational literal needs a denominator".into(),
                        });
                    }
                    let den: BigInt = chars[end + 1..den_end].iter().collect::<String>().parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            line: start.0,
                            column: start.1,
                            token: text,
                            message: "zero denominator".into(),
                        });
                    }
                    (BigRational::new(num, den), den_end)
                } else {
                    (BigRational::from_integer(num), end)
                };
                let text: String = chars[k..end].iter().collect();
                let n = end - k;
                out.push(Token {
                    tok: Tok::Num(value),
                    text,
                    line: start.0,
                    column: start.1,
                });
                step(&mut k, &mut column, n);
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = k;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let text: String = chars[k..j].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(text.clone()),
                    text,
                    line: start.0,
                    column: start.1,
                });
                let len = j - k;
                step(&mut k, &mut column, len);
                continue;
            }
            other => {
                return Err(ParseError {
                    line: start.0,
                    column: start.1,
                    token: other.to_string(),
                    message: "unexpected character".into(),
                })
            }
        };
        out.push(Token {
            tok,
            text: c.to_string(),
            line: start.0,
            column: start.1,
        });
        step(&mut k, &mut column, 1);
    }
    out.push(Token {
        tok: Tok::End,
        text: END.into(),
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    variables: Option<&'a [String]>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            token: t.text.clone(),
            message: message.into(),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Num(value) = &t.tok else {
            return Err(Self::error(&t, "expected an integer exponent"));
        };
        if !value.is_integer() {
            return Err(Self::error(&t, "exponent must be an integer"));
        }
        let e: i64 = value
            .to_integer()
            .try_into()
            .map_err(|_| Self::error(&t, "exponent out of range"))?;
        if self.peek().tok == Tok::Caret {
            return Err(Self::error(self.peek(), "chained powers need parentheses"));
        }
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(v) => Ok(Expr::Num(v.clone())),
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::I),
                "mu" => Ok(Expr::Mu),
                _ => match self.variables {
                    Some(vars) if !vars.iter().any(|v| v == name) => Err(Self::error(
                        &t,
                        format!("unknown variable (expected one of {})", vars.join(", ")),
                    )),
                    _ => Ok(Expr::Var(name.clone())),
                },
            },
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(Self::error(&close, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(Self::error(&t, "unexpected end of input")),
            _ => Err(Self::error(&t, "expected a number, symbol or '('")),
        }
    }
}

/// Parse one expression. Line numbers in errors start at `first_line`.
pub fn parse_at(src: &str, first_line: usize, variables: Option<&[String]>) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(src, first_line)?,
        pos: 0,
        variables,
    };
    let e = p.sum()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        return Err(Parser::error(rest, "unexpected token"));
    }
    Ok(e)
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    parse_at(src, 1, None)
}

/// Binding strength of the outermost operator.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Expr::I => f.write_str("i"),
            Expr::Mu => f.write_str("mu"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_at(f, e, 3)
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                write_at(f, l, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_at(f, r, 2)
            }
            Expr::Mul(l, r) => {
                write_at(f, l, 2)?;
                f.write_str("*")?;
                write_at(f, r, 3)
            }
            Expr::Pow(b, k) => {
                // a fraction base reads ambiguously without parentheses
                let fraction = matches!(&**b, Expr::Num(v) if !v.is_integer());
                if fraction {
                    write!(f, "({b})")?;
                } else {
                    write_at(f, b, 5)?;
                }
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    NegativePower(String),
    Core(moyal_core::Error),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NegativePower(base) => write!(f, "negative power of non-constant base {base}"),
            EvalError::Core(e) => e.fmt(f),
        }
    }
}

impl From<moyal_core::Error> for EvalError {
    fn from(e: moyal_core::Error) -> Self {
        EvalError::Core(e)
    }
}

/// Evaluate over `space`, honoring its degree guard.
pub fn to_poly(e: &Expr, space: &Arc<Space>) -> Result<Poly, EvalError> {
    Ok(match e {
        Expr::Num(v) => Poly::constant(space, Coeff::from_rational(v.clone())),
        Expr::I => Poly::constant(space, Coeff::i()),
        Expr::Mu => Poly::constant(space, Coeff::mu()),
        Expr::Var(name) => Poly::named_var(space, name)?,
        Expr::Neg(x) => -&to_poly(x, space)?,
        Expr::Add(l, r) => to_poly(l, space)?.checked_add(&to_poly(r, space)?)?,
        Expr::Sub(l, r) => to_poly(l, space)?.checked_sub(&to_poly(r, space)?)?,
        Expr::Mul(l, r) => to_poly(l, space)?.checked_mul(&to_poly(r, space)?)?,
        Expr::Pow(b, k) => {
            let base = to_poly(b, space)?;
            if *k >= 0 {
                base.checked_pow(*k as u32)?
            } else {
                let c = base.constant_term();
                let inv = if base.is_constant() { c.inv() } else { None };
                let Some(inv) = inv else {
                    return Err(EvalError::NegativePower(b.to_string()));
                };
                Poly::constant(space, inv.pow(k.unsigned_abs() as u32))
            }
        }
    })
}

/// Evaluate an expression that must not contain variables.
pub fn to_coeff(e: &Expr) -> Result<Coeff, EvalError> {
    let empty = Space::new(Vec::<String>::new());
    Ok(to_poly(e, &empty)?.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use moyal_core::spaces::phase_space;

    fn round(src: &str) -> String {
        parse(src).unwrap().to_string()
    }

    #[test]
    fn precedence_is_standard() {
        assert_eq!(round("-x^2"), "-x^2");
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var("x".into())), 2))));
        assert_eq!(round("(-x)^2"), "(-x)^2");
        assert_eq!(round("a - (b + c)"), "a - (b + c)");
        assert_eq!(round("(a - b) + c"), "a - b + c");
        assert_eq!(round("a*(b*c)"), "a*(b*c)");
        assert_eq!(round("2 * -q1"), "2*-q1");
        assert_eq!(round("(1/3)^2"), "(1/3)^2");
        assert_eq!(round("mu^-1"), "mu^-1");
    }

    #[test]
    fn errors_cite_position_and_token() {
        let e = parse("q1 +\n  * p1").unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 3, "*"));
        let e = parse("(q1").unwrap_err();
        assert_eq!(e.token, "end of input");
        let e = parse("q1 $ p1").unwrap_err();
        assert_eq!((e.column, e.token.as_str()), (4, "$"));
        assert!(parse("x^2^3").is_err());
        assert!(parse("1/0").is_err());
        let names = vec!["q1".to_string(), "p1".to_string()];
        let e = parse_at("q1*q2", 1, Some(&names)).unwrap_err();
        assert_eq!((e.column, e.token.as_str()), (4, "q2"));
    }

    #[test]
    fn evaluation() {
        let s = phase_space(1, 64);
        let p = to_poly(&parse("(q1 + mu)^2 - 2*mu*q1").unwrap(), &s).unwrap();
        assert_eq!(p.to_string(), "q1^2 + mu^2");
        assert_eq!(to_coeff(&parse("2*mu^-1").unwrap()).unwrap().to_string(), "2*mu^-1");
        assert!(matches!(to_poly(&parse("q1^-1").unwrap(), &s), Err(EvalError::NegativePower(_))));
        assert_eq!(to_coeff(&parse("i*i").unwrap()).unwrap(), Coeff::from_int(-1));
    }
}
