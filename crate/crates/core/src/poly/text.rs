//! Text form of polynomials: `3/2*x1^2*x3 + x2 - 1`.
//!
//! Rendering lists monomials in decreasing lexicographic order. The parser
//! accepts the rendered form plus parentheses, `/` by constants and implicit
//! multiplication (`2x1`, `x2(x1+1)`).

use super::Polynomial;
use crate::rational::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            let factors: Vec<String> = m
                .pairs()
                .iter()
                .map(|&(v, e)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{e}", v + 1) })
                .collect();
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Num(digits.parse().unwrap()));
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let idx: usize = digits
                    .parse()
                    .map_err(|_| format!("variable at offset {} needs an index, e.g. x1", start - 1))?;
                if idx == 0 {
                    return Err("variables are numbered from x1".into());
                }
                out.push(Token::Var(idx - 1));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, String> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = constant_value(&d).ok_or("division is only allowed by constants")?;
                    if c.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(Token::Num(_)) | Some(Token::Var(_)) | Some(Token::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Token::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| "exponent too large")?;
                    Ok(base.pow(e))
                }
                _ => Err("expected a nonnegative integer exponent after '^'".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, String> {
        match self.bump() {
            Some(Token::Num(n)) => Ok(Polynomial::constant(0, Rational::from_integer(n))),
            Some(Token::Var(v)) => Ok(Polynomial::var(v + 1, v)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err("missing ')'".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<Rational> {
    match p.len() {
        0 => Some(Rational::zero()),
        1 => {
            let (m, c) = p.terms().next().unwrap();
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

/// Parses the polynomial text grammar. The variable count is one more than
/// the largest variable index that appears.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, String> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut parser = Parser { tokens, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(format!("trailing input at token {}", parser.pos));
    }
    Ok(p)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use proptest::prelude::*;

    #[test]
    fn renders_in_lex_order() {
        let p = parse_polynomial("x2 + 3/2*x1^2*x3").unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x3 + x2");
        let q = parse_polynomial("-x1 - 2 + x2*x1").unwrap();
        assert_eq!(q.to_string(), "x1*x2 - x1 - 2");
        assert_eq!(parse_polynomial("x1 - x1").unwrap().to_string(), "0");
    }

    #[test]
    fn implicit_products_and_parentheses() {
        let a = parse_polynomial("x2(2x1+1)+x1+1").unwrap();
        let b = parse_polynomial("2*x1*x2 + x2 + x1 + 1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("(x1+1)^2/4").unwrap(), parse_polynomial("1/4*x1^2 + 1/2*x1 + 1/4").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x0").is_err());
        assert!(parse_polynomial("x1 +").is_err());
        assert!(parse_polynomial("1/x1").is_err());
        assert!(parse_polynomial("(x1").is_err());
        assert!(parse_polynomial("y").is_err());
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(terms in prop::collection::vec((0u32..3, 0u32..3, -9i64..=9, 1i64..5), 0..6)) {
            let p = Polynomial::from_terms(2, terms.into_iter().map(|(a, b, n, d)| {
                (Monomial::from_pairs([(0, a), (1, b)]), crate::rational::ratio(n, d))
            }));
            let back = parse_polynomial(&p.to_string()).unwrap();
            prop_assert_eq!(back.with_nvars(2), p);
        }
    }
}
