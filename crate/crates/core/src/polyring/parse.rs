//! Parser for the human syntax `3/2*x^2*y - 1`: integer literals, `+ - * /`,
//! `^` with a non-negative integer exponent, and parentheses. Division is
//! only allowed by a nonzero constant.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, Polynomial, Rational, VarSet};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, PolyError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Int(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else {
            let op = match c {
                '\u{2212}' => '-',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
                _ => return Err(PolyError::Parse(format!("unexpected character '{c}'"))),
            };
            out.push(Token::Op(op));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(PolyError::Parse(
                        "division is only allowed by a nonzero constant".into(),
                    ));
                }
                acc = acc.scale(&d.constant_term().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        if self.eat_op('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let n: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(n));
                }
                _ => {
                    return Err(PolyError::Parse(
                        "expected integer exponent after '^'".into(),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Polynomial::var(self.vars, &name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(PolyError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(PolyError::Parse(format!("unexpected token {t:?}"))),
            None => Err(PolyError::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses `src` over a fixed variable set.
pub fn parse_polynomial(src: &str, vars: &VarSet) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let result = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(PolyError::Parse(format!(
            "trailing input at token {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(result)
}

/// Parses `src`, taking the variables in order of first appearance.
pub fn parse_infer(src: &str) -> Result<Polynomial, PolyError> {
    let mut names: Vec<String> = Vec::new();
    for t in tokenize(src)? {
        if let Token::Ident(n) = t {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    }
    parse_polynomial(src, &VarSet::new(names)?)
}

impl std::str::FromStr for Polynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_infer(s)
    }
}

/// Rational literal `"num"` or `"num/den"`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::Parse(format!("bad rational literal '{s}'"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
