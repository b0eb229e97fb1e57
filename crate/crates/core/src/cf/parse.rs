//! Arithmetic expressions in `n`, e.g. `"2n^2 - 3*n + 1/2"` or `"(n+1)^3"`.
//!
//! Grammar: `+ - * / ^`, parentheses, decimal or integer literals, the
//! variable `n`, and juxtaposition for multiplication (`4n`, `2(n+1)`).
//! Exponents are nonnegative integer literals.

use super::poly::Poly;
use super::polyseq::PolySeq;
use super::CfError;
use crate::bignum::rational::parse_decimal;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    N,
    Op(char),
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, CfError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' | '.' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '.') {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..=i].iter().collect()));
            }
            'n' => out.push(Tok::N),
            '+' | '-' | '*' | '/' | '^' => out.push(Tok::Op(c)),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => return Err(CfError::Parse(format!("unexpected character '{c}' in \"{s}\""))),
        }
        i += 1;
    }
    Ok(out)
}

/// A rational function as numerator and denominator.
type Frac = (Poly, Poly);

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> CfError {
        CfError::Parse(format!("{msg} at token {}", self.pos + 1))
    }

    fn expr(&mut self) -> Result<Frac, CfError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if c == '-' { (rhs.0.neg(), rhs.1) } else { rhs };
            acc = (acc.0.mul(&rhs.1).add(&rhs.0.mul(&acc.1)), acc.1.mul(&rhs.1));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, CfError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = (acc.0.mul(&rhs.0), acc.1.mul(&rhs.1));
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.0.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = (acc.0.mul(&rhs.1), acc.1.mul(&rhs.0));
                }
                Some(Tok::Num(_) | Tok::N | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = (acc.0.mul(&rhs.0), acc.1.mul(&rhs.1));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac, CfError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok((v.0.neg(), v.1))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac, CfError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek().cloned() {
                Some(Tok::Num(t)) if t.chars().all(|c| c.is_ascii_digit()) => {
                    t.parse::<u32>().map_err(|_| self.err("exponent too large"))?
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            };
            self.pos += 1;
            if e > 64 {
                return Err(self.err("exponent too large"));
            }
            return Ok((base.0.pow(e), base.1.pow(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac, CfError> {
        match self.peek().cloned() {
            Some(Tok::Num(t)) => {
                self.pos += 1;
                let v = parse_decimal(&t).ok_or_else(|| self.err(&format!("bad number \"{t}\"")))?;
                Ok((Poly::constant(v), Poly::one()))
            }
            Some(Tok::N) => {
                self.pos += 1;
                Ok((Poly::var(), Poly::one()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => Err(self.err("unexpected token")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression in `n` into a sequence.
pub fn parse_polyseq(s: &str) -> Result<PolySeq, CfError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(CfError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let (num, den) = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    PolySeq::new(num, Some(den))
}
