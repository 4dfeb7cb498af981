//! Text front end: a small expression grammar over rationals, `h` (hbar),
//! and the variables `p<i>`, `q<i>`, `t<i>`, `x<i>`, plus the canonical
//! deterministic printer. parse(print(f)) = f for every polynomial over the
//! base and aux variables.
//!
//! Grammar:
//!   expr   := term (('+'|'-') term)*
//!   term   := factor (('*'|'/') factor)*      ('/' only by a constant)
//!   factor := atom ('^' NAT)?
//!   atom   := RATIONAL | 'h' | VAR | '(' expr ')' | '-' atom

use num::{One, Zero};

use crate::algebra::{Coeff, Monomial, Signature, SuperPolynomial, VarKind, Variable};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct Parsed {
    pub poly: SuperPolynomial,
    pub warnings: Vec<String>,
}

pub fn parse_expression(text: &str, sig: &Signature) -> Result<Parsed> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        sig: sig.clone(),
        warnings: Vec::new(),
    };
    parser.skip_ws();
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(Parsed { poly, warnings: parser.warnings })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    sig: Signature,
    warnings: Vec<String>,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value = s
            .parse::<u64>()
            .map_err(|_| self.error("number out of range"))?;
        self.skip_ws();
        Ok(value)
    }

    fn expr(&mut self) -> Result<SuperPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SuperPolynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let pos = self.pos;
                let divisor = self.factor()?;
                let c = divisor.constant_term();
                if divisor.num_terms() > 1
                    || (divisor.num_terms() == 1 && c.is_zero())
                    || c.is_zero()
                {
                    return Err(Error::Parse {
                        pos,
                        msg: "division only by a nonzero rational constant".into(),
                    });
                }
                acc = acc.scale(&(Coeff::one() / c));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPolynomial> {
        let atom_was_odd_var = self.peek_odd_var();
        let atom = self.atom()?;
        if self.eat(b'^') {
            let pos = self.pos;
            let e = self.natural()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse {
                pos,
                msg: "exponent out of range".into(),
            })?;
            if atom_was_odd_var && e >= 2 {
                self.warnings
                    .push("odd variable raised to a power >= 2 normalizes to 0".into());
            }
            return Ok(atom.pow(e));
        }
        Ok(atom)
    }

    fn peek_odd_var(&self) -> bool {
        matches!(self.peek(), Some(b't') | Some(b'x'))
    }

    fn atom(&mut self) -> Result<SuperPolynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                Ok(self.atom()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(b'h') => {
                self.pos += 1;
                self.skip_ws();
                Ok(SuperPolynomial::hbar(&self.sig, 1))
            }
            Some(b) if b.is_ascii_digit() => {
                let numer = self.natural()?;
                let numer = i64::try_from(numer)
                    .map_err(|_| self.error("number out of range"))?;
                // an embedded rational NUM/NAT binds tighter than term-level
                // division when the divisor is a bare number
                let mut denom = 1i64;
                if self.peek() == Some(b'/')
                    && self.bytes.get(self.pos + 1).is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                    let d = self.natural()?;
                    denom = i64::try_from(d).map_err(|_| self.error("number out of range"))?;
                    if denom == 0 {
                        return Err(self.error("division by zero"));
                    }
                }
                Ok(SuperPolynomial::constant(
                    &self.sig,
                    Coeff::new(numer.into(), denom.into()),
                ))
            }
            Some(b @ (b'p' | b'q' | b't' | b'x')) => {
                let start = self.pos;
                self.pos += 1;
                let index = self.natural().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "variable name needs an index, e.g. p1".into(),
                })?;
                let index = usize::try_from(index).unwrap();
                let v = match b {
                    b'p' => Variable::p(index),
                    b'q' => Variable::q(index),
                    b't' => Variable::theta(index),
                    _ => Variable::xi(index),
                };
                if !self.sig.admits(v) {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!(
                            "variable index out of range for signature (2*{}|{},{})",
                            self.sig.n(),
                            self.sig.a(),
                            self.sig.b()
                        ),
                    });
                }
                SuperPolynomial::variable(&self.sig, v)
            }
            _ => Err(self.error("expected a rational, variable, `h`, or `(`")),
        }
    }
}

fn variable_name(v: Variable) -> String {
    let prefix = match v.kind {
        VarKind::P => "p",
        VarKind::Q => "q",
        VarKind::Theta => "t",
        VarKind::Xi => "x",
        VarKind::FiberP => "P",
        VarKind::FiberQ => "Q",
        VarKind::FiberTheta => "T",
    };
    format!("{prefix}{}", v.index)
}

fn format_monomial_factors(m: &Monomial) -> Vec<String> {
    let mut factors = Vec::new();
    for (&v, &e) in &m.even {
        if e == 1 {
            factors.push(variable_name(v));
        } else {
            factors.push(format!("{}^{}", variable_name(v), e));
        }
    }
    for &v in &m.odd {
        factors.push(variable_name(v));
    }
    if m.hbar == 1 {
        factors.push("h".into());
    } else if m.hbar > 1 {
        factors.push(format!("h^{}", m.hbar));
    }
    factors
}

fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Deterministic canonical form: terms sorted by (hbar power, total degree,
/// lexicographic monomial); reduced fractions; odd variables ascending.
pub fn format_expression(f: &SuperPolynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &Coeff)> = f.terms().collect();
    terms.sort_by_key(|(m, _)| (m.hbar, m.degree(), (*m).clone()));
    let rendered: Vec<String> = terms
        .into_iter()
        .map(|(m, c)| {
            let factors = format_monomial_factors(m);
            if factors.is_empty() {
                format_coeff(c)
            } else if c.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", format_coeff(c), factors.join("*"))
            }
        })
        .collect();
    rendered.join(" + ")
}
