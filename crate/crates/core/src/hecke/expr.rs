//! A small expression language for exact Hecke elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | number | 'u' | 'p' | 'T(' word ')'
//!         | 'star(' expr ')' | 'j(' expr ')' | '(' expr ')'
//! number := integer | integer '/' integer | decimal
//! ```
//!
//! `u` is the formal square root of `q` and `p = u − u⁻¹`. Words inside
//! `T(...)` use the element text format (names separated by spaces or dots,
//! `1` for the identity).

use std::sync::Arc;

use num_rational::BigRational;

use super::element::{ExactAlgebra, ExactHecke, HeckeAlgebra};
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::parse_rational;

/// Parses and evaluates `text` in the exact algebra of `sys`.
pub fn eval_expression(sys: &Arc<CoxeterSystem>, text: &str) -> Result<ExactHecke> {
    let alg = HeckeAlgebra::exact(sys.clone());
    let mut parser = Parser { alg, text, pos: 0 };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    alg: Arc<ExactAlgebra>,
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::input(format!("expression column {}: {msg}", self.pos + 1))
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<ExactHecke> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactHecke> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn factor(&mut self) -> Result<ExactHecke> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some('-') => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(inner.scale(&LaurentPoly::from_int(-1)))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_string();
                match name.as_str() {
                    "u" => Ok(self.alg.scalar(LaurentPoly::u_pow(1))),
                    "p" => Ok(self.alg.scalar(LaurentPoly::hecke_p())),
                    "T" => {
                        self.expect('(')?;
                        let close = self.rest().find(')').ok_or_else(|| self.error("unclosed T("))?;
                        let word = &self.text[self.pos..self.pos + close];
                        let w = self.alg.system().parse_element(word)?;
                        self.pos += close + 1;
                        Ok(self.alg.t(w))
                    }
                    "star" => {
                        self.expect('(')?;
                        let inner = self.expr()?;
                        self.expect(')')?;
                        Ok(inner.star())
                    }
                    "j" => {
                        self.expect('(')?;
                        let inner = self.expr()?;
                        self.expect(')')?;
                        Ok(inner.j_iso())
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error(&format!("unknown symbol {name:?}")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<ExactHecke> {
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '/'))
            .unwrap_or(self.rest().len());
        let literal = &self.text[self.pos..self.pos + len];
        let value: BigRational = parse_rational(literal).map_err(|e| self.error(&e.to_string()))?;
        self.pos += len;
        Ok(self.alg.scalar(LaurentPoly::constant(value)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;

    fn sys() -> Arc<CoxeterSystem> {
        Arc::new(catalog::free_product(3))
    }

    #[test]
    fn generator_square() {
        let x = eval_expression(&sys(), "T(s)*T(s)").unwrap();
        assert_eq!(x.to_text(), "T(1) + (u - u^-1)*T(s)");
        let y = eval_expression(&sys(), "1 + p*T(s)").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn star_and_scalars() {
        let x = eval_expression(&sys(), "star(T(s t)) - 3/2*T(t.s)").unwrap();
        assert_eq!(x.to_text(), "(-1/2)*T(t.s)");
        let z = eval_expression(&sys(), "(T(u) - T(u)) * 0.5").unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn j_changes_algebra() {
        let x = eval_expression(&sys(), "j(T(s)*T(s))").unwrap();
        let y = eval_expression(&sys(), "j(T(s))*j(T(s))").unwrap();
        assert_eq!(x, y);
        assert!(eval_expression(&sys(), "j(T(s)) + T(s)").is_err());
    }

    #[test]
    fn errors_carry_position() {
        let err = eval_expression(&sys(), "T(s) + foo").unwrap_err().to_string();
        assert!(err.contains("column 8"), "{err}");
        assert!(eval_expression(&sys(), "T(q)").is_err());
        assert!(eval_expression(&sys(), "T(s").is_err());
        assert!(eval_expression(&sys(), "T(s) T(t)").is_err());
    }
}
