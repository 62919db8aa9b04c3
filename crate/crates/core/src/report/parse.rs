//! Recursive-descent parser for Laurent polynomial expressions.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := integer | var ('^' exponent)? | '(' expr ')' ('^' integer)?
//! exponent := '-'? integer | '(' '-'? integer ')'
//! ```
//!
//! Positions in errors are byte offsets into the input.

use num_bigint::BigInt;

use crate::algebra::LaurentPolynomial;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, vars: &[impl AsRef<str>]) -> Result<LaurentPolynomial> {
    let vars: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &vars,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.syntax("empty expression"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.syntax("unexpected character"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn rank(&self) -> usize {
        self.vars.len()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPolynomial> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'.') {
                    return Err(self.syntax("only integer coefficients are allowed"));
                }
                Ok(LaurentPolynomial::constant(self.rank(), n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let index = self.vars.iter().position(|v| *v == name).ok_or_else(|| Error::UnknownVariable {
                    name: name.to_string(),
                    pos: start,
                })?;
                let k = if self.eat(b'^') { self.exponent()? } else { 1 };
                let mut e = vec![0; self.rank()];
                e[index] = k;
                Ok(LaurentPolynomial::monomial(self.rank(), 1, e))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                if self.eat(b'^') {
                    self.skip_ws();
                    let at = self.pos;
                    let k = self.exponent()?;
                    if k < 0 {
                        return Err(Error::Syntax {
                            pos: at,
                            message: "negative power of a parenthesized expression".into(),
                        });
                    }
                    return Ok(inner.pow(k as u32));
                }
                Ok(inner)
            }
            Some(_) => Err(self.syntax("expected a number, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let paren = self.eat(b'(');
        let negative = self.eat(b'-');
        let n = self.integer()?;
        self.skip_ws();
        if matches!(self.peek(), Some(b'/') | Some(b'.')) {
            return Err(Error::FractionalExponent { pos: start });
        }
        if paren && !self.eat(b')') {
            return Err(self.syntax("expected ')'"));
        }
        let n: i64 = n.try_into().map_err(|_| Error::Syntax {
            pos: start,
            message: "exponent too large".into(),
        })?;
        Ok(if negative { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: [&str; 2] = ["x", "y"];

    fn poly(terms: &[([i64; 2], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn basic_forms() {
        assert_eq!(
            parse_poly("y - x - 1", &XY).unwrap(),
            poly(&[([0, 1], 1), ([1, 0], -1), ([0, 0], -1)])
        );
        assert_eq!(parse_poly("x^-1*y + 2", &XY).unwrap(), poly(&[([-1, 1], 1), ([0, 0], 2)]));
        assert_eq!(parse_poly("x^(-2)", &XY).unwrap(), poly(&[([-2, 0], 1)]));
        assert_eq!(
            parse_poly("-(x + 1)^2 + 2*x", &XY).unwrap(),
            poly(&[([2, 0], -1), ([0, 0], -1)])
        );
        assert_eq!(
            parse_poly(" y^2-x^2*(x+1) ", &XY).unwrap(),
            poly(&[([0, 2], 1), ([2, 0], -1), ([3, 0], -1)])
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("x^(1/2)", &XY), Err(Error::FractionalExponent { pos: 2 }));
        assert_eq!(
            parse_poly("x + z", &XY),
            Err(Error::UnknownVariable { name: "z".into(), pos: 4 })
        );
        assert!(matches!(parse_poly("x +", &XY), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("2x", &XY), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("(x", &XY), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("", &XY), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn canonical_text_round_trips() {
        let f = poly(&[([-1, 2], -3), ([0, 0], 7), ([2, -1], 1)]);
        assert_eq!(parse_poly(&f.to_text(&XY), &XY).unwrap(), f);
    }
}
