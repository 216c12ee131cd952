//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' signed-int)?
//! base   := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{vars, Scalar};
use crate::error::{Error, Result};

/// Parse an expression into its canonical scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(Error::Syntax {
                        position: at,
                        message: "division by zero".into(),
                    });
                }
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.signed_int()?;
            let e = i32::try_from(e).map_err(|_| Error::Syntax {
                position: at,
                message: "exponent too large".into(),
            })?;
            if e < 0 && base.is_zero() {
                return Err(Error::Syntax {
                    position: at,
                    message: "negative power of zero".into(),
                });
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error("expected integer exponent"));
        }
        let v: i64 = digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: "exponent too large".into(),
        })?;
        Ok(if negative { -v } else { v })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Scalar::from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match vars::lookup(name) {
                    Some(v) => Ok(Scalar::var_index(v)),
                    None => Err(Error::Syntax {
                        position: start,
                        message: format!("undeclared indeterminate `{name}`"),
                    }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda() {
        let l = parse_scalar("q - 1/q").unwrap();
        assert_eq!(l, Scalar::lambda());
        assert_eq!(l.numerator().to_string(), "q^2 - 1");
        assert_eq!(l.denominator().to_string(), "q");
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_scalar("0").unwrap().is_zero());
        assert_eq!(
            parse_scalar("(q^2-1)/(q-1)").unwrap(),
            parse_scalar("q+1").unwrap()
        );
    }

    #[test]
    fn precedence_and_exponents() {
        assert_eq!(parse_scalar("2+3*4").unwrap(), Scalar::integer(14));
        assert_eq!(parse_scalar("-2^2").unwrap(), Scalar::integer(-4));
        assert_eq!(parse_scalar("(-2)^2").unwrap(), Scalar::integer(4));
        assert_eq!(parse_scalar("q^-2 * q^2").unwrap(), Scalar::one());
        assert_eq!(parse_scalar("12/4/3").unwrap(), Scalar::one());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_scalar("q + * 2") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_scalar("1/(q-q)") {
            Err(Error::Syntax { position, message }) => {
                assert_eq!(position, 1);
                assert!(message.contains("zero"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_scalar("q +"),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(parse_scalar("(q"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_scalar("undeclared_zz"),
            Err(Error::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse_scalar("q)"),
            Err(Error::Syntax { position: 1, .. })
        ));
    }
}
