use super::{LaurentPoly2, RatFunc2, ScalarError};
use num::{BigInt, One};

/// Parses the text form produced by `Display`, e.g. `(q1^2 + 1 + q1^-2)/(q2 + q2^-1)`.
/// Accepts general `+ - * / ^ ( )` expressions over integers and the two variables.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc2, ScalarError> {
    parse_ratfunc_with(s, ["q1", "q2"])
}

pub fn parse_ratfunc_with(s: &str, names: [&str; 2]) -> Result<RatFunc2, ScalarError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, names };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: [&'a str; 2],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc2, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc2, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = &acc * &d.inv().map_err(|_| self.err("division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc2, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc2, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = self.integer()?;
            let n: i32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
            if neg && base.is_zero() {
                return Err(self.err("negative power of zero"));
            }
            return Ok(base.pow(if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<RatFunc2, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFunc2::from_rat(num::BigRational::new(n, BigInt::one())))
            }
            Some(_) => {
                for (k, name) in self.names.iter().enumerate() {
                    if self.s[self.pos..].starts_with(name.as_bytes()) {
                        self.pos += name.len();
                        return Ok(RatFunc2::from_poly(LaurentPoly2::var(k as u8 + 1)));
                    }
                }
                Err(self.err("unexpected character"))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

