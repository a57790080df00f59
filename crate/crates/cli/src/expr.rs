//! Text syntax for Laurent polynomials over a coefficient field.
//!
//! `2 - 3*t + 2*t^2`, `x1^-1*t - 1/2`, `(x1 + 1)/(x2)*t^-1`. Products are taken
//! in the order written, so `t*x1` and `x1*t` differ over a skew ring.

use num_bigint::BigInt;
use num_rational::BigRational;
use twalex_core::scalars::{FieldSpec, Scalar};
use twalex_core::skewpoly::{SkewPoly, SkewRing};

use crate::error::CliError;

pub fn parse_poly(ring: &SkewRing, text: &str) -> Result<SkewPoly, CliError> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(f)
}

/// A scalar written in the same syntax, without `t`.
pub fn parse_scalar(spec: &FieldSpec, text: &str) -> Result<Scalar, CliError> {
    let ring = SkewRing::new(spec.clone());
    let f = parse_poly(&ring, text)?;
    match f.terms().collect::<Vec<_>>().as_slice() {
        [] => Ok(spec.zero()),
        [(0, a)] => Ok((*a).clone()),
        _ => Err(CliError::Parse(format!("\"{text}\" is not a constant"))),
    }
}

struct Parser<'a> {
    ring: &'a SkewRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> CliError {
        let text = String::from_utf8_lossy(self.src);
        CliError::Parse(format!("{msg} at position {} in \"{text}\"", self.pos))
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

    fn expr(&mut self) -> Result<SkewPoly, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SkewPoly, CliError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = self.ring.mul(&acc, &self.factor()?);
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = self.ring.mul(&acc, &self.unit_inverse(&d)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SkewPoly, CliError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.integer()?;
        let base = if e < 0 {
            self.unit_inverse(&base)?
        } else {
            base
        };
        let mut acc = self.ring.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.ring.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SkewPoly, CliError> {
        let spec = self.ring.spec();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(self.ring.t(1))
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let index: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.error("expected a variable index"))?;
                if index == 0 {
                    return Err(self.error("variables are numbered from x1"));
                }
                let x = spec
                    .variable(index - 1)
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(self.ring.constant(x))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                let q = BigRational::from_integer(n);
                let a = spec
                    .from_rational(&q)
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(self.ring.constant(a))
            }
            _ => Err(self.error("expected a number, variable, t or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64, CliError> {
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let v: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected an integer exponent"))?;
        Ok(if neg { -v } else { v })
    }

    /// Inverse of a single term `c t^k`.
    fn unit_inverse(&self, f: &SkewPoly) -> Result<SkewPoly, CliError> {
        let terms: Vec<_> = f.terms().collect();
        match terms.as_slice() {
            [(k, c)] => Ok(SkewPoly::term(self.ring.gamma(-k, &c.inv()), -k)),
            _ => Err(self.error("only monomials c*t^k can be inverted")),
        }
    }
}

/// Renders `f` in the syntax accepted by [`parse_poly`], ascending in `t`.
pub fn format_poly(f: &SkewPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in f.terms().enumerate() {
        let text = c.to_string();
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains([' ', '/']) || is_plain_rational(rest) => {
                (true, rest.to_string())
            }
            _ => (false, text),
        };
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let power = match e {
            0 => String::new(),
            1 => "t".into(),
            e => format!("t^{e}"),
        };
        if power.is_empty() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&power);
        } else {
            out.push_str(&body);
            out.push('*');
            out.push_str(&power);
        }
    }
    out
}

fn is_plain_rational(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit() || b == b'/')
}

#[cfg(test)]
mod tests {
    use super::*;
    use twalex_core::scalars::IntMatrix;

    fn q() -> SkewRing {
        SkewRing::new(FieldSpec::rationals())
    }

    #[test]
    fn polynomials_over_q() {
        let r = q();
        assert_eq!(
            parse_poly(&r, "2 - 3*t + 2*t^2").unwrap(),
            r.from_ints(0, &[2, -3, 2])
        );
        assert_eq!(
            parse_poly(&r, "(t - 1)^2").unwrap(),
            r.from_ints(0, &[1, -2, 1])
        );
        assert_eq!(
            parse_poly(&r, "t^-1 - 1").unwrap(),
            r.from_ints(-1, &[1, -1])
        );
        assert_eq!(parse_poly(&r, "0").unwrap(), SkewPoly::zero());
        let half = parse_poly(&r, "1/2*t").unwrap();
        assert_eq!(format_poly(&half), "1/2*t");
        assert!(parse_poly(&r, "t +").is_err());
        assert!(parse_poly(&r, "x1").is_err());
        assert!(parse_poly(&r, "1/(1 + t)").is_err());
    }

    #[test]
    fn skew_order_matters() {
        let spec = FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).unwrap();
        let r = SkewRing::new(spec);
        let a = parse_poly(&r, "t*x2").unwrap();
        let b = parse_poly(&r, "x1*x2*t").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, parse_poly(&r, "x2*t").unwrap());
    }

    #[test]
    fn round_trip() {
        let spec = FieldSpec::ratfun(2, IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]])).unwrap();
        let r = SkewRing::new(spec);
        for text in [
            "-x1*t^-1 + (x1 + 1)/(x2) - 3*t^2",
            "-1 + (x1^2 - x2)*t",
            "t - 1/2*t^3",
        ] {
            let f = parse_poly(&r, text).unwrap();
            assert_eq!(parse_poly(&r, &format_poly(&f)).unwrap(), f, "{text}");
        }
        let q = q();
        for text in ["-1/3 + t", "2 - t^5", "-t^-2"] {
            let f = parse_poly(&q, text).unwrap();
            assert_eq!(parse_poly(&q, &format_poly(&f)).unwrap(), f, "{text}");
        }
    }
}
