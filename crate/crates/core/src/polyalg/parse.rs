//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | ident | '(' expr ')'
//! rational := '-'? uint ('/' uint)?
//! ident    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. There is no implicit multiplication
//! and no unary minus except on numeric literals.

use num_bigint::BigInt;
use num_traits::Zero;

use super::chart::Chart;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Parse `text` into a canonical polynomial over `chart`.
pub fn parse_poly(text: &str, chart: &Chart) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        chart,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                offset: at,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') | Some(b'0'..=b'9') => {
                let r = self.rational()?;
                Ok(Polynomial::constant(self.chart, r))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.chart.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.chart, i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        offset: start,
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let num = self.uint()?;
        let mut r = Rational::from_integer(num);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::Syntax {
                    offset: at,
                    message: "zero denominator".into(),
                });
            }
            r /= Rational::from_integer(den);
        }
        Ok(if neg { -r } else { r })
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{frac, int, Monomial};

    fn ch() -> Chart {
        Chart::canonical(2)
    }

    #[test]
    fn parses_free_particle_hamiltonian() {
        let h = parse_poly("1/2*p1^2 + 1/2*p2^2", &ch()).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.coefficient(&Monomial::from_exponents(vec![0, 0, 2, 0])), frac(1, 2));
        assert_eq!(h.coefficient(&Monomial::from_exponents(vec![0, 0, 0, 2])), frac(1, 2));
    }

    #[test]
    fn zero_is_empty() {
        assert!(parse_poly("0", &ch()).unwrap().is_empty());
        assert!(parse_poly(" q1 - q1 ", &ch()).unwrap().is_empty());
    }

    #[test]
    fn parses_w1() {
        let w1 = parse_poly("q2*p1 - q1*p2", &ch()).unwrap();
        assert_eq!(w1.coefficient(&Monomial::from_exponents(vec![0, 1, 1, 0])), int(1));
        assert_eq!(w1.coefficient(&Monomial::from_exponents(vec![1, 0, 0, 1])), int(-1));
    }

    #[test]
    fn literal_forms() {
        let c = ch();
        assert_eq!(parse_poly("-3^2", &c).unwrap(), Polynomial::constant(&c, int(9)));
        assert_eq!(parse_poly("2 -3", &c).unwrap(), Polynomial::constant(&c, int(-1)));
        assert_eq!(parse_poly("q1 - -3", &c).unwrap(), parse_poly("q1 + 3", &c).unwrap());
        assert_eq!(parse_poly("(-1/2)*q1", &c).unwrap(), parse_poly("-1/2*q1", &c).unwrap());
        assert_eq!(
            parse_poly("\tq1 *\n p1 ", &c).unwrap(),
            parse_poly("q1*p1", &c).unwrap()
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let c = ch();
        let cases = [
            ("q1 +", 4),
            ("q1 q2", 3),
            ("-q1", 1),
            ("(q1", 3),
            ("q1^", 3),
            ("1/0", 2),
            ("q1 $", 3),
            ("q1/2", 2),
            ("", 0),
        ];
        for (text, offset) in cases {
            match parse_poly(text, &c) {
                Err(Error::Syntax { offset: o, .. }) => assert_eq!(o, offset, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_variable_is_named() {
        match parse_poly("q1 + zeta*p1", &ch()) {
            Err(Error::UnknownVariable { name, offset }) => {
                assert_eq!(name, "zeta");
                assert_eq!(offset, 5);
            }
            other => panic!("{other:?}"),
        }
    }
}
