use num_bigint::BigInt;
use num_rational::BigRational;

use super::{PolyError, Polynomial};

/// Parse a polynomial expression over the given variables.
///
/// Grammar: sums and differences of products; `^` takes a non-negative
/// integer exponent; `/` divides by a nonzero constant (so `3/4` is a
/// rational literal). Whitespace is ignored.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, PolyError> {
    let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return Err(self.err("division only by a nonzero constant"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected integer exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().unwrap();
                Ok(Polynomial::constant(
                    self.vars,
                    BigRational::from_integer(n),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::var(self.vars, i)),
                    None => Err(PolyError::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn fermat_cubic() {
        let f = parse_poly("x^3+y^3+z^3", &["x", "y", "z"]).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.homogeneous_degree(), Some(3));
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = parse_poly("x*y - x*y", &["x", "y"]).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.num_terms(), 0);
    }

    #[test]
    fn nodal_cubic_expands() {
        let f = parse_poly("z*y^2 - x^2*(x+z)", &["x", "y", "z"]).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(3));
        assert_eq!(f.num_terms(), 3);
    }

    #[test]
    fn rational_literals() {
        let f = parse_poly("3/4*x - 1/2", &["x"]).unwrap();
        assert_eq!(f.leading_coefficient(), BigRational::new(3.into(), 4.into()));
        assert_eq!(f.constant_term(), BigRational::new((-1).into(), 2.into()));
        assert!(!f.constant_term().is_one());
        assert!(!f.is_zero() && !BigRational::zero().is_one());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x + w", &["x", "y"]) {
            Err(PolyError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x + * y", &["x", "y"]),
            Err(PolyError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("(x + y", &["x", "y"]),
            Err(PolyError::Syntax { .. })
        ));
        assert!(parse_poly("x / y", &["x", "y"]).is_err());
    }

    #[test]
    fn print_parse_idempotent() {
        let vars = ["x", "y", "z"];
        let f = parse_poly("(x - 2*y + 1/3*z)^3 - x*y*z", &vars).unwrap();
        let g = parse_poly(&f.to_string(), &vars).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.to_string(), g.to_string());
    }
}
