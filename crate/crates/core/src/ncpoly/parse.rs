//! Text syntax for free-algebra elements.
//!
//! ```text
//! expr    := signed (('+' | '-') signed)*
//! signed  := ('+' | '-')* product
//! product := power ('*'? power)*        juxtaposition is the product
//! power   := atom ('^' INT)?            INT >= 1
//! atom    := INT ('/' INT)? | GEN | '(' expr ')'
//! GEN     := x | y | z | w | x<k>       x<k> is generator k, 1-based
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NCPoly;
use crate::error::{Error, Result};

pub fn parse(text: &str, n: usize) -> Result<NCPoly> {
    if n == 0 || n > 255 {
        return Err(Error::Invalid(format!("generator count {n} out of range")));
    }
    let mut p = Parser { s: text.as_bytes(), pos: 0, n };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = self.signed()?;
        while matches!(self.peek(), Some(b'+' | b'-')) {
            let rhs = self.signed()?;
            acc = acc.add(&rhs)?;
        }
        Ok(acc)
    }

    fn signed(&mut self) -> Result<NCPoly> {
        let mut neg = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            neg ^= c == b'-';
            self.pos += 1;
        }
        let p = self.product()?;
        Ok(if neg { p.scale(&-BigRational::one()) } else { p })
    }

    fn starts_atom(c: u8) -> bool {
        c.is_ascii_digit() || c.is_ascii_alphabetic() || c == b'('
    }

    fn product(&mut self) -> Result<NCPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = acc.nc_mul(&rhs)?;
                }
                Some(c) if Self::starts_atom(c) => {
                    let rhs = self.power()?;
                    acc = acc.nc_mul(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            if self.peek() == Some(b'-') {
                return Err(Error::BadExponent { pos: at });
            }
            let k = self.integer()?;
            if k.is_zero() {
                return Err(Error::BadExponent { pos: at });
            }
            let k: usize = k.try_into().map_err(|_| Error::Syntax { pos: at, msg: "exponent too large".into() })?;
            return base.pow(k);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<NCPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
                    }
                    q /= BigRational::from_integer(den);
                }
                Ok(NCPoly::one(self.n).scale(&q))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => self.generator(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn generator(&mut self) -> Result<NCPoly> {
        let start = self.pos;
        let c = self.s[self.pos];
        self.pos += 1;
        let mut idx_end = self.pos;
        if c == b'x' {
            while idx_end < self.s.len() && self.s[idx_end].is_ascii_digit() {
                idx_end += 1;
            }
        }
        let name = std::str::from_utf8(&self.s[start..idx_end]).expect("ascii").to_string();
        let unknown = |name: String| Error::UnknownGenerator { name, pos: start, n: self.n };
        let index = if idx_end > self.pos {
            let k: usize = name[1..].parse().map_err(|_| unknown(name.clone()))?;
            if k == 0 {
                return Err(unknown(name));
            }
            k - 1
        } else {
            match c {
                b'x' => 0,
                b'y' if self.n <= 4 => 1,
                b'z' if self.n <= 4 => 2,
                b'w' if self.n <= 4 => 3,
                _ => return Err(unknown(name)),
            }
        };
        if index >= self.n {
            return Err(unknown(name));
        }
        self.pos = idx_end;
        Ok(NCPoly::generator(self.n, index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Word;

    #[test]
    fn parse_examples() {
        let p = parse("x^2+y^2", 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Word::new(vec![0, 0])), BigRational::one());
        assert_eq!(p.coeff(&Word::new(vec![1, 1])), BigRational::one());
        let x = NCPoly::generator(2, 0);
        let y = NCPoly::generator(2, 1);
        assert_eq!(parse("x*y - y*x", 2).unwrap(), x.bracket(&y).unwrap());
        assert!(matches!(parse("x^0", 2), Err(Error::BadExponent { .. })));
    }

    #[test]
    fn juxtaposition_and_precedence() {
        assert_eq!(parse("xy^2", 2).unwrap(), NCPoly::word(2, &[0, 1, 1]));
        assert_eq!(parse("(xy)^2", 2).unwrap(), NCPoly::word(2, &[0, 1, 0, 1]));
        assert_eq!(parse("x1 x2", 3).unwrap(), NCPoly::word(3, &[0, 1]));
        assert_eq!(parse("3/2 x", 2).unwrap().to_string(), "3/2*x");
        assert_eq!(parse("--x", 2).unwrap(), NCPoly::generator(2, 0));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("z", 2), Err(Error::UnknownGenerator { pos: 0, .. })));
        assert!(matches!(parse("x4", 3), Err(Error::UnknownGenerator { .. })));
        assert!(matches!(parse("x +", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("(x", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x^-1", 2), Err(Error::BadExponent { .. })));
        assert!(matches!(parse("x $ y", 2), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["x^2+y^2", "xy - yx + 1/3", "2 x y x - 7/5 w z", "0"] {
            let p = parse(s, 4).unwrap();
            assert_eq!(parse(&p.to_string(), 4).unwrap(), p);
        }
    }
}
