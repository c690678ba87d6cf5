use std::sync::Arc;

use num_bigint::BigInt;

use super::GroupRingElement;
use crate::exactnum::{Cyclotomic, Rational};
use crate::group::word::parse_exponent;
use crate::group::FiniteGroup;
use crate::{Error, Result};

// expr   := [+-] term ([+-] term)*
// term   := power ([*·]? power)*
// power  := atom exponent?
// atom   := integer ['/' integer] | ζn | generator | '(' expr ')'
pub(super) fn parse(group: &Arc<FiniteGroup>, text: &str) -> Result<GroupRingElement> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { g: group, s: chars, i: 0 };
    let x = p.expr()?;
    if p.i != p.s.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(x)
}

struct Parser<'a> {
    g: &'a Arc<FiniteGroup>,
    s: Vec<char>,
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn error(&self, what: &str) -> Error {
        let rest: String = self.s[self.i.min(self.s.len())..].iter().collect();
        Error::Parse(format!("{what} at '{rest}'"))
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '−'
    }

    fn expr(&mut self) -> Result<GroupRingElement> {
        let mut neg = false;
        match self.peek() {
            Some('+') => self.i += 1,
            Some(c) if Self::is_minus(c) => {
                neg = true;
                self.i += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.i += 1;
                    acc = &acc + &self.term()?;
                }
                Some(c) if Self::is_minus(c) => {
                    self.i += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' || c == 'ζ' => true,
            Some(_) => self.generator_at().is_some(),
            None => false,
        }
    }

    fn term(&mut self) -> Result<GroupRingElement> {
        let mut acc = self.power()?;
        loop {
            if matches!(self.peek(), Some('*') | Some('·')) {
                self.i += 1;
                acc = &acc * &self.power()?;
            } else if self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<GroupRingElement> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.i += 1;
                let (k, used) = parse_exponent(&self.s[self.i..])?;
                self.i += used;
                if k < 0 {
                    return Err(self.error("negative power of a group ring element"));
                }
                Ok(inner.pow(k as u32))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = Rational::from_integer(num);
                if self.peek() == Some('/') && self.s.get(self.i + 1).is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    q /= Rational::from_integer(den);
                }
                Ok(GroupRingElement::one(self.g).scale_rational(&q))
            }
            Some('ζ') => {
                self.i += 1;
                let n = self.integer()?;
                let n: usize = n
                    .try_into()
                    .map_err(|_| self.error("root of unity order out of range"))?;
                if n == 0 {
                    return Err(self.error("ζ0"));
                }
                let (k, used) = parse_exponent(&self.s[self.i..])?;
                self.i += used;
                Ok(GroupRingElement::one(self.g).scale(&Cyclotomic::zeta_pow(n, k)))
            }
            Some(_) => {
                let (gi, len) = self.generator_at().ok_or_else(|| self.error("unknown symbol"))?;
                self.i += len;
                let (k, used) = parse_exponent(&self.s[self.i..])?;
                self.i += used;
                let g = self.g.pow(self.g.generators()[gi], k);
                Ok(GroupRingElement::basis(self.g, g))
            }
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.error("expected digits"));
        }
        let digits: String = self.s[start..self.i].iter().collect();
        digits.parse().map_err(|_| self.error("bad integer"))
    }

    /// Longest generator name at the cursor, as `(generator index, length)`.
    fn generator_at(&self) -> Option<(usize, usize)> {
        self.g
            .generator_names()
            .iter()
            .enumerate()
            .filter_map(|(k, name)| {
                let n: Vec<char> = name.chars().collect();
                self.s[self.i..].starts_with(&n).then_some((k, n.len()))
            })
            .max_by_key(|&(_, l)| l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dihedral, z2_times_s3};

    #[test]
    fn expressions_expand() {
        let g = z2_times_s3().unwrap();
        let x = parse(&g, "(1-j)(1+j)").unwrap();
        assert!(x.is_zero());
        let s = g.eval_word("σ").unwrap();
        let y = parse(&g, "σ^3 − 1").unwrap();
        assert!(y.is_zero());
        let z = parse(&g, "2/3 σ").unwrap();
        assert_eq!(z.coeff(s), &Cyclotomic::from_rational(Rational::new(2.into(), 3.into())));
        let w = parse(&g, "(σ+1)²").unwrap();
        assert_eq!(w, parse(&g, "σ² + 2σ + 1").unwrap());
        assert_eq!(parse(&g, "ζ3 σ").unwrap().coeff(s), &Cyclotomic::zeta(3));
        assert!(parse(&g, "(1+σ").is_err());
        assert!(parse(&g, "q").is_err());
        assert!(parse(&g, "1/0").is_err());
    }

    #[test]
    fn words_and_inverses() {
        let d = dihedral(12).unwrap();
        let x = d.eval_word("x").unwrap();
        let e = parse(&d, "x^-1 * yx").unwrap();
        assert_eq!(e, GroupRingElement::basis(&d, d.mul(d.inv(x), d.eval_word("yx").unwrap())));
    }
}
