//! Integer polynomial expressions in `x` and one field variable (`z` or `t`).
//! Grammar: `+ - * ^`, parentheses, integer literals, juxtaposition as product.

use std::collections::BTreeMap;

use kummono::{FieldElem, IntPoly, NumberField, RelPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};

const MAX_EXPONENT: u32 = 4096;

/// Sparse polynomial: `(deg_x, deg_var) -> coefficient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivariate(BTreeMap<(u32, u32), BigInt>);

impl Bivariate {
    fn constant(c: BigInt) -> Bivariate {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((0, 0), c);
        }
        Bivariate(m)
    }

    fn mono(dx: u32, dv: u32) -> Bivariate {
        Bivariate(BTreeMap::from([((dx, dv), BigInt::one())]))
    }

    fn add(&self, o: &Bivariate, sign: i32) -> Bivariate {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(BigInt::zero);
            if sign < 0 {
                *e -= v;
            } else {
                *e += v;
            }
        }
        m.retain(|_, v| !v.is_zero());
        Bivariate(m)
    }

    fn mul(&self, o: &Bivariate) -> Bivariate {
        let mut m: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((a1, b1), v1) in &self.0 {
            for ((a2, b2), v2) in &o.0 {
                *m.entry((a1 + a2, b1 + b2)).or_insert_with(BigInt::zero) += v1 * v2;
            }
        }
        m.retain(|_, v| !v.is_zero());
        Bivariate(m)
    }

    fn pow(&self, e: u32) -> Bivariate {
        (0..e).fold(Bivariate::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    fn max_deg(&self) -> (u32, u32) {
        self.0.keys().fold((0, 0), |(a, b), (x, y)| (a.max(*x), b.max(*y)))
    }

    /// Coefficient polynomial (in the field variable) of `x^i`.
    fn x_coeff(&self, i: u32) -> IntPoly {
        let d = self.max_deg().1 as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for ((a, b), v) in &self.0 {
            if *a == i {
                c[*b as usize] = v.clone();
            }
        }
        IntPoly::new(c)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: char,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, String> {
        Err(format!("{msg} at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<Bivariate, String> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.add(&t, if c == b'-' { -1 } else { 1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Bivariate, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Bivariate, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Bivariate::constant(BigInt::zero()).add(&self.unary()?, -1))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Bivariate, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                Ok(_) => return self.err("exponent too large"),
                Err(_) => return self.err("expected a non-negative integer exponent"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Bivariate, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Bivariate::constant(s.parse().unwrap()))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Bivariate::mono(1, 0))
            }
            Some(c) if c as char == self.var => {
                self.pos += 1;
                Ok(Bivariate::mono(0, 1))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let allowed = if self.var == 'x' { "'x'".to_string() } else { format!("'x' or '{}'", self.var) };
                self.err(&format!("unknown variable '{}' (expected {allowed})", c as char))
            }
            Some(c) => self.err(&format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `s` with `x` and `var` as variables; pass `var = 'x'` for univariate input.
pub fn parse_bivariate(s: &str, var: char) -> Result<Bivariate, String> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, var };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Integer polynomial in `x`.
pub fn parse_int_poly(s: &str) -> Result<IntPoly, String> {
    let b = parse_bivariate(s, 'x')?;
    let d = b.max_deg().0 as usize;
    let mut c = vec![BigInt::zero(); d + 1];
    for ((a, _), v) in &b.0 {
        c[*a as usize] = v.clone();
    }
    Ok(IntPoly::new(c))
}

/// Element of `Z[theta]` written in the field's variable.
pub fn parse_element(field: &NumberField, s: &str) -> Result<FieldElem, String> {
    let var = field.var().chars().next().unwrap();
    let b = parse_bivariate(s, var)?;
    if b.max_deg().0 > 0 {
        return Err(format!("element may not contain 'x'; use '{var}' for the field generator"));
    }
    Ok(field.from_poly(&b.x_coeff(0)))
}

/// Polynomial in `x` with coefficients in `Z[theta]`.
pub fn parse_rel_poly(field: &NumberField, s: &str) -> Result<RelPoly, String> {
    let var = field.var().chars().next().unwrap();
    let b = parse_bivariate(s, var)?;
    let d = b.max_deg().0;
    Ok(RelPoly::new(field, (0..=d).map(|i| field.from_poly(&b.x_coeff(i))).collect()))
}
