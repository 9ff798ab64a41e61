//! Finite fields `F_q = F_p[t]/(m(t))` and dense polynomials over them.
//!
//! Elements are coefficient vectors in `t` of fixed length `deg m`, so the
//! prime field (`m = t`) goes through the same code as its extensions.

mod factor;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::intkit::{self, mul_mod};

pub use factor::{
    distinct_degree_factor, equal_degree_split, factor_fq, is_irreducible_fq, square_free_factor, FqFactorization,
};

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    p: u64,
    degree: u32,
    /// Monic, ascending coefficients; length `degree + 1`.
    modulus: Vec<u64>,
    order: u64,
}

/// A finite field of order `p^f < 2^63`. Cheap to clone; shares its data.
#[derive(Clone, PartialEq, Eq)]
pub struct FqField(Arc<FieldData>);

/// Element of an [`FqField`]: coefficients of `1, t, ..., t^(f-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub Vec<u64>);

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.degree, self.0.modulus)
    }
}

fn order_of(p: u64, degree: u32) -> Result<u64> {
    match p.checked_pow(degree) {
        Some(q) if q < (1u64 << 63) => Ok(q),
        _ => Err(Error::SizeBound { p, degree }),
    }
}

impl FqField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FqField> {
        if !intkit::is_prime_u64(p) {
            return Err(Error::NotPrime(p.into()));
        }
        order_of(p, 1)?;
        Ok(FqField(Arc::new(FieldData { p, degree: 1, modulus: vec![0, 1], order: p })))
    }

    /// `F_p[t]/(modulus)`; the modulus is made monic and must be irreducible.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FqField> {
        let base = FqField::prime(p)?;
        let poly = FqPoly::from_u64s(&base, modulus);
        let degree =
            poly.degree().filter(|&d| d >= 1).ok_or_else(|| Error::Invalid("modulus must have degree >= 1".into()))?;
        if degree == 1 && poly.coeff(0).is_zero() {
            return Ok(base);
        }
        let order = order_of(p, degree as u32)?;
        if !is_irreducible_fq(&poly) {
            return Err(Error::Invalid(format!("modulus {poly} is reducible over F_{p}")));
        }
        let modulus = poly.monic().coeffs.iter().map(|c| c.0[0]).collect();
        Ok(FqField(Arc::new(FieldData { p, degree: degree as u32, modulus, order })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.0.degree as usize])
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FqElem {
        let mut e = self.zero();
        e.0[0] = v % self.0.p;
        e
    }

    pub fn from_i64(&self, v: i64) -> FqElem {
        self.from_u64(v.rem_euclid(self.0.p as i64) as u64)
    }

    /// The generator `t` of the field over `F_p`.
    pub fn generator(&self) -> FqElem {
        self.reduce(&[0, 1])
    }

    /// Reduce an arbitrary polynomial in `t` (coefficients already `< p` or not).
    pub fn reduce(&self, coeffs: &[u64]) -> FqElem {
        let p = self.0.p;
        let f = self.0.degree as usize;
        let mut r: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        let m = &self.0.modulus;
        if r.len() > f {
            for i in (f..r.len()).rev() {
                let c = r[i];
                if c == 0 {
                    continue;
                }
                r[i] = 0;
                for j in 0..f {
                    let t = mul_mod(c, m[j], p);
                    r[i - f + j] = (r[i - f + j] + p - t) % p;
                }
            }
        }
        r.resize(f, 0);
        FqElem(r)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.0.p;
        FqElem(a.0.iter().map(|x| (p - x) % p).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.degree == 1 {
            return FqElem(vec![mul_mod(a.0[0], b.0[0], p)]);
        }
        let mut prod = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(*x, *y, p)) % p;
            }
        }
        self.reduce(&prod)
    }

    pub fn pow(&self, a: &FqElem, mut exp: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FqElem, exp: &BigUint) -> FqElem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.0.order - 2))
        }
    }

    /// The unique `p`-th root, `a^(q/p)`.
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.0.order / self.0.p)
    }

    pub fn random(&self, rng: &mut impl Rng) -> FqElem {
        FqElem((0..self.0.degree).map(|_| rng.gen_range(0..self.0.p)).collect())
    }

    /// Every element, in lexicographic coefficient order. Only for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let p = self.0.p;
        let f = self.0.degree as usize;
        (0..self.0.order).map(move |mut idx| {
            let mut v = vec![0u64; f];
            for c in v.iter_mut() {
                *c = idx % p;
                idx /= p;
            }
            FqElem(v)
        })
    }

    /// Format an element as a polynomial in `t`.
    pub fn fmt_elem(&self, a: &FqElem) -> String {
        fmt_fp_poly(&a.0, "t")
    }
}

impl FqElem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0[0] == 1 && self.0[1..].iter().all(|&c| c == 0)
    }
}

fn fmt_fp_poly(c: &[u64], var: &str) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| match (i, v) {
            (0, _) => v.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{v}*{var}"),
            (_, 1) => format!("{var}^{i}"),
            _ => format!("{v}*{var}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `F_{p^f}` with a modulus chosen by a seeded search (`t` when `f = 1`).
pub fn fq_make(p: u64, f: u32, seed: u64) -> Result<FqField> {
    if f == 0 {
        return Err(Error::Invalid("extension degree must be >= 1".into()));
    }
    if !intkit::is_prime_u64(p) {
        return Err(Error::NotPrime(p.into()));
    }
    order_of(p, f)?;
    if f == 1 {
        return FqField::prime(p);
    }
    let base = FqField::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(17) ^ f as u64);
    loop {
        let mut m: Vec<u64> = (0..f).map(|_| rng.gen_range(0..p)).collect();
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if is_irreducible_fq(&FqPoly::from_u64s(&base, &m)) {
            return FqField::with_modulus(p, &m);
        }
    }
}

/// Whether `a = x^n` is solvable in `F_q`: `a^((q-1)/g) = 1` with `g = gcd(n, q-1)`.
pub fn nth_power_residue(field: &FqField, a: &FqElem, n: u64) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if n == 0 {
        return Err(Error::Invalid("n must be >= 1".into()));
    }
    let q1 = field.order() - 1;
    let g = intkit::gcd_u64(n, q1);
    Ok(field.pow(a, q1 / g).is_one())
}

/// Dense polynomial over an [`FqField`], ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: FqField,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly({self})")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.fmt_elem(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            match i {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?
                    } else {
                        write!(f, "x^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl FqPoly {
    pub fn new(field: &FqField, coeffs: Vec<FqElem>) -> FqPoly {
        let mut p = FqPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Polynomial over the prime subfield representation of `field` from integer coefficients.
    pub fn from_u64s(field: &FqField, coeffs: &[u64]) -> FqPoly {
        FqPoly::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn from_i64s(field: &FqField, coeffs: &[i64]) -> FqPoly {
        FqPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &FqField) -> FqPoly {
        FqPoly::new(field, vec![])
    }

    pub fn one(field: &FqField) -> FqPoly {
        FqPoly::constant(field, field.one())
    }

    pub fn constant(field: &FqField, c: FqElem) -> FqPoly {
        FqPoly::new(field, vec![c])
    }

    pub fn x(field: &FqField) -> FqPoly {
        FqPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `c * x^k`.
    pub fn monomial(field: &FqField, c: FqElem, k: usize) -> FqPoly {
        let mut v = vec![field.zero(); k];
        v.push(c);
        FqPoly::new(field, v)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> FqElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> FqPoly {
        match self.field.inv(&self.lead()) {
            None => self.clone(),
            Some(inv) => self.scale(&inv),
        }
    }

    pub fn scale(&self, c: &FqElem) -> FqPoly {
        FqPoly::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    fn check(&self, other: &FqPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FqPoly::new(&self.field, (0..n).map(|i| self.field.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FqPoly::new(&self.field, (0..n).map(|i| self.field.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        FqPoly::new(f, out)
    }

    pub fn pow(&self, mut exp: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &FqPoly) -> (FqPoly, FqPoly) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = f.inv(&divisor.lead()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FqPoly::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = f.mul(&rem[i], &inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(&c, d);
                rem[i - dd + j] = f.sub(&rem[i - dd + j], &t);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (FqPoly::new(f, quot), FqPoly::new(f, rem))
    }

    pub fn rem(&self, divisor: &FqPoly) -> FqPoly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, divisor: &FqPoly) -> FqPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division {self} / {divisor}");
        q
    }

    pub fn derivative(&self) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_u64(i as u64))).collect())
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &FqPoly) -> FqPoly {
        let base = self.rem(modulus);
        let mut acc = FqPoly::one(&self.field).rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn random(field: &FqField, degree_below: usize, rng: &mut impl Rng) -> FqPoly {
        FqPoly::new(field, (0..degree_below).map(|_| field.random(rng)).collect())
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn fq_poly_gcd(a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
    a.check(b)?;
    Ok(gcd(a, b))
}

pub(crate) fn gcd(a: &FqPoly, b: &FqPoly) -> FqPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    x.monic()
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic (or zero when both inputs are).
pub fn fq_poly_ext_gcd(a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly, FqPoly)> {
    a.check(b)?;
    let field = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FqPoly::one(field), FqPoly::zero(field));
    let (mut t0, mut t1) = (FqPoly::zero(field), FqPoly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match field.inv(&r0.lead()) {
        Some(inv) if !r0.is_zero() => Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))),
        _ => Ok((r0, s0, t0)),
    }
}

/// Solve `A x = b` over `F_p` (row-major `A`, `rows` equations in `cols`
/// unknowns). Returns one solution, or `None` if inconsistent.
pub fn solve_mod_p(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut row: Vec<u64> = r.iter().map(|v| v % p).collect();
            row.push(bi % p);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = intkit::pow_mod(m[r][c], p - 2, p);
        for v in m[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..=cols {
                    let t = mul_mod(factor, m[r][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}
