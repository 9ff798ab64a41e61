//! Polynomials with arbitrary-precision integer coefficients.

mod irreducible;
mod resultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fqpoly::{FqField, FqPoly};
use crate::intkit;

pub use irreducible::{is_irreducible_q, IRREDUCIBILITY_DEGREE_CAP};
pub use resultant::{discriminant, resultant};

/// Dense integer polynomial, ascending coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> IntPoly {
        IntPoly::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        IntPoly::new(v)
    }

    /// `x^n - alpha`.
    pub fn binomial(n: usize, alpha: &BigInt) -> IntPoly {
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = -alpha;
        v[n] = BigInt::one();
        IntPoly::new(v)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// gcd of the coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let mut p = self.div_scalar_exact(&c);
        if p.lead().is_negative() {
            p = -p;
        }
        p
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a = q b + r`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.lead();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return r;
        };
        if da < db {
            return r;
        }
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            let shifted = IntPoly::monomial(lr, dr - db);
            r = &r.scale(&lb) - &(&shifted * b);
            e -= 1;
        }
        r.scale(&lb.pow(e as u32))
    }

    /// Division by a monic polynomial.
    pub fn div_rem_monic(&self, b: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(b.is_monic(), "divisor must be monic");
        let db = b.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i - db + j] -= &c * bj;
            }
            quot[i - db] = c;
        }
        rem.truncate(db);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient by a monic divisor, if it divides.
    pub fn div_exact_monic(&self, b: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(b);
        r.is_zero().then_some(q)
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// Coefficients reduced into `(-m/2, m/2]`.
    pub fn reduce_centered(&self, m: &BigInt) -> IntPoly {
        let half = m / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    /// Reduction into `F_p[x]` (or into the prime-field image inside an extension).
    pub fn to_fq(&self, field: &FqField) -> FqPoly {
        let p = BigInt::from(field.p());
        FqPoly::new(field, self.coeffs.iter().map(|c| field.from_u64(c.mod_floor(&p).to_u64().unwrap())).collect())
    }

    /// Centered lift of a polynomial over a prime field.
    pub fn lift_centered(a: &FqPoly) -> IntPoly {
        let p = a.field().p();
        assert_eq!(a.field().degree(), 1, "lift from a prime field only");
        IntPoly::new(
            a.coeffs()
                .iter()
                .map(|c| {
                    let v = a.field().reduce(&c.0).0[0];
                    if v > p / 2 {
                        BigInt::from(v) - BigInt::from(p)
                    } else {
                        BigInt::from(v)
                    }
                })
                .collect(),
        )
    }

    /// Squared 2-norm of the coefficient vector.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, o: IntPoly) -> IntPoly {
        &self + &o
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, o: IntPoly) -> IntPoly {
        &self - &o
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, o: IntPoly) -> IntPoly {
        &self * &o
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic(0) is undefined");
    let divs = intkit::divisors(n).expect("small conductor");
    let mut phi = IntPoly::binomial(n as usize, &BigInt::one());
    for &d in divs.iter().filter(|&&d| d < n) {
        phi = phi.div_exact_monic(&cyclotomic(d)).expect("Phi_d divides x^n - 1");
    }
    phi
}

/// Closed-form discriminant of the cyclotomic field of conductor `n`,
/// `n^phi(n) / prod_{p | n} p^(phi(n)/(p-1))`, signed as the polynomial
/// discriminant of `Phi_n`: `(-1)^(phi(n)(phi(n)-1)/2)` times the magnitude.
pub fn cyclo_disc_formula(n: u64) -> Result<BigInt> {
    if n < 3 || n % 4 == 2 {
        return Err(Error::BadConductor { n });
    }
    let phi = intkit::euler_phi(n)?;
    let mut mag = BigInt::from(n).pow(phi as u32);
    for (p, _) in intkit::factor_u64(n)? {
        mag /= BigInt::from(p).pow((phi / (p - 1)) as u32);
    }
    if (phi * (phi - 1) / 2) % 2 == 1 {
        mag = -mag;
    }
    Ok(mag)
}

/// `(-1)^((n^2 - n)/2) n^n (-alpha)^(n-1)`, the discriminant of `x^n - alpha`.
pub fn disc_radical_formula(n: u64, alpha: &BigInt) -> BigInt {
    assert!(n >= 2);
    let sign = if ((n * n - n) / 2) % 2 == 1 { -1 } else { 1 };
    BigInt::from(sign) * BigInt::from(n).pow(n as u32) * (-alpha).pow((n - 1) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(5), IntPoly::from_i64s(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for n in 1..=200u64 {
            assert_eq!(cyclotomic(n).degree().unwrap() as u64, intkit::euler_phi(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn cyclo_formula_examples() {
        assert_eq!(cyclo_disc_formula(5).unwrap(), BigInt::from(125));
        assert_eq!(cyclo_disc_formula(12).unwrap(), BigInt::from(144));
        assert_eq!(cyclo_disc_formula(4).unwrap(), BigInt::from(-4));
        assert_eq!(cyclo_disc_formula(3).unwrap(), BigInt::from(-3));
        assert!(cyclo_disc_formula(6).is_err());
    }

    #[test]
    fn radical_formula_examples() {
        assert_eq!(disc_radical_formula(2, &BigInt::from(5)), BigInt::from(20));
        assert_eq!(disc_radical_formula(3, &BigInt::from(2)), BigInt::from(-108));
        assert_eq!(disc_radical_formula(2, &BigInt::from(1)), BigInt::from(4));
    }

    #[test]
    fn display_round() {
        let f = IntPoly::from_i64s(&[-8, -2, -1, 1]);
        assert_eq!(f.to_string(), "x^3 - x^2 - 2*x - 8");
        assert_eq!(IntPoly::from_i64s(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = IntPoly::from_i64s(&[3, -2, 0, 5, 1]);
        let b = IntPoly::from_i64s(&[1, 2, 3]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        // lc(b)^3 a - r must be divisible by b over Q; check via scaled monic test
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        // evaluate at roots numerically is awkward; verify b | lhs by pseudo_rem again
        assert!(lhs.pseudo_rem(&b).is_zero());
    }
}
