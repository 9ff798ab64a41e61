//! Polynomials with coefficients in `Z[theta]`.

use std::fmt;

use num_bigint::BigInt;

use super::{FieldElem, NumberField, PrimeIdeal};
use crate::error::{Error, Result};
use crate::fqpoly::FqPoly;
use crate::zxpoly::IntPoly;

/// Dense polynomial over `O_L = Z[theta]`, ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct RelPoly {
    field: NumberField,
    coeffs: Vec<FieldElem>,
}

impl RelPoly {
    pub fn new(field: &NumberField, coeffs: Vec<FieldElem>) -> RelPoly {
        assert!(coeffs.iter().all(|c| c.field() == field), "field mismatch");
        let mut p = RelPoly { field: field.clone(), coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    /// Image of an integer polynomial.
    pub fn from_int_poly(field: &NumberField, a: &IntPoly) -> RelPoly {
        RelPoly::new(field, a.coeffs().iter().map(|c| field.from_int(c.clone())).collect())
    }

    /// `x^n - alpha`.
    pub fn binomial(n: usize, alpha: &FieldElem) -> RelPoly {
        let field = alpha.field();
        let mut c = vec![field.zero(); n + 1];
        c[0] = -alpha;
        c[n] = field.one();
        RelPoly::new(field, c)
    }

    pub fn zero(field: &NumberField) -> RelPoly {
        RelPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &NumberField) -> RelPoly {
        RelPoly::new(field, vec![field.one()])
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &RelPoly) -> RelPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RelPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &RelPoly) -> RelPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RelPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &RelPoly) -> RelPoly {
        if self.is_zero() || o.is_zero() {
            return RelPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RelPoly::new(&self.field, out)
    }

    pub fn pow(&self, e: u32) -> RelPoly {
        (0..e).fold(RelPoly::one(&self.field), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &FieldElem) -> RelPoly {
        RelPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> RelPoly {
        RelPoly::new(
            &self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&BigInt::from(i))).collect(),
        )
    }

    fn shift(&self, k: usize) -> RelPoly {
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        RelPoly::new(&self.field, c)
    }

    /// `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &RelPoly) -> RelPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.lead();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return r;
        };
        if da < db {
            return r;
        }
        let mut e = (da - db + 1) as u64;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = r.scale(&lb).sub(&b.scale(&lr).shift(dr - db));
            e -= 1;
        }
        r.scale(&lb.pow(e))
    }

    fn div_exact_scalar(&self, c: &FieldElem) -> RelPoly {
        RelPoly::new(
            &self.field,
            self.coeffs.iter().map(|a| a.div_exact(c).expect("subresultant division is exact")).collect(),
        )
    }

    /// Coefficientwise image in `F_q[x]`, `F_q = O_L / P`.
    pub fn reduce_mod_prime(&self, prime: &PrimeIdeal) -> FqPoly {
        FqPoly::new(prime.residue_field(), self.coeffs.iter().map(|c| prime.residue_map(c)).collect())
    }

    /// Coordinatewise centered lift of a polynomial over `O_L / P`.
    pub fn lift_from_residue(prime: &PrimeIdeal, a: &FqPoly) -> RelPoly {
        RelPoly::new(prime.field(), a.coeffs().iter().map(|c| prime.lift_residue(c)).collect())
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let cs = c.display();
            let term = if i == 0 {
                if c.as_integer().is_some() {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if c.is_one() {
                mono
            } else if c.as_integer().is_some() {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            terms.push(term);
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for RelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Debug for RelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelPoly({})", self.display())
    }
}

/// Resultant over `O_L` by the subresultant sequence (all divisions exact in `Z[theta]`).
pub fn rel_resultant(a: &RelPoly, b: &RelPoly) -> Result<FieldElem> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = a.field.clone();
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        return Ok(b.lead().pow(da as u64));
    }
    if da == 0 {
        return Ok(a.lead().pow(db as u64));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        negate ^= da % 2 == 1 && db % 2 == 1;
    }
    let mut g = field.one();
    let mut h = field.one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (dega - degb) as u64;
        negate ^= dega % 2 == 1 && degb % 2 == 1;
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.div_exact_scalar(&(&g * &h.pow(delta)));
        g = a.lead();
        if delta > 0 {
            h = g.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact");
        }
        match b.degree() {
            None => return Ok(field.zero()),
            Some(0) => {
                let dega = a.degree().unwrap() as u64;
                let lb = b.lead();
                let res = if dega == 0 { h } else { lb.pow(dega).div_exact(&h.pow(dega - 1)).expect("exact") };
                return Ok(if negate { -res } else { res });
            }
            Some(_) => {}
        }
    }
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f')` of a monic polynomial of degree `n >= 1`.
pub fn rel_discriminant(f: &RelPoly) -> Result<FieldElem> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if n == 1 {
        return Ok(f.field.one());
    }
    let r = rel_resultant(f, &f.derivative())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, disc_radical_elem, nf_make, FieldOptions};
    use crate::zxpoly::{discriminant, resultant};

    #[test]
    fn binomial_discriminants() {
        let k3 = cyclotomic_field(3, &FieldOptions::default()).unwrap();
        let alphas = [k3.from_i64s(&[1, -1]), k3.from_i64s(&[2, 5]), k3.from_i64(7)];
        for n in 2..=5usize {
            for a in &alphas {
                let f = RelPoly::binomial(n, a);
                assert_eq!(rel_discriminant(&f).unwrap(), disc_radical_elem(n as u64, a), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn integer_polys_agree_with_zx() {
        let q5 = nf_make(&IntPoly::from_i64s(&[-1, -1, 1]), &FieldOptions::default()).unwrap();
        let a = IntPoly::from_i64s(&[3, -2, 0, 5, 1]);
        let b = IntPoly::from_i64s(&[1, 7, 2]);
        let ra = RelPoly::from_int_poly(&q5, &a);
        let rb = RelPoly::from_int_poly(&q5, &b);
        assert_eq!(rel_resultant(&ra, &rb).unwrap().as_integer(), Some(resultant(&a, &b).unwrap()));
        assert_eq!(rel_discriminant(&ra).unwrap().as_integer(), Some(discriminant(&a).unwrap()));
    }

    #[test]
    fn general_relative_discriminant() {
        // x^2 + z x + 1 over Q(zeta_3): disc = z^2 - 4
        let k3 = cyclotomic_field(3, &FieldOptions::default()).unwrap();
        let z = k3.gen();
        let f = RelPoly::new(&k3, vec![k3.one(), z.clone(), k3.one()]);
        assert_eq!(rel_discriminant(&f).unwrap(), &z.pow(2) - &k3.from_i64(4));
        assert_eq!(f.display(), "x^2 + (z)*x + 1");
    }
}
