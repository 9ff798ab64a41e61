use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Resultant over `Z` by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        return Ok(b.lead().pow(da as u32));
    }
    if da == 0 {
        return Ok(a.lead().pow(db as u32));
    }
    let ca = a.content();
    let cb = b.content();
    let mut a = a.div_scalar_exact(&ca);
    let mut b = b.div_scalar_exact(&cb);
    let t = ca.pow(db as u32) * cb.pow(da as u32);
    let mut s = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (dega - degb) as u32;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * h.pow(delta);
        b = r.div_scalar_exact(&divisor);
        g = a.lead();
        // h <- g^delta / h^(delta - 1)
        if delta > 0 {
            h = g.pow(delta) / h.pow(delta - 1);
        }
        match b.degree() {
            None => return Ok(BigInt::zero()),
            Some(0) => {
                let dega = a.degree().unwrap() as u32;
                let lb = b.lead();
                // h <- lb^dega / h^(dega - 1)
                let hh = if dega == 0 { h } else { lb.pow(dega) / h.pow(dega - 1) };
                return Ok(s * t * hh);
            }
            Some(_) => {}
        }
    }
}

/// Discriminant of a monic polynomial of degree at least 2.
pub fn discriminant(a: &IntPoly) -> Result<BigInt> {
    let d = a.degree().ok_or(Error::ZeroPolynomial)?;
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    let r = resultant(a, &a.derivative())?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zxpoly::{cyclo_disc_formula, cyclotomic, disc_radical_formula};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Sylvester matrix determinant via fraction-free Bareiss elimination.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                mat[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                mat[n + i][i + j] = b.coeff(n - j);
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                let Some(piv) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                mat.swap(k, piv);
                sign = -sign;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        sign * &mat[size - 1][size - 1]
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(resultant(&p(&[-1, -1, 1]), &p(&[-1, 2])).unwrap(), BigInt::from(-5));
        assert!(resultant(&IntPoly::zero(), &p(&[1, 1])).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-5, 0, 1])).unwrap(), BigInt::from(20));
        assert_eq!(discriminant(&p(&[-8, -2, -1, 1])).unwrap(), BigInt::from(-2012));
        assert_eq!(discriminant(&cyclotomic(12)).unwrap(), BigInt::from(144));
        assert_eq!(discriminant(&p(&[1, 1])), Err(Error::DegreeTooSmall { degree: 1, min: 2 }));
        assert_eq!(discriminant(&p(&[1, 0, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn radical_discriminants_match_formula() {
        for n in 2..=8u64 {
            for alpha in -20i64..=20 {
                if alpha == 0 {
                    continue;
                }
                let a = BigInt::from(alpha);
                let f = IntPoly::binomial(n as usize, &a);
                assert_eq!(discriminant(&f).unwrap(), disc_radical_formula(n, &a), "n={n} a={alpha}");
            }
        }
    }

    #[test]
    fn cyclotomic_discriminants_match_formula() {
        for n in 3..=30u64 {
            if n % 4 == 2 {
                continue;
            }
            assert_eq!(discriminant(&cyclotomic(n)).unwrap(), cyclo_disc_formula(n).unwrap(), "n={n}");
        }
    }

    fn poly_strategy() -> impl Strategy<Value = IntPoly> {
        (prop::collection::vec(-30i64..=30, 1..7), 1i64..=5).prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64s(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn resultant_antisymmetry_and_sylvester(a in poly_strategy(), b in poly_strategy()) {
            let rab = resultant(&a, &b).unwrap();
            let rba = resultant(&b, &a).unwrap();
            let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
            let sign = if (m * n) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            prop_assert_eq!(&rab, &(sign * rba));
            prop_assert_eq!(rab, sylvester_resultant(&a, &b));
        }
    }
}
