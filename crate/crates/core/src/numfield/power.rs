//! Exact k-th roots and polynomial roots in `Z[theta]`, and Capelli's test.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::embed::{poly_roots, real_count};
use super::{FieldElem, NumberField};
use crate::error::{Error, Result};
use crate::fqpoly::{factor_fq, fq_poly_gcd, nth_power_residue, FqField, FqPoly};
use crate::intkit;
use crate::zxpoly::IntPoly;

/// Mantissa digits of the one rung of floating-point precision used.
const F64_DIGITS: u32 = 15;
/// Most embedding-choice combinations tried before giving up.
const COMBO_CAP: u64 = 250_000;
/// Primes tried when refuting by residues.
const REFUTE_PRIMES: usize = 60;

/// A `k`-th root of `alpha` in the field, if one exists.
pub fn is_nth_power_in_field(alpha: &FieldElem, k: u64) -> Result<Option<FieldElem>> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    if k < 2 {
        return Err(Error::Invalid("root index must be >= 2".into()));
    }
    let field = alpha.field();
    let k32 = u32::try_from(k).map_err(|_| Error::Invalid("root index too large".into()))?;
    if field.degree() == 1 {
        return Ok(intkit::exact_nth_root(&alpha.coords()[0], k32).map(|r| field.from_int(r)));
    }
    let norm = alpha.norm();
    if intkit::exact_nth_root(&norm, k32).is_none() {
        return Ok(None);
    }
    let avoid = BigInt::from(k) * field.poly_disc() * &norm;
    if refuted_by_residues(field, &avoid, |fq| {
        let a = residue(alpha, fq);
        nth_power_residue(fq, &a, k).map(|b| !b).unwrap_or(false)
    }) {
        return Ok(None);
    }
    let values = alpha.embed();
    let kf = k as f64;
    let candidates: Vec<Vec<Complex64>> = values
        .iter()
        .map(|v| {
            let r = v.norm().powf(1.0 / kf);
            (0..k).map(|m| Complex64::from_polar(r, (v.arg() + 2.0 * std::f64::consts::PI * m as f64) / kf)).collect()
        })
        .collect();
    let max_abs = values.iter().map(|v| v.norm().powf(1.0 / kf)).fold(1.0, f64::max);
    reconstruct(field, &candidates, max_abs, |b| &b.pow(k) == alpha)
}

/// A root in the field of the monic integer polynomial `poly`, if it has one.
pub fn root_of_poly_in_field(field: &NumberField, poly: &IntPoly) -> Result<Option<FieldElem>> {
    if !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = poly.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(None);
    }
    let eval = |b: &FieldElem| {
        poly.coeffs().iter().rev().fold(field.zero(), |acc, c| &(&acc * b) + &field.from_int(c.clone())).is_zero()
    };
    if field.degree() == 1 {
        // rational roots of a monic polynomial are integers dividing the constant term
        let c0 = poly.coeff(0);
        if c0.is_zero() {
            return Ok(Some(field.zero()));
        }
        let c0u = c0.abs().to_u64().ok_or(Error::Invalid("constant term too large".into()))?;
        for d in intkit::divisors(c0u)? {
            for r in [BigInt::from(d), -BigInt::from(d)] {
                let b = field.from_int(r);
                if eval(&b) {
                    return Ok(Some(b));
                }
            }
        }
        return Ok(None);
    }
    let avoid = field.poly_disc() * crate::zxpoly::discriminant(poly).unwrap_or_else(|_| BigInt::from(1));
    let refuted = refuted_by_residues(field, &avoid, |fq| {
        let a = poly.to_fq(fq);
        let x = FqPoly::x(fq);
        let frob = x.pow_mod(&num_bigint::BigUint::from(fq.order()), &a).sub(&x);
        fq_poly_gcd(&frob, &a).map(|g| g.is_one()).unwrap_or(false)
    });
    if refuted {
        return Ok(None);
    }
    let coeffs: Vec<f64> = poly.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    let roots = poly_roots(&coeffs);
    let max_abs = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let candidates = vec![roots; field.degree()];
    reconstruct(field, &candidates, max_abs, eval)
}

/// Residue of `alpha` in the extension with the given modulus (image of theta = t).
fn residue(alpha: &FieldElem, fq: &FqField) -> crate::fqpoly::FqElem {
    let p = fq.p();
    let coeffs: Vec<u64> = alpha.coords().iter().map(|c| super::mod_u64(c, p)).collect();
    fq.reduce(&coeffs)
}

/// Whether `refutes` returns true at some prime `P` above a rational prime not dividing `avoid`.
fn refuted_by_residues(field: &NumberField, avoid: &BigInt, mut refutes: impl FnMut(&FqField) -> bool) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(field.seed() ^ 0x7265_6675);
    let mut tried = 0;
    for p in intkit::primes_from(3) {
        if tried == REFUTE_PRIMES {
            break;
        }
        if (avoid % BigInt::from(p)).is_zero() {
            continue;
        }
        tried += 1;
        let base = FqField::prime(p).expect("prime");
        let gbar = field.poly().to_fq(&base);
        let fac = factor_fq(&gbar, &mut rng);
        for (hbar, _) in fac.factors {
            let modulus: Vec<u64> = hbar.coeffs().iter().map(|c| c.0[0]).collect();
            let Ok(fq) = FqField::with_modulus(p, &modulus) else {
                continue;
            };
            if refutes(&fq) {
                return true;
            }
        }
    }
    false
}

/// Try every consistent choice of values at the embeddings, solve for power-basis
/// coordinates, round, and accept the first exactly verified element.
fn reconstruct(
    field: &NumberField,
    candidates: &[Vec<Complex64>],
    max_abs: f64,
    verify: impl Fn(&FieldElem) -> bool,
) -> Result<Option<FieldElem>> {
    let roots = field.complex_roots();
    let d = roots.len();
    let r1 = real_count(roots);
    let inv = vandermonde_inverse(roots);
    let inv_norm = inv.iter().map(|row| row.iter().map(|c| c.norm()).sum::<f64>()).fold(0.0, f64::max);
    let err = inv_norm * max_abs * (d as f64) * 1e-13;
    if !err.is_finite() || err > 0.2 {
        return Err(Error::PrecisionExhausted { digits: F64_DIGITS });
    }
    // slots: real embeddings, then the upper member of each conjugate pair
    let mut slots: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, c) in candidates.iter().enumerate().take(r1) {
        let tol = 1e-6 * (1.0 + max_abs);
        let reals: Vec<Complex64> = c.iter().filter(|z| z.im.abs() < tol).map(|z| Complex64::new(z.re, 0.0)).collect();
        if reals.is_empty() {
            return Ok(None);
        }
        slots.push((i, reals));
    }
    let mut i = r1;
    while i < d {
        slots.push((i, candidates[i].clone()));
        i += 2;
    }
    let combos: u64 =
        slots.iter().map(|(_, c)| c.len() as u64).try_fold(1u64, |a, b| a.checked_mul(b)).unwrap_or(u64::MAX);
    if combos > COMBO_CAP {
        return Err(Error::PrecisionExhausted { digits: F64_DIGITS });
    }
    let mut idx = vec![0usize; slots.len()];
    let mut values = vec![Complex64::new(0.0, 0.0); d];
    loop {
        for (s, (pos, cands)) in slots.iter().enumerate() {
            let v = cands[idx[s]];
            values[*pos] = v;
            if *pos >= r1 {
                values[pos + 1] = v.conj();
            }
        }
        if let Some(b) = round_solution(field, &inv, &values) {
            if verify(&b) {
                return Ok(Some(b));
            }
        }
        // advance the mixed-radix counter
        let mut s = 0;
        loop {
            if s == idx.len() {
                return Ok(None);
            }
            idx[s] += 1;
            if idx[s] < slots[s].1.len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

fn round_solution(field: &NumberField, inv: &[Vec<Complex64>], values: &[Complex64]) -> Option<FieldElem> {
    let mut coords = Vec::with_capacity(values.len());
    for row in inv {
        let c: Complex64 = row.iter().zip(values).map(|(a, v)| a * v).sum();
        let r = c.re.round();
        if (c.re - r).abs() > 0.25 || c.im.abs() > 0.25 || !r.is_finite() {
            return None;
        }
        coords.push(BigInt::from(r as i128));
    }
    Some(field.from_coords(coords))
}

/// Inverse of `V[i][j] = roots[i]^j`, by Gauss-Jordan with partial pivoting.
fn vandermonde_inverse(roots: &[Complex64]) -> Vec<Vec<Complex64>> {
    let d = roots.len();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut a: Vec<Vec<Complex64>> = (0..d)
        .map(|i| {
            let mut row: Vec<Complex64> = (0..d).map(|j| roots[i].powu(j as u32)).collect();
            row.extend((0..d).map(|j| if i == j { one } else { zero }));
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).max_by(|&x, &y| a[x][col].norm().partial_cmp(&a[y][col].norm()).unwrap()).unwrap();
        a.swap(col, piv);
        let inv = one / a[col][col];
        for v in a[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..d {
            if r != col {
                let factor = a[r][col];
                if factor != zero {
                    for c in col..2 * d {
                        let sub = factor * a[col][c];
                        a[r][c] -= sub;
                    }
                }
            }
        }
    }
    // rows of the inverse map values to coordinates
    a.into_iter().map(|row| row[d..].to_vec()).collect()
}

/// Capelli: `x^n - alpha` is irreducible over the field iff `alpha` is not a
/// `q`-th power for any prime `q | n`, and `alpha` is not in `-4 L^4` when `4 | n`.
pub fn is_irreducible_radical(alpha: &FieldElem, n: u64) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n < 2 {
        return Err(Error::Invalid("n must be >= 2".into()));
    }
    for (q, _) in intkit::factor_u64(n)? {
        if is_nth_power_in_field(alpha, q)?.is_some() {
            return Ok(false);
        }
    }
    if n.is_multiple_of(4) {
        // alpha = -4 g^4  <=>  -alpha = d^2 with d/2 a square, and d/2 is a square iff 2d is
        if let Some(delta) = is_nth_power_in_field(&-alpha, 2)? {
            let two = BigInt::from(2);
            for s in [delta.clone(), -delta] {
                if is_nth_power_in_field(&s.scale(&two), 2)?.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, nf_make, rational_field, FieldOptions};

    fn opts() -> FieldOptions {
        FieldOptions::default()
    }

    #[test]
    fn nth_power_examples() {
        let q = rational_field(&opts());
        assert_eq!(is_nth_power_in_field(&q.one(), 2).unwrap(), Some(q.one()));
        assert_eq!(is_nth_power_in_field(&q.from_i64(16), 4).unwrap(), Some(q.from_i64(2)));
        assert_eq!(is_nth_power_in_field(&q.from_i64(-8), 3).unwrap(), Some(q.from_i64(-2)));
        assert_eq!(is_nth_power_in_field(&q.from_i64(12), 2).unwrap(), None);
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        let z = k3.gen();
        let root = is_nth_power_in_field(&z, 2).unwrap().unwrap();
        assert_eq!(root.pow(2), z);
        assert!(root == -z.pow(2) || root == z.pow(2));
    }

    #[test]
    fn powers_are_recovered() {
        let k5 = cyclotomic_field(5, &opts()).unwrap();
        let q13 = nf_make(&IntPoly::from_i64s(&[-3, -1, 1]), &opts()).unwrap();
        let cubic = nf_make(&IntPoly::from_i64s(&[-2, 0, 0, 1]), &opts()).unwrap();
        for field in [k5, q13, cubic] {
            let d = field.degree();
            let b = field.from_i64s(&[2, -1, 1, 0][..d.min(4)]);
            for k in 2..=5u64 {
                let a = b.pow(k);
                let r = is_nth_power_in_field(&a, k).unwrap().expect("constructed power");
                assert_eq!(r.pow(k), a);
                let shifted = &a + &field.one();
                assert!(is_nth_power_in_field(&shifted, k).unwrap().is_none_or(|r| r.pow(k) == shifted));
            }
        }
    }

    #[test]
    fn capelli_examples() {
        let k5 = cyclotomic_field(5, &opts()).unwrap();
        assert!(is_irreducible_radical(&k5.from_i64(12), 5).unwrap());
        assert!(!is_irreducible_radical(&k5.from_i64(32), 5).unwrap());
        let q = rational_field(&opts());
        assert!(!is_irreducible_radical(&q.from_i64(4), 2).unwrap());
        assert!(!is_irreducible_radical(&q.from_i64(4), 4).unwrap());
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(!is_irreducible_radical(&q.from_i64(-4), 4).unwrap());
        assert!(is_irreducible_radical(&q.from_i64(-2), 4).unwrap());
        assert!(is_irreducible_radical(&q.from_i64(2), 3).unwrap());
        // x^4 + 1 = (x^2 + t x + 1)(x^2 - t x + 1) over Q(sqrt 2), with a non-integral g
        let q2 = crate::numfield::nf_make(&IntPoly::from_i64s(&[-2, 0, 1]), &opts()).unwrap();
        assert!(!is_irreducible_radical(&q2.from_i64(-1), 4).unwrap());
        assert!(is_irreducible_radical(&q.from_i64(-1), 4).unwrap());
    }

    #[test]
    fn polynomial_roots() {
        let qi = cyclotomic_field(4, &opts()).unwrap();
        let r = root_of_poly_in_field(&qi, &crate::zxpoly::cyclotomic(4)).unwrap().unwrap();
        assert_eq!(r.pow(2), qi.from_i64(-1));
        assert!(root_of_poly_in_field(&qi, &crate::zxpoly::cyclotomic(3)).unwrap().is_none());
        let q3 = nf_make(&IntPoly::from_i64s(&[-3, 0, 1]), &opts()).unwrap();
        assert!(root_of_poly_in_field(&q3, &crate::zxpoly::cyclotomic(3)).unwrap().is_none());
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        assert!(root_of_poly_in_field(&k3, &crate::zxpoly::cyclotomic(6)).unwrap().is_some());
    }
}
