//! Irreducibility over `Q` for monic integer polynomials: modular degree
//! sieving, then Hensel lifting and factor recombination.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{discriminant, IntPoly};
use crate::error::{Error, Result};
use crate::fqpoly::{factor_fq, fq_poly_ext_gcd, FqField, FqPoly};
use crate::intkit;

pub const IRREDUCIBILITY_DEGREE_CAP: usize = 32;

const SIEVE_PRIMES: usize = 30;

/// Bitmask of subset sums of `degs`, restricted to `0..=total`.
fn subset_sums(degs: &[usize], total: usize) -> Vec<bool> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Decide irreducibility over `Q` of a monic polynomial of degree `<= 32`.
pub fn is_irreducible_q(a: &IntPoly) -> Result<bool> {
    let d = a.degree().ok_or(Error::ZeroPolynomial)?;
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    if d > IRREDUCIBILITY_DEGREE_CAP {
        return Err(Error::DegreeCap { degree: d, cap: IRREDUCIBILITY_DEGREE_CAP });
    }
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    if a.coeff(0).is_zero() {
        return Ok(false);
    }
    let disc = discriminant(a)?;
    if disc.is_zero() {
        return Ok(false);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1ee7);
    let mut allowed = vec![true; d + 1];
    let mut best: Option<(u64, Vec<FqPoly>)> = None;
    let mut used = 0;
    for p in intkit::primes_from(2) {
        if used == SIEVE_PRIMES {
            break;
        }
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        used += 1;
        let field = FqField::prime(p)?;
        let fac = factor_fq(&a.to_fq(&field), &mut rng);
        if fac.factors.len() == 1 {
            return Ok(true);
        }
        let degs: Vec<usize> = fac.factors.iter().map(|(f, _)| f.degree().unwrap()).collect();
        let sums = subset_sums(&degs, d);
        for (s, ok) in allowed.iter_mut().enumerate() {
            *ok &= sums[s];
        }
        if !(1..d).any(|s| allowed[s]) {
            return Ok(true);
        }
        if best.as_ref().is_none_or(|(_, fs)| fs.len() > degs.len()) {
            best = Some((p, fac.factors.into_iter().map(|(f, _)| f).collect()));
        }
    }
    let (p, factors) = best.expect("at least one good prime");

    // Any monic factor has coefficients bounded by 2^d * |a|_2.
    let bound = (BigInt::one() << d) * (a.norm_sq().sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2u32 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(a, &factors, p, k);
    Ok(!has_true_factor(a, &lifted, &modulus, &allowed))
}

/// Lift a factorization of `a mod p` into monic irreducibles to one modulo `p^k`.
pub(crate) fn hensel_lift(a: &IntPoly, factors: &[FqPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        return vec![a.reduce_mod(&modulus)];
    }
    let mid = factors.len() / 2;
    let field = factors[0].field();
    let g0 = factors[..mid].iter().fold(FqPoly::one(field), |acc, f| acc.mul(f));
    let h0 = factors[mid..].iter().fold(FqPoly::one(field), |acc, f| acc.mul(f));
    let (g, h) = lift_pair(a, &g0, &h0, p, k);
    let mut out = hensel_lift(&g, &factors[..mid], p, k);
    out.extend(hensel_lift(&h, &factors[mid..], p, k));
    out
}

/// Given `a = g0 h0 mod p` with `g0, h0` monic and coprime, find monic `g, h`
/// with `a = g h mod p^k`.
fn lift_pair(a: &IntPoly, g0: &FqPoly, h0: &FqPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let field = g0.field();
    let (one, _, t) = fq_poly_ext_gcd(g0, h0).expect("same field");
    debug_assert!(one.is_one());
    let lift = |f: &FqPoly| IntPoly::new(f.coeffs().iter().map(|c| BigInt::from(c.0[0])).collect());
    let mut g = lift(g0);
    let mut h = lift(h0);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..k {
        let err = (a - &(&g * &h)).div_scalar_exact(&m);
        let e = err.to_fq(field);
        // s g0 + t h0 = 1, so e = (e t mod g0) h0 + (...) g0
        let dg = e.mul(&t).rem(g0);
        let dh = e.sub(&dg.mul(h0)).div_exact(g0);
        g = &g + &lift(&dg).scale(&m);
        h = &h + &lift(&dh).scale(&m);
        m *= &pb;
        g = g.reduce_mod(&m);
        h = h.reduce_mod(&m);
    }
    (g, h)
}

/// Search subsets of the lifted factors for a true factor of `a` over `Z`.
fn has_true_factor(a: &IntPoly, lifted: &[IntPoly], modulus: &BigInt, allowed: &[bool]) -> bool {
    let r = lifted.len();
    let d = a.degree().unwrap();
    let a0 = a.coeff(0);
    let degs: Vec<usize> = lifted.iter().map(|f| f.degree().unwrap()).collect();
    for size in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| degs[i]).sum();
            if deg > 0 && deg < d && allowed[deg] {
                let c0 = idx.iter().fold(BigInt::one(), |acc, &i| (acc * lifted[i].coeff(0)) % modulus);
                let c0 = centered(c0, modulus);
                if !c0.is_zero() && (&a0 % &c0).is_zero() {
                    let g = idx
                        .iter()
                        .fold(IntPoly::one(), |acc, &i| (&acc * &lifted[i]).reduce_mod(modulus))
                        .reduce_centered(modulus);
                    if a.div_exact_monic(&g).is_some() {
                        return true;
                    }
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
    }
    false
}

fn centered(v: BigInt, m: &BigInt) -> BigInt {
    let r = ((v % m) + m) % m;
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert!(is_irreducible_q(&IntPoly::binomial(5, &BigInt::from(12))).unwrap());
        assert!(!is_irreducible_q(&p(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible_q(&p(&[1, 0, -1, 0, 1])).unwrap());
    }

    #[test]
    fn swinnerton_dyer_style() {
        // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible
        assert!(is_irreducible_q(&p(&[1, 0, -10, 0, 1])).unwrap());
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(!is_irreducible_q(&p(&[4, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn products_are_reducible() {
        let f = p(&[1, 0, -10, 0, 1]);
        let g = p(&[-2, 0, 0, 1]);
        assert!(!is_irreducible_q(&(&f * &g)).unwrap());
        let h = p(&[3, -1, 0, 0, 0, 1]);
        assert!(!is_irreducible_q(&(&h * &p(&[1, 0, 1]))).unwrap());
    }

    #[test]
    fn cyclotomics_irreducible() {
        for n in 1..=60u64 {
            let phi = crate::zxpoly::cyclotomic(n);
            if phi.degree().unwrap() <= IRREDUCIBILITY_DEGREE_CAP {
                assert!(is_irreducible_q(&phi).unwrap(), "n={n}");
            }
        }
    }

    #[test]
    fn degree_cap() {
        let f = IntPoly::binomial(33, &BigInt::from(2));
        assert_eq!(is_irreducible_q(&f), Err(Error::DegreeCap { degree: 33, cap: 32 }));
    }

    #[test]
    fn hensel_lift_is_congruent() {
        let f = p(&[1, 0, -10, 0, 1]);
        let field = FqField::prime(7).unwrap();
        let fac = factor_fq(&f.to_fq(&field), &mut ChaCha8Rng::seed_from_u64(1));
        let facs: Vec<FqPoly> = fac.factors.into_iter().map(|(g, _)| g).collect();
        let lifted = hensel_lift(&f, &facs, 7, 6);
        let m = BigInt::from(7).pow(6);
        let prod = lifted.iter().fold(IntPoly::one(), |acc, g| (&acc * g).reduce_mod(&m));
        assert_eq!(prod, f.reduce_mod(&m));
    }
}
