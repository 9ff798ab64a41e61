//! Exact integer utilities: factorization, primality and the multiplicative
//! functions used by the splitting and counting criteria.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Effort bounds for [`factor_int`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial division runs over primes up to this bound.
    pub trial_limit: u64,
    /// Total Pollard-Brent iterations allowed across all cofactors.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { trial_limit: 1_000_000, rho_iterations: 4_000_000 }
    }
}

/// Complete factorization `value = sign * prod prime^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub value: BigInt,
    pub sign: i8,
    /// Strictly increasing primes with positive exponents.
    pub factors: Vec<(BigUint, u32)>,
}

impl IntFactorization {
    pub fn reassemble(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= BigInt::from(p.pow(*e));
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Prime factors as machine integers; fails if one does not fit in 63 bits.
    pub fn primes_u64(&self) -> Result<Vec<(u64, u32)>> {
        self.factors
            .iter()
            .map(|(p, e)| match p.to_u64() {
                Some(v) if v < (1 << 63) => Ok((v, *e)),
                _ => Err(Error::SizeBound { p: u64::MAX, degree: 1 }),
            })
            .collect()
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(1_000_000))
}

/// Primes up to and including `limit`.
pub fn sieve(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Iterator over all primes starting at 2, without an upper bound.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime_u64(n))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

// Witnesses 2..=41 make Miller-Rabin deterministic below 3.317e24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigUint, a: &BigUint, d: &BigUint, s: u32) -> bool {
    let one = BigUint::one();
    let n_minus = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n_minus {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus {
            return true;
        }
    }
    false
}

/// Primality test. Deterministic below 3.317·10^24; above that, a strong
/// probable-prime test with 40 pseudo-random witnesses seeded from `n`.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus = n - &one;
    let s = n_minus.trailing_zeros().unwrap_or(0) as u32;
    let d = &n_minus >> s;
    let threshold: BigUint = "3317044064679887385961981".parse().unwrap();
    if n < &threshold {
        return MR_BASES.iter().all(|&a| miller_rabin_big(n, &BigUint::from(a), &d, s));
    }
    let seed = (n % BigUint::from(u64::MAX)).to_u64().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    (0..40).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus);
        miller_rabin_big(n, &a, &d, s)
    })
}

/// Pollard-Brent rho. Returns a nontrivial divisor of the odd composite `n`,
/// or `None` once `budget` iterations are spent.
fn rho_divisor(n: &BigUint, budget: &mut u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    let one = BigUint::one();
    while *budget > 0 {
        let c = rng.gen_biguint_below(n);
        let mut y = rng.gen_biguint_below(n);
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * diff) % n;
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += steps;
                if *budget == 0 && g == one {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // backtrack one step at a time
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Factor a nonzero integer completely: trial division up to the budget's
/// limit, then Pollard-Brent rho on the remaining cofactors.
pub fn factor_int(n: &BigInt, budget: &FactorBudget) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign: i8 = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.abs().to_biguint().unwrap();
    let mut found: Vec<(BigUint, u32)> = Vec::new();

    let limit = budget.trial_limit.min(1_000_000);
    if let Some(mut v) = m.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p > limit || p * p > v {
                break;
            }
            if v % p == 0 {
                let mut e = 0;
                while v % p == 0 {
                    v /= p;
                    e += 1;
                }
                found.push((BigUint::from(p), e));
            }
        }
        m = BigUint::from(v);
    } else {
        for &p in small_primes() {
            if p as u64 > limit {
                break;
            }
            if (&m % p).is_zero() {
                let mut e = 0;
                while (&m % p).is_zero() {
                    m /= p;
                    e += 1;
                }
                found.push((BigUint::from(p), e));
            }
            if m.is_one() {
                break;
            }
        }
    }

    if !m.is_one() {
        let limit_sq = BigUint::from(limit) * BigUint::from(limit);
        let mut stack = vec![m];
        let mut iterations = budget.rho_iterations;
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b75_6d6d);
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if c < limit_sq || is_prime(&c) {
                found.push((c, 1));
                continue;
            }
            if let Some(r) = c.sqrt().pow(2).eq(&c).then(|| c.sqrt()) {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            match rho_divisor(&c, &mut iterations, &mut rng) {
                Some(d) => {
                    let other = &c / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => return Err(Error::FactorBudgetExceeded { cofactor: BigInt::from(c) }),
            }
        }
    }

    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in found {
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    Ok(IntFactorization { value: n.clone(), sign, factors })
}

/// Factorization of a positive machine integer with the default budget.
pub fn factor_u64(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    factor_int(&BigInt::from(n), &FactorBudget::default())?.primes_u64()
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    Ok(factor_u64(n)?.into_iter().map(|(p, e)| p.pow(e - 1) * (p - 1)).product())
}

pub fn moebius(k: u64) -> Result<i8> {
    let f = factor_u64(k)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n)? {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Least `f >= 1` with `a^f = 1 (mod n)`.
pub fn mult_order(a: &BigInt, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n == 1 {
        return Ok(1);
    }
    let r = a.mod_floor(&BigInt::from(n)).to_u64().unwrap();
    if gcd_u64(r, n) != 1 {
        return Err(Error::NotCoprime { a: a.clone(), n });
    }
    let mut order = euler_phi(n)?;
    for (q, _) in factor_u64(order)? {
        while order % q == 0 && pow_mod(r, order / q, n) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Number of monic irreducible polynomials of degree `k` over `F_l`:
/// `(1/k) * sum_{d | k} mu(k/d) l^d`.
pub fn count_monic_irreducibles(l: u64, k: u32) -> Result<BigUint> {
    if !is_prime_u64(l) {
        return Err(Error::NotPrime(BigInt::from(l)));
    }
    if k == 0 {
        return Err(Error::ZeroInput);
    }
    let lb = BigInt::from(l);
    let mut acc = BigInt::zero();
    for d in divisors(k as u64)? {
        let mu = moebius(k as u64 / d)?;
        if mu != 0 {
            acc += lb.pow(d as u32) * mu;
        }
    }
    let (quot, rem) = acc.div_rem(&BigInt::from(k));
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("necklace count is nonnegative"))
}

/// Exact `k`-th root of an integer if one exists (negative roots allowed for odd `k`).
pub fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if n.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = n.abs().nth_root(k);
    let r = if n.is_negative() { -r } else { r };
    (r.pow(k) == *n).then_some(r)
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}
