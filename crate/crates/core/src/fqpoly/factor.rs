//! Square-free, distinct-degree and equal-degree (Cantor-Zassenhaus)
//! factorization over `F_q`.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::{gcd, FqElem, FqField, FqPoly};
use crate::intkit;

/// `a = lead * prod factor^multiplicity`, factors monic irreducible and sorted
/// by (degree, coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqFactorization {
    pub lead: FqElem,
    pub factors: Vec<(FqPoly, u32)>,
}

impl FqFactorization {
    pub fn reconstruct(&self) -> FqPoly {
        let field = self.lead_field();
        let mut acc = FqPoly::constant(&field, self.lead.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e as u64));
        }
        acc
    }

    fn lead_field(&self) -> FqField {
        self.factors[0].0.field().clone()
    }

    /// `(multiplicity, degree)` of each factor, in factor order.
    pub fn shape(&self) -> Vec<(u32, usize)> {
        self.factors.iter().map(|(f, e)| (*e, f.degree().unwrap())).collect()
    }
}

fn pth_root_poly(a: &FqPoly) -> FqPoly {
    let field = a.field();
    let p = field.p() as usize;
    let coeffs = a.coeffs().iter().step_by(p).map(|c| field.pth_root(c)).collect();
    FqPoly::new(field, coeffs)
}

/// Square-free decomposition of a monic polynomial: pairs `(g, i)` with
/// `a = prod g^i`, each `g` square-free and pairwise coprime.
pub fn square_free_factor(a: &FqPoly) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    sff_inner(&a.monic(), 1, &mut out);
    out
}

fn sff_inner(a: &FqPoly, mult: u32, out: &mut Vec<(FqPoly, u32)>) {
    if a.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = a.field().p() as u32;
    let d = a.derivative();
    if d.is_zero() {
        sff_inner(&pth_root_poly(a), mult * p, out);
        return;
    }
    let mut c = gcd(a, &d);
    let mut w = a.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(&w, &c);
        let fac = w.div_exact(&y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i * mult));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        sff_inner(&pth_root_poly(&c), mult * p, out);
    }
}

/// `x^(q^k) mod m` by repeated `q`-th powering.
fn frobenius_power(x: &FqPoly, m: &FqPoly, k: usize) -> FqPoly {
    let q = BigUint::from(x.field().order());
    let mut h = x.rem(m);
    for _ in 0..k {
        h = h.pow_mod(&q, m);
    }
    h
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree_factor(a: &FqPoly) -> Vec<(FqPoly, usize)> {
    let field = a.field();
    let x = FqPoly::x(field);
    let q = BigUint::from(field.order());
    let mut rest = a.monic();
    let mut out = Vec::new();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = gcd(&h.sub(&x), &rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

/// Split a monic square-free polynomial whose irreducible factors all have
/// degree `d` into those factors.
pub fn equal_degree_split(a: &FqPoly, d: usize, rng: &mut impl Rng) -> Vec<FqPoly> {
    let n = a.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![a.monic()];
    }
    let field = a.field().clone();
    let one = FqPoly::one(&field);
    loop {
        let r = FqPoly::random(&field, n, rng);
        if r.is_constant() {
            continue;
        }
        let b = if field.p() == 2 {
            // trace to F_2: r + r^2 + ... + r^(2^(f*d - 1))
            let steps = field.degree() as usize * d;
            let mut acc = r.rem(a);
            let mut cur = acc.clone();
            for _ in 1..steps {
                cur = cur.mul(&cur).rem(a);
                acc = acc.add(&cur);
            }
            acc
        } else {
            let exp = (BigUint::from(field.order()).pow(d as u32) - BigUint::one()) >> 1;
            r.pow_mod(&exp, a).sub(&one)
        };
        let g = gcd(&b, a);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = a.div_exact(&g);
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&other, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a nonconstant polynomial.
pub fn factor_fq(a: &FqPoly, rng: &mut impl Rng) -> FqFactorization {
    assert!(a.degree().unwrap_or(0) >= 1, "factor_fq needs degree >= 1");
    let lead = a.lead();
    let mut factors = Vec::new();
    for (sf, mult) in square_free_factor(a) {
        for (block, d) in distinct_degree_factor(&sf) {
            for irr in equal_degree_split(&block, d, rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors
        .sort_by(|(f, e), (g, h)| f.degree().cmp(&g.degree()).then_with(|| f.coeffs().cmp(g.coeffs())).then(e.cmp(h)));
    // the same irreducible can only appear once across square-free parts
    FqFactorization { lead, factors }
}

/// Rabin's test: `x^(q^n) = x mod a` and `gcd(x^(q^(n/r)) - x, a) = 1` for
/// every prime `r | n`.
pub fn is_irreducible_fq(a: &FqPoly) -> bool {
    let n = match a.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let m = a.monic();
    let x = FqPoly::x(a.field());
    if frobenius_power(&x, &m, n) != x.rem(&m) {
        return false;
    }
    let primes = intkit::factor_u64(n as u64).expect("small degree");
    primes.iter().all(|&(r, _)| {
        let h = frobenius_power(&x, &m, n / r as usize);
        gcd(&h.sub(&x), &m).is_one()
    })
}
