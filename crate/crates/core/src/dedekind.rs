//! Index criteria over `Q` and over a base field, Dedekind splitting shapes,
//! and Hensel's counting test for common index divisors.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fqpoly::{factor_fq, fq_poly_gcd, FqField, FqPoly};
use crate::intkit;
use crate::numfield::{rel_discriminant, split_prime, FieldElem, NumberField, PrimeIdeal, PrimeLabel, RelPoly};
use crate::zxpoly::IntPoly;

/// The prime at which a local verdict was taken.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalPrime {
    Rational(u64),
    Ideal(PrimeIdeal),
}

impl LocalPrime {
    pub fn p(&self) -> u64 {
        match self {
            LocalPrime::Rational(p) => *p,
            LocalPrime::Ideal(q) => q.p(),
        }
    }

    pub fn label(&self) -> PrimeLabel {
        match self {
            LocalPrime::Rational(p) => PrimeLabel::rational(*p),
            LocalPrime::Ideal(q) => q.label(),
        }
    }
}

/// A lift of a residue factor.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorLift {
    Int(IntPoly),
    Rel(RelPoly),
}

impl FactorLift {
    pub fn display(&self) -> String {
        match self {
            FactorLift::Int(a) => a.to_string(),
            FactorLift::Rel(a) => a.display(),
        }
    }
}

/// Outcome of an index criterion at one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalVerdict {
    pub prime: LocalPrime,
    /// Whether the prime does not divide the index of the monogenic order.
    pub maximal_here: bool,
    /// Lifts `f_i` with multiplicities `e_i`.
    pub factors: Vec<(FactorLift, u32)>,
    /// The residue factors `f_i mod P` themselves.
    pub residue_factors: Vec<(FqPoly, u32)>,
    /// Reduction of `(f - prod f_i^e_i) / pi`.
    pub d_poly_residue: FqPoly,
    /// First `i` with `gcd(f_i^(e_i - 1), d) != 1`.
    pub offender: Option<usize>,
}

/// `(e_i, f_i)` for each prime above a given prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingShape {
    pub prime: PrimeLabel,
    pub parts: Vec<(u32, u32)>,
}

impl SplittingShape {
    /// `sum e_i f_i`.
    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&(e, f)| e as u64 * f as u64).sum()
    }
}

fn offender_of(residue_factors: &[(FqPoly, u32)], d_bar: &FqPoly) -> Result<Option<usize>> {
    for (i, (g, e)) in residue_factors.iter().enumerate() {
        // exponent e - 1 = 0 gives the unit polynomial, so only repeated factors matter
        let power = g.pow(*e as u64 - 1);
        if !fq_poly_gcd(&power, d_bar)?.is_one() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn rng_for(seed: u64, p: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

/// Dedekind's criterion over `Q`: does `p` divide `[O_K : Z[theta]]` for a root `theta` of `f`?
pub fn dedekind_index_q(f: &IntPoly, p: u64) -> Result<LocalVerdict> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
    }
    let fp = FqField::prime(p)?;
    let fac = factor_fq(&f.to_fq(&fp), &mut rng_for(0, p));
    let pb = BigInt::from(p);
    let mut prod = IntPoly::one();
    let mut factors = Vec::new();
    for (g, e) in &fac.factors {
        let lift = IntPoly::lift_centered(g);
        prod = &prod * &lift.pow(*e);
        factors.push((FactorLift::Int(lift), *e));
    }
    let diff = f - &prod;
    if diff.coeffs().iter().any(|c| !(c % &pb).is_zero()) {
        return Err(Error::CoefficientNotInIdeal);
    }
    let d_bar = diff.div_scalar_exact(&pb).to_fq(&fp);
    let offender = offender_of(&fac.factors, &d_bar)?;
    Ok(LocalVerdict {
        prime: LocalPrime::Rational(p),
        maximal_here: offender.is_none(),
        factors,
        residue_factors: fac.factors,
        d_poly_residue: d_bar,
        offender,
    })
}

/// Splitting of `p` read off the factorization of `f mod p`; needs `p` not dividing the index.
pub fn dedekind_split(f: &IntPoly, p: u64, verified: &LocalVerdict) -> Result<SplittingShape> {
    if verified.prime != LocalPrime::Rational(p) {
        return Err(Error::Invalid(format!("verdict was taken at {}, not {p}", verified.prime.p())));
    }
    if !verified.maximal_here {
        return Err(Error::IndexDivides { prime: p });
    }
    debug_assert_eq!(
        verified.residue_factors.iter().map(|(g, e)| g.degree().unwrap() * *e as usize).sum::<usize>(),
        f.degree().unwrap()
    );
    Ok(SplittingShape {
        prime: PrimeLabel::rational(p),
        parts: verified.residue_factors.iter().map(|(g, e)| (*e, g.degree().unwrap() as u32)).collect(),
    })
}

/// Relative index criterion at a prime `P` of the base: is `(O_M)_P = (O_L)_P[theta]`?
pub fn relative_index_criterion(field: &NumberField, f: &RelPoly, prime: &PrimeIdeal) -> Result<LocalVerdict> {
    if f.field() != field || prime.field() != field {
        return Err(Error::FieldMismatch);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
    }
    let fbar = f.reduce_mod_prime(prime);
    let hb: u64 = prime
        .hbar()
        .coeffs()
        .iter()
        .fold(0u64, |acc, c| acc.wrapping_mul(31).wrapping_add(c.0.first().copied().unwrap_or(0)));
    let fac = factor_fq(&fbar, &mut rng_for(field.seed() ^ hb, prime.p()));
    let mut prod = RelPoly::one(field);
    let mut factors = Vec::new();
    for (g, e) in &fac.factors {
        let lift = RelPoly::lift_from_residue(prime, g);
        prod = prod.mul(&lift.pow(*e));
        factors.push((FactorLift::Rel(lift), *e));
    }
    let diff = f.sub(&prod);
    let mut d_coeffs = Vec::with_capacity(diff.coeffs().len());
    for c in diff.coeffs() {
        if !prime.lattice().contains(c) {
            return Err(Error::CoefficientNotInIdeal);
        }
        d_coeffs.push(prime.div_by_uniformizer_mod_p(c)?);
    }
    let d_bar = FqPoly::new(prime.residue_field(), d_coeffs);
    let offender = offender_of(&fac.factors, &d_bar)?;
    Ok(LocalVerdict {
        prime: LocalPrime::Ideal(prime.clone()),
        maximal_here: offender.is_none(),
        factors,
        residue_factors: fac.factors,
        d_poly_residue: d_bar,
        offender,
    })
}

/// Aggregate of local index verdicts at every prime dividing the discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeVerdict {
    pub monogenic: bool,
    pub discriminant: FieldElem,
    pub locals: Vec<LocalVerdict>,
}

/// Whether `O_M = O_L[theta]` for `M = L[x]/(f)`, checked prime by prime over `disc f`.
pub fn relative_monogenic(field: &NumberField, f: &RelPoly) -> Result<RelativeVerdict> {
    relative_monogenic_with(field, f, |_| None)
}

/// As [`relative_monogenic`], with a hook to substitute a prime (e.g. with another uniformizer).
pub fn relative_monogenic_with(
    field: &NumberField,
    f: &RelPoly,
    mut substitute: impl FnMut(&PrimeIdeal) -> Option<PrimeIdeal>,
) -> Result<RelativeVerdict> {
    let disc = rel_discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::NotIrreducible);
    }
    let n = num_traits::Signed::abs(&disc.norm());
    let fac = intkit::factor_int(&n, field.factor_budget())?;
    let mut locals = Vec::new();
    for (p, _) in fac.primes_u64()? {
        for prime in split_prime(field, p)? {
            if prime.valuation(&disc)? == 0 {
                continue;
            }
            let prime = substitute(&prime).unwrap_or(prime);
            locals.push(relative_index_criterion(field, f, &prime)?);
        }
    }
    Ok(RelativeVerdict { monogenic: locals.iter().all(|v| v.maximal_here), discriminant: disc, locals })
}

/// Hensel: some residue degree occurs more often than there are monic irreducibles of that degree.
pub fn hensel_edd(p: u64, shape: &SplittingShape) -> Result<bool> {
    let mut degrees: Vec<u32> = shape.parts.iter().map(|&(_, f)| f).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for f in degrees {
        let count = shape.parts.iter().filter(|&&(_, g)| g == f).count();
        if num_bigint::BigUint::from(count) > intkit::count_monic_irreducibles(p, f)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, nf_make, FieldOptions};
    use crate::zxpoly::cyclotomic;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn index_criterion_over_q() {
        assert!(!dedekind_index_q(&p(&[-8, -2, -1, 1]), 2).unwrap().maximal_here);
        let v = dedekind_index_q(&p(&[-2, 0, 0, 1]), 3).unwrap();
        assert!(v.maximal_here);
        assert_eq!(v.residue_factors.len(), 1);
        assert_eq!(v.residue_factors[0].1, 3);
        let v = dedekind_index_q(&p(&[-5, 0, 1]), 2).unwrap();
        assert!(!v.maximal_here);
        assert_eq!(v.offender, Some(0));
    }

    #[test]
    fn splitting_shapes() {
        let phi5 = cyclotomic(5);
        let v = dedekind_index_q(&phi5, 11).unwrap();
        assert_eq!(dedekind_split(&phi5, 11, &v).unwrap().parts, vec![(1, 1); 4]);
        let phi3 = cyclotomic(3);
        let v = dedekind_index_q(&phi3, 3).unwrap();
        assert_eq!(dedekind_split(&phi3, 3, &v).unwrap().parts, vec![(2, 1)]);
        let f = p(&[-2, 0, 0, 1]);
        let v = dedekind_index_q(&f, 5).unwrap();
        assert_eq!(dedekind_split(&f, 5, &v).unwrap().parts, vec![(1, 1), (1, 2)]);
        let bad = p(&[-5, 0, 1]);
        let v = dedekind_index_q(&bad, 2).unwrap();
        assert_eq!(dedekind_split(&bad, 2, &v), Err(Error::IndexDivides { prime: 2 }));
    }

    #[test]
    fn relative_criterion_examples() {
        let k3 = cyclotomic_field(3, &FieldOptions::default()).unwrap();
        let p3 = split_prime(&k3, 3).unwrap().remove(0);
        let f = RelPoly::binomial(3, &k3.from_i64s(&[1, -1]));
        assert!(relative_index_criterion(&k3, &f, &p3).unwrap().maximal_here);
        let f = RelPoly::binomial(3, &k3.from_i64(2));
        assert!(!relative_index_criterion(&k3, &f, &p3).unwrap().maximal_here);

        let q5 = nf_make(&p(&[-1, -1, 1]), &FieldOptions::default()).unwrap();
        let p2 = split_prime(&q5, 2).unwrap().remove(0);
        let f = RelPoly::binomial(2, &q5.from_i64(3));
        let v = relative_index_criterion(&q5, &f, &p2).unwrap();
        assert!(v.maximal_here);
        assert_eq!(v.residue_factors.len(), 1);
        assert_eq!(v.d_poly_residue.degree(), Some(1));
    }

    #[test]
    fn relative_monogenic_examples() {
        let q5 = nf_make(&p(&[-1, -1, 1]), &FieldOptions::default()).unwrap();
        let v = relative_monogenic(&q5, &RelPoly::binomial(2, &q5.from_i64(3))).unwrap();
        assert!(v.monogenic);
        let mut ps: Vec<u64> = v.locals.iter().map(|l| l.prime.p()).collect();
        ps.dedup();
        assert_eq!(ps, vec![2, 3]);
        let k3 = cyclotomic_field(3, &FieldOptions::default()).unwrap();
        assert!(relative_monogenic(&k3, &RelPoly::binomial(3, &k3.from_i64s(&[1, -1]))).unwrap().monogenic);
        assert!(!relative_monogenic(&k3, &RelPoly::binomial(3, &k3.from_i64(4))).unwrap().monogenic);
    }

    #[test]
    fn rational_base_agrees_with_q_criterion() {
        let q = crate::numfield::rational_field(&FieldOptions::default());
        for f in [p(&[-8, -2, -1, 1]), p(&[-2, 0, 0, 1]), p(&[-5, 0, 1]), p(&[-3, 0, 1]), cyclotomic(9)] {
            let rel = RelPoly::from_int_poly(&q, &f);
            for prime in [2u64, 3, 5] {
                let over_q = dedekind_index_q(&f, prime).unwrap();
                let pr = split_prime(&q, prime).unwrap().remove(0);
                let rel_v = relative_index_criterion(&q, &rel, &pr).unwrap();
                assert_eq!(over_q.maximal_here, rel_v.maximal_here, "{f} at {prime}");
            }
        }
    }

    #[test]
    fn hensel_examples() {
        let shape = |parts: Vec<(u32, u32)>| SplittingShape { prime: PrimeLabel::rational(2), parts };
        assert!(hensel_edd(2, &shape(vec![(1, 1); 3])).unwrap());
        assert!(!hensel_edd(2, &shape(vec![(1, 1), (1, 2)])).unwrap());
        assert!(hensel_edd(11, &shape(vec![(1, 1); 20])).unwrap());
    }
}
