//! Monogeneity verdicts for radical extensions `L(alpha^(1/n)) / L`, the prime
//! Kummer case, essential discriminant divisors over `Q`, and splitting of primes in radical extensions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dedekind::{hensel_edd, relative_index_criterion, SplittingShape};
use crate::error::{Error, Result};
use crate::fqpoly::{factor_fq, nth_power_residue, FqPoly};
use crate::intkit;
use crate::numfield::{
    ideal_factorization, is_irreducible_radical, rel_discriminant, root_of_poly_in_field, split_prime, FieldElem,
    FieldKind, IdealLattice, NumberField, PrimeIdeal, PrimeLabel, RelPoly,
};
use crate::zxpoly::cyclotomic;

/// Data of the congruence `alpha^(p^(f - eps + e)) = alpha mod P^2` at a prime `P | n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WieferichDatum {
    pub prime: PrimeIdeal,
    pub alpha: FieldElem,
    /// Exponent of `p` in `n`.
    pub e: u32,
    /// `n / p^e`.
    pub m: u64,
    /// `1 <= epsilon <= f`, `epsilon = e mod f`.
    pub epsilon: u32,
    /// `alpha^(p^(f - epsilon))`, stored as its canonical residue mod `P^2`.
    pub beta: FieldElem,
    /// `p^(f - epsilon + e)`.
    pub exponent_total: BigUint,
    pub holds: bool,
}

impl WieferichDatum {
    pub fn record(&self) -> WieferichRecord {
        WieferichRecord {
            prime: self.prime.label(),
            e: self.e,
            m: self.m,
            epsilon: self.epsilon,
            beta: self.beta.display(),
            exponent_total: self.exponent_total.to_string(),
            holds: self.holds,
        }
    }
}

/// Printable form of a [`WieferichDatum`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WieferichRecord {
    pub prime: PrimeLabel,
    pub e: u32,
    pub m: u64,
    pub epsilon: u32,
    pub beta: String,
    pub exponent_total: String,
    pub holds: bool,
}

/// A reason attached to a verdict. Failure entries are the ones that rule out monogeneity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// `v_P(alpha) >= 2`.
    SquareFullAt {
        prime: PrimeLabel,
        valuation: u32,
    },
    WieferichHoldsAt(WieferichRecord),
    WieferichFailsAt(WieferichRecord),
    /// The index criterion failed at this prime for the given residue factor.
    LocalFailure {
        prime: PrimeLabel,
        offender: String,
    },
    EddAt {
        l: u64,
    },
    /// A prime ramified in the base field and dividing the conductor.
    RamifiedAt {
        prime: PrimeLabel,
    },
    /// A prime modulo which the cyclotomic polynomial stays irreducible.
    InertWitness {
        prime: PrimeLabel,
    },
}

impl Witness {
    pub fn is_failure(&self) -> bool {
        matches!(
            self,
            Witness::SquareFullAt { .. }
                | Witness::WieferichHoldsAt(_)
                | Witness::LocalFailure { .. }
                | Witness::EddAt { .. }
                | Witness::RamifiedAt { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::SquareFullAt { .. } => "SquareFullAt",
            Witness::WieferichHoldsAt(_) => "WieferichHoldsAt",
            Witness::WieferichFailsAt(_) => "WieferichFailsAt",
            Witness::LocalFailure { .. } => "LocalFailure",
            Witness::EddAt { .. } => "EddAt",
            Witness::RamifiedAt { .. } => "RamifiedAt",
            Witness::InertWitness { .. } => "InertWitness",
        }
    }

    pub fn prime(&self) -> Option<&PrimeLabel> {
        match self {
            Witness::SquareFullAt { prime, .. }
            | Witness::LocalFailure { prime, .. }
            | Witness::RamifiedAt { prime }
            | Witness::InertWitness { prime } => Some(prime),
            Witness::WieferichHoldsAt(r) | Witness::WieferichFailsAt(r) => Some(&r.prime),
            Witness::EddAt { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    /// Depends on an irreducibility hypothesis that was assumed or could not be certified.
    Conditional,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Conditional => "conditional",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// What the criterion says, taking any assumed hypothesis for granted.
    pub monogenic_if_hypotheses_hold: bool,
    pub irreducibility_assumed: bool,
    pub witnesses: Vec<Witness>,
    pub field: String,
    pub n: u64,
    pub alpha: Option<String>,
    #[serde(skip)]
    pub data: Vec<WieferichDatum>,
}

impl Verdict {
    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.is_failure())
    }

    /// The first witness ruling out monogeneity, if any.
    pub fn first_failure(&self) -> Option<&Witness> {
        self.failures().next()
    }
}

fn pow_mod_ideal(x: &FieldElem, mut e: BigUint, modulus: &IdealLattice) -> FieldElem {
    let mut base = modulus.reduce(x);
    let mut acc = modulus.reduce(&x.field().one());
    let two = BigUint::from(2u32);
    while !e.is_zero() {
        if e.is_odd() {
            acc = modulus.reduce(&(&acc * &base));
        }
        e /= &two;
        if !e.is_zero() {
            base = modulus.reduce(&(&base * &base));
        }
    }
    acc
}

/// Evaluates the generalized Wieferich congruence at `P` for `x^n - alpha`.
pub fn wieferich_datum(field: &NumberField, prime: &PrimeIdeal, n: u64, alpha: &FieldElem) -> Result<WieferichDatum> {
    if alpha.field() != field || prime.field() != field {
        return Err(Error::FieldMismatch);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = prime.p();
    if n == 0 || !n.is_multiple_of(p) {
        return Err(Error::PrimeNotDividingN { p, n });
    }
    let e = intkit::valuation_int(&BigInt::from(n), p);
    let m = n / p.pow(e);
    let f = prime.f();
    let epsilon = (e - 1) % f + 1;
    let sq = prime.lattice_sq();
    let pb = BigUint::from(p);
    let beta = pow_mod_ideal(alpha, pb.pow(f - epsilon), sq);
    let lhs = pow_mod_ideal(&beta, pb.pow(e), sq);
    let holds = sq.contains(&(&lhs - alpha));
    Ok(WieferichDatum {
        prime: prime.clone(),
        alpha: alpha.clone(),
        e,
        m,
        epsilon,
        beta,
        exponent_total: pb.pow(f - epsilon + e),
        holds,
    })
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n as usize, min: 2 });
    }
    Ok(())
}

fn require_irreducible(alpha: &FieldElem, n: u64, assume: bool) -> Result<()> {
    if !assume && !is_irreducible_radical(alpha, n)? {
        return Err(Error::ReducibleRadical { n });
    }
    Ok(())
}

/// Is `O_L[alpha^(1/n)]` the ring of integers of `L(alpha^(1/n))`?
///
/// Irreducibility of `x^n - alpha` is checked unless `assume_irreducible` is set, in
/// which case the status is `Conditional`.
pub fn radical_monogenic(field: &NumberField, n: u64, alpha: &FieldElem, assume_irreducible: bool) -> Result<Verdict> {
    radical_monogenic_with(field, n, alpha, assume_irreducible, |_| None)
}

/// As [`radical_monogenic`], with a hook replacing each prime above `n` (e.g. by another uniformizer).
pub fn radical_monogenic_with(
    field: &NumberField,
    n: u64,
    alpha: &FieldElem,
    assume_irreducible: bool,
    mut substitute: impl FnMut(&PrimeIdeal) -> Option<PrimeIdeal>,
) -> Result<Verdict> {
    if alpha.field() != field {
        return Err(Error::FieldMismatch);
    }
    check_n(n)?;
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    require_irreducible(alpha, n, assume_irreducible)?;
    let mut witnesses = Vec::new();
    for (prime, v) in ideal_factorization(alpha)? {
        if v >= 2 {
            witnesses.push(Witness::SquareFullAt { prime: prime.label(), valuation: v });
        }
    }
    let mut data = Vec::new();
    for (p, _) in intkit::factor_u64(n)? {
        for prime in split_prime(field, p)? {
            let prime = substitute(&prime).unwrap_or(prime);
            let datum = wieferich_datum(field, &prime, n, alpha)?;
            witnesses.push(if datum.holds {
                Witness::WieferichHoldsAt(datum.record())
            } else {
                Witness::WieferichFailsAt(datum.record())
            });
            data.push(datum);
        }
    }
    let ok = !witnesses.iter().any(Witness::is_failure);
    Ok(Verdict {
        status: if assume_irreducible {
            Status::Conditional
        } else if ok {
            Status::Yes
        } else {
            Status::No
        },
        monogenic_if_hypotheses_hold: ok,
        irreducibility_assumed: assume_irreducible,
        witnesses,
        field: field.describe(),
        n,
        alpha: Some(alpha.display()),
        data,
    })
}

/// The case `L = Q(zeta_p)`, `n = p` odd prime: the congruence is `alpha^p = alpha mod (1 - zeta_p)^2`.
pub fn kummer_prime_monogenic(p: u64, alpha: &FieldElem) -> Result<Verdict> {
    if !intkit::is_prime_u64(p) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    if p == 2 {
        return Err(Error::Invalid("p must be odd".into()));
    }
    let field = alpha.field();
    if field.kind() != FieldKind::Cyclotomic(p) {
        return Err(Error::FieldMismatch);
    }
    let v = radical_monogenic(field, p, alpha, false)?;
    for d in &v.data {
        assert!(d.prime.e() as u64 == p - 1 && d.prime.f() == 1);
        assert_eq!(d.epsilon, 1);
        assert_eq!(d.exponent_total, BigUint::from(p));
        assert_eq!(d.beta, d.prime.lattice_sq().reduce(alpha));
    }
    Ok(v)
}

/// Residue test of `alpha` at one prime above `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeResidue {
    pub prime: PrimeLabel,
    pub nth_power: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EddReport {
    pub n: u64,
    pub alpha: String,
    pub l: u64,
    /// Multiplicative order of `l` mod `n`.
    pub k: u64,
    /// Monic irreducibles of degree `k` over `F_l`.
    pub irreducible_count: String,
    /// `n phi(n) / k`.
    pub degree_budget: u64,
    pub counting_holds: bool,
    pub residues: Vec<PrimeResidue>,
    /// First prime above `l` where `alpha` is an `n`-th power residue.
    pub power_residue_witness: Option<PrimeLabel>,
    pub all_primes_checked: bool,
    /// Residue condition at every prime above `l`.
    pub all_primes_residue: bool,
    /// Counting inequality plus the residue condition at every prime above `l`.
    pub is_edd: bool,
    /// Splitting of `l` in `Q(zeta_n, alpha^(1/n))` as read off residue factorizations.
    pub shape: SplittingShape,
    /// Hensel's count on `shape`.
    pub hensel_confirms: bool,
    pub irreducibility_assumed: bool,
}

/// Does `l` divide `[O_K : Z[theta]]` for every generator `theta` of `K = Q(zeta_n, alpha^(1/n))`?
pub fn kummer_edd_over_q(n: u64, alpha: &FieldElem, l: u64, assume_irreducible: bool) -> Result<EddReport> {
    let field = alpha.field();
    if field.kind() != FieldKind::Cyclotomic(n) {
        return Err(Error::FieldMismatch);
    }
    if !intkit::is_prime_u64(l) {
        return Err(Error::NotPrime(BigInt::from(l)));
    }
    if n.is_multiple_of(l) {
        return Err(Error::Ramified { p: l, n });
    }
    if alpha.is_zero() || (alpha.norm() % BigInt::from(l)).is_zero() {
        return Err(Error::NotCoprimeToL { l });
    }
    require_irreducible(alpha, n, assume_irreducible)?;
    let k = intkit::mult_order(&BigInt::from(l), n)?;
    let count = intkit::count_monic_irreducibles(l, k as u32)?;
    let budget = n * intkit::euler_phi(n)? / k;
    let counting_holds = count < BigUint::from(budget);
    let mut residues = Vec::new();
    let mut parts = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(field.seed() ^ l);
    for prime in split_prime(field, l)? {
        debug_assert_eq!(prime.f() as u64, k);
        let fq = prime.residue_field();
        let abar = prime.residue_map(alpha);
        residues.push(PrimeResidue { prime: prime.label(), nth_power: nth_power_residue(fq, &abar, n)? });
        let binom = FqPoly::monomial(fq, fq.one(), n as usize).sub(&FqPoly::constant(fq, abar));
        for (g, e) in factor_fq(&binom, &mut rng).factors {
            parts.push((e * prime.e(), prime.f() * g.degree().unwrap() as u32));
        }
    }
    let shape = SplittingShape { prime: PrimeLabel::rational(l), parts };
    let hensel_confirms = hensel_edd(l, &shape)?;
    let witness = residues.iter().find(|r| r.nth_power).map(|r| r.prime.clone());
    let all_primes_residue = residues.iter().all(|r| r.nth_power);
    Ok(EddReport {
        n,
        alpha: alpha.display(),
        l,
        k,
        irreducible_count: count.to_string(),
        degree_budget: budget,
        counting_holds,
        all_primes_residue,
        // one residue prime is not enough once alpha is not rational
        is_edd: counting_holds && all_primes_residue,
        power_residue_witness: witness,
        all_primes_checked: true,
        residues,
        shape,
        hensel_confirms,
        irreducibility_assumed: assume_irreducible,
    })
}

/// Splitting of `P` in `L(alpha^(1/n))`, read off `x^n - alpha mod P`. Parts are relative to `P`.
/// Square-freeness of `alpha` is only required at `P`.
pub fn radical_splitting(field: &NumberField, n: u64, alpha: &FieldElem, prime: &PrimeIdeal) -> Result<SplittingShape> {
    if alpha.field() != field || prime.field() != field {
        return Err(Error::FieldMismatch);
    }
    check_n(n)?;
    if alpha.is_zero() || prime.valuation(alpha)? >= 2 {
        return Err(Error::HypothesisFails(format!("alpha is not square-free at {}", prime.display())));
    }
    if n.is_multiple_of(prime.p()) && !wieferich_datum(field, prime, n, alpha)?.holds {
        return Err(Error::SplittingHypothesisFails);
    }
    let fq = prime.residue_field();
    let binom = FqPoly::monomial(fq, fq.one(), n as usize).sub(&FqPoly::constant(fq, prime.residue_map(alpha)));
    let mut rng = ChaCha8Rng::seed_from_u64(field.seed() ^ prime.p() ^ n.rotate_left(32));
    let parts = factor_fq(&binom, &mut rng).factors.iter().map(|(g, e)| (*e, g.degree().unwrap() as u32)).collect();
    Ok(SplittingShape { prime: prime.label(), parts })
}

/// Residue degree of primes above `p` in `Q(zeta_n)`.
pub fn cyclo_residue_degree(p: u64, n: u64) -> Result<u64> {
    if !intkit::is_prime_u64(p) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    if n.is_multiple_of(p) {
        return Err(Error::Ramified { p, n });
    }
    intkit::mult_order(&BigInt::from(p), n)
}

/// Least `f >= 1` with `alpha^f` an `n`-th power mod `P`.
pub fn kummer_residue_degree(prime: &PrimeIdeal, alpha: &FieldElem, n: u64) -> Result<u64> {
    if alpha.field() != prime.field() {
        return Err(Error::FieldMismatch);
    }
    if n == 0 || n.is_multiple_of(prime.p()) || alpha.is_zero() || prime.valuation(alpha)? > 0 {
        return Err(Error::RamifiedOrDividesAlpha);
    }
    let fq = prime.residue_field();
    let abar = prime.residue_map(alpha);
    for f in 1..=n {
        if nth_power_residue(fq, &fq.pow(&abar, f), n)? {
            return Ok(f);
        }
    }
    unreachable!("alpha^n is always an n-th power")
}

/// Whether `p` must divide the index of every root of `h` over `M = L[x]/(m_poly)`,
/// because `P | disc(h)` ramifies in `M`.
pub fn ramification_obstruction(
    field: &NumberField,
    h: &RelPoly,
    prime: &PrimeIdeal,
    m_poly: &RelPoly,
) -> Result<bool> {
    if h.field() != field || m_poly.field() != field || prime.field() != field {
        return Err(Error::FieldMismatch);
    }
    let disc = rel_discriminant(h)?;
    if disc.is_zero() {
        return Err(Error::HypothesisFails("h is not separable".into()));
    }
    if prime.valuation(&disc)? == 0 {
        return Err(Error::HypothesisFails(format!("{} does not divide disc(h)", prime.display())));
    }
    let local = relative_index_criterion(field, m_poly, prime)?;
    if !local.maximal_here {
        return Err(Error::HypothesisFails(format!(
            "{} divides the index of the defining polynomial of M",
            prime.display()
        )));
    }
    Ok(local.residue_factors.iter().any(|(_, e)| *e > 1))
}

/// Number of primes `q` tried when certifying that the cyclotomic polynomial stays irreducible over `L`.
pub const INERT_SEARCH_PRIMES: usize = 200;

/// Is `O_L[zeta_n]` the ring of integers of `L(zeta_n)`?
pub fn relative_cyclotomic_monogenic(field: &NumberField, n: u64) -> Result<Verdict> {
    if n < 3 || n % 4 == 2 {
        return Err(Error::BadConductor { n });
    }
    let disc = field.disc().abs();
    let g = disc.gcd(&BigInt::from(n));
    let verdict = |status: Status, ok: bool, witnesses: Vec<Witness>| Verdict {
        status,
        monogenic_if_hypotheses_hold: ok,
        irreducibility_assumed: status == Status::Conditional,
        witnesses,
        field: field.describe(),
        n,
        alpha: None,
        data: vec![],
    };
    if g.is_one() {
        return Ok(verdict(Status::Yes, true, vec![]));
    }
    let phi_n = cyclotomic(n);
    if root_of_poly_in_field(field, &phi_n)?.is_some() {
        return Err(Error::HypothesisFails(format!("cyclotomic polynomial Phi_{n} has a root in the base field")));
    }
    let mut ramified = None;
    'outer: for (p, _) in intkit::factor_u64(n)? {
        if (&g % BigInt::from(p)).is_zero() {
            for prime in split_prime(field, p)? {
                if prime.e() > 1 {
                    ramified = Some(prime.label());
                    break 'outer;
                }
            }
        }
    }
    let ramified = ramified.expect("a prime dividing the field discriminant ramifies");
    let phi = intkit::euler_phi(n)?;
    let bad = &disc * BigInt::from(n);
    for q in intkit::primes_from(2).filter(|q| !(&bad % BigInt::from(*q)).is_zero()).take(INERT_SEARCH_PRIMES) {
        for prime in split_prime(field, q)? {
            let size = BigInt::from(q).pow(prime.f());
            if intkit::mult_order(&size, n)? == phi {
                let w = vec![Witness::RamifiedAt { prime: ramified }, Witness::InertWitness { prime: prime.label() }];
                return Ok(verdict(Status::No, false, w));
            }
        }
    }
    Ok(verdict(Status::Conditional, false, vec![Witness::RamifiedAt { prime: ramified }]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, nf_make, FieldOptions};
    use crate::zxpoly::IntPoly;

    fn opts() -> FieldOptions {
        FieldOptions::default()
    }

    fn k(n: u64) -> NumberField {
        cyclotomic_field(n, &opts()).unwrap()
    }

    #[test]
    fn wieferich_examples() {
        let k3 = k(3);
        let p3 = split_prime(&k3, 3).unwrap().remove(0);
        let d = wieferich_datum(&k3, &p3, 3, &k3.from_i64(2)).unwrap();
        assert_eq!((d.e, d.m, d.epsilon), (1, 1, 1));
        assert_eq!(d.beta, k3.from_i64(2));
        assert!(d.holds);
        assert!(!wieferich_datum(&k3, &p3, 3, &k3.from_i64s(&[1, -1])).unwrap().holds);
        assert_eq!(wieferich_datum(&k3, &p3, 5, &k3.from_i64(2)), Err(Error::PrimeNotDividingN { p: 3, n: 5 }));

        let qi = k(4);
        let p2 = split_prime(&qi, 2).unwrap().remove(0);
        let alpha = qi.from_i64s(&[3, 2]);
        let d = wieferich_datum(&qi, &p2, 4, &alpha).unwrap();
        assert_eq!((d.e, d.m, d.epsilon), (2, 1, 1));
        assert_eq!(d.beta, p2.lattice_sq().reduce(&alpha));
        assert_eq!(d.exponent_total, BigUint::from(4u32));
    }

    #[test]
    fn wieferich_with_inert_prime() {
        // 2 is inert in Q(zeta_5), f = 4; n = 2 gives epsilon = 1, exponent 2^4
        let k5 = k(5);
        let p2 = split_prime(&k5, 2).unwrap().remove(0);
        assert_eq!(p2.f(), 4);
        let alpha = k5.from_i64s(&[1, 1, 0, 1]);
        let d = wieferich_datum(&k5, &p2, 2, &alpha).unwrap();
        assert_eq!(d.epsilon, 1);
        assert_eq!(d.exponent_total, BigUint::from(16u32));
        let sq = p2.lattice_sq();
        let direct = sq.reduce(&alpha.pow(16));
        assert_eq!(d.holds, sq.reduce(&(&direct - &alpha)).is_zero());
        // n = 32 = 2^5: eps = 1, exponent 2^(4 - 1 + 5)
        let d = wieferich_datum(&k5, &p2, 32, &alpha).unwrap();
        assert_eq!((d.e, d.epsilon), (5, 1));
        assert_eq!(d.exponent_total, BigUint::from(256u32));
        assert_eq!(d.beta, sq.reduce(&alpha.pow(8)));
    }

    #[test]
    fn radical_examples() {
        let k3 = k(3);
        let v = radical_monogenic(&k3, 3, &k3.from_i64s(&[1, -1]), false).unwrap();
        assert_eq!(v.status, Status::Yes);
        let v = radical_monogenic(&k3, 3, &k3.from_i64(2), false).unwrap();
        assert_eq!(v.status, Status::No);
        assert_eq!(v.first_failure().unwrap().kind(), "WieferichHoldsAt");
        let k5 = k(5);
        let z = k5.gen();
        let alpha = &z * &(&k5.one() - &z);
        assert_eq!(radical_monogenic(&k5, 5, &alpha, false).unwrap().status, Status::Yes);
        assert_eq!(radical_monogenic(&k5, 5, &k5.from_i64(32), false), Err(Error::ReducibleRadical { n: 5 }));
        assert_eq!(radical_monogenic(&k5, 5, &k5.from_i64(32), true).unwrap().status, Status::Conditional);
    }

    #[test]
    fn kummer_prime_examples() {
        let k3 = k(3);
        assert_eq!(kummer_prime_monogenic(3, &k3.from_i64s(&[1, -1])).unwrap().status, Status::Yes);
        assert_eq!(kummer_prime_monogenic(3, &k3.from_i64(2)).unwrap().status, Status::No);
        let v = kummer_prime_monogenic(3, &k3.from_i64s(&[0, 3])).unwrap();
        assert_eq!(v.status, Status::No);
        assert_eq!(
            v.first_failure(),
            Some(&Witness::SquareFullAt { prime: split_prime(&k3, 3).unwrap()[0].label(), valuation: 2 })
        );
    }

    #[test]
    fn edd_examples() {
        let k5 = k(5);
        let r = kummer_edd_over_q(5, &k5.from_i64(12), 11, false).unwrap();
        assert_eq!((r.k, r.degree_budget), (1, 20));
        assert_eq!(r.irreducible_count, "11");
        assert!(r.is_edd && r.all_primes_residue && r.hensel_confirms);
        assert_eq!(r.shape.parts, vec![(1, 1); 20]);
        let r = kummer_edd_over_q(5, &k5.from_i64(2), 11, false).unwrap();
        assert!(!r.is_edd);
        assert!(r.power_residue_witness.is_none());
        assert!(kummer_edd_over_q(5, &k5.from_i64(10), 11, false).unwrap().is_edd);
        assert_eq!(kummer_edd_over_q(5, &k5.from_i64(22), 11, false), Err(Error::NotCoprimeToL { l: 11 }));
        // residue at one of the four primes above 11 only: 5 linear primes, 11 linear polynomials
        let r = kummer_edd_over_q(5, &k5.from_i64s(&[13, -1]), 11, false).unwrap();
        assert!(r.power_residue_witness.is_some() && !r.all_primes_residue);
        assert!(!r.is_edd && !r.hensel_confirms);
    }

    #[test]
    fn splitting_shapes_at_primes() {
        let k5 = k(5);
        let p11 = split_prime(&k5, 11).unwrap();
        let s = radical_splitting(&k5, 5, &k5.from_i64(12), &p11[0]).unwrap();
        assert_eq!(s.parts, vec![(1, 1); 5]);
        let s = radical_splitting(&k5, 5, &k5.from_i64(2), &p11[0]).unwrap();
        assert_eq!(s.parts, vec![(1, 5)]);
        let k3 = k(3);
        let p3 = split_prime(&k3, 3).unwrap().remove(0);
        assert_eq!(radical_splitting(&k3, 3, &k3.from_i64s(&[1, -1]), &p3), Err(Error::SplittingHypothesisFails));

        assert_eq!(cyclo_residue_degree(11, 5).unwrap(), 1);
        assert_eq!(cyclo_residue_degree(2, 5).unwrap(), 4);
        assert_eq!(cyclo_residue_degree(13, 12).unwrap(), 1);
        assert_eq!(cyclo_residue_degree(5, 10), Err(Error::Ramified { p: 5, n: 10 }));

        assert_eq!(kummer_residue_degree(&p11[0], &k5.from_i64(12), 5).unwrap(), 1);
        assert_eq!(kummer_residue_degree(&p11[0], &k5.from_i64(2), 5).unwrap(), 5);
        assert_eq!(kummer_residue_degree(&p11[2], &k5.from_i64(23), 7).unwrap(), 1);
        assert_eq!(kummer_residue_degree(&p11[0], &k5.from_i64(22), 5), Err(Error::RamifiedOrDividesAlpha));
    }

    #[test]
    fn obstruction_examples() {
        let l = nf_make(&IntPoly::from_i64s(&[-1, -1, 1]), &opts()).unwrap();
        let p3 = split_prime(&l, 3).unwrap().remove(0);
        let h = RelPoly::from_int_poly(&l, &cyclotomic(3));
        let m3 = RelPoly::binomial(2, &l.from_i64(3));
        let m2 = RelPoly::binomial(2, &l.from_i64(2));
        assert!(ramification_obstruction(&l, &h, &p3, &m3).unwrap());
        assert!(!ramification_obstruction(&l, &h, &p3, &m2).unwrap());
        let p2 = split_prime(&l, 2).unwrap().remove(0);
        assert!(matches!(ramification_obstruction(&l, &h, &p2, &m3), Err(Error::HypothesisFails(_))));
    }

    #[test]
    fn cyclotomic_over_base() {
        let q5 = nf_make(&IntPoly::from_i64s(&[-1, -1, 1]), &opts()).unwrap();
        assert_eq!(relative_cyclotomic_monogenic(&q5, 3).unwrap().status, Status::Yes);
        let q3 = nf_make(&IntPoly::from_i64s(&[-3, 0, 1]), &opts()).unwrap();
        let v = relative_cyclotomic_monogenic(&q3, 3).unwrap();
        assert_eq!(v.status, Status::No);
        match &v.witnesses[1] {
            Witness::InertWitness { prime } => assert_eq!(prime.p, 11),
            w => panic!("unexpected {w:?}"),
        }
        assert!(matches!(relative_cyclotomic_monogenic(&k(4), 4), Err(Error::HypothesisFails(_))));
        // no prime keeps Phi_12 irreducible, so this stays conditional
        assert_eq!(relative_cyclotomic_monogenic(&q3, 12).unwrap().status, Status::Conditional);
        assert_eq!(relative_cyclotomic_monogenic(&q3, 6), Err(Error::BadConductor { n: 6 }));
    }
}
