use std::sync::OnceLock;

use kummono::dedekind::{dedekind_index_q, relative_index_criterion, relative_monogenic, relative_monogenic_with};
use kummono::fqpoly::{factor_fq, is_irreducible_fq, FqField, FqPoly};
use kummono::monogenic::{
    kummer_edd_over_q, kummer_prime_monogenic, radical_monogenic, radical_monogenic_with, radical_splitting, Status,
};
use kummono::numfield::{cyclotomic_field, is_irreducible_radical, nf_make, split_prime, FieldOptions};
use kummono::zxpoly::{discriminant, is_irreducible_q};
use kummono::{intkit, FieldElem, IntPoly, NumberField, PrimeIdeal, RelPoly};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..ProptestConfig::default() }
}

struct Setup {
    fields: Vec<NumberField>,
    /// Primes above 2, 3, 5, 7, 11, 13 for each field.
    primes: Vec<Vec<PrimeIdeal>>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let o = FieldOptions::default();
        let fields = vec![
            cyclotomic_field(3, &o).unwrap(),
            cyclotomic_field(5, &o).unwrap(),
            nf_make(&IntPoly::from_i64s(&[-1, -1, 1]), &o).unwrap(),
            cyclotomic_field(4, &o).unwrap(),
            nf_make(&IntPoly::from_i64s(&[-2, 0, 0, 1]), &o).unwrap(),
        ];
        let primes = fields
            .iter()
            .map(|f| [2u64, 3, 5, 7, 11, 13].iter().flat_map(|&p| split_prime(f, p).unwrap()).collect())
            .collect();
        Setup { fields, primes }
    })
}

fn elem(field: &NumberField, coords: &[i64]) -> FieldElem {
    field.from_i64s(&coords[..field.degree()])
}

fn coords(bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, 4)
}

#[test]
fn sum_of_ef_is_degree() {
    let o = FieldOptions::default();
    let mut fields = setup().fields.clone();
    for n in [7u64, 8, 9, 12, 15] {
        fields.push(cyclotomic_field(n, &o).unwrap());
    }
    fields.push(
        nf_make(&IntPoly::from_i64s(&[1, 0, -10, 0, 1]), &FieldOptions { assume_maximal: true, ..o.clone() }).unwrap(),
    );
    for field in &fields {
        for p in intkit::sieve(100) {
            let split = match split_prime(field, p as u64) {
                Ok(s) => s,
                Err(kummono::Error::IndexDivides { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let total: u32 = split.iter().map(|q| q.e() * q.f()).sum();
            assert_eq!(total as usize, field.degree(), "{} at {p}", field.describe());
        }
    }
}

proptest! {
    #![proptest_config(config(200, 11))]

    #[test]
    fn valuation_is_additive(fi in 0usize..4, pi in 0usize..64, a in coords(25), b in coords(25)) {
        let s = setup();
        let field = &s.fields[fi];
        let prime = &s.primes[fi][pi % s.primes[fi].len()];
        let (x, y) = (elem(field, &a), elem(field, &b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let vxy = prime.valuation(&(&x * &y)).unwrap();
        prop_assert_eq!(vxy, prime.valuation(&x).unwrap() + prime.valuation(&y).unwrap());
    }

    #[test]
    fn membership_matches_valuation(fi in 0usize..5, pi in 0usize..64, a in coords(40), k in 1u32..=4) {
        let s = setup();
        let field = &s.fields[fi];
        let prime = &s.primes[fi][pi % s.primes[fi].len()];
        let x = elem(field, &a);
        prop_assume!(!x.is_zero());
        prop_assert_eq!(prime.power(k).contains(&x), prime.valuation(&x).unwrap() >= k);
    }

    #[test]
    fn residue_map_is_a_ring_map(fi in 0usize..5, pi in 0usize..64, a in coords(50), b in coords(50)) {
        let s = setup();
        let field = &s.fields[fi];
        let prime = &s.primes[fi][pi % s.primes[fi].len()];
        let fq = prime.residue_field();
        let (x, y) = (elem(field, &a), elem(field, &b));
        let (rx, ry) = (prime.residue_map(&x), prime.residue_map(&y));
        prop_assert_eq!(prime.residue_map(&(&x + &y)), fq.add(&rx, &ry));
        prop_assert_eq!(prime.residue_map(&(&x * &y)), fq.mul(&rx, &ry));
        prop_assert_eq!(prime.residue_map(&field.one()), fq.one());
        prop_assert_eq!(prime.residue_map(&prime.lift_residue(&rx)), rx);
    }

    #[test]
    fn dividing_by_the_uniformizer(fi in 0usize..5, pi in 0usize..64, a in coords(50)) {
        let s = setup();
        let field = &s.fields[fi];
        let prime = &s.primes[fi][pi % s.primes[fi].len()];
        let x = elem(field, &a);
        let pix = prime.uniformizer() * &x;
        prop_assert_eq!(prime.div_by_uniformizer_mod_p(&pix).unwrap(), prime.residue_map(&x));
    }
}

proptest! {
    #![proptest_config(config(100, 12))]

    #[test]
    fn norm_is_product_of_prime_norms(fi in 0usize..5, a in coords(12)) {
        let field = &setup().fields[fi];
        let x = elem(field, &a);
        prop_assume!(!x.is_zero());
        let n = x.norm().abs();
        let fac = intkit::factor_int(&n, &intkit::FactorBudget::default()).unwrap();
        let mut product = BigUint::one();
        for (p, _) in fac.primes_u64().unwrap() {
            for prime in split_prime(field, p).unwrap() {
                product *= prime.norm().pow(prime.valuation(&x).unwrap());
            }
        }
        prop_assert_eq!(BigInt::from(product), n);
    }
}

fn alternative_uniformizer(prime: &PrimeIdeal) -> PrimeIdeal {
    let field = prime.field();
    let shift = prime.lattice_sq().basis().pop().unwrap();
    let unit_shift = &(prime.uniformizer() * &field.from_i64(1 + prime.p() as i64)) + &shift;
    prime.with_uniformizer(&unit_shift).unwrap()
}

proptest! {
    #![proptest_config(config(100, 13))]

    #[test]
    fn index_verdict_ignores_uniformizer(fi in 0usize..5, pi in 0usize..64, n in 2usize..=4, a in coords(9)) {
        let s = setup();
        let field = &s.fields[fi];
        let prime = &s.primes[fi][pi % s.primes[fi].len()];
        let alpha = elem(field, &a);
        prop_assume!(!alpha.is_zero());
        let f = RelPoly::binomial(n, &alpha);
        let other = alternative_uniformizer(prime);
        prop_assert!(other.uniformizer() != prime.uniformizer());
        let v1 = relative_index_criterion(field, &f, prime).unwrap();
        let v2 = relative_index_criterion(field, &f, &other).unwrap();
        prop_assert_eq!(v1.maximal_here, v2.maximal_here);
        prop_assert_eq!(v1.offender, v2.offender);
    }

    #[test]
    fn radical_verdict_ignores_uniformizer(fi in 0usize..5, n in 2u64..=4, a in coords(9)) {
        let field = &setup().fields[fi];
        let alpha = elem(field, &a);
        prop_assume!(!alpha.is_zero() && is_irreducible_radical(&alpha, n).unwrap());
        let v1 = radical_monogenic(field, n, &alpha, false).unwrap();
        let v2 = radical_monogenic_with(field, n, &alpha, false, |p| Some(alternative_uniformizer(p))).unwrap();
        prop_assert_eq!(v1.status, v2.status);
        prop_assert_eq!(&v1.witnesses, &v2.witnesses);
        let f = RelPoly::binomial(n as usize, &alpha);
        let r1 = relative_monogenic(field, &f).unwrap();
        let r2 = relative_monogenic_with(field, &f, |p| Some(alternative_uniformizer(p))).unwrap();
        prop_assert_eq!(r1.monogenic, r2.monogenic);
    }

    #[test]
    fn discriminant_is_field_discriminant_when_index_is_one(c in prop::collection::vec(-12i64..=12, 2..=4)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = IntPoly::from_i64s(&coeffs);
        prop_assume!(is_irreducible_q(&f).unwrap());
        let d = discriminant(&f).unwrap();
        let fac = intkit::factor_int(&d.abs(), &intkit::FactorBudget::default()).unwrap();
        let index_one = fac
            .primes_u64()
            .unwrap()
            .into_iter()
            .filter(|(_, e)| *e >= 2)
            .all(|(p, _)| dedekind_index_q(&f, p).unwrap().maximal_here);
        match nf_make(&f, &FieldOptions::default()) {
            Ok(field) => {
                prop_assert!(index_one);
                prop_assert_eq!(field.disc(), &d);
            }
            Err(kummono::Error::BaseOrderNotMaximal { .. }) => prop_assert!(!index_one),
            Err(e) => panic!("{e}"),
        }
    }
}

fn cyclo_for(n: u64) -> NumberField {
    static K: OnceLock<Vec<(u64, NumberField)>> = OnceLock::new();
    let all = K.get_or_init(|| {
        [3u64, 4, 5, 7].iter().map(|&m| (m, cyclotomic_field(m, &FieldOptions::default()).unwrap())).collect()
    });
    let m = if n == 6 { 3 } else { n };
    all.iter().find(|(k, _)| *k == m).unwrap().1.clone()
}

proptest! {
    #![proptest_config(config(200, 14))]

    #[test]
    fn radical_and_relative_engines_agree(n in prop::sample::select(vec![3u64, 4, 5, 6, 7]), a in -50i64..=50) {
        let field = cyclo_for(n);
        prop_assume!(a != 0);
        let alpha = field.from_i64(a);
        prop_assume!(is_irreducible_radical(&alpha, n).unwrap());
        let v = radical_monogenic(&field, n, &alpha, false).unwrap();
        let r = relative_monogenic(&field, &RelPoly::binomial(n as usize, &alpha)).unwrap();
        prop_assert_eq!(v.status == Status::Yes, r.monogenic, "n={} a={}", n, a);
    }
}

proptest! {
    #![proptest_config(config(100, 15))]

    #[test]
    fn kummer_and_relative_engines_agree(a in -12i64..=12, b in -12i64..=12) {
        let k3 = cyclo_for(3);
        let alpha = k3.from_i64s(&[a, b]);
        prop_assume!(!alpha.is_zero() && is_irreducible_radical(&alpha, 3).unwrap());
        let v = kummer_prime_monogenic(3, &alpha).unwrap();
        let r = relative_monogenic(&k3, &RelPoly::binomial(3, &alpha)).unwrap();
        prop_assert_eq!(v.status == Status::Yes, r.monogenic);
    }

    #[test]
    fn splitting_shape_has_degree_n(fi in 0usize..5, pi in 0usize..64, n in 2u64..=6, a in coords(9)) {
        let s = setup();
        let field = &s.fields[fi];
        let prime = &s.primes[fi][pi % s.primes[fi].len()];
        prop_assume!(n % prime.p() != 0);
        let alpha = elem(field, &a);
        prop_assume!(!alpha.is_zero() && prime.valuation(&alpha).unwrap() <= 1);
        let shape = radical_splitting(field, n, &alpha, prime).unwrap();
        prop_assert_eq!(shape.degree(), n);
    }

    #[test]
    fn edd_implies_hensel(n in prop::sample::select(vec![3u64, 4, 5]), a in -60i64..=60, b in -3i64..=3) {
        let field = cyclo_for(n);
        let alpha = field.from_i64s(&[a, b]);
        prop_assume!(!alpha.is_zero() && is_irreducible_radical(&alpha, n).unwrap());
        for l in [7u64, 11, 13, 31] {
            if n % l == 0 {
                continue;
            }
            match kummer_edd_over_q(n, &alpha, l, false) {
                Ok(r) => {
                    prop_assert!(!r.is_edd || r.hensel_confirms);
                    prop_assert_eq!(r.shape.degree(), n * field.degree() as u64);
                }
                Err(kummono::Error::NotCoprimeToL { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn rational_alpha_always_satisfies_the_congruence() {
    for p in [3u64, 5, 7] {
        let field = cyclo_for(p);
        for a in (-50i64..=50).filter(|a| a.abs() >= 2) {
            let alpha = field.from_i64(a);
            if !is_irreducible_radical(&alpha, p).unwrap() {
                continue;
            }
            let v = radical_monogenic(&field, p, &alpha, false).unwrap();
            assert_eq!(v.status, Status::No, "p={p} a={a}");
            assert!(v.data.iter().any(|d| d.holds && d.prime.p() == p), "p={p} a={a}");
        }
    }
}

proptest! {
    #![proptest_config(config(150, 16))]

    #[test]
    fn factorization_reconstructs(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 101]), c in prop::collection::vec(0u64..1000, 1..=9), seed in any::<u64>()) {
        let fq = FqField::prime(p).unwrap();
        let mut coeffs = c.clone();
        coeffs.push(1);
        let a = FqPoly::from_u64s(&fq, &coeffs);
        let fac = factor_fq(&a, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(fac.reconstruct(), a);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic() && is_irreducible_fq(g));
        }
    }

    #[test]
    fn irreducible_count_matches_field_polynomial(l in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..=4) {
        // x^(l^k) - x is the product of all monic irreducibles of degree dividing k
        let mut total = BigUint::from(0u32);
        for d in intkit::divisors(k as u64).unwrap() {
            total += intkit::count_monic_irreducibles(l, d as u32).unwrap() * BigUint::from(d);
        }
        prop_assert_eq!(total, BigUint::from(l).pow(k));
    }
}
