use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kummono::dedekind::relative_monogenic;
use kummono::fqpoly::{factor_fq, FqField, FqPoly};
use kummono::monogenic::{kummer_edd_over_q, kummer_prime_monogenic, radical_monogenic};
use kummono::numfield::{cyclotomic_field, split_prime, FieldOptions};
use kummono::zxpoly::{cyclotomic, discriminant};
use kummono::RelPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn finite_fields(c: &mut Criterion) {
    let fq = FqField::prime(101).unwrap();
    let coeffs: Vec<u64> = (0..24).map(|i| (i * i * 37 + 11) % 101).chain([1]).collect();
    let a = FqPoly::from_u64s(&fq, &coeffs);
    c.bench_function("factor_fq deg 24 over F_101", |b| {
        b.iter(|| factor_fq(black_box(&a), &mut ChaCha8Rng::seed_from_u64(1)))
    });
}

fn resultants(c: &mut Criterion) {
    let phi = cyclotomic(35);
    c.bench_function("discriminant of Phi_35", |b| b.iter(|| discriminant(black_box(&phi))));
}

fn primes(c: &mut Criterion) {
    let opts = FieldOptions::default();
    let k12 = cyclotomic_field(12, &opts).unwrap();
    let k7 = cyclotomic_field(7, &opts).unwrap();
    c.bench_function("split 2 and 3 in Q(zeta_12)", |b| {
        b.iter(|| (split_prime(&k12, 2).unwrap(), split_prime(&k12, 3).unwrap()))
    });
    c.bench_function("split 29 in Q(zeta_7)", |b| b.iter(|| split_prime(&k7, black_box(29))));
}

fn criteria(c: &mut Criterion) {
    let opts = FieldOptions::default();
    let k3 = cyclotomic_field(3, &opts).unwrap();
    let k5 = cyclotomic_field(5, &opts).unwrap();
    let alpha3 = k3.from_i64s(&[7, -4]);
    let alpha5 = k5.from_i64s(&[2, 0, 1]);
    c.bench_function("kummer prime p=3", |b| b.iter(|| kummer_prime_monogenic(3, black_box(&alpha3))));
    c.bench_function("radical n=5 over Q(zeta_5)", |b| b.iter(|| radical_monogenic(&k5, 5, black_box(&alpha5), false)));
    let f = RelPoly::binomial(3, &alpha3);
    c.bench_function("relative index criterion x^3 - alpha", |b| b.iter(|| relative_monogenic(&k3, black_box(&f))));
    let twelve = k5.from_i64(12);
    c.bench_function("edd n=5 l=11", |b| b.iter(|| kummer_edd_over_q(5, black_box(&twelve), 11, false)));
}

criterion_group!(benches, finite_fields, resultants, primes, criteria);
criterion_main!(benches);
