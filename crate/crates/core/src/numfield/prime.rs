//! Prime ideals of `Z[theta]` via Dedekind splitting, valuations, residue maps.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{centered_u64, mod_u64, FieldElem, IdealLattice, NumberField};
use crate::error::{Error, Result};
use crate::fqpoly::{factor_fq, solve_mod_p, FqElem, FqField, FqPoly};
use crate::intkit;

/// Serializable identification of a prime: `(p, hbar(theta))` plus its `e` and `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeLabel {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// Ascending coefficients of the residue factor over `F_p`; empty for a rational prime.
    pub hbar: Vec<u64>,
    /// Generators as printed, e.g. `(3, z + 2)`.
    pub display: String,
}

impl PrimeLabel {
    pub fn rational(p: u64) -> PrimeLabel {
        PrimeLabel { p, e: 1, f: 1, hbar: vec![], display: format!("({p})") }
    }

    /// Absolute norm `p^f`.
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }
}

struct PrimeData {
    field: NumberField,
    p: u64,
    hbar: FqPoly,
    e: u32,
    f: u32,
    generator: FieldElem,
    lattice: IdealLattice,
    lattice_sq: IdealLattice,
    uniformizer: FieldElem,
    residue_field: FqField,
    powers: Mutex<Vec<IdealLattice>>,
    quotient: OnceLock<QuotientSystem>,
}

/// Linear data for solving `pi * t = c (mod P^2)` over `F_p`.
struct QuotientSystem {
    /// Row-major `d x (f + d)` matrix `[Y(pi theta^j) | Y(P^2 basis)]` mod p.
    matrix: Vec<Vec<u64>>,
}

/// A prime ideal `P = (p, h(theta))`. Cheap to clone.
#[derive(Clone)]
pub struct PrimeIdeal(Arc<PrimeData>);

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.0.field == other.0.field && self.0.p == other.0.p && self.0.hbar == other.0.hbar
    }
}

impl Eq for PrimeIdeal {}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeIdeal{} e={} f={}", self.display(), self.0.e, self.0.f)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Primes above `p`, ordered by residue degree then residue factor.
pub fn split_prime(field: &NumberField, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !intkit::is_prime_u64(p) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    let base = FqField::prime(p)?;
    let gbar = field.poly().to_fq(&base);
    let mut rng = ChaCha8Rng::seed_from_u64(field.seed() ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let fac = factor_fq(&gbar, &mut rng);
    let mut out = Vec::with_capacity(fac.factors.len());
    let mut total = 0usize;
    for (hbar, e) in fac.factors {
        let f = hbar.degree().unwrap() as u32;
        total += e as usize * f as usize;
        let lift = lift_prime_poly(field, &hbar);
        let lattice = IdealLattice::from_generators(field, &[field.from_int(BigInt::from(p)), lift.clone()])?;
        if lattice.norm() != BigInt::from(p).pow(f) {
            return Err(Error::IndexDivides { prime: p });
        }
        let lattice_sq = lattice.product(&lattice)?;
        let uniformizer =
            if e == 1 { field.from_int(BigInt::from(p)) } else { choose_uniformizer(&lattice, &lattice_sq) };
        let modulus: Vec<u64> = hbar.coeffs().iter().map(|c| c.0[0]).collect();
        let residue_field = FqField::with_modulus(p, &modulus)?;
        out.push(PrimeIdeal(Arc::new(PrimeData {
            field: field.clone(),
            p,
            hbar,
            e,
            f,
            generator: lift,
            lattice,
            lattice_sq,
            uniformizer,
            residue_field,
            powers: Mutex::new(Vec::new()),
            quotient: OnceLock::new(),
        })));
    }
    debug_assert_eq!(total, field.degree());
    Ok(out)
}

fn lift_prime_poly(field: &NumberField, a: &FqPoly) -> FieldElem {
    let p = a.field().p();
    field.from_coords(a.coeffs().iter().map(|c| centered_u64(c.0[0], p)).collect())
}

fn choose_uniformizer(lattice: &IdealLattice, sq: &IdealLattice) -> FieldElem {
    let basis = lattice.basis();
    if let Some(b) = basis.iter().find(|b| !sq.contains(b)) {
        return b.clone();
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = &basis[i] + &basis[j];
            if !sq.contains(&s) {
                return s;
            }
        }
    }
    unreachable!("a prime ideal is never equal to its square")
}

impl PrimeIdeal {
    pub fn field(&self) -> &NumberField {
        &self.0.field
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Residue factor of the defining polynomial over `F_p`.
    pub fn hbar(&self) -> &FqPoly {
        &self.0.hbar
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    /// `h(theta)` with `h` the centered lift of `hbar`.
    pub fn generator(&self) -> &FieldElem {
        &self.0.generator
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.0.lattice
    }

    pub fn lattice_sq(&self) -> &IdealLattice {
        &self.0.lattice_sq
    }

    pub fn uniformizer(&self) -> &FieldElem {
        &self.0.uniformizer
    }

    pub fn residue_field(&self) -> &FqField {
        &self.0.residue_field
    }

    /// `p^f`.
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.f)
    }

    pub fn display(&self) -> String {
        if self.0.field.degree() == 1 || self.0.generator.is_zero() {
            return format!("({})", self.0.p);
        }
        format!("({}, {})", self.0.p, self.0.generator.display())
    }

    pub fn label(&self) -> PrimeLabel {
        PrimeLabel {
            p: self.0.p,
            e: self.0.e,
            f: self.0.f,
            hbar: self.0.hbar.coeffs().iter().map(|c| c.0[0]).collect(),
            display: self.display(),
        }
    }

    /// The same prime with a different uniformizer, which must lie in `P \ P^2`.
    pub fn with_uniformizer(&self, pi: &FieldElem) -> Result<PrimeIdeal> {
        if pi.field() != &self.0.field {
            return Err(Error::FieldMismatch);
        }
        if !self.0.lattice.contains(pi) || self.0.lattice_sq.contains(pi) {
            return Err(Error::Invalid(format!("{pi} is not a uniformizer at {self}")));
        }
        let d = &self.0;
        Ok(PrimeIdeal(Arc::new(PrimeData {
            field: d.field.clone(),
            p: d.p,
            hbar: d.hbar.clone(),
            e: d.e,
            f: d.f,
            generator: d.generator.clone(),
            lattice: d.lattice.clone(),
            lattice_sq: d.lattice_sq.clone(),
            uniformizer: pi.clone(),
            residue_field: d.residue_field.clone(),
            powers: Mutex::new(d.powers.lock().unwrap().clone()),
            quotient: OnceLock::new(),
        })))
    }

    /// `P^k`, cached.
    pub fn power(&self, k: u32) -> IdealLattice {
        match k {
            0 => return IdealLattice::unit(&self.0.field),
            1 => return self.0.lattice.clone(),
            2 => return self.0.lattice_sq.clone(),
            _ => {}
        }
        let mut cache = self.0.powers.lock().unwrap();
        if cache.is_empty() {
            cache.push(self.0.lattice.clone());
            cache.push(self.0.lattice_sq.clone());
        }
        while cache.len() < k as usize {
            let next = cache.last().unwrap().product(&self.0.lattice).expect("same field");
            cache.push(next);
        }
        cache[k as usize - 1].clone()
    }

    /// `v_P(x)`: the largest `k` with `x` in `P^k`.
    pub fn valuation(&self, x: &FieldElem) -> Result<u32> {
        if x.field() != &self.0.field {
            return Err(Error::FieldMismatch);
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let bound = intkit::valuation_int(&x.norm(), self.0.p) / self.0.f;
        for k in 1..=bound {
            if !self.power(k).contains(x) {
                return Ok(k - 1);
            }
        }
        Ok(bound)
    }

    /// Image in `O_L / P = F_p[t]/(hbar)` under `theta -> t`.
    pub fn residue_map(&self, x: &FieldElem) -> FqElem {
        let coeffs: Vec<u64> = x.coords().iter().map(|c| mod_u64(c, self.0.p)).collect();
        self.0.residue_field.reduce(&coeffs)
    }

    /// Lift of a residue-field element to `Z[theta]` with centered coordinates.
    pub fn lift_residue(&self, a: &FqElem) -> FieldElem {
        let p = self.0.p;
        let field = &self.0.field;
        // the residue field is F_p[t]/(hbar) and t is the image of theta
        let reduced = self.0.residue_field.reduce(&a.0);
        field.from_coords(reduced.0.iter().map(|&c| centered_u64(c, p)).collect())
    }

    /// Residue of `c / pi` modulo `P`, for `c` in `P`.
    pub fn div_by_uniformizer_mod_p(&self, c: &FieldElem) -> Result<FqElem> {
        if c.field() != &self.0.field {
            return Err(Error::FieldMismatch);
        }
        let p = self.0.p;
        let yc = self.0.lattice.coords_of(c).ok_or(Error::NotInIdeal)?;
        let system = self.0.quotient.get_or_init(|| self.quotient_system());
        let rhs: Vec<u64> = yc.iter().map(|v| mod_u64(v, p)).collect();
        let sol = solve_mod_p(&system.matrix, &rhs, p).expect("pi * (O/P) spans P / P^2");
        let f = self.0.f as usize;
        Ok(self.0.residue_field.reduce(&sol[..f]))
    }

    fn quotient_system(&self) -> QuotientSystem {
        let d = self.0.field.degree();
        let f = self.0.f as usize;
        let p = self.0.p;
        let lat = &self.0.lattice;
        let theta = self.0.field.gen();
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(f + d);
        let mut cur = self.0.uniformizer.clone();
        for _ in 0..f {
            let y = lat.coords_of(&cur).expect("pi theta^j lies in P");
            cols.push(y.iter().map(|v| mod_u64(v, p)).collect());
            cur = &cur * &theta;
        }
        for b in self.0.lattice_sq.basis() {
            let y = lat.coords_of(&b).expect("P^2 lies in P");
            cols.push(y.iter().map(|v| mod_u64(v, p)).collect());
        }
        let matrix = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        QuotientSystem { matrix }
    }
}

/// Whether `(alpha)` has no repeated prime factor, with the first offender if not.
#[derive(Debug, Clone, PartialEq)]
pub struct SquarefreeCheck {
    pub squarefree: bool,
    pub witness: Option<(PrimeIdeal, u32)>,
}

pub fn is_squarefree_ideal(alpha: &FieldElem) -> Result<SquarefreeCheck> {
    for (prime, v) in ideal_factorization(alpha)? {
        if v >= 2 {
            return Ok(SquarefreeCheck { squarefree: false, witness: Some((prime, v)) });
        }
    }
    Ok(SquarefreeCheck { squarefree: true, witness: None })
}

/// Prime ideal factorization of `(alpha)`, primes in increasing order of `p`.
pub fn ideal_factorization(alpha: &FieldElem) -> Result<Vec<(PrimeIdeal, u32)>> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = alpha.field();
    let n = alpha.norm().abs();
    let fac = intkit::factor_int(&n, field.factor_budget())?;
    let mut out = Vec::new();
    for (p, _) in fac.primes_u64()? {
        for prime in split_prime(field, p)? {
            let v = prime.valuation(alpha)?;
            if v > 0 {
                out.push((prime, v));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, nf_make, rational_field, FieldOptions};
    use crate::zxpoly::IntPoly;

    fn opts() -> FieldOptions {
        FieldOptions::default()
    }

    fn shape(ps: &[PrimeIdeal]) -> Vec<(u32, u32)> {
        ps.iter().map(|p| (p.e(), p.f())).collect()
    }

    #[test]
    fn split_examples() {
        let k5 = cyclotomic_field(5, &opts()).unwrap();
        assert_eq!(shape(&split_prime(&k5, 11).unwrap()), vec![(1, 1); 4]);
        assert_eq!(shape(&split_prime(&k5, 2).unwrap()), vec![(1, 4)]);
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        assert_eq!(shape(&split_prime(&k3, 3).unwrap()), vec![(2, 1)]);
        assert!(split_prime(&k3, 9).is_err());
    }

    #[test]
    fn valuation_examples() {
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        let p3 = &split_prime(&k3, 3).unwrap()[0];
        assert_eq!(p3.valuation(&k3.one()).unwrap(), 0);
        assert_eq!(p3.valuation(&k3.from_i64(3)).unwrap(), 2);
        assert_eq!(p3.valuation(&k3.from_i64(6)).unwrap(), 2);
        assert_eq!(p3.valuation(&k3.from_i64s(&[1, -1])).unwrap(), 1);
        assert_eq!(p3.valuation(&k3.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn uniformizer_examples() {
        let q5 = nf_make(&IntPoly::from_i64s(&[-1, -1, 1]), &opts()).unwrap();
        let p2 = &split_prime(&q5, 2).unwrap()[0];
        assert_eq!(p2.f(), 2);
        assert_eq!(p2.uniformizer(), &q5.from_i64(2));
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        let p3 = &split_prime(&k3, 3).unwrap()[0];
        assert_eq!(p3.valuation(p3.uniformizer()).unwrap(), 1);
        let qi = cyclotomic_field(4, &opts()).unwrap();
        let p2 = &split_prime(&qi, 2).unwrap()[0];
        assert_eq!(p2.valuation(p2.uniformizer()).unwrap(), 1);
        assert!(p2.with_uniformizer(&qi.from_i64(2)).is_err());
        assert!(p2.with_uniformizer(&qi.from_i64s(&[1, 1])).is_ok());
    }

    #[test]
    fn residue_map_examples() {
        let k5 = cyclotomic_field(5, &opts()).unwrap();
        let primes = split_prime(&k5, 11).unwrap();
        let p = primes
            .iter()
            .find(|p| p.hbar().coeffs().iter().map(|c| c.0[0]).collect::<Vec<_>>() == vec![8, 1])
            .expect("x - 3 divides Phi_5 mod 11");
        assert_eq!(p.residue_map(&k5.gen()), FqElem(vec![3]));
        assert_eq!(p.residue_map(&k5.from_i64(-30)), FqElem(vec![3]));
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        let p3 = &split_prime(&k3, 3).unwrap()[0];
        assert!(p3.residue_map(&k3.from_i64s(&[1, -1])).is_zero());
    }

    #[test]
    fn division_by_uniformizer_examples() {
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        let p3 = &split_prime(&k3, 3).unwrap()[0];
        assert!(p3.div_by_uniformizer_mod_p(p3.uniformizer()).unwrap().is_one());
        assert!(p3.div_by_uniformizer_mod_p(&k3.from_i64(3)).unwrap().is_zero());
        assert_eq!(p3.div_by_uniformizer_mod_p(&k3.one()), Err(Error::NotInIdeal));
        let q5 = nf_make(&IntPoly::from_i64s(&[-1, -1, 1]), &opts()).unwrap();
        let p2 = &split_prime(&q5, 2).unwrap()[0];
        let two_theta = q5.from_i64s(&[0, 2]);
        assert_eq!(p2.div_by_uniformizer_mod_p(&two_theta).unwrap(), p2.residue_map(&q5.gen()));
    }

    #[test]
    fn squarefree_examples() {
        let k3 = cyclotomic_field(3, &opts()).unwrap();
        assert!(is_squarefree_ideal(&k3.one()).unwrap().squarefree);
        assert!(is_squarefree_ideal(&k3.from_i64s(&[1, -1])).unwrap().squarefree);
        let q = rational_field(&opts());
        let check = is_squarefree_ideal(&q.from_i64(175)).unwrap();
        assert!(!check.squarefree);
        let (prime, v) = check.witness.unwrap();
        assert_eq!((prime.p(), v), (5, 2));
        assert_eq!(prime.norm(), BigUint::from(5u32));
    }
}
