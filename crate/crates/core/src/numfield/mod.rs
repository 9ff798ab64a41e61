//! Number fields `Q(theta)` whose maximal order is `Z[theta]`.

mod embed;
mod ideal;
mod power;
mod prime;
mod relpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dedekind::dedekind_index_q;
use crate::error::{Error, Result};
use crate::intkit::{self, FactorBudget};
use crate::zxpoly::{self, cyclotomic, discriminant, is_irreducible_q, IntPoly};

pub use ideal::{ideal_contains, ideal_hnf, ideal_product, IdealLattice};
pub use power::{is_irreducible_radical, is_nth_power_in_field, root_of_poly_in_field};
pub use prime::{ideal_factorization, is_squarefree_ideal, split_prime, PrimeIdeal, PrimeLabel, SquarefreeCheck};
pub use relpoly::{rel_discriminant, rel_resultant, RelPoly};

pub const FIELD_DEGREE_CAP: usize = 32;

/// Construction knobs shared by field constructors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FieldOptions {
    /// Skip the per-prime maximality check and trust `Z[theta] = O_L`.
    pub assume_maximal: bool,
    pub factor_budget: FactorBudget,
    /// Seeds every randomized subroutine run on behalf of this field.
    pub seed: u64,
}

/// How `Z[theta] = O_L` was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Maximality {
    /// Power basis of a cyclotomic field.
    Cyclotomic,
    /// Index criterion passed at each listed prime (those whose square divides `disc g`).
    Checked(Vec<u64>),
    /// Taken on trust from the caller.
    Asserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Cyclotomic(u64),
    General,
}

struct FieldData {
    g: IntPoly,
    degree: usize,
    disc_g: BigInt,
    field_disc: BigInt,
    maximality: Maximality,
    kind: FieldKind,
    var: &'static str,
    opts: FieldOptions,
    roots: OnceLock<Vec<Complex64>>,
}

/// Cheap-to-clone handle on an immutable number field.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.g == other.0.g
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.describe())
    }
}

/// A field from a monic irreducible defining polynomial.
pub fn nf_make(g: &IntPoly, opts: &FieldOptions) -> Result<NumberField> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    if d == 0 {
        return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
    }
    if d > FIELD_DEGREE_CAP {
        return Err(Error::DegreeCap { degree: d, cap: FIELD_DEGREE_CAP });
    }
    if !is_irreducible_q(g)? {
        return Err(Error::NotIrreducible);
    }
    let disc_g = if d == 1 { BigInt::one() } else { discriminant(g)? };
    let maximality = if opts.assume_maximal {
        Maximality::Asserted
    } else {
        let fac = intkit::factor_int(&disc_g, &opts.factor_budget)?;
        let mut checked = Vec::new();
        for (p, e) in fac.primes_u64()? {
            if e >= 2 {
                if !dedekind_index_q(g, p)?.maximal_here {
                    return Err(Error::BaseOrderNotMaximal { prime: p });
                }
                checked.push(p);
            }
        }
        Maximality::Checked(checked)
    };
    Ok(build(g.clone(), disc_g.clone(), disc_g, maximality, FieldKind::General, "t", opts))
}

/// `Q(zeta_n)` with defining polynomial `Phi_n`, written in the variable `z`.
pub fn cyclotomic_field(n: u64, opts: &FieldOptions) -> Result<NumberField> {
    let field_disc = zxpoly::cyclo_disc_formula(n)?;
    let g = cyclotomic(n);
    if g.degree().unwrap() > FIELD_DEGREE_CAP {
        return Err(Error::DegreeCap { degree: g.degree().unwrap(), cap: FIELD_DEGREE_CAP });
    }
    let disc_g = discriminant(&g)?;
    debug_assert_eq!(disc_g, field_disc);
    Ok(build(g, disc_g, field_disc, Maximality::Cyclotomic, FieldKind::Cyclotomic(n), "z", opts))
}

/// The rational field, realized as `Q[x]/(x)`.
pub fn rational_field(opts: &FieldOptions) -> NumberField {
    build(IntPoly::x(), BigInt::one(), BigInt::one(), Maximality::Checked(vec![]), FieldKind::General, "t", opts)
}

fn build(
    g: IntPoly,
    disc_g: BigInt,
    field_disc: BigInt,
    maximality: Maximality,
    kind: FieldKind,
    var: &'static str,
    opts: &FieldOptions,
) -> NumberField {
    let d = g.degree().unwrap();
    NumberField(Arc::new(FieldData {
        g,
        degree: d,
        disc_g,
        field_disc,
        maximality,
        kind,
        var,
        opts: opts.clone(),
        roots: OnceLock::new(),
    }))
}

impl NumberField {
    pub fn poly(&self) -> &IntPoly {
        &self.0.g
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.0.disc_g
    }

    pub fn disc(&self) -> &BigInt {
        &self.0.field_disc
    }

    pub fn maximality(&self) -> &Maximality {
        &self.0.maximality
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn conductor(&self) -> Option<u64> {
        match self.0.kind {
            FieldKind::Cyclotomic(n) => Some(n),
            FieldKind::General => None,
        }
    }

    /// Name of the generator in printed elements.
    pub fn var(&self) -> &'static str {
        self.0.var
    }

    pub fn options(&self) -> &FieldOptions {
        &self.0.opts
    }

    pub fn seed(&self) -> u64 {
        self.0.opts.seed
    }

    pub fn factor_budget(&self) -> &FactorBudget {
        &self.0.opts.factor_budget
    }

    /// Short human label, e.g. `Q(zeta_5)` or `Q[t]/(t^2 - t - 1)`.
    pub fn describe(&self) -> String {
        match self.0.kind {
            FieldKind::Cyclotomic(n) => format!("Q(zeta_{n})"),
            FieldKind::General if self.0.degree == 1 => "Q".into(),
            FieldKind::General => format!("Q[t]/({})", self.0.g.display_with("t")),
        }
    }

    /// Complex roots of the defining polynomial, one per embedding.
    pub fn complex_roots(&self) -> &[Complex64] {
        self.0.roots.get_or_init(|| embed::roots(self))
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { field: self.clone(), coords: vec![BigInt::zero(); self.0.degree] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, n: BigInt) -> FieldElem {
        let mut e = self.zero();
        e.coords[0] = n;
        e
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_int(BigInt::from(n))
    }

    /// The generator `theta`.
    pub fn gen(&self) -> FieldElem {
        self.from_poly(&IntPoly::x())
    }

    /// Image of an integer polynomial under `x -> theta`.
    pub fn from_poly(&self, a: &IntPoly) -> FieldElem {
        self.reduce_coeffs(a.coeffs().to_vec())
    }

    pub fn from_coords(&self, coords: Vec<BigInt>) -> FieldElem {
        self.reduce_coeffs(coords)
    }

    pub fn from_i64s(&self, coords: &[i64]) -> FieldElem {
        self.reduce_coeffs(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn reduce_coeffs(&self, mut c: Vec<BigInt>) -> FieldElem {
        let d = self.0.degree;
        let g = self.0.g.coeffs();
        // remainder modulo the monic g, top down
        for k in (d..c.len()).rev() {
            let top = std::mem::take(&mut c[k]);
            if top.is_zero() {
                continue;
            }
            for j in 0..d {
                if !g[j].is_zero() {
                    c[k - d + j] -= &top * &g[j];
                }
            }
        }
        c.resize(d, BigInt::zero());
        FieldElem { field: self.clone(), coords: c }
    }
}

/// Element of `Z[theta]` in power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: NumberField,
    coords: Vec<BigInt>,
}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; fails instead of panicking on mixed fields.
pub fn elem_arith(op: ArithOp, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl FieldElem {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The integer this element equals, if it is rational.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| self.coords[0].clone())
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coords.clone())
    }

    pub fn scale(&self, c: &BigInt) -> FieldElem {
        FieldElem { field: self.field.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `N_{L/Q}(self) = Res(g, rep(self))`.
    pub fn norm(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.field.degree() == 1 {
            return self.coords[0].clone();
        }
        zxpoly::resultant(self.field.poly(), &self.to_poly()).expect("nonzero operands")
    }

    /// Exact quotient in `Z[theta]`, if `other` divides `self` there.
    pub fn div_exact(&self, other: &FieldElem) -> Option<FieldElem> {
        assert!(self.field == other.field, "field mismatch");
        if other.is_zero() {
            return None;
        }
        if let Some(c) = other.as_integer() {
            let ok = self.coords.iter().all(|a| (a % &c).is_zero());
            return ok.then(|| FieldElem {
                field: self.field.clone(),
                coords: self.coords.iter().map(|a| a / &c).collect(),
            });
        }
        let m = other.mul_matrix();
        let sol = solve_rational(&m, &self.coords)?;
        let mut coords = Vec::with_capacity(sol.len());
        for q in sol {
            if !q.is_integer() {
                return None;
            }
            coords.push(q.to_integer());
        }
        Some(FieldElem { field: self.field.clone(), coords })
    }

    /// Matrix of multiplication by `self`; column `j` holds `self * theta^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<BigInt>> {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let theta = self.field.gen();
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = &cur * &theta;
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Values at every complex embedding.
    pub fn embed(&self) -> Vec<Complex64> {
        self.field
            .complex_roots()
            .iter()
            .map(|r| {
                self.coords
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, c| acc * r + c.to_f64().unwrap_or(f64::INFINITY))
            })
            .collect()
    }

    pub fn display(&self) -> String {
        self.to_poly().display_with(self.field.var())
    }
}

fn solve_rational(m: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = b.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m[i].iter().map(|v| BigRational::from_integer(v.clone())).collect();
            row.push(BigRational::from_integer(b[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({} in {})", self.display(), self.field.describe())
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        assert!(self.field == o.field, "field mismatch");
        FieldElem { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        assert!(self.field == o.field, "field mismatch");
        FieldElem { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        assert!(self.field == o.field, "field mismatch");
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        self.field.reduce_coeffs(prod)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, o: FieldElem) -> FieldElem {
        &self + &o
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, o: FieldElem) -> FieldElem {
        &self - &o
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, o: FieldElem) -> FieldElem {
        &self * &o
    }
}

/// `(-1)^((n^2 - n)/2) n^n (-alpha)^(n-1)`, the discriminant of `x^n - alpha` over the field.
pub fn disc_radical_elem(n: u64, alpha: &FieldElem) -> FieldElem {
    let sign = if ((n * n - n) / 2) % 2 == 1 { -1 } else { 1 };
    let c = BigInt::from(sign) * BigInt::from(n).pow(n as u32);
    (-alpha).pow(n - 1).scale(&c)
}

pub(crate) fn centered_u64(v: u64, p: u64) -> BigInt {
    if v > p / 2 {
        BigInt::from(v) - BigInt::from(p)
    } else {
        BigInt::from(v)
    }
}

pub(crate) fn mod_u64(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}
