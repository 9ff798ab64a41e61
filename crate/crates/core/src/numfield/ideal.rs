//! Integral ideals of `Z[theta]` as lattices in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FieldElem, NumberField};
use crate::error::{Error, Result};

/// Full-rank sublattice of `Z^d` closed under multiplication by `theta`.
///
/// `hnf[i][j]` is row `i`, column `j`. Column `j` is a basis vector supported
/// on coordinates `0..=j`; the matrix is upper triangular with positive
/// diagonal and entries right of each pivot reduced into `[0, pivot)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealLattice {
    field: NumberField,
    hnf: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IdealLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealLattice(norm {}, hnf {:?})", self.norm(), self.hnf_strings())
    }
}

fn top_index(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Incremental HNF over `Z` of the span of `vectors` together with `n * e_i`.
struct Builder {
    n: BigInt,
    basis: Vec<Option<Vec<BigInt>>>,
}

impl Builder {
    fn new(d: usize, n: BigInt) -> Builder {
        let mut b = Builder { n, basis: vec![None; d] };
        for i in 0..d {
            let mut e = vec![BigInt::zero(); d];
            e[i] = b.n.clone();
            b.basis[i] = Some(e);
        }
        b
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        for c in v.iter_mut() {
            *c = c.mod_floor(&self.n);
        }
        while let Some(j) = top_index(&v) {
            let b = self.basis[j].take().expect("n * e_j is always present");
            let ext = v[j].extended_gcd(&b[j]);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let vj = &v[j] / &g;
            let bj = &b[j] / &g;
            let mut new_b: Vec<BigInt> = v.iter().zip(&b).map(|(x, y)| &s * x + &t * y).collect();
            let mut rem: Vec<BigInt> = v.iter().zip(&b).map(|(x, y)| &bj * x - &vj * y).collect();
            debug_assert!(rem[j].is_zero());
            if new_b[j].is_negative() {
                for c in new_b.iter_mut() {
                    *c = -&*c;
                }
            }
            for c in new_b[..j].iter_mut() {
                *c = c.mod_floor(&self.n);
            }
            for c in rem.iter_mut() {
                *c = c.mod_floor(&self.n);
            }
            self.basis[j] = Some(new_b);
            v = rem;
        }
    }

    fn finish(self) -> Vec<Vec<BigInt>> {
        let mut cols: Vec<Vec<BigInt>> = self.basis.into_iter().map(|b| b.unwrap()).collect();
        let d = cols.len();
        for j in 0..d {
            for i in (0..j).rev() {
                let q = cols[j][i].div_floor(&cols[i][i]);
                if q.is_zero() {
                    continue;
                }
                let ci = cols[i].clone();
                for (r, c) in ci.iter().enumerate().take(i + 1) {
                    cols[j][r] -= &q * c;
                }
            }
        }
        (0..d).map(|r| (0..d).map(|j| cols[j][r].clone()).collect()).collect()
    }
}

/// The ideal generated by `gens` (any mix of integers and field elements).
pub fn ideal_hnf(gens: &[FieldElem]) -> Result<IdealLattice> {
    let field = gens.first().ok_or(Error::NotFullRank)?.field().clone();
    IdealLattice::from_generators(&field, gens)
}

impl IdealLattice {
    pub fn unit(field: &NumberField) -> IdealLattice {
        let d = field.degree();
        let hnf =
            (0..d).map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        IdealLattice { field: field.clone(), hnf }
    }

    pub fn from_generators(field: &NumberField, gens: &[FieldElem]) -> Result<IdealLattice> {
        if gens.iter().any(|g| g.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let mut n = BigInt::zero();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let m = match g.as_integer() {
                Some(c) => c.abs(),
                None => g.norm().abs(),
            };
            n = n.gcd(&m);
        }
        if n.is_zero() {
            return Err(Error::NotFullRank);
        }
        let theta = field.gen();
        let mut b = Builder::new(field.degree(), n);
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let mut cur = g.clone();
            for _ in 0..field.degree() {
                b.insert(cur.coords().to_vec());
                cur = &cur * &theta;
            }
        }
        let lat = IdealLattice { field: field.clone(), hnf: b.finish() };
        debug_assert!(lat.is_theta_stable());
        Ok(lat)
    }

    /// Product ideal; the norm multiplies.
    pub fn product(&self, other: &IdealLattice) -> Result<IdealLattice> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.min_integer() * other.min_integer();
        let mut b = Builder::new(self.field.degree(), n);
        let (xs, ys) = (self.basis(), other.basis());
        for x in &xs {
            for y in &ys {
                b.insert((x * y).coords().to_vec());
            }
        }
        let lat = IdealLattice { field: self.field.clone(), hnf: b.finish() };
        debug_assert!(lat.is_theta_stable());
        Ok(lat)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn hnf(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    pub fn hnf_strings(&self) -> Vec<Vec<String>> {
        self.hnf.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
    }

    /// Index in `Z[theta]`, the product of the pivots.
    pub fn norm(&self) -> BigInt {
        (0..self.hnf.len()).map(|i| self.hnf[i][i].clone()).product()
    }

    /// Smallest positive integer in the ideal.
    pub fn min_integer(&self) -> BigInt {
        self.hnf[0][0].clone()
    }

    /// The HNF columns as field elements.
    pub fn basis(&self) -> Vec<FieldElem> {
        let d = self.hnf.len();
        (0..d).map(|j| self.field.from_coords((0..d).map(|i| self.hnf[i][j].clone()).collect())).collect()
    }

    /// Integer coordinates of `x` in the HNF basis, if `x` lies in the lattice.
    pub fn coords_of(&self, x: &FieldElem) -> Option<Vec<BigInt>> {
        assert!(x.field() == &self.field, "field mismatch");
        let d = self.hnf.len();
        let mut v = x.coords().to_vec();
        let mut out = vec![BigInt::zero(); d];
        for j in (0..d).rev() {
            let (q, r) = v[j].div_rem(&self.hnf[j][j]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, vi) in v.iter_mut().enumerate().take(j + 1) {
                    *vi -= &q * &self.hnf[i][j];
                }
            }
            out[j] = q;
        }
        Some(out)
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        self.coords_of(x).is_some()
    }

    /// Canonical representative of `x` modulo the lattice (coordinate `j` in `[0, pivot_j)`).
    pub fn reduce(&self, x: &FieldElem) -> FieldElem {
        assert!(x.field() == &self.field, "field mismatch");
        let d = self.hnf.len();
        let mut v = x.coords().to_vec();
        for j in (0..d).rev() {
            let q = v[j].div_floor(&self.hnf[j][j]);
            if !q.is_zero() {
                for (i, vi) in v.iter_mut().enumerate().take(j + 1) {
                    *vi -= &q * &self.hnf[i][j];
                }
            }
        }
        self.field.from_coords(v)
    }

    fn is_theta_stable(&self) -> bool {
        let theta = self.field.gen();
        self.basis().iter().all(|b| self.contains(&(b * &theta)))
    }
}

/// Membership test with a field check.
pub fn ideal_contains(a: &IdealLattice, x: &FieldElem) -> Result<bool> {
    if a.field() != x.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(a.contains(x))
}

/// Product of two ideals with a field check.
pub fn ideal_product(a: &IdealLattice, b: &IdealLattice) -> Result<IdealLattice> {
    a.product(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, FieldOptions};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn hnf_examples() {
        let qi = cyclotomic_field(4, &FieldOptions::default()).unwrap();
        let p2 = ideal_hnf(&[qi.from_i64(2), qi.from_i64s(&[1, 1])]).unwrap();
        assert_eq!(p2.hnf(), &mat(&[&[2, 1], &[0, 1]])[..]);
        assert_eq!(p2.norm(), BigInt::from(2));
        let unit = ideal_hnf(&[qi.one()]).unwrap();
        assert_eq!(unit, IdealLattice::unit(&qi));
        assert_eq!(unit.norm(), BigInt::one());
        let k3 = cyclotomic_field(3, &FieldOptions::default()).unwrap();
        let pi = k3.from_i64s(&[1, -1]);
        assert_eq!(ideal_hnf(&[pi]).unwrap().norm(), BigInt::from(3));
        assert_eq!(ideal_hnf(&[k3.zero()]).unwrap_err(), Error::NotFullRank);
        assert_eq!(ideal_hnf(&[]).unwrap_err(), Error::NotFullRank);
    }

    #[test]
    fn product_examples() {
        let qi = cyclotomic_field(4, &FieldOptions::default()).unwrap();
        let p2 = ideal_hnf(&[qi.from_i64(2), qi.from_i64s(&[1, 1])]).unwrap();
        let unit = IdealLattice::unit(&qi);
        assert_eq!(p2.product(&unit).unwrap(), p2);
        let sq = p2.product(&p2).unwrap();
        assert_eq!(sq.norm(), BigInt::from(4));
        assert_eq!(sq, ideal_hnf(&[qi.from_i64s(&[0, 2])]).unwrap());

        let k3 = cyclotomic_field(3, &FieldOptions::default()).unwrap();
        let p3 = ideal_hnf(&[k3.from_i64s(&[1, -1])]).unwrap();
        let sq = p3.product(&p3).unwrap();
        assert_eq!(sq.norm(), BigInt::from(9));
        assert!(sq.contains(&k3.from_i64(3)));
        assert!(!sq.contains(&k3.from_i64s(&[1, -1])));
        assert!(sq.contains(&k3.zero()));
        let other = cyclotomic_field(5, &FieldOptions::default()).unwrap();
        assert_eq!(ideal_contains(&sq, &other.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn reduce_is_canonical() {
        let k5 = cyclotomic_field(5, &FieldOptions::default()).unwrap();
        let a = ideal_hnf(&[k5.from_i64(11), k5.from_i64s(&[-3, 1])]).unwrap();
        assert_eq!(a.norm(), BigInt::from(11));
        let x = k5.from_i64s(&[17, -4, 9, 30]);
        let y = &x + &(&k5.from_i64s(&[-3, 1]) * &k5.from_i64s(&[5, 2, -7, 1]));
        assert_eq!(a.reduce(&x), a.reduce(&y));
        assert!(a.contains(&(&x - &a.reduce(&x))));
    }
}
