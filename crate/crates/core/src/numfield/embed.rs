//! Floating-point complex embeddings. Only ever used to propose candidates
//! that are then checked exactly.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{FieldKind, NumberField};

/// Roots ordered as: real roots ascending, then conjugate pairs `(w, conj w)`
/// with `Im w > 0`, sorted by argument.
pub(crate) fn roots(field: &NumberField) -> Vec<Complex64> {
    let raw: Vec<Complex64> = match field.kind() {
        FieldKind::Cyclotomic(n) => (1..n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect(),
        FieldKind::General => durand_kerner(field),
    };
    arrange(raw, field.degree())
}

fn arrange(raw: Vec<Complex64>, d: usize) -> Vec<Complex64> {
    let tol = |z: &Complex64| 1e-7 * (1.0 + z.norm());
    let mut reals: Vec<f64> = raw.iter().filter(|z| z.im.abs() < tol(z)).map(|z| z.re).collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut upper: Vec<Complex64> = raw.iter().filter(|z| z.im >= tol(z)).copied().collect();
    upper.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    let mut out: Vec<Complex64> = reals.into_iter().map(|r| Complex64::new(r, 0.0)).collect();
    for w in upper {
        out.push(w);
        out.push(w.conj());
    }
    assert_eq!(out.len(), d, "embedding classification failed");
    out
}

/// Number of real embeddings; the remaining ones come in adjacent conjugate pairs.
pub(crate) fn real_count(roots: &[Complex64]) -> usize {
    roots.iter().take_while(|z| z.im == 0.0).count()
}

fn durand_kerner(field: &NumberField) -> Vec<Complex64> {
    let coeffs: Vec<f64> = field.poly().coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    poly_roots(&coeffs)
}

/// All complex roots of a monic polynomial (ascending coefficients).
pub(crate) fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let deriv: Vec<f64> = coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let eval_d = |z: Complex64| deriv.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    if d == 1 {
        return vec![Complex64::new(-coeffs[0], 0.0)];
    }
    let bound = 1.0 + coeffs[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * (bound / 2.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let dz = eval_d(*zi);
            if dz.norm() == 0.0 {
                break;
            }
            *zi -= eval(*zi) / dz;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, nf_make, FieldOptions};
    use crate::zxpoly::IntPoly;

    #[test]
    fn roots_satisfy_polynomial() {
        for g in [vec![-1, -1, 1], vec![-2, 0, 0, 1], vec![1, 0, -10, 0, 1], vec![3, 1, 0, 0, 0, 1]] {
            let f =
                nf_make(&IntPoly::from_i64s(&g), &FieldOptions { assume_maximal: true, ..Default::default() }).unwrap();
            let coeffs: Vec<f64> = g.iter().map(|&c| c as f64).collect();
            for r in f.complex_roots() {
                let v = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * r + c);
                assert!(v.norm() < 1e-9, "{g:?}: residual {v}");
            }
        }
        let k5 = cyclotomic_field(5, &FieldOptions::default()).unwrap();
        assert_eq!(real_count(k5.complex_roots()), 0);
        assert_eq!(k5.complex_roots().len(), 4);
    }
}
