//! Unimodular monomial changes of coordinates built from a tropism.
//!
//! For a primitive `(u, v)` with `k u + l v = 1` the matrix
//! `[[u, v], [-l, k]]` defines `x = X^u Y^-l`, `y = X^v Y^k`. A monomial
//! `x^a y^b` becomes `X^(a u + b v) Y^(-l a + k b)`, so every term on the edge
//! with inner normal `(u, v)` lands on the same power of `X`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{gcd, Tropism};
use crate::polynomial::{complex_powi, ExponentVector, SparsePoly};

/// `(g, k, l)` with `g = gcd(|u|, |v|)` and `k u + l v = g`.
///
/// Among all Bezout pairs the one with the smallest `|l|` is returned, ties
/// broken by the smallest `|k|`.
pub fn extended_gcd(u: i64, v: i64) -> Result<(i64, i64, i64)> {
    if u == 0 && v == 0 {
        return Err(Error::ZeroDirection);
    }
    let (g, k, l) = euclid(u as i128, v as i128);
    let (su, sv) = (u as i128 / g, v as i128 / g);
    // (k + m sv, l - m su) for integer m are all the solutions
    let m = if su == 0 {
        // l is fixed; minimise |k| instead
        (-k).div_euclid(sv)
    } else {
        l.div_euclid(su)
    };
    let candidates = [m - 1, m, m + 1];
    let (k, l) = candidates
        .into_iter()
        .map(|m| (k + m * sv, l - m * su))
        .min_by_key(|&(k, l)| (l.abs(), k.abs(), -l, -k))
        .expect("three candidates");
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("extended gcd"));
    Ok((narrow(g)?, narrow(k)?, narrow(l)?))
}

fn euclid(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `[[u, v], [-l, k]]` with determinant `u k + l v = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMatrix {
    u: i64,
    v: i64,
    k: i64,
    l: i64,
}

impl UnimodularMatrix {
    pub fn for_tropism(t: Tropism) -> Self {
        matrix_for_tropism(t.u(), t.v()).expect("tropisms are primitive")
    }

    /// Rows of the matrix.
    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.u, self.v], [-self.l, self.k]]
    }

    pub fn determinant(&self) -> i128 {
        self.u as i128 * self.k as i128 + self.l as i128 * self.v as i128
    }

    pub fn bezout(&self) -> (i64, i64) {
        (self.k, self.l)
    }

    /// Same first row, second row shifted along the Bezout family by `m`.
    pub fn with_representative(&self, m: i64) -> Result<Self> {
        let k = m
            .checked_mul(self.v)
            .and_then(|x| x.checked_add(self.k))
            .ok_or(Error::Overflow("unimodular representative"))?;
        let l = m
            .checked_mul(self.u)
            .and_then(|x| self.l.checked_sub(x))
            .ok_or(Error::Overflow("unimodular representative"))?;
        Ok(Self { k, l, ..*self })
    }

    /// `(a, b) -> (a u + b v, -l a + k b)`.
    pub fn transform_exponent(&self, e: ExponentVector) -> Result<ExponentVector> {
        let dot = |p: i64, q: i64, a: i64, b: i64| {
            p.checked_mul(a)
                .zip(q.checked_mul(b))
                .and_then(|(x, y)| x.checked_add(y))
                .ok_or(Error::Overflow("exponent transform"))
        };
        Ok(ExponentVector::new(
            dot(self.u, self.v, e.i, e.j)?,
            dot(-self.l, self.k, e.i, e.j)?,
        ))
    }

    /// Applies the transform to the support only; coefficients are unchanged.
    pub fn transform_poly(&self, p: &SparsePoly) -> Result<SparsePoly> {
        let terms = p
            .terms()
            .map(|(e, c)| Ok((self.transform_exponent(e)?, c)))
            .collect::<Result<Vec<_>>>()?;
        // unimodular maps are injective on exponents, nothing merges
        SparsePoly::from_terms_with_tolerance(terms, 0.0)
    }

    /// `(x, y) = (X^u Y^-l, X^v Y^k)`.
    pub fn untransform_point(&self, x: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
        let zero = Complex64::new(0.0, 0.0);
        if x == zero || y == zero {
            return Err(Error::InvalidParameter(
                "untransform needs a point in the torus".into(),
            ));
        }
        let neg_l = self.l.checked_neg().ok_or(Error::Overflow("untransform"))?;
        Ok((
            complex_powi(x, self.u)? * complex_powi(y, neg_l)?,
            complex_powi(x, self.v)? * complex_powi(y, self.k)?,
        ))
    }
}

/// The unimodular matrix of a primitive direction; non-primitive input is
/// rejected.
pub fn matrix_for_tropism(u: i64, v: i64) -> Result<UnimodularMatrix> {
    let (g, k, l) = extended_gcd(u, v)?;
    if g != 1 {
        return Err(Error::NotPrimitive { u, v, gcd: gcd(u, v) });
    }
    Ok(UnimodularMatrix { u, v, k, l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(i: i64, j: i64) -> ExponentVector {
        ExponentVector::new(i, j)
    }

    #[test]
    fn extended_gcd_examples() {
        assert_eq!(extended_gcd(1, 0).unwrap(), (1, 1, 0));
        assert_eq!(extended_gcd(-1, -1).unwrap(), (1, -1, 0));
        assert_eq!(extended_gcd(2, 3).unwrap(), (1, -1, 1));
        assert_eq!(extended_gcd(0, 1).unwrap(), (1, 0, 1));
        assert_eq!(extended_gcd(0, -1).unwrap(), (1, 0, -1));
        assert_eq!(extended_gcd(6, 4).unwrap().0, 2);
        assert_eq!(extended_gcd(0, 0), Err(Error::ZeroDirection));
    }

    #[test]
    fn matrices_for_tropisms() {
        assert_eq!(matrix_for_tropism(1, 0).unwrap().rows(), [[1, 0], [0, 1]]);
        assert_eq!(matrix_for_tropism(-1, -1).unwrap().rows(), [[-1, -1], [0, -1]]);
        assert_eq!(matrix_for_tropism(2, 3).unwrap().rows(), [[2, 3], [-1, -1]]);
        assert!(matches!(matrix_for_tropism(2, 4), Err(Error::NotPrimitive { .. })));
    }

    #[test]
    fn transform_examples() {
        let m = matrix_for_tropism(-1, -1).unwrap();
        assert_eq!(m.transform_exponent(ev(13, 2)).unwrap(), ev(-15, -2));
        assert_eq!(m.transform_exponent(ev(14, 1)).unwrap(), ev(-15, -1));
        let id = matrix_for_tropism(1, 0).unwrap();
        assert_eq!(id.transform_exponent(ev(-4, 9)).unwrap(), ev(-4, 9));
        let big = matrix_for_tropism(3, 1).unwrap();
        assert_eq!(
            big.transform_exponent(ev(i64::MAX / 2, 0)),
            Err(Error::Overflow("exponent transform"))
        );
    }

    #[test]
    fn untransform_examples() {
        let m = matrix_for_tropism(-1, -1).unwrap();
        let (t, c) = (Complex64::new(0.3, 0.1), Complex64::new(-1.0 / 9.0, 0.0));
        let (x, y) = m.untransform_point(t, c).unwrap();
        assert!((x - t.inv()).norm() < 1e-14);
        assert!((y - t.inv() * c.inv()).norm() < 1e-12);
        let id = matrix_for_tropism(1, 0).unwrap();
        assert_eq!(id.untransform_point(t, c).unwrap(), (t, c));
        assert!(m.untransform_point(Complex64::new(0.0, 0.0), c).is_err());
    }

    fn arb_tropism() -> impl Strategy<Value = Tropism> {
        (-500i64..=500, -500i64..=500).prop_filter_map("nonzero", |(u, v)| Tropism::primitive(u, v).ok())
    }

    proptest! {
        #[test]
        fn determinant_is_one(t in arb_tropism()) {
            let m = UnimodularMatrix::for_tropism(t);
            prop_assert_eq!(m.determinant(), 1);
            let (k, l) = m.bezout();
            prop_assert!(l.abs() <= t.u().abs().max(1));
            let _ = k;
        }

        #[test]
        fn monomial_values_are_preserved(
            t in arb_tropism().prop_filter("small", |t| t.u().abs() <= 4 && t.v().abs() <= 4),
            a in -5i64..=5, b in -5i64..=5,
            r1 in 0.5f64..2.0, th1 in 0.0f64..6.28, r2 in 0.5f64..2.0, th2 in 0.0f64..6.28,
        ) {
            let m = UnimodularMatrix::for_tropism(t);
            let (xx, yy) = (Complex64::from_polar(r1, th1), Complex64::from_polar(r2, th2));
            let (x, y) = m.untransform_point(xx, yy).unwrap();
            let te = m.transform_exponent(ev(a, b)).unwrap();
            let lhs = complex_powi(xx, te.i).unwrap() * complex_powi(yy, te.j).unwrap();
            let rhs = complex_powi(x, a).unwrap() * complex_powi(y, b).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-300));
        }
    }
}
