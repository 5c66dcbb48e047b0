//! Sparse Laurent polynomials in `x` and `y` with complex coefficients.
//!
//! A polynomial is a support list of exponent vectors, kept sorted
//! lexicographically, together with a coefficient table indexed by the
//! same positions. Every stored coefficient is nonzero relative to the drop
//! tolerance the polynomial was built with.

mod format;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::{parse_poly, parse_poly_with_tolerance};

/// Default relative threshold below which coefficients are treated as zero.
pub const DEFAULT_DROP_TOLERANCE: f64 = 1e-12;

/// Exponents `(i, j)` of the monomial `x^i y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector {
    pub i: i64,
    pub j: i64,
}

impl ExponentVector {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    /// Inner product with a direction, exact in 128 bits.
    pub fn dot(self, d: Direction) -> i128 {
        self.i as i128 * d.u as i128 + self.j as i128 * d.v as i128
    }
}

impl From<(i64, i64)> for ExponentVector {
    fn from((i, j): (i64, i64)) -> Self {
        Self { i, j }
    }
}

/// A nonzero integer direction `(u, v)` used to grade exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    u: i64,
    v: i64,
}

impl Direction {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u == 0 && v == 0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { u, v })
    }

    pub fn u(self) -> i64 {
        self.u
    }

    pub fn v(self) -> i64 {
        self.v
    }
}

/// One serialized term, `c * x^i * y^j` with `c = re + im*i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub i: i64,
    pub j: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TermRecord>", into = "Vec<TermRecord>")]
pub struct SparsePoly {
    support: Vec<ExponentVector>,
    coeffs: Vec<Complex64>,
}

impl SparsePoly {
    /// Builds a polynomial from terms using [`DEFAULT_DROP_TOLERANCE`].
    /// Repeated exponents are summed.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Complex64)>,
    {
        Self::from_terms_with_tolerance(terms, DEFAULT_DROP_TOLERANCE)
    }

    /// Builds a polynomial, dropping coefficients whose magnitude is at most
    /// `drop_tolerance` times the largest magnitude.
    pub fn from_terms_with_tolerance<I>(terms: I, drop_tolerance: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Complex64)>,
    {
        let mut table: BTreeMap<ExponentVector, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            *table.entry(e).or_default() += c;
        }
        Self::from_table(table, drop_tolerance)
    }

    pub(crate) fn from_table(
        table: BTreeMap<ExponentVector, Complex64>,
        drop_tolerance: f64,
    ) -> Result<Self> {
        let largest = table.values().map(|c| c.norm()).fold(0.0, f64::max);
        if largest == 0.0 {
            return Err(Error::ZeroPolynomial);
        }
        if !largest.is_finite() {
            return Err(Error::NonFinite);
        }
        let threshold = drop_tolerance * largest;
        let (support, coeffs) = table
            .into_iter()
            .filter(|(_, c)| c.norm() > threshold)
            .unzip();
        Ok(Self { support, coeffs })
    }

    /// Internal constructor for data already sorted, unique and nonzero.
    fn from_sorted(support: Vec<ExponentVector>, coeffs: Vec<Complex64>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!support.is_empty());
        Self { support, coeffs }
    }

    pub fn monomial(e: ExponentVector, c: Complex64) -> Result<Self> {
        Self::from_terms([(e, c)])
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        Self::monomial(ExponentVector::new(0, 0), c)
    }

    pub fn support(&self) -> &[ExponentVector] {
        &self.support
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (ExponentVector, Complex64)> + '_ {
        self.support.iter().copied().zip(self.coeffs.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.support.len() == 1
    }

    pub fn coeff(&self, e: ExponentVector) -> Option<Complex64> {
        self.support
            .binary_search(&e)
            .ok()
            .map(|pos| self.coeffs[pos])
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest exponent of `y` in the support.
    pub fn y_degree(&self) -> i64 {
        self.support.iter().map(|e| e.j).max().unwrap_or(0)
    }

    /// Largest total degree `i + j` in the support.
    pub fn total_degree(&self) -> i64 {
        self.support.iter().map(|e| e.i + e.j).max().unwrap_or(0)
    }

    /// `m = min <e, d>` over the support.
    pub fn weighted_degree(&self, d: Direction) -> i64 {
        let m = self
            .support
            .iter()
            .map(|e| e.dot(d))
            .min()
            .expect("polynomial has a nonempty support");
        i64::try_from(m).expect("weighted degree fits in 64 bits")
    }

    /// Permutation of the support positions sorting terms by their weighted
    /// degree along `d`, ties broken by the lexicographic position.
    pub fn graded_order(&self, d: Direction) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&k| (self.support[k].dot(d), k));
        perm
    }

    /// Terms of minimal weighted degree along `d`.
    pub fn initial_form(&self, d: Direction) -> SparsePoly {
        let perm = self.graded_order(d);
        let m = self.support[perm[0]].dot(d);
        let mut keep: Vec<usize> = perm
            .into_iter()
            .take_while(|&k| self.support[k].dot(d) == m)
            .collect();
        keep.sort_unstable();
        Self::from_sorted(
            keep.iter().map(|&k| self.support[k]).collect(),
            keep.iter().map(|&k| self.coeffs[k]).collect(),
        )
    }

    /// Divides out the largest monomial `x^a y^b` dividing every term and
    /// returns the quotient together with `(a, b)`.
    pub fn strip_monomial(&self) -> (SparsePoly, ExponentVector) {
        let a = self.support.iter().map(|e| e.i).min().unwrap_or(0);
        let b = self.support.iter().map(|e| e.j).min().unwrap_or(0);
        let shift = ExponentVector::new(a, b);
        let support = self
            .support
            .iter()
            .map(|e| ExponentVector::new(e.i - a, e.j - b))
            .collect();
        (Self::from_sorted(support, self.coeffs.clone()), shift)
    }

    /// Multiplies by the monomial `x^a y^b`.
    pub fn shift(&self, by: ExponentVector) -> Result<SparsePoly> {
        let support = self
            .support
            .iter()
            .map(|e| {
                Some(ExponentVector::new(
                    e.i.checked_add(by.i)?,
                    e.j.checked_add(by.j)?,
                ))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("monomial shift"))?;
        Ok(Self::from_sorted(support, self.coeffs.clone()))
    }

    /// Evaluates `sum c_ij x^i y^j` term by term.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            acc += c * complex_powi(x, e.i)? * complex_powi(y, e.j)?;
        }
        Ok(acc)
    }

    /// `sum |c_ij| |x|^i |y|^j`, the natural magnitude for relative residuals.
    pub fn evaluation_scale(&self, x: Complex64, y: Complex64) -> Result<f64> {
        let (ax, ay) = (Complex64::from(x.norm()), Complex64::from(y.norm()));
        let mut acc = 0.0;
        for (e, c) in self.terms() {
            acc += c.norm() * (complex_powi(ax, e.i)? * complex_powi(ay, e.j)?).re;
        }
        Ok(acc)
    }

    pub fn multiply(&self, other: &SparsePoly) -> SparsePoly {
        self.multiply_with_tolerance(other, DEFAULT_DROP_TOLERANCE)
    }

    pub fn multiply_with_tolerance(&self, other: &SparsePoly, drop_tolerance: f64) -> SparsePoly {
        let mut table: BTreeMap<ExponentVector, Complex64> = BTreeMap::new();
        for (e, c) in self.terms() {
            for (f, d) in other.terms() {
                *table.entry(ExponentVector::new(e.i + f.i, e.j + f.j)).or_default() += c * d;
            }
        }
        // The lexicographically largest product term never cancels.
        Self::from_table(table, drop_tolerance).expect("product of nonzero polynomials")
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        Self::from_terms(self.terms().chain(other.terms()))
    }

    pub fn scale(&self, by: Complex64) -> Result<SparsePoly> {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * by)))
    }

    /// Applies `f` to every coefficient, dropping the ones that vanish.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<SparsePoly>
    where
        F: FnMut(ExponentVector, Complex64) -> Complex64,
    {
        Self::from_terms(self.terms().map(|(e, c)| (e, f(e, c))))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(e, c)| TermRecord {
                i: e.i,
                j: e.j,
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<SparsePoly> {
        Self::from_terms(
            records
                .iter()
                .map(|r| (ExponentVector::new(r.i, r.j), Complex64::new(r.re, r.im))),
        )
    }
}

impl std::ops::Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.multiply(rhs)
    }
}

impl TryFrom<Vec<TermRecord>> for SparsePoly {
    type Error = Error;

    fn try_from(records: Vec<TermRecord>) -> Result<Self> {
        Self::from_records(&records)
    }
}

impl From<SparsePoly> for Vec<TermRecord> {
    fn from(p: SparsePoly) -> Self {
        p.to_records()
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format::write_poly(f, self)
    }
}

/// `z^n` for any integer `n` by repeated squaring.
pub fn complex_powi(z: Complex64, n: i64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if n < 0 && z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroToNegativePower { exponent: n });
    }
    let mut base = if n < 0 { z.inv() } else { z };
    let mut k = n.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn poly(terms: &[(i64, i64, f64)]) -> SparsePoly {
        SparsePoly::from_terms(terms.iter().map(|&(i, j, v)| (ExponentVector::new(i, j), c(v))))
            .unwrap()
    }

    fn dir(u: i64, v: i64) -> Direction {
        Direction::new(u, v).unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, terms: usize, max_exp: i64) -> SparsePoly {
        SparsePoly::from_terms((0..terms).map(|_| {
            (
                ExponentVector::new(rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp)),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        }))
        .unwrap()
    }

    fn six_point_poly() -> SparsePoly {
        poly(&[(3, 1, 1.0), (2, 3, 1.0), (5, 3, 1.0), (4, 5, 1.0), (2, 7, 1.0), (3, 7, 1.0)])
    }

    fn r_factor() -> SparsePoly {
        poly(&[(1, 1, 2.0), (2, 1, 1.0), (1, 2, 9.0), (3, 1, 7.0), (4, 1, 1.0), (3, 2, 9.0)])
    }

    #[test]
    fn zero_direction_rejected() {
        assert_eq!(Direction::new(0, 0), Err(Error::ZeroDirection));
    }

    #[test]
    fn construction_merges_and_drops() {
        let p = SparsePoly::from_terms([
            (ExponentVector::new(1, 0), c(1.0)),
            (ExponentVector::new(0, 1), c(2.0)),
            (ExponentVector::new(1, 0), c(-1.0)),
            (ExponentVector::new(2, 2), c(1e-14)),
        ])
        .unwrap();
        assert_eq!(p.support(), &[ExponentVector::new(0, 1)]);
        assert_eq!(
            SparsePoly::from_terms([(ExponentVector::new(1, 0), c(0.0))]),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            SparsePoly::from_terms([(ExponentVector::new(1, 0), c(f64::NAN))]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn weighted_degree_examples() {
        assert_eq!(six_point_poly().weighted_degree(dir(-1, 1)), -2);
        let m = poly(&[(2, 3, 1.0)]);
        for (u, v) in [(1, 0), (-3, 5), (7, -2)] {
            assert_eq!(m.weighted_degree(dir(u, v)), 2 * u + 3 * v);
        }
        assert_eq!(r_factor().weighted_degree(dir(1, 1)), 2);
    }

    #[test]
    fn initial_forms_of_r() {
        let r = r_factor();
        assert_eq!(r.initial_form(dir(1, 0)), poly(&[(1, 1, 2.0), (1, 2, 9.0)]));
        assert_eq!(
            r.initial_form(dir(0, 1)),
            poly(&[(1, 1, 2.0), (2, 1, 1.0), (3, 1, 7.0), (4, 1, 1.0)])
        );
        assert_eq!(r.initial_form(dir(-1, -1)), poly(&[(4, 1, 1.0), (3, 2, 9.0)]));
        assert_eq!(r.initial_form(dir(0, -1)), poly(&[(1, 2, 9.0), (3, 2, 9.0)]));
        let m = poly(&[(4, -2, 3.0)]);
        assert_eq!(m.initial_form(dir(5, 1)), m);
    }

    #[test]
    fn strip_monomial_examples() {
        let p = poly(&[(1, 6, 55.0), (1, 5, 10.0), (1, 7, 45.0)]);
        let (q, shift) = p.strip_monomial();
        assert_eq!(q, poly(&[(0, 2, 45.0), (0, 1, 55.0), (0, 0, 10.0)]));
        assert_eq!(shift, ExponentVector::new(1, 5));

        let (q, shift) = poly(&[(2, 3, 1.0)]).strip_monomial();
        assert_eq!(q, poly(&[(0, 0, 1.0)]));
        assert_eq!(shift, ExponentVector::new(2, 3));

        let (q, shift) = poly(&[(13, 2, 54.0), (14, 1, 6.0)]).strip_monomial();
        assert_eq!(q, poly(&[(0, 1, 54.0), (1, 0, 6.0)]));
        assert_eq!(shift, ExponentVector::new(13, 1));
    }

    #[test]
    fn evaluate_examples() {
        let p = poly(&[(1, 1, 2.0), (1, 2, 9.0)]);
        let v = p.evaluate(c(1.0), c(-2.0 / 9.0)).unwrap();
        assert!(v.norm() < 1e-15);
        let five = poly(&[(0, 0, 5.0)]);
        assert_eq!(five.evaluate(c(0.0), c(0.0)).unwrap(), c(5.0));
        let laurent = poly(&[(-1, 0, 1.0)]);
        assert_eq!(
            laurent.evaluate(c(0.0), c(1.0)),
            Err(Error::ZeroToNegativePower { exponent: -1 })
        );
    }

    #[test]
    fn multiply_examples() {
        let p = poly(&[(1, 0, 1.0), (0, 1, 1.0)]);
        let q = poly(&[(1, 0, 1.0), (0, 1, -1.0)]);
        assert_eq!(&p * &q, poly(&[(2, 0, 1.0), (0, 2, -1.0)]));
        let one = poly(&[(0, 0, 1.0)]);
        assert_eq!(&r_factor() * &one, r_factor());
    }

    #[test]
    fn evaluation_respects_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 8, 6);
            let q = random_poly(&mut rng, 8, 6);
            let pq = &p * &q;
            let angle = |rng: &mut ChaCha8Rng| Complex64::from_polar(1.0, rng.gen_range(0.0..6.28));
            let (x, y) = (angle(&mut rng), angle(&mut rng));
            let lhs = pq.evaluate(x, y).unwrap();
            let rhs = p.evaluate(x, y).unwrap() * q.evaluate(x, y).unwrap();
            let scale = p.evaluation_scale(x, y).unwrap() * q.evaluation_scale(x, y).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn serde_records() {
        let p = poly(&[(1, 1, 2.0), (1, 2, 9.0)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"i":1,"j":1,"re":2.0,"im":0.0},{"i":1,"j":2,"re":9.0,"im":0.0}]"#
        );
        let back: SparsePoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<SparsePoly>("[]").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(((0i64..8, 0i64..8), (-1.0f64..1.0, -1.0f64..1.0)), 1..10)
            .prop_filter_map("nonzero", |terms| {
                SparsePoly::from_terms(terms.into_iter().map(|((i, j), (re, im))| {
                    (ExponentVector::new(i, j), Complex64::new(re + 2.0, im))
                }))
                .ok()
            })
    }

    fn arb_dir() -> impl Strategy<Value = Direction> {
        (-6i64..=6, -6i64..=6).prop_filter_map("nonzero", |(u, v)| Direction::new(u, v).ok())
    }

    proptest! {
        #[test]
        fn initial_form_is_a_subpolynomial(p in arb_poly(), d in arb_dir()) {
            let init = p.initial_form(d);
            let m = p.weighted_degree(d);
            prop_assert_eq!(init.weighted_degree(d), m);
            for (e, c) in init.terms() {
                prop_assert_eq!(p.coeff(e), Some(c));
                prop_assert_eq!(e.dot(d), m as i128);
            }
        }

        #[test]
        fn strip_reaches_both_axes(p in arb_poly()) {
            let (q, _) = p.strip_monomial();
            prop_assert_eq!(q.support().iter().map(|e| e.i).min(), Some(0));
            prop_assert_eq!(q.support().iter().map(|e| e.j).min(), Some(0));
        }

        #[test]
        fn gradings_are_additive_on_products(p in arb_poly(), q in arb_poly(), d in arb_dir()) {
            let pq = &p * &q;
            prop_assert_eq!(pq.weighted_degree(d), p.weighted_degree(d) + q.weighted_degree(d));
        }
    }

    #[test]
    fn initial_forms_multiply_for_generic_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = random_poly(&mut rng, 7, 5);
            let q = random_poly(&mut rng, 7, 5);
            let d = dir(rng.gen_range(-4..=4), rng.gen_range(1..=4));
            let lhs = (&p * &q).initial_form(d);
            let rhs = &p.initial_form(d) * &q.initial_form(d);
            assert_eq!(lhs.support(), rhs.support());
            for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
