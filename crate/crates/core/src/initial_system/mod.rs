//! Initial form systems: reduce each tropism's pair of initial forms to two
//! univariate polynomials and find their common roots in the torus.

pub mod roots;

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::Tropism;
use crate::polynomial::{complex_powi, ExponentVector, SparsePoly};
use crate::unimodular::UnimodularMatrix;

/// A univariate polynomial in the transformed `Y`, ascending coefficients,
/// with nonzero constant and leading coefficients. `source_shift` is the
/// monomial `X^a Y^b` that was divided out of the transformed initial form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivariateForm {
    coeffs: Vec<Complex64>,
    source_shift: ExponentVector,
}

impl UnivariateForm {
    pub fn new(coeffs: Vec<Complex64>, source_shift: ExponentVector) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        match (coeffs.first(), coeffs.last()) {
            (Some(a), Some(b)) if *a != zero && *b != zero => Ok(Self {
                coeffs,
                source_shift,
            }),
            (None, _) => Err(Error::ZeroPolynomial),
            _ => Err(Error::InvalidParameter(
                "univariate form needs nonzero trailing and leading coefficients".into(),
            )),
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn source_shift(&self) -> ExponentVector {
        self.source_shift
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        roots::horner(&self.coeffs, z).0
    }

    /// `sum |c_k| |z|^k`.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// `|p(z)| / sum |c_k| |z|^k`, invariant under scaling of `p`.
    pub fn relative_residual(&self, z: Complex64) -> f64 {
        let s = self.scale_at(z);
        if s == 0.0 {
            0.0
        } else {
            self.evaluate(z).norm() / s
        }
    }

    /// Taylor coefficient `p^(n)(z) / n!` by synthetic division.
    pub fn taylor_coefficient(&self, z: Complex64, n: usize) -> Complex64 {
        let mut work = self.coeffs.clone();
        let mut value = Complex64::new(0.0, 0.0);
        for _ in 0..=n {
            // divide `work` by (Y - z); the remainder is the next Taylor term
            let deg = work.len() - 1;
            let mut quotient = vec![Complex64::new(0.0, 0.0); deg.max(1)];
            let mut carry = Complex64::new(0.0, 0.0);
            for k in (0..=deg).rev() {
                let next = work[k] + carry * z;
                if k == 0 {
                    value = next;
                } else {
                    quotient[k - 1] = next;
                }
                carry = next;
            }
            if deg == 0 {
                work = vec![Complex64::new(0.0, 0.0)];
            } else {
                work = quotient;
            }
        }
        value
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| c.norm() > 0.0).count()
    }

    fn normalized(&self) -> Vec<Complex64> {
        let norm = self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        self.coeffs.iter().map(|c| c / norm).collect()
    }
}

/// Applies the tropism's unimodular transform to the initial form of `p` and
/// strips the common monomial, leaving a polynomial in `Y` alone. A vertex
/// (monomial initial form) gives a constant form.
pub fn univariatize(p: &SparsePoly, t: Tropism) -> Result<UnivariateForm> {
    let m = UnimodularMatrix::for_tropism(t);
    let transformed = m.transform_poly(&p.initial_form(t.direction()))?;
    let (stripped, shift) = transformed.strip_monomial();
    debug_assert!(stripped.support().iter().all(|e| e.i == 0));
    let degree = stripped.support().iter().map(|e| e.j).max().unwrap_or(0);
    let len = usize::try_from(degree).map_err(|_| Error::Overflow("univariate degree"))? + 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    for (e, c) in stripped.terms() {
        coeffs[e.j as usize] = c;
    }
    UnivariateForm::new(coeffs, shift)
}

/// Square Sylvester matrix of size `deg p + deg q`; rows of `p` first,
/// coefficients in descending order.
pub fn sylvester_matrix(p: &UnivariateForm, q: &UnivariateForm) -> Result<DMatrix<Complex64>> {
    sylvester_from_coeffs(p.coeffs(), q.coeffs())
}

pub(crate) fn sylvester_from_coeffs(p: &[Complex64], q: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let (n, m) = (p.len() - 1, q.len() - 1);
    if n == 0 && m == 0 {
        return Err(Error::ConstantForms);
    }
    let size = n + m;
    let mut s = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
    for row in 0..m {
        for (k, c) in p.iter().rev().enumerate() {
            s[(row, row + k)] = *c;
        }
    }
    for row in 0..n {
        for (k, c) in q.iter().rev().enumerate() {
            s[(m + row, row + k)] = *c;
        }
    }
    Ok(s)
}

/// Number of singular values above `tol * sigma_max`.
pub fn numeric_rank(matrix: &DMatrix<Complex64>, tol: f64) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let sigma = matrix.clone().singular_values();
    let largest = sigma.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > tol * largest).count()
}

/// Tolerances for stage two.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootOptions {
    /// Relative singular value threshold for the Sylvester rank.
    pub rank_tolerance: f64,
    /// Bound on the relative residual of both forms at an accepted root.
    pub root_tolerance: f64,
    /// Roots closer than this (relative) are merged into one cluster.
    pub cluster_tolerance: f64,
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            rank_tolerance: 1e-8,
            root_tolerance: 1e-6,
            cluster_tolerance: 1e-6,
            seed: 0,
        }
    }
}

/// A common root of two univariate forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommonRoot {
    pub z: Complex64,
    pub multiplicity: usize,
    pub residual_p: f64,
    pub residual_q: f64,
}

/// Common roots in the torus of two univariate forms.
///
/// Forms with exactly two terms are solved by extracting roots directly and
/// filtering against the other form. Otherwise the numeric rank of the
/// Sylvester matrix gives the degree of the common divisor; roots of both
/// forms are then paired by proximity and polished by Gauss-Newton on the
/// overdetermined pair.
pub fn common_roots(p: &UnivariateForm, q: &UnivariateForm, opts: &RootOptions) -> Vec<CommonRoot> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    common_roots_with_rng(p, q, opts, &mut rng)
}

fn common_roots_with_rng(
    p: &UnivariateForm,
    q: &UnivariateForm,
    opts: &RootOptions,
    rng: &mut ChaCha8Rng,
) -> Vec<CommonRoot> {
    if p.degree() == 0 || q.degree() == 0 {
        return Vec::new();
    }
    let accept = |z: Complex64, multiplicity: usize| {
        let root = CommonRoot {
            z,
            multiplicity,
            residual_p: p.relative_residual(z),
            residual_q: q.relative_residual(z),
        };
        (root.residual_p <= opts.root_tolerance && root.residual_q <= opts.root_tolerance)
            .then_some(root)
    };

    let mut found: Vec<CommonRoot> = if p.term_count() == 2 || q.term_count() == 2 {
        let (binomial, other) = if p.term_count() == 2 { (p, q) } else { (q, p) };
        binomial_roots(binomial)
            .into_iter()
            .filter(|&z| other.relative_residual(z) <= opts.root_tolerance.sqrt())
            .filter_map(|z| accept(polish(p, q, z), 1))
            .collect()
    } else {
        let (pn, qn) = (p.normalized(), q.normalized());
        let sylvester = sylvester_from_coeffs(&pn, &qn).expect("nonconstant forms");
        let gcd_degree = sylvester.nrows() - numeric_rank(&sylvester, opts.rank_tolerance);
        if gcd_degree == 0 {
            return Vec::new();
        }
        let p_roots = roots::cluster(&roots::aberth(&pn, rng), opts.cluster_tolerance);
        let q_roots = roots::cluster(&roots::aberth(&qn, rng), opts.cluster_tolerance);
        let mut candidates: Vec<CommonRoot> = p_roots
            .iter()
            .filter_map(|&(zp, mp)| {
                let &(zq, mq) = q_roots
                    .iter()
                    .min_by(|a, b| (a.0 - zp).norm().total_cmp(&(b.0 - zp).norm()))?;
                let start = (zp * mp as f64 + zq * mq as f64) / (mp + mq) as f64;
                let z = if mp == 1 && mq == 1 {
                    polish(p, q, start)
                } else {
                    start
                };
                accept(z, mp.min(mq))
            })
            .collect();
        candidates.sort_by(|a, b| {
            a.residual_p
                .max(a.residual_q)
                .total_cmp(&b.residual_p.max(b.residual_q))
        });
        let mut budget = gcd_degree;
        candidates
            .into_iter()
            .filter_map(|mut root| {
                if budget == 0 {
                    return None;
                }
                root.multiplicity = root.multiplicity.min(budget);
                budget -= root.multiplicity;
                Some(root)
            })
            .collect()
    };
    found.retain(|r| r.z.norm() > 0.0);
    found.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    found
}

/// All roots of `a + b Y^n`.
fn binomial_roots(form: &UnivariateForm) -> Vec<Complex64> {
    let n = form.degree();
    let c = form.coeffs();
    let w = -c[0] / c[n];
    let (r, theta) = w.to_polar();
    let r = r.powf(1.0 / n as f64);
    (0..n)
        .map(|k| Complex64::from_polar(r, (theta + TAU * k as f64) / n as f64))
        .collect()
}

/// Gauss-Newton on `(p(z)/|p|, q(z)/|q|) = 0`, keeping the best iterate.
fn polish(p: &UnivariateForm, q: &UnivariateForm, start: Complex64) -> Complex64 {
    let (sp, sq) = (p.scale_at(start).max(f64::MIN_POSITIVE), q.scale_at(start).max(f64::MIN_POSITIVE));
    let merit = |z: Complex64| p.evaluate(z).norm() / sp + q.evaluate(z).norm() / sq;
    let mut best = (merit(start), start);
    let mut z = start;
    for _ in 0..8 {
        let (fp, dp) = roots::horner(p.coeffs(), z);
        let (fq, dq) = roots::horner(q.coeffs(), z);
        let (r1, r2, j1, j2) = (fp / sp, fq / sq, dp / sp, dq / sq);
        let denom = j1.norm_sqr() + j2.norm_sqr();
        if denom == 0.0 {
            break;
        }
        z -= (j1.conj() * r1 + j2.conj() * r2) / denom;
        let m = merit(z);
        if !m.is_finite() {
            break;
        }
        if m < best.0 {
            best = (m, z);
        }
    }
    best.1
}

/// A verified common root of an initial form system, in the transformed `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialRoot {
    pub tropism: Tropism,
    pub z: Complex64,
    pub multiplicity: usize,
    pub residual_f: f64,
    pub residual_g: f64,
}

/// Common roots for every tropism, in tropism order. Tropisms without roots
/// keep an empty list.
pub fn solve_stage2(
    f: &SparsePoly,
    g: &SparsePoly,
    tropisms: &[Tropism],
    opts: &RootOptions,
) -> Result<Vec<(Tropism, Vec<InitialRoot>)>> {
    tropisms
        .iter()
        .map(|&t| {
            let pf = univariatize(f, t)?;
            let pg = univariatize(g, t)?;
            let mut rng = ChaCha8Rng::seed_from_u64(tropism_seed(opts.seed, t));
            let roots = common_roots_with_rng(&pf, &pg, opts, &mut rng)
                .into_iter()
                .map(|r| InitialRoot {
                    tropism: t,
                    z: r.z,
                    multiplicity: r.multiplicity,
                    residual_f: r.residual_p,
                    residual_g: r.residual_q,
                })
                .collect();
            Ok((t, roots))
        })
        .collect()
}

fn tropism_seed(seed: u64, t: Tropism) -> u64 {
    let mix = (t.u() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (t.v() as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    seed ^ mix
}

/// Maps a root in transformed coordinates back to `(x, y)` at `X = x_value`.
pub fn original_point(t: Tropism, x_value: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    UnimodularMatrix::for_tropism(t).untransform_point(x_value, z)
}

/// `z^n` helper re-exported for residual computations in later stages.
pub(crate) fn powi(z: Complex64, n: i64) -> Result<Complex64> {
    complex_powi(z, n)
}
