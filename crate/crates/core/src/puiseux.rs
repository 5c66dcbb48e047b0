//! Second term of the Puiseux expansion at a root at infinity.
//!
//! After the unimodular transform of a tropism and division by the lowest
//! power of `X`, a polynomial reads `p(Y) + X^k P_k(Y) + X^(k+1) ...` where
//! `p` comes from the initial form. Substituting `X = t^d`,
//! `Y = c0 + c1 t^w` into both polynomials, the lowest powers of `t` can only
//! cancel if `w = k d / a1 = l d / b1`, with `a1`, `b1` the multiplicities of
//! `c0` in the two initial forms. The coefficient `c1` then solves a small
//! overdetermined system.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial_system::powi;
use crate::polygon::Tropism;
use crate::polynomial::SparsePoly;
use crate::unimodular::UnimodularMatrix;

/// Relative size below which a Taylor coefficient counts as zero when
/// measuring the multiplicity of a root.
pub const MULTIPLICITY_THRESHOLD: f64 = 1e-6;

/// Residuals below this multiple of the summed term moduli are rounding
/// noise.
const ROUNDING_LEVEL: f64 = 64.0 * f64::EPSILON;

/// Default consistency threshold for the overdetermined system in `c1`.
pub const DEFAULT_SERIES_TOLERANCE: f64 = 1e-6;

/// A positive rational exponent in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRational {
    num: u64,
    den: u64,
}

impl PositiveRational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidParameter(format!("{num}/{den} is not positive")));
        }
        let g = gcd_u64(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exponents governing the second term: `k`, `l` are the lowest positive
/// `X`-degrees of the non-initial parts of `f`, `g`; `a1`, `b1` the
/// multiplicities of `c0` in their initial forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentData {
    pub k: u64,
    pub l: u64,
    pub a1: u64,
    pub b1: u64,
}

/// `X = t^d`, `Y = c0 + c1 t^w` in the coordinates of `tropism`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesGerm {
    pub tropism: Tropism,
    pub d: u64,
    pub c0: Complex64,
    pub w: PositiveRational,
    pub c1: Complex64,
    pub data: ExponentData,
}

impl SeriesGerm {
    /// Lowest order the residual of a correct germ can have: the cancelled
    /// order `a1 w` plus the smallest step among exponents `s d + m w`.
    pub fn expected_residual_order(&self, use_g: bool) -> f64 {
        let a = if use_g { self.data.b1 } else { self.data.a1 };
        let step = 1.0 / (self.w.denominator() as f64 / gcd_u64(self.d, self.w.denominator()) as f64);
        a as f64 * self.w.as_f64() + step
    }

    /// The point `(x, y)` in original coordinates at parameter `t`.
    pub fn original_point(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let (x, y) = self.transformed_point(t);
        UnimodularMatrix::for_tropism(self.tropism).untransform_point(x, y)
    }

    pub fn transformed_point(&self, t: f64) -> (Complex64, Complex64) {
        (
            Complex64::new(t.powf(self.d as f64), 0.0),
            self.c0 + self.c1 * t.powf(self.w.as_f64()),
        )
    }
}

/// `f` after the transform of `t`, divided by the lowest power of `X`:
/// layer `s` holds the Laurent polynomial in `Y` multiplying `X^s`.
#[derive(Clone, Debug)]
pub struct Layers {
    layers: BTreeMap<u64, Vec<(i64, Complex64)>>,
}

impl Layers {
    pub fn new(f: &SparsePoly, t: Tropism) -> Result<Self> {
        let m = UnimodularMatrix::for_tropism(t);
        let low = f.weighted_degree(t.direction());
        let mut layers: BTreeMap<u64, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (e, c) in f.terms() {
            let te = m.transform_exponent(e)?;
            let s = te
                .i
                .checked_sub(low)
                .ok_or(Error::Overflow("layer index"))?;
            layers.entry(s as u64).or_default().push((te.j, c));
        }
        Ok(Self { layers })
    }

    pub fn initial(&self) -> &[(i64, Complex64)] {
        self.layers.get(&0).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Smallest positive `X`-degree whose layer does not vanish at `c0`,
    /// with that layer. Layers vanishing at `c0` only contribute at orders
    /// above the one being balanced.
    pub fn leading_positive(&self, c0: Complex64) -> Result<Option<(u64, &[(i64, Complex64)])>> {
        for (s, layer) in self.layers.range(1..) {
            let (value, scale) = laurent_taylor(layer, c0, 0)?;
            if value.norm() > MULTIPLICITY_THRESHOLD * scale {
                return Ok(Some((*s, layer.as_slice())));
            }
        }
        Ok(None)
    }

    /// Value at `(X, Y)`; `Y` must be nonzero when negative powers occur.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        Ok(self.evaluate_with_scale(x, y)?.0)
    }

    /// Value together with the sum of the moduli of all terms.
    pub fn evaluate_with_scale(&self, x: Complex64, y: Complex64) -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (s, layer) in &self.layers {
            let xs = powi(x, *s as i64)?;
            for &(j, c) in layer {
                let term = c * xs * powi(y, j)?;
                acc += term;
                scale += term.norm();
            }
        }
        Ok((acc, scale))
    }
}

fn falling_binomial(j: i64, mu: u64) -> f64 {
    // j (j-1) ... (j-mu+1) / mu!, valid for negative j as well
    (0..mu).fold(1.0, |acc, r| acc * (j - r as i64) as f64 / (r + 1) as f64)
}

/// Taylor coefficient of order `mu` at `y` together with its natural scale
/// `sum |c_j| |binom(j, mu)| |y|^(j - mu)`.
fn laurent_taylor(layer: &[(i64, Complex64)], y: Complex64, mu: u64) -> Result<(Complex64, f64)> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &(j, c) in layer {
        let b = falling_binomial(j, mu);
        if b == 0.0 {
            continue;
        }
        let term = c * b * powi(y, j - mu as i64)?;
        value += term;
        scale += c.norm() * b.abs() * y.norm().powf((j - mu as i64) as f64);
    }
    Ok((value, scale))
}

/// Multiplicity of a known root `c0` of a Laurent polynomial: the first
/// Taylor coefficient of order at least one that is not negligible.
fn multiplicity(layer: &[(i64, Complex64)], c0: Complex64) -> Result<u64> {
    let max_order = layer.iter().map(|(j, _)| j.unsigned_abs()).max().unwrap_or(0) + 1;
    for mu in 1..=max_order.max(1) {
        let (value, scale) = laurent_taylor(layer, c0, mu)?;
        if scale > 0.0 && value.norm() > MULTIPLICITY_THRESHOLD * scale {
            return Ok(mu);
        }
    }
    // only reachable for vanishing layers; report the largest order tried
    Ok(max_order)
}

/// `(k, l, a1, b1)` for the root `c0` of the initial system of `t`. `None`
/// when every positive layer of `f` or `g` vanishes at `c0`, so that there
/// is nothing to balance against.
pub fn exponent_data(f: &SparsePoly, g: &SparsePoly, t: Tropism, c0: Complex64) -> Result<Option<ExponentData>> {
    let (lf, lg) = (Layers::new(f, t)?, Layers::new(g, t)?);
    let (Some((k, _)), Some((l, _))) = (lf.leading_positive(c0)?, lg.leading_positive(c0)?) else {
        return Ok(None);
    };
    Ok(Some(ExponentData {
        k,
        l,
        a1: multiplicity(lf.initial(), c0)?,
        b1: multiplicity(lg.initial(), c0)?,
    }))
}

/// The exponent `w = k d / a1` when it equals `l d / b1`; `None` means the
/// root at infinity is isolated and no second term exists.
pub fn exponent_condition(
    f: &SparsePoly,
    g: &SparsePoly,
    t: Tropism,
    c0: Complex64,
) -> Result<Option<(PositiveRational, ExponentData)>> {
    let Some(data) = exponent_data(f, g, t, c0)? else {
        return Ok(None);
    };
    let d = 1u64;
    // k d / a1 == l d / b1, compared exactly
    if (data.k as u128) * (data.b1 as u128) != (data.l as u128) * (data.a1 as u128) {
        return Ok(None);
    }
    let w = PositiveRational::new(data.k * d, data.a1)?;
    Ok(Some((w, data)))
}

/// Coefficient of the lowest power of `t` left after substitution:
/// `alpha1 c1^a1 + alpha2`.
struct LowestOrder {
    alpha1: Complex64,
    alpha2: Complex64,
    alpha2_scale: f64,
    power: u64,
}

fn lowest_order(layers: &Layers, c0: Complex64, power: u64) -> Result<LowestOrder> {
    let (alpha1, _) = laurent_taylor(layers.initial(), c0, power)?;
    let (_, layer) = layers
        .leading_positive(c0)?
        .ok_or_else(|| Error::InvalidParameter("no positive layer".into()))?;
    let (alpha2, alpha2_scale) = laurent_taylor(layer, c0, 0)?;
    Ok(LowestOrder {
        alpha1,
        alpha2,
        alpha2_scale,
        power,
    })
}

impl LowestOrder {
    fn residual(&self, c1: Complex64) -> f64 {
        let lead = self.alpha1 * c1.powu(self.power as u32);
        let value = (lead + self.alpha2).norm();
        let scale = lead.norm() + self.alpha2.norm();
        if scale == 0.0 {
            0.0
        } else {
            value / scale
        }
    }
}

/// Solves for the nonzero `c1` annihilating the lowest order of both
/// substituted polynomials. Returns `None` when the two equations are
/// inconsistent beyond `tol` or force `c1 = 0`.
pub fn second_term(
    f: &SparsePoly,
    g: &SparsePoly,
    t: Tropism,
    c0: Complex64,
    data: &ExponentData,
    tol: f64,
) -> Result<Option<Complex64>> {
    let ef = lowest_order(&Layers::new(f, t)?, c0, data.a1)?;
    let eg = lowest_order(&Layers::new(g, t)?, c0, data.b1)?;
    // a vanishing alpha2 would force c1 = 0
    if ef.alpha2.norm() <= tol * ef.alpha2_scale || eg.alpha2.norm() <= tol * eg.alpha2_scale {
        return Ok(None);
    }
    if ef.alpha1.norm() == 0.0 || eg.alpha1.norm() == 0.0 {
        return Ok(None);
    }
    let c1 = if data.a1 == data.b1 {
        // least squares in s = c1^a1
        let s = -(ef.alpha1.conj() * ef.alpha2 + eg.alpha1.conj() * eg.alpha2)
            / (ef.alpha1.norm_sqr() + eg.alpha1.norm_sqr());
        principal_root(s, data.a1)
    } else {
        let (first, second) = if data.a1 <= data.b1 { (&ef, &eg) } else { (&eg, &ef) };
        let s = -first.alpha2 / first.alpha1;
        all_roots(s, first.power)
            .into_iter()
            .min_by(|a, b| second.residual(*a).total_cmp(&second.residual(*b)))
            .expect("at least one root")
    };
    if c1.norm() == 0.0 || !c1.re.is_finite() || !c1.im.is_finite() {
        return Ok(None);
    }
    Ok((ef.residual(c1) <= tol && eg.residual(c1) <= tol).then_some(c1))
}

fn principal_root(s: Complex64, n: u64) -> Complex64 {
    let (r, theta) = s.to_polar();
    Complex64::from_polar(r.powf(1.0 / n as f64), theta / n as f64)
}

fn all_roots(s: Complex64, n: u64) -> Vec<Complex64> {
    let (r, theta) = s.to_polar();
    let r = r.powf(1.0 / n as f64);
    (0..n)
        .map(|k| Complex64::from_polar(r, (theta + TAU * k as f64) / n as f64))
        .collect()
}

/// Outcome of stage three for a single initial root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GermOutcome {
    Germ(SeriesGerm),
    /// Every positive layer of `f` or `g` vanishes at `c0`.
    NoPositiveLayer,
    ExponentMismatch(ExponentData),
    NoCoefficient(ExponentData),
}

pub fn compute_germ(
    f: &SparsePoly,
    g: &SparsePoly,
    t: Tropism,
    c0: Complex64,
    tol: f64,
) -> Result<GermOutcome> {
    let Some(data) = exponent_data(f, g, t, c0)? else {
        return Ok(GermOutcome::NoPositiveLayer);
    };
    let Some((w, data)) = exponent_condition(f, g, t, c0)? else {
        return Ok(GermOutcome::ExponentMismatch(data));
    };
    match second_term(f, g, t, c0, &data, tol)? {
        Some(c1) => Ok(GermOutcome::Germ(SeriesGerm {
            tropism: t,
            d: 1,
            c0,
            w,
            c1,
            data,
        })),
        None => Ok(GermOutcome::NoCoefficient(data)),
    }
}

/// Least-squares slope of `log |f(t^d, c0 + c1 t^w)|` against `log t`, in
/// transformed coordinates with the lowest power of `X` divided out.
/// Residuals at rounding level count as zero; if fewer than two samples are
/// resolved above rounding the order is `+inf`.
pub fn residual_order(f: &SparsePoly, germ: &SeriesGerm, samples: &[f64]) -> Result<f64> {
    if samples.iter().any(|&t| !(t > 0.0 && t <= 0.1)) {
        return Err(Error::InvalidParameter("samples must lie in (0, 0.1]".into()));
    }
    if samples.iter().all(|&t| t == samples[0]) {
        return Err(Error::InvalidParameter("need at least two distinct samples".into()));
    }
    let layers = Layers::new(f, germ.tropism)?;
    let mut points = Vec::with_capacity(samples.len());
    for &t in samples {
        let (x, y) = germ.transformed_point(t);
        let (value, scale) = layers.evaluate_with_scale(x, y)?;
        let r = value.norm();
        if r > ROUNDING_LEVEL * scale {
            points.push((t.ln(), r.ln()));
        }
    }
    if points.len() < 2 || points.iter().all(|p| p.0 == points[0].0) {
        // at most one sample resolves the residual above rounding
        return Ok(f64::INFINITY);
    }
    Ok(fit_slope(&points))
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
