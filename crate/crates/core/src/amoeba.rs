//! Sampled amoeba of a linear polynomial `a x + b y + c`.
//!
//! Solving for `y` and letting `x = r e^(i theta)` run over polar
//! coordinates gives points `(ln |x|, ln |y|)` of the amoeba. Far out, the
//! samples line up along tentacles whose directions are the negated inner
//! normals of the Newton triangle: as `t -> 0` along `x = t^u`, `y = t^v`
//! the log image moves towards `-(u, v)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmoebaParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Angles `k pi / n_theta` for `k < n_theta`.
    pub n_theta: usize,
    /// Magnitudes `10^s` for `n_r` values of `s` evenly spread over
    /// `[-decades, decades]`, taken with both signs.
    pub n_r: usize,
    pub decades: f64,
}

impl Default for AmoebaParams {
    fn default() -> Self {
        // x/2 + y/5 - 1
        Self {
            a: 0.5,
            b: 0.2,
            c: -1.0,
            n_theta: 100,
            n_r: 200,
            decades: 4.0,
        }
    }
}

/// Points `(ln |x|, ln |y|)` on the amoeba. Samples with `x = 0` never occur
/// and samples with `y = 0` are dropped.
pub fn sample_linear(params: &AmoebaParams) -> Result<Vec<(f64, f64)>> {
    let AmoebaParams { a, b, c, n_theta, n_r, decades } = *params;
    if a == 0.0 || b == 0.0 || c == 0.0 {
        return Err(Error::InvalidParameter("all three coefficients must be nonzero".into()));
    }
    if n_theta == 0 || n_r < 2 || !(decades > 0.0) {
        return Err(Error::InvalidParameter("need angles, at least two radii, positive range".into()));
    }
    let mut points = Vec::with_capacity(2 * n_theta * n_r);
    for k in 0..n_theta {
        let theta = k as f64 * PI / n_theta as f64;
        for m in 0..n_r {
            let s = -decades + 2.0 * decades * m as f64 / (n_r - 1) as f64;
            for sign in [1.0, -1.0] {
                let x = Complex64::from_polar(sign * 10f64.powf(s), theta);
                let y = -(x * a + c) / b;
                if y.norm() > 0.0 {
                    points.push((x.norm().ln(), y.norm().ln()));
                }
            }
        }
    }
    Ok(points)
}

/// Direction of the tentacle pointing roughly along `hint`: the chord
/// between the farthest sample in that cone and the sample nearest to the
/// midpoint of the cone's radial range.
pub fn tentacle_direction(points: &[(f64, f64)], hint: (f64, f64)) -> Option<(f64, f64)> {
    let norm = (hint.0 * hint.0 + hint.1 * hint.1).sqrt();
    let hint = (hint.0 / norm, hint.1 / norm);
    let n = points.len() as f64;
    let centroid = points.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / n, a.1 + p.1 / n));
    let cone: Vec<(f64, (f64, f64))> = points
        .iter()
        .filter_map(|&p| {
            let d = (p.0 - centroid.0, p.1 - centroid.1);
            let len = (d.0 * d.0 + d.1 * d.1).sqrt();
            let cos = (d.0 * hint.0 + d.1 * hint.1) / len;
            (len > 0.0 && cos > 0.9).then_some((d.0 * hint.0 + d.1 * hint.1, p))
        })
        .collect();
    let &(far_proj, far) = cone.iter().max_by(|a, b| a.0.total_cmp(&b.0))?;
    let &(_, mid) = cone
        .iter()
        .min_by(|a, b| (a.0 - far_proj / 2.0).abs().total_cmp(&(b.0 - far_proj / 2.0).abs()))?;
    let d = (far.0 - mid.0, far.1 - mid.1);
    let len = (d.0 * d.0 + d.1 * d.1).sqrt();
    (len > 0.0).then_some((d.0 / len, d.1 / len))
}
