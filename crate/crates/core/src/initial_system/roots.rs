//! All roots of a univariate polynomial by Aberth-Ehrlich iteration.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

pub const MAX_ITERATIONS: usize = 200;
pub const CONVERGENCE: f64 = 1e-13;

/// Value and first derivative by Horner's rule; `coeffs` ascending.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `sum coeffs[k] z^k` with multiplicity. The leading coefficient
/// must be nonzero. Initial guesses sit on a circle whose phase is drawn
/// from `rng`.
pub fn aberth<R: Rng>(coeffs: &[Complex64], rng: &mut R) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    match n {
        0 => return Vec::new(),
        1 => return vec![-coeffs[0] / coeffs[1]],
        _ => {}
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    // geometric mean of the root moduli, bounded away from zero
    let radius = monic[0].norm().powf(1.0 / n as f64).max(f64::MIN_POSITIVE.sqrt());
    let phase = rng.gen_range(0.0..TAU);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, phase + TAU * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                // dp vanished away from a root; nudge and keep going
                z[k] *= Complex64::from_polar(1.0 + 1e-3, 0.1);
                converged = false;
                continue;
            }
            z[k] -= step;
            if step.norm() > CONVERGENCE * z[k].norm().max(f64::MIN_POSITIVE) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

/// Groups roots lying within `tol * max(1, |z|)` of a cluster centroid.
/// Returns `(centroid, multiplicity)` pairs.
pub fn cluster(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for &z in roots {
        let hit = groups
            .iter_mut()
            .find(|(centre, _)| (z - *centre).norm() <= tol * z.norm().max(1.0));
        match hit {
            Some((centre, members)) => {
                members.push(z);
                *centre = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => groups.push((z, vec![z])),
        }
    }
    groups
        .into_iter()
        .map(|(centre, members)| (centre, members.len()))
        .collect()
}
