//! The staged test for a common factor, plus instance generation and an
//! independent resultant check used for cross-validation.
//!
//! Stage one intersects the tropicalizations, stage two solves the initial
//! form systems, stage three computes the second Puiseux term of every root
//! and checks its residual order. The first empty stage decides the status.

use std::f64::consts::TAU;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial_system::{solve_stage2, InitialRoot, RootOptions};
use crate::polygon::{tropism_intersection, Tropicalization, Tropism};
use crate::polynomial::{ExponentVector, SparsePoly, DEFAULT_DROP_TOLERANCE};
use crate::puiseux::{compute_germ, residual_order, ExponentData, GermOutcome, SeriesGerm, DEFAULT_SERIES_TOLERANCE};

/// Threshold on `|det|` of the Sylvester matrix built from unit-norm
/// coefficient vectors. Its Hadamard bound is one; seeded coprime pairs of
/// degree up to 15 stay above 1e-10 while planted pairs fall below 1e-20.
pub const PROBE_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub drop_tolerance: f64,
    pub rank_tolerance: f64,
    pub root_tolerance: f64,
    pub cluster_tolerance: f64,
    /// Relative consistency required of the two equations for `c1`.
    pub series_tolerance: f64,
    /// A germ passes when its residual slope reaches the expected order
    /// minus this margin, for both polynomials.
    pub residual_slope_margin: f64,
    pub residual_samples: Vec<f64>,
    pub seed: u64,
    /// Wall-clock timings make certificates nondeterministic, so they are
    /// only recorded on request.
    pub record_timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        let roots = RootOptions::default();
        Self {
            drop_tolerance: DEFAULT_DROP_TOLERANCE,
            rank_tolerance: roots.rank_tolerance,
            root_tolerance: roots.root_tolerance,
            cluster_tolerance: roots.cluster_tolerance,
            series_tolerance: DEFAULT_SERIES_TOLERANCE,
            residual_slope_margin: 0.1,
            residual_samples: vec![1e-2, 3e-3, 1e-3],
            seed: 0,
            record_timings: false,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("drop tolerance", self.drop_tolerance),
            ("rank tolerance", self.rank_tolerance),
            ("root tolerance", self.root_tolerance),
            ("cluster tolerance", self.cluster_tolerance),
            ("series tolerance", self.series_tolerance),
            ("residual slope margin", self.residual_slope_margin),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")));
            }
        }
        if self.residual_samples.iter().any(|&t| !(t > 0.0 && t <= 0.1)) {
            return Err(Error::InvalidParameter("residual samples must lie in (0, 0.1]".into()));
        }
        let mut distinct = self.residual_samples.clone();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::InvalidParameter("need at least two distinct residual samples".into()));
        }
        Ok(())
    }

    pub fn root_options(&self) -> RootOptions {
        RootOptions {
            rank_tolerance: self.rank_tolerance,
            root_tolerance: self.root_tolerance,
            cluster_tolerance: self.cluster_tolerance,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    NoTropism,
    NoInitialRoot,
    NoSecondTerm,
    FactorLikely,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TropismRoots {
    pub tropism: Tropism,
    pub roots: Vec<InitialRoot>,
}

/// A germ whose residual vanishes to the expected order on both inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedGerm {
    pub germ: SeriesGerm,
    #[serde(with = "infinite_as_null")]
    pub slope_f: f64,
    #[serde(with = "infinite_as_null")]
    pub slope_g: f64,
    pub expected_f: f64,
    pub expected_g: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FailureReason {
    /// One input equals its initial form along the tropism.
    NoPositiveLayer,
    ExponentMismatch(ExponentData),
    NoCoefficient(ExponentData),
    ResidualOrder {
        #[serde(with = "infinite_as_null")]
        slope_f: f64,
        #[serde(with = "infinite_as_null")]
        slope_g: f64,
        expected_f: f64,
        expected_g: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GermFailure {
    pub tropism: Tropism,
    pub c0: Complex64,
    pub reason: FailureReason,
}

/// Stage durations in microseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub tropisms_us: u64,
    pub initial_roots_us: u64,
    pub second_terms_us: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub notes: Vec<String>,
    pub failures: Vec<GermFailure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: Status,
    pub tropisms: Vec<Tropism>,
    pub roots: Vec<TropismRoots>,
    pub germs: Vec<CertifiedGerm>,
    pub diagnostics: Diagnostics,
}

impl Certificate {
    fn stopped(status: Status, tropisms: Vec<Tropism>, roots: Vec<TropismRoots>, diagnostics: Diagnostics) -> Self {
        Self {
            status,
            tropisms,
            roots,
            germs: Vec::new(),
            diagnostics,
        }
    }

    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|r| r.roots.len()).sum()
    }
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_finite() {
            s.serialize_some(value)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros().min(u64::MAX as u128) as u64
}

/// Runs the three stages on `f` and `g`, stopping at the first empty one.
pub fn preprocess(f: &SparsePoly, g: &SparsePoly, cfg: &Config) -> Result<Certificate> {
    cfg.validate()?;
    let f = SparsePoly::from_terms_with_tolerance(f.terms(), cfg.drop_tolerance)?;
    let g = SparsePoly::from_terms_with_tolerance(g.terms(), cfg.drop_tolerance)?;
    let mut diagnostics = Diagnostics::default();
    let mut timings = Timings::default();

    let start = Instant::now();
    for (name, p) in [("f", &f), ("g", &g)] {
        if p.is_monomial() {
            diagnostics
                .notes
                .push(format!("{name} is a monomial and has no roots in the torus"));
        }
    }
    let tropisms = if f.is_monomial() || g.is_monomial() {
        Vec::new()
    } else {
        tropism_intersection(&Tropicalization::of(&f), &Tropicalization::of(&g))
    };
    timings.tropisms_us = micros(start);
    let finish = |mut d: Diagnostics, t: Timings| {
        if cfg.record_timings {
            d.timings = Some(t);
        }
        d
    };
    if tropisms.is_empty() {
        return Ok(Certificate::stopped(
            Status::NoTropism,
            tropisms,
            Vec::new(),
            finish(diagnostics, timings),
        ));
    }

    let start = Instant::now();
    let roots: Vec<TropismRoots> = solve_stage2(&f, &g, &tropisms, &cfg.root_options())?
        .into_iter()
        .map(|(tropism, roots)| TropismRoots { tropism, roots })
        .collect();
    timings.initial_roots_us = micros(start);
    if roots.iter().all(|r| r.roots.is_empty()) {
        return Ok(Certificate::stopped(
            Status::NoInitialRoot,
            tropisms,
            roots,
            finish(diagnostics, timings),
        ));
    }

    let start = Instant::now();
    let mut germs = Vec::new();
    for root in roots.iter().flat_map(|r| &r.roots) {
        let t = root.tropism;
        let failure = |reason| GermFailure { tropism: t, c0: root.z, reason };
        let germ = match compute_germ(&f, &g, t, root.z, cfg.series_tolerance)? {
            GermOutcome::Germ(germ) => germ,
            GermOutcome::NoPositiveLayer => {
                diagnostics.failures.push(failure(FailureReason::NoPositiveLayer));
                continue;
            }
            GermOutcome::ExponentMismatch(data) => {
                diagnostics.failures.push(failure(FailureReason::ExponentMismatch(data)));
                continue;
            }
            GermOutcome::NoCoefficient(data) => {
                diagnostics.failures.push(failure(FailureReason::NoCoefficient(data)));
                continue;
            }
        };
        let slope_f = residual_order(&f, &germ, &cfg.residual_samples)?;
        let slope_g = residual_order(&g, &germ, &cfg.residual_samples)?;
        let (expected_f, expected_g) = (germ.expected_residual_order(false), germ.expected_residual_order(true));
        if slope_f >= expected_f - cfg.residual_slope_margin && slope_g >= expected_g - cfg.residual_slope_margin {
            if !germ.w.is_integer() {
                diagnostics
                    .notes
                    .push(format!("germ at tropism {t} has non-integer exponent w = {}", germ.w));
            }
            germs.push(CertifiedGerm {
                germ,
                slope_f,
                slope_g,
                expected_f,
                expected_g,
            });
        } else {
            diagnostics.failures.push(failure(FailureReason::ResidualOrder {
                slope_f,
                slope_g,
                expected_f,
                expected_g,
            }));
        }
    }
    timings.second_terms_us = micros(start);
    let status = if germs.is_empty() {
        Status::NoSecondTerm
    } else {
        Status::FactorLikely
    };
    Ok(Certificate {
        status,
        tropisms,
        roots,
        germs,
        diagnostics: finish(diagnostics, timings),
    })
}

/// Coefficients of `p(x0, y)` in ascending powers of `y`, after dividing out
/// the lowest power of `y`.
fn coefficients_in_y(p: &SparsePoly, x0: Complex64) -> Result<Vec<Complex64>> {
    let low = p.support().iter().map(|e| e.j).min().unwrap_or(0);
    let high = p.y_degree();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (high - low) as usize + 1];
    for (e, c) in p.terms() {
        coeffs[(e.j - low) as usize] += c * crate::polynomial::complex_powi(x0, e.i)?;
    }
    Ok(coeffs)
}

/// Sylvester determinant test at random points of the unit circle.
///
/// Independent of the stage-two machinery: the matrix is assembled directly
/// and its determinant comes from an LU factorisation. Coefficient vectors
/// are scaled to unit norm, so by Hadamard's inequality `|det| <= 1` and the
/// threshold is absolute.
pub fn resultant_probe(f: &SparsePoly, g: &SparsePoly, n_samples: usize, seed: u64) -> Result<bool> {
    resultant_probe_with_tolerance(f, g, n_samples, seed, PROBE_TOLERANCE)
}

/// [`resultant_probe`] with an explicit threshold on `|det|`.
pub fn resultant_probe_with_tolerance(
    f: &SparsePoly,
    g: &SparsePoly,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<bool> {
    let span = |p: &SparsePoly| p.y_degree() - p.support().iter().map(|e| e.j).min().unwrap_or(0);
    if span(f) == 0 || span(g) == 0 {
        return Err(Error::ZeroYDegree);
    }
    if n_samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_samples {
        let x0 = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let unit = |mut c: Vec<Complex64>| {
            let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            c.iter_mut().for_each(|z| *z /= norm);
            c
        };
        let a = unit(coefficients_in_y(f, x0)?);
        let b = unit(coefficients_in_y(g, x0)?);
        let (n, m) = (a.len() - 1, b.len() - 1);
        let size = n + m;
        let mut s = DMatrix::<Complex64>::zeros(size, size);
        // rows hold descending coefficients, shifted one column per row
        for row in 0..m {
            for (k, c) in a.iter().rev().enumerate() {
                s[(row, row + k)] = *c;
            }
        }
        for row in 0..n {
            for (k, c) in b.iter().rev().enumerate() {
                s[(m + row, row + k)] = *c;
            }
        }
        if s.lu().determinant().norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub deg_factor: u32,
    pub deg_cofactor: u32,
    pub planted: bool,
    pub sparsity: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GroundTruth {
    Planted { factor: SparsePoly },
    Coprime,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub f: SparsePoly,
    pub g: SparsePoly,
    pub truth: GroundTruth,
}

fn unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

/// Random polynomial of total degree `deg` with coefficients uniform on the
/// unit disk. The corners `1`, `x^deg`, `y^deg` are always present; every
/// other monomial is kept with probability `sparsity`.
pub fn random_poly(deg: u32, sparsity: f64, rng: &mut ChaCha8Rng) -> SparsePoly {
    let deg = deg as i64;
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            let corner = (i == 0 && j == 0) || (i == deg && j == 0) || (i == 0 && j == deg);
            let keep = corner || rng.gen_bool(sparsity);
            let c = unit_disk(rng);
            if keep {
                terms.push((ExponentVector::new(i, j), c));
            }
        }
    }
    SparsePoly::from_terms_with_tolerance(terms, 0.0).expect("corner terms are nonzero")
}

/// Planted instances are `f = r a`, `g = r b` with `deg r = deg_factor` and
/// cofactors of degree `deg_cofactor`; otherwise `f` and `g` are independent
/// of degree `deg_factor + deg_cofactor`.
pub fn gen_instance(params: GenParams) -> Result<Instance> {
    if params.deg_factor == 0 || params.deg_cofactor == 0 {
        return Err(Error::InvalidParameter("degrees must be at least one".into()));
    }
    if !(params.sparsity > 0.0 && params.sparsity <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sparsity must lie in (0, 1], got {}",
            params.sparsity
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let s = params.sparsity;
    if params.planted {
        let r = random_poly(params.deg_factor, s, &mut rng);
        let a = random_poly(params.deg_cofactor, s, &mut rng);
        let b = random_poly(params.deg_cofactor, s, &mut rng);
        Ok(Instance {
            f: &r * &a,
            g: &r * &b,
            truth: GroundTruth::Planted { factor: r },
        })
    } else {
        let deg = params.deg_factor + params.deg_cofactor;
        Ok(Instance {
            f: random_poly(deg, s, &mut rng),
            g: random_poly(deg, s, &mut rng),
            truth: GroundTruth::Coprime,
        })
    }
}

/// Multiplies every coefficient by `1 + level * xi` with `xi` uniform on the
/// unit disk.
pub fn perturb_coefficients(p: &SparsePoly, level: f64, seed: u64) -> Result<SparsePoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    p.map_coeffs(|_, c| c * (Complex64::new(1.0, 0.0) + unit_disk(&mut rng) * level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn poly(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    fn r_factor() -> SparsePoly {
        poly("2*x*y + x^2*y + 9*x*y^2 + 7*x^3*y + x^4*y + 9*x^3*y^2")
    }

    fn worked_pair() -> (SparsePoly, SparsePoly) {
        let a = poly("5*y^4 + 5*y^5 + 0.3*x - 1.7*x*y^3 + (0.4+0.9i)*x^2*y^6 + 2*x^5*y");
        let b = poly("5*y^5 + (1-0.5i)*x*y^2 + 0.8*x^3 - 1.1*x^2*y^7 + x^9*y");
        let r = r_factor();
        (&r * &a, &r * &b)
    }

    #[test]
    fn disjoint_fans_stop_at_stage_one() {
        let cert = preprocess(&poly("x^2 + y^2 + x^3*y^3"), &poly("1 + x*y^3 + x^3*y"), &Config::default()).unwrap();
        assert_eq!(cert.status, Status::NoTropism);
        assert!(cert.tropisms.is_empty() && cert.roots.is_empty() && cert.germs.is_empty());
    }

    #[test]
    fn monomials_have_no_tropism() {
        let cert = preprocess(&poly("3*x^2*y"), &poly("1 + x + y"), &Config::default()).unwrap();
        assert_eq!(cert.status, Status::NoTropism);
        assert_eq!(cert.diagnostics.notes.len(), 1);
    }

    #[test]
    fn shared_triangle_is_not_a_factor() {
        let (f, g) = (poly("1 + x + y"), poly("2 + x + y"));
        let cert = preprocess(&f, &g, &Config::default()).unwrap();
        assert_eq!(cert.tropisms.len(), 3);
        assert_ne!(cert.status, Status::FactorLikely);
        assert!(!resultant_probe(&f, &g, 5, 1).unwrap());
    }

    #[test]
    fn worked_pair_has_the_expected_germ() {
        let (f, g) = worked_pair();
        let cert = preprocess(&f, &g, &Config::default()).unwrap();
        assert_eq!(cert.status, Status::FactorLikely);
        let germ = cert
            .germs
            .iter()
            .find(|g| g.germ.tropism == Tropism::new(1, 0).unwrap() && (g.germ.c0.re + 2.0 / 9.0).abs() < 1e-10)
            .expect("germ along (1,0) at -2/9");
        assert!((germ.germ.c1 - Complex64::new(-1.0 / 9.0, 0.0)).norm() < 1e-8);
        assert!(germ.germ.w.is_integer() && germ.germ.w.numerator() == 1);
        assert!(resultant_probe(&f, &g, 3, 0).unwrap());
    }

    #[test]
    fn certificates_are_deterministic_and_round_trip() {
        let (f, g) = worked_pair();
        let cfg = Config::default();
        let runs: Vec<String> = (0..3)
            .map(|_| serde_json::to_string(&preprocess(&f, &g, &cfg).unwrap()).unwrap())
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]));
        let a = runs[0].clone();
        let back: Certificate = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
    }

    #[test]
    fn timings_only_on_request() {
        let (f, g) = worked_pair();
        let cfg = Config {
            record_timings: true,
            ..Config::default()
        };
        assert!(preprocess(&f, &g, &cfg).unwrap().diagnostics.timings.is_some());
        assert!(preprocess(&f, &g, &Config::default()).unwrap().diagnostics.timings.is_none());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let f = poly("1 + x + y");
        for cfg in [
            Config { rank_tolerance: 0.0, ..Config::default() },
            Config { residual_samples: vec![0.5, 0.01], ..Config::default() },
            Config { residual_samples: vec![0.01, 0.01], ..Config::default() },
        ] {
            assert!(matches!(preprocess(&f, &f, &cfg), Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn resultant_probe_examples() {
        assert!(resultant_probe(&poly("(x + y)*(x + 1)"), &poly("(x + y)*(y + 2)"), 5, 3).unwrap());
        assert!(!resultant_probe(&poly("x + y"), &poly("x - y"), 5, 3).unwrap());
        assert_eq!(resultant_probe(&poly("1 + x"), &poly("x + y"), 1, 0), Err(Error::ZeroYDegree));
    }

    #[test]
    fn resultant_probe_rejects_random_coprime_pairs() {
        let mut agree = 0;
        for seed in 0..50 {
            let inst = gen_instance(GenParams {
                deg_factor: 2,
                deg_cofactor: 4,
                planted: false,
                sparsity: 1.0,
                seed,
            })
            .unwrap();
            if !resultant_probe(&inst.f, &inst.g, 3, seed).unwrap() {
                agree += 1;
            }
        }
        assert!(agree >= 49, "{agree}");
    }

    #[test]
    fn generator_examples() {
        let planted = gen_instance(GenParams {
            deg_factor: 5,
            deg_cofactor: 10,
            planted: true,
            sparsity: 1.0,
            seed: 7,
        })
        .unwrap();
        assert_eq!(planted.f.total_degree(), 15);
        assert_eq!(planted.g.total_degree(), 15);
        assert!(resultant_probe(&planted.f, &planted.g, 3, 7).unwrap());
        let GroundTruth::Planted { factor } = &planted.truth else {
            panic!("expected a planted factor");
        };
        assert_eq!(factor.total_degree(), 5);

        let line = gen_instance(GenParams {
            deg_factor: 1,
            deg_cofactor: 1,
            planted: true,
            sparsity: 1.0,
            seed: 2,
        })
        .unwrap();
        assert_eq!(line.f.total_degree(), 2);

        let sparse = gen_instance(GenParams {
            deg_factor: 5,
            deg_cofactor: 10,
            planted: false,
            sparsity: 0.3,
            seed: 11,
        })
        .unwrap();
        assert!(sparse.f.len() < 136 && sparse.g.len() < 136);
        assert_eq!(sparse.truth, GroundTruth::Coprime);
        assert!(!resultant_probe(&sparse.f, &sparse.g, 3, 11).unwrap());

        let again = gen_instance(GenParams {
            deg_factor: 5,
            deg_cofactor: 10,
            planted: false,
            sparsity: 0.3,
            seed: 11,
        })
        .unwrap();
        assert_eq!(again, sparse);

        for bad in [
            GenParams { deg_factor: 0, ..again_params() },
            GenParams { sparsity: 0.0, ..again_params() },
            GenParams { sparsity: 1.5, ..again_params() },
        ] {
            assert!(gen_instance(bad).is_err());
        }
    }

    fn again_params() -> GenParams {
        GenParams {
            deg_factor: 2,
            deg_cofactor: 3,
            planted: true,
            sparsity: 1.0,
            seed: 0,
        }
    }

    #[test]
    fn statuses_are_monotone_on_random_instances() {
        for seed in 0..10 {
            for planted in [true, false] {
                let inst = gen_instance(GenParams {
                    deg_factor: 2,
                    deg_cofactor: 3,
                    planted,
                    sparsity: 0.7,
                    seed,
                })
                .unwrap();
                let cert = preprocess(&inst.f, &inst.g, &Config::default()).unwrap();
                assert_eq!(cert.status == Status::NoTropism, cert.tropisms.is_empty());
                if cert.status == Status::FactorLikely {
                    assert!(cert.root_count() > 0 && !cert.germs.is_empty());
                    for g in &cert.germs {
                        assert!(g.slope_f >= g.expected_f - 0.1 && g.slope_g >= g.expected_g - 0.1);
                    }
                }
                if cert.status == Status::NoSecondTerm {
                    assert!(cert.root_count() > 0 && cert.germs.is_empty());
                }
            }
        }
    }
}
