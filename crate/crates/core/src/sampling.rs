//! Seeded samplers for group elements and generic configurations.
//!
//! Group elements are drawn through Iwasawa coordinates `n(x) a(l) k`, which
//! keeps the determinant exactly one and the condition number bounded by the
//! box. Configurations are rejection-sampled against the genericity margins.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{CocycleError, Result};
use crate::field::{Field, Scalar};
use crate::sl2::{Mat2, Orientation, PairGA, ProjPoint, Vec2};
use crate::spaces::{generic_vec_pair, GenericityConfig, OrbitInvariantGA, SpaceTag};

/// Attempts allowed per sampled configuration before giving up.
pub const MAX_ATTEMPTS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub trials: u64,
    /// `|Re x|, |Im x| <= n_bound` for the unipotent coordinate.
    pub n_bound: f64,
    /// `|log l| <= log_lambda_bound`.
    pub log_lambda_bound: f64,
    /// Sampled projective points keep at least this distance from infinity.
    pub chart_margin: f64,
    pub margins: GenericityConfig,
    /// Overrides the suite's default tolerance.
    pub tol: Option<f64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 42,
            trials: 10_000,
            n_bound: 2.0,
            log_lambda_bound: 1.0,
            chart_margin: 0.05,
            margins: GenericityConfig::sampling(),
            tol: None,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(CocycleError::InvalidConfig("trials must be at least 1".into()));
        }
        for (name, b) in [("n_bound", self.n_bound), ("log_lambda_bound", self.log_lambda_bound)] {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(CocycleError::InvalidConfig(format!("{name} must be finite and non-negative, got {b}")));
            }
        }
        if !(self.chart_margin > 0.0 && self.chart_margin < 1.0) {
            return Err(CocycleError::InvalidConfig(format!(
                "chart_margin must lie in (0, 1), got {}",
                self.chart_margin
            )));
        }
        if let Some(t) = self.tol {
            if !(t >= 0.0) {
                return Err(CocycleError::InvalidConfig(format!("tolerance must be non-negative, got {t}")));
            }
        }
        self.margins.validate()
    }
}

/// The per-trial stream: one ChaCha stream per trial index under a common seed.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn symmetric<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> f64 {
    if bound == 0.0 {
        0.0
    } else {
        rng.gen_range(-bound..=bound)
    }
}

/// The Iwasawa coordinates a group sample was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSample {
    pub g: Mat2,
    pub n: Scalar,
    pub log_lambda: f64,
}

fn sample_compact<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Mat2 {
    match field {
        Field::Real => Mat2::rotation(rng.gen_range(0.0..std::f64::consts::TAU)),
        Field::Complex => {
            // uniform on the 3-sphere is Haar measure on SU(2)
            loop {
                let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
                let r = x.iter().map(|t| t * t).sum::<f64>().sqrt();
                if r < 1e-6 {
                    continue;
                }
                let a = Scalar::complex(x[0] / r, x[1] / r);
                let b = Scalar::complex(x[2] / r, x[3] / r);
                if let Ok(k) = Mat2::with_field([a, b, -b.conj(), a.conj()], Field::Complex) {
                    return k;
                }
            }
        }
    }
}

pub fn sample_group_with_params<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &SamplerConfig,
    field: Field,
) -> Result<GroupSample> {
    let n = match field {
        Field::Real => Scalar::real(symmetric(rng, cfg.n_bound)),
        Field::Complex => Scalar::complex(symmetric(rng, cfg.n_bound), symmetric(rng, cfg.n_bound)),
    };
    let log_lambda = symmetric(rng, cfg.log_lambda_bound);
    let k = sample_compact(rng, field);
    let g = Mat2::unipotent(n).promote(field).mul(&Mat2::torus(log_lambda))?.mul(&k)?;
    Ok(GroupSample { g, n, log_lambda })
}

pub fn sample_group<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig, field: Field) -> Result<Mat2> {
    Ok(sample_group_with_params(rng, cfg, field)?.g)
}

/// A random element of the stabilizer of the basepoint: `N` for `G/N`, `A` for `G/A`.
pub fn sample_stabilizer<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig, space: SpaceTag, field: Field) -> Mat2 {
    match space {
        SpaceTag::GN => {
            let x = match field {
                Field::Real => Scalar::real(symmetric(rng, cfg.n_bound.max(1.0))),
                Field::Complex => {
                    Scalar::complex(symmetric(rng, cfg.n_bound.max(1.0)), symmetric(rng, cfg.n_bound.max(1.0)))
                }
            };
            Mat2::unipotent(x).promote(field)
        }
        SpaceTag::GA => Mat2::torus(symmetric(rng, cfg.log_lambda_bound.max(1.0))),
    }
}

/// A nonzero scalar with `|log |l|| <= log_lambda_bound` and uniform phase (or sign).
pub fn sample_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig, field: Field) -> Scalar {
    let r = symmetric(rng, cfg.log_lambda_bound.max(0.5)).exp();
    match field {
        Field::Real => Scalar::real(if rng.gen_bool(0.5) { r } else { -r }),
        Field::Complex => {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Scalar::complex(r * t.cos(), r * t.sin())
        }
    }
}

fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Option<Vec2> {
    let mut c = || -> Scalar {
        let re: f64 = StandardNormal.sample(rng);
        match field {
            Field::Real => Scalar::real(re),
            Field::Complex => Scalar::complex(re, StandardNormal.sample(rng)),
        }
    };
    let (a, b) = (c(), c());
    Vec2::with_field([a, b], field).ok()
}

/// `count` Gaussian vectors, every pair of which is generic. Rejected draws are added to `rejected`.
pub fn sample_generic_vectors<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &SamplerConfig,
    field: Field,
    count: usize,
    rejected: &mut u64,
) -> Result<Vec<Vec2>> {
    for _ in 0..MAX_ATTEMPTS {
        let drawn: Option<Vec<Vec2>> = (0..count).map(|_| gaussian_vec(rng, field)).collect();
        if let Some(vs) = drawn {
            let ok =
                vs.iter().enumerate().all(|(i, u)| vs[i + 1..].iter().all(|v| generic_vec_pair(u, v, &cfg.margins)));
            if ok {
                return Ok(vs);
            }
        }
        *rejected += 1;
    }
    Err(CocycleError::SamplingExhausted(MAX_ATTEMPTS))
}

/// Uniform in angle on the projective line, kept `chart_margin` away from infinity.
pub fn sample_proj_point<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig, rejected: &mut u64) -> Result<ProjPoint> {
    for _ in 0..MAX_ATTEMPTS {
        let t: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let p = ProjPoint::new(t.cos(), t.sin())?;
        if p.distance(&ProjPoint::infinity()) >= cfg.chart_margin {
            return Ok(p);
        }
        *rejected += 1;
    }
    Err(CocycleError::SamplingExhausted(MAX_ATTEMPTS))
}

/// `count` pairs whose `2 count` points are pairwise distinct by margin.
pub fn sample_generic_pairs_ga<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &SamplerConfig,
    count: usize,
    rejected: &mut u64,
) -> Result<Vec<PairGA>> {
    for _ in 0..MAX_ATTEMPTS {
        let pts = (0..2 * count).map(|_| sample_proj_point(rng, cfg, rejected)).collect::<Result<Vec<_>>>()?;
        let ok = pts
            .iter()
            .enumerate()
            .all(|(i, a)| pts[i + 1..].iter().all(|b| a.distance(b) >= cfg.margins.distinct_margin));
        if ok {
            return pts.chunks(2).map(|c| PairGA::with_margin(c[0], c[1], cfg.margins.distinct_margin)).collect();
        }
        *rejected += 1;
    }
    Err(CocycleError::SamplingExhausted(MAX_ATTEMPTS))
}

/// A random orbit label `(s, b)` with `inf, 0, s, b` distinct by margin.
pub fn sample_orbit_ga<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &SamplerConfig,
    rejected: &mut u64,
) -> Result<OrbitInvariantGA> {
    for _ in 0..MAX_ATTEMPTS {
        let o = if rng.gen_bool(0.5) { Orientation::Positive } else { Orientation::Negative };
        let p = sample_proj_point(rng, cfg, rejected)?;
        let far = [ProjPoint::zero(), o.unit_point()].iter().all(|q| p.distance(q) >= cfg.margins.distinct_margin);
        if far {
            if let Some(b) = p.to_finite() {
                return OrbitInvariantGA::new(o, b);
            }
        }
        *rejected += 1;
    }
    Err(CocycleError::SamplingExhausted(MAX_ATTEMPTS))
}
