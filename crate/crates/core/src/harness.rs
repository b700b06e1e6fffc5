//! Seeded verification suites. Each suite samples generic inputs, evaluates one
//! identity, and aggregates the residuals into a [`VerificationReport`].
//!
//! Every suite also has a designated [`Mutation`], a deliberate defect in the
//! code under test which the suite must detect.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cochain::{d_right_with, d_up, Cochain, RightSign};
use crate::error::{CocycleError, Result};
use crate::field::{Field, Scalar};
use crate::kernel::{
    alpha_g_a, alpha_g_a_cochain, alpha_g_n, alpha_g_n_cochain, beta_a_chart_chase, beta_a_chase, beta_a_chase_via,
    beta_a_closed, beta_a_closed_scaled, beta_a_cochain, beta_n_chase, beta_n_chase_via, beta_n_closed, beta_n_cochain,
    omega_a, omega_a_chase, omega_a_theorem, omega_n_faces, AFunctional, NFunctional,
};
use crate::sampling::{
    sample_generic_pairs_ga, sample_generic_vectors, sample_group, sample_nonzero_scalar, sample_orbit_ga,
    sample_stabilizer, trial_rng, SamplerConfig, MAX_ATTEMPTS,
};
use crate::sl2::{
    cross_ratio, delta, det_pair, iwasawa, mobius, mobius_pair, orientation, project_a, project_n, transporter_pair,
    transporter_triple, transporter_vectors, Mat2, PairGA, ProjPoint, Vec2,
};
use crate::spaces::{generic_vec_pair, transporter_to_gn_point, SpacePoint, SpaceTag};

/// A deliberate defect injected into the code under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mutation {
    #[default]
    None,
    /// `(-1)^p` instead of `(-1)^{p+1}` in the space differential.
    FlipRightSign,
    /// `ln(...)` instead of `1/2 ln(...)` in the closed form of `beta` on `G/A`.
    DropBetaAHalf,
    /// The `(0,1)` face of `omega = d_right beta` enters with the wrong sign.
    OmegaFaceSign,
    /// Projection closed forms normalized by the first row instead of the second.
    ProjectionRowSwap,
    /// Iwasawa reconstruction forgets the compact factor.
    IwasawaDropK,
    /// Transporters used transposed.
    TransposeTransporter,
    /// Cross ratio of the raw first homogeneous coordinates.
    CrossRatioCoords,
    /// Stabilizer applied on the wrong side of the transporter.
    RightCoset,
    /// `omega_A` implemented with the opposite global sign.
    FlipOmegaASign,
    /// `det(v|u)` in place of `det(u|v)` in the closed form of `beta` on `G/N`.
    SwapBetaNDeterminant,
    /// Linear combinations of functionals lose the sign of their coefficients.
    AbsFunctional,
}

impl Mutation {
    pub const ALL: [Mutation; 12] = [
        Mutation::None,
        Mutation::FlipRightSign,
        Mutation::DropBetaAHalf,
        Mutation::OmegaFaceSign,
        Mutation::ProjectionRowSwap,
        Mutation::IwasawaDropK,
        Mutation::TransposeTransporter,
        Mutation::CrossRatioCoords,
        Mutation::RightCoset,
        Mutation::FlipOmegaASign,
        Mutation::SwapBetaNDeterminant,
        Mutation::AbsFunctional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::FlipRightSign => "flip_right_sign",
            Mutation::DropBetaAHalf => "drop_beta_a_half",
            Mutation::OmegaFaceSign => "omega_face_sign",
            Mutation::ProjectionRowSwap => "projection_row_swap",
            Mutation::IwasawaDropK => "iwasawa_drop_k",
            Mutation::TransposeTransporter => "transpose_transporter",
            Mutation::CrossRatioCoords => "cross_ratio_coords",
            Mutation::RightCoset => "right_coset",
            Mutation::FlipOmegaASign => "flip_omega_a_sign",
            Mutation::SwapBetaNDeterminant => "swap_beta_n_determinant",
            Mutation::AbsFunctional => "abs_functional",
        }
    }

    fn right_sign(self) -> RightSign {
        if self == Mutation::FlipRightSign {
            RightSign::Flipped
        } else {
            RightSign::Alternating
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = CocycleError;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| CocycleError::InvalidConfig(format!("unknown mutation {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureWitness {
    pub input: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub field: Field,
    pub trials_requested: u64,
    pub trials_run: u64,
    pub rejected: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub failures: Vec<FailureWitness>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.max_residual <= self.tolerance && self.trials_run >= self.trials_requested
    }
}

/// Whether a suite's residual is an absolute difference or is divided by the size of the compared values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualKind {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub real_only: bool,
    pub tolerance: f64,
    pub residual: ResidualKind,
    /// The defect this suite is expected to catch.
    pub mutation: Mutation,
}

impl SuiteInfo {
    pub fn supports(&self, field: Field) -> bool {
        field == Field::Real || !self.real_only
    }
}

const fn suite(
    name: &'static str,
    summary: &'static str,
    real_only: bool,
    tolerance: f64,
    residual: ResidualKind,
    mutation: Mutation,
) -> SuiteInfo {
    SuiteInfo { name, summary, real_only, tolerance, residual, mutation }
}

use ResidualKind::{Absolute, Relative};

pub const SUITES: [SuiteInfo; 17] = [
    suite("iwasawa_roundtrip", "n a k reconstructs g and k is unitary", false, 1e-10, Relative, Mutation::IwasawaDropK),
    suite(
        "projection_match_N",
        "closed-form N-projection equals the Iwasawa factor",
        false,
        1e-10,
        Relative,
        Mutation::ProjectionRowSwap,
    ),
    suite(
        "projection_match_A",
        "closed-form A-projection equals the Iwasawa factor",
        true,
        1e-10,
        Relative,
        Mutation::ProjectionRowSwap,
    ),
    suite(
        "transporters",
        "transporters realize their point actions with det 1",
        false,
        1e-10,
        Relative,
        Mutation::TransposeTransporter,
    ),
    suite(
        "cross_ratio_invariance",
        "cross ratio and orientation are SL(2,R)-invariant",
        true,
        1e-9,
        Relative,
        Mutation::CrossRatioCoords,
    ),
    suite(
        "coset_independence",
        "beta does not depend on the transporter within its coset",
        false,
        1e-9,
        Relative,
        Mutation::RightCoset,
    ),
    suite(
        "differential_identity_N",
        "d_up beta = d_right alpha_G on G/N",
        false,
        1e-9,
        Relative,
        Mutation::FlipRightSign,
    ),
    suite(
        "differential_identity_A",
        "d_up beta = d_right alpha_G on G/A",
        true,
        1e-9,
        Relative,
        Mutation::FlipRightSign,
    ),
    suite(
        "closed_vs_chase_N",
        "closed form of beta on G/N equals the chase",
        false,
        1e-9,
        Relative,
        Mutation::SwapBetaNDeterminant,
    ),
    suite(
        "closed_vs_chase_A",
        "closed form of beta on G/A equals the chase on both branches",
        true,
        1e-9,
        Relative,
        Mutation::DropBetaAHalf,
    ),
    suite("cocycle_N", "omega_N satisfies the cocycle identity", false, 1e-8, Absolute, Mutation::OmegaFaceSign),
    suite("cocycle_A", "omega_A satisfies the cocycle identity", true, 1e-8, Absolute, Mutation::OmegaFaceSign),
    suite(
        "g_invariance_N",
        "omega_N is invariant under the diagonal action",
        false,
        1e-8,
        Absolute,
        Mutation::OmegaFaceSign,
    ),
    suite(
        "g_invariance_A",
        "omega_A is invariant under the diagonal action",
        true,
        1e-8,
        Absolute,
        Mutation::OmegaFaceSign,
    ),
    suite(
        "omega_constant_in_G",
        "the chased omega does not depend on g and equals the closed form",
        false,
        1e-8,
        Absolute,
        Mutation::FlipRightSign,
    ),
    suite(
        "sign_flip_thm15",
        "the two global signs of omega_A cancel exactly",
        true,
        0.0,
        Absolute,
        Mutation::FlipOmegaASign,
    ),
    suite(
        "linearity_in_functional",
        "alpha_G, beta, omega are linear in the functional",
        false,
        1e-10,
        Relative,
        Mutation::AbsFunctional,
    ),
];

pub fn suite_info(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn suites_for(field: Field) -> impl Iterator<Item = &'static SuiteInfo> {
    SUITES.iter().filter(move |s| s.supports(field))
}

pub fn run_suite(name: &str, cfg: &SamplerConfig, field: Field) -> Result<VerificationReport> {
    run_suite_with(name, cfg, field, Mutation::None)
}

pub fn run_suite_with(name: &str, cfg: &SamplerConfig, field: Field, mutation: Mutation) -> Result<VerificationReport> {
    let info = suite_info(name).ok_or_else(|| CocycleError::UnknownSuite(name.to_string()))?;
    if !info.supports(field) {
        return Err(CocycleError::FieldMismatch { expected: Field::Real, found: field });
    }
    cfg.validate()?;
    let tolerance = cfg.tol.unwrap_or(info.tolerance);
    let start = Instant::now();
    let ctx = Ctx::new(cfg, field, mutation)?;
    let outcomes = run_trials(cfg, |rng, rejected| ctx.trial(info.name, rng, rejected))?;

    let mut report = VerificationReport {
        suite: info.name.to_string(),
        field,
        trials_requested: cfg.trials,
        trials_run: 0,
        rejected: 0,
        max_residual: 0.0,
        tolerance,
        failures: Vec::new(),
        seed: cfg.seed,
        elapsed_ms: 0,
    };
    for (trial, rejected) in outcomes {
        report.trials_run += 1;
        report.rejected += rejected;
        let r = if trial.residual.is_nan() { f64::INFINITY } else { trial.residual };
        report.max_residual = report.max_residual.max(r);
        if !(r <= tolerance) {
            report.failures.push(FailureWitness { input: trial.input, residual: r });
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

struct Trial {
    residual: f64,
    input: String,
}

/// Runs `cfg.trials` accepted trials in parallel, one PRNG stream per trial index,
/// and returns them in trial order with their rejection counts.
fn run_trials<F>(cfg: &SamplerConfig, f: F) -> Result<Vec<(Trial, u64)>>
where
    F: Fn(&mut ChaCha8Rng, &mut u64) -> Result<Option<Trial>> + Sync,
{
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i);
            let mut rejected = 0u64;
            loop {
                if rejected >= MAX_ATTEMPTS {
                    return Err(CocycleError::SamplingExhausted(MAX_ATTEMPTS));
                }
                if let Some(t) = f(&mut rng, &mut rejected)? {
                    return Ok((t, rejected));
                }
                rejected += 1;
            }
        })
        .collect()
}

/// Turns an evaluation error into a failed trial; sampling exhaustion still aborts the suite.
fn measure(input: String, r: Result<f64>) -> Result<Option<Trial>> {
    match r {
        Ok(residual) => Ok(Some(Trial { residual, input })),
        Err(e @ CocycleError::SamplingExhausted(_)) => Err(e),
        Err(e) => Ok(Some(Trial { residual: f64::INFINITY, input: format!("{input}: {e}") })),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn rel_scalar(a: Scalar, b: Scalar) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn vec_rel(got: &Vec2, want: &Vec2) -> f64 {
    got.distance(want) / want.norm()
}

fn random_phi_n<R: Rng + ?Sized>(rng: &mut R, field: Field) -> NFunctional {
    let c_re = rng.gen_range(-2.0..2.0);
    let c_im = if field == Field::Complex { rng.gen_range(-2.0..2.0) } else { 0.0 };
    NFunctional { c_re, c_im }
}

fn random_phi_a<R: Rng + ?Sized>(rng: &mut R) -> AFunctional {
    AFunctional { c: rng.gen_range(-2.0..2.0) }
}

fn basis_functionals(field: Field) -> Vec<NFunctional> {
    match field {
        Field::Real => vec![NFunctional::real(1.0)],
        Field::Complex => vec![NFunctional::real(1.0), NFunctional { c_re: 0.0, c_im: 1.0 }],
    }
}

fn vectors_generic(vs: &[Vec2], cfg: &SamplerConfig) -> bool {
    vs.iter().enumerate().all(|(i, u)| vs[i + 1..].iter().all(|v| generic_vec_pair(u, v, &cfg.margins)))
}

fn pairs_generic(ps: &[PairGA], cfg: &SamplerConfig) -> bool {
    let pts: Vec<ProjPoint> = ps.iter().flat_map(|p| [p.p, p.q]).collect();
    pts.iter().enumerate().all(|(i, a)| pts[i + 1..].iter().all(|b| a.distance(b) >= cfg.margins.distinct_margin))
}

fn fmt_list<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn alternating<T: Clone>(xs: &[T], f: impl Fn(&[T]) -> Result<f64>) -> Result<f64> {
    crate::cochain::coboundary_simplicial(f, xs)
}

/// Suite context: the configuration plus the cochains that are expensive to build.
struct Ctx<'a> {
    cfg: &'a SamplerConfig,
    field: Field,
    mutation: Mutation,
    alpha_n: Cochain,
    alpha_a: Option<Cochain>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SamplerConfig, field: Field, mutation: Mutation) -> Result<Self> {
        // the induced alpha_G cochains use phi = 1; other functionals only rescale them
        let alpha_n = alpha_g_n_cochain(NFunctional::real(1.0), field)?;
        let alpha_a = match field {
            Field::Real => Some(alpha_g_a_cochain(AFunctional { c: 1.0 })?),
            Field::Complex => None,
        };
        Ok(Ctx { cfg, field, mutation, alpha_n, alpha_a })
    }

    fn trial(&self, name: &str, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        match name {
            "iwasawa_roundtrip" => self.iwasawa_roundtrip(rng),
            "projection_match_N" => self.projection_match_n(rng),
            "projection_match_A" => self.projection_match_a(rng),
            "transporters" => self.transporters(rng, rej),
            "cross_ratio_invariance" => self.cross_ratio_invariance(rng, rej),
            "coset_independence" => self.coset_independence(rng, rej),
            "differential_identity_N" => self.differential_identity_n(rng, rej),
            "differential_identity_A" => self.differential_identity_a(rng, rej),
            "closed_vs_chase_N" => self.closed_vs_chase_n(rng, rej),
            "closed_vs_chase_A" => self.closed_vs_chase_a(rng, rej),
            "cocycle_N" => self.cocycle_n(rng, rej),
            "cocycle_A" => self.cocycle_a(rng, rej),
            "g_invariance_N" => self.g_invariance_n(rng, rej),
            "g_invariance_A" => self.g_invariance_a(rng, rej),
            "omega_constant_in_G" => self.omega_constant_in_g(rng, rej),
            "sign_flip_thm15" => self.sign_flip(rng, rej),
            "linearity_in_functional" => self.linearity(rng, rej),
            other => Err(CocycleError::UnknownSuite(other.to_string())),
        }
    }

    fn group(&self, rng: &mut ChaCha8Rng) -> Result<Mat2> {
        sample_group(rng, self.cfg, self.field)
    }

    // ------------------------------------------------------------ mutable pieces

    fn project_n(&self, g: &Mat2) -> Scalar {
        if self.mutation != Mutation::ProjectionRowSwap {
            return project_n(g);
        }
        let [a, b, c, d] = g.entries();
        (a * c.conj() + b * d.conj()) / Scalar::real(a.norm_sqr() + b.norm_sqr())
    }

    fn project_a(&self, g: &Mat2) -> Result<f64> {
        if self.mutation != Mutation::ProjectionRowSwap {
            return project_a(g);
        }
        Ok(-0.5 * (g.a11().norm_sqr() + g.a12().norm_sqr()).ln())
    }

    fn transporter(&self, g: Mat2) -> Result<Mat2> {
        if self.mutation != Mutation::TransposeTransporter {
            return Ok(g);
        }
        let [a, b, c, d] = g.entries();
        Mat2::with_field([a, c, b, d], g.field())
    }

    fn cross_ratio(&self, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<f64> {
        if self.mutation != Mutation::CrossRatioCoords {
            return cross_ratio(a, b, c, d);
        }
        let x = |p: &ProjPoint| p.coords().0;
        Ok((x(a) - x(c)) * (x(b) - x(d)) / ((x(b) - x(c)) * (x(a) - x(d))))
    }

    fn beta_n_closed(&self, phi: &NFunctional, u: &Vec2, v: &Vec2) -> Result<f64> {
        if self.mutation != Mutation::SwapBetaNDeterminant {
            return beta_n_closed(phi, u, v);
        }
        let d = det_pair(v, u);
        let first = crate::sl2::hermitian(u, v) / d.scale(v.norm_sqr());
        let second = crate::sl2::hermitian(v, u) / d.scale(u.norm_sqr());
        Ok(phi.eval(first) + phi.eval(second))
    }

    fn beta_a_closed(&self, phi: &AFunctional, x: &PairGA, y: &PairGA) -> Result<f64> {
        let prefactor = if self.mutation == Mutation::DropBetaAHalf { 1.0 } else { 0.5 };
        beta_a_closed_scaled(phi, x, y, prefactor)
    }

    /// Sign of the `(0,1)` face in `omega = -f12 + f02 - f01`.
    fn face01(&self) -> f64 {
        if self.mutation == Mutation::OmegaFaceSign {
            1.0
        } else {
            -1.0
        }
    }

    fn omega_n(&self, phi: &NFunctional, v: &[Vec2]) -> Result<f64> {
        let [f12, f02, f01] = omega_n_faces(phi, &v[0], &v[1], &v[2])?;
        Ok(-f12 + f02 + self.face01() * f01)
    }

    /// `d_right` of the closed `beta` on `G/A`, evaluated face by face.
    fn omega_a_faces(&self, phi: &AFunctional, p: &[PairGA]) -> Result<f64> {
        let f12 = self.beta_a_closed(phi, &p[1], &p[2])?;
        let f02 = self.beta_a_closed(phi, &p[0], &p[2])?;
        let f01 = self.beta_a_closed(phi, &p[0], &p[1])?;
        Ok(-f12 + f02 + self.face01() * f01)
    }

    fn omega_a(&self, phi: &AFunctional, p: &[PairGA]) -> Result<f64> {
        if self.mutation == Mutation::FlipOmegaASign {
            omega_a_theorem(phi, &p[0], &p[1], &p[2])
        } else {
            omega_a(phi, &p[0], &p[1], &p[2])
        }
    }

    fn combine_coeffs(&self, s: f64, t: f64) -> (f64, f64) {
        if self.mutation == Mutation::AbsFunctional {
            (s.abs(), t.abs())
        } else {
            (s, t)
        }
    }

    // ------------------------------------------------------------ suites

    fn iwasawa_roundtrip(&self, rng: &mut ChaCha8Rng) -> Result<Option<Trial>> {
        let g = self.group(rng)?;
        let r = (|| {
            let f = iwasawa(&g)?;
            let rebuilt = if self.mutation == Mutation::IwasawaDropK {
                Mat2::unipotent(f.n).mul(&Mat2::torus(f.log_lambda))?
            } else {
                f.reconstruct()?
            };
            Ok(rebuilt.relative_distance(&g).max(f.unitarity_residual()))
        })();
        measure(format!("g={g}"), r)
    }

    fn projection_match_n(&self, rng: &mut ChaCha8Rng) -> Result<Option<Trial>> {
        let g = self.group(rng)?;
        let r = iwasawa(&g).map(|f| rel_scalar(self.project_n(&g), f.n));
        measure(format!("g={g}"), r)
    }

    fn projection_match_a(&self, rng: &mut ChaCha8Rng) -> Result<Option<Trial>> {
        let g = self.group(rng)?;
        let r = (|| Ok(rel(self.project_a(&g)?, iwasawa(&g)?.log_lambda)))();
        measure(format!("g={g}"), r)
    }

    fn transporters(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let field = self.field;
        let vs = sample_generic_vectors(rng, self.cfg, field, 2, rej)?;
        let (u, v) = (vs[0], vs[1]);
        let lambda = sample_nonzero_scalar(rng, self.cfg, field);
        let pairs = match field {
            Field::Real => Some(sample_generic_pairs_ga(rng, self.cfg, 2, rej)?),
            Field::Complex => None,
        };
        let mut input = format!("u={u} v={v} lambda={lambda}");
        if let Some(ps) = &pairs {
            input.push_str(&format!(" pairs={}", fmt_list(ps)));
        }
        let r = (|| {
            let det_res = |g: &Mat2| (g.det() - Scalar::ONE).abs();
            let e1 = Vec2::e1(field);
            let e2 = Vec2::e2(field);

            let g = self.transporter(transporter_vectors(&u, &v)?)?;
            let d = det_pair(&u, &v);
            let mut worst = vec_rel(&g.apply(&e1)?, &u).max(vec_rel(&g.apply(&e2.scale(d)?)?, &v)).max(det_res(&g));

            let dl = self.transporter(delta(lambda)?)?;
            worst = worst.max(vec_rel(&dl.apply(&e1)?, &e2.scale(lambda)?)).max(det_res(&dl));

            let h = self.transporter(transporter_to_gn_point(&u)?)?;
            worst = worst.max(vec_rel(&h.apply(&e1)?, &u)).max(det_res(&h));

            if let Some(ps) = &pairs {
                let (inf, zero) = (ProjPoint::infinity(), ProjPoint::zero());
                let x = ps[0];
                let g = self.transporter(transporter_pair(&x.p, &x.q)?)?;
                worst =
                    worst.max(mobius(&g, &inf)?.distance(&x.p)).max(mobius(&g, &zero)?.distance(&x.q)).max(det_res(&g));
                let y1 = ps[1].p;
                let (g, o) = transporter_triple(&x.p, &x.q, &y1)?;
                let g = self.transporter(g)?;
                worst = worst
                    .max(mobius(&g, &inf)?.distance(&x.p))
                    .max(mobius(&g, &zero)?.distance(&x.q))
                    .max(mobius(&g, &o.unit_point())?.distance(&y1))
                    .max(det_res(&g));
            }
            Ok(worst)
        })();
        measure(input, r)
    }

    fn cross_ratio_invariance(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let ps = sample_generic_pairs_ga(rng, self.cfg, 2, rej)?;
        let g = self.group(rng)?;
        let moved = ps.iter().map(|p| mobius_pair(&g, p)).collect::<Result<Vec<_>>>()?;
        if !pairs_generic(&moved, self.cfg) {
            return Ok(None);
        }
        let [a, b, c, d] = [ps[0].p, ps[0].q, ps[1].p, ps[1].q];
        let [ga, gb, gc, gd] = [moved[0].p, moved[0].q, moved[1].p, moved[1].q];
        let r = (|| {
            let before = self.cross_ratio(&a, &b, &c, &d)?;
            let after = self.cross_ratio(&ga, &gb, &gc, &gd)?;
            let same_orientation = orientation(&a, &b, &c)? == orientation(&ga, &gb, &gc)?;
            Ok(if same_orientation { rel(before, after) } else { f64::INFINITY })
        })();
        measure(format!("points={} g={g}", fmt_list(&[a, b, c, d])), r)
    }

    fn coset_independence(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let field = self.field;
        let phi = random_phi_n(rng, field);
        let g = self.group(rng)?;
        let lambda = sample_nonzero_scalar(rng, self.cfg, field);
        let n = sample_stabilizer(rng, self.cfg, SpaceTag::GN, field);
        let a_part = match field {
            Field::Real => {
                let label = sample_orbit_ga(rng, self.cfg, rej)?;
                let a = sample_stabilizer(rng, self.cfg, SpaceTag::GA, field);
                Some((label, a))
            }
            Field::Complex => None,
        };
        let mut input = format!("phi={phi:?} g={g} lambda={lambda} n={n}");
        if let Some((label, a)) = &a_part {
            input.push_str(&format!(" s={} b={} a={a}", label.orientation.sign(), label.b));
        }
        let moved = |t: &Mat2, s: &Mat2| if self.mutation == Mutation::RightCoset { s.mul(t) } else { t.mul(s) };
        let r = (|| {
            let t = delta(lambda)?;
            let mut worst = rel(beta_n_chase_via(&phi, &t, &g)?, beta_n_chase_via(&phi, &moved(&t, &n)?, &g)?);
            if let Some((label, a)) = &a_part {
                let psi = AFunctional { c: phi.c_re };
                let (_, target) = label.representative()?;
                let t = transporter_pair(&target.p, &target.q)?;
                worst = worst.max(rel(beta_a_chase_via(&psi, &t, &g)?, beta_a_chase_via(&psi, &moved(&t, a)?, &g)?));
            }
            Ok(worst)
        })();
        measure(input, r)
    }

    fn differential_identity_n(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let field = self.field;
        let phi = random_phi_n(rng, field);
        let (g0, g1) = (self.group(rng)?, self.group(rng)?);
        let lambda = sample_nonzero_scalar(rng, self.cfg, field);
        let vs = sample_generic_vectors(rng, self.cfg, field, 2, rej)?;
        let sign = self.mutation.right_sign();
        let r = (|| {
            // at the orbit representative (e1, l e2)
            let w = sign.factor(1);
            let dl = delta(-lambda)?;
            let lhs = beta_n_chase(&phi, &g1, lambda)? - beta_n_chase(&phi, &g0, lambda)?;
            let rhs = w * (alpha_g_n(&phi, &dl.mul(&g0)?, &dl.mul(&g1)?) - alpha_g_n(&phi, &g0, &g1));
            let at_rep = rel(lhs, rhs);
            // as cochains at a generic pair; alpha is induced with phi = 1, so compare with phi = 1
            let gs = [g0, g1];
            let xs = [SpacePoint::GN(vs[0]), SpacePoint::GN(vs[1])];
            let lhs = d_up(&beta_n_cochain(NFunctional::real(1.0))).eval(&gs, &xs)?;
            let rhs = d_right_with(&self.alpha_n, sign).eval(&gs, &xs)?;
            Ok(at_rep.max(rel(lhs, rhs)))
        })();
        measure(format!("phi={phi:?} g0={g0} g1={g1} lambda={lambda} u={} v={}", vs[0], vs[1]), r)
    }

    fn differential_identity_a(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let phi = random_phi_a(rng);
        let (g0, g1) = (self.group(rng)?, self.group(rng)?);
        let label = sample_orbit_ga(rng, self.cfg, rej)?;
        let ps = sample_generic_pairs_ga(rng, self.cfg, 2, rej)?;
        let sign = self.mutation.right_sign();
        let alpha = self.alpha_a.as_ref().expect("real field");
        let r = (|| {
            let w = sign.factor(1);
            let (_, target) = label.representative()?;
            let t_inv = transporter_pair(&target.p, &target.q)?.inverse();
            let (s, b) = (label.orientation, label.b);
            let lhs = beta_a_chase(&phi, &g1, s, b)? - beta_a_chase(&phi, &g0, s, b)?;
            let rhs = w * (alpha_g_a(&phi, &t_inv.mul(&g0)?, &t_inv.mul(&g1)?)? - alpha_g_a(&phi, &g0, &g1)?);
            let at_rep = rel(lhs, rhs);
            let gs = [g0, g1];
            let xs = [SpacePoint::GA(ps[0]), SpacePoint::GA(ps[1])];
            let lhs = d_up(&beta_a_cochain(AFunctional { c: 1.0 })).eval(&gs, &xs)?;
            let rhs = d_right_with(alpha, sign).eval(&gs, &xs)?;
            Ok(at_rep.max(rel(lhs, rhs)))
        })();
        let input =
            format!("c={} g0={g0} g1={g1} s={} b={} pairs={}", phi.c, label.orientation.sign(), label.b, fmt_list(&ps));
        measure(input, r)
    }

    fn closed_vs_chase_n(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let phi = random_phi_n(rng, self.field);
        let vs = sample_generic_vectors(rng, self.cfg, self.field, 2, rej)?;
        let (u, v) = (vs[0], vs[1]);
        let r = (|| {
            let g = transporter_vectors(&u, &v)?;
            let chase = beta_n_chase(&phi, &g.inverse(), det_pair(&u, &v))?;
            Ok(rel(self.beta_n_closed(&phi, &u, &v)?, chase))
        })();
        measure(format!("phi={phi:?} u={u} v={v}"), r)
    }

    fn closed_vs_chase_a(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let phi = random_phi_a(rng);
        let ps = sample_generic_pairs_ga(rng, self.cfg, 2, rej)?;
        let (x, y) = (ps[0], ps[1]);
        let r = (|| {
            let closed = self.beta_a_closed(&phi, &x, &y)?;
            let e = Mat2::identity(Field::Real);
            let chase = beta_a_cochain(phi).eval(&[e], &[SpacePoint::GA(x), SpacePoint::GA(y)])?;
            // the branch transporter of the finite-chart display for this orientation
            let branch = beta_a_chart_chase(&phi, &x, &y)?;
            Ok(rel(closed, chase).max(rel(closed, branch)))
        })();
        measure(format!("c={} x={x} y={y}", phi.c), r)
    }

    fn cocycle_n(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let vs = sample_generic_vectors(rng, self.cfg, self.field, 4, rej)?;
        let r = (|| {
            let mut worst: f64 = 0.0;
            for phi in basis_functionals(self.field) {
                worst = worst.max(alternating(&vs, |face| self.omega_n(&phi, face))?.abs());
            }
            Ok(worst)
        })();
        measure(format!("v={}", fmt_list(&vs)), r)
    }

    fn cocycle_a(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let ps = sample_generic_pairs_ga(rng, self.cfg, 4, rej)?;
        let phi = AFunctional { c: 1.0 };
        let r = (|| {
            let closed = alternating(&ps, |face| self.omega_a(&phi, face))?.abs();
            let faces = alternating(&ps, |face| self.omega_a_faces(&phi, face))?.abs();
            Ok(closed.max(faces))
        })();
        measure(format!("pairs={}", fmt_list(&ps)), r)
    }

    fn g_invariance_n(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let vs = sample_generic_vectors(rng, self.cfg, self.field, 3, rej)?;
        let g = self.group(rng)?;
        let moved = vs.iter().map(|v| g.apply(v)).collect::<Result<Vec<_>>>()?;
        if !vectors_generic(&moved, self.cfg) {
            return Ok(None);
        }
        let r = (|| {
            let mut worst: f64 = 0.0;
            for phi in basis_functionals(self.field) {
                worst = worst.max((self.omega_n(&phi, &moved)? - self.omega_n(&phi, &vs)?).abs());
            }
            Ok(worst)
        })();
        measure(format!("v={} g={g}", fmt_list(&vs)), r)
    }

    fn g_invariance_a(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let ps = sample_generic_pairs_ga(rng, self.cfg, 3, rej)?;
        let g = self.group(rng)?;
        let moved = ps.iter().map(|p| mobius_pair(&g, p)).collect::<Result<Vec<_>>>()?;
        if !pairs_generic(&moved, self.cfg) {
            return Ok(None);
        }
        let phi = AFunctional { c: 1.0 };
        let r = (|| {
            let closed = (self.omega_a(&phi, &moved)? - self.omega_a(&phi, &ps)?).abs();
            let faces = (self.omega_a_faces(&phi, &moved)? - self.omega_a_faces(&phi, &ps)?).abs();
            Ok(closed.max(faces))
        })();
        measure(format!("pairs={} g={g}", fmt_list(&ps)), r)
    }

    fn omega_constant_in_g(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let field = self.field;
        let vs = sample_generic_vectors(rng, self.cfg, field, 3, rej)?;
        let g = self.group(rng)?;
        let ps = match field {
            Field::Real => Some(sample_generic_pairs_ga(rng, self.cfg, 3, rej)?),
            Field::Complex => None,
        };
        let sign = self.mutation.right_sign();
        let mut input = format!("v={} g={g}", fmt_list(&vs));
        if let Some(ps) = &ps {
            input.push_str(&format!(" pairs={}", fmt_list(ps)));
        }
        let r = (|| {
            let e = Mat2::identity(field);
            let mut worst: f64 = 0.0;
            let xs = vs.iter().map(|v| SpacePoint::GN(*v)).collect::<Vec<_>>();
            for phi in basis_functionals(field) {
                let chase = crate::kernel::omega_n_chase(phi, sign);
                let at_e = chase.eval(&[e], &xs)?;
                let at_g = chase.eval(&[g], &xs)?;
                worst = worst.max((at_g - at_e).abs()).max((at_e - self.omega_n(&phi, &vs)?).abs());
            }
            if let Some(ps) = &ps {
                let phi = AFunctional { c: 1.0 };
                let chase = omega_a_chase(phi, sign);
                let xs = ps.iter().map(|p| SpacePoint::GA(*p)).collect::<Vec<_>>();
                let at_e = chase.eval(&[e], &xs)?;
                let at_g = chase.eval(&[g], &xs)?;
                let closed = 2.0 * self.omega_a(&phi, ps)? - 0.5 * phi.eval(std::f64::consts::LN_2);
                worst = worst.max((at_g - at_e).abs()).max((at_e - closed).abs());
            }
            Ok(worst)
        })();
        measure(input, r)
    }

    fn sign_flip(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let ps = sample_generic_pairs_ga(rng, self.cfg, 3, rej)?;
        let phi = random_phi_a(rng);
        let r = (|| {
            let derived = self.omega_a(&phi, &ps)?;
            let stated = omega_a_theorem(&phi, &ps[0], &ps[1], &ps[2])?;
            Ok((derived + stated).abs())
        })();
        measure(format!("c={} pairs={}", phi.c, fmt_list(&ps)), r)
    }

    fn linearity(&self, rng: &mut ChaCha8Rng, rej: &mut u64) -> Result<Option<Trial>> {
        let field = self.field;
        let (p1, p2) = (random_phi_n(rng, field), random_phi_n(rng, field));
        let (s, t): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (g0, g1) = (self.group(rng)?, self.group(rng)?);
        let vs = sample_generic_vectors(rng, self.cfg, field, 3, rej)?;
        let ps = match field {
            Field::Real => Some(sample_generic_pairs_ga(rng, self.cfg, 3, rej)?),
            Field::Complex => None,
        };
        let (cs, ct) = self.combine_coeffs(s, t);
        let mut input = format!("phi1={p1:?} phi2={p2:?} s={s} t={t} g0={g0} g1={g1} v={}", fmt_list(&vs));
        if let Some(ps) = &ps {
            input.push_str(&format!(" pairs={}", fmt_list(ps)));
        }
        let check = |f: &dyn Fn(f64, f64) -> Result<(f64, f64, f64)>| -> Result<f64> {
            let (mixed, a, b) = f(cs, ct)?;
            let want = s * a + t * b;
            Ok((mixed - want).abs() / 1f64.max((s * a).abs() + (t * b).abs()))
        };
        let r = (|| {
            let mix_n = |cs: f64, ct: f64| p1.combine(cs, &p2, ct);
            let mut worst = check(&|cs, ct| {
                let m = mix_n(cs, ct);
                Ok((alpha_g_n(&m, &g0, &g1), alpha_g_n(&p1, &g0, &g1), alpha_g_n(&p2, &g0, &g1)))
            })?;
            worst = worst.max(check(&|cs, ct| {
                let m = mix_n(cs, ct);
                Ok((
                    beta_n_closed(&m, &vs[0], &vs[1])?,
                    beta_n_closed(&p1, &vs[0], &vs[1])?,
                    beta_n_closed(&p2, &vs[0], &vs[1])?,
                ))
            })?);
            worst = worst.max(check(&|cs, ct| {
                let m = mix_n(cs, ct);
                Ok((self.omega_n(&m, &vs)?, self.omega_n(&p1, &vs)?, self.omega_n(&p2, &vs)?))
            })?);
            if let Some(ps) = &ps {
                let (q1, q2) = (AFunctional { c: p1.c_re }, AFunctional { c: p2.c_re });
                let mix_a = |cs: f64, ct: f64| q1.combine(cs, &q2, ct);
                worst = worst.max(check(&|cs, ct| {
                    let m = mix_a(cs, ct);
                    Ok((alpha_g_a(&m, &g0, &g1)?, alpha_g_a(&q1, &g0, &g1)?, alpha_g_a(&q2, &g0, &g1)?))
                })?);
                worst = worst.max(check(&|cs, ct| {
                    let m = mix_a(cs, ct);
                    let b = |q: &AFunctional| beta_a_closed(q, &ps[0], &ps[1]);
                    Ok((b(&m)?, b(&q1)?, b(&q2)?))
                })?);
                worst = worst.max(check(&|cs, ct| {
                    let m = mix_a(cs, ct);
                    Ok((self.omega_a(&m, ps)?, self.omega_a(&q1, ps)?, self.omega_a(&q2, ps)?))
                })?);
            }
            Ok(worst)
        })();
        measure(input, r)
    }
}
