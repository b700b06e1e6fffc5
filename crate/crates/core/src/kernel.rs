//! The explicit cocycles and the diagram chase that produces them.
//!
//! Starting from a homomorphism on the Lie algebra of the stabilizer, `alpha_G`
//! is its pullback along the Iwasawa projection, `beta` solves
//! `d_up beta = d_right alpha_G`, and `omega = d_right beta` is a cocycle on
//! triples of points of `G/N` or `G/A` that does not depend on the group slot.

use crate::cochain::{d_right_with, induce_ga, induce_gn, Cochain, GroupFunction, RightSign};
use crate::error::{CocycleError, Result};
use crate::field::{Field, Scalar};
use crate::sl2::{
    bracket, delta, det_pair, hermitian, mobius, project_a, project_n, transporter_pair, transporter_triple, Mat2,
    Orientation, PairGA, ProjPoint, Vec2,
};
use crate::spaces::{generic_vec_pair, orbit_invariant_ga, GenericityConfig, OrbitInvariantGA, SpacePoint, SpaceTag};
use crate::tolerance::LOG_ARG_MIN;
use std::sync::Arc;

/// A real-linear functional on `n = K`: `z -> c_re Re z + c_im Im z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NFunctional {
    pub c_re: f64,
    pub c_im: f64,
}

impl NFunctional {
    pub fn new(c_re: f64, c_im: f64) -> Result<Self> {
        for c in [c_re, c_im] {
            if !c.is_finite() {
                return Err(CocycleError::NonFinite(c));
            }
        }
        Ok(NFunctional { c_re, c_im })
    }

    pub fn real(c: f64) -> Self {
        NFunctional { c_re: c, c_im: 0.0 }
    }

    pub fn eval(&self, z: Scalar) -> f64 {
        self.c_re * z.re() + self.c_im * z.im()
    }

    /// `s self + t other`.
    pub fn combine(&self, s: f64, other: &NFunctional, t: f64) -> NFunctional {
        NFunctional { c_re: s * self.c_re + t * other.c_re, c_im: s * self.c_im + t * other.c_im }
    }
}

/// A linear functional on `a = R`, evaluated on `log l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AFunctional {
    pub c: f64,
}

impl AFunctional {
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(CocycleError::NonFinite(c));
        }
        Ok(AFunctional { c })
    }

    pub fn eval(&self, log_lambda: f64) -> f64 {
        self.c * log_lambda
    }

    pub fn combine(&self, s: f64, other: &AFunctional, t: f64) -> AFunctional {
        AFunctional { c: s * self.c + t * other.c }
    }
}

// ---------------------------------------------------------------- G/N

pub fn alpha_g_n(phi: &NFunctional, g0: &Mat2, g1: &Mat2) -> f64 {
    phi.eval(project_n(g1)) - phi.eval(project_n(g0))
}

/// `beta(g)(l) = alpha_G(d_{-l}, d_{-l} g) - alpha_G(e, g)`.
pub fn beta_n_chase(phi: &NFunctional, g: &Mat2, lambda: Scalar) -> Result<f64> {
    beta_n_chase_via(phi, &delta(lambda)?, g)
}

/// The same combination for an arbitrary transporter `t` from `e1` to `l e2`;
/// `delta(l)` is one choice, `delta(l) n` for `n` in `N` is any other.
pub fn beta_n_chase_via(phi: &NFunctional, t: &Mat2, g: &Mat2) -> Result<f64> {
    let t_inv = t.inverse();
    let e = Mat2::identity(g.field().join(t.field()));
    Ok(alpha_g_n(phi, &t_inv, &t_inv.mul(g)?) - alpha_g_n(phi, &e, g))
}

/// `phi(<u, v> / (d |v|^2)) + phi(<v, u> / (d |u|^2))` with `d = det(u|v)`.
pub fn beta_n_closed(phi: &NFunctional, u: &Vec2, v: &Vec2) -> Result<f64> {
    let d = det_pair(u, v);
    let cfg = GenericityConfig::default();
    if !generic_vec_pair(u, v, &cfg) {
        return Err(CocycleError::DependentPair { det: d.abs(), margin: cfg.indep_margin * u.norm() * v.norm() });
    }
    let first = hermitian(u, v) / d.scale(v.norm_sqr());
    let second = hermitian(v, u) / d.scale(u.norm_sqr());
    Ok(phi.eval(first) + phi.eval(second))
}

/// The three face values `beta(v1, v2)`, `beta(v0, v2)`, `beta(v0, v1)`.
pub fn omega_n_faces(phi: &NFunctional, v0: &Vec2, v1: &Vec2, v2: &Vec2) -> Result<[f64; 3]> {
    Ok([beta_n_closed(phi, v1, v2)?, beta_n_closed(phi, v0, v2)?, beta_n_closed(phi, v0, v1)?])
}

pub fn omega_n(phi: &NFunctional, v0: &Vec2, v1: &Vec2, v2: &Vec2) -> Result<f64> {
    let [f12, f02, f01] = omega_n_faces(phi, v0, v1, v2)?;
    Ok(-f12 + f02 - f01)
}

/// `alpha_G` as an element of `C^{1,1}` over `G/N`.
pub fn alpha_g_n_cochain(phi: NFunctional, field: Field) -> Result<Cochain> {
    let f: GroupFunction = Arc::new(move |gs: &[Mat2]| Ok(alpha_g_n(&phi, &gs[0], &gs[1])));
    induce_gn(f, 1, field)
}

/// `beta` as an element of `C^{0,2}`: `(g; u, v) -> beta(g_{u,v}^-1 g)(d_{u,v})`.
pub fn beta_n_cochain(phi: NFunctional) -> Cochain {
    Cochain::new(0, 2, SpaceTag::GN, move |gs, xs| {
        let (u, v) = gn_pair(&xs[0], &xs[1])?;
        let d = det_pair(u, v);
        let t = crate::sl2::transporter_vectors(u, v)?;
        beta_n_chase(&phi, &t.inverse().mul(&gs[0])?, d)
    })
}

/// `d_right beta` in `C^{0,3}`.
pub fn omega_n_chase(phi: NFunctional, sign: RightSign) -> Cochain {
    d_right_with(&beta_n_cochain(phi), sign)
}

fn gn_pair<'a>(x: &'a SpacePoint, y: &'a SpacePoint) -> Result<(&'a Vec2, &'a Vec2)> {
    match (x.as_gn(), y.as_gn()) {
        (Some(u), Some(v)) => Ok((u, v)),
        _ => Err(CocycleError::DegenerateConfiguration("expected points of G/N".into())),
    }
}

// ---------------------------------------------------------------- G/A

pub fn alpha_g_a(phi: &AFunctional, g0: &Mat2, g1: &Mat2) -> Result<f64> {
    Ok(phi.eval(project_a(g1)?) - phi.eval(project_a(g0)?))
}

/// `beta(g)(s, b) = alpha_G(g_{s,b}^-1, g_{s,b}^-1 g) - alpha_G(e, g)`.
pub fn beta_a_chase(phi: &AFunctional, g: &Mat2, orientation: Orientation, b: f64) -> Result<f64> {
    let label = OrbitInvariantGA::new(orientation, b)?;
    let (_, target) = label.representative()?;
    let t = transporter_pair(&target.p, &target.q)?;
    beta_a_chase_via(phi, &t, g)
}

/// The same combination for an arbitrary transporter `t` from `(inf, 0)` to `(s, b)`.
pub fn beta_a_chase_via(phi: &AFunctional, t: &Mat2, g: &Mat2) -> Result<f64> {
    let t_inv = t.inverse();
    let e = Mat2::identity(Field::Real);
    Ok(alpha_g_a(phi, &t_inv, &t_inv.mul(g)?)? - alpha_g_a(phi, &e, g)?)
}

fn guarded_ln(arg: f64, what: &str) -> Result<f64> {
    if !(arg >= LOG_ARG_MIN) || !arg.is_finite() {
        return Err(CocycleError::DegenerateConfiguration(format!(
            "{what}: log argument {arg:e} outside [{LOG_ARG_MIN:e}, inf)"
        )));
    }
    Ok(arg.ln())
}

/// `1/2 c ln(2 (x1^2+1)(x2-y1)^2 / ((y1^2+1)(x1-x2)^2))`, independent of `y2`
/// and of the orientation of `(x1, x2, y1)`.
///
/// Evaluated on unit-norm homogeneous coordinates, where `x^2 + 1` and `x - y`
/// become `1/|x^|^2` and brackets, so points at infinity need no special case.
pub fn beta_a_closed(phi: &AFunctional, x: &PairGA, y: &PairGA) -> Result<f64> {
    beta_a_closed_scaled(phi, x, y, 0.5)
}

/// `beta_a_closed` with the leading `1/2` replaced by `prefactor`.
pub fn beta_a_closed_scaled(phi: &AFunctional, x: &PairGA, y: &PairGA, prefactor: f64) -> Result<f64> {
    let cfg = GenericityConfig::default();
    if !crate::spaces::generic_pair_of_pairs(x, y, &cfg) {
        return Err(CocycleError::DegenerateConfiguration(format!("pairs {x} and {y} share a point")));
    }
    let num = bracket(&x.q, &y.p);
    let den = bracket(&x.p, &x.q);
    let arg = 2.0 * num * num / (den * den);
    Ok(prefactor * phi.eval(guarded_ln(arg, "beta_A")?))
}

/// `[x2, y1, y2, z1] - 1`, through the identity `[a,b,c,d] - 1 = (a-b)(c-d) / ((b-c)(a-d))`.
pub fn shifted_cross_ratio(x: &PairGA, y: &PairGA, z: &PairGA) -> Result<f64> {
    let pts = [x.p, x.q, y.p, y.q, z.p, z.q];
    let cfg = GenericityConfig::default();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if a.distance(b) < cfg.distinct_margin {
                return Err(CocycleError::DegenerateConfiguration(format!("points {a} and {b} coincide")));
            }
        }
    }
    Ok(bracket(&x.q, &y.p) * bracket(&y.q, &z.p) / (bracket(&y.p, &y.q) * bracket(&x.q, &z.p)))
}

/// `-1/2 c ln |[x2, y1, y2, z1] - 1|`.
pub fn omega_a(phi: &AFunctional, x: &PairGA, y: &PairGA, z: &PairGA) -> Result<f64> {
    let s = shifted_cross_ratio(x, y, z)?;
    Ok(-0.5 * phi.eval(guarded_ln(s.abs(), "omega_A")?))
}

/// The same cocycle with the opposite global sign, `+1/2 c ln |[x2, y1, y2, z1] - 1|`.
pub fn omega_a_theorem(phi: &AFunctional, x: &PairGA, y: &PairGA, z: &PairGA) -> Result<f64> {
    let s = shifted_cross_ratio(x, y, z)?;
    Ok(0.5 * phi.eval(guarded_ln(s.abs(), "omega_A")?))
}

/// What `d_right beta` evaluates to with `beta_a_closed` on the faces:
/// `2 omega_A - 1/2 c ln 2`. The constant is a coboundary-free shift on
/// triples and the factor two comes from the squares in `beta_a_closed`.
pub fn omega_a_chase_value(phi: &AFunctional, x: &PairGA, y: &PairGA, z: &PairGA) -> Result<f64> {
    Ok(2.0 * omega_a(phi, x, y, z)? - 0.5 * phi.eval(std::f64::consts::LN_2))
}

/// `alpha_G` as an element of `C^{1,1}` over `G/A`.
pub fn alpha_g_a_cochain(phi: AFunctional) -> Result<Cochain> {
    let f: GroupFunction = Arc::new(move |gs: &[Mat2]| alpha_g_a(&phi, &gs[0], &gs[1]));
    induce_ga(f, 1)
}

/// The transporter `g_{x1,x2,y1}` together with the orbit label of `(x, y)`.
pub fn ga_chart(x: &PairGA, y: &PairGA) -> Result<(Mat2, OrbitInvariantGA)> {
    let label = orbit_invariant_ga(x, y, &GenericityConfig::default())?;
    let (g, o) = transporter_triple(&x.p, &x.q, &y.p)?;
    if o != label.orientation {
        return Err(CocycleError::DegenerateConfiguration(format!(
            "orientation of ({}, {}, {}) is ambiguous",
            x.p, x.q, y.p
        )));
    }
    Ok((g, label))
}

/// `beta` as an element of `C^{0,2}`: `(g; x, y) -> beta(g_{x1,x2,y1}^-1 g)(s, b)`.
pub fn beta_a_cochain(phi: AFunctional) -> Cochain {
    Cochain::new(0, 2, SpaceTag::GA, move |gs, xs| {
        let (x, y) = match (xs[0].as_ga(), xs[1].as_ga()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(CocycleError::DegenerateConfiguration("expected points of G/A".into())),
        };
        let (t, label) = ga_chart(x, y)?;
        beta_a_chase(&phi, &t.inverse().mul(&gs[0])?, label.orientation, label.b)
    })
}

pub fn omega_a_chase(phi: AFunctional, sign: RightSign) -> Cochain {
    d_right_with(&beta_a_cochain(phi), sign)
}

/// The finite-chart transporter `[[c x1, -x2/(c(x2-x1))], [c, -1/(c(x2-x1))]]`
/// of the branch selected by the orientation of `(x1, x2, y1)`.
pub fn chart_transporter(x1: f64, x2: f64, y1: f64) -> Result<(Mat2, Orientation)> {
    let o = crate::sl2::orientation(&ProjPoint::finite(x1)?, &ProjPoint::finite(x2)?, &ProjPoint::finite(y1)?)?;
    let c = crate::sl2::branch_scale(x1, x2, y1, o).ok_or(CocycleError::DegenerateTriple(0.0))?;
    let w = c * (x2 - x1);
    Ok((Mat2::real(c * x1, -x2 / w, c, -1.0 / w)?, o))
}

/// `beta(e)(x, y)` through the finite-chart transporter: requires finite `x1, x2, y1`.
pub fn beta_a_chart_chase(phi: &AFunctional, x: &PairGA, y: &PairGA) -> Result<f64> {
    let coord =
        |p: &ProjPoint| p.to_finite().ok_or_else(|| CocycleError::DegenerateConfiguration("point at infinity".into()));
    let (g, o) = chart_transporter(coord(&x.p)?, coord(&x.q)?, coord(&y.p)?)?;
    let b = mobius(&g.inverse(), &y.q)?
        .to_finite()
        .ok_or_else(|| CocycleError::DegenerateConfiguration("y2 collides with x1".into()))?;
    beta_a_chase(phi, &g.inverse(), o, b)
}
