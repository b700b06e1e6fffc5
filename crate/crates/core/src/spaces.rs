//! The homogeneous spaces `G/N` (the punctured plane) and `G/A` (ordered pairs
//! of distinct points of the projective line): genericity predicates, orbit
//! invariants of pairs, and transporters from the basepoint.

use std::fmt;

use crate::error::{CocycleError, Result};
use crate::field::{Field, Scalar};
use crate::sl2::{
    bracket, cross_ratio, det_pair, mobius_pair, orientation, transporter_pair, Mat2, Orientation, PairGA, ProjPoint,
    Vec2,
};
use crate::tolerance::{DISTINCT_MARGIN, INDEP_MARGIN, NONZERO_MARGIN, SAMPLING_MARGIN};

/// Margins implementing "almost every configuration".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericityConfig {
    /// Relative independence margin for vector pairs: `|det(u|v)| >= m |u| |v|`.
    pub indep_margin: f64,
    /// Lower bound on projective distances.
    pub distinct_margin: f64,
    /// Lower bound on `|det(y1|x2) det(x1|y1) det(x1|x2)|` when an orientation is read off.
    pub orientation_margin: f64,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig {
            indep_margin: INDEP_MARGIN,
            distinct_margin: DISTINCT_MARGIN,
            orientation_margin: DISTINCT_MARGIN.powi(3),
        }
    }
}

impl GenericityConfig {
    /// The margins the harness samplers use.
    pub fn sampling() -> Self {
        Self::uniform(SAMPLING_MARGIN)
    }

    /// Same margin `m` for independence and distinctness, `m^3` for orientation.
    pub fn uniform(m: f64) -> Self {
        GenericityConfig { indep_margin: m, distinct_margin: m, orientation_margin: m.powi(3) }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, m) in [
            ("indep_margin", self.indep_margin),
            ("distinct_margin", self.distinct_margin),
            ("orientation_margin", self.orientation_margin),
        ] {
            if !(m > 0.0 && m.is_finite()) {
                return Err(CocycleError::InvalidConfig(format!("{name} must be positive, got {m}")));
            }
        }
        Ok(())
    }
}

pub fn generic_vec_pair(u: &Vec2, v: &Vec2, cfg: &GenericityConfig) -> bool {
    det_pair(u, v).abs() >= cfg.indep_margin * u.norm() * v.norm()
}

/// `d_{u,v}`, which labels the orbit of `(u, v)` through its representative `(e1, d e2)`.
pub fn orbit_parameter_n(u: &Vec2, v: &Vec2, cfg: &GenericityConfig) -> Result<Scalar> {
    let d = det_pair(u, v);
    if !generic_vec_pair(u, v, cfg) {
        return Err(CocycleError::DependentPair { det: d.abs(), margin: cfg.indep_margin * u.norm() * v.norm() });
    }
    Ok(d)
}

/// All four points of the two pairs are distinct by margin.
pub fn generic_pair_of_pairs(x: &PairGA, y: &PairGA, cfg: &GenericityConfig) -> bool {
    let pts = [x.p, x.q, y.p, y.q];
    pts.iter().enumerate().all(|(i, a)| pts[i + 1..].iter().all(|b| a.distance(b) >= cfg.distinct_margin))
}

/// Orbit label of a generic pair of pairs: the orientation `s` of `(x1, x2, y1)`
/// and the last coordinate `b` of the normal form `(inf, 0, s, b)`.
///
/// Since `[inf, 0, -1, b] = -b`, the coordinate is `b = s * [x1, x2, y1, y2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitInvariantGA {
    pub orientation: Orientation,
    pub b: f64,
}

impl OrbitInvariantGA {
    pub fn new(orientation: Orientation, b: f64) -> Result<Self> {
        let s = orientation.sign();
        if !b.is_finite() {
            return Err(CocycleError::NonFinite(b));
        }
        if b.abs() < NONZERO_MARGIN || (b - s).abs() < NONZERO_MARGIN {
            return Err(CocycleError::DegenerateConfiguration(format!(
                "orbit coordinate b = {b} collides with 0 or {s}"
            )));
        }
        Ok(OrbitInvariantGA { orientation, b })
    }

    /// The cross ratio `[x1, x2, y1, y2]` of any pair of pairs in this orbit.
    pub fn cross_ratio(&self) -> f64 {
        self.orientation.sign() * self.b
    }

    /// The normal form `((inf, 0), (s, b))`.
    pub fn representative(&self) -> Result<(PairGA, PairGA)> {
        Ok((PairGA::basepoint(), PairGA::new(self.orientation.unit_point(), ProjPoint::finite(self.b)?)?))
    }
}

pub fn orbit_invariant_ga(x: &PairGA, y: &PairGA, cfg: &GenericityConfig) -> Result<OrbitInvariantGA> {
    if !generic_pair_of_pairs(x, y, cfg) {
        return Err(CocycleError::DegenerateConfiguration(format!("pairs {x} and {y} share a point")));
    }
    let strength = (bracket(&y.p, &x.q) * bracket(&x.p, &y.p) * bracket(&x.p, &x.q)).abs();
    if strength < cfg.orientation_margin {
        return Err(CocycleError::DegenerateConfiguration(format!("orientation strength {strength:e} below margin")));
    }
    let o = orientation(&x.p, &x.q, &y.p)?;
    let cr = cross_ratio(&x.p, &x.q, &y.p, &y.q)?;
    OrbitInvariantGA::new(o, o.sign() * cr)
}

/// `h_v = [[v1, -conj(v2)/|v|^2], [v2, conj(v1)/|v|^2]]`, so `h_v e1 = v` and `det h_v = 1`.
pub fn transporter_to_gn_point(v: &Vec2) -> Result<Mat2> {
    let n2 = v.norm_sqr();
    if n2 < NONZERO_MARGIN {
        return Err(CocycleError::ZeroVector(n2));
    }
    let [v1, v2] = v.components();
    Mat2::with_field([v1, (-v2.conj()).scale(1.0 / n2), v2, v1.conj().scale(1.0 / n2)], v.field())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    /// The punctured plane, stabilizer `N`.
    GN,
    /// Distinct ordered pairs in the projective line, stabilizer `A`.
    GA,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceTag::GN => "G/N",
            SpaceTag::GA => "G/A",
        })
    }
}

/// A point of one of the two homogeneous spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpacePoint {
    GN(Vec2),
    GA(PairGA),
}

impl SpacePoint {
    pub fn tag(&self) -> SpaceTag {
        match self {
            SpacePoint::GN(_) => SpaceTag::GN,
            SpacePoint::GA(_) => SpaceTag::GA,
        }
    }

    /// `e1` or `(inf, 0)`.
    pub fn basepoint(tag: SpaceTag, field: Field) -> SpacePoint {
        match tag {
            SpaceTag::GN => SpacePoint::GN(Vec2::e1(field)),
            SpaceTag::GA => SpacePoint::GA(PairGA::basepoint()),
        }
    }

    pub fn act(&self, g: &Mat2) -> Result<SpacePoint> {
        Ok(match self {
            SpacePoint::GN(v) => SpacePoint::GN(g.apply(v)?),
            SpacePoint::GA(x) => SpacePoint::GA(mobius_pair(g, x)?),
        })
    }

    /// Some `h` with `h . basepoint = self`.
    pub fn transporter(&self) -> Result<Mat2> {
        match self {
            SpacePoint::GN(v) => transporter_to_gn_point(v),
            SpacePoint::GA(x) => transporter_pair(&x.p, &x.q),
        }
    }

    pub fn as_gn(&self) -> Option<&Vec2> {
        match self {
            SpacePoint::GN(v) => Some(v),
            SpacePoint::GA(_) => None,
        }
    }

    pub fn as_ga(&self) -> Option<&PairGA> {
        match self {
            SpacePoint::GA(x) => Some(x),
            SpacePoint::GN(_) => None,
        }
    }
}

impl fmt::Display for SpacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacePoint::GN(v) => write!(f, "{v}"),
            SpacePoint::GA(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(x: f64) -> ProjPoint {
        ProjPoint::finite(x).unwrap()
    }

    #[test]
    fn vector_pair_genericity() {
        let cfg = GenericityConfig::default();
        let e1 = Vec2::e1(Field::Real);
        let e2 = Vec2::e2(Field::Real);
        assert!(generic_vec_pair(&e1, &e2, &cfg));
        let u = Vec2::real(0.3, -1.2).unwrap();
        assert!(!generic_vec_pair(&u, &u.scale(Scalar::real(2.0)).unwrap(), &cfg));
        let near = Vec2::real(1.0, 1e-7).unwrap();
        assert!(!generic_vec_pair(&e1, &near, &cfg));
        let far = Vec2::real(1.0, 1e-5).unwrap();
        assert!(generic_vec_pair(&e1, &far, &cfg));
    }

    #[test]
    fn independence_margin_is_relative() {
        let cfg = GenericityConfig::default();
        let big = Vec2::real(1e6, 0.0).unwrap();
        let tilted = Vec2::real(1e6, 0.5).unwrap();
        // absolute det is 5e5 but the angle is 5e-7
        assert!(!generic_vec_pair(&big, &tilted, &cfg));
    }

    #[test]
    fn orbit_parameter_examples() {
        let cfg = GenericityConfig::default();
        let e1 = Vec2::e1(Field::Real);
        let l = Scalar::real(-1.75);
        assert_eq!(orbit_parameter_n(&e1, &Vec2::e2(Field::Real).scale(l).unwrap(), &cfg).unwrap(), l);
        let u = Vec2::real(1.0, 1.0).unwrap();
        let v = Vec2::real(0.0, 1.0).unwrap();
        assert_eq!(orbit_parameter_n(&u, &v, &cfg).unwrap(), Scalar::ONE);
        let g = Mat2::real(2.0, 3.0, 1.0, 2.0).unwrap();
        let d = orbit_parameter_n(&g.apply(&u).unwrap(), &g.apply(&v).unwrap(), &cfg).unwrap();
        assert_abs_diff_eq!(d.re(), 1.0, epsilon = 1e-14);
        assert!(matches!(orbit_parameter_n(&u, &u, &cfg), Err(CocycleError::DependentPair { .. })));
    }

    #[test]
    fn pair_of_pairs_genericity() {
        let cfg = GenericityConfig::default();
        let base = PairGA::basepoint();
        assert!(generic_pair_of_pairs(&base, &PairGA::finite(1.0, 2.0).unwrap(), &cfg));
        assert!(!generic_pair_of_pairs(&base, &PairGA::finite(0.0, 2.0).unwrap(), &cfg));
        // a point within 1e-7 of infinity
        let near_inf = PairGA::new(ProjPoint::new(1.0, 1e-7).unwrap(), pt(2.0)).unwrap();
        assert!(!generic_pair_of_pairs(&base, &near_inf, &cfg));
    }

    #[test]
    fn orbit_invariant_normal_forms() {
        let cfg = GenericityConfig::default();
        let base = PairGA::basepoint();
        for b in [2.5, -0.3, 7.0] {
            let inv = orbit_invariant_ga(&base, &PairGA::finite(1.0, b).unwrap(), &cfg).unwrap();
            assert_eq!(inv.orientation, Orientation::Positive);
            assert_abs_diff_eq!(inv.b, b, epsilon = 1e-13);
            let inv = orbit_invariant_ga(&base, &PairGA::finite(-1.0, b).unwrap(), &cfg).unwrap();
            assert_eq!(inv.orientation, Orientation::Negative);
            assert_abs_diff_eq!(inv.b, b, epsilon = 1e-13);
        }
        assert!(orbit_invariant_ga(&base, &PairGA::finite(0.0, 2.0).unwrap(), &cfg).is_err());
    }

    #[test]
    fn orbit_invariant_is_g_invariant() {
        let cfg = GenericityConfig::default();
        let x = PairGA::finite(0.2, -1.4).unwrap();
        let y = PairGA::finite(3.1, 0.9).unwrap();
        let g = Mat2::real(1.5, -0.4, 2.0, 0.1333333333333333).unwrap();
        let before = orbit_invariant_ga(&x, &y, &cfg).unwrap();
        let after = orbit_invariant_ga(&mobius_pair(&g, &x).unwrap(), &mobius_pair(&g, &y).unwrap(), &cfg).unwrap();
        assert_eq!(before.orientation, after.orientation);
        assert_abs_diff_eq!(before.b, after.b, epsilon = 1e-12);
    }

    #[test]
    fn gn_transporters() {
        assert_eq!(transporter_to_gn_point(&Vec2::e1(Field::Real)).unwrap(), Mat2::identity(Field::Real));
        assert_eq!(transporter_to_gn_point(&Vec2::e2(Field::Real)).unwrap(), Mat2::real(0.0, -1.0, 1.0, 0.0).unwrap());
        let v = Vec2::new(Scalar::complex(0.4, -2.0), Scalar::complex(1.5, 0.25)).unwrap();
        let h = transporter_to_gn_point(&v).unwrap();
        assert!((h.det() - Scalar::ONE).abs() < 1e-14);
        let image = h.apply(&Vec2::e1(Field::Complex)).unwrap();
        assert!(image.distance(&v) <= 1e-12 * v.norm());
    }

    #[test]
    fn margins_validate() {
        assert!(GenericityConfig::default().validate().is_ok());
        let bad = GenericityConfig { indep_margin: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
