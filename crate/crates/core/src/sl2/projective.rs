//! The real projective line: points, the Moebius action, cross ratio and orientation.

use std::fmt;

use crate::error::{CocycleError, Result};
use crate::field::Field;
use crate::sl2::matrix::Mat2;
use crate::tolerance::{CHART_BOUND, DISTINCT_MARGIN};

/// A point `[a:b]` of the real projective line, normalized to `a^2 + b^2 = 1`
/// with the first nonzero coordinate positive. `inf = [1:0]`, `x = [x:1]`.
#[derive(Clone, Copy, PartialEq)]
pub struct ProjPoint {
    a: f64,
    b: f64,
}

impl ProjPoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for x in [a, b] {
            if !x.is_finite() {
                return Err(CocycleError::NonFinite(x));
            }
        }
        let r = a.hypot(b);
        if r < f64::MIN_POSITIVE.sqrt() {
            return Err(CocycleError::DegenerateConfiguration("projective point [0:0]".into()));
        }
        let (mut a, mut b) = (a / r, b / r);
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
        }
        // canonical zero avoids -0.0 / 0.0 mismatches in equality
        Ok(ProjPoint { a: a + 0.0, b: b + 0.0 })
    }

    pub fn finite(x: f64) -> Result<Self> {
        ProjPoint::new(x, 1.0)
    }

    pub fn infinity() -> Self {
        ProjPoint { a: 1.0, b: 0.0 }
    }

    pub fn zero() -> Self {
        ProjPoint { a: 0.0, b: 1.0 }
    }

    pub fn coords(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn is_infinity(&self) -> bool {
        self.b == 0.0
    }

    /// Affine coordinate `a/b`, or `None` at infinity.
    pub fn to_finite(&self) -> Option<f64> {
        (self.b != 0.0).then(|| self.a / self.b)
    }

    /// Representative `(x, 1)` in the finite chart, falling back to `(1, 1/x)`
    /// for `|x| > CHART_BOUND` and at infinity.
    pub fn chart_rep(&self) -> (f64, f64) {
        if self.a.abs() <= CHART_BOUND * self.b.abs() {
            (self.a / self.b, 1.0)
        } else {
            (1.0, self.b / self.a)
        }
    }

    /// Projective distance `|det(p|q)|` of the normalized coordinates.
    pub fn distance(&self, other: &ProjPoint) -> f64 {
        bracket(self, other).abs()
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_finite() {
            Some(x) => write!(f, "{x}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Signed bracket `det(p|q) = p.a q.b - p.b q.a`; equals `x - y` on the chart.
pub fn bracket(p: &ProjPoint, q: &ProjPoint) -> f64 {
    p.a * q.b - p.b * q.a
}

pub(crate) fn bracket_rep(p: (f64, f64), q: (f64, f64)) -> f64 {
    p.0 * q.1 - p.1 * q.0
}

/// A point of G/A: an ordered pair of distinct points of the projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGA {
    pub p: ProjPoint,
    pub q: ProjPoint,
}

impl PairGA {
    pub fn new(p: ProjPoint, q: ProjPoint) -> Result<Self> {
        Self::with_margin(p, q, DISTINCT_MARGIN)
    }

    pub fn with_margin(p: ProjPoint, q: ProjPoint, margin: f64) -> Result<Self> {
        let distance = p.distance(&q);
        if distance < margin {
            return Err(CocycleError::CoincidentPoints { distance, margin });
        }
        Ok(PairGA { p, q })
    }

    /// The basepoint `(inf, 0)`.
    pub fn basepoint() -> Self {
        PairGA { p: ProjPoint::infinity(), q: ProjPoint::zero() }
    }

    pub fn finite(x: f64, y: f64) -> Result<Self> {
        PairGA::new(ProjPoint::finite(x)?, ProjPoint::finite(y)?)
    }
}

impl fmt::Display for PairGA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Action of a real unimodular matrix on the projective line.
pub fn mobius(g: &Mat2, p: &ProjPoint) -> Result<ProjPoint> {
    if g.field() != Field::Real {
        return Err(CocycleError::FieldMismatch { expected: Field::Real, found: g.field() });
    }
    let [a, b, c, d] = g.entries().map(|s| s.re());
    ProjPoint::new(a * p.a + b * p.b, c * p.a + d * p.b)
}

pub fn mobius_pair(g: &Mat2, x: &PairGA) -> Result<PairGA> {
    Ok(PairGA { p: mobius(g, &x.p)?, q: mobius(g, &x.q)? })
}

pub(crate) fn check_distinct(points: &[ProjPoint], margin: f64) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let distance = p.distance(q);
            if !(distance >= margin) {
                return Err(CocycleError::CoincidentPoints { distance, margin });
            }
        }
    }
    Ok(())
}

/// Cross ratio normalized so that `[inf, 0, 1, b] = b`:
/// `det(a|c) det(b|d) / (det(b|c) det(a|d))`.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<f64> {
    check_distinct(&[*a, *b, *c, *d], DISTINCT_MARGIN)?;
    Ok(bracket(a, c) * bracket(b, d) / (bracket(b, c) * bracket(a, d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Option<Self> {
        if s > 0.0 {
            Some(Orientation::Positive)
        } else if s < 0.0 {
            Some(Orientation::Negative)
        } else {
            None
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    /// The third point of the normal form `(inf, 0, +-1)`.
    pub fn unit_point(self) -> ProjPoint {
        match self {
            Orientation::Positive => {
                ProjPoint { a: std::f64::consts::FRAC_1_SQRT_2, b: std::f64::consts::FRAC_1_SQRT_2 }
            }
            Orientation::Negative => {
                ProjPoint { a: std::f64::consts::FRAC_1_SQRT_2, b: -std::f64::consts::FRAC_1_SQRT_2 }
            }
        }
    }
}

/// Sign of `c^2 = (y1 - x2) / ((x2 - x1)(y1 - x1))`, computed as the sign of
/// `det(y1|x2) det(x1|y1) det(x1|x2)` so that it is defined at infinity too.
pub fn orientation(x1: &ProjPoint, x2: &ProjPoint, y1: &ProjPoint) -> Result<Orientation> {
    check_distinct(&[*x1, *x2, *y1], DISTINCT_MARGIN).map_err(|e| match e {
        CocycleError::CoincidentPoints { distance, .. } => CocycleError::DegenerateTriple(distance),
        other => other,
    })?;
    let s = bracket(y1, x2) * bracket(x1, y1) * bracket(x1, x2);
    Orientation::from_sign(s).ok_or(CocycleError::DegenerateTriple(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(x: f64) -> ProjPoint {
        ProjPoint::finite(x).unwrap()
    }

    #[test]
    fn normalization() {
        let p = ProjPoint::new(-3.0, -4.0).unwrap();
        assert_eq!(p.coords(), (0.6, 0.8));
        let q = ProjPoint::new(0.0, -2.0).unwrap();
        assert_eq!(q, ProjPoint::zero());
        assert!(ProjPoint::new(0.0, 0.0).is_err());
        assert_eq!(ProjPoint::new(-5.0, 0.0).unwrap(), ProjPoint::infinity());
        let (a, b) = pt(-2.5).coords();
        assert_abs_diff_eq!(a * a + b * b, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pt(-2.5).to_finite().unwrap(), -2.5, epsilon = 1e-15);
    }

    #[test]
    fn mobius_of_rotation() {
        let w = Mat2::real(0.0, -1.0, 1.0, 0.0).unwrap();
        let image = mobius(&w, &pt(4.0)).unwrap();
        assert_abs_diff_eq!(image.to_finite().unwrap(), -0.25, epsilon = 1e-15);
        assert_eq!(mobius(&w, &ProjPoint::infinity()).unwrap(), ProjPoint::zero());
        assert_eq!(mobius(&Mat2::identity(Field::Real), &pt(1.5)).unwrap(), pt(1.5));
    }

    #[test]
    fn cross_ratio_values() {
        let b = 2.5;
        let cr = cross_ratio(&ProjPoint::infinity(), &ProjPoint::zero(), &pt(1.0), &pt(b)).unwrap();
        assert_abs_diff_eq!(cr, b, epsilon = 1e-14);
        // (0-2)(1-3) / ((1-2)(0-3)) = 4/3
        let cr = cross_ratio(&pt(0.0), &pt(1.0), &pt(2.0), &pt(3.0)).unwrap();
        assert_abs_diff_eq!(cr, 4.0 / 3.0, epsilon = 1e-14);
        // [inf, 0, -1, b] = -b
        let cr = cross_ratio(&ProjPoint::infinity(), &ProjPoint::zero(), &pt(-1.0), &pt(b)).unwrap();
        assert_abs_diff_eq!(cr, -b, epsilon = 1e-14);
        assert!(matches!(
            cross_ratio(&pt(0.0), &pt(1.0), &pt(0.0), &pt(3.0)),
            Err(CocycleError::CoincidentPoints { .. })
        ));
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(&pt(0.0), &pt(1.0), &pt(2.0)).unwrap(), Orientation::Positive);
        assert_eq!(orientation(&pt(0.0), &pt(2.0), &pt(1.0)).unwrap(), Orientation::Negative);
        assert_eq!(orientation(&ProjPoint::infinity(), &ProjPoint::zero(), &pt(1.0)).unwrap(), Orientation::Positive);
        assert_eq!(orientation(&ProjPoint::infinity(), &ProjPoint::zero(), &pt(-1.0)).unwrap(), Orientation::Negative);
        assert!(matches!(orientation(&pt(0.0), &pt(1.0), &pt(1.0)), Err(CocycleError::DegenerateTriple(_))));
    }

    #[test]
    fn orientation_matches_chart_formula() {
        let triples = [(0.3, -1.2, 4.0), (-2.0, 5.0, 0.5), (1.0, 2.0, 3.0), (7.5, -0.1, 0.2)];
        for (x1, x2, y1) in triples {
            let c2 = (y1 - x2) / ((x2 - x1) * (y1 - x1));
            let o = orientation(&pt(x1), &pt(x2), &pt(y1)).unwrap();
            assert_eq!(o.sign(), c2.signum());
            let swapped = orientation(&pt(x1), &pt(y1), &pt(x2)).unwrap();
            assert_eq!(swapped, o.flip());
        }
    }
}
