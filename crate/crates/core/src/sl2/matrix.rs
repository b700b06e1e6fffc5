use std::fmt;

use num_complex::Complex64;

use crate::error::{CocycleError, Result};
use crate::field::{Field, Scalar};
use crate::tolerance::{DET_TOL, NONZERO_MARGIN};

/// A unit-determinant 2x2 matrix over the base field, stored row-major.
///
/// The determinant is checked on construction and after every product. The
/// check is scaled by `|a11 a22| + |a12 a21|`, the magnitude at which the
/// determinant is actually computed.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat2 {
    a: [Scalar; 4],
    field: Field,
}

fn infer_field(xs: &[Scalar]) -> Field {
    xs.iter().fold(Field::Real, |f, x| f.join(x.field()))
}

impl Mat2 {
    /// Build from entries; the field is the smallest one containing all of them.
    pub fn new(a11: Scalar, a12: Scalar, a21: Scalar, a22: Scalar) -> Result<Self> {
        let a = [a11, a12, a21, a22];
        Self::with_field(a, infer_field(&a))
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Result<Self> {
        let mut a = [Scalar::ZERO; 4];
        for (slot, x) in a.iter_mut().zip([a11, a12, a21, a22]) {
            *slot = Scalar::new(x, 0.0)?;
        }
        Self::with_field(a, Field::Real)
    }

    /// Build with an explicit field tag. A real tag requires real entries.
    pub fn with_field(a: [Scalar; 4], field: Field) -> Result<Self> {
        if let Some(bad) = a.iter().find(|x| !x.is_finite()) {
            return Err(CocycleError::NonFinite(if bad.re().is_finite() { bad.im() } else { bad.re() }));
        }
        if field == Field::Real && infer_field(&a) == Field::Complex {
            return Err(CocycleError::FieldMismatch { expected: Field::Real, found: Field::Complex });
        }
        let m = Mat2 { a, field };
        m.check_det()?;
        Ok(m)
    }

    pub(crate) fn from_c64_unchecked(a: [Complex64; 4], field: Field) -> Self {
        let mut s = [Scalar::ZERO; 4];
        for (slot, z) in s.iter_mut().zip(a) {
            *slot =
                if field == Field::Real { Scalar::from_c64(Complex64::new(z.re, 0.0)) } else { Scalar::from_c64(z) };
        }
        Mat2 { a: s, field }
    }

    pub fn identity(field: Field) -> Self {
        Mat2 { a: [Scalar::ONE, Scalar::ZERO, Scalar::ZERO, Scalar::ONE], field }
    }

    /// `[[1, x], [0, 1]]`
    pub fn unipotent(x: Scalar) -> Self {
        Mat2 { a: [Scalar::ONE, x, Scalar::ZERO, Scalar::ONE], field: x.field() }
    }

    /// `diag(e^t, e^-t)`
    pub fn torus(log_lambda: f64) -> Self {
        let l = log_lambda.exp();
        Mat2 { a: [Scalar::real(l), Scalar::ZERO, Scalar::ZERO, Scalar::real(1.0 / l)], field: Field::Real }
    }

    /// Rotation by `theta`, `[[cos, -sin], [sin, cos]]`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Mat2 { a: [Scalar::real(c), Scalar::real(-s), Scalar::real(s), Scalar::real(c)], field: Field::Real }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Same matrix regarded over a larger field.
    pub fn promote(self, field: Field) -> Self {
        Mat2 { field: self.field.join(field), ..self }
    }

    pub fn entries(&self) -> [Scalar; 4] {
        self.a
    }

    pub fn a11(&self) -> Scalar {
        self.a[0]
    }
    pub fn a12(&self) -> Scalar {
        self.a[1]
    }
    pub fn a21(&self) -> Scalar {
        self.a[2]
    }
    pub fn a22(&self) -> Scalar {
        self.a[3]
    }

    pub fn det(&self) -> Scalar {
        self.a[0] * self.a[3] - self.a[1] * self.a[2]
    }

    fn det_scale(&self) -> f64 {
        ((self.a[0] * self.a[3]).abs() + (self.a[1] * self.a[2]).abs()).max(1.0)
    }

    /// |det - 1| relative to the scale of the determinant products.
    pub fn det_drift(&self) -> f64 {
        (self.det() - Scalar::ONE).abs() / self.det_scale()
    }

    fn check_det(&self) -> Result<()> {
        let drift = self.det_drift();
        if drift > DET_TOL || drift.is_nan() {
            return Err(CocycleError::DetDrift { drift, tolerance: DET_TOL });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        let [a, b, c, d] = self.a;
        let [e, f, g, h] = rhs.a;
        let m =
            Mat2 { a: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], field: self.field.join(rhs.field) };
        m.check_det()?;
        Ok(m)
    }

    /// Inverse via the adjugate; exact for unit determinant.
    pub fn inverse(&self) -> Mat2 {
        let [a, b, c, d] = self.a;
        Mat2 { a: [d, -b, -c, a], field: self.field }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        let [a, b, c, d] = self.a;
        Mat2 { a: [a.conj(), c.conj(), b.conj(), d.conj()], field: self.field }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { a: self.a.map(|x| -x), field: self.field }
    }

    pub fn apply(&self, v: &Vec2) -> Result<Vec2> {
        let [a, b, c, d] = self.a;
        let [x, y] = v.v;
        Vec2::with_field([a * x + b * y, c * x + d * y], self.field.join(v.field))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|self - other|_F / |other|_F`
    pub fn relative_distance(&self, other: &Mat2) -> f64 {
        let diff: f64 = self.a.iter().zip(other.a.iter()).map(|(x, y)| (*x - *y).norm_sqr()).sum::<f64>().sqrt();
        diff / other.frobenius_norm()
    }

    /// Entrywise maximum absolute difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.a.iter().zip(other.a.iter()).map(|(x, y)| (*x - *y).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a[0], self.a[1], self.a[2], self.a[3])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A point of the punctured plane, i.e. of G/N.
#[derive(Clone, Copy, PartialEq)]
pub struct Vec2 {
    v: [Scalar; 2],
    field: Field,
}

impl Vec2 {
    pub fn new(v1: Scalar, v2: Scalar) -> Result<Self> {
        let v = [v1, v2];
        Self::with_field(v, infer_field(&v))
    }

    pub fn real(v1: f64, v2: f64) -> Result<Self> {
        Self::with_field([Scalar::new(v1, 0.0)?, Scalar::new(v2, 0.0)?], Field::Real)
    }

    pub fn with_field(v: [Scalar; 2], field: Field) -> Result<Self> {
        if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
            return Err(CocycleError::NonFinite(if bad.re().is_finite() { bad.im() } else { bad.re() }));
        }
        if field == Field::Real && infer_field(&v) == Field::Complex {
            return Err(CocycleError::FieldMismatch { expected: Field::Real, found: Field::Complex });
        }
        let out = Vec2 { v, field };
        let n = out.norm_sqr();
        if n < NONZERO_MARGIN {
            return Err(CocycleError::ZeroVector(n));
        }
        Ok(out)
    }

    pub fn e1(field: Field) -> Self {
        Vec2 { v: [Scalar::ONE, Scalar::ZERO], field }
    }

    pub fn e2(field: Field) -> Self {
        Vec2 { v: [Scalar::ZERO, Scalar::ONE], field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn promote(self, field: Field) -> Self {
        Vec2 { field: self.field.join(field), ..self }
    }

    pub fn v1(&self) -> Scalar {
        self.v[0]
    }

    pub fn v2(&self) -> Scalar {
        self.v[1]
    }

    pub fn components(&self) -> [Scalar; 2] {
        self.v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.v[0].norm_sqr() + self.v[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Scalar) -> Result<Vec2> {
        Vec2::with_field([self.v[0] * s, self.v[1] * s], self.field.join(s.field()))
    }

    pub fn add(&self, other: &Vec2) -> Result<Vec2> {
        Vec2::with_field([self.v[0] + other.v[0], self.v[1] + other.v[1]], self.field.join(other.field))
    }

    pub fn distance(&self, other: &Vec2) -> f64 {
        ((self.v[0] - other.v[0]).norm_sqr() + (self.v[1] - other.v[1]).norm_sqr()).sqrt()
    }
}

/// Hermitian product, linear in the first slot: `u1 conj(v1) + u2 conj(v2)`.
pub fn hermitian(u: &Vec2, v: &Vec2) -> Scalar {
    u.v[0] * v.v[0].conj() + u.v[1] * v.v[1].conj()
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v[0], self.v[1])
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_elementary_matrices() {
        let u = Mat2::real(1.0, 1.0, 0.0, 1.0).unwrap();
        let l = Mat2::real(1.0, 0.0, 1.0, 1.0).unwrap();
        let p = u.mul(&l).unwrap();
        assert_eq!(p, Mat2::real(2.0, 1.0, 1.0, 1.0).unwrap());
    }

    #[test]
    fn identity_and_inverse() {
        let g = Mat2::real(2.0, 3.0, 1.0, 2.0).unwrap();
        let id = Mat2::identity(Field::Real);
        assert_eq!(id.mul(&g).unwrap(), g);
        let r = g.mul(&g.inverse()).unwrap();
        assert!(r.max_abs_diff(&id) <= 1e-10);
    }

    #[test]
    fn det_drift_is_rejected() {
        assert!(matches!(Mat2::real(1.0, 0.0, 0.0, 1.1), Err(CocycleError::DetDrift { .. })));
    }

    #[test]
    fn real_tag_rejects_complex_entries() {
        let a = [Scalar::complex(0.0, 1.0), Scalar::ZERO, Scalar::ZERO, Scalar::complex(0.0, -1.0)];
        assert!(matches!(Mat2::with_field(a, Field::Real), Err(CocycleError::FieldMismatch { .. })));
        assert_eq!(Mat2::with_field(a, Field::Complex).unwrap().field(), Field::Complex);
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(matches!(Vec2::real(1e-5, 0.0), Err(CocycleError::ZeroVector(_))));
        assert!(Vec2::real(1e-3, 0.0).is_ok());
    }

    #[test]
    fn hermitian_convention() {
        let u = Vec2::new(Scalar::complex(0.0, 1.0), Scalar::ZERO).unwrap();
        let v = Vec2::new(Scalar::ONE, Scalar::ZERO).unwrap();
        // linear in the first slot, conjugate-linear in the second
        assert_eq!(hermitian(&u, &v), Scalar::complex(0.0, 1.0));
        assert_eq!(hermitian(&v, &u), Scalar::complex(0.0, -1.0));
    }
}
