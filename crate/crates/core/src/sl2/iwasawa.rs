//! Iwasawa factorization `g = n a k` and the closed-form N- and A-projections.

use num_complex::Complex64;

use crate::error::{CocycleError, Result};
use crate::field::{Field, Scalar};
use crate::sl2::matrix::Mat2;
use crate::tolerance::NONZERO_MARGIN;

/// Factors of `g = [[1, n], [0, 1]] . diag(l, 1/l) . k` with `l = e^log_lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaNAK {
    pub n: Scalar,
    pub log_lambda: f64,
    /// Orthogonal over the reals, special unitary over the complex numbers.
    pub k: Mat2,
}

impl IwasawaNAK {
    pub fn reconstruct(&self) -> Result<Mat2> {
        Mat2::unipotent(self.n).mul(&Mat2::torus(self.log_lambda))?.mul(&self.k)
    }

    /// Frobenius-relative distance between `n a k` and `g`.
    pub fn reconstruction_residual(&self, g: &Mat2) -> Result<f64> {
        Ok(self.reconstruct()?.relative_distance(g))
    }

    /// Max entry of `|k k* - 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        let [a, b, c, d] = self.k.entries().map(Scalar::as_c64);
        let kk = [
            a * a.conj() + b * b.conj() - 1.0,
            a * c.conj() + b * d.conj(),
            c * a.conj() + d * b.conj(),
            c * c.conj() + d * d.conj() - 1.0,
        ];
        kk.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Iwasawa decomposition by the RQ route.
///
/// The second row of `g` is `l^-1` times the second row of `k`, so normalizing
/// it gives `k`; then `g k* = n a` is upper triangular and `n`, `l` are read off
/// its first row. This path shares no formula with [`project_n`] or
/// [`project_a`], which makes it usable as their oracle.
pub fn iwasawa(g: &Mat2) -> Result<IwasawaNAK> {
    let [a11, a12, a21, a22] = g.entries().map(Scalar::as_c64);
    let r = (a21.norm_sqr() + a22.norm_sqr()).sqrt();
    if r * r < NONZERO_MARGIN {
        return Err(CocycleError::Degenerate(r));
    }
    // k = [[conj(d), -conj(c)], [c, d]] with (c, d) the unit second row
    let c = a21 / r;
    let d = a22 / r;
    let k = Mat2::from_c64_unchecked([d.conj(), -c.conj(), c, d], g.field());
    // first row of g k*
    let m11 = a11 * d - a12 * c;
    let m12 = a11 * c.conj() + a12 * d.conj();
    let lambda = m11.re;
    if lambda <= 0.0 {
        return Err(CocycleError::Degenerate(lambda));
    }
    // n a = [[l, n/l], [0, 1/l]]
    let n = m12 * lambda;
    let n = if g.field() == Field::Real { Complex64::new(n.re, 0.0) } else { n };
    Ok(IwasawaNAK { n: Scalar::from_c64(n), log_lambda: lambda.ln(), k })
}

/// Closed-form N-projection: `<row1, row2> / |row2|^2`.
pub fn project_n(g: &Mat2) -> Scalar {
    let [a11, a12, a21, a22] = g.entries();
    (a11 * a21.conj() + a12 * a22.conj()).scale(1.0 / (a21.norm_sqr() + a22.norm_sqr()))
}

/// Closed-form A-projection as `log l`, `l = 1 / |row2|`. Real matrices only.
pub fn project_a(g: &Mat2) -> Result<f64> {
    if g.field() != Field::Real {
        return Err(CocycleError::FieldMismatch { expected: Field::Real, found: g.field() });
    }
    Ok(log_lambda_of(g))
}

/// `-ln |row2|`, the A-coordinate for either field.
pub(crate) fn log_lambda_of(g: &Mat2) -> f64 {
    -0.5 * (g.a21().norm_sqr() + g.a22().norm_sqr()).ln()
}
