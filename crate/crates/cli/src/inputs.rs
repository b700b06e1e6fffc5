//! Plain-text encodings of formula inputs.
//!
//! Scalars are `re+imj` tokens, vectors and matrices are comma-separated
//! component lists, and `inf` denotes the point `[1:0]` of the projective line.

use sl2_cocycles::kernel::{AFunctional, NFunctional};
use sl2_cocycles::{CocycleError, Field, Mat2, PairGA, ProjPoint, Result, Scalar, Vec2};

fn scalar(token: &str, field: Field) -> Result<Scalar> {
    let s: Scalar = token.trim().parse()?;
    if field == Field::Real && !s.is_real() {
        return Err(CocycleError::InvalidConfig(format!("`{token}` is complex but the field is real")));
    }
    Ok(s)
}

fn components(text: &str, expected: usize, what: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if parts.len() != expected || parts.iter().any(String::is_empty) {
        return Err(CocycleError::InvalidConfig(format!(
            "{what} needs {expected} comma-separated components, got `{text}`"
        )));
    }
    Ok(parts)
}

pub fn vector(text: &str, field: Field) -> Result<Vec2> {
    let c = components(text, 2, "a vector")?;
    let v = [scalar(&c[0], field)?, scalar(&c[1], field)?];
    Vec2::with_field(v, field)
}

/// Entries in row order `a11,a12,a21,a22`.
pub fn matrix(text: &str, field: Field) -> Result<Mat2> {
    let c = components(text, 4, "a matrix")?;
    let a = [scalar(&c[0], field)?, scalar(&c[1], field)?, scalar(&c[2], field)?, scalar(&c[3], field)?];
    Mat2::with_field(a, field)
}

pub fn point(token: &str) -> Result<ProjPoint> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(ProjPoint::infinity());
    }
    let x: f64 = t.parse().map_err(|_| CocycleError::InvalidConfig(format!("cannot parse point `{token}`")))?;
    ProjPoint::finite(x)
}

/// Two distinct points `p,q`. Coincident points are a genericity failure, not a parse failure.
pub fn pair(text: &str) -> Result<PairGA> {
    let c = components(text, 2, "a pair")?;
    PairGA::new(point(&c[0])?, point(&c[1])?)
}

/// `c` or `c_re,c_im`.
pub fn n_functional(text: &str, field: Field) -> Result<NFunctional> {
    let parts: Vec<&str> = text.split(',').collect();
    let num = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| CocycleError::InvalidConfig(format!("cannot parse functional `{text}`")))
    };
    let phi = match parts.as_slice() {
        [c] => NFunctional::new(num(c)?, 0.0)?,
        [re, im] => NFunctional::new(num(re)?, num(im)?)?,
        _ => return Err(CocycleError::InvalidConfig(format!("functional needs 1 or 2 components, got `{text}`"))),
    };
    if field == Field::Real && phi.c_im != 0.0 {
        return Err(CocycleError::InvalidConfig("an imaginary coefficient needs --field complex".into()));
    }
    Ok(phi)
}

pub fn a_functional(text: &str) -> Result<AFunctional> {
    let c: f64 =
        text.trim().parse().map_err(|_| CocycleError::InvalidConfig(format!("cannot parse functional `{text}`")))?;
    AFunctional::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vectors_and_points() {
        let v = vector("1,0", Field::Real).unwrap();
        assert_eq!(v, Vec2::e1(Field::Real));
        let w = vector("1+2j, -0.5j", Field::Complex).unwrap();
        assert_eq!(w.v1(), Scalar::complex(1.0, 2.0));
        assert!(vector("1+2j,0", Field::Real).is_err());
        assert!(vector("1,2,3", Field::Real).is_err());
        assert!(point("INF").unwrap().is_infinity());
        assert_eq!(point("-2.5").unwrap(), ProjPoint::finite(-2.5).unwrap());
        assert!(point("x").is_err());
    }

    #[test]
    fn parses_pairs_and_functionals() {
        let p = pair("inf,0").unwrap();
        assert_eq!(p, PairGA::basepoint());
        assert!(matches!(pair("1,1"), Err(CocycleError::CoincidentPoints { .. })));
        assert_eq!(n_functional("2", Field::Real).unwrap(), NFunctional::real(2.0));
        assert_eq!(n_functional("0,1", Field::Complex).unwrap(), NFunctional { c_re: 0.0, c_im: 1.0 });
        assert!(n_functional("0,1", Field::Real).is_err());
        assert!(a_functional("nope").is_err());
    }

    #[test]
    fn parses_matrices() {
        let g = matrix("1,1,1,2", Field::Real).unwrap();
        assert_eq!(g, Mat2::real(1.0, 1.0, 1.0, 2.0).unwrap());
        assert!(matches!(matrix("1,1,1,1", Field::Real), Err(CocycleError::DetDrift { .. })));
    }
}
