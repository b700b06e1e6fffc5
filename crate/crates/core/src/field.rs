//! The base field: real or complex scalars carried as a pair of `f64`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{CocycleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Field {
    type Err = CocycleError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "R" => Ok(Field::Real),
            "complex" | "C" => Ok(Field::Complex),
            other => Err(CocycleError::InvalidConfig(format!("unknown field `{other}`"))),
        }
    }
}

/// An element of the base field. Real scalars have an imaginary part of exactly zero.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Scalar(Complex64);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Complex64::new(0.0, 0.0));
    pub const ONE: Scalar = Scalar(Complex64::new(1.0, 0.0));

    pub fn new(re: f64, im: f64) -> Result<Self> {
        for x in [re, im] {
            if !x.is_finite() {
                return Err(CocycleError::NonFinite(x));
            }
        }
        Ok(Scalar(Complex64::new(re, im)))
    }

    /// Real scalar. Panics on non-finite input; use [`Scalar::new`] for untrusted values.
    pub fn real(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite real scalar {x}");
        Scalar(Complex64::new(x, 0.0))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::new(re, im).expect("non-finite complex scalar")
    }

    pub(crate) fn from_c64(z: Complex64) -> Self {
        Scalar(z)
    }

    pub fn as_c64(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn conj(self) -> Self {
        Scalar(self.0.conj())
    }

    /// |z|^2
    pub fn norm_sqr(self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn abs(self) -> f64 {
        self.0.norm()
    }

    pub fn recip(self) -> Self {
        Scalar(self.0.inv())
    }

    pub fn scale(self, t: f64) -> Self {
        Scalar(self.0 * t)
    }

    pub fn is_real(self) -> bool {
        self.0.im == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    /// The smallest field this value lives in.
    pub fn field(self) -> Field {
        if self.is_real() {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.0.re)
        } else if self.0.im < 0.0 {
            write!(f, "{}{}j", self.0.re, self.0.im)
        } else {
            write!(f, "{}+{}j", self.0.re, self.0.im)
        }
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::real(x)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 / rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

/// Parse `re+imj` style tokens: `2`, `-1.5`, `3j`, `1+2j`, `1-0.5j`, `-2e-3+4j`.
impl std::str::FromStr for Scalar {
    type Err = CocycleError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CocycleError::InvalidConfig(format!("cannot parse scalar `{s}`"));
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
            let re: f64 = t.parse().map_err(|_| bad())?;
            return Scalar::new(re, 0.0);
        };
        // Split at the last sign that is not the leading sign and not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => {
                let re: f64 = body[..i].parse().map_err(|_| bad())?;
                let im_txt = &body[i..];
                let im: f64 = match im_txt {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => im_txt.parse().map_err(|_| bad())?,
                };
                (re, im)
            }
            None => {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => body.parse().map_err(|_| bad())?,
                };
                (0.0, im)
            }
        };
        Scalar::new(re, im)
    }
}
