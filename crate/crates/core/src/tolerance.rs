//! Numerical tolerances and genericity margins shared across the crate.

/// Allowed drift of det from 1, scaled by the size of the two determinant products.
pub const DET_TOL: f64 = 1e-9;

/// Frobenius-relative reconstruction tolerance of the Iwasawa factors.
pub const RECON_TOL: f64 = 1e-10;

/// Default tolerance for algebraic identities between cochains.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Lower bound on |v|^2 for points of the punctured plane, and on |lambda|.
pub const NONZERO_MARGIN: f64 = 1e-8;

/// Default independence margin for vector pairs.
pub const INDEP_MARGIN: f64 = 1e-6;

/// Default projective distinctness margin.
pub const DISTINCT_MARGIN: f64 = 1e-6;

/// Margins used by the harness samplers.
pub const SAMPLING_MARGIN: f64 = 1e-4;

/// Arguments of `ln` below this are rejected.
pub const LOG_ARG_MIN: f64 = 1e-12;

/// Finite points with |x| above this use the (1, 1/x) chart representative.
pub const CHART_BOUND: f64 = 1e6;
