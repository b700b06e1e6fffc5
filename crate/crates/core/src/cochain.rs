//! Cochains of the bicomplex `C^{p,q}`: functions of `p+1` group elements and
//! `q` points of a homogeneous space, with the two differentials, the
//! induction from stabilizer-invariant functions, and the evaluation map.
//!
//! Cochains are evaluators, not tables. Identities between them are checked
//! pointwise on sampled generic inputs.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CocycleError, Result};
use crate::field::Field;
use crate::sampling::{sample_group, sample_stabilizer, SamplerConfig};
use crate::sl2::Mat2;
use crate::spaces::{SpacePoint, SpaceTag};

pub type Evaluator = Arc<dyn Fn(&[Mat2], &[SpacePoint]) -> Result<f64> + Send + Sync>;

/// A function on `G^{p+1}`.
pub type GroupFunction = Arc<dyn Fn(&[Mat2]) -> Result<f64> + Send + Sync>;

/// A function on `(G/L)^k`.
pub type SpaceFunction = Arc<dyn Fn(&[SpacePoint]) -> Result<f64> + Send + Sync>;

/// Random coset perturbations used to pre-check stabilizer invariance.
pub const INVARIANCE_PROBES: usize = 16;
pub const INVARIANCE_TOL: f64 = 1e-9;
const INVARIANCE_SEED: u64 = 0x5eed_c0c1;

#[derive(Clone)]
pub struct Cochain {
    p: usize,
    q: usize,
    space: SpaceTag,
    eval: Evaluator,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(p={}, q={}, {})", self.p, self.q, self.space)
    }
}

impl Cochain {
    pub fn new<F>(p: usize, q: usize, space: SpaceTag, eval: F) -> Self
    where
        F: Fn(&[Mat2], &[SpacePoint]) -> Result<f64> + Send + Sync + 'static,
    {
        Cochain { p, q, space, eval: Arc::new(eval) }
    }

    pub fn degree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn eval(&self, gs: &[Mat2], xs: &[SpacePoint]) -> Result<f64> {
        if gs.len() != self.p + 1 {
            return Err(CocycleError::Arity { expected: self.p + 1, found: gs.len() });
        }
        if xs.len() != self.q {
            return Err(CocycleError::Arity { expected: self.q, found: xs.len() });
        }
        if let Some(x) = xs.iter().find(|x| x.tag() != self.space) {
            return Err(CocycleError::DegenerateConfiguration(format!("point {x} is not in {}", self.space)));
        }
        (self.eval)(gs, xs)
    }
}

fn omit<T: Clone>(xs: &[T], i: usize) -> Vec<T> {
    xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()
}

/// `sum_i (-1)^i f(x_0, .., x_i omitted, .., x_k)`.
pub fn coboundary_simplicial<T, F>(f: F, points: &[T]) -> Result<f64>
where
    T: Clone,
    F: Fn(&[T]) -> Result<f64>,
{
    let mut total = 0.0;
    for i in 0..points.len() {
        let face = f(&omit(points, i))?;
        if i % 2 == 0 {
            total += face;
        } else {
            total -= face;
        }
    }
    Ok(total)
}

/// Homogeneous differential in the group variables, `C^{p,q} -> C^{p+1,q}`.
pub fn d_up(c: &Cochain) -> Cochain {
    let inner = c.clone();
    Cochain::new(c.p + 1, c.q, c.space, move |gs, xs| coboundary_simplicial(|face: &[Mat2]| inner.eval(face, xs), gs))
}

/// Weight applied to the space differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RightSign {
    /// `(-1)^{p+1}`, which makes the bicomplex square anticommute.
    #[default]
    Alternating,
    /// `(-1)^p`; wrong, only for checking that the harness notices.
    Flipped,
}

impl RightSign {
    pub fn factor(self, p: usize) -> f64 {
        let odd = match self {
            RightSign::Alternating => (p + 1) % 2 == 1,
            RightSign::Flipped => p % 2 == 1,
        };
        if odd {
            -1.0
        } else {
            1.0
        }
    }
}

/// Space differential `C^{p,q} -> C^{p,q+1}`: `(-1)^{p+1}` times the homogeneous differential.
pub fn d_right(c: &Cochain) -> Cochain {
    d_right_with(c, RightSign::Alternating)
}

pub fn d_right_with(c: &Cochain, sign: RightSign) -> Cochain {
    let inner = c.clone();
    let w = sign.factor(c.p);
    Cochain::new(c.p, c.q + 1, c.space, move |gs, xs| {
        Ok(w * coboundary_simplicial(|face: &[SpacePoint]| inner.eval(gs, face), xs)?)
    })
}

/// `f(h^-1 g_0, .., h^-1 g_p)`.
pub fn induced_eval(f: &GroupFunction, h: &Mat2, gs: &[Mat2]) -> Result<f64> {
    let h_inv = h.inverse();
    let moved = gs.iter().map(|g| h_inv.mul(g)).collect::<Result<Vec<_>>>()?;
    f(&moved)
}

/// Largest relative change of `f` under random left translations by the stabilizer of `space`.
pub fn stabilizer_invariance_residual(f: &GroupFunction, arity: usize, space: SpaceTag, field: Field) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(INVARIANCE_SEED);
    let cfg = SamplerConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..INVARIANCE_PROBES {
        let gs = (0..arity).map(|_| sample_group(&mut rng, &cfg, field)).collect::<Result<Vec<_>>>()?;
        let s = sample_stabilizer(&mut rng, &cfg, space, field);
        let moved = gs.iter().map(|g| s.mul(g)).collect::<Result<Vec<_>>>()?;
        let base = f(&gs)?;
        let r = (f(&moved)? - base).abs() / (1.0 + base.abs());
        worst = worst.max(if r.is_nan() { f64::INFINITY } else { r });
    }
    Ok(worst)
}

/// Induction of a left-`L`-invariant function on `G^{p+1}` to `C^{p,1}` over `G/L`:
/// `(g; x) -> f(h_x^-1 g_0, .., h_x^-1 g_p)` with `h_x` any transporter from the basepoint to `x`.
///
/// Invariance is not provable here, so it is probed on random inputs first.
pub fn induce(f: GroupFunction, p: usize, space: SpaceTag, field: Field) -> Result<Cochain> {
    let residual = stabilizer_invariance_residual(&f, p + 1, space, field)?;
    if residual > INVARIANCE_TOL {
        return Err(CocycleError::NotInvariant(residual));
    }
    Ok(Cochain::new(p, 1, space, move |gs, xs| induced_eval(&f, &xs[0].transporter()?, gs)))
}

pub fn induce_gn(f: GroupFunction, p: usize, field: Field) -> Result<Cochain> {
    induce(f, p, SpaceTag::GN, field)
}

pub fn induce_ga(f: GroupFunction, p: usize) -> Result<Cochain> {
    induce(f, p, SpaceTag::GA, Field::Real)
}

/// Pull a function on `(G/L)^{p+1}` back to `G^{p+1}` through the orbit of `basepoint`.
pub fn evaluation_map(c: SpaceFunction, basepoint: SpacePoint) -> GroupFunction {
    Arc::new(move |gs: &[Mat2]| {
        let pts = gs.iter().map(|g| basepoint.act(g)).collect::<Result<Vec<_>>>()?;
        c(&pts)
    })
}
