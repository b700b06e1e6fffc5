//! Explicit measurable cocycles for the actions of `SL(2)` on `G/N` (the
//! punctured plane) and `G/A` (distinct pairs on the projective line), with the
//! bicomplex coboundary calculus they come from and a seeded harness that
//! checks every algebraic identity on random generic configurations.

pub mod cochain;
pub mod error;
pub mod field;
pub mod harness;
pub mod kernel;
pub mod sampling;
pub mod sl2;
pub mod spaces;
pub mod tolerance;

pub use error::{CocycleError, Result};
pub use field::{Field, Scalar};
pub use sl2::{Mat2, Orientation, PairGA, ProjPoint, Vec2};
