//! Unimodular 2x2 matrices over the reals or complex numbers, their Iwasawa
//! factorization, the projective line, and the transporter matrices.

mod iwasawa;
mod matrix;
mod projective;
mod transporter;

pub use iwasawa::{iwasawa, project_a, project_n, IwasawaNAK};
pub use matrix::{hermitian, Mat2, Vec2};
pub use projective::{bracket, cross_ratio, mobius, mobius_pair, orientation, Orientation, PairGA, ProjPoint};
pub use transporter::{
    branch_scale, delta, det_pair, transporter_pair, transporter_triple, transporter_vectors,
    transporter_vectors_with_margin,
};
