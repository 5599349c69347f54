//! Exact rational scalars, sparse graded vectors, per-level matrices and
//! dual pairings.

mod matrix;
mod rational;
mod vector;

pub use matrix::{LevelwiseMatrix, Matrix};
pub use rational::{binomial, factorial_inv, format_rational, parse_rational, q, qf, sign, Rational};
pub use vector::{dual_pairing, linear_combine, BasisKey, GradedVector, SpaceTag, Vector};
