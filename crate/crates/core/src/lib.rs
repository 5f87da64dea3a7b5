//! Numerical laboratory for recovering the zeroth-order coefficient `q` of
//! `div(A∇u) + q u = 0` from the internal energy density `I = q u²`.
//!
//! Every numerical type is generic over [`Real`] (`f32` or `f64`); the
//! aliases below pin the `f64` instantiation the experiments use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
mod scalar;

pub mod forward_solver;
pub mod grid_fields;
pub mod inequality_probes;
pub mod internal_data;
pub mod reconstruction;
pub mod sparse_linalg;
pub mod stability_lab;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Field = grid_fields::ScalarField<f64>;
pub type Tensor = grid_fields::TensorField<f64>;
pub type Csr = sparse_linalg::SparseMatrix<f64>;
