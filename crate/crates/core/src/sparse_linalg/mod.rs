//! Compressed-row matrices, Jacobi-preconditioned Krylov solvers and the
//! smallest-singular-value estimate behind the admissibility test.

mod csr;
mod krylov;
mod spectrum;

pub use csr::SparseMatrix;
pub use krylov::{
    bicgstab_solve, bicgstab_solve_from, cg_solve, cg_solve_from, solve_auto, Method, SolveReport,
};
pub use spectrum::smallest_singular_estimate;
