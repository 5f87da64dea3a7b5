//! Discrete Dirichlet problem for `div(A∇u) + q u = 0` on the unit square.
//!
//! The assembled matrix is `−L_q` restricted to interior nodes, so the
//! `q ≡ 0` operator is positive definite and conjugate gradients apply.

mod admissibility;
mod manufactured;
mod operator;
mod stencil;

pub use admissibility::{discrete_first_eigenvalue, estimate_admissibility, Admissibility};
pub use manufactured::{reference_solution, Manufactured};
pub use operator::{solve_forward, DirichletOperator, Problem};
#[allow(unused_imports)]
pub(crate) use stencil::stencil;
pub use stencil::{assemble, interior_index, lift, residual_field};
