//! Uniform node-centred discretisation of the unit square, scalar and
//! tensor fields on it, region masks and the discrete norms every other
//! module measures with.

mod dump;
mod field;
mod grid;
mod mask;
mod nodal;
mod norms;
mod tensor;

pub use dump::{load_field, read_field, save_field, write_field};
pub use field::ScalarField;
pub use grid::{make_grid, Grid};
pub use mask::{MaskKind, RegionMask};
pub use nodal::{dist_to_zero_set, zero_points, NO_ZERO_DISTANCE};
pub use norms::{gradient, h1_norm, integrate, l2_norm, linf_norm, quadrature_weight};
pub use tensor::TensorField;
