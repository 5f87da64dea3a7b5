use crate::grid_fields::{h1_norm, RegionMask, ScalarField};
use crate::internal_data::{data_diff_h1, InternalData};
use crate::{Error, Real, Result};

/// `(‖J (q − q̃)‖_{H¹}, ‖J − J̃‖_{H¹}^{1/2})`.
pub fn weighted_sides<T: Real>(
    q: &ScalarField<T>,
    q_t: &ScalarField<T>,
    d: &InternalData<T>,
    d_t: &InternalData<T>,
) -> Result<(T, T)> {
    let grid = *q.grid();
    grid.ensure_same(q_t.grid())?;
    grid.ensure_same(d.j.grid())?;
    let weighted = d.j.mul(&q.sub(q_t)?)?;
    let lhs = h1_norm(&weighted, &RegionMask::full(grid))?;
    let rhs = data_diff_h1(d, d_t)?.sqrt();
    Ok((lhs, rhs))
}

/// `(‖u² − ũ²‖∞, ‖J − J̃‖_{H¹}^θ)`.
pub fn interp_check<T: Real>(
    d: &InternalData<T>,
    d_t: &InternalData<T>,
    u: &ScalarField<T>,
    u_t: &ScalarField<T>,
    theta: T,
) -> Result<(T, T)> {
    if !(theta > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "θ must be positive, got {theta}"
        )));
    }
    let sup = u.zip_map(u_t, |a, b| a * a - b * b)?.max_abs();
    let data = data_diff_h1(d, d_t)?;
    let data_theta = if data == T::zero() {
        T::zero()
    } else {
        data.powf(theta)
    };
    Ok((sup, data_theta))
}
