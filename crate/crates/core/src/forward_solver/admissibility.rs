use super::stencil::assemble;
use crate::grid_fields::{Grid, ScalarField, TensorField};
use crate::sparse_linalg::smallest_singular_estimate;
use crate::{Error, Real, Result};

/// Membership test for the admissible class around a reference `q*`:
/// `‖q − q*‖∞ ≤ min(k / ‖A_{q*}⁻¹‖, q0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility<T> {
    /// Estimate of `‖A_{q*}⁻¹‖`; infinite when the reference operator is singular.
    pub resolvent_norm_estimate: T,
    pub q0: T,
    pub k: T,
    pub distance: T,
    pub threshold: T,
    pub member: bool,
    pub diagnostic: Option<String>,
}

/// Smallest eigenvalue of the five-point Dirichlet Laplacian on `grid`.
pub fn discrete_first_eigenvalue<T: Real>(grid: &Grid) -> T {
    let term = |h: T| {
        let s = (T::PI() * h * T::lit(0.5)).sin();
        T::lit(4.0) * s * s / (h * h)
    };
    term(grid.hx()) + term(grid.hy())
}

pub fn estimate_admissibility<T: Real>(
    a: &TensorField<T>,
    q: &ScalarField<T>,
    q_star: &ScalarField<T>,
    q0: T,
    k: T,
) -> Result<Admissibility<T>> {
    if !(k > T::zero() && k < T::one()) {
        return Err(Error::InvalidArgument(format!(
            "k must lie in (0, 1), got {k}"
        )));
    }
    if !(q0 > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "q0 must be positive, got {q0}"
        )));
    }
    q.grid().ensure_same(q_star.grid())?;
    let distance = q.sub(q_star)?.max_abs();
    let m = assemble(a, q_star)?;
    let (sigma, diagnostic) = match smallest_singular_estimate(&m, T::lit(1e-6)) {
        Ok(s) if s > T::zero() => (s, None),
        Ok(_) => (
            T::zero(),
            Some("reference operator is singular".to_string()),
        ),
        Err(e) => (
            T::zero(),
            Some(format!("reference operator resolvent unavailable: {e}")),
        ),
    };
    let resolvent = if sigma > T::zero() {
        sigma.recip()
    } else {
        T::infinity()
    };
    let threshold = (k * sigma).min(q0);
    Ok(Admissibility {
        resolvent_norm_estimate: resolvent,
        q0,
        k,
        distance,
        threshold,
        member: diagnostic.is_none() && distance <= threshold,
        diagnostic,
    })
}
