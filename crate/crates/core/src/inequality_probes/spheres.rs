use super::balls::{ball, dist_to_boundary, grad_sq};
use crate::grid_fields::{integrate, ScalarField};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeSpheres<T> {
    /// `‖u‖_{H¹(B(y, kr))}` for `k = 1, 2, 3`.
    pub i1: T,
    pub i2: T,
    pub i3: T,
    /// Exponent solving `r·I₂ = I₁^s I₃^{1−s}`.
    pub s_fit: T,
    /// Exponent solving the same relation for `w(x) = u(y + r x)` on the
    /// balls of radius 1, 2, 3, where no factor `r` appears.
    pub s_scaled: T,
}

pub fn three_spheres_fit<T: Real>(u: &ScalarField<T>, y: (T, T), r: T) -> Result<ThreeSpheres<T>> {
    let d = dist_to_boundary(y);
    if !(r > T::zero()) || !(T::lit(3.0) * r < d) {
        return Err(Error::InvalidArgument(format!(
            "three spheres: need 0 < 3r < dist(y, Γ) = {d}, got r = {r}"
        )));
    }
    let g = *u.grid();
    let sq = u.map(|v| v * v);
    let gr = grad_sq(u);
    let parts = |k: T| -> Result<(T, T)> {
        let m = ball(g, y, k * r);
        Ok((integrate(&sq, &m)?, integrate(&gr, &m)?))
    };
    let (p1, p2, p3) = (parts(T::one())?, parts(T::lit(2.0))?, parts(T::lit(3.0))?);
    let h1 = |(a, b): (T, T)| (a + b).sqrt();
    let scaled = |(a, b): (T, T)| (a + r * r * b).sqrt();
    let (i1, i2, i3) = (h1(p1), h1(p2), h1(p3));
    if !(i1 > T::zero()) || !(i3 > i1) {
        return Err(Error::InvalidArgument(
            "three spheres: norms do not separate the balls".into(),
        ));
    }
    let s_fit = (i3 / (r * i2)).ln() / (i3 / i1).ln();
    let (w1, w2, w3) = (scaled(p1), scaled(p2), scaled(p3));
    let s_scaled = (w3 / w2).ln() / (w3 / w1).ln();
    Ok(ThreeSpheres {
        i1,
        i2,
        i3,
        s_fit,
        s_scaled,
    })
}
