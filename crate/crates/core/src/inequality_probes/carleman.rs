use super::balls::grad_sq;
use crate::forward_solver::residual_field;
use crate::grid_fields::{integrate, Grid, RegionMask, ScalarField, TensorField};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlemanValue<T> {
    pub lhs: T,
    pub rhs: T,
    /// Both sides carry the common factor `e^{−2τ φ_max}`, with `φ_max` taken
    /// over the support of the integrands.
    pub shifted: bool,
}

impl<T: Real> CarlemanValue<T> {
    /// `lhs / rhs`, `None` when both vanish.
    pub fn ratio(&self) -> Option<T> {
        (self.rhs > T::zero()).then(|| self.lhs / self.rhs)
    }
}

// Largest exponent evaluated without shifting.
const EXP_LIMIT: f64 = 600.0;

/// Weighted sides of the Carleman estimate with `φ = e^{λψ}`:
/// `lhs = ∫(λ⁴τ³φ³v² + λ²τφ|∇v|²)e^{2τφ}` and
/// `rhs = ∫(Lv)²e^{2τφ} + ∫_Γ(λ³τ³φ³v² + λτφ|∇v|²)e^{2τφ}`,
/// with `Lv = div(A∇v)` from the assembled stencil. `shift` forces the
/// `e^{2τ(φ − max φ)}` form, which is also used automatically on overflow.
pub fn carleman_ratio<T: Real>(
    v: &ScalarField<T>,
    a: &TensorField<T>,
    psi: &ScalarField<T>,
    lambda: T,
    tau: T,
    shift: bool,
) -> Result<CarlemanValue<T>> {
    let g = *v.grid();
    g.ensure_same(a.grid())?;
    g.ensure_same(psi.grid())?;
    if !(lambda > T::zero() && tau > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "need λ, τ > 0, got {lambda}, {tau}"
        )));
    }
    let gpsi = grad_sq(psi).map(T::sqrt);
    let (lo, hi) = (gpsi.min_value(), gpsi.max_value());
    if !(lo > T::lit(1e-8) * hi.max(T::one())) {
        return Err(Error::InvalidArgument(format!(
            "ψ has a critical point in the closed square (min |∇ψ| = {lo})"
        )));
    }

    let phi = psi.map(|p| (lambda * p).exp());
    let dv = grad_sq(v);
    let lv = residual_field(a, &ScalarField::zeros(g), v)?;
    // Largest φ where any integrand can be nonzero; shifting by it keeps
    // the dominant terms representable.
    let active: Vec<bool> = (0..g.len())
        .map(|k| v[k] != T::zero() || dv[k] != T::zero() || lv[k] != T::zero())
        .collect();
    let phi_max = (0..g.len())
        .filter(|&k| active[k])
        .map(|k| phi[k])
        .fold(T::neg_infinity(), T::max);
    if phi_max == T::neg_infinity() {
        return Ok(CarlemanValue {
            lhs: T::zero(),
            rhs: T::zero(),
            shifted: shift,
        });
    }
    let two_tau = tau + tau;
    let shifted = shift || (two_tau * phi_max).to_f64_lossy() > EXP_LIMIT;
    let base = if shifted { phi_max } else { T::zero() };
    let weight: Vec<T> = (0..g.len())
        .map(|k| {
            if active[k] {
                (two_tau * (phi[k] - base)).exp()
            } else {
                T::zero()
            }
        })
        .collect();

    let (l2, l3, l4) = (
        lambda * lambda,
        lambda * lambda * lambda,
        lambda * lambda * lambda * lambda,
    );
    let t3 = tau * tau * tau;
    let full = RegionMask::full(g);
    let mut integrand = vec![T::zero(); g.len()];
    for (k, out) in integrand.iter_mut().enumerate() {
        let f = phi[k];
        *out = (l4 * t3 * f * f * f * v[k] * v[k] + l2 * tau * f * dv[k]) * weight[k];
    }
    let lhs = integrate(&ScalarField::from_values(g, integrand)?, &full)?;

    let interior = lv.zip_map(&ScalarField::from_values(g, weight.clone())?, |l, w| {
        l * l * w
    })?;
    let mut rhs = integrate(&interior, &full)?;
    rhs += boundary_integral(&g, |k| {
        let f = phi[k];
        (l3 * t3 * f * f * f * v[k] * v[k] + lambda * tau * f * dv[k]) * weight[k]
    });
    Ok(CarlemanValue { lhs, rhs, shifted })
}

/// Trapezoid rule along the four sides of the square.
fn boundary_integral<T: Real>(g: &Grid, f: impl Fn(usize) -> T) -> T {
    let (nx, ny) = (g.nx(), g.ny());
    let side = |idx: &dyn Fn(usize) -> usize, len: usize, h: T| {
        let mut acc = T::zero();
        for t in 0..len {
            let w = if t == 0 || t + 1 == len {
                T::lit(0.5)
            } else {
                T::one()
            };
            acc += w * f(idx(t));
        }
        acc * h
    };
    side(&|i| g.index(i, 0), nx, g.hx())
        + side(&|i| g.index(i, ny - 1), nx, g.hx())
        + side(&|j| g.index(0, j), ny, g.hy())
        + side(&|j| g.index(nx - 1, j), ny, g.hy())
}

/// `b(x)b(y)` with `b(t) = (1 − ((t − 1/2)/0.3)²)³` on `|t − 1/2| < 0.3`.
pub fn carleman_bump<T: Real>(grid: Grid) -> ScalarField<T> {
    let b = |t: T| {
        let s = (t - T::lit(0.5)) / T::lit(0.3);
        if s.abs() < T::one() {
            let w = T::one() - s * s;
            w * w * w
        } else {
            T::zero()
        }
    };
    ScalarField::from_fn(grid, move |x, y| b(x) * b(y))
}

/// Exponents from the choice `φ = −|x|²` in the three-spheres argument:
/// `α = 1 − e^{−2λ}`, `β = 2(e^{−2λ} − e^{−5λ/2})`.
pub fn alpha_beta(lambda: f64) -> (f64, f64) {
    let e2 = (-2.0 * lambda).exp();
    (1.0 - e2, 2.0 * (e2 - (-2.5 * lambda).exp()))
}
