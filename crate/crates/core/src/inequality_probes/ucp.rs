use super::balls::{ball, grad_sq};
use crate::grid_fields::{integrate, ScalarField};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallNorm {
    H1,
    L2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UcpFit {
    /// Smallest `c` with `exp(−c·e^{c/r}) ≤ ‖u‖_{B(x,r)∩Ω}` at every sample.
    pub c: f64,
    pub norms: Vec<f64>,
    /// `ln‖u‖ + c·e^{c/r}` per sample; the binding sample sits at zero.
    pub slack: Vec<f64>,
}

fn barrier(c: f64, r: f64) -> f64 {
    c * (c / r).exp()
}

/// Root of `c·e^{c/r} = target` for `target > 0` by bisection; returns the
/// upper end so the bound is never violated.
fn solve_c(target: f64, r: f64) -> f64 {
    let mut hi = r.min(1.0);
    while barrier(hi, r) < target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if barrier(mid, r) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Fits the doubly exponential lower bound over `samples` of `(centre, r)`.
/// Balls are clipped to the square. Fails when `u` vanishes on some ball.
pub fn ucp_lowerbound_fit<T: Real>(
    u: &ScalarField<T>,
    samples: &[((T, T), T)],
    norm: BallNorm,
) -> Result<UcpFit> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    let g = *u.grid();
    let sq = u.map(|v| v * v);
    let gr = match norm {
        BallNorm::H1 => Some(grad_sq(u)),
        BallNorm::L2 => None,
    };
    let mut norms = Vec::with_capacity(samples.len());
    let mut radii = Vec::with_capacity(samples.len());
    for &(x, r) in samples {
        if !(r > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "radius must be positive, got {r}"
            )));
        }
        let m = ball(g, x, r);
        let mut v = integrate(&sq, &m)?;
        if let Some(gr) = &gr {
            v += integrate(gr, &m)?;
        }
        let v = v.sqrt().to_f64_lossy();
        if !(v > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "u vanishes on B(({}, {}), {r}); no finite constant",
                x.0, x.1
            )));
        }
        norms.push(v);
        radii.push(r.to_f64_lossy());
    }
    let c = norms
        .iter()
        .zip(&radii)
        .map(|(&m, &r)| if m < 1.0 { solve_c(-m.ln(), r) } else { 0.0 })
        .fold(0.0, f64::max);
    let slack = norms
        .iter()
        .zip(&radii)
        .map(|(&m, &r)| m.ln() + barrier(c, r))
        .collect();
    Ok(UcpFit { c, norms, slack })
}
