use super::options::ReconOptions;
use super::sign::recover_sign;
use crate::forward_solver::{residual_field, DirichletOperator};
use crate::grid_fields::{RegionMask, ScalarField, TensorField};
use crate::internal_data::InternalData;
use crate::scalar::norm2;
use crate::{Real, Result};

const INEXACT_FACTOR: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct ReconResult<T> {
    /// Estimate of `|u|`.
    pub w: ScalarField<T>,
    /// Signed iterate; equals `w` when sign recovery is off.
    pub w_signed: ScalarField<T>,
    pub q_rec: ScalarField<T>,
    pub trust: RegionMask,
    pub iterations: usize,
    /// Relative l² size of each undamped update.
    pub history: Vec<f64>,
    pub converged: bool,
    /// Discrete `L²` norm over interior nodes of `w·div(A∇w) + I`.
    pub nonlinear_residual: f64,
}

impl<T: Real> ReconResult<T> {
    /// `μ = w / J`, the reconstructed `1/√q`; zero where `J` vanishes.
    pub fn mu(&self, j_data: &ScalarField<T>) -> Result<ScalarField<T>> {
        self.w
            .zip_map(j_data, |w, j| if j > T::zero() { w / j } else { T::zero() })
    }
}

/// `q = I / max(w, w_floor)²`.
pub fn recover_q<T: Real>(
    d: &InternalData<T>,
    w: &ScalarField<T>,
    opts: &ReconOptions,
) -> Result<ScalarField<T>> {
    let floor = T::lit(opts.w_floor);
    d.i.zip_map(w, |i, w| {
        let w = w.max(floor);
        i / (w * w)
    })
}

/// Reconstructs `w ≈ |u|` starting from the harmonic lift of the boundary data.
pub fn reconstruct_w<T: Real>(
    d: &InternalData<T>,
    a: &TensorField<T>,
    g: &ScalarField<T>,
    opts: &ReconOptions,
) -> Result<ReconResult<T>> {
    reconstruct_w_from(d, a, g, opts, None)
}

/// Picard iteration for `w·div(A∇w) = −I`, lagging the denominator:
/// `div(A∇w⁺) = −I / w` with `w⁺ = g` on the boundary, then
/// `w ← (1 − θ)w + θw⁺`.
///
/// With sign recovery the iterate is signed: the right-hand side becomes
/// `−σJ·√q_k` with `q_k = I/w²` clamped to `[q_min, q_max]`, which is the
/// same as `−σI/|w|` whenever the clamp is inactive. Without it the
/// iterate carries `|g|` and the plain `−I / max(w, w_floor)` is used.
///
/// `g` only matters on the boundary. `w0` replaces the harmonic start.
pub fn reconstruct_w_from<T: Real>(
    d: &InternalData<T>,
    a: &TensorField<T>,
    g: &ScalarField<T>,
    opts: &ReconOptions,
    w0: Option<&ScalarField<T>>,
) -> Result<ReconResult<T>> {
    opts.validate()?;
    let grid = *a.grid();
    grid.ensure_same(d.i.grid())?;
    grid.ensure_same(g.grid())?;
    let floor = T::lit(opts.w_floor);
    let (q_lo, q_hi) = (T::lit(opts.q_min), T::lit(opts.q_max));
    let theta = T::lit(opts.damping);
    let tol = T::lit(opts.linear_tol);

    let zero_q = ScalarField::zeros(grid);
    let op = DirichletOperator::new(a, &zero_q)?;
    let (boundary, signed_j) = if opts.sign_recovery {
        let s = recover_sign(&d.j, g);
        (g.clone(), Some(d.j.mul(&s)?))
    } else {
        (g.abs(), None)
    };

    let mut w = match w0 {
        Some(w0) => {
            grid.ensure_same(w0.grid())?;
            w0.clone()
        }
        None => op.solve(None, &boundary, None, tol)?.0,
    };

    let mut history = Vec::new();
    let mut converged = false;
    for _ in 0..opts.max_picard {
        let source = match &signed_j {
            Some(sj) => {
                let qk = d.i.zip_map(&w, |i, w| {
                    let w = w.abs().max(floor);
                    (i / (w * w)).max(q_lo).min(q_hi)
                })?;
                sj.zip_map(&qk, |s, q| -s * q.sqrt())?
            }
            None => d.i.zip_map(&w, |i, w| -i / w.max(floor))?,
        };
        // Inner accuracy only needs to track the size of the outer update.
        let inner_tol = history
            .last()
            .map_or(tol, |&u: &f64| tol.max(T::lit(u * INEXACT_FACTOR)));
        let (w_new, _) = op.solve(Some(&source), &boundary, Some(&w), inner_tol)?;
        let diff: Vec<T> = w_new
            .values()
            .iter()
            .zip(w.values())
            .map(|(&a, &b)| a - b)
            .collect();
        let scale = norm2(w_new.values()).max(T::min_positive_value());
        let update = (norm2(&diff) / scale).to_f64_lossy();
        history.push(update);
        w = w.zip_map(&w_new, |old, new| (T::one() - theta) * old + theta * new)?;
        if update <= opts.picard_tol {
            converged = true;
            break;
        }
    }

    let lw = residual_field(a, &zero_q, &w)?;
    let (hx, hy): (T, T) = (grid.hx(), grid.hy());
    let mut acc = T::zero();
    for k in grid.interior_nodes() {
        let r = w[k] * lw[k] + d.i[k];
        acc += r * r;
    }
    let nonlinear_residual = (acc * hx * hy).sqrt().to_f64_lossy();

    let w_abs = w.abs();
    let q_rec = recover_q(d, &w_abs, opts)?;
    let trust = RegionMask::threshold(&w_abs, T::lit(opts.trust_threshold));
    Ok(ReconResult {
        w: w_abs,
        w_signed: w,
        q_rec,
        trust,
        iterations: history.len(),
        history,
        converged,
        nonlinear_residual,
    })
}
