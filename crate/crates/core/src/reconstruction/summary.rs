use super::options::ReconOptions;
use super::picard::{reconstruct_w, ReconResult};
use crate::forward_solver::{solve_forward, Problem};
use crate::grid_fields::{dist_to_zero_set, ScalarField};
use crate::internal_data::{add_noise, synthesize, InternalData, NoiseModel};
use crate::{Error, Real, Result};

/// Interior edges of the four half-open bands `[0, e0), [e0, e1), [e1, e2), [e2, ∞)`
/// of distance to the nodal set of `u`.
pub const DISTANCE_BANDS: [f64; 3] = [0.05, 0.1, 0.2];

/// Maximum of `err` over each distance band of [`DISTANCE_BANDS`]; zero for an empty band.
pub fn band_sup_errors<T: Real>(err: &ScalarField<T>, dist: &ScalarField<T>) -> Result<[f64; 4]> {
    band_sup_errors_with(err, dist, &DISTANCE_BANDS)
}

/// As [`band_sup_errors`] with caller-chosen increasing edges.
pub fn band_sup_errors_with<T: Real>(
    err: &ScalarField<T>,
    dist: &ScalarField<T>,
    edges: &[f64; 3],
) -> Result<[f64; 4]> {
    err.grid().ensure_same(dist.grid())?;
    if !(edges[0] > 0.0 && edges[0] < edges[1] && edges[1] < edges[2]) {
        return Err(Error::InvalidArgument(format!(
            "band edges must be positive and increasing, got {edges:?}"
        )));
    }
    let mut out = [0.0f64; 4];
    for (e, d) in err.values().iter().zip(dist.values()) {
        let (e, d) = (e.to_f64_lossy().abs(), d.to_f64_lossy());
        let b = edges.iter().position(|&hi| d < hi).unwrap_or(3);
        out[b] = out[b].max(e);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSummary {
    /// `‖q_rec − q‖∞ / ‖q‖∞` over the trust region.
    pub q_rel_linf_trust: f64,
    /// Same over the whole grid.
    pub q_rel_linf_all: f64,
    /// `‖w − |u|‖∞` over the trust region.
    pub w_linf_trust: f64,
    pub trust_count: usize,
    pub grid_count: usize,
    /// Absolute `‖q_rec − q‖∞` per entry of [`DISTANCE_BANDS`].
    pub band_sup: [f64; 4],
    pub data_err: f64,
    pub iterations: usize,
    pub converged: bool,
    pub nonlinear_residual: f64,
}

impl ErrorSummary {
    pub fn compute<T: Real>(
        u: &ScalarField<T>,
        q: &ScalarField<T>,
        recon: &ReconResult<T>,
        data_err: f64,
    ) -> Result<Self> {
        let err = recon.q_rec.sub(q)?.abs();
        let werr = recon.w.sub(&u.abs())?.abs();
        let qmax_trust = recon
            .trust
            .indices()
            .map(|k| q[k].abs())
            .fold(T::zero(), T::max);
        let etrust = recon
            .trust
            .indices()
            .map(|k| err[k])
            .fold(T::zero(), T::max);
        let rel = |e: T, s: T| {
            if s > T::zero() {
                (e / s).to_f64_lossy()
            } else {
                0.0
            }
        };
        Ok(Self {
            q_rel_linf_trust: rel(etrust, qmax_trust),
            q_rel_linf_all: rel(err.max_abs(), q.max_abs()),
            w_linf_trust: recon
                .trust
                .indices()
                .map(|k| werr[k])
                .fold(T::zero(), T::max)
                .to_f64_lossy(),
            trust_count: recon.trust.count(),
            grid_count: u.grid().len(),
            band_sup: band_sup_errors(&err, &dist_to_zero_set(u))?,
            data_err,
            iterations: recon.iterations,
            converged: recon.converged,
            nonlinear_residual: recon.nonlinear_residual,
        })
    }
}

/// Everything produced by one forward → data → reconstruction pass.
#[derive(Debug, Clone)]
pub struct Roundtrip<T> {
    pub u: ScalarField<T>,
    pub clean: InternalData<T>,
    pub data: InternalData<T>,
    pub recon: ReconResult<T>,
    pub summary: ErrorSummary,
}

/// Solves `p`, synthesizes data, perturbs it and reconstructs.
pub fn roundtrip<T: Real>(
    p: &Problem<T>,
    model: NoiseModel,
    eps: f64,
    seed: u64,
    opts: &ReconOptions,
) -> Result<Roundtrip<T>> {
    let (u, _) = solve_forward(p, T::lit(opts.linear_tol))?;
    let clean = synthesize(&p.q, &u)?;
    let data = add_noise(&clean, model, eps, seed)?;
    let recon = reconstruct_w(&data, &p.a, &p.g, opts)?;
    let data_err = crate::internal_data::data_diff_h1(&data, &clean)?.to_f64_lossy();
    let summary = ErrorSummary::compute(&u, &p.q, &recon, data_err)?;
    Ok(Roundtrip {
        u,
        clean,
        data,
        recon,
        summary,
    })
}
