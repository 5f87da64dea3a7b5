use super::phi::{phi_eval, phi_fit, PhiFit};
use super::sides::{interp_check, weighted_sides};
use crate::forward_solver::{solve_forward, Problem};
use crate::grid_fields::{dist_to_zero_set, Grid, ScalarField};
use crate::internal_data::{add_noise, data_diff_h1, synthesize, InternalData, NoiseModel};
use crate::reconstruction::{band_sup_errors_with, reconstruct_w, ReconOptions, DISTANCE_BANDS};
use crate::{Error, Real, Result};
use rayon::prelude::*;

/// How `q̃` is produced from each ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Perturb `J` by `ε·ρ`, reconstruct, and project the result onto `[q_min, q_max]`.
    Noise { model: NoiseModel, seed: u64 },
    /// `q̃ = q + ε sin(πx) sin(πy)` with its own forward solve.
    Bump,
    /// Like [`Family::Bump`] but with a bump supported in `[margin, 1 − margin]²`,
    /// so `q̃ = q` near the boundary.
    Inset { margin: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub family: Family,
    pub theta: f64,
    pub recon: ReconOptions,
    /// Largest coefficient perturbation amplitude for the bump families.
    pub amplitude_cap: f64,
    pub forward_tol: f64,
    /// Distance band edges for the per-band errors.
    pub bands: [f64; 3],
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            family: Family::Noise {
                model: NoiseModel::Deterministic,
                seed: 0,
            },
            theta: 0.2,
            recon: ReconOptions::default(),
            amplitude_cap: 1.0,
            forward_tol: 1e-12,
            bands: DISTANCE_BANDS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityRecord {
    pub eps: f64,
    pub data_err: f64,
    pub weighted_lhs: f64,
    pub weighted_rhs: f64,
    /// `lhs / rhs`, or zero when `rhs` vanishes.
    pub weighted_ratio: f64,
    pub sup_err_all: f64,
    pub sup_err_bands: [f64; 4],
    pub theta: f64,
    /// Fitted `φ(data_err^θ)`, when a fit exists and is defined there.
    pub phi_value: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpRecord {
    pub eps: f64,
    pub sup_u_diff: f64,
    pub data_err_theta: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub records: Vec<StabilityRecord>,
    pub interp: Vec<InterpRecord>,
    pub phi: Option<PhiFit>,
}

pub fn bump<T: Real>(grid: Grid) -> ScalarField<T> {
    ScalarField::from_fn(grid, |x: T, y: T| (T::PI() * x).sin() * (T::PI() * y).sin())
}

/// Product of `((t − m)(1 − m − t) / (1/2 − m)²)²` bumps; peak 1 at the centre.
pub fn inset_bump<T: Real>(grid: Grid, margin: T) -> Result<ScalarField<T>> {
    let half = T::lit(0.5);
    if !(margin >= T::zero() && margin < half) {
        return Err(Error::InvalidArgument(format!(
            "inset margin must lie in [0, 1/2), got {margin}"
        )));
    }
    let w = (half - margin) * (half - margin);
    let b = move |t: T| {
        if t <= margin || t >= T::one() - margin {
            T::zero()
        } else {
            let v = (t - margin) * (T::one() - margin - t) / w;
            v * v
        }
    };
    Ok(ScalarField::from_fn(grid, move |x, y| b(x) * b(y)))
}

/// Runs every ε in parallel; records come back in input order.
pub fn stability_sweep<T: Real>(
    p: &Problem<T>,
    eps_list: &[f64],
    opts: &SweepOptions,
) -> Result<Sweep> {
    if !(opts.theta > 0.0 && opts.theta < 0.25) {
        return Err(Error::InvalidArgument(format!(
            "θ must lie in (0, 1/4), got {}",
            opts.theta
        )));
    }
    if let Some(e) = eps_list.iter().find(|e| !(**e >= 0.0 && e.is_finite())) {
        return Err(Error::InvalidArgument(format!("bad sweep amplitude {e}")));
    }
    opts.recon.validate()?;
    let grid = *p.grid();
    let (u, _) = solve_forward(p, T::lit(opts.forward_tol))?;
    let clean = synthesize(&p.q, &u)?;
    let dist = dist_to_zero_set(&u);
    let shape = match opts.family {
        Family::Noise { .. } => None,
        Family::Bump => Some(bump::<T>(grid)),
        Family::Inset { margin } => Some(inset_bump(grid, T::lit(margin))?),
    };
    let ctx = Ctx {
        p,
        u: &u,
        clean: &clean,
        dist: &dist,
        shape: shape.as_ref(),
        opts,
    };

    let rows: Vec<(StabilityRecord, InterpRecord)> = eps_list
        .par_iter()
        .map(|&eps| ctx.one(eps))
        .collect::<Result<_>>()?;
    let (mut records, interp): (Vec<_>, Vec<_>) = rows.into_iter().unzip();

    let pairs: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.data_err > 0.0 && r.sup_err_all > 0.0)
        .map(|r| (r.data_err.powf(opts.theta), r.sup_err_all))
        .filter(|&(s, _)| s < 1.0)
        .collect();
    let phi = if pairs.len() >= 4 {
        phi_fit(&pairs).ok()
    } else {
        None
    };
    if let Some(f) = phi {
        for r in &mut records {
            r.phi_value = phi_eval(r.data_err.powf(opts.theta), f.c0, f.c1).ok();
        }
    }
    Ok(Sweep {
        records,
        interp,
        phi,
    })
}

struct Ctx<'a, T> {
    p: &'a Problem<T>,
    u: &'a ScalarField<T>,
    clean: &'a InternalData<T>,
    dist: &'a ScalarField<T>,
    shape: Option<&'a ScalarField<T>>,
    opts: &'a SweepOptions,
}

impl<T: Real> Ctx<'_, T> {
    fn one(&self, eps: f64) -> Result<(StabilityRecord, InterpRecord)> {
        let p = self.p;
        let (eps, q_t, u_t, d_t) = match (self.opts.family, self.shape) {
            (Family::Noise { model, seed }, _) => {
                let model = if eps == 0.0 { NoiseModel::None } else { model };
                let d_t = add_noise(self.clean, model, eps, seed)?;
                let rec = reconstruct_w(&d_t, &p.a, &p.g, &self.opts.recon)?;
                let (lo, hi) = (T::lit(self.opts.recon.q_min), T::lit(self.opts.recon.q_max));
                let q_t = rec.q_rec.map(|v| v.max(lo).min(hi));
                (eps, q_t, rec.w_signed, d_t)
            }
            (_, Some(b)) => {
                let amp = eps.min(self.opts.amplitude_cap);
                let q_t = p.q.add(&b.scale(T::lit(amp)))?;
                let pt = Problem::new(p.a.clone(), q_t.clone(), p.g.clone())?;
                let (u_t, _) = solve_forward(&pt, T::lit(self.opts.forward_tol))?;
                let d_t = synthesize(&q_t, &u_t)?;
                (amp, q_t, u_t, d_t)
            }
            (_, None) => unreachable!("bump families carry a shape"),
        };

        let data_err = data_diff_h1(&d_t, self.clean)?.to_f64_lossy();
        let (lhs, rhs) = weighted_sides(&p.q, &q_t, self.clean, &d_t)?;
        let (lhs, rhs) = (lhs.to_f64_lossy(), rhs.to_f64_lossy());
        let err = p.q.sub(&q_t)?.abs();
        let theta = self.opts.theta;
        let (sup_u, dth) = interp_check(self.clean, &d_t, self.u, &u_t, T::lit(theta))?;
        let (sup_u, dth) = (sup_u.to_f64_lossy(), dth.to_f64_lossy());
        Ok((
            StabilityRecord {
                eps,
                data_err,
                weighted_lhs: lhs,
                weighted_rhs: rhs,
                weighted_ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
                sup_err_all: err.max_abs().to_f64_lossy(),
                sup_err_bands: band_sup_errors_with(&err, self.dist, &self.opts.bands)?,
                theta,
                phi_value: None,
            },
            InterpRecord {
                eps,
                sup_u_diff: sup_u,
                data_err_theta: dth,
                ratio: if dth > 0.0 { sup_u / dth } else { 0.0 },
            },
        ))
    }
}
