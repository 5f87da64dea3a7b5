use std::io::Write;

use rayon::prelude::*;

use super::balls::{
    caccioppoli_ratio, delta_star_probe, doubling_ratio, muckenhoupt, reverse_holder,
};
use super::carleman::carleman_ratio;
use super::spheres::three_spheres_fit;
use super::ucp::{ucp_lowerbound_fit, BallNorm};
use crate::grid_fields::{ScalarField, TensorField};
use crate::{Error, Result};

type F = ScalarField<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub center: (f64, f64),
    pub r: f64,
    pub params: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

impl ProbeRow {
    pub fn new(center: (f64, f64), r: f64, params: Vec<f64>, lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs > 0.0 {
            f64::INFINITY
        } else {
            f64::NAN
        };
        Self {
            center,
            r,
            params,
            lhs,
            rhs,
            ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub tag: String,
    pub param_names: Vec<String>,
    pub rows: Vec<ProbeRow>,
    /// `max lhs/rhs` over rows with `rhs > 0`, unless the probe fits its
    /// own constant (ucp, δ*).
    pub fitted: f64,
    pub pass: bool,
}

impl ProbeReport {
    /// Report with the generic fit: `pass` means every row obeys
    /// `lhs ≤ fitted·rhs` with a finite constant.
    pub fn from_rows(tag: &str, param_names: &[&str], rows: Vec<ProbeRow>) -> Self {
        let fitted = rows
            .iter()
            .filter(|r| r.rhs > 0.0)
            .map(|r| r.ratio)
            .fold(0.0, f64::max);
        let pass = fitted.is_finite()
            && rows
                .iter()
                .all(|r| r.lhs <= fitted * r.rhs * (1.0 + 1e-12) || r.lhs == 0.0);
        Self {
            tag: tag.to_string(),
            param_names: param_names.iter().map(|s| s.to_string()).collect(),
            rows,
            fitted,
            pass,
        }
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.ratio).collect()
    }
}

/// Writes `center_x,center_y,r,<params>,lhs,rhs,ratio`, rows sorted by
/// centre, radius, then parameters.
pub fn write_probe_csv<W: Write>(mut w: W, report: &ProbeReport) -> Result<()> {
    let mut header = vec!["center_x".to_string(), "center_y".into(), "r".into()];
    header.extend(report.param_names.iter().cloned());
    header.extend(["lhs".into(), "rhs".into(), "ratio".into()]);
    writeln!(w, "{}", header.join(","))?;
    let mut rows: Vec<&ProbeRow> = report.rows.iter().collect();
    rows.sort_by(|a, b| {
        let ka = [a.center.0, a.center.1, a.r]
            .into_iter()
            .chain(a.params.iter().copied());
        let kb = [b.center.0, b.center.1, b.r]
            .into_iter()
            .chain(b.params.iter().copied());
        ka.zip(kb)
            .map(|(x, y)| x.total_cmp(&y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for r in rows {
        let mut cells = vec![r.center.0, r.center.1, r.r];
        cells.extend(&r.params);
        cells.extend([r.lhs, r.rhs, r.ratio]);
        let line: Vec<String> = cells.iter().map(|v| format!("{v:e}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// `m × m` centres `((i+1)/(m+1), (j+1)/(m+1))`.
pub fn interior_lattice(m: usize) -> Vec<(f64, f64)> {
    let s = (m + 1) as f64;
    (0..m)
        .flat_map(|j| (0..m).map(move |i| ((i + 1) as f64 / s, (j + 1) as f64 / s)))
        .collect()
}

fn pairs(centers: &[(f64, f64)], radii: &[f64]) -> Result<Vec<((f64, f64), f64)>> {
    if centers.is_empty() || radii.is_empty() {
        return Err(Error::InvalidArgument("empty probe set".into()));
    }
    Ok(centers
        .iter()
        .flat_map(|&c| radii.iter().map(move |&r| (c, r)))
        .collect())
}

pub fn caccioppoli_report(u: &F, centers: &[(f64, f64)], radii: &[f64]) -> Result<ProbeReport> {
    let rows = pairs(centers, radii)?
        .into_par_iter()
        .map(|(c, r)| caccioppoli_ratio(u, c, r).map(|(l, rh)| ProbeRow::new(c, r, vec![], l, rh)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_rows("caccioppoli", &[], rows))
}

/// Rows compare `∫_{B_{2r}} u²` with `∫_{B_r} u²` through the ratio column.
pub fn doubling_report(u: &F, centers: &[(f64, f64)], radii: &[f64]) -> Result<ProbeReport> {
    let rows = pairs(centers, radii)?
        .into_par_iter()
        .map(|(c, r)| doubling_ratio(u, c, r).map(|d| ProbeRow::new(c, r, vec![], d, 1.0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_rows("doubling", &[], rows))
}

pub fn reverse_holder_report(
    u: &F,
    centers: &[(f64, f64)],
    radii: &[f64],
    delta: f64,
) -> Result<ProbeReport> {
    let rows = pairs(centers, radii)?
        .into_par_iter()
        .map(|(c, r)| {
            reverse_holder(u, c, r, delta).map(|(l, rh)| ProbeRow::new(c, r, vec![delta], l, rh))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_rows("reverse_holder", &["delta"], rows))
}

pub fn muckenhoupt_report(
    u: &F,
    centers: &[(f64, f64)],
    radii: &[f64],
    kappa: f64,
) -> Result<ProbeReport> {
    let rows = pairs(centers, radii)?
        .into_par_iter()
        .map(|(c, r)| {
            muckenhoupt(u, c, r, kappa).map(|(np, one)| {
                ProbeRow::new(c, r, vec![kappa, np.excluded as f64], np.value, one)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_rows(
        "muckenhoupt",
        &["kappa", "excluded"],
        rows,
    ))
}

/// One row per centre with `lhs = s_fit` against `rhs = 1`; passes when every
/// exponent lies strictly inside `(0, 1)`.
pub fn three_spheres_report(u: &F, centers: &[(f64, f64)], r: f64) -> Result<ProbeReport> {
    let rows = pairs(centers, &[r])?
        .into_par_iter()
        .map(|(c, r)| {
            three_spheres_fit(u, c, r)
                .map(|t| ProbeRow::new(c, r, vec![t.i1, t.i2, t.i3, t.s_scaled], t.s_fit, 1.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = ProbeReport::from_rows("three_spheres", &["I1", "I2", "I3", "s_scaled"], rows);
    rep.pass = rep.rows.iter().all(|r| r.lhs > 0.0 && r.lhs < 1.0);
    Ok(rep)
}

/// Rows carry `lhs = −ln‖u‖` and `rhs = c·e^{c/r}`; slack is `rhs − lhs`.
pub fn ucp_report(
    u: &F,
    centers: &[(f64, f64)],
    radii: &[f64],
    norm: BallNorm,
) -> Result<ProbeReport> {
    let samples = pairs(centers, radii)?;
    let fit = ucp_lowerbound_fit(u, &samples, norm)?;
    let rows = samples
        .iter()
        .zip(fit.norms.iter().zip(&fit.slack))
        .map(|(&(c, r), (&m, &s))| ProbeRow::new(c, r, vec![m], -m.ln(), s - m.ln()))
        .collect();
    let tag = match norm {
        BallNorm::H1 => "ucp_h1",
        BallNorm::L2 => "ucp_l2",
    };
    let mut rep = ProbeReport::from_rows(tag, &["norm"], rows);
    rep.fitted = fit.c;
    rep.pass = fit.c.is_finite() && fit.slack.iter().all(|&s| s >= 0.0);
    Ok(rep)
}

/// A single row: the min over lattice centres of `max_{B(x, r*)} u²`.
pub fn delta_star_report(u: &F, r_star: f64, lattice: usize) -> Result<ProbeReport> {
    let d = delta_star_probe(u, r_star, lattice)?;
    let row = ProbeRow::new((f64::NAN, f64::NAN), r_star, vec![lattice as f64], d, 1.0);
    let mut rep = ProbeReport::from_rows("delta_star", &["lattice"], vec![row]);
    rep.fitted = d;
    rep.pass = d > 0.0;
    Ok(rep)
}

/// Carleman sides over `taus` for fixed `v`, `ψ`, `λ`. The row centre and
/// radius describe the support of `v` as given by the caller. Passes when
/// the ratio is finite and non-increasing in `τ` (sorted ascending).
#[allow(clippy::too_many_arguments)]
pub fn carleman_report(
    v: &F,
    a: &TensorField<f64>,
    psi: &F,
    lambda: f64,
    taus: &[f64],
    support: ((f64, f64), f64),
    shift: bool,
    tag: &str,
) -> Result<ProbeReport> {
    if taus.is_empty() {
        return Err(Error::InvalidArgument("empty probe set".into()));
    }
    let mut taus = taus.to_vec();
    taus.sort_by(f64::total_cmp);
    let rows = taus
        .par_iter()
        .map(|&tau| {
            carleman_ratio(v, a, psi, lambda, tau, shift).map(|cv| {
                ProbeRow::new(
                    support.0,
                    support.1,
                    vec![lambda, tau, f64::from(u8::from(cv.shifted))],
                    cv.lhs,
                    cv.rhs,
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = ProbeReport::from_rows(tag, &["lambda", "tau", "shifted"], rows);
    let ratios = rep.ratios();
    rep.pass = ratios.iter().all(|r| r.is_finite()) && ratios.windows(2).all(|w| w[1] <= w[0]);
    Ok(rep)
}
