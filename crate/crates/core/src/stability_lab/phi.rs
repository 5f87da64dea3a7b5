use crate::{Error, Result};

/// `φ(s) = C0 (|ln(C1 |ln s|)|⁻¹ + s)`.
pub fn phi_eval(s: f64, c0: f64, c1: f64) -> Result<f64> {
    if !(s > 0.0) || s == 1.0 || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("φ undefined at s = {s}")));
    }
    let inner = (c1 * s.ln().abs()).ln().abs();
    if !(inner > 0.0) || !inner.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "φ singular at s = {s}, C1 = {c1}"
        )));
    }
    Ok(c0 * (inner.recip() + s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiFit {
    pub c0: f64,
    pub c1: f64,
    /// `sqrt(Σ(φ(sᵢ) − eᵢ)² / Σ eᵢ²)`.
    pub residual: f64,
}

// Values of C1 closer than this (relative) to a singular point 1/|ln sᵢ| are skipped.
const SINGULAR_GAP: f64 = 1e-6;

fn shape(s: f64, c1: f64) -> Option<f64> {
    let inner = (c1 * s.ln().abs()).ln().abs();
    (inner > SINGULAR_GAP && inner.is_finite()).then(|| inner.recip() + s)
}

/// Best `C0` for fixed `C1` is a linear least-squares solve; returns
/// `(C0, residual)`.
fn profile(pairs: &[(f64, f64)], c1: f64, e2: f64) -> Option<(f64, f64)> {
    let f: Option<Vec<f64>> = pairs.iter().map(|&(s, _)| shape(s, c1)).collect();
    let f = f?;
    let fe: f64 = f.iter().zip(pairs).map(|(f, (_, e))| f * e).sum();
    let ff: f64 = f.iter().map(|f| f * f).sum();
    if !(fe > 0.0) || !(ff > 0.0) {
        return None;
    }
    let c0 = fe / ff;
    let r: f64 = f
        .iter()
        .zip(pairs)
        .map(|(f, (_, e))| (c0 * f - e).powi(2))
        .sum();
    Some((c0, (r / e2).sqrt()))
}

/// Fits `eᵢ ≈ φ(sᵢ)` over `C0, C1 > 0`. `C1` is scanned on a logarithmic
/// grid and refined by a shrinking pattern search; `C0` is solved exactly
/// for each trial `C1`.
pub fn phi_fit(pairs: &[(f64, f64)]) -> Result<PhiFit> {
    if pairs.len() < 4 {
        return Err(Error::InvalidArgument(format!(
            "φ fit needs at least 4 pairs, got {}",
            pairs.len()
        )));
    }
    if let Some(&(s, e)) = pairs
        .iter()
        .find(|&&(s, e)| !(s > 0.0 && s < 1.0) || !(e >= 0.0) || !e.is_finite())
    {
        return Err(Error::InvalidArgument(format!(
            "pair ({s}, {e}) outside the fit domain"
        )));
    }
    let e2: f64 = pairs.iter().map(|(_, e)| e * e).sum();
    if !(e2 > 0.0) {
        return Err(Error::InvalidArgument("all errors are zero".into()));
    }

    let mut best: Option<(f64, f64, f64)> = None; // (log10 C1, C0, residual)
    let steps = 480;
    for k in 0..=steps {
        let lc = -8.0 + 16.0 * k as f64 / steps as f64;
        if let Some((c0, r)) = profile(pairs, 10f64.powf(lc), e2) {
            if best.is_none_or(|b| r < b.2) {
                best = Some((lc, c0, r));
            }
        }
    }
    let (mut lc, mut c0, mut r) =
        best.ok_or_else(|| Error::InvalidArgument("no admissible C1 on the search grid".into()))?;
    let mut step = 16.0 / steps as f64;
    while step > 1e-10 {
        let mut moved = false;
        for cand in [lc - step, lc + step] {
            if let Some((c0n, rn)) = profile(pairs, 10f64.powf(cand), e2) {
                if rn < r {
                    (lc, c0, r) = (cand, c0n, rn);
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok(PhiFit {
        c0,
        c1: 10f64.powf(lc),
        residual: r,
    })
}
