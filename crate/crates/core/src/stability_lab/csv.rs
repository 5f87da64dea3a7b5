use super::sweep::Sweep;
use crate::Result;
use std::io::Write;

pub const STABILITY_HEADER: &str = "eps,data_err,weighted_lhs,weighted_rhs,weighted_ratio,sup_err_all,sup_err_b0,sup_err_b1,sup_err_b2,sup_err_b3,theta,phi_C0,phi_C1,phi_residual";
pub const INTERP_HEADER: &str = "eps,sup_U_diff,data_err_theta,interp_ratio";

/// One row per record; the φ columns repeat the sweep-wide fit and read
/// `NaN` when no fit was possible.
pub fn write_stability_csv<W: Write>(mut w: W, sweep: &Sweep) -> Result<()> {
    writeln!(w, "{STABILITY_HEADER}")?;
    let (c0, c1, res) = sweep
        .phi
        .map_or((f64::NAN, f64::NAN, f64::NAN), |f| (f.c0, f.c1, f.residual));
    for r in &sweep.records {
        let b = r.sup_err_bands;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.eps,
            r.data_err,
            r.weighted_lhs,
            r.weighted_rhs,
            r.weighted_ratio,
            r.sup_err_all,
            b[0],
            b[1],
            b[2],
            b[3],
            r.theta,
            c0,
            c1,
            res
        )?;
    }
    Ok(())
}

pub fn write_interp_csv<W: Write>(mut w: W, sweep: &Sweep) -> Result<()> {
    writeln!(w, "{INTERP_HEADER}")?;
    for r in &sweep.interp {
        writeln!(
            w,
            "{},{},{},{}",
            r.eps, r.sup_u_diff, r.data_err_theta, r.ratio
        )?;
    }
    Ok(())
}
