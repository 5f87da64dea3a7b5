use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconOptions {
    /// Lower bound on `w` wherever it divides.
    pub w_floor: f64,
    /// Relaxation weight in `(0, 1]` applied to each Picard update.
    pub damping: f64,
    pub max_picard: usize,
    /// Stop once the relative l² update falls below this.
    pub picard_tol: f64,
    /// `w` level defining the trusted region.
    pub trust_threshold: f64,
    /// Coefficient bounds enforced inside the fixed-point map.
    pub q_min: f64,
    pub q_max: f64,
    /// Recover the sign of `u` from the nodal domains of `J` and iterate on
    /// the signed field. When off, iterate on `|u|` with boundary data `|g|`.
    pub sign_recovery: bool,
    /// Relative residual for every linear solve.
    pub linear_tol: f64,
}

impl Default for ReconOptions {
    fn default() -> Self {
        Self {
            w_floor: 1e-6,
            damping: 0.7,
            max_picard: 200,
            picard_tol: 1e-8,
            trust_threshold: 0.1,
            q_min: 1.0,
            q_max: 16.0,
            sign_recovery: true,
            linear_tol: 1e-12,
        }
    }
}

impl ReconOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.w_floor > 0.0 && self.w_floor.is_finite()) {
            return bad(format!("w_floor must be positive, got {}", self.w_floor));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return bad(format!("damping must lie in (0, 1], got {}", self.damping));
        }
        if !(self.picard_tol > 0.0) || !(self.linear_tol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.max_picard == 0 {
            return bad("max_picard must be at least 1".into());
        }
        if !(self.q_min >= 0.0 && self.q_min <= self.q_max && self.q_max.is_finite()) {
            return bad(format!(
                "need 0 <= q_min <= q_max, got [{}, {}]",
                self.q_min, self.q_max
            ));
        }
        if !(self.trust_threshold >= 0.0) {
            return bad(format!(
                "trust threshold must be non-negative, got {}",
                self.trust_threshold
            ));
        }
        Ok(())
    }
}
