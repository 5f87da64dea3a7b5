//! Both sides of the weighted stability estimate, the logarithmic modulus
//! `φ`, and ε-sweeps over data or coefficient perturbations.

mod csv;
mod phi;
mod sides;
mod sweep;

pub use csv::{write_interp_csv, write_stability_csv, INTERP_HEADER, STABILITY_HEADER};
pub use phi::{phi_eval, phi_fit, PhiFit};
pub use sides::{interp_check, weighted_sides};
pub use sweep::{
    bump, inset_bump, stability_sweep, Family, InterpRecord, StabilityRecord, Sweep, SweepOptions,
};
