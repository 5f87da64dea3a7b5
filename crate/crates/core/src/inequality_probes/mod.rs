//! Both sides of the auxiliary inequalities behind uniqueness and stability:
//! Caccioppoli, doubling, reverse Hölder, Muckenhoupt, three spheres, the
//! unique-continuation lower bound and the Carleman estimate.

mod balls;
mod carleman;
mod report;
mod spheres;
mod ucp;

pub use balls::{
    caccioppoli_ratio, delta_star_probe, dist_to_boundary, doubling_ratio, muckenhoupt,
    neg_power_mass, reverse_holder, NegPower,
};
pub use carleman::{alpha_beta, carleman_bump, carleman_ratio, CarlemanValue};
pub use report::{
    caccioppoli_report, carleman_report, delta_star_report, doubling_report, interior_lattice,
    muckenhoupt_report, reverse_holder_report, three_spheres_report, ucp_report, write_probe_csv,
    ProbeReport, ProbeRow,
};
pub use spheres::{three_spheres_fit, ThreeSpheres};
pub use ucp::{ucp_lowerbound_fit, BallNorm, UcpFit};
