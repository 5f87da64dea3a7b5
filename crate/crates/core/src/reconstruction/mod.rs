//! Recovery of `q` from internal data: a lagged-denominator fixed point for
//! `w = |u|` followed by `q = I / w²`.

mod options;
mod picard;
mod sign;
mod summary;

pub use options::ReconOptions;
pub use picard::{reconstruct_w, reconstruct_w_from, recover_q, ReconResult};
pub use sign::recover_sign;
pub use summary::{
    band_sup_errors, band_sup_errors_with, roundtrip, ErrorSummary, Roundtrip, DISTANCE_BANDS,
};
