use super::noise::NoiseDescriptor;
use crate::grid_fields::{h1_norm, RegionMask, ScalarField};
use crate::{Error, Real, Result};

/// Internal data set. `i` is the energy density and `j` its square root;
/// after noise injection `i = j²` still holds.
#[derive(Debug, Clone, PartialEq)]
pub struct InternalData<T> {
    pub i: ScalarField<T>,
    pub j: ScalarField<T>,
    pub noise: NoiseDescriptor,
}

impl<T: Real> InternalData<T> {
    /// Builds a data set from `J` alone.
    pub fn from_sqrt(j: ScalarField<T>, noise: NoiseDescriptor) -> Result<Self> {
        if let Some(k) = j.values().iter().position(|&v| v < T::zero()) {
            return Err(Error::InvalidArgument(format!("negative J at node {k}")));
        }
        Ok(Self {
            i: j.map(|v| v * v),
            j,
            noise,
        })
    }
}

/// `I = q u²`, `J = √I`.
pub fn synthesize<T: Real>(q: &ScalarField<T>, u: &ScalarField<T>) -> Result<InternalData<T>> {
    q.grid().ensure_same(u.grid())?;
    if let Some(k) = q.values().iter().position(|&v| v < T::zero()) {
        return Err(Error::InvalidArgument(format!("negative q at node {k}")));
    }
    let i = q.zip_map(u, |q, u| q * u * u)?;
    let j = i.map(T::sqrt);
    Ok(InternalData {
        i,
        j,
        noise: NoiseDescriptor::noiseless(),
    })
}

/// `‖J₁ − J₂‖_{H¹(Ω)}`.
pub fn data_diff_h1<T: Real>(d1: &InternalData<T>, d2: &InternalData<T>) -> Result<T> {
    h1_norm(&d1.j.sub(&d2.j)?, &RegionMask::full(*d1.j.grid()))
}
