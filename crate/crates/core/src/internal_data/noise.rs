use super::data::InternalData;
use crate::grid_fields::{h1_norm, Grid, RegionMask, ScalarField};
use crate::{Error, Real, Result};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use std::fmt;

const RANDOM_MODES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseModel {
    None,
    /// `sin(3πx) sin(3πy)`.
    Deterministic,
    /// Seeded combination of the first sine modes.
    Random,
}

impl NoiseModel {
    pub fn tag(self) -> &'static str {
        match self {
            NoiseModel::None => "none",
            NoiseModel::Deterministic => "deterministic",
            NoiseModel::Random => "random",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(NoiseModel::None),
            "deterministic" => Ok(NoiseModel::Deterministic),
            "random" => Ok(NoiseModel::Random),
            _ => Err(Error::InvalidArgument(format!("unknown noise model `{s}`"))),
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// What was added to a data set; serialized as `model eps seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseDescriptor {
    pub model: NoiseModel,
    pub eps: f64,
    pub seed: u64,
}

impl NoiseDescriptor {
    pub fn noiseless() -> Self {
        Self {
            model: NoiseModel::None,
            eps: 0.0,
            seed: 0,
        }
    }
}

impl fmt::Display for NoiseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.model, self.eps, self.seed)
    }
}

impl std::str::FromStr for NoiseDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [model, eps, seed] = parts[..] else {
            return Err(Error::Parse(format!(
                "expected `model eps seed`, got `{}`",
                s.trim()
            )));
        };
        let eps: f64 = eps
            .parse()
            .map_err(|_| Error::Parse(format!("bad eps `{eps}`")))?;
        let seed: u64 = seed
            .parse()
            .map_err(|_| Error::Parse(format!("bad seed `{seed}`")))?;
        Ok(Self {
            model: NoiseModel::from_tag(model)?,
            eps,
            seed,
        })
    }
}

/// Uniform draw on `[-1, 1)` from the top 53 bits of the generator.
pub fn uniform_pm1(rng: &mut SplitMix64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * u - 1.0
}

/// Perturbation shape with unit discrete `H¹` norm. The seed only matters for
/// the random model.
pub fn noise_field<T: Real>(grid: Grid, model: NoiseModel, seed: u64) -> Result<ScalarField<T>> {
    let pi = T::PI();
    let raw = match model {
        NoiseModel::None => return Ok(ScalarField::zeros(grid)),
        NoiseModel::Deterministic => {
            let three = T::lit(3.0);
            ScalarField::from_fn(grid, |x, y| (three * pi * x).sin() * (three * pi * y).sin())
        }
        NoiseModel::Random => {
            let mut rng = SplitMix64::seed_from_u64(seed);
            let coef: Vec<T> = (0..RANDOM_MODES * RANDOM_MODES)
                .map(|_| T::lit(uniform_pm1(&mut rng)))
                .collect();
            ScalarField::from_fn(grid, |x, y| {
                let mut acc = T::zero();
                for m in 0..RANDOM_MODES {
                    let sx = (T::from_usize_lossy(m + 1) * pi * x).sin();
                    for n in 0..RANDOM_MODES {
                        acc += coef[m * RANDOM_MODES + n]
                            * sx
                            * (T::from_usize_lossy(n + 1) * pi * y).sin();
                    }
                }
                acc
            })
        }
    };
    let norm = h1_norm(&raw, &RegionMask::full(grid))?;
    if !(norm > T::zero()) {
        return Err(Error::InvalidArgument(
            "noise shape vanishes on this grid".into(),
        ));
    }
    Ok(raw.scale(norm.recip()))
}

/// `J̃ = max(J + eps·ρ, 0)`, `Ĩ = J̃²`.
pub fn add_noise<T: Real>(
    d: &InternalData<T>,
    model: NoiseModel,
    eps: f64,
    seed: u64,
) -> Result<InternalData<T>> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "noise amplitude must be finite and non-negative, got {eps}"
        )));
    }
    if model == NoiseModel::None && eps != 0.0 {
        return Err(Error::InvalidArgument(
            "model `none` takes no amplitude".into(),
        ));
    }
    let descriptor = NoiseDescriptor { model, eps, seed };
    if eps == 0.0 {
        return Ok(InternalData {
            noise: descriptor,
            ..d.clone()
        });
    }
    let rho = noise_field::<T>(*d.j.grid(), model, seed)?;
    let e = T::lit(eps);
    let j = d.j.zip_map(&rho, |j, r| (j + e * r).max(T::zero()))?;
    InternalData::from_sqrt(j, descriptor)
}
