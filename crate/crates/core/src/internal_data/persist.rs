use super::data::InternalData;
use super::noise::NoiseDescriptor;
use crate::grid_fields::{load_field, save_field};
use crate::{Error, Real, Result};
use std::fs;
use std::path::Path;

pub const I_FILE: &str = "I.txt";
pub const J_FILE: &str = "J.txt";
pub const DATA_META: &str = "data.meta";

pub fn save_data<T: Real>(dir: impl AsRef<Path>, d: &InternalData<T>) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    save_field(dir.join(I_FILE), &d.i)?;
    save_field(dir.join(J_FILE), &d.j)?;
    fs::write(dir.join(DATA_META), format!("{}\n", d.noise))?;
    Ok(())
}

pub fn load_data<T: Real>(dir: impl AsRef<Path>) -> Result<InternalData<T>> {
    let dir = dir.as_ref();
    let i = load_field(dir.join(I_FILE))?;
    let j = load_field(dir.join(J_FILE))?;
    i.grid().ensure_same(j.grid())?;
    if let Some(k) = i.values().iter().position(|&v: &T| v < T::zero()) {
        return Err(Error::Parse(format!("negative energy density at node {k}")));
    }
    let noise: NoiseDescriptor = fs::read_to_string(dir.join(DATA_META))?.parse()?;
    Ok(InternalData { i, j, noise })
}
