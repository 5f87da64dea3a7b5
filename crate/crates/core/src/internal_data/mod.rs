//! Energy-density data `I = q u²`, its square root `J`, noise injection and
//! on-disk persistence.

mod data;
mod noise;
mod persist;

pub use data::{data_diff_h1, synthesize, InternalData};
pub use noise::{add_noise, noise_field, uniform_pm1, NoiseDescriptor, NoiseModel};
pub use persist::{load_data, save_data, DATA_META, I_FILE, J_FILE};
