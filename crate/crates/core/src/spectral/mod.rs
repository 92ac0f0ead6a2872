//! Field representation on the sheared (Rogallo) frame: transforms,
//! derivative multipliers, dealiased products and frame remaps.

mod fft;
mod field;
mod grid;
mod ops;
mod product;
mod remap;

pub use field::{to_physical, to_spectral, PhysicalField, SpectralField};
pub use grid::Grid;
pub use ops::{abs_dx_pow, deriv_x, deriv_y_phys, inv_laplacian, laplacian};
pub use product::multiply_dealiased;
pub use remap::remap_shear_frame;
