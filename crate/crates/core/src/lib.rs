//! Numerical toolkit for general monotone functions, normalized Bessel
//! functions and the Hankel/cosine transforms of such functions.

pub mod bessel;
pub mod error;
pub mod gallery;
pub mod gm;
pub mod par;
pub mod profile;
pub mod quad;
pub mod series;
pub mod special;
pub mod transforms;

pub use bessel::{BesselOrder, NormalizedBessel};
pub use error::{Error, Result};
pub use profile::RadialProfile;
