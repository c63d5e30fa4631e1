//! Exact arithmetic for the universal Weierstrass curve with full level-3
//! structure over `Z[1/3]`.

pub mod base_scheme;
pub mod curve_aut;
pub mod error;
pub mod exact_rings;
pub mod fibers;
pub mod landweber;
pub mod level3;
pub mod literal;
pub mod pairing_classify;
pub mod weierstrass;

pub use error::{Error, Result};
