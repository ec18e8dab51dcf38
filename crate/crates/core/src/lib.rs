//! Convex bodies on the unit sphere.

pub mod bodies;
mod boundary;
pub mod cli;
pub mod covering;
pub mod error;
pub mod io;
mod optimize;
pub mod regions;
pub mod sphere;
pub mod svg;
pub mod verify;
pub mod width;

pub use error::{Error, Result};
