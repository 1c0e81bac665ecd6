//! Möbius transformations of the Riemann sphere, stored as SL(2,C)
//! representatives of PSL(2,C) elements.
//!
//! Everything is generic over a [`Real`] scalar; [`Mat2C`] and [`Point`]
//! are the double precision instances used by the rest of the workspace.

mod matrix;
mod point;
mod scalar;

pub use matrix::{from_three_points, to_standard, IsometryClass, Moebius};
pub use num_complex::Complex;
pub use point::SpherePoint;
pub use scalar::Real;

pub type Mat2C = Moebius<f64>;
pub type Mat2C32 = Moebius<f32>;
pub type Point = SpherePoint<f64>;
pub type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MoebiusError {
    #[error("matrix is singular")]
    Singular,
    #[error("identity has no isolated fixed points")]
    Identity,
    #[error("transformation is not loxodromic")]
    NotLoxodromic,
    #[error("three points are not distinct")]
    Degenerate,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for a complex number with real and imaginary parts.
pub fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}
