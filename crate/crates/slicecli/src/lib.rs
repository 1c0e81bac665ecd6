//! Rasterizes slices `{tau : (c, tau) quasi-Fuchsian}` of the once-punctured
//! torus character variety at fixed `c`, and analyses the result:
//! connected components, the `tau -> -tau`, `tau -> conj(tau)` and
//! `tau -> tau + 2c` symmetries, and nesting across several `c`.

mod analysis;
mod config;
mod image;
mod job;
mod overlay;

pub use analysis::{components, symmetry_check, CheckResult, ComponentReport, SymmetryReport};
pub use config::Config;
pub use image::{read_ppm, render, SliceImage, PALETTE};
pub use job::{RasterJob, Window};
pub use overlay::{overlay, Overlay};

pub use bq::Outcome;

#[derive(Debug, thiserror::Error)]
pub enum SliceError {
    #[error("invalid job: {0}")]
    InvalidJob(String),
    #[error("jobs do not share window and size")]
    Mismatch,
    #[error("bad image: {0}")]
    Format(String),
    #[error(transparent)]
    Bq(#[from] bq::BqError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
