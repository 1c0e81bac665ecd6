//! The standard pants group generated by `A_inf`, `A_0`, `A_1` with
//! `A_inf A_0 A_1 = Id`, its fundamental set, seams, hypercycles and the
//! maps `Omega_0`, `Omega_1` that rotate boundary labels.
//!
//! Boundary lengths are given as half-lengths: a boundary geodesic of
//! length `2c` is recorded as `c`, and `c = 0` is a puncture.

mod geometry;
mod group;
mod hypercycle;
mod omega;

pub use geometry::{common_perpendicular, Circle, FundamentalSet, Geodesic, Perpendicular};
pub use group::{standard_a_inf, BoundaryLengths, PantsGroup, PantsKind, Slot};
pub use hypercycle::{default_half_width, hypercycle_inf, Hypercycle, Strip};
pub use omega::{omega, omega_from_source};

use moebius::MoebiusError;

pub type Pants = PantsGroup<f64>;
pub type Lengths = BoundaryLengths<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PantsError {
    #[error("boundary length {0} is negative or not finite")]
    BadLength(f64),
    #[error("lengths {0:?} follow no supported zero pattern; rotate the slot labels so the punctures come last, e.g. (c1, c2, 0) or (c1, 0, 0)")]
    Relabel([f64; 3]),
    #[error("operation needs all boundary lengths positive")]
    Cusped,
    #[error("slot {0} is a puncture")]
    Puncture(Slot),
    #[error("Im(mu) = {0} outside [0, pi)")]
    ImaginaryRange(f64),
    #[error("hypercycles at this pants overlap (gap {0})")]
    Overlap(f64),
    #[error("relabeling map failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}
