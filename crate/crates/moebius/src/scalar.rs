use core::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the geometry is generic over.
///
/// `tol` is the default absolute tolerance used for classification and
/// identity checks; it is much looser for `f32`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn tol() -> Self;

    /// Literal conversion; every value used this way is representable.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }
}

impl Real for f32 {
    fn tol() -> Self {
        1e-4
    }
}

impl Real for f64 {
    fn tol() -> Self {
        1e-9
    }
}
