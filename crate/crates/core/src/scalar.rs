//! The floating-point scalar abstraction the rest of the crate is generic over.

use core::fmt;
use core::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::StandardNormal;

/// Floating-point scalar type (`f32` or `f64`).
///
/// Everything numeric in this crate — divergences, indices, regret traces —
/// is generic over this trait. The two sampling hooks keep the reward model
/// inside the scalar type so streams stay bit-reproducible per precision.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// One draw from the standard normal distribution.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One draw uniform on `[0, 1)`.
    fn uniform_01<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Pull counts converted to the scalar type. Counts at desk scale stay
    /// far below the mantissa limit, so the conversion is exact.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("pull count representable in scalar type")
    }
}

impl Scalar for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn uniform_01<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen()
    }
}

impl Scalar for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn uniform_01<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen()
    }
}
