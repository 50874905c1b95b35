//! Scalar abstraction for the numeric core.
//!
//! Everything downstream (grids, quadrature, the eigensolver, the operator
//! algebra) is generic over a real scalar so the same code runs at `f32`
//! and `f64`. Concrete aliases for the common `f64` instantiation live at
//! the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::sync::Arc;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real scalar: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal not representable in scalar type")
    }

    /// Two, the most common constant in second-order stencils.
    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// One half.
    #[inline]
    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shared, thread-safe real-valued function of one real variable.
///
/// Used for everything the math treats as "an evaluable map": mass profiles,
/// superpotentials in the deformed coordinate, potentials, metric weights.
#[derive(Clone)]
pub struct RealFn<R>(Arc<dyn Fn(R) -> R + Send + Sync>);

impl<R: Real> RealFn<R> {
    pub fn new(f: impl Fn(R) -> R + Send + Sync + 'static) -> Self {
        RealFn(Arc::new(f))
    }

    /// Constant function.
    pub fn constant(c: R) -> Self {
        RealFn::new(move |_| c)
    }

    #[inline]
    pub fn eval(&self, x: R) -> R {
        (self.0)(x)
    }

    /// Pointwise composition `self(inner(x))`.
    pub fn compose(&self, inner: &RealFn<R>) -> RealFn<R> {
        let f = self.clone();
        let g = inner.clone();
        RealFn::new(move |x| f.eval(g.eval(x)))
    }

    /// `a * self + b`.
    pub fn affine(&self, a: R, b: R) -> RealFn<R> {
        let f = self.clone();
        RealFn::new(move |x| a * f.eval(x) + b)
    }
}

impl<R> Debug for RealFn<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("RealFn(..)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        assert_eq!(f64::lit(0.25), 0.25);
        assert_eq!(f32::lit(0.25), 0.25f32);
        assert_eq!(f64::two(), 2.0);
        assert_eq!(f64::half(), 0.5);
    }

    #[test]
    fn real_fn_combinators() {
        let sq: RealFn<f64> = RealFn::new(|x| x * x);
        let shift = sq.affine(2.0, 1.0);
        assert_eq!(shift.eval(3.0), 19.0);
        let comp = sq.compose(&shift);
        assert_eq!(comp.eval(3.0), 361.0);
    }
}
