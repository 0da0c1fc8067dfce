//! Scalar abstractions: exact fields for certificate arithmetic and
//! floating-point reals for the numeric kernels.
//!
//! Exact computations (ranks, kernels, the simplex solver, certificate
//! verification) run over any [`Field`]; the two implementors are
//! [`Rat`](crate::Rat) and the prime fields [`Gf`]. Floating kernels
//! (eigendecomposition, SDP, projection lattice) are generic over [`Real`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    num_traits::Float + num_traits::NumAssign + fmt::Debug + fmt::Display + 'static
{
    /// Lossless-enough conversion from `f64` for tolerances and literals.
    fn from_f64(x: f64) -> Self {
        num_traits::NumCast::from(x).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact field scalar. Division by a nonzero element must be exact.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {}

/// Element of the prime field GF(P). `P` must be prime; the crate only
/// instantiates P ∈ {2, 3, 5, 7}.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf<const P: u64>(u64);

impl<const P: u64> Gf<P> {
    pub fn new(v: i64) -> Self {
        Gf(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Gf::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf((self.0 * rhs.0) % P)
    }
}

impl<const P: u64> Div for Gf<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in GF({P})");
        // Fermat: x^(P-2) inverts x for prime P.
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Gf<P> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Gf<P> {
    fn one() -> Self {
        Gf(1 % P)
    }
}

impl<const P: u64> Field for Gf<P> {}

/// Shorthand rational constructor.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Integer as a rational.
pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_arithmetic() {
        for v in 1..7u64 {
            let x = Gf::<7>::new(v as i64);
            assert_eq!(x * x.inv(), Gf::<7>::one());
        }
        assert_eq!(Gf::<3>::new(2) + Gf::<3>::new(2), Gf::<3>::new(1));
        assert_eq!(-Gf::<5>::new(2), Gf::<5>::new(3));
        assert_eq!(Gf::<2>::new(1) + Gf::<2>::new(1), Gf::<2>::zero());
    }

    #[test]
    fn rat_helpers() {
        assert_eq!(rat(5, 2) + rat(1, 2), rat_int(3));
    }
}
