//! Working-precision abstraction shared by the series engine.
//!
//! Series kernels are written once against [`Real`] and instantiated for
//! binary64 (the standard path) and [`Dd`] (the extended path).

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::dd::{Dd, DD_EPSILON};

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Unit roundoff of the format.
    const EPSILON: f64;
    /// Arguments below this are shifted up before the Stirling series.
    const STIRLING_SHIFT: f64;
    /// Number of Bernoulli correction terms used by the Stirling series.
    const STIRLING_TERMS: usize;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_dd(x: Dd) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin_pi(self) -> Self;
    fn round(self) -> Self;
    fn floor(self) -> Self;
    fn powf(self, e: Self) -> Self;
    fn pi() -> Self;
    fn ln_pi() -> Self;
    fn ln_2pi_half() -> Self;

    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }

    fn is_nonpositive_integer(self) -> bool {
        self <= Self::zero() && self.floor() == self
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON / 2.0;
    const STIRLING_SHIFT: f64 = 10.0;
    const STIRLING_TERMS: usize = 8;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn from_dd(x: Dd) -> Self {
        x.to_f64()
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin_pi(self) -> Self {
        let n = self.round();
        let r = self - n;
        let v = if r.abs() <= 0.25 {
            (std::f64::consts::PI * r).sin()
        } else {
            let c = (std::f64::consts::PI * (0.5 - r.abs())).cos();
            if r < 0.0 {
                -c
            } else {
                c
            }
        };
        if n % 2.0 != 0.0 {
            -v
        } else {
            v
        }
    }
    #[inline]
    fn round(self) -> Self {
        f64::round(self)
    }
    #[inline]
    fn floor(self) -> Self {
        f64::floor(self)
    }
    #[inline]
    fn powf(self, e: Self) -> Self {
        f64::powf(self, e)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn ln_pi() -> Self {
        1.144_729_885_849_400_2
    }
    fn ln_2pi_half() -> Self {
        0.918_938_533_204_672_8
    }
}

impl Real for Dd {
    const EPSILON: f64 = DD_EPSILON;
    const STIRLING_SHIFT: f64 = 30.0;
    const STIRLING_TERMS: usize = 15;

    #[inline]
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn from_dd(x: Dd) -> Self {
        x
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn exp(self) -> Self {
        Dd::exp(self)
    }
    fn ln(self) -> Self {
        Dd::ln(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn sin_pi(self) -> Self {
        Dd::sin_pi(self)
    }
    fn round(self) -> Self {
        Dd::round(self)
    }
    fn floor(self) -> Self {
        Dd::floor(self)
    }
    fn powf(self, e: Self) -> Self {
        Dd::powf(self, e)
    }
    fn pi() -> Self {
        Dd::PI
    }
    fn ln_pi() -> Self {
        Dd::ln_pi()
    }
    fn ln_2pi_half() -> Self {
        Dd::ln_2pi_half()
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T: Real> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        CompensatedSum {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
