//! Double-double arithmetic.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 32 significant decimal digits on top of the binary64 exponent
//! range. Only the operations needed by the series engine are provided:
//! the four field operations, `sqrt`, `exp`, `ln`, `sin(πx)` and powers.
//!
//! Algorithms follow the usual error-free transformations (Knuth two-sum,
//! FMA-based two-product) as in the QD library.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

pub const DD_EPSILON: f64 = 4.930_380_657_631_324e-32; // 2^-104

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact-as-possible `num / den` for integers representable in binary64.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Dd::from_f64(num as f64) / Dd::from_f64(den as f64)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn round(self) -> Self {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else if (hi - self.hi).abs() == 0.5 && self.lo != 0.0 {
            // halfway case on `hi`: the low word decides.
            if self.lo > 0.0 && hi < self.hi {
                Dd::from_f64(hi + 1.0)
            } else if self.lo < 0.0 && hi > self.hi {
                Dd::from_f64(hi - 1.0)
            } else {
                Dd::from_f64(hi)
            }
        } else {
            Dd::from_f64(hi)
        }
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else {
            Dd::from_f64(hi)
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let (p, e) = two_prod(ax, ax);
        let diff = (self - Dd { hi: p, lo: e }).hi;
        let (hi, lo) = two_sum(ax, diff * x * 0.5);
        Dd { hi, lo }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2.mul_f64(k);
        // r in [-ln2/2, ln2/2]; shrink by 2^10 and use expm1 doubling
        let r = r.ldexp(-10);
        let mut term = r;
        let mut s = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = (term * r) / Dd::from_f64(n);
            s += term;
            if term.hi.abs() <= 1e-34 * s.hi.abs() || n > 30.0 {
                break;
            }
        }
        for _ in 0..10 {
            // expm1(2y) = expm1(y) * (2 + expm1(y))
            s = s * (s + Dd::from_f64(2.0));
        }
        (s + Dd::ONE).ldexp(k as i32)
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::from_f64(f64::NEG_INFINITY)
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut x = Dd::from_f64(self.hi.ln());
        // Newton on exp: x <- x + a*exp(-x) - 1; one step doubles the digits.
        for _ in 0..2 {
            x = x + self * (-x).exp() - Dd::ONE;
        }
        x
    }

    /// `sin(π·self)`, exact at integers and half-integers.
    pub fn sin_pi(self) -> Self {
        let n = self.round();
        let r = self - n; // |r| <= 1/2
        let odd = (n.hi % 2.0 != 0.0) ^ (n.lo % 2.0 != 0.0);
        let v = sin_pi_reduced(r);
        if odd {
            -v
        } else {
            v
        }
    }

    pub fn cos_pi(self) -> Self {
        (self + Dd::from_f64(0.5)).sin_pi()
    }

    pub fn powf(self, e: Dd) -> Self {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        (e * self.ln()).exp()
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut k = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            k >>= 1;
        }
        if n < 0 {
            Dd::ONE / acc
        } else {
            acc
        }
    }

    pub fn ln_2pi_half() -> Dd {
        static V: OnceLock<Dd> = OnceLock::new();
        *V.get_or_init(|| (Dd::PI.mul_f64(2.0)).ln().mul_f64(0.5))
    }

    pub fn ln_pi() -> Dd {
        static V: OnceLock<Dd> = OnceLock::new();
        *V.get_or_init(|| Dd::PI.ln())
    }
}

/// sin(πr) for |r| <= 1/2.
fn sin_pi_reduced(r: Dd) -> Dd {
    let a = r.abs();
    let neg = r.hi < 0.0;
    let v = if a.hi <= 0.25 {
        taylor_sin(Dd::PI * a)
    } else {
        taylor_cos(Dd::PI * (Dd::from_f64(0.5) - a))
    };
    if neg {
        -v
    } else {
        v
    }
}

fn taylor_sin(t: Dd) -> Dd {
    if t.hi == 0.0 {
        return Dd::ZERO;
    }
    let t2 = t.sqr();
    let mut term = t;
    let mut s = t;
    let mut k = 1.0;
    loop {
        term = -(term * t2) / Dd::from_f64((k + 1.0) * (k + 2.0));
        k += 2.0;
        s += term;
        if term.hi.abs() <= 1e-34 * s.hi.abs() {
            break;
        }
    }
    s
}

fn taylor_cos(t: Dd) -> Dd {
    let t2 = t.sqr();
    let mut term = Dd::ONE;
    let mut s = Dd::ONE;
    let mut k = 0.0;
    loop {
        term = -(term * t2) / Dd::from_f64((k + 1.0) * (k + 2.0));
        k += 2.0;
        s += term;
        if term.hi.abs() <= 1e-34 {
            break;
        }
    }
    s
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
