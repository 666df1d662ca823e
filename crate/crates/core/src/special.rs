//! Gamma-function machinery: log-gamma with reflection, the reciprocal gamma
//! function, Pochhammer symbols, the Lévy jump function and the gamma
//! identities used to rewrite residue series.

use num_rational::Ratio;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Even Bernoulli numbers `B_2 .. B_30` as exact fractions.
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogGamma<T> {
    pub ln_abs: T,
    pub sign: f64,
}

/// A real gamma argument, with its pole status precomputed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaArg {
    pub x: f64,
    pub is_pole: bool,
}

impl GammaArg {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain(format!("gamma argument {x} is not finite")));
        }
        Ok(GammaArg {
            x,
            is_pole: x.is_nonpositive_integer(),
        })
    }
}

fn stirling<T: Real>(y: T) -> T {
    let mut s = (y - T::from_f64(0.5)) * y.ln() - y + T::ln_2pi_half();
    let inv = T::one() / y;
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate().take(T::STIRLING_TERMS) {
        let n = 2.0 * (k as f64 + 1.0);
        let c = T::from_f64(num) / T::from_f64(den * n * (n - 1.0));
        s += c * pow;
        pow *= inv2;
    }
    s
}

fn ln_gamma_positive<T: Real>(x: T) -> T {
    let xf = x.to_f64();
    if T::EPSILON > 1e-20 && xf <= 20.0 && x.floor() == x {
        // exact factorial keeps lnΓ(1) = lnΓ(2) = 0
        let n = xf as u32;
        let f: f64 = (1..n).map(f64::from).product();
        return T::from_f64(f.ln());
    }
    if xf >= T::STIRLING_SHIFT {
        return stirling(x);
    }
    if T::EPSILON > 1e-20 {
        // the shift recurrence cancels badly in binary64 below the shift point
        return T::from_dd(ln_gamma_positive(Dd::from_f64(xf)));
    }
    let mut y = x;
    let mut prod = T::one();
    while y.to_f64() < T::STIRLING_SHIFT {
        prod *= y;
        y += T::one();
    }
    stirling(y) - prod.ln()
}

/// `ln|Γ(x)|` and `sign Γ(x)` in the working precision of `T`.
///
/// Arguments below 1/2 go through the reflection formula
/// `Γ(x)Γ(1−x) = π / sin(πx)`.
pub fn ln_gamma<T: Real>(x: T) -> Result<LogGamma<T>> {
    let xf = x.to_f64();
    if !xf.is_finite() {
        return Err(Error::domain(format!("gamma argument {xf} is not finite")));
    }
    if x.is_nonpositive_integer() {
        return Err(Error::Pole(xf));
    }
    if xf >= 0.5 {
        return Ok(LogGamma {
            ln_abs: ln_gamma_positive(x),
            sign: 1.0,
        });
    }
    let s = x.sin_pi();
    let sign = if s.to_f64() < 0.0 { -1.0 } else { 1.0 };
    let ln_abs = T::ln_pi() - s.abs().ln() - ln_gamma_positive(T::one() - x);
    Ok(LogGamma { ln_abs, sign })
}

/// Binary64 log-gamma: `(ln|Γ(x)|, sign Γ(x))`.
pub fn log_gamma(x: f64) -> Result<(f64, f64)> {
    let lg = ln_gamma(x)?;
    Ok((lg.ln_abs, lg.sign))
}

/// `Γ(x)` rounded from a double-double evaluation.
pub fn gamma(x: f64) -> Result<f64> {
    let lg = ln_gamma(Dd::from_f64(x))?;
    Ok(lg.sign * lg.ln_abs.exp().to_f64())
}

/// `1/Γ(x)`; exactly zero at the poles `0, −1, −2, …`.
pub fn recip_gamma<T: Real>(x: T) -> T {
    if T::EPSILON > 1e-20 {
        // exp of a large f64 log loses |lnΓ|·ε
        return T::from_dd(recip_gamma(Dd::from_f64(x.to_f64())));
    }
    match ln_gamma(x) {
        Ok(lg) => T::from_f64(lg.sign) * (-lg.ln_abs).exp(),
        Err(_) => T::zero(),
    }
}

/// Largest `k` for which the Pochhammer symbol is formed as an explicit product.
const POCHHAMMER_PRODUCT_MAX: u32 = 64;

/// Rising factorial `(b)_k = b(b+1)…(b+k−1)`, `(b)_0 = 1`.
pub fn pochhammer(b: f64, k: u32) -> f64 {
    if k <= POCHHAMMER_PRODUCT_MAX || b.is_nonpositive_integer() {
        return pochhammer_product(b, k);
    }
    let bk = b + f64::from(k);
    if bk.is_nonpositive_integer() {
        return pochhammer_product(b, k);
    }
    match (ln_gamma(Dd::from_f64(bk)), ln_gamma(Dd::from_f64(b))) {
        (Ok(num), Ok(den)) => num.sign * den.sign * (num.ln_abs - den.ln_abs).exp().to_f64(),
        _ => pochhammer_product(b, k),
    }
}

pub(crate) fn pochhammer_product(b: f64, k: u32) -> f64 {
    (0..k).map(|i| b + f64::from(i)).product()
}

/// `Γ(β+1−v)` evaluated through `(−1)^v Γ(β+1) / (−β)_v`.
pub fn negated_gamma_ratio(beta: f64, v: u32) -> Result<f64> {
    let target = beta + 1.0 - f64::from(v);
    if target.is_nonpositive_integer() {
        return Err(Error::Pole(target));
    }
    let denom = pochhammer_product(-beta, v);
    if denom == 0.0 {
        return Err(Error::Pole(target));
    }
    let sign = if v.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * gamma(beta + 1.0)? / denom)
}

/// Arguments of the Lévy jump function `[j/q]_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpIndex {
    pub j: u32,
    pub q: u32,
    pub n: u32,
}

impl JumpIndex {
    pub fn new(j: u32, q: u32, n: u32) -> Result<Self> {
        if q < 2 || j == 0 || j >= q {
            return Err(Error::domain(format!(
                "jump index requires 1 <= j <= q-1, got j={j}, q={q}"
            )));
        }
        if n == 0 {
            return Err(Error::domain("jump index requires n >= 1"));
        }
        Ok(JumpIndex { j, q, n })
    }

    /// `j/q` below the jump, `(j+1)/q` from `n` on.
    pub fn value(&self) -> Ratio<i64> {
        let q = i64::from(self.q);
        if self.j < self.n {
            Ratio::new(i64::from(self.j), q)
        } else {
            Ratio::new(i64::from(self.j) + 1, q)
        }
    }
}

/// The Lévy jump function `[j/q]_n`.
pub fn levy_jump(j: u32, q: u32, n: u32) -> Result<Ratio<i64>> {
    Ok(JumpIndex::new(j, q, n)?.value())
}

/// Relative residual of the Gauss–Legendre multiplication formula
/// `Γ(mz) = (2π)^{(1−m)/2} m^{mz−1/2} ∏_{r<m} Γ(z + r/m)`.
pub fn gauss_legendre_check<T: Real>(m: u32, z: T) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("multiplication order must be positive"));
    }
    let mt = T::from_f64(f64::from(m));
    let lhs = ln_gamma(mt * z)?;
    let mut rhs_ln = T::from_f64((1.0 - f64::from(m)) / 2.0) * (T::ln_2pi_half() + T::ln_2pi_half())
        + (mt * z - T::from_f64(0.5)) * mt.ln();
    let mut rhs_sign = 1.0;
    for r in 0..m {
        let lg = ln_gamma(z + T::from_f64(f64::from(r)) / mt)?;
        rhs_ln += lg.ln_abs;
        rhs_sign *= lg.sign;
    }
    let ratio = T::from_f64(rhs_sign * lhs.sign) * (rhs_ln - lhs.ln_abs).exp();
    Ok((T::one() - ratio).abs().to_f64())
}
