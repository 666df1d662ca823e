//! Independent ground truth for `f_α`, computed without the residue series.
//!
//! Two methods share nothing with the series path or with each other beyond
//! the quadrature rule:
//!
//! * `BromwichReal` deforms the inversion contour of `e^{−s^α}` onto its
//!   steepest-descent path, which turns the oscillatory real-axis integral
//!   into the non-oscillatory Zolotarev–Kanter form
//!   `f(x) = α/(1−α) · x^{−1/(1−α)} · (1/π) ∫_0^π A(φ) e^{−x^{−α/(1−α)} A(φ)} dφ`.
//! * `MellinLine` integrates the Mellin–Barnes representation
//!   `f(x) = (1/2π) ∫ α Γ(1+s)/Γ(1+αs) · x^{αs−1} dt`, `s = c + it`,
//!   along a vertical line through the real saddle.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_points, QuadConfig};
use crate::scalar::Real;
use crate::special::{gamma, log_gamma};
use crate::wright::{EvalReport, PrecisionPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMethod {
    BromwichReal,
    MellinLine,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Method whose value is reported.
    pub method: OracleMethod,
    /// Absolute agreement floor between the two methods.
    pub abs_tol: f64,
    /// Relative accuracy requested from each quadrature.
    pub rel_tol: f64,
    /// Subdivision budget for each adaptive quadrature.
    pub max_nodes: usize,
    /// Evaluate both methods and require agreement.
    pub cross_check: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            method: OracleMethod::BromwichReal,
            abs_tol: 1e-300,
            rel_tol: 1e-11,
            max_nodes: 4000,
            cross_check: true,
        }
    }
}

impl OracleConfig {
    pub fn new(method: OracleMethod, abs_tol: f64) -> Result<Self> {
        if abs_tol.is_nan() || abs_tol <= 0.0 {
            return Err(Error::domain("oracle abs_tol must be positive"));
        }
        Ok(OracleConfig {
            method,
            abs_tol,
            ..OracleConfig::default()
        })
    }

    /// Single-method configuration, used where speed matters more than the
    /// second opinion (inner loops of other quadratures).
    pub fn fast() -> Self {
        OracleConfig {
            cross_check: false,
            ..OracleConfig::default()
        }
    }

    fn quad(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: 0.0,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_nodes,
        }
    }

    fn agree(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= 3.0 * self.abs_tol.max(self.rel_tol * a.abs().max(b.abs()))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("x = {x} must be positive and finite")));
    }
    Ok(())
}

/// `ln A(φ)` of the Zolotarev–Kanter kernel.
fn ln_kernel(alpha: f64, phi: f64) -> f64 {
    let s_phi = if phi > FRAC_PI_2 { (PI - phi).sin() } else { phi.sin() };
    let s_a = (alpha * phi).sin();
    let s_1a = ((1.0 - alpha) * phi).sin();
    (s_a / s_phi).ln() / (1.0 - alpha) + (s_1a / s_a).ln()
}

/// `A(0) = (1−α) α^{α/(1−α)}`, the minimum of the kernel.
pub fn kernel_floor(alpha: f64) -> f64 {
    (1.0 - alpha) * alpha.powf(alpha / (1.0 - alpha))
}

/// Scaled variable `X = x^{−α/(1−α)}`.
fn zolotarev_scale(alpha: f64, x: f64) -> f64 {
    (-alpha / (1.0 - alpha) * x.ln()).exp()
}

/// Smallest `φ` with `g(φ) ≥ level` for increasing `g`.
fn bisect(g: impl Fn(f64) -> f64, level: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= level {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Breakpoints on `(0, π)` for an integrand `∝ e^{−X (A − A0)}`, plus the
/// interior peak of `A e^{−XA}` when there is one; the last point cuts the
/// range where the exponent passes `cut`.
fn zolotarev_points(alpha: f64, big_x: f64, with_peak: bool, cut: f64) -> Vec<f64> {
    let a0 = kernel_floor(alpha);
    let excess = |phi: f64| big_x * (ln_kernel(alpha, phi).exp() - a0);
    let end = bisect(excess, cut);
    let mut pts = vec![0.0, end];
    for d in [0.05, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0] {
        if d < cut {
            pts.push(bisect(excess, d));
        }
    }
    if with_peak && big_x * a0 < 1.0 {
        let ln_x = big_x.ln();
        for v in [0.1f64, 0.5, 1.0, 2.0, 5.0] {
            let target = v.ln() - ln_x;
            pts.push(bisect(|phi| ln_kernel(alpha, phi), target));
        }
    }
    pts.retain(|&p| p <= end);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    pts
}

/// Exponent beyond which a term `e^{−d}` is negligible against the peak.
const EXP_CUT: f64 = 745.0;

/// `(value, abs_err)` of a quadrature.
type Weighted = (f64, f64);

fn bromwich_real(alpha: f64, x: f64, cfg: &OracleConfig) -> Result<(f64, f64, usize)> {
    let big_x = zolotarev_scale(alpha, x);
    let a0 = kernel_floor(alpha);
    let pts = zolotarev_points(alpha, big_x, true, EXP_CUT);
    if pts.len() < 2 {
        // the whole range sits past the cut: f underflows
        return Ok((0.0, 0.0, 0));
    }
    let integrand = |phi: f64| -> Result<f64> {
        if phi <= 0.0 || phi >= PI {
            return Ok(0.0);
        }
        let a = ln_kernel(alpha, phi).exp();
        Ok(a * (-big_x * (a - a0)).exp())
    };
    let r = integrate_points(integrand, &pts, &cfg.quad())?;
    let ln_pref = (alpha / (1.0 - alpha)).ln() - x.ln() / (1.0 - alpha) - big_x * a0 - PI.ln();
    let pref = ln_pref.exp();
    Ok((pref * r.value, pref * r.abs_err, r.evaluations))
}

/// Complex log-gamma by upward shift and the Stirling series; `Re z > 0`.
fn ln_gamma_complex(mut z: Complex64) -> Complex64 {
    const B: [(f64, f64); 8] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
    ];
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 16.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut s = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
    for (k, &(n, d)) in B.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        s += pow * (n / (d * m * (m - 1.0)));
        pow *= inv2;
    }
    s - shift
}

fn mellin_exponent(alpha: f64, ln_x: f64, c: f64) -> f64 {
    let g1 = log_gamma(1.0 + c).map(|g| g.0).unwrap_or(f64::INFINITY);
    let g2 = log_gamma(1.0 + alpha * c).map(|g| g.0).unwrap_or(f64::INFINITY);
    g1 - g2 + alpha * c * ln_x
}

/// Real abscissa minimising `|Γ(1+c)/Γ(1+αc)| x^{αc}`.
fn mellin_abscissa(alpha: f64, x: f64) -> f64 {
    let ln_x = x.ln();
    let (mut lo, mut hi) = (-0.5, 4.0 + 4.0 * alpha.powf(alpha / (1.0 - alpha)) * zolotarev_scale(alpha, x));
    let h = |c: f64| mellin_exponent(alpha, ln_x, c);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let c1 = hi - phi * (hi - lo);
        let c2 = lo + phi * (hi - lo);
        if h(c1) < h(c2) {
            hi = c2;
        } else {
            lo = c1;
        }
        if hi - lo < 1e-9 * (1.0 + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn mellin_line(alpha: f64, x: f64, cfg: &OracleConfig) -> Result<(f64, f64, usize)> {
    let ln_x = x.ln();
    let c = mellin_abscissa(alpha, x);
    let ln_g = |t: f64| -> Complex64 {
        let s = Complex64::new(c, t);
        ln_gamma_complex(s + 1.0) - ln_gamma_complex(s * alpha + 1.0)
    };
    let base = ln_g(0.0).re;
    // decay is e^{−π(1−α)|t|/2} times a power; walk out until negligible
    let rate = 0.5 * PI * (1.0 - alpha);
    let floor = (cfg.rel_tol * 1e-3 * rate).ln();
    let step = (1.0 + c.abs().sqrt()).min(1.0 / rate).max(0.25);
    let mut t_max = step;
    let mut past = false;
    let mut prev = 0.0;
    loop {
        let m = ln_g(t_max).re - base;
        if m < floor && past {
            break;
        }
        past = past || m < prev;
        prev = m;
        t_max += step;
        if t_max > 1e6 {
            return Err(Error::QuadratureFailure {
                value: f64::NAN,
                abs_err: f64::INFINITY,
            });
        }
    }
    let omega = 1.0 + (1.0 + c.abs() + t_max).ln() + alpha * ln_x.abs();
    let width = (PI / omega).min(2.0);
    let panels = (t_max / width).ceil() as usize;
    let pts: Vec<f64> = (0..=panels).map(|k| t_max * k as f64 / panels as f64).collect();
    let integrand = |t: f64| -> Result<f64> {
        let l = ln_g(t);
        Ok((l.re - base).exp() * (l.im + alpha * t * ln_x).cos())
    };
    let quad = QuadConfig {
        max_subdivisions: cfg.max_nodes.max(2 * panels),
        ..cfg.quad()
    };
    let r = integrate_points(integrand, &pts, &quad)?;
    let ln_pref = alpha.ln() + base + (alpha * c - 1.0) * ln_x - PI.ln();
    let pref = ln_pref.exp();
    Ok((pref * r.value, pref * r.abs_err, r.evaluations))
}

/// True when `f_α(x)` is below the smallest subnormal. Once `X A0 > 1` the
/// kernel integral is at most `A0 ≤ 1`, so the log prefactor alone decides.
fn underflows(alpha: f64, x: f64) -> bool {
    let big_x = zolotarev_scale(alpha, x);
    let a0 = kernel_floor(alpha);
    let ln_pref = (alpha / (1.0 - alpha)).ln() - x.ln() / (1.0 - alpha) - big_x * a0 - PI.ln();
    big_x * a0 > 1.0 && ln_pref < -750.0
}

/// `f_α(x)` from the quadrature oracle.
pub fn density_oracle(alpha: f64, x: f64, cfg: &OracleConfig) -> Result<EvalReport> {
    check_alpha(alpha)?;
    check_x(x)?;
    if underflows(alpha, x) {
        return Ok(EvalReport {
            value: 0.0,
            abs_err_estimate: 0.0,
            terms_used: 0,
            max_term_magnitude: 0.0,
            cancellation_ratio: 1.0,
            precision_path: PrecisionPath::Oracle,
            precision_loss: false,
        });
    }
    let run = |m| match m {
        OracleMethod::BromwichReal => bromwich_real(alpha, x, cfg),
        OracleMethod::MellinLine => mellin_line(alpha, x, cfg),
    };
    let (value, mut abs_err, mut evals) = run(cfg.method)?;
    if cfg.cross_check {
        let other = match cfg.method {
            OracleMethod::BromwichReal => OracleMethod::MellinLine,
            OracleMethod::MellinLine => OracleMethod::BromwichReal,
        };
        let (v2, _, e2) = run(other)?;
        if !cfg.agree(value, v2) {
            let (bromwich, mellin) = match cfg.method {
                OracleMethod::BromwichReal => (value, v2),
                OracleMethod::MellinLine => (v2, value),
            };
            return Err(Error::OracleDisagreement { bromwich, mellin });
        }
        abs_err = abs_err.max((value - v2).abs());
        evals += e2;
    }
    Ok(EvalReport {
        value,
        abs_err_estimate: abs_err,
        terms_used: evals,
        max_term_magnitude: value.abs(),
        cancellation_ratio: if value == 0.0 { f64::INFINITY } else { 1.0 },
        precision_path: PrecisionPath::Oracle,
        precision_loss: false,
    })
}

/// `F_α(x) = P(X ≤ x)` via `(1/π) ∫_0^π exp(−x^{−α/(1−α)} A(φ)) dφ`.
pub fn cdf_oracle(alpha: f64, x: f64, cfg: &OracleConfig) -> Result<f64> {
    check_alpha(alpha)?;
    check_x(x)?;
    let big_x = zolotarev_scale(alpha, x);
    let a0 = kernel_floor(alpha);
    let pts = zolotarev_points(alpha, big_x, false, EXP_CUT);
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let r = integrate_points(
        |phi| {
            if phi <= 0.0 || phi >= PI {
                return Ok(0.0);
            }
            Ok((-big_x * (ln_kernel(alpha, phi).exp() - a0)).exp())
        },
        &pts,
        &cfg.quad(),
    )?;
    Ok(((-big_x * a0).exp() * r.value / PI).min(1.0))
}

/// Coefficients `c_n = (−1)^{n+1} Γ(αn+1) sin(παn) / (π n!)` of the large-x
/// expansion `f(x) = Σ c_n x^{−αn−1}`.
fn tail_coefficient(alpha: f64, n: u32) -> f64 {
    let nf = f64::from(n);
    let (lg, sg) = log_gamma(alpha * nf + 1.0).expect("positive argument");
    let (lf, _) = log_gamma(nf + 1.0).expect("positive argument");
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    sign * sg * (lg - lf).exp() * (alpha * nf).sin_pi() / PI
}

/// `∫_x^∞ x'^ν f_α(x') dx'` from the large-x expansion, for `ν < α`.
fn tail_series(alpha: f64, nu: f64, x: f64) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut small = 0;
    for n in 1..400u32 {
        let e = alpha * f64::from(n) - nu;
        let t = tail_coefficient(alpha, n) * (-e * x.ln()).exp() / e;
        sum += t;
        // sin(παn) vanishes periodically for rational α, so one tiny term
        // proves nothing
        if t.abs() < 1e-17 * sum.abs() && t.abs() <= last {
            small += 1;
            if small >= 3 {
                return Ok((sum, t.abs() + 1e-16 * sum.abs()));
            }
        } else {
            small = 0;
        }
        last = t.abs();
    }
    Err(Error::TermCapExceeded { cap: 400 })
}

/// `P(X > x)` by the convergent large-x series; accurate once `x^α` is
/// moderately large.
pub fn tail_mass(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_x(x)?;
    Ok(tail_series(alpha, 0.0, x)?.0)
}

/// Point below which `f_α` is under `e^{−600}` of its scale.
pub fn lower_cutoff(alpha: f64) -> f64 {
    let big_x = 600.0 / kernel_floor(alpha);
    (-(1.0 - alpha) / alpha * big_x.ln()).exp()
}

/// Point above which the large-x series converges quickly.
pub fn upper_split(alpha: f64) -> f64 {
    50f64.powf(1.0 / alpha)
}

/// `∫_lo^hi g(x) dx` in the variable `u = ln x`, with extra breakpoints.
pub(crate) fn integrate_log<F>(mut fx: F, lo: f64, hi: f64, splits: &[f64], quad: &QuadConfig) -> Result<Weighted>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut pts = vec![lo.ln()];
    pts.extend(splits.iter().filter(|&&s| s > lo && s < hi).map(|s| s.ln()));
    pts.push(hi.ln());
    let n = 24;
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    for k in 1..n {
        pts.push(a + (b - a) * k as f64 / n as f64);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let r = integrate_points(
        |u| {
            let x = u.exp();
            Ok(x * fx(x)?)
        },
        &pts,
        quad,
    )?;
    Ok((r.value, r.abs_err))
}

/// `E[X^ν] = ∫ x^ν f_α(x) dx` by quadrature with a series tail.
///
/// The closed form `Γ(1−ν/α)/Γ(1−ν)` is available as [`moment_closed_form`]
/// and is checked against this in tests.
pub fn moment_oracle(alpha: f64, nu: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !nu.is_finite() {
        return Err(Error::domain("moment order must be finite"));
    }
    if nu >= alpha {
        return Err(Error::DivergentMoment { alpha, nu });
    }
    let cfg = OracleConfig::fast();
    let lo = lower_cutoff(alpha);
    let hi = upper_split(alpha);
    let quad = QuadConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-11,
        max_subdivisions: 4000,
    };
    let (body, _) = integrate_log(
        |x| Ok(x.powf(nu) * density_oracle(alpha, x, &cfg)?.value),
        lo,
        hi,
        &[1.0],
        &quad,
    )?;
    let (tail, _) = tail_series(alpha, nu, hi)?;
    Ok(body + tail)
}

/// `Γ(1−ν/α) / Γ(1−ν)` for `ν < α`.
pub fn moment_closed_form(alpha: f64, nu: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if nu >= alpha {
        return Err(Error::DivergentMoment { alpha, nu });
    }
    Ok(gamma(1.0 - nu / alpha)? / gamma(1.0 - nu)?)
}
