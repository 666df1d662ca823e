//! The Lévy-smashed gamma family: the law of `L·G` with `L` one-sided stable
//! of index `α` and `G ~ Gamma(γ, 1)`, plus the Lévy–Smirnov law.
//!
//! Closed forms cover `α = 1/2` (a scaled beta-prime law) and `α = 1` (the
//! gamma law itself). Other `α < 1` go through the mixture
//! `∫ f_α(e^v) g_γ(x e^{−v}) dv` on a fixed Gauss–Legendre grid in `v`, with
//! the Lévy density values cached per grid panel and shared between shapes.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use statrs::function::beta::beta_reg;
use statrs::function::gamma::gamma_lr;

use crate::error::{Error, Result};
use crate::levy::{DensityConfig, LevyDensity, LevyIndex};
use crate::oracle::{density_oracle, lower_cutoff, OracleConfig};
use crate::quad::{gauss_legendre, integrate_points, QuadConfig};
use crate::special::log_gamma;
use crate::wright::{eval_wright, EvalReport, PrecisionPath, SeriesConfig, WrightSpec};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmashedGammaParams {
    pub alpha: f64,
    /// The gamma shape `γ`; also the time `t` of the smashed process.
    pub gamma_shape: f64,
}

impl SmashedGammaParams {
    pub fn new(alpha: f64, gamma_shape: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha = {alpha} must be positive")));
        }
        if !(gamma_shape > 0.0 && gamma_shape.is_finite()) {
            return Err(Error::domain(format!("gamma shape {gamma_shape} must be positive")));
        }
        Ok(SmashedGammaParams { alpha, gamma_shape })
    }

    /// Re-checks parameters built by struct literal.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.alpha, self.gamma_shape).map(|_| ())
    }

    /// `α > 1` is accepted but nothing about it is certified.
    pub fn is_experimental(&self) -> bool {
        self.alpha > 1.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevySmirnovParams {
    pub mu: f64,
}

impl LevySmirnovParams {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!("mu = {mu} must be positive")));
        }
        Ok(LevySmirnovParams { mu })
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("x = {x} must be positive and finite")));
    }
    Ok(())
}

fn ln_gamma_fn(x: f64) -> f64 {
    log_gamma(x).expect("positive argument").0
}

fn closed_report(value: f64, log_scale: f64) -> EvalReport {
    EvalReport {
        value,
        abs_err_estimate: 8.0 * f64::EPSILON * value.abs() * (1.0 + log_scale.abs()),
        terms_used: 1,
        max_term_magnitude: value.abs(),
        cancellation_ratio: 1.0,
        precision_path: PrecisionPath::Standard,
        precision_loss: false,
    }
}

/// `4Γ(γ+½)(4x)^{γ−1}(1+4x)^{−γ−½} / (√π Γ(γ))`.
fn half_closed_form(gamma: f64, x: f64) -> EvalReport {
    let s = 4.0 * x;
    let ln = 4f64.ln() + ln_gamma_fn(gamma + 0.5) - ln_gamma_fn(gamma) - 0.5 * PI.ln()
        + (gamma - 1.0) * s.ln()
        - (gamma + 0.5) * s.ln_1p();
    closed_report(ln.exp(), ln)
}

fn gamma_pdf(gamma: f64, t: f64) -> f64 {
    gamma_pdf_with(gamma, ln_gamma_fn(gamma), t)
}

/// Gamma density with `ln Γ(γ)` supplied by the caller.
fn gamma_pdf_with(gamma: f64, ln_gamma: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    ((gamma - 1.0) * t.ln() - t - ln_gamma).exp()
}

/// Gauss–Legendre grid in `v = ln u` carrying cached values of `f_α(e^v)`.
struct LevyGrid {
    alpha: f64,
    density: Option<LevyDensity>,
    oracle: OracleConfig,
    width: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    v_min: f64,
    panels: Mutex<HashMap<i64, Arc<Vec<f64>>>>,
}

const GRID_NODES: usize = 12;

impl LevyGrid {
    fn new(alpha: f64) -> Self {
        let oracle = OracleConfig::fast();
        let density = LevyIndex::from_alpha(alpha).ok().and_then(|idx| {
            LevyDensity::with_config(
                &idx,
                DensityConfig {
                    oracle,
                    ..DensityConfig::default()
                },
            )
            .ok()
        });
        // the left tail varies on a scale ~ (1−α)/α in v
        let kappa = alpha / (1.0 - alpha);
        let (nodes, weights) = gauss_legendre(GRID_NODES);
        LevyGrid {
            alpha,
            density,
            oracle,
            width: 0.125 * (1.0 / kappa).min(1.0),
            nodes,
            weights,
            v_min: lower_cutoff(alpha).ln(),
            panels: Mutex::new(HashMap::new()),
        }
    }

    fn levy(&self, u: f64) -> Result<f64> {
        Ok(match &self.density {
            Some(d) => d.eval(u)?.value,
            None => density_oracle(self.alpha, u, &self.oracle)?.value,
        })
    }

    fn abscissa(&self, k: i64, i: usize) -> f64 {
        self.width * (k as f64 + 0.5 * (1.0 + self.nodes[i]))
    }

    fn panel(&self, k: i64) -> Result<Arc<Vec<f64>>> {
        if let Some(p) = self.panels.lock().expect("grid cache poisoned").get(&k) {
            return Ok(Arc::clone(p));
        }
        let vals = (0..GRID_NODES)
            .map(|i| self.levy(self.abscissa(k, i).exp()))
            .collect::<Result<Vec<_>>>()?;
        let vals = Arc::new(vals);
        self.panels
            .lock()
            .expect("grid cache poisoned")
            .insert(k, Arc::clone(&vals));
        Ok(vals)
    }

    /// `∫_{v_lo}^{v_hi} f_α(e^v) w(v) dv` on the panel grid.
    fn integrate(&self, v_lo: f64, v_hi: f64, w: impl Fn(f64) -> f64) -> Result<f64> {
        let v_lo = v_lo.max(self.v_min);
        if v_hi <= v_lo {
            return Ok(0.0);
        }
        let k_lo = (v_lo / self.width).floor() as i64;
        let k_hi = (v_hi / self.width).ceil() as i64;
        let mut sum = 0.0;
        for k in k_lo..k_hi {
            let vals = self.panel(k)?;
            let mut s = 0.0;
            for i in 0..GRID_NODES {
                s += self.weights[i] * vals[i] * w(self.abscissa(k, i));
            }
            sum += 0.5 * self.width * s;
        }
        Ok(sum)
    }
}

fn grid_for(alpha: f64) -> Arc<LevyGrid> {
    static GRIDS: OnceLock<Mutex<HashMap<u64, Arc<LevyGrid>>>> = OnceLock::new();
    let map = GRIDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = map.lock().expect("grid registry poisoned");
    Arc::clone(
        map.entry(alpha.to_bits())
            .or_insert_with(|| Arc::new(LevyGrid::new(alpha))),
    )
}

/// Upper end of the mixture range: past it the integrand decays like
/// `e^{−(α+γ)v}` and is below `e^{−45}` of its peak.
fn mixture_upper(alpha: f64, gamma: f64, x: f64) -> f64 {
    x.ln().max(0.0) + 45.0 / (alpha + gamma) + 2.0
}

/// `∫ f_α(e^v) g_γ(x e^{−v}) dv` for any `0 < α < 1`.
pub fn smashed_density_mixture(params: SmashedGammaParams, x: f64) -> Result<f64> {
    params.validate()?;
    check_x(x)?;
    if params.alpha.is_nan() || params.alpha >= 1.0 {
        return Err(Error::domain("mixture form needs alpha < 1"));
    }
    let g = params.gamma_shape;
    let grid = grid_for(params.alpha);
    let lx = x.ln();
    // below ln x − 6.7 the gamma factor is under e^{−800}
    let v_lo = lx - 6.7;
    let lg = ln_gamma_fn(g);
    grid.integrate(v_lo, mixture_upper(params.alpha, g, x), |v| {
        gamma_pdf_with(g, lg, (lx - v).exp())
    })
}

/// `x^{γ−1}/(αΓ(γ)) · Σ (−x)^k Γ((γ+k)/α) / (k! Γ(γ+k))`, the expansion used
/// for `α > 1`.
fn experimental_density(params: SmashedGammaParams, x: f64) -> Result<EvalReport> {
    let (a, g) = (params.alpha, params.gamma_shape);
    let spec = WrightSpec::from_f64(&[(g / a, 1.0 / a)], &[(g, 1.0)], -x)?;
    let cfg = SeriesConfig::default();
    let r = match eval_wright(&spec, &cfg) {
        Ok(r) if !r.precision_loss => r,
        _ => eval_wright(&spec, &cfg.extended())?,
    };
    let scale = ((g - 1.0) * x.ln() - a.ln() - ln_gamma_fn(g)).exp();
    Ok(EvalReport {
        value: scale * r.value,
        abs_err_estimate: scale * r.abs_err_estimate,
        max_term_magnitude: scale * r.max_term_magnitude,
        ..r
    })
}

/// Density of the Lévy-smashed gamma law at `x`.
pub fn smashed_density(params: SmashedGammaParams, x: f64) -> Result<EvalReport> {
    params.validate()?;
    check_x(x)?;
    let (a, g) = (params.alpha, params.gamma_shape);
    if a == 0.5 {
        return Ok(half_closed_form(g, x));
    }
    if a == 1.0 {
        let v = gamma_pdf(g, x);
        return Ok(closed_report(v, v.ln()));
    }
    if params.is_experimental() {
        return experimental_density(params, x);
    }
    let value = smashed_density_mixture(params, x)?;
    Ok(EvalReport {
        value,
        // nominal: the grid reproduces the α = 1/2 closed form to ~2e-14
        abs_err_estimate: 1e-10 * value.abs(),
        terms_used: 0,
        max_term_magnitude: value.abs(),
        cancellation_ratio: 1.0,
        precision_path: PrecisionPath::Standard,
        precision_loss: false,
    })
}

/// `E[e^{−yX}] = ∫ g_γ(t) e^{−(yt)^α} dt`, by quadrature.
fn laplace_by_quadrature(params: SmashedGammaParams, y: f64) -> Result<f64> {
    let (a, g) = (params.alpha, params.gamma_shape);
    let lg = ln_gamma_fn(g);
    // integrate in ln t; the gamma factor dies beyond t ≈ γ + 60
    let hi = (g + 60.0 + 10.0 * g.sqrt()).ln();
    let lo = (1e-300f64.ln() / g).max(-700.0);
    // unit steps in ln t across the region carrying the mass
    let start = lo.max(-40.0 / g.min(1.0));
    let mut pts: Vec<f64> = vec![lo];
    pts.extend((0..).map(|k| start + f64::from(k)).take_while(|u| *u < hi));
    pts.push(hi);
    pts.push(g.ln());
    pts.push(-y.ln());
    pts.retain(|p| p.is_finite() && *p >= lo && *p <= hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let r = integrate_points(
        |u| {
            let t = u.exp();
            Ok(t * gamma_pdf_with(g, lg, t) * (-(y * t).powf(a)).exp())
        },
        &pts,
        &QuadConfig {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        },
    )?;
    Ok(r.value)
}

/// Laplace transform `Σ (−1)^k Γ(γ+αk)/(k! Γ(γ)) y^{αk}`.
///
/// The series is summed when it converges cleanly; beyond that range the
/// transform is computed as `∫ g_γ(t) e^{−(yt)^α} dt`.
pub fn smashed_laplace(params: SmashedGammaParams, y: f64) -> Result<f64> {
    params.validate()?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::domain(format!("y = {y} must be nonnegative")));
    }
    let (a, g) = (params.alpha, params.gamma_shape);
    if y == 0.0 {
        return Ok(1.0);
    }
    if a == 1.0 {
        return Ok((-g * y.ln_1p()).exp());
    }
    if a < 1.0 {
        if let Ok(v) = laplace_series(a, g, y) {
            return Ok(v);
        }
    }
    laplace_by_quadrature(params, y)
}

fn laplace_series(a: f64, g: f64, y: f64) -> Result<f64> {
    let spec = WrightSpec::from_f64(&[(g, a)], &[], -y.powf(a))?;
    let cfg = SeriesConfig::default();
    let r = match eval_wright(&spec, &cfg) {
        Ok(r) if !r.precision_loss => r,
        _ => eval_wright(&spec, &cfg.extended())?,
    };
    let v = r.value * (-ln_gamma_fn(g)).exp();
    let err = r.abs_err_estimate * (-ln_gamma_fn(g)).exp();
    if err > 1e-12 * v.abs().max(1e-300) {
        return Err(Error::Accuracy {
            digits: 12,
            rel_err: err / v.abs(),
        });
    }
    Ok(v)
}

/// `F(x) = 1 − √w Σ_{k<n} (½)_k/k! (1−w)^k`, `w = 1/(1+4x)`, for integer `γ = n`.
fn half_cdf_integer(n: u32, x: f64) -> f64 {
    let w = 1.0 / (1.0 + 4.0 * x);
    let one_minus = 4.0 * x * w;
    let mut c = 1.0;
    let mut pw = 1.0;
    let mut s = 0.0;
    for k in 0..n {
        if k > 0 {
            c *= (f64::from(k) - 0.5) / f64::from(k);
            pw *= one_minus;
        }
        s += c * pw;
    }
    1.0 - w.sqrt() * s
}

/// `I_y(m+½, ½)` by `I_y(½,½) = (2/π) asin √y` and the shift `a → a+1`.
fn half_cdf_half_integer(m: u32, x: f64) -> f64 {
    let y = 4.0 * x / (1.0 + 4.0 * x);
    let sq1 = (1.0 / (1.0 + 4.0 * x)).sqrt();
    let mut v = 2.0 / PI * y.sqrt().asin();
    let mut d = 2.0 / PI;
    let mut ya = y.sqrt();
    for j in 0..m {
        v -= d * ya * sq1;
        let jf = f64::from(j);
        d *= (jf + 1.0) / (jf + 1.5);
        ya *= y;
    }
    v
}

/// Distribution function of the smashed law, `P(X ≤ x)`.
pub fn process_cdf(params: SmashedGammaParams, x: f64) -> Result<f64> {
    params.validate()?;
    check_x(x)?;
    let (a, t) = (params.alpha, params.gamma_shape);
    if a == 1.0 {
        return Ok(gamma_lr(t, x));
    }
    if a == 0.5 {
        let v = if t.fract() == 0.0 && t <= 1000.0 {
            half_cdf_integer(t as u32, x)
        } else if (t - 0.5).fract() == 0.0 && t <= 1000.5 {
            half_cdf_half_integer((t - 0.5) as u32, x)
        } else {
            beta_reg(t, 0.5, 4.0 * x / (1.0 + 4.0 * x))
        };
        return Ok(v.clamp(0.0, 1.0));
    }
    if params.is_experimental() {
        return Err(Error::domain("process distribution needs alpha <= 1"));
    }
    let grid = grid_for(a);
    let lx = x.ln();
    let v = grid.integrate(f64::NEG_INFINITY, mixture_upper(a, t, x), |v| {
        v.exp() * gamma_lr(t, (lx - v).exp())
    })?;
    Ok(v.clamp(0.0, 1.0))
}

/// `Σ (−1)^k Γ(n+αk)/(k! Γ(n)) (y/n)^{αk}`: the transform of the smashed law
/// with shape `n` at `y/n`. The shape in `params` is ignored.
pub fn attraction_check(params: SmashedGammaParams, y: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::domain(format!("y = {y} must be nonnegative")));
    }
    let nf = f64::from(n);
    if params.alpha == 1.0 {
        return Ok(binomial_series(nf, y / nf).unwrap_or_else(|| (-nf * (y / nf).ln_1p()).exp()));
    }
    smashed_laplace(SmashedGammaParams::new(params.alpha, nf)?, y / nf)
}

/// `Σ (−1)^k (n)_k/k! u^k`, convergent for `u < 1`.
fn binomial_series(n: f64, u: f64) -> Option<f64> {
    if u >= 0.9 {
        return None;
    }
    let mut t = 1.0;
    let mut s = 1.0;
    for k in 0..5000 {
        let kf = f64::from(k);
        t *= -(n + kf) / (kf + 1.0) * u;
        s += t;
        if t.abs() < 1e-17 * s.abs() {
            return Some(s);
        }
    }
    None
}

/// `√μ / (√(2π) t^{3/2}) · e^{−μ/(2t)}`.
pub fn levy_smirnov_pdf(params: LevySmirnovParams, t: f64) -> Result<f64> {
    check_x(t)?;
    let mu = params.mu;
    Ok((0.5 * mu.ln() - 0.5 * (2.0 * PI).ln() - 1.5 * t.ln() - mu / (2.0 * t)).exp())
}

/// `erfc(√(μ/(2t)))`.
pub fn levy_smirnov_cdf(params: LevySmirnovParams, t: f64) -> Result<f64> {
    check_x(t)?;
    Ok(libm::erfc((params.mu / (2.0 * t)).sqrt()))
}

/// `∫_0^{2μ} p_LS(t; μ) dt` by quadrature.
pub fn levy_smirnov_median_mass(params: LevySmirnovParams) -> Result<f64> {
    let mu = params.mu;
    let r = integrate_points(
        |t| {
            if t <= 0.0 {
                Ok(0.0)
            } else {
                levy_smirnov_pdf(params, t)
            }
        },
        &[0.0, 0.05 * mu, 0.2 * mu, mu, 2.0 * mu],
        &QuadConfig::default(),
    )?;
    Ok(r.value)
}
