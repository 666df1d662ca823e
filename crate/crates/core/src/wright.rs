//! Truncated power-series evaluation of generalized Wright functions `pΨq`
//! and hypergeometric functions `pFq`.
//!
//! Both kernels are generic over [`Real`] so the same code runs on the
//! binary64 path and on the double-double fallback.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::special::ln_gamma;

/// Which arithmetic a series is summed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Standard,
    Extended,
}

/// How a reported value was finally obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionPath {
    Standard,
    Extended,
    /// The series could not be certified and the quadrature oracle was used.
    Oracle,
}

impl PrecisionPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            PrecisionPath::Standard => "standard",
            PrecisionPath::Extended => "extended",
            PrecisionPath::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for PrecisionPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub term_cap: usize,
    /// `max|term| / |sum|` above which the standard path flags precision loss.
    pub cancellation_limit: f64,
    pub precision: Precision,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-13,
            term_cap: 10_000,
            cancellation_limit: 1e12,
            precision: Precision::Standard,
        }
    }
}

impl SeriesConfig {
    pub fn extended(self) -> Self {
        SeriesConfig {
            precision: Precision::Extended,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalReport {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub terms_used: usize,
    pub max_term_magnitude: f64,
    /// `max_term_magnitude / |value|`, infinite when the value is zero.
    pub cancellation_ratio: f64,
    pub precision_path: PrecisionPath,
    /// Set on the standard path when the cancellation ratio exceeds the limit.
    pub precision_loss: bool,
}

impl EvalReport {
    pub fn rel_err_estimate(&self) -> f64 {
        if self.value == 0.0 {
            f64::INFINITY
        } else {
            self.abs_err_estimate / self.value.abs()
        }
    }
}

/// Parameter pair `(a, A)` of a Wright series, kept in double-double so the
/// extended path sees the exact rational it was built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WrightParam {
    pub a: Dd,
    pub scale: Dd,
}

impl WrightParam {
    pub fn new(a: Dd, scale: Dd) -> Self {
        WrightParam { a, scale }
    }
}

impl From<(f64, f64)> for WrightParam {
    fn from((a, s): (f64, f64)) -> Self {
        WrightParam::new(Dd::from_f64(a), Dd::from_f64(s))
    }
}

/// `pΨq[z | (a_i, A_i); (b_j, B_j)] = Σ ∏Γ(a_i + A_i n) / ∏Γ(b_j + B_j n) · zⁿ/n!`.
#[derive(Clone, Debug, PartialEq)]
pub struct WrightSpec {
    upper: Vec<WrightParam>,
    lower: Vec<WrightParam>,
    z: Dd,
}

/// `Σ B_j − Σ A_i` with the coefficients as stored.
pub fn convergence_margin(upper: &[WrightParam], lower: &[WrightParam]) -> f64 {
    let sb: Dd = lower.iter().fold(Dd::ZERO, |s, p| s + p.scale);
    let sa: Dd = upper.iter().fold(Dd::ZERO, |s, p| s + p.scale);
    (sb - sa).to_f64()
}

impl WrightSpec {
    pub fn new(upper: Vec<WrightParam>, lower: Vec<WrightParam>, z: Dd) -> Result<Self> {
        if upper.iter().chain(&lower).any(|p| p.scale.to_f64() == 0.0) {
            return Err(Error::Construction(
                "Wright scale coefficients must be nonzero".into(),
            ));
        }
        if !z.is_finite() || upper.iter().chain(&lower).any(|p| !p.a.is_finite() || !p.scale.is_finite()) {
            return Err(Error::domain("Wright parameters must be finite"));
        }
        let margin = convergence_margin(&upper, &lower);
        if margin <= -1.0 {
            return Err(Error::ConvergenceGate { margin });
        }
        Ok(WrightSpec { upper, lower, z })
    }

    pub fn from_f64(upper: &[(f64, f64)], lower: &[(f64, f64)], z: f64) -> Result<Self> {
        WrightSpec::new(
            upper.iter().map(|&p| p.into()).collect(),
            lower.iter().map(|&p| p.into()).collect(),
            Dd::from_f64(z),
        )
    }

    pub fn upper(&self) -> &[WrightParam] {
        &self.upper
    }

    pub fn lower(&self) -> &[WrightParam] {
        &self.lower
    }

    pub fn z(&self) -> Dd {
        self.z
    }

    pub fn with_z(&self, z: Dd) -> Self {
        WrightSpec {
            z,
            ..self.clone()
        }
    }

    pub fn margin(&self) -> f64 {
        convergence_margin(&self.upper, &self.lower)
    }

    /// True when a lower gamma sits on a pole for every `n`, so the series is
    /// identically zero.
    pub fn is_identically_zero(&self) -> bool {
        self.lower.iter().any(|p| {
            let b = p.a.to_f64();
            let s = p.scale.to_f64();
            b <= 0.0 && p.a.floor() == p.a && s < 0.0 && p.scale.floor() == p.scale
        })
    }

    /// Index past which every term vanishes, if the series is a polynomial.
    fn terminal_index(&self) -> Option<usize> {
        self.lower
            .iter()
            .filter(|p| p.a.floor() == p.a && p.scale.floor() == p.scale && p.scale.to_f64() < 0.0)
            .map(|p| {
                let b = p.a.to_f64();
                let s = -p.scale.to_f64();
                if b <= 0.0 {
                    0
                } else {
                    (b / s).ceil() as usize
                }
            })
            .min()
    }
}

/// `pFq(a; b; z)` with Pochhammer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct HypSpec {
    upper: Vec<Dd>,
    lower: Vec<Dd>,
    z: Dd,
}

impl HypSpec {
    pub fn new(upper: Vec<Dd>, lower: Vec<Dd>, z: Dd) -> Result<Self> {
        if upper.len() > lower.len() {
            return Err(Error::Construction(format!(
                "{}F{} is not entire; need p <= q",
                upper.len(),
                lower.len()
            )));
        }
        if let Some(b) = lower.iter().find(|b| b.is_nonpositive_integer()) {
            return Err(Error::Construction(format!(
                "lower hypergeometric parameter {} is a nonpositive integer",
                b.to_f64()
            )));
        }
        if !z.is_finite() || upper.iter().chain(&lower).any(|v| !v.is_finite()) {
            return Err(Error::domain("hypergeometric parameters must be finite"));
        }
        Ok(HypSpec { upper, lower, z })
    }

    pub fn from_f64(upper: &[f64], lower: &[f64], z: f64) -> Result<Self> {
        HypSpec::new(
            upper.iter().map(|&v| Dd::from_f64(v)).collect(),
            lower.iter().map(|&v| Dd::from_f64(v)).collect(),
            Dd::from_f64(z),
        )
    }

    pub fn upper(&self) -> &[Dd] {
        &self.upper
    }

    pub fn lower(&self) -> &[Dd] {
        &self.lower
    }

    pub fn z(&self) -> Dd {
        self.z
    }

    pub fn with_z(&self, z: Dd) -> Self {
        HypSpec {
            z,
            ..self.clone()
        }
    }
}

/// Raw result of a series summation in the working precision.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SeriesSum<T> {
    pub value: T,
    pub abs_err: f64,
    pub terms_used: usize,
    pub max_term: f64,
}

impl<T: Real> SeriesSum<T> {
    pub(crate) fn report(&self, cfg: &SeriesConfig) -> EvalReport {
        let value = self.value.to_f64();
        let cancellation_ratio = if value == 0.0 {
            f64::INFINITY
        } else {
            self.max_term / value.abs()
        };
        let precision_path = match cfg.precision {
            Precision::Standard => PrecisionPath::Standard,
            Precision::Extended => PrecisionPath::Extended,
        };
        EvalReport {
            value,
            abs_err_estimate: self.abs_err,
            terms_used: self.terms_used,
            max_term_magnitude: self.max_term,
            cancellation_ratio,
            precision_path,
            precision_loss: cfg.precision == Precision::Standard
                && self.max_term > 0.0
                && cancellation_ratio > cfg.cancellation_limit,
        }
    }
}

/// The stopping rule shared by both kernels.
struct Stopper {
    rel_tol: f64,
    small_run: usize,
    prev_mag: f64,
    max_mag: f64,
}

const SMALL_RUN: usize = 3;

impl Stopper {
    fn new(rel_tol: f64) -> Self {
        Stopper {
            rel_tol,
            small_run: 0,
            prev_mag: f64::INFINITY,
            max_mag: 0.0,
        }
    }

    /// Feed the magnitude of a nonzero term; returns true once the series may stop.
    fn push(&mut self, mag: f64, sum: f64) -> bool {
        let past_peak = mag < self.max_mag && mag <= self.prev_mag;
        self.max_mag = self.max_mag.max(mag);
        self.prev_mag = mag;
        if past_peak && mag < self.rel_tol * sum.abs() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= SMALL_RUN
    }
}

fn snapped_pole<T: Real>(arg: T, a: T, an: T) -> bool {
    if arg.to_f64() > 0.5 {
        return false;
    }
    let r = arg.round();
    let slack = T::from_f64(4.0 * T::EPSILON) * (a.abs() + an.abs() + T::one());
    (arg - r).abs() <= slack
}

/// `ln|t_n|`, its sign and a relative rounding-error weight, or `None` for a
/// term killed by a denominator pole.
fn wright_term<T: Real>(
    upper: &[(T, T)],
    lower: &[(T, T)],
    ln_abs_z: T,
    z_negative: bool,
    n: usize,
) -> Result<Option<(T, f64, f64)>> {
    let nt = T::from_f64(n as f64);
    let mut ln_t = ln_gamma(nt + T::one())
        .map(|g| -g.ln_abs)
        .map_err(|_| Error::NonFinite { term: n })?;
    let mut sign = if z_negative && n % 2 == 1 { -1.0 } else { 1.0 };
    let mut kappa = 4.0 + ln_t.to_f64().abs();
    if n > 0 {
        ln_t += nt * ln_abs_z;
        kappa += (n as f64) * ln_abs_z.to_f64().abs();
    }
    for &(b, s) in lower {
        let sn = s * nt;
        let arg = b + sn;
        if snapped_pole(arg, b, sn) {
            return Ok(None);
        }
        let g = ln_gamma(arg).map_err(|_| Error::NonFinite { term: n })?;
        ln_t -= g.ln_abs;
        sign *= g.sign;
        kappa += g.ln_abs.to_f64().abs() + sn.to_f64().abs() * (1.0 + arg.to_f64().abs()).ln();
    }
    for &(a, s) in upper {
        let sn = s * nt;
        let arg = a + sn;
        if snapped_pole(arg, a, sn) {
            return Err(Error::NumeratorPole { term: n });
        }
        let g = ln_gamma(arg).map_err(|_| Error::NumeratorPole { term: n })?;
        ln_t += g.ln_abs;
        sign *= g.sign;
        kappa += g.ln_abs.to_f64().abs() + sn.to_f64().abs() * (1.0 + arg.to_f64().abs()).ln();
    }
    Ok(Some((ln_t, sign, kappa)))
}

pub(crate) fn sum_wright<T: Real>(spec: &WrightSpec, cfg: &SeriesConfig) -> Result<SeriesSum<T>> {
    let margin = spec.margin();
    if margin <= -1.0 {
        return Err(Error::ConvergenceGate { margin });
    }
    let upper: Vec<(T, T)> = spec
        .upper
        .iter()
        .map(|p| (T::from_dd(p.a), T::from_dd(p.scale)))
        .collect();
    let lower: Vec<(T, T)> = spec
        .lower
        .iter()
        .map(|p| (T::from_dd(p.a), T::from_dd(p.scale)))
        .collect();
    let z = T::from_dd(spec.z);
    let zero_z = spec.z.to_f64() == 0.0;
    let ln_abs_z = if zero_z { T::zero() } else { z.abs().ln() };
    let z_negative = spec.z.to_f64() < 0.0;
    let limit = spec.terminal_index();

    let term = |n: usize| -> Result<Option<(T, f64)>> {
        match wright_term(&upper, &lower, ln_abs_z, z_negative, n)? {
            None => Ok(None),
            Some((ln_t, sign, kappa)) => {
                let t = T::from_f64(sign) * ln_t.exp();
                if !t.is_finite() {
                    return Err(Error::NonFinite { term: n });
                }
                Ok(Some((t, kappa)))
            }
        }
    };

    if zero_z || limit == Some(0) {
        let (value, kappa) = if limit == Some(0) {
            (T::zero(), 0.0)
        } else {
            term(0)?.unwrap_or((T::zero(), 0.0))
        };
        let v = value.to_f64().abs();
        return Ok(SeriesSum {
            value,
            abs_err: T::EPSILON * v * kappa,
            terms_used: 1,
            max_term: v,
        });
    }

    run_series(cfg, limit, term)
}

/// Drive a term generator through the stopping rule.
fn run_series<T: Real>(
    cfg: &SeriesConfig,
    limit: Option<usize>,
    mut term: impl FnMut(usize) -> Result<Option<(T, f64)>>,
) -> Result<SeriesSum<T>> {
    let mut sum = CompensatedSum::<T>::new();
    let mut stopper = Stopper::new(cfg.rel_tol);
    let mut weighted = 0.0;
    let mut abs_sum = 0.0;
    let cap = limit.map_or(cfg.term_cap, |l| l.min(cfg.term_cap));
    let mut n = 0;
    loop {
        if n >= cap {
            if limit.is_some_and(|l| l <= cfg.term_cap) {
                // polynomial: exhausted exactly
                break;
            }
            return Err(Error::TermCapExceeded { cap: cfg.term_cap });
        }
        let t = term(n)?;
        n += 1;
        let Some((t, kappa)) = t else { continue };
        sum.add(t);
        let mag = t.to_f64().abs();
        abs_sum += mag;
        weighted += mag * kappa;
        if mag > 0.0 && stopper.push(mag, sum.value().to_f64()) {
            break;
        }
        if mag == 0.0 && n > 1 {
            // a vanishing numerator terminates a Pochhammer series
            break;
        }
    }
    let terms_used = n;
    let mut omitted = 0.0;
    if limit.is_none_or(|l| n < l) {
        // magnitude of the first term not included
        for k in n..n + 4 {
            if let Some((t, _)) = term(k)? {
                omitted = t.to_f64().abs();
                break;
            }
        }
    }
    let value = sum.value();
    let abs_err = omitted + T::EPSILON * (weighted + abs_sum) + T::EPSILON * value.to_f64().abs();
    Ok(SeriesSum {
        value,
        abs_err,
        terms_used,
        max_term: stopper.max_mag,
    })
}

pub(crate) fn sum_hyp<T: Real>(spec: &HypSpec, cfg: &SeriesConfig) -> Result<SeriesSum<T>> {
    let upper: Vec<T> = spec.upper.iter().map(|&a| T::from_dd(a)).collect();
    let lower: Vec<T> = spec.lower.iter().map(|&b| T::from_dd(b)).collect();
    let z = T::from_dd(spec.z);
    let kappa_step = (upper.len() + lower.len() + 3) as f64;
    if spec.z.to_f64() == 0.0 {
        return Ok(SeriesSum {
            value: T::one(),
            abs_err: 0.0,
            terms_used: 1,
            max_term: 1.0,
        });
    }
    let mut t = T::one();
    let mut last = 0usize;
    let gen = |n: usize| -> Result<Option<(T, f64)>> {
        // terms are requested sequentially, with look-ahead after stopping
        while last < n {
            let k = T::from_f64(last as f64);
            let mut r = z / (k + T::one());
            for &a in &upper {
                r *= a + k;
            }
            for &b in &lower {
                r = r / (b + k);
            }
            t *= r;
            last += 1;
            if !t.is_finite() {
                return Err(Error::NonFinite { term: last });
            }
        }
        Ok(Some((t, kappa_step * (n as f64 + 1.0))))
    };
    run_series(cfg, None, gen)
}

/// Sum a Wright series in the precision selected by `cfg`.
pub fn eval_wright(spec: &WrightSpec, cfg: &SeriesConfig) -> Result<EvalReport> {
    Ok(match cfg.precision {
        Precision::Standard => sum_wright::<f64>(spec, cfg)?.report(cfg),
        Precision::Extended => sum_wright::<Dd>(spec, cfg)?.report(cfg),
    })
}

/// Sum a hypergeometric series in the precision selected by `cfg`.
pub fn eval_hyp(spec: &HypSpec, cfg: &SeriesConfig) -> Result<EvalReport> {
    Ok(match cfg.precision {
        Precision::Standard => sum_hyp::<f64>(spec, cfg)?.report(cfg),
        Precision::Extended => sum_hyp::<Dd>(spec, cfg)?.report(cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use proptest::prelude::*;

    fn std_cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn zero_argument_keeps_only_first_term() {
        let spec = WrightSpec::from_f64(&[(0.5, 1.0)], &[(2.5, 0.7)], 0.0).unwrap();
        let r = eval_wright(&spec, &std_cfg()).unwrap();
        assert_eq!(r.terms_used, 1);
        let expect = gamma(0.5).unwrap() / gamma(2.5).unwrap();
        assert!((r.value - expect).abs() < 1e-15 * expect);
    }

    #[test]
    fn empty_wright_is_exp() {
        let spec = WrightSpec::from_f64(&[], &[], 1.0).unwrap();
        let r = eval_wright(&spec, &std_cfg()).unwrap();
        assert!((r.value - std::f64::consts::E).abs() < 1e-15);
        assert!(r.abs_err_estimate < 1e-13);
    }

    #[test]
    fn unit_gammas_cancel() {
        let spec = WrightSpec::from_f64(&[(1.0, 1.0)], &[(1.0, 1.0)], -0.5).unwrap();
        let r = eval_wright(&spec, &std_cfg()).unwrap();
        assert!((r.value - (-0.5f64).exp()).abs() < 1e-15);
        let r = eval_wright(&spec, &std_cfg().extended()).unwrap();
        assert_eq!(r.precision_path, PrecisionPath::Extended);
        assert!((r.value - (-0.5f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn hyp_examples() {
        let r = eval_hyp(&HypSpec::from_f64(&[], &[], 0.3).unwrap(), &std_cfg()).unwrap();
        assert!((r.value - 0.3f64.exp()).abs() < 1e-15);
        let r = eval_hyp(&HypSpec::from_f64(&[], &[0.5], 0.0).unwrap(), &std_cfg()).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn hyp_0f2_matches_long_reference() {
        // 200-term high-precision reference value
        let spec = HypSpec::from_f64(&[], &[0.75, 0.5], -1.0 / 256.0).unwrap();
        let r = eval_hyp(&spec, &std_cfg()).unwrap();
        let reference = 0.989_591_082_361_577_3;
        assert!((r.value - reference).abs() < 2e-16, "{}", r.value);
    }

    #[test]
    fn margin_examples() {
        let s2 = std::f64::consts::SQRT_2;
        let up: Vec<WrightParam> = vec![(-0.5, -1.0).into()];
        let lo: Vec<WrightParam> = vec![(1.0 - s2, -s2).into()];
        assert!((convergence_margin(&up, &lo) - (1.0 - s2)).abs() < 1e-15);
        assert_eq!(convergence_margin(&[], &[(1.0, 1.0).into()]), 1.0);
    }

    #[test]
    fn gate_rejects_margin_at_or_below_minus_one() {
        let e = WrightSpec::from_f64(&[(1.0, 1.0)], &[], 0.5).unwrap_err();
        assert!(matches!(e, Error::ConvergenceGate { .. }));
        let e = WrightSpec::from_f64(&[(1.0, 1.5)], &[(1.0, 0.25)], 0.5).unwrap_err();
        assert!(matches!(e, Error::ConvergenceGate { .. }));
        assert!(WrightSpec::from_f64(&[(1.0, 1.5)], &[(1.0, 0.51)], 0.5).is_ok());
    }

    #[test]
    fn numerator_pole_is_an_error() {
        let spec = WrightSpec::from_f64(&[(1.0, -1.0)], &[(1.0, 1.0)], 0.5).unwrap();
        assert!(matches!(
            eval_wright(&spec, &std_cfg()),
            Err(Error::NumeratorPole { term: 1 })
        ));
    }

    #[test]
    fn denominator_poles_terminate_polynomial_series() {
        // 1/Γ(3 − n) kills every term from n = 3 on
        let spec = WrightSpec::from_f64(&[], &[(3.0, -1.0), (1.0, 1.0)], 2.0).unwrap();
        let r = eval_wright(&spec, &std_cfg()).unwrap();
        let expect = 1.0 / 2.0 + 2.0 + 1.0;
        assert!((r.value - expect).abs() < 1e-14, "{}", r.value);
        let dead = WrightSpec::from_f64(&[], &[(-1.0, -2.0), (1.0, 3.0)], 2.0).unwrap();
        assert!(dead.is_identically_zero());
        assert_eq!(eval_wright(&dead, &std_cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn precision_loss_is_flagged() {
        // e^{-40} from its Taylor series cancels by ~e^{80}
        let spec = WrightSpec::from_f64(&[], &[], -40.0).unwrap();
        let r = eval_wright(&spec, &std_cfg()).unwrap();
        assert!(r.precision_loss);
        assert!(r.cancellation_ratio > 1e12);
        let x = eval_wright(&spec, &std_cfg().extended()).unwrap();
        assert!(!x.precision_loss);
    }

    #[test]
    fn term_cap_is_reported() {
        let cfg = SeriesConfig {
            term_cap: 5,
            ..std_cfg()
        };
        let spec = WrightSpec::from_f64(&[], &[], 3.0).unwrap();
        assert!(matches!(
            eval_wright(&spec, &cfg),
            Err(Error::TermCapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn error_estimate_bounds_truncation() {
        let spec = WrightSpec::from_f64(&[(0.3, 0.5)], &[(0.7, 1.2)], -2.5).unwrap();
        let r = eval_wright(&spec, &std_cfg()).unwrap();
        let long = SeriesConfig {
            rel_tol: 1e-30,
            term_cap: 4 * std_cfg().term_cap,
            ..std_cfg().extended()
        };
        let l = eval_wright(&spec, &long).unwrap();
        assert!((r.value - l.value).abs() <= r.abs_err_estimate);
    }

    proptest! {
        #[test]
        fn wright_matches_hyp_with_unit_scales(
            a in 0.2f64..3.0,
            b1 in 0.3f64..3.0,
            b2 in 0.3f64..3.0,
            z in -4.0f64..4.0,
        ) {
            let w = WrightSpec::from_f64(&[(a, 1.0)], &[(b1, 1.0), (b2, 1.0)], z).unwrap();
            let h = HypSpec::from_f64(&[a], &[b1, b2], z).unwrap();
            let rw = eval_wright(&w, &std_cfg()).unwrap();
            let rh = eval_hyp(&h, &std_cfg()).unwrap();
            let pre = gamma(a).unwrap() / (gamma(b1).unwrap() * gamma(b2).unwrap());
            let expect = pre * rh.value;
            let tol = 1e-11 * expect.abs() + 2.0 * (rw.abs_err_estimate + pre.abs() * rh.abs_err_estimate);
            prop_assert!((rw.value - expect).abs() <= tol, "{} vs {}", rw.value, expect);
        }

        #[test]
        fn extended_agrees_with_standard(
            a in 0.2f64..3.0,
            s in 0.3f64..1.5,
            b in 0.3f64..3.0,
            z in -6.0f64..6.0,
        ) {
            let w = WrightSpec::from_f64(&[(a, s)], &[(b, 1.0)], z).unwrap();
            let rs = eval_wright(&w, &std_cfg()).unwrap();
            let rx = eval_wright(&w, &std_cfg().extended()).unwrap();
            prop_assume!(!rs.precision_loss);
            let digits = 12f64.min(15.0 - rs.cancellation_ratio.max(1.0).log10());
            prop_assert!((rs.value - rx.value).abs() <= 10f64.powf(-digits) * rx.value.abs().max(1e-300) + rs.abs_err_estimate);
        }
    }
}
