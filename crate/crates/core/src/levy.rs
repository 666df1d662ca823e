//! One-sided Lévy stable densities `f_α` for indices `α = (p/q)^{l2/l1}`.
//!
//! The density is written as a finite sum of blocks, each a power of `x`
//! times a Wright or hypergeometric series in `x^{−pl}`. Which sum applies
//! depends on `l = (p/q)^{l2/l1 − 1}`:
//!
//! * `l` not an integer: `q` Wright blocks,
//! * `l = 1`: `q − 1` blocks of `p−1F q−2`,
//! * `l ∈ {2, 3, …}`: `q − 1` Wright blocks after splitting `Γ(ls)` with the
//!   multiplication formula.

use std::fmt;

use num_rational::Rational64;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::oracle::{density_oracle, OracleConfig};
use crate::scalar::{CompensatedSum, Real};
use crate::special::{levy_jump, ln_gamma};
use crate::wright::{
    sum_hyp, sum_wright, EvalReport, HypSpec, PrecisionPath, SeriesConfig, WrightParam, WrightSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchTag {
    NonIntegerL,
    LEqualsOne,
    IntegerL(u32),
}

impl fmt::Display for BranchTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchTag::NonIntegerL => f.write_str("non-integer-l"),
            BranchTag::LEqualsOne => f.write_str("l-equals-one"),
            BranchTag::IntegerL(l) => write!(f, "integer-l({l})"),
        }
    }
}

/// `l` either as an exact rational or, when irrational, in double-double.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LValue {
    Exact(Rational64),
    Irrational(Dd),
}

impl LValue {
    pub fn to_dd(self) -> Dd {
        match self {
            LValue::Exact(r) => ratio_dd(r),
            LValue::Irrational(d) => d,
        }
    }
}

fn ratio_dd(r: Rational64) -> Dd {
    Dd::from_ratio(*r.numer(), *r.denom())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact integer `b`-th root of `n`, if there is one.
fn int_root(n: u64, b: u32) -> Option<u64> {
    if b == 1 {
        return Some(n);
    }
    let guess = (n as f64).powf(1.0 / f64::from(b)).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(b) == Some(n))
}

/// A resolved Lévy index `α = (p/q)^{l2/l1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevyIndex {
    pub p: u32,
    pub q: u32,
    pub l1: u32,
    pub l2: u32,
    pub alpha: f64,
    pub l: f64,
    alpha_dd: Dd,
    l_value: LValue,
    branch: BranchTag,
}

impl LevyIndex {
    pub fn branch(&self) -> BranchTag {
        self.branch
    }

    pub fn l_value(&self) -> LValue {
        self.l_value
    }

    pub fn alpha_dd(&self) -> Dd {
        self.alpha_dd
    }

    /// Exact `α` when it is rational.
    pub fn alpha_rational(&self) -> Option<Rational64> {
        match self.l_value {
            LValue::Exact(l) => Some(Rational64::new(i64::from(self.p), i64::from(self.q)) * l),
            LValue::Irrational(_) => None,
        }
    }

    /// Smallest index whose `α` matches a floating-point value to 1e−12.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!("alpha = {alpha} outside (0, 1)")));
        }
        // rational forms first, they take the cheaper hypergeometric branch
        let exponents = std::iter::once((1, 1)).chain(
            (1..=4u32)
                .flat_map(|l1| (1..=4u32).map(move |l2| (l1, l2)))
                .filter(|&(l1, l2)| l1 != l2 && gcd(u64::from(l1), u64::from(l2)) == 1),
        );
        let mut best: Option<(f64, (u32, u32, u32, u32))> = None;
        for (l1, l2) in exponents {
            for q in 2..=64u32 {
                for p in 1..q {
                    if gcd(u64::from(p), u64::from(q)) != 1 {
                        continue;
                    }
                    let a = (f64::from(p) / f64::from(q)).powf(f64::from(l2) / f64::from(l1));
                    let d = (a - alpha).abs();
                    if d < 1e-12 && best.is_none_or(|(bd, _)| d < bd * 0.5) {
                        best = Some((d, (p, q, l1, l2)));
                    }
                }
            }
            if best.is_some() {
                break;
            }
        }
        let (_, (p, q, l1, l2)) = best.ok_or_else(|| {
            Error::domain(format!(
                "alpha = {alpha} is not (p/q)^(l2/l1) for small p, q, l1, l2"
            ))
        })?;
        resolve_index(p, q, l1, l2)
    }
}

impl fmt::Display for LevyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.q, self.l1, self.l2)
    }
}

/// Resolve `(p, q, l1, l2)` into an index and its branch.
///
/// `p/q` is reduced only for `l1 = l2`; otherwise the pair is kept as given
/// because `(2,8,2,1)` and `(1,4,2,1)` are different representations.
pub fn resolve_index(p: u32, q: u32, l1: u32, l2: u32) -> Result<LevyIndex> {
    if p == 0 || q == 0 || l1 == 0 || l2 == 0 {
        return Err(Error::domain("index components must be positive"));
    }
    if p >= q {
        return Err(Error::domain(format!("need p < q, got p={p}, q={q}")));
    }
    let g = gcd(u64::from(l1), u64::from(l2)) as u32;
    let (l1, l2) = (l1 / g, l2 / g);
    if l1 == l2 {
        let g = gcd(u64::from(p), u64::from(q)) as u32;
        let (p, q) = (p / g, q / g);
        let alpha = Dd::from_ratio(i64::from(p), i64::from(q));
        return Ok(LevyIndex {
            p,
            q,
            l1: 1,
            l2: 1,
            alpha: alpha.to_f64(),
            l: 1.0,
            alpha_dd: alpha,
            l_value: LValue::Exact(Rational64::from_integer(1)),
            branch: BranchTag::LEqualsOne,
        });
    }
    // l = (q/p)^{a/b} with a/b = (l1 − l2)/l1 in lowest terms
    let gq = gcd(u64::from(p), u64::from(q));
    let (pp, qq) = (u64::from(p) / gq, u64::from(q) / gq);
    let num = i64::from(l1) - i64::from(l2);
    let den = i64::from(l1);
    let ab = Rational64::new(num, den);
    let (a, b) = (*ab.numer(), *ab.denom() as u32);
    let exact = match (int_root(qq, b), int_root(pp, b)) {
        (Some(u), Some(v)) => {
            let base = Rational64::new(u as i64, v as i64);
            let l = if a >= 0 {
                base.pow(a as i32)
            } else {
                base.recip().pow((-a) as i32)
            };
            Some(l)
        }
        _ => None,
    };
    let ratio = Dd::from_ratio(i64::from(p), i64::from(q));
    let (l_value, l_dd) = match exact {
        Some(l) => (LValue::Exact(l), ratio_dd(l)),
        None => {
            let e = Dd::from_ratio(i64::from(l2) - i64::from(l1), i64::from(l1));
            let l = (e * ratio.ln()).exp();
            (LValue::Irrational(l), l)
        }
    };
    let alpha_dd = ratio * l_dd;
    let alpha = alpha_dd.to_f64();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    let branch = match l_value {
        LValue::Exact(l) if l.is_integer() => {
            let l = *l.numer();
            if !q.is_multiple_of(p) {
                return Err(Error::domain(format!(
                    "integer l = {l} needs q = kp, got p={p}, q={q}"
                )));
            }
            let k = i64::from(q / p);
            if k <= l {
                return Err(Error::domain(format!(
                    "integer l = {l} needs k = q/p > l, got k={k}"
                )));
            }
            BranchTag::IntegerL(l as u32)
        }
        _ => BranchTag::NonIntegerL,
    };
    Ok(LevyIndex {
        p,
        q,
        l1,
        l2,
        alpha,
        l: l_dd.to_f64(),
        alpha_dd,
        l_value,
        branch,
    })
}

/// Index tuples with the same rational `α = p0/q0`: the `l = 1` form and
/// `(p0^k, q0^k, k, 1)` for `k = 2, …, max_forms`.
pub fn enumerate_representations(p0: u32, q0: u32, max_forms: usize) -> Vec<LevyIndex> {
    if p0 == 0 || p0 >= q0 {
        return Vec::new();
    }
    let g = gcd(u64::from(p0), u64::from(q0)) as u32;
    let (p0, q0) = (p0 / g, q0 / g);
    let mut out = Vec::new();
    for k in 1..=max_forms as u32 {
        let (Some(p), Some(q)) = (p0.checked_pow(k), q0.checked_pow(k)) else {
            break;
        };
        if let Ok(idx) = resolve_index(p, q, k, 1) {
            out.push(idx);
        }
    }
    out
}

/// Series carried by one block.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockSeries {
    Wright(WrightSpec),
    Hyp(HypSpec),
}

/// One term `power_coeff · x^{−power_exponent} · series(z(x))` of a representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub j: u32,
    pub power_coeff: Dd,
    pub power_exponent: Dd,
    pub series: BlockSeries,
}

impl Block {
    /// Blocks whose Wright series has a denominator pole at every index.
    pub fn vanishes(&self) -> bool {
        match &self.series {
            BlockSeries::Wright(w) => w.is_identically_zero(),
            BlockSeries::Hyp(_) => false,
        }
    }
}

/// `f(x) = prefactor_scale / x · Σ_blocks`, with series argument
/// `arg_sign · arg_coeff · x^{−arg_power}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub index: LevyIndex,
    pub branch: BranchTag,
    pub prefactor_scale: Dd,
    pub blocks: Vec<Block>,
    pub arg_sign: f64,
    pub arg_coeff: Dd,
    pub arg_power: Dd,
}

fn ln_2pi() -> Dd {
    Dd::ln_2pi_half() + Dd::ln_2pi_half()
}

fn dd_int(n: u32) -> Dd {
    Dd::from_f64(f64::from(n))
}

fn jump(j: u32, q: u32, n: u32) -> Result<Rational64> {
    levy_jump(j, q, n)
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn exact_param(a: Rational64, scale: Rational64) -> WrightParam {
    WrightParam::new(ratio_dd(a), ratio_dd(scale))
}

/// Assemble the representation belonging to the index's own branch.
pub fn build_representation(idx: &LevyIndex) -> Result<Representation> {
    match idx.branch {
        BranchTag::NonIntegerL => build_non_integer(idx),
        BranchTag::LEqualsOne => build_l_one(idx),
        BranchTag::IntegerL(l) => build_integer(idx, l),
    }
}

/// The general `q`-block assembly, valid for any `l` (including `l = 1`,
/// where its first block vanishes identically).
pub fn build_generic_representation(idx: &LevyIndex) -> Result<Representation> {
    build_non_integer(idx)
}

fn build_non_integer(idx: &LevyIndex) -> Result<Representation> {
    let (p, q) = (idx.p, idx.q);
    let l = idx.l_value;
    let l_dd = l.to_dd();
    // c0 + c1·l, exact whenever l is rational
    let lin = |c0: Rational64, c1: Rational64| -> Dd {
        match l {
            LValue::Exact(r) => ratio_dd(c0 + c1 * r),
            LValue::Irrational(d) => ratio_dd(c0) + ratio_dd(c1) * d,
        }
    };
    let neg_l = -l_dd;
    let (pi, qi) = (i64::from(p), i64::from(q));
    let pl = dd_int(p) * l_dd;
    let ln_k = pl * dd_int(p).ln() - dd_int(q) * dd_int(q).ln();
    let scale = (l_dd.ln() + Dd::from_f64(0.5) * (dd_int(p) * dd_int(q)).ln()
        - Dd::from_ratio(qi - pi, 2) * ln_2pi())
    .exp();

    let mut blocks = Vec::with_capacity(q as usize);
    // j = 0
    let upper: Vec<WrightParam> = (1..q)
        .map(|jj| exact_param(rat(-(qi - i64::from(jj)), qi), rat(-1, 1)))
        .collect();
    let mut lower = vec![WrightParam::new(lin(rat(1, 1), rat(-1, 1)), neg_l)];
    for i in 1..p {
        lower.push(WrightParam::new(lin(rat(i64::from(i), pi), rat(-1, 1)), neg_l));
    }
    blocks.push(Block {
        j: 0,
        power_coeff: ln_k.exp(),
        power_exponent: pl,
        series: BlockSeries::Wright(WrightSpec::new(upper, lower, Dd::ZERO)?),
    });
    for j in 1..q {
        let ji = i64::from(j);
        let mut upper = Vec::with_capacity(q as usize - 1);
        for i in 2..=q {
            let a = rat(i64::from(i), qi) - jump(j, q, i)?;
            upper.push(exact_param(a, rat(-1, 1)));
        }
        let mut lower = vec![WrightParam::new(lin(rat(1, 1), rat(-ji, qi)), neg_l)];
        for i in 1..p {
            lower.push(WrightParam::new(lin(rat(i64::from(i), pi), rat(-ji, qi)), neg_l));
        }
        let frac = Dd::from_ratio(ji, qi);
        blocks.push(Block {
            j,
            power_coeff: (frac * ln_k).exp(),
            power_exponent: frac * pl,
            series: BlockSeries::Wright(WrightSpec::new(upper, lower, Dd::ZERO)?),
        });
    }
    finish(Representation {
        index: *idx,
        branch: BranchTag::NonIntegerL,
        prefactor_scale: scale,
        blocks,
        arg_sign: -1.0,
        arg_coeff: ln_k.exp(),
        arg_power: pl,
    })
}

fn build_l_one(idx: &LevyIndex) -> Result<Representation> {
    let (p, q) = (idx.p, idx.q);
    let (pi, qi) = (i64::from(p), i64::from(q));
    let ln_k = dd_int(p) * dd_int(p).ln() - dd_int(q) * dd_int(q).ln();
    let scale = (Dd::from_f64(0.5) * (dd_int(p) * dd_int(q)).ln()
        - Dd::from_ratio(qi - pi, 2) * ln_2pi())
    .exp();
    let mut blocks = Vec::with_capacity(q as usize - 1);
    for j in 1..q {
        let ji = i64::from(j);
        let mut ln_pre = Dd::ZERO;
        let mut sign = 1.0;
        let mut lower = Vec::new();
        for i in 2..q {
            let jq = jump(j, q, i)?;
            let g = ln_gamma(ratio_dd(rat(i64::from(i), qi) - jq)).map_err(|e| {
                Error::Construction(format!("gamma prefactor of block {j} sits on a pole: {e}"))
            })?;
            ln_pre += g.ln_abs;
            sign *= g.sign;
            lower.push(ratio_dd(rat(1, 1) - rat(i64::from(i), qi) + jq));
        }
        let mut upper = Vec::new();
        for i in 1..p {
            let r = rat(i64::from(i) * qi - ji * pi, pi * qi);
            let g = ln_gamma(ratio_dd(r)).map_err(|e| {
                Error::Construction(format!("gamma prefactor of block {j} sits on a pole: {e}"))
            })?;
            ln_pre -= g.ln_abs;
            sign *= g.sign;
            upper.push(ratio_dd(rat(1, 1) - r));
        }
        let frac = Dd::from_ratio(ji, qi);
        let coeff = (frac * ln_k + ln_pre).exp();
        blocks.push(Block {
            j,
            power_coeff: if sign < 0.0 { -coeff } else { coeff },
            power_exponent: Dd::from_ratio(ji * pi, qi),
            series: BlockSeries::Hyp(HypSpec::new(upper, lower, Dd::ZERO)?),
        });
    }
    finish(Representation {
        index: *idx,
        branch: BranchTag::LEqualsOne,
        prefactor_scale: scale,
        blocks,
        arg_sign: if (q - p) % 2 == 0 { 1.0 } else { -1.0 },
        arg_coeff: ln_k.exp(),
        arg_power: dd_int(p),
    })
}

fn build_integer(idx: &LevyIndex, l: u32) -> Result<Representation> {
    let (p, q) = (idx.p, idx.q);
    let (pi, qi, li) = (i64::from(p), i64::from(q), i64::from(l));
    let pl = dd_int(p * l);
    let ln_k = pl * dd_int(p).ln() + dd_int(l) * dd_int(l).ln() - dd_int(q) * dd_int(q).ln();
    let scale = (Dd::from_f64(0.5) * (dd_int(p) * dd_int(q) * dd_int(l)).ln()
        - Dd::from_ratio(qi + 1 - pi - li, 2) * ln_2pi())
    .exp();
    let mut blocks = Vec::with_capacity(q as usize - 1);
    for j in 1..q {
        let ji = i64::from(j);
        let mut upper = Vec::new();
        for i in 2..q {
            let a = rat(i64::from(i), qi) - jump(j, q, i)?;
            upper.push(exact_param(a, rat(-1, 1)));
        }
        let mut lower = Vec::new();
        for r in 1..l {
            lower.push(exact_param(rat(i64::from(r), li) - rat(ji, qi), rat(-1, 1)));
        }
        for i in 1..p {
            lower.push(exact_param(
                rat(i64::from(i), pi) - rat(ji * li, qi),
                rat(-li, 1),
            ));
        }
        let frac = Dd::from_ratio(ji, qi);
        blocks.push(Block {
            j,
            power_coeff: (frac * ln_k).exp(),
            power_exponent: frac * pl,
            series: BlockSeries::Wright(WrightSpec::new(upper, lower, Dd::ZERO)?),
        });
    }
    finish(Representation {
        index: *idx,
        branch: BranchTag::IntegerL(l),
        prefactor_scale: scale,
        blocks,
        arg_sign: -1.0,
        arg_coeff: ln_k.exp(),
        arg_power: pl,
    })
}

fn finish(rep: Representation) -> Result<Representation> {
    let expected = match rep.branch {
        BranchTag::NonIntegerL => rep.index.q as usize,
        _ => rep.index.q as usize - 1,
    };
    assert_eq!(rep.blocks.len(), expected, "block count for {}", rep.branch);
    for b in &rep.blocks {
        if let BlockSeries::Wright(w) = &b.series {
            let margin = w.margin();
            if margin <= -1.0 {
                return Err(Error::Construction(format!(
                    "block {} of {} fails the convergence gate (margin {margin})",
                    b.j, rep.index
                )));
            }
        }
    }
    Ok(rep)
}

impl Representation {
    /// Series argument at `x`.
    pub fn argument(&self, x: f64) -> Dd {
        let lx = Dd::from_f64(x).ln();
        let z = (self.arg_coeff.ln() - self.arg_power * lx).exp();
        if self.arg_sign < 0.0 {
            -z
        } else {
            z
        }
    }

    /// Evaluate every block in the precision selected by `cfg`.
    pub fn evaluate(&self, x: f64, cfg: &SeriesConfig) -> Result<EvalReport> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("x = {x} must be positive and finite")));
        }
        match cfg.precision {
            crate::wright::Precision::Standard => self.evaluate_in::<f64>(x, cfg),
            crate::wright::Precision::Extended => self.evaluate_in::<Dd>(x, cfg),
        }
    }

    fn evaluate_in<T: Real>(&self, x: f64, cfg: &SeriesConfig) -> Result<EvalReport> {
        let lx = Dd::from_f64(x).ln();
        let z = self.argument(x);
        let ln_scale = self.prefactor_scale.ln() - lx;
        let mut sum = CompensatedSum::<T>::new();
        let mut abs_err = 0.0;
        let mut abs_total = 0.0;
        let mut max_term: f64 = 0.0;
        let mut terms = 0;
        let mut loss = false;
        for b in &self.blocks {
            if b.vanishes() {
                continue;
            }
            let s = match &b.series {
                BlockSeries::Wright(w) => sum_wright::<T>(&w.with_z(z), cfg)?,
                BlockSeries::Hyp(h) => sum_hyp::<T>(&h.with_z(z), cfg)?,
            };
            loss |= s.report(cfg).precision_loss;
            let mag = (ln_scale + b.power_coeff.abs().ln() - b.power_exponent * lx).exp();
            let factor = if b.power_coeff.to_f64() < 0.0 { -mag } else { mag };
            let factor = T::from_dd(factor);
            let v = factor * s.value;
            let fa = factor.abs().to_f64();
            if !v.is_finite() || !fa.is_finite() {
                return Err(Error::NonFinite { term: s.terms_used });
            }
            sum.add(v);
            abs_err += fa * s.abs_err;
            abs_total += v.abs().to_f64();
            max_term = max_term.max(fa * s.max_term);
            terms += s.terms_used;
        }
        let value = sum.value().to_f64();
        abs_err += 4.0 * T::EPSILON * abs_total;
        let cancellation_ratio = if value == 0.0 {
            f64::INFINITY
        } else {
            max_term / value.abs()
        };
        let standard = cfg.precision == crate::wright::Precision::Standard;
        Ok(EvalReport {
            value,
            abs_err_estimate: abs_err,
            terms_used: terms,
            max_term_magnitude: max_term,
            cancellation_ratio,
            precision_path: if standard {
                PrecisionPath::Standard
            } else {
                PrecisionPath::Extended
            },
            precision_loss: standard
                && (loss || (max_term > 0.0 && cancellation_ratio > cfg.cancellation_limit)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityConfig {
    pub series: SeriesConfig,
    /// Standard-path results with a larger relative error estimate are
    /// recomputed in extended precision.
    pub escalate_rel: f64,
    /// Extended-path results must certify this relative accuracy.
    pub certify_rel: f64,
    pub oracle: OracleConfig,
    /// Fall back to the quadrature oracle when the series cannot be certified.
    pub oracle_fallback: bool,
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig {
            series: SeriesConfig::default(),
            escalate_rel: 1e-13,
            certify_rel: 1e-8,
            oracle: OracleConfig::default(),
            oracle_fallback: true,
        }
    }
}

/// A density with its representation built once.
#[derive(Clone, Debug)]
pub struct LevyDensity {
    rep: Representation,
    cfg: DensityConfig,
}

fn accepted(r: &EvalReport, rel: f64) -> bool {
    r.value.is_finite() && r.value > 0.0 && r.abs_err_estimate <= rel * r.value && !r.precision_loss
}

impl LevyDensity {
    pub fn new(idx: &LevyIndex) -> Result<Self> {
        Self::with_config(idx, DensityConfig::default())
    }

    pub fn with_config(idx: &LevyIndex, cfg: DensityConfig) -> Result<Self> {
        Ok(LevyDensity {
            rep: build_representation(idx)?,
            cfg,
        })
    }

    pub fn from_representation(rep: Representation, cfg: DensityConfig) -> Self {
        LevyDensity { rep, cfg }
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn index(&self) -> &LevyIndex {
        &self.rep.index
    }

    /// `f_α(x)`: standard path, then extended, then the oracle.
    pub fn eval(&self, x: f64) -> Result<EvalReport> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("x = {x} must be positive and finite")));
        }
        let std = self.rep.evaluate(x, &self.cfg.series);
        if let Ok(r) = &std {
            if accepted(r, self.cfg.escalate_rel) {
                return Ok(*r);
            }
        }
        let ext = self.rep.evaluate(x, &self.cfg.series.extended());
        if let Ok(r) = &ext {
            if accepted(r, self.cfg.certify_rel) {
                return Ok(*r);
            }
        }
        let best_rel = ext
            .as_ref()
            .map(|r| r.rel_err_estimate())
            .unwrap_or(f64::INFINITY);
        if self.cfg.oracle_fallback {
            if let Ok(mut r) = density_oracle(self.rep.index.alpha, x, &self.cfg.oracle) {
                if r.value < 0.0 && -r.value <= r.abs_err_estimate {
                    r.value = 0.0;
                }
                if r.value >= 0.0 {
                    return Ok(r);
                }
            }
        }
        if let Ok(r) = ext {
            if r.value < 0.0 && -r.value < r.abs_err_estimate && r.abs_err_estimate < f64::MIN_POSITIVE {
                return Ok(EvalReport { value: 0.0, ..r });
            }
        }
        Err(Error::Accuracy {
            digits: 8,
            rel_err: best_rel,
        })
    }
}

/// `f_α(x)` for a resolved index.
pub fn density(idx: &LevyIndex, x: f64) -> Result<EvalReport> {
    LevyDensity::new(idx)?.eval(x)
}
