//! End-to-end acceptance suite. Runs as a plain binary so every criterion
//! prints its own line; exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use levy_stable::oracle::{lower_cutoff, upper_split};
use levy_stable::quad::{integrate_points, QuadConfig};
use levy_stable::{
    attraction_check, build_representation, density_oracle, eval_hyp, gamma,
    gauss_legendre_check, levy_smirnov_pdf, negated_gamma_ratio, resolve_index, smashed_density,
    tail_mass, BlockSeries, Error, HypSpec, LevyDensity, LevyIndex, LevySmirnovParams,
    OracleConfig, PrecisionPath, SeriesConfig, SmashedGammaParams, WrightSpec,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = std::result::Result<String, String>;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn index(p: u32, q: u32, l1: u32, l2: u32) -> LevyIndex {
    resolve_index(p, q, l1, l2).expect("valid index")
}

fn engine(alpha: f64) -> LevyDensity {
    LevyDensity::new(&LevyIndex::from_alpha(alpha).expect("representable alpha")).expect("engine")
}

/// `∫_lo^hi g(x) dx` in `u = ln x`, with a breakpoint every half unit of `u`.
fn log_integral(mut g: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Result<f64, Error> {
    let (a, b) = (lo.ln(), hi.ln());
    let n = ((b - a) / 0.5).ceil() as usize;
    let pts: Vec<f64> = (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    let cfg = QuadConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_subdivisions: 20_000,
    };
    integrate_points(
        |u| {
            let x = u.exp();
            Ok(x * g(x))
        },
        &pts,
        &cfg,
    )
    .map(|r| r.value)
}

fn worst(label: &str, errs: impl IntoIterator<Item = f64>, tol: f64) -> Check {
    let w = errs.into_iter().fold(0.0, f64::max);
    if w <= tol {
        Ok(format!("{label} {w:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{label} {w:.2e} > {tol:.0e}"))
    }
}

fn smirnov(x: f64) -> f64 {
    (-0.25 / x).exp() / (2.0 * PI.sqrt() * x.powf(1.5))
}

fn closed_form_anchor() -> Check {
    let eng = LevyDensity::new(&index(1, 2, 1, 1)).map_err(|e| e.to_string())?;
    let mut errs = Vec::new();
    for x in log_grid(0.05, 100.0, 50) {
        let v = eng.eval(x).map_err(|e| format!("x={x}: {e}"))?.value;
        errs.push(rel(v, smirnov(x)));
    }
    worst("max rel err", errs, 1e-12)
}

fn representation_equivalence() -> Check {
    let a = LevyDensity::new(&index(1, 2, 1, 1)).map_err(|e| e.to_string())?;
    let b = LevyDensity::new(&index(1, 4, 2, 1)).map_err(|e| e.to_string())?;
    let mut errs = Vec::new();
    for x in log_grid(0.1, 50.0, 40) {
        let va = a.eval(x).map_err(|e| e.to_string())?.value;
        let vb = b.eval(x).map_err(|e| e.to_string())?.value;
        errs.push(rel(va, vb));
    }
    let equiv = worst("forms", errs, 1e-10)?;
    // exp(−1/(4x)) = 0F1(;1/2; 1/(64x²)) − 1/(4x) · 0F1(;3/2; 1/(64x²))
    let cfg = SeriesConfig::default();
    let mut errs = Vec::new();
    for x in log_grid(0.1, 50.0, 20) {
        let w = 1.0 / (64.0 * x * x);
        let f = |b: f64| {
            HypSpec::from_f64(&[], &[b], w)
                .and_then(|s| eval_hyp(&s, &cfg))
                .map(|r| r.value)
                .map_err(|e| e.to_string())
        };
        let lhs = (-0.25 / x).exp();
        errs.push(rel(f(0.5)? - f(1.5)? / (4.0 * x), lhs));
    }
    let ident = worst("identity", errs, 1e-12)?;
    Ok(format!("{equiv}; {ident}"))
}

const ALPHAS: [f64; 5] = [0.25, 1.0 / 3.0, 0.5, FRAC_1_SQRT_2, 0.75];

fn laplace_identity() -> Check {
    let mut errs = Vec::new();
    for alpha in ALPHAS {
        let eng = engine(alpha);
        for y in [0.5, 1.0, 2.0, 4.0] {
            // e^{−yx} is below 1e−17 past 40/y
            let v = log_integral(
                |x| (-y * x).exp() * eng.eval(x).map(|r| r.value).unwrap_or(f64::NAN),
                lower_cutoff(alpha),
                40.0 / y,
            )
            .map_err(|e| format!("alpha={alpha} y={y}: {e}"))?;
            let err = (v - (-y.powf(alpha)).exp()).abs();
            if !err.is_finite() {
                return Err(format!("alpha={alpha} y={y}: non-finite value"));
            }
            errs.push(err);
        }
    }
    worst("max abs err", errs, 1e-7)
}

fn against_oracle(alpha: f64, lo: f64, hi: f64, n: usize) -> Check {
    let eng = engine(alpha);
    let cfg = OracleConfig::default();
    let mut errs = Vec::new();
    let mut fallbacks = Vec::new();
    for x in log_grid(lo, hi, n) {
        let r = eng.eval(x).map_err(|e| format!("x={x}: {e}"))?;
        if r.precision_path == PrecisionPath::Oracle {
            fallbacks.push(x);
        }
        let o = density_oracle(alpha, x, &cfg).map_err(|e| format!("oracle x={x}: {e}"))?;
        errs.push(rel(r.value, o.value));
    }
    if !fallbacks.is_empty() {
        return Err(format!("rows fell back to the oracle at x = {fallbacks:?}"));
    }
    worst("max rel err vs oracle", errs, 1e-8)
}

fn irrational_index() -> Check {
    against_oracle(FRAC_1_SQRT_2, 0.2, 20.0, 25)
}

fn quarter() -> Check {
    let idx = LevyIndex::from_alpha(0.25).map_err(|e| e.to_string())?;
    let rep = build_representation(&idx).map_err(|e| e.to_string())?;
    let hyp_blocks = rep
        .blocks
        .iter()
        .filter(|b| matches!(&b.series, BlockSeries::Hyp(s) if s.upper().is_empty() && s.lower().len() == 2))
        .count();
    if hyp_blocks != 3 {
        return Err(format!("expected three 0F2 blocks, found {hyp_blocks}"));
    }
    against_oracle(0.25, 0.5, 20.0, 25)
}

fn normalization() -> Check {
    let mut errs = Vec::new();
    for alpha in ALPHAS {
        let eng = engine(alpha);
        let hi = upper_split(alpha);
        let body = log_integral(
            |x| eng.eval(x).map(|r| r.value).unwrap_or(f64::NAN),
            lower_cutoff(alpha),
            hi,
        )
        .map_err(|e| format!("alpha={alpha}: {e}"))?;
        let tail = tail_mass(alpha, hi).map_err(|e| e.to_string())?;
        errs.push((body + tail - 1.0).abs());
    }
    worst("max |mass - 1|", errs, 1e-7)
}

fn smashed_rows() -> Check {
    let rows: [fn(f64) -> f64; 4] = [
        |x| 2.0 * (1.0 + 4.0 * x).powf(-1.5),
        |x| 12.0 * x * (1.0 + 4.0 * x).powf(-2.5),
        |x| 60.0 * x * x * (1.0 + 4.0 * x).powf(-3.5),
        |x| 280.0 * x.powi(3) * (1.0 + 4.0 * x).powf(-4.5),
    ];
    let mut errs = Vec::new();
    let mut mass_errs = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let params = SmashedGammaParams::new(0.5, k as f64 + 1.0).map_err(|e| e.to_string())?;
        let f = |x: f64| smashed_density(params, x).map(|r| r.value).unwrap_or(f64::NAN);
        for x in log_grid(1e-3, 1e3, 40) {
            errs.push(rel(f(x), row(x)));
        }
        // mass beyond 1e24 decays like x^{−1/2} and is below 1e−11
        let m = log_integral(f, 1e-16, 1e24).map_err(|e| e.to_string())?;
        mass_errs.push((m - 1.0).abs());
    }
    let a = worst("rows", errs, 1e-12)?;
    let b = worst("|mass - 1|", mass_errs, 1e-7)?;
    Ok(format!("{a}; {b}"))
}

fn attraction() -> Check {
    let mut report = Vec::new();
    for alpha in [0.5, 0.7] {
        let params = SmashedGammaParams::new(alpha, 1.0).map_err(|e| e.to_string())?;
        for y in [0.5, 1.0, 2.0] {
            let target = (-f64::powf(y, alpha)).exp();
            let err = |n| {
                attraction_check(params, y, n)
                    .map(|v| (v - target).abs())
                    .map_err(|e| format!("alpha={alpha} y={y} n={n}: {e}"))
            };
            let (e2, e1024) = (err(2)?, err(1024)?);
            if !(e1024 < 1e-2 && e1024 < e2) {
                return Err(format!("alpha={alpha} y={y}: n=2 {e2:.2e}, n=1024 {e1024:.2e}"));
            }
            report.push(e1024);
        }
    }
    let w = report.iter().cloned().fold(0.0, f64::max);
    Ok(format!("max err at n=1024 {w:.2e} < 1e-2, below n=2 everywhere"))
}

fn smirnov_median() -> Check {
    let mut masses = Vec::new();
    for mu in [0.5, 1.0, 2.0] {
        let p = LevySmirnovParams::new(mu).map_err(|e| e.to_string())?;
        let r = integrate_points(
            |t| if t <= 0.0 { Ok(0.0) } else { levy_smirnov_pdf(p, t) },
            &[0.0, 0.1 * mu, mu, 2.0 * mu],
            &QuadConfig::default(),
        )
        .map_err(|e| e.to_string())?;
        if !(0.45..=0.55).contains(&r.value) {
            return Err(format!("mu={mu}: mass {}", r.value));
        }
        masses.push(r.value);
    }
    Ok(format!("masses {masses:.6?} in [0.45, 0.55]"))
}

fn identity_suite() -> Check {
    let mut gl = Vec::new();
    for m in 1..=8 {
        for z in [0.05, 0.3, 0.5, 1.0, 1.7, 3.25, 7.5, 20.0, 55.5] {
            gl.push(gauss_legendre_check(m, z).map_err(|e| e.to_string())?);
        }
    }
    let gl = worst("Gauss-Legendre", gl, 1e-12)?;

    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (-5.0f64..5.0, 0u32..=10).prop_filter("pole", |(b, v)| {
        let arg = b + 1.0 - f64::from(*v);
        (arg - arg.round()).abs() > 1e-6 && (b + 1.0 - (b + 1.0).round()).abs() > 1e-6
    });
    runner
        .run(&strategy, |(b, v)| {
            let lhs = negated_gamma_ratio(b, v).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let rhs = gamma(b + 1.0 - f64::from(v)).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(rel(lhs, rhs) <= 1e-12, "beta={} v={}: {} vs {}", b, v, lhs, rhs);
            Ok(())
        })
        .map_err(|e| format!("gamma ratio property: {e}"))?;

    for (upper, lower) in [
        (vec![(1.0, 1.0)], vec![]),
        (vec![(0.5, 1.5)], vec![(1.0, 0.5)]),
        (vec![(0.5, 2.0)], vec![]),
    ] {
        match WrightSpec::from_f64(&upper, &lower, 0.5) {
            Err(Error::ConvergenceGate { .. }) => {}
            other => return Err(format!("gate accepted {upper:?}/{lower:?}: {other:?}")),
        }
    }
    let mut specs = 0;
    for q in 2..=12 {
        for p in 1..q {
            for (l1, l2) in [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)] {
                let Ok(idx) = resolve_index(p, q, l1, l2) else {
                    continue;
                };
                let rep = build_representation(&idx).map_err(|e| format!("{idx}: {e}"))?;
                for b in &rep.blocks {
                    if let BlockSeries::Wright(s) = &b.series {
                        if s.margin() <= -1.0 {
                            return Err(format!("{idx} block {} margin {}", b.j, s.margin()));
                        }
                    }
                    specs += 1;
                }
            }
        }
    }
    Ok(format!("{gl}; 1000 gamma-ratio cases within 1e-12; gate ok on {specs} generated series"))
}

/// Name, body and wall-clock budget.
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 closed-form anchor", closed_form_anchor, Some(Duration::from_secs(1))),
        ("2 representation equivalence", representation_equivalence, Some(Duration::from_secs(1))),
        ("3 Laplace identity", laplace_identity, Some(Duration::from_secs(30))),
        ("4 irrational index", irrational_index, Some(Duration::from_secs(20))),
        ("5 alpha = 1/4", quarter, Some(Duration::from_secs(10))),
        ("6 normalization", normalization, None),
        ("7 smashed-gamma rows", smashed_rows, None),
        ("8 attraction limit", attraction, None),
        ("9 Levy-Smirnov median", smirnov_median, None),
        ("10 identity suite", identity_suite, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(msg), Some(b)) if took > b => Err(format!("{msg}; took {took:.2?} > {b:.0?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} ({took:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
