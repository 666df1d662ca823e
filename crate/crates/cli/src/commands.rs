use std::fs;
use std::path::Path;

use levy_stable::{
    density_oracle, enumerate_representations, process_cdf, resolve_index, smashed_density,
    smashed_laplace, DensityConfig, EvalReport, LevyDensity, LevyIndex, OracleConfig,
    OracleMethod, PrecisionPath, SeriesConfig, SmashedGammaParams,
};
use rayon::prelude::*;

use crate::args::{
    Command, CompareArgs, DensityArgs, Figure1Args, GridArgs, IndexArgs, Scale, SmashArgs,
    TableArgs, TolArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::output::{with_sink, Cell, Table};
use crate::verify;

/// Exit code of a command that ran to completion.
pub type Outcome = Result<u8, CliError>;

pub fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Density(a) => density(&a),
        Command::Table(a) => table(&a),
        Command::Compare(a) => compare(&a),
        Command::Smash(a) => smash(&a),
        Command::Verify(a) => verify_cmd(&a),
        Command::Figure1(a) => figure1(&a),
    }
}

fn parse_rational(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("--alpha-rational expects P/Q, got {s:?}"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let q: u32 = q.trim().parse().map_err(|_| bad())?;
    if p == 0 || q == 0 {
        return Err(bad());
    }
    Ok((p, q))
}

/// The `(p0, q0)` of a rational α named by the flags, if any.
fn rational_base(ix: &IndexArgs) -> Result<Option<(u32, u32)>, CliError> {
    if let Some(s) = &ix.alpha_rational {
        return parse_rational(s).map(Some);
    }
    match (ix.p, ix.q, ix.l1.unwrap_or(1), ix.l2.unwrap_or(1)) {
        (Some(p), Some(q), l1, l2) if l1 == l2 => Ok(Some((p, q))),
        _ => Ok(None),
    }
}

fn representations(p0: u32, q0: u32, n: usize) -> Result<Vec<LevyIndex>, CliError> {
    // validates p0/q0 before enumerating
    resolve_index(p0, q0, 1, 1)?;
    Ok(enumerate_representations(p0, q0, n))
}

pub fn resolve(ix: &IndexArgs) -> Result<LevyIndex, CliError> {
    if ix.rep == 0 {
        return Err(CliError::Usage("--rep counts from 1".into()));
    }
    if let Some(a) = ix.alpha {
        if ix.rep != 1 {
            return Err(CliError::Usage("--rep needs --alpha-rational or --p/--q".into()));
        }
        return Ok(LevyIndex::from_alpha(a)?);
    }
    if ix.alpha_rational.is_none() && (ix.p.is_none() || ix.q.is_none()) {
        return Err(CliError::Usage(
            "give --p and --q (with optional --l1/--l2), --alpha, or --alpha-rational".into(),
        ));
    }
    if ix.rep == 1 && ix.alpha_rational.is_none() {
        let (p, q) = (ix.p.unwrap_or(1), ix.q.unwrap_or(1));
        return Ok(resolve_index(p, q, ix.l1.unwrap_or(1), ix.l2.unwrap_or(1))?);
    }
    let (p0, q0) = rational_base(ix)?
        .ok_or_else(|| CliError::Usage("--rep needs l1 = l2 or --alpha-rational".into()))?;
    let forms = representations(p0, q0, ix.rep)?;
    forms.get(ix.rep - 1).cloned().ok_or_else(|| {
        CliError::Domain(format!("domain error: {p0}/{q0} has only {} representations", forms.len()))
    })
}

pub fn grid(g: &GridArgs) -> Result<Vec<f64>, CliError> {
    let mut xs = g.x.clone();
    match (g.x_min, g.x_max) {
        (Some(a), Some(b)) => {
            if a.is_nan() || b.is_nan() || a >= b {
                return Err(CliError::Usage(format!("--x-min {a} must be below --x-max {b}")));
            }
            if g.count == 0 {
                return Err(CliError::Usage("--count must be at least 1".into()));
            }
            if g.scale == Scale::Log && a <= 0.0 {
                return Err(CliError::Domain("domain error: log grid needs --x-min > 0".into()));
            }
            let n = g.count;
            for i in 0..n {
                let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                xs.push(match (g.scale, i) {
                    // endpoints exactly as given
                    (_, 0) => a,
                    (_, i) if i == n - 1 => b,
                    (Scale::Lin, _) => a + (b - a) * t,
                    (Scale::Log, _) => (a.ln() + (b.ln() - a.ln()) * t).exp(),
                });
            }
        }
        (None, None) => {}
        _ => return Err(CliError::Usage("--x-min and --x-max go together".into())),
    }
    if xs.is_empty() {
        return Err(CliError::Usage("empty grid: give --x or --x-min/--x-max".into()));
    }
    if let Some(x) = xs.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(CliError::Domain(format!("domain error: x = {x} must be positive and finite")));
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    Ok(xs)
}

fn density_config(t: &TolArgs) -> Result<DensityConfig, CliError> {
    for (name, v) in [
        ("--rel-tol", t.rel_tol),
        ("--certify-rel", t.certify_rel),
        ("--oracle-abs-tol", t.oracle_abs_tol),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!("{name} must be positive")));
        }
    }
    let oracle = OracleConfig::new(OracleMethod::BromwichReal, t.oracle_abs_tol)?;
    Ok(DensityConfig {
        series: SeriesConfig {
            rel_tol: t.rel_tol,
            ..SeriesConfig::default()
        },
        certify_rel: t.certify_rel,
        oracle,
        oracle_fallback: !t.no_oracle_fallback,
        ..DensityConfig::default()
    })
}

fn write_table(t: &Table, out: &crate::args::OutputArgs) -> Result<(), CliError> {
    with_sink(out.output.as_deref(), |w| t.write(out.format, w))
}

/// Evaluates `f` at every point on the worker pool, in grid order.
fn eval_grid<T: Send>(
    xs: &[f64],
    f: impl Fn(f64) -> Result<T, levy_stable::Error> + Sync,
) -> Result<Vec<T>, CliError> {
    xs.par_iter()
        .map(|&x| f(x).map_err(|e| CliError::from(e).context(x)))
        .collect()
}

impl CliError {
    fn context(self, x: f64) -> Self {
        match self {
            CliError::Domain(m) => CliError::Domain(format!("x = {x}: {m}")),
            CliError::Failure(m) => CliError::Failure(format!("x = {x}: {m}")),
            other => other,
        }
    }
}

fn density(a: &DensityArgs) -> Outcome {
    let idx = resolve(&a.index)?;
    let eng = LevyDensity::with_config(&idx, density_config(&a.tol)?)?;
    let xs = grid(&a.grid)?;
    let reports = eval_grid(&xs, |x| eng.eval(x))?;
    let mut t = Table::new(["x", "density", "abs_err", "terms", "precision_path"]);
    for (x, r) in xs.iter().zip(&reports) {
        t.push(vec![
            (*x).into(),
            r.value.into(),
            r.abs_err_estimate.into(),
            r.terms_used.into(),
            r.precision_path.as_str().into(),
        ]);
    }
    write_table(&t, &a.out)?;
    Ok(fallback_code(&reports))
}

fn fallback_code(reports: &[EvalReport]) -> u8 {
    if reports.iter().any(|r| r.precision_path == PrecisionPath::Oracle) {
        2
    } else {
        0
    }
}

fn table(a: &TableArgs) -> Outcome {
    let cfg = density_config(&a.tol)?;
    let engines = a
        .alphas
        .iter()
        .map(|&al| Ok(LevyDensity::with_config(&LevyIndex::from_alpha(al)?, cfg)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let xs = grid(&a.grid)?;
    let rows = eval_grid(&xs, |x| {
        engines.iter().map(|e| e.eval(x)).collect::<Result<Vec<_>, _>>()
    })?;
    let mut header = vec!["x".to_owned()];
    header.extend(a.alphas.iter().map(|al| format!("alpha={al:?}")));
    let mut t = Table::new(header);
    for (x, r) in xs.iter().zip(&rows) {
        let mut row = vec![Cell::from(*x)];
        row.extend(r.iter().map(|r| Cell::from(r.value)));
        t.push(row);
    }
    write_table(&t, &a.out)?;
    Ok(fallback_code(&rows.concat()))
}

/// Rounding allowance added to each value's own error estimate.
const ROUNDING_ULPS: f64 = 16.0;

fn compare(a: &CompareArgs) -> Outcome {
    let forms = if a.single {
        vec![resolve(&a.index)?]
    } else {
        if a.forms == 0 {
            return Err(CliError::Usage("--forms must be at least 1".into()));
        }
        let (p0, q0) = rational_base(&a.index)?.ok_or_else(|| {
            CliError::Usage("compare needs a rational alpha (--alpha-rational or --p/--q)".into())
        })?;
        representations(p0, q0, a.forms)?
    };
    let cfg = density_config(&a.tol)?;
    let engines = forms
        .iter()
        .map(|idx| Ok(LevyDensity::with_config(idx, cfg)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let alpha = forms[0].alpha;
    let xs = grid(&a.grid)?;
    let rows = eval_grid(&xs, |x| {
        let mut v = engines.iter().map(|e| e.eval(x)).collect::<Result<Vec<_>, _>>()?;
        v.push(density_oracle(alpha, x, &cfg.oracle)?);
        Ok(v)
    })?;
    let mut header = vec!["x".to_owned()];
    header.extend(forms.iter().map(|i| format!("rep{i}")));
    header.extend(["oracle", "max_dev", "tolerance", "within"].map(String::from));
    let mut t = Table::new(header);
    let mut all_within = true;
    for (x, r) in xs.iter().zip(&rows) {
        let mut dev: f64 = 0.0;
        for (i, a) in r.iter().enumerate() {
            for b in &r[i + 1..] {
                dev = dev.max((a.value - b.value).abs());
            }
        }
        let tol: f64 = r
            .iter()
            .map(|e| e.abs_err_estimate + ROUNDING_ULPS * f64::EPSILON * e.value.abs())
            .sum();
        let within = dev <= tol;
        all_within &= within;
        let mut row = vec![Cell::from(*x)];
        row.extend(r.iter().map(|e| Cell::from(e.value)));
        row.extend([dev.into(), tol.into(), within.into()]);
        t.push(row);
    }
    write_table(&t, &a.out)?;
    if all_within {
        Ok(0)
    } else {
        eprintln!("error: some representations deviate beyond their combined error estimates");
        Ok(1)
    }
}

fn smash(a: &SmashArgs) -> Outcome {
    let p = SmashedGammaParams::new(a.alpha, a.gamma)?;
    if p.is_experimental() {
        eprintln!("warning: alpha > 1 is experimental; values are not certified");
    }
    if !a.y.is_empty() {
        if let Some(y) = a.y.iter().find(|y| !(**y >= 0.0 && y.is_finite())) {
            return Err(CliError::Domain(format!("domain error: y = {y} must be nonnegative")));
        }
        let vals = eval_grid(&a.y, |y| smashed_laplace(p, y))?;
        let mut t = Table::new(["y", "laplace"]);
        for (y, v) in a.y.iter().zip(vals) {
            t.push(vec![(*y).into(), v.into()]);
        }
        write_table(&t, &a.out)?;
        return Ok(0);
    }
    let xs = grid(&a.grid)?;
    let with_cdf = !p.is_experimental();
    let rows = eval_grid(&xs, |x| {
        let r = smashed_density(p, x)?;
        let cdf = if with_cdf { Some(process_cdf(p, x)?) } else { None };
        Ok((r, cdf))
    })?;
    let mut header = vec!["x", "pdf", "abs_err"];
    if with_cdf {
        header.push("cdf");
    }
    let mut t = Table::new(header);
    for (x, (r, cdf)) in xs.iter().zip(rows) {
        let mut row = vec![Cell::from(*x), r.value.into(), r.abs_err_estimate.into()];
        row.extend(cdf.map(Cell::from));
        t.push(row);
    }
    write_table(&t, &a.out)?;
    Ok(0)
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let results = verify::run_checks(a)?;
    let report = verify::report(&results);
    with_sink(a.output.as_deref(), |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)
    })?;
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("error: failed checks: {}", failed.join(", "));
        Ok(1)
    }
}

fn figure1(a: &Figure1Args) -> Outcome {
    if a.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", a.out_dir.display())))?;
    let xs: Vec<f64> = (1..=a.points)
        .map(|k| 10.0 * k as f64 / a.points as f64)
        .collect();
    for g in 1..=4u32 {
        let gamma = f64::from(g);
        let gam = SmashedGammaParams::new(1.0, gamma)?;
        let smashed = SmashedGammaParams::new(0.5, gamma)?;
        let rows = eval_grid(&xs, |x| {
            Ok((smashed_density(gam, x)?.value, smashed_density(smashed, x)?.value))
        })?;
        let mut t = Table::new(["x", "gamma_pdf", "smashed_pdf"]);
        for (x, (gp, sp)) in xs.iter().zip(rows) {
            t.push(vec![(*x).into(), gp.into(), sp.into()]);
        }
        let path = a.out_dir.join(format!("figure1_gamma{g}.csv"));
        write_file(&path, &t)?;
    }
    Ok(0)
}

fn write_file(path: &Path, t: &Table) -> Result<(), CliError> {
    with_sink(Some(path), |w| t.write_csv(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix() -> IndexArgs {
        IndexArgs {
            p: None,
            q: None,
            l1: None,
            l2: None,
            alpha: None,
            alpha_rational: None,
            rep: 1,
        }
    }

    fn g() -> GridArgs {
        GridArgs {
            x: vec![],
            x_min: None,
            x_max: None,
            count: 50,
            scale: Scale::Log,
        }
    }

    #[test]
    fn resolves_each_selector() {
        let i = resolve(&IndexArgs { p: Some(1), q: Some(2), ..ix() }).unwrap();
        assert_eq!((i.p, i.q, i.l1, i.l2), (1, 2, 1, 1));
        let i = resolve(&IndexArgs {
            alpha_rational: Some("1/2".into()),
            rep: 2,
            ..ix()
        })
        .unwrap();
        assert_eq!((i.p, i.q, i.l1, i.l2), (1, 4, 2, 1));
        let i = resolve(&IndexArgs { alpha: Some(0.25), ..ix() }).unwrap();
        assert_eq!((i.p, i.q), (1, 4));
        assert!(matches!(resolve(&ix()), Err(CliError::Usage(_))));
        assert!(matches!(
            resolve(&IndexArgs { alpha_rational: Some("x/2".into()), ..ix() }),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            resolve(&IndexArgs { p: Some(3), q: Some(2), ..ix() }),
            Err(CliError::Domain(_))
        ));
    }

    #[test]
    fn grids() {
        assert!(matches!(grid(&g()), Err(CliError::Usage(_))));
        let xs = grid(&GridArgs { x: vec![2.0, 1.0, 2.0], ..g() }).unwrap();
        assert_eq!(xs, vec![1.0, 2.0]);
        let xs = grid(&GridArgs {
            x_min: Some(0.1),
            x_max: Some(10.0),
            count: 3,
            ..g()
        })
        .unwrap();
        assert!((xs[1] - 1.0).abs() < 1e-15);
        let bad = GridArgs {
            x_min: Some(1.0),
            x_max: Some(1.0),
            ..g()
        };
        assert!(matches!(grid(&bad), Err(CliError::Usage(_))));
        assert!(matches!(grid(&GridArgs { x: vec![-1.0], ..g() }), Err(CliError::Domain(_))));
    }
}
