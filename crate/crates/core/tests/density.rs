use levy_stable::special::recip_gamma;
use levy_stable::{
    density, density_oracle, enumerate_representations, gamma, levy_jump, pochhammer,
    resolve_index, LevyDensity, OracleConfig,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

#[test]
fn indices_agree_with_oracle() {
    let cfg = OracleConfig::default();
    for (p, q, l1, l2) in [(1, 2, 2, 1), (1, 4, 1, 1), (1, 3, 1, 1), (2, 3, 1, 1), (1, 4, 2, 1)] {
        let idx = resolve_index(p, q, l1, l2).unwrap();
        let eng = LevyDensity::new(&idx).unwrap();
        for x in log_grid(0.2, 20.0, 25) {
            let v = eng.eval(x).unwrap().value;
            if v <= 1e-12 {
                continue;
            }
            let o = density_oracle(idx.alpha, x, &cfg).unwrap().value;
            assert!(((v - o) / o).abs() < 1e-8, "{idx} x={x}: {v} vs {o}");
        }
    }
}

#[test]
fn every_enumerated_form_gives_the_same_density() {
    for (p0, q0) in [(1, 2), (1, 3), (2, 3)] {
        let forms = enumerate_representations(p0, q0, 3);
        assert_eq!(forms.len(), 3);
        for x in [0.25, 1.0, 4.0, 30.0] {
            let base = density(&forms[0], x).unwrap();
            for idx in &forms[1..] {
                let r = density(idx, x).unwrap();
                let tol = 1e-10 * base.value + base.abs_err_estimate + r.abs_err_estimate;
                assert!((r.value - base.value).abs() <= tol, "{idx} x={x}");
            }
        }
    }
}

#[test]
fn unreduced_integer_form_matches() {
    // (2/8)^{1/2} keeps its q = 8 structure
    let a = resolve_index(2, 8, 2, 1).unwrap();
    let b = resolve_index(1, 2, 1, 1).unwrap();
    assert_eq!((a.p, a.q), (2, 8));
    for x in [0.3, 1.0, 5.0] {
        let va = density(&a, x).unwrap().value;
        let vb = density(&b, x).unwrap().value;
        assert!(((va - vb) / vb).abs() < 1e-10, "x={x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn recip_gamma_inverts_gamma(x in -50.0f64..170.0) {
        prop_assume!((x - x.round()).abs() > 1e-6 || x > 0.5);
        let g = gamma(x).unwrap();
        prop_assert!((recip_gamma(x) * g - 1.0).abs() < 1e-13, "x={}", x);
    }

    #[test]
    fn pochhammer_is_gamma_ratio(b in -20.0f64..40.0, k in 0u32..120) {
        let top = b + f64::from(k);
        prop_assume!((b - b.round()).abs() > 1e-6 && (top - top.round()).abs() > 1e-6);
        let (gt, gb) = (gamma(top), gamma(b));
        prop_assume!(gt.is_ok() && gb.is_ok());
        let (gt, gb) = (gt.unwrap(), gb.unwrap());
        prop_assume!(gt.is_finite() && gb.is_finite() && gb != 0.0);
        let ratio = gt / gb;
        let p = pochhammer(b, k);
        prop_assert!(((p - ratio) / ratio).abs() < 1e-12, "b={} k={}: {} vs {}", b, k, p, ratio);
    }

    #[test]
    fn levy_jump_is_bounded_and_monotone(q in 2u32..40, n in 1u32..40) {
        let mut last = Ratio::new(0, 1);
        for j in 1..q {
            let v = levy_jump(j, q, n).unwrap();
            prop_assert!(v >= Ratio::new(1, i64::from(q)) && v <= Ratio::new(1, 1));
            prop_assert!(v >= last);
            last = v;
        }
    }
}
