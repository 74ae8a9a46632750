use jacobi_logan::jacobi::JacobiParams;
use jacobi_logan::logan::{derivatives_at, derivatives_at_tau, finite_difference_derivatives};
use jacobi_logan::zerocount::{build_g, r_polynomial};
use jacobi_logan::zeros::lambda_star_zeros;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = JacobiParams> {
    (-0.5f64..2.0, 0.0f64..1.0).prop_map(|(b, f)| JacobiParams::new(b + 2.0 * f, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn g_certificate(p in params(), n in 1usize..7, gamma in 1.0f64..4.0) {
        let c = build_g(&p, n, gamma).unwrap();
        let k = c.check(200).unwrap();
        prop_assert!(k.pass, "n={n} gamma={gamma}: {k:?}");
    }

    #[test]
    fn r_polynomial_has_2m_fold_zero(p in params(), m in 1usize..5, tau in 0.5f64..2.0) {
        let r = r_polynomial(&p, m, tau).unwrap();
        let q = derivatives_at_tau(&r, 2 * m).unwrap().ratios();
        for s in 0..2 * m {
            prop_assert!(q[s] <= 1e-6, "order {s}: {}", q[s]);
        }
        prop_assert!(q[2 * m] >= 1e-2);
        let star = lambda_star_zeros(&p, tau, m).unwrap().zeros;
        let a = jacobi_logan::logan::partial_fraction_coefficients(&star);
        let sum: f64 = a.iter().zip(&star).map(|(ai, l)| ai / (l * l)).sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn analytic_derivatives_match_differences(p in params(), m in 1usize..4, tau in 0.5f64..2.0, off in 0.2f64..0.9) {
        // away from τ, where the low orders do not all vanish
        let r = r_polynomial(&p, m, tau).unwrap();
        let t = off * tau;
        let d = derivatives_at(&r, t, 4).unwrap();
        let w = r.frequencies.iter().fold(0.0f64, |a, &l| a.max((l * l + p.rho() * p.rho()).sqrt()));
        let fd = finite_difference_derivatives(|s| r.eval(s), t, (0.05 / w).min(0.2 * t)).unwrap();
        for s in 0..=4 {
            prop_assert!((d.values[s] - fd[s]).abs() <= 1e-5 * d.scales[s], "order {s}: {} vs {}", d.values[s], fd[s]);
        }
    }
}
