use jacobi_logan::jacobi::JacobiParams;
use jacobi_logan::zeros::{lambda_star_zeros, lambda_zeros, mu_zeros, t_of_gamma};
use proptest::prelude::*;
use std::f64::consts::PI;

fn params() -> impl Strategy<Value = JacobiParams> {
    (-0.5f64..3.0, 0.0f64..1.0).prop_map(|(b, f)| JacobiParams::new(b + 3.0 * f, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lambda_and_star_interlace(p in params(), tau in 0.3f64..3.0) {
        let k = 20;
        let l = lambda_zeros(&p, tau, k + 1).unwrap().zeros;
        let s = lambda_star_zeros(&p, tau, k).unwrap().zeros;
        prop_assert!(l[0] > 0.0);
        for i in 0..k {
            prop_assert!(l[i] < s[i] && s[i] < l[i + 1], "k={}: {} {} {}", i + 1, l[i], s[i], l[i + 1]);
        }
    }

    #[test]
    fn zeros_decrease_in_tau(p in params(), t1 in 0.3f64..2.0, dt in 0.01f64..1.0) {
        let a = lambda_zeros(&p, t1, 8).unwrap().zeros;
        let b = lambda_zeros(&p, t1 + dt, 8).unwrap().zeros;
        let (ma, mb) = (mu_zeros(&p, t1, 8).unwrap().zeros, mu_zeros(&p, t1 + dt, 8).unwrap().zeros);
        for k in 0..8 {
            prop_assert!(a[k] > b[k] && ma[k] > mb[k]);
        }
    }

    #[test]
    fn spacing_tends_to_pi_over_tau(p in params(), tau in 0.3f64..3.0) {
        let z = lambda_zeros(&p, tau, 21).unwrap().zeros;
        let gap = (z[20] - z[19]) * tau / PI;
        prop_assert!((gap - 1.0).abs() <= 0.02, "{gap}");
    }

    #[test]
    fn inverse_maps_round_trip(p in params(), gamma in 0.5f64..6.0, m in 1usize..4, starred: bool) {
        let t = t_of_gamma(&p, gamma, m, starred).unwrap();
        let back = if starred {
            lambda_star_zeros(&p, t, m).unwrap().get(m)
        } else {
            lambda_zeros(&p, t, m).unwrap().get(m)
        };
        prop_assert!((back - gamma).abs() <= 1e-9 * gamma);
    }
}
