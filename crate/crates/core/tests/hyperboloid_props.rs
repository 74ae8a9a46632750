use jacobi_logan::hyperboloid::{logan_bound, params_for_dim, spherical_extremizer};
use jacobi_logan::logan::{build_extremizer, verify_orthogonality, ExtremizerKind};
use jacobi_logan::zeros::lambda_zeros;
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduces_to_jacobi_parameters(d in 2u32..9, m in 1usize..4, tau in 0.5f64..2.0, l in 0.0f64..30.0) {
        let h = params_for_dim(d).unwrap();
        prop_assert_eq!((h.jacobi.alpha(), h.jacobi.beta()), (d as f64 / 2.0 - 1.0, -0.5));
        let bound = logan_bound(d, m, tau).unwrap();
        prop_assert_eq!(bound, lambda_zeros(&h.jacobi, tau, m).unwrap().get(m));
        if d == 3 {
            prop_assert!((bound - m as f64 * PI / tau).abs() <= 1e-8 * bound);
        }
        let e = build_extremizer(&h.jacobi, m, tau, ExtremizerKind::SmallFM).unwrap();
        prop_assert_eq!(spherical_extremizer(d, m, tau, l).unwrap(), e.eval(l).unwrap());
    }

    #[test]
    fn spherical_extremizer_is_orthogonal(d in 2u32..9, m in 1usize..4, tau in 0.5f64..2.0) {
        let h = params_for_dim(d).unwrap();
        for c in verify_orthogonality(&h.jacobi, m, tau, 1e-6).unwrap() {
            prop_assert!(c.pass, "{c:?}");
        }
    }
}
