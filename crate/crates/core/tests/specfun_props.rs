use jacobi_logan::specfun::{gauss_2f1, log_gamma, SeriesConfig};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Plain power series of `F(a,b;c;w)` for `0 ≤ w < 1`.
fn direct_series(a: f64, b: f64, c: f64, w: f64) -> f64 {
    let (mut term, mut sum, mut small) = (1.0f64, 1.0f64, 0);
    for n in 0..200_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w;
        sum += term;
        small = if term.abs() <= 1e-17 * sum.abs() { small + 1 } else { 0 };
        if small == 3 {
            break;
        }
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn conjugate_parameters_give_real_finite_values(
        alpha in -0.5f64..4.0, rho in 0.0f64..6.0, lambda in 0.0f64..50.0, z in -50.0f64..=0.0,
    ) {
        let (a, b) = (c(rho / 2.0, lambda / 2.0), c(rho / 2.0, -lambda / 2.0));
        let v = gauss_2f1(a, b, alpha + 1.0, z, &SeriesConfig::default()).unwrap();
        prop_assert!(v.is_finite());
    }

    #[test]
    fn pfaff_transformation(a in -3.0f64..3.0, b in -3.0f64..3.0, cc in 0.5f64..4.0, z in -50.0f64..=0.0) {
        let cfg = SeriesConfig::default();
        let lhs = gauss_2f1(c(a, 0.0), c(b, 0.0), cc, z, &cfg).unwrap();
        let w = z / (z - 1.0);
        let rhs = (1.0 - z).powf(-a) * direct_series(a, cc - b, cc, w);
        let scale = lhs.abs().max(rhs.abs()).max(1e-300);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale + 1e-14, "{lhs} vs {rhs}");
    }

    #[test]
    fn log_gamma_recurrence(x in 0.5f64..10.0, y in -20.0f64..20.0) {
        let z = c(x, y);
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        // equal up to a multiple of 2πi
        let k = (d.im / (2.0 * PI)).round();
        prop_assert!(d.re.abs() < 1e-12 && (d.im - 2.0 * PI * k).abs() < 1e-12, "{d}");
    }
}

#[test]
fn gamma_on_imaginary_axis() {
    for l in [0.5f64, 1.0, 2.0, 5.0] {
        let g2 = (2.0 * log_gamma(c(0.0, l)).unwrap().re).exp();
        let exact = PI / (l * (PI * l).sinh());
        assert!((g2 / exact - 1.0).abs() < 1e-10, "{l}: {g2} vs {exact}");
    }
}
