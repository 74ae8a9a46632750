use jacobi_logan::logan::*;
use jacobi_logan::JacobiParams;
use std::time::Instant;

fn params() -> Vec<JacobiParams> {
    vec![
        JacobiParams::cosine(),
        JacobiParams::new(0.5, -0.5).unwrap(),
        JacobiParams::new(1.0, 0.0).unwrap(),
        JacobiParams::new(1.5, 0.5).unwrap(),
    ]
}

#[test]
fn inverse_of_big_f_is_p_polynomial() {
    for p in params() {
        for m in 1..=3 {
            let tau = 1.0;
            let t0 = Instant::now();
            let e = build_extremizer(&p, m, tau, ExtremizerKind::FM).unwrap();
            let pm = p_polynomial(&p, m, tau).unwrap();
            let ts: Vec<f64> = (0..12).map(|i| 0.05 + 0.15 * i as f64).collect();
            let inv = e.inverse_profile(&ts).unwrap();
            let scale = pm.eval(0.0).unwrap();
            for (t, v) in ts.iter().zip(&inv) {
                let expect = if *t < tau { pm.eval(*t).unwrap() } else { 0.0 };
                println!("{p:?} m={m} t={t:.2} inv={v:.3e} expect={expect:.3e}");
                assert!((v - expect).abs() < 1e-9 * scale, "{} vs {}", v, expect);
            }
            println!("took {:?}", t0.elapsed());
        }
    }
}

#[test]
fn small_f_is_orthogonal() {
    for p in params() {
        for m in 1..=4 {
            let c = verify_orthogonality(&p, m, 1.0, 1e-10).unwrap();
            for k in &c {
                println!("{p:?} m={m} k={} ratio={:.2e}", k.k, k.integral.abs() / k.abs_integral);
                assert!(k.pass);
            }
        }
    }
}

#[test]
fn p_polynomial_vanishes_to_order_2m_minus_1() {
    for p in params() {
        for m in 1..=4 {
            let pm = p_polynomial(&p, m, 1.0).unwrap();
            let d = derivatives_at_tau(&pm, 2 * m - 1).unwrap();
            let r = d.ratios();
            println!("{p:?} m={m} {r:?}");
            for s in 0..2 * m - 1 {
                assert!(r[s] < 1e-9, "order {s}: {}", r[s]);
            }
            assert!(r[2 * m - 1] > 1e-2);
        }
    }
}
