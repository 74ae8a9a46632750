//! Verification suites: each check compares a computed quantity with an
//! identity or bound and records the value, the tolerance and the outcome.

use crate::error::{Error, Result};
use crate::jacobi::{
    asymptotic_phi, phi, phi_jet, phi_path, spectral_weight, spectral_weight_leading, JacobiParams,
};
use crate::logan::{
    build_extremizer, chebyshev_zero_count, derivatives_at_tau, finite_difference_derivatives, lambda_sup_extremizer,
    p_polynomial, partial_fraction_coefficients, shape_before_zero, verify_orthogonality, ROUNDING_FLOOR, ExtremizerKind, Family,
};
use crate::specfun::{mehler_phi, SeriesConfig};
use crate::transform::{gauss_rule, integrate_dmu, integrate_dsigma, Panels, QuadConfig};
use crate::zerocount::{build_g, r_polynomial, LEADING_FLOOR, SEPARATION};
use crate::zeros::{lambda_star_zeros, lambda_zeros};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }

    /// Passes when `value ≥ tolerance`.
    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: value >= tolerance,
        }
    }

    /// Passes when `value > 0`.
    pub fn positive(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: 0.0,
            pass: value > 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Core,
    Logan,
    Zerocount,
    Chebyshev,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "logan" => Suite::Logan,
            "zerocount" => Suite::Zerocount,
            "chebyshev" => Suite::Chebyshev,
            "all" => Suite::All,
            _ => return Err(Error::Input(format!("unknown suite {s}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportParams {
    pub alpha: f64,
    pub beta: f64,
    pub tau: f64,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub params: ReportParams,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub params: JacobiParams,
    pub tau: f64,
    pub m: usize,
    pub seed: u64,
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    let (p, tau, m) = (&cfg.params, cfg.tau, cfg.m);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        let samples: Vec<(JacobiParams, f64, f64)> = (0..2000)
            .map(|_| (*p, rng.random_range(0.0..50.0), rng.random_range(0.0..5.0)))
            .collect();
        checks.extend(bounds(&samples)?);
        checks.push(interlacing(p, tau, 20)?);
        checks.extend(identities(p, &mut rng, 10)?);
        checks.extend(asymptotics(p, 1.0)?);
        checks.extend(gauss(p, tau)?);
    }
    if matches!(suite, Suite::Logan | Suite::All) {
        checks.extend(logan(p, m, tau)?);
    }
    if matches!(suite, Suite::Zerocount | Suite::All) {
        checks.extend(zero_interval(p, tau, m.max(1), &[1.0, 2.0, PI], 6)?);
    }
    if matches!(suite, Suite::Chebyshev | Suite::All) {
        checks.extend(chebyshev(p, tau, 6, 100, &mut rng)?);
    }
    Ok(Report {
        suite,
        params: ReportParams {
            alpha: p.alpha(),
            beta: p.beta(),
            tau,
            m,
        },
        checks,
    })
}

/// `|φ_λ(t)| ≤ 1` and `φ_0(t) > 0` over the samples.
pub fn bounds(samples: &[(JacobiParams, f64, f64)]) -> Result<Vec<Check>> {
    let mut excess: f64 = 0.0;
    let mut min0 = f64::INFINITY;
    for (p, l, t) in samples {
        excess = excess.max(phi(p, *l, *t)?.abs() - 1.0);
        min0 = min0.min(phi(p, 0.0, *t)?);
    }
    Ok(vec![
        Check::at_most("bound |phi| - 1", excess, 1e-10),
        Check::positive("min phi_0", min0),
    ])
}

/// Strict interlacing `λ_k < λ_k* < λ_{k+1}` for `k ≤ count`; the value is
/// the smallest gap relative to `π/τ`.
pub fn interlacing(p: &JacobiParams, tau: f64, count: usize) -> Result<Check> {
    let l = lambda_zeros(p, tau, count + 1)?.zeros;
    let s = lambda_star_zeros(p, tau, count)?.zeros;
    let mut gap = f64::INFINITY;
    for k in 0..count {
        gap = gap.min(s[k] - l[k]).min(l[k + 1] - s[k]);
    }
    Ok(Check::positive(format!("interlacing tau={tau}"), gap * tau / PI))
}

fn shifted_by(p: &JacobiParams, k: f64) -> Result<JacobiParams> {
    JacobiParams::new(p.alpha() + k, p.beta() + k)
}

/// Recurrence between parameters `(α,β)`, `(α+1,β+1)`, `(α+2,β+2)`, the
/// derivative identity, the integral of a product over `[0, τ]`, and the
/// Mehler representation, at `count` random points each.
pub fn identities<R: Rng>(p: &JacobiParams, rng: &mut R, count: usize) -> Result<Vec<Check>> {
    let (a, b) = (p.alpha(), p.beta());
    let (p1, p2) = (shifted_by(p, 1.0)?, shifted_by(p, 2.0)?);
    let cfg = SeriesConfig::default();
    let (mut rec, mut der, mut int, mut meh): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..count {
        let l: f64 = rng.random_range(0.0..20.0);
        let t: f64 = rng.random_range(0.1..3.0);
        let (sh, ch) = (t.sinh(), t.cosh());

        let lhs = (l * l + (a + b + 3.0).powi(2)) * (sh * ch).powi(2) / (4.0 * (a + 1.0) * (a + 2.0)) * phi(&p2, l, t)?;
        let mid = ((a + 1.0) * ch * ch + (b + 1.0) * sh * sh) / (a + 1.0) * phi(&p1, l, t)?;
        let low = phi(p, l, t)?;
        rec = rec.max((lhs - mid + low).abs() / lhs.abs().max(mid.abs()).max(low.abs()));

        // (sh^{2α+2} ch^{2β+2} φ^{(α+1,β+1)})' = 2(α+1) sh^{2α+1} ch^{2β+1} φ
        let u = |s: f64| -> Result<f64> {
            Ok(s.sinh().powf(2.0 * a + 2.0) * s.cosh().powf(2.0 * b + 2.0) * phi(&p1, l, s)?)
        };
        let h = 1e-3;
        let fd = (u(t - 2.0 * h)? - 8.0 * u(t - h)? + 8.0 * u(t + h)? - u(t + 2.0 * h)?) / (12.0 * h);
        let rhs = 2.0 * (a + 1.0) * sh.powf(2.0 * a + 1.0) * ch.powf(2.0 * b + 1.0) * low;
        let scale = 2.0 * (a + 1.0) * sh.powf(2.0 * a + 1.0) * ch.powf(2.0 * b + 1.0);
        der = der.max((fd - rhs).abs() / scale);

        let mu: f64 = rng.random_range(0.0..20.0);
        if (mu - l).abs() > 0.1 {
            let tau = t;
            let (jm, jl) = (phi_jet(p, mu, tau, &cfg)?, phi_jet(p, l, tau, &cfg)?);
            let closed = p.delta(tau) * (jm.value * jl.dt - jm.dt * jl.value) / (mu * mu - l * l);
            let g = |s: f64| -> Result<f64> { Ok(phi(p, mu, s)? * phi(p, l, s)?) };
            let q = integrate_dmu(&g, tau, p, &QuadConfig::default())?.value;
            // Cauchy–Schwarz bound on ∫Δ|φ_μ φ_λ|, with smooth integrands
            let nm = integrate_dmu(&|s: f64| Ok(phi(p, mu, s)?.powi(2)), tau, p, &QuadConfig::default())?.value;
            let nl = integrate_dmu(&|s: f64| Ok(phi(p, l, s)?.powi(2)), tau, p, &QuadConfig::default())?.value;
            let norm = (nm * nl).sqrt();
            int = int.max((closed - q).abs() / norm);
        }

        if a > -0.5 {
            meh = meh.max((mehler_phi(p, l, t)? - low).abs());
        }
    }
    let mut out = vec![
        Check::at_most("recurrence residual", rec, 1e-8),
        Check::at_most("derivative identity", der, 1e-6),
        Check::at_most("product integral identity", int, 1e-6),
    ];
    if a > -0.5 {
        out.push(Check::at_most("Mehler representation", meh, 1e-6));
    }
    Ok(out)
}

/// Large-`λ` behaviour at time `t` over `λ ∈ [50, 500]`: the weight against its
/// leading term, and the error of the leading term of `φ`, whose fitted
/// constant `C = max λ|φ - φ_asym|` must not grow from `[50,100]` to
/// `[250,500]`.
pub fn asymptotics(p: &JacobiParams, t: f64) -> Result<Vec<Check>> {
    let mut weight: f64 = 0.0;
    let (mut c_low, mut c_high): (f64, f64) = (0.0, 0.0);
    let n = 451;
    for i in 0..n {
        let l = 50.0 + 450.0 * i as f64 / (n - 1) as f64;
        let r = spectral_weight(p, l)? / spectral_weight_leading(p, l);
        weight = weight.max((r - 1.0).abs() * l);
        let e = (phi(p, l, t)? - asymptotic_phi(p, l, t)?).abs() * l;
        if l <= 100.0 {
            c_low = c_low.max(e);
        }
        if l >= 250.0 {
            c_high = c_high.max(e);
        }
    }
    let growth = if c_low < 1e-12 { 0.0 } else { c_high / c_low };
    Ok(vec![
        Check::at_most("weight asymptotics lambda|s/s0 - 1|", weight, 5.0),
        Check::at_most("phi asymptotics fitted C", c_low.max(c_high), 1e3),
        Check::at_most("phi asymptotics C(250..500)/C(50..100)", growth, 1.5),
    ])
}

/// Gauss rule on nodes `λ_k(τ)`: positive weights and exactness on five entire
/// functions of type at most `2τ`, against direct quadrature in `dσ`.
pub fn gauss(p: &JacobiParams, tau: f64) -> Result<Vec<Check>> {
    let rule = gauss_rule(p, tau, 200)?;
    let min_w = rule.weights.iter().cloned().fold(f64::INFINITY, f64::min);
    let scales = [0.25, 1.0 / 3.0, 0.5, 0.7, 1.0, 1.3];
    let first: Vec<(f64, f64)> = scales
        .iter()
        .map(|&c| Ok((c * tau, lambda_zeros(p, c * tau, 1)?.get(1))))
        .collect::<Result<_>>()?;
    let l1 = |a: f64| first.iter().find(|(t, _)| (t - a).abs() <= 1e-12 * a).map(|(_, l)| *l).expect("cached time");
    let factor = |l: f64, a: f64| -> Result<f64> {
        let lk = l1(a);
        let d = 1.0 - l * l / (lk * lk);
        let v = phi(p, l, a)?;
        // removable singularity at λ_1(a)
        if d.abs() < 1e-7 {
            let h = 1e-4 * lk;
            let q = |x: f64| -> Result<f64> { Ok(phi(p, x, a)? / (1.0 - x * x / (lk * lk))) };
            return Ok(0.5 * (q(lk - h)? + q(lk + h)?));
        }
        Ok(v / d)
    };
    type Test<'a> = Box<dyn Fn(f64) -> Result<f64> + Sync + 'a>;
    let tests: Vec<(&str, Test, f64)> = vec![
        ("phi(t/2)^2", Box::new(|l| Ok(factor(l, tau / 2.0)?.powi(2))), tau),
        ("phi(0.7t)phi(1.3t)", Box::new(|l| Ok(factor(l, 0.7 * tau)? * factor(l, 1.3 * tau)?)), 2.0 * tau),
        ("phi(t/3)^2", Box::new(|l| Ok(factor(l, tau / 3.0)?.powi(2))), 2.0 * tau / 3.0),
        ("phi(t)phi(t/2)", Box::new(|l| Ok(factor(l, tau)? * factor(l, tau / 2.0)?)), 1.5 * tau),
        (
            "phi(t/2)^2 phi(t/4)^2",
            Box::new(|l| Ok(factor(l, tau / 2.0)?.powi(2) * phi(p, l, tau / 4.0)?.powi(2))),
            1.5 * tau,
        ),
    ];
    let mut out = vec![Check::positive(format!("Gauss weights min (K={})", rule.count), min_w)];
    let qcfg = QuadConfig {
        rel_tol: 1e-9,
        ..QuadConfig::default()
    };
    for (name, f, omega) in &tests {
        let g = rule.apply(|l| f(l))?;
        let direct = integrate_dsigma(f.as_ref(), -4.0, p, &Panels::for_frequency(*omega), &qcfg)?.value;
        out.push(Check::at_most(format!("Gauss exactness {name}"), (g - direct).abs() / direct.abs(), 1e-5));
    }
    Ok(out)
}

/// Extremizer checks at `(m, τ)`.
pub fn logan(p: &JacobiParams, m: usize, tau: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for c in verify_orthogonality(p, m, tau, 1e-6)? {
        out.push(Check::at_most(
            format!("orthogonality m={m} k={}", c.k),
            c.integral.abs() / c.abs_integral,
            1e-6,
        ));
    }

    let pm = p_polynomial(p, m, tau)?;
    let big = build_extremizer(p, m, tau, ExtremizerKind::FM)?;
    let inside: Vec<f64> = (0..=40).map(|i| tau * i as f64 / 40.0).collect();
    let outside: Vec<f64> = (1..=20).map(|i| tau + tau * i as f64 / 20.0).collect();
    let all: Vec<f64> = inside.iter().chain(&outside).cloned().collect();
    let inv = big.inverse_profile(&all)?;
    let prof = pm.profile(&inside)?;
    let p0 = prof[0].0;
    let err_in = inside.iter().enumerate().map(|(i, _)| (inv[i] - prof[i].0).abs()).fold(0.0, f64::max);
    let err_out = inv[inside.len()..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    out.push(Check::at_most(format!("inverse F_{m} = p_{m} on [0,tau]"), err_in / p0, 1e-5));
    out.push(Check::at_most(format!("inverse F_{m} = 0 on (tau,2tau]"), err_out / p0, 1e-5));

    let order = 2 * m - 1;
    let d = derivatives_at_tau(&pm, order)?;
    let r = d.ratios();
    let shape = shape_before_zero(&pm, tau, order, d.values[order], d.scales[0], 400)?;
    // near τ the values fall to rounding level; there only a floor is required
    let positive = if shape.min_near_zero > -ROUNDING_FLOOR { shape.min_value } else { shape.min_near_zero };
    out.push(Check::positive(format!("p_{m} positive on [0,tau)"), positive));
    out.push(Check::positive(format!("p_{m} decreasing on (0,tau)"), -shape.max_slope));
    let vanish = r[..order].iter().cloned().fold(0.0, f64::max);
    out.push(Check::at_most(format!("p_{m} orders 0..{} vanish at tau", order - 1), vanish, 1e-6));
    out.push(Check::at_least(format!("p_{m} order {order} nonvanishing"), r[order], 1e-2));
    let omega = pm.frequencies.last().copied().unwrap_or(1.0).hypot(p.rho());
    let fd = finite_difference_derivatives(|t| pm.eval(t), tau, 0.05 / omega)?;
    let dd = derivatives_at_tau(&pm, 4)?;
    let fd_err = (0..5).map(|s| (fd[s] - dd.values[s]).abs() / dd.scales[s]).fold(0.0, f64::max);
    out.push(Check::at_most(format!("p_{m} derivatives vs finite differences"), fd_err, 1e-5));

    let small = build_extremizer(p, m, tau, ExtremizerKind::SmallFM)?;
    let sup = lambda_sup_extremizer(&small)?;
    out.push(Check::at_most(format!("Lambda_{m}(f_{m}) - lambda_{m}"), (sup.value - small.zeros[m - 1]).abs(), 1e-8));
    let z = lambda_zeros(p, tau, m + 11)?.zeros;
    let mut worst = f64::INFINITY;
    for k in m..=m + 10 {
        let mid = 0.5 * (z[k - 1] + z[k]);
        let f = small.eval(mid)?;
        let ff = big.eval(mid)?;
        let sm = if m % 2 == 0 { 1.0 } else { -1.0 };
        let skm = if (k + m) % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst.min(sm * f).min(skm * ff);
    }
    out.push(Check::positive(format!("sign pattern beyond lambda_{m}"), worst));

    let ts: Vec<f64> = (0..500).map(|i| 2.0 * tau * i as f64 / 499.0).collect();
    let prof = small.inverse_profile(&ts)?;
    // J⁻¹f_m(0) = ∫f_m dσ vanishes by orthogonality, so the maximum sets the scale
    let f0 = prof.iter().cloned().fold(0.0, f64::max);
    let neg = prof.iter().fold(0.0f64, |a, &v| a.max(-v)) / f0;
    out.push(Check::at_most(format!("inverse f_{m} >= 0 on [0,2tau]"), neg, 1e-6));
    let beyond: Vec<f64> = (1..=20).map(|i| 2.0 * tau + tau * i as f64 / 20.0).collect();
    let tail = small.inverse_profile(&beyond)?.iter().fold(0.0f64, |a, v| a.max(v.abs())) / f0;
    out.push(Check::at_most(format!("inverse f_{m} = 0 on (2tau,3tau]"), tail, 1e-6));
    Ok(out)
}

/// `Σ A_i*/λ_i*² = 1` and multiplicity of `r_k` at `τ` for `k ≤ m_max`, and
/// `G_n` certificates for `n ≤ n_max` at each `γ`.
pub fn zero_interval(p: &JacobiParams, tau: f64, m_max: usize, gammas: &[f64], n_max: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let s = lambda_star_zeros(p, tau, m)?.zeros;
        let a = partial_fraction_coefficients(&s);
        let sum: f64 = a.iter().zip(&s).map(|(ai, l)| ai / (l * l)).sum();
        out.push(Check::at_most(format!("sum A*/lambda*^2 - 1, m={m}"), (sum - 1.0).abs(), 1e-10));
        let r = r_polynomial(p, m, tau)?;
        let d = derivatives_at_tau(&r, 2 * m)?.ratios();
        let vanish = d[..2 * m].iter().cloned().fold(0.0, f64::max);
        out.push(Check::at_most(format!("r_{m} orders 0..{} vanish at tau", 2 * m - 1), vanish, 1e-6));
        out.push(Check::at_least(
            format!("r_{m} order {} nonvanishing", 2 * m),
            d[2 * m],
            (1e6 * vanish).max(1e-8),
        ));
    }
    for &g in gammas {
        for n in 1..=n_max {
            let c = build_g(p, n, g)?;
            let k = c.check(400)?;
            out.push(Check {
                name: format!("G_{n} certificate gamma={g:.6} theta={:.10}", c.theta),
                value: k.leading,
                tolerance: LEADING_FLOOR.max(SEPARATION * k.max_vanishing),
                pass: k.pass,
            });
            let back = if n % 2 == 1 {
                lambda_zeros(p, c.theta, n.div_ceil(2))?.get(n.div_ceil(2))
            } else {
                lambda_star_zeros(p, c.theta, n / 2)?.get(n / 2)
            };
            out.push(Check::at_most(format!("theta_{n} round trip gamma={g:.6}"), (back - g).abs() / g, 1e-9));
        }
    }
    Ok(out)
}

/// Random combinations of `n` members of every family have at most `n-1`
/// zeros; the `k`-th eigenfunction alone has exactly `k-1`.
pub fn chebyshev<R: Rng>(p: &JacobiParams, tau: f64, n: usize, trials: usize, rng: &mut R) -> Result<Vec<Check>> {
    let points = 10_000;
    let mut out = Vec::new();
    for fam in Family::ALL {
        let grid = fam.grid(tau, points);
        let basis = fam.sample(p, tau, n, &grid)?;
        let mut worst = 0i64;
        for _ in 0..trials {
            let c: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let z = chebyshev_zero_count(&basis, &c)?;
            worst = worst.max(z.count as i64);
        }
        out.push(Check::at_most(format!("Chebyshev {fam:?} max zeros (n={n})"), worst as f64, (n - 1) as f64));
    }
    let grid = Family::PhiMu.grid(tau, points);
    let zs = lambda_zeros(p, tau, n)?.zeros;
    let cfg = SeriesConfig::default();
    let mut off = 0.0f64;
    for (k, &l) in zs.iter().enumerate() {
        let v: Vec<f64> = phi_path(p, l, &grid, &cfg)?.iter().map(|j| j.value).collect();
        let z = chebyshev_zero_count(&[v], &[1.0])?;
        off = off.max((z.count as f64 - k as f64).abs());
    }
    out.push(Check::at_most(format!("eigenfunction k has k-1 zeros, k<={n}"), off, 0.0));
    Ok(out)
}
