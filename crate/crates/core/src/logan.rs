//! Extremizers `f_m`, `F_m` of the Logan problem for the Jacobi transform, the
//! eigenfunction polynomial `p_m` with `J(p_m χ_{[0,τ]}) = F_m`, derivatives at
//! `τ`, the functional `Λ_m`, orthogonality of `f_m`, and zero counting for
//! Chebyshev systems of Jacobi functions.

use crate::error::{Error, Result};
use crate::jacobi::{phi_jet, phi_path, JacobiParams, PhiJet, T_MAX};
use crate::jets::{log_star_weight_derivs, phi_derivatives, psi_derivatives};
use crate::specfun::SeriesConfig;
use crate::spectral::SpectralPlan;
use crate::zeros::{lambda_zeros, mu_zeros, lambda_star_zeros};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest order supported by the constructions.
pub const MAX_ORDER: usize = 20;
/// Relative half-width of the window around a node `λ_k` in which `F_m` is
/// evaluated from a local expansion rather than as a quotient.
pub const NODE_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtremizerKind {
    /// `F_m(λ) = φ_λ(τ)/∏_{k≤m}(1-λ²/λ_k²)`
    #[serde(rename = "F_M")]
    FM,
    /// `f_m(λ) = φ_λ(τ) F_m(λ)`
    #[serde(rename = "SMALL_F_M")]
    SmallFM,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremizer {
    pub params: JacobiParams,
    pub m: usize,
    pub tau: f64,
    pub kind: ExtremizerKind,
    /// `λ_1(τ) < … < λ_m(τ)`.
    pub zeros: Vec<f64>,
    /// `∂_λ φ_λ(τ)` at each zero.
    slopes: Vec<f64>,
}

fn check_order(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::InvalidParameter(format!("order m = {m} outside 1..={MAX_ORDER}")));
    }
    Ok(())
}

pub fn build_extremizer(p: &JacobiParams, m: usize, tau: f64, kind: ExtremizerKind) -> Result<Extremizer> {
    check_order(m)?;
    let zeros = lambda_zeros(p, tau, m)?.zeros;
    let cfg = SeriesConfig::default();
    let slopes = zeros
        .iter()
        .map(|&l| Ok(phi_jet(p, l, tau, &cfg)?.dlambda))
        .collect::<Result<_>>()?;
    Ok(Extremizer {
        params: *p,
        m,
        tau,
        kind,
        zeros,
        slopes,
    })
}

impl Extremizer {
    /// `1/∏(1-z²/λ_k²)` at complex `z`.
    pub fn rational(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.zeros.iter().fold(one, |acc, &l| acc / (one - z * z / (l * l)))
    }

    /// `F_m(λ)`, with the removable singularities at the nodes resolved.
    pub fn big_f(&self, lambda: f64) -> Result<f64> {
        let j = phi_jet(&self.params, lambda, self.tau, &SeriesConfig::default())?;
        Ok(self.big_f_from(lambda, &j))
    }

    fn big_f_from(&self, lambda: f64, j: &PhiJet) -> f64 {
        let near = self
            .zeros
            .iter()
            .position(|&l| (lambda.abs() - l).abs() < NODE_WINDOW * l);
        match near {
            None => j.value * self.rational(Complex64::new(lambda, 0.0)).re,
            Some(k) => {
                // φ(λ)/(λ-λ_k) ≈ (∂_λφ(λ_k) + ∂_λφ(λ))/2 to second order; the
                // cancelling factor is 1-λ²/λ_k² = -(λ-λ_k)(λ+λ_k)/λ_k².
                let lk = self.zeros[k];
                let l = lambda.abs();
                let q = 0.5 * (self.slopes[k] + j.dlambda * lambda.signum());
                let mut v = -q * lk * lk / (l + lk);
                for (i, &li) in self.zeros.iter().enumerate() {
                    if i != k {
                        v /= 1.0 - l * l / (li * li);
                    }
                }
                v
            }
        }
    }

    /// `F_m` or `f_m` according to the kind.
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        let j = phi_jet(&self.params, lambda, self.tau, &SeriesConfig::default())?;
        let f = self.big_f_from(lambda, &j);
        Ok(match self.kind {
            ExtremizerKind::FM => f,
            ExtremizerKind::SmallFM => j.value * f,
        })
    }

    /// Times `τ_j` of the `φ_λ(τ_j)` factors in the density.
    fn factors(&self) -> Vec<f64> {
        match self.kind {
            ExtremizerKind::FM => vec![self.tau],
            ExtremizerKind::SmallFM => vec![self.tau, self.tau],
        }
    }

    /// `J⁻¹` of the extremizer at each `t ≥ 0`.
    pub fn inverse_profile(&self, ts: &[f64]) -> Result<Vec<f64>> {
        let plans = SpectralPlan::family(&self.params, &self.factors(), ts, &self.zeros)?;
        Ok(plans.iter().map(|pl| pl.integrate(|z| self.rational(z))).collect())
    }

    /// Spectral translation `T^t` of the extremizer evaluated at `x`:
    /// `∫ φ_λ(t) φ_λ(x) (·)(λ) dσ`.
    pub fn translate(&self, t: f64, x: f64) -> Result<f64> {
        let mut f = self.factors();
        f.push(t);
        let plan = SpectralPlan::family(&self.params, &f, &[x], &self.zeros)?;
        Ok(plan[0].integrate(|z| self.rational(z)))
    }
}

/// Basis of an [`EigenExpansion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BasisKind {
    /// `Σ B_i φ_{λ_i}(t)`
    Phi,
    /// `Σ B_i (ψ_{λ_i}(t) - ψ_{λ_i}(τ))`
    PsiShifted,
    /// `c + Σ B_i ψ_{λ_i}(t)`
    PsiPlusConst,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenExpansion {
    pub params: JacobiParams,
    pub tau: f64,
    pub basis_kind: BasisKind,
    pub frequencies: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// The constant `c` of `PsiPlusConst`; zero otherwise.
    pub constant: f64,
}

/// Coefficients of `1/∏(1-λ²/λ_i²) = Σ A_i/(λ_i²-λ²)`:
/// `A_i = ∏_j λ_j² / ∏_{j≠i}(λ_j²-λ_i²)`.
pub fn partial_fraction_coefficients(nodes: &[f64]) -> Vec<f64> {
    let prod: f64 = nodes.iter().map(|l| l * l).product();
    nodes
        .iter()
        .enumerate()
        .map(|(i, &li)| {
            let d: f64 = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &lj)| lj * lj - li * li)
                .product();
            prod / d
        })
        .collect()
}

/// `p_m(t) = Σ B_i φ_{λ_i(τ)}(t)` with `B_i = -A_i/(Δ(τ) ∂_tφ_{λ_i}(τ))`.
pub fn p_polynomial(p: &JacobiParams, m: usize, tau: f64) -> Result<EigenExpansion> {
    check_order(m)?;
    let nodes = lambda_zeros(p, tau, m)?.zeros;
    let a = partial_fraction_coefficients(&nodes);
    let cfg = SeriesConfig::default();
    let delta = p.delta(tau);
    let coefficients: Vec<f64> = nodes
        .iter()
        .zip(&a)
        .map(|(&l, &ai)| Ok(-ai / (delta * phi_jet(p, l, tau, &cfg)?.dt)))
        .collect::<Result<_>>()?;
    if let Some(i) = coefficients.iter().position(|&b| !(b > 0.0)) {
        return Err(Error::SignViolation(format!("B_{} = {} in p_{m}", i + 1, coefficients[i])));
    }
    Ok(EigenExpansion {
        params: *p,
        tau,
        basis_kind: BasisKind::Phi,
        frequencies: nodes,
        coefficients,
        constant: 0.0,
    })
}

impl EigenExpansion {
    /// Values and `t`-derivatives at increasing times `ts`.
    pub fn profile(&self, ts: &[f64]) -> Result<Vec<(f64, f64)>> {
        if ts.windows(2).any(|w| w[1] < w[0]) || ts.iter().any(|&t| !(t >= 0.0 && t <= T_MAX)) {
            return Err(Error::Domain("times must be increasing within [0, t_max]".into()));
        }
        let cfg = SeriesConfig::default();
        let mut out = vec![(0.0, 0.0); ts.len()];
        let base = match self.basis_kind {
            BasisKind::Phi => None,
            _ => Some(phi_path(&self.params, 0.0, ts, &cfg)?),
        };
        let shift = |l: f64| -> Result<f64> {
            Ok(match self.basis_kind {
                BasisKind::PsiShifted => {
                    let (a, z) = (phi_jet(&self.params, l, self.tau, &cfg)?, phi_jet(&self.params, 0.0, self.tau, &cfg)?);
                    a.value / z.value
                }
                _ => 0.0,
            })
        };
        for (&l, &b) in self.frequencies.iter().zip(&self.coefficients) {
            let path = phi_path(&self.params, l, ts, &cfg)?;
            let s = shift(l)?;
            for (i, j) in path.iter().enumerate() {
                let (v, d) = match &base {
                    None => (j.value, j.dt),
                    Some(z) => {
                        let z = &z[i];
                        (j.value / z.value - s, (j.dt * z.value - j.value * z.dt) / (z.value * z.value))
                    }
                };
                out[i].0 += b * v;
                out[i].1 += b * d;
            }
        }
        for o in out.iter_mut() {
            o.0 += self.constant;
        }
        Ok(out)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.profile(&[t])?[0].0)
    }
}

/// Derivatives at `τ` of an expansion, with the local scale
/// `Σ_i |B_i| ω_i^s E_i` against which vanishing is judged. Here `ω_i` is the
/// oscillation frequency of the basis function `u_i` (`(λ_i²+ρ²)^{1/2}` for
/// `φ`, `λ_i` for `ψ`) and `E_i = (u_i² + u_i'²/ω_i²)^{1/2}` its local
/// amplitude at `τ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeReport {
    pub values: Vec<f64>,
    pub scales: Vec<f64>,
    pub warning: Option<String>,
}

impl DerivativeReport {
    /// `|value| / scale` for each order.
    pub fn ratios(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.scales)
            .map(|(v, s)| if *s > 0.0 { v.abs() / s } else { 0.0 })
            .collect()
    }
}

/// Derivatives of orders `0..=max_order` at `t` (normally the expansion's `τ`)
/// from the Sturm–Liouville recurrence of each basis function.
pub fn derivatives_at(exp: &EigenExpansion, t: f64, max_order: usize) -> Result<DerivativeReport> {
    let p = &exp.params;
    let cfg = SeriesConfig::default();
    let mut values = vec![0.0; max_order + 1];
    let mut scales = vec![0.0; max_order + 1];
    let star = match exp.basis_kind {
        BasisKind::Phi => None,
        _ => {
            let z = phi_jet(p, 0.0, t, &cfg)?;
            Some((z, log_star_weight_derivs(p, t, z.value, z.dt, max_order + 1)))
        }
    };
    for (&l, &b) in exp.frequencies.iter().zip(&exp.coefficients) {
        let j = phi_jet(p, l, t, &cfg)?;
        let mut d = match &star {
            None => phi_derivatives(p, l, t, j.value, j.dt, max_order),
            Some((z, w)) => {
                let v = j.value / z.value;
                let dv = (j.dt * z.value - j.value * z.dt) / (z.value * z.value);
                psi_derivatives(w, l, v, dv, max_order)
            }
        };
        let omega = match exp.basis_kind {
            BasisKind::Phi => (l * l + p.rho() * p.rho()).sqrt(),
            _ => l,
        };
        let amp = if omega > 0.0 { d[0].hypot(d.get(1).map_or(0.0, |v| v / omega)) } else { d[0].abs() };
        if exp.basis_kind == BasisKind::PsiShifted {
            let (a, z) = (phi_jet(p, l, exp.tau, &cfg)?, phi_jet(p, 0.0, exp.tau, &cfg)?);
            d[0] -= a.value / z.value;
        }
        for s in 0..=max_order {
            values[s] += b * d[s];
            scales[s] += b.abs() * omega.powi(s as i32) * amp;
        }
    }
    values[0] += exp.constant;
    scales[0] += exp.constant.abs();
    let warning = (max_order > 12).then(|| format!("orders above 12 are ill-conditioned (requested {max_order})"));
    Ok(DerivativeReport {
        values,
        scales,
        warning,
    })
}

/// [`derivatives_at`] the expansion's own `τ`.
pub fn derivatives_at_tau(exp: &EigenExpansion, max_order: usize) -> Result<DerivativeReport> {
    derivatives_at(exp, exp.tau, max_order)
}

/// Richardson-extrapolated central differences of orders `0..=4` at `t`.
pub fn finite_difference_derivatives<F: Fn(f64) -> Result<f64>>(f: F, t: f64, h: f64) -> Result<[f64; 5]> {
    let stencil = |h: f64| -> Result<[f64; 5]> {
        let v: Vec<f64> = (-2..=2).map(|k| f(t + k as f64 * h)).collect::<Result<_>>()?;
        Ok([
            v[2],
            (v[3] - v[1]) / (2.0 * h),
            (v[3] - 2.0 * v[2] + v[1]) / (h * h),
            (v[4] - 2.0 * v[3] + 2.0 * v[1] - v[0]) / (2.0 * h.powi(3)),
            (v[4] - 4.0 * v[3] + 6.0 * v[2] - 4.0 * v[1] + v[0]) / h.powi(4),
        ])
    };
    let (a, b) = (stencil(h)?, stencil(0.5 * h)?);
    let mut out = [0.0; 5];
    for k in 0..5 {
        out[k] = (4.0 * b[k] - a[k]) / 3.0;
    }
    Ok(out)
}

/// Positivity and monotonicity of an expansion on `[0, z)` when it has a zero
/// of order `n` at `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeReport {
    pub value_at_zero: f64,
    /// End of the strict checks: `z - δ` where the Taylor term
    /// `|u^{(n)}(z)| δ^n/n!` equals `10⁻⁸` times the magnitude of the terms
    /// that cancel at `z`, so that the function is well above rounding on
    /// `[0, z - δ]`. Never below `z/2`.
    pub edge: f64,
    /// Smallest `u/u(0)` on `[0, edge]`.
    pub min_value: f64,
    /// Largest `u'` on `(0, edge]`; negative when decreasing.
    pub max_slope: f64,
    /// Smallest `u` on `(edge, z(1-10⁻⁶)]` relative to the term magnitude at
    /// `z`, where values approach rounding.
    pub min_near_zero: f64,
}

impl ShapeReport {
    pub fn positive_decreasing(&self) -> bool {
        self.value_at_zero > 0.0 && self.min_value > 0.0 && self.max_slope < 0.0 && self.min_near_zero > -ROUNDING_FLOOR
    }
}

/// Relative level below which values near an `n`-fold zero are rounding.
pub const ROUNDING_FLOOR: f64 = 1e-8;

/// Samples `exp` on `points` uniform points of `[0, edge]` plus a geometric
/// approach to `z`, given the `n`-th derivative `leading` at `z` and the
/// magnitude `terms` of the summands there (the order-0 derivative scale).
pub fn shape_before_zero(
    exp: &EigenExpansion,
    z: f64,
    n: usize,
    leading: f64,
    terms: f64,
    points: usize,
) -> Result<ShapeReport> {
    let u0 = exp.eval(0.0)?;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let delta = (ROUNDING_FLOOR * terms * fact / leading.abs()).powf(1.0 / n as f64);
    let edge = (z - delta).min(z * (1.0 - 1e-6)).max(z / 2.0);
    let np = points.max(2);
    let mut ts: Vec<f64> = (0..=np).map(|i| edge * i as f64 / np as f64).collect();
    let gap = z - edge;
    ts.extend(
        (1..=20)
            .map(|k| z - gap * (1e-6 * z / gap).powf(k as f64 / 20.0))
            .filter(|&t| t > edge),
    );
    let prof = exp.profile(&ts)?;
    let (mut min_value, mut max_slope, mut min_near_zero) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY);
    for (&t, &(v, d)) in ts.iter().zip(&prof) {
        if t <= edge {
            min_value = min_value.min(v / u0);
            if t > 0.0 {
                max_slope = max_slope.max(d);
            }
        } else {
            min_near_zero = min_near_zero.min(v / terms);
        }
    }
    Ok(ShapeReport {
        value_at_zero: u0,
        edge,
        min_value,
        max_slope,
        min_near_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaSup {
    pub value: f64,
    /// The last crossing lies within `2h` of the search bound.
    pub boundary_warning: bool,
}

/// `Λ_m(f) = sup{λ > 0 : (-1)^{m-1} f(λ) > 0}` searched on `[0, bound]` with
/// step `h` and refined by bisection.
pub fn lambda_sup<F: Fn(f64) -> Result<f64>>(f: F, m: usize, bound: f64, h: f64) -> Result<LambdaSup> {
    if !(bound > 0.0 && bound.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameter(format!("bound {bound}, step {h}")));
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let g = |x: f64| -> Result<f64> { Ok(sign * f(x)?) };
    let n = (bound / h).ceil() as usize;
    let mut last_pos: Option<usize> = None;
    for i in 0..=n {
        let x = (i as f64 * h).min(bound);
        if g(x)? > 0.0 {
            last_pos = Some(i);
        }
    }
    let Some(i) = last_pos else {
        return Ok(LambdaSup {
            value: 0.0,
            boundary_warning: false,
        });
    };
    if i == n {
        return Ok(LambdaSup {
            value: bound,
            boundary_warning: true,
        });
    }
    let (mut lo, mut hi) = (i as f64 * h, ((i + 1) as f64 * h).min(bound));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(LambdaSup {
        value,
        boundary_warning: bound - value < 2.0 * h,
    })
}

/// Default search for `Λ_m(f_m)`: bound `λ_{m+8}(τ)`, step `π/(64τ)`.
pub fn lambda_sup_extremizer(e: &Extremizer) -> Result<LambdaSup> {
    let bound = lambda_zeros(&e.params, e.tau, e.m + 8)?.get(e.m + 8);
    lambda_sup(|l| e.eval(l), e.m, bound, PI / (64.0 * e.tau))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub k: usize,
    pub integral: f64,
    pub abs_integral: f64,
    pub pass: bool,
}

/// `∫ λ^{2k} f_m dσ` against `∫ λ^{2k} |f_m| dσ` for `k = 0..m-1`, with pass
/// meaning a ratio of at most `tol`.
pub fn verify_orthogonality(p: &JacobiParams, m: usize, tau: f64, tol: f64) -> Result<Vec<MomentCheck>> {
    let e = build_extremizer(p, m, tau, ExtremizerKind::SmallFM)?;
    let plan = SpectralPlan::new(p, &[tau, tau], &e.zeros)?;
    Ok((0..m)
        .map(|k| {
            let r = |z: Complex64| z.powu(2 * k as u32) * e.rational(z);
            let integral = plan.integrate(r);
            let abs_integral = plan.integrate_abs(r);
            MomentCheck {
                k,
                integral,
                abs_integral,
                pass: integral.abs() <= tol * abs_integral,
            }
        })
        .collect())
}

/// Zero count of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroCount {
    /// Zeros counted with multiplicity (a touch counts twice).
    pub count: usize,
    pub sign_changes: usize,
    pub touches: usize,
    /// Two sign changes closer than three grid steps.
    pub resolution_warning: bool,
}

/// Counts zeros of samples on a grid: sign changes plus tangential touches,
/// detected as interior local minima of `|v|` below `10⁻⁸ × scale`.
pub fn count_zeros(values: &[f64], scale: f64) -> ZeroCount {
    let mut changes = Vec::new();
    let mut touches = 0;
    let n = values.len();
    let mut i = 0;
    while i + 1 < n {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 {
            // an exact zero sample: one zero, sign change or not
            changes.push(i);
        } else if b != 0.0 && (a < 0.0) != (b < 0.0) {
            changes.push(i);
        }
        i += 1;
    }
    for i in 1..n.saturating_sub(1) {
        let (a, b, c) = (values[i - 1].abs(), values[i].abs(), values[i + 1].abs());
        let same = (values[i - 1] < 0.0) == (values[i] < 0.0) && (values[i] < 0.0) == (values[i + 1] < 0.0);
        if same && b <= a && b <= c && b < 1e-8 * scale && b != 0.0 {
            touches += 1;
        }
    }
    let resolution_warning = changes.windows(2).any(|w| w[1] - w[0] < 3);
    ZeroCount {
        count: changes.len() + 2 * touches,
        sign_changes: changes.len(),
        touches,
        resolution_warning,
    }
}

/// Zeros of `Σ c_i u_i` for a basis sampled on a common grid.
pub fn chebyshev_zero_count(basis: &[Vec<f64>], coeffs: &[f64]) -> Result<ZeroCount> {
    if basis.is_empty() || basis.len() != coeffs.len() || basis.len() > 12 {
        return Err(Error::InvalidParameter(format!(
            "need 1..=12 basis functions and matching coefficients, got {} and {}",
            basis.len(),
            coeffs.len()
        )));
    }
    let n = basis[0].len();
    let mut v = vec![0.0; n];
    let mut scale: f64 = 0.0;
    for (u, &c) in basis.iter().zip(coeffs) {
        for i in 0..n {
            v[i] += c * u[i];
        }
        scale = scale.max(c.abs() * u.iter().fold(0.0f64, |m, x| m.max(x.abs())));
    }
    Ok(count_zeros(&v, scale))
}

/// Families of Jacobi functions claimed to be Chebyshev systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `φ_{λ_k(τ)}` on `[0, τ)`
    PhiLambda,
    /// `{1} ∪ {φ_{μ_k(τ)}}` on `(0, τ)`. The constant `φ_{iρ}` is the first
    /// Neumann eigenfunction; without it `φ_{μ_1}` alone already has a zero.
    PhiMu,
    /// `∂_tφ_{μ_k(τ)}` on `(0, τ)`
    DPhiMu,
    /// `∂_tφ_{λ_k(τ)}` on `(0, τ)`
    DPhiLambda,
    /// `φ_{μ_k(τ)}(t) - φ_{μ_k(τ)}(τ)` on `(0, τ)`
    PhiMuShifted,
    /// `ψ_{λ_k(τ)}` on `(0, τ)`
    PsiLambda,
    /// `{1} ∪ {ψ_{λ*_k(τ)}}` on `[0, τ]`
    OnePsiStar,
    /// `∂_tψ_{λ*_k(τ)}` on `(0, τ)`
    DPsiStar,
    /// `ψ_{λ*_k(τ)}(t) - ψ_{λ*_k(τ)}(τ)` on `(0, τ)`
    PsiStarShifted,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::PhiLambda,
        Family::PhiMu,
        Family::DPhiMu,
        Family::DPhiLambda,
        Family::PhiMuShifted,
        Family::PsiLambda,
        Family::OnePsiStar,
        Family::DPsiStar,
        Family::PsiStarShifted,
    ];

    /// Whether the interval includes `(t = 0, t = τ)`.
    pub fn closed_ends(self) -> (bool, bool) {
        match self {
            Family::PhiLambda => (true, false),
            Family::OnePsiStar => (true, true),
            _ => (false, false),
        }
    }

    /// Grid of `points` samples on the family's interval.
    pub fn grid(self, tau: f64, points: usize) -> Vec<f64> {
        let (c0, c1) = self.closed_ends();
        let n = points.max(2);
        match (c0, c1) {
            (true, true) => (0..n).map(|i| tau * i as f64 / (n - 1) as f64).collect(),
            (true, false) => (0..n).map(|i| tau * i as f64 / n as f64).collect(),
            _ => (0..n).map(|i| tau * (i as f64 + 0.5) / n as f64).collect(),
        }
    }

    /// First `n` members sampled on `grid`.
    pub fn sample(self, p: &JacobiParams, tau: f64, n: usize, grid: &[f64]) -> Result<Vec<Vec<f64>>> {
        let cfg = SeriesConfig::default();
        let freqs = match self {
            Family::PhiLambda | Family::DPhiLambda | Family::PsiLambda => lambda_zeros(p, tau, n)?.zeros,
            Family::PhiMu if n > 1 => mu_zeros(p, tau, n - 1)?.zeros,
            Family::PhiMu => Vec::new(),
            Family::DPhiMu | Family::PhiMuShifted => mu_zeros(p, tau, n)?.zeros,
            Family::OnePsiStar => {
                let mut f = vec![0.0];
                if n > 1 {
                    f.extend(lambda_star_zeros(p, tau, n - 1)?.zeros);
                }
                f
            }
            Family::DPsiStar | Family::PsiStarShifted => lambda_star_zeros(p, tau, n)?.zeros,
        };
        let psi = matches!(
            self,
            Family::PsiLambda | Family::OnePsiStar | Family::DPsiStar | Family::PsiStarShifted
        );
        let mut ts = grid.to_vec();
        if ts.last().is_none_or(|&t| t < tau) {
            ts.push(tau);
        }
        let end_at = ts.len() - 1;
        let base = if psi { Some(phi_path(p, 0.0, &ts, &cfg)?) } else { None };
        let mut rows = Vec::with_capacity(n);
        if self == Family::PhiMu {
            rows.push(vec![1.0; grid.len()]);
        }
        for &l in &freqs {
            rows.push({
                let path = phi_path(p, l, &ts, &cfg)?;
                let vals: Vec<(f64, f64)> = path
                    .iter()
                    .enumerate()
                    .map(|(i, j)| match &base {
                        None => (j.value, j.dt),
                        Some(z) => {
                            let z = &z[i];
                            (j.value / z.value, (j.dt * z.value - j.value * z.dt) / (z.value * z.value))
                        }
                    })
                    .collect();
                let end = vals[end_at].0;
                vals[..grid.len()]
                    .iter()
                    .map(|&(v, d)| match self {
                        Family::DPhiMu | Family::DPhiLambda | Family::DPsiStar => d,
                        Family::PhiMuShifted | Family::PsiStarShifted => v - end,
                        _ => v,
                    })
                    .collect::<Vec<_>>()
            });
        }
        Ok(rows)
    }
}
