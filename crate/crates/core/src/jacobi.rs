//! Jacobi functions `φ_λ^{(α,β)}(t) = F((ρ+iλ)/2, (ρ-iλ)/2; α+1; -sh²t)`,
//! the companions `ψ_λ = φ_λ/φ_0`, the weight `Δ(t)` and the spectral weight
//! `s(λ)`.
//!
//! Values are produced by the series near the origin and by Taylor stepping
//! along the hypergeometric ODE beyond it. Each evaluation also returns the
//! `t`-derivative and the `λ`-derivative of the same solution, so callers that
//! need `∂_t φ` or `∂_λ φ` never have to difference.

use crate::error::{Error, Result};
use crate::specfun::{ln_gamma_real, log_gamma, HypOde, HypState, SeriesConfig};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest supported time argument.
pub const T_MAX: f64 = 20.0;
/// Largest supported frequency.
pub const LAMBDA_MAX: f64 = 1e4;

/// Parameters `α ≥ β ≥ -1/2` and `ρ = α + β + 1`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
    rho: f64,
}

impl std::fmt::Display for JacobiParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(α,β)=({},{})", self.alpha, self.beta)
    }
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || beta < -0.5 || alpha < beta {
            return Err(Error::InvalidParameter(format!(
                "need alpha >= beta >= -1/2, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            rho: alpha + beta + 1.0,
        })
    }

    /// The cosine case `α = β = -1/2`.
    pub fn cosine() -> Self {
        Self::new(-0.5, -0.5).unwrap()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Parameters `(α+1, β+1)`, those of `∂_t φ` up to a factor.
    pub fn shifted(&self) -> Self {
        Self::new(self.alpha + 1.0, self.beta + 1.0).unwrap()
    }

    pub fn is_cosine(&self) -> bool {
        self.alpha == -0.5 && self.beta == -0.5
    }

    /// `Δ(t) = 2^{2ρ} (sh t)^{2α+1} (ch t)^{2β+1}`.
    pub fn delta(&self, t: f64) -> f64 {
        weight_delta(self, t)
    }

    /// `Δ'(t)/Δ(t) = (2α+1) coth t + (2β+1) tanh t`.
    pub fn log_delta_dt(&self, t: f64) -> f64 {
        (2.0 * self.alpha + 1.0) / t.tanh() + (2.0 * self.beta + 1.0) * t.tanh()
    }

    fn ode(&self, lambda: f64) -> HypOde {
        HypOde {
            ab: 0.25 * (self.rho * self.rho + lambda * lambda),
            apb: self.rho,
            c: self.alpha + 1.0,
            dab: 0.5 * lambda,
        }
    }
}

/// `Δ(t) = 2^{2ρ} (sh t)^{2α+1} (ch t)^{2β+1}`.
pub fn weight_delta(p: &JacobiParams, t: f64) -> f64 {
    2f64.powf(2.0 * p.rho) * t.sinh().powf(2.0 * p.alpha + 1.0) * t.cosh().powf(2.0 * p.beta + 1.0)
}

/// `φ_λ(t)` together with `∂_t`, `∂_λ` and `∂_λ∂_t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhiJet {
    pub value: f64,
    pub dt: f64,
    pub dlambda: f64,
    pub dlambda_dt: f64,
}

fn to_jet(s: HypState, t: f64) -> PhiJet {
    let dz = -(2.0 * t).sinh();
    PhiJet {
        value: s.f,
        dt: s.fz * dz,
        dlambda: s.df,
        dlambda_dt: s.dfz * dz,
    }
}

fn check_domain(lambda: f64, t: f64) -> Result<()> {
    if !(t >= 0.0 && t <= T_MAX) {
        return Err(Error::Domain(format!("t = {t} outside [0, {T_MAX}]")));
    }
    if !(lambda.abs() <= LAMBDA_MAX) {
        return Err(Error::Domain(format!("|lambda| = {lambda} exceeds {LAMBDA_MAX}")));
    }
    Ok(())
}

/// Jacobi function jets at increasing times `ts`, from a single pass.
pub fn phi_path(p: &JacobiParams, lambda: f64, ts: &[f64], cfg: &SeriesConfig) -> Result<Vec<PhiJet>> {
    for &t in ts {
        check_domain(lambda, t)?;
    }
    let states = p.ode(lambda).march(ts, cfg)?;
    Ok(states.into_iter().zip(ts).map(|(s, &t)| to_jet(s, t)).collect())
}

/// Jacobi function jet at one point.
pub fn phi_jet(p: &JacobiParams, lambda: f64, t: f64, cfg: &SeriesConfig) -> Result<PhiJet> {
    Ok(phi_path(p, lambda, &[t], cfg)?[0])
}

/// `φ_λ(t)` with the default series configuration.
pub fn phi(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    Ok(phi_jet(p, lambda, t, &SeriesConfig::default())?.value)
}

/// `∂_t φ_λ(t)`.
pub fn phi_dt(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    Ok(phi_jet(p, lambda, t, &SeriesConfig::default())?.dt)
}

/// `∂_λ φ_λ(t)`.
pub fn phi_dlambda(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    Ok(phi_jet(p, lambda, t, &SeriesConfig::default())?.dlambda)
}

/// `∂_t φ_λ(t)` through the shifted-parameter formula
/// `-(ρ²+λ²) sh t ch t / (2(α+1)) · φ_λ^{(α+1,β+1)}(t)`.
pub fn phi_dt_shifted(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    let q = p.shifted();
    let f = phi(&q, lambda, t)?;
    Ok(-(p.rho * p.rho + lambda * lambda) * t.sinh() * t.cosh() / (2.0 * (p.alpha + 1.0)) * f)
}

/// `ψ_λ(t) = φ_λ(t)/φ_0(t)` and its `t`-derivative.
pub fn psi_pair(p: &JacobiParams, lambda: f64, t: f64) -> Result<(f64, f64)> {
    let cfg = SeriesConfig::default();
    let a = phi_jet(p, lambda, t, &cfg)?;
    let z = phi_jet(p, 0.0, t, &cfg)?;
    Ok((a.value / z.value, (a.dt * z.value - a.value * z.dt) / (z.value * z.value)))
}

pub fn psi(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    Ok(psi_pair(p, lambda, t)?.0)
}

pub fn psi_dt(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    Ok(psi_pair(p, lambda, t)?.1)
}

/// `ln s(λ)` for `λ > 0`.
pub fn ln_spectral_weight(p: &JacobiParams, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("spectral weight needs lambda > 0, got {lambda}")));
    }
    let half = Complex64::new(0.5 * p.rho, 0.5 * lambda);
    let ln_abs_x = p.rho * 2f64.ln() + ln_gamma_real(p.alpha + 1.0) + log_gamma(Complex64::new(0.0, lambda))?.re
        - log_gamma(half)?.re
        - log_gamma(half - p.beta)?.re;
    Ok(-2.0 * ln_abs_x - (2.0 * PI).ln())
}

/// Spectral weight `s(λ) = (2π)^{-1} |2^{ρ-iλ}Γ(α+1)Γ(iλ) / (Γ((ρ+iλ)/2)Γ((ρ+iλ)/2-β))|^{-2}`.
pub fn spectral_weight(p: &JacobiParams, lambda: f64) -> Result<f64> {
    Ok(ln_spectral_weight(p, lambda)?.exp())
}

/// Leading term `(2^{ρ+α}Γ(α+1))^{-2} λ^{2α+1}` of `s(λ)` at infinity.
pub fn spectral_weight_leading(p: &JacobiParams, lambda: f64) -> f64 {
    (-2.0 * ((p.rho + p.alpha) * 2f64.ln() + ln_gamma_real(p.alpha + 1.0))).exp() * lambda.powf(2.0 * p.alpha + 1.0)
}

/// Phase `π(α+1/2)/2` of the large-frequency asymptotics.
pub fn asymptotic_phase(p: &JacobiParams) -> f64 {
    0.5 * PI * (p.alpha + 0.5)
}

/// Leading large-`λ` form `(2/π)^{1/2} (Δ(t)s(λ))^{-1/2} cos(λt - π(α+1/2)/2)`.
pub fn asymptotic_phi(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0 && t > 0.0) {
        return Err(Error::Domain("asymptotic form needs lambda > 0 and t > 0".into()));
    }
    let amp = (2.0 / PI).sqrt() * (-0.5 * (p.delta(t).ln() + ln_spectral_weight(p, lambda)?)).exp();
    Ok(amp * (lambda * t - asymptotic_phase(p)).cos())
}

/// `ln c(λ)` of the Harish-Chandra function
/// `c(λ) = 2^{ρ-iλ} Γ(α+1) Γ(iλ) / (Γ((ρ+iλ)/2) Γ((ρ+iλ)/2-β))`, for complex `λ`
/// off the imaginary axis. On the real line `s(λ) = 1/(2π|c(λ)|²)`.
pub fn ln_c_function(p: &JacobiParams, lambda: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    let half = (p.rho + i * lambda) * 0.5;
    Ok((p.rho - i * lambda) * 2f64.ln() + ln_gamma_real(p.alpha + 1.0) + log_gamma(i * lambda)?
        - log_gamma(half)?
        - log_gamma(half - p.beta)?)
}

/// Sums `h(λ,t) = Σ_k Γ_k(λ) e^{-2kt}` of the expansion
/// `Φ_λ(t) = e^{(iλ-ρ)t} h(λ,t)` of the solution that behaves like `e^{(iλ-ρ)t}`
/// at infinity, for each `t > 0` in `ts`. For real `λ ≠ 0`,
/// `φ_λ = c(λ)Φ_λ + c(-λ)Φ_{-λ}`.
///
/// The coefficients follow from `coth t = 1 + 2Σe^{-2jt}` and
/// `tanh t = 1 + 2Σ(-1)^j e^{-2jt}`:
/// `k(k-iλ)Γ_k = -Σ_{j=1}^k d_j (iλ-ρ-2(k-j)) Γ_{k-j}`, with `d_j = ρ` for even
/// `j` and `α-β` for odd `j`; running sums split by parity make each step O(1).
pub fn harish_chandra_sums(p: &JacobiParams, lambda: Complex64, ts: &[f64]) -> Result<Vec<Complex64>> {
    const MAX_TERMS: usize = 400_000;
    if ts.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::Domain("expansion at infinity needs t > 0".into()));
    }
    let i = Complex64::i();
    let mu = i * lambda - p.rho;
    let (d_even, d_odd) = (p.rho, p.alpha - p.beta);
    let xs: Vec<f64> = ts.iter().map(|t| (-2.0 * t).exp()).collect();
    let mut pow = vec![1.0; ts.len()];
    let mut sums = vec![Complex64::new(1.0, 0.0); ts.len()];
    let mut even = mu;
    let mut odd = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let s = if k % 2 == 0 { d_even * even + d_odd * odd } else { d_even * odd + d_odd * even };
        let g = -s / (kf * (kf - i * lambda));
        if k % 2 == 0 {
            even += (mu - 2.0 * kf) * g;
        } else {
            odd += (mu - 2.0 * kf) * g;
        }
        let mut small = true;
        for j in 0..ts.len() {
            pow[j] *= xs[j];
            let term = g * pow[j];
            sums[j] += term;
            // The weight `k` guards against slowly growing coefficients.
            if term.norm() * kf > 1e-17 * sums[j].norm() {
                small = false;
            }
        }
        if small {
            quiet += 1;
            if quiet >= 4 {
                return Ok(sums);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(MAX_TERMS))
}

/// `φ_λ(t)` from the expansion at infinity, `2 Re[c(λ)Φ_λ(t)]`; an independent
/// route for `λ > 0`, `t > 0` that converges fastest at large `t`.
pub fn phi_at_infinity(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    let l = Complex64::new(lambda, 0.0);
    let h = harish_chandra_sums(p, l, &[t])?[0];
    let e = ln_c_function(p, l)? + (Complex64::i() * l - p.rho) * t;
    Ok(2.0 * (e.exp() * h).re)
}
