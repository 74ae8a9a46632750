//! Positive zeros in `λ` of `φ_λ(τ)`, `∂_t φ_λ(τ)` and `∂_t ψ_λ(τ)`, and the
//! inverse maps `γ ↦ t_m(γ)`, `γ ↦ t_m*(γ)`.

use crate::error::{Error, Result};
use crate::jacobi::{asymptotic_phase, phi_jet, phi_path, JacobiParams, PhiJet, LAMBDA_MAX, T_MAX};
use crate::specfun::SeriesConfig;
use serde::Serialize;
use std::f64::consts::PI;

/// Which function of `λ` the table holds zeros of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    /// `λ ↦ φ_λ(τ)`
    Lambda,
    /// `λ ↦ ∂_t φ_λ(τ)`
    Mu,
    /// `λ ↦ ∂_t ψ_λ(τ)`
    LambdaStar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroTable {
    pub tau: f64,
    pub kind: ZeroKind,
    pub zeros: Vec<f64>,
    /// Width of the final bisection bracket, relative to the zero.
    pub tol: f64,
}

impl ZeroTable {
    /// The `k`-th zero, 1-based.
    pub fn get(&self, k: usize) -> f64 {
        self.zeros[k - 1]
    }
}

/// Value of the target function of `kind` at `(λ, τ)`.
pub fn target(p: &JacobiParams, kind: ZeroKind, lambda: f64, tau: f64) -> Result<f64> {
    let cfg = SeriesConfig::default();
    let j = phi_jet(p, lambda, tau, &cfg)?;
    Ok(match kind {
        ZeroKind::Lambda => j.value,
        ZeroKind::Mu => j.dt,
        ZeroKind::LambdaStar => {
            let z = phi_jet(p, 0.0, tau, &cfg)?;
            psi_dt_of(&j, &z)
        }
    })
}

fn psi_dt_of(j: &PhiJet, z: &PhiJet) -> f64 {
    (j.dt * z.value - j.value * z.dt) / (z.value * z.value)
}

/// Bisection on a bracketed sign change until the bracket stops shrinking.
fn bisect<F: FnMut(f64) -> Result<f64>>(mut lo: f64, mut hi: f64, mut flo: f64, mut f: F) -> Result<(f64, f64)> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, 0.0));
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), hi - lo))
}

/// First `count` positive zeros of the function selected by `kind`.
///
/// A scan with step `π/(4τ)` isolates sign changes, starting at `λ = 0` (or
/// `10⁻³` for the derivative kinds, which vanish trivially at `λ = 0` when
/// `kind` is `LambdaStar`); each change is then bisected.
pub fn find_zeros(p: &JacobiParams, tau: f64, count: usize, kind: ZeroKind) -> Result<ZeroTable> {
    if !(tau > 0.0 && tau <= T_MAX) {
        return Err(Error::Domain(format!("tau = {tau} outside (0, {T_MAX}]")));
    }
    if count == 0 || count > 200 {
        return Err(Error::InvalidParameter(format!("count = {count} outside 1..=200")));
    }
    let step = PI / (4.0 * tau);
    let start = match kind {
        ZeroKind::Lambda => 0.0,
        _ => 1e-3,
    };
    let f = |l: f64| target(p, kind, l, tau);
    let mut zeros = Vec::with_capacity(count);
    let mut worst: f64 = 0.0;
    let mut lo = start;
    let mut flo = f(lo)?;
    while zeros.len() < count {
        let hi = lo + step;
        if hi > LAMBDA_MAX {
            return Err(Error::Bracketing {
                lo: start,
                hi,
                what: format!("{count} zeros of kind {kind:?}"),
            });
        }
        let fhi = f(hi)?;
        if flo == 0.0 && lo > start {
            zeros.push(lo);
        } else if (flo < 0.0) != (fhi < 0.0) && fhi != 0.0 {
            let (z, w) = bisect(lo, hi, flo, f)?;
            worst = worst.max(w / z);
            zeros.push(z);
        }
        lo = hi;
        flo = fhi;
    }
    Ok(ZeroTable {
        tau,
        kind,
        zeros,
        tol: worst,
    })
}

pub fn lambda_zeros(p: &JacobiParams, tau: f64, count: usize) -> Result<ZeroTable> {
    find_zeros(p, tau, count, ZeroKind::Lambda)
}

pub fn mu_zeros(p: &JacobiParams, tau: f64, count: usize) -> Result<ZeroTable> {
    find_zeros(p, tau, count, ZeroKind::Mu)
}

pub fn lambda_star_zeros(p: &JacobiParams, tau: f64, count: usize) -> Result<ZeroTable> {
    find_zeros(p, tau, count, ZeroKind::LambdaStar)
}

/// Initial guess `(π/2 + (k-1)π + π(α+1/2)/2)/τ` from the asymptotic phase.
pub fn asymptotic_guess(p: &JacobiParams, tau: f64, k: usize) -> f64 {
    (0.5 * PI + (k as f64 - 1.0) * PI + asymptotic_phase(p)) / tau
}

/// `t_m(γ)` (or `t_m*(γ)` when `starred`): the time at which the `m`-th zero
/// of the table equals `γ`.
///
/// Because `λ_m(t)` decreases strictly in `t`, `λ_m(t) = γ` holds exactly when
/// `t` is the `m`-th positive zero of `t ↦ φ_γ(t)` (of `t ↦ ∂_t ψ_γ(t)` in the
/// starred case). The zero is bracketed on a scan of a single ODE pass and
/// bisected in `t` on `[10⁻⁶, T_MAX]`.
pub fn t_of_gamma(p: &JacobiParams, gamma: f64, m: usize, starred: bool) -> Result<f64> {
    if !(gamma > 0.0) || m == 0 {
        return Err(Error::InvalidParameter(format!("need gamma > 0 and m >= 1, got {gamma}, {m}")));
    }
    let cfg = SeriesConfig::default();
    let omega = (gamma * gamma + p.rho() * p.rho()).sqrt();
    let h = (PI / (8.0 * omega)).min(0.05);
    let n = (T_MAX / h).ceil() as usize;
    let lo_t = 1e-6;
    let ts: Vec<f64> = (0..=n).map(|i| (lo_t + i as f64 * h).min(T_MAX)).collect();
    let path = phi_path(p, gamma, &ts, &cfg)?;
    let value = |j: &PhiJet, z: &PhiJet| if starred { psi_dt_of(j, z) } else { j.value };
    let zero_path = if starred { Some(phi_path(p, 0.0, &ts, &cfg)?) } else { None };
    let at = |i: usize| value(&path[i], zero_path.as_ref().map_or(&path[i], |z| &z[i]));
    let eval = |t: f64| -> Result<f64> {
        let j = phi_jet(p, gamma, t, &cfg)?;
        if starred {
            let z = phi_jet(p, 0.0, t, &cfg)?;
            Ok(psi_dt_of(&j, &z))
        } else {
            Ok(j.value)
        }
    };
    let mut seen = 0;
    for i in 0..n {
        let (a, b) = (at(i), at(i + 1));
        if (a < 0.0) != (b < 0.0) {
            seen += 1;
            if seen == m {
                return Ok(bisect(ts[i], ts[i + 1], a, eval)?.0);
            }
        }
    }
    Err(Error::Domain(format!(
        "t_{m}({gamma}) exceeds t_max = {T_MAX}"
    )))
}
