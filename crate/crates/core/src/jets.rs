//! Derivatives at a point of solutions of `u'' + q(t) u' + k u = 0`.
//!
//! Coefficient functions are handled as truncated Taylor series ("jets");
//! derivatives of the solution follow from Leibniz's rule applied to the
//! equation:
//!
//! `u^{(s+2)} = -Σ_{j=0}^{s} C(s,j) q^{(j)} u^{(s+1-j)} - k u^{(s)}`.

use crate::jacobi::JacobiParams;

/// Taylor coefficients `c_k` of `f(τ+h) = Σ c_k h^k`, truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.len().min(o.len());
        Jet((0..n).map(|k| (0..=k).map(|i| self.0[i] * o.0[k - i]).sum()).collect())
    }

    pub fn div(&self, o: &Jet) -> Jet {
        let n = self.len().min(o.len());
        let mut q = vec![0.0; n];
        for k in 0..n {
            let s: f64 = (1..=k).map(|i| o.0[i] * q[k - i]).sum();
            q[k] = (self.0[k] - s) / o.0[0];
        }
        Jet(q)
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: f64) -> Jet {
        Jet(self.0.iter().map(|a| a * c).collect())
    }

    /// Jet of the derivative, one coefficient shorter.
    pub fn derivative(&self) -> Jet {
        Jet((1..self.len()).map(|k| k as f64 * self.0[k]).collect())
    }

    /// Derivatives `f^{(k)}(τ) = k! c_k`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.0
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= k as f64;
                }
                c * fact
            })
            .collect()
    }

    pub fn from_derivatives(d: &[f64]) -> Jet {
        let mut fact = 1.0;
        Jet(d
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k > 0 {
                    fact *= k as f64;
                }
                v / fact
            })
            .collect())
    }
}

fn sh_ch_jets(tau: f64, n: usize) -> (Jet, Jet) {
    let (s, c) = (tau.sinh(), tau.cosh());
    let mut sh = Vec::with_capacity(n);
    let mut ch = Vec::with_capacity(n);
    let mut fact = 1.0;
    for k in 0..n {
        if k > 0 {
            fact *= k as f64;
        }
        let (a, b) = if k % 2 == 0 { (s, c) } else { (c, s) };
        sh.push(a / fact);
        ch.push(b / fact);
    }
    (Jet(sh), Jet(ch))
}

/// Jet of `L = Δ'/Δ = (2α+1) coth t + (2β+1) tanh t` at `τ > 0`.
pub fn log_delta_jet(p: &JacobiParams, tau: f64, n: usize) -> Jet {
    let (sh, ch) = sh_ch_jets(tau, n);
    let coth = ch.div(&sh);
    let tanh = sh.div(&ch);
    coth.scale(2.0 * p.alpha() + 1.0).add(&tanh.scale(2.0 * p.beta() + 1.0))
}

/// Derivatives `u^{(0..=order)}(τ)` of the solution of `u'' + q u' + k u = 0`
/// with `u(τ) = u0`, `u'(τ) = u1`, given the derivatives `q^{(j)}(τ)`.
pub fn leibniz_derivatives(q_derivs: &[f64], k: f64, u0: f64, u1: f64, order: usize) -> Vec<f64> {
    let mut u = vec![0.0; order + 1];
    u[0] = u0;
    if order >= 1 {
        u[1] = u1;
    }
    for s in 0..order.saturating_sub(1) {
        let mut acc = k * u[s];
        let mut binom = 1.0;
        for j in 0..=s {
            acc += binom * q_derivs[j] * u[s + 1 - j];
            binom = binom * (s - j) as f64 / (j + 1) as f64;
        }
        u[s + 2] = -acc;
    }
    u
}

/// Derivatives at `τ` of `φ_λ` of orders `0..=order`.
pub fn phi_derivatives(p: &JacobiParams, lambda: f64, tau: f64, value: f64, dt: f64, order: usize) -> Vec<f64> {
    let l = log_delta_jet(p, tau, order + 1).derivatives();
    let k = lambda * lambda + p.rho() * p.rho();
    leibniz_derivatives(&l, k, value, dt, order)
}

/// Derivatives at `τ` of `w'/w` with `w = φ_0² Δ`, orders `0..n`.
pub fn log_star_weight_derivs(p: &JacobiParams, tau: f64, phi0: f64, phi0_dt: f64, n: usize) -> Vec<f64> {
    let l = log_delta_jet(p, tau, n + 1);
    let d0 = phi_derivatives(p, 0.0, tau, phi0, phi0_dt, n + 1);
    let phi0_jet = Jet::from_derivatives(&d0);
    let ratio = phi0_jet.derivative().div(&phi0_jet);
    let mut q = l.add(&ratio.scale(2.0));
    q.0.truncate(n);
    q.derivatives()
}

/// Derivatives at `τ` of `ψ_λ`, solving `ψ'' + (w'/w) ψ' + λ² ψ = 0`.
pub fn psi_derivatives(w_log_derivs: &[f64], lambda: f64, value: f64, dt: f64, order: usize) -> Vec<f64> {
    leibniz_derivatives(w_log_derivs, lambda * lambda, value, dt, order)
}
