//! Integrals `∫₀^∞ r(λ) ∏_j φ_λ(τ_j) dσ(λ)` for an analytic factor `r` that is
//! real on the real line, such as `1/∏(1-λ²/λ_k²)` or `λ^{2k}`.
//!
//! The integral is split at a cut `Λ` beyond every real singularity of `r`.
//! On `[0, Λ]` the integrand is evaluated directly on Gauss–Legendre panels
//! of half an oscillation period. Beyond `Λ` every factor is replaced by its
//! exact expansion at infinity, `φ_λ = c(λ)Φ_λ + c(-λ)Φ_{-λ}`, and
//! `s(λ) = 1/(2π c(λ)c(-λ))`. Multiplying out gives terms
//! `e^{iωλ} × (non-oscillating)`, each of which is moved onto the vertical ray
//! `Λ ± iy`, where `e^{iωλ}` decays. All singularities of the expansion sit on
//! the imaginary axis, so the rotation is legitimate for every `Λ > 0`, and
//! the tail carries no truncation or asymptotic model error. Integrands whose
//! real-axis tail converges only conditionally (or not at all, when `φ` factors
//! are too few to beat the growth of `s`) receive their Abel-regularized value.

use crate::error::{Error, Result};
use crate::jacobi::{harish_chandra_sums, ln_c_function, ln_spectral_weight, phi_path, JacobiParams};
use crate::quad;
use crate::specfun::SeriesConfig;
use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

const CONTOUR_ORDER: usize = 64;
const MIN_CUT: f64 = 8.0;

fn contour_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(NonZeroUsize::new(CONTOUR_ORDER).unwrap());
        let mut v: Vec<(f64, f64)> = gl
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    })
}

/// Precomputed nodes for one factor set; `integrate` is then cheap for any `r`.
#[derive(Debug, Clone)]
pub struct SpectralPlan {
    factors: Vec<f64>,
    cut: f64,
    head: Vec<(f64, f64)>,
    tail: Vec<(Complex64, Complex64)>,
}

impl SpectralPlan {
    /// Plan for the factors `φ_λ(τ_j)`, `τ_j ≥ 0`, where the later `r` has its
    /// real singularities at `poles` (removable once multiplied by the
    /// factors). Each pole becomes a panel end, so no node falls on one.
    pub fn new(p: &JacobiParams, factors: &[f64], poles: &[f64]) -> Result<Self> {
        Ok(Self::family(p, factors, &[0.0], poles)?.remove(0))
    }

    /// One plan per extra time `t ∈ ts`, with factors `base ∪ {t}`. The head
    /// nodes are shared and each node costs a single ODE pass.
    pub fn family(p: &JacobiParams, base: &[f64], ts: &[f64], poles: &[f64]) -> Result<Vec<Self>> {
        if base.iter().chain(ts).any(|&t| !(t >= 0.0)) {
            return Err(Error::Domain("factor times must be >= 0".into()));
        }
        if poles.iter().any(|&q| !(q >= 0.0 && q.is_finite())) {
            return Err(Error::InvalidParameter(format!("poles {poles:?}")));
        }
        let pole_bound = poles.iter().cloned().fold(0.0, f64::max);
        let tmax = ts.iter().cloned().fold(0.0, f64::max);
        let omega: f64 = base.iter().sum::<f64>() + tmax;
        let width = if omega > 0.0 { (PI / omega).min(1.0) } else { 1.0 };
        // Singularities on the imaginary axis slow the contour rule when the cut is
        // close to them; beyond 8 the tail is exact to rounding. Real poles need a
        // few panels of clearance too, or the contour passes too near them.
        let panels = ((pole_bound.max(MIN_CUT) + 6.0 * width) / width).ceil() as usize;
        let cut = panels as f64 * width;

        let mut times: Vec<f64> = base.iter().chain(ts).cloned().filter(|&t| t > 0.0).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let index = |t: f64| times.iter().position(|&u| u == t);

        let mut breaks: Vec<f64> = (0..=panels).map(|j| j as f64 * width).chain(poles.iter().cloned()).collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * width);
        let nodes: Vec<(f64, f64)> = breaks.windows(2).flat_map(|w| quad::panel_nodes(w[0], w[1])).collect();
        let cfg = SeriesConfig::default();
        // Per node: weight × s(λ) × ∏ base factors, and the values at every time.
        let rows: Vec<(f64, f64, Vec<f64>)> = nodes
            .par_iter()
            .map(|&(l, w)| -> Result<(f64, f64, Vec<f64>)> {
                let vals: Vec<f64> = if times.is_empty() {
                    Vec::new()
                } else {
                    phi_path(p, l, &times, &cfg)?.iter().map(|j| j.value).collect()
                };
                let mut h = w * ln_spectral_weight(p, l)?.exp();
                for &b in base {
                    if let Some(i) = index(b) {
                        h *= vals[i];
                    }
                }
                Ok((l, h, vals))
            })
            .collect::<Result<_>>()?;

        ts.iter()
            .map(|&t| {
                let head = rows
                    .iter()
                    .map(|(l, h, vals)| (*l, h * index(t).map_or(1.0, |i| vals[i])))
                    .collect();
                let mut factors: Vec<f64> = base.iter().cloned().filter(|&b| b > 0.0).collect();
                if t > 0.0 {
                    factors.push(t);
                }
                let tail = tail_nodes(p, &factors, cut)?;
                Ok(Self {
                    factors,
                    cut,
                    head,
                    tail,
                })
            })
            .collect()
    }

    pub fn cut(&self) -> f64 {
        self.cut
    }

    /// The positive factor times of this plan.
    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    /// `∫₀^∞ r(λ) ∏ φ_λ(τ_j) dσ`.
    pub fn integrate<R: Fn(Complex64) -> Complex64>(&self, r: R) -> f64 {
        let head: f64 = self.head.iter().map(|&(l, h)| h * r(Complex64::new(l, 0.0)).re).sum();
        head + self.tail_value(&r)
    }

    /// `∫₀^∞ |r(λ) ∏ φ_λ(τ_j)| dσ`, valid when the integrand keeps one sign
    /// beyond the cut (as for `λ^{2k} f_m`).
    pub fn integrate_abs<R: Fn(Complex64) -> Complex64>(&self, r: R) -> f64 {
        let head: f64 = self.head.iter().map(|&(l, h)| (h * r(Complex64::new(l, 0.0)).re).abs()).sum();
        head + self.tail_value(&r).abs()
    }

    fn tail_value<R: Fn(Complex64) -> Complex64>(&self, r: &R) -> f64 {
        self.tail.iter().map(|&(z, k)| (k * r(z)).re).sum()
    }
}

/// Rotated-contour nodes and weighted kernels for `∫_Λ^∞ r s ∏φ dλ`; the tail
/// equals `Re Σ kernel × r(z)`.
fn tail_nodes(p: &JacobiParams, factors: &[f64], cut: f64) -> Result<Vec<(Complex64, Complex64)>> {
    let n = factors.len();
    let damp: f64 = -p.rho() * factors.iter().sum::<f64>();
    // Sign patterns with the first sign fixed; conjugate patterns give the
    // complex conjugate on the real axis, hence the factor 2.
    let patterns: Vec<Vec<bool>> = if n == 0 {
        vec![Vec::new()]
    } else {
        (0..1usize << (n - 1))
            .map(|bits| (0..n).map(|j| j == 0 || bits >> (j - 1) & 1 == 0).collect())
            .collect()
    };
    let mult = if n == 0 { 1.0 } else { 2.0 };
    let i = Complex64::i();
    let mut out = Vec::with_capacity(patterns.len() * CONTOUR_ORDER);
    for pat in &patterns {
        let plus: Vec<f64> = factors.iter().zip(pat).filter(|(_, &s)| s).map(|(t, _)| *t).collect();
        let minus: Vec<f64> = factors.iter().zip(pat).filter(|(_, &s)| !s).map(|(t, _)| *t).collect();
        let omega: f64 = plus.iter().sum::<f64>() - minus.iter().sum::<f64>();
        let a = plus.len() as f64 - 1.0;
        let b = minus.len() as f64 - 1.0;
        let dir = if omega >= 0.0 { 1.0 } else { -1.0 };
        let scale = 1.0 / (omega.abs() + 1.0 / cut);
        let nodes: Vec<(Complex64, Complex64)> = contour_rule()
            .par_iter()
            .map(|&(v, w)| -> Result<(Complex64, Complex64)> {
                let y = scale * v / (1.0 - v);
                let z = Complex64::new(cut, dir * y);
                let mut e = a * ln_c_function(p, z)? + b * ln_c_function(p, -z)? + i * z * omega + damp;
                let mut h = Complex64::new(1.0, 0.0);
                if !plus.is_empty() {
                    h *= harish_chandra_sums(p, z, &plus)?.iter().product::<Complex64>();
                }
                if !minus.is_empty() {
                    h *= harish_chandra_sums(p, -z, &minus)?.iter().product::<Complex64>();
                }
                e -= (2.0 * PI).ln();
                let dz = i * dir * scale / ((1.0 - v) * (1.0 - v));
                Ok((z, mult * w * dz * e.exp() * h))
            })
            .collect::<Result<_>>()?;
        out.extend(nodes);
    }
    Ok(out)
}
