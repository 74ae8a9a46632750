//! Direct and inverse Jacobi transforms, quadrature against `dμ = Δ(t)dt` and
//! `dσ = s(λ)dλ`, the Gauss rule at the zeros `λ_k(τ)`, spectral translation
//! and a Paley–Wiener support test.
//!
//! The `dσ` integrator here works for arbitrary evaluators: panels of half an
//! oscillation period, summed in a fixed order, with the tail beyond the last
//! panel estimated by Aitken's Δ² process or by Richardson extrapolation in the
//! cut. Densities with a known analytic structure go through
//! [`crate::spectral::SpectralPlan`] instead, which has no truncation error.

use crate::error::{Error, Result};
use crate::jacobi::{phi_jet, phi_path, spectral_weight, JacobiParams, T_MAX};
use crate::quad;
use crate::specfun::SeriesConfig;
use crate::spectral::SpectralPlan;
use crate::zeros::lambda_zeros;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::io::{Read, Write};

/// Samples of a function on a strictly increasing grid, interpolated by local
/// cubics through the four nearest samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<f64>,
    support_hint: Option<f64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, support_hint: Option<f64>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need equal lengths >= 2, got {} and {}",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("grid must be finite and strictly increasing".into()));
        }
        Ok(Self {
            grid,
            values,
            support_hint,
        })
    }

    /// Samples `f` at `n ≥ 2` equispaced points of `[a, b]`.
    pub fn sample<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, n: usize) -> Result<Self> {
        let n = n.max(2);
        let grid: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
        let values = grid.iter().map(|&x| f(x)).collect::<Result<_>>()?;
        Self::new(grid, values, None)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Right end of the support: the hint if given, else the last grid point.
    pub fn support(&self) -> f64 {
        self.support_hint.unwrap_or(*self.grid.last().unwrap())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (a, b) = (self.grid[0], *self.grid.last().unwrap());
        if !(x >= a && x <= b) {
            return Err(Error::Domain(format!("{x} outside sampled range [{a}, {b}]")));
        }
        let n = self.grid.len();
        let k = self.grid.partition_point(|&g| g <= x).clamp(1, n - 1);
        let lo = k.saturating_sub(2).min(n.saturating_sub(4));
        let hi = (lo + 4).min(n);
        let mut sum = 0.0;
        for i in lo..hi {
            let mut w = 1.0;
            for j in lo..hi {
                if j != i {
                    w *= (x - self.grid[j]) / (self.grid[i] - self.grid[j]);
                }
            }
            sum += w * self.values[i];
        }
        Ok(sum)
    }

    /// Reads two-column CSV; a non-numeric first row is taken as a header.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let (mut grid, mut values) = (Vec::new(), Vec::new());
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Input(e.to_string()))?;
            if rec.len() < 2 {
                return Err(Error::Input(format!("row {} has {} columns", i + 1, rec.len())));
            }
            match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
                (Ok(x), Ok(y)) => {
                    grid.push(x);
                    values.push(y);
                }
                _ if i == 0 => continue,
                _ => return Err(Error::Input(format!("row {} is not numeric", i + 1))),
            }
        }
        Self::new(grid, values, None)
    }

    pub fn to_csv<W: Write>(&self, writer: W, header: Option<(&str, &str)>) -> Result<()> {
        write_csv(writer, header, self.grid.iter().cloned().zip(self.values.iter().cloned()))
    }
}

/// Writes `(x, y)` rows as CSV with full round-trip precision.
pub fn write_csv<W: Write, I: IntoIterator<Item = (f64, f64)>>(
    writer: W,
    header: Option<(&str, &str)>,
    rows: I,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Input(e.to_string());
    if let Some((a, b)) = header {
        w.write_record([a, b]).map_err(io)?;
    }
    for (x, y) in rows {
        w.write_record([format!("{x:e}"), format!("{y:e}")]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// How the tail of a `dσ` integral beyond the last panel is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailAccel {
    /// Plain truncation.
    None,
    /// Iterated Aitken Δ² on partial sums over half periods; suited to
    /// alternating tails.
    Aitken,
    /// Extrapolation in the cut `Λ`, which also removes non-oscillating
    /// `Λ^{d+1}` remainders.
    Richardson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub tail_accel: TailAccel,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 8192,
            tail_accel: TailAccel::Richardson,
        }
    }
}

impl QuadConfig {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol >= 0.0) || self.max_panels < 16 {
            return Err(Error::InvalidParameter(format!("bad quadrature config {self:?}")));
        }
        Ok(())
    }

    fn tol(&self, v: f64) -> f64 {
        self.rel_tol * v.abs() + self.abs_tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub panels: usize,
}

/// Panel layout on the frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub enum Panels {
    /// Equal panels, ideally half a period of the dominant oscillation.
    Uniform(f64),
    /// Given breakpoints (typically zeros `λ_k(τ)`), continued with the last
    /// spacing.
    Breaks(Vec<f64>),
}

impl Panels {
    /// Half-period panels for an oscillation `cos(ωλ)`.
    pub fn for_frequency(omega: f64) -> Self {
        Panels::Uniform(std::f64::consts::PI / omega.max(1e-3))
    }

    fn edge(&self, j: usize) -> f64 {
        match self {
            Panels::Uniform(h) => *h * j as f64,
            Panels::Breaks(b) => {
                if j < b.len() {
                    b[j]
                } else {
                    let n = b.len();
                    let h = b[n - 1] - b[n - 2];
                    b[n - 1] + h * (j + 1 - n) as f64
                }
            }
        }
    }
}

pub type Evaluator<'a> = dyn Fn(f64) -> Result<f64> + Sync + 'a;

/// `∫₀^T g(t) Δ(t) dt`, with panels graded towards the origin and refined until
/// two successive levels agree.
pub fn integrate_dmu(g: &Evaluator, t_end: f64, p: &JacobiParams, cfg: &QuadConfig) -> Result<Quadrature> {
    cfg.validate()?;
    if !(t_end >= 0.0 && t_end <= T_MAX) {
        return Err(Error::Domain(format!("T = {t_end} outside [0, {T_MAX}]")));
    }
    if t_end == 0.0 {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    let level = |n: usize| -> Result<f64> {
        let breaks = quad::graded_breaks(t_end, n, 40);
        let parts: Vec<f64> = breaks
            .par_windows(2)
            .map(|w| -> Result<f64> {
                let mut s = 0.0;
                for (t, wt) in quad::panel_nodes(w[0], w[1]) {
                    s += wt * g(t)? * p.delta(t);
                }
                Ok(s)
            })
            .collect::<Result<_>>()?;
        Ok(parts.iter().sum())
    };
    let mut n = 4;
    let mut prev = level(n)?;
    while 2 * n <= cfg.max_panels {
        n *= 2;
        let cur = level(n)?;
        let err = (cur - prev).abs();
        if err <= cfg.tol(cur) {
            return Ok(Quadrature {
                value: cur,
                error: err,
                panels: n,
            });
        }
        prev = cur;
    }
    Err(Error::Budget(format!("dmu integral unresolved with {n} panels")))
}

fn panel_sums(f: &Evaluator, p: &JacobiParams, panels: &Panels, from: usize, to: usize) -> Result<Vec<f64>> {
    (from..to)
        .into_par_iter()
        .map(|j| -> Result<f64> {
            let (a, b) = (panels.edge(j), panels.edge(j + 1));
            let mut s = 0.0;
            for (l, w) in quad::panel_nodes(a, b) {
                s += w * f(l)? * spectral_weight(p, l)?;
            }
            Ok(s)
        })
        .collect()
}

/// Iterated Aitken Δ² on the last entries of `sums`; returns the estimate and
/// the difference between the two final entries.
fn aitken(sums: &[f64]) -> (f64, f64) {
    let mut seq: Vec<f64> = sums[sums.len().saturating_sub(9)..].to_vec();
    while seq.len() >= 5 {
        seq = seq
            .windows(3)
            .map(|w| {
                let d2 = w[2] - 2.0 * w[1] + w[0];
                if d2.abs() <= 1e-300 {
                    w[2]
                } else {
                    w[2] - (w[2] - w[1]).powi(2) / d2
                }
            })
            .collect();
    }
    let n = seq.len();
    (seq[n - 1], (seq[n - 1] - seq[n - 2]).abs())
}

/// Richardson table for values at cuts `Λ_0 2^j`, eliminating `Λ^{-q}`,
/// `Λ^{-q-1}`, ... Returns the estimate and the last correction size.
fn richardson(values: &[f64], q: f64) -> (f64, f64) {
    let mut row = values.to_vec();
    let mut err = f64::INFINITY;
    let mut power = q;
    while row.len() >= 2 {
        let r = 2f64.powf(power);
        let next: Vec<f64> = row.windows(2).map(|w| (r * w[1] - w[0]) / (r - 1.0)).collect();
        err = (next[next.len() - 1] - row[row.len() - 1]).abs();
        row = next;
        power += 1.0;
        if row.len() == 1 {
            break;
        }
    }
    (row[row.len() - 1], err)
}

/// `∫₀^∞ f(λ) s(λ) dλ` for an evaluator whose density `f s` decays like
/// `λ^{decay}` (times a bounded oscillation), `decay ≤ -2`.
pub fn integrate_dsigma(
    f: &Evaluator,
    decay: f64,
    p: &JacobiParams,
    panels: &Panels,
    cfg: &QuadConfig,
) -> Result<Quadrature> {
    cfg.validate()?;
    if !(decay <= -2.0) {
        return Err(Error::TailDivergence(decay));
    }
    if let Panels::Breaks(b) = panels {
        if b.len() < 2 || b[0] != 0.0 || b.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("breaks must start at 0 and increase".into()));
        }
    }
    if let Panels::Uniform(h) = panels {
        if !(*h > 0.0) {
            return Err(Error::InvalidParameter(format!("panel width {h}")));
        }
    }
    let mut sums: Vec<f64> = Vec::new();
    let mut partial = vec![0.0];
    let extend = |n: usize, sums: &mut Vec<f64>, partial: &mut Vec<f64>| -> Result<()> {
        if n > sums.len() {
            let more = panel_sums(f, p, panels, sums.len(), n)?;
            for v in more {
                sums.push(v);
                partial.push(partial.last().unwrap() + v);
            }
        }
        Ok(())
    };
    let mut n = 32;
    let mut last: Option<f64> = None;
    while n <= cfg.max_panels {
        extend(n, &mut sums, &mut partial)?;
        let (value, err) = match cfg.tail_accel {
            TailAccel::None => {
                let v = partial[n];
                (v, last.map_or(f64::INFINITY, |l| (v - l).abs()))
            }
            TailAccel::Aitken => aitken(&partial[..=n]),
            TailAccel::Richardson => {
                let cuts: Vec<f64> = (0..)
                    .map(|j| 8usize << j)
                    .take_while(|&c| c <= n)
                    .map(|c| partial[c])
                    .collect();
                richardson(&cuts, -(decay + 1.0))
            }
        };
        if err <= cfg.tol(value) {
            return Ok(Quadrature {
                value,
                error: err,
                panels: n,
            });
        }
        last = Some(value);
        n *= 2;
    }
    Err(Error::Budget(format!(
        "dsigma integral unresolved within {} panels",
        cfg.max_panels
    )))
}

/// `Jg(λ) = ∫₀^T g φ_λ dμ` for each `λ`, with `T` the support of `g`.
pub fn jacobi_transform(
    g: &Evaluator,
    support: f64,
    p: &JacobiParams,
    lambdas: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<f64>> {
    let scfg = SeriesConfig::default();
    lambdas
        .iter()
        .map(|&l| {
            let h = |t: f64| -> Result<f64> { Ok(g(t)? * phi_jet(p, l, t, &scfg)?.value) };
            Ok(integrate_dmu(&h, support, p, cfg)?.value)
        })
        .collect()
}

/// Transform of sampled data on its support; carries the interpolation error
/// of the cubic reconstruction on top of the quadrature error.
pub fn jacobi_transform_sampled(
    g: &SampledFunction,
    p: &JacobiParams,
    lambdas: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<f64>> {
    let lo = g.grid()[0];
    if lo > 0.0 {
        return Err(Error::Domain("sampled data must start at t = 0".into()));
    }
    let t_end = g.support().min(*g.grid().last().unwrap());
    jacobi_transform(&|t| g.eval(t), t_end, p, lambdas, cfg)
}

/// `J⁻¹f(t) = ∫₀^∞ f(λ) φ_λ(t) dσ` at each `t`; `decay` describes `f s`.
pub fn inverse_jacobi_transform(
    f: &Evaluator,
    decay: f64,
    p: &JacobiParams,
    ts: &[f64],
    panels: &Panels,
    cfg: &QuadConfig,
) -> Result<Vec<f64>> {
    let scfg = SeriesConfig::default();
    ts.iter()
        .map(|&t| {
            let h = |l: f64| -> Result<f64> { Ok(f(l)? * phi_jet(p, l, t, &scfg)?.value) };
            Ok(integrate_dsigma(&h, decay, p, panels, cfg)?.value)
        })
        .collect()
}

/// `T^t f̂ (x) = ∫₀^∞ φ_λ(t) φ_λ(x) f̂(λ) dσ`, the generalized translation in
/// spectral form.
pub fn translate_spectral(
    f_hat: &Evaluator,
    decay: f64,
    p: &JacobiParams,
    t: f64,
    x: f64,
    panels: &Panels,
    cfg: &QuadConfig,
) -> Result<f64> {
    let scfg = SeriesConfig::default();
    let (a, b) = if t <= x { (t, x) } else { (x, t) };
    let h = |l: f64| -> Result<f64> {
        let path = phi_path(p, l, &[a, b], &scfg)?;
        Ok(f_hat(l)? * path[0].value * path[1].value)
    };
    Ok(integrate_dsigma(&h, decay, p, panels, cfg)?.value)
}

/// Quadrature `∫ f dσ = Σ γ_k f(λ_k(τ))`, exact for `f` of exponential type
/// `2τ` in `L¹(dσ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussRule {
    pub tau: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub count: usize,
}

/// Builds the rule from cardinal functions
/// `ℓ_k(λ) = φ_λ(τ)²/(1-λ²/λ_k²)²`, which have type `2τ`, vanish at every node
/// but `λ_k`, and take the value `(λ_k ∂_λφ_{λ_k}(τ)/2)²` there:
/// `γ_k = ∫ℓ_k dσ / ℓ_k(λ_k)`.
pub fn gauss_rule(p: &JacobiParams, tau: f64, count: usize) -> Result<GaussRule> {
    let nodes = lambda_zeros(p, tau, count)?.zeros;
    let plan = SpectralPlan::new(p, &[tau, tau], &nodes)?;
    let scfg = SeriesConfig::default();
    let weights = nodes
        .iter()
        .enumerate()
        .map(|(k, &lk)| {
            let one = Complex64::new(1.0, 0.0);
            let num = plan.integrate(|z| {
                let d = one - z * z / (lk * lk);
                one / (d * d)
            });
            let slope = phi_jet(p, lk, tau, &scfg)?.dlambda;
            let w = num / (0.5 * lk * slope).powi(2);
            if !(w > 0.0) {
                return Err(Error::SignViolation(format!("Gauss weight {} = {w}", k + 1)));
            }
            Ok(w)
        })
        .collect::<Result<_>>()?;
    Ok(GaussRule {
        tau,
        nodes,
        weights,
        count,
    })
}

impl GaussRule {
    /// `Σ γ_k f(λ_k)` over all nodes, summed from the last node down so small
    /// terms are accumulated first.
    pub fn apply<F: Fn(f64) -> Result<f64>>(&self, f: F) -> Result<f64> {
        let mut s = 0.0;
        for k in (0..self.count).rev() {
            s += self.weights[k] * f(self.nodes[k])?;
        }
        Ok(s)
    }

    /// Like [`GaussRule::apply`], stopping once `|γ_K f(λ_K)| < abs_tol` and
    /// the last three increments decrease; returns the sum and terms used.
    pub fn apply_adaptive<F: Fn(f64) -> Result<f64>>(&self, f: F, abs_tol: f64) -> Result<(f64, usize)> {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&l, &w)| Ok(w * f(l)?))
            .collect::<Result<_>>()?;
        let mut used = terms.len();
        for k in 3..terms.len() {
            let t = &terms[k - 3..=k];
            if t[3].abs() < abs_tol && t[3].abs() <= t[2].abs() && t[2].abs() <= t[1].abs() {
                used = k + 1;
                break;
            }
        }
        Ok((terms[..used].iter().rev().sum(), used))
    }
}

/// Thresholds of the support test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaleyWienerConfig {
    /// Relative gap `δ`: the profile is scanned from `τ(1+δ)`.
    pub delta: f64,
    /// Allowed `|J⁻¹f(t)| / |J⁻¹f(0)|` outside the support.
    pub eps_support: f64,
    /// End of the scanned range; `None` means `min(3τ, t_max)`.
    pub t_end: Option<f64>,
    pub points: usize,
}

impl Default for PaleyWienerConfig {
    fn default() -> Self {
        Self {
            delta: 0.02,
            eps_support: 1e-4,
            t_end: None,
            points: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PaleyWienerReport {
    pub supported: bool,
    pub degenerate: bool,
    pub value_at_zero: f64,
    pub max_outside: f64,
    pub argmax: f64,
    pub profile: Vec<(f64, f64)>,
}

/// Decides numerically whether `J⁻¹f` vanishes beyond `τ`, so that `f` is the
/// spectrum of a function supported in `[0, τ]`. `inverse` evaluates `J⁻¹f` on
/// a list of times.
pub fn paley_wiener_test<F>(inverse: F, tau: f64, cfg: &PaleyWienerConfig) -> Result<PaleyWienerReport>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let t0 = tau * (1.0 + cfg.delta);
    let t1 = cfg.t_end.unwrap_or(3.0 * tau).min(T_MAX);
    if !(t1 > t0) || cfg.points < 2 {
        return Err(Error::InvalidParameter(format!("empty support-test range [{t0}, {t1}]")));
    }
    let mut ts = vec![0.0];
    ts.extend((0..cfg.points).map(|i| t0 + (t1 - t0) * i as f64 / (cfg.points - 1) as f64));
    let vals = inverse(&ts)?;
    let at0 = vals[0];
    let (mut worst, mut arg) = (0.0f64, t0);
    for (&t, &v) in ts[1..].iter().zip(&vals[1..]) {
        if v.abs() > worst {
            worst = v.abs();
            arg = t;
        }
    }
    let degenerate = at0 == 0.0 && worst == 0.0;
    Ok(PaleyWienerReport {
        supported: !degenerate && worst <= cfg.eps_support * at0.abs(),
        degenerate,
        value_at_zero: at0,
        max_outside: worst,
        argmax: arg,
        profile: ts[1..].iter().cloned().zip(vals[1..].iter().cloned()).collect(),
    })
}
