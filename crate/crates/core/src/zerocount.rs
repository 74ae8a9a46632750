//! The minimal interval `θ_{n,γ}` on which a function with spectrum in
//! `[0, γ]` can carry `n` zeros, and the functions `G_n` attaining it.

use crate::error::{Error, Result};
use crate::jacobi::{phi_jet, JacobiParams};
use crate::logan::{
    derivatives_at, p_polynomial, partial_fraction_coefficients, shape_before_zero, BasisKind, DerivativeReport,
    EigenExpansion, ShapeReport,
};
use crate::specfun::SeriesConfig;
use crate::zeros::{lambda_star_zeros, t_of_gamma};
use serde::Serialize;

/// Largest `n` accepted by [`build_g`].
pub const MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroIntervalCert {
    pub n: usize,
    pub gamma: f64,
    pub theta: f64,
    pub expansion: EigenExpansion,
    /// Derivatives of orders `0..=n` at `θ`.
    pub multiplicity_report: DerivativeReport,
}

/// `θ_{n,γ}`: `t_m(γ)` for `n = 2m-1`, `t_m*(γ)` for `n = 2m`.
pub fn theta(p: &JacobiParams, n: usize, gamma: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    t_of_gamma(p, gamma, n.div_ceil(2), n % 2 == 0)
}

/// `r_m(t) = 1 + Σ B_i* ψ_{λ_i*(τ)}(t)` with `B_i* = A_i*/Ψ_i''(τ)`,
/// `Ψ_i''(τ) = -λ_i*² ψ_{λ_i*}(τ)`.
///
/// The constant equals `-Σ B_i* ψ_{λ_i*}(τ) = Σ A_i*/λ_i*²`, which is 1; the
/// identity is checked and a `Degenerate` error raised if it fails by more
/// than `10⁻¹⁰`.
pub fn r_polynomial(p: &JacobiParams, m: usize, tau: f64) -> Result<EigenExpansion> {
    if m == 0 || m > 20 {
        return Err(Error::InvalidParameter(format!("order m = {m} outside 1..=20")));
    }
    let nodes = lambda_star_zeros(p, tau, m)?.zeros;
    let a = partial_fraction_coefficients(&nodes);
    let sum: f64 = a.iter().zip(&nodes).map(|(ai, l)| ai / (l * l)).sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::Degenerate(format!("sum of A*/λ*² is {sum}, not 1")));
    }
    let cfg = SeriesConfig::default();
    let z = phi_jet(p, 0.0, tau, &cfg)?.value;
    let coefficients: Vec<f64> = nodes
        .iter()
        .zip(&a)
        .map(|(&l, &ai)| Ok(-ai / (l * l * phi_jet(p, l, tau, &cfg)?.value / z)))
        .collect::<Result<_>>()?;
    if let Some(i) = coefficients.iter().position(|&b| !(b > 0.0)) {
        return Err(Error::SignViolation(format!("B*_{} = {} in r_{m}", i + 1, coefficients[i])));
    }
    Ok(EigenExpansion {
        params: *p,
        tau,
        basis_kind: BasisKind::PsiPlusConst,
        frequencies: nodes,
        coefficients,
        constant: 1.0,
    })
}

/// `G_n` with spectrum in `[0, γ]` and an `n`-fold zero at `θ_{n,γ}`: `p_m` at
/// `τ = t_m(γ)` for odd `n`, `φ_0 r_m = φ_0 + Σ B_i* φ_{λ_i*}` at
/// `τ = t_m*(γ)` for even `n`.
pub fn build_g(p: &JacobiParams, n: usize, gamma: f64) -> Result<ZeroIntervalCert> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..={MAX_N}")));
    }
    let th = theta(p, n, gamma)?;
    let m = n.div_ceil(2);
    let expansion = if n % 2 == 1 {
        p_polynomial(p, m, th)?
    } else {
        let r = r_polynomial(p, m, th)?;
        let mut frequencies = vec![0.0];
        frequencies.extend(&r.frequencies);
        let mut coefficients = vec![r.constant];
        coefficients.extend(&r.coefficients);
        EigenExpansion {
            params: *p,
            tau: th,
            basis_kind: BasisKind::Phi,
            frequencies,
            coefficients,
            constant: 0.0,
        }
    };
    let multiplicity_report = derivatives_at(&expansion, th, n)?;
    Ok(ZeroIntervalCert {
        n,
        gamma,
        theta: th,
        expansion,
        multiplicity_report,
    })
}

/// Derivative orders below `n` count as vanishing below this relative size.
pub const VANISH_TOL: f64 = 1e-6;
/// Order `n` counts as nonvanishing when it exceeds the largest vanishing
/// order by this factor (and [`LEADING_FLOOR`]).
pub const SEPARATION: f64 = 1e6;
pub const LEADING_FLOOR: f64 = 1e-8;

/// Outcome of checking a [`ZeroIntervalCert`] on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertCheck {
    pub shape: ShapeReport,
    pub max_vanishing: f64,
    pub leading: f64,
    pub pass: bool,
}

impl ZeroIntervalCert {
    /// Positivity, monotonicity and multiplicity on `points` grid points.
    pub fn check(&self, points: usize) -> Result<CertCheck> {
        let shape = shape_before_zero(
            &self.expansion,
            self.theta,
            self.n,
            self.multiplicity_report.values[self.n],
            self.multiplicity_report.scales[0],
            points,
        )?;
        let r = self.multiplicity_report.ratios();
        let max_vanishing = r[..self.n].iter().cloned().fold(0.0, f64::max);
        let leading = r[self.n];
        let pass = shape.positive_decreasing()
            && max_vanishing <= VANISH_TOL
            && leading >= LEADING_FLOOR
            && leading >= SEPARATION * max_vanishing;
        Ok(CertCheck {
            shape,
            max_vanishing,
            leading,
            pass,
        })
    }
}
