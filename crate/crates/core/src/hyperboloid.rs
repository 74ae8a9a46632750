//! Logan problem for radial functions on the hyperboloid `H^d`, where the
//! spherical Fourier transform is the Jacobi transform with
//! `(α, β) = (d/2 - 1, -1/2)`.

use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::logan::{build_extremizer, Extremizer, ExtremizerKind};
use crate::zeros::lambda_zeros;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperboloidParams {
    pub d: u32,
    pub jacobi: JacobiParams,
}

pub fn params_for_dim(d: u32) -> Result<HyperboloidParams> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension d = {d} must be at least 2")));
    }
    Ok(HyperboloidParams {
        d,
        jacobi: JacobiParams::new(d as f64 / 2.0 - 1.0, -0.5)?,
    })
}

/// `L_m(τ, H^d) = λ_m(τ)` for the hyperboloid parameters.
pub fn logan_bound(d: u32, m: usize, tau: f64) -> Result<f64> {
    let h = params_for_dim(d)?;
    Ok(lambda_zeros(&h.jacobi, tau, m)?.get(m))
}

/// The radial extremizer `f_m` as a function of the spectral variable.
pub fn spherical_extremizer_fn(d: u32, m: usize, tau: f64) -> Result<Extremizer> {
    let h = params_for_dim(d)?;
    build_extremizer(&h.jacobi, m, tau, ExtremizerKind::SmallFM)
}

/// `f_m(y)` at `y = (λ, ξ)`; the value does not depend on `ξ`.
pub fn spherical_extremizer(d: u32, m: usize, tau: f64, lambda: f64) -> Result<f64> {
    spherical_extremizer_fn(d, m, tau)?.eval(lambda)
}
