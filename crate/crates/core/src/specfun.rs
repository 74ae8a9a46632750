//! Special functions: complex log-Gamma, the Gauss hypergeometric function on
//! the negative real axis, and the Mehler kernel of the Jacobi function.
//!
//! The hypergeometric evaluation follows three regimes in `z ≤ 0`:
//! the power series for `|z| ≤ 1/2`, the Pfaff transformation
//! `F(a,b;c;z) = (1-z)^{-a} F(a,c-b;c;z/(z-1))` while `z/(z-1) ≤ 0.95`, and the
//! connection formula about `1` beyond that. When the connection formula is
//! degenerate (`c-a-b` an integer after the Pfaff step) the function is
//! continued instead by Taylor stepping along the hypergeometric ODE, which is
//! also the path used for Jacobi functions at large frequency.

use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::quad;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Termination controls for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || self.max_terms < 16 {
            return Err(Error::InvalidParameter(format!(
                "series config needs rel_tol > 0, abs_tol >= 0, max_terms >= 16; got {self:?}"
            )));
        }
        Ok(())
    }

    /// Tolerance actually used when summing: never looser than the request,
    /// but tight enough that downstream identities keep their margins.
    fn rel(&self) -> f64 {
        self.rel_tol.min(1e-15)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` on the branch that is continuous in the cut plane.
///
/// Lanczos approximation (g = 7, nine terms) for `Re z ≥ 1/2`, reflection
/// `Γ(z)Γ(1-z) = π / sin(πz)` otherwise.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParameter(format!("log_gamma({z})")));
    }
    if z.re < 0.5 {
        let nearest = z.re.round();
        if z.im.abs() < 1e-14 && (z.re - nearest).abs() < 1e-14 && nearest <= 0.0 {
            return Err(Error::Pole(format!("{z}")));
        }
        let one_minus = Complex64::new(1.0, 0.0) - z;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - log_gamma(one_minus)?);
    }
    let zm = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (zm + 0.5) * t.ln() - t + x.ln())
}

/// `ln sin(πz)` without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = PI * z;
    if w.im.abs() < 1.0 {
        return w.sin().ln();
    }
    let i = Complex64::i();
    if w.im > 0.0 {
        // sin w = e^{-iw} (1 - e^{2iw}) / (-2i)
        -i * w + (1.0 - (2.0 * i * w).exp()).ln() - Complex64::new(2f64.ln(), -PI / 2.0)
    } else {
        // sin w = e^{iw} (e^{-2iw} - 1) / (-2i)
        i * w + ((-2.0 * i * w).exp() - 1.0).ln() - Complex64::new(2f64.ln(), -PI / 2.0)
    }
}

/// Real `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    log_gamma(Complex64::new(x, 0.0)).map(|v| v.re).unwrap_or(f64::NAN)
}


fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-14
}

/// Plain power series of `F(a,b;c;z)` in complex arithmetic.
fn series_complex(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() <= cfg.rel() * sum.norm() + cfg.abs_tol {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(cfg.max_terms))
}

/// Gauss hypergeometric function `F(a,b;c;z)` for `z ≤ 0`.
///
/// `a` and `b` must be complex conjugates or both real, so the value is real.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: f64, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    if is_nonpositive_integer(c) {
        return Err(Error::InvalidParameter(format!("c = {c} is a non-positive integer")));
    }
    let conj = (a.re - b.re).abs() <= 1e-14 * (1.0 + a.re.abs()) && (a.im + b.im).abs() <= 1e-14 * (1.0 + a.im.abs());
    let real = a.im == 0.0 && b.im == 0.0;
    if !(conj || real) {
        return Err(Error::InvalidParameter("a and b must be conjugate or both real".into()));
    }
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("gauss_2f1 needs z <= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let cc = Complex64::new(c, 0.0);
    let zc = Complex64::new(z, 0.0);
    if z >= -0.5 {
        return Ok(series_complex(a, b, cc, zc, cfg)?.re);
    }
    let w = z / (z - 1.0);
    let pre = Complex64::new(1.0 - z, 0.0).powc(-a);
    let bp = cc - b;
    if w <= 0.95 {
        return Ok((pre * series_complex(a, bp, cc, Complex64::new(w, 0.0), cfg)?).re);
    }
    // Connection about w = 1 for F(a, b'; c; w).
    let s = cc - a - bp;
    // Close to an integer the two terms cancel; continue along the ODE instead.
    let near_int = (s - s.re.round()).norm() < 0.5;
    if near_int {
        return march_2f1(a, b, c, z, cfg);
    }
    let u = Complex64::new(1.0 - w, 0.0);
    let lg_c = log_gamma(cc)?;
    let t1 = (lg_c + log_gamma(s)? - log_gamma(cc - a)? - log_gamma(cc - bp)?).exp()
        * series_complex(a, bp, a + bp - cc + 1.0, u, cfg)?;
    let t2 = u.powc(s)
        * (lg_c + log_gamma(-s)? - log_gamma(a)? - log_gamma(bp)?).exp()
        * series_complex(cc - a, cc - bp, s + 1.0, u, cfg)?;
    Ok((pre * (t1 + t2)).re)
}

fn march_2f1(a: Complex64, b: Complex64, c: f64, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    let ab = (a * b).re;
    let apb = (a + b).re;
    let t = (-z).sqrt().asinh();
    let h = HypOde { ab, apb, c, dab: 0.0 };
    Ok(h.march(&[t], cfg)?[0].f)
}

/// State of a hypergeometric solution on the ray `z = -sh²t`.
///
/// `f` is `F(z)`, `fz` is `dF/dz`; `df`, `dfz` are their derivatives with
/// respect to the parameter driving `ab` (the frequency, for Jacobi functions).
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct HypState {
    pub f: f64,
    pub fz: f64,
    pub df: f64,
    pub dfz: f64,
}

/// The equation `z(1-z)F'' + (c - (a+b+1)z)F' - ab F = 0` with real `ab`, `a+b`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct HypOde {
    pub ab: f64,
    pub apb: f64,
    pub c: f64,
    /// Derivative of `ab` with respect to the tracked parameter.
    pub dab: f64,
}

impl HypOde {
    fn omega(&self) -> f64 {
        2.0 * self.ab.abs().sqrt()
    }

    /// Power series about the origin, with its `z`- and parameter-derivatives.
    fn series_at(&self, z: f64, cfg: &SeriesConfig) -> Result<HypState> {
        if z == 0.0 {
            return Ok(HypState {
                f: 1.0,
                fz: self.ab / self.c,
                df: 0.0,
                dfz: self.dab / self.c,
            });
        }
        let (mut t, mut dt) = (1.0f64, 0.0f64);
        let mut st = HypState {
            f: 1.0,
            ..Default::default()
        };
        let (mut sfz, mut sdfz) = (0.0, 0.0);
        let mut small = 0;
        for n in 0..cfg.max_terms {
            let nf = n as f64;
            let den = (self.c + nf) * (nf + 1.0);
            let r = (self.ab + nf * self.apb + nf * nf) * z / den;
            dt = dt * r + t * self.dab * z / den;
            t *= r;
            let k = nf + 1.0;
            st.f += t;
            st.df += dt;
            sfz += k * t;
            sdfz += k * dt;
            let scale = st.f.abs() + sfz.abs() + st.df.abs();
            if k * (t.abs() + dt.abs()) <= cfg.rel() * scale + cfg.abs_tol {
                small += 1;
                if small >= 3 {
                    st.fz = sfz / z;
                    st.dfz = sdfz / z;
                    return Ok(st);
                }
            } else {
                small = 0;
            }
        }
        Err(Error::NonConvergence(cfg.max_terms))
    }

    /// Taylor step from `z0` to `z0 + h` using the three-term recurrence of
    /// the ODE's coefficients.
    fn step(&self, z0: f64, h: f64, s: HypState, cfg: &SeriesConfig) -> Result<HypState> {
        let p0 = z0 * (1.0 - z0);
        let p1 = 1.0 - 2.0 * z0;
        let q0 = self.c - (self.apb + 1.0) * z0;
        let q1 = -(self.apb + 1.0);
        let r = -self.ab;
        let rl = -self.dab;
        let h2 = h * h;
        // d_n = c_n h^n, e_n its parameter derivative.
        let (mut d0, mut d1) = (s.f, s.fz * h);
        let (mut e0, mut e1) = (s.df, s.dfz * h);
        let mut out = HypState {
            f: d0 + d1,
            fz: d1,
            df: e0 + e1,
            dfz: e1,
        };
        let mut small = 0;
        for n in 0..cfg.max_terms {
            let nf = n as f64;
            let den = p0 * (nf + 2.0) * (nf + 1.0);
            let a1 = (p1 * nf + q0) * (nf + 1.0) * h;
            let a0 = (-nf * (nf - 1.0) + q1 * nf + r) * h2;
            let d2 = -(a1 * d1 + a0 * d0) / den;
            let e2 = -(a1 * e1 + a0 * e0 + rl * h2 * d0) / den;
            let k = nf + 2.0;
            out.f += d2;
            out.fz += k * d2;
            out.df += e2;
            out.dfz += k * e2;
            let scale = out.f.abs() + out.fz.abs() + out.df.abs() + out.dfz.abs();
            if k * (d2.abs() + e2.abs()) <= cfg.rel() * scale + cfg.abs_tol {
                small += 1;
                if small >= 3 {
                    out.fz /= h;
                    out.dfz /= h;
                    return Ok(out);
                }
            } else {
                small = 0;
            }
            d0 = d1;
            d1 = d2;
            e0 = e1;
            e1 = e2;
        }
        Err(Error::NonConvergence(cfg.max_terms))
    }

    /// Solution values at the points `z = -sh²t` for increasing `ts`.
    pub fn march(&self, ts: &[f64], cfg: &SeriesConfig) -> Result<Vec<HypState>> {
        let omega = self.omega().max(1e-300);
        let sh_start = (0.5f64).sqrt().min(2.0 / omega);
        let t_start = sh_start.asinh();
        let mut out = Vec::with_capacity(ts.len());
        let mut t = 0.0;
        let mut state: Option<HypState> = None;
        for &target in ts {
            if target < t {
                return Err(Error::InvalidParameter("march points must increase".into()));
            }
            if target <= t_start {
                let sh = target.sinh();
                out.push(self.series_at(-sh * sh, cfg)?);
                continue;
            }
            let mut s = match state {
                Some(s) => s,
                None => {
                    t = t_start;
                    self.series_at(-sh_start * sh_start, cfg)?
                }
            };
            while t < target {
                let geo = (1.22 * t.sinh()).asinh();
                let next = target.min(t + 1.2 / omega).min(geo);
                let (z0, z1) = (-t.sinh().powi(2), -next.sinh().powi(2));
                s = self.step(z0, z1 - z0, s, cfg)?;
                t = next;
            }
            state = Some(s);
            out.push(s);
        }
        Ok(out)
    }
}

/// Constant `c_α = Γ(α+1) / (Γ(1/2) Γ(α+1/2))` of the Mehler representation.
pub fn mehler_constant(alpha: f64) -> Result<f64> {
    if !(alpha > -0.5) {
        return Err(Error::Domain(format!("Mehler constant needs alpha > -1/2, got {alpha}")));
    }
    Ok((ln_gamma_real(alpha + 1.0) - 0.5 * PI.ln() - ln_gamma_real(alpha + 0.5)).exp())
}

/// Real power series of `F(a,b;c;x)` for `0 ≤ x ≤ 1/2`.
fn series_real(a: f64, b: f64, c: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.abs() <= cfg.rel() * sum.abs() + cfg.abs_tol {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(cfg.max_terms))
}

/// Mehler kernel `A_{α,β}(s,t)` for `0 ≤ s < t`, without the constant `c_α`.
pub fn mehler_kernel(s: f64, t: f64, p: &JacobiParams) -> Result<f64> {
    let (a, b) = (p.alpha(), p.beta());
    if !(a > -0.5) {
        return Err(Error::Domain(format!("Mehler kernel needs alpha > -1/2, got {a}")));
    }
    if !(s >= 0.0 && s < t) {
        return Err(Error::Domain(format!("Mehler kernel needs 0 <= s < t, got s={s}, t={t}")));
    }
    let x = (t.cosh() - s.cosh()) / (2.0 * t.cosh());
    let f = series_real(a + b, a - b, a + 0.5, x, &SeriesConfig::default())?;
    let gap = 2.0 * (t + s).sinh() * (t - s).sinh();
    Ok(2f64.powf(a + 2.0 * b + 2.5) * (2.0 * t).sinh() * t.cosh().powf(b - a) * gap.powf(a - 0.5) * f)
}

/// `A_{α,β}(s,t) / (t-s)^{α-1/2}`, smooth up to `s = t`.
fn mehler_kernel_regular(s: f64, t: f64, a: f64, b: f64) -> Result<f64> {
    let x = (t.cosh() - s.cosh()) / (2.0 * t.cosh());
    let f = series_real(a + b, a - b, a + 0.5, x, &SeriesConfig::default())?;
    let d = t - s;
    let sinc = if d > 0.0 { d.sinh() / d } else { 1.0 };
    let gap = 2.0 * (t + s).sinh() * sinc;
    Ok(2f64.powf(a + 2.0 * b + 2.5) * (2.0 * t).sinh() * t.cosh().powf(b - a) * gap.powf(a - 0.5) * f)
}

/// `(c_α / Δ(t)) ∫₀ᵗ A(s,t) cos(λs) ds` by quadrature.
///
/// Gauss–Legendre panels away from `s = t`, and a Gauss–Jacobi panel with
/// weight `(t-s)^{α-1/2}` next to it.
pub fn mehler_phi(p: &JacobiParams, lambda: f64, t: f64) -> Result<f64> {
    use gauss_quad::jacobi::GaussJacobi;
    use gauss_quad::FiniteAboveNegOneF64;
    let (a, b) = (p.alpha(), p.beta());
    let c = mehler_constant(a)?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let split = (t - 2.0 / lambda.abs().max(1e-300)).max(0.5 * t);
    let width = t - split;
    let mut err = None;
    let mut guard = |r: Result<f64>| match r {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            0.0
        }
    };
    let panels = (lambda.abs() * split / 2.0).ceil() as usize + 4;
    let outer = quad::composite(0.0, split, panels, |s| guard(mehler_kernel(s, t, p)) * (lambda * s).cos());
    let expo = a - 0.5;
    let gj = GaussJacobi::new(
        std::num::NonZeroUsize::new(30).unwrap(),
        FiniteAboveNegOneF64::new(expo).unwrap(),
        FiniteAboveNegOneF64::new(0.0).unwrap(),
    );
    let inner = gj.integrate(split, t, |s| guard(mehler_kernel_regular(s, t, a, b)) * (lambda * s).cos())
        * (0.5 * width).powf(expo);
    if let Some(e) = err {
        return Err(e);
    }
    Ok(c * (outer + inner) / p.delta(t))
}
