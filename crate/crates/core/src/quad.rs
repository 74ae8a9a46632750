//! Fixed-order Gauss–Legendre panels shared by the integrators.

use gauss_quad::legendre::GaussLegendre;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

/// Points per panel of every composite rule in the crate.
pub const PANEL_ORDER: usize = 15;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).unwrap());
        let mut pairs: Vec<(f64, f64)> = gl.as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs
    })
}

/// Nodes and weights of the 15-point rule mapped onto `[a, b]`.
pub fn panel_nodes(a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule().iter().map(move |&(x, w)| (mid + half * x, half * w))
}

/// One Gauss–Legendre panel.
pub fn panel<F: FnMut(f64) -> f64>(a: f64, b: f64, mut f: F) -> f64 {
    panel_nodes(a, b).map(|(x, w)| w * f(x)).sum()
}

/// Composite rule with `n` equal panels.
pub fn composite<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    let n = n.max(1);
    let h = (b - a) / n as f64;
    (0..n)
        .map(|j| {
            let lo = a + h * j as f64;
            panel(lo, lo + h, &mut f)
        })
        .sum()
}

/// Breakpoints for a rule on `[0, b]` that is geometrically graded towards 0,
/// followed by `n_uniform` equal panels. Useful for integrands with an
/// algebraic factor `t^p` at the origin.
pub fn graded_breaks(b: f64, n_uniform: usize, levels: usize) -> Vec<f64> {
    let n_uniform = n_uniform.max(1);
    let h = b / n_uniform as f64;
    let mut breaks: Vec<f64> = (0..levels).rev().map(|j| h * 0.5f64.powi(j as i32 + 1)).collect();
    breaks.insert(0, 0.0);
    breaks.extend((1..=n_uniform).map(|j| h * j as f64));
    breaks
}

/// Integrate over consecutive breakpoints.
pub fn over_breaks<F: FnMut(f64) -> f64>(breaks: &[f64], mut f: F) -> f64 {
    breaks.windows(2).map(|w| panel(w[0], w[1], &mut f)).sum()
}
