//! Rules for `∫_{-1}^{1} K(t) g(t) dt` where `K` is singular at `t = 1`.
//!
//! These are the one-dimensional profiles of zonal kernels on the sphere:
//! with `t = ξ·η`, `|ξ - η| = (2 - 2t)^{1/2}`.

use std::f64::consts::FRAC_PI_2;

use super::{gauss_legendre, settle, Estimate, Rule1D};
use crate::error::Result;
use crate::specfun::AlphaParam;

/// Number of dyadic panels between `t = 0` and the innermost panel at `t = 1`.
const GRADED_PANELS: i32 = 40;

/// Half-width of the tanh-sinh parameter interval.
const TANH_SINH_REACH: f64 = 3.5;

/// Rule with weights absorbing `(2 - 2t)^{-α/2}`, `n` Gauss nodes per panel.
///
/// `[-1, 0]` is a plain Gauss panel. `[0, 1]` is split into dyadic panels in
/// `s = 1 - t`; on the innermost panel `[0, δ]` the substitution
/// `s = δ u^{2/(2-α)}` cancels the kernel exponent exactly, leaving a constant
/// Jacobian.
pub fn riesz_endpoint_rule(alpha: AlphaParam, n: usize) -> Result<Rule1D> {
    let a = alpha.value();
    let gl = gauss_legendre(n)?;
    let mut nodes = Vec::with_capacity(n * (GRADED_PANELS as usize + 2));
    let mut weights = Vec::with_capacity(nodes.capacity());

    let mut push_panel = |s_lo: f64, s_hi: f64| {
        let half = 0.5 * (s_hi - s_lo);
        let mid = 0.5 * (s_hi + s_lo);
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            let s = mid + half * x;
            nodes.push(1.0 - s);
            weights.push(half * w * (2.0 * s).powf(-0.5 * a));
        }
    };
    push_panel(1.0, 2.0);
    for i in 0..GRADED_PANELS {
        push_panel(0.5f64.powi(i + 1), 0.5f64.powi(i));
    }

    let delta = 0.5f64.powi(GRADED_PANELS);
    let q = 2.0 / (2.0 - a);
    let jac = 2f64.powf(-0.5 * a) * delta.powf(1.0 - 0.5 * a) * q;
    for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
        let u = 0.5 * (x + 1.0);
        nodes.push(1.0 - delta * u.powf(q));
        weights.push(0.5 * w * jac);
    }
    Ok(Rule1D { nodes, weights, domain: (-1.0, 1.0) })
}

/// `∫_{-1}^{1} (2 - 2t)^{-α/2} g(t) dt` with `n` and `2n` nodes per panel.
pub fn alg_singular(alpha: AlphaParam, g: impl Fn(f64) -> f64, n: usize) -> Result<Estimate> {
    let (coarse, _) = riesz_endpoint_rule(alpha, n)?.integrate_with_magnitude(&g);
    let (fine, mag) = riesz_endpoint_rule(alpha, 2 * n)?.integrate_with_magnitude(&g);
    settle("alg_singular", coarse, fine, mag)
}

/// Tanh-sinh rule with `2n + 1` nodes whose weights absorb `½ log(2 - 2t)`.
///
/// `1 - t` is formed from the exponential directly so the kernel stays
/// accurate where `t` itself rounds to 1.
pub fn log_endpoint_rule(n: usize) -> Result<Rule1D> {
    let n = n.max(1);
    let h = TANH_SINH_REACH / n as f64;
    let mut nodes = Vec::with_capacity(2 * n + 1);
    let mut weights = Vec::with_capacity(2 * n + 1);
    for j in -(n as i64)..=(n as i64) {
        let u = j as f64 * h;
        let v = FRAC_PI_2 * u.sinh();
        let one_minus = if v > 0.0 {
            let e = (-2.0 * v).exp();
            2.0 * e / (1.0 + e)
        } else {
            1.0 - v.tanh()
        };
        let cosh_v = v.cosh();
        let w = h * FRAC_PI_2 * u.cosh() / (cosh_v * cosh_v);
        if one_minus <= 0.0 || one_minus >= 2.0 || w == 0.0 || !w.is_finite() {
            continue;
        }
        nodes.push(v.tanh());
        weights.push(w * 0.5 * (2.0 * one_minus).ln());
    }
    Ok(Rule1D { nodes, weights, domain: (-1.0, 1.0) })
}

/// `∫_{-1}^{1} ½ log(2 - 2t) g(t) dt` by tanh-sinh at `n` and `2n`.
pub fn log_singular(g: impl Fn(f64) -> f64, n: usize) -> Result<Estimate> {
    let (coarse, _) = log_endpoint_rule(n)?.integrate_with_magnitude(&g);
    let (fine, mag) = log_endpoint_rule(2 * n)?.integrate_with_magnitude(&g);
    settle("log_singular", coarse, fine, mag)
}
