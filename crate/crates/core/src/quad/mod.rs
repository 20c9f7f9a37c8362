//! One-dimensional quadrature engines, endpoint-singular rules for the Riesz
//! and logarithmic kernels, radial integration on `[0, ∞)` and polar rules on
//! the plane.
//!
//! Every integral entry point returns an [`Estimate`]: the value at the finer
//! of two levels `n` and `2n`, together with `|I(2n) - I(n)|`.

mod polar;
mod singular;

pub use polar::{PolarRule, RadialKernel};
pub use singular::{alg_singular, log_endpoint_rule, log_singular, riesz_endpoint_rule};

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::field::Point;
use crate::specfun::legendre_pair;

/// Relative level-to-level change above which an integral is rejected.
///
/// The change is measured against `Σ|w_i f(x_i)|`, so integrals that cancel
/// to zero are judged on the size of their integrand.
pub const ACCURACY_GUARD: f64 = 1e-6;

/// A quadrature value together with its level-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn scale(self, c: f64) -> Self {
        Self { value: c * self.value, error: c.abs() * self.error }
    }
}

/// Pairwise summation with a fixed split order; deterministic for a given
/// input slice.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 16;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// A one-dimensional rule `Σ w_i f(x_i)` on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: (f64, f64),
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }

    /// Returns `(Σ w f, Σ |w f|)`.
    pub(crate) fn integrate_with_magnitude(&self, f: impl Fn(f64) -> f64) -> (f64, f64) {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        let mags: Vec<f64> = terms.iter().map(|t| t.abs()).collect();
        (pairwise_sum(&terms), pairwise_sum(&mags))
    }

    /// Affine image of a rule on `[-1, 1]` onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Rule1D {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Rule1D {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| half * w).collect(),
            domain: (a, b),
        }
    }
}

/// Gauss–Legendre rule with `n` nodes on `[-1, 1]`, nodes ascending.
///
/// Nodes come from Newton iteration on `P_n` using the derivative identity
/// `(t^2 - 1) P_n'(t) = n (t P_n(t) - P_{n-1}(t))`.
pub fn gauss_legendre(n: usize) -> Result<Rule1D> {
    if n == 0 {
        return Err(domain("gauss_legendre requires n >= 1"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        if 2 * i + 1 == n {
            x = 0.0;
        } else {
            for _ in 0..100 {
                let (p, prev) = legendre_pair(n, x);
                let dx = p / (nf * (x * p - prev) / (x * x - 1.0));
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
        }
        let (p, prev) = legendre_pair(n, x);
        let dp = nf * (x * p - prev) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(Rule1D { nodes, weights, domain: (-1.0, 1.0) })
}

pub(crate) fn settle(what: &str, coarse: f64, fine: f64, magnitude: f64) -> Result<Estimate> {
    let error = (fine - coarse).abs();
    if !fine.is_finite() || error > ACCURACY_GUARD * magnitude.max(f64::MIN_POSITIVE) {
        return Err(Error::Accuracy { what: what.to_string(), estimate: error });
    }
    Ok(Estimate { value: fine, error })
}

/// `∫_0^∞ g(r) r dr` via `t = r²/(1+r²)` and Gauss–Legendre in `t`.
///
/// The integrand must decay at least like `r^{-3}` (so that `g(r) r` is
/// integrable with a smooth image in `t`).
pub fn radial_integral(g: impl Fn(f64) -> f64, n: usize) -> Result<Estimate> {
    let one = |m: usize| -> Result<(f64, f64)> {
        let rule = gauss_legendre(m)?.mapped(0.0, 1.0);
        Ok(rule.integrate_with_magnitude(|t| {
            let omt = 1.0 - t;
            let r = (t / omt).sqrt();
            g(r) / (2.0 * omt * omt)
        }))
    };
    let (coarse, _) = one(n)?;
    let (fine, mag) = one(2 * n)?;
    settle("radial_integral", coarse, fine, mag)
}

/// A two-dimensional rule: `Σ w_i f(p_i)` over points of the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneRule {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
}

impl PlaneRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(Point) -> f64) -> f64 {
        let terms: Vec<f64> = self.points.iter().zip(&self.weights).map(|(&p, &w)| w * f(p)).collect();
        pairwise_sum(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_small_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes, vec![0.0]);
        assert!((r1.weights[0] - 2.0).abs() < 1e-15);
        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        assert!((r2.weights[0] - 1.0).abs() < 1e-15 && (r2.weights[1] - 1.0).abs() < 1e-15);
        let r3 = gauss_legendre(3).unwrap();
        assert!((r3.integrate(|t| t.powi(4)) - 0.4).abs() < 1e-15);
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn gauss_legendre_exactness_and_symmetry() {
        for n in [5usize, 12, 33, 64, 128] {
            let r = gauss_legendre(n).unwrap();
            assert!((pairwise_sum(&r.weights) - 2.0).abs() < 1e-13);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-14);
            }
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got = r.integrate(|t| t.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg} err={}", got - exact);
            }
        }
    }

    #[test]
    fn legendre_orthogonality_under_gauss() {
        let r = gauss_legendre(12).unwrap();
        for j in 0..=10 {
            for k in 0..=10 {
                let v = r.integrate(|t| legendre_pair(j, t).0 * legendre_pair(k, t).0);
                let exact = if j == k { 2.0 / (2.0 * k as f64 + 1.0) } else { 0.0 };
                assert!((v - exact).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn radial_integral_anchors() {
        let e = radial_integral(|r| (1.0 + r * r).powi(-2), 32).unwrap();
        assert_relative_eq!(e.value, 0.5, max_relative = 1e-14);
        let z = radial_integral(|r| (1.0 - r * r) / (1.0 + r * r).powi(3), 32).unwrap();
        assert!(z.value.abs() < 1e-15);
        // Liouville bubble: ∫ e^{Ū} = 2π ∫ 8 / (1+r²)² r dr = 8π.
        let l = radial_integral(|r| 8.0 / (1.0 + r * r).powi(2), 32).unwrap();
        assert_relative_eq!(2.0 * PI * l.value, 8.0 * PI, max_relative = 1e-13);
    }

    #[test]
    fn radial_integral_rejects_divergence() {
        // g(r) r ~ 1/r: logarithmically divergent.
        assert!(matches!(radial_integral(|r| 1.0 / (1.0 + r * r), 16), Err(Error::Accuracy { .. })));
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_input() {
        let v: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 4950.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
