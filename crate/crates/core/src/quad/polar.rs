//! Polar product rules on `R^2` centred at a point, with optional radial
//! kernels `|y - c|^{-α}` or `log|y - c|` folded into the weights.

use std::f64::consts::PI;

use super::{gauss_legendre, pairwise_sum, settle, Estimate, PlaneRule};
use crate::error::{domain, Result};
use crate::field::{norm, sub, Point};
use crate::specfun::AlphaParam;

/// Dyadic panels between the innermost panel and `r = 1/2`.
const INNER_PANELS: i32 = 24;
const INNER_RADIUS: f64 = 0.5;
/// Half-width of the band of unit panels around the focus radius.
const FOCUS_MARGIN: f64 = 4.0;
/// Focus distance covered by the base angle count; farther foci scale it up.
const ANGLE_SPAN: f64 = 2.0;
const MAX_ANGLE_FACTOR: f64 = 32.0;

/// Panel breakpoints from `r = 1/2` up to where the algebraic tail map starts.
///
/// Panels double in width away from the centre and away from the focus band
/// `[d - 4, d + 4]`, which is covered by unit panels; beyond the band they
/// double again until `r ≈ 2d`.
fn radial_breaks(dist: f64) -> Vec<f64> {
    let lo = INNER_RADIUS;
    let band = dist - FOCUS_MARGIN;
    let mut breaks = vec![lo];
    if band > lo {
        let half = 0.5 * dist;
        let mut a = 2.0 * lo;
        while a < half.min(band) {
            breaks.push(a);
            a *= 2.0;
        }
        let mut down = Vec::new();
        let mut d = 2.0 * FOCUS_MARGIN;
        while dist - d > half.max(*breaks.last().unwrap_or(&lo)) {
            down.push(dist - d);
            d *= 2.0;
        }
        breaks.extend(down.into_iter().rev());
        breaks.push(band);
    }
    let start = *breaks.last().unwrap_or(&lo);
    let end = dist + FOCUS_MARGIN;
    let pieces = (end - start).ceil().max(1.0) as usize;
    let width = (end - start) / pieces as f64;
    breaks.extend((1..=pieces).map(|p| start + p as f64 * width));
    let mut d = 2.0 * FOCUS_MARGIN;
    while d <= dist {
        breaks.push(dist + d);
        d *= 2.0;
    }
    breaks
}

/// Radial factor of the integrand that is absorbed into the weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialKernel {
    /// Plain area measure.
    Area,
    /// `|y - c|^{-α}`.
    Riesz(AlphaParam),
    /// `log|y - c|`.
    Log,
}

impl RadialKernel {
    fn radial_weight(self, r: f64) -> f64 {
        match self {
            RadialKernel::Area => r,
            RadialKernel::Riesz(a) => r.powf(1.0 - a.value()),
            RadialKernel::Log => r * r.ln(),
        }
    }
}

/// `∫ K(|y - c|) f(y) dy` as `Σ_i Σ_j w_i (2π/M) f(c + r_i e_j)`.
///
/// The radial rule grades towards `c`, covers `[1/2, 2|c - focus| + 4]` with
/// Gauss panels that refine towards the focus radius, and maps the remainder
/// to `w ∈ (0, 1]` via `r = b/w²`. The angle count grows with the focus
/// distance, up to 32 times the base count, so that features near the focus
/// stay resolved.
/// Integrands must decay fast enough that `K(r) f r` is integrable at infinity.
#[derive(Debug, Clone)]
pub struct PolarRule {
    center: Point,
    radii: Vec<f64>,
    radial_weights: Vec<f64>,
    directions: Vec<Point>,
}

impl PolarRule {
    pub fn new(center: Point, focus: Point, kernel: RadialKernel, n: usize, angles: usize) -> Result<Self> {
        if angles == 0 {
            return Err(domain("polar rule needs at least one angle"));
        }
        let gl = gauss_legendre(n)?;
        let mut radii = Vec::new();
        let mut radial_weights = Vec::new();

        let d = INNER_RADIUS * 0.5f64.powi(INNER_PANELS);
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            let u = 0.5 * (x + 1.0);
            let (r, wt) = match kernel {
                RadialKernel::Area => (d * u.sqrt(), 0.5 * d * d),
                RadialKernel::Riesz(a) => {
                    let p = 1.0 / (2.0 - a.value());
                    (d * u.powf(p), d.powf(2.0 - a.value()) * p)
                }
                RadialKernel::Log => {
                    let r = d * u.sqrt();
                    (r, 0.5 * d * d * r.ln())
                }
            };
            radii.push(r);
            radial_weights.push(0.5 * w * wt);
        }

        let mut panel = |lo: f64, hi: f64| {
            let rule = gl.mapped(lo, hi);
            for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
                radii.push(r);
                radial_weights.push(w * kernel.radial_weight(r));
            }
        };
        for i in (0..INNER_PANELS).rev() {
            panel(INNER_RADIUS * 0.5f64.powi(i + 1), INNER_RADIUS * 0.5f64.powi(i));
        }
        let dist = norm(sub(center, focus));
        let breaks = radial_breaks(dist);
        let b = *breaks.last().unwrap_or(&INNER_RADIUS);
        for w in breaks.windows(2) {
            panel(w[0], w[1]);
        }
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            let t = 0.5 * (x + 1.0);
            let r = b / (t * t);
            radii.push(r);
            radial_weights.push(0.5 * w * 2.0 * b / (t * t * t) * kernel.radial_weight(r));
        }

        let angles = angles * (dist / ANGLE_SPAN).ceil().clamp(1.0, MAX_ANGLE_FACTOR) as usize;
        let step = 2.0 * PI / angles as f64;
        let directions = (0..angles)
            .map(|j| {
                let (s, c) = (j as f64 * step).sin_cos();
                [c, s]
            })
            .collect();
        Ok(Self { center, radii, radial_weights, directions })
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn integrate(&self, f: impl Fn(Point) -> f64) -> f64 {
        self.integrate_with_magnitude(f).0
    }

    pub(crate) fn integrate_with_magnitude(&self, f: impl Fn(Point) -> f64) -> (f64, f64) {
        let aw = 2.0 * PI / self.directions.len() as f64;
        let mut terms = Vec::with_capacity(self.radii.len());
        let mut mags = Vec::with_capacity(self.radii.len());
        let mut ring = vec![0.0; self.directions.len()];
        for (&r, &w) in self.radii.iter().zip(&self.radial_weights) {
            for (slot, e) in ring.iter_mut().zip(&self.directions) {
                *slot = f([self.center[0] + r * e[0], self.center[1] + r * e[1]]);
            }
            terms.push(w * aw * pairwise_sum(&ring));
            let abs: f64 = ring.iter().map(|v| v.abs()).sum();
            mags.push(w.abs() * aw * abs);
        }
        (pairwise_sum(&terms), pairwise_sum(&mags))
    }

    /// Flattens the rule into explicit points and weights.
    pub fn to_plane_rule(&self) -> PlaneRule {
        let aw = 2.0 * PI / self.directions.len() as f64;
        let mut points = Vec::with_capacity(self.len());
        let mut weights = Vec::with_capacity(self.len());
        for (&r, &w) in self.radii.iter().zip(&self.radial_weights) {
            for e in &self.directions {
                points.push([self.center[0] + r * e[0], self.center[1] + r * e[1]]);
                weights.push(w * aw);
            }
        }
        PlaneRule { points, weights }
    }

    /// Integral at `(n, angles)` and `(2n, 2·angles)`.
    pub fn integral(
        center: Point,
        focus: Point,
        kernel: RadialKernel,
        f: impl Fn(Point) -> f64,
        n: usize,
        angles: usize,
    ) -> Result<Estimate> {
        let (coarse, _) = Self::new(center, focus, kernel, n, angles)?.integrate_with_magnitude(&f);
        let (fine, mag) = Self::new(center, focus, kernel, 2 * n, 2 * angles)?.integrate_with_magnitude(&f);
        settle("polar_integral", coarse, fine, mag)
    }
}
