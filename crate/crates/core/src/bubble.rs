//! The bubble `U_{μ,ζ}`, its Liouville counterpart, the kernel elements
//! `φ₁, φ₂, φ₃`, the linearized operator `𝔑 = 𝔑₁ + 𝔑₂` and the log potential `K`.
//!
//! Fields below are taken at `μ = 1`, `ζ = 0` unless a [`BubbleParams`] is
//! passed explicitly.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::field::{norm, norm2, sub, DecayClass, PlaneField, Point};
use crate::quad::{radial_integral, settle, Estimate, PolarRule, RadialKernel};
use crate::specfun::{c_alpha, AlphaParam};
use crate::spheregeo::plane_quadrature;

const ORIGIN: Point = [0.0, 0.0];

/// Scale `μ > 0` and centre `ζ` of a bubble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubbleParams {
    alpha: AlphaParam,
    mu: f64,
    zeta: Point,
}

impl BubbleParams {
    pub fn new(alpha: AlphaParam, mu: f64, zeta: Point) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(domain(format!("bubble scale must be positive, got {mu}")));
        }
        if !(zeta[0].is_finite() && zeta[1].is_finite()) {
            return Err(domain("bubble centre must be finite"));
        }
        Ok(Self { alpha, mu, zeta })
    }

    /// `μ = 1`, `ζ = 0`.
    pub fn standard(alpha: AlphaParam) -> Self {
        Self { alpha, mu: 1.0, zeta: ORIGIN }
    }

    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn zeta(&self) -> Point {
        self.zeta
    }

    /// `μ (x - ζ)`, the argument of the standard profile.
    fn scaled(&self, x: Point) -> Point {
        let d = sub(x, self.zeta);
        [self.mu * d[0], self.mu * d[1]]
    }
}

/// Quadrature sizes for the plane integrals in this module.
///
/// Each integral is evaluated at the stated size and at double size; the
/// difference is reported as the error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneQuad {
    /// Gauss nodes per radial panel.
    pub radial_nodes: usize,
    /// Uniform angles of polar rules.
    pub angles: usize,
    /// Level of the sphere-derived plane rule.
    pub sphere_level: usize,
}

impl Default for PlaneQuad {
    fn default() -> Self {
        Self { radial_nodes: 16, angles: 96, sphere_level: 16 }
    }
}

/// `U_{μ,ζ}(x) = ((4-α)/2) log(C_α μ / (1 + μ²|x-ζ|²))`.
pub fn u_bubble(p: &BubbleParams, x: Point) -> f64 {
    let y = p.scaled(x);
    0.5 * p.alpha.four_minus() * (c_alpha(p.alpha) * p.mu / (1.0 + norm2(y))).ln()
}

/// `e^{U_{μ,ζ}(x)}`.
pub fn exp_u(p: &BubbleParams, x: Point) -> f64 {
    let y = p.scaled(x);
    (c_alpha(p.alpha) * p.mu / (1.0 + norm2(y))).powf(0.5 * p.alpha.four_minus())
}

/// `e^{4U/(4-α)} = (C_α μ / (1 + μ²|x-ζ|²))²`.
pub fn mass_density(p: &BubbleParams, x: Point) -> f64 {
    let y = p.scaled(x);
    let v = c_alpha(p.alpha) * p.mu / (1.0 + norm2(y));
    v * v
}

/// `Ū_{μ,ζ}(x) = 2 log(2√2 μ / (1 + μ²|x-ζ|²))`.
pub fn liouville_bubble(mu: f64, zeta: Point, x: Point) -> Result<f64> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(domain(format!("bubble scale must be positive, got {mu}")));
    }
    let d = sub(x, zeta);
    Ok(2.0 * (2.0 * std::f64::consts::SQRT_2 * mu / (1.0 + mu * mu * norm2(d))).ln())
}

/// `(φ₁, φ₂, φ₃)(x)` with `φ_j = (4-α) x_j / (1+|x|²)` and
/// `φ₃ = ((4-α)/2)(1-|x|²)/(1+|x|²)`.
pub fn kernel_basis(alpha: AlphaParam, x: Point) -> [f64; 3] {
    let a4 = alpha.four_minus();
    let r2 = norm2(x);
    let d = 1.0 + r2;
    [a4 * x[0] / d, a4 * x[1] / d, 0.5 * a4 * (1.0 - r2) / d]
}

/// Kernel elements of the linearization at `U_{μ,ζ}`: `φ_j(μ(x - ζ))`,
/// which equal `μ^{-1} ∂_{ζ_j} U` and `μ ∂_μ U`.
pub fn kernel_basis_scaled(p: &BubbleParams, x: Point) -> [f64; 3] {
    kernel_basis(p.alpha, p.scaled(x))
}

/// `φ_j` as a [`PlaneField`] with analytic gradient, `j ∈ {1, 2, 3}`.
pub fn kernel_field(alpha: AlphaParam, j: usize) -> Result<PlaneField> {
    let a4 = alpha.four_minus();
    match j {
        1 | 2 => {
            let i = j - 1;
            Ok(PlaneField::new(DecayClass::Algebraic(1.0), move |x| a4 * x[i] / (1.0 + norm2(x))).with_gradient(
                move |x| {
                    let d = 1.0 + norm2(x);
                    let g = |k: usize| {
                        let delta = if k == i { 1.0 } else { 0.0 };
                        a4 * (delta / d - 2.0 * x[k] * x[i] / (d * d))
                    };
                    [g(0), g(1)]
                },
            ))
        }
        3 => Ok(PlaneField::new(DecayClass::Bounded, move |x| {
            let r2 = norm2(x);
            0.5 * a4 * (1.0 - r2) / (1.0 + r2)
        })
        .with_gradient(move |x| {
            let d = 1.0 + norm2(x);
            let c = -2.0 * a4 / (d * d);
            [c * x[0], c * x[1]]
        })),
        _ => Err(domain(format!("kernel index must be 1, 2 or 3, got {j}"))),
    }
}

/// `𝔑(φ_j)(x) = 8 φ_j(x) / (1+|x|²)²`.
pub fn kernel_image_closed(alpha: AlphaParam, j: usize, x: Point) -> Result<f64> {
    if !(1..=3).contains(&j) {
        return Err(domain(format!("kernel index must be 1, 2 or 3, got {j}")));
    }
    let d = 1.0 + norm2(x);
    Ok(8.0 * kernel_basis(alpha, x)[j - 1] / (d * d))
}

/// `𝔑(φ_j)` as a field decaying like `|x|^{-4}`.
pub fn kernel_image_field(alpha: AlphaParam, j: usize) -> Result<PlaneField> {
    kernel_image_closed(alpha, j, ORIGIN)?;
    Ok(PlaneField::new(DecayClass::Algebraic(4.0), move |x| {
        let d = 1.0 + norm2(x);
        8.0 * kernel_basis(alpha, x)[j - 1] / (d * d)
    }))
}

/// `(2(4-α)/C_α²) e^{αU/(4-α)}`, the Riesz potential of `e^U` at `x`.
pub fn riesz_potential_closed(p: &BubbleParams, x: Point) -> f64 {
    let a = p.alpha.value();
    let a4 = p.alpha.four_minus();
    let c = c_alpha(p.alpha);
    2.0 * a4 / (c * c) * (a / a4 * u_bubble(p, x)).exp()
}

/// `∫ e^{U(y)} |x - y|^{-α} dy` by polar quadrature centred at `x`.
pub fn riesz_potential_quad(p: &BubbleParams, x: Point, quad: &PlaneQuad) -> Result<Estimate> {
    let p = *p;
    PolarRule::integral(x, p.zeta, RadialKernel::Riesz(p.alpha), |y| exp_u(&p, y), quad.radial_nodes, quad.angles)
}

fn require_bounded(phi: &PlaneField) -> Result<()> {
    match phi.decay() {
        DecayClass::LogGrowth => Err(domain("field must be bounded")),
        _ => Ok(()),
    }
}

/// `𝔑₁(φ)(x) = e^{U(x)} ∫ e^{U(y)} φ(y) |x - y|^{-α} dy` at `μ = 1`, `ζ = 0`.
pub fn n1_apply(alpha: AlphaParam, phi: &PlaneField, x: Point, quad: &PlaneQuad) -> Result<Estimate> {
    require_bounded(phi)?;
    let p = BubbleParams::standard(alpha);
    let inner = PolarRule::integral(
        x,
        ORIGIN,
        RadialKernel::Riesz(alpha),
        |y| exp_u(&p, y) * phi.eval(y),
        quad.radial_nodes,
        quad.angles,
    )?;
    Ok(inner.scale(exp_u(&p, x)))
}

/// `𝔑₂(φ)(x) = 2(4-α) φ(x) / (1+|x|²)²`.
pub fn n2_apply(alpha: AlphaParam, phi: &PlaneField, x: Point) -> f64 {
    let d = 1.0 + norm2(x);
    2.0 * alpha.four_minus() * phi.eval(x) / (d * d)
}

/// `𝔑(φ)(x) = 𝔑₁(φ)(x) + 𝔑₂(φ)(x)`.
pub fn n_apply(alpha: AlphaParam, phi: &PlaneField, x: Point, quad: &PlaneQuad) -> Result<f64> {
    Ok(n1_apply(alpha, phi, x, quad)?.value + n2_apply(alpha, phi, x))
}

/// Beyond this `|x|`, [`log_potential`] integrates around the origin only.
pub const LOG_SPLIT_RADIUS: f64 = 64.0;

/// `Kf(x) = (1/2π) ∫ log((1+|y|)/|x-y|) f(y) dy`.
///
/// For `|x| ≤ 64` the `log(1+|y|)` part is integrated around the origin and
/// the `log|x-y|` part around `x`. Farther out, `f` is negligible near `x`
/// and the whole integrand is taken around the origin.
pub fn log_potential(f: &PlaneField, x: Point, quad: &PlaneQuad) -> Result<Estimate> {
    match f.decay() {
        DecayClass::Algebraic(p) if p > 2.0 => {}
        other => return Err(domain(format!("log potential needs algebraic decay faster than |x|^-2, got {other:?}"))),
    }
    if norm(x) > LOG_SPLIT_RADIUS {
        let whole = PolarRule::integral(
            ORIGIN,
            x,
            RadialKernel::Area,
            |y| {
                let d = norm(sub(x, y));
                if d > 0.0 {
                    (norm(y).ln_1p() - d.ln()) * f.eval(y)
                } else {
                    0.0
                }
            },
            quad.radial_nodes,
            quad.angles,
        )?;
        return Ok(whole.scale(1.0 / (2.0 * PI)));
    }
    let far = PolarRule::integral(
        ORIGIN,
        x,
        RadialKernel::Area,
        |y| norm(y).ln_1p() * f.eval(y),
        quad.radial_nodes,
        quad.angles,
    )?;
    let near = PolarRule::integral(x, ORIGIN, RadialKernel::Log, |y| f.eval(y), quad.radial_nodes, quad.angles)?;
    Ok(Estimate { value: (far.value - near.value) / (2.0 * PI), error: (far.error + near.error) / (2.0 * PI) })
}

/// Number of Gauss nodes for the one-dimensional radial reductions.
const RADIAL_IDENTITY_NODES: usize = 48;

/// `(∫ e^{4U/(4-α)}, ∫∫ e^{U(x)} e^{U(y)} |x-y|^{-α})` for the given bubble.
///
/// The double integral is reduced to `∫ e^U · (Riesz potential of e^U)` using
/// the closed-form potential; both are then radial about `ζ`.
pub fn identity_mass(p: &BubbleParams) -> Result<(Estimate, Estimate)> {
    let along = |r: f64| [p.zeta[0] + r, p.zeta[1]];
    let first = radial_integral(|r| mass_density(p, along(r)), RADIAL_IDENTITY_NODES)?.scale(2.0 * PI);
    let second = radial_integral(|r| exp_u(p, along(r)) * riesz_potential_closed(p, along(r)), RADIAL_IDENTITY_NODES)?
        .scale(2.0 * PI);
    Ok((first, second))
}

/// The double integral without the closed-form reduction: an outer radial
/// rule over an inner polar quadrature. Accurate to a few digits only.
pub fn identity_mass_unreduced(alpha: AlphaParam, quad: &PlaneQuad) -> Result<Estimate> {
    let p = BubbleParams::standard(alpha);
    let outer = |n: usize| -> Result<f64> {
        let rule = crate::quad::gauss_legendre(n)?.mapped(0.0, 1.0);
        let mut total = 0.0;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let omt = 1.0 - t;
            let r = (t / omt).sqrt();
            let inner = PolarRule::new([r, 0.0], ORIGIN, RadialKernel::Riesz(alpha), quad.radial_nodes, quad.angles)?
                .integrate(|y| exp_u(&p, y));
            total += w * exp_u(&p, [r, 0.0]) * inner / (2.0 * omt * omt);
        }
        Ok(2.0 * PI * total)
    };
    let coarse = outer(12)?;
    let fine = outer(24)?;
    Ok(Estimate { value: fine, error: (fine - coarse).abs() })
}

/// `∫ e^{Ū_{μ,ζ}} dx`, which equals `8π`.
pub fn liouville_mass(mu: f64, zeta: Point) -> Result<Estimate> {
    liouville_bubble(mu, zeta, zeta)?;
    let g = |r: f64| liouville_bubble(mu, zeta, [zeta[0] + r, zeta[1]]).map(f64::exp).unwrap_or(f64::NAN);
    Ok(radial_integral(g, RADIAL_IDENTITY_NODES)?.scale(2.0 * PI))
}

/// `∫ e^{4U/(4-α)} φ dx` at `μ = 1`, `ζ = 0`, on the sphere-derived plane rule.
pub fn orthogonality_integral(alpha: AlphaParam, phi: &PlaneField, quad: &PlaneQuad) -> Result<Estimate> {
    require_bounded(phi)?;
    let p = BubbleParams::standard(alpha);
    let f = |x: Point| mass_density(&p, x) * phi.eval(x);
    let coarse = plane_quadrature(quad.sphere_level)?.integrate(f);
    let rule = plane_quadrature(2 * quad.sphere_level)?;
    let fine = rule.integrate(f);
    let mag = rule.integrate(|x| f(x).abs());
    settle("orthogonality_integral", coarse, fine, mag)
}

/// `‖φ‖_{L²_w}`, `‖∇φ‖_{L²}` and `‖φ‖_{H¹_w}`, with weight `(1+|x|²)^{-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedNorms {
    pub l2w: f64,
    pub grad_l2: f64,
    pub h1w: f64,
}

impl WeightedNorms {
    /// `‖∇φ‖² / ‖φ‖²_{L²_w}`, or `None` for the zero field.
    pub fn energy_ratio(&self) -> Option<f64> {
        (self.l2w > 0.0).then(|| (self.grad_l2 / self.l2w).powi(2))
    }
}

/// Step for finite-difference gradients of fields without an analytic one.
pub const GRADIENT_STEP: f64 = 1e-4;

/// Weighted norms of `φ` on the sphere-derived plane rule.
pub fn weighted_norms(phi: &PlaneField, quad: &PlaneQuad) -> Result<WeightedNorms> {
    let l2 = |x: Point| {
        let d = 1.0 + norm2(x);
        let v = phi.eval(x);
        v * v / (d * d)
    };
    let grad = |x: Point| {
        let g = phi.gradient(x, GRADIENT_STEP);
        g[0] * g[0] + g[1] * g[1]
    };
    let coarse_rule = plane_quadrature(quad.sphere_level)?;
    let fine_rule = plane_quadrature(2 * quad.sphere_level)?;
    let settle_on = |what: &str, f: &dyn Fn(Point) -> f64| {
        let fine = fine_rule.integrate(f);
        settle(what, coarse_rule.integrate(f), fine, fine.abs())
    };
    let l2w2 = settle_on("weighted L2 norm", &l2)?.value;
    let grad2 = settle_on("gradient norm", &grad)?.value;
    Ok(WeightedNorms { l2w: l2w2.sqrt(), grad_l2: grad2.sqrt(), h1w: (grad2 + l2w2).sqrt() })
}

/// `A_α = (4(4-α) + 1)^{1/2}`.
pub fn a_alpha(alpha: AlphaParam) -> f64 {
    (4.0 * alpha.four_minus() + 1.0).sqrt()
}

/// The Kelvin inversion `x / |x|²`.
pub fn kelvin_point(x: Point) -> Result<Point> {
    let r2 = norm2(x);
    if r2.is_nan() || r2 <= 0.0 {
        return Err(domain("Kelvin inversion is undefined at the origin"));
    }
    Ok([x[0] / r2, x[1] / r2])
}

/// Samples of a field at `|x| = 10³` and `|x| = 10⁴` along a direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarField {
    pub at_1e3: f64,
    pub at_1e4: f64,
}

impl FarField {
    pub fn sample(phi: &PlaneField, direction: Point) -> Result<Self> {
        let n = norm(direction);
        if n.is_nan() || n <= 0.0 {
            return Err(domain("direction must be non-zero"));
        }
        let at = |r: f64| phi.eval([r * direction[0] / n, r * direction[1] / n]);
        Ok(Self { at_1e3: at(1e3), at_1e4: at(1e4) })
    }

    /// Limit assuming a leading `|x|^{-1}` correction: `(10 f(10⁴) - f(10³)) / 9`.
    pub fn extrapolated(&self) -> f64 {
        (10.0 * self.at_1e4 - self.at_1e3) / 9.0
    }

    /// The extrapolated limit, provided it agrees with the `10⁴` sample
    /// within `tol`.
    pub fn limit(&self, tol: f64) -> Option<f64> {
        let c = self.extrapolated();
        ((self.at_1e4 - c).abs() <= tol).then_some(c)
    }
}

/// `∫ |x - y|^{-1} ⟨y⟩^{-θ} dy` with `⟨y⟩ = (1+|y|²)^{1/2}`, `θ > 1`.
pub fn bracket_potential(x: Point, theta: f64, quad: &PlaneQuad) -> Result<Estimate> {
    if theta.is_nan() || theta <= 1.0 {
        return Err(domain(format!("bracket potential needs θ > 1, got {theta}")));
    }
    let one = AlphaParam::new(1.0)?;
    PolarRule::integral(
        x,
        ORIGIN,
        RadialKernel::Riesz(one),
        |y| (1.0 + norm2(y)).powf(-0.5 * theta),
        quad.radial_nodes,
        quad.angles,
    )
}

/// The growth profile bounding [`bracket_potential`] in each regime of `θ`.
pub fn bracket_bound(x: Point, theta: f64) -> f64 {
    let b = (1.0 + norm2(x)).sqrt();
    if theta < 2.0 {
        b.powf(1.0 - theta)
    } else if theta == 2.0 {
        (1.0 + b.ln()) / b
    } else {
        1.0 / b
    }
}
