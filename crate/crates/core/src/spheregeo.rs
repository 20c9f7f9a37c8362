//! Stereographic projection, real spherical harmonics and product quadrature
//! on the unit sphere, with transport of rules and fields to the plane.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::field::{norm2, DecayClass, PlaneField, Point};
use crate::quad::{gauss_legendre, pairwise_sum, PlaneRule};

/// Points with `1 + ξ₃` at or below this are treated as the south pole.
pub const SOUTH_POLE_GUARD: f64 = 1e-14;

/// A point of the unit sphere `S²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint([f64; 3]);

impl SpherePoint {
    /// Normalizes `xi` onto the sphere.
    pub fn new(xi: [f64; 3]) -> Result<Self> {
        let n = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(domain(format!("cannot normalize {xi:?} onto the sphere")));
        }
        Ok(Self([xi[0] / n, xi[1] / n, xi[2] / n]))
    }

    pub const NORTH: SpherePoint = SpherePoint([0.0, 0.0, 1.0]);

    #[inline]
    pub fn coords(self) -> [f64; 3] {
        self.0
    }

    #[inline]
    pub fn dot(self, other: SpherePoint) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn distance(self, other: SpherePoint) -> f64 {
        let d = [self.0[0] - other.0[0], self.0[1] - other.0[1], self.0[2] - other.0[2]];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

/// The stereographic map `S(x) = (2x, 1 - |x|²) / (1 + |x|²)`.
pub fn stereo(x: Point) -> SpherePoint {
    let r2 = norm2(x);
    let d = 1.0 + r2;
    SpherePoint([2.0 * x[0] / d, 2.0 * x[1] / d, (1.0 - r2) / d])
}

/// Inverse of [`stereo`]: `(ξ₁, ξ₂) / (1 + ξ₃)`.
pub fn stereo_inv(xi: SpherePoint) -> Result<Point> {
    let [a, b, c] = xi.0;
    let d = 1.0 + c;
    if d <= SOUTH_POLE_GUARD {
        return Err(domain(format!("{xi:?} is too close to the south pole")));
    }
    Ok([a / d, b / d])
}

/// Conformal factor `ρ(x) = (2 / (1 + |x|²))^{1/2}`.
pub fn rho(x: Point) -> f64 {
    (2.0 / (1.0 + norm2(x))).sqrt()
}

type SphereFn = dyn Fn(SpherePoint) -> f64 + Send + Sync;

#[derive(Clone)]
enum SphereFieldInner {
    Direct(Arc<SphereFn>),
    Pushed(PlaneField),
}

/// A real field on `S²`, either given directly or pushed forward from the plane.
#[derive(Clone)]
pub struct SphereField(SphereFieldInner);

impl SphereField {
    pub fn new(f: impl Fn(SpherePoint) -> f64 + Send + Sync + 'static) -> Self {
        Self(SphereFieldInner::Direct(Arc::new(f)))
    }

    /// Fails at the south pole for pushed-forward fields.
    pub fn eval(&self, xi: SpherePoint) -> Result<f64> {
        match &self.0 {
            SphereFieldInner::Direct(f) => Ok(f(xi)),
            SphereFieldInner::Pushed(f) => Ok(f.eval(stereo_inv(xi)?)),
        }
    }
}

impl std::fmt::Debug for SphereField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.0 {
            SphereFieldInner::Direct(_) => "direct",
            SphereFieldInner::Pushed(_) => "pushforward",
        };
        f.debug_tuple("SphereField").field(&kind).finish()
    }
}

/// `S_* f = f ∘ S^{-1}`.
pub fn pushforward(f: &PlaneField) -> SphereField {
    SphereField(SphereFieldInner::Pushed(f.clone()))
}

/// `F ∘ S`; returns the original plane field for pushforwards.
pub fn pullback(field: &SphereField) -> PlaneField {
    match &field.0 {
        SphereFieldInner::Pushed(f) => f.clone(),
        SphereFieldInner::Direct(f) => {
            let f = Arc::clone(f);
            PlaneField::new(DecayClass::Bounded, move |x| f(stereo(x)))
        }
    }
}

/// Index `(k, j)` of a real spherical harmonic, `1 ≤ j ≤ 2k + 1`.
///
/// For `j ≤ 2k` the order is `m = ⌈j/2⌉` with a cosine factor for odd `j`
/// and a sine factor for even `j`; `j = 2k + 1` is the zonal harmonic. In
/// degree one this gives `Y_{1,j} ∝ ξ_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    degree: usize,
    order: usize,
}

impl HarmonicIndex {
    pub fn new(degree: usize, order: usize) -> Result<Self> {
        if order == 0 || order > 2 * degree + 1 {
            return Err(domain(format!("order {order} outside 1..={} for degree {degree}", 2 * degree + 1)));
        }
        Ok(Self { degree, order })
    }

    pub fn degree(self) -> usize {
        self.degree
    }

    pub fn order(self) -> usize {
        self.order
    }

    /// Position in the flat layout used by [`real_sph_harm_all`]: `k² + j - 1`.
    pub fn flat(self) -> usize {
        self.degree * self.degree + self.order - 1
    }

    /// All indices of degree `k`.
    pub fn degree_block(k: usize) -> impl Iterator<Item = HarmonicIndex> {
        (1..=2 * k + 1).map(move |j| HarmonicIndex { degree: k, order: j })
    }
}

/// Orthonormal real harmonic `Y_{k,j}(ξ)`.
pub fn real_sph_harm(idx: HarmonicIndex, xi: SpherePoint) -> f64 {
    real_sph_harm_all(idx.degree, xi)[idx.flat()]
}

/// All `Y_{k,j}(ξ)` with `k ≤ max_degree`, in [`HarmonicIndex::flat`] order.
///
/// Uses the normalized associated Legendre recurrence on `P̄_k^m / sin^m θ`,
/// multiplied by the real and imaginary parts of `(ξ₁ + iξ₂)^m`.
pub fn real_sph_harm_all(max_degree: usize, xi: SpherePoint) -> Vec<f64> {
    let [x, y, t] = xi.0;
    let kmax = max_degree;
    let mut out = vec![0.0; (kmax + 1) * (kmax + 1)];
    let mut diag = 1.0 / (4.0 * PI).sqrt();
    let (mut re, mut im) = (1.0, 0.0);
    for m in 0..=kmax {
        if m > 0 {
            let mf = m as f64;
            diag *= ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt();
            let nr = re * x - im * y;
            im = re * y + im * x;
            re = nr;
        }
        let mut prev = 0.0;
        let mut cur = diag;
        for k in m..=kmax {
            if k > m {
                let (kf, mf) = (k as f64, m as f64);
                let a = ((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf)).sqrt();
                let b = (((kf - 1.0) * (kf - 1.0) - mf * mf) / (4.0 * (kf - 1.0) * (kf - 1.0) - 1.0)).sqrt();
                let next = a * (t * cur - b * prev);
                prev = cur;
                cur = next;
            }
            let base = k * k;
            if m == 0 {
                out[base + 2 * k] = cur;
            } else {
                let s = std::f64::consts::SQRT_2 * cur;
                out[base + 2 * m - 2] = s * re;
                out[base + 2 * m - 1] = s * im;
            }
        }
    }
    out
}

/// Product rule on `S²`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    pub nodes: Vec<SpherePoint>,
    pub weights: Vec<f64>,
    /// Harmonics of degree up to this are integrated exactly.
    pub exactness_degree: usize,
}

impl SphereQuadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(SpherePoint) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&p, &w)| w * f(p)).collect();
        pairwise_sum(&terms)
    }
}

/// Gauss–Legendre in `ξ₃` with `level` nodes times `2·level` uniform azimuths.
///
/// Exact for harmonics of degree up to `2·level - 1`.
pub fn sphere_quadrature(level: usize) -> Result<SphereQuadrature> {
    if level == 0 {
        return Err(domain("sphere quadrature level must be at least 1"));
    }
    let gl = gauss_legendre(level)?;
    let naz = 2 * level;
    let step = 2.0 * PI / naz as f64;
    let mut nodes = Vec::with_capacity(level * naz);
    let mut weights = Vec::with_capacity(level * naz);
    for (&t, &w) in gl.nodes.iter().zip(&gl.weights) {
        let s = (1.0 - t * t).sqrt();
        for a in 0..naz {
            let (sn, cs) = (a as f64 * step).sin_cos();
            nodes.push(SpherePoint([s * cs, s * sn, t]));
            weights.push(w * step);
        }
    }
    Ok(SphereQuadrature { nodes, weights, exactness_degree: 2 * level - 1 })
}

/// The sphere rule carried to `R²` by `S^{-1}`, with weights `w ρ^{-4}`.
pub fn plane_quadrature(level: usize) -> Result<PlaneRule> {
    let sq = sphere_quadrature(level)?;
    let mut points = Vec::with_capacity(sq.len());
    let mut weights = Vec::with_capacity(sq.len());
    for (&xi, &w) in sq.nodes.iter().zip(&sq.weights) {
        let x = stereo_inv(xi)?;
        points.push(x);
        let r4 = rho(x).powi(4);
        weights.push(w / r4);
    }
    Ok(PlaneRule { points, weights })
}

/// Degree-one prefactor `√(3/4π)` used by [`real_sph_harm_all`].
pub const DEGREE_ONE_FACTOR: f64 = 0.488_602_511_902_919_9;
/// The alternative prefactor `√(3/2π)` sometimes quoted for `Y_{1,j} = c ξ_j`.
pub const DEGREE_ONE_ALT_FACTOR: f64 = 0.690_988_298_942_670_9;

/// `‖Y_{1,j}‖_{L²(S²)}` under both prefactors, maximised over `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeOneNorm {
    pub adopted: f64,
    pub alternative: f64,
}

pub fn degree_one_norm(level: usize) -> Result<DegreeOneNorm> {
    let q = sphere_quadrature(level)?;
    let norm_with = |c: f64| {
        (0..3)
            .map(|j| q.integrate(|xi| (c * xi.0[j]).powi(2)).sqrt())
            .max_by(|a, b| (a - 1.0).abs().total_cmp(&(b - 1.0).abs()))
            .unwrap_or(0.0)
    };
    Ok(DegreeOneNorm { adopted: norm_with(DEGREE_ONE_FACTOR), alternative: norm_with(DEGREE_ONE_ALT_FACTOR) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn degree_one_prefactors() {
        assert_relative_eq!(DEGREE_ONE_FACTOR, (3.0 / (4.0 * PI)).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(DEGREE_ONE_ALT_FACTOR, (3.0 / (2.0 * PI)).sqrt(), max_relative = 1e-15);
        let n = degree_one_norm(4).unwrap();
        assert_relative_eq!(n.adopted, 1.0, max_relative = 1e-14);
        assert_relative_eq!(n.alternative, std::f64::consts::SQRT_2, max_relative = 1e-14);
        let xi = SpherePoint::new([0.3, -0.4, 0.5]).unwrap();
        let y = real_sph_harm_all(1, xi);
        assert_relative_eq!(y[1], DEGREE_ONE_FACTOR * xi.coords()[0], max_relative = 1e-14);
    }

    #[test]
    fn stereo_anchors() {
        assert_eq!(stereo([0.0, 0.0]), SpherePoint::NORTH);
        assert!(stereo([0.6, 0.8]).coords()[2].abs() < 1e-16);
        assert_eq!(stereo_inv(SpherePoint::NORTH).unwrap(), [0.0, 0.0]);
        assert_eq!(stereo_inv(SpherePoint::new([1.0, 0.0, 0.0]).unwrap()).unwrap(), [1.0, 0.0]);
        let south = SpherePoint([0.0, 0.0, -1.0 + 1e-16]);
        assert!(stereo_inv(south).is_err());
        assert_eq!(rho([0.0, 0.0]), 2f64.sqrt());
        assert_eq!(rho([1.0, 0.0]), 1.0);
    }

    #[test]
    fn sphere_point_normalizes() {
        let p = SpherePoint::new([3.0, 0.0, 4.0]).unwrap();
        assert_eq!(p.coords(), [0.6, 0.0, 0.8]);
        assert!(SpherePoint::new([0.0; 3]).is_err());
    }

    #[test]
    fn harmonic_index_bounds() {
        assert!(HarmonicIndex::new(0, 1).is_ok());
        assert!(HarmonicIndex::new(2, 6).is_err());
        assert!(HarmonicIndex::new(2, 0).is_err());
        assert_eq!(HarmonicIndex::new(3, 7).unwrap().flat(), 15);
    }

    #[test]
    fn low_degree_harmonics() {
        let xi = SpherePoint::new([0.3, -0.5, 0.2]).unwrap();
        let c = xi.coords();
        let y = real_sph_harm_all(2, xi);
        assert_relative_eq!(y[0], 1.0 / (4.0 * PI).sqrt(), max_relative = 1e-15);
        let n1 = (3.0 / (4.0 * PI)).sqrt();
        for j in 0..3 {
            assert_relative_eq!(y[1 + j], n1 * c[j], max_relative = 1e-14);
        }
        // Zonal degree two: sqrt(5/4π) P_2(ξ₃).
        let p2 = 0.5 * (3.0 * c[2] * c[2] - 1.0);
        assert_relative_eq!(y[8], (5.0 / (4.0 * PI)).sqrt() * p2, max_relative = 1e-14);
    }

    #[test]
    fn quadrature_weights_and_moments() {
        let q = sphere_quadrature(8).unwrap();
        assert_eq!(q.exactness_degree, 15);
        assert!(q.weights.iter().all(|&w| w > 0.0));
        assert_relative_eq!(q.integrate(|_| 1.0), 4.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(q.integrate(|p| p.coords()[2].powi(2)), 4.0 * PI / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn gram_matrix_is_identity() {
        let q = sphere_quadrature(16).unwrap();
        let kmax = 6;
        let n = (kmax + 1) * (kmax + 1);
        let vals: Vec<Vec<f64>> = q.nodes.iter().map(|&p| real_sph_harm_all(kmax, p)).collect();
        for a in 0..n {
            for b in 0..n {
                let g: f64 = vals.iter().zip(&q.weights).map(|(v, w)| w * v[a] * v[b]).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((g - expected).abs() < 1e-12, "G[{a},{b}] = {g}");
            }
        }
    }

    #[test]
    fn plane_rule_moments() {
        let r = plane_quadrature(8).unwrap();
        assert_relative_eq!(r.integrate(|x| (1.0 + norm2(x)).powi(-2)), PI, max_relative = 1e-12);
        assert!(r.integrate(|x| x[0] * (1.0 + norm2(x)).powi(-3)).abs() < 1e-13);
    }

    #[test]
    fn pushforward_pullback_round_trip() {
        let f = PlaneField::new(DecayClass::Bounded, |x| (1.0 + x[0]).sin());
        let g = pullback(&pushforward(&f));
        assert_eq!(g.eval([0.3, 0.4]), f.eval([0.3, 0.4]));
        let south = SpherePoint([0.0, 0.0, -1.0]);
        assert!(pushforward(&f).eval(south).is_err());
        let c = SphereField::new(|_| 2.5);
        assert_eq!(pullback(&c).eval([7.0, -1.0]), 2.5);
    }
}
