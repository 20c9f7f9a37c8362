//! Funk–Hecke eigenvalues of the Riesz and logarithmic kernels on `S²`, the
//! composite multipliers `λ_k`, Galerkin assembly of the sphere operator on
//! the mean-zero harmonics, and the kernel-dimension certificate.

mod eigen;

pub use eigen::{jacobi_eigensolve, Eigen, SymmetricMatrix, JACOBI_MAX_SWEEPS, JACOBI_TOL};

use std::f64::consts::{LN_2, PI};

use crate::error::{domain, Result};
use crate::quad::{log_endpoint_rule, pairwise_sum, riesz_endpoint_rule};
use crate::specfun::{c_alpha_power, ln_gamma, AlphaParam};
use crate::spheregeo::{real_sph_harm_all, sphere_quadrature, SpherePoint};

/// `μ_k(α)`, the Funk–Hecke eigenvalue of `|ξ - η|^{-α}` on degree `k`:
/// `2^{2-α} π Γ(k+α/2) Γ(1-α/2) / (Γ(α/2) Γ(k+2-α/2))`.
///
/// Evaluated as `μ₀ = 2^{3-α}π/(2-α)` times a log-Gamma ratio.
pub fn mu_k(k: usize, alpha: AlphaParam) -> Result<f64> {
    alpha.pole_guard()?;
    let a = alpha.value();
    let mu0 = 2f64.powf(3.0 - a) * PI / (2.0 - a);
    if k == 0 {
        return Ok(mu0);
    }
    let kf = k as f64;
    let log_ratio =
        ln_gamma(kf + 0.5 * a)? + ln_gamma(2.0 - 0.5 * a)? - ln_gamma(0.5 * a)? - ln_gamma(kf + 2.0 - 0.5 * a)?;
    Ok(mu0 * log_ratio.exp())
}

/// `μ̃_k`, the Funk–Hecke eigenvalue of `log|ξ - η|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuTilde {
    pub value: f64,
    /// A differing closed form quoted elsewhere for this degree, if any.
    pub flagged: Option<f64>,
}

/// `-2π/(k(k+1))` for `k ≥ 1`; `2π(2 log 2 - 1)` for `k = 0`, flagged against
/// the commonly quoted `2π(log 2 - 1)`.
pub fn mu_tilde_k(k: usize) -> MuTilde {
    if k == 0 {
        MuTilde { value: 2.0 * PI * (2.0 * LN_2 - 1.0), flagged: Some(2.0 * PI * (LN_2 - 1.0)) }
    } else {
        MuTilde { value: -2.0 * PI / (k * (k + 1)) as f64, flagged: None }
    }
}

/// `Π_{i<k}(2i+α)` and `Π_{i<k}(2i+4-α)`, so that `μ_k/μ₀` is their ratio.
fn mu_ratio_parts(k: usize, a: f64) -> (f64, f64) {
    let (mut num, mut den) = (1.0, 1.0);
    for i in 0..k {
        let i2 = 2.0 * i as f64;
        num *= i2 + a;
        den *= i2 + 4.0 - a;
        if den > 1e200 {
            num *= 1e-200;
            den *= 1e-200;
        }
    }
    (num, den)
}

/// The multiplier `λ_k = -(1/2π) C_α^{4-α} 2^{-(4-α)} μ̃_k (μ_k + μ₀)`, `k ≥ 1`.
///
/// Collapses to `(4-α)(1 + μ_k/μ₀) / (2k(k+1))`, evaluated with the Gamma
/// ratio written as a product of integers-plus-α so that rational cases such
/// as `λ₂(1) = 3/10` come out correctly rounded.
pub fn lambda_k(k: usize, alpha: AlphaParam) -> Result<f64> {
    if k == 0 {
        return Err(domain("λ_k is defined for k ≥ 1"));
    }
    alpha.pole_guard()?;
    let (num, den) = mu_ratio_parts(k, alpha.value());
    Ok(alpha.four_minus() * (den + num) / ((2 * k * (k + 1)) as f64 * den))
}

/// `λ_k` straight from its definition, using [`mu_k`] and [`mu_tilde_k`].
pub fn lambda_k_from_eigenvalues(k: usize, alpha: AlphaParam) -> Result<f64> {
    if k == 0 {
        return Err(domain("λ_k is defined for k ≥ 1"));
    }
    let c = operator_prefactor(alpha);
    Ok(-c * mu_tilde_k(k).value * (mu_k(k, alpha)? + mu_k(0, alpha)?))
}

/// `C_α^{4-α} 2^{-(4-α)} / (2π)`.
fn operator_prefactor(alpha: AlphaParam) -> f64 {
    c_alpha_power(alpha) * 2f64.powf(-alpha.four_minus()) / (2.0 * PI)
}

/// `μ_k`, `μ̃_k` for `0 ≤ k ≤ K` and `λ_k` for `1 ≤ k ≤ K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    pub alpha: AlphaParam,
    pub max_degree: usize,
    pub mu: Vec<f64>,
    pub mu_tilde: Vec<f64>,
    /// `lambda[k - 1] = λ_k`.
    pub lambda: Vec<f64>,
}

impl SpectralTable {
    pub fn new(alpha: AlphaParam, max_degree: usize) -> Result<Self> {
        let mu = (0..=max_degree).map(|k| mu_k(k, alpha)).collect::<Result<_>>()?;
        let mu_tilde = (0..=max_degree).map(|k| mu_tilde_k(k).value).collect();
        let lambda = (1..=max_degree).map(|k| lambda_k(k, alpha)).collect::<Result<_>>()?;
        Ok(Self { alpha, max_degree, mu, mu_tilde, lambda })
    }

    pub fn lambda(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.lambda.get(i).copied())
    }
}

/// Galerkin image of the sphere operator on `span{Y_{k,j} : 1 ≤ k ≤ K}`.
#[derive(Debug, Clone)]
pub struct Galerkin {
    pub alpha: AlphaParam,
    pub max_degree: usize,
    pub level: usize,
    pub matrix: SymmetricMatrix,
    /// Degree of each basis function, in row order.
    pub degrees: Vec<usize>,
    /// `2π ∫ ½log(2-2t) P_k(t) dt` from the tanh-sinh engine, indexed by `k`.
    pub mu_tilde_numeric: Vec<f64>,
    /// Eigenvalue error estimate for the degree-`k` block, indexed by `k`:
    /// the off-diagonal row mass plus the squared relative change of the
    /// tanh-sinh value between `level` and `2·level` nodes.
    pub block_errors: Vec<f64>,
}

/// Assembles `⟨Y_b, T Y_{b'}⟩` for `1 ≤ k, k' ≤ K`.
///
/// The inner Riesz layer acts on `Y_{k'}` by `μ_{k'} + μ₀` in closed form. The
/// outer log layer uses `μ̃_{k'}` from the one-dimensional log engine with
/// `level` and `2·level` nodes, and the inner products are taken with the
/// sphere rule of the same level. The `log ρ` correction terms are kept;
/// they carry a factor `∫ Y_b` and vanish on this subspace up to quadrature.
pub fn assemble_t_matrix(alpha: AlphaParam, max_degree: usize, level: usize) -> Result<Galerkin> {
    if max_degree == 0 {
        return Err(domain("Galerkin space needs K ≥ 1"));
    }
    if level == 0 {
        return Err(domain("quadrature level must be at least 1"));
    }
    let kmax = max_degree;
    let n = (kmax + 1) * (kmax + 1) - 1;
    let degrees: Vec<usize> = (1..=kmax).flat_map(|k| std::iter::repeat_n(k, 2 * k + 1)).collect();

    let coarse_rule = log_endpoint_rule(level)?;
    let fine_rule = log_endpoint_rule(2 * level)?;
    let mut mu_tilde_numeric = vec![0.0; kmax + 1];
    let mut log_errors = vec![0.0; kmax + 1];
    for k in 0..=kmax {
        let p = |t: f64| crate::specfun::legendre_p(k, t.clamp(-1.0, 1.0)).unwrap_or(f64::NAN);
        let fine = fine_rule.integrate(p);
        mu_tilde_numeric[k] = 2.0 * PI * fine;
        log_errors[k] = 2.0 * PI * (fine - coarse_rule.integrate(p)).abs();
    }

    let mu: Vec<f64> = (0..=kmax).map(|k| mu_k(k, alpha)).collect::<Result<_>>()?;
    let c = operator_prefactor(alpha);

    let sq = sphere_quadrature(level)?;
    let values: Vec<Vec<f64>> = sq.nodes.iter().map(|&p| real_sph_harm_all(kmax, p)).collect();
    let log_rho: Vec<f64> = sq.nodes.iter().map(|p| 0.5 * (1.0 + p.coords()[2]).ln()).collect();
    let integral = |f: &dyn Fn(usize) -> f64| -> f64 {
        let terms: Vec<f64> = (0..sq.len()).map(|i| sq.weights[i] * f(i)).collect();
        pairwise_sum(&terms)
    };
    let mean: Vec<f64> = (0..n).map(|b| integral(&|i| values[i][b + 1])).collect();
    let log_moment: Vec<f64> = (0..n).map(|b| integral(&|i| log_rho[i] * values[i][b + 1])).collect();

    let mut data = vec![0.0; n * n];
    for b in 0..n {
        for bp in b..n {
            let gram = integral(&|i| values[i][b + 1] * values[i][bp + 1]);
            for (r, s) in [(b, bp), (bp, b)] {
                let k_s = degrees[s];
                let scale = -c * (mu[k_s] + mu[0]);
                data[r * n + s] =
                    scale * (mu_tilde_numeric[k_s] * gram - log_moment[r] * mean[s] - log_moment[s] * mean[r]);
            }
        }
    }
    let matrix = SymmetricMatrix::from_row_major(n, data)?;

    let mut block_errors = vec![0.0; kmax + 1];
    for k in 1..=kmax {
        let rel = log_errors[k] / mu_tilde_numeric[k].abs().max(f64::MIN_POSITIVE);
        let own = c * (mu[k] + mu[0]) * mu_tilde_numeric[k].abs() * (rel * rel + f64::EPSILON);
        let mut row_mass = 0.0f64;
        for r in (0..n).filter(|&r| degrees[r] == k) {
            let diag = -c * (mu[k] + mu[0]) * mu_tilde_numeric[k];
            let mass: f64 = (0..n).map(|s| (matrix.get(r, s) - if r == s { diag } else { 0.0 }).abs()).sum();
            row_mass = row_mass.max(mass);
        }
        block_errors[k] = own + row_mass;
    }

    Ok(Galerkin { alpha, max_degree, level, matrix, degrees, mu_tilde_numeric, block_errors })
}

/// Outcome of the kernel-dimension certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    pub alpha: AlphaParam,
    pub max_degree: usize,
    pub level: usize,
    pub tol: f64,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues within `tol` of 1.
    pub unit_multiplicity: usize,
    /// `min |1 - λ|` over the remaining eigenvalues.
    pub spectral_gap: Option<f64>,
    /// Error estimate for the eigenvalues of the degree-one block.
    pub assembly_error: f64,
    /// Largest component of a unit eigenvector outside the degree-one block.
    pub unit_block_residual: Option<f64>,
    pub symmetry_defect: f64,
    pub hint: Option<String>,
}

/// Eigensolve of [`assemble_t_matrix`] and count of eigenvalues at 1.
///
/// An eigenvalue counts when `|λ - 1| ≤ tol`. A tolerance below the assembly
/// error estimate also produces a hint, since the count is then unreliable.
pub fn kernel_report(alpha: AlphaParam, max_degree: usize, tol: f64, level: usize) -> Result<KernelReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let g = assemble_t_matrix(alpha, max_degree, level)?;
    let eig = jacobi_eigensolve(&g.matrix)?;
    let err = g.block_errors[1];
    let (unit, rest): (Vec<usize>, Vec<usize>) =
        (0..eig.values.len()).partition(|&i| (eig.values[i] - 1.0).abs() <= tol);
    let spectral_gap = rest.iter().map(|&i| (1.0 - eig.values[i]).abs()).min_by(f64::total_cmp);
    let unit_block_residual = unit
        .iter()
        .map(|&i| {
            eig.vectors[i].iter().zip(&g.degrees).filter(|(_, &d)| d != 1).map(|(v, _)| v * v).sum::<f64>().sqrt()
        })
        .max_by(f64::total_cmp);
    let hint = (err > tol).then(|| {
        format!(
            "tolerance {tol:e} is below the assembly accuracy {err:.3e} at quadrature level {level}; raise the level or the tolerance"
        )
    });
    Ok(KernelReport {
        alpha,
        max_degree,
        level,
        tol,
        eigenvalues: eig.values,
        unit_multiplicity: unit.len(),
        spectral_gap,
        assembly_error: err,
        unit_block_residual,
        symmetry_defect: g.matrix.symmetry_defect(),
        hint,
    })
}

/// Small `α` at which the `α → 0` limit is probed.
pub const ALPHA_ZERO_PROBE: f64 = 1e-4;

/// `λ_k` at [`ALPHA_ZERO_PROBE`] against its limit `2/(k(k+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLimit {
    pub k: usize,
    pub limit: f64,
    pub value: f64,
    pub deviation: f64,
}

pub fn alpha_zero_limit(max_degree: usize) -> Result<Vec<ZeroLimit>> {
    let a = AlphaParam::new(ALPHA_ZERO_PROBE)?;
    (1..=max_degree)
        .map(|k| {
            let limit = 2.0 / (k * (k + 1)) as f64;
            let value = lambda_k(k, a)?;
            Ok(ZeroLimit { k, limit, value, deviation: (value - limit).abs() })
        })
        .collect()
}

/// `∫ |ξ - η|^{-α} Y_b(η) dη` for every harmonic of degree `≤ K`, in flat order.
///
/// The η-grid is built in a frame whose pole is `ξ`: the polar variable
/// `t = ξ·η` uses the Riesz endpoint rule, which absorbs the kernel, and the
/// azimuth uses `2·level` uniform nodes offset by `twist`.
pub fn riesz_sphere_action(
    alpha: AlphaParam,
    xi: SpherePoint,
    max_degree: usize,
    level: usize,
    twist: f64,
) -> Result<Vec<f64>> {
    let rule = riesz_endpoint_rule(alpha, level)?;
    let [e1, e2] = orthonormal_frame(xi);
    let z = xi.coords();
    let naz = 2 * level.max(1);
    let step = 2.0 * PI / naz as f64;
    let nb = (max_degree + 1) * (max_degree + 1);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(rule.len());
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let s = ((1.0 - t) * (1.0 + t)).max(0.0).sqrt();
        let mut ring = vec![0.0; nb];
        for a in 0..naz {
            let (sn, cs) = (twist + a as f64 * step).sin_cos();
            let eta = SpherePoint::new(std::array::from_fn(|i| t * z[i] + s * (cs * e1[i] + sn * e2[i])))?;
            for (acc, y) in ring.iter_mut().zip(real_sph_harm_all(max_degree, eta)) {
                *acc += y;
            }
        }
        rows.push(ring.into_iter().map(|v| w * step * v).collect());
    }
    Ok((0..nb)
        .map(|b| {
            let terms: Vec<f64> = rows.iter().map(|r| r[b]).collect();
            pairwise_sum(&terms)
        })
        .collect())
}

/// Two unit vectors completing `ξ` to a right-handed orthonormal frame.
fn orthonormal_frame(xi: SpherePoint) -> [[f64; 3]; 2] {
    let z = xi.coords();
    let axis = (0..3).min_by(|&i, &j| z[i].abs().total_cmp(&z[j].abs())).unwrap_or(0);
    let mut a = [0.0; 3];
    a[axis] = 1.0;
    let cross =
        |u: [f64; 3], v: [f64; 3]| [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    let e1 = cross(a, z);
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    let e1 = [e1[0] / n, e1[1] / n, e1[2] / n];
    let e2 = cross(z, e1);
    [e1, e2]
}
