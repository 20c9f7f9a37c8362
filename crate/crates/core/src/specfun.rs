//! Special-function primitives: log-Gamma, Legendre polynomials and the
//! constants attached to the exponential Choquard bubble.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Distance to a Gamma pole below which results are reported as overflow.
pub const POLE_GUARD: f64 = 1e-12;

/// The Riesz exponent `α`, restricted to the open interval `(0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 2.0 {
            Ok(Self(value))
        } else {
            Err(domain(format!("alpha must lie in (0, 2), got {value}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `4 - α`, the exponent that recurs in every bubble identity.
    #[inline]
    pub fn four_minus(self) -> f64 {
        4.0 - self.0
    }

    /// Fails with [`Error::Overflow`] when `2 - α` is within [`POLE_GUARD`].
    pub fn pole_guard(self) -> Result<()> {
        if 2.0 - self.0 < POLE_GUARD {
            Err(Error::Overflow(format!("alpha = {} is within {POLE_GUARD:e} of the pole at 2", self.0)))
        } else {
            Ok(())
        }
    }
}

impl TryFrom<f64> for AlphaParam {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl std::fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(x)` for `x > 0`.
///
/// Lanczos approximation (g = 7, nine terms) in log form, with the reflection
/// formula below `x = 1/2`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("ln_gamma requires a finite x > 0, got {x}")));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx), and sin(πx) > 0 on (0, 1/2).
        return (PI / (PI * x).sin()).ln() - ln_gamma_positive(1.0 - x);
    }
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// `Γ(a) / Γ(b)` evaluated as `exp(log Γ(a) - log Γ(b))`.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
}

/// The bubble constant `C_α = ((2-α)(4-α)/π)^{1/(4-α)}`.
pub fn c_alpha(alpha: AlphaParam) -> f64 {
    let a = alpha.value();
    ((2.0 - a) * (4.0 - a) / PI).powf(1.0 / (4.0 - a))
}

/// `C_α^{4-α} = (2-α)(4-α)/π`, without the round trip through the root.
pub fn c_alpha_power(alpha: AlphaParam) -> f64 {
    let a = alpha.value();
    (2.0 - a) * (4.0 - a) / PI
}

/// Sharp Hardy–Littlewood–Sobolev constant `C(N, α)` for `θ = r = 2N/(2N-α)`.
pub fn hls_constant(n: u32, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("dimension N must be at least 1"));
    }
    let nf = f64::from(n);
    if !(alpha > 0.0 && alpha < nf) {
        return Err(domain(format!("alpha must lie in (0, {n}), got {alpha}")));
    }
    if nf - alpha < POLE_GUARD {
        return Err(Error::Overflow(format!("alpha = {alpha} is within {POLE_GUARD:e} of N = {n}")));
    }
    let log_c = 0.5 * alpha * PI.ln() + ln_gamma((nf - alpha) / 2.0)? - ln_gamma(nf - alpha / 2.0)?
        + (nf - alpha) / nf * (ln_gamma(nf)? - ln_gamma(nf / 2.0)?);
    Ok(log_c.exp())
}

/// Legendre polynomial `P_k(t)` by the Bonnet recurrence.
pub fn legendre_p(k: usize, t: f64) -> Result<f64> {
    if t.is_nan() || t.abs() > 1.0 {
        return Err(domain(format!("legendre_p requires |t| <= 1, got {t}")));
    }
    Ok(legendre_pair(k, t).0)
}

/// `(P_k(t), P_{k-1}(t))` with `P_{-1} = 0`; no domain check.
pub(crate) fn legendre_pair(k: usize, t: f64) -> (f64, f64) {
    let (mut p, mut prev) = (1.0, 0.0);
    for n in 1..=k {
        let nf = n as f64;
        let next = ((2.0 * nf - 1.0) * t * p - (nf - 1.0) * prev) / nf;
        prev = p;
        p = next;
    }
    (p, prev)
}
