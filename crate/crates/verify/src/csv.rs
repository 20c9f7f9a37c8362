//! Plotting data: `λ_k(α)` curves, `μ_k` tables and kernel gaps.

use std::io::{self, Write};

use choquard_core::spectral::{kernel_report, lambda_k, mu_k};
use choquard_core::AlphaParam;
use clap::ValueEnum;
use thiserror::Error;

use crate::config::SuiteConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Curve {
    LambdaVsAlpha,
    MuVsK,
    KernelGap,
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Numeric(#[from] choquard_core::Error),
}

/// `α = 0.05, 0.10, …, 1.95` merged with the configured values.
fn curve_alphas(cfg: &SuiteConfig) -> Vec<AlphaParam> {
    let mut v: Vec<f64> = (1..40).map(|i| i as f64 / 20.0).chain(cfg.alphas.iter().map(|a| a.value())).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.into_iter().filter_map(|a| AlphaParam::new(a).ok()).collect()
}

/// Writes the header and rows of `curve`, one record per line.
pub fn emit_csv(curve: Curve, cfg: &SuiteConfig, out: &mut impl Write) -> Result<(), CsvError> {
    let k_max = cfg.max_degree;
    match curve {
        Curve::LambdaVsAlpha => {
            writeln!(out, "alpha,k,lambda_k,bound_2_over_kk1")?;
            for a in curve_alphas(cfg) {
                for k in 1..=k_max {
                    let bound = 2.0 / (k * (k + 1)) as f64;
                    writeln!(out, "{:?},{k},{:?},{bound:?}", a.value(), lambda_k(k, a)?)?;
                }
            }
        }
        Curve::MuVsK => {
            writeln!(out, "alpha,k,mu_k")?;
            for &a in &cfg.alphas {
                for k in 0..=k_max {
                    writeln!(out, "{:?},{k},{:?}", a.value(), mu_k(k, a)?)?;
                }
            }
        }
        Curve::KernelGap => {
            writeln!(out, "alpha,unit_multiplicity,spectral_gap,predicted_gap,assembly_error")?;
            for &a in &cfg.alphas {
                let r = kernel_report(a, k_max, cfg.tol("kernel"), cfg.quad_level)?;
                let gap = r.spectral_gap.unwrap_or(f64::NAN);
                let predicted = if k_max >= 2 { 1.0 - lambda_k(2, a)? } else { f64::NAN };
                writeln!(out, "{:?},{},{gap:?},{predicted:?},{:?}", a.value(), r.unit_multiplicity, r.assembly_error)?;
            }
        }
    }
    Ok(())
}
