//! Decay fitting, error rates, bootstrap uncertainties and rate
//! decompositions.

mod fit;
mod rates;

pub use fit::{binomial_weight, fit_decay, DecayFit, DecayPoint, FitDiagnostics, FitIntervals};
pub use rates::{
    category_mixing_matrix, crb_rescale, extract_building_block_rates, predict_r_from_rates,
    solve_category_rates, BuildingBlockRates, CategoryRates, RateSystem,
};

use std::collections::BTreeMap;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::derived_rng;

pub const DEFAULT_RESAMPLES: usize = 1000;

/// `r = (4ⁿ − 1)(1 − p)/4ⁿ`.
pub fn drb_error_rate(p: f64, n: usize) -> f64 {
    let d = 4f64.powi(n as i32);
    (d - 1.0) * (1.0 - p) / d
}

/// `P_m = 2⁻ⁿ + (1 − 2⁻ⁿ)(1 − ε)^m`.
pub fn theory_pm(m: usize, eps: f64, n: usize) -> f64 {
    let floor = 0.5f64.powi(n as i32);
    floor + (1.0 - floor) * (1.0 - eps).powi(m as i32)
}

/// Per-circuit success fractions at one length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSummary {
    pub mean: f64,
    pub values: Vec<f64>,
    pub shots: Vec<u64>,
}

impl LengthSummary {
    fn from_parts(values: Vec<f64>, shots: Vec<u64>) -> Self {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Self {
            mean,
            values,
            shots,
        }
    }

    pub fn total_shots(&self) -> u64 {
        self.shots.iter().sum()
    }

    /// Quantile of the per-circuit values by linear interpolation.
    pub fn quantile(&self, q: f64) -> f64 {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
        let (i, frac) = (pos.floor() as usize, pos.fract());
        if i + 1 < v.len() {
            v[i] * (1.0 - frac) + v[i + 1] * frac
        } else {
            v[i]
        }
    }
}

/// Average success `P_m` per length, keeping the per-circuit values.
pub fn average_success(dataset: &Dataset) -> Result<BTreeMap<usize, LengthSummary>> {
    if dataset.rows.is_empty() {
        return Err(Error::InsufficientData("empty dataset".into()));
    }
    let mut by_m: BTreeMap<usize, (Vec<f64>, Vec<u64>)> = BTreeMap::new();
    for r in &dataset.rows {
        if r.shots == 0 {
            return Err(Error::InsufficientData(format!(
                "circuit {} has zero shots",
                r.circuit_id
            )));
        }
        let e = by_m.entry(r.m).or_default();
        e.0.push(r.successes as f64 / r.shots as f64);
        e.1.push(r.shots);
    }
    Ok(by_m
        .into_iter()
        .map(|(m, (v, s))| (m, LengthSummary::from_parts(v, s)))
        .collect())
}

/// Fit inputs with binomial weights.
pub fn decay_points(summary: &BTreeMap<usize, LengthSummary>) -> Vec<DecayPoint> {
    summary
        .iter()
        .map(|(&m, s)| DecayPoint {
            m,
            success: s.mean,
            weight: binomial_weight(s.mean, s.total_shots()),
        })
        .collect()
}

/// Circuit-level bootstrap: circuits are resampled with replacement within
/// each length and the decay refitted. Returns `±2σ` intervals around `fit`.
pub fn bootstrap(
    summary: &BTreeMap<usize, LengthSummary>,
    fit: &DecayFit,
    resamples: usize,
    seed: u64,
) -> Result<FitIntervals> {
    if resamples < 100 {
        return Err(Error::InsufficientData(format!(
            "resamples: {resamples} is below 100"
        )));
    }
    let n = fit.n;
    let draws: Vec<Option<[f64; 4]>> = (0..resamples)
        .into_par_iter()
        .map(|i| {
            let mut rng = derived_rng(seed, &format!("bootstrap/{i}"));
            let resampled: BTreeMap<usize, LengthSummary> = summary
                .iter()
                .map(|(&m, s)| {
                    let k = s.values.len();
                    let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(0..k)).collect();
                    let values = idx.iter().map(|&j| s.values[j]).collect();
                    let shots = idx.iter().map(|&j| s.shots[j]).collect();
                    (m, LengthSummary::from_parts(values, shots))
                })
                .collect();
            match fit_decay(&decay_points(&resampled), n) {
                Ok(f) if !f.diagnostics.degenerate => Some([f.a, f.b, f.p, f.r]),
                _ => None,
            }
        })
        .collect();
    let ok: Vec<[f64; 4]> = draws.iter().flatten().copied().collect();
    let failed = resamples - ok.len();
    if ok.len() < 2 {
        return Err(Error::Fit("every bootstrap resample failed".into()));
    }
    let sd = |i: usize| {
        let k = ok.len() as f64;
        let mean = ok.iter().map(|x| x[i]).sum::<f64>() / k;
        (ok.iter().map(|x| (x[i] - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    };
    let (a_sd, b_sd, p_sd, r_sd) = (sd(0), sd(1), sd(2), sd(3));
    Ok(FitIntervals {
        a: [fit.a - 2.0 * a_sd, fit.a + 2.0 * a_sd],
        b: [fit.b - 2.0 * b_sd, fit.b + 2.0 * b_sd],
        p: [(fit.p - 2.0 * p_sd).max(0.0), (fit.p + 2.0 * p_sd).min(1.0)],
        r: [(fit.r - 2.0 * r_sd).max(0.0), fit.r + 2.0 * r_sd],
        a_sd,
        b_sd,
        p_sd,
        r_sd,
        resamples,
        failed,
    })
}

/// Averages, fits and bootstraps a dataset.
pub fn analyze_dataset(
    dataset: &Dataset,
    resamples: usize,
    seed: u64,
) -> Result<(BTreeMap<usize, LengthSummary>, DecayFit)> {
    let n = dataset
        .num_qubits()
        .ok_or_else(|| Error::InsufficientData("empty dataset".into()))?;
    let summary = average_success(dataset)?;
    let mut fit = fit_decay(&decay_points(&summary), n)?;
    if !fit.diagnostics.degenerate {
        fit.intervals = Some(bootstrap(&summary, &fit, resamples, seed)?);
    }
    Ok((summary, fit))
}
