//! Weighted least-squares fit of `P_m = A + B p^m`.
//!
//! For fixed `p` the model is linear in `(A, B)`, so the residual is
//! minimized over `p ∈ [0, 1]` alone: a grid scan (plus the log-linear
//! starting point) locates the basin, golden-section search refines it, and
//! a damped Gauss-Newton pass on `(A, B, p)` polishes the result.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::drb_error_rate;

/// Average success at one length with its fit weight.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub m: usize,
    pub success: f64,
    pub weight: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub lengths: Vec<usize>,
    /// Observed minus fitted success per length.
    pub residuals: Vec<f64>,
    /// Weighted residual sum of squares.
    pub rss: f64,
    /// The optimum sits on the boundary of `p ∈ [0, 1]`.
    pub clamped: bool,
    /// All successes equal, so `p` is unidentifiable and reported as 1.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitIntervals {
    #[serde(rename = "A")]
    pub a: [f64; 2],
    #[serde(rename = "B")]
    pub b: [f64; 2],
    pub p: [f64; 2],
    pub r: [f64; 2],
    #[serde(rename = "A_sd")]
    pub a_sd: f64,
    #[serde(rename = "B_sd")]
    pub b_sd: f64,
    pub p_sd: f64,
    pub r_sd: f64,
    pub resamples: usize,
    /// Resamples whose fit was degenerate or failed; excluded.
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub p: f64,
    pub r: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<FitIntervals>,
    pub diagnostics: FitDiagnostics,
}

impl DecayFit {
    pub fn predict(&self, m: usize) -> f64 {
        self.a + self.b * self.p.powi(m as i32)
    }
}

struct Data<'a> {
    pts: &'a [DecayPoint],
}

impl Data<'_> {
    /// Best `(A, B)` for fixed `p` and the resulting weighted RSS.
    fn project(&self, p: f64) -> (f64, f64, f64) {
        let (mut sw, mut sf, mut sff, mut sy, mut sfy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for pt in self.pts {
            let f = p.powi(pt.m as i32);
            sw += pt.weight;
            sf += pt.weight * f;
            sff += pt.weight * f * f;
            sy += pt.weight * pt.success;
            sfy += pt.weight * f * pt.success;
        }
        let det = sw * sff - sf * sf;
        let (a, b) = if det.abs() <= 1e-14 * (sw * sff).max(1e-300) {
            (sy / sw, 0.0)
        } else {
            ((sff * sy - sf * sfy) / det, (sw * sfy - sf * sy) / det)
        };
        (a, b, self.rss(a, b, p))
    }

    fn rss(&self, a: f64, b: f64, p: f64) -> f64 {
        self.pts
            .iter()
            .map(|pt| {
                let e = pt.success - a - b * p.powi(pt.m as i32);
                pt.weight * e * e
            })
            .sum()
    }

    fn golden(&self, mut lo: f64, mut hi: f64) -> f64 {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = hi - g * (hi - lo);
        let mut d = lo + g * (hi - lo);
        let (mut fc, mut fd) = (self.project(c).2, self.project(d).2);
        for _ in 0..200 {
            if hi - lo < 1e-15 {
                break;
            }
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - g * (hi - lo);
                fc = self.project(c).2;
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + g * (hi - lo);
                fd = self.project(d).2;
            }
        }
        (lo + hi) / 2.0
    }

    /// Damped Gauss-Newton on all three parameters, `p` kept in `[0, 1]`.
    fn polish(&self, mut a: f64, mut b: f64, mut p: f64) -> (f64, f64, f64) {
        let mut cost = self.rss(a, b, p);
        for _ in 0..100 {
            let mut jtj = Matrix3::<f64>::zeros();
            let mut jtr = Vector3::<f64>::zeros();
            for pt in self.pts {
                let m = pt.m as i32;
                let f = p.powi(m);
                let df = if m == 0 {
                    0.0
                } else {
                    m as f64 * p.powi(m - 1)
                };
                let j = Vector3::new(1.0, f, b * df);
                let r = pt.success - a - b * f;
                jtj += pt.weight * j * j.transpose();
                jtr += pt.weight * r * j;
            }
            let Some(step) = jtj.lu().solve(&jtr) else {
                break;
            };
            let mut scale = 1.0;
            let mut improved = false;
            while scale > 1e-6 {
                let (na, nb) = (a + scale * step[0], b + scale * step[1]);
                let np = (p + scale * step[2]).clamp(0.0, 1.0);
                let c = self.rss(na, nb, np);
                if c < cost {
                    improved = cost - c > 1e-30 * cost.max(1e-300);
                    a = na;
                    b = nb;
                    p = np;
                    cost = c;
                    break;
                }
                scale /= 2.0;
            }
            if !improved {
                break;
            }
        }
        (a, b, p)
    }
}

/// Per-length weights from binomial variances of the mean success over
/// `total_shots` shots, with the success floored away from 0 and 1.
pub fn binomial_weight(success: f64, total_shots: u64) -> f64 {
    let nshots = total_shots.max(1) as f64;
    let floor = 0.5 / nshots;
    let s = success.clamp(floor, 1.0 - floor);
    nshots / (s * (1.0 - s))
}

/// Fits `A + B p^m` to at least three distinct lengths.
pub fn fit_decay(points: &[DecayPoint], n: usize) -> Result<DecayFit> {
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| p.m);
    if pts.windows(2).any(|w| w[0].m == w[1].m) {
        return Err(Error::InsufficientData("duplicate lengths".into()));
    }
    if pts.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 distinct lengths, found {}",
            pts.len()
        )));
    }
    if pts
        .iter()
        .any(|p| !(p.weight > 0.0) || !p.success.is_finite())
    {
        return Err(Error::Fit(
            "weights must be positive and successes finite".into(),
        ));
    }
    let lengths: Vec<usize> = pts.iter().map(|p| p.m).collect();
    let data = Data { pts: &pts };

    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.success), hi.max(p.success))
        });
    if hi - lo <= 1e-12 {
        let a = pts.iter().map(|p| p.success * p.weight).sum::<f64>()
            / pts.iter().map(|p| p.weight).sum::<f64>();
        return Ok(DecayFit {
            n,
            a,
            b: 0.0,
            p: 1.0,
            r: 0.0,
            intervals: None,
            diagnostics: FitDiagnostics {
                residuals: pts.iter().map(|p| p.success - a).collect(),
                rss: data.rss(a, 0.0, 1.0),
                lengths,
                clamped: false,
                degenerate: true,
            },
        });
    }

    // Log-linear starting point with A₀ = 2⁻ⁿ.
    let a0 = 0.5f64.powi(n as i32);
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .filter(|p| p.success > a0)
        .map(|p| (p.m as f64, (p.success - a0).ln()))
        .collect();
    let mut candidates: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    if logs.len() >= 2 {
        let k = logs.len() as f64;
        let (sx, sy) = logs
            .iter()
            .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
        let sxx: f64 = logs.iter().map(|&(x, _)| x * x).sum();
        let sxy: f64 = logs.iter().map(|&(x, y)| x * y).sum();
        let den = k * sxx - sx * sx;
        if den.abs() > 0.0 {
            let slope = (k * sxy - sx * sy) / den;
            candidates.push(slope.exp().clamp(0.0, 1.0));
        }
    }
    let best = candidates
        .iter()
        .copied()
        .min_by(|&x, &y| data.project(x).2.total_cmp(&data.project(y).2))
        .expect("nonempty grid");
    let step = 1e-3;
    let p_ref = data.golden((best - step).max(0.0), (best + step).min(1.0));
    let p_ref = if data.project(p_ref).2 <= data.project(best).2 {
        p_ref
    } else {
        best
    };
    let (a, b, _) = data.project(p_ref);
    let (a, b, p) = data.polish(a, b, p_ref);
    let p = p.clamp(0.0, 1.0);
    let clamped = p <= 1e-12 || p >= 1.0 - 1e-12;

    Ok(DecayFit {
        n,
        a,
        b,
        p,
        r: drb_error_rate(p, n),
        intervals: None,
        diagnostics: FitDiagnostics {
            residuals: pts
                .iter()
                .map(|pt| pt.success - a - b * p.powi(pt.m as i32))
                .collect(),
            rss: data.rss(a, b, p),
            lengths,
            clamped,
            degenerate: false,
        },
    })
}
