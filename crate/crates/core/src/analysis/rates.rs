use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::sampling::{enumerate_pairings, SamplerKind, SamplerSpec};
use crate::sim::ErrorModel;

/// `ε_Ω`: the Ω-weighted mean of the exact layer error rates of `model`.
pub fn predict_r_from_rates(
    spec: &SamplerSpec,
    device: &DeviceSpec,
    model: &ErrorModel,
) -> Result<f64> {
    spec.validate(device)?;
    if model.n != device.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: device.num_qubits(),
            found: model.n,
        });
    }
    let mut cache: HashMap<Vec<(usize, usize)>, f64> = HashMap::new();
    let mut eps = |cnots: Vec<(usize, usize)>| -> Result<f64> {
        let mut key = cnots;
        key.sort_unstable();
        if let Some(&e) = cache.get(&key) {
            return Ok(e);
        }
        let e = model.mean_layer_error_rate(&key, &spec.pool)?;
        cache.insert(key, e);
        Ok(e)
    };
    let mean_over = |edges: &[(usize, usize)],
                     eps: &mut dyn FnMut(Vec<(usize, usize)>) -> Result<f64>|
     -> Result<f64> {
        let mut total = 0.0;
        for &e in edges {
            total += eps(vec![e])?;
        }
        Ok(total / edges.len() as f64)
    };
    match &spec.kind {
        SamplerKind::PCnot { p_cnot } => {
            let mut r = (1.0 - p_cnot) * eps(Vec::new())?;
            if *p_cnot > 0.0 {
                r += p_cnot * mean_over(device.edges(), &mut eps)?;
            }
            Ok(r)
        }
        SamplerKind::CategoryV { v, categories } => {
            let mut r = 0.0;
            for (&w, cat) in v.iter().zip(categories) {
                if w == 0.0 {
                    continue;
                }
                r += w * if cat.is_empty() {
                    eps(Vec::new())?
                } else {
                    mean_over(cat, &mut eps)?
                };
            }
            Ok(r)
        }
        SamplerKind::Pairing { p_cnot } => {
            let n = device.num_qubits();
            if n > 12 {
                return Err(Error::InvalidSampler(
                    "pairing predictions are limited to 12 qubits".into(),
                ));
            }
            let pairings = enumerate_pairings(n);
            let mut total = 0.0;
            for (pairs, _) in &pairings {
                // Each pair: no CNOT, or a CNOT in one of its orientations.
                let mut options: Vec<Vec<(f64, Option<(usize, usize)>)>> = Vec::new();
                for &(a, b) in pairs {
                    let orients: Vec<(usize, usize)> = [(a, b), (b, a)]
                        .into_iter()
                        .filter(|&(c, t)| device.has_edge(c, t))
                        .collect();
                    if orients.is_empty() {
                        options.push(vec![(1.0, None)]);
                    } else {
                        let mut o = vec![(1.0 - p_cnot, None)];
                        let share = p_cnot / orients.len() as f64;
                        o.extend(orients.into_iter().map(|e| (share, Some(e))));
                        options.push(o);
                    }
                }
                let mut stack: Vec<(usize, f64, Vec<(usize, usize)>)> = vec![(0, 1.0, Vec::new())];
                while let Some((i, w, cnots)) = stack.pop() {
                    if w == 0.0 {
                        continue;
                    }
                    if i == options.len() {
                        total += w * eps(cnots)?;
                        continue;
                    }
                    for &(pw, e) in &options[i] {
                        let mut next = cnots.clone();
                        next.extend(e);
                        stack.push((i + 1, w * pw, next));
                    }
                }
            }
            Ok(total / pairings.len() as f64)
        }
    }
}

/// Rows of `M` for category samplers: the `v` vector, or
/// `(p_cnot, 1 − p_cnot)` for CNOT-probability samplers.
pub fn category_mixing_matrix(specs: &[SamplerSpec]) -> Result<Vec<Vec<f64>>> {
    specs
        .iter()
        .map(|s| match &s.kind {
            SamplerKind::CategoryV { v, .. } => Ok(v.clone()),
            SamplerKind::PCnot { p_cnot } => Ok(vec![*p_cnot, 1.0 - p_cnot]),
            SamplerKind::Pairing { .. } => Err(Error::InvalidSampler(
                "pairing samplers do not define fixed category weights".into(),
            )),
        })
        .collect()
}

/// `r ≈ M ε` with one row per experiment and one column per layer category.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateSystem {
    pub mixing: Vec<Vec<f64>>,
    pub r: Vec<f64>,
    /// Standard deviation of each observed `r`.
    pub r_sd: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryRates {
    pub eps: Vec<f64>,
    pub eps_sd: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
}

/// Solves `M ε = r` (least squares when overdetermined) and propagates the
/// variances of `r` linearly.
pub fn solve_category_rates(system: &RateSystem) -> Result<CategoryRates> {
    let k = system.mixing.len();
    if k == 0 || system.r.len() != k || system.r_sd.len() != k {
        return Err(Error::InvalidDesign(
            "mixing, r and r_sd must have one entry per experiment".into(),
        ));
    }
    let c = system.mixing[0].len();
    for (i, row) in system.mixing.iter().enumerate() {
        if row.len() != c {
            return Err(Error::InvalidDesign(format!(
                "mixing[{i}]: expected {c} columns"
            )));
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDesign(format!(
                "mixing[{i}]: row sums to {s}, not 1"
            )));
        }
    }
    if k < c {
        return Err(Error::InvalidDesign(format!(
            "{k} experiments cannot determine {c} categories"
        )));
    }
    let m = DMatrix::from_fn(k, c, |i, j| system.mixing[i][j]);
    let singular = || Error::InvalidDesign("mixing: matrix is singular".into());
    let sv = m.clone().singular_values();
    if sv.min() <= 1e-12 * sv.max() {
        return Err(singular());
    }
    let mt = m.transpose();
    let gram = &mt * &m;
    let inv = gram.try_inverse().ok_or_else(singular)?;
    if inv.iter().any(|x| !x.is_finite()) {
        return Err(singular());
    }
    let g = inv * mt;
    let eps = &g * DVector::from_vec(system.r.clone());
    let var = DMatrix::from_diagonal(&DVector::from_iterator(
        k,
        system.r_sd.iter().map(|s| s * s),
    ));
    let cov = &g * var * g.transpose();
    Ok(CategoryRates {
        eps: eps.iter().copied().collect(),
        eps_sd: (0..c).map(|i| cov[(i, i)].max(0.0).sqrt()).collect(),
        covariance: (0..c)
            .map(|i| (0..c).map(|j| cov[(i, j)]).collect())
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildingBlockRates {
    pub eps_local: f64,
    pub eps_local_sd: f64,
    /// Error rate of each CNOT class with the one-qubit gates removed.
    pub cnot_classes: Vec<f64>,
    pub cnot_classes_sd: Vec<f64>,
    /// Mean over the CNOT classes.
    pub eps_cnot: f64,
    pub eps_cnot_sd: f64,
    /// Some rate fell outside `[0, 1]`.
    pub flagged: bool,
}

/// Inverts `ε₁ = 1 − (1 − ε_local)ⁿ` for the one-qubit category and
/// `ε_k = 1 − (1 − ε_local)^{n−2}(1 − ε_cnot,k)` for every other category.
pub fn extract_building_block_rates(
    rates: &CategoryRates,
    one_qubit: usize,
    n: usize,
) -> Result<BuildingBlockRates> {
    let c = rates.eps.len();
    if one_qubit >= c {
        return Err(Error::InvalidDesign(format!(
            "category {one_qubit} does not exist"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidDesign(
            "CNOT rates need at least 2 qubits".into(),
        ));
    }
    let nf = n as f64;
    let e1 = rates.eps[one_qubit];
    let u = 1.0 - e1;
    let mut flagged = !(0.0..1.0).contains(&e1);
    let u_safe = u.max(f64::MIN_POSITIVE);
    let eps_local = 1.0 - u_safe.powf(1.0 / nf);
    let a = (nf - 2.0) / nf;

    let quad = |g: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..c {
            for j in 0..c {
                s += g[i] * rates.covariance[i][j] * g[j];
            }
        }
        s.max(0.0).sqrt()
    };
    let mut g_local = vec![0.0; c];
    g_local[one_qubit] = u_safe.powf(1.0 / nf - 1.0) / nf;

    let mut classes = Vec::new();
    let mut grads = Vec::new();
    for k in (0..c).filter(|&k| k != one_qubit) {
        let ek = rates.eps[k];
        let class = 1.0 - (1.0 - ek) * u_safe.powf(-a);
        flagged |= !(0.0..=1.0).contains(&class);
        let mut g = vec![0.0; c];
        g[k] = u_safe.powf(-a);
        g[one_qubit] = -(1.0 - ek) * a * u_safe.powf(-a - 1.0);
        classes.push(class);
        grads.push(g);
    }
    let kc = classes.len().max(1) as f64;
    let eps_cnot = classes.iter().sum::<f64>() / kc;
    let g_mean: Vec<f64> = (0..c)
        .map(|i| grads.iter().map(|g| g[i]).sum::<f64>() / kc)
        .collect();
    Ok(BuildingBlockRates {
        eps_local,
        eps_local_sd: quad(&g_local),
        cnot_classes_sd: grads.iter().map(|g| quad(g)).collect(),
        cnot_classes: classes,
        eps_cnot,
        eps_cnot_sd: quad(&g_mean),
        flagged,
    })
}

/// `r_rcrb = 1 − (1 − r)^{1/α}`.
pub fn crb_rescale(r: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidDesign(format!(
            "alpha: {alpha} must be positive"
        )));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidDesign(format!("r: {r} is not in [0, 1)")));
    }
    Ok(1.0 - (1.0 - r).powf(1.0 / alpha))
}
