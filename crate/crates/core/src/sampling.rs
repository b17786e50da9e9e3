//! Uniform sampling of symplectic matrices, Cliffords and stabilizer states,
//! and the layer distributions `Ω` used by direct benchmarking.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::bits::{BitMatrix, BitVec};
use crate::circuit::{conjugate_by_gate, Gate, GateLabel, Layer};
use crate::clifford::{one_qubit_table, phase_parities, CliffordOp};
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliOp};
use crate::rng::Rng;
use crate::stabilizer::StabilizerState;

// ---------------------------------------------------------------------------
// Uniform group sampling (transvection construction in the interleaved basis
// x_0, z_0, x_1, z_1, …).

fn inner(a: &BitVec, b: &BitVec) -> bool {
    let mut acc = false;
    for i in (0..a.len()).step_by(2) {
        acc ^= (a.get(i) & b.get(i + 1)) ^ (a.get(i + 1) & b.get(i));
    }
    acc
}

fn transvection(k: &BitVec, v: &mut BitVec) {
    if inner(k, v) {
        v.xor_assign(k);
    }
}

/// Two transvection vectors `h1, h2` with `y = T_{h1} T_{h2} x`.
fn find_transvection(x: &BitVec, y: &BitVec) -> [BitVec; 2] {
    let len = x.len();
    let zero = BitVec::zeros(len);
    if x == y {
        return [zero.clone(), zero];
    }
    if inner(x, y) {
        let mut h = x.clone();
        h.xor_assign(y);
        return [h, zero];
    }
    let pair = |v: &BitVec, i: usize| v.get(i) || v.get(i + 1);
    let mut z = BitVec::zeros(len);
    for i in (0..len).step_by(2) {
        if pair(x, i) && pair(y, i) {
            z.set(i, x.get(i) ^ y.get(i));
            z.set(i + 1, x.get(i + 1) ^ y.get(i + 1));
            if !z.get(i) && !z.get(i + 1) {
                z.set(i + 1, true);
                if x.get(i) != x.get(i + 1) {
                    z.set(i, true);
                }
            }
            let mut h1 = x.clone();
            h1.xor_assign(&z);
            let mut h2 = y.clone();
            h2.xor_assign(&z);
            return [h1, h2];
        }
    }
    for i in (0..len).step_by(2) {
        if pair(x, i) && !pair(y, i) {
            if x.get(i) == x.get(i + 1) {
                z.set(i + 1, true);
            } else {
                z.set(i + 1, x.get(i));
                z.set(i, x.get(i + 1));
            }
            break;
        }
    }
    for i in (0..len).step_by(2) {
        if !pair(x, i) && pair(y, i) {
            if y.get(i) == y.get(i + 1) {
                z.set(i + 1, true);
            } else {
                z.set(i + 1, y.get(i));
                z.set(i, y.get(i + 1));
            }
            break;
        }
    }
    let mut h1 = x.clone();
    h1.xor_assign(&z);
    let mut h2 = y.clone();
    h2.xor_assign(&z);
    [h1, h2]
}

fn random_bits(len: usize, rng: &mut Rng) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        v.set(i, rng.gen());
    }
    v
}

/// Uniform element of `Sp(2n, 2)` as rows in the interleaved basis.
fn symplectic_interleaved(n: usize, rng: &mut Rng) -> Vec<BitVec> {
    let nn = 2 * n;
    let f1 = loop {
        let v = random_bits(nn, rng);
        if !v.is_zero() {
            break v;
        }
    };
    let e1 = BitVec::unit(nn, 0);
    let t = find_transvection(&e1, &f1);
    let bits = random_bits(nn - 1, rng);
    let mut eprime = e1.clone();
    for j in 2..nn {
        eprime.set(j, bits.get(j - 1));
    }
    let mut h0 = eprime;
    transvection(&t[0], &mut h0);
    transvection(&t[1], &mut h0);
    let f1 = if bits.get(0) { BitVec::zeros(nn) } else { f1 };

    let mut g: Vec<BitVec> = (0..nn).map(|j| BitVec::unit(nn, j)).collect();
    if n > 1 {
        let sub = symplectic_interleaved(n - 1, rng);
        for (r, row) in sub.iter().enumerate() {
            let mut full = BitVec::zeros(nn);
            for c in row.iter_ones() {
                full.set(c + 2, true);
            }
            g[r + 2] = full;
        }
    }
    for row in &mut g {
        transvection(&t[0], row);
        transvection(&t[1], row);
        transvection(&h0, row);
        transvection(&f1, row);
    }
    g
}

/// A uniformly random `2n × 2n` symplectic matrix in `(x | z)` coordinates.
pub fn sample_symplectic_uniform(n: usize, rng: &mut Rng) -> BitMatrix {
    assert!(n >= 1, "n must be at least 1");
    let g = symplectic_interleaved(n, rng);
    // interleaved index 2q ↦ q, 2q+1 ↦ n+q
    let map = |i: usize| {
        if i.is_multiple_of(2) {
            i / 2
        } else {
            n + i / 2
        }
    };
    let mut s = BitMatrix::zeros(2 * n, 2 * n);
    for (r, row) in g.iter().enumerate() {
        for c in row.iter_ones() {
            s.set(map(r), map(c), true);
        }
    }
    s
}

/// A uniformly random Clifford (modulo global phase).
pub fn sample_clifford_uniform(n: usize, rng: &mut Rng) -> CliffordOp {
    let s = sample_symplectic_uniform(n, rng);
    let v: Vec<u8> = phase_parities(&s)
        .into_iter()
        .map(|par| par + 2 * u8::from(rng.gen::<bool>()))
        .collect();
    CliffordOp::from_parts(&s, &v).expect("sampled pair is valid")
}

/// A uniformly random stabilizer state `C|0…0⟩`.
pub fn sample_stabilizer_state_uniform(n: usize, rng: &mut Rng) -> StabilizerState {
    StabilizerState::from_clifford(&sample_clifford_uniform(n, rng))
}

/// A uniformly random Hermitian `n`-qubit Pauli (identity included).
pub fn sample_pauli_uniform(n: usize, rng: &mut Rng) -> PauliOp {
    PauliOp::hermitian(random_bits(n, rng), random_bits(n, rng))
}

// ---------------------------------------------------------------------------
// Layer samplers.

/// The one-qubit gates a sampler draws from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPool", into = "RawPool")]
#[derive(Default)]
pub enum GatePool {
    /// `{I, H, P}`.
    #[default]
    Hpi,
    /// `C00…C23`.
    C24,
    Custom(Vec<Gate>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPool {
    Named(String),
    List(Vec<String>),
}

impl TryFrom<RawPool> for GatePool {
    type Error = Error;

    fn try_from(raw: RawPool) -> Result<Self> {
        match raw {
            RawPool::Named(s) if s == "HPI" => Ok(GatePool::Hpi),
            RawPool::Named(s) if s == "C24" => Ok(GatePool::C24),
            RawPool::Named(s) => Err(Error::Parse(format!("unknown gate pool `{s}`"))),
            RawPool::List(names) => Ok(GatePool::Custom(
                names.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            )),
        }
    }
}

impl From<GatePool> for RawPool {
    fn from(p: GatePool) -> Self {
        match p {
            GatePool::Hpi => RawPool::Named("HPI".into()),
            GatePool::C24 => RawPool::Named("C24".into()),
            GatePool::Custom(g) => RawPool::List(g.iter().map(Gate::name).collect()),
        }
    }
}

impl GatePool {
    pub fn gates(&self) -> Vec<Gate> {
        match self {
            GatePool::Hpi => vec![Gate::I, Gate::H, Gate::P],
            GatePool::C24 => (0..24).map(Gate::C).collect(),
            GatePool::Custom(g) => g.clone(),
        }
    }

    /// True when the pool generates the full one-qubit Clifford group.
    pub fn generates_one_qubit_cliffords(&self) -> bool {
        let t = one_qubit_table();
        let gens: Vec<u8> = self
            .gates()
            .iter()
            .filter_map(Gate::one_qubit_index)
            .collect();
        let mut seen = [false; 24];
        seen[t.identity as usize] = true;
        let mut stack = vec![t.identity];
        while let Some(c) = stack.pop() {
            for &g in &gens {
                let d = t.then(c, g);
                if !std::mem::replace(&mut seen[d as usize], true) {
                    stack.push(d);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Layer-sampling algorithm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SamplerKind {
    /// With probability `p_cnot` one uniformly chosen CNOT, one-qubit gates elsewhere.
    #[serde(rename = "p_cnot")]
    PCnot { p_cnot: f64 },
    /// Category `k` drawn with probability `v[k]`; a category is a list of
    /// CNOT edges (empty means one-qubit gates only) from which one is drawn
    /// uniformly.
    #[serde(rename = "category_v")]
    CategoryV {
        v: Vec<f64>,
        categories: Vec<Vec<(usize, usize)>>,
    },
    /// Random pairing of the qubits; each connected pair gets a CNOT with
    /// probability `p_cnot`.
    #[serde(rename = "pairing")]
    Pairing { p_cnot: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    #[serde(flatten)]
    pub kind: SamplerKind,
    #[serde(default)]
    pub pool: GatePool,
}

impl SamplerSpec {
    pub fn p_cnot(p_cnot: f64, pool: GatePool) -> Self {
        Self {
            kind: SamplerKind::PCnot { p_cnot },
            pool,
        }
    }

    pub fn pairing(p_cnot: f64, pool: GatePool) -> Self {
        Self {
            kind: SamplerKind::Pairing { p_cnot },
            pool,
        }
    }

    pub fn category_v(v: Vec<f64>, categories: Vec<Vec<(usize, usize)>>, pool: GatePool) -> Self {
        Self {
            kind: SamplerKind::CategoryV { v, categories },
            pool,
        }
    }

    /// The three-category distribution on [`DeviceSpec::crosstalk5`]:
    /// one-qubit layers, a ring CNOT, or a centre CNOT.
    pub fn crosstalk5_categories(v: [f64; 3]) -> Self {
        let ring = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let centre = vec![(4, 0), (4, 1), (4, 2), (4, 3)];
        Self::category_v(v.to_vec(), vec![vec![], ring, centre], GatePool::Hpi)
    }

    /// Checks probabilities, edges and the pool against `device`.
    pub fn validate(&self, device: &DeviceSpec) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidSampler(format!(
                    "{name}: {p} is not in [0, 1]"
                )))
            }
        };
        let gates = self.pool.gates();
        if gates.is_empty() {
            return Err(Error::InvalidSampler("pool: empty".into()));
        }
        for (i, g) in gates.iter().enumerate() {
            if g.arity() != 1 {
                return Err(Error::InvalidSampler(format!(
                    "pool[{i}]: {g} is not a one-qubit gate"
                )));
            }
            if !device.gate_set().contains(*g) {
                return Err(Error::InvalidSampler(format!(
                    "pool[{i}]: {g} is not in gate set {}",
                    device.gate_set().name()
                )));
            }
            if gates[..i].contains(g) {
                return Err(Error::InvalidSampler(format!(
                    "pool[{i}]: duplicate gate {g}"
                )));
            }
        }
        match &self.kind {
            SamplerKind::PCnot { p_cnot } => {
                prob("p_cnot", *p_cnot)?;
                if *p_cnot > 0.0 && device.edges().is_empty() {
                    return Err(Error::InvalidSampler(
                        "p_cnot: positive but the device has no edges".into(),
                    ));
                }
            }
            SamplerKind::Pairing { p_cnot } => prob("p_cnot", *p_cnot)?,
            SamplerKind::CategoryV { v, categories } => {
                if v.len() != categories.len() {
                    return Err(Error::InvalidSampler(format!(
                        "v: {} weights for {} categories",
                        v.len(),
                        categories.len()
                    )));
                }
                for (k, &p) in v.iter().enumerate() {
                    prob(&format!("v[{k}]"), p)?;
                }
                let total: f64 = v.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidSampler(format!("v: sums to {total}, not 1")));
                }
                for (k, cat) in categories.iter().enumerate() {
                    for &(c, t) in cat {
                        if !device.has_edge(c, t) {
                            return Err(Error::InvalidSampler(format!(
                                "categories[{k}]: {c}->{t} is not a device edge"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the layers can reach every Clifford: the pool generates the
    /// one-qubit group and, for `n > 1`, CNOTs occur on a connected device.
    pub fn check_generating(&self, device: &DeviceSpec) -> Result<()> {
        if !self.pool.generates_one_qubit_cliffords() {
            return Err(Error::InvalidSampler(
                "pool: does not generate the one-qubit Clifford group".into(),
            ));
        }
        if device.num_qubits() > 1 {
            let cnots = match &self.kind {
                SamplerKind::PCnot { p_cnot } | SamplerKind::Pairing { p_cnot } => *p_cnot > 0.0,
                SamplerKind::CategoryV { v, categories } => v
                    .iter()
                    .zip(categories)
                    .any(|(&p, c)| p > 0.0 && !c.is_empty()),
            };
            if !cnots || !device.is_connected() {
                return Err(Error::InvalidSampler(
                    "layers never entangle all qubits with each other".into(),
                ));
            }
        }
        Ok(())
    }
}

fn fill_one_qubit(gates: &mut Vec<GateLabel>, used: &[bool], pool: &[Gate], rng: &mut Rng) {
    for (q, &u) in used.iter().enumerate() {
        if !u {
            gates.push(GateLabel::one(*pool.choose(rng).expect("nonempty pool"), q));
        }
    }
}

fn finish(mut gates: Vec<GateLabel>) -> Layer {
    gates.sort_by_key(|g| g.targets[0]);
    Layer::new(gates)
}

fn with_cnot(n: usize, edge: Option<(usize, usize)>, pool: &[Gate], rng: &mut Rng) -> Layer {
    let mut gates = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if let Some((c, t)) = edge {
        gates.push(GateLabel::cnot(c, t));
        used[c] = true;
        used[t] = true;
    }
    fill_one_qubit(&mut gates, &used, pool, rng);
    finish(gates)
}

/// Draws one layer from `spec` on `device`.
pub fn sample_layer(spec: &SamplerSpec, device: &DeviceSpec, rng: &mut Rng) -> Result<Layer> {
    spec.validate(device)?;
    Ok(sample_layer_unchecked(
        spec,
        device,
        &spec.pool.gates(),
        rng,
    ))
}

pub(crate) fn sample_layer_unchecked(
    spec: &SamplerSpec,
    device: &DeviceSpec,
    pool: &[Gate],
    rng: &mut Rng,
) -> Layer {
    let n = device.num_qubits();
    match &spec.kind {
        SamplerKind::PCnot { p_cnot } => {
            let edge = (rng.gen::<f64>() < *p_cnot)
                .then(|| *device.edges().choose(rng).expect("validated edges"));
            with_cnot(n, edge, pool, rng)
        }
        SamplerKind::CategoryV { v, categories } => {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let mut k = v.len() - 1;
            for (i, &p) in v.iter().enumerate() {
                acc += p;
                if u < acc {
                    k = i;
                    break;
                }
            }
            let edge = categories[k].choose(rng).copied();
            with_cnot(n, edge, pool, rng)
        }
        SamplerKind::Pairing { p_cnot } => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut gates = Vec::with_capacity(n);
            let mut used = vec![false; n];
            for pair in order.chunks_exact(2) {
                let (a, b) = (pair[0], pair[1]);
                let orients: Vec<(usize, usize)> = [(a, b), (b, a)]
                    .into_iter()
                    .filter(|&(c, t)| device.has_edge(c, t))
                    .collect();
                if !orients.is_empty() && rng.gen::<f64>() < *p_cnot {
                    let (c, t) = *orients.choose(rng).unwrap();
                    gates.push(GateLabel::cnot(c, t));
                    used[c] = true;
                    used[t] = true;
                }
            }
            fill_one_qubit(&mut gates, &used, pool, rng);
            finish(gates)
        }
    }
}

/// Exact probability `Ω(layer)` of drawing `layer` from `spec`.
pub fn layer_probability(spec: &SamplerSpec, device: &DeviceSpec, layer: &Layer) -> Result<f64> {
    let n = device.num_qubits();
    layer.check(n)?;
    spec.validate(device)?;
    let pool = spec.pool.gates();
    let g = pool.len() as f64;
    let mut cnots = Vec::new();
    let mut covered = 0;
    for gl in &layer.gates {
        covered += gl.targets.len();
        if gl.gate == Gate::Cnot {
            cnots.push((gl.targets[0], gl.targets[1]));
        } else if !pool.contains(&gl.gate) {
            return Ok(0.0);
        }
    }
    if covered != n || cnots.iter().any(|&(c, t)| !device.has_edge(c, t)) {
        return Ok(0.0);
    }
    let ones = (n - 2 * cnots.len()) as i32;
    let pool_factor = g.powi(-ones);
    Ok(match &spec.kind {
        SamplerKind::PCnot { p_cnot } => match cnots.len() {
            0 => (1.0 - p_cnot) * pool_factor,
            1 => p_cnot / device.edges().len() as f64 * pool_factor,
            _ => 0.0,
        },
        SamplerKind::CategoryV { v, categories } => match cnots.len() {
            0 => {
                v.iter()
                    .zip(categories)
                    .filter(|(_, c)| c.is_empty())
                    .map(|(p, _)| p)
                    .sum::<f64>()
                    * pool_factor
            }
            1 => {
                v.iter()
                    .zip(categories)
                    .filter(|(_, c)| c.contains(&cnots[0]))
                    .map(|(p, c)| p / c.len() as f64)
                    .sum::<f64>()
                    * pool_factor
            }
            _ => 0.0,
        },
        SamplerKind::Pairing { p_cnot } => {
            let orientations = |a: usize, b: usize| {
                usize::from(device.has_edge(a, b)) + usize::from(device.has_edge(b, a))
            };
            let mut weight = pool_factor;
            let mut in_cnot = vec![false; n];
            for &(c, t) in &cnots {
                weight *= p_cnot / orientations(c, t) as f64;
                in_cnot[c] = true;
                in_cnot[t] = true;
            }
            let rest: Vec<usize> = (0..n).filter(|&q| !in_cnot[q]).collect();
            let pair_weight = |a: usize, b: usize| {
                if orientations(a, b) > 0 {
                    1.0 - p_cnot
                } else {
                    1.0
                }
            };
            weight * matching_sum(&rest, &pair_weight) / pairing_count(n)
        }
    })
}

/// Number of pairings produced by pairing consecutive entries of a random
/// permutation: `(n-1)!!` for even `n`, `n·(n-2)!!` for odd `n`.
fn pairing_count(n: usize) -> f64 {
    let mut count = 1.0;
    let mut k = if n.is_multiple_of(2) {
        n.saturating_sub(1)
    } else {
        n
    };
    while k > 1 {
        count *= k as f64;
        k -= 2;
    }
    count
}

/// Sum over all (near-)perfect matchings of `qs` of the product of pair weights.
fn matching_sum(qs: &[usize], w: &dyn Fn(usize, usize) -> f64) -> f64 {
    match qs.len() {
        0 | 1 => 1.0,
        len if len % 2 == 1 => {
            // choose the unpaired element
            (0..len)
                .map(|i| {
                    let rest: Vec<usize> = qs
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &q)| q)
                        .collect();
                    matching_sum(&rest, w)
                })
                .sum()
        }
        _ => {
            let first = qs[0];
            (1..qs.len())
                .map(|i| {
                    let rest: Vec<usize> = qs[1..]
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j + 1 != i)
                        .map(|(_, &q)| q)
                        .collect();
                    w(first, qs[i]) * matching_sum(&rest, w)
                })
                .sum()
        }
    }
}

/// Enumerates every perfect or near-perfect pairing of `0..n` as pair lists
/// plus the unpaired qubit, each equally likely under the pairing sampler.
pub fn enumerate_pairings(n: usize) -> Vec<(Vec<(usize, usize)>, Option<usize>)> {
    fn rec(
        qs: &[usize],
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<(Vec<(usize, usize)>, Option<usize>)>,
        single: Option<usize>,
    ) {
        if qs.is_empty() {
            out.push((acc.clone(), single));
            return;
        }
        let first = qs[0];
        for i in 1..qs.len() {
            let rest: Vec<usize> = qs[1..]
                .iter()
                .enumerate()
                .filter(|&(j, _)| j + 1 != i)
                .map(|(_, &q)| q)
                .collect();
            acc.push((first, qs[i]));
            rec(&rest, acc, out, single);
            acc.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&all, &mut Vec::new(), &mut out, None);
    } else {
        for u in 0..n {
            let rest: Vec<usize> = all.iter().copied().filter(|&q| q != u).collect();
            rec(&rest, &mut Vec::new(), &mut out, Some(u));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Error-spreading diagnostic.

/// Where the layers of the spreading diagnostic come from.
#[derive(Clone, Debug)]
pub enum LayerSource {
    Sampler(SamplerSpec),
    /// Each layer is a uniformly random `n`-qubit Clifford.
    UniformClifford,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadingProfile {
    /// Mean weight after layer `d + 1`.
    pub mean_weight: Vec<f64>,
    /// `histogram[d][w]`: trials with weight `w` after layer `d + 1`.
    pub histogram: Vec<Vec<u64>>,
    /// Probability that a fresh uniform weight-one error equals the
    /// propagated one (and so cancels it), after each layer.
    pub collision_proxy: Vec<f64>,
}

/// Propagates random weight-one Paulis through random layers and records
/// how their weight grows.
pub fn estimate_error_spreading(
    source: &LayerSource,
    device: &DeviceSpec,
    trials: usize,
    depth: usize,
    rng: &mut Rng,
) -> Result<SpreadingProfile> {
    if depth == 0 {
        return Err(Error::InvalidDesign("depth must be at least 1".into()));
    }
    let n = device.num_qubits();
    let pool = match source {
        LayerSource::Sampler(spec) => {
            spec.validate(device)?;
            spec.pool.gates()
        }
        LayerSource::UniformClifford => Vec::new(),
    };
    let mut histogram = vec![vec![0u64; n + 1]; depth];
    for _ in 0..trials {
        let q = rng.gen_range(0..n);
        let letter = *Pauli1::NON_IDENTITY.choose(rng).unwrap();
        let mut p = PauliOp::single(n, q, letter);
        for row in histogram.iter_mut() {
            match source {
                LayerSource::Sampler(spec) => {
                    let layer = sample_layer_unchecked(spec, device, &pool, rng);
                    for g in &layer.gates {
                        conjugate_by_gate(&mut p, g);
                    }
                }
                LayerSource::UniformClifford => {
                    p = sample_clifford_uniform(n, rng).conjugate_unchecked(&p);
                }
            }
            row[p.weight()] += 1;
        }
    }
    let t = trials.max(1) as f64;
    let mean_weight = histogram
        .iter()
        .map(|h| {
            h.iter()
                .enumerate()
                .map(|(w, &c)| w as f64 * c as f64)
                .sum::<f64>()
                / t
        })
        .collect();
    let collision_proxy = histogram
        .iter()
        .map(|h| h[1] as f64 / t / (3 * n) as f64)
        .collect();
    Ok(SpreadingProfile {
        mean_weight,
        histogram,
        collision_proxy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateSet;
    use crate::rng::rng_from_seed;

    #[test]
    fn sampled_matrices_are_symplectic() {
        let mut rng = rng_from_seed(1);
        for n in 1..=6 {
            for _ in 0..50 {
                assert!(sample_symplectic_uniform(n, &mut rng).is_symplectic());
            }
        }
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(pairing_count(4), 3.0);
        assert_eq!(pairing_count(5), 15.0);
        assert_eq!(enumerate_pairings(4).len(), 3);
        assert_eq!(enumerate_pairings(5).len(), 15);
        assert_eq!(enumerate_pairings(6).len(), 15);
    }

    #[test]
    fn pool_generation() {
        assert!(GatePool::Hpi.generates_one_qubit_cliffords());
        assert!(GatePool::C24.generates_one_qubit_cliffords());
        assert!(!GatePool::Custom(vec![Gate::I, Gate::H]).generates_one_qubit_cliffords());
    }

    #[test]
    fn sampler_json() {
        let s = SamplerSpec::p_cnot(0.75, GatePool::C24);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"kind":"p_cnot","p_cnot":0.75,"pool":"C24"}"#);
        assert_eq!(serde_json::from_str::<SamplerSpec>(&j).unwrap(), s);
        let d: SamplerSpec =
            serde_json::from_str(r#"{"kind":"pairing","p_cnot":0.5,"pool":["I","H","P"]}"#)
                .unwrap();
        assert_eq!(d.pool.gates(), vec![Gate::I, Gate::H, Gate::P]);
        let dev = DeviceSpec::ring(3, GateSet::Hpi);
        assert!(d.validate(&dev).is_ok());
    }
}
