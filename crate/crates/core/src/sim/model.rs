//! Pauli-stochastic error models.
//!
//! Every gate is followed by the independent error terms of its entry; core
//! layers may additionally be followed by layer-wide terms, and each measured
//! bit flips with its readout probability. Error rates are exact: the
//! probability that the product of all independent terms is the identity is
//! `4^-k Σ_Q Π_t λ_t(Q)` over each connected block of `k` qubits, where
//! `λ_t(Q)` is the expectation of the sign `±1` with which `Q` commutes with
//! the error drawn by term `t`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuit::{Gate, GateLabel, Layer};
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::pauli::PauliOp;
use crate::sampling::GatePool;

/// Qubits an error term acts on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSupport", into = "RawSupport")]
pub enum Support {
    /// The qubits of the gate.
    #[default]
    Targets,
    /// Every qubit of the device.
    All,
    Qubits(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawSupport {
    Keyword(String),
    Qubits(Vec<usize>),
}

impl TryFrom<RawSupport> for Support {
    type Error = String;

    fn try_from(raw: RawSupport) -> std::result::Result<Self, String> {
        match raw {
            RawSupport::Keyword(k) if k == "targets" => Ok(Support::Targets),
            RawSupport::Keyword(k) if k == "all" => Ok(Support::All),
            RawSupport::Keyword(k) => Err(format!("unknown support `{k}`")),
            RawSupport::Qubits(q) => Ok(Support::Qubits(q)),
        }
    }
}

impl From<Support> for RawSupport {
    fn from(s: Support) -> Self {
        match s {
            Support::Targets => RawSupport::Keyword("targets".into()),
            Support::All => RawSupport::Keyword("all".into()),
            Support::Qubits(q) => RawSupport::Qubits(q),
        }
    }
}

/// One independent source of Pauli errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorTerm {
    /// Each qubit independently suffers a uniform `X`, `Y` or `Z` with probability `p`.
    Local {
        p: f64,
        #[serde(default)]
        on: Support,
    },
    /// With probability `p`, a uniform Pauli (identity included) on the support.
    Uniform {
        p: f64,
        #[serde(default)]
        on: Support,
    },
    /// With probability `p`, a uniform non-identity Pauli on the support.
    NonIdentity {
        p: f64,
        #[serde(default)]
        on: Support,
    },
    /// With probability `p`, the given Pauli, one letter per support qubit.
    Fixed {
        p: f64,
        pauli: String,
        #[serde(default)]
        on: Support,
    },
}

impl ErrorTerm {
    pub fn local(p: f64, on: Support) -> Self {
        ErrorTerm::Local { p, on }
    }

    pub fn probability(&self) -> f64 {
        match self {
            ErrorTerm::Local { p, .. }
            | ErrorTerm::Uniform { p, .. }
            | ErrorTerm::NonIdentity { p, .. }
            | ErrorTerm::Fixed { p, .. } => *p,
        }
    }

    pub fn support(&self) -> &Support {
        match self {
            ErrorTerm::Local { on, .. }
            | ErrorTerm::Uniform { on, .. }
            | ErrorTerm::NonIdentity { on, .. }
            | ErrorTerm::Fixed { on, .. } => on,
        }
    }
}

/// Error terms following a gate. `gate` is a gate name or `*`; an entry
/// with `qubits` only applies to that exact target list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateErrors {
    pub gate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits: Option<Vec<usize>>,
    #[serde(default)]
    pub terms: Vec<ErrorTerm>,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    pub n: usize,
    #[serde(default)]
    pub gates: Vec<GateErrors>,
    /// Terms applied after every core layer.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub layer_terms: Vec<ErrorTerm>,
    /// Per-qubit probability of flipping the measured bit; empty means none.
    #[serde(default)]
    pub readout: Vec<f64>,
    /// Whether preparation and measurement gates carry their gate errors.
    #[serde(default = "default_true")]
    pub sspam_gate_errors: bool,
}

/// An error term bound to concrete qubits.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BoundTerm {
    pub kind: BoundKind,
    pub p: f64,
    pub qubits: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum BoundKind {
    Local,
    Uniform,
    NonIdentity,
    /// Per-support-qubit Pauli codes packed two bits each (`x | z << 1`).
    Fixed(u128),
}

fn pauli_code(c: char) -> Option<u8> {
    match c {
        'I' => Some(0),
        'X' => Some(1),
        'Z' => Some(2),
        'Y' => Some(3),
        _ => None,
    }
}

#[inline]
fn anticommutes(a: u8, b: u8) -> bool {
    ((a & 1) & (b >> 1)) ^ ((a >> 1) & (b & 1)) == 1
}

impl BoundTerm {
    /// `λ(Q)` for `Q` given as one code per support qubit.
    fn fidelity(&self, codes: impl Iterator<Item = u8>) -> f64 {
        let k = self.qubits.len() as i32;
        match self.kind {
            BoundKind::Local => {
                let nontrivial = codes.filter(|&c| c != 0).count() as i32;
                (1.0 - 4.0 * self.p / 3.0).powi(nontrivial)
            }
            BoundKind::Uniform => {
                if codes.into_iter().all(|c| c == 0) {
                    1.0
                } else {
                    1.0 - self.p
                }
            }
            BoundKind::NonIdentity => {
                if codes.into_iter().all(|c| c == 0) {
                    1.0
                } else {
                    let d = 4f64.powi(k);
                    1.0 - self.p * d / (d - 1.0)
                }
            }
            BoundKind::Fixed(packed) => {
                let anti = codes
                    .enumerate()
                    .filter(|&(i, c)| anticommutes(c, ((packed >> (2 * i)) & 3) as u8))
                    .count();
                if anti % 2 == 1 {
                    1.0 - 2.0 * self.p
                } else {
                    1.0
                }
            }
        }
    }
}

/// `λ` as a table over the Paulis on `qubits` (two bits per qubit).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Factor {
    pub qubits: Vec<usize>,
    pub table: Vec<f64>,
}

const MAX_FACTOR_QUBITS: usize = 10;

impl Factor {
    fn one() -> Self {
        Factor {
            qubits: Vec::new(),
            table: vec![1.0],
        }
    }

    fn index_in(&self, global: &dyn Fn(usize) -> u8) -> usize {
        self.qubits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &q)| acc | (global(q) as usize) << (2 * i))
    }

    fn eval(&self, global: &dyn Fn(usize) -> u8) -> f64 {
        self.table[self.index_in(global)]
    }

    fn tabulate(qubits: Vec<usize>, f: impl Fn(&dyn Fn(usize) -> u8) -> f64) -> Result<Self> {
        if qubits.len() > MAX_FACTOR_QUBITS {
            return Err(Error::InvalidModel(format!(
                "exact error rates need error supports of at most {MAX_FACTOR_QUBITS} qubits"
            )));
        }
        let size = 1usize << (2 * qubits.len());
        let table = (0..size)
            .map(|idx| {
                let code = |q: usize| {
                    let i = qubits
                        .iter()
                        .position(|&x| x == q)
                        .expect("qubit in support");
                    ((idx >> (2 * i)) & 3) as u8
                };
                f(&code)
            })
            .collect();
        Ok(Factor { qubits, table })
    }

    fn from_terms(terms: &[BoundTerm]) -> Result<Self> {
        let mut qubits: Vec<usize> = terms
            .iter()
            .flat_map(|t| t.qubits.iter().copied())
            .collect();
        qubits.sort_unstable();
        qubits.dedup();
        Self::tabulate(qubits, |code| {
            terms
                .iter()
                .map(|t| t.fidelity(t.qubits.iter().map(|&q| code(q))))
                .product()
        })
    }

    /// Pointwise mean of several factors.
    fn average(factors: &[Factor]) -> Result<Self> {
        if factors.is_empty() {
            return Ok(Self::one());
        }
        let mut qubits: Vec<usize> = factors
            .iter()
            .flat_map(|f| f.qubits.iter().copied())
            .collect();
        qubits.sort_unstable();
        qubits.dedup();
        let k = factors.len() as f64;
        Self::tabulate(qubits, |code| {
            factors.iter().map(|f| f.eval(code)).sum::<f64>() / k
        })
    }
}

/// Probability that independent errors with the given fidelity factors
/// multiply to a non-identity Pauli.
pub(crate) fn error_rate_of(factors: &[Factor]) -> Result<f64> {
    let factors: Vec<&Factor> = factors.iter().filter(|f| !f.qubits.is_empty()).collect();
    // Union-find over qubits joined by shared factors.
    let qubits: Vec<usize> = {
        let mut q: Vec<usize> = factors
            .iter()
            .flat_map(|f| f.qubits.iter().copied())
            .collect();
        q.sort_unstable();
        q.dedup();
        q
    };
    let pos = |q: usize| qubits.binary_search(&q).expect("known qubit");
    let mut parent: Vec<usize> = (0..qubits.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for f in &factors {
        let a = find(&mut parent, pos(f.qubits[0]));
        for &q in &f.qubits[1..] {
            let b = find(&mut parent, pos(q));
            parent[b] = a;
        }
    }
    let mut fidelity = 1.0;
    let roots: Vec<usize> = (0..qubits.len()).map(|i| find(&mut parent, i)).collect();
    let mut seen = Vec::new();
    for &root in &roots {
        if seen.contains(&root) {
            continue;
        }
        seen.push(root);
        let block: Vec<usize> = (0..qubits.len())
            .filter(|&i| roots[i] == root)
            .map(|i| qubits[i])
            .collect();
        if block.len() > MAX_FACTOR_QUBITS {
            return Err(Error::InvalidModel(
                "correlated error block too large for an exact rate".into(),
            ));
        }
        let members: Vec<&&Factor> = factors
            .iter()
            .filter(|f| roots[pos(f.qubits[0])] == root)
            .collect();
        let size = 1usize << (2 * block.len());
        let mut sum = 0.0;
        for idx in 0..size {
            let code = |q: usize| {
                let i = block.iter().position(|&x| x == q).expect("qubit in block");
                ((idx >> (2 * i)) & 3) as u8
            };
            sum += members.iter().map(|f| f.eval(&code)).product::<f64>();
        }
        fidelity *= sum / size as f64;
    }
    Ok((1.0 - fidelity).max(0.0))
}

impl ErrorModel {
    /// A model without errors.
    pub fn ideal(n: usize) -> Self {
        Self {
            n,
            gates: vec![GateErrors {
                gate: "*".into(),
                qubits: None,
                terms: Vec::new(),
            }],
            layer_terms: Vec::new(),
            readout: Vec::new(),
            sspam_gate_errors: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if self.n == 0 || self.n > 64 {
            return bad(format!("n: {} is outside 1..=64", self.n));
        }
        let check_term = |path: String, t: &ErrorTerm, gate_level: bool| -> Result<()> {
            let p = t.probability();
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidModel(format!(
                    "{path}.p: {p} is not in [0, 1]"
                )));
            }
            match t.support() {
                Support::Targets if !gate_level => {
                    return Err(Error::InvalidModel(format!(
                        "{path}.on: `targets` needs a gate"
                    )));
                }
                Support::Qubits(qs) => {
                    if qs.is_empty() {
                        return Err(Error::InvalidModel(format!("{path}.on: empty qubit list")));
                    }
                    for (i, &q) in qs.iter().enumerate() {
                        if q >= self.n {
                            return Err(Error::InvalidModel(format!(
                                "{path}.on[{i}]: qubit {q} out of range"
                            )));
                        }
                        if qs[..i].contains(&q) {
                            return Err(Error::InvalidModel(format!(
                                "{path}.on[{i}]: duplicate qubit {q}"
                            )));
                        }
                    }
                }
                _ => {}
            }
            if let ErrorTerm::Fixed { pauli, .. } = t {
                if pauli.chars().any(|c| pauli_code(c).is_none()) {
                    return Err(Error::InvalidModel(format!(
                        "{path}.pauli: `{pauli}` is not a Pauli string"
                    )));
                }
                if pauli.len() > 64 {
                    return Err(Error::InvalidModel(format!("{path}.pauli: too long")));
                }
            }
            Ok(())
        };
        for (i, g) in self.gates.iter().enumerate() {
            if g.gate != "*" {
                g.gate.parse::<Gate>().map_err(|_| {
                    Error::InvalidModel(format!("gates[{i}].gate: unknown gate `{}`", g.gate))
                })?;
            }
            if let Some(qs) = &g.qubits {
                if let Some(&q) = qs.iter().find(|&&q| q >= self.n) {
                    return bad(format!("gates[{i}].qubits: qubit {q} out of range"));
                }
            }
            for (j, t) in g.terms.iter().enumerate() {
                check_term(format!("gates[{i}].terms[{j}]"), t, true)?;
            }
        }
        for (j, t) in self.layer_terms.iter().enumerate() {
            check_term(format!("layer_terms[{j}]"), t, false)?;
        }
        if !self.readout.is_empty() && self.readout.len() != self.n {
            return bad(format!(
                "readout: expected {} entries, found {}",
                self.n,
                self.readout.len()
            ));
        }
        for (q, &p) in self.readout.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("readout[{q}]: {p} is not in [0, 1]"));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("models serialize");
        hex::encode(Sha256::digest(json))
    }

    pub fn readout_probability(&self, q: usize) -> f64 {
        self.readout.get(q).copied().unwrap_or(0.0)
    }

    /// The entry used for `label`: exact qubits first, then the gate name,
    /// then `*`.
    pub fn entry_for(&self, label: &GateLabel) -> Result<&GateErrors> {
        let name = label.gate.name();
        let exact = |g: &&GateErrors| g.qubits.as_deref() == Some(&label.targets[..]);
        self.gates
            .iter()
            .filter(|g| g.gate == name)
            .find(exact)
            .or_else(|| {
                self.gates
                    .iter()
                    .find(|g| g.gate == name && g.qubits.is_none())
            })
            .or_else(|| self.gates.iter().filter(|g| g.gate == "*").find(exact))
            .or_else(|| {
                self.gates
                    .iter()
                    .find(|g| g.gate == "*" && g.qubits.is_none())
            })
            .ok_or_else(|| Error::UncoveredGate(label.to_string()))
    }

    fn bind(&self, t: &ErrorTerm, targets: Option<&[usize]>) -> Result<BoundTerm> {
        let qubits: Vec<usize> = match (t.support(), targets) {
            (Support::Targets, Some(ts)) => ts.to_vec(),
            (Support::Targets, None) => {
                return Err(Error::InvalidModel(
                    "layer term with `targets` support".into(),
                ));
            }
            (Support::All, _) => (0..self.n).collect(),
            (Support::Qubits(qs), _) => qs.clone(),
        };
        let kind = match t {
            ErrorTerm::Local { .. } => BoundKind::Local,
            ErrorTerm::Uniform { .. } => BoundKind::Uniform,
            ErrorTerm::NonIdentity { .. } => BoundKind::NonIdentity,
            ErrorTerm::Fixed { pauli, .. } => {
                if pauli.chars().count() != qubits.len() {
                    return Err(Error::InvalidModel(format!(
                        "fixed Pauli `{pauli}` does not match a support of {} qubits",
                        qubits.len()
                    )));
                }
                let mut packed = 0u128;
                for (i, c) in pauli.chars().enumerate() {
                    let code = pauli_code(c).ok_or_else(|| {
                        Error::InvalidModel(format!("`{pauli}` is not a Pauli string"))
                    })?;
                    packed |= (code as u128) << (2 * i);
                }
                BoundKind::Fixed(packed)
            }
        };
        Ok(BoundTerm {
            kind,
            p: t.probability(),
            qubits,
        })
    }

    pub(crate) fn gate_terms(&self, label: &GateLabel) -> Result<Vec<BoundTerm>> {
        let entry = self.entry_for(label)?;
        entry
            .terms
            .iter()
            .map(|t| self.bind(t, Some(&label.targets)))
            .collect()
    }

    pub(crate) fn layer_bound_terms(&self) -> Result<Vec<BoundTerm>> {
        self.layer_terms
            .iter()
            .map(|t| self.bind(t, None))
            .collect()
    }

    /// Exact probability that `label` is followed by a non-identity error.
    pub fn gate_error_rate(&self, label: &GateLabel) -> Result<f64> {
        error_rate_of(&[Factor::from_terms(&self.gate_terms(label)?)?])
    }

    /// Exact error rate of a core layer, including layer-wide terms.
    pub fn layer_error_rate(&self, layer: &Layer) -> Result<f64> {
        let mut factors = Vec::with_capacity(layer.gates.len() + 1);
        for g in &layer.gates {
            factors.push(Factor::from_terms(&self.gate_terms(g)?)?);
        }
        factors.push(Factor::from_terms(&self.layer_bound_terms()?)?);
        error_rate_of(&factors)
    }

    /// Error rate of a layer with the given CNOTs and a gate drawn
    /// uniformly from `pool` on every other qubit, averaged over the pool.
    pub fn mean_layer_error_rate(&self, cnots: &[(usize, usize)], pool: &GatePool) -> Result<f64> {
        let gates = pool.gates();
        let mut used = vec![false; self.n];
        let mut factors = Vec::new();
        for &(c, t) in cnots {
            used[c] = true;
            used[t] = true;
            factors.push(Factor::from_terms(
                &self.gate_terms(&GateLabel::cnot(c, t))?,
            )?);
        }
        for q in (0..self.n).filter(|&q| !used[q]) {
            let slot = gates
                .iter()
                .map(|&g| Factor::from_terms(&self.gate_terms(&GateLabel::one(g, q))?))
                .collect::<Result<Vec<_>>>()?;
            factors.push(Factor::average(&slot)?);
        }
        factors.push(Factor::from_terms(&self.layer_bound_terms()?)?);
        error_rate_of(&factors)
    }

    /// Probability that the readout of `s` differs from `s` in at least one bit.
    pub fn total_readout_error(&self) -> f64 {
        1.0 - self.readout.iter().map(|p| 1.0 - p).product::<f64>()
    }

    /// Checks that every gate of `device`'s gate set on every qubit (and
    /// every edge) has an entry.
    pub fn check_covers(&self, device: &DeviceSpec) -> Result<()> {
        if device.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: device.num_qubits(),
            });
        }
        for g in device.gate_set().one_qubit_gates() {
            for q in 0..self.n {
                self.entry_for(&GateLabel::one(g, q))?;
            }
        }
        for &(c, t) in device.edges() {
            self.entry_for(&GateLabel::cnot(c, t))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bundled models.

fn entry(gate: &str, qubits: Option<Vec<usize>>, terms: Vec<ErrorTerm>) -> GateErrors {
    GateErrors {
        gate: gate.into(),
        qubits,
        terms,
    }
}

/// Uniform `X`/`Y`/`Z` errors after each gate: 0.25% per CNOT qubit and
/// 0.05% per one-qubit gate; perfect preparation and measurement.
pub fn build_model_main_sim(n: usize) -> ErrorModel {
    ErrorModel {
        n,
        gates: vec![
            entry(
                "CNOT",
                None,
                vec![ErrorTerm::local(0.0025, Support::Targets)],
            ),
            entry("*", None, vec![ErrorTerm::local(0.0005, Support::Targets)]),
        ],
        layer_terms: Vec::new(),
        readout: Vec::new(),
        sspam_gate_errors: false,
    }
}

/// Per-qubit rate of the spectator errors of the centre CNOTs.
pub fn crosstalk5_spectator_rate() -> f64 {
    1.0 - (0.92f64 / 0.96).powf(0.25)
}

/// The five-qubit model with crosstalking centre CNOTs on
/// [`DeviceSpec::crosstalk5`]: 0.1% one-qubit gates, 4% ring CNOTs, 8% centre
/// CNOTs (4% on the centre qubit plus spectator errors on all ring qubits)
/// and 2% readout flips.
pub fn build_model_crosstalk5() -> ErrorModel {
    let ring_q = 1.0 - 0.96f64.sqrt();
    let eta = crosstalk5_spectator_rate();
    let mut gates = vec![entry(
        "*",
        None,
        vec![ErrorTerm::local(0.001, Support::Targets)],
    )];
    for (c, t) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
        gates.push(entry(
            "CNOT",
            Some(vec![c, t]),
            vec![ErrorTerm::local(ring_q, Support::Targets)],
        ));
    }
    for t in 0..4 {
        gates.push(entry(
            "CNOT",
            Some(vec![4, t]),
            vec![
                ErrorTerm::local(0.04, Support::Qubits(vec![4])),
                ErrorTerm::local(eta, Support::Qubits(vec![0, 1, 2, 3])),
            ],
        ));
    }
    ErrorModel {
        n: 5,
        gates,
        layer_terms: Vec::new(),
        readout: vec![0.02; 5],
        sspam_gate_errors: true,
    }
}

/// Calibrated error rates of a device.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// One-qubit gate error rate per qubit.
    pub one_qubit: Vec<f64>,
    pub cnot: Vec<EdgeRate>,
    /// Readout bit-flip probability per qubit.
    pub readout: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRate {
    pub control: usize,
    pub target: usize,
    pub rate: f64,
}

/// Every gate is perfect and then uniformly depolarized on its own qubits
/// with the calibrated error rate; readout bits flip at the calibrated rate.
pub fn build_model_from_calibration(device: &DeviceSpec, cal: &Calibration) -> Result<ErrorModel> {
    let n = device.num_qubits();
    let bad = |msg: String| Err(Error::InvalidModel(msg));
    if cal.one_qubit.len() != n {
        return bad(format!(
            "one_qubit: expected {n} entries, found {}",
            cal.one_qubit.len()
        ));
    }
    if cal.readout.len() != n {
        return bad(format!(
            "readout: expected {n} entries, found {}",
            cal.readout.len()
        ));
    }
    let mut gates = Vec::new();
    for (q, &e) in cal.one_qubit.iter().enumerate() {
        gates.push(entry(
            "*",
            Some(vec![q]),
            vec![ErrorTerm::NonIdentity {
                p: e,
                on: Support::Targets,
            }],
        ));
    }
    for &(c, t) in device.edges() {
        let Some(rate) = cal.cnot.iter().find(|r| r.control == c && r.target == t) else {
            return bad(format!("cnot: missing entry for edge {c}->{t}"));
        };
        gates.push(entry(
            "CNOT",
            Some(vec![c, t]),
            vec![ErrorTerm::NonIdentity {
                p: rate.rate,
                on: Support::Targets,
            }],
        ));
    }
    let model = ErrorModel {
        n,
        gates,
        layer_terms: Vec::new(),
        readout: cal.readout.clone(),
        sspam_gate_errors: true,
    };
    model.validate()?;
    Ok(model)
}

/// Ideal gates, each core layer followed by the global depolarizing channel
/// with parameter `lambda`; perfect preparation and measurement.
pub fn build_model_global_depolarizing(n: usize, lambda: f64) -> ErrorModel {
    ErrorModel {
        layer_terms: vec![ErrorTerm::Uniform {
            p: 1.0 - lambda,
            on: Support::All,
        }],
        sspam_gate_errors: false,
        ..ErrorModel::ideal(n)
    }
}

/// Injects `pauli` with probability one after every `gate` on exactly
/// `qubits`; other gates are ideal.
pub fn build_model_injection(
    n: usize,
    gate: &str,
    qubits: Vec<usize>,
    pauli: &PauliOp,
) -> ErrorModel {
    let support: Vec<usize> = (0..n)
        .filter(|&q| pauli.local(q) != crate::pauli::Pauli1::I)
        .collect();
    let letters: String = support.iter().map(|&q| pauli.local(q).letter()).collect();
    let mut model = ErrorModel::ideal(n);
    if !support.is_empty() {
        model.gates.insert(
            0,
            entry(
                gate,
                Some(qubits),
                vec![ErrorTerm::Fixed {
                    p: 1.0,
                    pauli: letters,
                    on: Support::Qubits(support),
                }],
            ),
        );
    }
    model
}
