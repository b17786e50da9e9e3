//! Native gates, layers and circuits, plus the line-oriented text form.
//!
//! A layer line lists gates separated by `;`, each as `NAME q0[,q1]`, e.g.
//! `CNOT 0,1; C17 2; H 3`. An empty layer is written `-`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::{one_qubit_table, CliffordOp};
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::pauli::PauliOp;

/// A named native gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    I,
    H,
    P,
    X,
    Y,
    Z,
    /// Entry of the 24-element one-qubit Clifford table.
    C(u8),
    Cnot,
}

impl Gate {
    pub fn name(&self) -> String {
        match self {
            Gate::I => "I".into(),
            Gate::H => "H".into(),
            Gate::P => "P".into(),
            Gate::X => "X".into(),
            Gate::Y => "Y".into(),
            Gate::Z => "Z".into(),
            Gate::C(i) => format!("C{i:02}"),
            Gate::Cnot => "CNOT".into(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::Cnot => 2,
            _ => 1,
        }
    }

    /// Index into the one-qubit Clifford table, for one-qubit gates.
    pub fn one_qubit_index(&self) -> Option<u8> {
        let t = one_qubit_table();
        Some(match self {
            Gate::I => t.identity,
            Gate::H => t.h,
            Gate::P => t.p,
            Gate::X => t.x,
            Gate::Y => t.y,
            Gate::Z => t.z,
            Gate::C(i) => *i,
            Gate::Cnot => return None,
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "I" => Gate::I,
            "H" => Gate::H,
            "P" => Gate::P,
            "X" => Gate::X,
            "Y" => Gate::Y,
            "Z" => Gate::Z,
            "CNOT" => Gate::Cnot,
            _ => {
                let idx = s
                    .strip_prefix('C')
                    .filter(|d| d.len() == 2 && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<u8>().ok())
                    .filter(|&i| i < 24)
                    .ok_or_else(|| Error::UnknownGate(s.to_string()))?;
                Gate::C(idx)
            }
        })
    }
}

/// Native gate sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateSet {
    /// `{I, H, P}` plus CNOT.
    #[serde(rename = "HPI")]
    Hpi,
    /// All 24 one-qubit Cliffords `C00…C23` plus CNOT.
    #[serde(rename = "C24")]
    C24,
}

impl GateSet {
    pub fn contains(&self, gate: Gate) -> bool {
        match self {
            GateSet::Hpi => matches!(gate, Gate::I | Gate::H | Gate::P | Gate::Cnot),
            GateSet::C24 => matches!(gate, Gate::C(_) | Gate::Cnot),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateSet::Hpi => "HPI",
            GateSet::C24 => "C24",
        }
    }

    /// The one-qubit gates of this set.
    pub fn one_qubit_gates(&self) -> Vec<Gate> {
        match self {
            GateSet::Hpi => vec![Gate::I, Gate::H, Gate::P],
            GateSet::C24 => (0..24).map(Gate::C).collect(),
        }
    }
}

impl FromStr for GateSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "HPI" => Ok(GateSet::Hpi),
            "C24" => Ok(GateSet::C24),
            _ => Err(Error::Parse(format!("unknown gate set `{s}`"))),
        }
    }
}

/// A gate applied to specific qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateLabel {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

impl GateLabel {
    pub fn new(gate: Gate, targets: Vec<usize>) -> Self {
        Self { gate, targets }
    }

    pub fn one(gate: Gate, q: usize) -> Self {
        Self::new(gate, vec![q])
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::new(Gate::Cnot, vec![control, target])
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.targets.len() != self.gate.arity() {
            return Err(Error::Arity {
                gate: self.gate.name(),
                expected: self.gate.arity(),
                found: self.targets.len(),
            });
        }
        for (i, &q) in self.targets.iter().enumerate() {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
            if self.targets[..i].contains(&q) {
                return Err(Error::DuplicateTarget(q));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.gate)?;
        for (i, q) in self.targets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl FromStr for GateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("gate `{s}` has no targets")))?;
        let gate: Gate = name.parse()?;
        let targets = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad qubit index `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GateLabel { gate, targets })
    }
}

/// Gates applied in parallel on disjoint qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Layer {
    pub gates: Vec<GateLabel>,
}

impl Layer {
    pub fn new(gates: Vec<GateLabel>) -> Self {
        Self { gates }
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let mut used = vec![false; n];
        for g in &self.gates {
            g.check(n)?;
            for &q in &g.targets {
                if std::mem::replace(&mut used[q], true) {
                    return Err(Error::DuplicateTarget(q));
                }
            }
        }
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.gate == Gate::Cnot).count()
    }

    /// Gates other than the identity.
    pub fn gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.gate != Gate::I).count()
    }

    /// Parses a layer line; `-` or an empty line is the empty layer.
    pub fn parse_line(line: &str) -> Result<Self> {
        let line = line.trim();
        if line.is_empty() || line == "-" {
            return Ok(Layer::default());
        }
        let gates = line
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<GateLabel>>>()?;
        Ok(Layer { gates })
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gates.is_empty() {
            return f.write_str("-");
        }
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// An ordered sequence of layers on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            layers: Vec::new(),
        }
    }

    pub fn from_layers(n: usize, layers: Vec<Layer>) -> Result<Self> {
        for l in &layers {
            l.check(n)?;
        }
        Ok(Self { n, layers })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn push(&mut self, layer: Layer) -> Result<()> {
        layer.check(self.n)?;
        self.layers.push(layer);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        self.layers.extend(other.layers.iter().cloned());
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.layers.iter().map(Layer::cnot_count).sum()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Layer::gate_count).sum()
    }

    pub fn gates(&self) -> impl Iterator<Item = &GateLabel> {
        self.layers.iter().flat_map(|l| l.gates.iter())
    }

    /// Fails on the first gate outside `gate_set`.
    pub fn check_gate_set(&self, gate_set: crate::circuit::GateSet) -> Result<()> {
        match self.gates().find(|g| !gate_set.contains(g.gate)) {
            Some(g) => Err(Error::GateNotInGateSet {
                gate: g.gate.name(),
                gate_set: gate_set.name().into(),
            }),
            None => Ok(()),
        }
    }

    /// The Clifford implemented by the circuit (first layer acts first).
    pub fn to_clifford(&self) -> CliffordOp {
        let mut c = CliffordOp::identity(self.n);
        for g in self.gates() {
            apply_gate(&mut c, g);
        }
        c
    }

    /// Pushes a Pauli through the circuit, returning `U P U†`.
    pub fn propagate_pauli(&self, p: &PauliOp) -> PauliOp {
        let mut out = p.clone();
        for g in self.gates() {
            conjugate_by_gate(&mut out, g);
        }
        out
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.layers.iter().map(Layer::to_string).collect()
    }
}

/// Applies `gate` after the Clifford `c`.
pub fn apply_gate(c: &mut CliffordOp, g: &GateLabel) {
    match g.gate {
        Gate::I => {}
        Gate::H => c.apply_h(g.targets[0]),
        Gate::P => c.apply_p(g.targets[0]),
        Gate::Cnot => c.apply_cnot(g.targets[0], g.targets[1]),
        other => c.apply_one_qubit(
            g.targets[0],
            other.one_qubit_index().expect("one-qubit gate"),
        ),
    }
}

/// `P ← G P G†` for a single gate.
pub fn conjugate_by_gate(p: &mut PauliOp, g: &GateLabel) {
    use crate::clifford::{conj_cnot, conj_h, conj_p};
    match g.gate {
        Gate::I => {}
        Gate::H => conj_h(p, g.targets[0]),
        Gate::P => conj_p(p, g.targets[0]),
        Gate::Cnot => conj_cnot(p, g.targets[0], g.targets[1]),
        other => {
            let idx = other.one_qubit_index().expect("one-qubit gate");
            one_qubit_table().entries[idx as usize].conjugate_local(p, g.targets[0]);
        }
    }
}

/// The `n`-qubit Clifford of a named gate on `targets`.
pub fn standard_gate(name: &str, targets: &[usize], n: usize) -> Result<CliffordOp> {
    let label = GateLabel::new(name.parse()?, targets.to_vec());
    label.check(n)?;
    let mut c = CliffordOp::identity(n);
    apply_gate(&mut c, &label);
    Ok(c)
}

/// The Clifford implemented by `circ`, checking every gate against the device.
pub fn circuit_to_clifford(circ: &Circuit, device: &DeviceSpec) -> Result<CliffordOp> {
    if circ.num_qubits() != device.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: device.num_qubits(),
            found: circ.num_qubits(),
        });
    }
    for l in circ.layers() {
        l.check(circ.num_qubits())?;
    }
    circ.check_gate_set(device.gate_set())?;
    Ok(circ.to_clifford())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_names_round_trip() {
        for g in [
            Gate::I,
            Gate::H,
            Gate::P,
            Gate::Cnot,
            Gate::C(0),
            Gate::C(17),
            Gate::Y,
        ] {
            assert_eq!(g.name().parse::<Gate>().unwrap(), g);
        }
        assert!("C24".parse::<Gate>().is_err());
        assert!("C7".parse::<Gate>().is_err());
        assert!("T".parse::<Gate>().is_err());
    }

    #[test]
    fn layer_line_round_trip() {
        let l = Layer::parse_line("CNOT 0,1; C17 2; H 3").unwrap();
        assert_eq!(l.to_string(), "CNOT 0,1; C17 2; H 3");
        assert_eq!(Layer::parse_line("-").unwrap(), Layer::default());
        assert!(Layer::parse_line("CNOT 0,0").unwrap().check(2).is_err());
        assert!(Layer::parse_line("H 0; P 0").unwrap().check(2).is_err());
    }

    #[test]
    fn standard_gate_errors() {
        assert!(matches!(
            standard_gate("Q", &[0], 1),
            Err(Error::UnknownGate(_))
        ));
        assert!(matches!(
            standard_gate("H", &[3], 2),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            standard_gate("CNOT", &[1, 1], 2),
            Err(Error::DuplicateTarget(1))
        ));
    }

    #[test]
    fn hh_is_identity() {
        let mut c = Circuit::new(1);
        c.push(Layer::parse_line("H 0").unwrap()).unwrap();
        c.push(Layer::parse_line("H 0").unwrap()).unwrap();
        assert!(c.to_clifford().acts_trivially());
        assert!(Circuit::new(3).to_clifford().acts_trivially());
    }
}
