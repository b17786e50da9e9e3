//! Device descriptions: qubits, directed CNOT edges and the native gate set.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::circuit::GateSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDevice", into = "RawDevice")]
pub struct DeviceSpec {
    n: usize,
    qubit_names: Vec<String>,
    edges: Vec<(usize, usize)>,
    gate_set: GateSet,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawDevice {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qubit_names: Option<Vec<String>>,
    edges: Vec<(usize, usize)>,
    gate_set: GateSet,
}

impl TryFrom<RawDevice> for DeviceSpec {
    type Error = Error;

    fn try_from(raw: RawDevice) -> Result<Self> {
        DeviceSpec::new(raw.n, raw.qubit_names, raw.edges, raw.gate_set)
    }
}

impl From<DeviceSpec> for RawDevice {
    fn from(d: DeviceSpec) -> Self {
        RawDevice {
            n: d.n,
            qubit_names: Some(d.qubit_names),
            edges: d.edges,
            gate_set: d.gate_set,
        }
    }
}

impl DeviceSpec {
    /// Validates edges; qubit names default to `Q0, Q1, …`.
    pub fn new(
        n: usize,
        qubit_names: Option<Vec<String>>,
        edges: Vec<(usize, usize)>,
        gate_set: GateSet,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDevice("n: must be at least 1".into()));
        }
        let qubit_names = qubit_names.unwrap_or_else(|| (0..n).map(|q| format!("Q{q}")).collect());
        if qubit_names.len() != n {
            return Err(Error::InvalidDevice(format!(
                "qubit_names: expected {n} names, found {}",
                qubit_names.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(c, t)) in edges.iter().enumerate() {
            if c >= n || t >= n {
                return Err(Error::InvalidDevice(format!(
                    "edges[{i}]: qubit index out of range for n={n}"
                )));
            }
            if c == t {
                return Err(Error::InvalidDevice(format!(
                    "edges[{i}]: self-edge on qubit {c}"
                )));
            }
            if edges[..i].contains(&(c, t)) {
                return Err(Error::InvalidDevice(format!(
                    "edges[{i}]: duplicate edge {c}->{t}"
                )));
            }
            if !adjacency[c].contains(&t) {
                adjacency[c].push(t);
                adjacency[t].push(c);
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Ok(Self {
            n,
            qubit_names,
            edges,
            gate_set,
            adjacency,
        })
    }

    /// Every ordered pair is an edge.
    pub fn all_to_all(n: usize, gate_set: GateSet) -> Self {
        let edges = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        Self::new(n, None, edges, gate_set).expect("valid by construction")
    }

    /// Directed ring `0→1→…→n-1→0` (a single edge for `n = 2`).
    pub fn ring(n: usize, gate_set: GateSet) -> Self {
        let edges = match n {
            0 | 1 => Vec::new(),
            2 => vec![(0, 1)],
            _ => (0..n).map(|q| (q, (q + 1) % n)).collect(),
        };
        Self::new(n, None, edges, gate_set).expect("valid by construction")
    }

    /// Directed line `0→1→…→n-1`.
    pub fn line(n: usize, gate_set: GateSet) -> Self {
        let edges = (1..n).map(|q| (q - 1, q)).collect();
        Self::new(n, None, edges, gate_set).expect("valid by construction")
    }

    /// Four ring qubits `0…3` around a central qubit `4`.
    pub fn crosstalk5() -> Self {
        let edges = vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 0),
            (4, 1),
            (4, 2),
            (4, 3),
        ];
        Self::new(5, None, edges, GateSet::Hpi).expect("valid by construction")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn qubit_names(&self) -> &[String] {
        &self.qubit_names
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn gate_set(&self) -> GateSet {
        self.gate_set
    }

    pub fn has_edge(&self, control: usize, target: usize) -> bool {
        self.edges.contains(&(control, target))
    }

    /// Undirected neighbours, sorted.
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn is_connected(&self) -> bool {
        bfs_distances(&self.adjacency, 0, &vec![true; self.n])
            .iter()
            .all(Option::is_some)
    }
}

/// BFS distances from `root` inside the vertex subset `alive`.
pub fn bfs_distances(adj: &[Vec<usize>], root: usize, alive: &[bool]) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &w in &adj[u] {
            if alive[w] && dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(DeviceSpec::new(2, None, vec![(0, 2)], GateSet::Hpi).is_err());
        assert!(DeviceSpec::new(2, None, vec![(1, 1)], GateSet::Hpi).is_err());
        let e = DeviceSpec::new(3, None, vec![(0, 1), (0, 1)], GateSet::Hpi).unwrap_err();
        assert!(e.to_string().contains("edges[1]"));
    }

    #[test]
    fn builtin_topologies() {
        assert_eq!(DeviceSpec::ring(5, GateSet::Hpi).edges().len(), 5);
        assert_eq!(DeviceSpec::ring(2, GateSet::Hpi).edges(), &[(0, 1)]);
        assert_eq!(DeviceSpec::all_to_all(4, GateSet::C24).edges().len(), 12);
        let d = DeviceSpec::crosstalk5();
        assert!(d.is_connected());
        assert_eq!(d.neighbors(4), &[0, 1, 2, 3]);
        assert!(!DeviceSpec::new(3, None, vec![(0, 1)], GateSet::Hpi)
            .unwrap()
            .is_connected());
    }

    #[test]
    fn json_round_trip() {
        let d = DeviceSpec::crosstalk5();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<DeviceSpec>(&s).unwrap(), d);
    }
}
