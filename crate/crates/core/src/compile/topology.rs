use rand::seq::SliceRandom;

use crate::device::{bfs_distances, DeviceSpec};
use crate::error::{Error, Result};
use crate::rng::{derived_rng, Rng};

use super::CompileOptions;

/// Undirected connectivity used during elimination, plus the qubit ranking
/// of one randomized trial.
pub(crate) struct Topology {
    adj: Vec<Vec<usize>>,
    rank: Vec<usize>,
    heuristic: bool,
}

impl Topology {
    pub fn new(device: &DeviceSpec, opts: &CompileOptions) -> Result<Self> {
        let n = device.num_qubits();
        let adj = if opts.respect_connectivity {
            device.adjacency().to_vec()
        } else {
            (0..n)
                .map(|a| (0..n).filter(|&b| b != a).collect())
                .collect()
        };
        let all = vec![true; n];
        if bfs_distances(&adj, 0, &all).iter().any(Option::is_none) {
            return Err(Error::DisconnectedDevice);
        }
        Ok(Self {
            adj,
            rank: (0..n).collect(),
            heuristic: opts.elimination_heuristic,
        })
    }

    /// Trial 0 keeps the natural labelling; later trials relabel at random.
    pub fn for_trial(mut self, opts: &CompileOptions, trial: usize) -> (Self, Rng) {
        let mut rng = derived_rng(opts.seed, &format!("compile-trial/{trial}"));
        if trial > 0 {
            self.rank.shuffle(&mut rng);
        }
        (self, rng)
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    fn connected_without(&self, alive: &[bool], removed: usize) -> bool {
        let mut alive = alive.to_vec();
        alive[removed] = false;
        let Some(start) = alive.iter().position(|&a| a) else {
            return true;
        };
        let d = bfs_distances(&self.adj, start, &alive);
        alive.iter().zip(&d).all(|(&a, d)| !a || d.is_some())
    }

    fn eccentricity(&self, alive: &[bool], v: usize) -> usize {
        bfs_distances(&self.adj, v, alive)
            .iter()
            .zip(alive)
            .filter_map(|(d, &a)| if a { *d } else { None })
            .max()
            .unwrap_or(0)
    }

    /// Next qubit to eliminate: one whose removal keeps the remaining
    /// qubits connected, preferring the most peripheral.
    pub fn next_pivot(&self, alive: &[bool]) -> usize {
        let candidates = (0..alive.len()).filter(|&v| alive[v] && self.connected_without(alive, v));
        if self.heuristic {
            candidates
                .max_by_key(|&v| (self.eccentricity(alive, v), std::cmp::Reverse(self.rank[v])))
                .expect("a connected graph has a non-cut vertex")
        } else {
            candidates
                .min_by_key(|&v| self.rank[v])
                .expect("a connected graph has a non-cut vertex")
        }
    }

    /// Steiner tree (union of BFS paths) rooted at `root` spanning
    /// `terminals` inside `alive`, as `(node, parent)` pairs ordered deepest
    /// first.
    pub fn steiner_tree(
        &self,
        root: usize,
        terminals: &[usize],
        alive: &[bool],
    ) -> Vec<(usize, usize)> {
        let n = alive.len();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut next: Vec<usize> = self.adj[u]
                .iter()
                .copied()
                .filter(|&w| alive[w] && depth[w] == usize::MAX)
                .collect();
            next.sort_by_key(|&w| self.rank[w]);
            for w in next {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
        let mut in_tree = vec![false; n];
        for &t in terminals {
            let mut v = t;
            while v != root && !in_tree[v] {
                in_tree[v] = true;
                v = parent[v];
            }
        }
        let mut edges: Vec<(usize, usize)> = (0..n)
            .filter(|&v| in_tree[v])
            .map(|v| (v, parent[v]))
            .collect();
        edges.sort_by_key(|&(v, _)| (std::cmp::Reverse(depth[v]), self.rank[v]));
        edges
    }
}
