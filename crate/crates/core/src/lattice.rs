//! Strict containment order on the nontrivial subgroups, with Hasse reduction
//! and DOT/JSON export.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    enumerate_normal_subgroups, enumerate_subgroups, subgroup_leq, subgroup_order,
    SubgroupDescriptor,
};
use crate::group::GroupParams;
use crate::Parallelism;

/// Which subgroups take part in the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    All,
    Normal,
}

impl LatticeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeMode::All => "all",
            LatticeMode::Normal => "normal",
        }
    }
}

impl fmt::Display for LatticeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LatticeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(LatticeMode::All),
            "normal" => Ok(LatticeMode::Normal),
            other => Err(format!("unknown mode {other:?}, expected all or normal")),
        }
    }
}

/// The nontrivial subgroups (all, or normal only) under strict inclusion.
#[derive(Debug, Clone)]
pub struct Lattice {
    params: GroupParams,
    mode: LatticeMode,
    nodes: Vec<SubgroupDescriptor>,
    orders: Vec<u64>,
    top: usize,
    /// `above[i]`: indices `j` with `nodes[i] < nodes[j]`, ascending.
    above: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn build(params: GroupParams, mode: LatticeMode) -> Self {
        Self::build_with(params, mode, Parallelism::Parallel)
    }

    pub fn build_with(params: GroupParams, mode: LatticeMode, parallelism: Parallelism) -> Self {
        let trivial = SubgroupDescriptor::trivial(params);
        let nodes: Vec<SubgroupDescriptor> = match mode {
            LatticeMode::All => enumerate_subgroups(params),
            LatticeMode::Normal => enumerate_normal_subgroups(params),
        }
        .into_iter()
        .filter(|&d| d != trivial)
        .collect();
        let orders: Vec<u64> = nodes.iter().map(|&d| subgroup_order(params, d)).collect();
        debug_assert!(orders.iter().all(|&o| o > 1));
        let top = nodes
            .iter()
            .position(|&d| d == SubgroupDescriptor::whole())
            .expect("the whole group is always enumerated");

        let strictly_above = |i: usize| -> Vec<usize> {
            (0..nodes.len())
                .filter(|&j| {
                    j != i && orders[i] < orders[j] && subgroup_leq(params, nodes[i], nodes[j])
                })
                .collect()
        };
        let above = match parallelism {
            Parallelism::Sequential => (0..nodes.len()).map(strictly_above).collect(),
            Parallelism::Parallel => (0..nodes.len())
                .into_par_iter()
                .map(strictly_above)
                .collect(),
        };

        Lattice {
            params,
            mode,
            nodes,
            orders,
            top,
            above,
        }
    }

    /// Assembles a lattice from an explicit relation; no checks beyond shape.
    #[cfg(test)]
    pub(crate) fn from_parts(
        params: GroupParams,
        nodes: Vec<SubgroupDescriptor>,
        orders: Vec<u64>,
        top: usize,
        above: Vec<Vec<usize>>,
    ) -> Self {
        assert_eq!(nodes.len(), orders.len());
        assert_eq!(nodes.len(), above.len());
        Lattice {
            params,
            mode: LatticeMode::All,
            nodes,
            orders,
            top,
            above,
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn mode(&self) -> LatticeMode {
        self.mode
    }

    pub fn nodes(&self) -> &[SubgroupDescriptor] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn top_index(&self) -> usize {
        self.top
    }

    /// Order of the subgroup at node `i`.
    pub fn order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn index_of(&self, d: SubgroupDescriptor) -> Option<usize> {
        self.nodes.iter().position(|&x| x == d)
    }

    /// Nodes strictly containing node `i`.
    pub fn strictly_above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.above[i].binary_search(&j).is_ok()
    }

    /// All strict pairs `(i, j)` with `i < j` in the order, lexicographic.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
            .collect()
    }

    /// Number of nodes on the longest chain ending at the top.
    pub fn height(&self) -> usize {
        // containing subgroups have strictly larger order, so visiting nodes by
        // decreasing order settles every successor first
        let mut by_order: Vec<usize> = (0..self.len()).collect();
        by_order.sort_by_key(|&i| std::cmp::Reverse(self.orders[i]));
        let mut depth = vec![0usize; self.len()];
        for &i in &by_order {
            depth[i] = if i == self.top {
                1
            } else {
                1 + self.above[i].iter().map(|&j| depth[j]).max().unwrap_or(0)
            };
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Covering pairs of the order (its transitive reduction), lexicographic.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let size = self.len();
        let mut above_bits = vec![FixedBitSet::with_capacity(size); size];
        let mut below_bits = vec![FixedBitSet::with_capacity(size); size];
        for (i, js) in self.above.iter().enumerate() {
            for &j in js {
                above_bits[i].insert(j);
                below_bits[j].insert(i);
            }
        }
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| above_bits[i].is_disjoint(&below_bits[j]))
            .collect()
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing subgroup to supergroup.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph \"U{}_{}\" {{",
            self.params.order(),
            self.mode
        );
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, d) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{i} [label=\"{d}\\norder {}\"];",
                self.orders[i]
            );
        }
        for (i, j) in self.hasse_edges() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.params.n(),
            mode: self.mode,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, d)| NodeJson {
                    id,
                    desc: d.to_string(),
                    order: self.orders[id],
                })
                .collect(),
            edges_strict: self.strict_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            edges_hasse: self.hasse_edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub desc: String,
    pub order: u64,
}

/// Serialized lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: u64,
    pub mode: LatticeMode,
    pub nodes: Vec<NodeJson>,
    pub edges_strict: Vec<[usize; 2]>,
    pub edges_hasse: Vec<[usize; 2]>,
}
