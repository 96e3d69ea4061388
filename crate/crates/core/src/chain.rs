//! Level-by-level counting of ascending subgroup chains that end at the whole
//! group and avoid the trivial subgroup.
//!
//! `levels[k][j]` is the number of chains with `k + 1` members starting at node
//! `j` and ending at the top. The first level is the indicator of the top node;
//! each later level sums the previous one over every strictly larger node. The
//! loop stops as soon as a level sums to zero, and every longer chain length
//! has count zero.
//!
//! Each proper chain stands for two classes of fuzzy subgroups (with and
//! without the trivial subgroup appended), so the fuzzy subgroup count is
//! twice the total number of chains.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::GroupParams;
use crate::lattice::{Lattice, LatticeMode};
use crate::Parallelism;

#[derive(Debug, Clone)]
pub struct ChainTable<'a> {
    lattice: &'a Lattice,
    levels: Vec<Vec<BigUint>>,
}

impl<'a> ChainTable<'a> {
    pub fn compute(lattice: &'a Lattice) -> Self {
        Self::compute_with(lattice, Parallelism::Parallel)
    }

    pub fn compute_with(lattice: &'a Lattice, parallelism: Parallelism) -> Self {
        let size = lattice.len();
        let mut first = vec![BigUint::zero(); size];
        first[lattice.top_index()] = BigUint::one();
        let mut levels = vec![first];

        loop {
            let prev = levels.last().expect("at least one level");
            let step = |j: usize| -> BigUint {
                lattice
                    .strictly_above(j)
                    .iter()
                    .map(|&k| &prev[k])
                    .filter(|c| !c.is_zero())
                    .sum()
            };
            let next: Vec<BigUint> = match parallelism {
                Parallelism::Sequential => (0..size).map(step).collect(),
                Parallelism::Parallel => (0..size).into_par_iter().map(step).collect(),
            };
            if next.iter().all(Zero::is_zero) {
                break;
            }
            levels.push(next);
        }
        ChainTable { lattice, levels }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn levels(&self) -> &[Vec<BigUint>] {
        &self.levels
    }

    /// Number of chains of `length` members from `node` to the top.
    pub fn get(&self, length: usize, node: usize) -> BigUint {
        match length {
            0 => BigUint::zero(),
            l => self
                .levels
                .get(l - 1)
                .map_or_else(BigUint::zero, |level| level[node].clone()),
        }
    }

    pub fn counts(&self) -> ChainCounts {
        let per_length = self
            .levels
            .iter()
            .map(|level| level.iter().sum())
            .collect();
        ChainCounts::from_per_length(
            self.lattice.params().n(),
            self.lattice.mode(),
            per_length,
        )
    }
}

/// Chain totals per length plus the derived fuzzy subgroup counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCounts {
    pub n: u64,
    pub mode: LatticeMode,
    /// `per_length[k]` counts the chains with `k + 1` members.
    pub per_length: Vec<BigUint>,
    pub total: BigUint,
    pub fuzzy_count: BigUint,
    pub mm_count: BigUint,
}

impl ChainCounts {
    pub fn from_per_length(n: u64, mode: LatticeMode, per_length: Vec<BigUint>) -> Self {
        let total: BigUint = per_length.iter().sum();
        let fuzzy_count = &total * 2u32;
        let mm_count = murali_makamba_count(&fuzzy_count);
        ChainCounts {
            n,
            mode,
            per_length,
            total,
            fuzzy_count,
            mm_count,
        }
    }

    /// Count of chains with exactly `length` members; zero past the longest chain.
    pub fn chains_of_length(&self, length: usize) -> BigUint {
        match length {
            0 => BigUint::zero(),
            l => self.per_length.get(l - 1).cloned().unwrap_or_default(),
        }
    }

    pub fn to_json(&self) -> ChainCountsJson {
        ChainCountsJson {
            n: self.n,
            mode: self.mode,
            per_length: self.per_length.iter().map(ToString::to_string).collect(),
            total: self.total.to_string(),
            fuzzy_count: self.fuzzy_count.to_string(),
            mm_count: self.mm_count.to_string(),
        }
    }
}

/// Class count under the stricter relation that also separates supports:
/// `2 * fuzzy_count - 1`.
pub fn murali_makamba_count(fuzzy_count: &BigUint) -> BigUint {
    assert!(!fuzzy_count.is_zero(), "there is always at least one class");
    fuzzy_count * 2u32 - 1u32
}

/// Wire form of [`ChainCounts`]; big integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCountsJson {
    pub n: u64,
    pub mode: LatticeMode,
    pub per_length: Vec<String>,
    pub total: String,
    pub fuzzy_count: String,
    pub mm_count: String,
}

impl TryFrom<ChainCountsJson> for ChainCounts {
    type Error = String;

    fn try_from(json: ChainCountsJson) -> Result<Self, String> {
        let parse = |s: &str| {
            s.parse::<BigUint>()
                .map_err(|e| format!("bad count {s:?}: {e}"))
        };
        let per_length = json
            .per_length
            .iter()
            .map(|s| parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        let counts = ChainCounts::from_per_length(json.n, json.mode, per_length);
        if counts.total != parse(&json.total)?
            || counts.fuzzy_count != parse(&json.fuzzy_count)?
            || counts.mm_count != parse(&json.mm_count)?
        {
            return Err("derived totals do not match per_length".to_string());
        }
        Ok(counts)
    }
}

pub fn count_chains(params: GroupParams, mode: LatticeMode, parallelism: Parallelism) -> ChainCounts {
    let lattice = Lattice::build_with(params, mode, parallelism);
    ChainTable::compute_with(&lattice, parallelism).counts()
}

/// `N_F`: fuzzy subgroups of `U_6n` up to equivalence.
pub fn count_fuzzy_subgroups(params: GroupParams) -> ChainCounts {
    count_chains(params, LatticeMode::All, Parallelism::Parallel)
}

/// `N_NF`: normal fuzzy subgroups of `U_6n` up to equivalence.
pub fn count_normal_fuzzy_subgroups(params: GroupParams) -> ChainCounts {
    count_chains(params, LatticeMode::Normal, Parallelism::Parallel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::{single_node, three_chain};

    fn big(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    fn p(n: u64) -> GroupParams {
        GroupParams::new(n).unwrap()
    }

    #[test]
    fn n1_second_level() {
        let lat = Lattice::build(p(1), LatticeMode::All);
        let table = ChainTable::compute(&lat);
        assert_eq!(table.levels().len(), 2);
        for j in 0..lat.len() {
            let expected = if j == lat.top_index() { 0u32 } else { 1 };
            assert_eq!(table.levels()[1][j], BigUint::from(expected));
            assert_eq!(table.get(2, j), BigUint::from(expected));
        }
        assert_eq!(table.get(3, 0), BigUint::zero());
    }

    #[test]
    fn level_totals_n2() {
        let lat = Lattice::build(p(2), LatticeMode::All);
        let counts = ChainTable::compute(&lat).counts();
        assert_eq!(counts.per_length, big(&[1, 6, 5]));
        assert_eq!(counts.chains_of_length(4), BigUint::zero());
        assert_eq!(counts.chains_of_length(0), BigUint::zero());
    }

    #[test]
    fn degenerate_lattices() {
        let lat = single_node();
        let table = ChainTable::compute(&lat);
        assert_eq!(table.levels(), &[vec![BigUint::one()]]);
        let lat = three_chain();
        assert_eq!(ChainTable::compute(&lat).counts().per_length, big(&[1, 2, 1]));
    }

    #[test]
    fn count_examples() {
        let c = count_fuzzy_subgroups(p(1));
        assert_eq!(c.per_length, big(&[1, 4]));
        assert_eq!(c.total, BigUint::from(5u32));
        assert_eq!(c.fuzzy_count, BigUint::from(10u32));
        assert_eq!(c.mm_count, BigUint::from(19u32));

        let c = count_normal_fuzzy_subgroups(p(1));
        assert_eq!(c.per_length, big(&[1, 1]));
        assert_eq!(c.fuzzy_count, BigUint::from(4u32));
        assert_eq!(c.mm_count, BigUint::from(7u32));

        let c = count_normal_fuzzy_subgroups(p(2));
        assert_eq!(c.per_length, big(&[1, 3, 2]));
        assert_eq!(c.fuzzy_count, BigUint::from(12u32));

        let c = count_fuzzy_subgroups(p(2));
        assert_eq!(c.fuzzy_count, BigUint::from(24u32));
    }

    #[test]
    fn murali_makamba_minimal() {
        assert_eq!(murali_makamba_count(&BigUint::from(2u32)), BigUint::from(3u32));
    }

    // Frozen from an independent brute force: closure-discovered subgroups of
    // each U_6n, chains enumerated by depth-first search over set inclusion.
    const FROZEN: [(u64, &[u64], &[u64]); 12] = [
        (1, &[1, 4], &[1, 1]),
        (2, &[1, 6, 5], &[1, 3, 2]),
        (3, &[1, 12, 14], &[1, 4, 3]),
        (4, &[1, 8, 13, 6], &[1, 5, 7, 3]),
        (5, &[1, 10, 12], &[1, 4, 3]),
        (6, &[1, 18, 43, 26], &[1, 8, 15, 8]),
        (7, &[1, 10, 12], &[1, 4, 3]),
        (8, &[1, 10, 24, 22, 7], &[1, 7, 15, 13, 4]),
        (9, &[1, 20, 49, 30], &[1, 7, 12, 6]),
        (10, &[1, 14, 33, 20], &[1, 8, 15, 8]),
        (11, &[1, 10, 12], &[1, 4, 3]),
        (12, &[1, 24, 87, 106, 42], &[1, 12, 36, 40, 15]),
    ];

    #[test]
    fn frozen_small_values() {
        for (n, all, normal) in FROZEN {
            assert_eq!(count_fuzzy_subgroups(p(n)).per_length, big(all), "n={n}");
            assert_eq!(
                count_normal_fuzzy_subgroups(p(n)).per_length,
                big(normal),
                "n={n}"
            );
        }
    }

    #[test]
    fn invariants_and_bounds() {
        for n in 1..=60 {
            let all = count_fuzzy_subgroups(p(n));
            let normal = count_normal_fuzzy_subgroups(p(n));
            for c in [&all, &normal] {
                assert_eq!(c.per_length[0], BigUint::one());
                assert!(!c.per_length.last().unwrap().is_zero());
                assert_eq!(&c.fuzzy_count % 2u32, BigUint::zero());
                assert_eq!(&c.mm_count % 2u32, BigUint::one());
                assert_eq!(c.mm_count, &c.fuzzy_count * 2u32 - 1u32);
            }
            assert!(normal.fuzzy_count <= all.fuzzy_count);
            let lat = Lattice::build(p(n), LatticeMode::All);
            assert_eq!(all.per_length.len(), lat.height());
            assert!(all.per_length.len() <= lat.len());
        }
    }

    #[test]
    fn parallelism_does_not_change_results() {
        for n in [12, 60, 360] {
            for mode in [LatticeMode::All, LatticeMode::Normal] {
                assert_eq!(
                    count_chains(p(n), mode, Parallelism::Parallel),
                    count_chains(p(n), mode, Parallelism::Sequential)
                );
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = count_fuzzy_subgroups(p(12));
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert!(text.contains("\"fuzzy_count\":\"520\""));
        let back: ChainCountsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ChainCounts::try_from(back).unwrap(), c);

        let mut bad = c.to_json();
        bad.total = "7".into();
        assert!(ChainCounts::try_from(bad).is_err());
    }

    #[test]
    fn shape_dependence() {
        use crate::catalog::Factorization;
        let values: Vec<_> = (1..=12u64)
            .map(|n| (Factorization::of(2 * n).shape(), count_fuzzy_subgroups(p(n))))
            .collect();
        for (sa, ca) in &values {
            for (sb, cb) in &values {
                if sa == sb {
                    assert_eq!(ca.per_length, cb.per_length);
                }
            }
        }
        assert_eq!(
            count_fuzzy_subgroups(p(5)).per_length,
            count_fuzzy_subgroups(p(7)).per_length
        );
    }
}
