//! Cross-checks of the closed-form path against the brute-force oracle, with a
//! per-`n`, per-check report.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    contains_element, enumerate_normal_subgroups, enumerate_subgroups, subgroup_count_formula,
    subgroup_elements, subgroup_leq, SubgroupDescriptor,
};
use crate::chain::{ChainCounts, ChainTable};
use crate::error::Result;
use crate::group::{GroupParams, DEFAULT_ORACLE_LIMIT};
use crate::lattice::{Lattice, LatticeMode};
use crate::oracle::{
    count_set_chains, oracle_count_chains, oracle_count_equivalence_classes,
    oracle_count_normal_equivalence_classes, ElementSet, Oracle,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_min: u64,
    pub n_max: u64,
    pub oracle_limit: u64,
    /// Largest `n` for the exhaustive group-law checks.
    pub arithmetic_n_max: u64,
    /// Largest `n` for the chain listing that includes the trivial subgroup.
    pub volf_n_max: u64,
    /// Largest `n` for materializing fuzzy subgroups.
    pub fuzzy_n_max: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_min: 1,
            n_max: 12,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            arithmetic_n_max: 4,
            volf_n_max: 6,
            fuzzy_n_max: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub n: u64,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn outcome(&self, n: u64, check: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.n == n && o.check == check)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "n={:<4} {:<28} {status}", o.n, o.check);
            if let Some(c) = &o.counterexample {
                let _ = write!(out, "  counterexample: {c}");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {failed} failed",
            self.outcomes.len(),
            self.outcomes.len() - failed
        );
        out
    }

    fn record(&mut self, n: u64, check: &str, result: std::result::Result<(), String>) {
        self.outcomes.push(CheckOutcome {
            n,
            check: check.to_string(),
            passed: result.is_ok(),
            counterexample: result.err(),
        });
    }
}

type Check = std::result::Result<(), String>;

/// Runs every oracle cross-check for each `n` in the configured range.
///
/// Fails up front if the largest group does not fit under the oracle limit.
pub fn verify_range(opts: &VerifyOptions) -> Result<VerifyReport> {
    GroupParams::new(opts.n_max)?.check_oracle_limit(opts.oracle_limit)?;
    let mut report = VerifyReport::default();
    for n in opts.n_min.max(1)..=opts.n_max {
        verify_one(GroupParams::new(n)?, opts, &mut report)?;
    }
    Ok(report)
}

fn verify_one(params: GroupParams, opts: &VerifyOptions, report: &mut VerifyReport) -> Result<()> {
    let n = params.n();
    let oracle = Oracle::new(params, opts.oracle_limit)?;
    let descs = enumerate_subgroups(params);
    let normal_descs = enumerate_normal_subgroups(params);
    let oracle_subs = oracle.all_subgroups();
    let oracle_normal: Vec<ElementSet> = oracle_subs
        .iter()
        .filter(|h| oracle.is_normal(h))
        .cloned()
        .collect();

    if n <= opts.arithmetic_n_max {
        report.record(n, "group-laws", check_group_laws(params));
        report.record(n, "power-law", check_power_law(params));
    }
    report.record(n, "defining-relations", check_relations(params));
    report.record(n, "subgroup-family", check_family(params, &descs, &oracle_subs));
    report.record(n, "exclusivity", check_exclusive(params, &descs));
    report.record(n, "subgroups-closed", check_closed(params, &oracle, &descs));
    report.record(n, "normal-family", check_family(params, &normal_descs, &oracle_normal));
    report.record(n, "normality-by-kind", check_normality_by_kind(params, &oracle, &descs));
    report.record(n, "count-formula", check_count_formula(params, &descs, &oracle_subs));
    report.record(n, "membership", check_membership(params, &descs));
    report.record(n, "containment", check_containment(params, &descs));

    let lat_all = Lattice::build(params, LatticeMode::All);
    let lat_normal = Lattice::build(params, LatticeMode::Normal);
    report.record(n, "order-laws", check_order_laws(&lat_all).and(check_order_laws(&lat_normal)));
    report.record(n, "hasse-closure", check_hasse(&lat_all).and(check_hasse(&lat_normal)));
    report.record(n, "normal-restriction", check_normal_restriction(&lat_all, &lat_normal));
    report.record(n, "normal-in-supergroup", check_normal_in_supergroup(&oracle, &lat_normal));

    let counts_all = ChainTable::compute(&lat_all).counts();
    let counts_normal = ChainTable::compute(&lat_normal).counts();
    let whole: ElementSet = params.all_elements().into_iter().collect();
    let nontrivial = |family: &[ElementSet]| -> Vec<ElementSet> {
        family.iter().filter(|h| h.len() > 1).cloned().collect()
    };
    report.record(
        n,
        "dp-vs-dfs-all",
        check_dp_vs_dfs(&counts_all, &lat_all, &nontrivial(&oracle_subs), &whole),
    );
    report.record(
        n,
        "dp-vs-dfs-normal",
        check_dp_vs_dfs(&counts_normal, &lat_normal, &nontrivial(&oracle_normal), &whole),
    );
    report.record(n, "murali-makamba", check_mm(&counts_all).and(check_mm(&counts_normal)));

    if n <= opts.volf_n_max {
        let with_trivial: BigUint = count_set_chains(&oracle_subs, &whole).iter().sum();
        let normal_with_trivial: BigUint = count_set_chains(&oracle_normal, &whole).iter().sum();
        report.record(
            n,
            "volf-doubling",
            expect_eq("all chains (all)", &with_trivial, &counts_all.fuzzy_count).and(expect_eq(
                "all chains (normal)",
                &normal_with_trivial,
                &counts_normal.fuzzy_count,
            )),
        );
    }
    if n <= opts.fuzzy_n_max {
        let classes = oracle_count_equivalence_classes(params, opts.oracle_limit)
            .map_err(|e| e.to_string())
            .and_then(|c| expect_eq("fuzzy classes", &c, &counts_all.fuzzy_count));
        report.record(n, "fuzzy-classes", classes);
        let normal_classes = oracle_count_normal_equivalence_classes(params, opts.oracle_limit)
            .map_err(|e| e.to_string())
            .and_then(|c| expect_eq("normal fuzzy classes", &c, &counts_normal.fuzzy_count));
        report.record(n, "normal-fuzzy-classes", normal_classes);
    }
    Ok(())
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, oracle: &T, fast: &T) -> Check {
    if oracle == fast {
        Ok(())
    } else {
        Err(format!("{what}: oracle {oracle:?} vs closed form {fast:?}"))
    }
}

fn show(set: &ElementSet) -> String {
    let words: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", words.join(", "))
}

pub fn check_group_laws(params: GroupParams) -> Check {
    let els = params.all_elements();
    let e = params.identity();
    for &x in &els {
        if params.multiply(e, x) != x || params.multiply(x, e) != x {
            return Err(format!("identity law fails at {x}"));
        }
        let inv = params.inverse(x);
        if !params.multiply(x, inv).is_identity() || !params.multiply(inv, x).is_identity() {
            return Err(format!("inverse law fails at {x}"));
        }
        for &y in &els {
            let xy = params.multiply(x, y);
            for &z in &els {
                if params.multiply(xy, z) != params.multiply(x, params.multiply(y, z)) {
                    return Err(format!("associativity fails at ({x}, {y}, {z})"));
                }
            }
        }
    }
    Ok(())
}

pub fn check_power_law(params: GroupParams) -> Check {
    for x in params.all_elements() {
        let mut acc = params.identity();
        for k in 0..=params.order() {
            if params.power(x, k) != acc {
                return Err(format!("{x}^{k}: closed form {} vs product {acc}", params.power(x, k)));
            }
            acc = params.multiply(acc, x);
        }
    }
    Ok(())
}

pub fn check_relations(params: GroupParams) -> Check {
    let (a, b) = (params.a(), params.b());
    if !params.power(b, 3).is_identity() {
        return Err("b^3 != e".into());
    }
    if !params.power(a, params.two_n()).is_identity() {
        return Err("a^(2n) != e".into());
    }
    if params.multiply(params.multiply(b, a), b) != a {
        return Err("bab != a".into());
    }
    Ok(())
}

fn check_family(params: GroupParams, descs: &[SubgroupDescriptor], oracle: &[ElementSet]) -> Check {
    let listed: BTreeSet<ElementSet> = descs.iter().map(|&d| subgroup_elements(params, d)).collect();
    let found: BTreeSet<ElementSet> = oracle.iter().cloned().collect();
    if let Some(missing) = found.difference(&listed).next() {
        return Err(format!("oracle subgroup {} not enumerated", show(missing)));
    }
    if let Some(extra) = listed.difference(&found).next() {
        return Err(format!("enumerated set {} not found by the oracle", show(extra)));
    }
    if listed.len() != descs.len() {
        return Err("two descriptors name the same subgroup".into());
    }
    Ok(())
}

fn check_exclusive(params: GroupParams, descs: &[SubgroupDescriptor]) -> Check {
    for (i, &d1) in descs.iter().enumerate() {
        for &d2 in &descs[i + 1..] {
            if subgroup_elements(params, d1) == subgroup_elements(params, d2) {
                return Err(format!("{d1} = {d2}"));
            }
        }
    }
    Ok(())
}

fn check_closed(params: GroupParams, oracle: &Oracle, descs: &[SubgroupDescriptor]) -> Check {
    match descs
        .iter()
        .find(|&&d| !oracle.is_subgroup(&subgroup_elements(params, d)))
    {
        Some(d) => Err(format!("{d} is not closed")),
        None => Ok(()),
    }
}

fn check_normality_by_kind(params: GroupParams, oracle: &Oracle, descs: &[SubgroupDescriptor]) -> Check {
    for &d in descs {
        let set = subgroup_elements(params, d);
        let escape = oracle.first_escaping_conjugate(&set, None);
        match (d, escape) {
            (SubgroupDescriptor::Twisted(..), None) => {
                return Err(format!("{d} passes the conjugation test"));
            }
            (SubgroupDescriptor::Full(_), Some((h, g))) => {
                return Err(format!("{d} is not normal: conjugating {h} by {g}"));
            }
            (SubgroupDescriptor::Cyclic(t), escape) if (t % 2 == 0) != escape.is_none() => {
                return Err(format!("{d}: normality does not match the parity of t"));
            }
            _ => {}
        }
    }
    Ok(())
}

fn check_count_formula(params: GroupParams, descs: &[SubgroupDescriptor], oracle: &[ElementSet]) -> Check {
    let formula = subgroup_count_formula(params.two_n());
    expect_eq("subgroup count", &oracle.len(), &formula)?;
    expect_eq("enumeration length", &descs.len(), &formula)
}

fn check_membership(params: GroupParams, descs: &[SubgroupDescriptor]) -> Check {
    let els = params.all_elements();
    for &d in descs {
        let set = subgroup_elements(params, d);
        if let Some(x) = els
            .iter()
            .find(|&&x| contains_element(params, d, x) != set.contains(&x))
        {
            return Err(format!("membership of {x} in {d}"));
        }
    }
    Ok(())
}

fn check_containment(params: GroupParams, descs: &[SubgroupDescriptor]) -> Check {
    let sets: Vec<ElementSet> = descs.iter().map(|&d| subgroup_elements(params, d)).collect();
    for (i, &d1) in descs.iter().enumerate() {
        for (j, &d2) in descs.iter().enumerate() {
            if subgroup_leq(params, d1, d2) != sets[i].is_subset(&sets[j]) {
                return Err(format!("{d1} <= {d2}"));
            }
        }
    }
    Ok(())
}

fn check_order_laws(lat: &Lattice) -> Check {
    let size = lat.len();
    for i in 0..size {
        if lat.precedes(i, i) {
            return Err(format!("{} < itself", lat.nodes()[i]));
        }
        if i != lat.top_index() && !lat.precedes(i, lat.top_index()) {
            return Err(format!("{} is not below the top", lat.nodes()[i]));
        }
        for &j in lat.strictly_above(i) {
            if lat.precedes(j, i) {
                return Err(format!("antisymmetry: {} and {}", lat.nodes()[i], lat.nodes()[j]));
            }
            for &k in lat.strictly_above(j) {
                if !lat.precedes(i, k) {
                    return Err(format!(
                        "transitivity: {} < {} < {}",
                        lat.nodes()[i],
                        lat.nodes()[j],
                        lat.nodes()[k]
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_hasse(lat: &Lattice) -> Check {
    let size = lat.len();
    let mut reach = vec![vec![false; size]; size];
    for (i, j) in lat.hasse_edges() {
        reach[i][j] = true;
    }
    for k in 0..size {
        for i in 0..size {
            if reach[i][k] {
                for j in 0..size {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..size {
        for j in 0..size {
            if reach[i][j] != lat.precedes(i, j) {
                return Err(format!("({}, {})", lat.nodes()[i], lat.nodes()[j]));
            }
        }
    }
    Ok(())
}

fn check_normal_restriction(all: &Lattice, normal: &Lattice) -> Check {
    let index = |d: SubgroupDescriptor| {
        all.index_of(d)
            .ok_or_else(|| format!("normal node {d} missing from the full lattice"))
    };
    for (i, &di) in normal.nodes().iter().enumerate() {
        let ai = index(di)?;
        for (j, &dj) in normal.nodes().iter().enumerate() {
            if normal.precedes(i, j) != all.precedes(ai, index(dj)?) {
                return Err(format!("({di}, {dj})"));
            }
        }
    }
    Ok(())
}

/// Every strict pair of the normal order is also normal inside the larger member.
fn check_normal_in_supergroup(oracle: &Oracle, normal: &Lattice) -> Check {
    let params = normal.params();
    for (i, j) in normal.strict_pairs() {
        let h = subgroup_elements(params, normal.nodes()[i]);
        let k = subgroup_elements(params, normal.nodes()[j]);
        if let Some((x, g)) = oracle.first_escaping_conjugate(&h, Some(&k)) {
            return Err(format!(
                "{} not normal in {}: conjugating {x} by {g}",
                normal.nodes()[i],
                normal.nodes()[j]
            ));
        }
    }
    Ok(())
}

fn check_dp_vs_dfs(counts: &ChainCounts, lat: &Lattice, family: &[ElementSet], whole: &ElementSet) -> Check {
    expect_eq("lattice DFS", &oracle_count_chains(lat), &counts.per_length)?;
    expect_eq("set-inclusion DFS", &count_set_chains(family, whole), &counts.per_length)
}

fn check_mm(counts: &ChainCounts) -> Check {
    let expected = &counts.fuzzy_count * 2u32 - 1u32;
    expect_eq("2 * fuzzy_count - 1", &expected, &counts.mm_count)
}
