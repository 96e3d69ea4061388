//! Brute-force ground truth.
//!
//! Nothing in here uses the closed-form catalogue to decide a fact: subgroups
//! come from closing generator sets on the Cayley table, normality from
//! conjugating every element, chain counts from explicit listing, and fuzzy
//! subgroups are materialized as exact-rational grade maps and checked against
//! the axioms pair by pair.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::{subgroup_elements, subgroup_leq, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, Element, GroupParams};
use crate::lattice::Lattice;

pub type ElementSet = BTreeSet<Element>;

/// Subgroup discovery and normality tests driven by the multiplication table.
#[derive(Debug, Clone)]
pub struct Oracle {
    table: CayleyTable,
}

impl Oracle {
    pub fn new(params: GroupParams, limit: u64) -> Result<Self> {
        Ok(Oracle {
            table: CayleyTable::new(params, limit)?,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.table.params()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    fn to_bits(&self, set: &ElementSet) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.table.len());
        for &x in set {
            bits.insert(self.params().index_of(x));
        }
        bits
    }

    fn to_set(&self, bits: &FixedBitSet) -> ElementSet {
        bits.ones().map(|i| self.table.elements()[i]).collect()
    }

    /// Smallest subgroup containing the generators (element indices).
    fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let size = self.table.len();
        let mut seen = FixedBitSet::with_capacity(size);
        let identity = self.params().index_of(Element::IDENTITY);
        seen.insert(identity);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table.product_index(x, g);
                if !seen.put(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Every subgroup, found as a fixpoint: start from the cyclic subgroups and
    /// keep adjoining one more element to known subgroups until nothing new
    /// appears. Sorted by size, then by elements.
    pub fn all_subgroups(&self) -> Vec<ElementSet> {
        let params = self.params();
        let size = self.table.len();
        let mut known: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        let mut work = VecDeque::new();

        for (i, &g) in self.table.elements().iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(size);
            for k in 0..params.order() {
                bits.insert(params.index_of(params.power(g, k)));
            }
            if !known.contains_key(&bits) {
                known.insert(bits.clone(), vec![i]);
                work.push_back(bits);
            }
        }

        while let Some(h) = work.pop_front() {
            let gens = known[&h].clone();
            for g in 0..size {
                if h.contains(g) {
                    continue;
                }
                let mut extended = gens.clone();
                extended.push(g);
                let bigger = self.closure(&extended);
                if !known.contains_key(&bigger) {
                    known.insert(bigger.clone(), extended);
                    work.push_back(bigger);
                }
            }
        }

        let mut out: Vec<ElementSet> = known.keys().map(|b| self.to_set(b)).collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out
    }

    /// Closed under products and inverses, and contains the identity.
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        let bits = self.to_bits(set);
        let identity = self.params().index_of(Element::IDENTITY);
        bits.contains(identity)
            && bits.ones().all(|i| {
                bits.contains(self.table.inverse_index(i))
                    && bits.ones().all(|j| bits.contains(self.table.product_index(i, j)))
            })
    }

    /// `g^-1 h g` stays in `h_set` for every `g` in the group.
    pub fn is_normal(&self, h_set: &ElementSet) -> bool {
        self.first_escaping_conjugate(h_set, None).is_none()
    }

    /// Normality of `h_set` inside the subgroup `k_set` only.
    pub fn is_normal_in(&self, h_set: &ElementSet, k_set: &ElementSet) -> bool {
        self.first_escaping_conjugate(h_set, Some(k_set)).is_none()
    }

    /// A pair `(h, g)` with `g^-1 h g` outside `h_set`, if one exists.
    pub fn first_escaping_conjugate(
        &self,
        h_set: &ElementSet,
        within: Option<&ElementSet>,
    ) -> Option<(Element, Element)> {
        let params = self.params();
        let all = self.table.elements();
        let conjugators: Vec<Element> = match within {
            Some(k) => k.iter().copied().collect(),
            None => all.to_vec(),
        };
        for &g in &conjugators {
            for &h in h_set {
                if !h_set.contains(&params.conjugate(h, g)) {
                    return Some((h, g));
                }
            }
        }
        None
    }

    pub fn normal_subgroups(&self) -> Vec<ElementSet> {
        self.all_subgroups()
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect()
    }
}

pub fn oracle_all_subgroups(params: GroupParams, limit: u64) -> Result<Vec<ElementSet>> {
    Ok(Oracle::new(params, limit)?.all_subgroups())
}

pub fn oracle_is_normal(params: GroupParams, h_set: &ElementSet) -> bool {
    params.all_elements().into_iter().all(|g| {
        h_set
            .iter()
            .all(|&h| h_set.contains(&params.conjugate(h, g)))
    })
}

/// Chains of lattice nodes, listed explicitly by depth-first search downward
/// from the top. Each chain is returned bottom-up, ending at the top.
pub fn list_lattice_chains(lat: &Lattice) -> Vec<Vec<usize>> {
    let below: Vec<Vec<usize>> = (0..lat.len())
        .map(|j| (0..lat.len()).filter(|&i| lat.precedes(i, j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut path = vec![lat.top_index()];
    fn dfs(below: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut chain = path.clone();
        chain.reverse();
        out.push(chain);
        let current = *path.last().expect("path starts at the top");
        for &i in &below[current] {
            path.push(i);
            dfs(below, path, out);
            path.pop();
        }
    }
    dfs(&below, &mut path, &mut out);
    out
}

/// Per-length chain counts by explicit listing; index `k` counts chains with
/// `k + 1` members.
pub fn oracle_count_chains(lat: &Lattice) -> Vec<BigUint> {
    histogram(list_lattice_chains(lat).iter().map(Vec::len))
}

/// Chains of sets under strict inclusion that end at `top`, listed by DFS over
/// the family. Chains are returned bottom-up.
pub fn list_set_chains(family: &[ElementSet], top: &ElementSet) -> Vec<Vec<ElementSet>> {
    let mut out = Vec::new();
    let mut path = vec![top.clone()];
    fn dfs(family: &[ElementSet], path: &mut Vec<ElementSet>, out: &mut Vec<Vec<ElementSet>>) {
        let mut chain = path.clone();
        chain.reverse();
        out.push(chain);
        let current = path.last().expect("path starts at the top").clone();
        for h in family {
            if h.len() < current.len() && h.is_subset(&current) {
                path.push(h.clone());
                dfs(family, path, out);
                path.pop();
            }
        }
    }
    dfs(family, &mut path, &mut out);
    out
}

/// Per-length counts of chains ending at `top` within `family`.
pub fn count_set_chains(family: &[ElementSet], top: &ElementSet) -> Vec<BigUint> {
    histogram(list_set_chains(family, top).iter().map(Vec::len))
}

fn histogram(lengths: impl Iterator<Item = usize>) -> Vec<BigUint> {
    let mut counts: Vec<BigUint> = Vec::new();
    for len in lengths {
        if counts.len() < len {
            counts.resize(len, BigUint::zero());
        }
        counts[len - 1] += 1u32;
    }
    counts
}

/// A strictly ascending chain of subgroups ending at the whole group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    members: Vec<SubgroupDescriptor>,
}

impl Chain {
    pub fn new(params: GroupParams, members: Vec<SubgroupDescriptor>) -> Result<Self> {
        if members.last() != Some(&SubgroupDescriptor::whole()) {
            return Err(Error::InvalidChain("a chain must end at F(1)".into()));
        }
        for d in &members {
            d.validate(params)?;
        }
        for w in members.windows(2) {
            if w[0] == w[1] || !subgroup_leq(params, w[0], w[1]) {
                return Err(Error::InvalidChain(format!(
                    "{} is not a proper subgroup of {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Chain { members })
    }

    pub fn members(&self) -> &[SubgroupDescriptor] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Exact-rational membership grades on every element of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyMap {
    params: GroupParams,
    grades: Vec<BigRational>,
}

impl FuzzyMap {
    pub fn constant(params: GroupParams, grade: BigRational) -> Self {
        FuzzyMap {
            params,
            grades: vec![grade; params.order() as usize],
        }
    }

    /// Builds a map from a grade function; every grade must lie in `[0, 1]`.
    pub fn from_fn(params: GroupParams, mut grade: impl FnMut(Element) -> BigRational) -> Result<Self> {
        let grades: Vec<BigRational> = params.all_elements().into_iter().map(&mut grade).collect();
        if let Some(bad) = grades.iter().find(|g| !in_unit_interval(g)) {
            return Err(Error::InvalidGrade(bad.to_string()));
        }
        Ok(FuzzyMap { params, grades })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn grade(&self, x: Element) -> &BigRational {
        &self.grades[self.params.index_of(x)]
    }

    /// First pair `(x, y)` breaking `mu(xy) >= min(mu(x), mu(y))`, or an
    /// element `(x, x)` breaking `mu(x^-1) >= mu(x)`.
    pub fn first_axiom_violation(&self) -> Option<(Element, Element)> {
        let p = self.params;
        let els = p.all_elements();
        for &x in &els {
            if self.grade(p.inverse(x)) < self.grade(x) {
                return Some((x, x));
            }
            for &y in &els {
                let floor = self.grade(x).min(self.grade(y));
                if self.grade(p.multiply(x, y)) < floor {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_fuzzy_subgroup(&self) -> bool {
        self.first_axiom_violation().is_none()
    }

    /// First pair with `mu(xy) != mu(yx)`.
    pub fn first_normality_violation(&self) -> Option<(Element, Element)> {
        let p = self.params;
        let els = p.all_elements();
        for &x in &els {
            for &y in &els {
                if self.grade(p.multiply(x, y)) != self.grade(p.multiply(y, x)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_normal_fuzzy(&self) -> bool {
        self.first_normality_violation().is_none()
    }

    /// Dense rank of each element's grade, 0 for the largest grade.
    ///
    /// Two maps are equivalent exactly when their signatures coincide.
    pub fn rank_signature(&self) -> Vec<usize> {
        let mut distinct: Vec<&BigRational> = self.grades.iter().collect();
        distinct.sort_unstable_by(|a, b| b.cmp(a));
        distinct.dedup();
        self.grades
            .iter()
            .map(|g| {
                distinct
                    .binary_search_by(|probe| g.cmp(probe))
                    .expect("grade is present")
            })
            .collect()
    }

    /// Number of distinct grade values.
    pub fn level_count(&self) -> usize {
        self.grades.iter().collect::<HashSet<_>>().len()
    }
}

fn in_unit_interval(g: &BigRational) -> bool {
    *g >= BigRational::zero() && *g <= BigRational::one()
}

/// `mu ~ nu` iff `mu(x) > mu(y) <=> nu(x) > nu(y)` for all `x, y`; checked on
/// every pair.
pub fn equivalent(mu: &FuzzyMap, nu: &FuzzyMap) -> bool {
    assert_eq!(mu.params, nu.params, "maps over different groups");
    let els = mu.params.all_elements();
    els.iter().all(|&x| {
        els.iter()
            .all(|&y| (mu.grade(x) > mu.grade(y)) == (nu.grade(x) > nu.grade(y)))
    })
}

/// The default levels `1, 1/2, ..., 1/k`.
pub fn harmonic_levels(k: usize) -> Vec<BigRational> {
    (1..=k)
        .map(|i| BigRational::new(BigInt::one(), BigInt::from(i)))
        .collect()
}

/// Grade map for a chain of element sets `H_1 < ... < H_k`: every element gets
/// the level of the first member containing it.
pub fn representative_from_sets(
    params: GroupParams,
    chain: &[ElementSet],
    levels: &[BigRational],
) -> Result<FuzzyMap> {
    if chain.len() != levels.len() {
        return Err(Error::InvalidChain(format!(
            "{} members but {} levels",
            chain.len(),
            levels.len()
        )));
    }
    if levels.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidChain("levels must strictly decrease".into()));
    }
    let mut missing = None;
    let map = FuzzyMap::from_fn(params, |x| match chain.iter().position(|h| h.contains(&x)) {
        Some(i) => levels[i].clone(),
        None => {
            missing = Some(x);
            BigRational::zero()
        }
    })?;
    match missing {
        Some(x) => Err(Error::InvalidChain(format!(
            "{x} is outside the last chain member"
        ))),
        None => Ok(map),
    }
}

pub fn chain_to_representative(params: GroupParams, chain: &Chain) -> FuzzyMap {
    chain_to_representative_with_levels(params, chain, &harmonic_levels(chain.len()))
        .expect("harmonic levels fit any valid chain")
}

pub fn chain_to_representative_with_levels(
    params: GroupParams,
    chain: &Chain,
    levels: &[BigRational],
) -> Result<FuzzyMap> {
    let sets: Vec<ElementSet> = chain
        .members()
        .iter()
        .map(|&d| subgroup_elements(params, d))
        .collect();
    representative_from_sets(params, &sets, levels)
}

/// Number of equivalence classes of fuzzy subgroups, by materializing one
/// representative per chain of subgroups ending at the whole group (the trivial
/// subgroup allowed) and checking that:
///
/// * every representative satisfies both fuzzy subgroup axioms,
/// * re-leveling a chain keeps its representative in the same class,
/// * distinct chains land in distinct classes.
pub fn oracle_count_equivalence_classes(params: GroupParams, limit: u64) -> Result<BigUint> {
    let oracle = Oracle::new(params, limit)?;
    let family = oracle.all_subgroups();
    let whole: ElementSet = params.all_elements().into_iter().collect();
    count_classes_over(params, &family, &whole, |_| Ok(()))
}

/// As [`oracle_count_equivalence_classes`] restricted to normal subgroups, also
/// requiring every representative to be a normal fuzzy subgroup.
pub fn oracle_count_normal_equivalence_classes(params: GroupParams, limit: u64) -> Result<BigUint> {
    let oracle = Oracle::new(params, limit)?;
    let family = oracle.normal_subgroups();
    let whole: ElementSet = params.all_elements().into_iter().collect();
    count_classes_over(params, &family, &whole, |mu| {
        match mu.first_normality_violation() {
            Some((x, y)) => Err(format!("mu({x} * {y}) != mu({y} * {x})")),
            None => Ok(()),
        }
    })
}

fn count_classes_over(
    params: GroupParams,
    family: &[ElementSet],
    whole: &ElementSet,
    extra_check: impl Fn(&FuzzyMap) -> std::result::Result<(), String>,
) -> Result<BigUint> {
    let chains = list_set_chains(family, whole);
    let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps = Vec::with_capacity(chains.len());
    for (c, chain) in chains.iter().enumerate() {
        let mu = representative_from_sets(params, chain, &harmonic_levels(chain.len()))?;
        if let Some((x, y)) = mu.first_axiom_violation() {
            return Err(Error::OracleMismatch(format!(
                "chain #{c} representative breaks the axioms at ({x}, {y})"
            )));
        }
        extra_check(&mu).map_err(|m| Error::OracleMismatch(format!("chain #{c}: {m}")))?;

        // same chain, different level values: 1/2, 1/4, ..., 1/2^k
        let relevel: Vec<BigRational> = (1..=chain.len())
            .map(|i| BigRational::new(BigInt::one(), BigInt::from(2u32).pow(i as u32)))
            .collect();
        let nu = representative_from_sets(params, chain, &relevel)?;
        if mu.rank_signature() != nu.rank_signature() || !equivalent(&mu, &nu) {
            return Err(Error::OracleMismatch(format!(
                "re-leveling chain #{c} changed its class"
            )));
        }
        if let Some(other) = signatures.insert(mu.rank_signature(), c) {
            return Err(Error::OracleMismatch(format!(
                "chains #{other} and #{c} give equivalent fuzzy subgroups"
            )));
        }
        reps.push(mu);
    }
    // all-pairs cross-check of the signature shortcut on the smallest groups
    if params.n() <= 2 {
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if equivalent(&reps[i], &reps[j]) {
                    return Err(Error::OracleMismatch(format!(
                        "chains #{i} and #{j} are equivalent"
                    )));
                }
            }
        }
    }
    Ok(BigUint::from(chains.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::enumerate_subgroups;
    use crate::catalog::SubgroupDescriptor::{Cyclic, Full, Twisted};
    use crate::group::DEFAULT_ORACLE_LIMIT;
    use crate::lattice::LatticeMode;

    fn p(n: u64) -> GroupParams {
        GroupParams::new(n).unwrap()
    }

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn set(g: GroupParams, words: &[&str]) -> ElementSet {
        words.iter().map(|w| g.parse_element(w).unwrap()).collect()
    }

    fn big(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn subgroup_discovery_counts() {
        let subs = oracle_all_subgroups(p(1), DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(subs.len(), 6);
        assert_eq!(oracle_all_subgroups(p(2), DEFAULT_ORACLE_LIMIT).unwrap().len(), 8);
        for n in 1..=5 {
            let g = p(n);
            let subs = oracle_all_subgroups(g, DEFAULT_ORACLE_LIMIT).unwrap();
            assert!(subs.contains(&ElementSet::from([Element::IDENTITY])));
            assert!(subs.contains(&g.all_elements().into_iter().collect()));
            let oracle = Oracle::new(g, DEFAULT_ORACLE_LIMIT).unwrap();
            assert!(subs.iter().all(|h| oracle.is_subgroup(h)));
        }
        assert!(matches!(
            oracle_all_subgroups(p(51), DEFAULT_ORACLE_LIMIT),
            Err(Error::OracleLimitExceeded { .. })
        ));
    }

    #[test]
    fn normality_examples() {
        let g = p(1);
        assert!(oracle_is_normal(g, &g.all_elements().into_iter().collect()));
        assert!(!oracle_is_normal(g, &set(g, &["e", "a b"])));
        assert!(oracle_is_normal(g, &set(g, &["e", "b", "b^2"])));
        let oracle = Oracle::new(g, DEFAULT_ORACLE_LIMIT).unwrap();
        let witness = oracle.first_escaping_conjugate(&set(g, &["e", "a b"]), None);
        assert!(witness.is_some());
        assert_eq!(oracle.normal_subgroups().len(), 3);
    }

    #[test]
    fn lattice_chain_listing() {
        let lat = Lattice::build(p(1), LatticeMode::All);
        assert_eq!(oracle_count_chains(&lat), big(&[1, 4]));
        let lat = Lattice::build(p(2), LatticeMode::All);
        assert_eq!(oracle_count_chains(&lat), big(&[1, 6, 5]));
        assert_eq!(list_lattice_chains(&lat).len(), 12);
        for chain in list_lattice_chains(&lat) {
            assert_eq!(*chain.last().unwrap(), lat.top_index());
        }
    }

    #[test]
    fn set_chain_listing_includes_trivial_variant() {
        let g = p(1);
        let subs = oracle_all_subgroups(g, DEFAULT_ORACLE_LIMIT).unwrap();
        let whole: ElementSet = g.all_elements().into_iter().collect();
        assert_eq!(count_set_chains(&subs, &whole), big(&[1, 5, 4]));
    }

    #[test]
    fn chain_validation() {
        let g = p(2);
        assert!(Chain::new(g, vec![Cyclic(2), Full(2), Full(1)]).is_ok());
        assert!(Chain::new(g, vec![Full(2)]).is_err());
        assert!(Chain::new(g, vec![Full(2), Cyclic(2), Full(1)]).is_err());
        assert!(Chain::new(g, vec![Full(1), Full(1)]).is_err());
        assert!(Chain::new(g, vec![Twisted(2, 1), Full(1)]).is_err());
    }

    #[test]
    fn representative_examples() {
        let g = p(1);
        let whole = Chain::new(g, vec![Full(1)]).unwrap();
        let mu = chain_to_representative(g, &whole);
        assert_eq!(mu, FuzzyMap::constant(g, BigRational::one()));

        let c = Chain::new(g, vec![Full(2), Full(1)]).unwrap();
        let mu = chain_to_representative(g, &c);
        for w in ["e", "b", "b^2"] {
            assert_eq!(*mu.grade(g.parse_element(w).unwrap()), BigRational::one());
        }
        for w in ["a", "a b", "a b^2"] {
            assert_eq!(*mu.grade(g.parse_element(w).unwrap()), q(1, 2));
        }
        assert!(mu.is_fuzzy_subgroup());
        assert!(mu.is_normal_fuzzy());

        for n in 1..=3 {
            let g = p(n);
            let lat = Lattice::build(g, LatticeMode::All);
            for idx in list_lattice_chains(&lat) {
                let chain = Chain::new(g, idx.iter().map(|&i| lat.nodes()[i]).collect()).unwrap();
                let mu = chain_to_representative(g, &chain);
                assert_eq!(mu.level_count(), chain.len());
                assert!(mu.is_fuzzy_subgroup());
            }
        }
    }

    #[test]
    fn levels_must_decrease() {
        let g = p(1);
        let c = Chain::new(g, vec![Full(2), Full(1)]).unwrap();
        assert!(chain_to_representative_with_levels(g, &c, &[q(1, 2), q(1, 1)]).is_err());
        assert!(chain_to_representative_with_levels(g, &c, &[q(1, 1)]).is_err());
        assert!(chain_to_representative_with_levels(g, &c, &[q(3, 2), q(1, 2)]).is_err());
        assert!(chain_to_representative_with_levels(g, &c, &[q(1, 1), q(0, 1)]).is_ok());
    }

    #[test]
    fn axiom_checks() {
        let g = p(1);
        assert!(FuzzyMap::constant(g, BigRational::one()).is_fuzzy_subgroup());
        assert!(FuzzyMap::constant(g, BigRational::one()).is_normal_fuzzy());

        let a_level = set(g, &["e", "a"]);
        let mu = FuzzyMap::from_fn(g, |x| if a_level.contains(&x) { q(1, 1) } else { q(1, 2) }).unwrap();
        assert!(mu.is_fuzzy_subgroup());

        let ab = g.parse_element("a b").unwrap();
        let mu = FuzzyMap::from_fn(g, |x| if x == ab { q(1, 1) } else { q(1, 2) }).unwrap();
        assert!(!mu.is_fuzzy_subgroup());
        let (x, y) = mu.first_axiom_violation().unwrap();
        assert!(mu.grade(g.multiply(x, y)) < mu.grade(x).min(mu.grade(y)) || x == y);

        let c = Chain::new(g, vec![Cyclic(1), Full(1)]).unwrap();
        let mu = chain_to_representative(g, &c);
        assert!(mu.is_fuzzy_subgroup());
        assert!(!mu.is_normal_fuzzy());

        assert!(FuzzyMap::from_fn(g, |_| q(2, 1)).is_err());
        assert!(FuzzyMap::from_fn(g, |_| q(-1, 3)).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let g = p(1);
        let c = Chain::new(g, vec![Full(2), Full(1)]).unwrap();
        let mu = chain_to_representative(g, &c);
        assert!(equivalent(&mu, &mu));
        let nu = chain_to_representative_with_levels(g, &c, &[q(1, 1), q(1, 3)]).unwrap();
        assert!(equivalent(&mu, &nu));
        assert_eq!(mu.rank_signature(), nu.rank_signature());
        let other = chain_to_representative(g, &Chain::new(g, vec![Cyclic(1), Full(1)]).unwrap());
        assert!(!equivalent(&mu, &other));
        assert_ne!(mu.rank_signature(), other.rank_signature());
    }

    #[test]
    fn class_counts() {
        assert_eq!(
            oracle_count_equivalence_classes(p(1), DEFAULT_ORACLE_LIMIT).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            oracle_count_equivalence_classes(p(2), DEFAULT_ORACLE_LIMIT).unwrap(),
            BigUint::from(24u32)
        );
        assert_eq!(
            oracle_count_normal_equivalence_classes(p(2), DEFAULT_ORACLE_LIMIT).unwrap(),
            BigUint::from(12u32)
        );
        for n in 1..=4 {
            let c = oracle_count_equivalence_classes(p(n), DEFAULT_ORACLE_LIMIT).unwrap();
            assert_eq!(&c % 2u32, BigUint::zero());
        }
    }

    #[test]
    fn oracle_subgroups_match_catalogue_small() {
        for n in 1..=6 {
            let g = p(n);
            let found: BTreeSet<ElementSet> =
                oracle_all_subgroups(g, DEFAULT_ORACLE_LIMIT).unwrap().into_iter().collect();
            let listed: BTreeSet<ElementSet> = enumerate_subgroups(g)
                .into_iter()
                .map(|d| subgroup_elements(g, d))
                .collect();
            assert_eq!(found, listed, "n={n}");
        }
    }
}
