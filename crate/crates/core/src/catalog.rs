//! Closed-form catalogue of the subgroups of `U_6n`.
//!
//! Every subgroup is one of `<a^t>`, `<a^t, b>` or `<a^t b^s>` with `t | 2n`.
//! The twisted family `<a^t b^s>` only yields new subgroups when `t` is odd or
//! `3 | 2n/t`; otherwise it collapses onto `<a^t, b>`. The normal subgroups are
//! `<a^t>` for even `t` together with every `<a^t, b>`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams, DEFAULT_ORACLE_LIMIT};

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(mut m: u64) -> Self {
        assert!(m >= 1, "cannot factor zero");
        let mut factors = Vec::new();
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Factorization { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, prime: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(p, _)| p == prime)
            .map_or(0, |&(_, e)| e)
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize + 1).product()
    }

    /// All divisors, in increasing order, built by walking exponent tuples.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1;
                for _ in 0..=e {
                    next.push(d * pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }

    /// Exponents of 2 and 3 plus the sorted exponents of the remaining primes.
    ///
    /// Two values of `2n` with the same shape give isomorphic subgroup lattices.
    pub fn shape(&self) -> (u32, u32, Vec<u32>) {
        let mut others: Vec<u32> = self
            .factors
            .iter()
            .filter(|&&(p, _)| p != 2 && p != 3)
            .map(|&(_, e)| e)
            .collect();
        others.sort_unstable();
        (self.exponent_of(2), self.exponent_of(3), others)
    }
}

/// Divisors of `two_n` in increasing order.
pub fn divisors(two_n: u64) -> Vec<u64> {
    Factorization::of(two_n).divisors()
}

/// Symbolic name of a subgroup of `U_6n`.
///
/// The derived ordering (kind, then `t`, then `s`) is the global node order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupDescriptor {
    /// `<a^t>`
    Cyclic(u64),
    /// `<a^t, b>`
    Full(u64),
    /// `<a^t b^s>`, `s` in {1, 2}
    Twisted(u64, u8),
}

use SubgroupDescriptor::{Cyclic, Full, Twisted};

impl SubgroupDescriptor {
    pub fn t(self) -> u64 {
        match self {
            Cyclic(t) | Full(t) | Twisted(t, _) => t,
        }
    }

    /// The whole group `<a, b>`.
    pub fn whole() -> Self {
        Full(1)
    }

    /// The trivial subgroup `<a^(2n)> = {e}`.
    pub fn trivial(params: GroupParams) -> Self {
        Cyclic(params.two_n())
    }

    pub fn validate(self, params: GroupParams) -> Result<()> {
        let two_n = params.two_n();
        let fail = |reason: String| {
            Err(Error::InvalidDescriptor {
                desc: self.to_string(),
                order: params.order(),
                reason,
            })
        };
        let t = self.t();
        if t == 0 || two_n % t != 0 {
            return fail(format!("t = {t} does not divide 2n = {two_n}"));
        }
        if let Twisted(_, s) = self {
            if s != 1 && s != 2 {
                return fail(format!("b-exponent s = {s} must be 1 or 2"));
            }
            if !twisted_is_distinct(two_n, t) {
                return fail(format!(
                    "t = {t} is even and 3 does not divide 2n/t; this coincides with F({t})"
                ));
            }
        }
        Ok(())
    }

    /// Generators as canonical elements.
    pub fn generators(self, params: GroupParams) -> Vec<Element> {
        match self {
            Cyclic(t) => vec![params.element(t, 0)],
            Full(t) => vec![params.element(t, 0), params.b()],
            Twisted(t, s) => vec![params.element(t, u64::from(s))],
        }
    }
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cyclic(t) => write!(f, "C({t})"),
            Full(t) => write!(f, "F({t})"),
            Twisted(t, s) => write!(f, "T({t},{s})"),
        }
    }
}

impl FromStr for SubgroupDescriptor {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParseDescriptor {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let (kind, rest) = compact.split_at(compact.find('(').ok_or_else(|| err("missing '('"))?);
        let args = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("expected KIND(args)"))?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|a| a.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err("arguments must be nonnegative integers"))?;
        match (kind, nums.as_slice()) {
            ("C", &[t]) => Ok(Cyclic(t)),
            ("F", &[t]) => Ok(Full(t)),
            ("T", &[t, s]) if s == 1 || s == 2 => Ok(Twisted(t, s as u8)),
            ("T", &[_, _]) => Err(err("s must be 1 or 2")),
            ("C" | "F" | "T", _) => Err(err("wrong number of arguments")),
            _ => Err(err("kind must be C, F or T")),
        }
    }
}

/// `<a^t b^s>` is a subgroup distinct from `<a^t, b>` iff `t` is odd or `3 | 2n/t`.
fn twisted_is_distinct(two_n: u64, t: u64) -> bool {
    t % 2 == 1 || (two_n / t) % 3 == 0
}

/// All subgroups of `U_6n`, including `{e} = C(2n)` and `G = F(1)`.
///
/// For groups small enough to tabulate, the element sets are checked to be
/// pairwise distinct before returning.
pub fn enumerate_subgroups(params: GroupParams) -> Vec<SubgroupDescriptor> {
    let two_n = params.two_n();
    let divs = divisors(two_n);
    let mut out = Vec::with_capacity(4 * divs.len());
    out.extend(divs.iter().map(|&t| Cyclic(t)));
    out.extend(divs.iter().map(|&t| Full(t)));
    for &t in divs.iter().filter(|&&t| twisted_is_distinct(two_n, t)) {
        out.push(Twisted(t, 1));
        out.push(Twisted(t, 2));
    }
    if params.order() <= DEFAULT_ORACLE_LIMIT {
        assert_exclusive(params, &out);
    }
    out
}

/// Normal subgroups: `C(t)` for even `t`, and every `F(t)`.
pub fn enumerate_normal_subgroups(params: GroupParams) -> Vec<SubgroupDescriptor> {
    let divs = divisors(params.two_n());
    let mut out: Vec<_> = divs
        .iter()
        .filter(|&&t| t % 2 == 0)
        .map(|&t| Cyclic(t))
        .collect();
    out.extend(divs.iter().map(|&t| Full(t)));
    out
}

fn assert_exclusive(params: GroupParams, descs: &[SubgroupDescriptor]) {
    let mut seen = HashSet::with_capacity(descs.len());
    for &d in descs {
        let set = subgroup_elements(params, d);
        assert!(
            seen.insert(set),
            "{d} duplicates another subgroup of U_{}",
            params.order()
        );
    }
}

/// Explicit element set of the subgroup named by `d`.
pub fn subgroup_elements(params: GroupParams, d: SubgroupDescriptor) -> BTreeSet<Element> {
    let two_n = params.two_n();
    let t = d.t();
    let steps = two_n / t;
    match d {
        Cyclic(_) => (1..=steps).map(|k| params.element(t * k, 0)).collect(),
        Full(_) => (1..=steps)
            .flat_map(|k| (0..3).map(move |u| params.element(t * k, u)))
            .collect(),
        Twisted(_, s) => {
            let s = u64::from(s);
            if t % 2 == 1 {
                (1..=steps)
                    .map(|k| params.element(t * k, s * (k % 2)))
                    .collect()
            } else {
                (1..=steps).map(|k| params.element(t * k, s * k)).collect()
            }
        }
    }
}

pub fn subgroup_order(params: GroupParams, d: SubgroupDescriptor) -> u64 {
    let index_in_a = params.two_n() / d.t();
    match d {
        Full(_) => 3 * index_in_a,
        Cyclic(_) | Twisted(..) => index_in_a,
    }
}

/// Membership of `x` in the subgroup named by `d`, without listing elements.
pub fn contains_element(_params: GroupParams, d: SubgroupDescriptor, x: Element) -> bool {
    let t = d.t();
    let (u, v) = (x.a_exp(), u64::from(x.b_exp()));
    if u % t != 0 {
        return false;
    }
    match d {
        Cyclic(_) => v == 0,
        Full(_) => true,
        Twisted(_, s) => {
            let k = u / t;
            let s = u64::from(s);
            if t % 2 == 1 {
                v == (s * (k % 2)) % 3
            } else {
                v == (s * (k % 3)) % 3
            }
        }
    }
}

/// Whether the subgroup `d1` is contained in `d2`, tested on `d1`'s generators.
pub fn subgroup_leq(params: GroupParams, d1: SubgroupDescriptor, d2: SubgroupDescriptor) -> bool {
    d1.generators(params)
        .into_iter()
        .all(|g| contains_element(params, d2, g))
}

/// Number of subgroups predicted from the divisors of `2n` alone.
pub fn subgroup_count_formula(two_n: u64) -> usize {
    let divs = divisors(two_n);
    let twisted = divs
        .iter()
        .filter(|&&t| twisted_is_distinct(two_n, t))
        .count();
    2 * divs.len() + 2 * twisted
}

/// Number of normal subgroups predicted from the divisors of `2n` alone.
pub fn normal_subgroup_count_formula(two_n: u64) -> usize {
    let divs = divisors(two_n);
    divs.len() + divs.iter().filter(|&&t| t % 2 == 0).count()
}
