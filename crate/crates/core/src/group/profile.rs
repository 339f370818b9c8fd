//! Order profiles, Sylow data derived from them, and cycle-type counting
//! for symmetric and alternating groups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::arith::{self, divides, euler_phi};

/// Multiplicity of each element order in a finite group.
///
/// The order supergraph of a group is determined (up to relabeling) by this
/// profile alone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderProfile {
    counts: BTreeMap<u64, u64>,
}

impl OrderProfile {
    /// Builds a profile from a list of element orders.
    pub fn from_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        let mut counts = BTreeMap::new();
        for d in orders {
            *counts.entry(d).or_insert(0) += 1;
        }
        Self { counts }
    }

    /// Builds a profile from `(order, multiplicity)` pairs and checks the
    /// structural invariants that do not need the group itself.
    pub fn from_counts<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self, GroupError> {
        let mut counts = BTreeMap::new();
        for (d, m) in pairs {
            if d == 0 || m == 0 {
                return Err(GroupError::InvalidProfile(format!(
                    "order {d} with multiplicity {m}"
                )));
            }
            if counts.insert(d, m).is_some() {
                return Err(GroupError::InvalidProfile(format!("order {d} listed twice")));
            }
        }
        let profile = Self { counts };
        profile.validate()?;
        Ok(profile)
    }

    /// Profile of `G x H`: the order of `(g, h)` is `lcm(o(g), o(h))`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let mut counts = BTreeMap::new();
        for (&a, &m) in &self.counts {
            for (&b, &k) in &other.counts {
                *counts.entry(arith::lcm(a, b)).or_insert(0) += m * k;
            }
        }
        Self { counts }
    }

    /// Checks `m(1) = 1`, that every order divides `|G|`, and that
    /// `phi(d) | m(d)` for every order present.
    pub fn validate(&self) -> Result<(), GroupError> {
        if self.count(1) != 1 {
            return Err(GroupError::InvalidProfile(format!(
                "identity multiplicity is {}, expected 1",
                self.count(1)
            )));
        }
        let n = self.group_order();
        for (&d, &m) in &self.counts {
            if !divides(d, n) {
                return Err(GroupError::InvalidProfile(format!(
                    "order {d} does not divide group order {n}"
                )));
            }
            if m % euler_phi(d) != 0 {
                return Err(GroupError::InvalidProfile(format!(
                    "multiplicity {m} of order {d} is not a multiple of phi({d})"
                )));
            }
        }
        Ok(())
    }

    pub fn count(&self, order: u64) -> u64 {
        self.counts.get(&order).copied().unwrap_or(0)
    }

    /// Distinct element orders, ascending.
    pub fn orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&d, &m)| (d, m))
    }

    pub fn as_map(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn group_order(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.orders().fold(1, arith::lcm)
    }

    /// Sylow data for `p`, or `Ok(None)` when `p` does not divide `|G|`.
    pub fn sylow_facts(&self, p: u64) -> Result<Option<SylowFacts>, GroupError> {
        if !arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let n = self.group_order();
        if !n.is_multiple_of(p) {
            return Ok(None);
        }
        let mut exponent = 1;
        let mut p_element_count = 0;
        for (d, m) in self.iter() {
            if d == 1 || arith::prime_power_base(d) == Some(p) {
                exponent = exponent.max(d);
                p_element_count += m;
            }
        }
        let sylow_order = arith::p_part(n, p);
        Ok(Some(SylowFacts {
            prime: p,
            sylow_order,
            exponent,
            p_element_count,
            is_normal: p_element_count == sylow_order,
        }))
    }

    /// Sylow data for every prime dividing `|G|`, ascending by prime.
    pub fn all_sylow_facts(&self) -> Vec<SylowFacts> {
        arith::prime_divisors(self.group_order())
            .into_iter()
            .map(|p| {
                self.sylow_facts(p)
                    .expect("prime divisor")
                    .expect("divides the group order")
            })
            .collect()
    }

    /// Every element order is a prime power (1 counts as trivial).
    pub fn is_eppo(&self) -> bool {
        self.orders()
            .all(|d| d == 1 || arith::prime_power_base(d).is_some())
    }

    /// Every non-identity element has prime order.
    pub fn is_epo(&self) -> bool {
        self.orders().all(|d| d == 1 || arith::is_prime(d))
    }

    /// Nilpotency through "every Sylow subgroup is normal".
    pub fn all_sylows_normal(&self) -> bool {
        self.all_sylow_facts().iter().all(|s| s.is_normal)
    }
}

/// Sylow `p`-subgroup data computed from an order profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowFacts {
    pub prime: u64,
    /// `p`-part of `|G|`.
    pub sylow_order: u64,
    /// Largest `p`-power element order.
    pub exponent: u64,
    /// Elements of `p`-power order, identity included.
    pub p_element_count: u64,
    /// The `p`-elements form a single subgroup exactly when the Sylow
    /// `p`-subgroup is unique.
    pub is_normal: bool,
}

impl SylowFacts {
    pub fn is_cyclic(&self) -> bool {
        self.exponent == self.sylow_order
    }
}

fn factorial(n: u64) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Number of permutations of `n` points with the given cycle type, written as
/// `(cycle length r, multiplicity m_r)` pairs: `n! / prod_r (r^m_r * m_r!)`.
pub fn conjugacy_class_size(n: u64, cycle_type: &[(u64, u64)]) -> Result<u64, GroupError> {
    let mut seen = std::collections::BTreeSet::new();
    let mut total = 0u64;
    for &(r, m) in cycle_type {
        if r == 0 || !seen.insert(r) {
            return Err(GroupError::InvalidParameter(format!(
                "malformed cycle type {cycle_type:?}"
            )));
        }
        total = r
            .checked_mul(m)
            .and_then(|x| total.checked_add(x))
            .ok_or_else(|| GroupError::InvalidParameter("cycle type overflows".into()))?;
    }
    if total != n {
        return Err(GroupError::InvalidParameter(format!(
            "cycle type {cycle_type:?} covers {total} points, expected {n}"
        )));
    }
    let overflow = || GroupError::TooLarge {
        what: format!("class size for n = {n}"),
        limit: u64::MAX,
    };
    let mut denom = 1u128;
    for &(r, m) in cycle_type {
        let rm = (r as u128)
            .checked_pow(m as u32)
            .ok_or_else(overflow)?;
        denom = denom
            .checked_mul(rm)
            .and_then(|x| x.checked_mul(factorial(m)?))
            .ok_or_else(overflow)?;
    }
    let size = factorial(n).ok_or_else(overflow)? / denom;
    u64::try_from(size).map_err(|_| overflow())
}

/// All partitions of `n`, each as a descending list of parts, in reverse
/// lexicographic order (`[n]` first).
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn multiplicities(parts: &[u64]) -> Vec<(u64, u64)> {
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    for &p in parts {
        *map.entry(p).or_insert(0) += 1;
    }
    map.into_iter().collect()
}

fn cycle_type_profile(n: u64, even_only: bool) -> Result<OrderProfile, GroupError> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for parts in partitions(n) {
        let transpositions: u64 = parts.iter().map(|r| r - 1).sum();
        if even_only && transpositions % 2 == 1 {
            continue;
        }
        let size = conjugacy_class_size(n, &multiplicities(&parts))?;
        let order = parts.iter().copied().fold(1, arith::lcm);
        *counts.entry(order).or_insert(0) += size;
    }
    Ok(OrderProfile { counts })
}

/// Order profile of `S_n` from cycle-type combinatorics, without
/// materializing any element.
pub fn symmetric_profile(n: u64) -> Result<OrderProfile, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("sym:0 is not defined".into()));
    }
    cycle_type_profile(n, false)
}

/// Order profile of `A_n` from the even cycle types.
pub fn alternating_profile(n: u64) -> Result<OrderProfile, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("alt:0 is not defined".into()));
    }
    cycle_type_profile(n, true)
}
