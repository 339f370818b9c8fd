//! Right-hand sides of the separability characterizations, evaluated clause
//! by clause from order profiles and Sylow data.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{is_power_of_two, prime_divisors};
use crate::group::{OrderProfile, SylowFacts};
use crate::{Error, Result};

/// Value of one labeled condition. `Vacuous` marks a condition that the
/// theorem's own hypothesis rules out, so it can never hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseOutcome {
    Holds,
    Fails,
    Vacuous,
}

impl ClauseOutcome {
    pub fn holds(self) -> bool {
        self == ClauseOutcome::Holds
    }

    fn from_bool(b: bool) -> Self {
        if b {
            ClauseOutcome::Holds
        } else {
            ClauseOutcome::Fails
        }
    }
}

impl fmt::Display for ClauseOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClauseOutcome::Holds => "1",
            ClauseOutcome::Fails => "0",
            ClauseOutcome::Vacuous => "vacuous",
        })
    }
}

const VACUOUS: &str = "vacuous-under-hypothesis";

impl Serialize for ClauseOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClauseOutcome::Holds => s.serialize_bool(true),
            ClauseOutcome::Fails => s.serialize_bool(false),
            ClauseOutcome::Vacuous => s.serialize_str(VACUOUS),
        }
    }
}

impl<'de> Deserialize<'de> for ClauseOutcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ClauseOutcome;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a boolean or \"{VACUOUS}\"")
            }
            fn visit_bool<E: de::Error>(self, v: bool) -> std::result::Result<ClauseOutcome, E> {
                Ok(ClauseOutcome::from_bool(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ClauseOutcome, E> {
                if v == VACUOUS {
                    Ok(ClauseOutcome::Vacuous)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

pub type Clauses = BTreeMap<String, ClauseOutcome>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateOutcome {
    pub value: bool,
    pub clauses: Clauses,
}

fn clauses<const N: usize>(pairs: [(&str, ClauseOutcome); N]) -> Clauses {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn hold(b: bool) -> ClauseOutcome {
    ClauseOutcome::from_bool(b)
}

pub const DIHEDRAL_CLAUSES: [&str; 3] = ["(i)", "(ii)", "(iii)"];
pub const DICYCLIC_CLAUSES: [&str; 1] = ["not-power-of-2"];
pub const EPPO_CLAUSES: [&str; 4] = ["pq", "(i)", "(ii)", "(iii)"];
pub const NILPOTENT_CLAUSES: [&str; 8] =
    ["three-primes", "(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)"];
pub const SYMMETRIC_CLAUSES: [&str; 1] = ["n>=4"];

/// `n` not a power of 2, `n >= 5`, and `n` not 6 or 12.
pub fn dihedral_predicate(n: u64) -> Result<PredicateOutcome> {
    if n < 3 {
        return Err(Error::Hypothesis(format!("dihedral parameter {n} is below 3")));
    }
    let c = clauses([
        ("(i)", hold(!is_power_of_two(n))),
        ("(ii)", hold(n >= 5)),
        ("(iii)", hold(n != 6 && n != 12)),
    ]);
    Ok(PredicateOutcome {
        value: c.values().all(|v| v.holds()),
        clauses: c,
    })
}

pub fn dicyclic_predicate(n: u64) -> Result<PredicateOutcome> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("dicyclic parameter {n} is below 2")));
    }
    let value = !is_power_of_two(n);
    Ok(PredicateOutcome {
        value,
        clauses: clauses([("not-power-of-2", hold(value))]),
    })
}

fn degree_predicate(n: u64, least: u64, family: &str) -> Result<PredicateOutcome> {
    if n < least {
        return Err(Error::Hypothesis(format!("{family} parameter {n} is below {least}")));
    }
    Ok(PredicateOutcome {
        value: n >= 4,
        clauses: clauses([("n>=4", hold(n >= 4))]),
    })
}

pub fn symmetric_predicate(n: u64) -> Result<PredicateOutcome> {
    degree_predicate(n, 2, "symmetric")
}

pub fn alternating_predicate(n: u64) -> Result<PredicateOutcome> {
    degree_predicate(n, 3, "alternating")
}

fn sylow(profile: &OrderProfile, p: u64) -> Option<SylowFacts> {
    profile.sylow_facts(p).expect("2, 3 and divisors are prime")
}

/// Primes at least 5 dividing `|G|`.
fn large_primes(profile: &OrderProfile) -> Vec<u64> {
    prime_divisors(profile.group_order())
        .into_iter()
        .filter(|&p| p >= 5)
        .collect()
}

/// Shared shape of the EPPO and EPO characterizations; `unusual` decides
/// the "not of order q" (or "not cyclic") half of conditions (ii) and (iii).
fn two_of_three(
    profile: &OrderProfile,
    unusual: impl Fn(&SylowFacts, u64) -> bool,
) -> PredicateOutcome {
    let large = large_primes(profile);
    let condition = |q: u64| sylow(profile, q).is_some_and(|s| unusual(&s, q) || !s.is_normal);
    let c = clauses([
        ("pq", hold(large.len() >= 2)),
        ("(i)", hold(!large.is_empty())),
        ("(ii)", hold(condition(3))),
        ("(iii)", hold(condition(2))),
    ]);
    let count = ["(i)", "(ii)", "(iii)"].iter().filter(|k| c[**k].holds()).count();
    PredicateOutcome {
        value: c["pq"].holds() || count >= 2,
        clauses: c,
    }
}

/// Characterization for groups whose elements all have prime-power order.
pub fn eppo_predicate(profile: &OrderProfile) -> Result<PredicateOutcome> {
    if !profile.is_eppo() {
        return Err(Error::Hypothesis("some element order is not a prime power".into()));
    }
    Ok(two_of_three(profile, |s, q| s.sylow_order != q))
}

/// Characterization for groups whose non-identity elements all have prime
/// order; a Sylow `q`-subgroup counts as cyclic when it has order `q`.
pub fn epo_predicate(profile: &OrderProfile) -> Result<PredicateOutcome> {
    if !profile.is_epo() {
        return Err(Error::Hypothesis("some non-identity element order is not prime".into()));
    }
    Ok(two_of_three(profile, |s, q| s.sylow_order != q))
}

/// Characterization for nilpotent groups. Condition (v) needs a non-normal
/// Sylow 2-subgroup and is reported as vacuous.
pub fn nilpotent_predicate(profile: &OrderProfile) -> Result<PredicateOutcome> {
    if !profile.all_sylows_normal() {
        return Err(Error::Hypothesis("some Sylow subgroup is not normal".into()));
    }
    let primes = prime_divisors(profile.group_order());
    let large = large_primes(profile);
    let s2 = sylow(profile, 2);
    let s3 = sylow(profile, 3);
    let unusual = |s: &Option<SylowFacts>, q: u64| {
        s.is_some_and(|s| s.sylow_order != q || !s.is_normal)
    };
    let has_small = s2.is_some() || s3.is_some();
    let large_facts: Vec<SylowFacts> = large.iter().map(|&p| sylow(profile, p).expect("divides")).collect();

    let cond_ii = large_facts.iter().any(|s| s.exponent >= s.prime * s.prime) && has_small;
    let cond_iii = large_facts.iter().any(|s| s.exponent == s.prime)
        && (unusual(&s2, 2) || unusual(&s3, 3));
    let literal_v = s2.is_some_and(|s| s.exponent >= 4 && !s.is_normal) && s3.is_some();
    debug_assert!(!literal_v);

    let c = clauses([
        ("three-primes", hold(primes.len() >= 3)),
        ("(i)", hold(large.len() >= 2)),
        ("(ii)", hold(cond_ii)),
        ("(iii)", hold(cond_iii)),
        ("(iv)", hold(unusual(&s2, 2) && unusual(&s3, 3))),
        ("(v)", ClauseOutcome::Vacuous),
        ("(vi)", hold(s2.is_some_and(|s| s.exponent >= 8) && s3.is_some())),
        ("(vii)", hold(s3.is_some_and(|s| s.exponent >= 9) && s2.is_some())),
    ]);
    let any_listed = c
        .iter()
        .filter(|(k, _)| k.as_str() != "three-primes")
        .any(|(_, v)| v.holds());
    Ok(PredicateOutcome {
        value: primes.len() >= 3 || (primes.len() == 2 && any_listed),
        clauses: c,
    })
}
