//! Group spec strings such as `dihedral:12`, `perm:(1 2 3)(4 5),(1 2)` and
//! `product:cyclic:8*cyclic:3`, and the groups they describe.

use std::fmt;
use std::str::FromStr;

use crate::group::{
    alternating_profile, group_from_permutation_generators, make_alternating, make_cyclic,
    make_dicyclic, make_dihedral, make_direct_product, make_symmetric, parse_generators,
    symmetric_profile, Group, GroupError, Limits, OrderProfile, Permutation,
};

/// Largest degree for which `sym:` and `alt:` are materialized; above it only
/// the order profile is computed.
pub const MAX_CONCRETE_DEGREE: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Perm(Vec<Permutation>),
    Product(Vec<GroupSpec>),
}

fn parse_error(offset: usize, message: impl Into<String>) -> GroupError {
    GroupError::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_at(input: &str, base: usize, in_product: bool) -> Result<GroupSpec, GroupError> {
    let Some(colon) = input.find(':') else {
        return Err(parse_error(base + input.len(), "expected ':' after the family name"));
    };
    let (family, arg) = (&input[..colon], &input[colon + 1..]);
    let arg_base = base + colon + 1;
    let number = || -> Result<usize, GroupError> {
        if arg.is_empty() || !arg.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_error(arg_base, "expected a non-negative integer"));
        }
        arg.parse()
            .map_err(|_| parse_error(arg_base, "integer out of range"))
    };
    match family {
        "cyclic" => Ok(GroupSpec::Cyclic(number()?)),
        "dihedral" => Ok(GroupSpec::Dihedral(number()?)),
        "dicyclic" => Ok(GroupSpec::Dicyclic(number()?)),
        "sym" => Ok(GroupSpec::Symmetric(number()?)),
        "alt" => Ok(GroupSpec::Alternating(number()?)),
        "perm" => parse_generators(arg)
            .map(GroupSpec::Perm)
            .map_err(|e| match e {
                GroupError::Parse { offset, message } => parse_error(arg_base + offset, message),
                other => other,
            }),
        "product" if in_product => Err(parse_error(base, "products cannot be nested")),
        "product" => {
            let mut factors = Vec::new();
            let mut start = 0;
            for piece in arg.split('*') {
                if piece.is_empty() {
                    return Err(parse_error(arg_base + start, "empty factor"));
                }
                factors.push(parse_at(piece, arg_base + start, true)?);
                start += piece.len() + 1;
            }
            Ok(GroupSpec::Product(factors))
        }
        _ => Err(parse_error(base, format!("unknown family '{family}'"))),
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Parses a spec; error offsets are byte positions in `s`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim_end();
        let lead = trimmed.len() - trimmed.trim_start().len();
        parse_at(trimmed.trim_start(), lead, false)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alt:{n}"),
            GroupSpec::Perm(gens) => {
                f.write_str("perm:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupSpec::Product(factors) => {
                f.write_str("product:")?;
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

/// A group as built from a spec: either a full element table, or only its
/// order profile when materializing it is not worthwhile.
#[derive(Debug, Clone)]
pub enum GroupInstance {
    Concrete(Group),
    ProfileOnly { name: String, profile: OrderProfile },
}

impl GroupInstance {
    pub fn name(&self) -> &str {
        match self {
            GroupInstance::Concrete(g) => g.name(),
            GroupInstance::ProfileOnly { name, .. } => name,
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupInstance::Concrete(g) => g.order() as u64,
            GroupInstance::ProfileOnly { profile, .. } => profile.group_order(),
        }
    }

    pub fn profile(&self) -> OrderProfile {
        match self {
            GroupInstance::Concrete(g) => g.profile(),
            GroupInstance::ProfileOnly { profile, .. } => profile.clone(),
        }
    }

    pub fn group(&self) -> Option<&Group> {
        match self {
            GroupInstance::Concrete(g) => Some(g),
            GroupInstance::ProfileOnly { .. } => None,
        }
    }

    /// Nilpotency: the commuting test on concrete groups, otherwise the
    /// all-Sylows-normal test on the profile.
    pub fn is_nilpotent(&self) -> bool {
        match self {
            GroupInstance::Concrete(g) => g.is_nilpotent(),
            GroupInstance::ProfileOnly { profile, .. } => profile.all_sylows_normal(),
        }
    }
}

fn checked_factorial(n: usize, limits: &Limits) -> Result<u64, GroupError> {
    (1..=n as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k).filter(|&v| v <= limits.element_cap))
        .ok_or(GroupError::TooLarge {
            what: format!("S{n}"),
            limit: limits.element_cap,
        })
}

/// Builds the group described by `spec`, honoring the element cap.
pub fn build_group(spec: &GroupSpec, limits: &Limits) -> Result<GroupInstance, GroupError> {
    let concrete = |g: Result<Group, GroupError>| g.map(GroupInstance::Concrete);
    match *spec {
        GroupSpec::Cyclic(n) => concrete(make_cyclic(n, limits)),
        GroupSpec::Dihedral(n) => concrete(make_dihedral(n, limits)),
        GroupSpec::Dicyclic(n) => concrete(make_dicyclic(n, limits)),
        GroupSpec::Symmetric(n) if n <= MAX_CONCRETE_DEGREE => concrete(make_symmetric(n, limits)),
        GroupSpec::Alternating(n) if n <= MAX_CONCRETE_DEGREE => {
            concrete(make_alternating(n, limits))
        }
        GroupSpec::Symmetric(n) => {
            checked_factorial(n, limits)?;
            Ok(GroupInstance::ProfileOnly {
                name: format!("S{n}"),
                profile: symmetric_profile(n as u64)?,
            })
        }
        GroupSpec::Alternating(n) => {
            if checked_factorial(n, limits).is_err() {
                // n!/2 may still fit under the cap
                let half = (3..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
                if half.is_none_or(|h| h > limits.element_cap) {
                    return Err(GroupError::TooLarge {
                        what: format!("A{n}"),
                        limit: limits.element_cap,
                    });
                }
            }
            Ok(GroupInstance::ProfileOnly {
                name: format!("A{n}"),
                profile: alternating_profile(n as u64)?,
            })
        }
        GroupSpec::Perm(ref gens) => concrete(group_from_permutation_generators(gens, limits)),
        GroupSpec::Product(ref factors) => {
            let mut parts = factors.iter().map(|f| build_group(f, limits));
            let mut acc = parts
                .next()
                .ok_or_else(|| GroupError::InvalidParameter("empty product".into()))??;
            for part in parts {
                let part = part?;
                let size = acc.order().saturating_mul(part.order());
                if size > limits.element_cap {
                    return Err(GroupError::TooLarge {
                        what: format!("{} x {}", acc.name(), part.name()),
                        limit: limits.element_cap,
                    });
                }
                acc = match (&acc, &part) {
                    (GroupInstance::Concrete(g), GroupInstance::Concrete(h)) => {
                        GroupInstance::Concrete(make_direct_product(g, h, limits)?)
                    }
                    _ => GroupInstance::ProfileOnly {
                        name: format!("{} x {}", acc.name(), part.name()),
                        profile: acc.profile().direct_product(&part.profile()),
                    },
                };
            }
            Ok(acc)
        }
    }
}

/// Parses and builds in one step.
pub fn parse_and_build(spec: &str, limits: &Limits) -> Result<(GroupSpec, GroupInstance), GroupError> {
    let parsed: GroupSpec = spec.parse()?;
    let group = build_group(&parsed, limits)?;
    Ok((parsed, group))
}
