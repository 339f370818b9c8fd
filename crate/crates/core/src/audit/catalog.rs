//! Built-in group catalogs for the EPPO, EPO and nilpotent audits, as spec
//! strings.

use crate::groupspec::{build_group, GroupSpec};
use crate::group::Limits;

const EPPO_FACTORS: [&str; 8] = [
    "cyclic:2",
    "cyclic:4",
    "cyclic:8",
    "dicyclic:2",
    "cyclic:3",
    "cyclic:9",
    "cyclic:5",
    "cyclic:7",
];

const PRIME_POWERS_TO_32: [usize; 18] =
    [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

/// Groups in which every element has prime-power order: small symmetric,
/// alternating, dihedral and dicyclic groups, cyclic groups of prime-power
/// order up to 32, the Frobenius group of order 20, and pairwise products
/// of small p-groups of order at most 64.
pub fn eppo_catalog() -> Vec<String> {
    let mut specs: Vec<String> = ["sym:3", "sym:4", "alt:4", "alt:5"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    specs.extend([3, 4, 5, 8, 9, 16, 27].iter().map(|n| format!("dihedral:{n}")));
    specs.extend(["dicyclic:2".to_string(), "dicyclic:4".to_string()]);
    specs.extend(PRIME_POWERS_TO_32.iter().map(|n| format!("cyclic:{n}")));
    specs.push("perm:(1 2 3 4 5),(2 3 5 4)".to_string());
    let limits = Limits::default();
    for (i, a) in EPPO_FACTORS.iter().enumerate() {
        for b in &EPPO_FACTORS[i..] {
            let spec = format!("product:{a}*{b}");
            let parsed: GroupSpec = spec.parse().expect("catalog spec parses");
            let group = build_group(&parsed, &limits).expect("catalog group builds");
            if group.order() <= 64 && group.profile().is_eppo() {
                specs.push(spec);
            }
        }
    }
    specs
}

/// The EPPO catalog restricted to groups whose non-identity elements all
/// have prime order.
pub fn epo_catalog() -> Vec<String> {
    let limits = Limits::default();
    eppo_catalog()
        .into_iter()
        .filter(|spec| {
            let parsed: GroupSpec = spec.parse().expect("catalog spec parses");
            build_group(&parsed, &limits)
                .expect("catalog group builds")
                .profile()
                .is_epo()
        })
        .collect()
}

const SYLOW_CHOICES: [(u64, &[(&str, u64)]); 4] = [
    (
        2,
        &[
            ("cyclic:2", 2),
            ("cyclic:4", 4),
            ("cyclic:8", 8),
            ("cyclic:2*cyclic:2", 4),
            ("dicyclic:2", 8),
        ],
    ),
    (3, &[("cyclic:3", 3), ("cyclic:9", 9), ("cyclic:3*cyclic:3", 9)]),
    (5, &[("cyclic:5", 5), ("cyclic:25", 25)]),
    (7, &[("cyclic:7", 7)]),
];

/// Nilpotent groups built as direct products of at most one small Sylow
/// subgroup per prime 2, 3, 5 and 7, with order at most 400.
pub fn nilpotent_catalog() -> Vec<String> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<&str>, u64)> = vec![(0, Vec::new(), 1)];
    while let Some((level, parts, order)) = stack.pop() {
        if level == SYLOW_CHOICES.len() {
            if !parts.is_empty() {
                let joined = parts.join("*");
                out.push(if parts.len() == 1 && !joined.contains('*') {
                    joined
                } else {
                    format!("product:{joined}")
                });
            }
            continue;
        }
        stack.push((level + 1, parts.clone(), order));
        for &(spec, size) in SYLOW_CHOICES[level].1 {
            if order * size <= 400 {
                let mut next = parts.clone();
                next.push(spec);
                stack.push((level + 1, next, order * size));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupspec::parse_and_build;

    #[test]
    fn catalogs_satisfy_their_hypotheses() {
        let lim = Limits::default();
        let eppo = eppo_catalog();
        assert!(eppo.contains(&"product:cyclic:2*cyclic:2".to_string()));
        assert!(!eppo.iter().any(|s| s == "product:cyclic:2*cyclic:3"));
        for spec in &eppo {
            assert!(parse_and_build(spec, &lim).unwrap().1.profile().is_eppo(), "{spec}");
        }
        let epo = epo_catalog();
        assert!(epo.contains(&"alt:5".to_string()) && !epo.contains(&"sym:4".to_string()));
        let nil = nilpotent_catalog();
        for anchor in [
            "product:cyclic:2*cyclic:3",
            "product:cyclic:4*cyclic:3",
            "product:cyclic:8*cyclic:3",
            "product:cyclic:2*cyclic:3*cyclic:5",
            "product:cyclic:2*cyclic:2*cyclic:3",
        ] {
            assert!(nil.contains(&anchor.to_string()), "{anchor}");
        }
        for spec in &nil {
            let (_, g) = parse_and_build(spec, &lim).unwrap();
            assert!(g.order() <= 400 && g.is_nilpotent(), "{spec}");
        }
        let mut dedup = nil.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), nil.len());
    }
}
