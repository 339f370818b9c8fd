//! Concrete finite groups materialized as element lists.
//!
//! Elements are opaque `usize` handles in `0..order`, with handle 0 the
//! identity. Cyclic, dihedral and dicyclic groups use closed-form normal
//! forms `a^i b^j`; permutation groups are closed under their generators by
//! breadth-first multiplication; direct products pair up handles.

mod perm;
mod profile;

use std::collections::HashMap;

use thiserror::Error;

use crate::arith;

pub use perm::{parse_generators, Permutation, MAX_DEGREE};
pub use profile::{
    alternating_profile, conjugacy_class_size, partitions, symmetric_profile, OrderProfile,
    SylowFacts,
};

pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} exceeds the element cap of {limit}")]
    TooLarge { what: String, limit: u64 },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid order profile: {0}")]
    InvalidProfile(String),
}

/// Resource limits for group construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

impl Limits {
    pub fn with_cap(element_cap: u64) -> Self {
        Self { element_cap }
    }

    fn check(&self, what: impl FnOnce() -> String, size: u64) -> Result<(), GroupError> {
        if size > self.element_cap {
            Err(GroupError::TooLarge {
                what: format!("{} ({size} elements)", what()),
                limit: self.element_cap,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
struct PermTable {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Box<[u8]>, usize>,
}

impl PermTable {
    fn lookup(&self, images: &[u8]) -> usize {
        *self
            .index
            .get(images)
            .expect("permutation group is closed under multiplication")
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Cyclic { n: usize },
    /// `a^i b^j` stored as `j * n + i`.
    Dihedral { n: usize },
    /// `a^i b^j` with `a` of order `2n`, stored as `j * 2n + i`.
    Dicyclic { n: usize },
    Perm(PermTable),
    /// `(g, h)` stored as `g * |H| + h`.
    Product(Box<Group>, Box<Group>),
}

/// A finite group with its element orders precomputed.
#[derive(Debug, Clone)]
pub struct Group {
    name: String,
    repr: Repr,
    orders: Vec<u64>,
}

impl Group {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.orders.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn multiply(&self, x: usize, y: usize) -> usize {
        match &self.repr {
            Repr::Cyclic { n } => (x + y) % n,
            Repr::Dihedral { n } => {
                let (i, j) = (x % n, x / n);
                let (k, l) = (y % n, y / n);
                // b a^k = a^{-k} b
                let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                ((j + l) % 2) * n + rot
            }
            Repr::Dicyclic { n } => {
                let m = 2 * n;
                let (i, j) = (x % m, x / m);
                let (k, l) = (y % m, y / m);
                match (j, l) {
                    (0, _) => l * m + (i + k) % m,
                    (_, 0) => m + (i + m - k) % m,
                    // a^i b a^k b = a^{i-k} b^2 = a^{i-k+n}
                    _ => (i + m - k + n) % m,
                }
            }
            Repr::Perm(table) => {
                let mut buf = Vec::with_capacity(MAX_DEGREE);
                table.elements[x].then_into(&table.elements[y], &mut buf);
                table.lookup(&buf)
            }
            Repr::Product(g, h) => {
                let hn = h.order();
                g.multiply(x / hn, y / hn) * hn + h.multiply(x % hn, y % hn)
            }
        }
    }

    pub fn inverse(&self, x: usize) -> usize {
        match &self.repr {
            Repr::Cyclic { n } => (n - x) % n,
            Repr::Dihedral { n } => {
                if x < *n {
                    (n - x) % n
                } else {
                    x
                }
            }
            Repr::Dicyclic { n } => {
                let m = 2 * n;
                if x < m {
                    (m - x) % m
                } else {
                    // (a^i b)^{-1} = a^{i+n} b
                    m + (x - m + n) % m
                }
            }
            Repr::Perm(table) => table.lookup(table.elements[x].inverse().images()),
            Repr::Product(g, h) => {
                let hn = h.order();
                g.inverse(x / hn) * hn + h.inverse(x % hn)
            }
        }
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> u64 {
        self.orders[x]
    }

    /// Element orders indexed by handle.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn profile(&self) -> OrderProfile {
        OrderProfile::from_orders(self.orders.iter().copied())
    }

    /// All elements with the same order as `x`, ascending.
    pub fn order_class(&self, x: usize) -> Vec<usize> {
        let d = self.orders[x];
        self.elements().filter(|&y| self.orders[y] == d).collect()
    }

    pub fn sylow_facts(&self, p: u64) -> Result<Option<SylowFacts>, GroupError> {
        self.profile().sylow_facts(p)
    }

    pub fn is_eppo(&self) -> bool {
        self.profile().is_eppo()
    }

    pub fn is_epo(&self) -> bool {
        self.profile().is_epo()
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.multiply(x, y) == self.multiply(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        match &self.repr {
            Repr::Cyclic { .. } => true,
            Repr::Dihedral { n } => *n <= 2,
            Repr::Dicyclic { .. } => false,
            Repr::Perm(table) => table
                .generators
                .iter()
                .enumerate()
                .all(|(k, g)| table.generators[k + 1..].iter().all(|h| g.then(h) == h.then(g))),
            Repr::Product(g, h) => g.is_abelian() && h.is_abelian(),
        }
    }

    /// Nilpotency through "elements of coprime orders commute".
    pub fn is_nilpotent(&self) -> bool {
        if self.is_abelian() {
            return true;
        }
        let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
        for x in self.elements().skip(1) {
            let d = self.orders[x];
            match classes.iter_mut().find(|(o, _)| *o == d) {
                Some((_, members)) => members.push(x),
                None => classes.push((d, vec![x])),
            }
        }
        classes.sort_by_key(|(d, _)| *d);
        for (k, (d1, xs)) in classes.iter().enumerate() {
            for (d2, ys) in &classes[k + 1..] {
                if arith::gcd(*d1, *d2) != 1 {
                    continue;
                }
                for &x in xs {
                    for &y in ys {
                        if !self.commutes(x, y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Display name of an element.
    pub fn label(&self, x: usize) -> String {
        fn power(base: &str, i: usize) -> String {
            match i {
                0 => String::new(),
                1 => base.to_string(),
                _ => format!("{base}^{i}"),
            }
        }
        fn word(i: usize, reflection: bool) -> String {
            match (i, reflection) {
                (0, false) => "e".into(),
                (_, false) => power("a", i),
                (0, true) => "b".into(),
                (_, true) => format!("{}b", power("a", i)),
            }
        }
        match &self.repr {
            Repr::Cyclic { .. } => word(x, false),
            Repr::Dihedral { n } => word(x % n, x >= *n),
            Repr::Dicyclic { n } => word(x % (2 * n), x >= 2 * n),
            Repr::Perm(table) => {
                if x == 0 {
                    "e".into()
                } else {
                    table.elements[x].to_string()
                }
            }
            Repr::Product(g, h) => {
                let hn = h.order();
                format!("({}, {})", g.label(x / hn), h.label(x % hn))
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements().map(|x| self.label(x)).collect()
    }

    /// The permutation behind a handle, for permutation groups.
    pub fn permutation(&self, x: usize) -> Option<&Permutation> {
        match &self.repr {
            Repr::Perm(table) => table.elements.get(x),
            _ => None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Cyclic group `Z_n` generated by `a`.
pub fn make_cyclic(n: usize, limits: &Limits) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic group needs n >= 1".into()));
    }
    limits.check(|| format!("Z{n}"), n as u64)?;
    let orders = (0..n)
        .map(|i| if i == 0 { 1 } else { (n / arith::gcd(i, n)) as u64 })
        .collect();
    Ok(Group {
        name: format!("Z{n}"),
        repr: Repr::Cyclic { n },
        orders,
    })
}

/// Dihedral group `D_{2n} = <a, b | a^n = b^2 = e, ab = ba^{-1}>` of order `2n`.
pub fn make_dihedral(n: usize, limits: &Limits) -> Result<Group, GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral group needs n >= 3, got {n}"
        )));
    }
    limits.check(|| format!("D{}", 2 * n), 2 * n as u64)?;
    let rotation = |i: usize| if i == 0 { 1 } else { (n / arith::gcd(i, n)) as u64 };
    let orders = (0..n).map(rotation).chain(std::iter::repeat_n(2, n)).collect();
    Ok(Group {
        name: format!("D{}", 2 * n),
        repr: Repr::Dihedral { n },
        orders,
    })
}

/// Dicyclic group `Q_{4n} = <a, b | a^{2n} = e, a^n = b^2, ab = ba^{-1}>` of order `4n`.
pub fn make_dicyclic(n: usize, limits: &Limits) -> Result<Group, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "dicyclic group needs n >= 2, got {n}"
        )));
    }
    limits.check(|| format!("Q{}", 4 * n), 4 * n as u64)?;
    let m = 2 * n;
    let rotation = |i: usize| if i == 0 { 1 } else { (m / arith::gcd(i, m)) as u64 };
    let orders = (0..m).map(rotation).chain(std::iter::repeat_n(4, m)).collect();
    Ok(Group {
        name: format!("Q{}", 4 * n),
        repr: Repr::Dicyclic { n },
        orders,
    })
}

/// Closure of a set of permutations of a common degree under composition.
pub fn group_from_permutation_generators(
    generators: &[Permutation],
    limits: &Limits,
) -> Result<Group, GroupError> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(1);
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::InvalidParameter(
            "generators must act on the same number of points".into(),
        ));
    }
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Box<[u8]>, usize> = HashMap::new();
    index.insert(identity.images().into(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let next = elements[head].then(g);
            if !index.contains_key(next.images()) {
                index.insert(next.images().into(), elements.len());
                elements.push(next);
                limits.check(|| "permutation group closure".to_string(), elements.len() as u64)?;
            }
        }
        head += 1;
    }
    let orders = elements.iter().map(Permutation::order).collect();
    let name = if generators.is_empty() {
        "<>".to_string()
    } else {
        let gens: Vec<String> = generators.iter().map(ToString::to_string).collect();
        format!("<{}>", gens.join(", "))
    };
    Ok(Group {
        name,
        repr: Repr::Perm(PermTable {
            generators: generators.to_vec(),
            elements,
            index,
        }),
        orders,
    })
}

fn cycle_perm(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let cycle: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[cycle]).expect("valid cycle")
}

fn factorial_capped(n: usize) -> u64 {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)).unwrap_or(u64::MAX)
}

/// Symmetric group `S_n` generated by `(1 2)` and `(1 2 ... n)`.
pub fn make_symmetric(n: usize, limits: &Limits) -> Result<Group, GroupError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(GroupError::InvalidParameter(format!("sym:{n} is out of range")));
    }
    limits.check(|| format!("S{n}"), factorial_capped(n))?;
    let gens = if n == 1 {
        vec![Permutation::identity(1)]
    } else {
        vec![cycle_perm(n, [0, 1]), cycle_perm(n, 0..n)]
    };
    group_from_permutation_generators(&gens, limits).map(|g| g.with_name(format!("S{n}")))
}

/// Alternating group `A_n` generated by `(1 2 3)` and an `(n-1)`- or `n`-cycle of even parity.
pub fn make_alternating(n: usize, limits: &Limits) -> Result<Group, GroupError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(GroupError::InvalidParameter(format!("alt:{n} is out of range")));
    }
    limits.check(|| format!("A{n}"), (factorial_capped(n) / 2).max(1))?;
    let gens = match n {
        1 | 2 => vec![Permutation::identity(n)],
        3 => vec![cycle_perm(3, 0..3)],
        _ if n % 2 == 1 => vec![cycle_perm(n, 0..3), cycle_perm(n, 0..n)],
        _ => vec![cycle_perm(n, 0..3), cycle_perm(n, 1..n)],
    };
    group_from_permutation_generators(&gens, limits).map(|g| g.with_name(format!("A{n}")))
}

/// External direct product `G x H`.
pub fn make_direct_product(g: &Group, h: &Group, limits: &Limits) -> Result<Group, GroupError> {
    let size = (g.order() as u64).saturating_mul(h.order() as u64);
    limits.check(|| format!("{} x {}", g.name(), h.name()), size)?;
    let mut orders = Vec::with_capacity(size as usize);
    for &a in g.orders() {
        for &b in h.orders() {
            orders.push(arith::lcm(a, b));
        }
    }
    Ok(Group {
        name: format!("{} x {}", g.name(), h.name()),
        repr: Repr::Product(Box::new(g.clone()), Box::new(h.clone())),
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn pairs(p: &OrderProfile) -> Vec<(u64, u64)> {
        p.iter().collect()
    }

    /// Order by repeated multiplication, independent of the cached orders.
    fn order_by_powers(g: &Group, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != g.identity() {
            y = g.multiply(y, x);
            k += 1;
        }
        k
    }

    fn check_axioms(g: &Group) {
        let n = g.order();
        for x in 0..n {
            assert_eq!(g.multiply(0, x), x);
            assert_eq!(g.multiply(x, 0), x);
            let inv = g.inverse(x);
            assert_eq!(g.multiply(x, inv), 0, "{} inverse", g.label(x));
            assert_eq!(g.multiply(inv, x), 0);
            assert_eq!(order_by_powers(g, x), g.element_order(x), "{}", g.label(x));
        }
        let step = if n <= 64 { 1 } else { n / 17 + 1 };
        for x in (0..n).step_by(step) {
            for y in (0..n).step_by(step) {
                let xy = g.multiply(x, y);
                assert!(xy < n);
                for z in (0..n).step_by(step) {
                    assert_eq!(
                        g.multiply(xy, z),
                        g.multiply(x, g.multiply(y, z)),
                        "associativity in {}",
                        g.name()
                    );
                }
            }
        }
    }

    #[test]
    fn constructed_groups_satisfy_axioms() {
        let groups = vec![
            make_cyclic(1, &lim()).unwrap(),
            make_cyclic(12, &lim()).unwrap(),
            make_dihedral(3, &lim()).unwrap(),
            make_dihedral(8, &lim()).unwrap(),
            make_dihedral(15, &lim()).unwrap(),
            make_dicyclic(2, &lim()).unwrap(),
            make_dicyclic(3, &lim()).unwrap(),
            make_dicyclic(8, &lim()).unwrap(),
            make_symmetric(4, &lim()).unwrap(),
            make_alternating(5, &lim()).unwrap(),
            make_direct_product(
                &make_dicyclic(2, &lim()).unwrap(),
                &make_cyclic(3, &lim()).unwrap(),
                &lim(),
            )
            .unwrap(),
        ];
        for g in &groups {
            check_axioms(g);
            let p = g.profile();
            p.validate().unwrap();
            assert_eq!(p.group_order() as usize, g.order());
        }
    }

    #[test]
    fn named_family_profiles() {
        let s3 = make_dihedral(3, &lim()).unwrap();
        assert_eq!(pairs(&s3.profile()), vec![(1, 1), (2, 3), (3, 2)]);
        let q8 = make_dicyclic(2, &lim()).unwrap();
        assert_eq!(pairs(&q8.profile()), vec![(1, 1), (2, 1), (4, 6)]);
        let s4 = make_symmetric(4, &lim()).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(pairs(&s4.profile()), vec![(1, 1), (2, 9), (3, 8), (4, 6)]);
        let d10 = make_dihedral(5, &lim()).unwrap();
        assert_eq!(pairs(&d10.profile()), vec![(1, 1), (2, 5), (5, 4)]);
        let z6 = make_cyclic(6, &lim()).unwrap();
        assert_eq!(pairs(&z6.profile()), vec![(1, 1), (2, 1), (3, 2), (6, 2)]);
        assert_eq!(make_alternating(5, &lim()).unwrap().order(), 60);
        assert_eq!(make_alternating(6, &lim()).unwrap().order(), 360);
        assert_eq!(make_alternating(3, &lim()).unwrap().order(), 3);
        assert_eq!(make_alternating(2, &lim()).unwrap().order(), 1);
        assert_eq!(make_symmetric(1, &lim()).unwrap().order(), 1);
    }

    #[test]
    fn order_class_of_z6() {
        let z6 = make_cyclic(6, &lim()).unwrap();
        let third = 2; // a^2 has order 3
        assert_eq!(z6.element_order(third), 3);
        assert_eq!(z6.order_class(third), vec![2, 4]);
    }

    #[test]
    fn permutation_closures() {
        let c3 = group_from_permutation_generators(&parse_generators("(1 2 3)").unwrap(), &lim())
            .unwrap();
        assert_eq!(pairs(&c3.profile()), vec![(1, 1), (3, 2)]);
        let f20 = group_from_permutation_generators(
            &parse_generators("(1 2 3 4 5), (2 3 5 4)").unwrap(),
            &lim(),
        )
        .unwrap();
        assert_eq!(pairs(&f20.profile()), vec![(1, 1), (2, 5), (4, 10), (5, 4)]);
        check_axioms(&f20);
        let v4 = group_from_permutation_generators(
            &parse_generators("(1 2)(3 4), (1 3)(2 4)").unwrap(),
            &lim(),
        )
        .unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
    }

    #[test]
    fn generator_closures_match_cycle_type_profiles() {
        for n in 1..=7 {
            let s = make_symmetric(n, &lim()).unwrap();
            assert_eq!(s.profile(), symmetric_profile(n as u64).unwrap(), "S{n}");
            let a = make_alternating(n, &lim()).unwrap();
            assert_eq!(a.profile(), alternating_profile(n as u64).unwrap(), "A{n}");
        }
    }

    #[test]
    fn family_order_invariants() {
        for n in 3..40 {
            let d = make_dihedral(n, &lim()).unwrap().profile();
            assert!(d.count(2) >= n as u64);
            assert_eq!(d.count(2), n as u64 + u64::from(n % 2 == 0));
        }
        for n in 2..40 {
            let q = make_dicyclic(n, &lim()).unwrap().profile();
            assert!(q.count(4) >= 2 * n as u64);
        }
    }

    #[test]
    fn rejects_bad_parameters_and_caps() {
        assert!(make_dihedral(2, &lim()).is_err());
        assert!(make_dicyclic(1, &lim()).is_err());
        assert!(make_cyclic(0, &lim()).is_err());
        assert!(matches!(
            make_symmetric(10, &lim()),
            Err(GroupError::TooLarge { .. })
        ));
        assert!(matches!(
            make_cyclic(100, &Limits::with_cap(99)),
            Err(GroupError::TooLarge { .. })
        ));
        assert!(matches!(
            make_symmetric(5, &Limits::with_cap(100)),
            Err(GroupError::TooLarge { .. })
        ));
        assert!(make_cyclic(1_000_000, &lim()).is_ok());
    }

    #[test]
    fn sylow_facts_examples() {
        let a4 = make_alternating(4, &lim()).unwrap();
        let f = a4.sylow_facts(3).unwrap().unwrap();
        assert_eq!((f.sylow_order, f.exponent, f.p_element_count, f.is_normal), (3, 3, 9, false));
        let z12 = make_cyclic(12, &lim()).unwrap();
        let f = z12.sylow_facts(2).unwrap().unwrap();
        assert_eq!((f.sylow_order, f.exponent, f.p_element_count, f.is_normal), (4, 4, 4, true));
        let s3 = make_symmetric(3, &lim()).unwrap();
        let f = s3.sylow_facts(3).unwrap().unwrap();
        assert_eq!((f.sylow_order, f.exponent, f.p_element_count, f.is_normal), (3, 3, 3, true));
    }

    #[test]
    fn nilpotency_criteria_agree() {
        let z3 = make_cyclic(3, &lim()).unwrap();
        let q8 = make_dicyclic(2, &lim()).unwrap();
        let cases = vec![
            (make_cyclic(12, &lim()).unwrap(), true),
            (make_symmetric(3, &lim()).unwrap(), false),
            (make_direct_product(&q8, &z3, &lim()).unwrap(), true),
            (make_dihedral(8, &lim()).unwrap(), true),
            (make_dihedral(6, &lim()).unwrap(), false),
            (make_dicyclic(3, &lim()).unwrap(), false),
            (make_alternating(4, &lim()).unwrap(), false),
            (make_symmetric(5, &lim()).unwrap(), false),
        ];
        for (g, expected) in cases {
            assert_eq!(g.is_nilpotent(), expected, "{}", g.name());
            assert_eq!(g.profile().all_sylows_normal(), expected, "{}", g.name());
        }
    }

    #[test]
    fn labels_follow_normal_forms() {
        let d = make_dihedral(5, &lim()).unwrap();
        assert_eq!(d.label(0), "e");
        assert_eq!(d.label(1), "a");
        assert_eq!(d.label(3), "a^3");
        assert_eq!(d.label(5), "b");
        assert_eq!(d.label(7), "a^2b");
        let s3 = make_symmetric(3, &lim()).unwrap();
        assert_eq!(s3.label(0), "e");
        assert!(s3.labels().contains(&"(1 2 3)".to_string()));
    }
}
