mod common;

use ordsup_core::arith::euler_phi;
use ordsup_core::group::{
    alternating_profile, make_alternating, make_dicyclic, make_dihedral, make_symmetric,
    symmetric_profile, Limits,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn catalog_groups_satisfy_the_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (spec, g) in common::catalog_groups(400) {
        let n = g.order();
        let e = g.identity();
        for x in g.elements() {
            assert_eq!(g.multiply(e, x), x, "{spec}");
            assert_eq!(g.multiply(x, e), x, "{spec}");
            let inv = g.inverse(x);
            assert_eq!(g.multiply(x, inv), e, "{spec}");
            assert_eq!(g.multiply(inv, x), e, "{spec}");
        }
        let check = |x: usize, y: usize, z: usize| {
            let left = g.multiply(g.multiply(x, y), z);
            assert!(left < n, "{spec}: closure");
            assert_eq!(left, g.multiply(x, g.multiply(y, z)), "{spec}: associativity");
        };
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        check(x, y, z);
                    }
                }
            }
        } else {
            for _ in 0..20_000 {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            }
        }
    }
}

#[test]
fn catalog_profiles_and_sylow_facts() {
    for (spec, g) in common::catalog_groups(400) {
        let profile = g.profile();
        profile.validate().unwrap();
        assert_eq!(profile.group_order(), g.order() as u64);
        for (d, m) in profile.iter() {
            assert_eq!(m % euler_phi(d), 0, "{spec}: order {d}");
        }
        let facts = profile.all_sylow_facts();
        for s in &facts {
            assert_eq!(s.sylow_order % s.exponent, 0);
            assert!(s.p_element_count >= s.sylow_order);
        }
        let nilpotent = g.is_nilpotent();
        assert_eq!(nilpotent, profile.all_sylows_normal(), "{spec}");
        if nilpotent {
            assert!(facts.iter().all(|s| s.is_normal), "{spec}");
        }
    }
}

#[test]
fn family_multiplicities() {
    let lim = Limits::default();
    for n in 3..=40 {
        let d = make_dihedral(n, &lim).unwrap().profile();
        assert!(d.count(2) as usize >= n);
        assert_eq!(d.count(2) as usize, n + usize::from(n % 2 == 0));
    }
    for n in 2..=30 {
        let q = make_dicyclic(n, &lim).unwrap().profile();
        assert!(q.count(4) as usize >= 2 * n);
    }
}

#[test]
fn cycle_type_profiles_match_enumeration() {
    let lim = Limits::default();
    for n in 1..=7 {
        assert_eq!(make_symmetric(n, &lim).unwrap().profile(), symmetric_profile(n as u64).unwrap(), "S{n}");
        if n >= 2 {
            let a = make_alternating(n, &lim).unwrap();
            assert_eq!(a.profile(), alternating_profile(n as u64).unwrap(), "A{n}");
        }
    }
}
