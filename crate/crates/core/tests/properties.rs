mod common;

use std::sync::Arc;

use cimlab::caps::Caps;
use cimlab::ci::{self, ScanOptions};
use cimlab::group::{self, FiniteGroup, GroupIsomorphism};
use cimlab::iso;
use cimlab::map::{canonical_phase, CayleyMap};
use cimlab::perm::{self, Permutation, PermutationGroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{for_each_permutation, group, groups_up_to, random_map};

fn caps() -> Caps {
    Caps::default()
}

fn catalogue_index() -> impl Strategy<Value = usize> {
    0..common::CATALOGUE.len()
}

fn small_group(max_order: usize) -> impl Strategy<Value = Arc<FiniteGroup>> {
    let groups: Vec<Arc<FiniteGroup>> = groups_up_to(max_order).into_iter().filter(|g| g.order() > 1).collect();
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

fn map_strategy(max_order: usize, max_valency: usize, connected: bool) -> impl Strategy<Value = CayleyMap> {
    (small_group(max_order), any::<u64>()).prop_map(move |(h, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_map(&h, max_valency, connected, &mut rng)
    })
}

fn random_automorphism(h: &Arc<FiniteGroup>, pick: usize) -> GroupIsomorphism {
    let auts = group::automorphisms(h, &caps()).unwrap();
    auts[pick % auts.len()].clone()
}

fn random_perms(degree: usize, count: usize, seed: u64) -> Vec<Permutation> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut v: Vec<usize> = (0..degree).collect();
            v.shuffle(&mut rng);
            Permutation::new(v).unwrap()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn constructed_groups_satisfy_axioms(n in 1usize..40, a in 1usize..6, b in 1usize..6, d in 1usize..10) {
        for g in [
            FiniteGroup::cyclic(n).unwrap(),
            FiniteGroup::abelian(&[a, b]).unwrap(),
            FiniteGroup::dihedral(d).unwrap(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(a).unwrap(), &FiniteGroup::dihedral(b).unwrap()),
        ] {
            prop_assert!(g.check_axioms().is_ok());
            prop_assert_eq!(g.identity(), 0);
            for x in 0..g.order() {
                prop_assert_eq!(g.order() % g.element_order(x), 0);
            }
        }
    }

    #[test]
    fn catalogue_groups_satisfy_lagrange(i in catalogue_index()) {
        let g = group(common::CATALOGUE[i]);
        prop_assert!(g.check_axioms().is_ok());
        for x in 0..g.order() {
            prop_assert_eq!(g.order() % g.element_order(x), 0);
            prop_assert_eq!(g.order() % g.generate(&[x]).len(), 0);
        }
    }

    #[test]
    fn closure_is_idempotent(degree in 1usize..7, count in 1usize..3, seed in any::<u64>()) {
        let gens = random_perms(degree, count, seed);
        let g = PermutationGroup::closure(&gens, 10_000).unwrap();
        let again = PermutationGroup::closure(g.elements(), 10_000).unwrap();
        prop_assert_eq!(&again, &g);
        prop_assert_eq!(again.order(), g.order());
    }

    #[test]
    fn orbit_stabilizer(degree in 1usize..7, count in 1usize..3, seed in any::<u64>()) {
        let g = PermutationGroup::closure(&random_perms(degree, count, seed), 10_000).unwrap();
        for w in 0..degree {
            prop_assert_eq!(g.order(), g.orbit(w).len() * g.point_stabilizer(w).unwrap().order());
        }
    }

    #[test]
    fn conjugacy_witnesses_reverify(degree in 2usize..6, seed in any::<u64>()) {
        let g = PermutationGroup::closure(&random_perms(degree, 2, seed), 10_000).unwrap();
        let cyclics = g.cyclic_subgroups_of_elements();
        for a in &cyclics {
            for b in &cyclics {
                if let Some(x) = perm::are_conjugate_subgroups(&g, a, b) {
                    prop_assert!(g.contains(&x));
                    prop_assert_eq!(&a.conjugate_by(&x), b);
                }
            }
        }
    }

    #[test]
    fn stabilizer_is_cyclic_and_faithful(m in map_strategy(16, 6, true)) {
        let aut = iso::map_automorphism_group(&m, &caps()).unwrap();
        let stab = aut.point_stabilizer(0).unwrap();
        prop_assert!(stab.is_cyclic());
        let rho = m.rho_permutation();
        let rho_group = PermutationGroup::closure(&[rho], 10_000).unwrap();
        for x in stab.elements() {
            if !x.is_identity() {
                prop_assert!(m.rotation().iter().any(|&s| x.apply(s) != s));
            }
            let on_s = Permutation::from_fn(m.order(), |y| if m.contains(y) { x.apply(y) } else { y }).unwrap();
            prop_assert!(rho_group.contains(&on_s));
        }
        prop_assert_eq!((m.order() * m.valency()) % aut.order(), 0);
        prop_assert!(PermutationGroup::left_regular(m.group()).is_subgroup_of(&aut));
    }

    #[test]
    fn left_regular_preserves_ternary_relation(m in map_strategy(16, 6, false)) {
        let t = m.ternary_relation();
        for g in PermutationGroup::left_regular(m.group()).generators() {
            prop_assert!(t.is_preserved_by(g));
        }
    }

    #[test]
    fn automorphism_images_of_ternary_relations(m in map_strategy(16, 6, false), pick in any::<usize>()) {
        let sigma = random_automorphism(m.group(), pick);
        let image = m.apply_group_automorphism(&sigma).unwrap();
        prop_assert_eq!(image.ternary_relation(), m.ternary_relation().image(sigma.images()));
    }

    #[test]
    fn canonical_phase_is_idempotent(m in map_strategy(16, 6, false), shift in any::<usize>()) {
        let r = m.rotation().to_vec();
        let k = shift % r.len();
        let rotated: Vec<usize> = r[k..].iter().chain(&r[..k]).copied().collect();
        prop_assert_eq!(canonical_phase(&rotated), r.clone());
        prop_assert_eq!(canonical_phase(&r), r.clone());
        prop_assert_eq!(CayleyMap::new(m.group().clone(), &rotated).unwrap(), m);
    }

    #[test]
    fn balanced_maps_commute_with_inversion(m in map_strategy(16, 6, false)) {
        let g = m.group();
        let literal = m.rotation().iter().all(|&s| m.rho(g.inv(s)) == g.inv(m.rho(s)));
        prop_assert_eq!(m.is_balanced(), literal);
        let anti = m.rotation().iter().all(|&s| m.rho(g.inv(s)) == g.inv(m.rho_pow(s, -1)));
        prop_assert_eq!(m.is_antibalanced(), anti);
    }

    #[test]
    fn morphisms_compose(m in map_strategy(12, 5, true), p1 in any::<usize>(), p2 in any::<usize>()) {
        let m2 = m.apply_group_automorphism(&random_automorphism(m.group(), p1)).unwrap();
        let m3 = m2.apply_group_automorphism(&random_automorphism(m.group(), p2)).unwrap();
        let f12 = iso::map_isomorphisms(&m, &m2).unwrap();
        let f23 = iso::map_isomorphisms(&m2, &m3).unwrap();
        let f13 = iso::map_isomorphisms(&m, &m3).unwrap();
        prop_assert!(!f12.is_empty() && !f23.is_empty());
        for f in f12.iter().take(4) {
            prop_assert!(f.validate().is_ok());
            for g in f23.iter().take(4) {
                let h = g.compose(f).unwrap();
                prop_assert!(h.validate().is_ok());
                prop_assert!(f13.contains(&h));
            }
        }
    }

    #[test]
    fn babai_verdict_is_automorphism_invariant(m in map_strategy(16, 6, true), pick in any::<usize>()) {
        let sigma = random_automorphism(m.group(), pick);
        prop_assert!(ci::verdict_is_automorphism_invariant(&m, &sigma, &caps()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Brute force over `Sym(H)`: the permutations preserving the ternary
    /// relation.
    #[test]
    fn automorphism_group_matches_brute_force(m in map_strategy(8, 7, false)) {
        let t = m.ternary_relation();
        let mut count = 0usize;
        let aut = if m.is_connected() {
            Some(iso::map_automorphism_group(&m, &caps()).unwrap())
        } else {
            None
        };
        let mut all_inside = true;
        for_each_permutation(m.order(), |p| {
            let p = Permutation::new(p.to_vec()).unwrap();
            if t.is_preserved_by(&p) {
                count += 1;
                if let Some(a) = &aut {
                    all_inside &= a.contains(&p);
                }
            }
        });
        match aut {
            Some(a) => {
                prop_assert!(all_inside);
                prop_assert_eq!(a.order(), count);
            }
            None => {
                // the identity vertex stabilizer acts on every component
                // independently; the count is a multiple of |H|
                prop_assert_eq!(count % m.order(), 0);
            }
        }
    }
}

trait CyclicSubgroups {
    fn cyclic_subgroups_of_elements(&self) -> Vec<PermutationGroup>;
}

impl CyclicSubgroups for PermutationGroup {
    fn cyclic_subgroups_of_elements(&self) -> Vec<PermutationGroup> {
        let mut out: Vec<PermutationGroup> = Vec::new();
        for x in self.elements().iter().take(24) {
            let c = PermutationGroup::closure(std::slice::from_ref(x), 10_000).unwrap();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

#[test]
fn automorphisms_form_a_group() {
    for h in groups_up_to(12) {
        let auts = group::automorphisms(&h, &caps()).unwrap();
        assert!(auts.iter().any(|a| a.is_identity()), "{}", h.name());
        for a in &auts {
            assert!(auts.contains(&a.inverse()));
            for b in auts.iter().take(16) {
                assert!(auts.contains(&a.compose(b)), "{}", h.name());
            }
        }
    }
}

#[test]
fn class_m_subgroup_properties() {
    let mut in_m = 0;
    for h in groups_up_to(24) {
        if !group::in_class_m(&h, &caps()).unwrap() {
            continue;
        }
        in_m += 1;
        assert!(group::equal_order_subgroups_are_automorphic(&h, &caps()).unwrap(), "{}", h.name());
        assert!(group::subgroup_automorphisms_extend(&h, &caps()).unwrap(), "{}", h.name());
        for s in group::all_subgroups(&h, &caps()).unwrap() {
            assert!(s.is_normal(), "{}", h.name());
        }
    }
    assert!(in_m >= 15);
}

#[test]
fn class_m_membership() {
    let member = |s: &str| group::in_class_m(&group(s), &caps()).unwrap();
    for s in ["z1", "z2", "z6", "z15", "k4", "abelian:2,2,2,2", "z4", "z12", "q8", "product:cyclic:3,quaternion:8"] {
        assert!(member(s), "{s}");
    }
    for s in ["z8", "z9", "abelian:3,3", "abelian:2,4", "s3", "dihedral:4", "quaternion:16", "z18"] {
        assert!(!member(s), "{s}");
    }
}

#[test]
fn regular_subgroups_include_left_regular() {
    for spec in ["z8:1,3,5,7", "z9:1,5,7,8,4,2", "q8:1,3,5,7", "k4:1,2,3"] {
        let m = cimlab::notation::parse_map(spec).unwrap();
        let aut = iso::map_automorphism_group(&m, &caps()).unwrap();
        let regs = perm::regular_subgroups_isomorphic_to(&aut, m.group(), &caps()).unwrap();
        assert!(regs.contains(&PermutationGroup::left_regular(m.group())), "{spec}");
    }
}

#[test]
fn distinct_normal_subgroups_are_not_conjugate() {
    let m = cimlab::notation::parse_map("z16:1,15,3,5,9,7,11,13").unwrap();
    let aut = iso::map_automorphism_group(&m, &caps()).unwrap();
    let normal: Vec<PermutationGroup> = aut
        .cyclic_subgroups_of_elements()
        .into_iter()
        .filter(|s| aut.elements().iter().all(|x| &s.conjugate_by(x) == s))
        .collect();
    for a in &normal {
        for b in &normal {
            if a != b {
                assert!(perm::are_conjugate_subgroups(&aut, a, b).is_none());
            }
        }
    }
}

#[test]
fn subgroups_of_cim_groups_are_connected_cim() {
    for spec in ["z6", "z8", "q8", "abelian:2,2,2", "z10", "z12"] {
        let h = group(spec);
        let mut opts = ScanOptions::full(&h);
        opts.symmetry_reduction = true;
        assert!(ci::verify_cim_group(&h, &opts, &caps()).unwrap().verdict, "{spec}");
        for s in group::all_subgroups(&h, &caps()).unwrap() {
            let k = Arc::new(s.to_group().0);
            let mut opts = ScanOptions::full(&k);
            opts.symmetry_reduction = true;
            assert!(ci::verify_connected_cim(&k, &opts, &caps()).unwrap().verdict, "{spec} > {}", k.name());
        }
    }
}

#[test]
fn negative_scans_carry_rechecked_pairs() {
    for spec in ["z9", "abelian:3,3", "dihedral:4"] {
        let h = group(spec);
        let mut opts = ScanOptions::full(&h);
        opts.symmetry_reduction = true;
        let rep = match ci::verify_cim_group(&h, &opts, &caps()) {
            Ok(r) => r,
            Err(cimlab::error::Error::UnsupportedReduction(_)) => continue,
            Err(e) => panic!("{spec}: {e}"),
        };
        assert!(!rep.verdict, "{spec}");
        rep.revalidate(&caps()).unwrap();
        let pair = rep.witnesses.iter().find_map(|w| match w {
            cimlab::report::Witness::MapPair { first, second, isomorphism } => Some((first, second, isomorphism)),
            _ => None,
        });
        let (a, b, f) = pair.expect("map pair witness");
        let (a, b) = (a.to_map().unwrap(), b.to_map().unwrap());
        assert!(iso::MapMorphism::new(a.clone(), b.clone(), f.clone()).is_ok());
        assert!(!iso::map_isomorphisms(&a, &b).unwrap().is_empty() || !a.is_connected());
        assert!(iso::are_cayley_isomorphic(&a, &b, &caps()).unwrap().is_none());
    }
}

#[test]
fn odd_order_groups_up_to_eleven() {
    for (spec, expected) in [("z3", true), ("z5", true), ("z7", true), ("z9", false), ("abelian:3,3", false), ("z11", true)] {
        let h = group(spec);
        let mut opts = ScanOptions::full(&h);
        opts.symmetry_reduction = true;
        assert_eq!(ci::verify_cim_group(&h, &opts, &caps()).unwrap().verdict, expected, "{spec}");
    }
}

#[test]
fn symmetry_reduction_keeps_verdicts() {
    for spec in ["z5", "z6", "z7", "z8", "k4", "q8", "z9", "s3"] {
        let h = group(spec);
        let mut opts = ScanOptions::full(&h);
        let plain = ci::verify_connected_cim(&h, &opts, &caps()).unwrap();
        opts.symmetry_reduction = true;
        let reduced = ci::verify_connected_cim(&h, &opts, &caps()).unwrap();
        assert_eq!(plain.verdict, reduced.verdict, "{spec}");
        assert_eq!(plain.stats["maps_total"], reduced.stats["maps_total"], "{spec}");
    }
}
