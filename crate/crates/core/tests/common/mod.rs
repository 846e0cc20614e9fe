#![allow(dead_code)]

use std::sync::Arc;

use cimlab::group::FiniteGroup;
use cimlab::map::CayleyMap;
use cimlab::notation;
use rand::seq::SliceRandom;
use rand::Rng;

/// Groups used across the property tests.
pub const CATALOGUE: &[&str] = &[
    "z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9", "z10", "z11", "z12", "z13", "z14", "z15", "z16",
    "k4", "abelian:2,2,2", "abelian:2,4", "q8", "dihedral:4", "s3",
    "dihedral:5", "abelian:3,3", "dihedral:6", "a4", "abelian:2,6", "semidirect:cyclic:3,4,mult:2",
    "abelian:2,2,2,2", "abelian:4,4", "abelian:2,8", "abelian:2,2,4", "quaternion:16", "dihedral:8",
    "product:quaternion:8,cyclic:2", "dihedral:7",
    "semidirect:cyclic:7,3,mult:2", "product:cyclic:3,quaternion:8", "product:cyclic:3,abelian:2,2,2",
    "product:cyclic:5,cyclic:4", "z21", "z22", "z23", "z24",
];

/// The groups of order at most 8, one per isomorphism class.
pub const ORDER_AT_MOST_8: &[&str] = &[
    "z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "k4", "abelian:2,2,2", "abelian:2,4", "q8", "dihedral:4",
    "s3",
];

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(notation::parse_group(spec).unwrap())
}

pub fn groups_up_to(order: usize) -> Vec<Arc<FiniteGroup>> {
    CATALOGUE.iter().map(|s| group(s)).filter(|g| g.order() <= order).collect()
}

/// A random inverse-closed connection set of size at most `max_valency`
/// in a random order; `connected` requires it to generate the group.
pub fn random_map<R: Rng>(h: &Arc<FiniteGroup>, max_valency: usize, connected: bool, rng: &mut R) -> CayleyMap {
    assert!(h.order() > 1);
    loop {
        let mut s: Vec<usize> = Vec::new();
        let target = rng.gen_range(1..=max_valency.min(h.order() - 1));
        let mut pool: Vec<usize> = (1..h.order()).collect();
        pool.shuffle(rng);
        for x in pool {
            if s.contains(&x) {
                continue;
            }
            let need = if h.inv(x) == x { 1 } else { 2 };
            if s.len() + need > target {
                continue;
            }
            s.push(x);
            if need == 2 {
                s.push(h.inv(x));
            }
        }
        if s.is_empty() {
            continue;
        }
        if connected && h.generate(&s).len() != h.order() {
            continue;
        }
        s.shuffle(rng);
        return CayleyMap::new(h.clone(), &s).unwrap();
    }
}

/// All permutations of `0..n` in lexicographic order, passed to `f`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}
