//! Cayley maps: a group, a symmetric identity-free connection set and one
//! cyclic ordering of it used at every vertex.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupIsomorphism, Subgroup};
use crate::perm::Permutation;

const ABSENT: usize = usize::MAX;

/// `CM(H, S, ρ)`. The rotation lists `S` in `ρ`-order and is stored with its
/// least element first; mirror images are distinct maps.
#[derive(Clone)]
pub struct CayleyMap {
    group: Arc<FiniteGroup>,
    rotation: Vec<usize>,
    position: Vec<usize>,
}

impl PartialEq for CayleyMap {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for CayleyMap {}

impl fmt::Debug for CayleyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyMap({}, {:?})", self.group.name(), self.rotation)
    }
}

/// Rotates `seq` so that its least entry comes first.
pub fn canonical_phase(seq: &[usize]) -> Vec<usize> {
    let Some(start) = seq.iter().enumerate().min_by_key(|&(_, &x)| x).map(|(i, _)| i) else {
        return Vec::new();
    };
    seq[start..].iter().chain(&seq[..start]).copied().collect()
}

impl CayleyMap {
    pub fn new(group: Arc<FiniteGroup>, rotation: &[usize]) -> Result<Self> {
        let n = group.order();
        let mut position = vec![ABSENT; n];
        for (i, &s) in rotation.iter().enumerate() {
            if s >= n {
                return Err(Error::ElementOutOfRange { element: s, order: n });
            }
            if s == group.identity() {
                return Err(Error::IdentityInConnectionSet);
            }
            if position[s] != ABSENT {
                return Err(Error::DuplicateEntry(s));
            }
            position[s] = i;
        }
        for &s in rotation {
            let inv = group.inv(s);
            if position[inv] == ABSENT {
                return Err(Error::NotSymmetric { element: s, inverse: inv });
            }
        }
        let rotation = canonical_phase(rotation);
        for (i, &s) in rotation.iter().enumerate() {
            position[s] = i;
        }
        Ok(CayleyMap {
            group,
            rotation,
            position,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    pub fn valency(&self) -> usize {
        self.rotation.len()
    }

    /// The connection set, sorted.
    pub fn connection_set(&self) -> Vec<usize> {
        let mut s = self.rotation.clone();
        s.sort_unstable();
        s
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position[x] != ABSENT
    }

    /// Index of `s` in the rotation.
    pub fn position(&self, s: usize) -> Option<usize> {
        let p = self.position[s];
        (p != ABSENT).then_some(p)
    }

    pub(crate) fn positions(&self) -> &[usize] {
        &self.position
    }

    /// `ρ^k(s)` for `s ∈ S`.
    pub fn rho_pow(&self, s: usize, k: isize) -> usize {
        let d = self.valency() as isize;
        let p = self.position[s] as isize;
        self.rotation[(p + k).rem_euclid(d) as usize]
    }

    pub fn rho(&self, s: usize) -> usize {
        self.rho_pow(s, 1)
    }

    /// `ρ` as a permutation of the whole group, fixing everything off `S`.
    pub fn rho_permutation(&self) -> Permutation {
        Permutation::from_vec_unchecked(
            (0..self.order())
                .map(|x| if self.contains(x) { self.rho(x) } else { x })
                .collect(),
        )
    }

    /// The subgroup `⟨S⟩`.
    pub fn generated_subgroup(&self) -> Subgroup {
        Subgroup::generated_by(&self.group, &self.rotation)
    }

    pub fn is_connected(&self) -> bool {
        self.group.generate(&self.rotation).len() == self.order()
    }

    /// `ρ(s⁻¹) = ρ(s)⁻¹` for all `s`.
    pub fn is_balanced(&self) -> bool {
        let g = &self.group;
        self.rotation.iter().all(|&s| self.rho(g.inv(s)) == g.inv(self.rho(s)))
    }

    /// `ρ(s⁻¹) = ρ⁻¹(s)⁻¹` for all `s`.
    pub fn is_antibalanced(&self) -> bool {
        let g = &self.group;
        self.rotation
            .iter()
            .all(|&s| self.rho(g.inv(s)) == g.inv(self.rho_pow(s, -1)))
    }

    /// The triples `(x, xs, xρ(s))`.
    pub fn ternary_relation(&self) -> TernaryRelation {
        let g = &self.group;
        let triples = (0..self.order())
            .flat_map(|x| {
                self.rotation
                    .iter()
                    .map(move |&s| (x, g.mul(x, s), g.mul(x, self.rho(s))))
            })
            .collect();
        TernaryRelation {
            degree: self.order(),
            triples,
        }
    }

    /// The image map `CM(H′, σ(S), σρσ⁻¹)`.
    pub fn apply_group_automorphism(&self, sigma: &GroupIsomorphism) -> Result<CayleyMap> {
        if !Arc::ptr_eq(sigma.source(), &self.group) && **sigma.source() != *self.group {
            return Err(Error::DegreeMismatch {
                expected: self.order(),
                found: sigma.source().order(),
            });
        }
        let rotation: Vec<usize> = self.rotation.iter().map(|&s| sigma.apply(s)).collect();
        CayleyMap::new(sigma.target().clone(), &rotation)
    }

    /// The rotation read through `σ`, in canonical phase, without building
    /// a map.
    pub(crate) fn image_rotation(&self, images: &[usize]) -> Vec<usize> {
        let seq: Vec<usize> = self.rotation.iter().map(|&s| images[s]).collect();
        canonical_phase(&seq)
    }

    /// The map restricted to `⟨S⟩`, as a map over that subgroup taken as a
    /// group in its own right, together with the subgroup.
    pub fn component_map(&self) -> Result<(CayleyMap, Subgroup)> {
        let sub = self.generated_subgroup();
        let (local, embedding) = sub.to_group();
        let mut index = vec![ABSENT; self.order()];
        for (i, &m) in embedding.iter().enumerate() {
            index[m] = i;
        }
        let rotation: Vec<usize> = self.rotation.iter().map(|&s| index[s]).collect();
        Ok((CayleyMap::new(Arc::new(local), &rotation)?, sub))
    }

    /// Compact textual form `<group name>:<r0,r1,...>`.
    pub fn spec_string(&self) -> String {
        format!(
            "{}:{}",
            self.group.name(),
            self.rotation.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// The relation `{(x, y, z) : x⁻¹y ∈ S, x⁻¹z = ρ(x⁻¹y)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryRelation {
    degree: usize,
    triples: BTreeSet<(usize, usize, usize)>,
}

impl TernaryRelation {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn triples(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: (usize, usize, usize)) -> bool {
        self.triples.contains(&t)
    }

    /// The relation with every point relabelled through `p`.
    pub fn image(&self, p: &[usize]) -> TernaryRelation {
        TernaryRelation {
            degree: self.degree,
            triples: self.triples.iter().map(|&(x, y, z)| (p[x], p[y], p[z])).collect(),
        }
    }

    pub fn is_preserved_by(&self, p: &Permutation) -> bool {
        p.degree() == self.degree
            && self
                .triples
                .iter()
                .all(|&(x, y, z)| self.triples.contains(&(p.apply(x), p.apply(y), p.apply(z))))
    }
}

/// Whether `φ` fixes the identity and satisfies `φ(gx) = φ(g)·φ^{π(g)}(x)`
/// for some `π(g)` in `0..ord(φ)`, for every `g`.
pub fn is_skew_morphism(h: &FiniteGroup, phi: &Permutation) -> Result<bool> {
    skew_power_function(h, phi).map(|p| p.is_some())
}

/// The least power function `π` witnessing that `φ` is a skew morphism.
pub fn skew_power_function(h: &FiniteGroup, phi: &Permutation) -> Result<Option<Vec<usize>>> {
    let n = h.order();
    if phi.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: phi.degree(),
        });
    }
    if !phi.fixes(h.identity()) {
        return Ok(None);
    }
    let ord = phi.order();
    let mut powers = vec![Permutation::identity(n)];
    for k in 1..ord {
        powers.push(phi.compose(&powers[k - 1]));
    }
    let mut pi = Vec::with_capacity(n);
    for g in 0..n {
        let pg = phi.apply(g);
        match powers
            .iter()
            .position(|pk| (0..n).all(|x| phi.apply(h.mul(g, x)) == h.mul(pg, pk.apply(x))))
        {
            Some(k) => pi.push(k),
            None => return Ok(None),
        }
    }
    Ok(Some(pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn validation_errors() {
        let g = z(8);
        assert!(CayleyMap::new(g.clone(), &[1, 3, 5, 7]).is_ok());
        assert!(matches!(
            CayleyMap::new(g.clone(), &[1, 2, 3]),
            Err(Error::NotSymmetric { element: 1, inverse: 7 })
        ));
        assert!(matches!(CayleyMap::new(g.clone(), &[0, 1, 7]), Err(Error::IdentityInConnectionSet)));
        assert!(matches!(CayleyMap::new(g.clone(), &[1, 7, 1]), Err(Error::DuplicateEntry(1))));
        assert!(matches!(CayleyMap::new(g, &[9]), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn canonical_phase_is_idempotent() {
        let g = z(8);
        let m = CayleyMap::new(g.clone(), &[5, 7, 1, 3]).unwrap();
        assert_eq!(m.rotation(), &[1, 3, 5, 7]);
        let again = CayleyMap::new(g, m.rotation()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn klein_two_element_rotation() {
        let k4 = Arc::new(FiniteGroup::abelian(&[2, 2]).unwrap());
        let m = CayleyMap::new(k4, &[1, 2]).unwrap();
        assert!(m.is_connected());
        assert_eq!(m.valency(), 2);
    }

    #[test]
    fn connectivity() {
        let g = z(8);
        assert!(CayleyMap::new(g.clone(), &[1, 3, 5, 7]).unwrap().is_connected());
        let m = CayleyMap::new(g, &[2, 6]).unwrap();
        assert!(!m.is_connected());
        assert_eq!(m.generated_subgroup().order(), 4);
        let (comp, _) = m.component_map().unwrap();
        assert!(comp.is_connected());
        assert_eq!(comp.order(), 4);
    }

    #[test]
    fn two_cycle_is_balanced_and_antibalanced() {
        let m = CayleyMap::new(z(5), &[1, 4]).unwrap();
        assert!(m.is_balanced());
        assert!(m.is_antibalanced());
    }

    #[test]
    fn z8_antibalanced_maps() {
        let g = z(8);
        for rot in [[1, 3, 5, 7], [1, 7, 5, 3]] {
            let m = CayleyMap::new(g.clone(), &rot).unwrap();
            assert!(m.is_antibalanced());
            assert!(!m.is_balanced());
        }
    }

    #[test]
    fn ternary_relation_counts() {
        let m = CayleyMap::new(z(8), &[1, 3, 5, 7]).unwrap();
        let t = m.ternary_relation();
        assert_eq!(t.len(), 32);
        for &s in m.rotation() {
            assert!(t.contains((0, s, m.rho(s))));
        }
        let shift = Permutation::from_fn(8, |x| (x + 3) % 8).unwrap();
        assert!(t.is_preserved_by(&shift));
    }

    #[test]
    fn automorphism_action() {
        let g = z(8);
        let m = CayleyMap::new(g.clone(), &[1, 3, 5, 7]).unwrap();
        let triple = GroupIsomorphism::new(g.clone(), g.clone(), (0..8).map(|x| 3 * x % 8).collect()).unwrap();
        let image = m.apply_group_automorphism(&triple).unwrap();
        assert_eq!(image.rotation(), &[1, 7, 5, 3]);
        let id = GroupIsomorphism::identity(&g);
        assert_eq!(m.apply_group_automorphism(&id).unwrap(), m);
        // x -> 5x restricts to rho^2 on S
        let five = GroupIsomorphism::new(g.clone(), g, (0..8).map(|x| 5 * x % 8).collect()).unwrap();
        assert_eq!(m.apply_group_automorphism(&five).unwrap(), m);
        let t = m.ternary_relation();
        assert_eq!(image.ternary_relation(), t.image(triple.images()));
    }

    #[test]
    fn skew_morphisms() {
        let g = z(8);
        let three = Permutation::from_fn(8, |x| 3 * x % 8).unwrap();
        assert!(is_skew_morphism(&g, &three).unwrap());
        let swap = Permutation::new(vec![0, 2, 1, 3, 4, 5, 6, 7]).unwrap();
        assert!(!is_skew_morphism(&g, &swap).unwrap());
        let z9 = z(9);
        let gamma = Permutation::from_fn(9, |x| (4 * x + 1) % 9).unwrap();
        assert!(!is_skew_morphism(&z9, &gamma).unwrap());
    }
}
