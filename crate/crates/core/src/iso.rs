//! Map automorphisms and isomorphisms.
//!
//! An orientation-preserving isomorphism of connected maps is fixed by the
//! image of one vertex and its differential there. Differentials commute
//! with the rotations, so each is a cyclic shift of rotation positions, and
//! both the image of the next vertex and its differential follow from the
//! current ones. Every search here seeds one vertex and one shift and
//! propagates breadth-first.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupIsomorphism};
use crate::map::CayleyMap;
use crate::perm::{self, Permutation, PermutationGroup};

const ABSENT: usize = usize::MAX;

/// Borrowed arrays describing a map; lets the exhaustive scans test
/// rotations without building a `CayleyMap` for each.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub n: usize,
    pub table: &'a [usize],
    pub inv: &'a [usize],
    pub rot: &'a [usize],
    pub pos: &'a [usize],
}

impl<'a> View<'a> {
    pub fn of(m: &'a CayleyMap) -> Self {
        View {
            n: m.order(),
            table: m.group().table(),
            inv: m.group().inverses(),
            rot: m.rotation(),
            pos: m.positions(),
        }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }
}

/// Reusable buffers for propagation.
#[derive(Default)]
pub(crate) struct Scratch {
    phi: Vec<usize>,
    used: Vec<bool>,
    shift: Vec<usize>,
    queue: Vec<usize>,
}

impl Scratch {
    fn reset(&mut self, n: usize) {
        self.phi.clear();
        self.phi.resize(n, ABSENT);
        self.used.clear();
        self.used.resize(n, false);
        self.shift.clear();
        self.shift.resize(n, 0);
        self.queue.clear();
    }

    pub fn images(&self) -> &[usize] {
        &self.phi
    }
}

/// Propagates `φ(e) = v` with differential at `e` shifting rotation
/// positions by `j`. True when this yields a bijection on all vertices that
/// respects both rotations; the images are left in `sc`.
pub(crate) fn extend(src: &View, dst: &View, v: usize, j: usize, sc: &mut Scratch) -> bool {
    let n = src.n;
    let d = src.rot.len();
    if n != dst.n || d != dst.rot.len() {
        return false;
    }
    sc.reset(n);
    sc.phi[0] = v;
    sc.used[v] = true;
    sc.shift[0] = j % d.max(1);
    sc.queue.push(0);
    let mut head = 0;
    while head < sc.queue.len() {
        let h = sc.queue[head];
        head += 1;
        let ph = sc.phi[h];
        let sh = sc.shift[h];
        for i in 0..d {
            let s = src.rot[i];
            let t = dst.rot[(i + sh) % d];
            let image = dst.mul(ph, t);
            let u = src.mul(h, s);
            let known = sc.phi[u];
            if known == ABSENT {
                if sc.used[image] {
                    return false;
                }
                sc.phi[u] = image;
                sc.used[image] = true;
                // the differential at u sends s⁻¹ to t⁻¹
                sc.shift[u] = (dst.pos[dst.inv[t]] + d - src.pos[src.inv[s]]) % d;
                sc.queue.push(u);
            } else if known != image {
                return false;
            }
        }
    }
    sc.queue.len() == n
}

/// Whether the stabilizer of the identity vertex in `Aut(M)` is nontrivial,
/// for a connected map.
///
/// The stabilizer is cyclic and acts on `S` as a subgroup of `⟨ρ⟩`, so it is
/// nontrivial exactly when for some prime `q` dividing `|S|` the shift by
/// `|S|/q` extends to an automorphism.
pub(crate) fn has_nontrivial_stabilizer(view: &View, primes: &[usize], sc: &mut Scratch) -> bool {
    let d = view.rot.len();
    primes.iter().any(|&q| extend(view, view, 0, d / q, sc))
}

/// A vertex bijection between two maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapMorphism {
    source: CayleyMap,
    target: CayleyMap,
    images: Vec<usize>,
}

impl MapMorphism {
    pub fn new(source: CayleyMap, target: CayleyMap, images: Vec<usize>) -> Result<Self> {
        let m = MapMorphism {
            source,
            target,
            images,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn source(&self) -> &CayleyMap {
        &self.source
    }

    pub fn target(&self) -> &CayleyMap {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Checks bijectivity, adjacency and the rotation condition
    /// `φ(h)⁻¹φ(hρ₁(s)) = ρ₂(φ(h)⁻¹φ(hs))`.
    pub fn validate(&self) -> Result<()> {
        let (m1, m2) = (&self.source, &self.target);
        let n = m1.order();
        if m2.order() != n || self.images.len() != n {
            return Err(Error::Witness(format!(
                "vertex counts differ: {} vs {} with {} images",
                n,
                m2.order(),
                self.images.len()
            )));
        }
        if m1.valency() != m2.valency() {
            return Err(Error::Witness("valencies differ".into()));
        }
        Permutation::new(self.images.clone()).map_err(|_| Error::Witness("images are not a bijection".into()))?;
        let (g1, g2) = (m1.group(), m2.group());
        for h in 0..n {
            let ph_inv = g2.inv(self.images[h]);
            for &s in m1.rotation() {
                let diff = g2.mul(ph_inv, self.images[g1.mul(h, s)]);
                if !m2.contains(diff) {
                    return Err(Error::Witness(format!("edge ({h}, {h}*{s}) is not mapped to an edge")));
                }
                let next = g2.mul(ph_inv, self.images[g1.mul(h, m1.rho(s))]);
                if next != m2.rho(diff) {
                    return Err(Error::Witness(format!("rotation at vertex {h} is not preserved")));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`, where `other` ends at the source of `self`.
    pub fn compose(&self, other: &MapMorphism) -> Result<MapMorphism> {
        if other.target != self.source {
            return Err(Error::Witness("morphisms are not composable".into()));
        }
        let images = other.images.iter().map(|&x| self.images[x]).collect();
        Ok(MapMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    pub fn inverse(&self) -> MapMorphism {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        MapMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        }
    }

    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.images.clone())
    }
}

fn require_connected(m: &CayleyMap) -> Result<()> {
    if m.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected(m.group().name().to_string()))
    }
}

/// Rotation shifts `k` for which `ρ^k` on `S` extends to an automorphism
/// fixing the identity vertex.
pub fn stabilizer_shifts(m: &CayleyMap) -> Result<Vec<usize>> {
    require_connected(m)?;
    let view = View::of(m);
    let mut sc = Scratch::default();
    let d = m.valency().max(1);
    Ok((0..d).filter(|&k| extend(&view, &view, 0, k, &mut sc)).collect())
}

/// The stabilizer of the identity vertex in `Aut(M)`, listed by shift.
pub fn stabilizer(m: &CayleyMap) -> Result<Vec<Permutation>> {
    require_connected(m)?;
    let view = View::of(m);
    let mut sc = Scratch::default();
    let d = m.valency().max(1);
    let mut out = Vec::new();
    for k in 0..d {
        if extend(&view, &view, 0, k, &mut sc) {
            out.push(Permutation::from_vec_unchecked(sc.images().to_vec()));
        }
    }
    Ok(out)
}

/// `Aut(M)` for a connected map, as the products `ĥ∘φ` of left
/// translations with stabilizer elements.
pub fn map_automorphism_group(m: &CayleyMap, caps: &Caps) -> Result<PermutationGroup> {
    crate::group::check_order_cap(m.group(), caps)?;
    let stab = stabilizer(m)?;
    let n = m.order();
    let size = n * stab.len();
    if size > caps.permutation_group {
        return Err(Error::Capacity {
            what: "map automorphism group",
            size,
            cap: caps.permutation_group,
        });
    }
    let g = m.group();
    let mut elements = Vec::with_capacity(size);
    for phi in &stab {
        for h in 0..n {
            elements.push(Permutation::from_vec_unchecked(
                phi.images().iter().map(|&x| g.mul(h, x)).collect(),
            ));
        }
    }
    let mut generators: Vec<Permutation> = g
        .generating_set()
        .into_iter()
        .map(|h| Permutation::from_vec_unchecked((0..n).map(|x| g.mul(h, x)).collect()))
        .collect();
    if let Some(phi) = stab.iter().max_by_key(|p| p.order()).filter(|p| !p.is_identity()) {
        generators.push(phi.clone());
    }
    Ok(PermutationGroup::from_elements_unchecked(n, elements, generators))
}

/// All isomorphisms between two connected maps, ordered by the image of the
/// identity and then by shift.
pub fn map_isomorphisms(m1: &CayleyMap, m2: &CayleyMap) -> Result<Vec<MapMorphism>> {
    require_connected(m1)?;
    require_connected(m2)?;
    if m1.order() != m2.order() || m1.valency() != m2.valency() {
        return Ok(Vec::new());
    }
    let (v1, v2) = (View::of(m1), View::of(m2));
    let mut sc = Scratch::default();
    let d = m1.valency().max(1);
    let mut out = Vec::new();
    for v in 0..m2.order() {
        for j in 0..d {
            if extend(&v1, &v2, v, j, &mut sc) {
                out.push(MapMorphism {
                    source: m1.clone(),
                    target: m2.clone(),
                    images: sc.images().to_vec(),
                });
            }
        }
    }
    Ok(out)
}

fn first_connected_isomorphism(m1: &CayleyMap, m2: &CayleyMap) -> Option<Vec<usize>> {
    if m1.order() != m2.order() || m1.valency() != m2.valency() {
        return None;
    }
    let (v1, v2) = (View::of(m1), View::of(m2));
    let mut sc = Scratch::default();
    let d = m1.valency().max(1);
    // vertex transitivity of Cayley maps: the identity may go to the identity
    (0..d).find_map(|j| extend(&v1, &v2, 0, j, &mut sc).then(|| sc.images().to_vec()))
}

/// Left coset representatives of `members` in `g`, least element first.
fn transversal(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for t in 0..g.order() {
        if covered[t] {
            continue;
        }
        reps.push(t);
        for &k in members {
            covered[g.mul(t, k)] = true;
        }
    }
    reps
}

/// Some isomorphism between two maps, connected or not. Disconnected maps
/// are matched component by component through coset representatives.
pub fn find_map_isomorphism(m1: &CayleyMap, m2: &CayleyMap) -> Result<Option<MapMorphism>> {
    if m1.order() != m2.order() || m1.valency() != m2.valency() {
        return Ok(None);
    }
    let images = if m1.is_connected() && m2.is_connected() {
        first_connected_isomorphism(m1, m2)
    } else {
        let (c1, k1) = m1.component_map()?;
        let (c2, k2) = m2.component_map()?;
        if k1.order() != k2.order() {
            return Ok(None);
        }
        first_connected_isomorphism(&c1, &c2).map(|local| {
            let (g1, g2) = (m1.group(), m2.group());
            let (t1, t2) = (transversal(g1, k1.members()), transversal(g2, k2.members()));
            let mut images = vec![0; m1.order()];
            for (a, b) in t1.iter().zip(&t2) {
                for (i, &k) in k1.members().iter().enumerate() {
                    images[g1.mul(*a, k)] = g2.mul(*b, k2.members()[local[i]]);
                }
            }
            images
        })
    };
    images
        .map(|images| MapMorphism::new(m1.clone(), m2.clone(), images))
        .transpose()
}

/// A group isomorphism carrying `(S₁, ρ₁)` onto `(S₂, ρ₂)`, if one exists.
pub fn are_cayley_isomorphic(m1: &CayleyMap, m2: &CayleyMap, caps: &Caps) -> Result<Option<GroupIsomorphism>> {
    if m1.order() != m2.order() || m1.valency() != m2.valency() {
        return Ok(None);
    }
    let Some(base) = group::is_isomorphic(m1.group(), m2.group(), caps)? else {
        return Ok(None);
    };
    for sigma in group::automorphisms(m2.group(), caps)? {
        let candidate = sigma.compose(&base);
        if m1.image_rotation(candidate.images()) == m2.rotation() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// The least image of the rotation under the given automorphisms: equal for
/// two maps over the same group exactly when they are Cayley isomorphic.
pub fn cayley_class_key(m: &CayleyMap, automorphisms: &[GroupIsomorphism]) -> Vec<usize> {
    automorphisms
        .iter()
        .map(|s| m.image_rotation(s.images()))
        .min()
        .unwrap_or_else(|| m.rotation().to_vec())
}

/// Breadth-first relabelling from the identity vertex, entering it along
/// rotation position `j`; each later vertex lists its neighbours starting
/// from the one it was discovered from.
fn bfs_code(view: &View, j: usize) -> Vec<usize> {
    let n = view.n;
    let d = view.rot.len();
    let mut label = vec![ABSENT; n];
    let mut start = vec![0; n];
    let mut order = Vec::with_capacity(n);
    label[0] = 0;
    start[0] = j;
    order.push(0);
    let mut code = Vec::with_capacity(n * d);
    let mut head = 0;
    while head < order.len() {
        let h = order[head];
        head += 1;
        for i in 0..d {
            let p = (start[h] + i) % d;
            let s = view.rot[p];
            let u = view.mul(h, s);
            if label[u] == ABSENT {
                label[u] = order.len();
                start[u] = view.pos[view.inv[s]];
                order.push(u);
            }
            code.push(label[u]);
        }
    }
    code
}

/// A complete invariant of a map up to orientation-preserving isomorphism.
/// Disconnected maps are represented by their identity component.
pub fn canonical_code(m: &CayleyMap) -> Result<Vec<usize>> {
    let component;
    let m = if m.is_connected() {
        m
    } else {
        component = m.component_map()?.0;
        &component
    };
    let view = View::of(m);
    let d = m.valency().max(1);
    let best = (0..d).map(|j| bfs_code(&view, j)).min().unwrap_or_default();
    let mut code = vec![m.order(), m.valency()];
    code.extend(best);
    Ok(code)
}

/// Relabels `M` along a regular subgroup `R ≤ Aut(M)` isomorphic to
/// `target`: vertex `λ(h) = θ(h)(e)` becomes `h`. The result is a Cayley map
/// over `target` and `λ⁻¹` is an isomorphism onto it.
pub fn transport_along(
    m: &CayleyMap,
    r: &PermutationGroup,
    target: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<(CayleyMap, MapMorphism)> {
    let lambda = perm::regular_labeling(r, target, caps)?
        .ok_or_else(|| Error::NoRegularCopy(target.name().to_string()))?;
    let mut lambda_inv = vec![0; lambda.len()];
    for (h, &x) in lambda.iter().enumerate() {
        lambda_inv[x] = h;
    }
    let rotation: Vec<usize> = m.rotation().iter().map(|&s| lambda_inv[s]).collect();
    let image = CayleyMap::new(target.clone(), &rotation)?;
    let morphism = MapMorphism::new(m.clone(), image.clone(), lambda_inv)?;
    Ok((image, morphism))
}
