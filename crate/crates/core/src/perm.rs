//! Explicit permutation groups on `0..degree`.
//!
//! Groups are stored as their full sorted element list. The objects this
//! crate works with have a few hundred elements at most, so orbit, block,
//! stabilizer and conjugacy questions are answered by direct enumeration.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupIsomorphism};

/// A bijection of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from a rule on points, validating bijectivity.
    pub fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new((0..degree).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] == x
    }

    pub fn fixed_point_set(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.fixes(x)).collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x)
    }

    /// The image of a point set, sorted.
    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.images[x]).collect();
        out.sort_unstable();
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Intersection of the fixed-point sets of `perms`.
pub fn fixed_points(perms: &[Permutation]) -> Result<Vec<usize>> {
    let Some(first) = perms.first() else {
        return Ok(Vec::new());
    };
    let n = first.degree();
    if let Some(p) = perms.iter().find(|p| p.degree() != n) {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: p.degree(),
        });
    }
    Ok((0..n).filter(|&x| perms.iter().all(|p| p.fixes(x))).collect())
}

/// A finite permutation group stored by its sorted element list.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    index: Arc<HashMap<Permutation, usize>>,
}

impl PartialEq for PermutationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermutationGroup {}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermutationGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.elements.len(),
            self.generators.len()
        )
    }
}

/// A partition of the point set into blocks of one size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(x);
        }
        let mut blocks: Vec<Vec<usize>> = by_label.into_values().collect();
        blocks.sort();
        BlockSystem {
            degree: labels.len(),
            blocks,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.len())
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &BlockSystem) -> bool {
        let mut label = vec![0; self.degree];
        for (i, b) in other.blocks.iter().enumerate() {
            for &x in b {
                label[x] = i;
            }
        }
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| label[x] == label[b[0]]))
    }

    fn labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                label[x] = i;
            }
        }
        label
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }
}

impl PermutationGroup {
    /// Breadth-first closure of `gens` under composition.
    pub fn closure(gens: &[Permutation], cap: usize) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidPermutation("closure needs at least one generator".into()));
        };
        let degree = first.degree();
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::Capacity {
                            what: "permutation group order",
                            size: elements.len() + 1,
                            cap,
                        });
                    }
                    seen.insert(y.clone());
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let generators: Vec<Permutation> = {
            let mut g: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
            g.sort();
            g.dedup();
            g
        };
        Ok(Self::from_parts(degree, elements, generators))
    }

    /// Wraps an element list already known to form a group.
    pub(crate) fn from_elements_unchecked(degree: usize, elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        Self::from_parts(degree, elements, generators)
    }

    fn from_parts(degree: usize, mut elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PermutationGroup {
            degree,
            elements,
            generators,
            index: Arc::new(index),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, vec![Permutation::identity(degree)], Vec::new())
    }

    /// The left regular representation `{x ↦ hx}` of `h`.
    pub fn left_regular(h: &FiniteGroup) -> Self {
        let n = h.order();
        let elements: Vec<Permutation> = (0..n)
            .map(|g| Permutation::from_vec_unchecked((0..n).map(|x| h.mul(g, x)).collect()))
            .collect();
        let generators = h
            .generating_set()
            .into_iter()
            .map(|g| elements[g].clone())
            .collect();
        Self::from_parts(n, elements, generators)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .elements
            .iter()
            .map(|p| p.apply(point))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermutationGroup> {
        if point >= self.degree {
            return Err(Error::ElementOutOfRange {
                element: point,
                order: self.degree,
            });
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|p| p.fixes(point))
            .cloned()
            .collect();
        let generators = cyclic_or_all_generators(&elements);
        Ok(Self::from_parts(self.degree, elements, generators))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|p| p.order() == n)
    }

    /// Some element generating the group, when it is cyclic.
    pub fn cyclic_generator(&self) -> Option<&Permutation> {
        let n = self.order();
        self.elements.iter().find(|p| p.order() == n)
    }

    /// Every subgroup of a cyclic group, one per divisor of its order.
    pub fn cyclic_subgroups(&self) -> Option<Vec<PermutationGroup>> {
        let gen = self.cyclic_generator()?.clone();
        let n = self.order();
        let mut out = Vec::new();
        for d in 1..=n {
            if n.is_multiple_of(d) {
                let g = gen.pow(n / d);
                let elements: Vec<Permutation> = (0..d).map(|k| g.pow(k)).collect();
                let gens = if g.is_identity() { vec![] } else { vec![g] };
                out.push(Self::from_parts(self.degree, elements, gens));
            }
        }
        Some(out)
    }

    /// Whether `set` is a block: each element maps it onto itself or off it.
    pub fn is_block(&self, set: &[usize]) -> Result<bool> {
        if set.is_empty() {
            return Err(Error::InvalidPermutation("a block must be nonempty".into()));
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut inside = vec![false; self.degree];
        for &x in &sorted {
            if x >= self.degree {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    order: self.degree,
                });
            }
            inside[x] = true;
        }
        for p in &self.elements {
            let hits = sorted.iter().filter(|&&x| inside[p.apply(x)]).count();
            if hits != 0 && hits != sorted.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn gens_or_elements(&self) -> &[Permutation] {
        if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }

    /// The finest block system in which the points of `seed` share a block.
    fn block_system_joining(&self, labels_seed: &mut UnionFind, mut pending: Vec<(usize, usize)>) -> BlockSystem {
        let gens = self.gens_or_elements();
        while let Some((a, b)) = pending.pop() {
            for g in gens {
                let (ga, gb) = (g.apply(a), g.apply(b));
                if let Some((lo, hi)) = labels_seed.union(ga, gb) {
                    pending.push((lo, hi));
                }
            }
        }
        let labels: Vec<usize> = (0..self.degree).map(|x| labels_seed.find(x)).collect();
        BlockSystem::from_labels(&labels)
    }

    fn pair_block_system(&self, a: usize, b: usize) -> BlockSystem {
        let mut uf = UnionFind::new(self.degree);
        let mut pending = Vec::new();
        if let Some(pair) = uf.union(a, b) {
            pending.push(pair);
        }
        self.block_system_joining(&mut uf, pending)
    }

    fn join(&self, x: &BlockSystem, y: &BlockSystem) -> BlockSystem {
        let mut uf = UnionFind::new(self.degree);
        let mut pending = Vec::new();
        for sys in [x, y] {
            for b in &sys.blocks {
                for &p in &b[1..] {
                    if let Some(pair) = uf.union(b[0], p) {
                        pending.push(pair);
                    }
                }
            }
        }
        self.block_system_joining(&mut uf, pending)
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::NotTransitive)
        }
    }

    /// All block systems other than the two trivial ones, sorted by block
    /// size then blocks.
    pub fn block_systems(&self) -> Result<Vec<BlockSystem>> {
        self.require_transitive()?;
        let n = self.degree;
        let mut found: BTreeSet<BlockSystem> = BTreeSet::new();
        for delta in 1..n {
            let sys = self.pair_block_system(0, delta);
            if sys.block_size() < n {
                found.insert(sys);
            }
        }
        // every system is a join of pair-generated ones
        loop {
            let current: Vec<BlockSystem> = found.iter().cloned().collect();
            let mut grew = false;
            for (i, x) in current.iter().enumerate() {
                for y in &current[i + 1..] {
                    let j = self.join(x, y);
                    if j.block_size() < n && found.insert(j) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<BlockSystem> = found.into_iter().collect();
        out.sort_by(|a, b| a.block_size().cmp(&b.block_size()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Nontrivial block systems with no nontrivial proper refinement (the
    /// finest ones). Empty for primitive groups.
    pub fn minimal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let all = self.block_systems()?;
        Ok(all
            .iter()
            .filter(|s| !all.iter().any(|t| t != *s && t.refines(s)))
            .cloned()
            .collect())
    }

    /// Nontrivial block systems that are not refinements of another
    /// nontrivial one (the coarsest ones).
    pub fn maximal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let all = self.block_systems()?;
        Ok(all
            .iter()
            .filter(|s| !all.iter().any(|t| t != *s && s.refines(t)))
            .cloned()
            .collect())
    }

    /// Whether `system` is invariant under the group.
    pub fn preserves(&self, system: &BlockSystem) -> bool {
        let labels = system.labels();
        self.gens_or_elements().iter().all(|g| {
            system.blocks.iter().all(|b| {
                let l = labels[g.apply(b[0])];
                b.iter().all(|&x| labels[g.apply(x)] == l)
            })
        })
    }

    /// `x · self · x⁻¹` as an element set.
    pub fn conjugate_by(&self, x: &Permutation) -> PermutationGroup {
        let xi = x.inverse();
        let elements = self.elements.iter().map(|p| x.compose(p).compose(&xi)).collect();
        let generators = self.generators.iter().map(|p| x.compose(p).compose(&xi)).collect();
        Self::from_parts(self.degree, elements, generators)
    }

    /// The abstract group of a regular permutation group, labelled by the
    /// image of point 0: element `x` is the unique member sending `0` to `x`.
    pub fn regular_abstract_group(&self, name: &str) -> Result<FiniteGroup> {
        if !self.is_regular() {
            return Err(Error::InvalidPermutation("group is not regular".into()));
        }
        let n = self.degree;
        let mut by_point = vec![0; n];
        for (i, p) in self.elements.iter().enumerate() {
            by_point[p.apply(0)] = i;
        }
        let rows = (0..n)
            .map(|x| (0..n).map(|y| self.elements[by_point[x]].apply(y)).collect())
            .collect();
        FiniteGroup::from_table(name, rows)
    }

    /// The member of a regular group sending 0 to `point`.
    pub fn regular_element_at(&self, point: usize) -> Option<&Permutation> {
        self.elements.iter().find(|p| p.apply(0) == point)
    }
}

fn cyclic_or_all_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let n = elements.len();
    if let Some(g) = elements.iter().find(|p| p.order() == n && !p.is_identity()) {
        return vec![g.clone()];
    }
    elements.iter().filter(|p| !p.is_identity()).cloned().collect()
}

/// Some `x ∈ g` with `x·a·x⁻¹ = b`, or `None`.
pub fn are_conjugate_subgroups(
    g: &PermutationGroup,
    a: &PermutationGroup,
    b: &PermutationGroup,
) -> Option<Permutation> {
    if a.order() != b.order() || a.degree() != b.degree() {
        return None;
    }
    let test = if a.generators().is_empty() { a.elements() } else { a.generators() };
    g.elements()
        .iter()
        .find(|x| {
            let xi = x.inverse();
            test.iter().all(|p| b.contains(&x.compose(p).compose(&xi)))
        })
        .cloned()
}

/// Element-index arithmetic inside one permutation group.
struct IndexedGroup<'a> {
    group: &'a PermutationGroup,
}

impl<'a> IndexedGroup<'a> {
    fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.group.elements[a].compose(&self.group.elements[b]);
        self.group.index[&p]
    }

    /// Closure of a set of element indices; `None` when a nonidentity
    /// element has a fixed point or the size stops dividing `max_order`.
    fn semiregular_closure(&self, gens: &[usize], max_order: usize) -> Option<Vec<usize>> {
        let mut seen: HashSet<usize> = HashSet::from([0]);
        let mut members = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if seen.insert(y) {
                    if !self.group.elements[y].is_fixed_point_free() || members.len() >= max_order {
                        return None;
                    }
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        if !max_order.is_multiple_of(members.len()) {
            return None;
        }
        members.sort_unstable();
        Some(members)
    }
}

/// All regular subgroups of `g` isomorphic to `h`, sorted by element list.
///
/// Candidates are built from fixed-point-free elements; every intermediate
/// subgroup must be semiregular with order dividing `|h|`.
pub fn regular_subgroups_isomorphic_to(
    g: &PermutationGroup,
    h: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<Vec<PermutationGroup>> {
    let n = h.order();
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    if g.order() > caps.permutation_group {
        return Err(Error::Capacity {
            what: "permutation group order",
            size: g.order(),
            cap: caps.permutation_group,
        });
    }
    let h_orders: BTreeSet<usize> = h.element_orders().into_iter().collect();
    let ig = IndexedGroup { group: g };
    let fpf: Vec<usize> = (1..g.order())
        .filter(|&i| {
            let p = &g.elements[i];
            p.is_fixed_point_free() && h_orders.contains(&p.order())
        })
        .collect();

    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut regular: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    if n == 1 {
        regular.insert(vec![0]);
    }
    for &x in &fpf {
        if let Some(members) = ig.semiregular_closure(&[x], n) {
            if visited.insert(members.clone()) {
                stack.push((members, vec![x]));
            }
        }
    }
    while let Some((members, gens)) = stack.pop() {
        if members.len() == n {
            regular.insert(members);
            continue;
        }
        for &y in &fpf {
            if members.binary_search(&y).is_ok() {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(y);
            if let Some(next) = ig.semiregular_closure(&next_gens, n) {
                if visited.insert(next.clone()) {
                    stack.push((next, next_gens));
                }
            }
        }
    }

    let mut out = Vec::new();
    for members in regular {
        let elements: Vec<Permutation> = members.iter().map(|&i| g.elements[i].clone()).collect();
        let sub = PermutationGroup::from_parts(n, elements.clone(), Vec::new());
        let abs = Arc::new(sub.regular_abstract_group("regular subgroup")?);
        if group::is_isomorphic(h, &abs, caps)?.is_some() {
            let gens = minimal_generators(&sub);
            out.push(PermutationGroup::from_parts(n, elements, gens));
        }
    }
    Ok(out)
}

/// A generating set for `sub` chosen greedily by element order.
fn minimal_generators(sub: &PermutationGroup) -> Vec<Permutation> {
    let mut by_order: Vec<&Permutation> = sub.elements.iter().filter(|p| !p.is_identity()).collect();
    by_order.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp(b)));
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(sub.degree)]);
    for p in by_order {
        if span.len() == sub.order() {
            break;
        }
        if span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let closed = PermutationGroup::closure(&gens, sub.order()).expect("inside a finite group");
        span = closed.elements.into_iter().collect();
    }
    gens
}

/// A regular permutation subgroup together with an isomorphism from an
/// abstract group: `labeling[h]` is the image of point 0 under the element
/// corresponding to `h`.
pub fn regular_labeling(
    r: &PermutationGroup,
    h: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    let abs = Arc::new(r.regular_abstract_group("regular subgroup")?);
    Ok(group::is_isomorphic(h, &abs, caps)?.map(|iso: GroupIsomorphism| iso.images().to_vec()))
}
