//! Finite groups as explicit multiplication tables.
//!
//! Elements are dense indices `0..n` with the identity pinned to `0`. Every
//! other object in the crate (permutations, maps, isomorphisms) refers to a
//! group through these indices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};

const UNSET: usize = usize::MAX;

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from an explicit table, checking every group axiom.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidOrder("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let g = Self::from_flat(name.into(), order, table)?;
        g.check_axioms()?;
        Ok(g)
    }

    fn from_flat(name: String, order: usize, table: Vec<usize>) -> Result<Self> {
        let mut inverse = vec![UNSET; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
        }
        if let Some(a) = inverse.iter().position(|&x| x == UNSET) {
            return Err(Error::InvalidTable(format!("element {a} has no inverse")));
        }
        Ok(FiniteGroup {
            name,
            order,
            table,
            inverse,
        })
    }

    fn from_mul(name: String, order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b));
            }
        }
        Self::from_flat(name, order, table).expect("constructed table has inverses")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Checks the identity law, inverses, the Latin-square property and
    /// associativity.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::InvalidTable(format!("0 is not an identity for {g}")));
            }
            if self.mul(g, self.inverse[g]) != 0 || self.mul(self.inverse[g], g) != 0 {
                return Err(Error::InvalidTable(format!("bad inverse for {g}")));
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.iter().chain(col.iter()).any(|&seen| !seen) {
                return Err(Error::InvalidTable(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }

    /// The sorted member list of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// A small generating set chosen greedily: repeatedly add an element of
    /// largest order outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut covered = 1;
        for x in by_order {
            if covered == self.order {
                break;
            }
            if !inside[x] {
                gens.push(x);
                let members = self.generate(&gens);
                covered = members.len();
                for m in members {
                    inside[m] = true;
                }
            }
        }
        gens
    }

    // ---- constructors -------------------------------------------------

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder("cyclic group of order 0".into()));
        }
        Ok(Self::from_mul(format!("cyclic:{n}"), n, |a, b| (a + b) % n))
    }

    /// Direct product of cyclic groups. The element index is the mixed-radix
    /// number whose most significant digit is the first coordinate.
    pub fn abelian(orders: &[usize]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidOrder("factor of order 0".into()));
        }
        let n: usize = orders.iter().product();
        let name = if orders.is_empty() {
            "cyclic:1".to_string()
        } else {
            format!(
                "abelian:{}",
                orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")
            )
        };
        let decode = |mut x: usize| -> Vec<usize> {
            let mut digits = vec![0; orders.len()];
            for i in (0..orders.len()).rev() {
                digits[i] = x % orders[i];
                x /= orders[i];
            }
            digits
        };
        let encode = |digits: &[usize]| -> usize {
            digits
                .iter()
                .zip(orders)
                .fold(0, |acc, (&d, &o)| acc * o + d)
        };
        Ok(Self::from_mul(name, n, |a, b| {
            let (da, db) = (decode(a), decode(b));
            let sum: Vec<usize> = da
                .iter()
                .zip(&db)
                .zip(orders)
                .map(|((x, y), o)| (x + y) % o)
                .collect();
            encode(&sum)
        }))
    }

    /// The generalized quaternion group of the given 2-power order, with
    /// `c^i a^j` stored at index `i + j * order / 2`.
    pub fn generalized_quaternion(order: usize) -> Result<Self> {
        if order < 8 || !order.is_power_of_two() {
            return Err(Error::InvalidOrder(format!(
                "generalized quaternion order must be a power of two >= 8, got {order}"
            )));
        }
        let half = order / 2;
        Ok(Self::from_mul(format!("quaternion:{order}"), order, |x, y| {
            let (i, j) = (x % half, x / half);
            let (k, l) = (y % half, y / half);
            // a c^k = c^{-k} a, a^2 = c^{half/2}
            let k = if j == 1 { (half - k) % half } else { k };
            let extra = if j == 1 && l == 1 { half / 2 } else { 0 };
            let e = (i + k + extra) % half;
            e + ((j + l) % 2) * half
        }))
    }

    /// `K ⋊ Z_m` with pairs `(k, c^i)` stored at `i * |K| + k` and
    /// `(k1, c^i)(k2, c^j) = (k1 · action^i(k2), c^{i+j})`.
    pub fn semidirect(action: &GroupIsomorphism, c_order: usize) -> Result<Self> {
        let k = action.source();
        if action.target().as_ref() != k.as_ref() {
            return Err(Error::InvalidAction("action must be an automorphism".into()));
        }
        if c_order == 0 {
            return Err(Error::InvalidOrder("complement of order 0".into()));
        }
        let act_order = action.order();
        if !c_order.is_multiple_of(act_order) {
            return Err(Error::InvalidAction(format!(
                "action has order {act_order}, which does not divide {c_order}"
            )));
        }
        let kn = k.order();
        let mut powers = vec![(0..kn).collect::<Vec<_>>()];
        for i in 1..c_order {
            let prev = &powers[i - 1];
            powers.push(prev.iter().map(|&x| action.apply(x)).collect());
        }
        let name = format!(
            "semidirect:{},{},map:{}",
            k.name(),
            c_order,
            action
                .images()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";")
        );
        Ok(Self::from_mul(name, kn * c_order, |x, y| {
            let (i, k1) = (x / kn, x % kn);
            let (j, k2) = (y / kn, y % kn);
            let kk = k.mul(k1, powers[i][k2]);
            ((i + j) % c_order) * kn + kk
        }))
    }

    /// The dihedral group of order `2n`, as `Z_n ⋊ Z_2` with inversion.
    pub fn dihedral(n: usize) -> Result<Self> {
        let base = Arc::new(Self::cyclic(n)?);
        let neg = GroupIsomorphism::new(
            base.clone(),
            base.clone(),
            (0..n).map(|x| (n - x) % n).collect(),
        )?;
        Ok(Self::semidirect(&neg, 2)?.with_name(format!("dihedral:{n}")))
    }

    /// Componentwise product; `(a, b)` is stored at `a * |g2| + b`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Self {
        let n2 = g2.order();
        let strip = |s: &str| s.strip_prefix("product:").map(str::to_string).unwrap_or(s.to_string());
        let name = format!("product:{},{}", strip(g1.name()), strip(g2.name()));
        Self::from_mul(name, g1.order() * n2, |x, y| {
            g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2)
        })
    }
}

// ---- isomorphisms ----------------------------------------------------------

/// A structure-preserving bijection between two finite groups.
#[derive(Clone, Debug)]
pub struct GroupIsomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for GroupIsomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl Eq for GroupIsomorphism {}

impl GroupIsomorphism {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        let n = source.order();
        if target.order() != n || images.len() != n {
            return Err(Error::InvalidAction(format!(
                "isomorphism needs equal orders and {n} images"
            )));
        }
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::InvalidAction("images do not form a bijection".into()));
            }
            seen[y] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::InvalidAction(format!(
                        "not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupIsomorphism {
            source,
            target,
            images,
        })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Self {
        GroupIsomorphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), (0..g.order()).collect())
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupIsomorphism) -> Self {
        let images = other.images.iter().map(|&x| self.images[x]).collect();
        Self::new_unchecked(other.source.clone(), self.target.clone(), images)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Self::new_unchecked(self.target.clone(), self.source.clone(), images)
    }

    /// Multiplicative order as a permutation; only meaningful for
    /// automorphisms.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.images.clone();
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| self.images[x]).collect();
            k += 1;
        }
        k
    }
}

// ---- subgroups -------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let n = parent.order();
        let mut inside = vec![false; n];
        for &m in &members {
            if m >= n {
                return Err(Error::ElementOutOfRange { element: m, order: n });
            }
            inside[m] = true;
        }
        if !inside[0] {
            return Err(Error::InvalidTable("subgroup must contain the identity".into()));
        }
        for &a in &members {
            if !inside[parent.inv(a)] || members.iter().any(|&b| !inside[parent.mul(a, b)]) {
                return Err(Error::InvalidTable("member list is not closed".into()));
            }
        }
        Ok(Subgroup { parent, members })
    }

    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: parent.generate(gens),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| {
            let xi = g.inv(x);
            self.members
                .iter()
                .all(|&m| self.contains(g.mul(g.mul(x, m), xi)))
        })
    }

    /// The subgroup as a standalone group. Index `i` of the new group is the
    /// parent element `embedding[i]`, which is `members()[i]`.
    pub fn to_group(&self) -> (FiniteGroup, Vec<usize>) {
        let n = self.members.len();
        let pn = self.parent.order();
        let mut local = vec![UNSET; pn];
        for (i, &m) in self.members.iter().enumerate() {
            local[m] = i;
        }
        let g = &self.parent;
        let members = &self.members;
        let name = format!(
            "subgroup of {} [{}]",
            g.name(),
            members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
        );
        let group = FiniteGroup::from_mul(name, n, |a, b| local[g.mul(members[a], members[b])]);
        (group, self.members.clone())
    }
}

pub(crate) fn check_order_cap(g: &FiniteGroup, caps: &Caps) -> Result<()> {
    if g.order() > caps.group_order {
        return Err(Error::Capacity {
            what: "group order",
            size: g.order(),
            cap: caps.group_order,
        });
    }
    Ok(())
}

/// Every subgroup of `g`, found by cyclic extension: starting from the
/// trivial subgroup, adjoin one element at a time and deduplicate by member
/// list. Sorted by (order, members).
pub fn all_subgroups(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<Subgroup>> {
    check_order_cap(g, caps)?;
    let n = g.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut queue: VecDeque<(Vec<usize>, Vec<usize>)> = VecDeque::from([(vec![0], vec![])]);
    while let Some((members, gens)) = queue.pop_front() {
        let mut inside = vec![false; n];
        for &m in &members {
            inside[m] = true;
        }
        for x in (1..n).filter(|&x| !inside[x]) {
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let next = g.generate(&next_gens);
            if found.insert(next.clone()) {
                queue.push_back((next, next_gens));
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|members| Subgroup {
            parent: g.clone(),
            members,
        })
        .collect();
    subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(subgroups)
}

/// Extends generator images to a homomorphism on the subgroup the
/// generators span. Returns `None` on an inconsistency or a collision.
fn extend_on_span(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[usize],
    imgs: &[usize],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    map.iter_mut().for_each(|x| *x = UNSET);
    used.iter_mut().for_each(|x| *x = false);
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&gen, &img) in gens.iter().zip(imgs) {
            let y = src.mul(x, gen);
            let t = tgt.mul(map[x], img);
            if map[y] == UNSET {
                if used[t] {
                    return false;
                }
                map[y] = t;
                used[t] = true;
                queue.push_back(y);
            } else if map[y] != t {
                return false;
            }
        }
    }
    true
}

/// Backtracking over images of a generating set. `visit` receives each
/// isomorphism `src -> tgt` and returns `false` to stop.
fn search_isomorphisms(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    if src.order() != tgt.order() {
        return Ok(());
    }
    let n = src.order();
    let gens = src.generating_set();
    let tgt_orders = tgt.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            (0..n).filter(|&y| tgt_orders[y] == o).collect()
        })
        .collect();
    let mut map = vec![UNSET; n];
    let mut used = vec![false; n];
    let mut imgs: Vec<usize> = Vec::with_capacity(gens.len());

    #[allow(clippy::too_many_arguments)]
    fn rec(
        level: usize,
        src: &FiniteGroup,
        tgt: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        imgs: &mut Vec<usize>,
        map: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if level == gens.len() {
            extend_on_span(src, tgt, gens, imgs, map, used);
            return visit(map);
        }
        for &c in &candidates[level] {
            imgs.push(c);
            let ok = extend_on_span(src, tgt, &gens[..=level], imgs, map, used);
            if ok && !rec(level + 1, src, tgt, gens, candidates, imgs, map, used, visit)? {
                imgs.pop();
                return Ok(false);
            }
            imgs.pop();
        }
        Ok(true)
    }

    if gens.is_empty() {
        visit(&[0])?;
        return Ok(());
    }
    rec(0, src, tgt, &gens, &candidates, &mut imgs, &mut map, &mut used, visit)?;
    Ok(())
}

/// All automorphisms of `g`, identity first, in backtracking order.
pub fn automorphisms(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<GroupIsomorphism>> {
    check_order_cap(g, caps)?;
    let mut out = Vec::new();
    let cap = caps.automorphisms;
    search_isomorphisms(g, g, &mut |images| {
        if out.len() >= cap {
            return Err(Error::Capacity {
                what: "automorphism count",
                size: cap + 1,
                cap,
            });
        }
        out.push(GroupIsomorphism::new_unchecked(g.clone(), g.clone(), images.to_vec()));
        Ok(true)
    })?;
    out.sort_by(|a, b| {
        b.is_identity()
            .cmp(&a.is_identity())
            .then_with(|| a.images.cmp(&b.images))
    });
    Ok(out)
}

/// The first isomorphism `g1 -> g2` in backtracking order, if any.
pub fn is_isomorphic(
    g1: &Arc<FiniteGroup>,
    g2: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<Option<GroupIsomorphism>> {
    check_order_cap(g1, caps)?;
    check_order_cap(g2, caps)?;
    if g1.order() != g2.order() || g1.is_abelian() != g2.is_abelian() {
        return Ok(None);
    }
    let mut o1 = g1.element_orders();
    let mut o2 = g2.element_orders();
    o1.sort_unstable();
    o2.sort_unstable();
    if o1 != o2 {
        return Ok(None);
    }
    let mut found = None;
    search_isomorphisms(g1, g2, &mut |images| {
        found = Some(images.to_vec());
        Ok(false)
    })?;
    Ok(found.map(|images| GroupIsomorphism::new_unchecked(g1.clone(), g2.clone(), images)))
}

/// Membership in the class of groups `Z_n × Z_2^r`, `Z_n × Z_4`, `Z_n × Q_8`
/// with `n` odd and square-free.
pub fn in_class_m(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<bool> {
    let n = g.order();
    let two = 1usize << n.trailing_zeros();
    let odd = n / two;
    if !is_square_free(odd) {
        return Ok(false);
    }
    let odd_part = FiniteGroup::cyclic(odd)?;
    let r = two.trailing_zeros() as usize;
    let mut candidates = vec![FiniteGroup::abelian(&vec![2; r])?];
    if two == 4 {
        candidates.push(FiniteGroup::cyclic(4)?);
    }
    if two == 8 {
        candidates.push(FiniteGroup::generalized_quaternion(8)?);
    }
    for two_part in candidates {
        let cand = Arc::new(FiniteGroup::direct_product(&odd_part, &two_part));
        if is_isomorphic(g, &cand, caps)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn is_square_free(mut n: usize) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether any two subgroups of equal order are mapped onto each other by
/// some automorphism of `g`.
pub fn equal_order_subgroups_are_automorphic(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<bool> {
    let subs = all_subgroups(g, caps)?;
    let auts = automorphisms(g, caps)?;
    for (i, a) in subs.iter().enumerate() {
        for b in subs.iter().skip(i + 1).take_while(|b| b.order() == a.order()) {
            let hit = auts.iter().any(|s| {
                let mut img: Vec<usize> = a.members.iter().map(|&x| s.apply(x)).collect();
                img.sort_unstable();
                img == b.members
            });
            if !hit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every automorphism of every subgroup is the restriction of an
/// automorphism of `g`.
pub fn subgroup_automorphisms_extend(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<bool> {
    let subs = all_subgroups(g, caps)?;
    let auts = automorphisms(g, caps)?;
    for sub in &subs {
        let (local, embedding) = sub.to_group();
        let local = Arc::new(local);
        let mut position = vec![UNSET; g.order()];
        for (i, &m) in embedding.iter().enumerate() {
            position[m] = i;
        }
        let restrictions: BTreeSet<Vec<usize>> = auts
            .iter()
            .filter_map(|s| {
                embedding
                    .iter()
                    .map(|&m| position[s.apply(m)])
                    .map(|p| (p != UNSET).then_some(p))
                    .collect::<Option<Vec<usize>>>()
            })
            .collect();
        for beta in automorphisms(&local, caps)? {
            if !restrictions.contains(beta.images()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
