//! Explicit non-CI maps together with the permutation groups that certify
//! them, and the two valency-four maps over `Z_8`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupIsomorphism, Subgroup};
use crate::interchange::{MapJson, PermutationGroupJson};
use crate::iso::{self, MapMorphism};
use crate::map::CayleyMap;
use crate::perm::{self, Permutation, PermutationGroup};

/// A map with a subgroup `ambient` of its automorphism group and a regular
/// subgroup `rival` of `ambient`, isomorphic to the map's group and distinct
/// from the left regular representation.
#[derive(Clone, Debug)]
pub struct WitnessedMap {
    pub map: CayleyMap,
    pub ambient: PermutationGroup,
    pub rival: PermutationGroup,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessedMapJson {
    pub map: MapJson,
    pub ambient: PermutationGroupJson,
    pub ambient_order: usize,
    pub rival: PermutationGroupJson,
    pub rival_order: usize,
    pub notes: String,
}

impl WitnessedMap {
    /// Recomputes `Aut(M)` and checks every claim.
    pub fn validate(&self, caps: &Caps) -> Result<()> {
        let fail = |msg: &str| Err(Error::Witness(msg.to_string()));
        let aut = iso::map_automorphism_group(&self.map, caps)?;
        if !self.ambient.is_subgroup_of(&aut) {
            return fail("ambient group is not inside Aut(M)");
        }
        if !self.rival.is_subgroup_of(&self.ambient) {
            return fail("rival is not inside the ambient group");
        }
        if !self.rival.is_regular() {
            return fail("rival is not regular");
        }
        if perm::regular_labeling(&self.rival, self.map.group(), caps)?.is_none() {
            return fail("rival is not isomorphic to the map's group");
        }
        if self.rival == PermutationGroup::left_regular(self.map.group()) {
            return fail("rival equals the left regular representation");
        }
        Ok(())
    }

    pub fn to_json(&self) -> WitnessedMapJson {
        WitnessedMapJson {
            map: MapJson::from_map(&self.map),
            ambient: PermutationGroupJson::from_group(&self.ambient),
            ambient_order: self.ambient.order(),
            rival: PermutationGroupJson::from_group(&self.rival),
            rival_order: self.rival.order(),
            notes: self.notes.clone(),
        }
    }

    pub fn from_json(json: &WitnessedMapJson, caps: &Caps) -> Result<Self> {
        Ok(WitnessedMap {
            map: json.map.to_map()?,
            ambient: json.ambient.to_group(caps.permutation_group)?,
            rival: json.rival.to_group(caps.permutation_group)?,
            notes: json.notes.clone(),
        })
    }
}

fn left_translations(h: &FiniteGroup) -> Vec<Permutation> {
    h.generating_set()
        .into_iter()
        .map(|g| Permutation::from_vec_unchecked((0..h.order()).map(|x| h.mul(g, x)).collect()))
        .collect()
}

/// `Ĥ ⋊ ⟨extra⟩` for permutations normalizing `Ĥ`.
fn extend_left_regular(h: &FiniteGroup, extra: &[Permutation], caps: &Caps) -> Result<PermutationGroup> {
    let mut gens = left_translations(h);
    gens.extend(extra.iter().cloned());
    if gens.is_empty() {
        return Ok(PermutationGroup::trivial(h.order()));
    }
    PermutationGroup::closure(&gens, caps.permutation_group)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddSquareKind {
    /// `Z_{p²}`
    Cyclic,
    /// `Z_p × Z_p`
    Elementary,
}

struct OddSquare {
    k: Arc<FiniteGroup>,
    alpha: Vec<usize>,
    rival_gens: Vec<Permutation>,
}

fn odd_square_data(p: usize, kind: OddSquareKind) -> Result<OddSquare> {
    if !group::is_prime(p) || p == 2 {
        return Err(Error::Construction(format!("{p} is not an odd prime")));
    }
    if p > 7 {
        return Err(Error::Capacity {
            what: "odd prime for the order-p² construction",
            size: p,
            cap: 7,
        });
    }
    let n = p * p;
    Ok(match kind {
        OddSquareKind::Cyclic => {
            let k = Arc::new(FiniteGroup::cyclic(n)?);
            // β(x) = (1+p)x, α = −β
            let alpha = (0..n).map(|x| (n - (1 + p) * x % n) % n).collect();
            let gamma = Permutation::from_fn(n, |x| ((1 + p) * x + 1) % n)?;
            OddSquare {
                k,
                alpha,
                rival_gens: vec![gamma],
            }
        }
        OddSquareKind::Elementary => {
            let k = Arc::new(FiniteGroup::abelian(&[p, p])?);
            let enc = |x: usize, y: usize| (x % p) * p + y % p;
            // β(x, y) = (x + y, y), α = −β
            let alpha = (0..n)
                .map(|i| {
                    let (x, y) = (i / p, i % p);
                    enc(2 * p - x - y, p - y)
                })
                .collect();
            // τ_{a,b}: (x, y) ↦ (x + ay + b, y + a)
            let tau = |a: usize, b: usize| {
                Permutation::from_fn(n, |i| {
                    let (x, y) = (i / p, i % p);
                    enc(x + a * y + b, y + a)
                })
            };
            OddSquare {
                k,
                alpha,
                rival_gens: vec![tau(1, 0)?, tau(0, 1)?],
            }
        }
    })
}

fn orbit(f: &[usize], x: usize) -> Vec<usize> {
    let mut out = vec![x];
    let mut y = f[x];
    while y != x {
        out.push(y);
        y = f[y];
    }
    out
}

/// The `α`-orbits of size `2p`, each listed in `α`-order from its least
/// element; the orbits are sorted by that element.
pub fn odd_square_orbits(p: usize, kind: OddSquareKind) -> Result<Vec<Vec<usize>>> {
    let data = odd_square_data(p, kind)?;
    let mut seen = vec![false; p * p];
    let mut out = Vec::new();
    for x in 1..p * p {
        if seen[x] {
            continue;
        }
        let o = orbit(&data.alpha, x);
        for &y in &o {
            seen[y] = true;
        }
        if o.len() == 2 * p {
            out.push(o);
        }
    }
    Ok(out)
}

/// The balanced map `CM(K, S, α|_S)` over a group of order `p²`, where `S`
/// is the `α`-orbit of size `2p` with least seed, `α = −β` and `β` has
/// order `p`; ambient `K̂ ⋊ ⟨α⟩` and a second regular copy of `K`.
pub fn odd_square_map(p: usize, kind: OddSquareKind, caps: &Caps) -> Result<WitnessedMap> {
    let orbits = odd_square_orbits(p, kind)?;
    odd_square_map_on_orbit(p, kind, &orbits[0], caps)
}

pub fn odd_square_map_on_orbit(p: usize, kind: OddSquareKind, rotation: &[usize], caps: &Caps) -> Result<WitnessedMap> {
    let data = odd_square_data(p, kind)?;
    let map = CayleyMap::new(data.k.clone(), rotation)?;
    if rotation.windows(2).any(|w| data.alpha[w[0]] != w[1]) || rotation.len() != 2 * p {
        return Err(Error::Construction("rotation is not an α-orbit of size 2p".into()));
    }
    let alpha = Permutation::new(data.alpha.clone())?;
    let ambient = extend_left_regular(&data.k, &[alpha], caps)?;
    let rival = PermutationGroup::closure(&data.rival_gens, caps.permutation_group)?;
    let notes = match kind {
        OddSquareKind::Cyclic => format!("Z_{}: rival generated by x -> {}x + 1", p * p, 1 + p),
        OddSquareKind::Elementary => format!("Z_{p} x Z_{p}: rival {{(x,y) -> (x + ay + b, y + a)}}"),
    };
    Ok(WitnessedMap {
        map,
        ambient,
        rival,
        notes,
    })
}

/// The antibalanced map over `Z_{2^n}` with rotation
/// `(1, −1, 3, −3a, a, −a, 3a, −3)`, `a = 1 + 2^{n−1}`; ambient
/// `Ẑ ⋊ ⟨x ↦ ax⟩` and rival `⟨x ↦ ax + 1⟩`.
pub fn cyclic_2power_map(n: u32, caps: &Caps) -> Result<WitnessedMap> {
    if n < 4 {
        return Err(Error::Construction(format!("exponent {n} is below 4")));
    }
    if n > 6 {
        return Err(Error::Capacity {
            what: "exponent of the 2-power construction",
            size: n as usize,
            cap: 6,
        });
    }
    let order = 1usize << n;
    let a = 1 + (order >> 1);
    let neg = |x: usize| (order - x % order) % order;
    let rotation = [1, neg(1), 3, neg(3 * a), a, neg(a), 3 * a % order, neg(3)];
    let h = Arc::new(FiniteGroup::cyclic(order)?);
    let map = CayleyMap::new(h.clone(), &rotation)?;
    let alpha = Permutation::from_fn(order, |x| a * x % order)?;
    let ambient = extend_left_regular(&h, &[alpha], caps)?;
    let one_alpha = Permutation::from_fn(order, |x| (a * x + 1) % order)?;
    let rival = PermutationGroup::closure(&[one_alpha], caps.permutation_group)?;
    Ok(WitnessedMap {
        map,
        ambient,
        rival,
        notes: format!("Z_{order}: a = {a}, rival generated by x -> {a}x + 1"),
    })
}

/// `{x : |S ∩ Sx| = k}`.
pub fn translate_overlap(m: &CayleyMap, k: usize) -> Vec<usize> {
    let g = m.group();
    (0..m.order())
        .filter(|&x| m.rotation().iter().filter(|&&s| m.contains(g.mul(s, g.inv(x)))).count() == k)
        .collect()
}

/// Two isomorphic maps inside `Q_16`: one over the quaternion subgroup
/// `⟨a, c²⟩` and one over the cyclic subgroup `⟨c⟩`.
#[derive(Clone, Debug)]
pub struct Quaternion16Witness {
    pub q16: Arc<FiniteGroup>,
    pub quaternion_subgroup: Subgroup,
    pub cyclic_subgroup: Subgroup,
    /// Over `⟨a, c²⟩`, rotation `(a, c², a⁻¹, c⁻²)`.
    pub map: CayleyMap,
    /// Over `⟨c⟩`, obtained by relabelling along the regular action of
    /// `â∘α`.
    pub image: CayleyMap,
    pub isomorphism: MapMorphism,
    /// `⟨â∘α⟩` acting on the points of `map`.
    pub regular_cyclic: PermutationGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quaternion16WitnessJson {
    pub map: MapJson,
    pub image: MapJson,
    pub isomorphism: Vec<usize>,
    pub quaternion_members: Vec<usize>,
    pub cyclic_members: Vec<usize>,
    pub regular_cyclic: PermutationGroupJson,
}

impl Quaternion16Witness {
    pub fn to_json(&self) -> Quaternion16WitnessJson {
        Quaternion16WitnessJson {
            map: MapJson::from_map(&self.map),
            image: MapJson::from_map(&self.image),
            isomorphism: self.isomorphism.images().to_vec(),
            quaternion_members: self.quaternion_subgroup.members().to_vec(),
            cyclic_members: self.cyclic_subgroup.members().to_vec(),
            regular_cyclic: PermutationGroupJson::from_group(&self.regular_cyclic),
        }
    }
}

pub fn quaternion16_witness(caps: &Caps) -> Result<Quaternion16Witness> {
    let q16 = Arc::new(FiniteGroup::generalized_quaternion(16)?);
    // c^i a^j is stored at i + 8j
    let (c, a) = (1, 8);
    let c2 = q16.mul(c, c);
    let quaternion_subgroup = Subgroup::generated_by(&q16, &[a, c2]);
    let cyclic_subgroup = Subgroup::generated_by(&q16, &[c]);
    let (q8, q8_embedding) = quaternion_subgroup.to_group();
    let (cyc, _) = cyclic_subgroup.to_group();
    let q8 = Arc::new(q8);
    let cyc = Arc::new(cyc);
    let local = |x: usize| q8_embedding.iter().position(|&m| m == x).expect("member of the subgroup");
    let (la, lc2) = (local(a), local(c2));
    let (la_inv, lc2_inv) = (q8.inv(la), q8.inv(lc2));
    let map = CayleyMap::new(q8.clone(), &[la, lc2, la_inv, lc2_inv])?;
    // α(a) = c², α(c²) = a⁻¹
    let alpha: GroupIsomorphism = group::automorphisms(&q8, caps)?
        .into_iter()
        .find(|s| s.apply(la) == lc2 && s.apply(lc2) == la_inv)
        .ok_or_else(|| Error::Construction("no automorphism with a -> c^2, c^2 -> a^-1".into()))?;
    let a_alpha = Permutation::from_fn(q8.order(), |x| q8.mul(la, alpha.apply(x)))?;
    let regular_cyclic = PermutationGroup::closure(&[a_alpha], caps.permutation_group)?;
    if !regular_cyclic.is_regular() || regular_cyclic.order() != 8 {
        return Err(Error::Construction("â∘α does not act regularly".into()));
    }
    let (image, isomorphism) = iso::transport_along(&map, &regular_cyclic, &cyc, caps)?;
    Ok(Quaternion16Witness {
        q16,
        quaternion_subgroup,
        cyclic_subgroup,
        map,
        image,
        isomorphism,
        regular_cyclic,
    })
}

/// The map over `K ⋊ Z_m` with connection set `cO ∪ (cO)⁻¹` for the
/// `C`-orbit `O` of `k`, rotation
/// `(ck_0, (ck_ℓ)⁻¹, ck_1, (ck_{ℓ+1})⁻¹, …)` with `ℓ = (m+1)/2` and indices
/// mod `m`, where `k_i = c⁻ⁱkcⁱ`. Ambient `Ĥ ⋊ ⟨σ⟩` with `σ(x) = c⁻¹xc`;
/// rival `{x ↦ h·x·π(h)}` with `π` the projection onto `C`.
pub fn frobenius_map(m: usize, action: &GroupIsomorphism, k: usize, caps: &Caps) -> Result<WitnessedMap> {
    if m.is_multiple_of(2) {
        return Err(Error::Construction(format!("complement order {m} is even")));
    }
    if action.order() != m {
        return Err(Error::Construction(format!(
            "action has order {}, expected {m}",
            action.order()
        )));
    }
    let kg = action.source().clone();
    let kn = kg.order();
    if k >= kn {
        return Err(Error::ElementOutOfRange { element: k, order: kn });
    }
    let h = Arc::new(FiniteGroup::semidirect(action, m)?);
    // (k, c^i) is stored at i·|K| + k
    let c = kn % h.order();
    let c_inv = h.inv(c);
    let conj = |x: usize| h.mul(h.mul(c_inv, x), c);
    let mut orbit = vec![k];
    for i in 1..m {
        orbit.push(conj(orbit[i - 1]));
    }
    let mut distinct = orbit.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != m {
        return Err(Error::Construction(format!("the orbit of {k} has {} < {m} elements", distinct.len())));
    }
    let differences: Vec<usize> = orbit
        .iter()
        .flat_map(|&x| orbit.iter().map(move |&y| (x, y)))
        .map(|(x, y)| h.mul(x, h.inv(y)))
        .collect();
    if h.generate(&differences).len() != kn {
        return Err(Error::Construction("the orbit differences do not generate K".into()));
    }
    let s: Vec<usize> = orbit.iter().map(|&ki| h.mul(c, ki)).collect();
    let l = m.div_ceil(2);
    let mut rotation = Vec::with_capacity(2 * m);
    for i in 0..m {
        rotation.push(s[i]);
        rotation.push(h.inv(s[(l + i) % m]));
    }
    // images in H/K: S over c, S⁻¹ over c⁻¹
    let coset = |x: usize| x / kn;
    if s.iter().any(|&x| coset(x) != 1) || s.iter().any(|&x| coset(h.inv(x)) != m - 1) {
        return Err(Error::Construction("S and S⁻¹ do not lie over c and c⁻¹".into()));
    }
    let map = CayleyMap::new(h.clone(), &rotation)?;
    let sigma = Permutation::from_fn(h.order(), conj)?;
    let rho = map.rho_permutation();
    let rho2 = rho.compose(&rho);
    if map.rotation().iter().any(|&x| rho2.apply(x) != sigma.apply(x)) {
        return Err(Error::Construction("ρ² differs from conjugation by c on the connection set".into()));
    }
    let ambient = extend_left_regular(&h, &[sigma], caps)?;
    let rival_elements: Vec<Permutation> = (0..h.order())
        .map(|g| {
            let pi = coset(g) * kn;
            Permutation::from_vec_unchecked((0..h.order()).map(|x| h.mul(h.mul(g, x), pi)).collect())
        })
        .collect();
    let rival = PermutationGroup::closure(&rival_elements, caps.permutation_group)?;
    Ok(WitnessedMap {
        map,
        ambient,
        rival,
        notes: format!("K of order {kn}, C of order {m}, seed {k}, l = {l}"),
    })
}

/// The two antibalanced valency-four maps over `Z_8`.
pub fn z8_cim_maps() -> Result<Vec<CayleyMap>> {
    let z8 = Arc::new(FiniteGroup::cyclic(8)?);
    Ok(vec![
        CayleyMap::new(z8.clone(), &[1, 3, 5, 7])?,
        CayleyMap::new(z8, &[1, 7, 5, 3])?,
    ])
}
