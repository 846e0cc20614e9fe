//! CI verdicts for maps and exhaustive CIM checks for groups.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupIsomorphism};
use crate::interchange::PermutationGroupJson;
use crate::iso::{self, Scratch, View};
use crate::map::CayleyMap;
use crate::perm::{self, PermutationGroup};
use crate::report::{self, CiReport, Method, Witness};

const ABSENT: usize = usize::MAX;

/// Verdict by Babai's criterion: `M` is a CI-map iff every regular subgroup
/// of `Aut(M)` isomorphic to `H` is conjugate to `Ĥ` in `Aut(M)`.
pub fn babai_is_ci_map(m: &CayleyMap, caps: &Caps) -> Result<CiReport> {
    let aut = iso::map_automorphism_group(m, caps)?;
    let h = m.group();
    let n = h.order();
    let mut rep = CiReport::new(m.spec_string(), Method::Babai);
    rep.stat("aut_order", aut.order());
    rep.stat("stabilizer_order", aut.order() / n.max(1));
    if aut.order() == n {
        rep.stat("regular_subgroups", 1u64);
        rep.stat("non_conjugate", 0u64);
        return Ok(rep);
    }
    let hat = PermutationGroup::left_regular(h);
    let regs = perm::regular_subgroups_isomorphic_to(&aut, h, caps)?;
    rep.stat("regular_subgroups", regs.len());
    let mut conjugators = Vec::new();
    let mut rival: Option<&PermutationGroup> = None;
    let mut non_conjugate = 0u64;
    for r in &regs {
        if *r == hat {
            continue;
        }
        match perm::are_conjugate_subgroups(&aut, r, &hat) {
            Some(x) => conjugators.push(Witness::Conjugator {
                map: crate::interchange::MapJson::from_map(m),
                subgroup: PermutationGroupJson::from_group(r),
                conjugator: x.images().to_vec(),
            }),
            None => {
                non_conjugate += 1;
                rival.get_or_insert(r);
            }
        }
    }
    rep.stat("non_conjugate", non_conjugate);
    match rival {
        None => rep.witnesses = conjugators,
        Some(r) => {
            rep.verdict = false;
            rep.witnesses.push(Witness::regular_subgroup(m, r));
            let (_, f) = iso::transport_along(m, r, h, caps)?;
            rep.witnesses.push(Witness::map_pair(&f));
        }
    }
    Ok(rep)
}

/// Symmetric identity-free subsets of `h` of size `1..=max_valency`, sorted
/// by size and then by members.
pub fn connection_sets(h: &FiniteGroup, max_valency: usize) -> Vec<Vec<usize>> {
    let atoms: Vec<Vec<usize>> = (1..h.order())
        .filter(|&x| x <= h.inv(x))
        .map(|x| if x == h.inv(x) { vec![x] } else { vec![x, h.inv(x)] })
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << atoms.len()) {
        let mut s: Vec<usize> = Vec::new();
        for (i, a) in atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.extend(a);
            }
        }
        if s.len() <= max_valency {
            s.sort_unstable();
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Number of rotations of a `d`-element set in canonical phase.
fn rotation_count(d: usize) -> u64 {
    factorial(d.saturating_sub(1))
}

/// Calls `f` on every rotation of the sorted set `s` that starts with its
/// least element, in lexicographic order.
pub fn for_each_rotation(s: &[usize], mut f: impl FnMut(&[usize])) {
    if s.is_empty() {
        f(&[]);
        return;
    }
    let mut rot = vec![s[0]];
    let mut used = vec![false; s.len()];
    used[0] = true;
    fn rec(s: &[usize], rot: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
        if rot.len() == s.len() {
            f(rot);
            return;
        }
        for i in 1..s.len() {
            if !used[i] {
                used[i] = true;
                rot.push(s[i]);
                rec(s, rot, used, f);
                rot.pop();
                used[i] = false;
            }
        }
    }
    rec(s, &mut rot, &mut used, &mut f);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    All,
    UpToCayleyIso,
}

/// A materialized list of Cayley maps over one group.
#[derive(Clone, Debug)]
pub struct MapEnumeration {
    pub group: String,
    pub max_valency: usize,
    pub mode: EnumerationMode,
    pub maps: Vec<CayleyMap>,
    /// Number of maps per valency.
    pub counts: BTreeMap<usize, usize>,
}

/// Total number of Cayley maps with nonempty connection set of size at most
/// `max_valency`.
pub fn count_cayley_maps(h: &FiniteGroup, max_valency: usize) -> u64 {
    connection_sets(h, max_valency)
        .iter()
        .map(|s| rotation_count(s.len()))
        .sum()
}

pub fn enumerate_cayley_maps(
    h: &Arc<FiniteGroup>,
    max_valency: usize,
    mode: EnumerationMode,
    caps: &Caps,
) -> Result<MapEnumeration> {
    let max_valency = max_valency.min(h.order().saturating_sub(1));
    let total = count_cayley_maps(h, max_valency);
    if total > caps.map_enumeration as u64 {
        return Err(Error::Capacity {
            what: "map enumeration",
            size: total as usize,
            cap: caps.map_enumeration,
        });
    }
    let auts = match mode {
        EnumerationMode::All => Vec::new(),
        EnumerationMode::UpToCayleyIso => group::automorphisms(h, caps)?,
    };
    let mut maps = Vec::new();
    let mut counts = BTreeMap::new();
    for s in connection_sets(h, max_valency) {
        let mut err = None;
        for_each_rotation(&s, |rot| {
            if err.is_some() {
                return;
            }
            match CayleyMap::new(h.clone(), rot) {
                Ok(m) => {
                    if mode == EnumerationMode::All || iso::cayley_class_key(&m, &auts) == m.rotation() {
                        *counts.entry(s.len()).or_insert(0) += 1;
                        maps.push(m);
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(MapEnumeration {
        group: h.name().to_string(),
        max_valency,
        mode,
        maps,
        counts,
    })
}

/// Isomorphism code and Cayley class key of every map of one valency.
struct ClassTable {
    maps: Vec<CayleyMap>,
    codes: Vec<Vec<usize>>,
    keys: Vec<Vec<usize>>,
}

impl ClassTable {
    fn build(h: &Arc<FiniteGroup>, valency: usize, caps: &Caps) -> Result<Self> {
        let sets: Vec<Vec<usize>> = connection_sets(h, valency)
            .into_iter()
            .filter(|s| s.len() == valency)
            .collect();
        let total: u64 = sets.len() as u64 * rotation_count(valency);
        if total > caps.map_enumeration as u64 {
            return Err(Error::Capacity {
                what: "definitional map enumeration",
                size: total as usize,
                cap: caps.map_enumeration,
            });
        }
        let auts = group::automorphisms(h, caps)?;
        let mut maps = Vec::new();
        for s in &sets {
            for_each_rotation(s, |rot| {
                maps.push(CayleyMap::new(h.clone(), rot).expect("enumerated rotations are valid"));
            });
        }
        let codes = maps.iter().map(iso::canonical_code).collect::<Result<Vec<_>>>()?;
        let keys = maps.iter().map(|m| iso::cayley_class_key(m, &auts)).collect();
        Ok(ClassTable { maps, codes, keys })
    }

    /// Per map: whether all isomorphic maps share its Cayley class.
    fn verdicts(&self) -> Vec<bool> {
        let mut classes: HashMap<&[usize], BTreeSet<&[usize]>> = HashMap::new();
        for (c, k) in self.codes.iter().zip(&self.keys) {
            classes.entry(c).or_default().insert(k);
        }
        self.codes.iter().map(|c| classes[c.as_slice()].len() == 1).collect()
    }
}

/// Verdict straight from the definition: enumerate every Cayley map over
/// `H` of the same valency, and look for one isomorphic to `M` but not
/// Cayley isomorphic to it.
pub fn definitional_is_ci_map(m: &CayleyMap, caps: &Caps) -> Result<CiReport> {
    let h = m.group();
    let table = ClassTable::build(h, m.valency(), caps)?;
    let auts = group::automorphisms(h, caps)?;
    let code = iso::canonical_code(m)?;
    let key = iso::cayley_class_key(m, &auts);
    let mut rep = CiReport::new(m.spec_string(), Method::Definitional);
    rep.stat("maps_enumerated", table.maps.len());
    let mut isomorphic = 0u64;
    let mut classes: BTreeSet<&[usize]> = BTreeSet::new();
    for (i, other) in table.maps.iter().enumerate() {
        if table.codes[i] != code {
            continue;
        }
        isomorphic += 1;
        classes.insert(&table.keys[i]);
        if table.keys[i] != key && rep.verdict {
            rep.verdict = false;
            let f = iso::find_map_isomorphism(m, other)?
                .ok_or_else(|| Error::Witness("equal codes without an isomorphism".into()))?;
            rep.witnesses.push(Witness::map_pair(&f));
        }
    }
    rep.stat("isomorphic_maps", isomorphic);
    rep.stat("cayley_classes", classes.len());
    Ok(rep)
}

/// Settings for the exhaustive scans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanOptions {
    pub max_valency: usize,
    pub workers: usize,
    /// Check only maps that are least in their class under automorphisms of
    /// the group and mirroring; both preserve the verdict.
    pub symmetry_reduction: bool,
}

impl ScanOptions {
    pub fn full(h: &FiniteGroup) -> Self {
        ScanOptions {
            max_valency: h.order().saturating_sub(1),
            workers: 1,
            symmetry_reduction: false,
        }
    }
}

struct SetInfo {
    members: Vec<usize>,
    connected: bool,
    primes: Vec<usize>,
    /// For each element `a`, images of the automorphisms `σ` stabilizing
    /// the set with `σ(a) = min S`.
    to_min: Vec<Vec<Arc<Vec<usize>>>>,
}

#[derive(Default)]
struct ChunkResult {
    maps_total: u64,
    checked: u64,
    trivial_stabilizer: u64,
    babai_runs: u64,
    disconnected_reduced: u64,
    non_ci: u64,
    failure: Option<Vec<usize>>,
}

struct Scanner<'a> {
    group: &'a Arc<FiniteGroup>,
    caps: &'a Caps,
    set: &'a SetInfo,
    rot: Vec<usize>,
    pos: Vec<usize>,
    used: Vec<bool>,
    scratch: Scratch,
    out: ChunkResult,
    error: Option<Error>,
}

impl<'a> Scanner<'a> {
    /// Pruning test on a new successor pair `a → b` of the rotation. A
    /// rotation is kept only if no automorphism image or mirror image of it
    /// can have a smaller second entry.
    #[inline]
    fn edge_ok(&self, a: usize, b: usize) -> bool {
        let x = self.rot[1];
        self.set.to_min[a].iter().all(|s| x <= s[b]) && self.set.to_min[b].iter().all(|s| x <= s[a])
    }

    fn rec(&mut self, reduce: bool) {
        let d = self.set.members.len();
        if self.error.is_some() {
            return;
        }
        if self.rot.len() == d {
            if reduce && !self.edge_ok(self.rot[d - 1], self.rot[0]) {
                return;
            }
            self.leaf();
            return;
        }
        for i in 1..d {
            if self.used[i] {
                continue;
            }
            let y = self.set.members[i];
            if reduce && !self.edge_ok(*self.rot.last().unwrap(), y) {
                continue;
            }
            self.used[i] = true;
            self.pos[y] = self.rot.len();
            self.rot.push(y);
            self.rec(reduce);
            self.rot.pop();
            self.pos[y] = ABSENT;
            self.used[i] = false;
        }
    }

    fn leaf(&mut self) {
        self.out.checked += 1;
        let verdict = if self.set.connected {
            let g = self.group;
            let view = View {
                n: g.order(),
                table: g.table(),
                inv: g.inverses(),
                rot: &self.rot,
                pos: &self.pos,
            };
            if !iso::has_nontrivial_stabilizer(&view, &self.set.primes, &mut self.scratch) {
                self.out.trivial_stabilizer += 1;
                return;
            }
            self.out.babai_runs += 1;
            CayleyMap::new(g.clone(), &self.rot).and_then(|m| babai_is_ci_map(&m, self.caps))
        } else {
            self.out.disconnected_reduced += 1;
            CayleyMap::new(self.group.clone(), &self.rot)
                .and_then(|m| m.component_map())
                .and_then(|(c, _)| babai_is_ci_map(&c, self.caps))
        };
        match verdict {
            Ok(r) if !r.verdict => {
                self.out.non_ci += 1;
                if self.out.failure.is_none() {
                    self.out.failure = Some(self.rot.clone());
                }
            }
            Ok(_) => {}
            Err(e) => self.error = Some(e),
        }
    }
}

fn scan_chunk(
    group: &Arc<FiniteGroup>,
    caps: &Caps,
    set: &SetInfo,
    second: Option<usize>,
    reduce: bool,
) -> Result<ChunkResult> {
    let d = set.members.len();
    let mut sc = Scanner {
        group,
        caps,
        set,
        rot: Vec::with_capacity(d),
        pos: vec![ABSENT; group.order()],
        used: vec![false; d],
        scratch: Scratch::default(),
        out: ChunkResult::default(),
        error: None,
    };
    let m = set.members[0];
    sc.rot.push(m);
    sc.pos[m] = 0;
    sc.used[0] = true;
    if let Some(i) = second {
        let x = set.members[i];
        sc.rot.push(x);
        sc.pos[x] = 1;
        sc.used[i] = true;
        sc.out.maps_total = rotation_count(d - 1);
        if !reduce || sc.edge_ok(m, x) {
            sc.rec(reduce);
        }
    } else {
        sc.out.maps_total = 1;
        sc.leaf();
    }
    match sc.error {
        Some(e) => Err(e),
        None => Ok(sc.out),
    }
}

/// Whether disconnected maps over `h` can be decided through their
/// component: the group is cyclic or in the class `Z_n × Z_2^r`, `Z_n × Z_4`,
/// `Z_n × Q_8`, and any two equal-order subgroups are automorphic and every
/// subgroup automorphism extends (both confirmed by search).
pub fn supports_component_reduction(h: &Arc<FiniteGroup>, caps: &Caps) -> Result<bool> {
    if !(h.is_cyclic() || group::in_class_m(h, caps)?) {
        return Ok(false);
    }
    Ok(group::equal_order_subgroups_are_automorphic(h, caps)? && group::subgroup_automorphisms_extend(h, caps)?)
}

/// Witnesses for a non-CI disconnected map, from a failing component.
fn disconnected_witnesses(m: &CayleyMap, caps: &Caps) -> Result<Vec<Witness>> {
    let (component, sub) = m.component_map()?;
    let rep = babai_is_ci_map(&component, caps)?;
    let Some(Witness::MapPair { second, .. }) = rep.witnesses.iter().find(|w| matches!(w, Witness::MapPair { .. })) else {
        return Err(Error::Witness("component map has no witness pair".into()));
    };
    let local = second.to_map()?;
    let rotation: Vec<usize> = local.rotation().iter().map(|&x| sub.members()[x]).collect();
    let other = CayleyMap::new(m.group().clone(), &rotation)?;
    let f = iso::find_map_isomorphism(m, &other)?
        .ok_or_else(|| Error::Witness("lifted component map is not isomorphic".into()))?;
    let mut out = rep.witnesses;
    out.push(Witness::map_pair(&f));
    Ok(out)
}

fn scan(h: &Arc<FiniteGroup>, opts: &ScanOptions, caps: &Caps, connected_only: bool) -> Result<CiReport> {
    let method = if connected_only {
        Method::ExhaustiveConnectedCim
    } else {
        Method::ExhaustiveCim
    };
    let mut rep = CiReport::new(h.name(), method);
    let max_valency = opts.max_valency.min(h.order().saturating_sub(1));
    let sets = connection_sets(h, max_valency);
    let any_disconnected = sets
        .iter()
        .any(|s| h.generate(s).len() != h.order());
    let reduction = !connected_only && any_disconnected && supports_component_reduction(h, caps)?;
    let auts: Vec<Arc<Vec<usize>>> = if opts.symmetry_reduction {
        group::automorphisms(h, caps)?
            .into_iter()
            .map(|s| Arc::new(s.images().to_vec()))
            .collect()
    } else {
        Vec::new()
    };

    let mut infos = Vec::new();
    let mut unchecked_disconnected = 0u64;
    for s in sets {
        let connected = h.generate(&s).len() == h.order();
        if !connected && (connected_only || !reduction) {
            if !connected_only {
                unchecked_disconnected += rotation_count(s.len());
            }
            continue;
        }
        let m = s[0];
        let mut to_min = vec![Vec::new(); h.order()];
        for sigma in &auts {
            let mut img: Vec<usize> = s.iter().map(|&x| sigma[x]).collect();
            img.sort_unstable();
            if img == s {
                for &a in &s {
                    if sigma[a] == m {
                        to_min[a].push(sigma.clone());
                    }
                }
            }
        }
        infos.push(SetInfo {
            primes: group::prime_divisors(s.len()),
            members: s,
            connected,
            to_min,
        });
    }

    let chunks: Vec<(usize, Option<usize>)> = infos
        .iter()
        .enumerate()
        .flat_map(|(i, info)| {
            let d = info.members.len();
            if d == 1 {
                vec![(i, None)]
            } else {
                (1..d).map(|j| (i, Some(j))).collect()
            }
        })
        .collect();
    let reduce = opts.symmetry_reduction;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Construction(format!("worker pool: {e}")))?;
    let results: Vec<Result<ChunkResult>> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(i, second)| scan_chunk(h, caps, &infos[i], second, reduce))
            .collect()
    });

    let mut total = ChunkResult::default();
    let mut failure: Option<(usize, Vec<usize>)> = None;
    for (r, &(i, _)) in results.into_iter().zip(&chunks) {
        let r = r?;
        total.maps_total += r.maps_total;
        total.checked += r.checked;
        total.trivial_stabilizer += r.trivial_stabilizer;
        total.babai_runs += r.babai_runs;
        total.disconnected_reduced += r.disconnected_reduced;
        total.non_ci += r.non_ci;
        if failure.is_none() {
            if let Some(rot) = r.failure {
                failure = Some((i, rot));
            }
        }
    }
    rep.stat("connection_sets", infos.len());
    rep.stat("chunks", chunks.len());
    rep.stat("maps_total", total.maps_total);
    rep.stat("maps_checked", total.checked);
    rep.stat("maps_trivial_stabilizer", total.trivial_stabilizer);
    rep.stat("maps_babai", total.babai_runs);
    rep.stat("maps_disconnected_reduced", total.disconnected_reduced);
    rep.stat("maps_non_ci", total.non_ci);
    if !connected_only {
        rep.stat("maps_disconnected_unchecked", unchecked_disconnected);
    }
    if reduce {
        rep.notes.push(
            "maps are checked up to group automorphisms and mirror images, which preserve the verdict".into(),
        );
    }
    if reduction {
        rep.notes.push(
            "disconnected maps are decided by the map on their component <S>; valid because equal-order \
             subgroups are automorphic and subgroup automorphisms extend"
                .into(),
        );
    }

    if let Some((i, rot)) = failure {
        rep.verdict = false;
        let m = CayleyMap::new(h.clone(), &rot)?;
        rep.witnesses = if infos[i].connected {
            babai_is_ci_map(&m, caps)?.witnesses
        } else {
            disconnected_witnesses(&m, caps)?
        };
        if unchecked_disconnected > 0 {
            rep.notes.push("disconnected maps were not checked; a connected non-CI map decides the verdict".into());
        }
        return Ok(rep);
    }
    if unchecked_disconnected > 0 {
        return Err(Error::UnsupportedReduction(h.name().to_string()));
    }
    Ok(rep)
}

/// Whether every Cayley map over `h` with valency at most the bound is a
/// CI-map.
pub fn verify_cim_group(h: &Arc<FiniteGroup>, opts: &ScanOptions, caps: &Caps) -> Result<CiReport> {
    scan(h, opts, caps, false)
}

/// As [`verify_cim_group`], restricted to connected maps.
pub fn verify_connected_cim(h: &Arc<FiniteGroup>, opts: &ScanOptions, caps: &Caps) -> Result<CiReport> {
    scan(h, opts, caps, true)
}

/// Compares the definitional verdict with Babai's criterion on every
/// connected map over `h`, and with the component reduction on disconnected
/// maps where it applies.
pub fn cross_validate(h: &Arc<FiniteGroup>, caps: &Caps) -> Result<CiReport> {
    let mut rep = CiReport::new(h.name(), Method::CrossValidation);
    let reduction = supports_component_reduction(h, caps)?;
    let (mut maps, mut connected, mut disconnected, mut unchecked, mut non_ci) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for valency in 1..h.order() {
        let table = ClassTable::build(h, valency, caps)?;
        let verdicts = table.verdicts();
        for (m, &definitional) in table.maps.iter().zip(&verdicts) {
            maps += 1;
            non_ci += u64::from(!definitional);
            let babai = if m.is_connected() {
                connected += 1;
                babai_is_ci_map(m, caps)?.verdict
            } else if reduction {
                disconnected += 1;
                babai_is_ci_map(&m.component_map()?.0, caps)?.verdict
            } else {
                unchecked += 1;
                continue;
            };
            if babai != definitional {
                rep.verdict = false;
                rep.witnesses.push(Witness::Discrepancy {
                    map: crate::interchange::MapJson::from_map(m),
                    babai,
                    definitional,
                });
            }
        }
    }
    rep.stat("maps", maps);
    rep.stat("connected_compared", connected);
    rep.stat("disconnected_compared", disconnected);
    rep.stat("disconnected_unchecked", unchecked);
    rep.stat("non_ci_maps", non_ci);
    rep.stat("discrepancies", rep.witnesses.len());
    Ok(rep)
}

fn conjugacy_preconditions(g: &PermutationGroup, h: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<PermutationGroup>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if !g.point_stabilizer(0)?.is_cyclic() {
        return Err(Error::StabilizerNotCyclic);
    }
    let regs = perm::regular_subgroups_isomorphic_to(g, h, caps)?;
    if regs.is_empty() {
        return Err(Error::NoRegularCopy(h.name().to_string()));
    }
    Ok(regs)
}

fn conjugacy_report(g: &PermutationGroup, h: &Arc<FiniteGroup>, regs: &[PermutationGroup]) -> CiReport {
    let mut rep = CiReport::new(h.name(), Method::StabilizerConjugacy);
    rep.stat("group_order", g.order());
    rep.stat("regular_subgroups", regs.len());
    let first = &regs[0];
    let ambient = PermutationGroupJson::from_group(g);
    let mut conjugates = Vec::new();
    for r in &regs[1..] {
        match perm::are_conjugate_subgroups(g, first, r) {
            Some(x) => conjugates.push(Witness::ConjugatePair {
                ambient: ambient.clone(),
                first: PermutationGroupJson::from_group(first),
                second: PermutationGroupJson::from_group(r),
                conjugator: x.images().to_vec(),
            }),
            None => {
                rep.verdict = false;
                rep.witnesses = vec![Witness::NonConjugatePair {
                    group: report::group_ref(h),
                    ambient: ambient.clone(),
                    first: PermutationGroupJson::from_group(first),
                    second: PermutationGroupJson::from_group(r),
                }];
                return rep;
            }
        }
    }
    rep.witnesses = conjugates;
    rep
}

/// For a transitive group with cyclic point stabilizer containing a regular
/// copy of `h` from the class `Z_n × Z_2^r`, `Z_n × Z_4`, `Z_n × Q_8`:
/// whether all `h`-regular subgroups are conjugate.
pub fn check_cyclic_stabilizer_conjugacy(
    g: &PermutationGroup,
    h: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<CiReport> {
    if !group::in_class_m(h, caps)? {
        return Err(Error::NotInClassM(h.name().to_string()));
    }
    let regs = conjugacy_preconditions(g, h, caps)?;
    Ok(conjugacy_report(g, h, &regs))
}

/// The same conjugacy check without the class restriction on `h`.
pub fn cyclic_stabilizer_conjugacy_ungated(
    g: &PermutationGroup,
    h: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<CiReport> {
    let regs = conjugacy_preconditions(g, h, caps)?;
    Ok(conjugacy_report(g, h, &regs))
}

/// Checks that `babai_is_ci_map` gives the same verdict on `m` and on its
/// image under `sigma`.
pub fn verdict_is_automorphism_invariant(m: &CayleyMap, sigma: &GroupIsomorphism, caps: &Caps) -> Result<bool> {
    let image = m.apply_group_automorphism(sigma)?;
    Ok(babai_is_ci_map(m, caps)?.verdict == babai_is_ci_map(&image, caps)?.verdict)
}
