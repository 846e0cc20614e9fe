//! Verdicts with re-checkable witnesses.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group;
use crate::interchange::{GroupRef, MapJson, PermutationGroupJson};
use crate::iso::{self, MapMorphism};
use crate::perm::{self, Permutation, PermutationGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Babai,
    Definitional,
    ExhaustiveCim,
    ExhaustiveConnectedCim,
    CrossValidation,
    StabilizerConjugacy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A regular subgroup of `Aut(M)` isomorphic to the map's group and not
    /// conjugate to its left regular representation.
    RegularSubgroup { map: MapJson, rival: PermutationGroupJson },
    /// Two maps over one group that are isomorphic but not Cayley
    /// isomorphic, with a vertex isomorphism.
    MapPair {
        first: MapJson,
        second: MapJson,
        isomorphism: Vec<usize>,
    },
    /// `x` in `Aut(M)` with `x·R·x⁻¹` equal to the left regular
    /// representation.
    Conjugator {
        map: MapJson,
        subgroup: PermutationGroupJson,
        conjugator: Vec<usize>,
    },
    /// Two regular subgroups of `ambient` isomorphic to `group` that are not
    /// conjugate in `ambient`.
    NonConjugatePair {
        group: GroupRef,
        ambient: PermutationGroupJson,
        first: PermutationGroupJson,
        second: PermutationGroupJson,
    },
    /// `x` in `ambient` conjugating `first` onto `second`.
    ConjugatePair {
        ambient: PermutationGroupJson,
        first: PermutationGroupJson,
        second: PermutationGroupJson,
        conjugator: Vec<usize>,
    },
    /// A map on which two verdicts disagree.
    Discrepancy {
        map: MapJson,
        babai: bool,
        definitional: bool,
    },
}

impl Witness {
    pub fn regular_subgroup(map: &crate::map::CayleyMap, rival: &PermutationGroup) -> Self {
        Witness::RegularSubgroup {
            map: MapJson::from_map(map),
            rival: PermutationGroupJson::from_group(rival),
        }
    }

    pub fn map_pair(f: &MapMorphism) -> Self {
        Witness::MapPair {
            first: MapJson::from_map(f.source()),
            second: MapJson::from_map(f.target()),
            isomorphism: f.images().to_vec(),
        }
    }

    /// Recomputes everything the witness claims.
    pub fn revalidate(&self, caps: &Caps) -> Result<()> {
        let fail = |msg: &str| Err(Error::Witness(msg.to_string()));
        match self {
            Witness::RegularSubgroup { map, rival } => {
                let m = map.to_map()?;
                let aut = iso::map_automorphism_group(&m, caps)?;
                let r = rival.to_group(caps.permutation_group)?;
                if !r.is_subgroup_of(&aut) {
                    return fail("rival is not inside Aut(M)");
                }
                if !r.is_regular() {
                    return fail("rival is not regular");
                }
                if perm::regular_labeling(&r, m.group(), caps)?.is_none() {
                    return fail("rival is not isomorphic to the map's group");
                }
                let hat = PermutationGroup::left_regular(m.group());
                if perm::are_conjugate_subgroups(&aut, &r, &hat).is_some() {
                    return fail("rival is conjugate to the left regular representation");
                }
                Ok(())
            }
            Witness::MapPair {
                first,
                second,
                isomorphism,
            } => {
                let (m1, m2) = (first.to_map()?, second.to_map()?);
                MapMorphism::new(m1.clone(), m2.clone(), isomorphism.clone())?;
                if iso::are_cayley_isomorphic(&m1, &m2, caps)?.is_some() {
                    return fail("maps are Cayley isomorphic");
                }
                Ok(())
            }
            Witness::Conjugator {
                map,
                subgroup,
                conjugator,
            } => {
                let m = map.to_map()?;
                let aut = iso::map_automorphism_group(&m, caps)?;
                let r = subgroup.to_group(caps.permutation_group)?;
                let x = Permutation::new(conjugator.clone())?;
                if !aut.contains(&x) || !r.is_subgroup_of(&aut) {
                    return fail("conjugator or subgroup outside Aut(M)");
                }
                if r.conjugate_by(&x) != PermutationGroup::left_regular(m.group()) {
                    return fail("conjugation does not give the left regular representation");
                }
                Ok(())
            }
            Witness::NonConjugatePair {
                group: g,
                ambient,
                first,
                second,
            } => {
                let h = Arc::new(g.to_group()?);
                let amb = ambient.to_group(caps.permutation_group)?;
                let a = first.to_group(caps.permutation_group)?;
                let b = second.to_group(caps.permutation_group)?;
                for r in [&a, &b] {
                    if !r.is_subgroup_of(&amb) || !r.is_regular() {
                        return fail("subgroup is not a regular subgroup of the ambient group");
                    }
                    if perm::regular_labeling(r, &h, caps)?.is_none() {
                        return fail("subgroup is not isomorphic to the group");
                    }
                }
                if perm::are_conjugate_subgroups(&amb, &a, &b).is_some() {
                    return fail("subgroups are conjugate");
                }
                Ok(())
            }
            Witness::ConjugatePair {
                ambient,
                first,
                second,
                conjugator,
            } => {
                let amb = ambient.to_group(caps.permutation_group)?;
                let a = first.to_group(caps.permutation_group)?;
                let b = second.to_group(caps.permutation_group)?;
                let x = Permutation::new(conjugator.clone())?;
                if !amb.contains(&x) || a.conjugate_by(&x) != b {
                    return fail("conjugator does not carry the first subgroup onto the second");
                }
                Ok(())
            }
            Witness::Discrepancy {
                map,
                babai,
                definitional,
            } => {
                if babai == definitional {
                    return fail("discrepancy with equal verdicts");
                }
                let m = map.to_map()?;
                let b = crate::ci::babai_is_ci_map(&m, caps)?.verdict;
                let d = crate::ci::definitional_is_ci_map(&m, caps)?.verdict;
                if (b, d) != (*babai, *definitional) {
                    return fail("recomputed verdicts differ from the recorded ones");
                }
                Ok(())
            }
        }
    }
}

/// A verdict, how it was reached, and evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CiReport {
    pub subject: String,
    pub verdict: bool,
    pub method: Method,
    pub witnesses: Vec<Witness>,
    pub stats: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl CiReport {
    pub fn new(subject: impl Into<String>, method: Method) -> Self {
        CiReport {
            subject: subject.into(),
            verdict: true,
            method,
            witnesses: Vec::new(),
            stats: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn stat(&mut self, key: &str, value: impl TryInto<u64>) {
        self.stats.insert(key.to_string(), value.try_into().unwrap_or(u64::MAX));
    }

    /// Checks that a negative verdict carries a witness and that every
    /// witness holds.
    pub fn revalidate(&self, caps: &Caps) -> Result<()> {
        if !self.verdict && self.witnesses.is_empty() {
            return Err(Error::Witness(format!("{}: negative verdict without a witness", self.subject)));
        }
        for w in &self.witnesses {
            w.revalidate(caps)?;
        }
        Ok(())
    }
}

/// Group reference used in witnesses.
pub(crate) fn group_ref(g: &group::FiniteGroup) -> GroupRef {
    GroupRef::from_group(g)
}
