//! JSON forms of groups, permutations and maps.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::map::CayleyMap;
use crate::notation;
use crate::perm::{Permutation, PermutationGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTable {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A group given either by notation or by its full table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Spec(String),
    Table(GroupTable),
}

impl GroupRef {
    /// Notation when the name parses back to the same table, else the table.
    pub fn from_group(g: &FiniteGroup) -> Self {
        if notation::name_round_trips(g) {
            GroupRef::Spec(g.name().to_string())
        } else {
            GroupRef::Table(GroupTable {
                name: g.name().to_string(),
                order: g.order(),
                table: g.table_rows(),
            })
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Spec(s) => notation::parse_group(s),
            GroupRef::Table(t) => {
                if t.table.len() != t.order {
                    return Err(Error::InvalidTable(format!(
                        "order {} but {} rows",
                        t.order,
                        t.table.len()
                    )));
                }
                FiniteGroup::from_table(t.name.clone(), t.table.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub group: GroupRef,
    pub rotation: Vec<usize>,
}

impl MapJson {
    pub fn from_map(m: &CayleyMap) -> Self {
        MapJson {
            group: GroupRef::from_group(m.group()),
            rotation: m.rotation().to_vec(),
        }
    }

    pub fn to_map(&self) -> Result<CayleyMap> {
        CayleyMap::new(Arc::new(self.group.to_group()?), &self.rotation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationJson {
    pub degree: usize,
    pub images: Vec<usize>,
}

impl PermutationJson {
    pub fn from_perm(p: &Permutation) -> Self {
        PermutationJson {
            degree: p.degree(),
            images: p.images().to_vec(),
        }
    }

    pub fn to_perm(&self) -> Result<Permutation> {
        if self.images.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: self.images.len(),
            });
        }
        Permutation::new(self.images.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationGroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermutationGroupJson {
    pub fn from_group(g: &PermutationGroup) -> Self {
        PermutationGroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }

    pub fn to_group(&self, cap: usize) -> Result<PermutationGroup> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for images in &self.generators {
            if images.len() != self.degree {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: images.len(),
                });
            }
            gens.push(Permutation::new(images.clone())?);
        }
        if gens.is_empty() {
            return Ok(PermutationGroup::trivial(self.degree));
        }
        PermutationGroup::closure(&gens, cap)
    }
}

/// Reads a map given as notation or as a path to a JSON file.
pub fn load_map(arg: &str) -> Result<CayleyMap> {
    let path = std::path::Path::new(arg);
    if arg.ends_with(".json") && path.exists() {
        let text = std::fs::read_to_string(path)?;
        let json: MapJson = serde_json::from_str(&text)?;
        json.to_map()
    } else {
        notation::parse_map(arg)
    }
}

/// Reads a group given as notation or as a path to a JSON table.
pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    let path = std::path::Path::new(arg);
    if arg.ends_with(".json") && path.exists() {
        let text = std::fs::read_to_string(path)?;
        let json: GroupRef = serde_json::from_str(&text)?;
        json.to_group()
    } else {
        notation::parse_group(arg)
    }
}

/// Pretty JSON with sorted keys.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_round_trip() {
        let m = notation::parse_map("q8:1,3,5,7").unwrap();
        let json = MapJson::from_map(&m);
        assert!(matches!(json.group, GroupRef::Spec(_)));
        let text = serde_json::to_string(&json).unwrap();
        let back: MapJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_map().unwrap(), m);
    }

    #[test]
    fn subgroup_maps_use_tables() {
        let q16 = Arc::new(FiniteGroup::generalized_quaternion(16).unwrap());
        let sub = crate::group::Subgroup::generated_by(&q16, &[2, 8]);
        let (local, _) = sub.to_group();
        let json = GroupRef::from_group(&local);
        assert!(matches!(json, GroupRef::Table(_)));
        assert_eq!(json.to_group().unwrap(), local);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"group":"z8","rotation":[1,7],"extra":1}"#;
        assert!(serde_json::from_str::<MapJson>(text).is_err());
        let text = r#"{"degree":3,"images":[0,1]}"#;
        let p: PermutationJson = serde_json::from_str(text).unwrap();
        assert!(p.to_perm().is_err());
    }

    #[test]
    fn table_group_json() {
        let text = r#"{"name":"z2","order":2,"table":[[0,1],[1,0]]}"#;
        let g: GroupRef = serde_json::from_str(text).unwrap();
        assert_eq!(g.to_group().unwrap().order(), 2);
        let bad = r#"{"name":"x","order":2,"table":[[0,1],[0,1]]}"#;
        let g: GroupRef = serde_json::from_str(bad).unwrap();
        assert!(g.to_group().is_err());
    }
}
