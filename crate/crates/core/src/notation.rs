//! Text notation for groups and maps.
//!
//! Groups: `cyclic:n`, `abelian:a,b,...`, `quaternion:n`, `dihedral:n`
//! (order `2n`), `product:G,H,...`, `semidirect:K,m,ACTION` where ACTION is
//! `mult:u` (`x ↦ x^u`), `map:i0;i1;...` (explicit images) or `aut:i` (the
//! `i`-th automorphism of `K`). Shorthands: `zN`, `q8`, `q16`, `k4`, `s3`,
//! `a4`, `trivial`.
//!
//! Maps: `<group>:<r0,r1,...>`; the rotation follows the last colon.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupIsomorphism};
use crate::map::CayleyMap;

fn number(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, found {s:?}")))
}

fn numbers(s: &str, sep: char) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(sep).map(number).collect()
}

fn is_action_token(t: &str) -> bool {
    ["mult:", "map:", "aut:"].iter().any(|p| t.starts_with(p))
}

fn is_continuation(t: &str) -> bool {
    t.chars().all(|c| c.is_ascii_digit()) || is_action_token(t)
}

/// Splits a comma-separated list of group specs; bare numbers and action
/// tokens belong to the spec before them.
fn split_specs(s: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for token in s.split(',').map(str::trim) {
        match out.last_mut() {
            Some(last) if is_continuation(token) => {
                last.push(',');
                last.push_str(token);
            }
            _ => out.push(token.to_string()),
        }
    }
    out
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    parse_group_with(spec, &Caps::default())
}

pub fn parse_group_with(spec: &str, caps: &Caps) -> Result<FiniteGroup> {
    let s = spec.trim().to_ascii_lowercase();
    match s.as_str() {
        "trivial" => return FiniteGroup::cyclic(1),
        "q8" => return FiniteGroup::generalized_quaternion(8),
        "q16" => return FiniteGroup::generalized_quaternion(16),
        "k4" => return FiniteGroup::abelian(&[2, 2]),
        "s3" => return FiniteGroup::dihedral(3),
        "a4" => return parse_group_with("semidirect:abelian:2,2,3,map:0;2;3;1", caps),
        _ => {}
    }
    if let Some(n) = s.strip_prefix('z').filter(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit())) {
        return FiniteGroup::cyclic(number(n)?);
    }
    let Some((family, args)) = s.split_once(':') else {
        return Err(Error::Parse(format!("unknown group {spec:?}")));
    };
    match family {
        "cyclic" => FiniteGroup::cyclic(number(args)?),
        "abelian" => FiniteGroup::abelian(&numbers(args, ',')?),
        "quaternion" => FiniteGroup::generalized_quaternion(number(args)?),
        "dihedral" => FiniteGroup::dihedral(number(args)?),
        "product" => {
            let parts = split_specs(args);
            let mut iter = parts.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::Parse("empty product".into()))?;
            let mut acc = parse_group_with(first, caps)?;
            for p in iter {
                acc = FiniteGroup::direct_product(&acc, &parse_group_with(p, caps)?);
            }
            Ok(acc)
        }
        "semidirect" => {
            let tokens: Vec<&str> = args.split(',').map(str::trim).collect();
            if tokens.len() < 3 {
                return Err(Error::Parse(format!("semidirect needs K,m,action: {spec:?}")));
            }
            let action = tokens[tokens.len() - 1];
            let m = number(tokens[tokens.len() - 2])?;
            let k = Arc::new(parse_group_with(&tokens[..tokens.len() - 2].join(","), caps)?);
            let aut = parse_action(&k, action, caps)?;
            FiniteGroup::semidirect(&aut, m)
        }
        _ => Err(Error::Parse(format!("unknown group family {family:?}"))),
    }
}

/// Parses `mult:u`, `map:i0;i1;...` or `aut:i` as an automorphism of `k`.
pub fn parse_action(k: &Arc<FiniteGroup>, action: &str, caps: &Caps) -> Result<GroupIsomorphism> {
    let (kind, arg) = action
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("bad action {action:?}")))?;
    let images = match kind {
        "mult" => {
            let u = number(arg)?;
            (0..k.order()).map(|x| k.pow(x, u)).collect()
        }
        "map" => numbers(arg, ';')?,
        "aut" => {
            let i = number(arg)?;
            let auts = group::automorphisms(k, caps)?;
            return auts
                .get(i)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("group has only {} automorphisms", auts.len())));
        }
        _ => return Err(Error::Parse(format!("unknown action kind {kind:?}"))),
    };
    GroupIsomorphism::new(k.clone(), k.clone(), images).map_err(|e| Error::InvalidAction(e.to_string()))
}

/// Parses `<group>:<rotation>`.
pub fn parse_map(spec: &str) -> Result<CayleyMap> {
    let (g, rot) = spec
        .trim()
        .rsplit_once(':')
        .ok_or_else(|| Error::Parse(format!("map spec {spec:?} needs <group>:<rotation>")))?;
    let group = parse_group(g)?;
    CayleyMap::new(Arc::new(group), &numbers(rot, ',')?)
}

/// Whether the group's name parses back to the same table.
pub fn name_round_trips(g: &FiniteGroup) -> bool {
    parse_group(g.name()).is_ok_and(|h| h == *g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(parse_group("z8").unwrap(), FiniteGroup::cyclic(8).unwrap());
        assert_eq!(parse_group("cyclic:8").unwrap().name(), "cyclic:8");
        assert_eq!(parse_group("abelian:2,2,2").unwrap().order(), 8);
        assert_eq!(parse_group("quaternion:16").unwrap().order(), 16);
        let p = parse_group("product:cyclic:3,quaternion:8").unwrap();
        assert_eq!(p.order(), 24);
        assert_eq!(p.name(), "product:cyclic:3,quaternion:8");
        let s = parse_group("semidirect:cyclic:7,3,mult:2").unwrap();
        assert_eq!(s.order(), 21);
        assert!(!s.is_abelian());
        assert_eq!(parse_group("a4").unwrap().order(), 12);
        assert!(parse_group("cyclic:0").is_err());
        assert!(parse_group("semidirect:cyclic:7,2,mult:2").is_err());
        assert!(parse_group("bogus").is_err());
    }

    #[test]
    fn names_round_trip() {
        for spec in [
            "z1",
            "z8",
            "k4",
            "q8",
            "s3",
            "a4",
            "dihedral:4",
            "abelian:3,3",
            "product:abelian:2,2,cyclic:3",
            "product:semidirect:cyclic:7,3,mult:2,cyclic:2",
            "semidirect:cyclic:9,3,mult:4",
        ] {
            let g = parse_group(spec).unwrap();
            assert!(name_round_trips(&g), "{spec} -> {}", g.name());
        }
    }

    #[test]
    fn maps() {
        let m = parse_map("z8:1,3,5,7").unwrap();
        assert_eq!(m.rotation(), &[1, 3, 5, 7]);
        let m = parse_map("cyclic:9:5,7,8,4,2,1").unwrap();
        assert_eq!(m.rotation(), &[1, 5, 7, 8, 4, 2]);
        assert_eq!(parse_map(&m.spec_string()).unwrap(), m);
        assert!(parse_map("z1:").unwrap().rotation().is_empty());
        assert!(parse_map("z8").is_err());
        assert!(parse_map("z8:1,2").is_err());
    }
}
