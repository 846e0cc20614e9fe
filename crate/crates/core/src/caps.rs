use serde::{Deserialize, Serialize};

/// Explicit size limits for the exhaustive searches. Exceeding one is an
/// error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// Largest abstract group order accepted by subgroup, automorphism and
    /// isomorphism searches.
    pub group_order: usize,
    /// Largest number of automorphisms a single search may produce.
    pub automorphisms: usize,
    /// Largest explicitly enumerated permutation group.
    pub permutation_group: usize,
    /// Largest number of Cayley maps materialized at once.
    pub map_enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 64,
            automorphisms: 1_000_000,
            permutation_group: 20_000,
            map_enumeration: 2_000_000,
        }
    }
}

impl Caps {
    /// Default caps with the group-order cap taken from `CIMLAB_CAP_ORDER`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(order) = std::env::var("CIMLAB_CAP_ORDER")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            caps.group_order = order;
        }
        caps
    }
}
