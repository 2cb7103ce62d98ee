//! Enumeration budgets.
//!
//! Every exhaustive routine in the crate is bounded. The defaults cover the
//! built-in catalog; `COHOMORING_BUDGET` overrides them at run time, either as
//! a bare integer (the candidate budget) or as `key=value` pairs separated by
//! commas, e.g. `candidates=2000000,h2g_order=24`.

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "COHOMORING_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order whose associativity is checked exhaustively.
    pub assoc_check_order: usize,
    /// Candidate maps tried by closure/brute-force enumerations.
    pub candidates: u128,
    /// Largest Z^1 (and hence endomorphism set) that is materialized.
    pub z1_cap: usize,
    /// Largest |G| for which H^2(G,N) is computed in the five-term check.
    pub h2g_order: usize,
    /// Largest ring order whose axioms are checked exhaustively.
    pub ring_check_order: usize,
    /// Unknowns allowed in the linear H^2 computation: (|Q|-1)^2 * (cyclic factors of N).
    pub h2_unknowns: usize,
    /// Search nodes allowed in the enumerative H^2 oracle.
    pub h2_search_nodes: u128,
    /// Set-lifts tried when testing independence of the connecting map.
    pub lifts: u128,
    /// Largest derived ring (Z^1 or endomorphisms) whose axioms the verifier
    /// re-checks on all triples.
    pub axiom_scan: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            assoc_check_order: 512,
            candidates: 1_000_000,
            z1_cap: 100_000,
            h2g_order: 16,
            ring_check_order: 4096,
            h2_unknowns: 5_000,
            h2_search_nodes: 20_000_000,
            lifts: 10_000,
            axiom_scan: 256,
        }
    }
}

impl Budget {
    /// Defaults, overridden by `COHOMORING_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = spec.parse::<u128>() {
            self.candidates = n;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Precondition(format!("malformed budget entry `{part}`")))?;
            let bad = || Error::Precondition(format!("malformed budget value `{part}`"));
            let value = value.trim();
            match key.trim() {
                "assoc_order" => self.assoc_check_order = value.parse().map_err(|_| bad())?,
                "candidates" => self.candidates = value.parse().map_err(|_| bad())?,
                "z1_cap" => self.z1_cap = value.parse().map_err(|_| bad())?,
                "h2g_order" => self.h2g_order = value.parse().map_err(|_| bad())?,
                "ring_order" => self.ring_check_order = value.parse().map_err(|_| bad())?,
                "h2_unknowns" => self.h2_unknowns = value.parse().map_err(|_| bad())?,
                "h2_nodes" => self.h2_search_nodes = value.parse().map_err(|_| bad())?,
                "lifts" => self.lifts = value.parse().map_err(|_| bad())?,
                "axiom_scan" => self.axiom_scan = value.parse().map_err(|_| bad())?,
                other => {
                    return Err(Error::Precondition(format!("unknown budget key `{other}`")));
                }
            }
        }
        Ok(self)
    }
}

/// `base^exp`, saturating.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn check(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { what, needed, budget })
    } else {
        Ok(())
    }
}
