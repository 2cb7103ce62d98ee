//! Catalogs of extensions and rings, and the sweep that runs every verifier
//! over them.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cohomology2::{h2_linear, TwoCocycle};
use crate::error::{Error, Result};
use crate::extension::{AbelianExtension, ExtensionJson};
use crate::group::{all_actions, cyclic, direct_product, ActionTable, FiniteGroup, GroupJson};
use crate::report::{Check, ExactnessReport};
use crate::ring::{check_qr_units, FiniteRing, RingJson};
use crate::verify::{axiom_check, ExtensionData};

/// One entry of a catalog file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(flatten)]
    pub spec: EntrySpec,
    /// Overwrites one product before verification (of `⊠` for extensions).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntrySpec {
    Dihedral {
        n: usize,
    },
    /// The extension of `q` by `n` defined by a normalized 2-cocycle.
    Cocycle {
        q: GroupJson,
        n: GroupJson,
        action: Vec<Vec<usize>>,
        values: Vec<usize>,
    },
    Extension {
        extension: ExtensionJson,
    },
    Ring {
        ring: RingJson,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub a: usize,
    pub b: usize,
    pub value: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn push_extension(&mut self, name: impl Into<String>, ext: &AbelianExtension) {
        self.entries.push(CatalogEntry {
            name: name.into(),
            spec: EntrySpec::Extension { extension: ext.to_json() },
            fault: None,
        });
    }

    pub fn push_cocycle(&mut self, name: impl Into<String>, f: &TwoCocycle) {
        let a = f.action();
        self.entries.push(CatalogEntry {
            name: name.into(),
            spec: EntrySpec::Cocycle {
                q: a.actor.to_json(),
                n: a.module.to_json(),
                action: a.rows(),
                values: f.values().to_vec(),
            },
            fault: None,
        });
    }
}

impl EntrySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            EntrySpec::Dihedral { .. } => "dihedral",
            EntrySpec::Cocycle { .. } => "cocycle",
            EntrySpec::Extension { .. } => "extension",
            EntrySpec::Ring { .. } => "ring",
        }
    }

    /// The extension described by this entry, if it describes one.
    pub fn extension(&self) -> Result<Option<AbelianExtension>> {
        Ok(Some(match self {
            EntrySpec::Dihedral { n } => AbelianExtension::dihedral(*n)?,
            EntrySpec::Cocycle { q, n, action, values } => {
                let q = Arc::new(FiniteGroup::from_json(q)?);
                let n = Arc::new(FiniteGroup::from_json(n)?);
                let action = Arc::new(ActionTable::new(q, n, action)?);
                AbelianExtension::from_cocycle(&TwoCocycle::new(action, values.clone())?)?
            }
            EntrySpec::Extension { extension } => AbelianExtension::from_json(extension)?,
            EntrySpec::Ring { .. } => return Ok(None),
        }))
    }
}

/// Outcome of verifying one entry.
#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub kind: String,
    pub passed: bool,
    /// First failure, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub reports: Vec<ExactnessReport>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<EntryReport>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs every applicable verifier on every entry, in parallel. The output
/// order is the catalog order.
pub fn sweep(catalog: &Catalog, check_h2g: bool, budget: &Budget) -> Summary {
    let entries: Vec<EntryReport> = catalog
        .entries
        .par_iter()
        .map(|e| verify_entry(e, check_h2g, budget))
        .collect();
    let passed = entries.iter().filter(|e| e.passed).count();
    Summary { total: entries.len(), passed, failed: entries.len() - passed, entries }
}

pub fn verify_entry(entry: &CatalogEntry, check_h2g: bool, budget: &Budget) -> EntryReport {
    let mut out = EntryReport {
        name: entry.name.clone(),
        kind: entry.spec.kind().to_string(),
        passed: false,
        witness: None,
        error: None,
        reports: Vec::new(),
        checks: Vec::new(),
    };
    let run = || -> Result<(Vec<ExactnessReport>, Vec<Check>)> {
        match entry.spec.extension()? {
            Some(ext) => {
                let mut data = ExtensionData::new(&entry.name, &ext, budget)?;
                if let Some(f) = entry.fault {
                    data.endo.corrupt_boxtimes(f.a, f.b, f.value)?;
                }
                data.full(check_h2g, budget)
            }
            None => {
                let EntrySpec::Ring { ring } = &entry.spec else { unreachable!() };
                let mut json = ring.clone();
                if let Some(f) = entry.fault {
                    let row = json
                        .mul_table
                        .get_mut(f.a)
                        .and_then(|r| r.get_mut(f.b))
                        .ok_or_else(|| Error::OutOfRange(format!("fault ({}, {})", f.a, f.b)))?;
                    *row = f.value;
                }
                Ok((Vec::new(), ring_checks(&FiniteRing::from_json_unverified(&json)?, budget)?))
            }
        }
    };
    match run() {
        Ok((reports, checks)) => {
            out.witness = reports
                .iter()
                .find_map(|r| r.first_failure())
                .or_else(|| {
                    checks
                        .iter()
                        .find(|c| c.failed())
                        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
                });
            out.passed = out.witness.is_none();
            out.reports = reports;
            out.checks = checks;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

/// Axioms, the quasi-regular group, and `QR(R) ≅ U(R)` when `R` is unital.
pub fn ring_checks(ring: &FiniteRing, budget: &Budget) -> Result<Vec<Check>> {
    let scan = Budget { axiom_scan: budget.axiom_scan.max(budget.ring_check_order), ..budget.clone() };
    let mut out = vec![axiom_check("ring axioms", ring, &scan)];
    if out[0].failed() {
        return Ok(out);
    }
    out.push(match ring.quasi_regular_group() {
        Ok(q) => Check::pass("QR(R) is a group", format!("order {}", q.len())),
        Err(e) => Check::fail("QR(R) is a group", "", e.to_string()),
    });
    if ring.one().is_some() {
        out.push(check_qr_units(ring)?);
    }
    Ok(out)
}

fn named(group: &FiniteGroup) -> String {
    let n = group.order();
    match n {
        4 if !group.elements().any(|x| group.element_order(x) == 4) => "C2xC2".into(),
        _ => format!("C{n}"),
    }
}

/// The built-in catalog: dihedral groups `D3`–`D12`; every extension class of
/// `C2`, `C3`, `C4` by `C2`, `C3` under every action; all eight classes of
/// `C2xC2` by `C2`; both classes of `C2` acting on `C4` by inversion; `A4`;
/// dicyclic groups of orders 24 and 48; a few split products; and the
/// degenerate cases of trivial `N` and trivial `Q`.
pub fn default_catalog(budget: &Budget) -> Result<Catalog> {
    let mut cat = Catalog::default();
    for n in 3..=12 {
        cat.entries.push(CatalogEntry { name: format!("D{n}"), spec: EntrySpec::Dihedral { n }, fault: None });
    }
    let c = |n: usize| -> Result<Arc<FiniteGroup>> { Ok(Arc::new(cyclic(n)?)) };
    let v4 = Arc::new(direct_product(&cyclic(2)?, &cyclic(2)?)?);

    let mut classes = |q: &Arc<FiniteGroup>, n: &Arc<FiniteGroup>, only_trivial: bool| -> Result<()> {
        for (k, action) in all_actions(q, n, budget)?.into_iter().enumerate() {
            if only_trivial && k > 0 {
                break;
            }
            let action = Arc::new(action);
            for f in h2_linear(&action, budget)?.class_reps()? {
                let name = format!(
                    "{} by {}, action {k}, class {:?}",
                    named(q),
                    named(n),
                    h2_linear(&action, budget)?.reduce(&f)?
                );
                cat.push_cocycle(name, &f);
            }
        }
        Ok(())
    };
    for q in [2, 3, 4] {
        for n in [2, 3] {
            classes(&c(q)?, &c(n)?, false)?;
        }
    }
    classes(&v4, &c(2)?, true)?;

    // C2 on C4 by inversion: D4 and the quaternion group
    let c4 = c(4)?;
    let inversion = |q: &Arc<FiniteGroup>, m: &Arc<FiniteGroup>| -> Result<Arc<ActionTable>> {
        let m2 = m.clone();
        Ok(Arc::new(ActionTable::from_fn(q.clone(), m.clone(), move |a, x| {
            if a == 0 { x } else { m2.inv(x) }
        })?))
    };
    let inv4 = inversion(&c(2)?, &c4)?;
    for f in h2_linear(&inv4, budget)?.class_reps()? {
        let name = format!("C2 by C4, inversion, class {:?}", h2_linear(&inv4, budget)?.reduce(&f)?);
        cat.push_cocycle(name, &f);
    }

    // A4 = V4 ⋊ C3
    let a4 = all_actions(&c(3)?, &v4, budget)?
        .into_iter()
        .nth(1)
        .ok_or_else(|| Error::Precondition("no faithful action of C3 on C2xC2".into()))?;
    cat.push_extension("A4", &AbelianExtension::semidirect(&a4)?);

    // dicyclic of order 4m: C_{2m} by C2, inversion, f(x, x) = m
    for m in [6, 12] {
        let action = inversion(&c(2)?, &c(2 * m)?)?;
        let f = TwoCocycle::from_fn(action, |x, y| if x == 1 && y == 1 { m } else { 0 })?;
        cat.push_cocycle(format!("Dic{}", 4 * m), &f);
    }

    // split products
    cat.push_extension("C4 x C2", &AbelianExtension::semidirect(&ActionTable::trivial(&c(2)?, &c4))?);
    for (k, action) in all_actions(&v4, &c(3)?, budget)?.into_iter().take(2).enumerate() {
        cat.push_extension(format!("C3 ⋊ (C2xC2), action {k}"), &AbelianExtension::semidirect(&action)?);
    }

    // degenerate ends
    cat.push_extension("trivial N", &AbelianExtension::semidirect(&ActionTable::trivial(&c(3)?, &c(1)?))?);
    cat.push_extension("trivial Q", &AbelianExtension::semidirect(&ActionTable::trivial(&c(1)?, &c(3)?))?);
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_catalog() {
        let s = sweep(&Catalog::default(), true, &Budget::default());
        assert_eq!(s.total, 0);
        assert!(s.all_passed());
    }

    #[test]
    fn catalog_round_trips() {
        let cat = default_catalog(&Budget::default()).unwrap();
        let back = Catalog::from_json_str(&cat.to_json_string().unwrap()).unwrap();
        assert_eq!(back.entries.len(), cat.entries.len());
        let ext = back.entries.last().unwrap().spec.extension().unwrap().unwrap();
        assert_eq!(ext.q.order(), 1);
    }

    #[test]
    fn corrupted_boxtimes_is_caught() {
        let entry = CatalogEntry {
            name: "D3 faulty".into(),
            spec: EntrySpec::Dihedral { n: 3 },
            fault: Some(Fault { a: 4, b: 5, value: 0 }),
        };
        let r = verify_entry(&entry, true, &Budget::default());
        assert!(!r.passed);
        assert!(r.witness.is_some(), "{:?}", r.error);
    }
}
