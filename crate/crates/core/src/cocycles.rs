//! Crossed homomorphisms `Z¹(G, M)` and the ring `(Z¹(G, N), +, ⋄)`.
//!
//! The module `M` may be nonabelian (it is `C_G(N)` or `Q̄` in the central
//! extension); sums and negatives are only offered when it is abelian.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::extension::AbelianExtension;
use crate::group::{ActionTable, GroupHom};
use crate::ring::FiniteRing;

/// `φ: G → M` with `φ(xy) = φ(x) · (x·φ(y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedHom {
    action: Arc<ActionTable>,
    values: Vec<usize>,
}

impl CrossedHom {
    pub fn new(action: Arc<ActionTable>, values: Vec<usize>) -> Result<Self> {
        if let Some(why) = law_failure(&action, &values) {
            return Err(Error::InvalidCocycle(why));
        }
        Ok(CrossedHom { action, values })
    }

    pub(crate) fn new_unchecked(action: Arc<ActionTable>, values: Vec<usize>) -> Self {
        CrossedHom { action, values }
    }

    pub fn zero(action: &Arc<ActionTable>) -> Self {
        CrossedHom::new_unchecked(action.clone(), vec![0; action.actor.order()])
    }

    pub fn action(&self) -> &Arc<ActionTable> {
        &self.action
    }

    #[inline]
    pub fn value(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn compatible(&self, other: &CrossedHom) -> Result<()> {
        if !(Arc::ptr_eq(&self.action, &other.action) || self.action == other.action) {
            return Err(Error::Mismatch);
        }
        if !self.action.module.is_abelian() {
            return Err(Error::NotAbelian("crossed homomorphism values".into()));
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &CrossedHom) -> Result<CrossedHom> {
        self.compatible(other)?;
        let m = &self.action.module;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| m.mul(a, b)).collect();
        Ok(CrossedHom::new_unchecked(self.action.clone(), values))
    }

    pub fn neg(&self) -> Result<CrossedHom> {
        self.compatible(self)?;
        let m = &self.action.module;
        Ok(CrossedHom::new_unchecked(
            self.action.clone(),
            self.values.iter().map(|&a| m.inv(a)).collect(),
        ))
    }

    /// `(φ ⋄ ψ)(x) = φ(i(ψ(x)))` for `φ, ψ ∈ Z¹(G, N)` and `i: N → G`.
    pub fn diamond(&self, other: &CrossedHom, i: &GroupHom) -> Result<CrossedHom> {
        self.compatible(other)?;
        if i.source.as_ref() != self.action.module.as_ref() || i.target.as_ref() != self.action.actor.as_ref() {
            return Err(Error::Precondition("module is not embedded in the acting group".into()));
        }
        let values = other.values.iter().map(|&n| self.values[i.apply(n)]).collect();
        Ok(CrossedHom::new_unchecked(self.action.clone(), values))
    }
}

/// First violation of the crossed-homomorphism law, if any.
pub fn law_failure(action: &ActionTable, values: &[usize]) -> Option<String> {
    let (g, m) = (&action.actor, &action.module);
    if values.len() != g.order() {
        return Some(format!("{} values for a group of order {}", values.len(), g.order()));
    }
    if let Some(v) = values.iter().find(|&&v| v >= m.order()) {
        return Some(format!("value {v} out of range"));
    }
    for x in g.elements() {
        for y in g.elements() {
            if values[g.mul(x, y)] != m.mul(values[x], action.apply(x, values[y])) {
                return Some(format!("law fails at ({x}, {y})"));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z1Strategy {
    /// Closure from generator images, falling back to the full scan.
    Auto,
    Closure,
    FullScan,
}

/// All crossed homomorphisms, sorted by value array (the zero map first).
pub fn enumerate_z1(action: &Arc<ActionTable>, budget: &Budget) -> Result<Vec<CrossedHom>> {
    enumerate_z1_with(action, Z1Strategy::Auto, budget)
}

pub fn enumerate_z1_with(
    action: &Arc<ActionTable>,
    strategy: Z1Strategy,
    budget: &Budget,
) -> Result<Vec<CrossedHom>> {
    let (g, m) = (&action.actor, &action.module);
    let gens: Vec<usize> = g.generators().iter().copied().filter(|&x| x != 0).collect();
    let closure_cost = budget::pow_sat(m.order(), gens.len());
    let scan_cost = budget::pow_sat(m.order(), g.order());
    let use_closure = match strategy {
        Z1Strategy::Closure => {
            budget::check("Z1 generator-image tuples", closure_cost, budget.candidates)?;
            true
        }
        Z1Strategy::FullScan => {
            budget::check("Z1 full scan", scan_cost, budget.candidates)?;
            false
        }
        Z1Strategy::Auto => {
            if closure_cost <= budget.candidates {
                true
            } else {
                budget::check("Z1 full scan", scan_cost, budget.candidates)?;
                false
            }
        }
    };
    let mut values = if use_closure {
        closure(action, &gens, closure_cost as u64)
    } else {
        full_scan(action)
    };
    values.sort_unstable();
    Ok(values.into_iter().map(|v| CrossedHom::new_unchecked(action.clone(), v)).collect())
}

fn closure(action: &ActionTable, gens: &[usize], tuples: u64) -> Vec<Vec<usize>> {
    let (g, m) = (&action.actor, &action.module);
    let base = m.order() as u64;
    (0..tuples)
        .into_par_iter()
        .filter_map(|code| {
            let mut images = Vec::with_capacity(gens.len());
            let mut c = code;
            for _ in gens {
                images.push((c % base) as usize);
                c /= base;
            }
            let mut vals = vec![usize::MAX; g.order()];
            vals[0] = 0;
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for (&s, &t) in gens.iter().zip(&images) {
                    let y = g.mul(x, s);
                    let v = m.mul(vals[x], action.apply(x, t));
                    if vals[y] == usize::MAX {
                        vals[y] = v;
                        queue.push_back(y);
                    } else if vals[y] != v {
                        return None;
                    }
                }
            }
            Some(vals)
        })
        .collect()
}

fn full_scan(action: &ActionTable) -> Vec<Vec<usize>> {
    let (g, m) = (&action.actor, &action.module);
    let (ng, nm) = (g.order(), m.order());
    if ng == 1 {
        return vec![vec![0]];
    }
    // φ(e) = 0 is forced; the first free value is scanned in parallel
    (0..nm)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut vals = vec![0usize; ng];
            vals[1] = first;
            loop {
                if law_failure(action, &vals).is_none() {
                    out.push(vals.clone());
                }
                if !crate::group::advance(&mut vals[2..], nm) {
                    break;
                }
            }
            out
        })
        .collect()
}

/// `Res(φ) = φ ∘ i`, checked to be additive and `Q`-equivariant.
pub fn restrict_to_module(ext: &AbelianExtension, phi: &CrossedHom) -> Result<Vec<usize>> {
    if phi.action().as_ref() != ext.g_action.as_ref() {
        return Err(Error::Mismatch);
    }
    let n = &ext.n;
    let beta: Vec<usize> = n.elements().map(|a| phi.value(ext.i.apply(a))).collect();
    for a in n.elements() {
        for b in n.elements() {
            if beta[n.mul(a, b)] != n.mul(beta[a], beta[b]) {
                return Err(Error::InvalidHom(format!("restriction is not additive at ({a}, {b})")));
            }
        }
        for x in ext.q.elements() {
            if beta[ext.action.apply(x, a)] != ext.action.apply(x, beta[a]) {
                return Err(Error::InvalidHom(format!("restriction is not Q-equivariant at ({x}, {a})")));
            }
        }
    }
    Ok(beta)
}

/// `Inf(φ) = φ ∘ p`.
pub fn inflate(ext: &AbelianExtension, phi: &CrossedHom) -> Result<CrossedHom> {
    if phi.action().as_ref() != ext.action.as_ref() {
        return Err(Error::InvalidAction("cocycle is not over the extension's Q-action".into()));
    }
    let values = ext.g.elements().map(|x| phi.value(ext.p.apply(x))).collect();
    CrossedHom::new(ext.g_action.clone(), values)
}

/// `Z¹(G, N)` with pointwise addition and `⋄`, indexed in enumeration order.
/// Above `budget.axiom_scan` members the tables are evaluated on generators only.
#[derive(Clone, Debug)]
pub struct CocycleRing {
    carrier: Vec<CrossedHom>,
    index: HashMap<Vec<usize>, usize>,
    ring: Arc<FiniteRing>,
}

impl CocycleRing {
    pub fn new(ext: &AbelianExtension, budget: &Budget) -> Result<Self> {
        let carrier = enumerate_z1(&ext.g_action, budget)?;
        budget::check("|Z1(G,N)|", carrier.len() as u128, budget.z1_cap as u128)?;
        let index: HashMap<Vec<usize>, usize> =
            carrier.iter().enumerate().map(|(k, c)| (c.values.clone(), k)).collect();
        let ring = if carrier.len() <= budget.axiom_scan {
            let lookup = |c: CrossedHom| index[&c.values];
            FiniteRing::from_fn_unverified(
                carrier.len(),
                |a, b| lookup(carrier[a].add(&carrier[b]).expect("same action")),
                |a, b| lookup(carrier[a].diamond(&carrier[b], &ext.i).expect("same action")),
            )?
        } else {
            // a crossed homomorphism is determined by its values on generators
            let gens = ext.g.generators();
            let by_gens: HashMap<Vec<usize>, usize> = carrier
                .iter()
                .enumerate()
                .map(|(k, c)| (gens.iter().map(|&x| c.values[x]).collect(), k))
                .collect();
            let m = &ext.n;
            let v = |k: usize, x: usize| carrier[k].values[x];
            FiniteRing::from_fn_unverified(
                carrier.len(),
                |a, b| by_gens[&gens.iter().map(|&x| m.mul(v(a, x), v(b, x))).collect::<Vec<_>>()],
                |a, b| by_gens[&gens.iter().map(|&x| v(a, ext.i.apply(v(b, x)))).collect::<Vec<_>>()],
            )?
        };
        Ok(CocycleRing { carrier, index, ring: Arc::new(ring) })
    }

    pub fn carrier(&self) -> &[CrossedHom] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, phi: &CrossedHom) -> Option<usize> {
        self.index.get(phi.values()).copied()
    }

    pub fn index_of_values(&self, values: &[usize]) -> Option<usize> {
        self.index.get(values).copied()
    }

    /// The ring tables (`+` and `⋄`); axioms are not checked at construction.
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::tests::{c4_over_c2, dihedral_ext};
    use crate::group::{cyclic, FiniteGroup};

    fn inversion(n: usize) -> Arc<ActionTable> {
        let q = Arc::new(cyclic(2).unwrap());
        let m: Arc<FiniteGroup> = Arc::new(cyclic(n).unwrap());
        Arc::new(ActionTable::from_fn(q, m.clone(), |a, x| if a == 0 { x } else { m.inv(x) }).unwrap())
    }

    #[test]
    fn z1_of_c2_on_cn() {
        let b = Budget::default();
        let z = enumerate_z1(&inversion(3), &b).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z[0].is_zero());
        let scan = enumerate_z1_with(&inversion(3), Z1Strategy::FullScan, &b).unwrap();
        assert_eq!(z, scan);
        for n in [4, 5, 12] {
            assert_eq!(enumerate_z1(&inversion(n), &b).unwrap().len(), n);
        }
    }

    #[test]
    fn trivial_group_has_only_zero() {
        let c1 = Arc::new(cyclic(1).unwrap());
        let c5 = Arc::new(cyclic(5).unwrap());
        let act = Arc::new(ActionTable::trivial(&c1, &c5));
        let z = enumerate_z1(&act, &Budget::default()).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z[0].is_zero());
    }

    #[test]
    fn sums_in_dihedral_ring_are_enumerated_elements() {
        let e = dihedral_ext(3);
        let r = CocycleRing::new(&e, &Budget::default()).unwrap();
        assert_eq!(r.len(), 9);
        for a in r.carrier() {
            assert_eq!(r.index_of(&a.add(&a.neg().unwrap()).unwrap()), Some(0));
            for b in r.carrier() {
                let s = a.add(b).unwrap();
                assert!(law_failure(s.action(), s.values()).is_none());
                assert!(r.index_of(&s).is_some());
            }
        }
        r.ring().check_axioms().unwrap();
    }

    #[test]
    fn restriction_and_inflation() {
        let e = dihedral_ext(4);
        let b = Budget::default();
        let zq = enumerate_z1(&e.action, &b).unwrap();
        for phi in &zq {
            let inf = inflate(&e, phi).unwrap();
            let res = restrict_to_module(&e, &inf).unwrap();
            assert!(res.iter().all(|&v| v == 0));
        }
        let c4 = c4_over_c2();
        for phi in enumerate_z1(&c4.g_action, &b).unwrap() {
            assert!(restrict_to_module(&c4, &phi).unwrap().iter().all(|&v| v == 0));
        }
    }
}
