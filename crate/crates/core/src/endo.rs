//! Endomorphism sets of an abelian extension `0 → N → G → Q → 1`:
//!
//! * `End_Q(N)`, the `Q`-equivariant endomorphisms of `N` ([`QEndos`]);
//! * `End^Q_N(G)`, endomorphisms of `G` preserving `N` and inducing the identity
//!   on `Q`, with the ring structure `⊞`/`⊠` ([`EndoQN`]);
//! * `End^N(G)`, endomorphisms fixing `N` pointwise ([`CentralizingEndos`]);
//! * `End^N(Q)`, endomorphisms of `Q` preserving the action ([`ActionPreservingEndos`]).
//!
//! Every set is built from crossed homomorphisms and each member is then
//! re-validated as a homomorphism against its defining condition.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{self, Budget};
use crate::cocycles::{enumerate_z1, CocycleRing, CrossedHom};
use crate::error::{Error, Result};
use crate::extension::{AbelianExtension, CentralizerData};
use crate::group::{all_homomorphisms, ActionTable, FiniteGroup, GroupHom};
use crate::report::Check;
use crate::ring::FiniteRing;

fn index_map(maps: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    maps.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect()
}

fn is_bijective(map: &[usize]) -> bool {
    let mut hit = vec![false; map.len()];
    for &y in map {
        if y >= map.len() || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    true
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

fn hom_failure(group: &FiniteGroup, map: &[usize]) -> Option<String> {
    for a in group.elements() {
        for b in group.elements() {
            if map[group.mul(a, b)] != group.mul(map[a], map[b]) {
                return Some(format!("not a homomorphism at ({a}, {b})"));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// End_Q(N)
// ---------------------------------------------------------------------------

/// `End_Q(N)` as a unital ring under `+` and composition, `mul(a, b) = a ∘ b`.
#[derive(Clone, Debug)]
pub struct QEndos {
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    ring: Arc<FiniteRing>,
}

impl QEndos {
    /// Every endomorphism of `N`, filtered by `Q`-equivariance.
    pub fn new(action: &ActionTable, budget: &Budget) -> Result<Self> {
        let n = &action.module;
        if !n.is_abelian() {
            return Err(Error::NotAbelian("module".into()));
        }
        let mut maps: Vec<Vec<usize>> = all_homomorphisms(n, n, budget)?
            .into_iter()
            .map(|h| h.map().to_vec())
            .filter(|b| {
                action
                    .actor
                    .elements()
                    .all(|x| n.elements().all(|a| b[action.apply(x, a)] == action.apply(x, b[a])))
            })
            .collect();
        maps.sort_unstable();
        let index = index_map(&maps);
        let ring = FiniteRing::from_fn(
            maps.len(),
            |a, b| index[&maps[a].iter().zip(&maps[b]).map(|(&x, &y)| n.mul(x, y)).collect::<Vec<_>>()],
            |a, b| index[&compose(&maps[a], &maps[b])],
            budget,
        )?;
        Ok(QEndos { maps, index, ring: Arc::new(ring) })
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn identity(&self) -> usize {
        self.ring.one().expect("End_Q(N) contains the identity")
    }

    /// Indices of the bijective members, `Aut_Q(N)`.
    pub fn automorphisms(&self) -> Vec<usize> {
        (0..self.maps.len()).filter(|&k| is_bijective(&self.maps[k])).collect()
    }
}

// ---------------------------------------------------------------------------
// End^Q_N(G)
// ---------------------------------------------------------------------------

/// `End^Q_N(G)` in bijection with `Z¹(G, N)` by `α(x) = i(ψ(x)) · x`; member `k`
/// corresponds to cocycle `k` of [`EndoQN::cocycles`]. The ring has zero `id_G`,
/// addition `⊞` and multiplication `mul(a, b) = a ⊠ b`.
#[derive(Clone, Debug)]
pub struct EndoQN {
    ext: AbelianExtension,
    z1: CocycleRing,
    endos: Vec<Vec<usize>>,
    gens: Vec<usize>,
    /// Generator images to member index.
    index: HashMap<Vec<usize>, usize>,
    ring: Arc<FiniteRing>,
}

impl EndoQN {
    pub fn new(ext: &AbelianExtension, budget: &Budget) -> Result<Self> {
        let z1 = CocycleRing::new(ext, budget)?;
        let g = &ext.g;
        let endos: Vec<Vec<usize>> = z1
            .carrier()
            .par_iter()
            .map(|psi| {
                let alpha: Vec<usize> = g.elements().map(|x| g.mul(ext.i.apply(psi.value(x)), x)).collect();
                if let Some(why) = hom_failure(g, &alpha) {
                    return Err(Error::InvalidHom(why));
                }
                if g.elements().any(|x| ext.p.apply(alpha[x]) != ext.p.apply(x)) {
                    return Err(Error::InvalidHom("does not induce the identity on Q".into()));
                }
                if ext.i.map().iter().any(|&a| !ext.in_kernel(alpha[a])) {
                    return Err(Error::InvalidHom("does not preserve N".into()));
                }
                // and back: α(x) x⁻¹ recovers ψ
                if g.elements().any(|x| ext.preimage(g.div(alpha[x], x)) != Some(psi.value(x))) {
                    return Err(Error::InvalidHom("cocycle is not recovered from the endomorphism".into()));
                }
                Ok(alpha)
            })
            .collect::<Result<_>>()?;
        // Members are keyed by their generator images. Results of ⊞ and ⊠ are
        // evaluated on generators only; for small carriers the full maps are
        // compared as well.
        let gens = g.generators().to_vec();
        let key = |m: &[usize]| -> Vec<usize> { gens.iter().map(|&x| m[x]).collect() };
        let index: HashMap<Vec<usize>, usize> = endos.iter().enumerate().map(|(k, m)| (key(m), k)).collect();
        if index.len() != endos.len() {
            return Err(Error::InvalidHom("distinct cocycles gave the same endomorphism".into()));
        }
        let full = endos.len() <= budget.axiom_scan;
        let table = |op: &dyn Fn(&[usize], &[usize], usize) -> usize| -> Result<Vec<Vec<usize>>> {
            (0..endos.len())
                .map(|a| {
                    (0..endos.len())
                        .map(|b| {
                            let k: Vec<usize> = gens.iter().map(|&x| op(&endos[a], &endos[b], x)).collect();
                            let hit = index.get(&k).copied().filter(|&c| {
                                !full || g.elements().all(|x| endos[c][x] == op(&endos[a], &endos[b], x))
                            });
                            hit.ok_or_else(|| Error::InvalidHom(format!("result for ({a}, {b}) left End^Q_N(G)")))
                        })
                        .collect()
                })
                .collect()
        };
        let add = table(&|a, b, x| boxplus_at(g, a, b, x))?;
        let mul = table(&|a, b, x| boxtimes_at(g, a, b, x))?;
        let ring = Arc::new(FiniteRing::from_tables_unverified(&add, &mul)?);
        Ok(EndoQN { ext: ext.clone(), z1, endos, gens, index, ring })
    }

    pub fn ext(&self) -> &AbelianExtension {
        &self.ext
    }

    pub fn cocycles(&self) -> &CocycleRing {
        &self.z1
    }

    pub fn len(&self) -> usize {
        self.endos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endos.is_empty()
    }

    pub fn endos(&self) -> &[Vec<usize>] {
        &self.endos
    }

    pub fn endo(&self, k: usize) -> GroupHom {
        GroupHom::new_unchecked(self.ext.g.clone(), self.ext.g.clone(), self.endos[k].clone())
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        if map.len() != self.ext.g.order() {
            return None;
        }
        let key: Vec<usize> = self.gens.iter().map(|&x| map[x]).collect();
        self.index.get(&key).copied().filter(|&k| self.endos[k] == map)
    }

    /// Index of `id_G`, the zero of the ring.
    pub fn identity(&self) -> usize {
        self.ring.zero()
    }

    /// `(⊞, ⊠)` tables; axioms are not checked at construction.
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    fn member(&self, h: &GroupHom) -> Result<usize> {
        if h.source.as_ref() != self.ext.g.as_ref() || h.target.as_ref() != self.ext.g.as_ref() {
            return Err(Error::Mismatch);
        }
        self.index_of(h.map())
            .ok_or_else(|| Error::Precondition("endomorphism is not in End^Q_N(G) of this extension".into()))
    }

    /// `α1 ⊞ α2`.
    pub fn boxplus(&self, a1: &GroupHom, a2: &GroupHom) -> Result<GroupHom> {
        let k = self.ring.add(self.member(a1)?, self.member(a2)?);
        Ok(self.endo(k))
    }

    /// `α2 ⊠ α1`.
    pub fn boxtimes(&self, a2: &GroupHom, a1: &GroupHom) -> Result<GroupHom> {
        let k = self.ring.mul(self.member(a2)?, self.member(a1)?);
        Ok(self.endo(k))
    }

    /// The `⊞`-inverse `x ↦ x · α(x)⁻¹ · x`.
    pub fn boxneg(&self, a: usize) -> Result<usize> {
        let g = &self.ext.g;
        let m: Vec<usize> = g
            .elements()
            .map(|x| g.mul(g.mul(x, g.inv(self.endos[a][x])), x))
            .collect();
        self.index_of(&m)
            .ok_or_else(|| Error::InvalidHom("negative left End^Q_N(G)".into()))
    }

    /// `a ∘ b`, if it is a member (it always is).
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&compose(&self.endos[a], &self.endos[b]))
    }

    /// `ρ(α) = α|_N` as a map on `N`.
    pub fn rho(&self, a: usize) -> Vec<usize> {
        let e = &self.ext;
        e.n.elements()
            .map(|x| e.preimage(self.endos[a][e.i.apply(x)]).expect("α preserves N"))
            .collect()
    }

    /// `ρ(α) − id_N`, which equals `Res(ψ)` for the cocycle `ψ` of `α`.
    pub fn rho0(&self, a: usize) -> Vec<usize> {
        let n = &self.ext.n;
        self.rho(a).iter().enumerate().map(|(x, &b)| n.div(b, x)).collect()
    }

    /// Members with `α ∘ i = i`: the ideal `End^{N,Q}(G)`.
    pub fn ideal(&self) -> Vec<usize> {
        let e = &self.ext;
        (0..self.len())
            .filter(|&k| e.i.map().iter().all(|&x| self.endos[k][x] == x))
            .collect()
    }

    /// Bijective members: `Aut^Q_N(G)`.
    pub fn automorphisms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| is_bijective(&self.endos[k])).collect()
    }

    /// Overwrites entry `(a, b)` of the `⊠` table. Exists to exercise the
    /// verifier on a deliberately broken ring.
    pub fn corrupt_boxtimes(&mut self, a: usize, b: usize, value: usize) -> Result<()> {
        let n = self.len();
        if a >= n || b >= n || value >= n {
            return Err(Error::OutOfRange(format!("fault ({a}, {b}) = {value}")));
        }
        let mut json = self.ring.to_json();
        json.mul_table[a][b] = value;
        self.ring = Arc::new(FiniteRing::from_tables_unverified(&json.add_table, &json.mul_table)?);
        Ok(())
    }

    pub fn report(&self) -> EndoReport {
        let json = self.ring.to_json();
        EndoReport {
            carrier_size: self.len(),
            boxplus_table: json.add_table,
            boxtimes_table: json.mul_table,
            ideal: self.ideal(),
            rho_images: (0..self.len()).map(|a| self.rho(a)).collect(),
        }
    }

    /// The ideal is absorbing, squares to the zero `id_G`, and `⊞` agrees with
    /// composition on it.
    pub fn ideal_check(&self) -> Vec<Check> {
        let ideal = self.ideal();
        let r = &self.ring;
        let mut member = vec![false; self.len()];
        for &a in &ideal {
            member[a] = true;
        }
        let absorb = ideal.iter().find_map(|&a| {
            (0..self.len()).find_map(|x| {
                if !member[r.mul(x, a)] {
                    Some(format!("{x} ⊠ {a} leaves the ideal"))
                } else if !member[r.mul(a, x)] {
                    Some(format!("{a} ⊠ {x} leaves the ideal"))
                } else {
                    None
                }
            })
        });
        let square = ideal.iter().find_map(|&a| {
            ideal
                .iter()
                .find(|&&b| r.mul(a, b) != r.zero())
                .map(|&b| format!("{a} ⊠ {b} is not id"))
        });
        let additive = ideal.iter().find_map(|&a| {
            ideal
                .iter()
                .find(|&&b| Some(r.add(a, b)) != self.compose(a, b))
                .map(|&b| format!("{a} ⊞ {b} differs from {a} ∘ {b}"))
        });
        vec![
            Check::from_witness("ideal absorbs ⊠ on both sides", format!("|ideal| = {}", ideal.len()), absorb),
            Check::from_witness("ideal squares to id", "", square),
            Check::from_witness("⊞ equals composition on the ideal", "", additive),
        ]
    }
}

/// Serialized form of [`EndoQN`]; tables are in index form.
#[derive(Clone, Debug, Serialize)]
pub struct EndoReport {
    pub carrier_size: usize,
    pub boxplus_table: Vec<Vec<usize>>,
    pub boxtimes_table: Vec<Vec<usize>>,
    pub ideal: Vec<usize>,
    pub rho_images: Vec<Vec<usize>>,
}

/// `(α1 ⊞ α2)(x) = α1(x) · x⁻¹ · α2(x)`.
pub fn boxplus_at(g: &FiniteGroup, a1: &[usize], a2: &[usize], x: usize) -> usize {
    g.mul(g.mul(a1[x], g.inv(x)), a2[x])
}

/// `(α2 ⊠ α1)(x) = α2(α1(x)) · α1(x)⁻¹ · x · α2(x)⁻¹ · x`.
pub fn boxtimes_at(g: &FiniteGroup, a2: &[usize], a1: &[usize], x: usize) -> usize {
    let t = g.mul(a2[a1[x]], g.inv(a1[x]));
    let t = g.mul(g.mul(t, x), g.inv(a2[x]));
    g.mul(t, x)
}

pub fn boxplus_maps(g: &FiniteGroup, a1: &[usize], a2: &[usize]) -> Vec<usize> {
    g.elements().map(|x| boxplus_at(g, a1, a2, x)).collect()
}

pub fn boxtimes_maps(g: &FiniteGroup, a2: &[usize], a1: &[usize]) -> Vec<usize> {
    g.elements().map(|x| boxtimes_at(g, a2, a1, x)).collect()
}

/// Oracle: all endomorphisms of `G` by generator images, filtered by
/// `α(N) ⊆ N` and `p ∘ α = p`. Sorted by map.
pub fn endo_qn_bruteforce(ext: &AbelianExtension, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = all_homomorphisms(&ext.g, &ext.g, budget)?
        .into_iter()
        .map(|h| h.map().to_vec())
        .filter(|a| {
            ext.g.elements().all(|x| ext.p.apply(a[x]) == ext.p.apply(x))
                && ext.i.map().iter().all(|&x| ext.in_kernel(a[x]))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

// ---------------------------------------------------------------------------
// End^N(G) and End^N(Q)
// ---------------------------------------------------------------------------

/// `End^N(G)` in bijection with `Z¹(Q, C_G(N))` by `α(x) = j(ψ(p(x))) · x`.
#[derive(Clone, Debug)]
pub struct CentralizingEndos {
    cocycles: Vec<CrossedHom>,
    endos: Vec<Vec<usize>>,
    induced: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl CentralizingEndos {
    pub fn new(ext: &AbelianExtension, cd: &CentralizerData, budget: &Budget) -> Result<Self> {
        let cocycles = enumerate_z1(&cd.cgn_action, budget)?;
        budget::check("|Z1(Q, C_G(N))|", cocycles.len() as u128, budget.z1_cap as u128)?;
        let (g, q) = (&ext.g, &ext.q);
        let j = &cd.cgn.embedding;
        let mut endos = Vec::with_capacity(cocycles.len());
        let mut induced = Vec::with_capacity(cocycles.len());
        for psi in &cocycles {
            let alpha: Vec<usize> = g
                .elements()
                .map(|x| g.mul(j.apply(psi.value(ext.p.apply(x))), x))
                .collect();
            if let Some(why) = hom_failure(g, &alpha) {
                return Err(Error::InvalidHom(why));
            }
            if ext.i.map().iter().any(|&x| alpha[x] != x) {
                return Err(Error::InvalidHom("does not fix N pointwise".into()));
            }
            let bar: Vec<usize> = q.elements().map(|y| ext.p.apply(alpha[ext.section(y)])).collect();
            if g.elements().any(|x| ext.p.apply(alpha[x]) != bar[ext.p.apply(x)]) {
                return Err(Error::InvalidHom("induced map on Q is not well defined".into()));
            }
            endos.push(alpha);
            induced.push(bar);
        }
        let index = index_map(&endos);
        if index.len() != endos.len() {
            return Err(Error::InvalidHom("distinct cocycles gave the same endomorphism".into()));
        }
        Ok(CentralizingEndos { cocycles, endos, induced, index })
    }

    pub fn cocycles(&self) -> &[CrossedHom] {
        &self.cocycles
    }

    pub fn endos(&self) -> &[Vec<usize>] {
        &self.endos
    }

    pub fn len(&self) -> usize {
        self.endos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endos.is_empty()
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn identity(&self) -> usize {
        let id: Vec<usize> = (0..self.endos[0].len()).collect();
        self.index_of(&id).expect("identity is a member")
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&compose(&self.endos[a], &self.endos[b]))
    }

    /// The endomorphism of `Q` induced by member `a`.
    pub fn induced(&self, a: usize) -> &[usize] {
        &self.induced[a]
    }

    pub fn automorphisms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| is_bijective(&self.endos[k])).collect()
    }
}

/// Oracle for `End^N(G)`: endomorphisms of `G` fixing `i(N)` pointwise.
pub fn endo_n_g_bruteforce(ext: &AbelianExtension, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = all_homomorphisms(&ext.g, &ext.g, budget)?
        .into_iter()
        .map(|h| h.map().to_vec())
        .filter(|a| ext.i.map().iter().all(|&x| a[x] == x))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `End^N(Q)` in bijection with `Z¹(Q, Q̄)` by `φ(x) = e(ψ(x)) · x`.
#[derive(Clone, Debug)]
pub struct ActionPreservingEndos {
    cocycles: Vec<CrossedHom>,
    endos: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ActionPreservingEndos {
    pub fn new(ext: &AbelianExtension, cd: &CentralizerData, budget: &Budget) -> Result<Self> {
        let cocycles = enumerate_z1(&cd.qbar_action, budget)?;
        budget::check("|Z1(Q, Q̄)|", cocycles.len() as u128, budget.z1_cap as u128)?;
        let q = &ext.q;
        let e = &cd.qbar.embedding;
        let mut endos = Vec::with_capacity(cocycles.len());
        for psi in &cocycles {
            let phi: Vec<usize> = q.elements().map(|x| q.mul(e.apply(psi.value(x)), x)).collect();
            if let Some(why) = hom_failure(q, &phi) {
                return Err(Error::InvalidHom(why));
            }
            if !preserves_action(&ext.action, &phi) {
                return Err(Error::InvalidHom("does not preserve the action on N".into()));
            }
            endos.push(phi);
        }
        let index = index_map(&endos);
        if index.len() != endos.len() {
            return Err(Error::InvalidHom("distinct cocycles gave the same endomorphism".into()));
        }
        Ok(ActionPreservingEndos { cocycles, endos, index })
    }

    pub fn cocycles(&self) -> &[CrossedHom] {
        &self.cocycles
    }

    pub fn endos(&self) -> &[Vec<usize>] {
        &self.endos
    }

    pub fn len(&self) -> usize {
        self.endos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endos.is_empty()
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn identity(&self) -> usize {
        let id: Vec<usize> = (0..self.endos[0].len()).collect();
        self.index_of(&id).expect("identity is a member")
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&compose(&self.endos[a], &self.endos[b]))
    }

    pub fn automorphisms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| is_bijective(&self.endos[k])).collect()
    }
}

fn preserves_action(action: &ActionTable, phi: &[usize]) -> bool {
    action
        .actor
        .elements()
        .all(|x| action.module.elements().all(|n| action.apply(x, n) == action.apply(phi[x], n)))
}

/// Oracle for `End^N(Q)`: endomorphisms of `Q` with `x·n = φ(x)·n`.
pub fn endo_n_q_bruteforce(ext: &AbelianExtension, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = all_homomorphisms(&ext.q, &ext.q, budget)?
        .into_iter()
        .map(|h| h.map().to_vec())
        .filter(|phi| preserves_action(&ext.action, phi))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `ρ̄`: member of `End^N(G)` to the induced member of `End^N(Q)`.
pub fn rho_bar(g_endos: &CentralizingEndos, q_endos: &ActionPreservingEndos, a: usize) -> Result<usize> {
    q_endos
        .index_of(g_endos.induced(a))
        .ok_or_else(|| Error::InvalidHom(format!("induced map of {a} does not preserve the action")))
}

/// `ī`: member of `End^{N,Q}(G)` (an index into `qn`) to its index in `End^N(G)`.
pub fn i_bar(qn: &EndoQN, g_endos: &CentralizingEndos, a: usize) -> Result<usize> {
    g_endos
        .index_of(&qn.endos()[a])
        .ok_or_else(|| Error::InvalidHom(format!("{a} does not fix N pointwise")))
}
