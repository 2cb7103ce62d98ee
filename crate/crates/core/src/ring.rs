//! Finite, possibly non-unital rings stored as addition and multiplication tables.
//!
//! Besides the axioms this module provides the circle operation
//! `r ∗ s = r + s + rs`, the group of quasi-regular elements, square-zero ideals,
//! ring homomorphisms and the semidirect product `S ⋊ R` of a ring with a bimodule.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::report::Check;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: Option<usize>,
    neg: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

/// A failed ring law together with the elements that break it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

impl From<AxiomViolation> for Error {
    fn from(v: AxiomViolation) -> Self {
        Error::InvalidRing(v.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub order: usize,
    pub add_table: Vec<Vec<usize>>,
    pub mul_table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
}

impl FiniteRing {
    /// Builds a ring from functions and verifies every axiom exhaustively.
    pub fn from_fn(
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        budget: &Budget,
    ) -> Result<Self> {
        let ring = Self::from_fn_unverified(order, add, mul)?;
        ring.verify(budget)?;
        Ok(ring)
    }

    /// Builds the tables and locates zero, negatives and a unit, without
    /// checking associativity or distributivity. Use [`FiniteRing::check_axioms`]
    /// afterwards; this exists so that corrupted inputs can be reported with a witness.
    pub fn from_fn_unverified(
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidRing("empty carrier".into()));
        }
        let mut a = Vec::with_capacity(order * order);
        let mut m = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                a.push(add(x, y));
                m.push(mul(x, y));
            }
        }
        Self::from_flat(order, a, m)
    }

    fn from_flat(order: usize, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        if add.iter().chain(&mul).any(|&v| v >= order) {
            return Err(Error::InvalidRing("table entry out of range".into()));
        }
        let at = |t: &[usize], x: usize, y: usize| t[x * order + y];
        let zero = (0..order)
            .find(|&z| (0..order).all(|x| at(&add, z, x) == x && at(&add, x, z) == x))
            .ok_or_else(|| Error::InvalidRing("no additive identity".into()))?;
        let mut neg = vec![usize::MAX; order];
        for x in 0..order {
            neg[x] = (0..order)
                .find(|&y| at(&add, x, y) == zero)
                .ok_or_else(|| Error::InvalidRing(format!("element {x} has no negative")))?;
        }
        let one = (0..order)
            .find(|&u| (0..order).all(|x| at(&mul, u, x) == x && at(&mul, x, u) == x));
        Ok(FiniteRing { order, add, mul, zero, one, neg, labels: None })
    }

    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>], budget: &Budget) -> Result<Self> {
        let ring = Self::from_tables_unverified(add, mul)?;
        ring.verify(budget)?;
        Ok(ring)
    }

    pub fn from_tables_unverified(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self> {
        let order = add.len();
        if order == 0 || mul.len() != order || add.iter().chain(mul).any(|r| r.len() != order) {
            return Err(Error::InvalidRing("tables are not square of equal size".into()));
        }
        Self::from_flat(
            order,
            add.iter().flatten().copied().collect(),
            mul.iter().flatten().copied().collect(),
        )
    }

    pub fn from_json(json: &RingJson, budget: &Budget) -> Result<Self> {
        let ring = Self::from_json_unverified(json)?;
        ring.verify(budget)?;
        Ok(ring)
    }

    /// Shape checks only; the declared `one`, if any, must be a two-sided identity.
    pub fn from_json_unverified(json: &RingJson) -> Result<Self> {
        if json.add_table.len() != json.order {
            return Err(Error::InvalidRing("order does not match the tables".into()));
        }
        let ring = Self::from_tables_unverified(&json.add_table, &json.mul_table)?;
        if let Some(u) = json.one {
            if ring.one != Some(u) && !ring.is_identity(u) {
                return Err(Error::InvalidRing(format!("declared one {u} is not an identity")));
            }
        }
        Ok(ring)
    }

    pub fn to_json(&self) -> RingJson {
        let rows = |t: &[usize]| t.chunks(self.order).map(|r| r.to_vec()).collect();
        RingJson {
            order: self.order,
            add_table: rows(&self.add),
            mul_table: rows(&self.mul),
            one: self.one,
        }
    }

    fn is_identity(&self, u: usize) -> bool {
        u < self.order && self.elements().all(|x| self.mul(u, x) == x && self.mul(x, u) == x)
    }

    fn verify(&self, budget: &Budget) -> Result<()> {
        budget::check("ring axiom check (order)", self.order as u128, budget.ring_check_order as u128)?;
        self.check_axioms().map_err(Error::from)
    }

    /// Exhaustive check of all ring axioms. The reported witness is the
    /// lexicographically first failing tuple for the first failing law.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.order;
        let fail = |law, w: Vec<usize>| Err(AxiomViolation { law, witness: w });
        for x in 0..n {
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return fail("commutativity of +", vec![x, y]);
                }
            }
        }
        type Law<'a> = (&'static str, Box<dyn Fn(usize, usize, usize) -> bool + Sync + 'a>);
        let laws: Vec<Law> = vec![
            (
                "associativity of +",
                Box::new(|a, b, c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c))),
            ),
            (
                "associativity of *",
                Box::new(|a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))),
            ),
            (
                "left distributivity",
                Box::new(|a, b, c| self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))),
            ),
            (
                "right distributivity",
                Box::new(|a, b, c| self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))),
            ),
        ];
        for (law, holds) in &laws {
            let found = (0..n).into_par_iter().find_map_first(|a| {
                for b in 0..n {
                    for c in 0..n {
                        if !holds(a, b, c) {
                            return Some(vec![a, b, c]);
                        }
                    }
                }
                None
            });
            if let Some(w) = found {
                return fail(law, w);
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidRing(format!("{} labels for {} elements", labels.len(), self.order)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `r ∗ s = r + s + rs`.
    #[inline]
    pub fn star(&self, r: usize, s: usize) -> usize {
        self.add(self.add(r, s), self.mul(r, s))
    }

    /// The element `s` with `r ∗ s = 0 = s ∗ r`, if any.
    pub fn star_inverse(&self, r: usize) -> Option<usize> {
        self.elements()
            .find(|&s| self.star(r, s) == self.zero && self.star(s, r) == self.zero)
    }

    pub fn quasi_regular_group(&self) -> Result<QuasiRegularGroup> {
        let inverses: Vec<Option<usize>> =
            self.elements().into_par_iter().map(|r| self.star_inverse(r)).collect();
        let mut members = vec![self.zero];
        members.extend(self.elements().filter(|&r| r != self.zero && inverses[r].is_some()));
        let mut local = vec![usize::MAX; self.order];
        for (k, &r) in members.iter().enumerate() {
            local[r] = k;
        }
        for &a in &members {
            for &b in &members {
                if local[self.star(a, b)] == usize::MAX {
                    return Err(Error::InvalidRing(format!(
                        "quasi-regular elements not closed under star at ({a}, {b})"
                    )));
                }
            }
        }
        let group = FiniteGroup::from_fn(
            members.len(),
            |a, b| local[self.star(members[a], members[b])],
            None,
            None,
        )?;
        let inverse = members.iter().map(|&r| inverses[r].expect("member")).collect();
        Ok(QuasiRegularGroup { members, inverse, group: Arc::new(group) })
    }

    /// Two-sided units. Fails for rings without one.
    pub fn units(&self) -> Result<Vec<usize>> {
        let one = self
            .one
            .ok_or_else(|| Error::Precondition("units of a ring without identity".into()))?;
        Ok(self
            .elements()
            .filter(|&u| self.elements().any(|v| self.mul(u, v) == one && self.mul(v, u) == one))
            .collect())
    }

    pub fn is_additive_subgroup(&self, subset: &[usize]) -> bool {
        let member = self.membership(subset);
        !subset.is_empty()
            && member[self.zero]
            && subset.iter().all(|&a| subset.iter().all(|&b| member[self.sub(a, b)]))
    }

    pub fn is_ideal(&self, subset: &[usize]) -> bool {
        let member = self.membership(subset);
        self.is_additive_subgroup(subset)
            && subset
                .iter()
                .all(|&a| self.elements().all(|r| member[self.mul(r, a)] && member[self.mul(a, r)]))
    }

    pub fn is_square_zero_ideal(&self, subset: &[usize]) -> bool {
        self.is_ideal(subset)
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| self.mul(a, b) == self.zero))
    }

    fn membership(&self, subset: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.order];
        for &s in subset {
            if s < self.order {
                m[s] = true;
            }
        }
        m
    }

    /// The subset as a ring in its own right, re-indexed in increasing order,
    /// with the inclusion map.
    pub fn subring(self: &Arc<Self>, subset: &[usize], budget: &Budget) -> Result<(Arc<FiniteRing>, RingHom)> {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let member = self.membership(&elems);
        if !self.is_additive_subgroup(&elems)
            || elems.iter().any(|&a| elems.iter().any(|&b| !member[self.mul(a, b)]))
        {
            return Err(Error::InvalidRing("subset is not a subring".into()));
        }
        let local = |x: usize| elems.binary_search(&x).expect("closed");
        let mut sub = FiniteRing::from_fn(
            elems.len(),
            |a, b| local(self.add(elems[a], elems[b])),
            |a, b| local(self.mul(elems[a], elems[b])),
            budget,
        )?;
        if let Some(l) = &self.labels {
            sub.labels = Some(elems.iter().map(|&e| l[e].clone()).collect());
        }
        let sub = Arc::new(sub);
        let inclusion = RingHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, inclusion))
    }

    /// The ring with the same additive group and all products zero.
    pub fn zero_multiplication(group: &FiniteGroup) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::NotAbelian("additive group".into()));
        }
        FiniteRing::from_fn_unverified(group.order(), |a, b| group.mul(a, b), |_, _| 0)
    }
}

/// `Z/n` with its usual operations.
pub fn zmod_ring(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::OutOfRange("Z/0".into()));
    }
    FiniteRing::from_fn(n, |a, b| (a + b) % n, |a, b| a * b % n, &Budget::default())
}

/// `QR(R)`: its members (ring zero first, then increasing index), their
/// ∗-inverses, and the group they form under ∗ (local index = position in `members`).
#[derive(Clone, Debug)]
pub struct QuasiRegularGroup {
    pub members: Vec<usize>,
    pub inverse: Vec<usize>,
    pub group: Arc<FiniteGroup>,
}

impl QuasiRegularGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.members.contains(&r)
    }

    pub fn member_set(&self) -> BTreeSet<usize> {
        self.members.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    pub source: Arc<FiniteRing>,
    pub target: Arc<FiniteRing>,
    map: Vec<usize>,
}

impl RingHom {
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<usize>) -> Result<Self> {
        let h = Self::new_unverified(source, target, map)?;
        if let Some(w) = h.law_failure() {
            return Err(Error::InvalidHom(w));
        }
        Ok(h)
    }

    /// Shape check only; [`RingHom::law_failure`] reports what breaks.
    pub fn new_unverified(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidHom("map does not fit the rings".into()));
        }
        Ok(RingHom { source, target, map })
    }

    pub fn law_failure(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        if self.map[s.zero()] != t.zero() {
            return Some("zero is not mapped to zero".into());
        }
        for a in s.elements() {
            for b in s.elements() {
                if self.map[s.add(a, b)] != t.add(self.map[a], self.map[b]) {
                    return Some(format!("additivity fails at ({a}, {b})"));
                }
                if self.map[s.mul(a, b)] != t.mul(self.map[a], self.map[b]) {
                    return Some(format!("multiplicativity fails at ({a}, {b})"));
                }
            }
        }
        None
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn kernel_elements(&self) -> Vec<usize> {
        let z = self.target.zero();
        self.source.elements().filter(|&x| self.map[x] == z).collect()
    }
}

/// Result of checking the quasi-regular sequence `0 → I → QR(R) → QR(S) → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct PropQrReport {
    pub ideal_size: usize,
    pub qr_source_size: usize,
    pub qr_target_size: usize,
    pub checks: Vec<Check>,
}

impl PropQrReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }
}

/// Verifies, element by element, that for a surjective `p: R → S` whose kernel
/// `I` is a square-zero ideal: every `r` with `p(r) ∈ QR(S)` is quasi-regular,
/// and `0 → I → QR(R) → QR(S) → 0` is an exact sequence of groups.
pub fn verify_prop_qr(ideal: &[usize], p: &RingHom) -> Result<PropQrReport> {
    let (r, s) = (&p.source, &p.target);
    let mut ideal_set: Vec<usize> = ideal.to_vec();
    ideal_set.sort_unstable();
    ideal_set.dedup();
    if !p.is_surjective() {
        return Err(Error::Precondition("ring map is not surjective".into()));
    }
    if p.kernel_elements() != ideal_set {
        return Err(Error::Precondition("ideal is not the kernel of the ring map".into()));
    }
    if !r.is_square_zero_ideal(&ideal_set) {
        return Err(Error::Precondition("kernel is not a square-zero ideal".into()));
    }
    let qr_r = r.quasi_regular_group()?;
    let qr_s = s.quasi_regular_group()?;
    let in_qr_r = qr_r.member_set();
    let in_qr_s = qr_s.member_set();
    let mut checks = Vec::new();

    let lift = r
        .elements()
        .find(|&x| in_qr_s.contains(&p.apply(x)) && !in_qr_r.contains(&x))
        .map(|x| format!("p({x}) is quasi-regular but {x} is not"));
    checks.push(Check::from_witness("lifting of quasi-regularity", "", lift));

    let ideal_inside = ideal_set
        .iter()
        .find(|&&a| !in_qr_r.contains(&a))
        .map(|a| format!("{a} is in I but not quasi-regular"));
    checks.push(Check::from_witness("I is contained in QR(R)", "", ideal_inside));

    let i_hom = ideal_set
        .iter()
        .flat_map(|&a| ideal_set.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| r.star(a, b) != r.add(a, b))
        .map(|(a, b)| format!("{a} * {b} differs from {a} + {b}"));
    checks.push(Check::from_witness("I -> QR(R) is a group homomorphism", "", i_hom));

    let p_hom = qr_r
        .members
        .iter()
        .flat_map(|&a| qr_r.members.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| p.apply(r.star(a, b)) != s.star(p.apply(a), p.apply(b)))
        .map(|(a, b)| format!("p does not preserve {a} * {b}"));
    checks.push(Check::from_witness("QR(R) -> QR(S) is a group homomorphism", "", p_hom));

    let image: BTreeSet<usize> = qr_r.members.iter().map(|&x| p.apply(x)).collect();
    let onto = in_qr_s
        .symmetric_difference(&image)
        .next()
        .map(|y| format!("{y} separates p(QR(R)) from QR(S)"));
    checks.push(Check::from_witness("exact at QR(S)", "", onto));

    let kernel: BTreeSet<usize> =
        qr_r.members.iter().copied().filter(|&x| p.apply(x) == s.zero()).collect();
    let ideal_tree: BTreeSet<usize> = ideal_set.iter().copied().collect();
    let middle = kernel
        .symmetric_difference(&ideal_tree)
        .next()
        .map(|x| format!("{x} separates the kernel of QR(R) -> QR(S) from I"));
    checks.push(Check::from_witness("exact at QR(R)", "", middle));

    Ok(PropQrReport {
        ideal_size: ideal_set.len(),
        qr_source_size: qr_r.len(),
        qr_target_size: qr_s.len(),
        checks,
    })
}

/// Checks that `r ↦ 1 + r` is a group isomorphism `QR(R) → U(R)`.
pub fn check_qr_units(ring: &FiniteRing) -> Result<Check> {
    let one = ring
        .one()
        .ok_or_else(|| Error::Precondition("ring has no identity".into()))?;
    let qr = ring.quasi_regular_group()?;
    let units: BTreeSet<usize> = ring.units()?.into_iter().collect();
    let shifted: BTreeSet<usize> = qr.members.iter().map(|&r| ring.add(one, r)).collect();
    if shifted.len() != qr.len() {
        return Ok(Check::fail("QR(R) -> U(R), r -> 1 + r", "", "map is not injective"));
    }
    if let Some(x) = shifted.symmetric_difference(&units).next() {
        return Ok(Check::fail(
            "QR(R) -> U(R), r -> 1 + r",
            "",
            format!("{x} separates 1 + QR(R) from U(R)"),
        ));
    }
    for &a in &qr.members {
        for &b in &qr.members {
            let lhs = ring.add(one, ring.star(a, b));
            let rhs = ring.mul(ring.add(one, a), ring.add(one, b));
            if lhs != rhs {
                return Ok(Check::fail(
                    "QR(R) -> U(R), r -> 1 + r",
                    "",
                    format!("1 + ({a} * {b}) differs from (1 + {a})(1 + {b})"),
                ));
            }
        }
    }
    Ok(Check::pass(
        "QR(R) -> U(R), r -> 1 + r",
        format!("|QR| = |U| = {}", units.len()),
    ))
}

// ---------------------------------------------------------------------------
// Bimodules and semidirect products
// ---------------------------------------------------------------------------

/// An abelian group `S` (with zero at index 0) carrying left and right `R`-actions.
#[derive(Clone, Debug)]
pub struct BimoduleAction {
    pub ring: Arc<FiniteRing>,
    pub module: Arc<FiniteGroup>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl BimoduleAction {
    /// `left(r, s) = r s`, `right(s, r) = s r`; all bimodule laws are verified.
    pub fn new(
        ring: Arc<FiniteRing>,
        module: Arc<FiniteGroup>,
        left: impl Fn(usize, usize) -> usize,
        right: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if !module.is_abelian() {
            return Err(Error::NotAbelian("bimodule".into()));
        }
        let (nr, ns) = (ring.order(), module.order());
        let mut l = Vec::with_capacity(nr * ns);
        let mut rt = Vec::with_capacity(nr * ns);
        for r in 0..nr {
            for s in 0..ns {
                l.push(left(r, s));
            }
        }
        for s in 0..ns {
            for r in 0..nr {
                rt.push(right(s, r));
            }
        }
        if l.iter().chain(&rt).any(|&v| v >= ns) {
            return Err(Error::InvalidRing("bimodule action out of range".into()));
        }
        let b = BimoduleAction { ring, module, left: l, right: rt };
        if let Some(w) = b.law_failure() {
            return Err(Error::InvalidRing(w));
        }
        Ok(b)
    }

    #[inline]
    pub fn left(&self, r: usize, s: usize) -> usize {
        self.left[r * self.module.order() + s]
    }

    #[inline]
    pub fn right(&self, s: usize, r: usize) -> usize {
        self.right[s * self.ring.order() + r]
    }

    fn law_failure(&self) -> Option<String> {
        let (r, m) = (&self.ring, &self.module);
        for a in r.elements() {
            for s in m.elements() {
                for t in m.elements() {
                    if self.left(a, m.mul(s, t)) != m.mul(self.left(a, s), self.left(a, t)) {
                        return Some(format!("left action not additive in the module at ({a}, {s}, {t})"));
                    }
                    if self.right(m.mul(s, t), a) != m.mul(self.right(s, a), self.right(t, a)) {
                        return Some(format!("right action not additive in the module at ({s}, {t}, {a})"));
                    }
                }
            }
        }
        for a in r.elements() {
            for b in r.elements() {
                let (sum, prod) = (r.add(a, b), r.mul(a, b));
                for s in m.elements() {
                    if self.left(sum, s) != m.mul(self.left(a, s), self.left(b, s)) {
                        return Some(format!("left action not additive in the ring at ({a}, {b}, {s})"));
                    }
                    if self.right(s, sum) != m.mul(self.right(s, a), self.right(s, b)) {
                        return Some(format!("right action not additive in the ring at ({s}, {a}, {b})"));
                    }
                    if self.left(prod, s) != self.left(a, self.left(b, s)) {
                        return Some(format!("(ab)s != a(bs) at ({a}, {b}, {s})"));
                    }
                    if self.right(s, prod) != self.right(self.right(s, a), b) {
                        return Some(format!("s(ab) != (sa)b at ({s}, {a}, {b})"));
                    }
                    if self.left(a, self.right(s, b)) != self.right(self.left(a, s), b) {
                        return Some(format!("a(sb) != (as)b at ({a}, {s}, {b})"));
                    }
                }
            }
        }
        None
    }
}

/// `S ⋊ R` on pairs `(s, r)` at index `s + |S| r` with componentwise addition and
/// `(s1, r1)(s2, r2) = (r1 s2 + s1 r2, r1 r2)`. Returns the ring, the ideal
/// `S × {0}` and the projection onto `R`.
pub fn semidirect_ring(bimodule: &BimoduleAction, budget: &Budget) -> Result<(Arc<FiniteRing>, Vec<usize>, RingHom)> {
    let (r, m) = (&bimodule.ring, &bimodule.module);
    let ns = m.order();
    let ring = FiniteRing::from_fn(
        ns * r.order(),
        |x, y| m.mul(x % ns, y % ns) + ns * r.add(x / ns, y / ns),
        |x, y| {
            let (s1, r1) = (x % ns, x / ns);
            let (s2, r2) = (y % ns, y / ns);
            m.mul(bimodule.left(r1, s2), bimodule.right(s1, r2)) + ns * r.mul(r1, r2)
        },
        budget,
    )?;
    let ring = Arc::new(ring);
    let ideal: Vec<usize> = (0..ns).map(|s| s + ns * r.zero()).collect();
    let proj = RingHom::new(ring.clone(), r.clone(), ring.elements().map(|x| x / ns).collect())?;
    Ok((ring, ideal, proj))
}
