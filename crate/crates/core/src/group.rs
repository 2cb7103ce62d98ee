//! Finite groups stored as full multiplication tables.
//!
//! Elements are the indices `0..order` and index `0` is always the identity.
//! Every enumeration in the crate walks indices in increasing order, which is
//! what makes all derived output deterministic.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};

/// Exhaustive associativity is checked up to this order unless overridden.
pub const DEFAULT_ASSOC_BOUND: usize = 512;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table.
    ///
    /// When `generators` is `None` a generating set is chosen greedily in index
    /// order. All group axioms are verified; associativity exhaustively when
    /// the order is at most `assoc_bound`, otherwise on generator triples only.
    pub fn from_table_with_bound(
        rows: &[Vec<usize>],
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
        assoc_bound: usize,
    ) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has length {}, expected {order}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= order {
                    return Err(Error::InvalidGroup(format!("entry {c} out of range in row {a}")));
                }
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(order, table, generators, labels, assoc_bound)
    }

    pub fn from_table(
        rows: &[Vec<usize>],
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::from_table_with_bound(rows, generators, labels, DEFAULT_ASSOC_BOUND)
    }

    /// Builds a group of the given order from a multiplication function.
    pub fn from_fn(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::InvalidGroup(format!("{a}*{b} = {c} out of range")));
                }
                table.push(c);
            }
        }
        Self::from_flat(order, table, generators, labels, DEFAULT_ASSOC_BOUND)
    }

    fn from_flat(
        order: usize,
        table: Vec<usize>,
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
        assoc_bound: usize,
    ) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "{} labels for {order} elements",
                    l.len()
                )));
            }
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup(format!(
                    "index 0 is not a two-sided identity (fails at {a})"
                )));
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no right inverse")))?;
            if at(b, a) != 0 {
                return Err(Error::InvalidGroup(format!(
                    "right inverse of {a} is not a left inverse"
                )));
            }
            inverse[a] = b;
        }
        let mut group = FiniteGroup {
            order,
            table,
            inverse,
            generators: Vec::new(),
            labels,
        };
        let generators = match generators {
            Some(g) => {
                if g.is_empty() {
                    return Err(Error::InvalidGroup("empty generating set".into()));
                }
                if let Some(&bad) = g.iter().find(|&&x| x >= order) {
                    return Err(Error::InvalidGroup(format!("generator {bad} out of range")));
                }
                if group.closure(&g).len() != order {
                    return Err(Error::InvalidGroup("generators do not generate".into()));
                }
                g
            }
            None => group.greedy_generators(),
        };
        group.generators = generators;
        if order <= assoc_bound {
            group.check_associative(0..order)?;
        } else {
            let gens = group.generators.clone();
            group.check_associative(gens.into_iter())?;
        }
        Ok(group)
    }

    fn check_associative(&self, third: impl Iterator<Item = usize> + Clone) -> Result<()> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in third.clone() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        if self.order == 1 {
            return vec![0];
        }
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order];
        reached[0] = true;
        let mut count = 1;
        for x in 1..self.order {
            if count == self.order {
                break;
            }
            if !reached[x] {
                gens.push(x);
                let span = self.closure(&gens);
                count = span.len();
                for s in span {
                    reached[s] = true;
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a * b^{-1}`; in the additive notation of the extension literature, `a - b`.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Sorted subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| self.generators.iter().all(|&g| self.commutes(z, g)))
            .collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &e in elems {
            if e >= self.order {
                return false;
            }
            member[e] = true;
        }
        member[0]
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order,
            table: self.rows(),
            generators: Some(self.generators.clone()),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(json: &GroupJson) -> Result<Self> {
        if json.table.len() != json.order {
            return Err(Error::InvalidGroup(format!(
                "declared order {} but table has {} rows",
                json.order,
                json.table.len()
            )));
        }
        Self::from_table(&json.table, json.generators.clone(), json.labels.clone())
    }
}

/// On-disk group format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    /// Validates `map` as a homomorphism on every pair.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidHom(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::InvalidHom(format!("image {bad} out of range")));
        }
        if map[0] != 0 {
            return Err(Error::InvalidHom("identity not mapped to identity".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidHom(format!("law fails at ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(map.len(), source.order());
        GroupHom { source, target, map }
    }

    /// The unique homomorphism sending `source.generators()[k]` to `images[k]`.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[usize],
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidHom(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.order()) {
            return Err(Error::InvalidHom(format!("image {bad} out of range")));
        }
        let map = extend_on_generators(&source, &target, images).ok_or_else(|| {
            Error::InvalidHom("generator images violate the relations of the source".into())
        })?;
        GroupHom::new(source, target, map)
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupHom::new_unchecked(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn trivial(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        GroupHom::new_unchecked(source.clone(), target.clone(), vec![0; source.order()])
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::Mismatch);
        }
        let map = first.map.iter().map(|&y| self.map[y]).collect();
        Ok(GroupHom::new_unchecked(first.source.clone(), self.target.clone(), map))
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().skip(1).all(|&y| y != 0)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn kernel_elements(&self) -> Vec<usize> {
        self.source.elements().filter(|&x| self.map[x] == 0).collect()
    }

    pub fn image_elements(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        (0..hit.len()).filter(|&y| hit[y]).collect()
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_elements(&self.source, &self.kernel_elements())
            .expect("kernel is a subgroup")
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_elements(&self.target, &self.image_elements())
            .expect("image is a subgroup")
    }
}

/// Breadth-first extension of generator images along the right Cayley graph.
/// Returns `None` on the first inconsistency. Consistency on every edge
/// `x -> x g` implies the homomorphism law for all pairs.
pub(crate) fn extend_on_generators(
    source: &FiniteGroup,
    target: &FiniteGroup,
    images: &[usize],
) -> Option<Vec<usize>> {
    let gens = source.generators();
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in gens.iter().enumerate() {
            let y = source.mul(x, g);
            let val = target.mul(map[x], images[k]);
            if map[y] == usize::MAX {
                map[y] = val;
                queue.push_back(y);
            } else if map[y] != val {
                return None;
            }
        }
    }
    Some(map)
}

/// All homomorphisms `source -> target`, in lexicographic order of generator images.
pub fn all_homomorphisms(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    budget: &Budget,
) -> Result<Vec<GroupHom>> {
    let r = source.generators().len();
    budget::check("homomorphism candidates", budget::pow_sat(target.order(), r), budget.candidates)?;
    let mut out = Vec::new();
    let mut images = vec![0usize; r];
    loop {
        if let Some(map) = extend_on_generators(source, target, &images) {
            out.push(GroupHom::new_unchecked(source.clone(), target.clone(), map));
        }
        if !advance(&mut images, target.order()) {
            break;
        }
    }
    Ok(out)
}

pub fn all_automorphisms(group: &Arc<FiniteGroup>, budget: &Budget) -> Result<Vec<GroupHom>> {
    Ok(all_homomorphisms(group, group, budget)?
        .into_iter()
        .filter(|h| h.is_injective())
        .collect())
}

/// Every action of `actor` on `module` by automorphisms, trivial action first.
pub fn all_actions(
    actor: &Arc<FiniteGroup>,
    module: &Arc<FiniteGroup>,
    budget: &Budget,
) -> Result<Vec<ActionTable>> {
    let mut auts: Vec<Vec<usize>> = all_automorphisms(module, budget)?
        .into_iter()
        .map(|h| h.map)
        .collect();
    auts.sort_unstable();
    let index: std::collections::HashMap<Vec<usize>, usize> =
        auts.iter().enumerate().map(|(k, a)| (a.clone(), k)).collect();
    let aut_group = Arc::new(FiniteGroup::from_fn(
        auts.len(),
        |a, b| index[&auts[b].iter().map(|&x| auts[a][x]).collect::<Vec<_>>()],
        None,
        None,
    )?);
    let mut out = Vec::new();
    for h in all_homomorphisms(actor, &aut_group, budget)? {
        let rows: Vec<Vec<usize>> = actor.elements().map(|q| auts[h.apply(q)].clone()).collect();
        out.push(ActionTable::new(actor.clone(), module.clone(), &rows)?);
    }
    Ok(out)
}

/// Odometer increment of a mixed tuple over `0..base`, most significant first.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Brute-force isomorphism search by generator images. Intended for small orders.
pub fn find_isomorphism(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Option<GroupHom> {
    if a.order() != b.order() {
        return None;
    }
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            b.elements().filter(|&y| b.element_order(y) == o).collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    loop {
        let images: Vec<usize> = choice
            .iter()
            .enumerate()
            .map(|(k, &c)| candidates[k][c])
            .collect();
        if let Some(map) = extend_on_generators(a, b, &images) {
            let h = GroupHom::new_unchecked(a.clone(), b.clone(), map);
            if h.is_injective() {
                return Some(h);
            }
        }
        let mut k = choice.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Subgroups, quotients, centralizers
// ---------------------------------------------------------------------------

/// A group together with an injective homomorphism into a parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<FiniteGroup>,
    pub embedding: GroupHom,
}

impl Subgroup {
    /// Re-indexes the subset `elems` of `parent` (in increasing parent index) as a group.
    pub fn from_elements(parent: &Arc<FiniteGroup>, elems: &[usize]) -> Result<Subgroup> {
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !parent.is_subgroup(&elems) {
            return Err(Error::InvalidGroup("subset is not a subgroup".into()));
        }
        let mut local = vec![usize::MAX; parent.order()];
        for (k, &e) in elems.iter().enumerate() {
            local[e] = k;
        }
        let labels = parent
            .labels()
            .map(|l| elems.iter().map(|&e| l[e].clone()).collect());
        let group = FiniteGroup::from_fn(
            elems.len(),
            |a, b| local[parent.mul(elems[a], elems[b])],
            None,
            labels,
        )?;
        let group = Arc::new(group);
        let embedding = GroupHom::new_unchecked(group.clone(), parent.clone(), elems);
        Ok(Subgroup { group, embedding })
    }

    pub fn elements_in_parent(&self) -> &[usize] {
        self.embedding.map()
    }

    /// Parent index -> local index, for members.
    pub fn local_index(&self, parent_elem: usize) -> Option<usize> {
        self.embedding.map().binary_search(&parent_elem).ok()
    }
}

pub fn is_normal(group: &FiniteGroup, subset: &[usize]) -> bool {
    let mut member = vec![false; group.order()];
    for &s in subset {
        member[s] = true;
    }
    group.is_subgroup(subset)
        && group
            .generators()
            .iter()
            .all(|&g| subset.iter().all(|&s| member[group.conj(g, s)]))
}

/// `G / N` with cosets indexed by their least element, and the projection.
pub fn quotient(group: &Arc<FiniteGroup>, normal: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !is_normal(group, normal) {
        return Err(Error::NotNormal);
    }
    let mut coset = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset[g] == usize::MAX {
            let c = reps.len();
            reps.push(g);
            for &n in normal {
                coset[group.mul(g, n)] = c;
            }
        }
    }
    let q = Arc::new(FiniteGroup::from_fn(
        reps.len(),
        |a, b| coset[group.mul(reps[a], reps[b])],
        None,
        None,
    )?);
    let proj = GroupHom::new_unchecked(group.clone(), q.clone(), coset);
    Ok((q, proj))
}

/// `{g : g s = s g for all s in subset}`.
pub fn centralizer(group: &Arc<FiniteGroup>, subset: &[usize]) -> Subgroup {
    let elems: Vec<usize> = group
        .elements()
        .filter(|&g| subset.iter().all(|&s| group.commutes(g, s)))
        .collect();
    Subgroup::from_elements(group, &elems).expect("centralizer is a subgroup")
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

/// A left action of `actor` on `module` by automorphisms.
#[derive(Clone, PartialEq, Eq)]
pub struct ActionTable {
    pub actor: Arc<FiniteGroup>,
    pub module: Arc<FiniteGroup>,
    act: Vec<usize>,
}

impl fmt::Debug for ActionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ActionTable")
            .field("actor", &self.actor.order())
            .field("module", &self.module.order())
            .finish_non_exhaustive()
    }
}

impl ActionTable {
    /// `rows[q][n]` is `q · n`.
    pub fn new(actor: Arc<FiniteGroup>, module: Arc<FiniteGroup>, rows: &[Vec<usize>]) -> Result<Self> {
        if rows.len() != actor.order() || rows.iter().any(|r| r.len() != module.order()) {
            return Err(Error::InvalidAction("table shape does not match the groups".into()));
        }
        let act: Vec<usize> = rows.iter().flatten().copied().collect();
        if act.iter().any(|&x| x >= module.order()) {
            return Err(Error::InvalidAction("entry out of range".into()));
        }
        let table = ActionTable { actor, module, act };
        table.validate()?;
        Ok(table)
    }

    pub fn from_fn(
        actor: Arc<FiniteGroup>,
        module: Arc<FiniteGroup>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut act = Vec::with_capacity(actor.order() * module.order());
        for q in actor.elements() {
            for n in module.elements() {
                act.push(f(q, n));
            }
        }
        if act.iter().any(|&x| x >= module.order()) {
            return Err(Error::InvalidAction("entry out of range".into()));
        }
        let table = ActionTable { actor, module, act };
        table.validate()?;
        Ok(table)
    }

    pub(crate) fn from_fn_unchecked(
        actor: Arc<FiniteGroup>,
        module: Arc<FiniteGroup>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut act = Vec::with_capacity(actor.order() * module.order());
        for q in actor.elements() {
            for n in module.elements() {
                act.push(f(q, n));
            }
        }
        ActionTable { actor, module, act }
    }

    pub fn trivial(actor: &Arc<FiniteGroup>, module: &Arc<FiniteGroup>) -> Self {
        ActionTable::from_fn_unchecked(actor.clone(), module.clone(), |_, n| n)
    }

    fn validate(&self) -> Result<()> {
        let (a, m) = (&self.actor, &self.module);
        for n in m.elements() {
            if self.apply(0, n) != n {
                return Err(Error::InvalidAction("identity does not act trivially".into()));
            }
        }
        for q in a.elements() {
            let mut hit = vec![false; m.order()];
            for n in m.elements() {
                hit[self.apply(q, n)] = true;
                for n2 in m.elements() {
                    if self.apply(q, m.mul(n, n2)) != m.mul(self.apply(q, n), self.apply(q, n2)) {
                        return Err(Error::InvalidAction(format!(
                            "element {q} does not act by a homomorphism"
                        )));
                    }
                }
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::InvalidAction(format!("element {q} acts non-bijectively")));
            }
        }
        for q1 in a.elements() {
            for q2 in a.elements() {
                let q12 = a.mul(q1, q2);
                for n in m.elements() {
                    if self.apply(q12, n) != self.apply(q1, self.apply(q2, n)) {
                        return Err(Error::InvalidAction(format!(
                            "action is not compatible with the product ({q1}, {q2})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, q: usize, n: usize) -> usize {
        self.act[q * self.module.order() + n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.module.order()).map(|r| r.to_vec()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.actor
            .elements()
            .all(|q| self.module.elements().all(|n| self.apply(q, n) == n))
    }

    /// Elements of the actor that fix every module element.
    pub fn kernel_elements(&self) -> Vec<usize> {
        self.actor
            .elements()
            .filter(|&q| self.module.elements().all(|n| self.apply(q, n) == n))
            .collect()
    }

    /// The action of `p.source` through `p`.
    pub fn pullback(&self, p: &GroupHom) -> Result<ActionTable> {
        if p.target.as_ref() != self.actor.as_ref() {
            return Err(Error::Mismatch);
        }
        Ok(ActionTable::from_fn_unchecked(p.source.clone(), self.module.clone(), |g, n| {
            self.apply(p.apply(g), n)
        }))
    }
}

/// Conjugation action of `group` on a normal subgroup `sub`.
pub fn conjugation_action(group: &Arc<FiniteGroup>, sub: &Subgroup) -> Result<ActionTable> {
    if !is_normal(group, sub.elements_in_parent()) {
        return Err(Error::NotNormal);
    }
    Ok(ActionTable::from_fn_unchecked(group.clone(), sub.group.clone(), |g, n| {
        let image = group.conj(g, sub.embedding.apply(n));
        sub.local_index(image).expect("normal subgroup is conjugation stable")
    }))
}

/// Action of `Q = target(p)` on an abelian normal `N` (embedded by `i`) induced
/// by conjugation, checking that every element of a fiber of `p` acts the same.
pub fn conjugation_action_on_quotient(i: &GroupHom, p: &GroupHom) -> Result<ActionTable> {
    let g = &p.source;
    let n = &i.source;
    if !n.is_abelian() {
        return Err(Error::NotAbelian("kernel".into()));
    }
    let mut preimage = vec![usize::MAX; g.order()];
    for x in n.elements() {
        preimage[i.apply(x)] = x;
    }
    let q = &p.target;
    let mut rows = vec![vec![usize::MAX; n.order()]; q.order()];
    for x in g.elements() {
        let row = &mut rows[p.apply(x)];
        for m in n.elements() {
            let c = preimage[g.conj(x, i.apply(m))];
            if c == usize::MAX {
                return Err(Error::NotNormal);
            }
            if row[m] == usize::MAX {
                row[m] = c;
            } else if row[m] != c {
                return Err(Error::InvalidAction(
                    "conjugation depends on the coset representative".into(),
                ));
            }
        }
    }
    if rows.iter().any(|r| r.contains(&usize::MAX)) {
        return Err(Error::InvalidExtension("projection is not surjective".into()));
    }
    ActionTable::new(q.clone(), n.clone(), &rows)
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// `C_n` with element `k` standing for the k-th power of the generator `1`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::OutOfRange("cyclic group order 0".into()));
    }
    let gens = if n == 1 { vec![0] } else { vec![1] };
    FiniteGroup::from_fn(n, |a, b| (a + b) % n, Some(gens), None)
}

/// `D_n` of order `2n`. Element `k + n s` is `y^k x^s` with `y` the rotation
/// (index 1) and `x` the reflection (index n); generators are `[x, y]`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("dihedral parameter {n} (need n >= 3)")));
    }
    let labels = (0..2 * n)
        .map(|e| {
            let (k, s) = (e % n, e / n);
            match (k, s) {
                (0, 0) => "e".to_string(),
                (0, 1) => "x".to_string(),
                (1, 0) => "y".to_string(),
                (1, 1) => "yx".to_string(),
                (k, 0) => format!("y^{k}"),
                (k, _) => format!("y^{k}x"),
            }
        })
        .collect();
    FiniteGroup::from_fn(
        2 * n,
        |a, b| {
            let (k1, s1) = (a % n, a / n);
            let (k2, s2) = (b % n, b / n);
            let k = if s1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            k + n * ((s1 + s2) % 2)
        },
        Some(vec![n, 1]),
        Some(labels),
    )
}

/// `A × B` with `(a, b)` at index `a + |A| b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let na = a.order();
    let mut gens: Vec<usize> = a.generators().iter().copied().filter(|&g| g != 0).collect();
    gens.extend(b.generators().iter().filter(|&&g| g != 0).map(|&g| g * na));
    if gens.is_empty() {
        gens.push(0);
    }
    FiniteGroup::from_fn(
        na * b.order(),
        |x, y| a.mul(x % na, y % na) + na * b.mul(x / na, y / na),
        Some(gens),
        None,
    )
}

/// `N ⋊ Q` on pairs `(n, q)` at index `n + |N| q`, with
/// `(n1, q1)(n2, q2) = (n1 + q1·n2, q1 q2)`, plus the canonical injection and projection.
pub fn semidirect(
    action: &ActionTable,
) -> Result<(Arc<FiniteGroup>, GroupHom, GroupHom)> {
    let n = &action.module;
    let q = &action.actor;
    if !n.is_abelian() {
        return Err(Error::NotAbelian("semidirect kernel".into()));
    }
    let nn = n.order();
    let mut gens: Vec<usize> = n.generators().iter().copied().filter(|&g| g != 0).collect();
    gens.extend(q.generators().iter().filter(|&&g| g != 0).map(|&g| g * nn));
    if gens.is_empty() {
        gens.push(0);
    }
    let g = Arc::new(FiniteGroup::from_fn(
        nn * q.order(),
        |x, y| {
            let (n1, q1) = (x % nn, x / nn);
            let (n2, q2) = (y % nn, y / nn);
            n.mul(n1, action.apply(q1, n2)) + nn * q.mul(q1, q2)
        },
        Some(gens),
        None,
    )?);
    let i = GroupHom::new_unchecked(n.clone(), g.clone(), n.elements().collect());
    let p = GroupHom::new_unchecked(g.clone(), q.clone(), g.elements().map(|x| x / nn).collect());
    Ok((g, i, p))
}
