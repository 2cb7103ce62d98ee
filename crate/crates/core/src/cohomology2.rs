//! Normalized 2-cocycles and `H²(Q, N)` for a finite group `Q` acting on a
//! finite abelian group `N`.
//!
//! The cocycle identity used throughout is
//! `x·f(y,z) − f(xy,z) + f(x,yz) − f(x,y) = 0` and coboundaries are
//! `(dc)(x,y) = x·c(y) − c(xy) + c(x)`. The group operation of `N` is written
//! additively here even though it is stored as an ordinary group table.
//!
//! Two independent routes compute `H²`: [`h2_linear`] linearizes everything over
//! `Z/M` (`M` the exponent of `N`) and reads the invariant factors off a Smith
//! form; [`h2_bruteforce`] enumerates cocycles by backtracking and derives the
//! structure from element orders. They share no code beyond [`TwoCocycle`].

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::abelian::AbelianDecomposition;
use crate::budget::{self, Budget};
use crate::cocycles::CrossedHom;
use crate::error::{Error, Result};
use crate::extension::{AbelianExtension, CentralizerData};
use crate::group::{ActionTable, FiniteGroup, GroupHom};
use crate::zmod::{self, RowLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    action: Arc<ActionTable>,
    values: Vec<usize>,
}

impl TwoCocycle {
    /// `values[x |Q| + y] = f(x, y)`; normalization and the cocycle identity are checked.
    pub fn new(action: Arc<ActionTable>, values: Vec<usize>) -> Result<Self> {
        if !action.module.is_abelian() {
            return Err(Error::NotAbelian("2-cocycle coefficients".into()));
        }
        if let Some(why) = cocycle_failure(&action, &values) {
            return Err(Error::InvalidCocycle(why));
        }
        Ok(TwoCocycle { action, values })
    }

    pub(crate) fn new_unchecked(action: Arc<ActionTable>, values: Vec<usize>) -> Self {
        TwoCocycle { action, values }
    }

    pub fn from_fn(action: Arc<ActionTable>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let q = action.actor.order();
        let values = (0..q * q).map(|k| f(k / q, k % q)).collect();
        TwoCocycle::new(action, values)
    }

    pub fn zero(action: &Arc<ActionTable>) -> Self {
        let q = action.actor.order();
        TwoCocycle::new_unchecked(action.clone(), vec![0; q * q])
    }

    pub fn action(&self) -> &Arc<ActionTable> {
        &self.action
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> usize {
        self.values[x * self.action.actor.order() + y]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn same_action(&self, other: &TwoCocycle) -> Result<()> {
        if Arc::ptr_eq(&self.action, &other.action) || self.action == other.action {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn add(&self, other: &TwoCocycle) -> Result<TwoCocycle> {
        self.same_action(other)?;
        let n = &self.action.module;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| n.mul(a, b)).collect();
        Ok(TwoCocycle::new_unchecked(self.action.clone(), values))
    }

    pub fn neg(&self) -> TwoCocycle {
        let n = &self.action.module;
        TwoCocycle::new_unchecked(self.action.clone(), self.values.iter().map(|&a| n.inv(a)).collect())
    }

    pub fn sub(&self, other: &TwoCocycle) -> Result<TwoCocycle> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> TwoCocycle {
        let n = &self.action.module;
        let values = self.values.iter().map(|&a| n.pow(a, k as i64)).collect();
        TwoCocycle::new_unchecked(self.action.clone(), values)
    }

    /// `dc` for a normalized 1-cochain `c` (`c[0]` must be zero).
    pub fn coboundary(action: &Arc<ActionTable>, c: &[usize]) -> Result<TwoCocycle> {
        let (q, n) = (&action.actor, &action.module);
        if c.len() != q.order() || c[0] != 0 || c.iter().any(|&v| v >= n.order()) {
            return Err(Error::Precondition("1-cochain must be normalized".into()));
        }
        if !n.is_abelian() {
            return Err(Error::NotAbelian("coefficients".into()));
        }
        let mut values = Vec::with_capacity(q.order() * q.order());
        for x in q.elements() {
            for y in q.elements() {
                let v = n.mul(n.mul(action.apply(x, c[y]), n.inv(c[q.mul(x, y)])), c[x]);
                values.push(v);
            }
        }
        Ok(TwoCocycle::new_unchecked(action.clone(), values))
    }

    /// `β ∘ f` for a `Q`-endomorphism `β` of `N`.
    pub fn pushforward(&self, beta: &[usize]) -> Result<TwoCocycle> {
        check_q_endomorphism(&self.action, beta)?;
        let values = self.values.iter().map(|&a| beta[a]).collect();
        Ok(TwoCocycle::new_unchecked(self.action.clone(), values))
    }

    /// `f ∘ (p × p)` as a cocycle for `G = p.source` acting through `p`.
    pub fn inflate(&self, p: &GroupHom, g_action: &Arc<ActionTable>) -> Result<TwoCocycle> {
        if p.target.as_ref() != self.action.actor.as_ref()
            || g_action.actor.as_ref() != p.source.as_ref()
            || g_action.module.as_ref() != self.action.module.as_ref()
        {
            return Err(Error::Mismatch);
        }
        let g = &p.source;
        for x in g.elements() {
            for a in self.action.module.elements() {
                if g_action.apply(x, a) != self.action.apply(p.apply(x), a) {
                    return Err(Error::InvalidAction(
                        "action of G does not factor through p".into(),
                    ));
                }
            }
        }
        let mut values = Vec::with_capacity(g.order() * g.order());
        for x in g.elements() {
            for y in g.elements() {
                values.push(self.value(p.apply(x), p.apply(y)));
            }
        }
        Ok(TwoCocycle::new_unchecked(g_action.clone(), values))
    }
}

/// First reason why `values` is not a normalized 2-cocycle, if any.
pub fn cocycle_failure(action: &ActionTable, values: &[usize]) -> Option<String> {
    let (q, n) = (&action.actor, &action.module);
    let nq = q.order();
    if values.len() != nq * nq {
        return Some(format!("{} values for |Q|^2 = {}", values.len(), nq * nq));
    }
    if let Some(v) = values.iter().find(|&&v| v >= n.order()) {
        return Some(format!("value {v} out of range"));
    }
    let f = |x: usize, y: usize| values[x * nq + y];
    for x in q.elements() {
        if f(0, x) != 0 || f(x, 0) != 0 {
            return Some(format!("not normalized at {x}"));
        }
    }
    for x in 1..nq {
        for y in 1..nq {
            let xy = q.mul(x, y);
            for z in 1..nq {
                let lhs = n.mul(action.apply(x, f(y, z)), f(x, q.mul(y, z)));
                let rhs = n.mul(f(xy, z), f(x, y));
                if lhs != rhs {
                    return Some(format!("cocycle identity fails at ({x}, {y}, {z})"));
                }
            }
        }
    }
    None
}

fn check_q_endomorphism(action: &ActionTable, beta: &[usize]) -> Result<()> {
    let n = &action.module;
    if beta.len() != n.order() || beta.iter().any(|&b| b >= n.order()) {
        return Err(Error::InvalidHom("endomorphism does not fit N".into()));
    }
    for a in n.elements() {
        for b in n.elements() {
            if beta[n.mul(a, b)] != n.mul(beta[a], beta[b]) {
                return Err(Error::InvalidHom(format!("not additive at ({a}, {b})")));
            }
        }
        for x in action.actor.elements() {
            if beta[action.apply(x, a)] != action.apply(x, beta[a]) {
                return Err(Error::InvalidHom(format!("not Q-equivariant at ({x}, {a})")));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// H² as an abstract group
// ---------------------------------------------------------------------------

/// A class of `H²` in coordinates relative to [`H2Group::generators`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Class {
    pub invariant_factors: Vec<u64>,
    pub coefficients: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Method {
    Linear,
    BruteForce,
}

#[derive(Clone, Debug)]
pub struct H2Group {
    action: Arc<ActionTable>,
    factors: Vec<u64>,
    generators: Vec<TwoCocycle>,
    reducer: Reducer,
}

#[derive(Clone, Debug)]
enum Reducer {
    Trivial,
    Linear(Box<LinearReducer>),
    Table { class_of: HashMap<Vec<usize>, usize>, coeffs: Vec<Vec<u64>> },
}

impl H2Group {
    pub fn action(&self) -> &Arc<ActionTable> {
        &self.action
    }

    /// `d_1 | d_2 | ... | d_r`, all greater than one.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn method(&self) -> H2Method {
        match self.reducer {
            Reducer::Table { .. } => H2Method::BruteForce,
            _ => H2Method::Linear,
        }
    }

    /// One cocycle per invariant factor; generator `j` has order `d_j` in `H²`.
    pub fn generators(&self) -> &[TwoCocycle] {
        &self.generators
    }

    /// Coefficients of the class of `f`.
    pub fn reduce(&self, f: &TwoCocycle) -> Result<Vec<u64>> {
        f.same_action(&TwoCocycle::zero(&self.action))?;
        match &self.reducer {
            Reducer::Trivial => Ok(Vec::new()),
            Reducer::Linear(l) => l.reduce(f),
            Reducer::Table { class_of, coeffs } => class_of
                .get(f.values())
                .map(|&c| coeffs[c].clone())
                .ok_or_else(|| Error::InvalidCocycle("not a normalized 2-cocycle".into())),
        }
    }

    pub fn class(&self, f: &TwoCocycle) -> Result<H2Class> {
        Ok(H2Class { invariant_factors: self.factors.clone(), coefficients: self.reduce(f)? })
    }

    pub fn is_coboundary(&self, f: &TwoCocycle) -> Result<bool> {
        Ok(self.reduce(f)?.iter().all(|&c| c == 0))
    }

    /// `Σ c_j g_j`.
    pub fn representative(&self, coeffs: &[u64]) -> Result<TwoCocycle> {
        if coeffs.len() != self.factors.len() {
            return Err(Error::Precondition("coefficient vector has the wrong length".into()));
        }
        let mut f = TwoCocycle::zero(&self.action);
        for (g, &c) in self.generators.iter().zip(coeffs) {
            f = f.add(&g.scale(c))?;
        }
        Ok(f)
    }

    pub fn add_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    /// Every coefficient vector, lexicographically.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn class_reps(&self) -> Result<Vec<TwoCocycle>> {
        self.elements().iter().map(|c| self.representative(c)).collect()
    }
}

// ---------------------------------------------------------------------------
// Linear route
// ---------------------------------------------------------------------------

/// Coordinates of normalized 2-cochains: cell `(x, y, j)` for `x, y ≠ e`
/// holds the `j`-th invariant coordinate of `f(x, y)`.
#[derive(Clone, Debug)]
struct Layout {
    dec: AbelianDecomposition,
    q: usize,
    k: usize,
    m: u64,
}

impl Layout {
    fn new(action: &ActionTable) -> Result<Self> {
        let dec = AbelianDecomposition::new(&action.module)?;
        let k = dec.rank();
        let m = dec.exponent();
        Ok(Layout { dec, q: action.actor.order(), k, m })
    }

    #[inline]
    fn cell(&self, x: usize, y: usize, j: usize) -> usize {
        ((x - 1) * (self.q - 1) + (y - 1)) * self.k + j
    }

    fn dim2(&self) -> usize {
        (self.q - 1) * (self.q - 1) * self.k
    }

    fn dim1(&self) -> usize {
        (self.q - 1) * self.k
    }

    fn vector(&self, f: &TwoCocycle) -> Vec<u64> {
        let mut v = vec![0u64; self.dim2()];
        for x in 1..self.q {
            for y in 1..self.q {
                for (j, &c) in self.dec.coords(f.value(x, y)).iter().enumerate() {
                    v[self.cell(x, y, j)] = c;
                }
            }
        }
        v
    }

    fn cochain(&self, n: &FiniteGroup, v: &[u64]) -> Vec<usize> {
        let mut values = vec![0usize; self.q * self.q];
        for x in 1..self.q {
            for y in 1..self.q {
                let c: Vec<u64> = (0..self.k).map(|j| v[self.cell(x, y, j)]).collect();
                values[x * self.q + y] = self.dec.element(n, &c);
            }
        }
        values
    }

    fn modulus(&self, j: usize) -> u64 {
        self.dec.moduli()[j]
    }

    /// Columns of `d¹`: the coboundary of `c = b_j` placed at `z`, in raw coordinates.
    fn d1_column(&self, action: &ActionTable, mats: &[Vec<Vec<u64>>], z: usize, j: usize) -> Vec<u64> {
        let q = &action.actor;
        let m = self.m;
        let mut v = vec![0u64; self.dim2()];
        for x in 1..self.q {
            for y in 1..self.q {
                let xy = q.mul(x, y);
                if y == z {
                    for i in 0..self.k {
                        let c = self.cell(x, y, i);
                        v[c] = (v[c] + mats[x][i][j]) % m;
                    }
                }
                if xy == z {
                    let c = self.cell(x, y, j);
                    v[c] = (v[c] + m - 1) % m;
                }
                if x == z {
                    let c = self.cell(x, y, j);
                    v[c] = (v[c] + 1) % m;
                }
            }
        }
        v
    }
}

#[derive(Clone, Debug)]
struct LinearReducer {
    layout: Layout,
    cocycles: RowLattice,
    right: Vec<Vec<u64>>,
    positions: Vec<usize>,
    factors: Vec<u64>,
}

impl LinearReducer {
    fn reduce(&self, f: &TwoCocycle) -> Result<Vec<u64>> {
        let v = self.layout.vector(f);
        let x = self
            .cocycles
            .coords(&v)
            .ok_or_else(|| Error::InvalidCocycle("not a 2-cocycle".into()))?;
        let m = self.layout.m as u128;
        Ok(self
            .positions
            .iter()
            .zip(&self.factors)
            .map(|(&col, &d)| {
                let s: u128 = x
                    .iter()
                    .enumerate()
                    .map(|(i, &xi)| xi as u128 * self.right[i][col] as u128 % m)
                    .sum::<u128>()
                    % m;
                (s % d as u128) as u64
            })
            .collect())
    }
}

/// `H²(Q, N)` via Smith normal form over `Z/M`.
pub fn h2_linear(action: &Arc<ActionTable>, budget: &Budget) -> Result<H2Group> {
    let n = &action.module;
    if !n.is_abelian() {
        return Err(Error::NotAbelian("coefficients".into()));
    }
    let q = &action.actor;
    let trivial = || H2Group {
        action: action.clone(),
        factors: Vec::new(),
        generators: Vec::new(),
        reducer: Reducer::Trivial,
    };
    if n.order() == 1 || q.order() == 1 {
        return Ok(trivial());
    }
    let layout = Layout::new(action)?;
    let (m, k, nq) = (layout.m, layout.k, layout.q);
    let d2 = layout.dim2();
    budget::check("H^2 unknowns", d2 as u128, budget.h2_unknowns as u128)?;
    let mats: Vec<Vec<Vec<u64>>> = q.elements().map(|x| layout.dec.action_matrix(action, x)).collect();

    // Cocycle constraints, one row per (x, y, z, i), scaled so that "≡ 0 mod d_i"
    // becomes "≡ 0 mod M".
    let mut constraints = RowLattice::new(d2, m);
    let mut row = vec![0u64; d2];
    for x in 1..nq {
        for y in 1..nq {
            let xy = q.mul(x, y);
            for z in 1..nq {
                let yz = q.mul(y, z);
                for i in 0..k {
                    row.iter_mut().for_each(|r| *r = 0);
                    for j in 0..k {
                        let c = layout.cell(y, z, j);
                        row[c] = (row[c] + mats[x][i][j]) % m;
                    }
                    if xy != 0 {
                        let c = layout.cell(xy, z, i);
                        row[c] = (row[c] + m - 1) % m;
                    }
                    if yz != 0 {
                        let c = layout.cell(x, yz, i);
                        row[c] = (row[c] + 1) % m;
                    }
                    let c = layout.cell(x, y, i);
                    row[c] = (row[c] + m - 1) % m;
                    let scale = m / layout.modulus(i);
                    let scaled: Vec<u64> = row.iter().map(|&r| r * scale % m).collect();
                    constraints.insert(&scaled);
                }
            }
        }
    }
    let mut cocycles = RowLattice::new(d2, m);
    for g in zmod::kernel(&constraints.matrix(), d2, m) {
        cocycles.insert(&g);
    }

    // Relations: coboundaries, the moduli of each cell, and the relations
    // among the echelon rows of the cocycle lattice.
    let mut relations = RowLattice::new(d2, m);
    let coords = |v: &[u64]| {
        cocycles
            .coords(v)
            .ok_or_else(|| Error::InvalidCocycle("coboundary outside the cocycle lattice".into()))
    };
    for z in 1..nq {
        for j in 0..k {
            relations.insert(&coords(&layout.d1_column(action, &mats, z, j))?);
        }
    }
    for x in 1..nq {
        for y in 1..nq {
            for j in 0..k {
                let mut v = vec![0u64; d2];
                v[layout.cell(x, y, j)] = layout.modulus(j) % m;
                relations.insert(&coords(&v)?);
            }
        }
    }
    for t in 0..d2 {
        let e = m / cocycles.pivot(t);
        let scaled: Vec<u64> = cocycles.row(t).iter().map(|&r| r * e % m).collect();
        let mut rel = coords(&scaled)?;
        rel = rel.iter().map(|&r| (m - r) % m).collect();
        rel[t] = (rel[t] + e) % m;
        relations.insert(&rel);
    }

    let smith = zmod::smith(&relations.matrix(), d2, m);
    let mut positions = Vec::new();
    let mut factors = Vec::new();
    for (col, &d) in smith.diag.iter().enumerate() {
        if d > 1 {
            positions.push(col);
            factors.push(d);
        }
    }
    let generators = positions
        .iter()
        .map(|&col| {
            let v = cocycles.combination(&smith.right_inv[col]);
            TwoCocycle::new(action.clone(), layout.cochain(n, &v))
        })
        .collect::<Result<Vec<_>>>()?;
    let reducer = LinearReducer { layout, cocycles, right: smith.right, positions, factors: factors.clone() };
    Ok(H2Group {
        action: action.clone(),
        factors,
        generators,
        reducer: Reducer::Linear(Box::new(reducer)),
    })
}

/// A normalized 1-cochain `c` with `f − g = dc`, if the two cocycles are cohomologous.
pub fn coboundary_witness(f: &TwoCocycle, g: &TwoCocycle) -> Result<Option<Vec<usize>>> {
    f.same_action(g)?;
    let action = f.action().clone();
    let (q, n) = (&action.actor, &action.module);
    let diff = f.sub(g)?;
    if diff.is_zero() {
        return Ok(Some(vec![0; q.order()]));
    }
    if n.order() == 1 || q.order() == 1 {
        return Ok(Some(vec![0; q.order()]));
    }
    let layout = Layout::new(&action)?;
    let m = layout.m;
    let mats: Vec<Vec<Vec<u64>>> = q.elements().map(|x| layout.dec.action_matrix(&action, x)).collect();
    let (d1, d2) = (layout.dim1(), layout.dim2());
    let mut a = vec![vec![0u64; d1]; d2];
    for z in 1..q.order() {
        for j in 0..layout.k {
            let col = layout.d1_column(&action, &mats, z, j);
            for (r, &v) in col.iter().enumerate() {
                a[r][(z - 1) * layout.k + j] = v;
            }
        }
    }
    let mut b = layout.vector(&diff);
    for (r, row) in a.iter_mut().enumerate() {
        let scale = m / layout.modulus(r % layout.k);
        row.iter_mut().for_each(|v| *v = *v * scale % m);
        b[r] = b[r] * scale % m;
    }
    let Some(sol) = zmod::solve(&a, d1, &b, m) else {
        return Ok(None);
    };
    let mut c = vec![0usize; q.order()];
    for (z, cz) in c.iter_mut().enumerate().skip(1) {
        let coords: Vec<u64> = (0..layout.k).map(|j| sol[(z - 1) * layout.k + j]).collect();
        *cz = layout.dec.element(n, &coords);
    }
    let check = TwoCocycle::coboundary(&action, &c)?;
    if check != diff {
        return Err(Error::InvalidCocycle("linear solve returned a non-witness".into()));
    }
    Ok(Some(c))
}

// ---------------------------------------------------------------------------
// Brute-force route
// ---------------------------------------------------------------------------

/// `H²(Q, N)` by exhaustive search: backtracking over normalized cochains
/// (each cocycle identity is tested as soon as its last cell is assigned),
/// all coboundaries, cosets, and invariant factors from torsion counts.
pub fn h2_bruteforce(action: &Arc<ActionTable>, budget: &Budget) -> Result<H2Group> {
    let (q, n) = (&action.actor, &action.module);
    if !n.is_abelian() {
        return Err(Error::NotAbelian("coefficients".into()));
    }
    let (nq, nn) = (q.order(), n.order());
    let cocycles = enumerate_cocycles(action, budget)?;

    budget::check(
        "1-cochains for coboundaries",
        budget::pow_sat(nn, nq - 1),
        budget.candidates,
    )?;
    let mut boundaries: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut c = vec![0usize; nq];
    loop {
        boundaries.insert(TwoCocycle::coboundary(action, &c)?.values);
        if !crate::group::advance(&mut c[1..], nn) {
            break;
        }
    }
    let boundaries: Vec<Vec<usize>> = boundaries.into_iter().collect();

    let add = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().zip(b).map(|(&x, &y)| n.mul(x, y)).collect() };
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::with_capacity(cocycles.len());
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for z in &cocycles {
        if class_of.contains_key(z) {
            continue;
        }
        let id = reps.len();
        reps.push(z.clone());
        for b in &boundaries {
            let w = add(z, b);
            if class_of.insert(w, id).is_some_and(|old| old != id) {
                return Err(Error::InvalidCocycle("cosets overlap".into()));
            }
        }
    }
    if class_of.len() != cocycles.len() {
        return Err(Error::InvalidCocycle("a coboundary translate is not a cocycle".into()));
    }
    let h = reps.len();
    let table: Vec<Vec<usize>> = (0..h)
        .map(|a| (0..h).map(|b| class_of[&add(&reps[a], &reps[b])]).collect())
        .collect();
    let zero = class_of[&vec![0usize; nq * nq]];

    let factors = invariant_factors_from_torsion(&table, zero);
    let basis = find_basis(&table, zero, &factors)
        .ok_or_else(|| Error::InvalidCocycle("no basis matching the invariant factors".into()))?;

    // coefficient vector of every class
    let mut coeffs = vec![Vec::new(); h];
    let mut seen = vec![false; h];
    let mut digits = vec![0u64; factors.len()];
    loop {
        let mut cls = zero;
        for (&b, &d) in basis.iter().zip(&digits) {
            for _ in 0..d {
                cls = table[cls][b];
            }
        }
        if seen[cls] {
            return Err(Error::InvalidCocycle("basis is not independent".into()));
        }
        seen[cls] = true;
        coeffs[cls] = digits.clone();
        let mut k = digits.len();
        let more = loop {
            if k == 0 {
                break false;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < factors[k] {
                break true;
            }
            digits[k] = 0;
        };
        if !more {
            break;
        }
    }
    let generators = basis
        .iter()
        .map(|&b| TwoCocycle::new(action.clone(), reps[b].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(H2Group {
        action: action.clone(),
        factors,
        generators,
        reducer: Reducer::Table { class_of, coeffs },
    })
}

/// All normalized 2-cocycles, in lexicographic order of their value arrays.
pub fn enumerate_cocycles(action: &ActionTable, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let (q, n) = (&action.actor, &action.module);
    let (nq, nn) = (q.order(), n.order());
    if nq == 1 {
        return Ok(vec![vec![0]]);
    }
    let cells: Vec<(usize, usize)> = (1..nq).flat_map(|x| (1..nq).map(move |y| (x, y))).collect();
    let pos = |x: usize, y: usize| (x - 1) * (nq - 1) + (y - 1);
    // triples to test once their highest-numbered cell is assigned
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); cells.len()];
    for x in 1..nq {
        for y in 1..nq {
            for z in 1..nq {
                let (xy, yz) = (q.mul(x, y), q.mul(y, z));
                let mut last = pos(y, z).max(pos(x, y));
                if xy != 0 {
                    last = last.max(pos(xy, z));
                }
                if yz != 0 {
                    last = last.max(pos(x, yz));
                }
                due[last].push((x, y, z));
            }
        }
    }
    let mut f = vec![0usize; nq * nq];
    let mut out = Vec::new();
    let mut nodes: u128 = 0;
    let limit = budget.h2_search_nodes;
    let mut stack = vec![0usize];
    // iterative depth-first search; stack[d] is the next value to try in cell d
    while let Some(&next) = stack.last() {
        let d = stack.len() - 1;
        if next == nn {
            stack.pop();
            continue;
        }
        *stack.last_mut().unwrap() += 1;
        nodes += 1;
        if nodes > limit {
            return Err(Error::BudgetExceeded {
                what: "2-cocycle search nodes",
                needed: nodes,
                budget: limit,
            });
        }
        let (cx, cy) = cells[d];
        f[cx * nq + cy] = next;
        let val = |a: usize, b: usize| f[a * nq + b];
        let ok = due[d].iter().all(|&(x, y, z)| {
            let lhs = n.mul(action.apply(x, val(y, z)), val(x, q.mul(y, z)));
            let rhs = n.mul(val(q.mul(x, y), z), val(x, y));
            lhs == rhs
        });
        if !ok {
            continue;
        }
        if d + 1 == cells.len() {
            out.push(f.clone());
        } else {
            stack.push(0);
        }
    }
    Ok(out)
}

/// Invariant factors of a finite abelian group given by its addition table,
/// read off from the sizes of the `p^i`-torsion subgroups.
fn invariant_factors_from_torsion(table: &[Vec<usize>], zero: usize) -> Vec<u64> {
    let h = table.len();
    let times = |a: usize, k: u64| {
        let mut x = zero;
        for _ in 0..k {
            x = table[x][a];
        }
        x
    };
    let torsion = |m: u64| (0..h).filter(|&a| times(a, m) == zero).count() as u64;
    let mut primes = Vec::new();
    let mut rest = h as u64;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    // per prime: exponents e_1 >= e_2 >= ... of the cyclic p-parts
    let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        let mut at_least = Vec::new();
        let mut prev = 1u64;
        let mut pk = p;
        loop {
            let t = torsion(pk);
            if t == prev {
                break;
            }
            // number of cyclic factors of exponent >= i is log_p(t / prev)
            let mut ratio = t / prev;
            let mut c = 0u32;
            while ratio > 1 {
                ratio /= p;
                c += 1;
            }
            at_least.push(c);
            prev = t;
            pk *= p;
        }
        let count = at_least.first().copied().unwrap_or(0) as usize;
        let exps: Vec<u32> = (0..count)
            .map(|j| at_least.iter().filter(|&&c| c as usize > j).count() as u32)
            .collect();
        parts.push((p, exps));
    }
    let r = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; r];
    for (p, exps) in &parts {
        for (j, &e) in exps.iter().enumerate() {
            factors[r - 1 - j] *= p.pow(e);
        }
    }
    factors
}

/// Elements `g_1, ..., g_r` of orders `d_1, ..., d_r` spanning the group freely.
fn find_basis(table: &[Vec<usize>], zero: usize, factors: &[u64]) -> Option<Vec<usize>> {
    let order_of = |a: usize| {
        let mut x = a;
        let mut k = 1u64;
        while x != zero {
            x = table[x][a];
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = (0..table.len()).map(order_of).collect();
    // largest factor first
    let slots: Vec<usize> = (0..factors.len()).rev().collect();
    let mut chosen = Vec::new();
    if !extend_basis(table, zero, factors, &slots, &orders, &mut chosen) {
        return None;
    }
    let mut basis = vec![0; factors.len()];
    for (&slot, &g) in slots.iter().zip(&chosen) {
        basis[slot] = g;
    }
    Some(basis)
}

fn extend_basis(
    table: &[Vec<usize>],
    zero: usize,
    factors: &[u64],
    slots: &[usize],
    orders: &[u64],
    chosen: &mut Vec<usize>,
) -> bool {
    let depth = chosen.len();
    if depth == slots.len() {
        return true;
    }
    let d = factors[slots[depth]];
    let expected: u64 = slots[..=depth].iter().map(|&i| factors[i]).product();
    for a in 0..table.len() {
        if orders[a] != d {
            continue;
        }
        chosen.push(a);
        if span_size(table, zero, chosen) as u64 == expected
            && extend_basis(table, zero, factors, slots, orders, chosen)
        {
            return true;
        }
        chosen.pop();
    }
    false
}

fn span_size(table: &[Vec<usize>], zero: usize, gens: &[usize]) -> usize {
    let mut seen: HashSet<usize> = HashSet::from([zero]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = table[x][g];
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

// ---------------------------------------------------------------------------
// Maps into H²
// ---------------------------------------------------------------------------

/// The class of `f ∘ (p × p)` in `H²(G, N)`.
pub fn inflation_h2(p: &GroupHom, f: &TwoCocycle, h2_g: &H2Group) -> Result<Vec<u64>> {
    let inflated = f.inflate(p, h2_g.action())?;
    h2_g.reduce(&inflated)
}

/// `η(β)`: the pushforward `β ∘ f_E` of the extension cocycle.
pub fn transgression_eta(ext: &AbelianExtension, beta: &[usize]) -> Result<TwoCocycle> {
    ext.cocycle().pushforward(beta)
}

/// The connecting map `Z¹(Q, Q̄) → H²(Q, N)` for the central extension
/// `0 → N → C_G(N) → Q̄ → 1`, using the least element of each fiber as lift.
pub fn connecting_delta(ext: &AbelianExtension, cd: &CentralizerData, phi: &CrossedHom) -> Result<TwoCocycle> {
    connecting_delta_with_lift(ext, cd, phi, cd.central_ext.sections())
}

/// As [`connecting_delta`] with an explicit normalized lift `Q̄ → C_G(N)` (local indices).
pub fn connecting_delta_with_lift(
    ext: &AbelianExtension,
    cd: &CentralizerData,
    phi: &CrossedHom,
    lift: &[usize],
) -> Result<TwoCocycle> {
    if phi.action().as_ref() != cd.qbar_action.as_ref() {
        return Err(Error::Mismatch);
    }
    let ce = &cd.central_ext;
    let (c, q) = (&ce.g, &ext.q);
    if lift.len() != ce.q.order() || lift[0] != 0 || (0..lift.len()).any(|b| ce.p.apply(lift[b]) != b) {
        return Err(Error::Precondition("lift must be a normalized section of C_G(N) -> Q̄".into()));
    }
    let s = |x: usize| lift[phi.value(x)];
    let mut values = Vec::with_capacity(q.order() * q.order());
    for x in q.elements() {
        for y in q.elements() {
            let t = c.mul(c.mul(s(x), cd.cgn_action.apply(x, s(y))), c.inv(s(q.mul(x, y))));
            let v = ce
                .preimage(t)
                .ok_or_else(|| Error::InvalidCocycle(format!("defect at ({x}, {y}) is outside N")))?;
            values.push(v);
        }
    }
    TwoCocycle::new(ext.action.clone(), values)
}

/// Every normalized lift `Q̄ → C_G(N)`, in lexicographic order.
pub fn all_lifts(cd: &CentralizerData, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let ce = &cd.central_ext;
    let nb = ce.q.order();
    let fibers: Vec<Vec<usize>> = (0..nb)
        .map(|b| ce.g.elements().filter(|&c| ce.p.apply(c) == b).collect())
        .collect();
    let count = budget::pow_sat(ce.n.order(), nb.saturating_sub(1));
    budget::check("lifts", count, budget.lifts)?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; nb];
    loop {
        out.push(digits.iter().zip(&fibers).map(|(&d, f)| f[d]).collect());
        if nb <= 1 || !crate::group::advance(&mut digits[1..], ce.n.order()) {
            break;
        }
    }
    Ok(out)
}
