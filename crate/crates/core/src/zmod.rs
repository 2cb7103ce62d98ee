//! Linear algebra over `Z/M`.
//!
//! A submodule of `(Z/M)^d` is the same thing as a lattice `L` with
//! `M Z^d ⊆ L ⊆ Z^d`, so every computation here is an integer lattice
//! computation that may reduce entries mod `M` at will. Only unimodular
//! integer row/column operations are used, which keeps the transforms
//! invertible over every quotient.

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
fn md(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// `s x + t y (mod m)`, elementwise.
fn combine(x: &[u64], y: &[u64], s: i128, t: i128, m: u64) -> Vec<u64> {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| md(s * a as i128 + t * b as i128, m))
        .collect()
}

/// Row-style Hermite basis of a lattice containing `M Z^d`, built incrementally.
///
/// Row `i` (when present) has its first nonzero entry at column `i`; the
/// pivot divides `M`. Absent rows stand for `M e_i`. Rows are kept reduced:
/// entries above a pivot are reduced modulo that pivot.
#[derive(Clone, Debug)]
pub struct RowLattice {
    modulus: u64,
    dim: usize,
    rows: Vec<Option<Vec<u64>>>,
    pivots: Vec<u64>,
}

impl RowLattice {
    pub fn new(dim: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        RowLattice {
            modulus,
            dim,
            rows: vec![None; dim],
            pivots: vec![modulus; dim],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Pivot of row `i`; `M` when the row is implicit.
    pub fn pivot(&self, i: usize) -> u64 {
        self.pivots[i]
    }

    /// Row `i` reduced mod `M` (all zero for an implicit row).
    pub fn row(&self, i: usize) -> Vec<u64> {
        match &self.rows[i] {
            Some(r) => r.clone(),
            None => vec![0; self.dim],
        }
    }

    /// Adds `v` to the generating set.
    pub fn insert(&mut self, v: &[u64]) {
        let m = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        let mut i = 0;
        while i < self.dim {
            let vi = v[i];
            if vi == 0 {
                i += 1;
                continue;
            }
            let p = self.pivots[i];
            if vi % p == 0 {
                let k = (vi / p) as i128;
                let h = self.rows[i].as_ref().expect("pivot below M has a row");
                v = combine(&v, h, 1, -k, m);
                i += 1;
                continue;
            }
            let (g, s, t) = ext_gcd(p as i128, vi as i128);
            let (new_row, rest) = match &self.rows[i] {
                Some(h) => {
                    let mut new_row = combine(h, &v, s, t, m);
                    new_row[i] = g as u64;
                    let rest = combine(&v, h, p as i128 / g, -(vi as i128) / g, m);
                    (new_row, rest)
                }
                None => {
                    let mut new_row: Vec<u64> = v.iter().map(|&x| md(t * x as i128, m)).collect();
                    new_row[i] = g as u64;
                    let mut rest: Vec<u64> = v.iter().map(|&x| md((p as i128 / g) * x as i128, m)).collect();
                    rest[i] = 0;
                    (new_row, rest)
                }
            };
            debug_assert_eq!(rest[i], 0);
            self.pivots[i] = g as u64;
            self.rows[i] = Some(new_row);
            self.reduce_row(i);
            self.reduce_column(i);
            v = rest;
            i += 1;
        }
    }

    /// Reduces row `i` against later pivots.
    fn reduce_row(&mut self, i: usize) {
        let m = self.modulus;
        let mut row = self.rows[i].take().expect("row present");
        for j in i + 1..self.dim {
            let pj = self.pivots[j];
            if row[j] >= pj {
                let k = (row[j] / pj) as i128;
                match &self.rows[j] {
                    Some(h) => row = combine(&row, h, 1, -k, m),
                    None => row[j] %= m,
                }
            }
        }
        self.rows[i] = Some(row);
    }

    /// Reduces column `i` of earlier rows modulo the pivot of row `i`.
    fn reduce_column(&mut self, i: usize) {
        let m = self.modulus;
        let p = self.pivots[i];
        let h = self.rows[i].clone().expect("row present");
        for k in 0..i {
            if let Some(r) = &mut self.rows[k] {
                if r[i] >= p {
                    let c = (r[i] / p) as i128;
                    *r = combine(r, &h, 1, -c, m);
                }
            }
        }
    }

    /// Integer coordinates of `v` in the row basis (mod `M`), or `None` if `v ∉ L`.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        let mut x = vec![0u64; self.dim];
        for i in 0..self.dim {
            let p = self.pivots[i];
            if v[i] % p != 0 {
                return None;
            }
            let k = v[i] / p;
            x[i] = k;
            if k != 0 {
                let h = self.rows[i].as_ref().expect("nonzero coordinate needs a row");
                v = combine(&v, h, 1, -(k as i128), m);
            }
        }
        Some(x)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coords(v).is_some()
    }

    /// `Σ x_i row_i (mod M)`.
    pub fn combination(&self, x: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut out = vec![0u64; self.dim];
        for (i, &k) in x.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if let Some(h) = &self.rows[i] {
                out = combine(&out, h, 1, k as i128, m);
            }
        }
        out
    }

    /// Dense basis matrix (implicit rows are zero mod `M`).
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|i| self.row(i)).collect()
    }

    /// `|(Z/M)^d / L|` is `∏ pivots`; this returns `|L / M Z^d|`.
    pub fn size(&self) -> u128 {
        self.pivots
            .iter()
            .map(|&p| (self.modulus / p) as u128)
            .product()
    }
}

/// Smith form `L A R = S` over `Z/M` with the right transform.
#[derive(Clone, Debug)]
pub struct Smith {
    /// One entry per column: `gcd(s_i, M)`, with `M` for a zero diagonal entry.
    /// Each entry divides the next.
    pub diag: Vec<u64>,
    pub right: Vec<Vec<u64>>,
    pub right_inv: Vec<Vec<u64>>,
}

/// Smith form of `a` (rows × `cols`) over `Z/M`.
pub fn smith(a: &[Vec<u64>], cols: usize, m: u64) -> Smith {
    let mut a: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
    let rows = a.len();
    let mut right: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| u64::from(i == j) % m).collect())
        .collect();
    let mut right_inv = right.clone();
    let weight = |x: u64| if x == 0 { m } else { gcd(x, m) };

    let mut diag = Vec::with_capacity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least weight
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.map_or(true, |(w, _, _)| weight(x) < w) {
                    best = Some((weight(x), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);
        right_inv.swap(t, pj);

        loop {
            for i in t + 1..rows {
                let b = a[i][t];
                if b == 0 {
                    continue;
                }
                let p = a[t][t];
                if p != 0 && b % p == 0 {
                    let k = (b / p) as i128;
                    a[i] = combine(&a[i], &a[t], 1, -k, m);
                } else {
                    let (g, s, tt) = ext_gcd(p as i128, b as i128);
                    let new_t = combine(&a[t], &a[i], s, tt, m);
                    let new_i = combine(&a[i], &a[t], p as i128 / g, -(b as i128) / g, m);
                    a[t] = new_t;
                    a[i] = new_i;
                }
            }
            for j in t + 1..cols {
                let b = a[t][j];
                if b == 0 {
                    continue;
                }
                let p = a[t][t];
                let (g, s, tt) = if p != 0 && b % p == 0 {
                    (p as i128, 1, 0)
                } else {
                    ext_gcd(p as i128, b as i128)
                };
                let (pa, pb) = (p as i128 / g, b as i128 / g);
                col_op(&mut a, t, j, s, tt, pa, pb, m);
                col_op(&mut right, t, j, s, tt, pa, pb, m);
                // inverse transform acts on rows t, j of right_inv
                let rt = combine(&right_inv[t], &right_inv[j], pa, pb, m);
                let rj = combine(&right_inv[j], &right_inv[t], s, -tt, m);
                right_inv[t] = rt;
                right_inv[j] = rj;
            }
            if (t + 1..rows).all(|i| a[i][t] == 0) && (t + 1..cols).all(|j| a[t][j] == 0) {
                break;
            }
        }

        // divisibility by the pivot weight
        let w = weight(a[t][t]);
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % w != 0));
        if let Some(i) = offender {
            a[t] = combine(&a[t], &a[i], 1, 1, m);
            continue;
        }
        diag.push(w);
        t += 1;
    }
    while diag.len() < cols {
        diag.push(m);
    }
    Smith { diag, right, right_inv }
}

fn swap_cols(a: &mut [Vec<u64>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `col_t <- s col_t + t col_j`, `col_j <- -pb col_t + pa col_j`.
#[allow(clippy::too_many_arguments)]
fn col_op(a: &mut [Vec<u64>], ct: usize, cj: usize, s: i128, t: i128, pa: i128, pb: i128, m: u64) {
    for row in a.iter_mut() {
        let (x, y) = (row[ct] as i128, row[cj] as i128);
        row[ct] = md(s * x + t * y, m);
        row[cj] = md(-pb * x + pa * y, m);
    }
}

/// Generators of `{x : A x ≡ 0 (mod M)}` for `A` with `cols` columns.
pub fn kernel(a: &[Vec<u64>], cols: usize, m: u64) -> Vec<Vec<u64>> {
    let s = smith(a, cols, m);
    let mut gens = Vec::new();
    for (i, &d) in s.diag.iter().enumerate() {
        if d == 1 {
            continue;
        }
        let scale = m / d;
        let v: Vec<u64> = (0..cols).map(|r| md(s.right[r][i] as i128 * scale as i128, m)).collect();
        if v.iter().any(|&x| x != 0) {
            gens.push(v);
        }
    }
    gens
}

/// A solution of `A x ≡ b (mod M)`, if any.
pub fn solve(a: &[Vec<u64>], cols: usize, b: &[u64], m: u64) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len());
    if m == 1 {
        return Some(vec![0; cols]);
    }
    let aug: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(md(-(bi as i128), m));
            r
        })
        .collect();
    let gens = kernel(&aug, cols + 1, m);
    // find a combination whose last coordinate is 1
    let mut acc = vec![0u64; cols + 1];
    let mut g_acc: i128 = 0;
    for v in &gens {
        let lam = v[cols] as i128;
        if lam == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(g_acc, lam);
        if g_acc == 0 {
            acc = v.clone();
            g_acc = lam;
            continue;
        }
        acc = combine(&acc, v, s, t, m);
        g_acc = g;
    }
    let g = gcd(md(g_acc, m), m);
    if g != 1 {
        return None;
    }
    // acc has last coordinate ≡ g_acc, a unit; rescale to 1
    let (_, inv, _) = ext_gcd(acc[cols] as i128, m as i128);
    let x: Vec<u64> = acc[..cols].iter().map(|&v| md(v as i128 * inv, m)).collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(a: &[Vec<u64>], x: &[u64], m: u64) -> Vec<u64> {
        a.iter()
            .map(|r| md(r.iter().zip(x).map(|(&p, &q)| p as i128 * q as i128).sum(), m))
            .collect()
    }

    /// all x in (Z/M)^cols with A x = 0, by enumeration
    fn brute_kernel(a: &[Vec<u64>], cols: usize, m: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut x = vec![0usize; cols];
        loop {
            let xv: Vec<u64> = x.iter().map(|&v| v as u64).collect();
            if mat_vec(a, &xv, m).iter().all(|&y| y == 0) {
                out.push(xv);
            }
            if !crate::group::advance(&mut x, m as usize) {
                break;
            }
        }
        out
    }

    fn span(gens: &[Vec<u64>], cols: usize, m: u64) -> std::collections::BTreeSet<Vec<u64>> {
        let mut set = std::collections::BTreeSet::from([vec![0u64; cols]]);
        loop {
            let mut added = false;
            let current: Vec<Vec<u64>> = set.iter().cloned().collect();
            for s in &current {
                for g in gens {
                    let v = combine(s, g, 1, 1, m);
                    added |= set.insert(v);
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, s, t) = ext_gcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g, gcd(a.unsigned_abs() as u64, b.unsigned_abs() as u64) as i128);
            }
        }
    }

    #[test]
    fn lattice_membership_matches_span() {
        let m = 12;
        let gens = vec![vec![4, 6, 0], vec![0, 3, 8], vec![6, 6, 6]];
        let mut lat = RowLattice::new(3, m);
        for g in &gens {
            lat.insert(g);
        }
        let sp = span(&gens, 3, m);
        assert_eq!(lat.size(), sp.len() as u128);
        let mut x = vec![0usize; 3];
        loop {
            let v: Vec<u64> = x.iter().map(|&a| a as u64).collect();
            let c = lat.coords(&v);
            assert_eq!(c.is_some(), sp.contains(&v), "{v:?}");
            if let Some(c) = c {
                assert_eq!(lat.combination(&c), v);
            }
            if !crate::group::advance(&mut x, m as usize) {
                break;
            }
        }
    }

    #[test]
    fn kernel_matches_enumeration() {
        let cases: Vec<(Vec<Vec<u64>>, usize, u64)> = vec![
            (vec![vec![2, 4, 0], vec![0, 3, 3]], 3, 6),
            (vec![vec![1, 1, 1, 1]], 4, 4),
            (vec![vec![0, 0], vec![0, 0]], 2, 5),
            (vec![vec![2, 0], vec![0, 2], vec![2, 2]], 2, 8),
            (vec![vec![3, 6, 9], vec![4, 8, 0], vec![6, 0, 6]], 3, 12),
        ];
        for (a, cols, m) in cases {
            let ker = kernel(&a, cols, m);
            for v in &ker {
                assert!(mat_vec(&a, v, m).iter().all(|&y| y == 0));
            }
            let brute: std::collections::BTreeSet<_> = brute_kernel(&a, cols, m).into_iter().collect();
            assert_eq!(span(&ker, cols, m), brute);
        }
    }

    #[test]
    fn smith_transforms_are_inverse() {
        let a = vec![vec![3, 6, 9, 2], vec![4, 8, 0, 10], vec![6, 0, 6, 1]];
        let m = 12;
        let s = smith(&a, 4, m);
        for i in 0..4 {
            for j in 0..4 {
                let v: i128 = (0..4).map(|k| s.right[i][k] as i128 * s.right_inv[k][j] as i128).sum();
                assert_eq!(md(v, m), u64::from(i == j));
            }
        }
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn solve_linear_systems() {
        let a = vec![vec![2, 3], vec![4, 1]];
        let m = 10;
        let mut x = vec![0usize; 2];
        let mut reachable = std::collections::BTreeSet::new();
        loop {
            let xv: Vec<u64> = x.iter().map(|&v| v as u64).collect();
            reachable.insert(mat_vec(&a, &xv, m));
            if !crate::group::advance(&mut x, m as usize) {
                break;
            }
        }
        let mut b = vec![0usize; 2];
        loop {
            let bv: Vec<u64> = b.iter().map(|&v| v as u64).collect();
            match solve(&a, 2, &bv, m) {
                Some(x) => assert_eq!(mat_vec(&a, &x, m), bv),
                None => assert!(!reachable.contains(&bv)),
            }
            if !crate::group::advance(&mut b, m as usize) {
                break;
            }
        }
    }
}
