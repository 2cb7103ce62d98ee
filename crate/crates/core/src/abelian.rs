//! Invariant-factor decomposition of a finite abelian group given by table.

use crate::error::{Error, Result};
use crate::group::{ActionTable, FiniteGroup};
use crate::zmod;

/// An explicit isomorphism `N ≅ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    moduli: Vec<u64>,
    basis: Vec<usize>,
    coords: Vec<Vec<u64>>,
}

impl AbelianDecomposition {
    pub fn new(n: &FiniteGroup) -> Result<Self> {
        if !n.is_abelian() {
            return Err(Error::NotAbelian("module".into()));
        }
        let order = n.order();
        if order == 1 {
            return Ok(AbelianDecomposition {
                moduli: Vec::new(),
                basis: Vec::new(),
                coords: vec![Vec::new()],
            });
        }
        let gens: Vec<usize> = n.generators().iter().copied().filter(|&g| g != 0).collect();
        let r = gens.len();

        // Triangular relations: c_i g_i expressed in the span of g_1..g_{i-1}.
        let mut rep: Vec<Option<Vec<u64>>> = vec![None; order];
        rep[0] = Some(vec![0; r]);
        let mut span = vec![0usize];
        let mut relations: Vec<Vec<u64>> = Vec::with_capacity(r);
        let m = order as u64;
        for (i, &g) in gens.iter().enumerate() {
            let mut c = 1u64;
            let mut x = g;
            while rep[x].is_none() {
                x = n.mul(x, g);
                c += 1;
            }
            let mut rel: Vec<u64> = rep[x].as_ref().unwrap().iter().map(|&a| (m - a) % m).collect();
            rel[i] = (rel[i] + c) % m;
            relations.push(rel);
            let mut grown = Vec::with_capacity(span.len() * c as usize);
            for &s in &span {
                let mut y = s;
                for k in 0..c {
                    if k > 0 {
                        y = n.mul(y, g);
                        let mut v = rep[s].clone().unwrap();
                        v[i] = k;
                        rep[y] = Some(v);
                    }
                    grown.push(y);
                }
            }
            span = grown;
        }
        debug_assert_eq!(span.len(), order);

        // Rows are relations on row vectors; coordinates are v R mod d_j.
        let smith = zmod::smith(&relations, r, m);
        let mut moduli = Vec::new();
        let mut basis = Vec::new();
        for (j, &d) in smith.diag.iter().enumerate() {
            if d > 1 {
                moduli.push(d);
                // generator j is the row vector e_j R^{-1}
                let mut elem = 0;
                for (i, &gi) in gens.iter().enumerate() {
                    elem = n.mul(elem, n.pow(gi, smith.right_inv[j][i] as i64));
                }
                basis.push(elem);
            }
        }

        let mut coords = vec![Vec::new(); order];
        let mut filled = 0usize;
        let mut digits = vec![0usize; moduli.len()];
        loop {
            let mut elem = 0;
            for (k, &d) in digits.iter().enumerate() {
                elem = n.mul(elem, n.pow(basis[k], d as i64));
            }
            if !coords[elem].is_empty() {
                return Err(Error::InvalidGroup("decomposition is not injective".into()));
            }
            coords[elem] = digits.iter().map(|&d| d as u64).collect();
            filled += 1;
            if !advance_mixed(&mut digits, &moduli) {
                break;
            }
        }
        if filled != order {
            return Err(Error::InvalidGroup("decomposition is not surjective".into()));
        }
        Ok(AbelianDecomposition { moduli, basis, coords })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Exponent of the group (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.moduli.last().copied().unwrap_or(1)
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    /// Element with the given coordinates (reduced mod the moduli).
    pub fn element(&self, n: &FiniteGroup, coords: &[u64]) -> usize {
        let mut elem = 0;
        for (k, &c) in coords.iter().enumerate() {
            elem = n.mul(elem, n.pow(self.basis[k], (c % self.moduli[k]) as i64));
        }
        elem
    }

    /// Matrix of `x ↦ q·x` in coordinates: column `j` is the image of basis element `j`.
    pub fn action_matrix(&self, action: &ActionTable, q: usize) -> Vec<Vec<u64>> {
        let k = self.rank();
        let mut a = vec![vec![0u64; k]; k];
        for j in 0..k {
            let img = self.coords(action.apply(q, self.basis[j]));
            for i in 0..k {
                a[i][j] = img[i];
            }
        }
        a
    }
}

fn advance_mixed(digits: &mut [usize], moduli: &[u64]) -> bool {
    for (d, &m) in digits.iter_mut().zip(moduli).rev() {
        *d += 1;
        if (*d as u64) < m {
            return true;
        }
        *d = 0;
    }
    false
}
