//! Abelian extensions `0 → N → G → Q → 1` and the central extension
//! `0 → N → C_G(N) → Q̄ → 1` attached to them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology2::TwoCocycle;
use crate::error::{Error, Result};
use crate::group::{
    centralizer, conjugation_action_on_quotient, is_normal, ActionTable, FiniteGroup, GroupHom,
    GroupJson, Subgroup,
};

#[derive(Clone, Debug)]
pub struct AbelianExtension {
    pub n: Arc<FiniteGroup>,
    pub g: Arc<FiniteGroup>,
    pub q: Arc<FiniteGroup>,
    pub i: GroupHom,
    pub p: GroupHom,
    /// `Q` acting on `N` through conjugation in `G`.
    pub action: Arc<ActionTable>,
    /// The same action pulled back to `G`; agrees with conjugation by `G`.
    pub g_action: Arc<ActionTable>,
    section: Vec<usize>,
    i_inv: Vec<Option<usize>>,
}

impl AbelianExtension {
    /// Validates exactness and builds the induced action and the section
    /// `u(q) = least element of p⁻¹(q)`.
    pub fn new(i: GroupHom, p: GroupHom) -> Result<Self> {
        if i.target.as_ref() != p.source.as_ref() {
            return Err(Error::InvalidExtension("i and p do not share the middle group".into()));
        }
        let (n, g, q) = (i.source.clone(), p.source.clone(), p.target.clone());
        if !n.is_abelian() {
            return Err(Error::NotAbelian("kernel of the extension".into()));
        }
        if !i.is_injective() {
            return Err(Error::InvalidExtension("i is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(Error::InvalidExtension("p is not surjective".into()));
        }
        if i.image_elements() != p.kernel_elements() {
            return Err(Error::InvalidExtension("image of i differs from kernel of p".into()));
        }
        let mut section = vec![usize::MAX; q.order()];
        for x in g.elements() {
            let s = &mut section[p.apply(x)];
            if *s == usize::MAX {
                *s = x;
            }
        }
        debug_assert_eq!(section[0], 0);
        let mut i_inv = vec![None; g.order()];
        for a in n.elements() {
            i_inv[i.apply(a)] = Some(a);
        }
        let action = conjugation_action_on_quotient(&i, &p)?;
        let g_action = action.pullback(&p)?;
        let ext = AbelianExtension {
            n,
            g,
            q,
            i,
            p,
            action: Arc::new(action),
            g_action: Arc::new(g_action),
            section,
            i_inv,
        };
        ext.check_section()?;
        Ok(ext)
    }

    fn check_section(&self) -> Result<()> {
        for x in self.q.elements() {
            let u = self.section[x];
            if self.p.apply(u) != x {
                return Err(Error::InvalidExtension(format!("section fails at {x}")));
            }
            for a in self.n.elements() {
                let lhs = self.i.apply(self.action.apply(x, a));
                let rhs = self.g.conj(u, self.i.apply(a));
                if lhs != rhs {
                    return Err(Error::InvalidExtension(format!(
                        "action disagrees with conjugation at ({x}, {a})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `0 → C_n → D_n → C_2 → 1` with the rotations as `N`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let d = Arc::new(crate::group::dihedral(n)?);
        let cn = Arc::new(crate::group::cyclic(n)?);
        let c2 = Arc::new(crate::group::cyclic(2)?);
        let i = GroupHom::new(cn, d.clone(), (0..n).collect())?;
        let p = GroupHom::new(d.clone(), c2, d.elements().map(|x| x / n).collect())?;
        AbelianExtension::new(i, p)
    }

    /// The split extension `N ⋊ Q`.
    pub fn semidirect(action: &ActionTable) -> Result<Self> {
        let (_, i, p) = crate::group::semidirect(action)?;
        AbelianExtension::new(i, p)
    }

    /// The extension `N × Q` with `(n1,q1)(n2,q2) = (n1 + q1·n2 + f(q1,q2), q1 q2)`
    /// at index `n + |N| q`.
    pub fn from_cocycle(f: &TwoCocycle) -> Result<Self> {
        let action = f.action();
        let (n, q) = (action.module.clone(), action.actor.clone());
        let nn = n.order();
        let mut gens: Vec<usize> = n.generators().iter().copied().filter(|&x| x != 0).collect();
        gens.extend(q.generators().iter().filter(|&&x| x != 0).map(|&x| x * nn));
        if gens.is_empty() {
            gens.push(0);
        }
        let g = Arc::new(FiniteGroup::from_fn(
            nn * q.order(),
            |x, y| {
                let (n1, q1) = (x % nn, x / nn);
                let (n2, q2) = (y % nn, y / nn);
                let sum = n.mul(n.mul(n1, action.apply(q1, n2)), f.value(q1, q2));
                sum + nn * q.mul(q1, q2)
            },
            Some(gens),
            None,
        )?);
        let i = GroupHom::new(n.clone(), g.clone(), n.elements().collect())?;
        let p = GroupHom::new(g.clone(), q.clone(), g.elements().map(|x| x / nn).collect())?;
        AbelianExtension::new(i, p)
    }

    pub fn section(&self, q: usize) -> usize {
        self.section[q]
    }

    pub fn sections(&self) -> &[usize] {
        &self.section
    }

    /// `i⁻¹(x)` for `x` in the image of `i`.
    pub fn preimage(&self, x: usize) -> Option<usize> {
        self.i_inv[x]
    }

    pub fn in_kernel(&self, x: usize) -> bool {
        self.i_inv[x].is_some()
    }

    /// `f(q1, q2) = i⁻¹(u(q1) u(q2) u(q1 q2)⁻¹)`.
    pub fn cocycle(&self) -> TwoCocycle {
        self.cocycle_for_section(&self.section)
            .expect("the canonical section is normalized")
    }

    /// The extension cocycle for an arbitrary normalized section.
    pub fn cocycle_for_section(&self, section: &[usize]) -> Result<TwoCocycle> {
        let (q, g) = (&self.q, &self.g);
        if section.len() != q.order() || section[0] != 0 {
            return Err(Error::Precondition("section must be normalized".into()));
        }
        if q.elements().any(|x| self.p.apply(section[x]) != x) {
            return Err(Error::Precondition("not a section of p".into()));
        }
        let mut values = Vec::with_capacity(q.order() * q.order());
        for x in q.elements() {
            for y in q.elements() {
                let prod = g.mul(g.mul(section[x], section[y]), g.inv(section[q.mul(x, y)]));
                values.push(self.i_inv[prod].expect("defect lies in N"));
            }
        }
        TwoCocycle::new(self.action.clone(), values)
    }

    /// Is `h: G → G` compatible with `i` and `p` as the identity on both ends?
    pub fn is_equivalence_to(&self, other: &AbelianExtension, h: &GroupHom) -> bool {
        self.n.as_ref() == other.n.as_ref()
            && self.q.as_ref() == other.q.as_ref()
            && h.is_injective()
            && self.n.elements().all(|a| h.apply(self.i.apply(a)) == other.i.apply(a))
            && self.g.elements().all(|x| other.p.apply(h.apply(x)) == self.p.apply(x))
    }

    /// An equivalence `G → G'` of extensions (identity on `N` and `Q`), if one exists.
    pub fn find_equivalence(&self, other: &AbelianExtension) -> Option<GroupHom> {
        if self.n.as_ref() != other.n.as_ref()
            || self.q.as_ref() != other.q.as_ref()
            || self.action.as_ref() != other.action.as_ref()
        {
            return None;
        }
        // each generator must land in the fiber over its own image in Q
        let gens = self.g.generators().to_vec();
        let fibers: Vec<Vec<usize>> = gens
            .iter()
            .map(|&x| {
                let q = self.p.apply(x);
                other.g.elements().filter(|&y| other.p.apply(y) == q).collect()
            })
            .collect();
        let mut digits = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = digits.iter().zip(&fibers).map(|(&d, f)| f[d]).collect();
            if let Some(map) = crate::group::extend_on_generators(&self.g, &other.g, &images) {
                if let Ok(h) = GroupHom::new(self.g.clone(), other.g.clone(), map) {
                    if self.is_equivalence_to(other, &h) {
                        return Some(h);
                    }
                }
            }
            let mut k = digits.len();
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < fibers[k].len() {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    pub fn is_split(&self) -> bool {
        // a homomorphic section exists iff some complement maps isomorphically onto Q
        let gens = self.q.generators().to_vec();
        let fibers: Vec<Vec<usize>> = gens
            .iter()
            .map(|&x| self.g.elements().filter(|&y| self.p.apply(y) == x).collect())
            .collect();
        let mut digits = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = digits.iter().zip(&fibers).map(|(&d, f)| f[d]).collect();
            if crate::group::extend_on_generators(&self.q, &self.g, &images).is_some() {
                return true;
            }
            let mut k = digits.len();
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < fibers[k].len() {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    pub fn centralizer_data(&self) -> Result<CentralizerData> {
        CentralizerData::new(self)
    }

    pub fn to_json(&self) -> ExtensionJson {
        ExtensionJson {
            n: self.n.to_json(),
            g: self.g.to_json(),
            q: self.q.to_json(),
            i: self.i.map().to_vec(),
            p: self.p.map().to_vec(),
        }
    }

    pub fn from_json(json: &ExtensionJson) -> Result<Self> {
        let n = Arc::new(FiniteGroup::from_json(&json.n)?);
        let g = Arc::new(FiniteGroup::from_json(&json.g)?);
        let q = Arc::new(FiniteGroup::from_json(&json.q)?);
        let i = GroupHom::new(n, g.clone(), json.i.clone())?;
        let p = GroupHom::new(g, q, json.p.clone())?;
        AbelianExtension::new(i, p)
    }
}

/// Groups inline plus the maps `i` and `p` as index arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub n: GroupJson,
    pub g: GroupJson,
    pub q: GroupJson,
    pub i: Vec<usize>,
    pub p: Vec<usize>,
}

/// `C_G(N)`, `Q̄ = C_G(N)/N ⊆ Q` and the actions of `Q` on both.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    /// `C_G(N)` with its embedding `j` into `G`.
    pub cgn: Subgroup,
    /// `Q̄` as a subgroup of `Q`; `qbar.embedding` is the inclusion `Q̄ → Q`.
    pub qbar: Subgroup,
    /// `0 → N → C_G(N) → Q̄ → 1`.
    pub central_ext: AbelianExtension,
    /// `Q` on `Q̄` by conjugation in `Q`.
    pub qbar_action: Arc<ActionTable>,
    /// `Q` on `C_G(N)` by conjugation with the section `u(q)`.
    pub cgn_action: Arc<ActionTable>,
}

impl CentralizerData {
    pub fn new(ext: &AbelianExtension) -> Result<Self> {
        let g = &ext.g;
        let q = &ext.q;
        let n_in_g = ext.i.image_elements();
        let cgn = centralizer(g, &n_in_g);

        // N is central in C_G(N)
        for &a in &n_in_g {
            if cgn.local_index(a).is_none() {
                return Err(Error::InvalidExtension("N is not contained in its centralizer".into()));
            }
            if cgn.elements_in_parent().iter().any(|&c| !g.commutes(a, c)) {
                return Err(Error::InvalidExtension("N is not central in C_G(N)".into()));
            }
        }

        let mut image: Vec<usize> = cgn.elements_in_parent().iter().map(|&c| ext.p.apply(c)).collect();
        image.sort_unstable();
        image.dedup();
        let kernel = ext.action.kernel_elements();
        if image != kernel {
            return Err(Error::InvalidExtension(
                "p(C_G(N)) differs from the kernel of the action".into(),
            ));
        }
        if !is_normal(q, &image) {
            return Err(Error::NotNormal);
        }
        let qbar = Subgroup::from_elements(q, &image)?;

        let cgn_group = cgn.group.clone();
        let i_local: Vec<usize> = ext
            .n
            .elements()
            .map(|a| cgn.local_index(ext.i.apply(a)).expect("N inside C_G(N)"))
            .collect();
        let p_local: Vec<usize> = cgn
            .elements_in_parent()
            .iter()
            .map(|&c| qbar.local_index(ext.p.apply(c)).expect("image is Q̄"))
            .collect();
        let i2 = GroupHom::new(ext.n.clone(), cgn_group.clone(), i_local)?;
        let p2 = GroupHom::new(cgn_group.clone(), qbar.group.clone(), p_local)?;
        let central_ext = AbelianExtension::new(i2, p2)?;
        if !central_ext.action.is_trivial() {
            return Err(Error::InvalidExtension("N is not central in C_G(N)".into()));
        }

        let qbar_action = ActionTable::from_fn(q.clone(), qbar.group.clone(), |x, b| {
            qbar.local_index(q.conj(x, qbar.embedding.apply(b))).expect("Q̄ is normal")
        })?;
        let cgn_action = ActionTable::from_fn(q.clone(), cgn_group.clone(), |x, c| {
            let img = g.conj(ext.section(x), cgn.embedding.apply(c));
            cgn.local_index(img).expect("C_G(N) is normal")
        })?;
        Ok(CentralizerData {
            cgn,
            qbar,
            central_ext,
            qbar_action: Arc::new(qbar_action),
            cgn_action: Arc::new(cgn_action),
        })
    }
}
