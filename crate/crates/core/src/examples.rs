//! The two worked examples: dihedral groups `D_n` as extensions of `C2` by
//! `C_n`, and the semidirect product ring `S ⋊ R` over `Z/12`.

use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::extension::AbelianExtension;
use crate::group::{cyclic, FiniteGroup, GroupHom};
use crate::report::{Check, ExactnessReport};
use crate::ring::{semidirect_ring, verify_prop_qr, zmod_ring, BimoduleAction, FiniteRing, RingHom};
use crate::verify::ExtensionData;

/// `End^{C2}_{Cn}(Dn)` with every member written as `f_{k,l}`, where
/// `f_{k,l}(x) = x y^k` and `f_{k,l}(y) = y^{l+1}`.
///
/// Tables are indexed by `k + n l` in both rows, columns and entries.
#[derive(Clone, Debug, Serialize)]
pub struct DihedralReport {
    pub n: usize,
    /// `|End_{C2}(Cn)|`.
    pub q_endos: usize,
    /// `|End^{C2,Cn}(Dn)|`.
    pub ideal: usize,
    /// `|End^{C2}_{Cn}(Dn)|`.
    pub endos: usize,
    pub boxplus: Vec<Vec<usize>>,
    pub boxtimes: Vec<Vec<usize>>,
    pub checks: Vec<Check>,
    pub reports: Vec<ExactnessReport>,
}

impl DihedralReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed()) && self.reports.iter().all(|r| r.passed())
    }
}

/// `f_{k,l}` as an endomorphism of `D_n`.
pub fn dihedral_f(g: &Arc<FiniteGroup>, n: usize, k: usize, l: usize) -> Result<GroupHom> {
    // generators of D_n are [x, y] with x at index n and y at index 1
    GroupHom::from_generator_images(g.clone(), g.clone(), &[g.mul(n, k % n), (l + 1) % n])
}

pub fn dihedral_report(n: usize, budget: &Budget) -> Result<DihedralReport> {
    if !(3..=64).contains(&n) {
        return Err(Error::OutOfRange(format!("dihedral example n = {n} (need 3 <= n <= 64)")));
    }
    let ext = AbelianExtension::dihedral(n)?;
    let data = ExtensionData::new(format!("D{n}"), &ext, budget)?;
    let e = &data.endo;
    let g = &ext.g;
    let mut checks = Vec::new();

    // member index of f_{k,l}, and back
    let mut of_f = vec![usize::MAX; n * n];
    for k in 0..n {
        for l in 0..n {
            let f = dihedral_f(g, n, k, l)?;
            of_f[k + n * l] = e
                .index_of(f.map())
                .ok_or_else(|| Error::InvalidHom(format!("f_{{{k},{l}}} is not in End^Q_N(G)")))?;
        }
    }
    let mut to_f = vec![usize::MAX; e.len()];
    for (i, &m) in of_f.iter().enumerate() {
        to_f[m] = i;
    }
    checks.push(Check::from_witness(
        "members are exactly the f_{k,l}",
        format!("{} members", e.len()),
        to_f.iter().position(|&i| i == usize::MAX).map(|m| format!("member {m}")),
    ));

    let r = e.ring();
    let boxplus: Vec<Vec<usize>> =
        (0..n * n).map(|a| (0..n * n).map(|b| to_f[r.add(of_f[a], of_f[b])]).collect()).collect();
    let boxtimes: Vec<Vec<usize>> =
        (0..n * n).map(|a| (0..n * n).map(|b| to_f[r.mul(of_f[a], of_f[b])]).collect()).collect();
    let pairs = || (0..n * n).flat_map(|a| (0..n * n).map(move |b| (a, b)));
    let f_name = |i: usize| format!("f_{{{},{}}}", i % n, i / n);

    let plus = pairs().find(|&(a, b)| {
        let (k, l, p, q) = (a % n, a / n, b % n, b / n);
        boxplus[a][b] != (k + p) % n + n * ((l + q) % n)
    });
    checks.push(Check::from_witness(
        "f_{k,l} ⊞ f_{p,q} = f_{k+p,l+q}",
        format!("{} pairs", n.pow(4)),
        plus.map(|(a, b)| format!("{} ⊞ {}", f_name(a), f_name(b))),
    ));
    let times = pairs().find(|&(a, b)| {
        let (l, p, q) = (a / n, b % n, b / n);
        boxtimes[a][b] != (l * p) % n + n * ((l * q) % n)
    });
    checks.push(Check::from_witness(
        "f_{k,l} ⊠ f_{p,q} = f_{lp,lq}",
        format!("{} pairs", n.pow(4)),
        times.map(|(a, b)| format!("{} ⊠ {}", f_name(a), f_name(b))),
    ));
    let ideal_prod = (0..n).find_map(|k| (0..n).find(|&p| boxtimes[k][p] != 0).map(|p| (k, p)));
    checks.push(Check::from_witness(
        "f_{k,0} ⊠ f_{p,0} = f_{0,0}",
        "",
        ideal_prod.map(|(k, p)| format!("k = {k}, p = {p}")),
    ));
    let mut ideal: Vec<usize> = e.ideal().into_iter().map(|m| to_f[m]).collect();
    ideal.sort_unstable();
    checks.push(Check::from_witness(
        "End^{C2,Cn}(Dn) = {f_{k,0}}",
        format!("{} members", ideal.len()),
        (ideal != (0..n).collect::<Vec<_>>()).then(|| format!("{ideal:?}")),
    ));
    let rho = (0..n * n).find(|&i| {
        let l = i / n;
        e.rho(of_f[i]) != (0..n).map(|a| a * (l + 1) % n).collect::<Vec<_>>()
    });
    checks.push(Check::from_witness(
        "ρ(f_{k,l}) = multiplication by l + 1",
        "",
        rho.map(f_name),
    ));

    // End_{C2}(Cn) ≅ Z/n by β ↦ β(1)
    let zn = Arc::new(zmod_ring(n)?);
    let qe = &data.q_endos;
    let to_zn: Vec<usize> = qe.maps().iter().map(|b| b[1]).collect();
    checks.push(iso_check("End_{C2}(Cn) ≅ Z/n", qe.ring(), &zn, to_zn));

    // End^{C2}_{Cn}(Dn) ≅ Z/n ⋊ Z/n under f_{k,l} ↦ (k, l)
    if n * n <= budget.axiom_scan {
        let cn = Arc::new(cyclic(n)?);
        let bimodule = BimoduleAction::new(zn.clone(), cn, |r, s| r * s % n, |_, _| 0)?;
        let (target, _, _) = semidirect_ring(&bimodule, budget)?;
        checks.push(iso_check("End^{C2}_{Cn}(Dn) ≅ Z/n ⋊ Z/n", r, &target, to_f.clone()));
    } else {
        checks.push(Check::not_checked("End^{C2}_{Cn}(Dn) ≅ Z/n ⋊ Z/n", "order above scan limit"));
    }
    checks.extend(e.ideal_check());

    let reports = vec![data.theorem1(true, budget)?, data.corollary1(budget)?];
    Ok(DihedralReport {
        n,
        q_endos: qe.len(),
        ideal: ideal.len(),
        endos: e.len(),
        boxplus,
        boxtimes,
        checks,
        reports,
    })
}

fn iso_check(name: &str, source: &Arc<FiniteRing>, target: &Arc<FiniteRing>, map: Vec<usize>) -> Check {
    if source.order() != target.order() {
        return Check::fail(name, "", format!("orders {} and {}", source.order(), target.order()));
    }
    match RingHom::new(source.clone(), target.clone(), map) {
        Ok(h) if h.is_surjective() => Check::pass(name, format!("order {}", source.order())),
        Ok(_) => Check::fail(name, "", "not bijective"),
        Err(e) => Check::fail(name, "", e.to_string()),
    }
}

/// `S ⋊ R` with `S = {(m, n) ∈ (Z/12)² : m + n even}`, `R = 2Z/12`, left
/// action `t·(m, n) = (tm, tn)` and zero right action. Element `f_{(m,n),t}`
/// sits at index `s + 72 r`, where `s` and `r` are the positions of `(m, n)`
/// in [`Ring2Report::s_elements`] and of `t` in [`Ring2Report::r_elements`].
#[derive(Clone, Debug, Serialize)]
pub struct Ring2Report {
    pub order: usize,
    pub s_elements: Vec<(usize, usize)>,
    pub r_elements: Vec<usize>,
    pub checks: Vec<Check>,
}

impl Ring2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }
}

/// The carrier, the ring and its ideal `S × {0}` with the projection onto `R`.
pub struct Ring2 {
    pub s_elements: Vec<(usize, usize)>,
    pub r_elements: Vec<usize>,
    pub ring: Arc<FiniteRing>,
    pub ideal: Vec<usize>,
    pub projection: RingHom,
}

impl Ring2 {
    pub fn new(budget: &Budget) -> Result<Self> {
        let s_elements: Vec<(usize, usize)> = (0..12)
            .flat_map(|m| (0..12).map(move |n| (m, n)))
            .filter(|(m, n)| (m + n) % 2 == 0)
            .collect();
        let r_elements: Vec<usize> = (0..12).step_by(2).collect();
        let s_pos = |v: (usize, usize)| s_elements.binary_search(&v).expect("closed");
        let r_pos = |t: usize| t / 2;
        let r = Arc::new(FiniteRing::from_fn(
            6,
            |a, b| r_pos((r_elements[a] + r_elements[b]) % 12),
            |a, b| r_pos(r_elements[a] * r_elements[b] % 12),
            budget,
        )?);
        let s = Arc::new(FiniteGroup::from_fn(
            s_elements.len(),
            |a, b| {
                let ((m1, n1), (m2, n2)) = (s_elements[a], s_elements[b]);
                s_pos(((m1 + m2) % 12, (n1 + n2) % 12))
            },
            None,
            None,
        )?);
        let bimodule = BimoduleAction::new(
            r,
            s,
            |a, x| {
                let (t, (m, n)) = (r_elements[a], s_elements[x]);
                s_pos((t * m % 12, t * n % 12))
            },
            |_, _| 0,
        )?;
        let (ring, ideal, projection) = semidirect_ring(&bimodule, budget)?;
        Ok(Ring2 { s_elements, r_elements, ring, ideal, projection })
    }

    /// Index of `f_{(m,n),t}`.
    pub fn index(&self, m: usize, n: usize, t: usize) -> Option<usize> {
        let s = self.s_elements.binary_search(&(m % 12, n % 12)).ok()?;
        let r = self.r_elements.iter().position(|&x| x == t % 12)?;
        Some(s + self.s_elements.len() * r)
    }

    /// `((m, n), t)` for an index.
    pub fn coords(&self, x: usize) -> ((usize, usize), usize) {
        let ns = self.s_elements.len();
        (self.s_elements[x % ns], self.r_elements[x / ns])
    }
}

pub fn ring2_report(budget: &Budget) -> Result<Ring2Report> {
    let r2 = Ring2::new(budget)?;
    let ring = &r2.ring;
    let mut checks = vec![Check::pass("ring axioms", format!("order {}, checked on all triples", ring.order()))];
    checks.push(Check::from_witness(
        "S × {0} is a square-zero ideal",
        format!("|S| = {}", r2.ideal.len()),
        (!ring.is_square_zero_ideal(&r2.ideal)).then(|| "not square-zero".to_string()),
    ));
    let all = || ring.elements().flat_map(|a| ring.elements().map(move |b| (a, b)));
    let plus = all().find(|&(a, b)| {
        let (((k, l), s), ((m, n), t)) = (r2.coords(a), r2.coords(b));
        r2.index(k + m, l + n, s + t) != Some(ring.add(a, b))
    });
    checks.push(Check::from_witness(
        "f_{(k,l),s} ⊞ f_{(m,n),t} = f_{(k+m,l+n),s+t}",
        format!("{} pairs", ring.order().pow(2)),
        plus.map(|(a, b)| format!("({a}, {b})")),
    ));
    let times = all().find(|&(a, b)| {
        let ((_, s), ((m, n), t)) = (r2.coords(a), r2.coords(b));
        r2.index(s * m, s * n, s * t) != Some(ring.mul(a, b))
    });
    checks.push(Check::from_witness(
        "f_{(k,l),s} ⊠ f_{(m,n),t} = f_{(sm,sn),st}",
        format!("{} pairs", ring.order().pow(2)),
        times.map(|(a, b)| format!("({a}, {b})")),
    ));
    let prop = verify_prop_qr(&r2.ideal, &r2.projection)?;
    checks.extend(prop.checks);
    Ok(Ring2Report { order: ring.order(), s_elements: r2.s_elements, r_elements: r2.r_elements, checks })
}
