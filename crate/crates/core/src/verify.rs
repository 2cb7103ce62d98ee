//! Exhaustive verification of the exact sequences attached to an abelian
//! extension, and of the ring-theoretic side conditions.
//!
//! Every check compares sets element by element. Base points are the identity
//! endomorphisms for the pointed sets and the zero class in `H²`.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::cocycles::{enumerate_z1, inflate};
use crate::cohomology2::{
    all_lifts, connecting_delta, connecting_delta_with_lift, h2_linear, inflation_h2, transgression_eta, H2Group,
};
use crate::endo::{i_bar, rho_bar, ActionPreservingEndos, CentralizingEndos, EndoQN, QEndos};
use crate::error::{Error, Result};
use crate::extension::{AbelianExtension, CentralizerData};
use crate::group::all_automorphisms;
use crate::report::{Check, ExactnessReport};
use crate::ring::{check_qr_units, verify_prop_qr, FiniteRing, RingHom};

/// Everything the verifiers need about one extension, computed once.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub name: String,
    pub ext: AbelianExtension,
    pub endo: EndoQN,
    pub q_endos: QEndos,
    pub h2: H2Group,
    pub cd: CentralizerData,
    pub g_endos: CentralizingEndos,
    pub action_endos: ActionPreservingEndos,
    /// `ρ₀(α)` for each member of `End^Q_N(G)`, as an index into `End_Q(N)`.
    rho0: Vec<Option<usize>>,
    /// `ρ(α)` likewise.
    rho: Vec<Option<usize>>,
    /// Class of `η(β)` for each member of `End_Q(N)`.
    eta: Vec<Vec<u64>>,
}

impl ExtensionData {
    pub fn new(name: impl Into<String>, ext: &AbelianExtension, budget: &Budget) -> Result<Self> {
        let endo = EndoQN::new(ext, budget)?;
        let q_endos = QEndos::new(&ext.action, budget)?;
        let h2 = h2_linear(&ext.action, budget)?;
        let cd = ext.centralizer_data()?;
        let g_endos = CentralizingEndos::new(ext, &cd, budget)?;
        let action_endos = ActionPreservingEndos::new(ext, &cd, budget)?;
        let rho0 = (0..endo.len()).map(|a| q_endos.index_of(&endo.rho0(a))).collect();
        let rho = (0..endo.len()).map(|a| q_endos.index_of(&endo.rho(a))).collect();
        let eta = q_endos
            .maps()
            .iter()
            .map(|b| h2.reduce(&transgression_eta(ext, b)?))
            .collect::<Result<_>>()?;
        Ok(ExtensionData {
            name: name.into(),
            ext: ext.clone(),
            endo,
            q_endos,
            h2,
            cd,
            g_endos,
            action_endos,
            rho0,
            rho,
            eta,
        })
    }

    fn zero_class(&self) -> Vec<u64> {
        vec![0; self.h2.invariant_factors().len()]
    }

    fn identity_n(&self) -> usize {
        self.q_endos.identity()
    }

    /// `η̄(u) = η(u − id)` on `Aut_Q(N)`.
    fn eta_bar(&self, u: usize) -> &[u64] {
        let ring = self.q_endos.ring();
        &self.eta[ring.sub(u, self.identity_n())]
    }

    /// Class of `δ` on member `k` of `End^N(Q)`.
    fn delta(&self, k: usize) -> Result<Vec<u64>> {
        let psi = &self.action_endos.cocycles()[k];
        self.h2.reduce(&connecting_delta(&self.ext, &self.cd, psi)?)
    }

    /// `0 → End^{N,Q}(G) → End^Q_N(G) → End_Q(N) → H²(Q,N) → H²(G,N)`.
    pub fn theorem1(&self, check_h2g: bool, budget: &Budget) -> Result<ExactnessReport> {
        let e = &self.endo;
        let mut rep = ExactnessReport::new("five-term sequence", &self.name);
        let ideal: BTreeSet<usize> = e.ideal().into_iter().collect();
        let id = e.identity();
        rep.node("End^{N,Q}(G)", ideal.len());
        rep.node("End^Q_N(G)", e.len());
        rep.node("End_Q(N)", self.q_endos.len());
        rep.node("H^2(Q,N)", self.h2.order() as usize);

        let unmapped = (0..e.len()).find(|&a| self.rho0[a].is_none() || self.rho[a].is_none());
        rep.property(Check::from_witness(
            "ρ lands in End_Q(N)",
            "",
            unmapped.map(|a| format!("member {a}")),
        ));
        if unmapped.is_some() {
            return Ok(rep);
        }
        let r0 = |a: usize| self.rho0[a].expect("checked");
        let zero_n = self.q_endos.ring().zero();

        let fiber: BTreeSet<usize> = ideal.iter().copied().filter(|&a| a == id).collect();
        rep.exactness("End^{N,Q}(G)", &fiber, &BTreeSet::from([id]));

        let fiber: BTreeSet<usize> = (0..e.len()).filter(|&a| r0(a) == zero_n).collect();
        rep.exactness("End^Q_N(G)", &fiber, &ideal);

        let zero = self.zero_class();
        let fiber: BTreeSet<usize> = (0..self.q_endos.len()).filter(|&b| self.eta[b] == zero).collect();
        let image: BTreeSet<usize> = (0..e.len()).map(r0).collect();
        rep.exactness("End_Q(N)", &fiber, &image);

        if check_h2g && self.ext.g.order() <= budget.h2g_order {
            let h2g = h2_linear(&self.ext.g_action, budget)?;
            rep.node("H^2(G,N)", h2g.order() as usize);
            let mut fiber = BTreeSet::new();
            for c in self.h2.elements() {
                let f = self.h2.representative(&c)?;
                if inflation_h2(&self.ext.p, &f, &h2g)?.iter().all(|&x| x == 0) {
                    fiber.insert(c);
                }
            }
            let image: BTreeSet<Vec<u64>> = self.eta.iter().cloned().collect();
            rep.exactness("H^2(Q,N)", &fiber, &image);
        } else {
            rep.not_checked("H^2(Q,N)");
        }

        // ρ₀ = ρ − id is the ring homomorphism (⊞, ⊠) → (+, ∘)
        let (r, s) = (e.ring(), self.q_endos.ring());
        let add = first_pair(e.len(), |a, b| r0(r.add(a, b)) != s.add(r0(a), r0(b)));
        rep.property(Check::from_witness(
            "ρ − id additive",
            "",
            add.map(|(a, b)| format!("({a}, {b})")),
        ));
        let mul = first_pair(e.len(), |a, b| r0(r.mul(a, b)) != s.mul(r0(a), r0(b)));
        rep.property(Check::from_witness(
            "ρ − id multiplicative",
            "",
            mul.map(|(a, b)| format!("({a}, {b})")),
        ));
        rep.property(Check::from_witness(
            "ρ(id_G) = id_N",
            "",
            (self.rho[id] != Some(self.identity_n())).then(|| "ρ(id_G) differs from id_N".to_string()),
        ));
        let n = self.q_endos.len();
        let eta_add = first_pair(n, |a, b| self.eta[s.add(a, b)] != self.h2.add_coeffs(&self.eta[a], &self.eta[b]));
        rep.property(Check::from_witness(
            "η additive",
            "",
            eta_add.map(|(a, b)| format!("({a}, {b})")),
        ));
        Ok(rep)
    }

    /// `1 → Aut^{N,Q}(G) → Aut^Q_N(G) → Aut_Q(N) → H²(Q,N)`, with the middle
    /// exactness also derived through the quasi-regular sequence of rings.
    pub fn corollary1(&self, budget: &Budget) -> Result<ExactnessReport> {
        let e = &self.endo;
        let mut rep = ExactnessReport::new("automorphism sequence", &self.name);
        let id = e.identity();
        let ideal: BTreeSet<usize> = e.ideal().into_iter().collect();
        let aut: BTreeSet<usize> = e.automorphisms().into_iter().collect();
        let qr = e.ring().quasi_regular_group()?;
        rep.property(set_check("Aut^Q_N(G) = QR(End^Q_N(G))", &aut, &qr.member_set()));
        rep.property(Check::from_witness(
            "End^{N,Q}(G) = Aut^{N,Q}(G)",
            "",
            ideal.difference(&aut).next().map(|a| format!("member {a} is not bijective")),
        ));
        let aut_n: BTreeSet<usize> = self.q_endos.automorphisms().into_iter().collect();
        let units: BTreeSet<usize> = self.q_endos.ring().units()?.into_iter().collect();
        rep.property(set_check("Aut_Q(N) = U(End_Q(N))", &aut_n, &units));
        rep.property(check_qr_units(self.q_endos.ring())?);

        rep.node("Aut^{N,Q}(G)", ideal.len());
        rep.node("Aut^Q_N(G)", aut.len());
        rep.node("Aut_Q(N)", aut_n.len());
        rep.node("H^2(Q,N)", self.h2.order() as usize);
        if let Some(a) = (0..e.len()).find(|&a| self.rho[a].is_none() || self.rho0[a].is_none()) {
            rep.property(Check::fail("ρ lands in End_Q(N)", "", format!("member {a}")));
            return Ok(rep);
        }
        let rho = |a: usize| self.rho[a].expect("checked");

        let fiber: BTreeSet<usize> = ideal.iter().copied().filter(|&a| a == id).collect();
        rep.exactness("Aut^{N,Q}(G)", &fiber, &BTreeSet::from([id]));

        let fiber: BTreeSet<usize> = aut.iter().copied().filter(|&a| rho(a) == self.identity_n()).collect();
        let image: BTreeSet<usize> = ideal.intersection(&aut).copied().collect();
        rep.exactness("Aut^Q_N(G)", &fiber, &image);

        let zero = self.zero_class();
        let fiber: BTreeSet<usize> = aut_n.iter().copied().filter(|&u| self.eta_bar(u) == zero).collect();
        let direct: BTreeSet<usize> = aut.iter().map(|&a| rho(a)).collect();
        rep.exactness("Aut_Q(N)", &fiber, &direct);
        let outside = direct.difference(&aut_n).next();
        rep.property(Check::from_witness(
            "ρ' lands in Aut_Q(N)",
            "",
            outside.map(|u| format!("{u}")),
        ));

        // Quasi-regular route: 0 → End^{N,Q}(G) → End^Q_N(G) → Im(ρ − id) → 0
        let image0: Vec<usize> = (0..e.len())
            .map(|a| self.rho0[a].expect("checked"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let (sub, inclusion) = self.q_endos.ring().subring(&image0, budget)?;
        let to_sub: Vec<usize> = (0..e.len())
            .map(|a| image0.binary_search(&self.rho0[a].expect("checked")).expect("in image"))
            .collect();
        let p = RingHom::new(e.ring().clone(), sub.clone(), to_sub)?;
        let ideal_vec: Vec<usize> = ideal.iter().copied().collect();
        let prop = verify_prop_qr(&ideal_vec, &p)?;
        for c in prop.checks {
            rep.property(c);
        }
        let one = self.identity_n();
        let via_qr: BTreeSet<usize> = sub
            .quasi_regular_group()?
            .members
            .iter()
            .map(|&s| self.q_endos.ring().add(inclusion.apply(s), one))
            .collect();
        rep.property(set_check("Im ρ' agrees with id + QR(Im(ρ − id))", &direct, &via_qr));
        Ok(rep)
    }

    /// `0 → End^{N,Q}(G) → End^N(G) → End^N(Q) → H²(Q,N)` as pointed sets.
    pub fn theorem2(&self, budget: &Budget) -> Result<ExactnessReport> {
        let (e, ge, qe) = (&self.endo, &self.g_endos, &self.action_endos);
        let mut rep = ExactnessReport::new("centralizer sequence", &self.name);
        let ideal = e.ideal();
        rep.node("End^{N,Q}(G)", ideal.len());
        rep.node("End^N(G)", ge.len());
        rep.node("End^N(Q)", qe.len());
        rep.node("H^2(Q,N)", self.h2.order() as usize);

        let ib: Vec<usize> = ideal.iter().map(|&a| i_bar(e, ge, a)).collect::<Result<_>>()?;
        let rb: Vec<usize> = (0..ge.len()).map(|k| rho_bar(ge, qe, k)).collect::<Result<_>>()?;
        let (gid, qid) = (ge.identity(), qe.identity());

        let fiber: BTreeSet<usize> = (0..ideal.len()).filter(|&k| ib[k] == gid).map(|k| ideal[k]).collect();
        rep.exactness("End^{N,Q}(G)", &fiber, &BTreeSet::from([e.identity()]));
        let distinct: BTreeSet<usize> = ib.iter().copied().collect();
        rep.property(Check::from_witness(
            "ī injective",
            "",
            (distinct.len() != ib.len()).then(|| "two members share an image".to_string()),
        ));

        let fiber: BTreeSet<usize> = (0..ge.len()).filter(|&k| rb[k] == qid).collect();
        rep.exactness("End^N(G)", &fiber, &distinct);

        let zero = self.zero_class();
        let deltas: Vec<Vec<u64>> = (0..qe.len()).map(|k| self.delta(k)).collect::<Result<_>>()?;
        let fiber: BTreeSet<usize> = (0..qe.len()).filter(|&k| deltas[k] == zero).collect();
        let image: BTreeSet<usize> = rb.iter().copied().collect();
        rep.exactness("End^N(Q)", &fiber, &image);

        // monoid homomorphisms for composition
        let ib_comp = first_pair(ideal.len(), |a, b| {
            e.compose(ideal[a], ideal[b]).map(|c| i_bar(e, ge, c).ok()) != Some(ge.compose(ib[a], ib[b]))
        });
        rep.property(Check::from_witness(
            "ī monoid homomorphism",
            "",
            ib_comp.map(|(a, b)| format!("({}, {})", ideal[a], ideal[b])),
        ));
        let rb_comp = first_pair(ge.len(), |a, b| {
            ge.compose(a, b).map(|c| rb[c]) != qe.compose(rb[a], rb[b])
        });
        rep.property(Check::from_witness(
            "ρ̄ monoid homomorphism",
            "",
            rb_comp
                .map(|(a, b)| format!("({a}, {b})"))
                .or_else(|| (rb[gid] != qid).then(|| "ρ̄(id) ≠ id".to_string())),
        ));
        rep.property(self.delta_lift_independence(budget)?);
        Ok(rep)
    }

    /// The class of `δ(φ)` does not depend on the set-lift `Q̄ → C_G(N)`.
    pub fn delta_lift_independence(&self, budget: &Budget) -> Result<Check> {
        let name = "δ independent of the lift";
        let lifts = match all_lifts(&self.cd, budget) {
            Ok(l) => l,
            Err(Error::BudgetExceeded { .. }) => return Ok(Check::not_checked(name, "lift budget exceeded")),
            Err(e) => return Err(e),
        };
        for (k, psi) in self.action_endos.cocycles().iter().enumerate() {
            let base = self.delta(k)?;
            for lift in &lifts {
                let c = self.h2.reduce(&connecting_delta_with_lift(&self.ext, &self.cd, psi, lift)?)?;
                if c != base {
                    return Ok(Check::fail(name, "", format!("member {k} with lift {lift:?}")));
                }
            }
        }
        Ok(Check::pass(name, format!("{} lifts", lifts.len())))
    }

    /// `1 → Aut^{N,Q}(G) → Aut^N(G) → Aut^N(Q) → H²(Q,N)`.
    pub fn corollary2(&self, budget: &Budget) -> Result<ExactnessReport> {
        let (e, ge, qe) = (&self.endo, &self.g_endos, &self.action_endos);
        let mut rep = ExactnessReport::new("centralizer automorphism sequence", &self.name);
        let ideal = e.ideal();
        let aut_g: BTreeSet<usize> = ge.automorphisms().into_iter().collect();
        let aut_q: BTreeSet<usize> = qe.automorphisms().into_iter().collect();

        // Aut^N(Q) a second way: automorphisms of Q preserving the action
        let mut direct: BTreeSet<usize> = BTreeSet::new();
        let mut stray = None;
        for h in all_automorphisms(&self.ext.q, budget)? {
            let keeps = self.ext.q.elements().all(|x| {
                self.ext.n.elements().all(|m| self.ext.action.apply(x, m) == self.ext.action.apply(h.apply(x), m))
            });
            if keeps {
                match qe.index_of(h.map()) {
                    Some(k) => {
                        direct.insert(k);
                    }
                    None => stray = Some(format!("{:?}", h.map())),
                }
            }
        }
        rep.property(Check::from_witness("Aut^N(Q) computed two ways", "", stray));
        rep.property(set_check("Aut^N(Q) = invertibles of End^N(Q)", &direct, &aut_q));

        rep.node("Aut^{N,Q}(G)", ideal.len());
        rep.node("Aut^N(G)", aut_g.len());
        rep.node("Aut^N(Q)", aut_q.len());
        rep.node("H^2(Q,N)", self.h2.order() as usize);

        let ib: Vec<usize> = ideal.iter().map(|&a| i_bar(e, ge, a)).collect::<Result<_>>()?;
        let (gid, qid) = (ge.identity(), qe.identity());
        let fiber: BTreeSet<usize> = (0..ideal.len()).filter(|&k| ib[k] == gid).map(|k| ideal[k]).collect();
        rep.exactness("Aut^{N,Q}(G)", &fiber, &BTreeSet::from([e.identity()]));

        let image: BTreeSet<usize> = ib.iter().copied().collect();
        rep.property(Check::from_witness(
            "ī lands in Aut^N(G)",
            "",
            image.difference(&aut_g).next().map(|k| format!("{k}")),
        ));
        let rb = |k: usize| rho_bar(ge, qe, k);
        let mut fiber = BTreeSet::new();
        let mut rb_image = BTreeSet::new();
        for &k in &aut_g {
            let r = rb(k)?;
            if r == qid {
                fiber.insert(k);
            }
            rb_image.insert(r);
        }
        rep.exactness("Aut^N(G)", &fiber, &image);
        rep.property(Check::from_witness(
            "ρ̄ lands in Aut^N(Q)",
            "",
            rb_image.difference(&aut_q).next().map(|k| format!("{k}")),
        ));

        let zero = self.zero_class();
        let mut fiber = BTreeSet::new();
        for &k in &aut_q {
            if self.delta(k)? == zero {
                fiber.insert(k);
            }
        }
        rep.exactness("Aut^N(Q)", &fiber, &rb_image);
        Ok(rep)
    }

    /// Ring axioms, intertwining, `∗ = ∘`, the ideal, and quasi-regular groups.
    pub fn ring_suite(&self, budget: &Budget) -> Result<Vec<Check>> {
        let e = &self.endo;
        let z1 = e.cocycles();
        let mut out = vec![
            axiom_check("Z^1(G,N) ring axioms", z1.ring(), budget),
            axiom_check("End^Q_N(G) ring axioms", e.ring(), budget),
        ];
        let (r, z) = (e.ring(), z1.ring());
        let tw = first_pair(e.len(), |a, b| r.add(a, b) != z.add(a, b) || r.mul(a, b) != z.mul(a, b));
        out.push(Check::from_witness(
            "bijection intertwines (⊞, ⊠) with (+, ⋄)",
            "",
            tw.map(|(a, b)| format!("({a}, {b})")),
        ));
        let star = first_pair(e.len(), |a, b| Some(r.star(a, b)) != e.compose(a, b));
        out.push(Check::from_witness(
            "∗ equals composition",
            "",
            star.map(|(a, b)| format!("({a}, {b})")),
        ));
        out.extend(e.ideal_check());

        let ideal = e.ideal();
        let comm = first_pair(ideal.len(), |a, b| e.compose(ideal[a], ideal[b]) != e.compose(ideal[b], ideal[a]));
        out.push(Check::from_witness(
            "End^{N,Q}(G) commutative under composition",
            "",
            comm.map(|(a, b)| format!("({}, {})", ideal[a], ideal[b])),
        ));
        // End^{N,Q}(G) ↔ Z¹(Q,N) by inflation
        let zq = enumerate_z1(&self.ext.action, budget)?;
        let mut via = BTreeSet::new();
        for phi in &zq {
            let k = z1
                .index_of(&inflate(&self.ext, phi)?)
                .ok_or_else(|| Error::InvalidCocycle("inflation left Z^1(G,N)".into()))?;
            via.insert(k);
        }
        let ideal_set: BTreeSet<usize> = ideal.iter().copied().collect();
        out.push(set_check("End^{N,Q}(G) = inflated Z^1(Q,N)", &ideal_set, &via));

        for (name, ring) in [("Z^1(G,N)", z), ("End^Q_N(G)", r), ("End_Q(N)", self.q_endos.ring())] {
            out.push(match ring.quasi_regular_group() {
                Ok(q) => Check::pass(format!("QR({name}) is a group"), format!("order {}", q.len())),
                Err(err) => Check::fail(format!("QR({name}) is a group"), "", err.to_string()),
            });
        }
        Ok(out)
    }

    /// Every report and check for this extension. A verifier that cannot run
    /// to completion (say, on a corrupted ring) is recorded as a failed check.
    pub fn full(&self, check_h2g: bool, budget: &Budget) -> Result<(Vec<ExactnessReport>, Vec<Check>)> {
        let mut checks = self.ring_suite(budget)?;
        let mut reports = Vec::new();
        let runs: [(&str, Result<ExactnessReport>); 4] = [
            ("five-term sequence", self.theorem1(check_h2g, budget)),
            ("automorphism sequence", self.corollary1(budget)),
            ("centralizer sequence", self.theorem2(budget)),
            ("centralizer automorphism sequence", self.corollary2(budget)),
        ];
        for (name, run) in runs {
            match run {
                Ok(r) => reports.push(r),
                Err(err) => checks.push(Check::fail(format!("{name} aborted"), "", err.to_string())),
            }
        }
        Ok((reports, checks))
    }
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).find_map(|a| (0..n).find(|&b| bad(a, b)).map(|b| (a, b)))
}

fn set_check(name: &str, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Check {
    let witness = a.symmetric_difference(b).next().map(|x| format!("{x} lies in only one side"));
    Check::from_witness(name, format!("{} vs {}", a.len(), b.len()), witness)
}

/// Exhaustive axiom check, skipped above `budget.axiom_scan`.
pub fn axiom_check(name: &str, ring: &FiniteRing, budget: &Budget) -> Check {
    if ring.order() > budget.axiom_scan {
        return Check::not_checked(name, format!("order {} above scan limit", ring.order()));
    }
    match ring.check_axioms() {
        Ok(()) => Check::pass(name, format!("order {}", ring.order())),
        Err(v) => Check::fail(name, v.law, format!("{:?}", v.witness)),
    }
}

pub fn verify_theorem1(ext: &AbelianExtension, check_h2g: bool, budget: &Budget) -> Result<ExactnessReport> {
    ExtensionData::new("extension", ext, budget)?.theorem1(check_h2g, budget)
}

pub fn verify_corollary1(ext: &AbelianExtension, budget: &Budget) -> Result<ExactnessReport> {
    ExtensionData::new("extension", ext, budget)?.corollary1(budget)
}

pub fn verify_theorem2(ext: &AbelianExtension, budget: &Budget) -> Result<ExactnessReport> {
    ExtensionData::new("extension", ext, budget)?.theorem2(budget)
}

pub fn verify_corollary2(ext: &AbelianExtension, budget: &Budget) -> Result<ExactnessReport> {
    ExtensionData::new("extension", ext, budget)?.corollary2(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::tests::{c4_over_c2, dihedral_ext};
    use crate::report::Status;

    fn all_pass(reps: &[ExactnessReport], checks: &[Check]) {
        for r in reps {
            assert!(r.passed(), "{r}");
        }
        for c in checks {
            assert!(!c.failed(), "{c:?}");
        }
    }

    #[test]
    fn dihedral_sequences() {
        let b = Budget::default();
        for n in [3, 6, 12] {
            let d = ExtensionData::new(format!("D{n}"), &dihedral_ext(n), &b).unwrap();
            let (reps, checks) = d.full(true, &b).unwrap();
            all_pass(&reps, &checks);
            // η = 0 and ρ onto
            assert!(d.eta.iter().all(|c| c.iter().all(|&x| x == 0)));
            let onto: BTreeSet<_> = d.rho.iter().flatten().collect();
            assert_eq!(onto.len(), d.q_endos.len());
        }
    }

    #[test]
    fn cyclic_four_sequences() {
        let b = Budget::default();
        let d = ExtensionData::new("C4", &c4_over_c2(), &b).unwrap();
        let (reps, checks) = d.full(true, &b).unwrap();
        all_pass(&reps, &checks);
        assert_eq!(reps[0].checks.len(), 4);
        assert!(reps[0].checks.iter().all(|c| c.status == Status::Pass));
        // η(id) ≠ 0
        assert_ne!(d.eta[d.identity_n()], d.zero_class());
    }

    #[test]
    fn skipping_h2g_marks_last_node() {
        let b = Budget::default();
        let r = verify_theorem1(&c4_over_c2(), false, &b).unwrap();
        assert_eq!(r.checks.last().unwrap().status, Status::NotChecked);
        assert!(r.passed());
    }
}
