//! Executable forms of the structural identities around `M̂`, `ψ`, `φ` and
//! `Ω`. Each check returns a [`Report`] counting instances and recording
//! the first few failures.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::bits;
use crate::digraph::{
    count_acyclic_colorings, incidence_matrix, matroid_from_digraph, nl_coflow_graphic,
    totally_cyclic_poset, Digraph,
};
use crate::error::Result;
use crate::exact::rank_rat;
use crate::nl::{all_bases, dichromate_of_hat, nl_coflow_matroid, nl_flow_matroid};
use crate::om::{cocircuits, nonneg_face_lattice, FaceLattice, RealizedOM, SignVector};
use crate::poly::TriPoly;
use crate::union::{lift_dual, lift_primal, restrict, HatMatroid, Side};

pub const MINOR_IDENTITIES: &str = "minor identities";
pub const LIFTING: &str = "lifting soundness";
pub const RESTRICTION: &str = "restriction soundness";
pub const PARALLELISM: &str = "parallelism";
pub const RANK_PRESERVATION: &str = "rank preservation";
pub const ROUND_TRIP: &str = "round trip";
pub const EXPONENTS: &str = "exponent identities";
pub const COFLOW_SPECIALIZATION: &str = "coflow specialization";
pub const FLOW_SPECIALIZATION: &str = "flow specialization";
pub const BASIS_INDEPENDENCE: &str = "basis independence";
pub const DUALITY: &str = "duality";
pub const MOBIUS: &str = "mobius identity";
pub const CHAIN_LENGTHS: &str = "chain lengths";
pub const ORACLE: &str = "oracle agreement";
pub const COLORING_LAW: &str = "coloring law";
pub const SELF_LOOP_LAW: &str = "self-loop law";
pub const CYCLIC_UNION: &str = "totally cyclic unions";

const KEPT_FAILURES: usize = 8;

type Lift = fn(&SignVector, &HatMatroid) -> Result<SignVector>;

/// Outcome of one property over many instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub property: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(property: &'static str) -> Self {
        Self {
            property,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(detail());
            }
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

/// Merges reports by property name, keeping first-seen order.
pub fn merge_reports(reports: impl IntoIterator<Item = Report>) -> Vec<Report> {
    let mut out: Vec<Report> = Vec::new();
    for r in reports {
        match out.iter_mut().find(|o| o.property == r.property) {
            Some(o) => o.absorb(r),
            None => out.push(r),
        }
    }
    out
}

fn basis_label(h: &HatMatroid) -> String {
    let b: Vec<String> = h.basis().iter().map(|e| (e + 1).to_string()).collect();
    format!("basis {{{}}}", b.join(","))
}

/// `M̂ ∖ A / B` has the chirotope of `M` and `M̂ / A ∖ B` that of `M*`.
pub fn check_minors(h: &HatMatroid) -> Result<Report> {
    let mut rep = Report::new(MINOR_IDENTITIES);
    let primal = h.primal_minor()?;
    rep.record(primal.chirotope() == h.base().chirotope(), || {
        format!("{}: M̂∖A/B differs from M", basis_label(h))
    });
    let dual = h.dual_minor()?;
    rep.record(dual.chirotope() == h.dual().chirotope(), || {
        format!("{}: M̂/A∖B differs from M*", basis_label(h))
    });
    Ok(rep)
}

/// Nonnegative cocircuits of `M` and `M*` lift to cocircuits of `M̂`, and
/// every nonnegative covector lifts into `L̂₊`.
pub fn check_lifting(h: &HatMatroid) -> Result<Report> {
    let mut rep = Report::new(LIFTING);
    let hat_cocircuits: HashSet<SignVector> = cocircuits(h.hat()).into_iter().collect();
    let hat_lattice = h.hat_lattice();
    let sides: [(&RealizedOM, &FaceLattice, Lift, &str); 2] = [
        (h.base(), h.base_lattice(), lift_primal, "M"),
        (h.dual(), h.dual_lattice(), lift_dual, "M*"),
    ];
    for (om, lattice, lift, name) in sides {
        for d in cocircuits(om).iter().filter(|d| d.is_nonnegative()) {
            let lifted = lift(d, h)?;
            rep.record(hat_cocircuits.contains(&lifted), || {
                format!(
                    "{}: cocircuit {d} of {name} lifts to {lifted}, not a cocircuit of M̂",
                    basis_label(h)
                )
            });
        }
        for x in lattice.elements() {
            let lifted = lift(x, h)?;
            rep.record(hat_lattice.contains(&lifted), || {
                format!(
                    "{}: covector {x} of {name} lifts to {lifted}, outside L̂₊",
                    basis_label(h)
                )
            });
        }
    }
    Ok(rep)
}

/// `B`-free members of `L̂₊` restrict into `L₊`, `A`-free ones into `L*₊`.
pub fn check_restriction(h: &HatMatroid) -> Result<Report> {
    let mut rep = Report::new(RESTRICTION);
    for xhat in h.hat_lattice().elements() {
        let s = xhat.support();
        let on_e = SignVector::positive(h.n(), s & h.e());
        if s & h.b() == 0 {
            rep.record(h.base_lattice().contains(&on_e), || {
                format!("{}: {xhat} restricts to {on_e}, outside L₊", basis_label(h))
            });
        }
        if s & h.a() == 0 {
            rep.record(h.dual_lattice().contains(&on_e), || {
                format!(
                    "{}: {xhat} restricts to {on_e}, outside L*₊",
                    basis_label(h)
                )
            });
        }
        let (side, x) = restrict(xhat, h)?;
        let consistent = match side {
            Side::Primal => s & h.b() == 0 && x == Some(on_e),
            Side::Dual => s & h.a() == 0 && s & h.b() != 0 && x == Some(on_e),
            Side::Neither => s & h.a() != 0 && s & h.b() != 0 && x.is_none(),
        };
        rep.record(consistent, || {
            format!("{}: restrict({xhat}) reported {side:?}", basis_label(h))
        });
    }
    Ok(rep)
}

/// In every `B`-free cocircuit of `M̂`, an `A`-element is in the support
/// exactly when its `E₁` partner is.
pub fn check_parallelism(h: &HatMatroid) -> Report {
    let mut rep = Report::new(PARALLELISM);
    for d in cocircuits(h.hat()) {
        let s = d.support();
        if s & h.b() != 0 {
            continue;
        }
        let ok = ((s & h.e1()) << h.n()) == s & h.a();
        rep.record(ok, || format!("{}: cocircuit {d} of M̂", basis_label(h)));
    }
    rep
}

/// Lattice ranks survive lifting.
pub fn check_rank_preservation(h: &HatMatroid) -> Result<Report> {
    let mut rep = Report::new(RANK_PRESERVATION);
    let hat = h.hat_lattice();
    let sides: [(&FaceLattice, Lift); 2] = [
        (h.base_lattice(), lift_primal),
        (h.dual_lattice(), lift_dual),
    ];
    for (lattice, lift) in sides {
        for (x, rank, _) in lattice.iter() {
            let lifted = lift(x, h)?;
            let got = hat.rank_of(&lifted);
            rep.record(got == Some(rank), || {
                format!(
                    "{}: rank of {x} is {rank}, its lift has {got:?}",
                    basis_label(h)
                )
            });
        }
    }
    Ok(rep)
}

/// Restricting a lift of a nonzero covector gives it back on the right side.
pub fn check_round_trip(h: &HatMatroid) -> Result<Report> {
    let mut rep = Report::new(ROUND_TRIP);
    let sides: [(&FaceLattice, Lift, Side); 2] = [
        (h.base_lattice(), lift_primal, Side::Primal),
        (h.dual_lattice(), lift_dual, Side::Dual),
    ];
    for (lattice, lift, side) in sides {
        for x in lattice.elements().iter().filter(|x| !x.is_zero()) {
            let back = restrict(&lift(x, h)?, h)?;
            rep.record(back == (side, Some(*x)), || {
                format!("{}: {x} came back as {back:?}", basis_label(h))
            });
        }
    }
    Ok(rep)
}

/// For `X̂ ∈ L̂₊` with `X̲ = X̲̂ ∩ E`:
/// `A`-free gives `rk(M/X̲) = rk(X̂) + |E∖X̲| − (n−r)`,
/// `B`-free gives `rk*(M∖X̲) = rk(X̂) + |E∖X̲| − r`.
pub fn check_exponents(h: &HatMatroid) -> Report {
    let mut rep = Report::new(EXPONENTS);
    let (n, r) = (h.n() as i64, h.rank() as i64);
    let m = h.base();
    for (xhat, rank, _) in h.hat_lattice().iter() {
        let s = xhat.support();
        let x = s & h.e();
        let rest = h.e() & !x;
        let hat_side = rank as i64 + rest.count_ones() as i64;
        if s & h.a() == 0 {
            let contracted = r - m.rank_of(x) as i64;
            rep.record(contracted == hat_side - (n - r), || {
                format!("{}: {xhat} has rk(M/X) = {contracted}", basis_label(h))
            });
        }
        if s & h.b() == 0 {
            let deleted = rest.count_ones() as i64 - m.rank_of(rest) as i64;
            rep.record(deleted == hat_side - r, || {
                format!("{}: {xhat} has rk*(M∖X) = {deleted}", basis_label(h))
            });
        }
    }
    rep
}

/// The Möbius identity and chain-length ranks on one lattice.
pub fn check_lattice(lattice: &FaceLattice, name: &str) -> [Report; 2] {
    let mut mobius = Report::new(MOBIUS);
    let bad: HashSet<SignVector> = lattice.mobius_identity_failures().into_iter().collect();
    for x in lattice.elements() {
        mobius.record(!bad.contains(x), || {
            format!("{name}: Σ μ below {x} is wrong")
        });
    }
    let mut chains = Report::new(CHAIN_LENGTHS);
    for ((x, rank, _), chain) in lattice.iter().zip(lattice.chain_lengths()) {
        chains.record(rank == chain, || {
            format!("{name}: {x} has rank {rank} but longest chain {chain}")
        });
    }
    [mobius, chains]
}

/// Runs every matroid-level check on `om`, sweeping all of its bases.
pub fn check_matroid(om: &RealizedOM) -> Result<Vec<Report>> {
    let psi = nl_coflow_matroid(om)?;
    let phi = nl_flow_matroid(om)?;
    let dual = om.dual()?;
    let n = om.ground_size() as u32;
    let r = om.rank() as u32;
    let want_coflow = &TriPoly::x_pow(n - r) * &psi;
    let want_flow = &TriPoly::x_pow(r) * &phi;

    let mut reports = Vec::new();
    let mut duality = Report::new(DUALITY);
    let phi_dual = nl_flow_matroid(&dual)?;
    duality.record(psi == phi_dual, || {
        format!("ψ(M) = {psi} but φ(M*) = {phi_dual}")
    });
    reports.push(duality);
    reports.extend(check_lattice(&nonneg_face_lattice(om)?, "L₊"));
    reports.extend(check_lattice(&nonneg_face_lattice(&dual)?, "L*₊"));

    let mut first: Option<(TriPoly, TriPoly)> = None;
    for basis in all_bases(om) {
        let h = HatMatroid::from_matroid(om, Some(&basis))?;
        reports.push(check_minors(&h)?);
        reports.push(check_lifting(&h)?);
        reports.push(check_restriction(&h)?);
        reports.push(check_parallelism(&h));
        reports.push(check_rank_preservation(&h)?);
        reports.push(check_round_trip(&h)?);
        reports.push(check_exponents(&h));
        reports.extend(check_lattice(h.hat_lattice(), "L̂₊"));

        let omega = dichromate_of_hat(&h);
        let coflow = omega.specialize(0, 1);
        let flow = omega.specialize(1, 0);
        let mut t1 = Report::new(COFLOW_SPECIALIZATION);
        t1.record(coflow == want_coflow, || {
            format!(
                "{}: Ω(x,0,1) = {coflow}, x^(n−r)·ψ = {want_coflow}",
                basis_label(&h)
            )
        });
        let mut t2 = Report::new(FLOW_SPECIALIZATION);
        t2.record(flow == want_flow, || {
            format!(
                "{}: Ω(x,1,0) = {flow}, x^r·φ = {want_flow}",
                basis_label(&h)
            )
        });
        let mut same = Report::new(BASIS_INDEPENDENCE);
        let pair = (coflow, flow);
        let reference = first.get_or_insert_with(|| pair.clone());
        same.record(*reference == pair, || {
            format!(
                "{}: specializations differ from the first basis",
                basis_label(&h)
            )
        });
        reports.extend([t1, t2, same]);
    }
    Ok(merge_reports(reports))
}

/// Digraph-level checks: graphic against matroid ψ, the coloring count law
/// for `k ∈ {1, 2, 3}`, the self-loop law and union closure of `Q`.
pub fn check_digraph(d: &Digraph, cap: usize, coloring_budget: u64) -> Result<Vec<Report>> {
    let graphic = nl_coflow_graphic(d, cap)?;
    let om = matroid_from_digraph(d)?;
    let matroid = nl_coflow_matroid(&om)?;
    let mut oracle = Report::new(ORACLE);
    oracle.record(graphic == matroid, || {
        format!("graphic ψ = {graphic}, matroid ψ = {matroid}")
    });

    let shift = d.vertex_count() - rank_rat(&incidence_matrix(d));
    let mut law = Report::new(COLORING_LAW);
    let mut counts = Vec::new();
    for k in 1..=3i64 {
        let count = count_acyclic_colorings(d, k as u64, coloring_budget)?;
        let predicted = BigInt::from(k).pow(shift as u32) * graphic.evaluate(k, 0, 0);
        law.record(BigInt::from(count) == predicted, || {
            format!("k = {k}: {count} acyclic colorings, formula gives {predicted}")
        });
        counts.push(count);
    }
    law.record(counts.windows(2).all(|w| w[0] <= w[1]), || {
        format!("counts {counts:?} decrease in k")
    });

    let q = totally_cyclic_poset(d, cap)?;
    let members: HashSet<u64> = q.members.iter().copied().collect();
    let mut loops = Report::new(SELF_LOOP_LAW);
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        if t == h {
            loops.record(
                members.contains(&(1 << a)) && counts.iter().all(|&c| c == 0),
                || format!("self-loop arc {} fails the law", a + 1),
            );
        }
    }
    let mut unions = Report::new(CYCLIC_UNION);
    for &b1 in &q.members {
        for &b2 in &q.members {
            unions.record(members.contains(&(b1 | b2)), || {
                let show = |m: u64| {
                    bits::elements(m)
                        .map(|a| (a + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("{{{}}} ∪ {{{}}} is not totally cyclic", show(b1), show(b2))
            });
        }
    }
    Ok(vec![oracle, law, loops, unions])
}
