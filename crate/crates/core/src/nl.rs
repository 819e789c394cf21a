//! The NL-coflow polynomial ψ, the NL-flow polynomial φ and the dichromate Ω.

use crate::bits;
use crate::error::Result;
use crate::om::{nonneg_face_lattice, RealizedOM};
use crate::poly::TriPoly;
use crate::union::HatMatroid;

/// `ψ(x) = Σ_{X ∈ L*₊} μ*(0, X) · x^{rk(M / X̲)}`
pub fn nl_coflow_matroid(om: &RealizedOM) -> Result<TriPoly> {
    nl_coflow_with_dual(om, &om.dual()?)
}

/// ψ of `om`, given a realization of its dual on the same labels.
pub fn nl_coflow_with_dual(om: &RealizedOM, dual: &RealizedOM) -> Result<TriPoly> {
    let lattice = nonneg_face_lattice(dual)?;
    let r = om.rank();
    let mut psi = TriPoly::zero();
    for (x, _, mu) in lattice.iter() {
        let exp = r - om.rank_of(x.support());
        psi.add_term((exp as u32, 0, 0), mu.into());
    }
    Ok(psi)
}

/// `φ(x) = Σ_{X ∈ L₊} μ(0, X) · x^{rk*(M ∖ X̲)}`
pub fn nl_flow_matroid(om: &RealizedOM) -> Result<TriPoly> {
    let lattice = nonneg_face_lattice(om)?;
    let ground = om.ground();
    let mut phi = TriPoly::zero();
    for (x, _, mu) in lattice.iter() {
        let rest = ground & !x.support();
        let exp = rest.count_ones() as usize - om.rank_of(rest);
        phi.add_term((exp as u32, 0, 0), mu.into());
    }
    Ok(phi)
}

/// Ω together with the union matroid it was computed from.
#[derive(Debug)]
pub struct Dichromate {
    pub omega: TriPoly,
    pub hat: HatMatroid,
}

impl Dichromate {
    /// The basis used, as original 0-based column indices.
    pub fn basis(&self) -> &[usize] {
        self.hat.basis()
    }
}

/// `Ω(x, y, z) = Σ_{X ∈ L̂₊} μ̂(0, X) · x^{rk(X) + |E ∖ X̲|} y^{|X̲ ∩ A|} z^{|X̲ ∩ B|}`
/// over the whole of `L̂₊`, for the given basis (lexicographically smallest
/// when `None`).
pub fn dichromate(om: &RealizedOM, basis: Option<&[usize]>) -> Result<Dichromate> {
    let hat = HatMatroid::from_matroid(om, basis)?;
    Ok(Dichromate {
        omega: dichromate_of_hat(&hat),
        hat,
    })
}

pub fn dichromate_of_hat(h: &HatMatroid) -> TriPoly {
    let e = h.e();
    let mut omega = TriPoly::zero();
    for (x, rank, mu) in h.hat_lattice().iter() {
        let s = x.support();
        let xe = rank as u32 + (e & !s).count_ones();
        let ya = (s & h.a()).count_ones();
        let zb = (s & h.b()).count_ones();
        omega.add_term((xe, ya, zb), mu.into());
    }
    omega
}

/// Every basis of `om` as a sorted list of 0-based columns, lexicographic.
pub fn all_bases(om: &RealizedOM) -> Vec<Vec<usize>> {
    om.chirotope()
        .bases()
        .into_iter()
        .map(|b| bits::elements(b).collect())
        .collect()
}
