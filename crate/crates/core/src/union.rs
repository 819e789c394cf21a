//! The union matroid `M̂ = M₁ ∪ M₂` on `Ê = E₁ ∪ E₂ ∪ A ∪ B`, which holds
//! `M` and its dual as the complementary minors `M̂ ∖ A / B` and `M̂ / A ∖ B`.
//!
//! With `M` realized as `(I_r | C)` on `E = {0, …, n−1}` (basis first), the
//! elements are laid out as
//!
//! * `E₁ = 0..r`, `E₂ = r..n`,
//! * `A = n..n+r`, each `n + i` parallel to `i ∈ E₁` in `M₁`,
//! * `B = n+r..2n`, each `n + i` parallel to `i ∈ E₂` in `M₂`,
//!
//! so every added element `n + e` is the partner of `e`.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::bits::{self, Mask, MAX_GROUND};
use crate::error::{Error, Result};
use crate::exact::{standard_form, EpsMatrix, EpsPoly, Rational};
use crate::om::{dual_realization, nonneg_face_lattice, FaceLattice, RealizedOM, SignVector};

#[derive(Debug)]
pub struct HatMatroid {
    base: RealizedOM,
    perm: Vec<usize>,
    hat: RealizedOM,
    dual: OnceLock<RealizedOM>,
    base_lattice: OnceLock<FaceLattice>,
    dual_lattice: OnceLock<FaceLattice>,
    hat_lattice: OnceLock<FaceLattice>,
}

/// Which side of the union a nonnegative covector of `M̂` restricts to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
    Neither,
}

/// Builds `M̂` from a realization in standard form `(I_r | C)`.
///
/// The top `r` rows are `(I_r | C | I_r | 0)`; the bottom `n − r` rows are
/// `(−Cᵀ | I_{n−r} | 0 | I_{n−r})` with column `i` (1-based) multiplied by
/// `ε^{2n−i}`.
pub fn build_hat(om: &RealizedOM) -> Result<HatMatroid> {
    let c = om.standard_block().ok_or_else(|| {
        Error::Contract("build_hat needs a realization of the form (I_r | C)".into())
    })?;
    let n = om.ground_size();
    let r = om.rank();
    if 2 * n > MAX_GROUND {
        return Err(Error::Resource(format!(
            "the union matroid of {n} elements exceeds {MAX_GROUND} elements"
        )));
    }
    let width = 2 * n;
    let one = || Rational::one();
    let mut m = EpsMatrix::zeros(n, width);
    for i in 0..r {
        m.set(i, i, EpsPoly::constant(one()));
        for j in 0..n - r {
            m.set(i, r + j, EpsPoly::constant(c.get(i, j).clone()));
        }
        m.set(i, n + i, EpsPoly::constant(one()));
    }
    let scale = |col: usize| (width - 1 - col) as u32;
    for k in 0..n - r {
        let row = r + k;
        for j in 0..r {
            let v = -c.get(j, k).clone();
            if !v.is_zero() {
                m.set(row, j, EpsPoly::monomial(scale(j), v));
            }
        }
        m.set(row, r + k, EpsPoly::monomial(scale(r + k), one()));
        m.set(row, n + r + k, EpsPoly::monomial(scale(n + r + k), one()));
    }
    let labels = (1..=width).map(|i| i.to_string()).collect();
    let hat = RealizedOM::from_eps_matrix(m, labels)?;
    Ok(HatMatroid {
        base: om.clone(),
        perm: (0..n).collect(),
        hat,
        dual: OnceLock::new(),
        base_lattice: OnceLock::new(),
        dual_lattice: OnceLock::new(),
        hat_lattice: OnceLock::new(),
    })
}

impl HatMatroid {
    /// Brings a rational realization into standard form for `basis` (0-based
    /// columns; lexicographically smallest when `None`) and builds `M̂`.
    pub fn from_matroid(om: &RealizedOM, basis: Option<&[usize]>) -> Result<Self> {
        let m = om.to_rat().ok_or_else(|| {
            Error::Contract("the union construction needs a rational realization".into())
        })?;
        let sf = standard_form(&m, basis)?;
        let labels = sf.perm.iter().map(|&j| om.labels()[j].clone()).collect();
        let base = RealizedOM::from_eps_matrix(EpsMatrix::from_rat(&sf.matrix()), labels)?;
        let mut h = build_hat(&base)?;
        h.perm = sf.perm;
        Ok(h)
    }

    /// `M` in standard form; its element `k` is original element `perm()[k]`.
    pub fn base(&self) -> &RealizedOM {
        &self.base
    }

    pub fn hat(&self) -> &RealizedOM {
        &self.hat
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// The basis used, as original 0-based column indices.
    pub fn basis(&self) -> &[usize] {
        &self.perm[..self.rank()]
    }

    pub fn n(&self) -> usize {
        self.base.ground_size()
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn e(&self) -> Mask {
        bits::full_mask(self.n())
    }

    pub fn e1(&self) -> Mask {
        bits::full_mask(self.rank())
    }

    pub fn e2(&self) -> Mask {
        self.e() & !self.e1()
    }

    pub fn a(&self) -> Mask {
        self.e1() << self.n()
    }

    pub fn b(&self) -> Mask {
        self.e2() << self.n()
    }

    /// The parallel partner of an element of `Ê`.
    pub fn partner(&self, x: usize) -> usize {
        let n = self.n();
        assert!(x < 2 * n, "element {x} outside the ground set of M̂");
        if x < n {
            x + n
        } else {
            x - n
        }
    }

    /// `M*` realized as `(−Cᵀ | I_{n−r})` on the labels of `M`.
    pub fn dual(&self) -> &RealizedOM {
        self.dual
            .get_or_init(|| dual_realization(&self.base).expect("base is in standard form"))
    }

    /// `L₊` of `M`.
    pub fn base_lattice(&self) -> &FaceLattice {
        self.base_lattice
            .get_or_init(|| nonneg_face_lattice(&self.base).expect("zero covector is the bottom"))
    }

    /// `L*₊`, the nonnegative covectors of `M*`.
    pub fn dual_lattice(&self) -> &FaceLattice {
        self.dual_lattice
            .get_or_init(|| nonneg_face_lattice(self.dual()).expect("zero covector is the bottom"))
    }

    /// `L̂₊`, the nonnegative covectors of `M̂`.
    pub fn hat_lattice(&self) -> &FaceLattice {
        self.hat_lattice
            .get_or_init(|| nonneg_face_lattice(&self.hat).expect("zero covector is the bottom"))
    }

    /// `M̂ ∖ A / B`, which realizes `M`.
    pub fn primal_minor(&self) -> Result<RealizedOM> {
        minor(&self.hat, self.a(), self.b())
    }

    /// `M̂ / A ∖ B`, which realizes `M*`.
    pub fn dual_minor(&self) -> Result<RealizedOM> {
        minor(&self.hat, self.b(), self.a())
    }

    fn lift(
        &self,
        x: &SignVector,
        lattice: &FaceLattice,
        side: Mask,
        what: &str,
    ) -> Result<SignVector> {
        if x.size() != self.n() || !lattice.contains(x) {
            return Err(Error::Contract(format!(
                "{x} is not a nonnegative covector of {what}"
            )));
        }
        let partners = (x.support() & side) << self.n();
        Ok(SignVector::positive(2 * self.n(), x.plus() | partners))
    }
}

/// Deletes `delete` and contracts `contract`.
///
/// Contracting a non-loop pivots on its lowest nonzero row with
/// fraction-free row operations and drops that row; contracting a loop only
/// drops the column. Dependent rows left behind by deletions are removed.
pub fn minor(om: &RealizedOM, delete: Mask, contract: Mask) -> Result<RealizedOM> {
    if delete & contract != 0 {
        return Err(Error::Contract(
            "delete and contract sets must be disjoint".into(),
        ));
    }
    let n = om.ground_size();
    if !bits::is_subset(delete | contract, om.ground()) {
        return Err(Error::Contract("minor sets outside the ground set".into()));
    }
    let mut m = om.matrix().clone();
    for e in bits::elements(contract) {
        let Some(p) = (0..m.rows()).find(|&i| !m.get(i, e).is_zero()) else {
            continue;
        };
        let pivot = m.get(p, e).clone();
        for i in 0..m.rows() {
            if i == p || m.get(i, e).is_zero() {
                continue;
            }
            let factor = m.get(i, e).clone();
            for j in 0..n {
                let v = &(&pivot * m.get(i, j)) - &(&factor * m.get(p, j));
                m.set(i, j, v);
            }
        }
        let keep: Vec<usize> = (0..m.rows()).filter(|&i| i != p).collect();
        m = m.select_rows(&keep);
    }
    let cols: Vec<usize> = bits::elements(om.ground() & !(delete | contract)).collect();
    let labels = cols.iter().map(|&j| om.labels()[j].clone()).collect();
    RealizedOM::from_eps_matrix(m.select_columns(&cols).row_basis(), labels)
}

/// Lifts `X ∈ L₊(M)` to `(X⁺ ∪ Ã, ∅)` where `Ã` holds the `A`-partners of
/// `X̲ ∩ E₁`.
pub fn lift_primal(x: &SignVector, h: &HatMatroid) -> Result<SignVector> {
    h.lift(x, h.base_lattice(), h.e1(), "M")
}

/// Lifts `X ∈ L*₊` to `(X⁺ ∪ B̃, ∅)` where `B̃` holds the `B`-partners of
/// `X̲ ∩ E₂`.
pub fn lift_dual(x: &SignVector, h: &HatMatroid) -> Result<SignVector> {
    h.lift(x, h.dual_lattice(), h.e2(), "M*")
}

/// Restricts a nonnegative covector of `M̂` to `E`. A `B`-free vector
/// (including zero) restricts to `M`, an `A`-free one to `M*`; one meeting
/// both `A` and `B` has no restriction.
pub fn restrict(xhat: &SignVector, h: &HatMatroid) -> Result<(Side, Option<SignVector>)> {
    let n = h.n();
    if xhat.size() != 2 * n || !xhat.is_nonnegative() {
        return Err(Error::Contract(format!(
            "{xhat} is not a nonnegative sign vector on Ê"
        )));
    }
    let support = xhat.support();
    let meets_a = support & h.a() != 0;
    let meets_b = support & h.b() != 0;
    let on_e = SignVector::positive(n, support & h.e());
    Ok(match (meets_a, meets_b) {
        (_, false) => (Side::Primal, Some(on_e)),
        (false, true) => (Side::Dual, Some(on_e)),
        (true, true) => (Side::Neither, None),
    })
}
