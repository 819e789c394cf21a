use std::collections::HashSet;

use num_traits::{One, Zero};

use super::chirotope::{chirotope_from_matrix, Chirotope};
use super::sign_vector::{Sign, SignVector};
use crate::bits::{self, Mask, MAX_GROUND};
use crate::error::{Error, Result};
use crate::exact::{standard_form, EpsMatrix, RatMatrix, Rational};

/// An oriented matroid together with a full-row-rank matrix realizing it.
#[derive(Clone, Debug)]
pub struct RealizedOM {
    matrix: EpsMatrix,
    chirotope: Chirotope,
    labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl RealizedOM {
    /// Column oriented matroid of any rational matrix. Dependent rows are
    /// removed first; elements are labelled `1..=n`.
    pub fn from_rat_matrix(m: &RatMatrix) -> Result<Self> {
        if m.cols() > MAX_GROUND {
            return Err(Error::Resource(format!(
                "{} ground elements; at most {MAX_GROUND} are supported",
                m.cols()
            )));
        }
        let (reduced, pivots) = m.rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let matrix = EpsMatrix::from_rat(&reduced.select_rows(&rows));
        Self::from_eps_matrix(matrix, default_labels(m.cols()))
    }

    /// Wraps a matrix that must already have full row rank.
    pub fn from_eps_matrix(matrix: EpsMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != matrix.cols() {
            return Err(Error::Dimension(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.cols()
            )));
        }
        let chirotope = chirotope_from_matrix(&matrix)?;
        Ok(Self {
            matrix,
            chirotope,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.ground_size() {
            return Err(Error::Dimension(format!(
                "{} labels for {} elements",
                labels.len(),
                self.ground_size()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn matrix(&self) -> &EpsMatrix {
        &self.matrix
    }

    pub fn chirotope(&self) -> &Chirotope {
        &self.chirotope
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground_size(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.chirotope.rank()
    }

    pub fn ground(&self) -> Mask {
        bits::full_mask(self.ground_size())
    }

    /// Rank of the column submatrix on `set`.
    pub fn rank_of(&self, set: Mask) -> usize {
        self.chirotope.rank_of(set)
    }

    /// The realization as a rational matrix, when no entry involves ε.
    pub fn to_rat(&self) -> Option<RatMatrix> {
        self.matrix.to_rat()
    }

    /// The block `C` when the realization is literally `(I_r | C)`.
    pub fn standard_block(&self) -> Option<RatMatrix> {
        let m = self.to_rat()?;
        let r = m.rows();
        for i in 0..r {
            for j in 0..r {
                let want = if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if *m.get(i, j) != want {
                    return None;
                }
            }
        }
        let rows: Vec<usize> = (0..r).collect();
        let cols: Vec<usize> = (r..m.cols()).collect();
        Some(m.select_rows(&rows).select_columns(&cols))
    }

    /// The dual on the same labelled ground set, for rational realizations
    /// in any form.
    pub fn dual(&self) -> Result<RealizedOM> {
        let m = self.to_rat().ok_or_else(|| {
            Error::Contract("duals are only formed for rational realizations".into())
        })?;
        let sf = standard_form(&m, None)?;
        let d = dual_matrix(&sf.c)?;
        // column k of `d` belongs to original element sf.perm[k]
        let mut inverse = vec![0; sf.perm.len()];
        for (k, &e) in sf.perm.iter().enumerate() {
            inverse[e] = k;
        }
        let matrix = EpsMatrix::from_rat(&d.select_columns(&inverse));
        RealizedOM::from_eps_matrix(matrix, self.labels.clone())
    }
}

/// `(−Cᵀ | I_{n−r})`
fn dual_matrix(c: &RatMatrix) -> Result<RatMatrix> {
    let mut neg_t = c.transpose();
    for i in 0..neg_t.rows() {
        for j in 0..neg_t.cols() {
            let v = -neg_t.get(i, j).clone();
            neg_t.set(i, j, v);
        }
    }
    neg_t.hcat(&RatMatrix::identity(c.cols()))
}

/// Realization `(−Cᵀ | I_{n−r})` of the dual of a matroid given as `(I_r | C)`.
pub fn dual_realization(om: &RealizedOM) -> Result<RealizedOM> {
    let c = om.standard_block().ok_or_else(|| {
        Error::Contract("dual_realization needs a realization of the form (I_r | C)".into())
    })?;
    let matrix = EpsMatrix::from_rat(&dual_matrix(&c)?);
    RealizedOM::from_eps_matrix(matrix, om.labels.clone())
}

/// All signed cocircuits, both members of each `±` pair, sorted.
///
/// Every independent `(r−1)`-set `S` spans a hyperplane `H`; the cocircuit
/// has support `E ∖ H = {e : S + e is a basis}` and signs `χ(e, S)`,
/// anchored so that the least support element is `+`.
pub fn cocircuits(om: &RealizedOM) -> Vec<SignVector> {
    let r = om.rank();
    let n = om.ground_size();
    if r == 0 {
        return Vec::new();
    }
    let chi = om.chirotope();
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut out = Vec::new();
    let mut tuple = vec![0; r];
    for s in bits::combinations(n, r - 1) {
        let s_mask = bits::mask_of(&s);
        let support = (0..n)
            .filter(|&e| s_mask >> e & 1 == 0 && chi.is_basis(s_mask | 1 << e))
            .fold(0, |m, e| m | 1 << e);
        if support == 0 || !seen.insert(support) {
            continue;
        }
        tuple[1..].copy_from_slice(&s);
        let mut sign_at = |e: usize| {
            tuple[0] = e;
            chi.sign_of(&tuple)
        };
        let anchor = sign_at(support.trailing_zeros() as usize);
        let mut d = SignVector::zero(n);
        for e in bits::elements(support) {
            d = d.with(e, Sign::from_i8(sign_at(e) * anchor));
        }
        out.push(d);
        out.push(-d);
    }
    out.sort();
    out
}
