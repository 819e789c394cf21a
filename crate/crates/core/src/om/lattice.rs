use std::collections::{HashMap, HashSet, VecDeque};

use super::realized::{cocircuits, RealizedOM};
use super::sign_vector::SignVector;
use crate::bits::{self, Mask};
use crate::error::{Error, Result};

/// Möbius values `μ(bottom, x)` of a finite poset with a unique minimum.
///
/// `le(a, b)` must be a partial order on `elements`. Values are returned in
/// input order.
pub fn mobius_from_bottom<T>(elements: &[T], le: impl Fn(&T, &T) -> bool) -> Result<Vec<i64>> {
    let n = elements.len();
    let strictly_below = |y: usize, x: usize| y != x && le(&elements[y], &elements[x]);
    let below_count: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| strictly_below(y, x)).count())
        .collect();
    let minima: Vec<usize> = (0..n).filter(|&x| below_count[x] == 0).collect();
    if minima.len() != 1 {
        return Err(Error::InvalidPoset(format!(
            "{} minimal elements, expected exactly one",
            minima.len()
        )));
    }
    // A strictly smaller element has strictly fewer elements below it.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| below_count[x]);

    let mut mu = vec![0i64; n];
    mu[minima[0]] = 1;
    for &x in order.iter().skip(1) {
        let mut sum = 0i64;
        for y in (0..n).filter(|&y| strictly_below(y, x)) {
            sum = sum
                .checked_add(mu[y])
                .ok_or_else(|| Error::Resource("Möbius value overflow".into()))?;
        }
        mu[x] = -sum;
    }
    Ok(mu)
}

/// Nonnegative covectors of an oriented matroid ordered by support
/// inclusion, with lattice ranks and Möbius values from the bottom.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    size: usize,
    elements: Vec<SignVector>,
    ranks: Vec<usize>,
    mobius: Vec<i64>,
    index: HashMap<Mask, usize>,
}

impl FaceLattice {
    /// Builds a lattice from supports (which must include the empty set).
    /// Elements are stored by support size, so the bottom comes first.
    pub fn from_supports(
        size: usize,
        supports: impl IntoIterator<Item = Mask>,
        rank_of: impl Fn(Mask) -> usize,
    ) -> Result<Self> {
        let mut masks: Vec<Mask> = supports
            .into_iter()
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mobius = mobius_from_bottom(&masks, |a, b| bits::is_subset(*a, *b))?;
        let ranks = masks.iter().map(|&m| rank_of(m)).collect();
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(Self {
            size,
            elements: masks
                .iter()
                .map(|&m| SignVector::positive(size, m))
                .collect(),
            ranks,
            mobius,
            index,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SignVector] {
        &self.elements
    }

    /// `(element, lattice rank, μ(0, element))`
    pub fn iter(&self) -> impl Iterator<Item = (&SignVector, usize, i64)> {
        self.elements
            .iter()
            .zip(&self.ranks)
            .zip(&self.mobius)
            .map(|((x, r), m)| (x, *r, *m))
    }

    fn position(&self, x: &SignVector) -> Option<usize> {
        if x.size() != self.size || !x.is_nonnegative() {
            return None;
        }
        self.index.get(&x.support()).copied()
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.position(x).is_some()
    }

    pub fn rank_of(&self, x: &SignVector) -> Option<usize> {
        self.position(x).map(|i| self.ranks[i])
    }

    pub fn mobius_of(&self, x: &SignVector) -> Option<i64> {
        self.position(x).map(|i| self.mobius[i])
    }

    /// Length of a longest chain from the bottom to each element.
    pub fn chain_lengths(&self) -> Vec<usize> {
        let mut len = vec![0usize; self.len()];
        for i in 0..self.len() {
            let xi = self.elements[i].support();
            len[i] = (0..i)
                .filter(|&j| {
                    let xj = self.elements[j].support();
                    xj != xi && bits::is_subset(xj, xi)
                })
                .map(|j| len[j] + 1)
                .max()
                .unwrap_or(0);
        }
        len
    }

    /// Elements violating `Σ_{Y ≤ X} μ(Y) = [X = bottom]`.
    pub fn mobius_identity_failures(&self) -> Vec<SignVector> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(i, x)| {
                let sum: i64 = self
                    .iter()
                    .filter(|(y, _, _)| bits::is_subset(y.support(), x.support()))
                    .map(|(_, _, m)| m)
                    .sum();
                sum != i64::from(*i == 0)
            })
            .map(|(_, x)| *x)
            .collect()
    }
}

/// Closure of `{0}` under composition with `cocircuits`. All inputs must be
/// nonnegative, so composition is union of supports.
pub fn compose_closure(supports: &[Mask]) -> HashSet<Mask> {
    let mut seen: HashSet<Mask> = HashSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &c in supports {
            let y = x | c;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The nonnegative part `L₊` of the covector lattice.
///
/// Every covector is a composition of cocircuits conforming to it, so the
/// nonnegative covectors are generated by the nonnegative cocircuits. Ranks
/// come from `rk(X) = rk(M) − rk(M ∖ X̲)`.
pub fn nonneg_face_lattice(om: &RealizedOM) -> Result<FaceLattice> {
    let positive: Vec<Mask> = cocircuits(om)
        .into_iter()
        .filter(|d| d.is_nonnegative())
        .map(|d| d.support())
        .collect();
    let ground = om.ground();
    let r = om.rank();
    FaceLattice::from_supports(om.ground_size(), compose_closure(&positive), |x| {
        r - om.rank_of(ground & !x)
    })
}
