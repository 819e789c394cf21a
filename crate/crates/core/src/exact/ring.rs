//! Fraction-free (Bareiss) elimination over exact integral domains.
//!
//! The same elimination runs over machine integers, big integers and
//! integer polynomials in ε. Every ring operation is fallible so that the
//! `i128` instantiation can report overflow and let the caller retry with
//! arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    /// Division that is known to be exact. Panics if it is not; `None` only
    /// signals that the result does not fit the representation.
    fn checked_div_exact(&self, other: &Self) -> Option<Self>;
}

/// Integer coefficients with a sign, used by [`IntPoly`].
pub(crate) trait Coeff: ExactRing {
    fn signum_i8(&self) -> i8;
}

impl ExactRing for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        assert!(
            self % other == 0,
            "inexact division in fraction-free elimination"
        );
        i128::checked_div(*self, *other)
    }
}

impl Coeff for i128 {
    fn signum_i8(&self) -> i8 {
        self.signum() as i8
    }
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        assert!(
            Zero::is_zero(&r),
            "inexact division in fraction-free elimination"
        );
        Some(q)
    }
}

impl Coeff for BigInt {
    fn signum_i8(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Sparse polynomial in ε with integer coefficients, ascending degrees,
/// no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct IntPoly<C> {
    pub(crate) terms: Vec<(u32, C)>,
}

impl<C: Coeff> IntPoly<C> {
    pub(crate) fn from_terms(terms: Vec<(u32, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Self {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Sign of the polynomial for all sufficiently small ε > 0.
    pub(crate) fn sign_near_zero(&self) -> i8 {
        self.terms.first().map_or(0, |(_, c)| c.signum_i8())
    }

    fn to_dense(&self) -> Vec<C> {
        let len = self.terms.last().map_or(0, |(d, _)| *d as usize + 1);
        let mut dense = vec![C::zero(); len];
        for (d, c) in &self.terms {
            dense[*d as usize] = c.clone();
        }
        dense
    }

    fn from_dense(dense: Vec<C>) -> Self {
        Self {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(d, c)| (d as u32, c))
                .collect(),
        }
    }
}

impl<C: Coeff> ExactRing for IntPoly<C> {
    fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    fn one() -> Self {
        Self {
            terms: vec![(0, C::one())],
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn checked_add(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let c = a.1.checked_add(&b.1)?;
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some(Self { terms: out })
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut neg = Vec::with_capacity(other.terms.len());
        for (d, c) in &other.terms {
            neg.push((*d, C::zero().checked_sub(c)?));
        }
        self.checked_add(&Self { terms: neg })
    }

    fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.is_zero() || other.is_zero() {
            return Some(Self::zero());
        }
        let top = self.terms.last()?.0 + other.terms.last()?.0;
        let mut dense = vec![C::zero(); top as usize + 1];
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let slot = &mut dense[(da + db) as usize];
                *slot = slot.checked_add(&ca.checked_mul(cb)?)?;
            }
        }
        Some(Self::from_dense(dense))
    }

    fn checked_div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.to_dense();
        let div = other.to_dense();
        let dd = div.len() - 1;
        let lead = &div[dd];
        assert!(rem.len() > dd, "inexact polynomial division");
        let mut quot = vec![C::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top.checked_div_exact(lead)?;
            for (i, dc) in div.iter().enumerate() {
                if dc.is_zero() {
                    continue;
                }
                rem[k + i] = rem[k + i].checked_sub(&q.checked_mul(dc)?)?;
            }
            quot[k] = q;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        Some(Self::from_dense(quot))
    }
}

/// Result of fraction-free forward elimination on a row-major matrix.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<R> {
    pub(crate) cols: usize,
    pub(crate) data: Vec<R>,
    pub(crate) rank: usize,
    /// Parity of the row swaps performed: +1 or -1.
    pub(crate) swap_sign: i8,
}

impl<R: ExactRing> Echelon<R> {
    /// Rows `0..rank`; they span the same row space as the input.
    pub(crate) fn nonzero_rows(&self) -> impl Iterator<Item = &[R]> {
        self.data.chunks(self.cols.max(1)).take(self.rank)
    }
}

/// Bareiss elimination. Entries below each pivot become zero; every
/// intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact. Returns `None` on coefficient overflow.
pub(crate) fn fraction_free_echelon<R: ExactRing>(
    rows: usize,
    cols: usize,
    mut a: Vec<R>,
) -> Option<Echelon<R>> {
    debug_assert_eq!(a.len(), rows * cols);
    let mut prev = R::one();
    let mut rank = 0;
    let mut swap_sign = 1i8;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            swap_sign = -swap_sign;
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let factor = a[i * cols + c].clone();
            for j in c + 1..cols {
                let lhs = pivot.checked_mul(&a[i * cols + j])?;
                let rhs = factor.checked_mul(&a[rank * cols + j])?;
                a[i * cols + j] = lhs.checked_sub(&rhs)?.checked_div_exact(&prev)?;
            }
            a[i * cols + c] = R::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(Echelon {
        cols,
        data: a,
        rank,
        swap_sign,
    })
}

/// Determinant of a square matrix as `(swap_sign, last_pivot)`; the
/// determinant is `swap_sign * last_pivot`. `None` on overflow, zero pivot
/// when singular.
pub(crate) fn fraction_free_det<R: ExactRing>(n: usize, a: Vec<R>) -> Option<(i8, R)> {
    if n == 0 {
        return Some((1, R::one()));
    }
    let e = fraction_free_echelon(n, n, a)?;
    if e.rank < n {
        return Some((1, R::zero()));
    }
    let last = e.data[n * n - 1].clone();
    Some((e.swap_sign, last))
}
