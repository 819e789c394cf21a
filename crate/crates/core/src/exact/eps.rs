//! Polynomials in a positive infinitesimal ε and matrices over them.
//!
//! A polynomial's sign "for all sufficiently small ε > 0" is the sign of its
//! lowest-degree coefficient, so no numeric value of ε is ever chosen.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::{sign_of, RatMatrix, Rational};
use super::ring::{fraction_free_det, fraction_free_echelon, ExactRing, IntPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EpsPoly {
    terms: Vec<(u32, Rational)>,
}

impl EpsPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c · ε^degree`
    pub fn monomial(degree: u32, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(degree, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary `(degree, coefficient)` pairs,
    /// merging repeated degrees and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut acc = std::collections::BTreeMap::<u32, Rational>::new();
        for (d, c) in terms {
            *acc.entry(d).or_insert_with(Rational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_term(&self) -> Option<&(u32, Rational)> {
        self.terms.first()
    }

    /// Sign for every sufficiently small ε > 0.
    pub fn sign_near_zero(&self) -> i8 {
        self.terms.first().map_or(0, |(_, c)| sign_of(c))
    }

    /// The constant term, if this polynomial has no positive-degree terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let other_terms = other.terms.iter().map(|(d, c)| {
            let c = if negate_other { -c.clone() } else { c.clone() };
            (*d, c)
        });
        Self::from_terms(self.terms.iter().cloned().chain(other_terms))
    }
}

impl Add for &EpsPoly {
    type Output = EpsPoly;
    fn add(self, rhs: &EpsPoly) -> EpsPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &EpsPoly {
    type Output = EpsPoly;
    fn sub(self, rhs: &EpsPoly) -> EpsPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &EpsPoly {
    type Output = EpsPoly;
    fn mul(self, rhs: &EpsPoly) -> EpsPoly {
        EpsPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(da, ca)| rhs.terms.iter().map(move |(db, cb)| (da + db, ca * cb))),
        )
    }
}

impl Neg for &EpsPoly {
    type Output = EpsPoly;
    fn neg(self) -> EpsPoly {
        EpsPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

impl ExactRing for EpsPoly {
    fn zero() -> Self {
        EpsPoly::zero()
    }
    fn one() -> Self {
        EpsPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        EpsPoly::is_zero(self)
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
        let (ld, lc) = other.terms.last().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rd, rc)) = rem.terms.last().cloned() {
            assert!(rd >= *ld, "inexact polynomial division");
            let q = EpsPoly::monomial(rd - ld, rc / lc);
            rem = &rem - &(&q * other);
            quot.extend(q.terms);
        }
        Some(EpsPoly::from_terms(quot))
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let neg = sign_of(c) < 0;
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match d {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "ε")?,
                1 => write!(f, "{mag}*ε")?,
                _ if unit => write!(f, "ε^{d}")?,
                _ => write!(f, "{mag}*ε^{d}")?,
            }
        }
        Ok(())
    }
}

/// Row-major matrix of ε-polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<EpsPoly>,
}

impl EpsMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<EpsPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![EpsPoly::zero(); rows * cols],
        }
    }

    pub fn from_rat(m: &RatMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(EpsPoly::constant).collect(),
        }
    }

    /// The rational matrix, if every entry is a constant.
    pub fn to_rat(&self) -> Option<RatMatrix> {
        let entries = self
            .entries
            .iter()
            .map(EpsPoly::as_constant)
            .collect::<Option<Vec<_>>>()?;
        RatMatrix::new(self.rows, self.cols, entries).ok()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &EpsPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: EpsPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Rank over the field of rational functions in ε.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        fraction_free_echelon(self.rows, self.cols, self.entries.clone())
            .expect("rational coefficients cannot overflow")
            .rank
    }

    /// A full-row-rank matrix with the same row space.
    ///
    /// Elimination only adds multiples of rows and scales rows by nonzero
    /// polynomials, so every maximal minor of the result equals the
    /// corresponding minor of a row basis of `self` times one common factor.
    pub fn row_basis(&self) -> Self {
        if self.rows == 0 || self.cols == 0 {
            return Self::zeros(0, self.cols);
        }
        let e = fraction_free_echelon(self.rows, self.cols, self.entries.clone())
            .expect("rational coefficients cannot overflow");
        let entries: Vec<EpsPoly> = e.nonzero_rows().flatten().cloned().collect();
        Self {
            rows: e.rank,
            cols: self.cols,
            entries,
        }
    }

    /// Each row scaled to integer coefficients by the positive lcm of its
    /// denominators.
    fn integer_rows(&self) -> Vec<IntPoly<BigInt>> {
        let mut out = Vec::with_capacity(self.entries.len());
        for row in self.entries.chunks(self.cols.max(1)) {
            let lcm = row
                .iter()
                .flat_map(|p| p.terms.iter())
                .fold(<BigInt as One>::one(), |acc, (_, c)| acc.lcm(c.denom()));
            for p in row {
                let terms = p
                    .terms
                    .iter()
                    .map(|(d, c)| (*d, c.numer() * (&lcm / c.denom())))
                    .collect();
                out.push(IntPoly::from_terms(terms));
            }
        }
        out
    }
}

/// Sign of `det(m)` for all sufficiently small ε > 0: the sign of the
/// lowest-degree nonzero coefficient, or 0 when the determinant vanishes
/// identically.
pub fn det_sign_eps(m: &EpsMatrix) -> Result<i8> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let wide = m.integer_rows();
    let narrow: Option<Vec<IntPoly<i128>>> = wide
        .iter()
        .map(|p| {
            p.terms
                .iter()
                .map(|(d, c)| c.to_i128().map(|c| (*d, c)))
                .collect::<Option<Vec<_>>>()
                .map(IntPoly::from_terms)
        })
        .collect();
    if let Some((s, d)) = narrow.and_then(|a| fraction_free_det(n, a)) {
        return Ok(s * d.sign_near_zero());
    }
    let (s, d) = fraction_free_det(n, wide).expect("big-integer elimination cannot overflow");
    Ok(s * d.sign_near_zero())
}
