use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{fraction_free_det, fraction_free_echelon};
use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
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
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from integer rows. `cols` is needed for the zero-row case.
    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&v| rat(v)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
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
            entries.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            entries,
        })
    }

    /// Each row scaled by the (positive) lcm of its denominators. Row
    /// scaling by positive integers keeps ranks and determinant signs.
    pub(crate) fn integer_rows(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            out.extend(row.iter().map(|v| v.numer() * (&lcm / v.denom())));
        }
        out
    }

    /// Reduced row echelon form by Gauss-Jordan elimination, together with
    /// the pivot columns. The pivot columns form the lexicographically
    /// smallest column basis.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.entries.swap(p * m.cols + j, r * m.cols + j);
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals via fraction-free elimination.
pub fn rank_rat(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    fraction_free_echelon(m.rows, m.cols, m.integer_rows())
        .expect("big-integer elimination cannot overflow")
        .rank
}

/// Exact determinant of a square rational matrix.
pub fn det_rat(m: &RatMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let scale = (0..m.rows).fold(BigInt::one(), |acc, i| {
        acc * m.row(i).iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()))
    });
    let (s, d) = fraction_free_det(m.rows, m.integer_rows())
        .expect("big-integer elimination cannot overflow");
    Ok(Rational::new(BigInt::from(s) * d, scale))
}

/// A realization brought into the shape `(I_r | C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// `perm[k]` is the original column placed at position `k`; the basis
    /// occupies positions `0..rank`.
    pub perm: Vec<usize>,
    /// The `rank × (n - rank)` block to the right of the identity.
    pub c: RatMatrix,
}

impl StandardForm {
    pub fn rank(&self) -> usize {
        self.c.rows()
    }

    pub fn ground_size(&self) -> usize {
        self.perm.len()
    }

    /// Original column indices of the basis, in the order used.
    pub fn basis(&self) -> &[usize] {
        &self.perm[..self.rank()]
    }

    /// The full matrix `(I_r | C)` in permuted column order.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::identity(self.rank())
            .hcat(&self.c)
            .expect("identity and C share their row count")
    }
}

/// Permutes a basis to the front and row-reduces to `(I_r | C)`. Without an
/// explicit basis the lexicographically smallest one is used.
pub fn standard_form(m: &RatMatrix, basis: Option<&[usize]>) -> Result<StandardForm> {
    let (_, lex_basis) = m.rref();
    let rank = lex_basis.len();
    let basis: Vec<usize> = match basis {
        None => lex_basis,
        Some(b) => {
            if b.len() != rank {
                return Err(Error::InvalidBasis(format!(
                    "{} columns given but the rank is {rank}",
                    b.len()
                )));
            }
            if let Some(&bad) = b.iter().find(|&&j| j >= m.cols) {
                return Err(Error::InvalidBasis(format!(
                    "column {} out of range 1..={}",
                    bad + 1,
                    m.cols
                )));
            }
            if rank_rat(&m.select_columns(b)) != rank {
                return Err(Error::InvalidBasis(
                    "columns are dependent or repeated".into(),
                ));
            }
            b.to_vec()
        }
    };
    let mut perm = basis.clone();
    perm.extend((0..m.cols).filter(|j| !basis.contains(j)));

    let (reduced, pivots) = m.select_columns(&perm).rref();
    debug_assert_eq!(pivots, (0..rank).collect::<Vec<_>>());
    let top: Vec<usize> = (0..rank).collect();
    let rest: Vec<usize> = (rank..m.cols).collect();
    let c = reduced.select_rows(&top).select_columns(&rest);
    Ok(StandardForm { perm, c })
}

pub(crate) fn sign_of(v: &Rational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(cols, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_rat(&RatMatrix::zeros(0, 0)), 0);
        assert_eq!(rank_rat(&m(2, &[&[1, -1], &[-1, 1]])), 1);
        assert_eq!(rank_rat(&RatMatrix::identity(3)), 3);
    }

    #[test]
    fn rank_with_fractions() {
        let mut a = m(2, &[&[1, 2], &[3, 6]]);
        a.set(0, 0, Rational::new(1.into(), 3.into()));
        a.set(0, 1, Rational::new(2.into(), 3.into()));
        assert_eq!(rank_rat(&a), 1);
    }

    #[test]
    fn determinant_with_fractions() {
        let mut a = m(2, &[&[1, 2], &[3, 4]]);
        a.set(0, 0, Rational::new(1.into(), 2.into()));
        // 1/2 * 4 - 2 * 3 = -4
        assert_eq!(det_rat(&a).unwrap(), rat(-4));
        assert!(det_rat(&m(2, &[&[1, 2]])).is_err());
    }

    #[test]
    fn standard_form_identity() {
        let sf = standard_form(&RatMatrix::identity(3), None).unwrap();
        assert_eq!(sf.perm, vec![0, 1, 2]);
        assert_eq!(sf.c.cols(), 0);
        assert_eq!(sf.c.rows(), 3);
    }

    #[test]
    fn standard_form_digon() {
        let sf = standard_form(&m(2, &[&[1, -1], &[-1, 1]]), Some(&[0])).unwrap();
        assert_eq!(sf.c, m(1, &[&[-1]]));
    }

    #[test]
    fn standard_form_three_cycle() {
        // arcs 1->2, 2->3, 3->1 as columns
        let inc = m(3, &[&[1, 0, -1], &[-1, 1, 0], &[0, -1, 1]]);
        let sf = standard_form(&inc, Some(&[0, 1])).unwrap();
        assert_eq!(sf.c, m(1, &[&[-1], &[-1]]));
        assert_eq!(sf.perm, vec![0, 1, 2]);
    }

    #[test]
    fn standard_form_nontrivial_permutation() {
        let a = m(3, &[&[0, 1, 1], &[0, 0, 2]]);
        let sf = standard_form(&a, None).unwrap();
        assert_eq!(sf.basis(), &[1, 2]);
        assert_eq!(sf.perm, vec![1, 2, 0]);
        let sf = standard_form(&a, Some(&[2, 1])).unwrap();
        assert_eq!(sf.perm, vec![2, 1, 0]);
    }

    #[test]
    fn standard_form_rejects_bad_bases() {
        let a = m(3, &[&[1, 2, 0], &[0, 0, 1]]);
        assert!(matches!(
            standard_form(&a, Some(&[0, 1])),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            standard_form(&a, Some(&[0])),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            standard_form(&a, Some(&[0, 0])),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            standard_form(&a, Some(&[0, 7])),
            Err(Error::InvalidBasis(_))
        ));
    }
}
