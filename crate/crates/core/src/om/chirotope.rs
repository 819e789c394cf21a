use std::collections::HashMap;

use crate::bits::{self, Mask, MAX_GROUND};
use crate::error::{Error, Result};
use crate::exact::{det_sign_eps, EpsMatrix};

/// Alternating sign map on ordered `rank`-tuples, normalized so that the
/// lexicographically first basis is positive. Only bases are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    ground: usize,
    rank: usize,
    signs: HashMap<Mask, i8>,
}

impl Chirotope {
    /// Builds a chirotope from the signs of sorted `rank`-subsets. Subsets
    /// missing from `signs` (or mapped to 0) are non-bases.
    pub fn from_sorted_signs(
        ground: usize,
        rank: usize,
        signs: impl IntoIterator<Item = (Mask, i8)>,
    ) -> Result<Self> {
        let mut signs: HashMap<Mask, i8> = signs.into_iter().filter(|(_, s)| *s != 0).collect();
        let Some(first) = signs.keys().copied().min_by_key(|m| lex_key(*m)) else {
            return Err(Error::NotARealization(format!(
                "no nonzero {rank}x{rank} minor"
            )));
        };
        if signs[&first] < 0 {
            signs.values_mut().for_each(|s| *s = -*s);
        }
        Ok(Self {
            ground,
            rank,
            signs,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `χ(tuple)`; zero for repeated elements and non-bases.
    pub fn sign_of(&self, tuple: &[usize]) -> i8 {
        assert_eq!(
            tuple.len(),
            self.rank,
            "chirotope takes {}-tuples",
            self.rank
        );
        let parity = bits::sort_sign(tuple);
        if parity == 0 {
            return 0;
        }
        parity * self.signs.get(&bits::mask_of(tuple)).copied().unwrap_or(0)
    }

    pub fn is_basis(&self, set: Mask) -> bool {
        self.signs.contains_key(&set)
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> Vec<Mask> {
        let mut b: Vec<Mask> = self.signs.keys().copied().collect();
        b.sort_by_key(|m| lex_key(*m));
        b
    }

    /// Matroid rank of `set`: the largest intersection with a basis.
    pub fn rank_of(&self, set: Mask) -> usize {
        self.signs
            .keys()
            .map(|b| (b & set).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

fn lex_key(m: Mask) -> Vec<usize> {
    bits::elements(m).collect()
}

/// Chirotope of the column oriented matroid of a full-row-rank matrix.
pub fn chirotope_from_matrix(m: &EpsMatrix) -> Result<Chirotope> {
    let (r, n) = (m.rows(), m.cols());
    if n > MAX_GROUND {
        return Err(Error::Resource(format!(
            "{n} ground elements; at most {MAX_GROUND} are supported"
        )));
    }
    if r > n {
        return Err(Error::NotARealization(format!(
            "{r} rows but only {n} columns"
        )));
    }
    let mut signs = Vec::new();
    for cols in bits::combinations(n, r) {
        let s = det_sign_eps(&m.select_columns(&cols))?;
        if s != 0 {
            signs.push((bits::mask_of(&cols), s));
        }
    }
    Chirotope::from_sorted_signs(n, r, signs).map_err(|_| {
        Error::NotARealization(format!("the {r}x{n} matrix does not have full row rank"))
    })
}
