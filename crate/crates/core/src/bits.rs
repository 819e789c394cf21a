//! Subsets of a ground set of at most 64 elements, stored as bitmasks.

/// A subset of `{0, …, 63}`.
pub type Mask = u64;

pub const MAX_GROUND: usize = 64;

pub fn mask_of(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &e| m | (1 << e))
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Elements of `mask`, ascending.
pub fn elements(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(e)
        }
    })
}

pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        idx: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    idx: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.idx.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.idx = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

/// Sign of the permutation that sorts `items`, or 0 if an item repeats.
pub fn sort_sign(items: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            match items[i].cmp(&items[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(
            combinations(4, 0).collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(
            combinations(3, 2).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(sort_sign(&[0, 1, 2]), 1);
        assert_eq!(sort_sign(&[1, 0, 2]), -1);
        assert_eq!(sort_sign(&[2, 0, 1]), 1);
        assert_eq!(sort_sign(&[1, 1]), 0);
    }

    #[test]
    fn element_iteration() {
        assert_eq!(elements(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(full_mask(3), 0b111);
        assert_eq!(full_mask(64), u64::MAX);
    }
}
