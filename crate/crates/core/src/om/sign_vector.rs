use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::bits::{self, Mask, MAX_GROUND};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn from_i8(s: i8) -> Self {
        match s.signum() {
            1 => Sign::Pos,
            -1 => Sign::Neg,
            _ => Sign::Zero,
        }
    }
}

/// A `{+, 0, −}` assignment on a ground set of at most 64 elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    size: usize,
    plus: Mask,
    minus: Mask,
}

impl SignVector {
    pub fn zero(size: usize) -> Self {
        assert!(size <= MAX_GROUND, "ground sets are limited to 64 elements");
        Self {
            size,
            plus: 0,
            minus: 0,
        }
    }

    pub fn from_parts(size: usize, plus: Mask, minus: Mask) -> Self {
        assert!(size <= MAX_GROUND, "ground sets are limited to 64 elements");
        assert_eq!(plus & minus, 0, "an element cannot be both + and -");
        assert!(
            bits::is_subset(plus | minus, bits::full_mask(size)),
            "support outside the ground set"
        );
        Self { size, plus, minus }
    }

    /// The all-`+` vector on `support`.
    pub fn positive(size: usize, support: Mask) -> Self {
        Self::from_parts(size, support, 0)
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut v = Self::zero(signs.len());
        for (e, s) in signs.iter().enumerate() {
            v = v.with(e, *s);
        }
        v
    }

    pub fn with(mut self, e: usize, s: Sign) -> Self {
        let bit = 1 << e;
        self.plus &= !bit;
        self.minus &= !bit;
        match s {
            Sign::Pos => self.plus |= bit,
            Sign::Neg => self.minus |= bit,
            Sign::Zero => {}
        }
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, e: usize) -> Sign {
        if self.plus >> e & 1 == 1 {
            Sign::Pos
        } else if self.minus >> e & 1 == 1 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn support(&self) -> Mask {
        self.plus | self.minus
    }

    pub fn plus(&self) -> Mask {
        self.plus
    }

    pub fn minus(&self) -> Mask {
        self.minus
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.minus == 0
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.size).map(|e| self.get(e)).collect()
    }

    /// Composition `self ∘ other`: takes `self`'s sign where nonzero.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        if self.size != other.size {
            return Err(Error::Dimension(format!(
                "composing sign vectors of sizes {} and {}",
                self.size, other.size
            )));
        }
        let free = !self.support();
        Ok(Self {
            size: self.size,
            plus: self.plus | (other.plus & free),
            minus: self.minus | (other.minus & free),
        })
    }

    /// The vector on `positions.len()` elements whose `i`-th sign is
    /// `self.get(positions[i])`.
    pub fn pick(&self, positions: &[usize]) -> SignVector {
        let mut v = SignVector::zero(positions.len());
        for (i, &e) in positions.iter().enumerate() {
            v = v.with(i, self.get(e));
        }
        v
    }
}

impl Neg for SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        SignVector {
            size: self.size,
            plus: self.minus,
            minus: self.plus,
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in 0..self.size {
            let c = match self.get(e) {
                Sign::Pos => '+',
                Sign::Neg => '-',
                Sign::Zero => '0',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' => Ok(Sign::Pos),
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                _ => Err(Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("unexpected sign character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        if signs.len() > MAX_GROUND {
            return Err(Error::Resource(
                "ground sets are limited to 64 elements".into(),
            ));
        }
        Ok(Self::from_signs(&signs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn composition_examples() {
        let x = sv("+0-");
        assert_eq!(x.compose(&SignVector::zero(3)).unwrap(), x);
        assert_eq!(sv("+0").compose(&sv("0+")).unwrap(), sv("++"));
        assert_eq!(x.compose(&sv("-++")).unwrap(), sv("++-"));
    }

    #[test]
    fn composition_size_mismatch() {
        assert!(matches!(
            sv("+").compose(&sv("+0")),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn negation_and_display() {
        assert_eq!((-sv("+0-")).to_string(), "-0+");
        assert!(sv("+0+").is_nonnegative());
        assert!(!sv("+0-").is_nonnegative());
        assert_eq!(sv("0+0+").support(), 0b1010);
    }

    #[test]
    fn picking_positions() {
        assert_eq!(sv("+-0+").pick(&[3, 1]), sv("+-"));
    }
}
