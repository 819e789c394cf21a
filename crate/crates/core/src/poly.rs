//! Sparse integer polynomials in `x`, `y`, `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exponents `(x, y, z)` of a monomial.
pub type Exponents = (u32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TriPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, (0, 0, 0))
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, (0, 0, 0))
    }

    /// `c · x^i y^j z^k`
    pub fn monomial(c: impl Into<BigInt>, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c.into());
        p
    }

    /// `x^i`
    pub fn x_pow(i: u32) -> Self {
        Self::monomial(1, (i, 0, 0))
    }

    /// Univariate polynomial in `x` from ascending coefficients.
    pub fn from_x_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term((i as u32, 0, 0), BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: Exponents) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|&(_, j, k)| j == 0 && k == 0)
    }

    /// Terms in display order: `x`-degree descending, then `y`, then `z`
    /// ascending.
    pub fn terms(&self) -> Vec<(Exponents, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        t.sort_by(|((xa, ya, za), _), ((xb, yb, zb), _)| {
            xb.cmp(xa).then(ya.cmp(yb)).then(za.cmp(zb))
        });
        t
    }

    /// Substitutes integers for `y` and `z`.
    pub fn specialize(&self, y: i64, z: i64) -> TriPoly {
        let (y, z) = (BigInt::from(y), BigInt::from(z));
        let mut out = TriPoly::zero();
        for (&(i, j, k), c) in &self.terms {
            out.add_term((i, 0, 0), c * Pow::pow(&y, j) * Pow::pow(&z, k));
        }
        out
    }

    pub fn evaluate(&self, x: i64, y: i64, z: i64) -> BigInt {
        let (x, y, z) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
        self.terms
            .iter()
            .map(|(&(i, j, k), c)| c * Pow::pow(&x, i) * Pow::pow(&y, j) * Pow::pow(&z, k))
            .sum()
    }

    /// `[{"x": i, "y": j, "z": k, "c": coefficient}, …]` in display order.
    /// Coefficients outside the `i64` range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .into_iter()
                .map(|((i, j, k), c)| {
                    let c = match c.to_i64() {
                        Some(v) => json!(v),
                        None => json!(c.to_string()),
                    };
                    json!({"x": i, "y": j, "z": k, "c": c})
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            line: 1,
            column: 1,
            message: msg,
        };
        let arr = v
            .as_array()
            .ok_or_else(|| bad("polynomial must be a JSON array".into()))?;
        let mut p = TriPoly::zero();
        for (t, term) in arr.iter().enumerate() {
            let exp = |key: &str| -> Result<u32> {
                term.get(key)
                    .and_then(Value::as_u64)
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| bad(format!("term {t}: missing or invalid \"{key}\"")))
            };
            let c = match term.get("c") {
                Some(Value::Number(n)) => n.as_i64().map(BigInt::from),
                Some(Value::String(s)) => s.parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| bad(format!("term {t}: missing or invalid \"c\"")))?;
            p.add_term((exp("x")?, exp("y")?, exp("z")?), c);
        }
        Ok(p)
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        self + &(-rhs)
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for ((i, j, k), a) in &self.terms {
            for ((p, q, s), b) in &rhs.terms {
                out.add_term((i + p, j + q, k + s), a * b);
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, mag: &BigInt, (i, j, k): Exponents) -> fmt::Result {
    let mut factors = Vec::new();
    for (var, e) in [("x", i), ("y", j), ("z", k)] {
        match e {
            0 => {}
            1 => factors.push(var.to_string()),
            _ => factors.push(format!("{var}^{e}")),
        }
    }
    if factors.is_empty() {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in self.terms().into_iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &c.abs(), exps)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_minus_xy() -> TriPoly {
        &TriPoly::x_pow(1) - &TriPoly::monomial(1, (1, 1, 0))
    }

    #[test]
    fn display_forms() {
        assert_eq!(TriPoly::from_x_coeffs(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(x_minus_xy().to_string(), "x - x*y");
        assert_eq!(TriPoly::zero().to_string(), "0");
        assert_eq!(TriPoly::monomial(-3, (0, 2, 1)).to_string(), "-3*y^2*z");
        assert_eq!(TriPoly::constant(-1).to_string(), "-1");
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(x_minus_xy().specialize(0, 1), TriPoly::x_pow(1));
        assert_eq!(x_minus_xy().specialize(1, 0), TriPoly::zero());
        assert_eq!(TriPoly::one().specialize(7, -3), TriPoly::one());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            TriPoly::from_x_coeffs(&[-1, 0, 1]).evaluate(2, 0, 0),
            BigInt::from(3)
        );
        assert_eq!(TriPoly::zero().evaluate(5, 5, 5), BigInt::from(0));
        assert_eq!(
            TriPoly::from_x_coeffs(&[-1, 1]).evaluate(3, 0, 0),
            BigInt::from(2)
        );
    }

    #[test]
    fn arithmetic() {
        let a = TriPoly::from_x_coeffs(&[-1, 1]);
        let b = TriPoly::from_x_coeffs(&[1, 1]);
        assert_eq!(&a * &b, TriPoly::from_x_coeffs(&[-1, 0, 1]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = x_minus_xy();
        let v = p.to_json();
        assert_eq!(
            v,
            serde_json::json!([{"x": 1, "y": 0, "z": 0, "c": 1}, {"x": 1, "y": 1, "z": 0, "c": -1}])
        );
        assert_eq!(TriPoly::from_json(&v).unwrap(), p);
        assert!(TriPoly::from_json(&serde_json::json!({"x": 1})).is_err());
    }

    #[test]
    fn huge_coefficients_serialize_as_strings() {
        let big = BigInt::from(10).pow(30u32);
        let p = TriPoly::monomial(big.clone(), (1, 0, 0));
        let v = p.to_json();
        assert_eq!(v[0]["c"], serde_json::json!(big.to_string()));
        assert_eq!(TriPoly::from_json(&v).unwrap(), p);
    }
}
