use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::{Poly, RatFunc};
use crate::error::{Error, Result};

/// Element of `Z[v, v^-1]`: coefficient `coeffs[k]` sits at exponent
/// `low + k`. Normalised so that both ends of `coeffs` are nonzero; zero has
/// `low == 0` and no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    /// `v`.
    pub fn v() -> Self {
        LaurentPoly::monomial(1, BigInt::one())
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        LaurentPoly::normalise(exp, vec![c])
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        LaurentPoly::monomial(exp, BigInt::one())
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(0, BigInt::from(c))
    }

    fn normalise(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead_zeros);
        low += lead_zeros as i64;
        LaurentPoly { low, coeffs }
    }

    /// Builds `v^shift * p`.
    pub fn from_poly(p: &Poly, shift: i64) -> Self {
        LaurentPoly::normalise(shift, p.coeffs().to_vec())
    }

    /// Sums the given `(exponent, coefficient)` terms.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        if terms.is_empty() {
            return LaurentPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        LaurentPoly::normalise(lo, coeffs)
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> LaurentPoly {
        match self.max_exp() {
            None => LaurentPoly::zero(),
            Some(hi) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                LaurentPoly::normalise(-hi, c)
            }
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::normalise(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes `v -> -v`.
    pub fn negate_variable(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| {
            if e.rem_euclid(2) == 1 {
                (e, -c)
            } else {
                (e, c.clone())
            }
        }))
    }

    /// Terms with strictly positive exponent.
    pub fn positive_part(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms()
                .filter(|(e, _)| *e > 0)
                .map(|(e, c)| (e, c.clone())),
        )
    }

    /// True iff every exponent is at least `k`.
    pub fn exps_at_least(&self, k: i64) -> bool {
        self.min_exp().is_none_or(|m| m >= k)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_laurent(self)
    }

    /// Lowest exponent together with the coefficient vector starting there.
    pub fn raw_parts(&self) -> (i64, &[BigInt]) {
        (self.low, &self.coeffs)
    }

    /// `(exponent, coefficient)` pairs of the nonzero terms.
    pub fn pairs(&self) -> Vec<(i64, BigInt)> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::normalise(self.low + rhs.low, out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending terms, e.g. `v^-1+v`, `1-v^2`, `2v^3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mon = match e {
                0 => String::new(),
                1 => "v".to_string(),
                _ => format!("v^{e}"),
            };
            if mon.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{abs}{mon}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the notation produced by `Display` (spaces are ignored).
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("malformed polynomial '{s}'"));
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef = if i > start {
                s[start..i].parse::<BigInt>().map_err(|_| bad())?
            } else {
                BigInt::one()
            };
            let mut exp = 0i64;
            if i < bytes.len() && bytes[i] == b'v' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = s[es..i].parse().map_err(|_| bad())?;
                }
            } else if i == start {
                return Err(bad());
            }
            terms.push((exp, sign * coef));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// Serialised as sparse `[[exponent, coefficient], ...]`; coefficients that
/// do not fit in an `i64` are written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in self.terms() {
            match c.to_i64() {
                Some(x) => seq.serialize_element(&(e, x))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefRepr {
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, CoefRepr)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c = match c {
                CoefRepr::Int(x) => BigInt::from(x),
                CoefRepr::Str(s) => s.parse().map_err(de::Error::custom)?,
            };
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_i64_terms(t)
    }

    #[test]
    fn display_and_parse() {
        let cases = [
            (lp(&[(-1, 1), (1, 1)]), "v^-1+v"),
            (lp(&[(0, 1), (2, -1)]), "1-v^2"),
            (lp(&[(3, 2)]), "2v^3"),
            (lp(&[(1, -1)]), "-v"),
            (LaurentPoly::zero(), "0"),
        ];
        for (p, s) in cases {
            assert_eq!(p.to_string(), s);
            assert_eq!(s.parse::<LaurentPoly>().unwrap(), p);
        }
        assert_eq!(
            "1 + v - v".parse::<LaurentPoly>().unwrap(),
            LaurentPoly::one()
        );
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("1v2".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn bar_and_eval() {
        let p = lp(&[(-2, 3), (1, -1)]);
        assert_eq!(p.bar(), lp(&[(2, 3), (-1, -1)]));
        assert_eq!(p.eval_at_one(), BigInt::from(2));
        assert_eq!(lp(&[(0, 1), (2, 1)]).pow(2), lp(&[(0, 1), (2, 2), (4, 1)]));
    }

    #[test]
    fn json_encoding() {
        let p = lp(&[(0, 1), (2, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[0,1],[2,1]]");
        let q: LaurentPoly = serde_json::from_str("[[2,1],[0,\"1\"]]").unwrap();
        assert_eq!(p, q);
    }
}
