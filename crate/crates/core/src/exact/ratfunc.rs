use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Poly};
use crate::error::{Error, Result};

/// Element of `Q(v)` in canonical form: `num/den` with `gcd(num, den) = 1`
/// over `Q[v]`, integer coefficients whose combined content is 1, and a
/// positive leading coefficient in `den`. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::new(Poly::constant(BigInt::from(c)), Poly::one())
    }

    /// `num/den`, normalised. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        RatFunc::checked_new(num, den).expect("zero denominator")
    }

    pub fn checked_new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.lead().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        Some(RatFunc { num, den })
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let Some(low) = p.min_exp() else {
            return RatFunc::zero();
        };
        let (_, c) = p.raw_parts();
        let body = Poly::from_coeffs(c.to_vec());
        if low >= 0 {
            RatFunc {
                num: body.shift(low as usize),
                den: Poly::one(),
            }
        } else {
            RatFunc {
                num: body,
                den: Poly::monomial((-low) as usize, BigInt::one()),
            }
        }
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        RatFunc::from_laurent(&LaurentPoly::v_pow(k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Option<RatFunc> {
        RatFunc::checked_new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Option<RatFunc> {
        Some(self * &rhs.inv()?)
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let k = dd - dn;
        let (num, den) = if k >= 0 {
            (self.num.reversed().shift(k as usize), self.den.reversed())
        } else {
            (
                self.num.reversed(),
                self.den.reversed().shift((-k) as usize),
            )
        };
        RatFunc::new(num, den)
    }

    /// `Some` iff the value lies in `Z[v, v^-1]`, i.e. the denominator is a
    /// monic monomial.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if !self.den.is_monic_monomial() {
            return None;
        }
        let k = self.den.degree().unwrap() as i64;
        Some(LaurentPoly::from_poly(&self.num, -k))
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_monic_monomial()
    }

    /// Value at `v = 1`, or `None` when the denominator vanishes there.
    pub fn eval_at_one(&self) -> Option<num_rational::BigRational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return None;
        }
        Some(num_rational::BigRational::new(self.num.eval_at_one(), d))
    }

    /// Terms of the expansion of `self` in `Z((v))` with exponent below
    /// `n`. Fails if the expansion has a non-integral coefficient.
    pub fn series_prefix(&self, n: i64) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let a = self.den.low_order().unwrap();
        let d = self.den.unshift(a);
        let d0 = d.coeff(0);
        // value = v^-a * num / d with d(0) != 0; expand num/d below n + a.
        let m = n + a as i64;
        if m <= 0 {
            return Ok(LaurentPoly::zero());
        }
        let m = m as usize;
        let mut s: Vec<BigInt> = Vec::with_capacity(m);
        for k in 0..m {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(d.coeffs().len().saturating_sub(1)) {
                acc -= d.coeff(j) * &s[k - j];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(Error::NotExpandable(format!(
                    "coefficient of v^{} in {} is not integral",
                    k as i64 - a as i64,
                    self
                )));
            }
            s.push(q);
        }
        Ok(LaurentPoly::from_poly(&Poly::from_coeffs(s), -(a as i64)))
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(p: &LaurentPoly) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_laurent(&p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_laurent() {
            Some(p) => p.fmt(f),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: LaurentPoly::from_poly(&self.num, 0),
            den: LaurentPoly::from_poly(&self.den, 0),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        let num = RatFunc::from_laurent(&r.num);
        let den = RatFunc::from_laurent(&r.den);
        num.checked_div(&den)
            .ok_or_else(|| serde::de::Error::custom("zero denominator"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn canonical_form() {
        let a = RatFunc::new(p(&[2, 2]), p(&[-4, 0, 4]));
        // 2(1+v) / 4(v^2-1) = 1 / 2(v-1)
        assert_eq!(a.num(), &p(&[1]));
        assert_eq!(a.den(), &p(&[-2, 2]));
        assert_eq!(RatFunc::new(p(&[0]), p(&[3, 1])), RatFunc::zero());
        let b = RatFunc::new(p(&[0, 4]), p(&[6]));
        assert_eq!(b.num(), &p(&[0, 2]));
        assert_eq!(b.den(), &p(&[3]));
    }

    #[test]
    fn laurent_detection() {
        let x = RatFunc::new(p(&[1, 0, 1]), p(&[0, 1]));
        assert_eq!(x.to_laurent().unwrap().to_string(), "v^-1+v");
        assert!(RatFunc::new(p(&[1]), p(&[0, 2])).to_laurent().is_none());
        assert!(RatFunc::new(p(&[1]), p(&[1, 1])).to_laurent().is_none());
    }

    #[test]
    fn bar_of_fraction() {
        // v / (1 + v^2) is bar invariant
        let x = RatFunc::new(p(&[0, 1]), p(&[1, 0, 1]));
        assert_eq!(x.bar(), x);
        let y = RatFunc::new(p(&[1]), p(&[1, 1]));
        // 1/(1+v^-1) = v/(1+v)
        assert_eq!(y.bar(), RatFunc::new(p(&[0, 1]), p(&[1, 1])));
    }

    #[test]
    fn series() {
        let x = RatFunc::new(p(&[1]), p(&[1, -1]));
        assert_eq!(x.series_prefix(4).unwrap().to_string(), "1+v+v^2+v^3");
        let y = RatFunc::new(p(&[1]), p(&[0, 1, 1]));
        assert_eq!(y.series_prefix(2).unwrap().to_string(), "v^-1-1+v");
        assert!(RatFunc::new(p(&[1]), p(&[2, 1])).series_prefix(3).is_err());
    }
}
