use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `v` with integer coefficients, stored ascending with
/// no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(deg: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True iff the polynomial is `v^k` for some `k`.
    pub fn is_monic_monomial(&self) -> bool {
        match self.low_order() {
            Some(k) => k + 1 == self.coeffs.len() && self.coeffs[k].is_one(),
            None => false,
        }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut p = self.div_scalar(&self.content());
        if p.lead().is_some_and(|l| l.is_negative()) {
            p = -p;
        }
        p
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `v^k`; the low `k` coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `v^deg * p(v^-1)`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::from_coeffs(c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self mod d`.
    pub fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let ld = d.lead().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.lead().unwrap().clone();
            r = r.scale(&ld) - d.shift(dr - dd).scale(&lr);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (gcd over `Q[v]`
    /// normalised to `Z[v]`). `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.primitive_part();
        let mut b = b.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact quotient in `Z[v]`, or `None` when `d` does not divide `self`
    /// there.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        let ld = d.lead().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(Poly::zero());
        };
        if dr < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); dr - dd + 1];
        while let Some(deg) = r.degree() {
            if deg < dd {
                return None;
            }
            let (qc, rem) = r.lead().unwrap().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &d.shift(deg - dd).scale(&qc);
            q[deg - dd] = qc;
        }
        Some(Poly::from_coeffs(q))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k);
                    let b = rhs.coeffs.get(k);
                    match (a, b) {
                        (Some(a), Some(b)) => a + b,
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => BigInt::zero(),
                    }
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::LaurentPoly::from_poly(self, 0).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_factor() {
        // (1+v)(1-v) and (1+v)(2+v)
        let a = Poly::from_i64(&[1, 0, -1]);
        let b = Poly::from_i64(&[2, 3, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_i64(&[1, 1]));
    }

    #[test]
    fn gcd_is_primitive() {
        let a = Poly::from_i64(&[2, 2]);
        let b = Poly::from_i64(&[4, 4, 0]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_i64(&[1, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &a), Poly::from_i64(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = Poly::from_i64(&[2, 3, 1]);
        assert_eq!(
            a.div_exact(&Poly::from_i64(&[1, 1])),
            Some(Poly::from_i64(&[2, 1]))
        );
        assert_eq!(a.div_exact(&Poly::from_i64(&[3, 1])), None);
        assert_eq!(
            Poly::from_i64(&[1, 0, 1]).div_exact(&Poly::from_i64(&[0, 2])),
            None
        );
    }
}
