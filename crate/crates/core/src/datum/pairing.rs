use num_bigint::BigInt;
use num_traits::One;

use super::{GradedDatum, KVector, SignConvention};
use crate::exact::{LaurentPoly, RFMatrix, RatFunc};

/// The symmetric pairing on `K_G`, materialised as its Gram matrix.
#[derive(Clone, Debug)]
pub struct Pairing {
    gram: RFMatrix,
    laurent: Vec<Vec<LaurentPoly>>,
}

/// `Gram(s, s') = theta_F * sum over orbits over (s, s') of eps^tau`.
pub fn gram_laurent(datum: &GradedDatum, sign: SignConvention) -> Vec<Vec<LaurentPoly>> {
    let n = datum.dim();
    let class_of = datum.class_of();
    let mut sums = vec![vec![LaurentPoly::zero(); n]; n];
    for o in &datum.pairing {
        let mut c = BigInt::one();
        if sign == SignConvention::PrintedMinusV && o.tau.rem_euclid(2) == 1 {
            c = -c;
        }
        sums[o.s][o.s_prime] = &sums[o.s][o.s_prime] + &LaurentPoly::monomial(o.tau, c);
    }
    for (s, row) in sums.iter_mut().enumerate() {
        let theta = datum
            .class(class_of[s])
            .map(|c| c.theta_ratio.clone())
            .unwrap_or_else(LaurentPoly::one);
        for x in row.iter_mut() {
            *x = &*x * &theta;
        }
    }
    sums
}

impl Pairing {
    pub fn new(datum: &GradedDatum, sign: SignConvention) -> Self {
        let laurent = gram_laurent(datum, sign);
        let n = laurent.len();
        let gram = RFMatrix::from_fn(n, n, |i, j| RatFunc::from_laurent(&laurent[i][j]));
        Pairing { gram, laurent }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RFMatrix {
        &self.gram
    }

    pub fn gram_laurent(&self) -> &[Vec<LaurentPoly>] {
        &self.laurent
    }

    /// `((x : I_t))_t`.
    pub fn row(&self, x: &KVector) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.dim()];
        for (s, c) in x.iter() {
            for (t, o) in out.iter_mut().enumerate() {
                let g = self.gram.get(s, t);
                if !g.is_zero() {
                    *o = &*o + &(c * g);
                }
            }
        }
        out
    }

    pub fn pair(&self, x: &KVector, y: &KVector) -> RatFunc {
        let r = self.row(x);
        let mut acc = RatFunc::zero();
        for (t, c) in y.iter() {
            if !r[t].is_zero() {
                acc = &acc + &(&r[t] * c);
            }
        }
        acc
    }

    /// Gram matrix of a list of vectors.
    pub fn gram_of(&self, xs: &[KVector]) -> RFMatrix {
        let rows: Vec<Vec<RatFunc>> = xs.iter().map(|x| self.row(x)).collect();
        RFMatrix::from_fn(xs.len(), xs.len(), |i, j| {
            let mut acc = RatFunc::zero();
            for (t, c) in xs[j].iter() {
                if !rows[i][t].is_zero() {
                    acc = &acc + &(&rows[i][t] * c);
                }
            }
            acc
        })
    }

    /// True iff `x` pairs to zero with every basis element.
    pub fn in_radical(&self, x: &KVector) -> bool {
        self.row(x).iter().all(RatFunc::is_zero)
    }
}
