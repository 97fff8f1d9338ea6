//! Orbit dimensions as the rank of `g -> [g, x]` from `g_0` to `g_n`,
//! computed over the rationals at the standard representative.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::counts::canonical_rep;
use crate::type_a::{Multisegment, TypeASpec};

fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for r in rank + 1..rows.len() {
            if !rows[r][c].is_zero() {
                let f = &rows[r][c] / &piv;
                for k in c..cols {
                    let t = &f * &rows[rank][k];
                    rows[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim G_0 x`, independent of the rank-function formula.
pub fn orbit_dim_oracle(spec: &TypeASpec, ms: &Multisegment) -> i64 {
    // the representative has 0/1 entries, so any modulus is fine here
    let rep = canonical_rep(spec, ms, 2);
    let mut total = 0;
    for (wts, x) in &rep.factors {
        let r = wts.len();
        let mut rows = Vec::new();
        for a in 0..r {
            for b in 0..r {
                if wts[a] != wts[b] {
                    continue;
                }
                // [E_ab, x] = E_ab x - x E_ab
                let mut img = vec![BigRational::zero(); r * r];
                for j in 0..r {
                    let xb = x.get(b, j);
                    if xb != 0 {
                        img[a * r + j] += BigRational::from_integer(BigInt::from(xb));
                    }
                }
                for i in 0..r {
                    let xa = x.get(i, a);
                    if xa != 0 {
                        img[i * r + b] -= BigRational::from_integer(BigInt::from(xa));
                    }
                }
                rows.push(img);
            }
        }
        total += rank_q(rows) as i64;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::type_a::orbits::{multisegments, orbit_dim};

    #[test]
    fn agrees_on_small_cases() {
        for s in [
            "glq:0,1;n=1",
            "glq:0,0,1,1;n=1",
            "glq:0,1,2;n=-1",
            "glq:0,0,2,4;n=2",
            "glq:0,1|0,0,1;n=1",
        ] {
            let spec: TypeASpec = s.parse().unwrap();
            for ms in multisegments(&spec) {
                assert_eq!(
                    orbit_dim_oracle(&spec, &ms),
                    orbit_dim(&spec, &ms),
                    "{s} {}",
                    ms.name()
                );
            }
        }
    }
}
