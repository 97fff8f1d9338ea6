//! Kazhdan-Lusztig polynomials of symmetric groups by the classical
//! recursion, and a comparison with multiplicity matrices of data whose
//! weights are `0, 1, ..., k-1`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::datum::Finding;
use crate::engine::RunResult;
use crate::exact::LaurentPoly;
use crate::type_a::orbits::multisegments;
use crate::type_a::TypeASpec;

/// Largest `m` accepted by [`KlTable`].
pub const MAX_KL_RANK: usize = 6;

type Perm = Vec<u8>;

fn length(w: &[u8]) -> usize {
    let mut l = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                l += 1;
            }
        }
    }
    l
}

/// Bruhat order by the tableau criterion.
pub fn bruhat_leq(x: &[u8], y: &[u8]) -> bool {
    let m = x.len();
    for i in 0..m {
        for k in 0..m as u8 {
            let cx = x[..=i].iter().filter(|&&a| a >= k).count();
            let cy = y[..=i].iter().filter(|&&a| a >= k).count();
            if cx > cy {
                return false;
            }
        }
    }
    true
}

/// `s_i w`: swaps the values `i` and `i + 1`.
fn left_mul(i: u8, w: &[u8]) -> Perm {
    w.iter()
        .map(|&a| {
            if a == i {
                i + 1
            } else if a == i + 1 {
                i
            } else {
                a
            }
        })
        .collect()
}

fn is_left_descent(i: u8, w: &[u8]) -> bool {
    let pi = w.iter().position(|&a| a == i).unwrap();
    let pj = w.iter().position(|&a| a == i + 1).unwrap();
    pj < pi
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, c) in b.iter().enumerate() {
        a[k + shift] += sign * c;
    }
}

fn trim(mut a: Vec<i64>) -> Vec<i64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Memoised `P_{x,y}` for `S_m`, coefficients in `q` ascending.
pub struct KlTable {
    m: usize,
    perms: Vec<Perm>,
    memo: HashMap<(Perm, Perm), Vec<i64>>,
}

impl KlTable {
    pub fn new(m: usize) -> Self {
        assert!(m <= MAX_KL_RANK, "S_{m} is beyond the supported range");
        let mut perms = Vec::new();
        let mut p: Perm = (0..m as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_perm(&mut p) {
                break;
            }
        }
        KlTable {
            m,
            perms,
            memo: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    fn mu(&mut self, z: &Perm, w: &Perm) -> i64 {
        let (lz, lw) = (length(z), length(w));
        if lw <= lz || (lw - lz) % 2 == 0 || !bruhat_leq(z, w) {
            return 0;
        }
        let p = self.p(z, w);
        p.get((lw - lz - 1) / 2).copied().unwrap_or(0)
    }

    /// `P_{x,y}` on 0-based one-line notation.
    pub fn p(&mut self, x: &Perm, y: &Perm) -> Vec<i64> {
        if x == y {
            return vec![1];
        }
        if !bruhat_leq(x, y) {
            return Vec::new();
        }
        if let Some(r) = self.memo.get(&(x.clone(), y.clone())) {
            return r.clone();
        }
        let s = (0..self.m as u8 - 1)
            .find(|&i| is_left_descent(i, y))
            .expect("y is not the identity");
        let v = left_mul(s, y);
        let sx = left_mul(s, x);
        let c = usize::from(is_left_descent(s, x));
        let mut out = Vec::new();
        poly_add(&mut out, &self.p(&sx, &v), 1 - c, 1);
        poly_add(&mut out, &self.p(x, &v), c, 1);
        let ly = length(y);
        let zs: Vec<Perm> = self
            .perms
            .iter()
            .filter(|z| *z != &v && is_left_descent(s, z) && bruhat_leq(x, z) && bruhat_leq(z, &v))
            .cloned()
            .collect();
        for z in zs {
            let mu = self.mu(&z, &v);
            if mu != 0 {
                let pxz = self.p(x, &z);
                poly_add(&mut out, &pxz, (ly - length(&z)) / 2, -mu);
            }
        }
        let out = trim(out);
        self.memo.insert((x.clone(), y.clone()), out.clone());
        out
    }
}

fn next_perm(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `P_{x,y}` for permutations of `1..=m` in one-line notation, as a
/// polynomial whose variable stands for `q`. Returns zero unless `x <= y`.
pub fn kl_polynomial(x: &[usize], y: &[usize]) -> LaurentPoly {
    assert_eq!(x.len(), y.len());
    let to0 = |w: &[usize]| -> Perm { w.iter().map(|&a| (a - 1) as u8).collect() };
    let mut t = KlTable::new(x.len());
    let p = t.p(&to0(x), &to0(y));
    LaurentPoly::from_terms(
        p.into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64, BigInt::from(c))),
    )
}

/// Substitutes `q = v^-2` and multiplies by `v^shift`.
pub fn to_v(p: &LaurentPoly, shift: i64) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(k, c)| (shift - 2 * k, c.clone())))
}

/// Longest element of the parabolic subgroup generated by the simple
/// transpositions joining weights that share a segment.
fn dictionary_perm(blocks: &[usize]) -> Perm {
    let mut out = Vec::new();
    let mut start = 0u8;
    for &b in blocks {
        out.extend((start..start + b as u8).rev());
        start += b as u8;
    }
    out
}

/// Compares the multiplicity matrices of a datum with weights
/// `0, 1, ..., k-1` (one factor, `|n| = 1`) against `v^(d_i - d_j)
/// P_{x_j, x_i}(v^-2)`, where a multisegment is sent to the longest element
/// of the parabolic subgroup whose blocks are its segments.
pub fn kl_cross_check(spec: &TypeASpec, run: &RunResult) -> Vec<Finding> {
    let name = &run.datum.name;
    let mut out = Vec::new();
    let k = spec.rank();
    let consecutive = spec.factors.len() == 1
        && spec.factors[0].weights().iter().copied().eq(0..k as i64)
        && spec.n.abs() == 1;
    if !consecutive || k > MAX_KL_RANK {
        out.push(Finding::new(
            name,
            "kl-scope",
            "not a datum with weights 0..k-1 and |n| = 1",
        ));
        return out;
    }
    let mut table = KlTable::new(k);
    for gr in &run.gradings {
        let sp = spec.with_n(gr.n);
        let perms: HashMap<String, Perm> = multisegments(&sp)
            .into_iter()
            .map(|ms| {
                let mut blocks: Vec<(i64, usize)> = ms.0[0]
                    .iter()
                    .map(|s| (s.lo, ((s.hi - s.lo) + 1) as usize))
                    .collect();
                blocks.sort();
                let sizes: Vec<usize> = blocks.into_iter().map(|b| b.1).collect();
                (ms.name(), dictionary_perm(&sizes))
            })
            .collect();
        for (i, zi) in gr.z.iter().enumerate() {
            for (j, zj) in gr.z.iter().enumerate() {
                let (Some(xi), Some(xj)) = (perms.get(&zi.kappa.orbit), perms.get(&zj.kappa.orbit))
                else {
                    out.push(Finding::new(
                        name,
                        "kl-dictionary",
                        format!("n={}: unknown orbit", gr.n),
                    ));
                    return out;
                };
                let p = table.p(xj, xi);
                let p = LaurentPoly::from_terms(
                    p.into_iter()
                        .enumerate()
                        .map(|(k, c)| (k as i64, BigInt::from(c))),
                );
                let expected = to_v(&p, zi.d - zj.d);
                if gr.c_matrix[i][j] != expected {
                    out.push(Finding::new(
                        name,
                        "kl-cross-check",
                        format!(
                            "n={}: entry ({}, {}) is {} but the dictionary gives {expected}",
                            gr.n, zi.kappa, zj.kappa, gr.c_matrix[i][j]
                        ),
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        assert!(kl_polynomial(&[2, 1, 3], &[2, 1, 3]).is_one());
        assert!(kl_polynomial(&[2, 1, 3], &[1, 3, 2]).is_zero());
        assert!(kl_polynomial(&[1, 2, 3], &[3, 2, 1]).is_one());
    }

    #[test]
    fn first_singular_schubert_variety() {
        let one_plus_q: LaurentPoly = "1+v".parse().unwrap();
        assert_eq!(kl_polynomial(&[1, 2, 3, 4], &[3, 4, 1, 2]), one_plus_q);
        assert_eq!(kl_polynomial(&[1, 3, 2, 4], &[3, 4, 1, 2]), one_plus_q);
        assert_eq!(kl_polynomial(&[1, 2, 3, 4], &[4, 2, 3, 1]), one_plus_q);
        assert_eq!(kl_polynomial(&[2, 1, 4, 3], &[4, 2, 3, 1]), one_plus_q);
        assert!(kl_polynomial(&[1, 2, 3, 4], &[4, 3, 2, 1]).is_one());
    }

    #[test]
    fn degree_bound_in_s4() {
        let mut t = KlTable::new(4);
        let perms = t.perms.clone();
        for x in &perms {
            for y in &perms {
                if x != y && bruhat_leq(x, y) {
                    let p = t.p(x, y);
                    assert_eq!(p[0], 1);
                    assert!(2 * (p.len() - 1) < length(y) - length(x));
                }
            }
        }
    }
}
