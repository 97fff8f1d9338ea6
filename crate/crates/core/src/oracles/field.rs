//! Linear algebra over a prime field `F_p` and enumeration of complete
//! flags.

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FpMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul(&self, rhs: &FpMat, p: u64) -> FpMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = FpMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = (out.get(i, j) + a * rhs.get(k, j)) % p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[u64], p: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| (acc + self.get(i, j) * x[j]) % p))
            .collect()
    }

    pub fn rank(&self, p: u64) -> usize {
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut e = Echelon::new(self.cols, p);
        rows.iter().filter(|r| e.insert(r)).count()
    }

    /// Inverse, or `None` if singular.
    pub fn inverse(&self, p: u64) -> Option<FpMat> {
        let n = self.rows;
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = self.data[i * n..(i + 1) * n].to_vec();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            let inv = inv_mod(a[col][col], p);
            for x in a[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for k in 0..2 * n {
                        a[r][k] = (a[r][k] + p * p - f * a[col][k] % p) % p;
                    }
                }
            }
        }
        let mut out = FpMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i][n + j]);
            }
        }
        Some(out)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Reduced row echelon basis of a subspace, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(dim: usize, p: u64) -> Self {
        Echelon {
            dim,
            p,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `x` reduced modulo the subspace.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut y = x.to_vec();
        for (piv, r) in &self.rows {
            let f = y[*piv];
            if f != 0 {
                for k in 0..self.dim {
                    y[k] = (y[k] + p * p - f * r[k] % p) % p;
                }
            }
        }
        y
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }

    /// Adds `x`; returns false if it was already in the span.
    pub fn insert(&mut self, x: &[u64]) -> bool {
        let p = self.p;
        let mut y = self.reduce(x);
        let Some(piv) = y.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(y[piv], p);
        for c in y.iter_mut() {
            *c = *c * inv % p;
        }
        for (_, r) in self.rows.iter_mut() {
            let f = r[piv];
            if f != 0 {
                for k in 0..self.dim {
                    r[k] = (r[k] + p * p - f * y[k] % p) % p;
                }
            }
        }
        self.rows.push((piv, y));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }
}

/// A complete flag of `F_p^m`, stored as the echelon forms of its members
/// `F_1 ⊂ ... ⊂ F_m` together with an adapted basis.
#[derive(Clone, Debug)]
pub struct Flag {
    pub basis: Vec<Vec<u64>>,
    pub steps: Vec<Echelon>,
}

/// All complete flags of `F_p^m`; there are `prod_{i=1}^m (p^i-1)/(p-1)`.
pub fn complete_flags(m: usize, p: u64) -> Vec<Flag> {
    fn rec(
        m: usize,
        p: u64,
        cur: &mut Vec<Vec<u64>>,
        steps: &mut Vec<Echelon>,
        out: &mut Vec<Flag>,
    ) {
        let k = cur.len();
        if k == m {
            out.push(Flag {
                basis: cur.clone(),
                steps: steps.clone(),
            });
            return;
        }
        let span = steps.last().cloned().unwrap_or_else(|| Echelon::new(m, p));
        let pivots = span.pivots();
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        // vectors supported on free columns with first nonzero entry 1
        let total = p.pow(free.len() as u32);
        for code in 1..total {
            let mut w = vec![0u64; m];
            let mut c = code;
            for &col in &free {
                w[col] = c % p;
                c /= p;
            }
            let lead = free.iter().find(|&&col| w[col] != 0).unwrap();
            if w[*lead] != 1 {
                continue;
            }
            let mut next = span.clone();
            next.insert(&w);
            cur.push(w);
            steps.push(next);
            rec(m, p, cur, steps, out);
            steps.pop();
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, p, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_counts() {
        assert_eq!(complete_flags(1, 2).len(), 1);
        assert_eq!(complete_flags(2, 3).len(), 4);
        assert_eq!(complete_flags(3, 2).len(), 21);
        assert_eq!(complete_flags(4, 3).len(), 1 * 4 * 13 * 40);
    }

    #[test]
    fn inverse_and_rank() {
        let mut m = FpMat::identity(3);
        m.set(0, 2, 2);
        m.set(1, 0, 1);
        let inv = m.inverse(3).unwrap();
        assert_eq!(m.mul(&inv, 3), FpMat::identity(3));
        let mut s = FpMat::zeros(2, 2);
        s.set(0, 0, 1);
        s.set(1, 0, 1);
        assert_eq!(s.rank(5), 1);
        assert!(s.inverse(5).is_none());
    }
}
