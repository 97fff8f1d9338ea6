use std::collections::{BTreeMap, HashMap};

use super::{words, GlFactor, TypeASpec, Word};
use crate::datum::FlagOrder;

/// The chain of weights `lo, lo + |n|, ..., hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub lo: i64,
    pub hi: i64,
}

impl Segment {
    pub fn weights(&self, step: i64) -> impl Iterator<Item = i64> {
        let lo = self.lo;
        (0..=(self.hi - self.lo) / step).map(move |k| lo + k * step)
    }

    /// Twice the midpoint.
    pub fn center2(&self) -> i64 {
        self.lo + self.hi
    }
}

/// An orbit of `G_0` on `g_n`: one multisegment per factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment(pub Vec<Vec<Segment>>);

impl Multisegment {
    pub fn name(&self) -> String {
        self.0
            .iter()
            .map(|segs| {
                segs.iter()
                    .map(|s| {
                        if s.lo == s.hi {
                            format!("[{}]", s.lo)
                        } else {
                            format!("[{}:{}]", s.lo, s.hi)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Lines `(weight, 2 * center of its segment)` per factor.
    pub fn lines(&self, step: i64) -> Vec<Vec<(i64, i64)>> {
        self.0
            .iter()
            .map(|segs| {
                segs.iter()
                    .flat_map(|s| s.weights(step).map(move |w| (w, s.center2())))
                    .collect()
            })
            .collect()
    }

    /// Number of segments containing `a, a + step, ..., b`, for every pair
    /// of weights of a factor lying on a common chain.
    pub fn rank_function(&self, spec: &TypeASpec) -> Vec<BTreeMap<(i64, i64), usize>> {
        let step = spec.n.abs();
        spec.factors
            .iter()
            .zip(&self.0)
            .map(|(f, segs)| {
                let ws: Vec<i64> = f.multiplicities().keys().copied().collect();
                let mut m = BTreeMap::new();
                for &a in &ws {
                    for &b in &ws {
                        if b >= a && (b - a) % step == 0 {
                            let r = segs
                                .iter()
                                .filter(|s| s.lo <= a && s.hi >= b && (a - s.lo) % step == 0)
                                .count();
                            m.insert((a, b), r);
                        }
                    }
                }
                m
            })
            .collect()
    }
}

fn factor_multisegments(f: &GlFactor, step: i64) -> Vec<Vec<Segment>> {
    fn rec(
        rem: &mut BTreeMap<i64, usize>,
        step: i64,
        cur: &mut Vec<Segment>,
        out: &mut Vec<Vec<Segment>>,
    ) {
        let Some((&lo, _)) = rem.iter().find(|(_, &m)| m > 0) else {
            let mut s = cur.clone();
            s.sort();
            out.push(s);
            return;
        };
        // Segments covering `lo` start there; choose them with weakly
        // decreasing end to avoid listing a multiset twice.
        let max_hi = cur.last().filter(|s| s.lo == lo).map_or(i64::MAX, |s| s.hi);
        let mut hi = lo;
        let mut ends = Vec::new();
        while rem.get(&hi).copied().unwrap_or(0) > 0 && hi <= max_hi {
            ends.push(hi);
            hi += step;
        }
        for &hi in ends.iter().rev() {
            let seg = Segment { lo, hi };
            for w in seg.weights(step) {
                *rem.get_mut(&w).unwrap() -= 1;
            }
            cur.push(seg);
            rec(rem, step, cur, out);
            cur.pop();
            for w in seg.weights(step) {
                *rem.get_mut(&w).unwrap() += 1;
            }
        }
    }
    let mut rem = f.multiplicities();
    let mut out = Vec::new();
    rec(&mut rem, step, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All orbits of `G_0` on `g_n`, in a fixed order.
pub fn multisegments(spec: &TypeASpec) -> Vec<Multisegment> {
    let step = spec.n.abs();
    let mut out: Vec<Vec<Vec<Segment>>> = vec![Vec::new()];
    for f in &spec.factors {
        let opts = factor_multisegments(f, step);
        out = out
            .into_iter()
            .flat_map(|ms| {
                opts.iter().map(move |o| {
                    let mut ms = ms.clone();
                    ms.push(o.clone());
                    ms
                })
            })
            .collect();
    }
    out.into_iter().map(Multisegment).collect()
}

/// `a` lies in the closure of `b`.
pub fn closure_leq(spec: &TypeASpec, a: &Multisegment, b: &Multisegment) -> bool {
    let ra = a.rank_function(spec);
    let rb = b.rank_function(spec);
    ra.iter()
        .zip(&rb)
        .all(|(x, y)| x.iter().all(|(k, v)| *v <= y[k]))
}

/// `dim L_0 G - dim L_0 P + dim L_n P` for the `n`-good parabolic attached
/// to the orbit, which is the orbit dimension. `E_ij` (line `j` to line `i`)
/// lies in `LP` iff `(c_i - c_j) / n <= 0`.
pub fn orbit_dim(spec: &TypeASpec, ms: &Multisegment) -> i64 {
    let n = spec.n;
    let mut d = 0i64;
    for lines in ms.lines(n.abs()) {
        for &(wi, ci) in &lines {
            for &(wj, cj) in &lines {
                let in_p = (ci - cj) * n.signum() <= 0;
                if wi == wj {
                    d += 1;
                    if in_p {
                        d -= 1;
                    }
                } else if wi - wj == n && in_p {
                    d += 1;
                }
            }
        }
    }
    d
}

/// Levi data of the parabolic attached to an orbit.
#[derive(Clone, Debug)]
pub struct ChildData {
    pub spec: TypeASpec,
    /// For each child factor, its parent factor and the weight shift.
    pub blocks: Vec<(usize, i64)>,
    /// True iff the parabolic is all of `G`.
    pub is_whole: bool,
}

pub fn child_data(spec: &TypeASpec, ms: &Multisegment, order: FlagOrder) -> ChildData {
    let n = spec.n;
    let mut factors = Vec::new();
    let mut blocks = Vec::new();
    let mut is_whole = true;
    for (f, lines) in ms.lines(n.abs()).into_iter().enumerate() {
        let mut by_c: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (w, c) in lines {
            by_c.entry(c).or_default().push(w);
        }
        if by_c.len() > 1 {
            is_whole = false;
        }
        let mut keys: Vec<i64> = by_c.keys().copied().collect();
        keys.sort_by_key(|c| c * n.signum());
        if order == FlagOrder::Descending {
            keys.reverse();
        }
        for c in keys {
            let (g, shift) = GlFactor::new(by_c[&c].clone()).normalised();
            factors.push(g);
            blocks.push((f, shift));
        }
    }
    ChildData {
        spec: TypeASpec { factors, n },
        blocks,
        is_whole,
    }
}

/// Induction map on basis indices along the child Levi: the parent word of
/// a factor is the concatenation of its child blocks in block order.
pub fn induction_map(spec: &TypeASpec, parent: &[Word], child: &ChildData) -> Vec<(usize, usize)> {
    let index: HashMap<&Word, usize> = parent.iter().enumerate().map(|(i, w)| (w, i)).collect();
    words(&child.spec)
        .iter()
        .enumerate()
        .map(|(ci, cw)| {
            let mut pw: Word = vec![Vec::new(); spec.factors.len()];
            for (j, part) in cw.iter().enumerate() {
                let (f, shift) = child.blocks[j];
                pw[f].extend(part.iter().map(|x| x + shift));
            }
            (ci, index[&pw])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits_of_001() {
        let spec = TypeASpec::new(vec![vec![0, 0, 1]], 1);
        let ms = multisegments(&spec);
        let names: Vec<String> = ms.iter().map(|m| m.name()).collect();
        assert_eq!(names, vec!["[0]+[0]+[1]", "[0]+[0:1]"]);
        let dims: Vec<i64> = ms.iter().map(|m| orbit_dim(&spec, m)).collect();
        assert_eq!(dims, vec![0, 2]);
        assert!(closure_leq(&spec, &ms[0], &ms[1]));
        assert!(!closure_leq(&spec, &ms[1], &ms[0]));
    }

    #[test]
    fn multisegment_count_matches_partitions() {
        // weights 0,0,1,1 with n=1: rank of the map 0 -> 1 is 0, 1 or 2
        let spec = TypeASpec::new(vec![vec![0, 0, 1, 1]], 1);
        assert_eq!(multisegments(&spec).len(), 3);
        // one weight space: single orbit
        let spec = TypeASpec::new(vec![vec![0, 0, 0]], 2);
        assert_eq!(multisegments(&spec).len(), 1);
        // chain 0,1,2 each multiplicity 1: 4 orbits
        let spec = TypeASpec::new(vec![vec![0, 1, 2]], 1);
        assert_eq!(multisegments(&spec).len(), 4);
    }

    #[test]
    fn zero_orbit_induces_from_ascending_word() {
        let spec = TypeASpec::new(vec![vec![0, 1]], 1);
        let parent = words(&spec);
        let ms = &multisegments(&spec)[0];
        let c = child_data(&spec, ms, FlagOrder::Ascending);
        assert_eq!(induction_map(&spec, &parent, &c), vec![(0, 0)]);
        let c = child_data(&spec.with_n(-1), ms, FlagOrder::Ascending);
        assert_eq!(induction_map(&spec, &parent, &c), vec![(0, 1)]);
    }
}
