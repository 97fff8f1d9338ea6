use std::collections::{BTreeMap, HashMap};

use super::TypeASpec;
use crate::datum::PairingOrbit;

/// A basis element: one arrangement of the weights for each factor.
pub type Word = Vec<Vec<i64>>;

/// A line of `V`, named by its weight and its rank among the lines of that
/// weight.
pub type Line = (i64, usize);

/// Rearranges `xs` into the next permutation in lexicographic order;
/// returns false after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Distinct arrangements of a multiset, in lexicographic order.
pub fn arrangements(weights: &[i64]) -> Vec<Vec<i64>> {
    let mut w = weights.to_vec();
    w.sort_unstable();
    let mut out = vec![w.clone()];
    while next_permutation(&mut w) {
        out.push(w.clone());
    }
    out
}

/// All basis words, lexicographic with the first factor varying slowest.
pub fn words(spec: &TypeASpec) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    for f in &spec.factors {
        let arr = arrangements(f.weights());
        out = out
            .into_iter()
            .flat_map(|w| {
                arr.iter().map(move |a| {
                    let mut w = w.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
    }
    out
}

pub fn word_label(w: &Word) -> String {
    w.iter()
        .map(|f| {
            f.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(".")
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Lines of a word, the k-th occurrence of each weight getting rank k.
pub fn canonical_lines(word: &[i64]) -> Vec<Line> {
    let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
    word.iter()
        .map(|&w| {
            let k = seen.entry(w).or_insert(0);
            *k += 1;
            (w, *k - 1)
        })
        .collect()
}

/// The statistic `tau` of the pair of Borels fixing the flags `x` and `y`
/// (both orderings of the same lines): pairs of lines whose weights differ
/// by `n` in absolute value that the flags order oppositely count `+1`,
/// pairs of equal weight ordered oppositely count `-2`.
pub fn tau_of_pair(x: &[Line], y: &[Line], n: i64) -> i64 {
    let pos: HashMap<Line, usize> = y.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let py: Vec<usize> = x.iter().map(|l| pos[l]).collect();
    let mut tau = 0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if py[i] < py[j] {
                continue;
            }
            let d = (x[i].0 - x[j].0).abs();
            if d == n.abs() {
                tau += 1;
            } else if d == 0 {
                tau -= 2;
            }
        }
    }
    tau
}

/// Every relabelling of the lines of `word` that keeps each weight's
/// positions: the orbit representatives over a fixed first flag.
fn relabellings(word: &[i64]) -> Vec<Vec<Line>> {
    let mut positions: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &w) in word.iter().enumerate() {
        positions.entry(w).or_default().push(i);
    }
    let mut out: Vec<Vec<Line>> = vec![word.iter().map(|&w| (w, 0)).collect()];
    for (&w, pos) in &positions {
        let mut perm: Vec<usize> = (0..pos.len()).collect();
        let mut perms = vec![perm.clone()];
        while next_permutation(&mut perm) {
            perms.push(perm.clone());
        }
        out = out
            .into_iter()
            .flat_map(|base| {
                perms.iter().map(move |p| {
                    let mut y = base.clone();
                    for (k, &i) in pos.iter().enumerate() {
                        y[i] = (w, p[k]);
                    }
                    y
                })
            })
            .collect();
    }
    out
}

/// The orbits of the Weyl group of `L_0 G` on pairs of Borels, as
/// `(s, s', tau)` triples.
pub fn pairing_orbits(spec: &TypeASpec, basis: &[Word]) -> Vec<PairingOrbit> {
    let mut cache: HashMap<(usize, Vec<i64>, Vec<i64>), Vec<i64>> = HashMap::new();
    let mut factor_taus = |f: usize, a: &Vec<i64>, b: &Vec<i64>| -> Vec<i64> {
        cache
            .entry((f, a.clone(), b.clone()))
            .or_insert_with(|| {
                let x = canonical_lines(a);
                relabellings(b)
                    .iter()
                    .map(|y| tau_of_pair(&x, y, spec.n))
                    .collect()
            })
            .clone()
    };
    let mut out = Vec::new();
    for (s, ws) in basis.iter().enumerate() {
        for (t, wt) in basis.iter().enumerate() {
            let mut taus = vec![0i64];
            for f in 0..spec.factors.len() {
                let ft = factor_taus(f, &ws[f], &wt[f]);
                taus = taus
                    .iter()
                    .flat_map(|a| ft.iter().map(move |b| a + b))
                    .collect();
            }
            taus.sort_unstable();
            out.extend(
                taus.into_iter()
                    .map(|tau| PairingOrbit { s, s_prime: t, tau }),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangements_of_multiset() {
        assert_eq!(
            arrangements(&[1, 0, 0]),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        let spec = TypeASpec::new(vec![vec![0, 1], vec![0, 0]], 1);
        assert_eq!(words(&spec).len(), 2);
    }

    #[test]
    fn tau_on_rank_one() {
        let spec = TypeASpec::new(vec![vec![0, 1]], 1);
        let b = words(&spec);
        let orbits = pairing_orbits(&spec, &b);
        let taus: Vec<(usize, usize, i64)> =
            orbits.iter().map(|o| (o.s, o.s_prime, o.tau)).collect();
        assert_eq!(taus, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
    }

    #[test]
    fn tau_equal_weights() {
        let spec = TypeASpec::new(vec![vec![0, 0]], 1);
        let b = words(&spec);
        let taus: Vec<i64> = pairing_orbits(&spec, &b).iter().map(|o| o.tau).collect();
        assert_eq!(taus, vec![-2, 0]);
    }
}
