//! The Sp4 fixture recomputed from root data of `C_2`.

mod common;

use gic::datum::Conventions;
use gic::fixtures::example_datum;

use common::{datum_taus, poly, sp4_taus_from_roots};

#[test]
fn pairing_matches_root_data() {
    let d = example_datum("sp4", Conventions::default()).unwrap();
    assert_eq!(datum_taus(&d), sp4_taus_from_roots());
}

#[test]
fn sigma_is_minus_one() {
    // w0 = -1 sends the chamber with k positive degree-2 roots to one with 3 - k
    let d = example_datum("sp4", Conventions::default()).unwrap();
    let label = |i: usize| d.basis[i].label[1..].parse::<usize>().unwrap();
    for (i, &j) in d.sigma.iter().enumerate() {
        assert_eq!(label(j), 3 - label(i));
    }
}

#[test]
fn primitive_class_constants() {
    let d = example_datum("sp4", Conventions::default()).unwrap();
    let [c] = d.primitive_classes.as_slice() else {
        panic!("expected a single class")
    };
    // Levi GL2: Poincare polynomial of S2, and dim g_2 - dim g_0 + rank
    assert_eq!(c.theta_ratio, poly("1+v^2"));
    assert_eq!(c.c_f, 3 - 4 + 2);
    assert_eq!(c.members.len(), 4);
}

/// GL2 acting on binary quadratic forms over F_p, counted by rank.
fn quadratic_forms_by_rank(p: i64) -> [i64; 3] {
    let mut out = [0; 3];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let det = (a * c - b * b).rem_euclid(p);
                let r = if det != 0 {
                    2
                } else if a == 0 && b == 0 && c == 0 {
                    0
                } else {
                    1
                };
                out[r] += 1;
            }
        }
    }
    out
}

#[test]
fn orbit_dims_match_point_counts() {
    let d = example_datum("sp4", Conventions::default()).unwrap();
    for p in [3, 5, 7] {
        let [r0, r1, r2] = quadratic_forms_by_rank(p);
        assert_eq!((r0, r1, r2), (1, p * p - 1, p * p * p - p * p));
    }
    for g in &d.gradings {
        let dims: Vec<(String, i64)> = g.orbits.iter().map(|o| (o.name.clone(), o.dim)).collect();
        assert_eq!(dims, [("O0".into(), 0), ("O2".into(), 2), ("O3".into(), 3)]);
    }
}
