use proptest::prelude::*;

use gic::datum::Conventions;
use gic::engine::{check_run_tree, Engine};
use gic::exact::{solve_linear, LaurentPoly, RFMatrix, RatFunc};
use gic::oracles::{bruhat_leq, canonical_rep, conjugated_rep, flag_point_count, kl_polynomial};
use gic::type_a::orbits::multisegments;
use gic::type_a::{build_datum, words, GlFactor, TypeASpec};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-3i64..=3, 0..5)).prop_map(|(lo, cs)| {
        LaurentPoly::from_i64_terms(
            &cs.iter()
                .enumerate()
                .map(|(i, &c)| (lo + i as i64, c))
                .collect::<Vec<_>>(),
        )
    })
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), nonzero_laurent()).prop_map(|(a, b)| {
        RatFunc::from_laurent(&a)
            .checked_div(&RatFunc::from_laurent(&b))
            .unwrap()
    })
}

fn small_spec() -> impl Strategy<Value = TypeASpec> {
    let factor = prop::collection::vec(0i64..3, 1..=3);
    (
        prop::collection::vec(factor, 1..=2),
        prop::sample::select(vec![1i64, 2, -1]),
    )
        .prop_filter("rank at most 4", |(fs, _)| {
            fs.iter().map(Vec::len).sum::<usize>() <= 4
        })
        .prop_map(|(fs, n)| TypeASpec::new(fs, n))
}

fn perm(m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=m).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert!((&a + &a.bar()).is_bar_invariant());
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ratfunc_field_laws(x in ratfunc(), y in ratfunc()) {
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        }
        prop_assert_eq!(x.bar().bar(), x.clone());
        prop_assert_eq!((&x * &y).bar(), &x.bar() * &y.bar());
    }

    #[test]
    fn ratfunc_of_laurent_round_trips(a in laurent()) {
        prop_assert_eq!(RatFunc::from_laurent(&a).to_laurent(), Some(a));
    }

    #[test]
    fn solve_linear_solves(entries in prop::collection::vec(ratfunc(), 9), rhs in prop::collection::vec(ratfunc(), 3)) {
        let a = RFMatrix::from_fn(3, 3, |i, j| entries[3 * i + j].clone());
        let b = RFMatrix::from_fn(3, 1, |i, _| rhs[i].clone());
        if let Ok(x) = solve_linear(&a, &b) {
            prop_assert_eq!(a.mul(&x), b);
        }
    }

    #[test]
    fn kl_polynomials_are_bounded(x in perm(4), y in perm(4)) {
        let xs: Vec<u8> = x.iter().map(|&i| (i - 1) as u8).collect();
        let ys: Vec<u8> = y.iter().map(|&i| (i - 1) as u8).collect();
        let p = kl_polynomial(&x, &y);
        if !bruhat_leq(&xs, &ys) {
            prop_assert!(p.is_zero());
        } else {
            let inv = |w: &[usize]| (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count() as i64;
            prop_assert_eq!(p.coeff(0), 1.into());
            prop_assert!(p.has_nonnegative_coeffs());
            if x != y {
                prop_assert!(2 * p.max_exp().unwrap() < inv(&y) - inv(&x));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_invariants_hold(spec in small_spec()) {
        let conv = Conventions::default();
        let d = build_datum(&spec, conv).unwrap();
        let run = Engine::new(conv).run(&d).unwrap();
        let findings = check_run_tree(&run);
        prop_assert!(findings.is_empty(), "{}: {:?}", spec, findings.first());
    }

    #[test]
    fn point_counts_are_conjugation_invariant(spec in small_spec(), seed in any::<u64>()) {
        let basis = words(&spec);
        for ms in multisegments(&spec) {
            let rep = canonical_rep(&spec, &ms, 2);
            let other = conjugated_rep(&rep, seed);
            for w in &basis {
                prop_assert_eq!(flag_point_count(&rep, w).unwrap(), flag_point_count(&other, w).unwrap());
            }
        }
    }
}

#[test]
fn single_factor_specs_normalise() {
    let (f, shift) = GlFactor::new(vec![3, 4, 4]).normalised();
    assert_eq!(f.weights(), [0, 1, 1]);
    assert_eq!(shift, 3);
}
