mod common;

use common::{factors, group, pred, rng, KINDS};
use proptest::prelude::*;
use semistar::groups::{compare, GroupElement, HullPoint, OrderedGroup, RankOne};
use semistar::rational::Rational;
use semistar::sample::{hull_point, val_ideal, SampleBounds};
use semistar::valuation::{ValIdeal, ValuationDomain};
use semistar_oracle::grid::{self, GridOracle, Q};
use std::cmp::Ordering;

const PAIRS: usize = 500;

fn bounds() -> SampleBounds {
    SampleBounds { level: 2, value_box: 2, ..SampleBounds::default() }
}

/// Test level 2 contains every sampled cut point; the box of 6 holds sums
/// and differences of points from `[−2, 2]`.
fn oracle(g: &OrderedGroup) -> GridOracle {
    GridOracle::new(&factors(g), 2, 6)
}

fn describe(i: &ValIdeal) -> String {
    i.to_string()
}

fn sweep(kind: &str, seed: u64) {
    let g = group(kind);
    let v = ValuationDomain::new(g.clone());
    let o = oracle(&g);
    let b = bounds();
    let mut r = rng(seed);
    for n in 0..PAIRS {
        let i = val_ideal(&mut r, &v, &b);
        let j = val_ideal(&mut r, &v, &b);

        let prod = v.multiply(&i, &j).unwrap();
        let expect = o.product(&pred(&i), Box::new(pred(&j)));
        let bad = o.disagreements(&pred(&prod), &expect);
        assert!(bad.is_empty(), "{kind} pair {n}: {} · {} = {}, differs at {:?}", describe(&i), describe(&j), prod, bad[0]);

        let col = v.colon(&i, &j).unwrap();
        let expect = o.colon(Box::new(pred(&i)), &pred(&j));
        let bad = o.disagreements(&pred(&col), &expect);
        assert!(bad.is_empty(), "{kind} pair {n}: ({} : {}) = {}, differs at {:?}", describe(&i), describe(&j), col, bad[0]);

        let cl = v.v_closure(&i).unwrap();
        let expect = o.v_closure(&pred(&i));
        let bad = o.disagreements(&pred(&cl), &expect);
        assert!(bad.is_empty(), "{kind} ideal {n}: v({}) = {}, differs at {:?}", describe(&i), cl, bad[0]);
    }
}

#[test]
fn integers_agree_with_grid() {
    sweep(KINDS[0], 11);
}

#[test]
fn rationals_agree_with_grid() {
    sweep(KINDS[1], 12);
}

#[test]
fn dyadics_agree_with_grid() {
    sweep(KINDS[2], 13);
}

#[test]
fn integers_over_dyadics_agree_with_grid() {
    sweep(KINDS[3], 14);
}

#[test]
fn rationals_over_integers_agree_with_grid() {
    sweep(KINDS[4], 15);
}

#[test]
fn canonical_form_keeps_the_upper_set() {
    let b = bounds();
    for (s, kind) in KINDS.iter().enumerate() {
        let g = group(kind);
        let v = ValuationDomain::new(g.clone());
        let o = oracle(&g);
        let mut r = rng(100 + s as u64);
        for _ in 0..PAIRS {
            let p = hull_point(&mut r, &g, &b);
            let open = rand::Rng::gen_bool(&mut r, 0.5);
            let depth = rand::Rng::gen_range(&mut r, 1..=g.rank());
            let i = v.ideal_with_depth(p.clone(), open, depth).unwrap();
            let raw = grid::cut_set(p.coords().to_vec(), open, depth);
            assert!(o.disagreements(&pred(&i), &raw).is_empty(), "{kind}: {p} open={open} depth={depth} became {i}");
            let again = v.ideal_with_depth(i.cut().point().clone(), i.cut().is_open(), i.cut().depth()).unwrap();
            assert_eq!(again, i, "canonical form is idempotent");
        }
    }
}

#[test]
fn least_positive_elements_match_the_grid() {
    for kind in KINDS.iter().chain(["lex(Z, Q)", "lex(Z, Z, Z)"].iter()) {
        let g = group(kind);
        let found = g.has_min_positive().map(|e| e.coords().to_vec());
        assert_eq!(found, grid::min_positive(&factors(&g), 3), "{kind}");
    }
    let g = group("lex(Q, Z)");
    assert_eq!(g.has_min_positive().unwrap().coords(), &[Rational::from_integer(0.into()), Rational::from_integer(1.into())]);
}

fn coord(f: RankOne) -> impl Strategy<Value = Rational> {
    (-300i64..=300, 0u32..5).prop_map(move |(n, e)| {
        let den: i64 = match f {
            RankOne::Integers => 1,
            RankOne::Rationals => 3 << e,
            RankOne::Localized(p) => (p as i64).pow(e),
        };
        Rational::new(n.into(), den.into())
    })
}

fn element(g: OrderedGroup) -> impl Strategy<Value = GroupElement> {
    let parts: Vec<_> = g.factors().into_iter().map(coord).collect();
    parts.prop_map(move |c| g.element(c).unwrap())
}

fn kind() -> impl Strategy<Value = OrderedGroup> {
    prop_oneof![
        Just(group("Z")),
        Just(group("Q")),
        Just(group("Z[1/2]")),
        Just(group("Z[1/3]")),
        Just(group("lex(Z, Z[1/2])")),
        Just(group("lex(Q, Z)")),
        Just(group("lex(Z[1/5], Q, Z)")),
    ]
}

fn triple() -> impl Strategy<Value = (OrderedGroup, GroupElement, GroupElement, GroupElement)> {
    kind().prop_flat_map(|g| (Just(g.clone()), element(g.clone()), element(g.clone()), element(g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn translation_preserves_order((g, a, b, c) in triple()) {
        let _ = g;
        let (ac, bc) = (&a + &c, &b + &c);
        prop_assert_eq!(compare(a.as_hull(), b.as_hull()).unwrap(), compare(ac.as_hull(), bc.as_hull()).unwrap());
    }

    #[test]
    fn sums_and_negatives_stay_in_the_group((g, a, b, _c) in triple()) {
        prop_assert!(g.contains((&a + &b).as_hull()).unwrap());
        prop_assert!(g.contains((-&a).as_hull()).unwrap());
        prop_assert_eq!(compare(&(-&a).into_hull(), &HullPoint::zero(g.rank())).unwrap(), compare(&HullPoint::zero(g.rank()), a.as_hull()).unwrap());
    }

    #[test]
    fn membership_matches_oracle(n in -500i64..500, d in 1i64..200) {
        for kind in ["Z", "Q", "Z[1/2]"] {
            let g = group(kind);
            let x = Rational::new(n.into(), d.into());
            let f = factors(&g)[0];
            prop_assert_eq!(g.contains(&HullPoint::new(vec![x.clone()])).unwrap(), f.contains(&x));
        }
    }
}

#[test]
fn lex_comparison_examples() {
    let g = group("lex(Z, Z)");
    let a = HullPoint::from_ints(&[1, -5]);
    let b = HullPoint::from_ints(&[0, 100]);
    assert_eq!(compare(&a, &b).unwrap(), Ordering::Greater);
    assert_eq!(compare(&a, &a).unwrap(), Ordering::Equal);
    assert!(compare(&a, &HullPoint::from_ints(&[1])).is_err());
    assert!(!g.contains(&HullPoint::new(vec![Rational::new(1.into(), 2.into()), Rational::from_integer(3.into())])).unwrap());
    let _: Vec<Q> = a.coords().to_vec();
}
