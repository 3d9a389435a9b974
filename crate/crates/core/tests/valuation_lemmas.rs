mod common;

use common::{group, rng};
use semistar::classgroup::{class_of, cl_transport_check, cl_v_descriptor, ideal_with_phi, ClassGroupDescriptor, IdealClass, TrivialReason};
use semistar::groups::{HullPoint, OrderedGroup, RankOne};
use semistar::rational::{frac, Rational};
use semistar::sample::{hull_point, val_ideal, SampleBounds};
use semistar::valuation::{ValIdeal, ValuationDomain};

const RANK_ONE: [&str; 4] = ["Z", "Q", "Z[1/2]", "Z[1/3]"];

fn b() -> SampleBounds {
    SampleBounds::default()
}

fn divisorial_samples(v: &ValuationDomain, seed: u64, n: usize) -> Vec<ValIdeal> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let i = val_ideal(&mut r, v, &b());
        if v.is_divisorial(&i).unwrap() {
            out.push(i);
        }
    }
    out
}

fn v_invertible_divisorial(v: &ValuationDomain, seed: u64, n: usize) -> Vec<ValIdeal> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let i = val_ideal(&mut r, v, &b());
        if v.is_divisorial(&i).unwrap() && v.is_v_invertible(&i).unwrap() {
            out.push(i);
        }
    }
    out
}

#[test]
fn equal_phi_iff_equal_closure() {
    for (s, kind) in RANK_ONE.iter().enumerate() {
        let v = ValuationDomain::new(group(kind));
        let mut r = rng(200 + s as u64);
        let mut collisions = 0;
        for _ in 0..500 {
            let i = val_ideal(&mut r, &v, &b());
            // half the partners share the cut point
            let j = if rand::Rng::gen_bool(&mut r, 0.5) {
                v.ideal(i.cut().point().clone(), rand::Rng::gen_bool(&mut r, 0.5)).unwrap()
            } else {
                val_ideal(&mut r, &v, &b())
            };
            let same_phi = v.phi(&i).unwrap() == v.phi(&j).unwrap();
            collisions += same_phi as usize;
            assert_eq!(same_phi, v.v_closure(&i).unwrap() == v.v_closure(&j).unwrap(), "{kind}: {i} vs {j}");
        }
        assert!(collisions > 100);
    }
}

#[test]
fn phi_is_additive_on_divisorial_ideals() {
    for (s, kind) in RANK_ONE.iter().enumerate() {
        let v = ValuationDomain::new(group(kind));
        let xs = divisorial_samples(&v, 300 + s as u64, 200);
        for w in xs.windows(2) {
            let prod = v.v_closure(&v.multiply(&w[0], &w[1]).unwrap()).unwrap();
            assert_eq!(v.phi(&prod).unwrap(), v.phi(&w[0]).unwrap() + v.phi(&w[1]).unwrap(), "{kind}: {} {}", w[0], w[1]);
        }
    }
}

#[test]
fn principal_iff_phi_in_group() {
    for (s, kind) in RANK_ONE.iter().enumerate() {
        let g = group(kind);
        let v = ValuationDomain::new(g.clone());
        for i in divisorial_samples(&v, 400 + s as u64, 300) {
            let phi = v.phi(&i).unwrap();
            assert_eq!(v.is_principal(&i), g.contains(&HullPoint::new(vec![phi])).unwrap(), "{kind}: {i}");
        }
    }
}

#[test]
fn every_rational_point_is_a_phi_value() {
    for kind in RANK_ONE {
        let v = ValuationDomain::new(group(kind));
        for n in -24..=24 {
            let r = frac(n, 12);
            let i = ideal_with_phi(&v, &r).unwrap();
            assert!(v.is_divisorial(&i).unwrap());
            // over Z a cut only sees the integers above it
            let expected = if kind == "Z" { r.ceil() } else { r };
            assert_eq!(v.phi(&i).unwrap(), expected);
        }
    }
}

#[test]
fn principal_maximal_ideal_makes_everything_divisorial() {
    for (s, kind) in ["Z", "lex(Q, Z)", "lex(Z, Z)", "lex(Z[1/2], Q, Z)"].iter().enumerate() {
        let v = ValuationDomain::new(group(kind));
        assert!(v.maximal_ideal_profile().principal);
        let mut r = rng(500 + s as u64);
        for _ in 0..100 {
            let i = val_ideal(&mut r, &v, &b());
            assert!(v.is_divisorial(&i).unwrap(), "{kind}: {i}");
        }
    }
}

#[test]
fn invertible_ideals_are_principal() {
    for (s, kind) in ["Z", "Q", "Z[1/2]", "lex(Z, Z[1/2])", "lex(Q, Z)", "lex(Z, Q, Z[1/3])"].iter().enumerate() {
        let v = ValuationDomain::new(group(kind));
        let mut r = rng(600 + s as u64);
        for _ in 0..300 {
            let i = val_ideal(&mut r, &v, &b());
            assert_eq!(v.is_invertible(&i).unwrap(), v.is_principal(&i), "{kind}: {i}");
        }
    }
}

/// Ideals strictly between `P` and `V_P`: leading coordinates zero, deeper
/// than the prime.
fn band_ideal(r: &mut impl rand::Rng, v: &ValuationDomain, lead: usize) -> ValIdeal {
    let mut p = hull_point(r, v.group(), &b());
    let mut c = p.coords().to_vec();
    for x in c.iter_mut().take(lead) {
        *x = Rational::from_integer(0.into());
    }
    p = HullPoint::new(c);
    let depth = r.gen_range(lead + 1..=v.rank());
    v.ideal_with_depth(p, r.gen_bool(0.5), depth).unwrap()
}

#[test]
fn closure_and_v_invertibility_pass_to_quotients() {
    let cases = [("lex(Z, Z[1/2])", 1), ("lex(Q, Z[1/2])", 1), ("lex(Z, Q, Z[1/2])", 1), ("lex(Z, Q, Z[1/2])", 2), ("lex(Q, Z)", 1)];
    for (s, (kind, k)) in cases.iter().enumerate() {
        let v = ValuationDomain::new(group(kind));
        let p = v.prime(*k).unwrap();
        let below = v.quotient_by_prime(p).unwrap();
        let lead = v.rank() - k;
        let mut r = rng(700 + s as u64);
        for _ in 0..300 {
            let i = band_ideal(&mut r, &v, lead);
            let pushed = v.push_ideal(&i, p).unwrap();
            let closed = v.v_closure(&i).unwrap();
            assert_eq!(v.push_ideal(&closed, p).unwrap(), below.v_closure(&pushed).unwrap(), "{kind} k={k}: {i}");
            assert_eq!(v.is_v_invertible(&i).unwrap(), below.is_v_invertible(&pushed).unwrap(), "{kind} k={k}: {i}");
        }
    }
}

#[test]
fn descriptors() {
    let d = |s: &str| cl_v_descriptor(&ValuationDomain::new(group(s)));
    assert_eq!(d("Z"), ClassGroupDescriptor::Trivial(TrivialReason::Dvr));
    assert_eq!(d("lex(Q, Z)"), ClassGroupDescriptor::Trivial(TrivialReason::PrincipalMaximal));
    assert_eq!(d("lex(Z, Z[1/2])"), ClassGroupDescriptor::RModG(OrderedGroup::Localized(2)));
    assert_eq!(d("Z[1/2]"), ClassGroupDescriptor::RModG(OrderedGroup::Localized(2)));
    assert_eq!(d("Q"), ClassGroupDescriptor::RModG(OrderedGroup::Rationals));
}

#[test]
fn descriptor_consistency_on_samples() {
    for (s, kind) in ["Z", "lex(Q, Z)", "Z[1/2]", "Z[1/3]", "lex(Z, Z[1/2])", "Q"].iter().enumerate() {
        let v = ValuationDomain::new(group(kind));
        let samples = v_invertible_divisorial(&v, 800 + s as u64, 60);
        let classes: Vec<IdealClass> = samples.iter().map(|i| class_of(&v, i).unwrap()).collect();
        match cl_v_descriptor(&v) {
            ClassGroupDescriptor::Trivial(_) => assert!(classes.iter().all(IdealClass::is_trivial), "{kind}"),
            ClassGroupDescriptor::RModG(OrderedGroup::Rationals) => assert!(classes.iter().all(IdealClass::is_trivial)),
            ClassGroupDescriptor::RModG(g) => {
                // a rational outside G gives a nontrivial class
                let r = if g == OrderedGroup::Localized(3) { frac(1, 2) } else { frac(1, 3) };
                let mut c = vec![Rational::from_integer(0.into()); v.rank()];
                *c.last_mut().unwrap() = r;
                let i = v.ideal(HullPoint::new(c), false).unwrap();
                assert!(!class_of(&v, &i).unwrap().is_trivial(), "{kind}");
            }
        }
        for (n, i) in samples.iter().enumerate() {
            let j = &samples[(n + 7) % samples.len()];
            let prod = v.v_closure(&v.multiply(i, j).unwrap()).unwrap();
            assert_eq!(class_of(&v, &prod).unwrap(), classes[n].mul(&classes[(n + 7) % samples.len()]).unwrap(), "{kind}: {i} {j}");
        }
    }
}

#[test]
fn torsion_classes_over_dyadics() {
    let v = ValuationDomain::new(OrderedGroup::Localized(2));
    let third = v.ideal(HullPoint::new(vec![frac(1, 3)]), false).unwrap();
    let c = class_of(&v, &third).unwrap();
    assert!(!c.is_trivial());
    assert_eq!(c.order(10_000), Some(3));
    assert!(c.mul(&c).unwrap().mul(&c).unwrap().is_trivial());
    let cube = v.multiply(&v.multiply(&third, &third).unwrap(), &third).unwrap();
    assert!(v.is_principal(&v.v_closure(&cube).unwrap()));
    let five_eighths = v.ideal(HullPoint::new(vec![frac(5, 8)]), false).unwrap();
    assert!(class_of(&v, &five_eighths).unwrap().is_trivial());
    assert_eq!(IdealClass::new(frac(1, 5), RankOne::Localized(2)).order(10_000), Some(5));
    assert_eq!(IdealClass::new(frac(1, 5), RankOne::Rationals).order(10_000), Some(1));
}

#[test]
fn transport_to_the_quotient() {
    let v = ValuationDomain::new(group("lex(Z, Z[1/2])"));
    let samples = v_invertible_divisorial(&v, 900, 20);
    let report = cl_transport_check(&v, 1, &samples).unwrap();
    assert!(report.consistent, "{:?}", report.failures);
    assert_eq!(report.checked, 20);
    let i = v.ideal(HullPoint::new(vec![frac(0, 1), frac(1, 3)]), false).unwrap();
    let p = v.prime(1).unwrap();
    let below = v.quotient_by_prime(p).unwrap();
    assert_eq!(class_of(&v, &i).unwrap(), class_of(&below, &v.push_ideal(&i, p).unwrap()).unwrap());
    let v3 = ValuationDomain::new(group("lex(Z, Q, Z[1/2])"));
    let samples = v_invertible_divisorial(&v3, 901, 20);
    for k in [1, 2] {
        let report = cl_transport_check(&v3, k, &samples).unwrap();
        assert!(report.consistent, "k={k}: {:?}", report.failures);
    }
}
