mod common;

use common::{group, rng};
use rand::Rng;
use semistar::content::{content, content_inclusion_holds, dedekind_mertens_check, gauss_check, pstarmd_check, Coeff, FieldPoly};
use semistar::quadratic::{LatticeIdeal, QuadraticOrder};
use semistar::sample::{cancelling_pair, elem, fg_ideal, poly, SampleBounds};
use semistar::star::{maximal_order_meet, StarOp};
use semistar::valuation::ValuationDomain;
use semistar::{Domain, Elem, Ideal};

const VALUATION_KINDS: [&str; 5] = ["Z", "Q", "Z[1/2]", "lex(Z, Z[1/2])", "lex(Q, Z)"];

fn orders() -> Vec<Domain> {
    [-12, -3, -20, 40].iter().map(|&d| Domain::Order(QuadraticOrder::new(d).unwrap())).collect()
}

fn valuations() -> Vec<Domain> {
    VALUATION_KINDS.iter().map(|g| Domain::Valuation(ValuationDomain::new(group(g)))).collect()
}

fn b() -> SampleBounds {
    SampleBounds { level: 1, value_box: 2, max_degree: 4, height: 10, ..SampleBounds::default() }
}

#[test]
fn dedekind_mertens_on_random_pairs() {
    for (s, dom) in orders().iter().chain(valuations().iter()).enumerate() {
        let mut r = rng(3000 + s as u64);
        for n in 0..200 {
            let (f, g) = if r.gen_bool(0.2) { cancelling_pair(&mut r, dom, &b()) } else { (poly(&mut r, dom, &b()), poly(&mut r, dom, &b())) };
            let rep = dedekind_mertens_check(dom, &f, &g).unwrap();
            assert_eq!(rep.m, g.degree());
            assert!(rep.holds, "{dom} #{n}: f = {f}, g = {g}: {} vs {}", rep.lhs, rep.rhs);
            assert!(content_inclusion_holds(dom, &f, &g).unwrap(), "{dom} #{n}: f = {f}, g = {g}");
        }
    }
}

#[test]
fn content_is_homogeneous() {
    for (s, dom) in orders().iter().chain(valuations().iter()).enumerate() {
        let mut r = rng(3100 + s as u64);
        for _ in 0..100 {
            let f = poly(&mut r, dom, &b());
            let x = elem(&mut r, dom, &b());
            let c = match &x {
                Elem::Quad(q) => Coeff::Quad(q.clone()),
                Elem::Val(g) => Coeff::Mono(semistar::content::MonoSum::monomial(semistar::Rational::from_integer(3.into()), g.as_hull().clone())),
            };
            let lhs = content(dom, &f.scale(&c).unwrap()).unwrap();
            let rhs = dom.scale(&content(dom, &f).unwrap(), &x).unwrap();
            assert_eq!(lhs, rhs, "{dom}: {f} scaled by {x}");
        }
    }
}

#[test]
fn krull_identity_on_the_maximal_order() {
    let dom = Domain::Order(QuadraticOrder::new(-3).unwrap());
    let mut r = rng(3200);
    for n in 0..100 {
        let (f, g) = (poly(&mut r, &dom, &b()), poly(&mut r, &dom, &b()));
        let rep = gauss_check(&dom, &f, &g, Some(&StarOp::V)).unwrap();
        assert!(rep.equal, "#{n}: f = {f}, g = {g}");
    }
}

#[test]
fn gauss_with_v_on_valuation_domains_including_cancellation() {
    for (s, dom) in valuations().iter().enumerate() {
        let mut r = rng(3300 + s as u64);
        let mut cancelled = 0;
        for n in 0..100 {
            let (f, g) = if n % 2 == 0 { cancelling_pair(&mut r, dom, &b()) } else { (poly(&mut r, dom, &b()), poly(&mut r, dom, &b())) };
            let h = f.mul(&g);
            let terms = |p: &FieldPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if terms(&h) < terms(&f) + terms(&g) - 1 {
                cancelled += 1;
            }
            let rep = gauss_check(dom, &f, &g, Some(&StarOp::V)).unwrap();
            assert!(rep.equal, "{dom} #{n}: f = {f}, g = {g}");
            let plain = gauss_check(dom, &f, &g, None).unwrap();
            assert!(plain.equal, "{dom} #{n}: f = {f}, g = {g}");
        }
        assert!(cancelled >= 40, "{dom}: only {cancelled} cancelling pairs");
    }
}

fn worked_pair(dom: &Domain) -> (FieldPoly, FieldPoly) {
    (FieldPoly::parse(dom, "2+(1+sqrt(-3))X").unwrap(), FieldPoly::parse(dom, "2+(1-sqrt(-3))X").unwrap())
}

#[test]
fn gauss_fails_in_the_index_two_order() {
    let o = QuadraticOrder::new(-12).unwrap();
    let dom = Domain::Order(o.clone());
    let (f, g) = worked_pair(&dom);
    let p = LatticeIdeal::from_hnf(&o, 1, 2, 1, 1).unwrap();
    let two_p = Ideal::Lat(p.scale(&o.parse_elem("2").unwrap()).unwrap());
    let four = Ideal::Lat(LatticeIdeal::principal(&o, &o.parse_elem("4").unwrap()));
    assert_eq!(content(&dom, &f).unwrap(), Ideal::Lat(p.clone()));
    assert_eq!(content(&dom, &f.mul(&g)).unwrap(), four);
    let rep = gauss_check(&dom, &f, &g, Some(&StarOp::V)).unwrap();
    assert_eq!(rep.lhs, four);
    assert_eq!(rep.rhs, two_p);
    assert!(!rep.equal);
    assert!(!gauss_check(&dom, &f, &g, None).unwrap().equal);
    let dm = dedekind_mertens_check(&dom, &f, &g).unwrap();
    assert_eq!(dm.m, 1);
    let four_p = Ideal::Lat(p.scale(&o.parse_elem("4").unwrap()).unwrap());
    assert_eq!(dm.lhs, four_p);
    assert_eq!(dm.rhs, four_p);
    assert!(dm.holds);
}

#[test]
fn meet_with_maximal_order_is_gaussian_but_not_pstarmd() {
    let o = QuadraticOrder::new(-12).unwrap();
    let dom = Domain::Order(o.clone());
    let star = maximal_order_meet(&o);
    let (f, g) = worked_pair(&dom);
    assert!(gauss_check(&dom, &f, &g, Some(&star)).unwrap().equal);
    let mut r = rng(3400);
    for n in 0..100 {
        let (f, g) = (poly(&mut r, &dom, &b()), poly(&mut r, &dom, &b()));
        assert!(gauss_check(&dom, &f, &g, Some(&star)).unwrap().equal, "#{n}: {f}, {g}");
    }
    let p = Ideal::Lat(LatticeIdeal::from_hnf(&o, 1, 2, 1, 1).unwrap());
    let rep = pstarmd_check(&dom, &star, std::slice::from_ref(&p)).unwrap();
    assert!(!rep.all_invertible);
    assert_eq!(rep.witnesses, vec![p.clone()]);
    let rep = pstarmd_check(&dom, &StarOp::V, std::slice::from_ref(&p)).unwrap();
    assert_eq!(rep.witnesses, vec![p]);
}

#[test]
fn valuation_domains_are_pstarmd_for_every_operation() {
    for (s, dom) in valuations().iter().enumerate() {
        let mut r = rng(3500 + s as u64);
        let samples: Vec<Ideal> = (0..50).map(|_| fg_ideal(&mut r, dom, &b())).collect();
        for op in semistar::star::constructible_ops(dom) {
            let rep = pstarmd_check(dom, &op, &samples).unwrap();
            assert!(rep.all_invertible, "{dom} {op}: {:?}", rep.witnesses);
        }
    }
}
