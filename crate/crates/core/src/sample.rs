//! Seeded random generators for values, ideals and polynomials.
//!
//! Every generator takes the caller's RNG so suites stay replayable from a
//! single seed.

use num_bigint::BigInt;
use rand::Rng;

use crate::content::{Coeff, FieldPoly, MonoSum};
use crate::domain::{Domain, Elem, Ideal};
use crate::groups::{GroupElement, HullPoint, OrderedGroup, RankOne};
use crate::quadratic::{LatticeIdeal, QuadElem, QuadraticOrder};
use crate::rational::Rational;
use crate::valuation::{ValIdeal, ValuationDomain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleBounds {
    /// Hull coordinates are drawn from `(1/(3·2^level))ℤ`.
    pub level: u32,
    /// Value coordinates lie in `[-value_box, value_box]`.
    pub value_box: i64,
    /// Bound on the integer ω-coordinates of lattice generators.
    pub lattice_entries: i64,
    pub max_degree: usize,
    /// Bound on numerators of polynomial coefficients.
    pub height: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds { level: 2, value_box: 2, lattice_entries: 50, max_degree: 4, height: 10 }
    }
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the divisible hull; non-members of discrete or dyadic factors
/// show up regularly (thirds).
pub fn hull_point<R: Rng>(rng: &mut R, group: &OrderedGroup, b: &SampleBounds) -> HullPoint {
    let den = 3i64 << b.level;
    let coords = (0..group.rank())
        .map(|_| ratio(rng.gen_range(-b.value_box * den..=b.value_box * den), den))
        .collect();
    HullPoint::new(coords)
}

fn member_coord<R: Rng>(rng: &mut R, f: RankOne, b: &SampleBounds) -> Rational {
    let den = match f {
        RankOne::Integers => 1,
        RankOne::Rationals => 3i64 << b.level,
        RankOne::Localized(p) => (p as i64).checked_pow(b.level.min(6)).filter(|d| *d < 1 << 20).unwrap_or(p as i64),
    };
    ratio(rng.gen_range(-b.value_box * den..=b.value_box * den), den)
}

pub fn group_element<R: Rng>(rng: &mut R, group: &OrderedGroup, b: &SampleBounds) -> GroupElement {
    let coords = group.factors().into_iter().map(|f| member_coord(rng, f, b)).collect();
    group.element(coords).expect("coordinates are drawn inside each factor")
}

/// Full depth half the time, otherwise a uniformly chosen truncation.
pub fn val_ideal<R: Rng>(rng: &mut R, v: &ValuationDomain, b: &SampleBounds) -> ValIdeal {
    let point = hull_point(rng, v.group(), b);
    let open = rng.gen_bool(0.5);
    let rank = v.rank();
    let depth = if rng.gen_bool(0.5) { rank } else { rng.gen_range(1..=rank) };
    v.ideal_with_depth(point, open, depth).expect("sampled points have the group's rank")
}

/// An element with integer ω-coordinates, optionally divided by 2 or 3.
pub fn quad_elem<R: Rng>(rng: &mut R, o: &QuadraticOrder, entries: i64, fractional: bool) -> QuadElem {
    loop {
        let u = rng.gen_range(-entries..=entries);
        let v = rng.gen_range(-entries..=entries);
        if u == 0 && v == 0 {
            continue;
        }
        let d = if fractional { [1, 1, 2, 3][rng.gen_range(0..4)] } else { 1 };
        return o.from_coords(&[ratio(u, d), ratio(v, d)]);
    }
}

/// The module spanned by one to three random generators.
pub fn lattice_ideal<R: Rng>(rng: &mut R, o: &QuadraticOrder, b: &SampleBounds) -> LatticeIdeal {
    let n = rng.gen_range(1..=3);
    let fractional = rng.gen_bool(0.3);
    let gens: Vec<QuadElem> = (0..n).map(|_| quad_elem(rng, o, b.lattice_entries, fractional)).collect();
    LatticeIdeal::from_generators(o, &gens).expect("generators are nonzero")
}

/// Integral lattice ideal with small generators, the typical finitely
/// generated sample.
pub fn integral_lattice_ideal<R: Rng>(rng: &mut R, o: &QuadraticOrder, entries: i64) -> LatticeIdeal {
    let n = rng.gen_range(1..=2);
    let gens: Vec<QuadElem> = (0..n).map(|_| quad_elem(rng, o, entries, false)).collect();
    LatticeIdeal::from_generators(o, &gens).expect("generators are nonzero")
}

pub fn ideal<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> Ideal {
    match dom {
        Domain::Valuation(v) => Ideal::Val(val_ideal(rng, v, b)),
        Domain::Order(o) => Ideal::Lat(lattice_ideal(rng, o, b)),
    }
}

/// A finitely generated sample: principal on valuation backends.
pub fn fg_ideal<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> Ideal {
    match dom {
        Domain::Valuation(v) => {
            let g = group_element(rng, v.group(), b);
            Ideal::Val(v.principal(&g).expect("sampled values lie in the group"))
        }
        Domain::Order(o) => Ideal::Lat(integral_lattice_ideal(rng, o, b.lattice_entries.min(10))),
    }
}

pub fn elem<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> Elem {
    match dom {
        Domain::Valuation(v) => Elem::Val(group_element(rng, v.group(), b)),
        Domain::Order(o) => Elem::Quad(quad_elem(rng, o, b.height.max(1), true)),
    }
}

fn mono_coeff<R: Rng>(rng: &mut R, group: &OrderedGroup, b: &SampleBounds) -> MonoSum {
    let terms = rng.gen_range(1..=2);
    let mut s = MonoSum::zero(group.rank());
    for _ in 0..terms {
        let mut q = 0;
        while q == 0 {
            q = rng.gen_range(-b.height..=b.height);
        }
        let e = group_element(rng, group, b).into_hull();
        s = s.add(&MonoSum::monomial(Rational::from_integer(q.into()), e));
    }
    s
}

fn coeff<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> Coeff {
    match dom {
        Domain::Valuation(v) => Coeff::Mono(mono_coeff(rng, v.group(), b)),
        Domain::Order(o) => {
            let u = rng.gen_range(-b.height..=b.height);
            let w = rng.gen_range(-b.height..=b.height);
            Coeff::Quad(o.from_coords(&[Rational::from_integer(u.into()), Rational::from_integer(w.into())]))
        }
    }
}

/// Degree up to `max_degree`, nonzero leading coefficient.
pub fn poly<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> FieldPoly {
    let deg = rng.gen_range(0..=b.max_degree);
    loop {
        let cs: Vec<Coeff> = (0..=deg).map(|_| coeff(rng, dom, b)).collect();
        if cs.last().is_some_and(|c| !c.is_zero()) {
            return FieldPoly::new(cs).expect("leading coefficient is nonzero");
        }
    }
}

/// `f(−X)`; the product `f(X)·f(−X)` has every odd coefficient cancel.
pub fn mirror(f: &FieldPoly) -> FieldPoly {
    let cs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { negate(c) })
        .collect();
    FieldPoly::new(cs).expect("mirroring keeps the leading coefficient nonzero")
}

fn negate(c: &Coeff) -> Coeff {
    match c {
        Coeff::Quad(x) => Coeff::Quad(-x),
        Coeff::Mono(x) => Coeff::Mono(x.neg()),
    }
}

fn nonzero_coeff<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> Coeff {
    loop {
        let c = coeff(rng, dom, b);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A pair whose product loses terms: either `(f, f(−X))`, or
/// `(a + cX, a − cX)` whose middle coefficient vanishes.
pub fn cancelling_pair<R: Rng>(rng: &mut R, dom: &Domain, b: &SampleBounds) -> (FieldPoly, FieldPoly) {
    let f = poly(rng, dom, b);
    if rng.gen_bool(0.5) && f.degree() > 0 {
        let g = mirror(&f);
        return (f, g);
    }
    let a = nonzero_coeff(rng, dom, b);
    let c = nonzero_coeff(rng, dom, b);
    let f = FieldPoly::new(vec![a.clone(), c.clone()]).expect("nonzero leading coefficient");
    let g = FieldPoly::new(vec![a, negate(&c)]).expect("nonzero leading coefficient");
    (f, g)
}
