//! `Cl^v` of valuation domains and norm-bounded class surveys of quadratic
//! orders.
//!
//! For a valuation domain with nonprincipal maximal ideal, `Cl^v(V) ≅ ℝ/G`
//! where `G` is the value group of `V/P` for the prime `P` directly below
//! `M`. Only cuts at points of `ℚ^n` are representable, so class
//! computations cover the subgroup `ℚ/G` of `ℝ/G`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::domain::{Domain, Ideal};
use crate::error::{Error, Result};
use crate::groups::{torsion_order, GroupElement, HullPoint, OrderedGroup, RankOne};
use crate::quadratic::{integral_ideals_up_to, LatticeIdeal, QuadraticOrder};
use crate::rational::{format_rational, Rational};
use crate::star::StarOp;
use crate::valuation::{ValIdeal, ValuationDomain};

pub const DEFAULT_ORDER_BOUND: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialReason {
    /// value group `ℤ`
    Dvr,
    /// maximal ideal principal, so every ideal is divisorial
    PrincipalMaximal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassGroupDescriptor {
    Trivial(TrivialReason),
    /// `ℝ/G`, presented by `G`
    RModG(OrderedGroup),
}

impl fmt::Display for ClassGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassGroupDescriptor::Trivial(TrivialReason::Dvr) => write!(f, "trivial (DVR)"),
            ClassGroupDescriptor::Trivial(TrivialReason::PrincipalMaximal) => write!(f, "trivial (principal maximal ideal)"),
            ClassGroupDescriptor::RModG(g) => write!(f, "R/{g}"),
        }
    }
}

/// A class `r mod G` of `Cl^v` with `r` in a canonical fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealClass {
    rep: Rational,
    modulus: RankOne,
}

impl IdealClass {
    pub fn new(rep: Rational, modulus: RankOne) -> IdealClass {
        IdealClass { rep: reduce(&rep, modulus), modulus }
    }

    pub fn rep(&self) -> &Rational {
        &self.rep
    }

    pub fn modulus(&self) -> RankOne {
        self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn mul(&self, o: &IdealClass) -> Result<IdealClass> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(IdealClass::new(&self.rep + &o.rep, self.modulus))
    }

    pub fn eq_class(&self, o: &IdealClass) -> Result<bool> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(self.rep == o.rep)
    }

    /// Least `n ≥ 1` with `n·r ∈ G`, searched up to `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        torsion_order(self.modulus, &self.rep, bound)
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} mod {}]", format_rational(&self.rep), self.modulus)
    }
}

/// Canonical representative of `r mod G`: the fractional part for `ℤ`,
/// `c/m` with `0 ≤ c < m` and `m` prime to `p` for `ℤ[1/p]`, zero for `ℚ`.
fn reduce(r: &Rational, g: RankOne) -> Rational {
    match g {
        RankOne::Rationals => Rational::zero(),
        RankOne::Integers => r - r.floor(),
        RankOne::Localized(p) => {
            let pb = BigInt::from(p);
            let mut m = r.denom().clone();
            let mut pk = BigInt::one();
            while m.is_multiple_of(&pb) {
                m /= &pb;
                pk *= &pb;
            }
            if m.is_one() {
                return Rational::zero();
            }
            // r = a/(p^k m); choose c ≡ a·(p^k)⁻¹ mod m
            let inv = pk.extended_gcd(&m).x.mod_floor(&m);
            let c = (r.numer() * inv).mod_floor(&m);
            Rational::new(c, m)
        }
    }
}

pub fn cl_v_descriptor(v: &ValuationDomain) -> ClassGroupDescriptor {
    let profile = v.maximal_ideal_profile();
    if profile.principal {
        return ClassGroupDescriptor::Trivial(if v.group() == &OrderedGroup::Integers {
            TrivialReason::Dvr
        } else {
            TrivialReason::PrincipalMaximal
        });
    }
    let below = profile.prime_directly_below.expect("finite lex products are branched");
    let g = v.group().subgroup_group(below.subgroup).ok().flatten().expect("nonzero subgroup");
    ClassGroupDescriptor::RModG(g)
}

/// Multiplies `I` by the unit-free element `x⁻¹` with `ω(x)` equal to the
/// leading coordinates of `I`, so that the result lies strictly between the
/// prime `P` (trailing `k` factors) and `V_P`.
fn shift_into_band(v: &ValuationDomain, i: &ValIdeal, k: usize) -> Result<ValIdeal> {
    let lead = v.rank() - k;
    let mut coords = i.cut().point().coords().to_vec();
    for c in coords.iter_mut().skip(lead) {
        *c = Rational::zero();
    }
    let x: GroupElement = v.group().element(coords)?;
    v.multiply(i, &v.principal(&-&x)?)
}

/// The class of a v-invertible divisorial ideal, computed through the
/// isomorphism `Cl^v(V) ≅ Cl^v(V/P)` down to rank one and then `φ mod G`.
pub fn class_of(v: &ValuationDomain, i: &ValIdeal) -> Result<IdealClass> {
    if !v.is_v_invertible(i)? || !v.is_divisorial(i)? {
        return Err(Error::NotVInvertible(i.to_string()));
    }
    if v.rank() == 1 {
        let g = v.group().factors()[0];
        return Ok(IdealClass::new(v.phi(i)?, g));
    }
    let p = v.prime(1)?;
    let shifted = shift_into_band(v, i, 1)?;
    let below = v.quotient_by_prime(p)?;
    let pushed = v.push_ideal(&shifted, p)?;
    class_of(&below, &pushed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub checked: usize,
    pub pairs_checked: usize,
    pub consistent: bool,
    pub failures: Vec<String>,
}

/// Checks on samples that `[I] ↦ [I/P]` is well defined, injective on the
/// classes seen and multiplicative, for the prime `P` with `k` trailing
/// factors.
pub fn cl_transport_check(v: &ValuationDomain, k: usize, samples: &[ValIdeal]) -> Result<TransportReport> {
    if k == 0 || k >= v.rank() {
        return Err(Error::InvalidSubgroup { k, rank: v.rank() });
    }
    let p = v.prime(k)?;
    let below = v.quotient_by_prime(p)?;
    let mut failures = Vec::new();
    let mut seen: Vec<(IdealClass, IdealClass)> = Vec::new();
    let image = |i: &ValIdeal| -> Result<IdealClass> {
        let pushed = v.push_ideal(&shift_into_band(v, i, k)?, p)?;
        class_of(&below, &pushed)
    };
    for i in samples {
        let here = class_of(v, i)?;
        let there = image(i)?;
        if here != there {
            failures.push(format!("{i}: {here} in V but {there} in V/P"));
        }
        for (a, b) in &seen {
            if (a == &here) != (b == &there) {
                failures.push(format!("{i}: class identification differs ({a} vs {here}, {b} vs {there})"));
            }
        }
        seen.push((here, there));
    }
    let mut pairs = 0;
    for (n, i) in samples.iter().enumerate() {
        let j = &samples[(n + 1) % samples.len()];
        let prod = v.v_closure(&v.multiply(i, j)?)?;
        let lhs = image(&prod)?;
        let rhs = image(i)?.mul(&image(j)?)?;
        pairs += 1;
        if lhs != rhs {
            failures.push(format!("{i} * {j}: {lhs} vs {rhs}"));
        }
    }
    Ok(TransportReport { checked: samples.len(), pairs_checked: pairs, consistent: failures.is_empty(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSurvey {
    pub ideals_enumerated: usize,
    /// one representative per class of invertible ideals
    pub pic_classes: Vec<LatticeIdeal>,
    /// one representative per class of v-invertible v-ideals
    pub v_classes: Vec<LatticeIdeal>,
    /// one representative per class of t-invertible t-ideals
    pub t_classes: Vec<LatticeIdeal>,
    pub cl_t_equals_cl_v: bool,
    pub every_t_invertible_invertible: bool,
    /// enumerated ideals that are not v-invertible
    pub not_v_invertible: Vec<LatticeIdeal>,
    /// principality is decided exactly (imaginary orders)
    pub exact: bool,
}

/// Buckets `ideals` by `I ~ J ⟺ (IJ⁻¹)^⋆` principal.
fn bucket(o: &QuadraticOrder, ideals: &[LatticeIdeal], op: &StarOp) -> Result<Vec<LatticeIdeal>> {
    let dom = Domain::Order(o.clone());
    let mut reps: Vec<LatticeIdeal> = Vec::new();
    for i in ideals {
        let mut found = false;
        for r in &reps {
            let q = dom.close(op, &Ideal::Lat(i.multiply(&r.invert())?))?;
            if let Ideal::Lat(q) = q {
                if q.is_principal() {
                    found = true;
                    break;
                }
            }
        }
        if !found {
            reps.push(i.clone());
        }
    }
    Ok(reps)
}

pub fn order_class_survey(o: &QuadraticOrder, bound: u64) -> Result<OrderSurvey> {
    if bound < 2 {
        return Err(Error::Bound(format!("norm bound {bound} < 2")));
    }
    if bound > 10_000 {
        return Err(Error::Bound(format!("norm bound {bound} > 10000")));
    }
    let dom = Domain::Order(o.clone());
    let ideals = integral_ideals_up_to(o, bound);
    let invertible: Vec<LatticeIdeal> = ideals.iter().filter(|i| i.is_invertible()).cloned().collect();
    let v_ideals: Vec<LatticeIdeal> = ideals.iter().filter(|i| i.is_divisorial() && i.is_v_invertible()).cloned().collect();
    let mut t_ideals = Vec::new();
    for i in &ideals {
        let x = Ideal::Lat(i.clone());
        if dom.close(&StarOp::T, &x)? == x && dom.is_star_invertible(&StarOp::T, &x)? {
            t_ideals.push(i.clone());
        }
    }
    let pic_classes = bucket(o, &invertible, &StarOp::D)?;
    let v_classes = bucket(o, &v_ideals, &StarOp::V)?;
    let t_classes = bucket(o, &t_ideals, &StarOp::T)?;
    Ok(OrderSurvey {
        ideals_enumerated: ideals.len(),
        cl_t_equals_cl_v: t_ideals == v_ideals && t_classes.len() == v_classes.len(),
        every_t_invertible_invertible: t_ideals.iter().all(|i| i.is_invertible()),
        not_v_invertible: ideals.iter().filter(|i| !i.is_v_invertible()).cloned().collect(),
        pic_classes,
        v_classes,
        t_classes,
        exact: o.disc() < 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdReport {
    /// every sampled f.g. ideal is v-invertible
    pub v_domain_on_samples: bool,
    /// the class group is known to be trivial (descriptor or survey)
    pub class_group_trivial: bool,
    pub all_sample_classes_trivial: bool,
    /// every sampled `I^v` is principal
    pub all_principal: bool,
    /// the descriptor is nontrivial but no `ℚ`-representable class is
    pub representability_caveat: bool,
    pub witnesses: Vec<Ideal>,
}

/// `Cl^v(D) = 0` ⟹ every sampled `I^v` is principal.
pub fn gcd_criterion_check(dom: &Domain, samples: &[Ideal], survey_bound: u64) -> Result<GcdReport> {
    let mut witnesses = Vec::new();
    let mut v_domain = true;
    for s in samples {
        if dom.is_finitely_generated(s)? && !dom.is_v_invertible(s)? {
            v_domain = false;
            witnesses.push(dom.adopt(s)?);
        }
    }
    let mut all_trivial = true;
    let mut all_principal = true;
    for s in samples {
        let sv = dom.v_closure(&dom.adopt(s)?)?;
        let principal = dom.is_principal(&sv)?;
        if !principal {
            all_principal = false;
        }
        let trivial = match (dom, &sv) {
            (Domain::Valuation(v), Ideal::Val(x)) if v.is_v_invertible(x)? => class_of(v, x)?.is_trivial(),
            _ => principal,
        };
        if !trivial {
            all_trivial = false;
        }
    }
    let (class_group_trivial, caveat) = match dom {
        Domain::Valuation(v) => {
            let d = cl_v_descriptor(v);
            let trivial = matches!(d, ClassGroupDescriptor::Trivial(_));
            let caveat = matches!(d, ClassGroupDescriptor::RModG(OrderedGroup::Rationals)) && all_trivial;
            (trivial, caveat)
        }
        Domain::Order(o) => (order_class_survey(o, survey_bound)?.pic_classes.len() == 1, false),
    };
    if (class_group_trivial || caveat) && v_domain {
        for s in samples {
            let sv = dom.v_closure(&dom.adopt(s)?)?;
            if !dom.is_principal(&sv)? {
                witnesses.push(sv);
            }
        }
    }
    Ok(GcdReport {
        v_domain_on_samples: v_domain,
        class_group_trivial,
        all_sample_classes_trivial: all_trivial,
        all_principal,
        representability_caveat: caveat,
        witnesses,
    })
}

/// A divisorial ideal with `φ = r`, witnessing surjectivity of `φ` onto the
/// rational points.
pub fn ideal_with_phi(v: &ValuationDomain, r: &Rational) -> Result<ValIdeal> {
    if v.rank() != 1 {
        return Err(Error::RankOneRequired(v.rank()));
    }
    v.ideal(HullPoint::new(vec![r.clone()]), false)
}
