//! Fractional ideals of a valuation domain presented by its value group.
//!
//! A nonzero fractional ideal `I` is determined by its value set
//! `{ω(x) : 0 ≠ x ∈ I}`, an upper set of `Γ` bounded below, so ideals are
//! stored as canonical [`Cut`]s. Products, colons and the v-closure act on
//! the cuts through the rule tables documented on each operation.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::groups::{ConvexSubgroup, GroupElement, HullPoint, OrderedGroup, RankOne};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuationDomain {
    group: OrderedGroup,
    factors: Vec<RankOne>,
}

/// A nonzero fractional ideal other than the quotient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValIdeal {
    group: OrderedGroup,
    cut: Cut,
}

/// The prime `P_H = {x : ω(x) > h for all h ∈ H}` for a convex subgroup `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ValPrime {
    pub subgroup: ConvexSubgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalIdealProfile {
    pub principal: bool,
    pub idempotent: bool,
    pub branched: bool,
    pub prime_directly_below: Option<ValPrime>,
}

impl ValIdeal {
    pub fn cut(&self) -> &Cut {
        &self.cut
    }

    pub fn group(&self) -> &OrderedGroup {
        &self.group
    }

    pub fn admits(&self, value: &HullPoint) -> bool {
        self.cut.admits(value)
    }
}

impl fmt::Display for ValIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cut.fmt(f)
    }
}

impl ValuationDomain {
    pub fn new(group: OrderedGroup) -> Self {
        let factors = group.factors();
        ValuationDomain { group, factors }
    }

    pub fn group(&self) -> &OrderedGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    fn make(&self, point: HullPoint, open: bool, depth: usize) -> ValIdeal {
        ValIdeal { group: self.group.clone(), cut: Cut::canonical(&self.factors, point, open, depth) }
    }

    pub fn ideal(&self, point: HullPoint, open: bool) -> Result<ValIdeal> {
        self.ideal_with_depth(point, open, self.rank())
    }

    pub fn ideal_with_depth(&self, point: HullPoint, open: bool, depth: usize) -> Result<ValIdeal> {
        let cut = Cut::with_depth(&self.group, point, open, depth)?;
        Ok(ValIdeal { group: self.group.clone(), cut })
    }

    pub fn principal(&self, x: &GroupElement) -> Result<ValIdeal> {
        self.ideal(x.as_hull().clone(), false)
    }

    /// `V` itself.
    pub fn unit(&self) -> ValIdeal {
        self.make(HullPoint::zero(self.rank()), false, self.rank())
    }

    pub fn maximal_ideal(&self) -> ValIdeal {
        self.make(HullPoint::zero(self.rank()), true, self.rank())
    }

    fn check(&self, i: &ValIdeal) -> Result<()> {
        if i.group != self.group {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// `I ⊆ J`. Ideals of a valuation domain form a chain, so exactly one of
    /// `I ⊆ J`, `J ⊊ I` holds.
    pub fn is_subset(&self, i: &ValIdeal, j: &ValIdeal) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        let (a, b) = (&i.cut, &j.cut);
        let d = a.depth().min(b.depth());
        Ok(match a.point().coords()[..d].cmp(&b.point().coords()[..d]) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match a.depth().cmp(&b.depth()) {
                Ordering::Equal => a.is_open() || !b.is_open(),
                Ordering::Less => a.is_open(),
                Ordering::Greater => !b.is_open(),
            },
        })
    }

    pub fn intersect(&self, i: &ValIdeal, j: &ValIdeal) -> Result<ValIdeal> {
        Ok(if self.is_subset(i, j)? { i.clone() } else { j.clone() })
    }

    pub fn sum(&self, i: &ValIdeal, j: &ValIdeal) -> Result<ValIdeal> {
        Ok(if self.is_subset(i, j)? { j.clone() } else { i.clone() })
    }

    /// Whether the cut has a least element. A closed cut at a point outside
    /// the group has none and behaves like an open one.
    fn attained(&self, c: &Cut) -> bool {
        let d = c.depth();
        !c.is_open() && self.factors[d - 1].contains(&c.point().coords()[d - 1])
    }

    /// `IJ`, whose value set is the sumset of the two value sets.
    ///
    /// | operands (same depth d)   | result                          |
    /// |---------------------------|---------------------------------|
    /// | both infima attained      | closed `p+q`                    |
    /// | otherwise                 | open `p+q` (then canonicalized) |
    ///
    /// A deeper operand is first replaced by its projection to the shallower
    /// depth, which is the closed cut at its truncated point.
    pub fn multiply(&self, i: &ValIdeal, j: &ValIdeal) -> Result<ValIdeal> {
        self.check(i)?;
        self.check(j)?;
        let (a, b) = (&i.cut, &j.cut);
        let d = a.depth().min(b.depth());
        let open_a = a.depth() == d && !self.attained(a);
        let open_b = b.depth() == d && !self.attained(b);
        let p = &a.prefix(d) + &b.prefix(d);
        Ok(self.make(p, open_a || open_b, d))
    }

    /// `(I : J) = {z : zJ ⊆ I}`.
    ///
    /// At equal depth the point is `p_I − p_J` and the result is open iff the
    /// infimum of `I` is not attained while that of `J` is. When `J` is shallower than `I`, `I` is
    /// replaced by the open cut at its truncated point (only strictly larger
    /// prefixes survive arbitrary tails); when `J` is deeper, `J` is replaced
    /// by its closed projection.
    pub fn colon(&self, i: &ValIdeal, j: &ValIdeal) -> Result<ValIdeal> {
        self.check(i)?;
        self.check(j)?;
        let (a, b) = (&i.cut, &j.cut);
        let d = a.depth().min(b.depth());
        let a = if a.depth() > d {
            Cut::canonical(&self.factors, a.prefix(d), true, d)
        } else {
            a.clone()
        };
        let a_open = !self.attained(&a);
        let b_open = b.depth() == d && !self.attained(b);
        let p = &a.prefix(d) - &b.prefix(d);
        Ok(self.make(p, a_open && !b_open, d))
    }

    /// `I^v = (V : (V : I))`.
    ///
    /// Resulting rule: only full-depth open cuts (the ideals `xM` with `M`
    /// not principal) move, and they close at the same point; every other
    /// canonical cut is divisorial.
    pub fn v_closure(&self, i: &ValIdeal) -> Result<ValIdeal> {
        let v = self.unit();
        let inv = self.colon(&v, i)?;
        self.colon(&v, &inv)
    }

    pub fn is_principal(&self, i: &ValIdeal) -> bool {
        let c = &i.cut;
        !c.is_open() && c.depth() == self.rank() && self.group.contains(c.point()).unwrap_or(false)
    }

    /// Finitely generated ideals of a valuation domain are principal.
    pub fn is_finitely_generated(&self, i: &ValIdeal) -> bool {
        self.is_principal(i)
    }

    pub fn is_divisorial(&self, i: &ValIdeal) -> Result<bool> {
        Ok(self.v_closure(i)? == *i)
    }

    pub fn is_invertible(&self, i: &ValIdeal) -> Result<bool> {
        let inv = self.colon(&self.unit(), i)?;
        Ok(self.multiply(i, &inv)? == self.unit())
    }

    pub fn is_v_invertible(&self, i: &ValIdeal) -> Result<bool> {
        let inv = self.colon(&self.unit(), i)?;
        Ok(self.v_closure(&self.multiply(i, &inv)?)? == self.unit())
    }

    /// `φ(I) = sup{ω(x) : I ⊆ xV}`, the cut point of a rank-one ideal.
    pub fn phi(&self, i: &ValIdeal) -> Result<Rational> {
        self.check(i)?;
        if self.rank() != 1 {
            return Err(Error::RankOneRequired(self.rank()));
        }
        Ok(i.cut.point().coords()[0].clone())
    }

    pub fn prime(&self, k: usize) -> Result<ValPrime> {
        Ok(ValPrime { subgroup: self.group.convex_subgroup(k)? })
    }

    /// The prime as an ideal; `None` for the zero prime.
    pub fn prime_ideal(&self, p: ValPrime) -> Option<ValIdeal> {
        let lead = self.rank() - p.subgroup.k;
        (lead > 0).then(|| self.make(HullPoint::zero(self.rank()), true, lead))
    }

    /// `V_P` viewed as a fractional ideal of `V`; undefined for the zero prime.
    pub fn localization_ideal(&self, p: ValPrime) -> Result<ValIdeal> {
        let lead = self.rank() - p.subgroup.k;
        if lead == 0 {
            return Err(Error::WholeField);
        }
        Ok(self.make(HullPoint::zero(self.rank()), false, lead))
    }

    /// `V/P`, with value group `H`. The maximal ideal is rejected; the zero
    /// prime gives `V` back.
    pub fn quotient_by_prime(&self, p: ValPrime) -> Result<ValuationDomain> {
        if p.subgroup.k == 0 {
            return Err(Error::Containment("quotient by the maximal ideal is a field".into()));
        }
        let h = self.group.subgroup_group(p.subgroup)?.expect("nonzero subgroup");
        Ok(ValuationDomain::new(h))
    }

    /// `I/P` as a fractional ideal of `V/P`, for `P ⊊ I ⊆ V_P`.
    pub fn push_ideal(&self, i: &ValIdeal, p: ValPrime) -> Result<ValIdeal> {
        self.check(i)?;
        let quotient = self.quotient_by_prime(p)?;
        let lead = self.rank() - p.subgroup.k;
        let c = &i.cut;
        if c.depth() <= lead || c.point().coords()[..lead].iter().any(|x| !x.is_zero()) {
            return Err(Error::Containment(format!("{i} does not lie strictly between P and V_P")));
        }
        let point = HullPoint::new(c.point().coords()[lead..].to_vec());
        quotient.ideal_with_depth(point, c.is_open(), c.depth() - lead)
    }

    /// `V_P`, with value group `Γ/H`.
    pub fn localize_at_prime(&self, p: ValPrime) -> Result<ValuationDomain> {
        match self.group.quotient_group(p.subgroup)? {
            Some(g) => Ok(ValuationDomain::new(g)),
            None => Err(Error::WholeField),
        }
    }

    pub fn maximal_ideal_profile(&self) -> MaximalIdealProfile {
        let principal = self.group.has_min_positive().is_some();
        MaximalIdealProfile {
            principal,
            idempotent: !principal,
            branched: true,
            prime_directly_below: Some(ValPrime { subgroup: ConvexSubgroup { k: 1 } }),
        }
    }
}

impl fmt::Display for ValuationDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V[{}]", self.group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn hp(c: &[(i64, i64)]) -> HullPoint {
        HullPoint::new(c.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    fn dom(s: &str) -> ValuationDomain {
        ValuationDomain::new(OrderedGroup::parse(s).unwrap())
    }

    #[test]
    fn products() {
        let v = dom("Z[1/2]");
        let m = v.maximal_ideal();
        assert_eq!(v.multiply(&m, &m).unwrap(), m);
        let z = dom("Z");
        let p = z.multiply(&z.ideal(hp(&[(1, 1)]), false).unwrap(), &z.ideal(hp(&[(2, 1)]), false).unwrap());
        assert_eq!(p.unwrap(), z.ideal(hp(&[(3, 1)]), false).unwrap());
        let third = v.ideal(hp(&[(1, 3)]), false).unwrap();
        let cube = v.multiply(&v.multiply(&third, &third).unwrap(), &third).unwrap();
        // 1/3 is not a value, so the infima are never attained: the cube is xM
        assert_eq!(cube, v.ideal(hp(&[(1, 1)]), true).unwrap());
        assert!(!v.is_principal(&cube));
        assert_eq!(v.v_closure(&cube).unwrap(), v.ideal(hp(&[(1, 1)]), false).unwrap());
        // over Z the maximal ideal is principal: M·M = t²V
        assert_eq!(z.multiply(&z.maximal_ideal(), &z.maximal_ideal()).unwrap(), z.ideal(hp(&[(2, 1)]), false).unwrap());
    }

    #[test]
    fn colons() {
        let v = dom("Z[1/2]");
        let third = v.ideal(hp(&[(1, 3)]), false).unwrap();
        assert_eq!(v.colon(&v.unit(), &third).unwrap(), v.ideal(hp(&[(-1, 3)]), false).unwrap());
        assert_eq!(v.colon(&v.unit(), &v.maximal_ideal()).unwrap(), v.unit());
        let x = v.ideal(hp(&[(5, 8)]), false).unwrap();
        assert_eq!(v.colon(&v.unit(), &x).unwrap(), v.ideal(hp(&[(-5, 8)]), false).unwrap());
        // (M : M) = V, (V : V) = V
        assert_eq!(v.colon(&v.maximal_ideal(), &v.maximal_ideal()).unwrap(), v.unit());
    }

    #[test]
    fn closures_and_predicates() {
        let v = dom("Z[1/2]");
        let third = v.ideal(hp(&[(1, 3)]), false).unwrap();
        assert_eq!(v.v_closure(&third).unwrap(), third);
        assert_eq!(v.v_closure(&v.maximal_ideal()).unwrap(), v.unit());
        assert!(!v.is_principal(&third));
        assert!(v.is_divisorial(&third).unwrap());
        assert!(v.is_v_invertible(&third).unwrap());
        assert!(!v.is_invertible(&third).unwrap());

        let z = dom("Z");
        let t = z.ideal(hp(&[(1, 1)]), false).unwrap();
        assert!(z.is_principal(&t) && z.is_divisorial(&t).unwrap() && z.is_v_invertible(&t).unwrap());

        let q = dom("Q");
        let m = q.maximal_ideal();
        assert!(!q.is_principal(&m));
        assert!(!q.is_divisorial(&m).unwrap());
        assert!(q.is_v_invertible(&m).unwrap());
    }

    #[test]
    fn phi_values() {
        let v = dom("Z[1/2]");
        assert_eq!(v.phi(&v.ideal(hp(&[(1, 3)]), false).unwrap()).unwrap(), frac(1, 3));
        assert_eq!(v.phi(&v.maximal_ideal()).unwrap(), frac(0, 1));
        let x = v.group().element(vec![frac(-3, 4)]).unwrap();
        assert_eq!(v.phi(&v.principal(&x).unwrap()).unwrap(), frac(-3, 4));
        let lex = dom("lex(Z, Q)");
        assert!(matches!(lex.phi(&lex.unit()), Err(Error::RankOneRequired(2))));
    }

    #[test]
    fn quotient_and_push() {
        let v = dom("lex(Z, Z[1/2])");
        let p = v.prime(1).unwrap();
        let i = v.ideal(hp(&[(0, 1), (1, 3)]), false).unwrap();
        let vp = v.quotient_by_prime(p).unwrap();
        assert_eq!(vp.group(), &OrderedGroup::Localized(2));
        assert_eq!(v.push_ideal(&i, p).unwrap(), vp.ideal(hp(&[(1, 3)]), false).unwrap());
        assert_eq!(v.push_ideal(&v.maximal_ideal(), p).unwrap(), vp.maximal_ideal());
        // P itself does not properly contain P
        let pi = v.prime_ideal(p).unwrap();
        assert!(matches!(v.push_ideal(&pi, p), Err(Error::Containment(_))));
        let far = v.ideal(hp(&[(1, 1), (0, 1)]), false).unwrap();
        assert!(v.push_ideal(&far, p).is_err());
        assert!(v.quotient_by_prime(v.prime(0).unwrap()).is_err());
        // the zero prime of a rank-one domain gives V back
        let r1 = dom("Q");
        assert_eq!(r1.quotient_by_prime(r1.prime(1).unwrap()).unwrap(), r1);
    }

    #[test]
    fn localizations() {
        let v = dom("lex(Q, Z)");
        assert_eq!(v.localize_at_prime(v.prime(1).unwrap()).unwrap().group(), &OrderedGroup::Rationals);
        let w = dom("lex(Z, Z)");
        assert_eq!(w.localize_at_prime(w.prime(1).unwrap()).unwrap().group(), &OrderedGroup::Integers);
        assert!(w.localize_at_prime(w.prime(2).unwrap()).is_err());
    }

    #[test]
    fn profiles() {
        let p = dom("lex(Q, Z)").maximal_ideal_profile();
        assert!(p.principal && !p.idempotent && p.branched);
        assert_eq!(p.prime_directly_below.unwrap().subgroup.k, 1);
        let p = dom("lex(Z, Z[1/2])").maximal_ideal_profile();
        assert!(!p.principal && p.idempotent && p.branched);
        let p = dom("Z").maximal_ideal_profile();
        assert!(p.principal);
        // below M of a DVR is the zero prime
        let d = dom("Z");
        assert!(d.prime_ideal(p.prime_directly_below.unwrap()).is_none());
    }

    #[test]
    fn chain_order() {
        let v = dom("lex(Z, Z[1/2])");
        let p = v.prime_ideal(v.prime(1).unwrap()).unwrap();
        let m = v.maximal_ideal();
        let i = v.ideal(hp(&[(0, 1), (1, 3)]), false).unwrap();
        assert!(v.is_subset(&p, &i).unwrap());
        assert!(v.is_subset(&i, &m).unwrap());
        assert!(v.is_subset(&m, &v.unit()).unwrap());
        assert!(!v.is_subset(&v.unit(), &m).unwrap());
        assert_eq!(v.intersect(&i, &m).unwrap(), i);
        assert_eq!(v.sum(&i, &p).unwrap(), i);
    }

    #[test]
    fn depth_truncated_ideals_are_divisorial_but_not_v_invertible() {
        let v = dom("lex(Z, Z[1/2])");
        let p = v.prime_ideal(v.prime(1).unwrap()).unwrap();
        assert!(v.is_divisorial(&p).unwrap());
        assert!(!v.is_v_invertible(&p).unwrap());
        let w = dom("lex(Q, Z)");
        let q = w.prime_ideal(w.prime(1).unwrap()).unwrap();
        assert!(q.cut().is_open());
        assert!(w.is_divisorial(&q).unwrap());
        assert_eq!(w.colon(&w.unit(), &q).unwrap(), w.localization_ideal(w.prime(1).unwrap()).unwrap());
    }
}
