//! Fractional ideals of a quadratic order as lattices in `(u, v)`
//! coordinates, `z = u + vω`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::field::QuadElem;
use super::lattice::{Lattice, Vec2};
use super::order::QuadraticOrder;

/// `(1/d)·(aℤ + (b + cω)ℤ)`, canonical per fractional ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeIdeal {
    order: QuadraticOrder,
    lattice: Lattice,
}

impl LatticeIdeal {
    fn from_lattice(order: &QuadraticOrder, lattice: Lattice) -> LatticeIdeal {
        LatticeIdeal { order: order.clone(), lattice }
    }

    /// The `O`-module generated by `gens`.
    pub fn from_generators(order: &QuadraticOrder, gens: &[QuadElem]) -> Result<LatticeIdeal> {
        let w = order.omega();
        let mut rows = Vec::with_capacity(2 * gens.len());
        for g in gens {
            if g.radicand() != order.radicand() {
                return Err(Error::IncompatibleOrders(format!("generator {g} is not in the field of {order}")));
            }
            rows.push(order.coords(g));
            rows.push(order.coords(&(g * &w)));
        }
        let lattice = Lattice::from_rows(&rows).ok_or(Error::ZeroModule)?;
        Ok(Self::from_lattice(order, lattice))
    }

    /// From Hermite data; fails unless the lattice is an `O`-module.
    pub fn from_hnf(order: &QuadraticOrder, den: i64, a: i64, b: i64, c: i64) -> Result<LatticeIdeal> {
        let lattice = Lattice::from_hnf(den.into(), a.into(), b.into(), c.into())
            .ok_or_else(|| Error::NotAnIdeal("den, a and c must be positive".into()))?;
        let i = Self::from_lattice(order, lattice);
        if !i.is_module() {
            return Err(Error::NotAnIdeal(format!("lattice {i} is not closed under multiplication by ω")));
        }
        Ok(i)
    }

    pub fn unit(order: &QuadraticOrder) -> LatticeIdeal {
        Self::principal(order, &order.one())
    }

    pub fn principal(order: &QuadraticOrder, x: &QuadElem) -> LatticeIdeal {
        Self::from_generators(order, std::slice::from_ref(x)).expect("principal ideal of a nonzero element")
    }

    fn is_module(&self) -> bool {
        let w = self.order.omega();
        self.basis().iter().all(|g| self.contains(&(g * &w)))
    }

    pub fn order(&self) -> &QuadraticOrder {
        &self.order
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Hermite data `(d, a, b, c)`.
    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        let l = &self.lattice;
        (l.den(), l.a(), l.b(), l.c())
    }

    /// `[a/d, (b + cω)/d]`.
    pub fn basis(&self) -> [QuadElem; 2] {
        let [r0, r1] = self.lattice.rows();
        [self.order.from_coords(&r0), self.order.from_coords(&r1)]
    }

    pub fn contains(&self, z: &QuadElem) -> bool {
        self.lattice.contains(&self.order.coords(z))
    }

    pub fn contains_ideal(&self, other: &LatticeIdeal) -> Result<bool> {
        self.same_order(other)?;
        Ok(self.lattice.contains_lattice(&other.lattice))
    }

    fn same_order(&self, other: &LatticeIdeal) -> Result<()> {
        if self.order != other.order {
            return Err(Error::IncompatibleOrders(format!("{} vs {}", self.order, other.order)));
        }
        Ok(())
    }

    /// `[O : I]` extended multiplicatively to fractional ideals.
    pub fn norm(&self) -> Rational {
        self.lattice.det()
    }

    pub fn is_integral(&self) -> bool {
        self.lattice.den().is_one()
    }

    pub fn multiply(&self, other: &LatticeIdeal) -> Result<LatticeIdeal> {
        self.same_order(other)?;
        let mut rows: Vec<Vec2> = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                rows.push(self.order.coords(&(&x * &y)));
            }
        }
        let lattice = Lattice::from_rows(&rows).expect("product of nonzero ideals is nonzero");
        Ok(Self::from_lattice(&self.order, lattice))
    }

    pub fn scale(&self, x: &QuadElem) -> Result<LatticeIdeal> {
        if x.is_zero() {
            return Err(Error::ZeroModule);
        }
        let rows: Vec<Vec2> = self.basis().iter().map(|g| self.order.coords(&(g * x))).collect();
        Ok(Self::from_lattice(&self.order, Lattice::from_rows(&rows).expect("nonzero scaling")))
    }

    pub fn sum(&self, other: &LatticeIdeal) -> Result<LatticeIdeal> {
        self.same_order(other)?;
        Ok(Self::from_lattice(&self.order, self.lattice.sum(&other.lattice)))
    }

    pub fn intersect(&self, other: &LatticeIdeal) -> Result<LatticeIdeal> {
        self.same_order(other)?;
        Ok(Self::from_lattice(&self.order, self.lattice.intersect(&other.lattice)))
    }

    /// `(I : J) = ⋂_j j⁻¹I` over a basis of `J`.
    pub fn colon(&self, j: &LatticeIdeal) -> Result<LatticeIdeal> {
        self.same_order(j)?;
        let mut acc: Option<Lattice> = None;
        for g in j.basis() {
            let part = self.scale(&g.inv().expect("basis elements are nonzero"))?.lattice;
            acc = Some(match acc {
                None => part,
                Some(l) => l.intersect(&part),
            });
        }
        Ok(Self::from_lattice(&self.order, acc.expect("two basis elements")))
    }

    /// `(O : I)`.
    pub fn invert(&self) -> LatticeIdeal {
        Self::unit(&self.order).colon(self).expect("same order")
    }

    /// `(O : (O : I))`.
    pub fn v_closure(&self) -> LatticeIdeal {
        self.invert().invert()
    }

    pub fn is_divisorial(&self) -> bool {
        self.v_closure() == *self
    }

    pub fn is_invertible(&self) -> bool {
        self.multiply(&self.invert()).expect("same order") == Self::unit(&self.order)
    }

    pub fn is_v_invertible(&self) -> bool {
        self.multiply(&self.invert()).expect("same order").v_closure() == Self::unit(&self.order)
    }

    /// `I·O'` for an overorder `O'` of the same field.
    pub fn extend_to_order(&self, target: &QuadraticOrder) -> Result<LatticeIdeal> {
        if !self.order.is_suborder_of(target) {
            return Err(Error::IncompatibleOrders(format!("{} is not contained in {target}", self.order)));
        }
        LatticeIdeal::from_generators(target, &self.basis())
    }

    /// The same set of field elements viewed as a module over a suborder.
    pub fn restrict_to_order(&self, sub: &QuadraticOrder) -> Result<LatticeIdeal> {
        if !sub.is_suborder_of(&self.order) {
            return Err(Error::IncompatibleOrders(format!("{sub} is not contained in {}", self.order)));
        }
        let rows: Vec<Vec2> = self.basis().iter().map(|g| sub.coords(g)).collect();
        Ok(Self::from_lattice(sub, Lattice::from_rows(&rows).expect("full rank")))
    }

    /// The ring of multipliers `(I : I)`, the largest order over which `I`
    /// is a module.
    pub fn multiplier_order(&self) -> QuadraticOrder {
        let ring = self.colon(self).expect("same order");
        // [(I:I) : O] = 1/det, and conductors divide accordingly
        let index = ring.norm().recip();
        let f = Rational::from_integer(self.order.conductor().into()) / index;
        let f: i64 = f.to_integer().try_into().expect("conductor fits");
        QuadraticOrder::new(self.order.fundamental_disc() * f * f).expect("valid overorder")
    }

    /// `x` with `I = xO`, if one exists. Exact for imaginary orders; for real
    /// orders the search is bounded and a `None` is inconclusive.
    pub fn principal_generator(&self) -> Option<QuadElem> {
        super::enumerate::principal_generator(self)
    }

    pub fn is_principal(&self) -> bool {
        self.principal_generator().is_some()
    }
}

impl fmt::Display for LatticeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y] = self.basis();
        write!(f, "({x}, {y})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (QuadraticOrder, LatticeIdeal) {
        let o = QuadraticOrder::new(-12).unwrap();
        let p = LatticeIdeal::from_generators(&o, &[o.parse_elem("2").unwrap(), o.parse_elem("1+sqrt(-3)").unwrap()]).unwrap();
        (o, p)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn conductor_ideal_hnf() {
        let (_, p) = setup();
        assert_eq!(p.hnf(), (&big(1), &big(2), &big(1), &big(1)));
        assert_eq!(p.norm(), Rational::from_integer(big(2)));
    }

    #[test]
    fn products_and_colons() {
        let (o, p) = setup();
        let two = o.parse_elem("2").unwrap();
        let half = o.parse_elem("1/2").unwrap();
        assert_eq!(p.multiply(&p).unwrap(), p.scale(&two).unwrap());
        assert_eq!(p.invert(), p.scale(&half).unwrap());
        assert_eq!(p.v_closure(), p);
        assert!(!p.is_invertible() && !p.is_v_invertible());
        let four = LatticeIdeal::principal(&o, &o.parse_elem("4").unwrap());
        assert_ne!(four, p.scale(&two).unwrap());
        assert_eq!(four.v_closure(), four);
    }

    #[test]
    fn extension_to_maximal_order() {
        let (o, p) = setup();
        let om = o.maximal_order();
        let two = LatticeIdeal::principal(&om, &om.parse_elem("2").unwrap());
        assert_eq!(p.extend_to_order(&om).unwrap(), two);
        assert_eq!(LatticeIdeal::unit(&o).extend_to_order(&om).unwrap(), LatticeIdeal::unit(&om));
        assert!(LatticeIdeal::unit(&om).extend_to_order(&o).is_err());
        assert_eq!(p.multiplier_order(), om);
        assert_eq!(LatticeIdeal::unit(&o).multiplier_order(), o);
        let back = two.restrict_to_order(&o).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn module_condition_is_checked() {
        let (o, _) = setup();
        assert!(LatticeIdeal::from_hnf(&o, 1, 2, 1, 1).is_ok());
        assert!(LatticeIdeal::from_hnf(&o, 1, 2, 0, 1).is_err());
        assert!(LatticeIdeal::from_hnf(&o, 1, 3, 1, 1).is_err());
    }
}
