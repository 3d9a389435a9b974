//! A uniform face over the two backends, used by the star, content and
//! class-group layers.
//!
//! Lattice values are always expressed over the base order, even when they
//! happen to be modules over a larger order (semistar values such as `I·O'`).

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::quadratic::{LatticeIdeal, QuadElem, QuadraticOrder};
use crate::valuation::{ValIdeal, ValuationDomain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Valuation(ValuationDomain),
    Order(QuadraticOrder),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ideal {
    Val(ValIdeal),
    Lat(LatticeIdeal),
}

/// A nonzero field element; on valuation backends only its value matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Val(GroupElement),
    Quad(QuadElem),
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Val(i) => i.fmt(f),
            Ideal::Lat(i) => {
                let ring = i.multiplier_order();
                if ring == *i.order() {
                    i.fmt(f)
                } else {
                    write!(f, "{i} over {ring}")
                }
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Val(g) => write!(f, "t^{g}"),
            Elem::Quad(x) => x.fmt(f),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Valuation(v) => v.fmt(f),
            Domain::Order(o) => o.fmt(f),
        }
    }
}

impl Domain {
    pub fn is_valuation(&self) -> bool {
        matches!(self, Domain::Valuation(_))
    }

    pub fn unit(&self) -> Ideal {
        match self {
            Domain::Valuation(v) => Ideal::Val(v.unit()),
            Domain::Order(o) => Ideal::Lat(LatticeIdeal::unit(o)),
        }
    }

    /// Rejects ideals from another domain; lattices over an overorder are
    /// re-expressed over the base order.
    pub fn adopt(&self, i: &Ideal) -> Result<Ideal> {
        match (self, i) {
            (Domain::Valuation(v), Ideal::Val(x)) if x.group() == v.group() => Ok(i.clone()),
            (Domain::Order(o), Ideal::Lat(x)) if x.order() == o => Ok(i.clone()),
            (Domain::Order(o), Ideal::Lat(x)) => Ok(Ideal::Lat(x.restrict_to_order(o)?)),
            _ => Err(Error::DomainMismatch),
        }
    }

    fn pair<'a>(&self, a: &'a Ideal, b: &'a Ideal) -> Result<Pair<'a>> {
        match (self, a, b) {
            (Domain::Valuation(v), Ideal::Val(x), Ideal::Val(y)) if x.group() == v.group() && y.group() == v.group() => {
                Ok(Pair::Val(x, y))
            }
            (Domain::Order(o), Ideal::Lat(x), Ideal::Lat(y)) if x.order() == o && y.order() == o => Ok(Pair::Lat(x, y)),
            _ => Err(Error::DomainMismatch),
        }
    }

    fn val(&self) -> Option<&ValuationDomain> {
        match self {
            Domain::Valuation(v) => Some(v),
            Domain::Order(_) => None,
        }
    }

    pub fn multiply(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        match self.pair(a, b)? {
            Pair::Val(x, y) => Ok(Ideal::Val(self.val().unwrap().multiply(x, y)?)),
            Pair::Lat(x, y) => Ok(Ideal::Lat(x.multiply(y)?)),
        }
    }

    /// `(a : b)`.
    pub fn colon(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        match self.pair(a, b)? {
            Pair::Val(x, y) => Ok(Ideal::Val(self.val().unwrap().colon(x, y)?)),
            Pair::Lat(x, y) => Ok(Ideal::Lat(x.colon(y)?)),
        }
    }

    pub fn sum(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        match self.pair(a, b)? {
            Pair::Val(x, y) => Ok(Ideal::Val(self.val().unwrap().sum(x, y)?)),
            Pair::Lat(x, y) => Ok(Ideal::Lat(x.sum(y)?)),
        }
    }

    pub fn intersect(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        match self.pair(a, b)? {
            Pair::Val(x, y) => Ok(Ideal::Val(self.val().unwrap().intersect(x, y)?)),
            Pair::Lat(x, y) => Ok(Ideal::Lat(x.intersect(y)?)),
        }
    }

    /// `a ⊆ b`.
    pub fn is_subset(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        match self.pair(a, b)? {
            Pair::Val(x, y) => self.val().unwrap().is_subset(x, y),
            Pair::Lat(x, y) => y.contains_ideal(x),
        }
    }

    pub fn v_closure(&self, a: &Ideal) -> Result<Ideal> {
        let d = self.unit();
        let inv = self.colon(&d, a)?;
        self.colon(&d, &inv)
    }

    pub fn principal(&self, x: &Elem) -> Result<Ideal> {
        match (self, x) {
            (Domain::Valuation(v), Elem::Val(g)) => Ok(Ideal::Val(v.principal(g)?)),
            (Domain::Order(o), Elem::Quad(q)) => {
                if q.is_zero() {
                    return Err(Error::ZeroModule);
                }
                if q.radicand() != o.radicand() {
                    return Err(Error::DomainMismatch);
                }
                Ok(Ideal::Lat(LatticeIdeal::principal(o, q)))
            }
            _ => Err(Error::DomainMismatch),
        }
    }

    /// `x·a`.
    pub fn scale(&self, a: &Ideal, x: &Elem) -> Result<Ideal> {
        let p = self.principal(x)?;
        self.multiply(a, &p)
    }

    pub fn is_principal(&self, a: &Ideal) -> Result<bool> {
        match (self, self.adopt(a)?) {
            (Domain::Valuation(v), Ideal::Val(x)) => Ok(v.is_principal(&x)),
            (Domain::Order(_), Ideal::Lat(x)) => Ok(x.is_principal()),
            _ => Err(Error::DomainMismatch),
        }
    }

    /// Finitely generated as a module over the base domain. Every lattice is;
    /// a valuation ideal is iff it is principal.
    pub fn is_finitely_generated(&self, a: &Ideal) -> Result<bool> {
        match self {
            Domain::Valuation(_) => self.is_principal(a),
            Domain::Order(_) => Ok(true),
        }
    }

    /// `a ⊆ D`.
    pub fn is_integral(&self, a: &Ideal) -> Result<bool> {
        self.is_subset(a, &self.unit())
    }

    pub fn is_invertible(&self, a: &Ideal) -> Result<bool> {
        let inv = self.colon(&self.unit(), a)?;
        Ok(self.multiply(a, &inv)? == self.unit())
    }

    pub fn is_v_invertible(&self, a: &Ideal) -> Result<bool> {
        let inv = self.colon(&self.unit(), a)?;
        Ok(self.v_closure(&self.multiply(a, &inv)?)? == self.unit())
    }
}

enum Pair<'a> {
    Val(&'a ValIdeal, &'a ValIdeal),
    Lat(&'a LatticeIdeal, &'a LatticeIdeal),
}
