//! Quadratic orders `O = ℤ[ω]`, `ω = (Δ + √Δ)/2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::field::QuadElem;
use super::lattice::Vec2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticOrder {
    disc: i64,
    fundamental: i64,
    conductor: i64,
    /// squarefree `m` with `K = ℚ(√m)`
    radicand: i64,
    /// `√Δ = root_scale · √m`
    root_scale: i64,
}

/// Writes `n = k²·s` with `s` squarefree (sign kept in `s`).
fn square_split(n: i64) -> (i64, i64) {
    let mut s = n;
    let mut k = 1;
    let mut p = 2;
    while p * p <= s.abs() {
        while s % (p * p) == 0 {
            s /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, s)
}

impl QuadraticOrder {
    pub fn new(disc: i64) -> Result<QuadraticOrder> {
        let bad = |reason: &str| Error::InvalidDiscriminant { disc, reason: reason.to_string() };
        if disc.rem_euclid(4) > 1 {
            return Err(bad("not congruent to 0 or 1 mod 4"));
        }
        if disc.abs() > 1_000_000_000 {
            return Err(bad("too large"));
        }
        let (k, m) = square_split(disc);
        if m == 1 || disc == 0 {
            return Err(bad("perfect square"));
        }
        let (fundamental, conductor, g) = if m.rem_euclid(4) == 1 { (m, k, 1) } else { (4 * m, k / 2, 2) };
        Ok(QuadraticOrder { disc, fundamental, conductor, radicand: m, root_scale: conductor * g })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }
    pub fn fundamental_disc(&self) -> i64 {
        self.fundamental
    }
    pub fn conductor(&self) -> i64 {
        self.conductor
    }
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn is_maximal(&self) -> bool {
        self.conductor == 1
    }

    pub fn maximal_order(&self) -> QuadraticOrder {
        QuadraticOrder::new(self.fundamental).expect("fundamental discriminant is valid")
    }

    /// `self ⊆ other`: same field and the conductor of `other` divides ours.
    pub fn is_suborder_of(&self, other: &QuadraticOrder) -> bool {
        self.fundamental == other.fundamental && self.conductor % other.conductor == 0
    }

    pub fn omega(&self) -> QuadElem {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        QuadElem::new(
            self.radicand,
            Rational::from_integer(self.disc.into()) * &half,
            Rational::from_integer(self.root_scale.into()) * half,
        )
    }

    pub fn elem(&self, x: Rational, y: Rational) -> QuadElem {
        QuadElem::new(self.radicand, x, y)
    }

    pub fn parse_elem(&self, s: &str) -> Result<QuadElem> {
        QuadElem::parse(self.radicand, s)
    }

    /// Coordinates `(u, v)` with `z = u + vω`.
    pub fn coords(&self, z: &QuadElem) -> Vec2 {
        assert_eq!(z.radicand(), self.radicand, "element of another field");
        let v = z.y() * Rational::new(BigInt::from(2), BigInt::from(self.root_scale));
        let u = z.x() - &v * Rational::new(BigInt::from(self.disc), BigInt::from(2));
        [u, v]
    }

    pub fn from_coords(&self, c: &Vec2) -> QuadElem {
        &QuadElem::rational(self.radicand, c[0].clone()) + &self.omega().scale(&c[1])
    }

    pub fn contains(&self, z: &QuadElem) -> bool {
        self.coords(z).iter().all(|q| q.is_integer())
    }

    /// Coefficients of the minimal polynomial `X² − ΔX + (Δ² − Δ)/4` of `ω`.
    pub fn omega_min_poly(&self) -> (BigInt, BigInt) {
        let d = BigInt::from(self.disc);
        let c = (&d * &d - &d) / BigInt::from(4);
        (-d, c)
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem::zero(self.radicand)
    }

    pub fn one(&self) -> QuadElem {
        QuadElem::one(self.radicand)
    }
}

impl fmt::Display for QuadraticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.disc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn discriminant_data() {
        let o = QuadraticOrder::new(-12).unwrap();
        assert_eq!((o.fundamental_disc(), o.conductor(), o.radicand()), (-3, 2, -3));
        assert!(!o.is_maximal());
        let o = QuadraticOrder::new(-20).unwrap();
        assert_eq!((o.fundamental_disc(), o.conductor(), o.radicand()), (-20, 1, -5));
        let o = QuadraticOrder::new(40).unwrap();
        assert_eq!((o.fundamental_disc(), o.conductor(), o.radicand()), (40, 1, 10));
        let o = QuadraticOrder::new(-4 * 9).unwrap();
        assert_eq!((o.fundamental_disc(), o.conductor()), (-4, 3));
        assert!(QuadraticOrder::new(-1).is_err());
        assert!(QuadraticOrder::new(16).is_err());
        assert!(QuadraticOrder::new(2).is_err());
    }

    #[test]
    fn omega_satisfies_its_polynomial() {
        for d in [-12, -20, -4, -3, 40, 5, -108] {
            let o = QuadraticOrder::new(d).unwrap();
            let w = o.omega();
            let (b, c) = o.omega_min_poly();
            let val = &(&w * &w) + &(&w.scale(&Rational::from_integer(b)) + &QuadElem::rational(o.radicand(), Rational::from_integer(c)));
            assert!(val.is_zero(), "disc {d}");
            assert_eq!(o.coords(&w), [int(0), int(1)]);
            assert_eq!(o.from_coords(&[int(3), int(-2)]), &QuadElem::rational(o.radicand(), int(3)) - &w.scale(&int(2)));
        }
    }

    #[test]
    fn membership() {
        let o = QuadraticOrder::new(-12).unwrap();
        assert!(o.contains(&o.parse_elem("1+sqrt(-3)").unwrap()));
        assert!(!o.contains(&o.parse_elem("1/2+1/2*sqrt(-3)").unwrap()));
        assert!(o.maximal_order().contains(&o.parse_elem("1/2+1/2*sqrt(-3)").unwrap()));
        assert!(o.is_suborder_of(&o.maximal_order()));
        assert!(!o.maximal_order().is_suborder_of(&o));
    }
}
