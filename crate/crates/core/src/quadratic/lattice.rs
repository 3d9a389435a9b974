//! Full-rank lattices in `Q²` in Hermite normal form.
//!
//! A lattice is stored as `(1/den) · (a·e₁ ℤ + (b·e₁ + c·e₂) ℤ)` with
//! `a, c > 0`, `0 ≤ b < a` and `gcd(den, a, b, c) = 1`, which is unique per
//! lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type Vec2 = [Rational; 2];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    den: BigInt,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Hermite form `(a, b, c)` of the integer row span; `None` below full rank.
pub(crate) fn hnf_rows(rows: &[[BigInt; 2]]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut g = BigInt::zero();
    for [u, v] in rows {
        if v.is_zero() {
            g = g.gcd(u);
            continue;
        }
        match pivot.take() {
            None => pivot = Some([u.clone(), v.clone()]),
            Some([pu, pv]) => {
                let e = pv.extended_gcd(v);
                let h = e.gcd;
                // unimodular: [[x, y], [v/h, -pv/h]] has determinant -1
                let nu = &e.x * &pu + &e.y * u;
                let nv = &e.x * &pv + &e.y * v;
                let zu = (v / &h) * &pu - (&pv / &h) * u;
                g = g.gcd(&zu);
                pivot = Some([nu, nv]);
            }
        }
    }
    let [pu, pv] = pivot?;
    if g.is_zero() {
        return None;
    }
    let (pu, pv) = if pv.is_negative() { (-pu, -pv) } else { (pu, pv) };
    let a = g.abs();
    let b = pu.mod_floor(&a);
    Some((a, b, pv))
}

impl Lattice {
    /// The lattice spanned by `rows`; `None` when they do not span `Q²`.
    pub fn from_rows(rows: &[Vec2]) -> Option<Lattice> {
        let mut den = BigInt::one();
        for r in rows {
            for x in r {
                den = den.lcm(x.denom());
            }
        }
        let int_rows: Vec<[BigInt; 2]> = rows
            .iter()
            .map(|r| {
                let f = |x: &Rational| (x * Rational::from_integer(den.clone())).to_integer();
                [f(&r[0]), f(&r[1])]
            })
            .collect();
        let (a, b, c) = hnf_rows(&int_rows)?;
        Some(Self::reduce(den, a, b, c))
    }

    fn reduce(den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Lattice {
        let g = den.gcd(&a).gcd(&b).gcd(&c);
        Lattice { den: den / &g, a: a / &g, b: b / &g, c: c / &g }
    }

    /// Builds from Hermite data, normalizing `b` and the common content.
    pub fn from_hnf(den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Option<Lattice> {
        if !den.is_positive() || !a.is_positive() || !c.is_positive() {
            return None;
        }
        let b = b.mod_floor(&a);
        Some(Self::reduce(den, a, b, c))
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }
    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn rows(&self) -> [Vec2; 2] {
        let q = |n: &BigInt| Rational::new(n.clone(), self.den.clone());
        [[q(&self.a), Rational::zero()], [q(&self.b), q(&self.c)]]
    }

    /// Covolume `ac / den²`.
    pub fn det(&self) -> Rational {
        Rational::new(&self.a * &self.c, &self.den * &self.den)
    }

    pub fn contains(&self, x: &Vec2) -> bool {
        // x = s·(a,0)/den + t·(b,c)/den
        let t = &x[1] * Rational::new(self.den.clone(), self.c.clone());
        if !t.is_integer() {
            return false;
        }
        let rest = &x[0] * Rational::from_integer(self.den.clone()) - &t * Rational::from_integer(self.b.clone());
        let s = rest / Rational::from_integer(self.a.clone());
        s.is_integer()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows().iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let rows: Vec<Vec2> = self.rows().into_iter().chain(other.rows()).collect();
        Lattice::from_rows(&rows).expect("sum of full-rank lattices is full rank")
    }

    /// `{y : ⟨x, y⟩ ∈ ℤ for all x in the lattice}`.
    pub fn dual(&self) -> Lattice {
        let [[r00, r01], [r10, r11]] = self.rows();
        let det = &r00 * &r11 - &r01 * &r10;
        // rows of (B^{-1})^T
        let rows = [
            [&r11 / &det, -(&r10 / &det)],
            [-(&r01 / &det), &r00 / &det],
        ];
        Lattice::from_rows(&rows).expect("dual of a full-rank lattice is full rank")
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    pub fn scale(&self, q: &Rational) -> Option<Lattice> {
        let rows: Vec<Vec2> = self.rows().iter().map(|r| [&r[0] * q, &r[1] * q]).collect();
        Lattice::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn row(a: (i64, i64), b: (i64, i64)) -> Vec2 {
        [frac(a.0, a.1), frac(b.0, b.1)]
    }

    #[test]
    fn hnf_of_standard_examples() {
        let l = Lattice::from_rows(&[row((2, 1), (0, 1)), row((1, 1), (1, 1))]).unwrap();
        assert_eq!((l.a(), l.b(), l.c(), l.den()), (&2.into(), &1.into(), &1.into(), &1.into()));
        let l = Lattice::from_rows(&[row((4, 1), (6, 1)), row((2, 1), (2, 1)), row((0, 1), (10, 1))]).unwrap();
        assert!(l.contains(&[int(4), int(6)]) && l.contains(&[int(0), int(10)]));
        assert_eq!(l.det(), Rational::from_integer(4.into()));
        assert!(Lattice::from_rows(&[row((1, 1), (2, 1)), row((2, 1), (4, 1))]).is_none());
    }

    #[test]
    fn fractional_content_is_reduced() {
        let l = Lattice::from_rows(&[row((1, 2), (0, 1)), row((0, 1), (1, 2))]).unwrap();
        assert_eq!((l.den(), l.a(), l.b(), l.c()), (&2.into(), &1.into(), &0.into(), &1.into()));
        let l = Lattice::from_rows(&[row((4, 6), (0, 1)), row((0, 1), (2, 3))]).unwrap();
        assert_eq!((l.den(), l.a(), l.c()), (&3.into(), &2.into(), &2.into()));
    }

    #[test]
    fn dual_and_intersection() {
        let z2 = Lattice::from_rows(&[row((1, 1), (0, 1)), row((0, 1), (1, 1))]).unwrap();
        assert_eq!(z2.dual(), z2);
        let a = Lattice::from_rows(&[row((2, 1), (0, 1)), row((0, 1), (1, 1))]).unwrap();
        let b = Lattice::from_rows(&[row((3, 1), (0, 1)), row((0, 1), (1, 1))]).unwrap();
        let i = a.intersect(&b);
        assert_eq!(i, Lattice::from_rows(&[row((6, 1), (0, 1)), row((0, 1), (1, 1))]).unwrap());
        assert_eq!(a.sum(&b), z2);
        assert!(z2.contains_lattice(&i) && !i.contains_lattice(&z2));
    }
}
