//! Naive lattice computations in a quadratic order `ℤ[ω]`, `ω = (Δ + √Δ)/2`.
//!
//! Elements are pairs `(u, v)` meaning `u + vω`. Lattices are recovered from
//! arbitrary spanning sets through 2×2 minors, and colon ideals are checked
//! rather than computed: containment plus maximality among superlattices of
//! prime index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type Elem = (Q, Q);

/// `(den, a, b, c)` for `(1/den)(aℤ + (b + cω)ℤ)` with `c | a`, `c | b`,
/// `0 ≤ b < a` and `gcd(den, a, b, c) = 1`.
pub type Hnf = (BigInt, BigInt, BigInt, BigInt);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Order {
    pub disc: i64,
}

impl Order {
    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        // ω² = Δω − (Δ² − Δ)/4
        let d = Q::from_integer(BigInt::from(self.disc));
        let c0 = Q::from_integer(BigInt::from((self.disc * self.disc - self.disc) / 4));
        let vv = &x.1 * &y.1;
        let u = &x.0 * &y.0 - &vv * c0;
        let v = &x.0 * &y.1 + &x.1 * &y.0 + vv * d;
        (u, v)
    }

    pub fn omega(&self) -> Elem {
        (Q::zero(), Q::one())
    }

    pub fn one(&self) -> Elem {
        (Q::one(), Q::zero())
    }

    /// `N(u + vω) = u² + Δuv + ((Δ² − Δ)/4)v²`.
    pub fn norm(&self, x: &Elem) -> Q {
        let d = Q::from_integer(BigInt::from(self.disc));
        let c0 = Q::from_integer(BigInt::from((self.disc * self.disc - self.disc) / 4));
        &x.0 * &x.0 + d * &x.0 * &x.1 + c0 * &x.1 * &x.1
    }

    /// The O-module spanned by a set of elements.
    pub fn module(&self, gens: &[Elem]) -> Option<Hnf> {
        let mut rows = gens.to_vec();
        for g in gens {
            rows.push(self.mul(g, &self.omega()));
        }
        hnf(&rows)
    }

    /// Canonical form of `IJ` from the four basis products.
    pub fn product(&self, i: &Hnf, j: &Hnf) -> Hnf {
        let (bi, bj) = (basis(i), basis(j));
        let rows: Vec<Elem> = bi.iter().flat_map(|x| bj.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        hnf(&rows).expect("product of full lattices is full")
    }

    /// Whether `c` equals `(i : j)`.
    pub fn is_colon(&self, i: &Hnf, j: &Hnf, c: &Hnf) -> bool {
        let bj = basis(j);
        let maps_in = |z: &Elem| bj.iter().all(|y| contains(i, &self.mul(z, y)));
        let bc = basis(c);
        if !bc.iter().all(maps_in) {
            return false;
        }
        // (i : j) ⊆ y⁻¹i for y ∈ j, so its index over c divides this one.
        let y = &bj[0];
        let n = self.norm(y);
        let y_inv = (&y.0 / &n + Q::from_integer(BigInt::from(self.disc)) * &y.1 / &n, -&y.1 / &n);
        let outer = hnf(&basis(i).iter().map(|x| self.mul(x, &y_inv)).collect::<Vec<_>>()).expect("full lattice");
        if !basis(c).iter().all(|z| contains(&outer, z)) {
            return false;
        }
        let index = det(c) / det(&outer);
        assert!(index.is_integer() && index.is_positive(), "index of nested lattices is a positive integer");
        let index = index.to_integer().to_u64().expect("index fits in u64");
        // A superlattice c + ℤ·w/p with w ∈ c \ pc maps j into i exactly when
        // w lies in the kernel mod p of the integer matrix of coordinates of
        // c·j in i. Such w exists iff p divides every 2×2 minor.
        let mut rows: Vec<[BigInt; 2]> = Vec::new();
        for y in &bj {
            let k0 = coords(i, &self.mul(&bc[0], y));
            let k1 = coords(i, &self.mul(&bc[1], y));
            for r in 0..2 {
                rows.push([k0[r].to_integer(), k1[r].to_integer()]);
            }
        }
        let mut minors = BigInt::zero();
        for (x, r) in rows.iter().enumerate() {
            for s in &rows[x + 1..] {
                minors = minors.gcd(&(&r[0] * &s[1] - &r[1] * &s[0]));
            }
        }
        prime_factors(index).into_iter().all(|p| !(&minors % BigInt::from(p)).is_zero())
    }

    /// Whether an integral ideal is maximal: every nonzero residue generates
    /// the unit ideal together with it.
    pub fn is_maximal(&self, i: &Hnf) -> bool {
        let (den, a, _, c) = i;
        if !den.is_one() {
            return false;
        }
        let unit: Hnf = (BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one());
        if *i == unit {
            return false;
        }
        let (a, c) = (a.to_i64().unwrap(), c.to_i64().unwrap());
        for v in 0..c {
            for u in 0..a {
                if u == 0 && v == 0 {
                    continue;
                }
                let z = (Q::from_integer(u.into()), Q::from_integer(v.into()));
                if contains(i, &z) {
                    continue;
                }
                let mut gens = basis(i).to_vec();
                gens.push(z);
                if self.module(&gens).expect("full lattice") != unit {
                    return false;
                }
            }
        }
        true
    }
}

pub fn basis(h: &Hnf) -> [Elem; 2] {
    let (den, a, b, c) = h;
    let d = Q::from_integer(den.clone());
    [
        (Q::from_integer(a.clone()) / &d, Q::zero()),
        (Q::from_integer(b.clone()) / &d, Q::from_integer(c.clone()) / &d),
    ]
}

pub fn det(h: &Hnf) -> Q {
    let (den, a, _, c) = h;
    Q::new(a * c, den * den)
}

/// Coordinates of `x` in the basis of `h`.
pub fn coords(h: &Hnf, x: &Elem) -> [Q; 2] {
    let (den, a, b, c) = h;
    let d = Q::from_integer(den.clone());
    let t = &x.1 * &d / Q::from_integer(c.clone());
    let s = (&x.0 * &d - &t * Q::from_integer(b.clone())) / Q::from_integer(a.clone());
    [s, t]
}

pub fn contains(h: &Hnf, x: &Elem) -> bool {
    coords(h, x).iter().all(|q| q.is_integer())
}

/// Canonical basis of the ℤ-span of rational vectors, or `None` if the span
/// has rank below two.
pub fn hnf(rows: &[Elem]) -> Option<Hnf> {
    let den = rows.iter().fold(BigInt::one(), |l, (x, y)| l.lcm(x.denom()).lcm(y.denom()));
    let d = Q::from_integer(den.clone());
    let ints: Vec<(BigInt, BigInt)> = rows.iter().map(|(x, y)| ((x * &d).to_integer(), (y * &d).to_integer())).collect();
    let c = ints.iter().fold(BigInt::zero(), |g, (_, y)| g.gcd(y));
    let mut minors = BigInt::zero();
    for (i, r) in ints.iter().enumerate() {
        for s in &ints[i + 1..] {
            minors = minors.gcd(&(&r.0 * &s.1 - &r.1 * &s.0));
        }
    }
    if c.is_zero() || minors.is_zero() {
        return None;
    }
    let a = &minors / &c;
    // a combination with second coordinate exactly c
    let (mut g, mut x_acc) = (BigInt::zero(), BigInt::zero());
    for (x, y) in &ints {
        let e = g.extended_gcd(y);
        x_acc = &e.x * &x_acc + &e.y * x;
        g = e.gcd;
    }
    if g.is_negative() {
        x_acc = -x_acc;
    }
    let b = x_acc.mod_floor(&a);
    let common = den.gcd(&a).gcd(&b).gcd(&c);
    Some((&den / &common, &a / &common, &b / &common, &c / &common))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
