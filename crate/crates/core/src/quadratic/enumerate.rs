//! Norm-bounded enumeration: integral ideals, maximal ideals, principal
//! generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

use super::field::QuadElem;
use super::ideal::LatticeIdeal;
use super::order::QuadraticOrder;

/// Box radius for the generator search in real quadratic orders.
pub const REAL_SEARCH_RADIUS: i64 = 40;

fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k as usize]).collect()
}

/// All maximal ideals of norm at most `bound`.
///
/// Maximal ideals over `p` correspond to irreducible factors of the minimal
/// polynomial of `ω` mod `p`: a root `r` gives `(p, ω − r)` of norm `p`, no
/// root gives the inert `pO` of norm `p²`.
pub fn maximal_ideals_up_to(order: &QuadraticOrder, bound: u64) -> Vec<LatticeIdeal> {
    let (b, c) = order.omega_min_poly();
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        let pb = BigInt::from(p);
        let (b, c) = (b.mod_floor(&pb).to_u64().unwrap(), c.mod_floor(&pb).to_u64().unwrap());
        let roots: Vec<u64> = (0..p).filter(|&r| (r * r % p + b * r % p + c) % p == 0).collect();
        if roots.is_empty() {
            if p.checked_mul(p).is_some_and(|q| q <= bound) {
                let q = QuadElem::rational(order.radicand(), Rational::from_integer(pb.clone()));
                out.push(LatticeIdeal::principal(order, &q));
            }
            continue;
        }
        for r in roots {
            let i = LatticeIdeal::from_hnf(order, 1, p as i64, ((p - r) % p) as i64, 1)
                .expect("(p, ω − r) is an ideal when r is a root mod p");
            out.push(i);
        }
    }
    out
}

/// All nonzero integral ideals of norm at most `bound`, in Hermite order.
pub fn integral_ideals_up_to(order: &QuadraticOrder, bound: u64) -> Vec<LatticeIdeal> {
    let bound = bound as i64;
    let mut out = Vec::new();
    for a in 1..=bound {
        for c in 1..=a {
            if a % c != 0 || a * c > bound {
                continue;
            }
            for b in (0..a).step_by(c as usize) {
                if let Ok(i) = LatticeIdeal::from_hnf(order, 1, a, b, c) {
                    out.push(i);
                }
            }
        }
    }
    out
}

/// Norm form `N(u + vω) = u² + Δuv + ((Δ² − Δ)/4)v²`.
fn norm_uv(order: &QuadraticOrder, u: &BigInt, v: &BigInt) -> BigInt {
    let (b, c) = order.omega_min_poly();
    // ω + ω̄ = Δ = −b, ωω̄ = c
    u * u - &b * u * v + c * v * v
}

pub(crate) fn principal_generator(ideal: &LatticeIdeal) -> Option<QuadElem> {
    let order = ideal.order();
    let (den, a, b, c) = ideal.hnf();
    let target = a * c;
    let found = if order.disc() < 0 { definite_search(order, a, b, c, &target) } else { box_search(order, a, b, c, &target) }?;
    let (s, t) = found;
    let u = &s * a + &t * b;
    let v = &t * c;
    let d = Rational::from_integer(den.clone());
    let x = order.from_coords(&[Rational::from_integer(u) / &d, Rational::from_integer(v) / d]);
    debug_assert_eq!(LatticeIdeal::principal(order, &x), *ideal);
    Some(x)
}

/// Solves `|Q(s,t)| = n` for the positive definite form
/// `Q(s,t) = N(s·a + t·(b + cω))`, enumerating the bounded ellipse.
fn definite_search(order: &QuadraticOrder, a: &BigInt, b: &BigInt, c: &BigInt, n: &BigInt) -> Option<(BigInt, BigInt)> {
    let qa = norm_uv(order, a, &BigInt::zero());
    let qc = norm_uv(order, b, c);
    let qb = norm_uv(order, &(a + b), c) - &qa - &qc;
    // 4A·Q = (2As + Bt)² + (4AC − B²)t²
    let delta = BigInt::from(4) * &qa * &qc - &qb * &qb;
    debug_assert!(delta.is_positive());
    let four_an = BigInt::from(4) * &qa * n;
    let tmax = (&four_an / &delta).sqrt();
    let mut t = -tmax.clone();
    while t <= tmax {
        let rest = &four_an - &delta * &t * &t;
        if !rest.is_negative() {
            let r = rest.sqrt();
            if &r * &r == rest {
                for sign in [1, -1] {
                    let num = BigInt::from(sign) * &r - &qb * &t;
                    let den2 = BigInt::from(2) * &qa;
                    if (&num % &den2).is_zero() {
                        let s = num / den2;
                        let u = &s * a + &t * b;
                        let v = &t * c;
                        if norm_uv(order, &u, &v).abs() == *n {
                            return Some((s, t));
                        }
                    }
                }
            }
        }
        t += BigInt::one();
    }
    None
}

fn box_search(order: &QuadraticOrder, a: &BigInt, b: &BigInt, c: &BigInt, n: &BigInt) -> Option<(BigInt, BigInt)> {
    let r = REAL_SEARCH_RADIUS;
    for t in -r..=r {
        for s in -r..=r {
            let (s, t) = (BigInt::from(s), BigInt::from(t));
            let u = &s * a + &t * b;
            let v = &t * c;
            if (!u.is_zero() || !v.is_zero()) && norm_uv(order, &u, &v).abs() == *n {
                return Some((s, t));
            }
        }
    }
    None
}
