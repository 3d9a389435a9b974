//! Star and semistar operations interpreted on either backend.
//!
//! | op            | valuation backend              | order backend                  |
//! |---------------|--------------------------------|--------------------------------|
//! | `d`           | identity                       | identity                       |
//! | `v`           | `(V:(V:I))`                    | `(O:(O:I))`                    |
//! | `t`           | `d` (f.g. ideals are principal) | `v` (every ideal is f.g.)      |
//! | `w` (approx.) | `(I : H₁⋯Hₙ)`                  | `(I : H₁⋯Hₙ)`                  |
//! | `∧_T`         | `⋂ I·V_P`                      | `⋂ I·O'`                       |
//!
//! The `w` row uses one member of the defining union
//! `⋃ {(I : H) : H f.g., H^v = D}`, so it is a lower bound for `I^w` that
//! grows with the family.

use std::fmt;

use crate::domain::{Domain, Elem, Ideal};
use crate::error::{Error, Result};
use crate::quadratic::{maximal_ideals_up_to, LatticeIdeal, QuadraticOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overring {
    /// `V_P` for the prime attached to the convex subgroup with `k` trailing
    /// factors; `k = 0` is `V` itself.
    Localization(usize),
    /// An order of the same field containing the base order.
    Order(QuadraticOrder),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarOp {
    D,
    V,
    T,
    W(Vec<Ideal>),
    Meet(Vec<Overring>),
}

impl fmt::Display for Overring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Overring::Localization(k) => write!(f, "V_P{k}"),
            Overring::Order(o) => o.fmt(f),
        }
    }
}

impl fmt::Display for StarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarOp::D => write!(f, "d"),
            StarOp::V => write!(f, "v"),
            StarOp::T => write!(f, "t"),
            StarOp::W(fam) => write!(f, "w[{}]", fam.len()),
            StarOp::Meet(ts) => {
                write!(f, "meet(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    t.fmt(f)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub input: Ideal,
    pub output: Ideal,
    pub fixed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub leq: bool,
    pub geq: bool,
    /// an ideal with `I^{op1} ⊄ I^{op2}`
    pub leq_witness: Option<Ideal>,
    /// an ideal with `I^{op2} ⊄ I^{op1}`
    pub geq_witness: Option<Ideal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDomainReport {
    pub holds: bool,
    pub maximal_checked: usize,
    /// maximal quasi-`⋆_f`-ideals that are not quasi-`⋆`-ideals
    pub failing_maximal: Vec<Ideal>,
    /// sampled ideals on which v-invertibility and t-invertibility differ
    pub invertibility_mismatch: Vec<Ideal>,
}

fn uninterpretable(op: &StarOp, reason: &str) -> Error {
    Error::Uninterpretable { op: op.to_string(), reason: reason.to_string() }
}

impl Domain {
    /// Checks that `op` makes sense here: overrings of the right kind and a
    /// test family of f.g. integral ideals with `H^v = D`.
    pub fn validate(&self, op: &StarOp) -> Result<()> {
        match op {
            StarOp::D | StarOp::V | StarOp::T => Ok(()),
            StarOp::W(family) => {
                if family.is_empty() {
                    return Err(Error::BadTestFamily("empty family".into()));
                }
                for h in family {
                    let h = self.adopt(h)?;
                    let ok = self.is_finitely_generated(&h)? && self.is_integral(&h)? && self.v_closure(&h)? == self.unit();
                    if !ok {
                        return Err(Error::BadTestFamily(h.to_string()));
                    }
                }
                Ok(())
            }
            StarOp::Meet(ts) => {
                if ts.is_empty() {
                    return Err(uninterpretable(op, "no overrings"));
                }
                for t in ts {
                    match (self, t) {
                        (Domain::Valuation(v), Overring::Localization(k)) => {
                            if *k >= v.rank() {
                                return Err(uninterpretable(op, "the zero prime localizes to the quotient field"));
                            }
                        }
                        (Domain::Order(o), Overring::Order(big)) => {
                            if !o.is_suborder_of(big) {
                                return Err(uninterpretable(op, &format!("{big} does not contain {o}")));
                            }
                        }
                        _ => return Err(uninterpretable(op, "overring kind does not match the backend")),
                    }
                }
                Ok(())
            }
        }
    }

    /// `I^⋆`.
    pub fn close(&self, op: &StarOp, i: &Ideal) -> Result<Ideal> {
        self.validate(op)?;
        let i = self.adopt(i)?;
        match op {
            StarOp::D => Ok(i),
            StarOp::V => self.v_closure(&i),
            StarOp::T => match self {
                Domain::Valuation(_) => Ok(i),
                Domain::Order(_) => self.v_closure(&i),
            },
            StarOp::W(family) => self.w_approx_close(family, &i),
            StarOp::Meet(ts) => {
                let mut acc: Option<Ideal> = None;
                for t in ts {
                    let part = self.extend(&i, t)?;
                    acc = Some(match acc {
                        None => part,
                        Some(a) => self.intersect(&a, &part)?,
                    });
                }
                Ok(acc.expect("nonempty overring list"))
            }
        }
    }

    /// `I·T`, expressed over the base domain.
    fn extend(&self, i: &Ideal, t: &Overring) -> Result<Ideal> {
        match (self, i, t) {
            (Domain::Valuation(v), Ideal::Val(x), Overring::Localization(k)) => {
                let vp = v.localization_ideal(v.prime(*k)?)?;
                Ok(Ideal::Val(v.multiply(x, &vp)?))
            }
            (Domain::Order(o), Ideal::Lat(x), Overring::Order(big)) => Ok(Ideal::Lat(x.extend_to_order(big)?.restrict_to_order(o)?)),
            _ => Err(Error::DomainMismatch),
        }
    }

    pub fn close_report(&self, op: &StarOp, i: &Ideal) -> Result<ClosureReport> {
        let input = self.adopt(i)?;
        let output = self.close(op, &input)?;
        let fixed = output == input;
        Ok(ClosureReport { input, output, fixed })
    }

    /// `D^⋆`.
    pub fn unit_closure(&self, op: &StarOp) -> Result<Ideal> {
        self.close(op, &self.unit())
    }

    /// `D^⋆ ≠ D`.
    pub fn is_semistar_only(&self, op: &StarOp) -> Result<bool> {
        Ok(self.unit_closure(op)? != self.unit())
    }

    /// Whether `v = d` on this backend: every ideal of a quadratic order is
    /// divisorial, and a valuation domain has this property iff its maximal
    /// ideal is principal.
    fn v_is_identity(&self) -> bool {
        match self {
            Domain::Valuation(v) => v.maximal_ideal_profile().principal,
            Domain::Order(_) => true,
        }
    }

    pub fn is_finite_type(&self, op: &StarOp) -> bool {
        match op {
            StarOp::V => self.v_is_identity() || !self.is_valuation(),
            _ => true,
        }
    }

    /// Declared stability: `∧_T` is stable when every `T` is a localization.
    pub fn is_stable(&self, op: &StarOp) -> bool {
        match op {
            StarOp::D | StarOp::W(_) => true,
            StarOp::T => self.is_valuation() || self.v_is_identity(),
            StarOp::V => self.v_is_identity(),
            StarOp::Meet(ts) => ts.iter().all(|t| match (self, t) {
                (_, Overring::Localization(_)) => true,
                (Domain::Order(o), Overring::Order(big)) => o == big,
                _ => false,
            }),
        }
    }

    /// `⋆_f`.
    pub fn finite_type_of(&self, op: &StarOp) -> StarOp {
        match (self, op) {
            (Domain::Valuation(_), StarOp::V | StarOp::T) => StarOp::D,
            (Domain::Order(_), StarOp::T) => StarOp::V,
            _ => op.clone(),
        }
    }

    /// `(I(D:I))^⋆ = D^⋆`.
    pub fn is_star_invertible(&self, op: &StarOp, i: &Ideal) -> Result<bool> {
        let i = self.adopt(i)?;
        let inv = self.colon(&self.unit(), &i)?;
        Ok(self.close(op, &self.multiply(&i, &inv)?)? == self.unit_closure(op)?)
    }

    /// `(I(D^⋆:I))^⋆ = D^⋆`.
    pub fn is_quasi_star_invertible(&self, op: &StarOp, i: &Ideal) -> Result<bool> {
        let i = self.adopt(i)?;
        let unit = self.unit_closure(op)?;
        let inv = self.colon(&unit, &i)?;
        Ok(self.close(op, &self.multiply(&i, &inv)?)? == unit)
    }

    /// Sampled comparison of two operations.
    pub fn compare(&self, op1: &StarOp, op2: &StarOp, samples: &[Ideal]) -> Result<Comparison> {
        let mut out = Comparison { leq: true, geq: true, leq_witness: None, geq_witness: None };
        for s in samples {
            let a = self.close(op1, s)?;
            let b = self.close(op2, s)?;
            if out.leq && !self.is_subset(&a, &b)? {
                out.leq = false;
                out.leq_witness = Some(s.clone());
            }
            if out.geq && !self.is_subset(&b, &a)? {
                out.geq = false;
                out.geq_witness = Some(s.clone());
            }
        }
        Ok(out)
    }

    /// `(I : H₁⋯Hₙ)`, a member of the union defining `I^w`.
    pub fn w_approx_close(&self, family: &[Ideal], i: &Ideal) -> Result<Ideal> {
        self.validate(&StarOp::W(family.to_vec()))?;
        let mut h = self.unit();
        for x in family {
            h = self.multiply(&h, &self.adopt(x)?)?;
        }
        self.colon(&self.adopt(i)?, &h)
    }

    /// Every enumerated maximal ideal that is a quasi-`⋆_f`-ideal is a
    /// quasi-`⋆`-ideal, and v- and t-invertibility agree on the integral
    /// ideals of norm at most `bound`.
    pub fn h_domain_check(&self, op: &StarOp, bound: u64) -> Result<HDomainReport> {
        let Domain::Order(o) = self else {
            return Err(uninterpretable(op, "maximal ideals are enumerable only on orders"));
        };
        let ft = self.finite_type_of(op);
        let unit = self.unit();
        let mut failing = Vec::new();
        let maximal = maximal_ideals_up_to(o, bound);
        for m in &maximal {
            let m = Ideal::Lat(m.clone());
            let trace = |op: &StarOp| -> Result<Ideal> { self.intersect(&self.close(op, &m)?, &unit) };
            if trace(&ft)? != unit && trace(op)? != m {
                failing.push(m.clone());
            }
        }
        let mut mismatch = Vec::new();
        for i in crate::quadratic::integral_ideals_up_to(o, bound) {
            let i = Ideal::Lat(i);
            if self.is_star_invertible(&StarOp::V, &i)? != self.is_star_invertible(&StarOp::T, &i)? {
                mismatch.push(i);
            }
        }
        Ok(HDomainReport {
            holds: failing.is_empty() && mismatch.is_empty(),
            maximal_checked: maximal.len(),
            failing_maximal: failing,
            invertibility_mismatch: mismatch,
        })
    }
}

/// `∧{O_max}` on an order, the standard non-stable semistar example.
pub fn maximal_order_meet(o: &QuadraticOrder) -> StarOp {
    StarOp::Meet(vec![Overring::Order(o.maximal_order())])
}

/// Every operation the backend can build: `d`, `v`, `t`, `w` with the
/// trivial family, and the meet over each single overring (each nonzero
/// prime's localization, or each overorder `O_g` with `g | f`).
pub fn constructible_ops(dom: &Domain) -> Vec<StarOp> {
    let mut ops = vec![StarOp::D, StarOp::V, StarOp::T, StarOp::W(vec![dom.unit()])];
    match dom {
        Domain::Valuation(v) => {
            for k in 0..v.rank() {
                ops.push(StarOp::Meet(vec![Overring::Localization(k)]));
            }
        }
        Domain::Order(o) => {
            let f = o.conductor();
            for g in (1..=f).filter(|g| f % g == 0) {
                let over = QuadraticOrder::new(o.fundamental_disc() * g * g).expect("overorder discriminant is valid");
                ops.push(StarOp::Meet(vec![Overring::Order(over)]));
            }
        }
    }
    ops
}

/// `x·I^⋆ = (x·I)^⋆`, `I ⊆ I^⋆` and `I^⋆⋆ = I^⋆` on one ideal and element.
pub fn axioms_hold(dom: &Domain, op: &StarOp, i: &Ideal, x: &Elem) -> Result<bool> {
    let c = dom.close(op, i)?;
    let lhs = dom.scale(&c, x)?;
    let rhs = dom.close(op, &dom.scale(i, x)?)?;
    Ok(lhs == rhs && dom.is_subset(&dom.adopt(i)?, &c)? && dom.close(op, &c)? == c)
}

/// `(EF)^⋆ = (E^⋆F)^⋆ = (E^⋆F^⋆)^⋆`.
pub fn product_formula_holds(dom: &Domain, op: &StarOp, e: &Ideal, f: &Ideal) -> Result<bool> {
    let (es, fs) = (dom.close(op, e)?, dom.close(op, f)?);
    let a = dom.close(op, &dom.multiply(&dom.adopt(e)?, &dom.adopt(f)?)?)?;
    let b = dom.close(op, &dom.multiply(&es, &dom.adopt(f)?)?)?;
    let c = dom.close(op, &dom.multiply(&es, &fs)?)?;
    Ok(a == b && b == c)
}

/// Monotonicity `E ⊆ F ⟹ E^⋆ ⊆ F^⋆` on one pair (vacuous when `E ⊄ F`).
pub fn monotone_on(dom: &Domain, op: &StarOp, e: &Ideal, f: &Ideal) -> Result<bool> {
    if !dom.is_subset(&dom.adopt(e)?, &dom.adopt(f)?)? {
        return Ok(true);
    }
    dom.is_subset(&dom.close(op, e)?, &dom.close(op, f)?)
}

/// `I·O'` as a lattice over `O'`, for reporting semistar values in their
/// ambient order.
pub fn ambient_value(i: &Ideal) -> Option<LatticeIdeal> {
    match i {
        Ideal::Lat(x) => {
            let ring = x.multiplier_order();
            LatticeIdeal::from_generators(&ring, &x.basis()).ok()
        }
        Ideal::Val(_) => None,
    }
}
