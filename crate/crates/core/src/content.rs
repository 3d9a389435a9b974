//! Polynomials over the quotient field and their content ideals.
//!
//! Over a valuation backend a field element is a finite sum `Σ qᵢ t^γᵢ` with
//! `γᵢ ∈ Γ`; its value is the least exponent carrying a nonzero coefficient.
//! Products of such sums cancel honestly, so `c(fg)` is not a formal
//! minimum of `c(f)` and `c(g)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::domain::{Domain, Elem, Ideal};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, HullPoint, OrderedGroup};
use crate::quadratic::{ElemParser, LatticeIdeal, QuadElem};
use crate::rational::{format_rational, Rational};
use crate::star::StarOp;

/// `Σ q·t^γ` with distinct exponents and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoSum {
    rank: usize,
    terms: BTreeMap<HullPoint, Rational>,
}

impl MonoSum {
    pub fn zero(rank: usize) -> MonoSum {
        MonoSum { rank, terms: BTreeMap::new() }
    }

    pub fn monomial(q: Rational, exp: HullPoint) -> MonoSum {
        let rank = exp.rank();
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(exp, q);
        }
        MonoSum { rank, terms }
    }

    pub fn constant(rank: usize, q: Rational) -> MonoSum {
        Self::monomial(q, HullPoint::zero(rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HullPoint, &Rational)> {
        self.terms.iter()
    }

    /// The least exponent, i.e. the value of the element.
    pub fn value(&self) -> Option<&HullPoint> {
        self.terms.keys().next()
    }

    fn add_term(&mut self, e: HullPoint, q: Rational) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, o: &MonoSum) -> MonoSum {
        let mut out = self.clone();
        for (e, q) in &o.terms {
            out.add_term(e.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> MonoSum {
        MonoSum { rank: self.rank, terms: self.terms.iter().map(|(e, q)| (e.clone(), -q)).collect() }
    }

    pub fn mul(&self, o: &MonoSum) -> MonoSum {
        let mut out = MonoSum::zero(self.rank);
        for (e1, q1) in &self.terms {
            for (e2, q2) in &o.terms {
                out.add_term(e1 + e2, q1 * q2);
            }
        }
        out
    }
}

impl fmt::Display for MonoSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, q)) in self.terms.iter().enumerate() {
            let exp = if e.rank() == 1 { format!("({})", format_rational(&e.coords()[0])) } else { e.to_string() };
            if i > 0 && q.is_negative() {
                write!(f, "-{}*t^{exp}", format_rational(&-q))?;
            } else {
                if i > 0 {
                    write!(f, "+")?;
                }
                write!(f, "{}*t^{exp}", format_rational(q))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Quad(QuadElem),
    Mono(MonoSum),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Quad(x) => x.is_zero(),
            Coeff::Mono(x) => x.is_zero(),
        }
    }

    fn add(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Quad(a), Coeff::Quad(b)) => Coeff::Quad(a + b),
            (Coeff::Mono(a), Coeff::Mono(b)) => Coeff::Mono(a.add(b)),
            _ => panic!("coefficients from different backends"),
        }
    }

    fn mul(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Quad(a), Coeff::Quad(b)) => Coeff::Quad(a * b),
            (Coeff::Mono(a), Coeff::Mono(b)) => Coeff::Mono(a.mul(b)),
            _ => panic!("coefficients from different backends"),
        }
    }

    fn zero_like(&self) -> Coeff {
        match self {
            Coeff::Quad(a) => Coeff::Quad(QuadElem::zero(a.radicand())),
            Coeff::Mono(a) => Coeff::Mono(MonoSum::zero(a.rank)),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Quad(x) => x.fmt(f),
            Coeff::Mono(x) => x.fmt(f),
        }
    }
}

/// A nonzero polynomial in `K[X]`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    coeffs: Vec<Coeff>,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<Coeff>) -> Result<FieldPoly> {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(FieldPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, o: &FieldPoly) -> FieldPoly {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        FieldPoly::new(out).expect("K[X] is a domain")
    }

    pub fn scale(&self, x: &Coeff) -> Result<FieldPoly> {
        FieldPoly::new(self.coeffs.iter().map(|c| c.mul(x)).collect())
    }

    /// Parses `c0 + c1 X + c2 X^2 …` where each coefficient uses the element
    /// syntax of the backend: `2+(1+sqrt(-3))X` for orders,
    /// `t^(1/2) + 3t^2 X` or `t^(0,1/3)X^2` for valuation domains.
    pub fn parse(dom: &Domain, s: &str) -> Result<FieldPoly> {
        let mut p = PolyParser { s: s.as_bytes(), pos: 0, dom };
        let mut coeffs: Vec<Coeff> = Vec::new();
        let mut first = true;
        loop {
            p.skip_ws();
            if p.pos == p.s.len() {
                break;
            }
            let neg = match p.s[p.pos] {
                b'+' => {
                    p.pos += 1;
                    false
                }
                b'-' => {
                    p.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(p.err("expected '+' or '-'")),
            };
            first = false;
            p.skip_ws();
            let c = if p.at(b'X') { p.one() } else { p.coeff()? };
            let c = if neg { p.negate(&c) } else { c };
            let k = p.power()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, p.zero());
            }
            coeffs[k] = coeffs[k].add(&c);
        }
        if first {
            return Err(p.err("empty polynomial"));
        }
        FieldPoly::new(coeffs)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{k}")?,
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    dom: &'a Domain,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at(&mut self, c: u8) -> bool {
        self.skip_ws();
        self.s.get(self.pos) == Some(&c)
    }

    fn zero(&self) -> Coeff {
        match self.dom {
            Domain::Order(o) => Coeff::Quad(o.zero()),
            Domain::Valuation(v) => Coeff::Mono(MonoSum::zero(v.rank())),
        }
    }

    fn one(&self) -> Coeff {
        match self.dom {
            Domain::Order(o) => Coeff::Quad(o.one()),
            Domain::Valuation(v) => Coeff::Mono(MonoSum::constant(v.rank(), Rational::one())),
        }
    }

    fn negate(&self, c: &Coeff) -> Coeff {
        match c {
            Coeff::Quad(x) => Coeff::Quad(-x),
            Coeff::Mono(x) => Coeff::Mono(x.neg()),
        }
    }

    /// `X`, `X^k` or nothing.
    fn power(&mut self) -> Result<usize> {
        if !self.at(b'X') {
            return Ok(0);
        }
        self.pos += 1;
        if !self.at(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<usize>().ok())
            .filter(|&k| k <= 64)
            .ok_or(Error::Parse { pos: start, msg: "expected an exponent in 0..=64".into() })
    }

    fn coeff(&mut self) -> Result<Coeff> {
        match self.dom {
            Domain::Order(o) => {
                let mut ep = ElemParser { s: self.s, pos: self.pos, m: o.radicand() };
                let c = ep.product()?;
                self.pos = ep.pos;
                Ok(Coeff::Quad(c))
            }
            Domain::Valuation(v) => {
                let mut mp = MonoParser { s: self.s, pos: self.pos, group: v.group() };
                let c = mp.product()?;
                self.pos = mp.pos;
                Ok(Coeff::Mono(c))
            }
        }
    }
}

struct MonoParser<'a> {
    s: &'a [u8],
    pos: usize,
    group: &'a OrderedGroup,
}

impl<'a> MonoParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MonoSum> {
        let mut acc = MonoSum::zero(self.group.rank());
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = acc.add(&if neg { t.neg() } else { t });
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<MonoSum> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.atom()?);
                }
                Some(b't') | Some(b'(') => acc = acc.mul(&self.atom()?),
                _ => break,
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<MonoSum> {
        let rank = self.group.rank();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                if self.peek() != Some(b'^') {
                    let mut e = vec![Rational::zero(); rank];
                    e[rank - 1] = Rational::one();
                    return self.monomial(HullPoint::new(e));
                }
                self.pos += 1;
                let exp = if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let mut coords = vec![self.rational()?];
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        coords.push(self.rational()?);
                    }
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    coords
                } else {
                    vec![self.rational()?]
                };
                if exp.len() != rank {
                    return Err(self.err(&format!("exponent needs {rank} coordinates")));
                }
                self.monomial(HullPoint::new(exp))
            }
            Some(c) if c.is_ascii_digit() => Ok(MonoSum::constant(rank, self.rational()?)),
            _ => Err(self.err("expected a number, t^e or '('")),
        }
    }

    fn monomial(&self, e: HullPoint) -> Result<MonoSum> {
        if !self.group.contains(&e)? {
            return Err(Error::NotMember { value: e.to_string(), group: self.group.to_string() });
        }
        Ok(MonoSum::monomial(Rational::one(), e))
    }

    fn rational(&mut self) -> Result<Rational> {
        self.peek();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        crate::rational::parse_rational(text).map_err(|_| Error::Parse { pos: start, msg: "expected a rational".into() })
    }
}

/// `c_D(f)`, the `D`-module generated by the coefficients.
pub fn content(dom: &Domain, f: &FieldPoly) -> Result<Ideal> {
    match dom {
        Domain::Order(o) => {
            let gens: Vec<QuadElem> = f
                .coeffs
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| match c {
                    Coeff::Quad(x) => Ok(x.clone()),
                    Coeff::Mono(_) => Err(Error::DomainMismatch),
                })
                .collect::<Result<_>>()?;
            Ok(Ideal::Lat(LatticeIdeal::from_generators(o, &gens)?))
        }
        Domain::Valuation(v) => {
            let mut least: Option<&HullPoint> = None;
            for c in &f.coeffs {
                match c {
                    Coeff::Mono(x) => {
                        if let Some(e) = x.value() {
                            least = Some(match least {
                                Some(l) if l <= e => l,
                                _ => e,
                            });
                        }
                    }
                    Coeff::Quad(_) => return Err(Error::DomainMismatch),
                }
            }
            let e = least.expect("nonzero polynomial").clone();
            let g: GroupElement = v.group().element(e.coords().to_vec())?;
            dom.principal(&Elem::Val(g))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindMertensReport {
    pub m: usize,
    pub lhs: Ideal,
    pub rhs: Ideal,
    pub holds: bool,
}

/// `c(f)^m c(fg) = c(f)^{m+1} c(g)` with `m = deg g`.
pub fn dedekind_mertens_check(dom: &Domain, f: &FieldPoly, g: &FieldPoly) -> Result<DedekindMertensReport> {
    let m = g.degree();
    let cf = content(dom, f)?;
    let cg = content(dom, g)?;
    let cfg = content(dom, &f.mul(g))?;
    let mut pow = dom.unit();
    for _ in 0..m {
        pow = dom.multiply(&pow, &cf)?;
    }
    let lhs = dom.multiply(&pow, &cfg)?;
    let rhs = dom.multiply(&dom.multiply(&pow, &cf)?, &cg)?;
    let holds = lhs == rhs;
    Ok(DedekindMertensReport { m, lhs, rhs, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussReport {
    /// `c(fg)^⋆`
    pub lhs: Ideal,
    /// `(c(f)c(g))^⋆`
    pub rhs: Ideal,
    pub equal: bool,
}

/// Compares `c(fg)^⋆` with `(c(f)c(g))^⋆`; `None` compares them plainly.
pub fn gauss_check(dom: &Domain, f: &FieldPoly, g: &FieldPoly, op: Option<&StarOp>) -> Result<GaussReport> {
    let cfg = content(dom, &f.mul(g))?;
    let prod = dom.multiply(&content(dom, f)?, &content(dom, g)?)?;
    let (lhs, rhs) = match op {
        None => (cfg, prod),
        Some(op) => (dom.close(op, &cfg)?, dom.close(op, &prod)?),
    };
    let equal = lhs == rhs;
    Ok(GaussReport { lhs, rhs, equal })
}

/// `c(fg) ⊆ c(f)c(g)`.
pub fn content_inclusion_holds(dom: &Domain, f: &FieldPoly, g: &FieldPoly) -> Result<bool> {
    let cfg = content(dom, &f.mul(g))?;
    let prod = dom.multiply(&content(dom, f)?, &content(dom, g)?)?;
    dom.is_subset(&cfg, &prod)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStarMdReport {
    pub all_invertible: bool,
    pub checked: usize,
    /// f.g. samples with `(FF⁻¹)^{⋆_f} ≠ D^{⋆_f}`
    pub witnesses: Vec<Ideal>,
    /// samples skipped because they are not finitely generated
    pub skipped: usize,
}

/// Tests `(FF⁻¹)^{⋆_f} = D^{⋆_f}` over the finitely generated samples.
pub fn pstarmd_check(dom: &Domain, op: &StarOp, samples: &[Ideal]) -> Result<PStarMdReport> {
    let ft = dom.finite_type_of(op);
    let mut witnesses = Vec::new();
    let (mut checked, mut skipped) = (0, 0);
    for s in samples {
        if !dom.is_finitely_generated(s)? {
            skipped += 1;
            continue;
        }
        checked += 1;
        if !dom.is_star_invertible(&ft, s)? {
            witnesses.push(dom.adopt(s)?);
        }
    }
    Ok(PStarMdReport { all_invertible: witnesses.is_empty(), checked, witnesses, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::QuadraticOrder;
    use crate::star::maximal_order_meet;
    use crate::valuation::ValuationDomain;

    fn z_sqrt_m3() -> (QuadraticOrder, Domain) {
        let o = QuadraticOrder::new(-12).unwrap();
        (o.clone(), Domain::Order(o))
    }

    #[test]
    fn the_conductor_pair() {
        let (o, d) = z_sqrt_m3();
        let f = FieldPoly::parse(&d, "2+(1+sqrt(-3))X").unwrap();
        let g = FieldPoly::parse(&d, "2+(1-sqrt(-3))X").unwrap();
        assert_eq!(f.mul(&g), FieldPoly::parse(&d, "4+4X+4X^2").unwrap());
        let p = Ideal::Lat(LatticeIdeal::from_hnf(&o, 1, 2, 1, 1).unwrap());
        assert_eq!(content(&d, &f).unwrap(), p);
        let four = Ideal::Lat(LatticeIdeal::principal(&o, &o.parse_elem("4").unwrap()));
        let two_p = d.scale(&p, &Elem::Quad(o.parse_elem("2").unwrap())).unwrap();

        let plain = gauss_check(&d, &f, &g, None).unwrap();
        assert_eq!((plain.lhs.clone(), plain.rhs.clone(), plain.equal), (four.clone(), two_p.clone(), false));
        let v = gauss_check(&d, &f, &g, Some(&StarOp::V)).unwrap();
        assert_eq!((v.lhs, v.rhs, v.equal), (four.clone(), two_p.clone(), false));
        let meet = gauss_check(&d, &f, &g, Some(&maximal_order_meet(&o))).unwrap();
        assert!(meet.equal);

        let dm = dedekind_mertens_check(&d, &f, &g).unwrap();
        let four_p = d.scale(&p, &Elem::Quad(o.parse_elem("4").unwrap())).unwrap();
        assert_eq!((dm.m, dm.holds, dm.lhs), (1, true, four_p));
        assert!(content_inclusion_holds(&d, &f, &g).unwrap());
    }

    #[test]
    fn pstarmd_witnesses() {
        let (o, d) = z_sqrt_m3();
        let p = Ideal::Lat(LatticeIdeal::from_hnf(&o, 1, 2, 1, 1).unwrap());
        let r = pstarmd_check(&d, &StarOp::V, &[d.unit(), p.clone()]).unwrap();
        assert_eq!((r.all_invertible, r.witnesses.clone()), (false, vec![p.clone()]));
        let r = pstarmd_check(&d, &maximal_order_meet(&o), std::slice::from_ref(&p)).unwrap();
        assert_eq!(r.witnesses, vec![p]);
    }

    #[test]
    fn valuation_contents_cancel() {
        let v = ValuationDomain::new(OrderedGroup::Localized(2));
        let d = Domain::Valuation(v.clone());
        let f = FieldPoly::parse(&d, "t^(1/2) + t^2 X").unwrap();
        assert_eq!(content(&d, &f).unwrap(), Ideal::Val(v.ideal(HullPoint::new(vec![crate::rational::frac(1, 2)]), false).unwrap()));
        // (1 + X)(t - tX) = t - tX²: the X-coefficient cancels
        let f = FieldPoly::parse(&d, "1 + X").unwrap();
        let g = FieldPoly::parse(&d, "t - t X").unwrap();
        let fg = f.mul(&g);
        assert_eq!(fg.degree(), 2);
        assert!(fg.coeffs()[1].is_zero());
        assert!(gauss_check(&d, &f, &g, Some(&StarOp::V)).unwrap().equal);
        assert!(dedekind_mertens_check(&d, &f, &g).unwrap().holds);
    }

    #[test]
    fn display_parses_back() {
        let d = Domain::Valuation(ValuationDomain::new(OrderedGroup::Integers));
        for text in ["2t^-2 - 7t^2 + (3 - t)X", "-t^-1 - 1/2 t + t^3 X^2"] {
            let f = FieldPoly::parse(&d, text).unwrap();
            assert_eq!(FieldPoly::parse(&d, &f.to_string()).unwrap(), f, "{f}");
        }
    }

    #[test]
    fn parse_errors() {
        let (_, d) = z_sqrt_m3();
        assert!(FieldPoly::parse(&d, "").is_err());
        assert_eq!(FieldPoly::parse(&d, "X - X"), Err(Error::ZeroPolynomial));
        assert!(FieldPoly::parse(&d, "2 + + X").is_err());
        let v = Domain::Valuation(ValuationDomain::new(OrderedGroup::Integers));
        assert!(matches!(FieldPoly::parse(&v, "t^(1/2)"), Err(Error::NotMember { .. })));
        assert_eq!(FieldPoly::parse(&v, "3t^2X^3").unwrap().degree(), 3);
    }

    #[test]
    fn homogeneity() {
        let (o, d) = z_sqrt_m3();
        let f = FieldPoly::parse(&d, "3+(1+sqrt(-3))X^2").unwrap();
        let x = o.parse_elem("1/2-sqrt(-3)").unwrap();
        let lhs = content(&d, &f.scale(&Coeff::Quad(x.clone())).unwrap()).unwrap();
        let rhs = d.scale(&content(&d, &f).unwrap(), &Elem::Quad(x)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
