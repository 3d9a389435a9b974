//! Totally ordered abelian groups of finite rank.
//!
//! Every group here is a finite lexicographic product of rank-one factors
//! drawn from `Z`, `Q` and `Z[1/p]`, with the leftmost factor most
//! significant. Elements and points of the divisible hull are vectors of
//! exact rationals, one coordinate per factor.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_power_of, Rational};

/// Nesting depth allowed for `lex(...)` descriptors.
pub const DEFAULT_MAX_NESTING: usize = 4;
/// Largest supported rank of a value group.
pub const MAX_RANK: usize = 4;

/// A rank-one factor of a lexicographic product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankOne {
    Integers,
    Rationals,
    /// The additive group `Z[1/p]`, `p` prime.
    Localized(u64),
}

impl RankOne {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            RankOne::Integers => x.is_integer(),
            RankOne::Rationals => true,
            RankOne::Localized(p) => is_power_of(x.denom(), *p),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, RankOne::Integers)
    }

    pub fn to_group(self) -> OrderedGroup {
        match self {
            RankOne::Integers => OrderedGroup::Integers,
            RankOne::Rationals => OrderedGroup::Rationals,
            RankOne::Localized(p) => OrderedGroup::Localized(p),
        }
    }
}

impl fmt::Display for RankOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankOne::Integers => write!(f, "Z"),
            RankOne::Rationals => write!(f, "Q"),
            RankOne::Localized(p) => write!(f, "Z[1/{p}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderedGroup {
    Integers,
    Rationals,
    Localized(u64),
    /// Lexicographic product, leftmost factor most significant.
    Lex(Vec<OrderedGroup>),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl OrderedGroup {
    pub fn localized(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidGroup(format!("Z[1/{p}] needs a prime, {p} is not")));
        }
        Ok(OrderedGroup::Localized(p))
    }

    pub fn lex(factors: Vec<OrderedGroup>) -> Result<Self> {
        Self::lex_with_limit(factors, DEFAULT_MAX_NESTING)
    }

    pub fn lex_with_limit(factors: Vec<OrderedGroup>, max_nesting: usize) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidGroup("lex(...) needs at least two factors".into()));
        }
        let g = OrderedGroup::Lex(factors);
        if g.nesting_depth() > max_nesting {
            return Err(Error::InvalidGroup(format!(
                "lex nesting depth {} exceeds {max_nesting}",
                g.nesting_depth()
            )));
        }
        if g.rank() > MAX_RANK {
            return Err(Error::InvalidGroup(format!("rank {} exceeds {MAX_RANK}", g.rank())));
        }
        Ok(g)
    }

    /// Rebuilds a group from flat rank-one factors; `None` for the trivial group.
    pub fn from_factors(factors: &[RankOne]) -> Option<Self> {
        match factors {
            [] => None,
            [one] => Some(one.to_group()),
            many => Some(OrderedGroup::Lex(many.iter().map(|f| f.to_group()).collect())),
        }
    }

    pub fn nesting_depth(&self) -> usize {
        match self {
            OrderedGroup::Lex(fs) => 1 + fs.iter().map(|f| f.nesting_depth()).max().unwrap_or(0),
            _ => 0,
        }
    }

    /// The rank-one factors in significance order, with nested products flattened.
    pub fn factors(&self) -> Vec<RankOne> {
        match self {
            OrderedGroup::Integers => vec![RankOne::Integers],
            OrderedGroup::Rationals => vec![RankOne::Rationals],
            OrderedGroup::Localized(p) => vec![RankOne::Localized(*p)],
            OrderedGroup::Lex(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            OrderedGroup::Lex(fs) => fs.iter().map(|f| f.rank()).sum(),
            _ => 1,
        }
    }

    /// Discrete at the bottom iff the least significant factor is `Z`.
    pub fn is_discrete_at_bottom(&self) -> bool {
        self.factors().last().is_some_and(|f| f.is_discrete())
    }

    fn check_rank(&self, r: usize) -> Result<()> {
        if r != self.rank() {
            return Err(Error::RankMismatch(r, self.rank()));
        }
        Ok(())
    }

    pub fn contains(&self, x: &HullPoint) -> Result<bool> {
        self.check_rank(x.rank())?;
        Ok(self.factors().iter().zip(x.coords()).all(|(f, c)| f.contains(c)))
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<GroupElement> {
        let p = HullPoint::new(coords);
        if !self.contains(&p)? {
            return Err(Error::NotMember { value: p.to_string(), group: self.to_string() });
        }
        Ok(GroupElement(p))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(HullPoint::zero(self.rank()))
    }

    /// The least positive element, when the bottom factor is discrete.
    pub fn has_min_positive(&self) -> Option<GroupElement> {
        if !self.is_discrete_at_bottom() {
            return None;
        }
        let n = self.rank();
        let mut coords = vec![Rational::zero(); n];
        coords[n - 1] = Rational::one();
        Some(GroupElement(HullPoint::new(coords)))
    }

    pub fn convex_subgroups(&self) -> Vec<ConvexSubgroup> {
        (0..=self.rank()).map(|k| ConvexSubgroup { k }).collect()
    }

    pub fn convex_subgroup(&self, k: usize) -> Result<ConvexSubgroup> {
        if k > self.rank() {
            return Err(Error::InvalidSubgroup { k, rank: self.rank() });
        }
        Ok(ConvexSubgroup { k })
    }

    /// `Γ/H`: the leading factors. `None` when `H = Γ`.
    pub fn quotient_group(&self, h: ConvexSubgroup) -> Result<Option<OrderedGroup>> {
        let fs = self.factors();
        let h = self.convex_subgroup(h.k)?;
        Ok(Self::from_factors(&fs[..fs.len() - h.k]))
    }

    /// `H` itself as a group: the trailing factors. `None` when `H = {0}`.
    pub fn subgroup_group(&self, h: ConvexSubgroup) -> Result<Option<OrderedGroup>> {
        let fs = self.factors();
        let h = self.convex_subgroup(h.k)?;
        Ok(Self::from_factors(&fs[fs.len() - h.k..]))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = GroupParser { src: s.as_bytes(), pos: 0 };
        let g = p.group(0)?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(g)
    }
}

impl fmt::Display for OrderedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedGroup::Integers => write!(f, "Z"),
            OrderedGroup::Rationals => write!(f, "Q"),
            OrderedGroup::Localized(p) => write!(f, "Z[1/{p}]"),
            OrderedGroup::Lex(fs) => {
                write!(f, "lex(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Grammar: `group := "Z" | "Q" | "Z[1/" prime "]" | "lex(" group ("," group)+ ")"`,
/// whitespace allowed between tokens.
struct GroupParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl GroupParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { pos: start, msg: "expected a number".into() })
    }

    fn group(&mut self, depth: usize) -> Result<OrderedGroup> {
        if self.eat("lex(") {
            if depth >= DEFAULT_MAX_NESTING {
                return Err(self.error("lex nesting too deep"));
            }
            let mut fs = vec![self.group(depth + 1)?];
            while self.eat(",") {
                fs.push(self.group(depth + 1)?);
            }
            if !self.eat(")") {
                return Err(self.error("expected ',' or ')'"));
            }
            let at = self.pos;
            return OrderedGroup::lex(fs).map_err(|e| Error::Parse { pos: at, msg: e.to_string() });
        }
        if self.eat("Z[1/") {
            let at = self.pos;
            let p = self.number()?;
            if !self.eat("]") {
                return Err(self.error("expected ']'"));
            }
            return OrderedGroup::localized(p).map_err(|e| Error::Parse { pos: at, msg: e.to_string() });
        }
        if self.eat("Z") {
            return Ok(OrderedGroup::Integers);
        }
        if self.eat("Q") {
            return Ok(OrderedGroup::Rationals);
        }
        Err(self.error("expected Z, Q, Z[1/p] or lex(...)"))
    }
}

/// A point of the divisible hull `Q^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HullPoint(Vec<Rational>);

impl HullPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        HullPoint(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        HullPoint(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        HullPoint(vec![Rational::zero(); rank])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, n: i64) -> HullPoint {
        HullPoint(self.0.iter().map(|c| c * int(n)).collect())
    }

    pub(crate) fn coords_mut(&mut self) -> &mut Vec<Rational> {
        &mut self.0
    }
}

impl fmt::Display for HullPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", format_rational(&self.0[0]));
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Add for &HullPoint {
    type Output = HullPoint;
    fn add(self, rhs: &HullPoint) -> HullPoint {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        HullPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &HullPoint {
    type Output = HullPoint;
    fn sub(self, rhs: &HullPoint) -> HullPoint {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        HullPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &HullPoint {
    type Output = HullPoint;
    fn neg(self) -> HullPoint {
        HullPoint(self.0.iter().map(|a| -a).collect())
    }
}

/// Checked lexicographic comparison.
pub fn compare(a: &HullPoint, b: &HullPoint) -> Result<Ordering> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(a.cmp(b))
}

pub fn try_add(a: &HullPoint, b: &HullPoint) -> Result<HullPoint> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(a + b)
}

/// A hull point known to lie in its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(HullPoint);

impl GroupElement {
    pub fn as_hull(&self) -> &HullPoint {
        &self.0
    }

    pub fn into_hull(self) -> HullPoint {
        self.0
    }

    pub fn coords(&self) -> &[Rational] {
        self.0.coords()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(&self.0 + &rhs.0)
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(&self.0 - &rhs.0)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement(-&self.0)
    }
}

/// The convex subgroup made of the trailing `k` factors (leading coordinates zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvexSubgroup {
    pub k: usize,
}

impl ConvexSubgroup {
    pub fn contains(&self, x: &HullPoint) -> bool {
        let lead = x.rank().saturating_sub(self.k);
        x.coords()[..lead].iter().all(|c| c.is_zero())
    }
}

/// Least `n` in `1..=bound` with `n * x` in the factor, if any.
pub(crate) fn torsion_order(f: RankOne, x: &Rational, bound: u64) -> Option<u64> {
    match f {
        RankOne::Rationals => Some(1),
        RankOne::Integers => {
            let d = x.denom();
            (d <= &num_bigint::BigInt::from(bound)).then(|| d.try_into().ok()).flatten()
        }
        RankOne::Localized(p) => {
            let mut d = x.denom().clone();
            let pb = num_bigint::BigInt::from(p);
            while d.is_multiple_of(&pb) {
                d /= &pb;
            }
            (d <= num_bigint::BigInt::from(bound)).then(|| (&d).try_into().ok()).flatten()
        }
    }
}
