//! Brute-force set arithmetic for upper sets of a lex product of rank-one
//! groups, evaluated on truncated grids.
//!
//! An ideal is handed over as a membership predicate on group elements. The
//! oracle never looks at how a predicate was built; it only uses that the
//! set is an upper set, so on a finite grid listed in lex order it is a
//! suffix and its least element can be found by bisection.
//!
//! Three grids are involved. Answers are read on the coarse test grid;
//! minima are taken on a grid three dyadic levels finer, and the inner
//! minimum of a double colon three levels finer again. When every cut point
//! lies in `(1/(3·2^k))ℤ` with `k` at most the test level, the gaps between
//! test points and cut points dominate the finer steps and the answers are
//! exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Integers,
    Rationals,
    Dyadic,
}

impl Factor {
    pub fn contains(self, x: &Q) -> bool {
        match self {
            Factor::Integers => x.is_integer(),
            Factor::Rationals => true,
            Factor::Dyadic => {
                let mut d = x.denom().clone();
                let two = BigInt::from(2);
                while d.is_even() {
                    d /= &two;
                }
                d.is_one()
            }
        }
    }

    /// Grid spacing at a level; group members only.
    pub fn step(self, level: u32) -> Q {
        match self {
            Factor::Integers => Q::one(),
            Factor::Rationals => Q::new(BigInt::one(), BigInt::from(3u64 << level)),
            Factor::Dyadic => Q::new(BigInt::one(), BigInt::from(1u64 << level)),
        }
    }
}

pub fn member(factors: &[Factor], x: &[Q]) -> bool {
    factors.len() == x.len() && factors.iter().zip(x).all(|(f, c)| f.contains(c))
}

pub fn lex_cmp(a: &[Q], b: &[Q]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The value set of the ring itself.
pub fn nonnegative(x: &[Q]) -> bool {
    lex_cmp(x, &vec![Q::zero(); x.len()]) != Ordering::Less
}

/// The upper set `{γ : γ[..depth] ≥ p[..depth]}` (strict when `open`),
/// straight from the definition of a cut.
pub fn cut_set(point: Vec<Q>, open: bool, depth: usize) -> impl Fn(&[Q]) -> bool {
    move |x: &[Q]| match lex_cmp(&x[..depth], &point[..depth]) {
        Ordering::Greater => true,
        Ordering::Equal => !open,
        Ordering::Less => false,
    }
}

/// `Γ ∩ grid ∩ [−bound, bound]^rank`, implicitly listed in lex order.
#[derive(Clone, Debug)]
pub struct LexGrid {
    factors: Vec<Factor>,
    steps: Vec<Q>,
    counts: Vec<u128>,
    bound: i64,
}

impl LexGrid {
    pub fn new(factors: &[Factor], level: u32, bound: i64) -> LexGrid {
        let steps: Vec<Q> = factors.iter().map(|f| f.step(level)).collect();
        let counts = steps
            .iter()
            .map(|s| {
                let n = Q::from_integer(BigInt::from(2 * bound)) / s;
                let n: u128 = n.to_integer().try_into().expect("grid too large");
                n + 1
            })
            .collect();
        LexGrid { factors: factors.to_vec(), steps, counts, bound }
    }

    pub fn len(&self) -> u128 {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, mut index: u128) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let k = index % self.counts[i];
            index /= self.counts[i];
            out[i] = Q::from_integer(BigInt::from(-self.bound)) + &self.steps[i] * Q::from_integer(BigInt::from(k));
        }
        out
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<Q>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Least grid point satisfying a predicate that is monotone in lex order.
    pub fn first(&self, pred: &dyn Fn(&[Q]) -> bool) -> Option<Vec<Q>> {
        let (mut lo, mut hi) = (0u128, self.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if pred(&self.point(mid)) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        (lo < self.len()).then(|| self.point(lo))
    }
}

/// Upper-set arithmetic checked on a test grid.
#[derive(Clone, Debug)]
pub struct GridOracle {
    test: LexGrid,
    fine: LexGrid,
    finer: LexGrid,
}

pub type Pred<'a> = Box<dyn Fn(&[Q]) -> bool + 'a>;

impl GridOracle {
    /// Test grid at `level` inside `[−bound, bound]`; the search grids reach
    /// three times as far so that truncated cuts look unbounded below.
    pub fn new(factors: &[Factor], level: u32, bound: i64) -> GridOracle {
        GridOracle {
            test: LexGrid::new(factors, level, bound),
            fine: LexGrid::new(factors, level + 3, 3 * bound),
            finer: LexGrid::new(factors, level + 6, 3 * bound),
        }
    }

    pub fn test_points(&self) -> Vec<Vec<Q>> {
        self.test.points().collect()
    }

    fn least(grid: &LexGrid, set: &dyn Fn(&[Q]) -> bool) -> Vec<Q> {
        grid.first(set).expect("upper set misses the search box")
    }

    /// `γ ∈ IJ ⟺ γ − a ∈ J` for the least `a ∈ I`.
    pub fn product<'a>(&self, i: &dyn Fn(&[Q]) -> bool, j: Pred<'a>) -> Pred<'a> {
        let a = Self::least(&self.fine, i);
        Box::new(move |x| j(&sub(x, &a)))
    }

    /// `γ ∈ (I : J) ⟺ γ + b ∈ I` for the least `b ∈ J`.
    pub fn colon<'a>(&self, i: Pred<'a>, j: &dyn Fn(&[Q]) -> bool) -> Pred<'a> {
        let b = Self::least(&self.fine, j);
        Box::new(move |x| i(&add(x, &b)))
    }

    /// `(V : (V : I))`, the inner colon measured on the finer grid.
    pub fn v_closure<'a>(&self, i: &dyn Fn(&[Q]) -> bool) -> Pred<'a> {
        let b = Self::least(&self.finer, i);
        let inverse = move |x: &[Q]| nonnegative(&add(x, &b));
        let c = Self::least(&self.fine, &inverse);
        Box::new(move |x| nonnegative(&add(x, &c)))
    }

    /// Test points where two upper sets disagree.
    pub fn disagreements(&self, a: &dyn Fn(&[Q]) -> bool, b: &dyn Fn(&[Q]) -> bool) -> Vec<Vec<Q>> {
        self.test.points().filter(|x| a(x) != b(x)).collect()
    }
}

/// Least positive element of the grid at `level`.
pub fn least_positive(factors: &[Factor], level: u32, bound: i64) -> Option<Vec<Q>> {
    let g = LexGrid::new(factors, level, bound);
    let zero = vec![Q::zero(); factors.len()];
    g.first(&|x| lex_cmp(x, &zero) == Ordering::Greater)
}

/// A least positive element exists iff refining the grid does not produce a
/// smaller positive.
pub fn min_positive(factors: &[Factor], level: u32) -> Option<Vec<Q>> {
    let coarse = least_positive(factors, level, 1)?;
    let fine = least_positive(factors, level + 4, 1)?;
    (coarse == fine && coarse.iter().all(|c| !c.is_negative())).then_some(coarse)
}
