//! Upper sets of a finite-rank ordered group, encoded by a hull point.
//!
//! A cut `(point, open, depth)` denotes
//! `{γ ∈ Γ : prefix(γ) > prefix(point)}` when open and `≥` when closed,
//! where `prefix` keeps the first `depth` coordinates. `depth < rank` means
//! the trailing coordinates are unconstrained, which is how upper sets such
//! as `{γ : γ₀ ≥ 1}` in `Z ⊕ Z[1/2]` (no least element, no rational
//! infimum) are represented.
//!
//! Canonical form, applied by every constructor:
//! 1. if some prefix coordinate `pᵢ` is not in its factor, the set only
//!    depends on the first `i+1` coordinates: depth becomes `i+1`, the cut
//!    closes, and for a `Z` factor `pᵢ` rounds up to `⌈pᵢ⌉`;
//! 2. an open cut whose last significant factor is discrete becomes the
//!    closed cut at the successor;
//! 3. coordinates past the depth are zero.
//!
//! Distinct canonical cuts denote distinct upper sets.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{HullPoint, OrderedGroup, RankOne};
use crate::rational::format_rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    point: HullPoint,
    open: bool,
    depth: usize,
}

impl Cut {
    /// Full-depth cut at a hull point, canonicalized for `group`.
    pub fn new(group: &OrderedGroup, point: HullPoint, open: bool) -> Result<Cut> {
        let depth = group.rank();
        Self::with_depth(group, point, open, depth)
    }

    pub fn with_depth(group: &OrderedGroup, point: HullPoint, open: bool, depth: usize) -> Result<Cut> {
        if point.rank() != group.rank() {
            return Err(Error::RankMismatch(point.rank(), group.rank()));
        }
        if depth == 0 || depth > group.rank() {
            return Err(Error::InvalidSubgroup { k: depth, rank: group.rank() });
        }
        Ok(Self::canonical(&group.factors(), point, open, depth))
    }

    pub(crate) fn canonical(factors: &[RankOne], mut point: HullPoint, mut open: bool, mut depth: usize) -> Cut {
        debug_assert_eq!(point.rank(), factors.len());
        let coords = point.coords_mut();
        if let Some(i) = (0..depth).find(|&i| !factors[i].contains(&coords[i])) {
            depth = i + 1;
            open = false;
            if factors[i].is_discrete() {
                coords[i] = coords[i].ceil();
            }
        } else if open && factors[depth - 1].is_discrete() {
            coords[depth - 1] += num_rational::BigRational::one();
            open = false;
        }
        for c in coords.iter_mut().skip(depth) {
            *c = Zero::zero();
        }
        Cut { point, open, depth }
    }

    pub fn point(&self) -> &HullPoint {
        &self.point
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn rank(&self) -> usize {
        self.point.rank()
    }

    /// Whether `x` lies in the upper set.
    pub fn admits(&self, x: &HullPoint) -> bool {
        let d = self.depth;
        match x.coords()[..d].cmp(&self.point.coords()[..d]) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => !self.open,
            std::cmp::Ordering::Less => false,
        }
    }

    pub(crate) fn prefix(&self, d: usize) -> HullPoint {
        let mut c = self.point.coords().to_vec();
        for x in c.iter_mut().skip(d) {
            *x = Zero::zero();
        }
        HullPoint::new(c)
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.open { "open" } else { "closed" };
        let c = self.point.coords();
        if c.len() == 1 {
            return write!(f, "cut({}, {kind})", format_rational(&c[0]));
        }
        write!(f, "cut((")?;
        for (i, x) in c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if i < self.depth {
                write!(f, "{}", format_rational(x))?;
            } else {
                write!(f, "*")?;
            }
        }
        write!(f, "), {kind})")
    }
}
