//! Exact multiplicative ideal theory over two computable domain families:
//! valuation domains presented by a finite-rank value group, and quadratic
//! orders presented by a discriminant.
//!
//! The [`star`] module interprets star and semistar operations on either
//! backend, [`content`] evaluates polynomial content identities, and
//! [`classgroup`] computes `Cl^v` descriptors and norm-bounded class surveys.

pub mod classgroup;
pub mod content;
pub mod cut;
pub mod domain;
pub mod error;
pub mod groups;
pub mod quadratic;
pub mod rational;
pub mod sample;
pub mod star;
pub mod valuation;

pub use cut::Cut;
pub use domain::{Domain, Elem, Ideal};
pub use error::{Error, Result};
pub use groups::{ConvexSubgroup, GroupElement, HullPoint, OrderedGroup, RankOne};
pub use quadratic::{LatticeIdeal, QuadElem, QuadraticOrder};
pub use rational::Rational;
pub use star::{Overring, StarOp};
pub use valuation::{ValIdeal, ValPrime, ValuationDomain};
