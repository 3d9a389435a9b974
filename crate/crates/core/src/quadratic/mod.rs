//! Quadratic orders and their fractional ideals.

mod enumerate;
mod field;
mod ideal;
mod lattice;
mod order;

pub use enumerate::{integral_ideals_up_to, maximal_ideals_up_to, REAL_SEARCH_RADIUS};
pub use field::QuadElem;
pub(crate) use field::ElemParser;
pub use ideal::LatticeIdeal;
pub use lattice::{Lattice, Vec2};
pub use order::QuadraticOrder;
