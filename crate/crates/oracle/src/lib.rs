//! Reference computations for cross-checking, written from the definitions
//! with no shared code: upper sets on grids, lattice spans, reduced forms.

pub mod forms;
pub mod grid;
pub mod span;
