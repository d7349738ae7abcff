//! Exact verification toolkit for prehomogeneous vector spaces with a
//! one-dimensional quotient: root systems and parabolic gradings, exact
//! matrix realizations of the acting Lie algebras, relative invariants, and
//! the rank, isotropy and character computations that classify each space.

pub mod analyzer;
pub mod catalog;
pub mod grading;
pub mod invariants;
pub mod linalg;
pub mod reps;
pub mod roots;
