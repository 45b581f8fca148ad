//! Exact computations in Thompson's group `T`.
//!
//! Elements of `T` are dyadic piecewise-linear homeomorphisms of the circle
//! `R/Z`, represented by exact lifts to the real line. On top of the group
//! arithmetic the crate provides rotation numbers and torsion certificates,
//! explicit conjugators onto the pseudo-rotations `γ_q`, the projection and
//! section of the centralizer extension `1 -> C -> Z_T C -> T -> 1`, and the
//! rank bookkeeping for the rationalized K-theory assembly source of `T`.
//!
//! No floating point is used anywhere; every equality is exact.

pub mod centralizer;
pub mod cli;
pub mod conjugacy;
pub mod dyadic;
pub mod dynamics;
pub mod element;
pub mod ktheory;
pub mod lift;

pub use dyadic::Dyadic;
pub use element::CircleElement;
