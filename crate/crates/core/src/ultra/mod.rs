//! Finite models of zero-dimensional metric spaces.
//!
//! Everything the general theory says about separable spaces is checked
//! here on its finite shadow: disjointification of covers, the sequence of
//! shrinking, refining partitions, the ultrametric they induce, the ball
//! geometry of ultrametrics, and the embedding into Baire space.
//!
//! The passage from an ultrametric back to disjoint covers needs no
//! separate operation on a finite space: equal-radius balls already
//! partition it, which [`verify_ball_properties`] checks.

mod construct;
mod disjoint;
mod space;
mod verify;

pub use construct::{build_cover_sequence, sierpinski_embed, ultrametric_from_covers};
pub use disjoint::{disjointify, disjointify_indexed};
pub use space::{CoverSequence, CoverSequenceJson, DistanceTable, FiniteSpace, FiniteSpaceJson};
pub use verify::{
    ball_radii, verify_ball_properties, verify_base_equality, verify_ultrametric, BallReport,
    BaseEqualityReport, UltrametricReport,
};
