//! Exact continued fractions, Baire space and the nested interval covers of
//! the irrationals.
//!
//! * [`rational`] and [`surd`]: exact rationals and quadratic surds, the
//!   concrete irrationals used throughout.
//! * [`cf`]: continued-fraction words, expansion and evaluation.
//! * [`baire`]: points of Baire space and of B₂, the Baire metric, cylinders
//!   and the isometry Ψ between the two.
//! * [`cover`]: the families of open rational intervals addressed by digit
//!   words, and an exhaustive verifier for their properties.
//! * [`homeo`]: the continued-fraction homeomorphism φ from B₂ onto the
//!   irrationals, as nested approximations.
//! * [`ultra`]: finite ultrametric spaces built from covers, and their
//!   embedding into Baire space.

pub mod baire;
pub mod cf;
pub mod cover;
pub mod error;
pub mod homeo;
pub mod rational;
pub mod report;
pub mod surd;
pub mod ultra;

pub use baire::{
    baire_distance, cylinder_of_ball, first_difference, psi_inverse, psi_map, Baire2Prefix,
    BairePrefix, Cylinder, Distance,
};
pub use cf::{convergents, evaluate, evaluate_with_tail, expand_rational, expand_surd, CfWord, DigitWord};
pub use cover::{children, interval_of, locate, verify_cover_properties, CoverMember, CoverReport, IntervalQ};
pub use error::{Error, Result};
pub use homeo::{check_ball_image, phi_forward, phi_inverse, BallImage, PhiApproximation};
pub use rational::{euclid_div, Rational};
pub use report::PropertyCheck;
pub use surd::{surd_compare, surd_floor, surd_recip_frac, QuadraticSurd};
