//! The continued-fraction map φ: B₂ → irrationals, at finite precision.
//!
//! φ(p) is the single point common to the nested intervals addressed by the
//! prefixes of `p`. Only these approximations exist here; exact membership
//! of a concrete irrational is decided with quadratic surds.

use num_bigint::BigInt;
use crate::baire::Baire2Prefix;
use crate::cf::DigitWord;
use crate::cover::{interval_of, locate, IntervalQ};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::surd::QuadraticSurd;

/// The depth-`depth` enclosure of φ(p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiApproximation {
    pub depth: usize,
    pub word: DigitWord,
    pub interval: IntervalQ,
    pub midpoint: Rational,
}

/// Cover member addressed by `p_0, ..., p_depth`.
pub fn phi_forward(p: &Baire2Prefix, depth: usize) -> Result<PhiApproximation> {
    let word = DigitWord::new(p.digits(depth + 1)?)?;
    let interval = interval_of(&word);
    let midpoint = interval.midpoint();
    Ok(PhiApproximation {
        depth,
        word,
        interval,
        midpoint,
    })
}

/// The first `depth + 1` coordinates of φ⁻¹(x).
pub fn phi_inverse(x: &QuadraticSurd, depth: usize) -> Result<Baire2Prefix> {
    let word = locate(x, depth)?;
    Baire2Prefix::new(word.into_digits(), None)
}

/// The image of the ball `N(a, 1/n)` of B₂ under φ, checked by sampling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BallImage {
    /// Fixed coordinates `a_0, ..., a_{n-1}` of the cylinder.
    pub cylinder: Vec<BigInt>,
    pub interval: IntervalQ,
    /// Sampled points of the cylinder whose enclosures were tested.
    pub samples: usize,
    /// Every sampled enclosure lies inside `interval`.
    pub all_inside: bool,
}

/// Largest extra digit used when sampling a cylinder.
const SAMPLE_DIGIT_MAX: i64 = 3;
/// Number of coordinates appended past the cylinder when sampling.
const SAMPLE_EXTRA_DEPTH: usize = 2;

/// `N(a, 1/n)` is the cylinder fixing `a_i` for `i < n`; its image is the
/// interval addressed by those `n` digits. Points of the cylinder are
/// sampled by appending up to two digits from `1..=3` and the resulting
/// enclosures are checked to sit inside that interval.
pub fn check_ball_image(a: &Baire2Prefix, n: usize) -> Result<BallImage> {
    if n == 0 {
        return Err(Error::domain("ball index n must be positive"));
    }
    let cylinder = a.digits(n)?;
    let base = DigitWord::new(cylinder.clone())?;
    let interval = interval_of(&base);

    let mut frontier = vec![base];
    let mut samples = 0;
    let mut all_inside = true;
    for step in 0..=SAMPLE_EXTRA_DEPTH {
        for word in &frontier {
            samples += 1;
            all_inside &= interval.includes(&interval_of(word));
        }
        if step == SAMPLE_EXTRA_DEPTH {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|w| (1..=SAMPLE_DIGIT_MAX).map(move |k| w.push(k.into()).expect("k >= 1")))
            .collect();
    }
    // The point's own continuation, as far as it is defined.
    if let Ok(own) = a.digits(n + SAMPLE_EXTRA_DEPTH + 1) {
        samples += 1;
        all_inside &= interval.includes(&interval_of(&DigitWord::new(own)?));
    }

    Ok(BallImage {
        cylinder,
        interval,
        samples,
        all_inside,
    })
}
