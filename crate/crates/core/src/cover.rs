//! The nested families of open rational intervals covering the irrationals.
//!
//! Level `n` consists of one interval per digit word `[a0; a1, ..., an]`.
//! With `v` the value of the word and `v+` the value of the word with its
//! last digit incremented, the interval is `(v, v+)` at even levels and
//! `(v+, v)` at odd levels. The children of a word are its one-digit
//! extensions `k = 1, 2, ...`, whose endpoints run monotonically from `v+`
//! towards `v`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cf::{evaluate, expand_surd, DigitWord};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::PropertyCheck;
use crate::surd::QuadraticSurd;

/// Open interval `(lo, hi)` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct IntervalQ {
    lo: Rational,
    hi: Rational,
}

impl IntervalQ {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::domain(format!("empty interval ({lo}, {hi})")));
        }
        Ok(IntervalQ { lo, hi })
    }

    /// The open interval between two distinct points, in either order.
    pub fn between(a: Rational, b: Rational) -> Result<Self> {
        match a.cmp(&b) {
            Ordering::Less => Self::new(a, b),
            _ => Self::new(b, a),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_surd(&self, x: &QuadraticSurd) -> bool {
        x.cmp_rational(&self.lo) == Ordering::Greater && x.cmp_rational(&self.hi) == Ordering::Less
    }

    /// `other ⊆ self` as open intervals.
    pub fn includes(&self, other: &IntervalQ) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The closure `[other.lo, other.hi]` lies inside the open `self`.
    pub fn includes_closure_of(&self, other: &IntervalQ) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn is_disjoint(&self, other: &IntervalQ) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A member of the level-`word.level()` cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverMember {
    word: DigitWord,
    interval: IntervalQ,
}

impl CoverMember {
    pub fn new(word: DigitWord) -> Self {
        let interval = interval_of(&word);
        CoverMember { word, interval }
    }

    pub fn level(&self) -> usize {
        self.word.level()
    }

    pub fn word(&self) -> &DigitWord {
        &self.word
    }

    pub fn interval(&self) -> &IntervalQ {
        &self.interval
    }
}

/// The interval addressed by a digit word.
pub fn interval_of(word: &DigitWord) -> IntervalQ {
    let v = evaluate(word);
    let v_plus = evaluate(&word.bump_last());
    let interval = if word.level().is_multiple_of(2) {
        IntervalQ::new(v, v_plus)
    } else {
        IntervalQ::new(v_plus, v)
    };
    interval.expect("incrementing the last digit moves the value in the parity direction")
}

/// `interval_of` for raw digits, validating them first.
pub fn interval_of_digits(digits: &[BigInt]) -> Result<IntervalQ> {
    Ok(interval_of(&DigitWord::new(digits.to_vec())?))
}

/// The members of the next level inside `word`, for `k = 1..=k_max`.
pub fn children(word: &DigitWord, k_max: u64) -> Vec<CoverMember> {
    (1..=k_max)
        .map(|k| CoverMember::new(word.push(BigInt::from(k)).expect("k >= 1")))
        .collect()
}

/// The unique level-`level` word whose interval contains `x`.
pub fn locate(x: &QuadraticSurd, level: usize) -> Result<DigitWord> {
    let word = expand_surd(x, level);
    let interval = interval_of(&word);
    if !interval.contains_surd(x) {
        return Err(Error::Internal(format!(
            "{x} not inside {interval} addressed by {word}"
        )));
    }
    Ok(word)
}

/// All members of levels `0..=max_level` with head in `a0_range` and later
/// digits in `1..=digit_max`, children ordered by `k` ascending.
pub fn enumerate_levels(
    max_level: usize,
    a0_range: (i64, i64),
    digit_max: u64,
) -> Result<Vec<Vec<CoverMember>>> {
    let (a0_min, a0_max) = a0_range;
    if a0_min > a0_max {
        return Err(Error::domain(format!("empty head range [{a0_min}, {a0_max}]")));
    }
    if digit_max == 0 && max_level > 0 {
        return Err(Error::domain("digit bound must be positive"));
    }
    let mut levels = vec![(a0_min..=a0_max)
        .map(|a0| CoverMember::new(DigitWord::from_i64s(&[a0]).expect("one digit")))
        .collect::<Vec<_>>()];
    for _ in 0..max_level {
        let next = levels
            .last()
            .expect("level 0 present")
            .iter()
            .flat_map(|m| children(&m.word, digit_max))
            .collect();
        levels.push(next);
    }
    Ok(levels)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoverReport {
    pub max_level: usize,
    pub a0_min: i64,
    pub a0_max: i64,
    pub digit_max: u64,
    pub members_per_level: Vec<usize>,
    /// Largest interval length seen at each level.
    pub level_mesh: Vec<Rational>,
    /// Members of one level are pairwise disjoint.
    pub disjoint: PropertyCheck,
    /// Each member lies in exactly one member of the previous level.
    pub refines: PropertyCheck,
    /// The closure of each member lies in a member two levels up.
    pub closure_refines: PropertyCheck,
    /// Level 0 lengths are 1, level 1 lengths at most 1/2, and level
    /// n >= 2 lengths below 1/(n+1).
    pub mesh: PropertyCheck,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.disjoint.passed && self.refines.passed && self.closure_refines.passed && self.mesh.passed
    }
}

/// Indices of `level` sorted by left endpoint.
fn sorted_by_lo(level: &[CoverMember]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..level.len()).collect();
    idx.sort_by(|&a, &b| level[a].interval.lo.cmp(&level[b].interval.lo));
    idx
}

/// Members of a disjoint level, sorted by `lo`, that include `target`.
fn containing<'a>(
    level: &'a [CoverMember],
    order: &[usize],
    target: &IntervalQ,
) -> Vec<&'a CoverMember> {
    let end = order.partition_point(|&i| level[i].interval.lo <= target.lo);
    order[..end]
        .iter()
        .rev()
        .map(|&i| &level[i])
        .take_while(|m| m.interval.hi > target.lo)
        .filter(|m| m.interval.includes(target))
        .collect()
}

/// Checks disjointness, refinement, closure refinement and the mesh bound
/// on a truncated enumeration of the covers.
pub fn verify_cover_properties(
    max_level: usize,
    a0_range: (i64, i64),
    digit_max: u64,
) -> Result<CoverReport> {
    let levels = enumerate_levels(max_level, a0_range, digit_max)?;
    let orders: Vec<Vec<usize>> = levels.iter().map(|l| sorted_by_lo(l)).collect();

    let mut disjoint = PropertyCheck::new();
    for (level, order) in levels.iter().zip(&orders) {
        for pair in order.windows(2) {
            let (a, b) = (&level[pair[0]], &level[pair[1]]);
            disjoint.record(a.interval.hi <= b.interval.lo, || {
                format!("{} {} overlaps {} {}", a.word, a.interval, b.word, b.interval)
            });
        }
    }

    let mut refines = PropertyCheck::new();
    for i in 1..levels.len() {
        for child in &levels[i] {
            let parent_word = child.word.prefix(i).expect("level i word has i+1 digits");
            let hosts = containing(&levels[i - 1], &orders[i - 1], &child.interval);
            let ok = hosts.len() == 1 && hosts[0].word == parent_word;
            refines.record(ok, || {
                let names: Vec<String> = hosts.iter().map(|m| m.word.to_string()).collect();
                format!(
                    "{} {} lies in [{}], expected exactly {}",
                    child.word,
                    child.interval,
                    names.join(", "),
                    parent_word
                )
            });
        }
    }

    // The member two levels up containing a member is its grandparent
    // word; disjointness rules out any other host.
    let mut closure_refines = PropertyCheck::new();
    for (i, level) in levels.iter().enumerate().skip(2) {
        for m in level {
            let host = interval_of(&m.word.prefix(i - 1).expect("level i word has i+1 digits"));
            closure_refines.record(host.includes_closure_of(&m.interval), || {
                format!("closure of {} {} not inside {host}", m.word, m.interval)
            });
        }
    }

    let mut mesh = PropertyCheck::new();
    let mut level_mesh = Vec::with_capacity(levels.len());
    for (n, level) in levels.iter().enumerate() {
        let bound = Rational::new(1, n as u64 + 1).expect("positive");
        let mut widest = Rational::zero();
        for m in level {
            let len = m.interval.length();
            // [a0; 1] = (a0 + 1/2, a0 + 1) attains 1/2 at level 1.
            let ok = match n {
                0 => len == Rational::one(),
                1 => len <= bound,
                _ => len < bound,
            };
            mesh.record(ok, || {
                format!("{} {} has length {len} at level {n}", m.word, m.interval)
            });
            if len > widest {
                widest = len;
            }
        }
        level_mesh.push(widest);
    }

    Ok(CoverReport {
        max_level,
        a0_min: a0_range.0,
        a0_max: a0_range.1,
        digit_max,
        members_per_level: levels.iter().map(Vec::len).collect(),
        level_mesh,
        disjoint,
        refines,
        closure_refines,
        mesh,
    })
}
