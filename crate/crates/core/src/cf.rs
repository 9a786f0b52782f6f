//! Continued-fraction digit words.
//!
//! A [`DigitWord`] is any finite sequence `[a0; a1, ..., an]` with `a0`
//! an integer and every later digit at least one. A [`CfWord`] is the
//! canonical expansion of a rational: in addition its last digit is at
//! least two whenever the word has more than one digit.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{euclid_div, parse_int, Rational};
use crate::surd::QuadraticSurd;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DigitWord(Vec<BigInt>);

impl DigitWord {
    pub fn new(digits: Vec<BigInt>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::domain("a digit word needs at least one digit"));
        }
        if let Some((i, a)) = digits
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, a)| !a.is_positive())
        {
            return Err(Error::domain(format!(
                "digit {i} must be a positive integer, got {a}"
            )));
        }
        Ok(DigitWord(digits))
    }

    pub fn from_i64s(digits: &[i64]) -> Result<Self> {
        Self::new(digits.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the last digit; also the cover level the word addresses.
    pub fn level(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_canonical(&self) -> bool {
        self.0.len() == 1 || self.0.last().is_some_and(|a| *a >= BigInt::from(2))
    }

    /// The word extended by one more digit `k >= 1`.
    pub fn push(&self, k: BigInt) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::domain(format!("appended digit must be positive, got {k}")));
        }
        let mut digits = self.0.clone();
        digits.push(k);
        Ok(DigitWord(digits))
    }

    /// The word with its last digit incremented, `[a0; ..., an + 1]`.
    pub fn bump_last(&self) -> Self {
        let mut digits = self.0.clone();
        *digits.last_mut().expect("non-empty") += 1;
        DigitWord(digits)
    }

    /// The first `len` digits.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.0.len() {
            return Err(Error::domain(format!(
                "prefix length {len} outside 1..={}",
                self.0.len()
            )));
        }
        Ok(DigitWord(self.0[..len].to_vec()))
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.0[0])?;
        for (i, a) in self.0.iter().enumerate().skip(1) {
            let sep = if i == 1 { "; " } else { ", " };
            write!(f, "{sep}{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    /// Parses `[a0]` or `[a0; a1, a2, ...]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::parse(s, "expected '[a0; a1, ...]'"))?;
        let (head, rest) = match body.split_once(';') {
            Some((h, r)) => (h, Some(r)),
            None => (body, None),
        };
        let mut digits = vec![parse_int(head)?];
        if let Some(rest) = rest {
            for tok in rest.split(',') {
                digits.push(parse_int(tok)?);
            }
        }
        DigitWord::new(digits).map_err(|e| Error::parse(s, e.to_string()))
    }
}

/// A canonical continued-fraction word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CfWord(DigitWord);

impl CfWord {
    pub fn new(word: DigitWord) -> Result<Self> {
        if !word.is_canonical() {
            return Err(Error::domain(format!(
                "{word} is not canonical: last digit must be at least 2"
            )));
        }
        Ok(CfWord(word))
    }

    pub fn as_word(&self) -> &DigitWord {
        &self.0
    }
}

impl Deref for CfWord {
    type Target = DigitWord;
    fn deref(&self) -> &DigitWord {
        &self.0
    }
}

impl fmt::Display for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CfWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CfWord::new(s.parse()?).map_err(|e| Error::parse(s, e.to_string()))
    }
}

/// Canonical expansion by repeated floor division.
pub fn expand_rational(x: &Rational) -> Result<CfWord> {
    let mut a = x.numer().clone();
    let mut b = x.denom().clone();
    // Euclid needs at most ~1.44 * bits(b) + 2 steps.
    let max_steps = 2 * b.bits() + 2;
    let mut digits = Vec::new();
    loop {
        if digits.len() as u64 > max_steps {
            return Err(Error::Internal(format!(
                "Euclidean expansion of {x} did not terminate within {max_steps} steps"
            )));
        }
        let (q, r) = euclid_div(&a, &b)?;
        digits.push(q);
        if r.is_zero() {
            break;
        }
        a = std::mem::replace(&mut b, r);
    }
    CfWord::new(DigitWord(digits))
}

/// Exact value of the nested fraction, folded from the last digit inwards.
pub fn evaluate(word: &DigitWord) -> Rational {
    let (last, init) = word.digits().split_last().expect("non-empty");
    init.iter().rev().fold(Rational::from(last.clone()), |acc, a| {
        Rational::from(a.clone()) + acc.recip().expect("partial values are at least one")
    })
}

/// Value of `[a0; ..., an, x]` for a positive rational tail `x`.
pub fn evaluate_with_tail(prefix: &DigitWord, x: &Rational) -> Result<Rational> {
    if !x.is_positive() {
        return Err(Error::domain(format!("tail must be positive, got {x}")));
    }
    Ok(prefix.digits().iter().rev().fold(x.clone(), |acc, a| {
        Rational::from(a.clone()) + acc.recip().expect("partial values are positive")
    }))
}

/// Values of every prefix, via the numerator/denominator recurrence.
pub fn convergents(word: &DigitWord) -> Vec<Rational> {
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    word.digits()
        .iter()
        .map(|a| {
            let h_next = a * &h + &h_prev;
            let k_next = a * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            Rational::new(h.clone(), k.clone()).expect("convergent denominators are positive")
        })
        .collect()
}

/// The first `depth + 1` digits of the infinite expansion of `s`.
///
/// The result is a truncation, so it need not be canonical.
pub fn expand_surd(s: &QuadraticSurd, depth: usize) -> DigitWord {
    let mut digits = Vec::with_capacity(depth + 1);
    let mut x = s.clone();
    for i in 0..=depth {
        digits.push(x.floor());
        if i < depth {
            x = x.recip_frac();
        }
    }
    DigitWord(digits)
}
