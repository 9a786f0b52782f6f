//! Quadratic surds `(p + q*sqrt(d))/r`, the exact stand-in for an irrational
//! point. Comparison against rationals, floor and the continued-fraction
//! reciprocal step are all done in integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_int, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

/// Sign of `a + b*sqrt(d)` for `d` not a perfect square and `b != 0`.
fn sign_with_root(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    debug_assert!(!b.is_zero());
    let b_pos = b.is_positive();
    if !a.is_negative() && b_pos {
        return Ordering::Greater;
    }
    if !a.is_positive() && !b_pos {
        return Ordering::Less;
    }
    // Opposite signs: whichever term has the larger square wins. Equality is
    // impossible because d is not a square.
    let a2 = a * a;
    let b2d = b * b * d;
    let a_wins = a2 > b2d;
    match (a.is_positive(), a_wins) {
        (true, true) | (false, false) => Ordering::Greater,
        _ => Ordering::Less,
    }
}

impl QuadraticSurd {
    /// Builds `(p + q*sqrt(d))/r`, normalizing `r > 0` and `gcd(p, q, r) = 1`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let (mut p, mut q, d, mut r) = (p.into(), q.into(), d.into(), r.into());
        if d < BigInt::from(2) {
            return Err(Error::domain(format!("radicand must be at least 2, got {d}")));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(Error::domain(format!("radicand {d} is a perfect square")));
        }
        if q.is_zero() {
            return Err(Error::domain("surd coefficient q must be nonzero"));
        }
        if r.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(QuadraticSurd { p, q, d, r })
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, d, 1)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// Exact sign of `self - x`. Never `Equal`: a surd is irrational.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        // (p + q√d)/r - a/b = (b·p - a·r + b·q·√d) / (r·b), with r, b > 0.
        let a = x.numer();
        let b = x.denom();
        let rational_part = b * &self.p - a * &self.r;
        let root_part = b * &self.q;
        sign_with_root(&rational_part, &root_part, &self.d)
    }

    /// `floor(self)`, the greatest integer below the surd.
    pub fn floor(&self) -> BigInt {
        // floor(q√d) from the integer square root of q²d, which is never a
        // perfect square.
        let n = &self.q * &self.q * &self.d;
        let s = n.sqrt();
        let q_root_floor = if self.q.is_positive() { s } else { -s - 1 };
        (&self.p + q_root_floor).div_floor(&self.r)
    }

    /// `1/(self - floor(self))`, which is again a surd over the same radicand
    /// and strictly greater than one.
    pub fn recip_frac(&self) -> QuadraticSurd {
        let m = self.floor();
        // self - m = (P + q√d)/r; its reciprocal is r(P - q√d)/(P² - q²d).
        let big_p = &self.p - &m * &self.r;
        let den = &big_p * &big_p - &self.q * &self.q * &self.d;
        let p = &self.r * &big_p;
        let q = -(&self.r * &self.q);
        QuadraticSurd::new(p, q, self.d.clone(), den)
            .expect("reciprocal of a surd is a surd over the same radicand")
    }

    /// The negated surd.
    pub fn neg(&self) -> QuadraticSurd {
        QuadraticSurd {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
            r: self.r.clone(),
        }
    }
}

/// Free-function spelling of [`QuadraticSurd::cmp_rational`].
pub fn surd_compare(s: &QuadraticSurd, x: &Rational) -> Ordering {
    s.cmp_rational(x)
}

/// Free-function spelling of [`QuadraticSurd::floor`].
pub fn surd_floor(s: &QuadraticSurd) -> BigInt {
    s.floor()
}

/// Free-function spelling of [`QuadraticSurd::recip_frac`].
pub fn surd_recip_frac(s: &QuadraticSurd) -> QuadraticSurd {
    s.recip_frac()
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            sign,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    /// Parses `(p+q*sqrt(d))/r`; `(p-q*sqrt(d))/r` and `(p+-q*sqrt(d))/r`
    /// are accepted for negative `q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::parse(s, why);
        let body = s.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let (inner, r_text) = body
            .rsplit_once(")/")
            .ok_or_else(|| bad("expected ')/r'"))?;
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| bad("expected 'sqrt(d)'"))?;
        let (coeffs, d_text) = inner
            .split_once("*sqrt(")
            .ok_or_else(|| bad("expected '*sqrt('"))?;
        // The sign separating p from q is the first '+' or '-' after p's own
        // optional leading minus.
        let split_at = coeffs
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(|| bad("expected 'p+q' or 'p-q'"))?;
        let p = parse_int(&coeffs[..split_at])?;
        let rest = &coeffs[split_at..];
        let q = match rest.strip_prefix('+') {
            Some(q) => parse_int(q)?,
            None => -parse_int(&rest[1..])?,
        };
        let d = parse_int(d_text)?;
        let r = parse_int(r_text)?;
        QuadraticSurd::new(p, q, d, r)
    }
}
