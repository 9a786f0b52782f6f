//! Points of Baire space and of its integer-headed variant B₂.
//!
//! A point is a finite list of entries, optionally followed by a block that
//! repeats forever. Points with a tail are total and can be compared
//! exactly; points without one are prefixes, and distances involving them
//! are only known up to the inspected bound (see [`Distance::AtMost`]). The
//! `AtMost` reading is an extension for truncated data: the metric itself is
//! only defined on total sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Entries plus an optional repeating tail.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Stream<T> {
    entries: Vec<T>,
    tail: Option<Vec<T>>,
}

impl<T: Clone + Eq> Stream<T> {
    fn new(entries: Vec<T>, tail: Option<Vec<T>>) -> Result<Self> {
        if tail.as_ref().is_some_and(Vec::is_empty) {
            return Err(Error::domain("a repeating tail needs at least one entry"));
        }
        Ok(Stream { entries, tail })
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn tail(&self) -> Option<&[T]> {
        self.tail.as_deref()
    }

    pub fn is_total(&self) -> bool {
        self.tail.is_some()
    }

    /// Value at index `i`, if the representation reaches it.
    pub fn get(&self, i: usize) -> Option<&T> {
        if let Some(v) = self.entries.get(i) {
            return Some(v);
        }
        let tail = self.tail.as_ref()?;
        Some(&tail[(i - self.entries.len()) % tail.len()])
    }

    /// Unique representation of a total point: shortest period, shortest
    /// pre-period. Prefixes are returned unchanged.
    pub fn normal_form(&self) -> Self {
        let Some(tail) = &self.tail else {
            return self.clone();
        };
        let n = tail.len();
        let period = (1..=n)
            .find(|p| n % p == 0 && (0..n).all(|i| tail[i] == tail[(i + p) % n]))
            .unwrap_or(n);
        let mut tail = tail[..period].to_vec();
        let mut entries = self.entries.clone();
        while entries.last().is_some() && entries.last() == tail.last() {
            entries.pop();
            tail.rotate_right(1);
        }
        Stream {
            entries,
            tail: Some(tail),
        }
    }

    fn map<U>(&self, head: impl Fn(&T) -> U, rest: impl Fn(&T) -> U) -> Stream<U> {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, v)| if i == 0 { head(v) } else { rest(v) })
            .collect();
        // Callers make index 0 an explicit entry first (`with_explicit_head`).
        let tail = self.tail.as_ref().map(|t| t.iter().map(&rest).collect());
        Stream { entries, tail }
    }

    /// Moves the first tail value into the entries if there are none, so that
    /// index 0 is an explicit entry.
    fn with_explicit_head(&self) -> Self {
        match (&self.tail, self.entries.is_empty()) {
            (Some(tail), true) => {
                let mut rotated = tail.clone();
                rotated.rotate_left(1);
                Stream {
                    entries: vec![tail[0].clone()],
                    tail: Some(rotated),
                }
            }
            _ => self.clone(),
        }
    }
}

/// Common view over [`BairePrefix`] and [`Baire2Prefix`].
pub trait Point {
    type Digit: Clone + Eq + fmt::Display;
    fn stream(&self) -> &Stream<Self::Digit>;
}

fn fmt_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, ")")
}

fn fmt_stream<T: fmt::Display>(f: &mut fmt::Formatter<'_>, s: &Stream<T>) -> fmt::Result {
    fmt_list(f, &s.entries)?;
    if let Some(tail) = &s.tail {
        write!(f, "~")?;
        fmt_list(f, tail)?;
    }
    Ok(())
}

fn parse_list<T>(text: &str, whole: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let body = text
        .trim()
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| Error::parse(whole, "expected '(a0,a1,...)'"))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(|t| item(t.trim())).collect()
}

fn parse_stream<T: Clone + Eq>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Stream<T>> {
    let (head, tail) = match s.split_once('~') {
        Some((h, t)) => (h, Some(t)),
        None => (s, None),
    };
    let entries = parse_list(head, s, &item)?;
    let tail = tail.map(|t| parse_list(t, s, &item)).transpose()?;
    Stream::new(entries, tail).map_err(|e| Error::parse(s, e.to_string()))
}

fn parse_digit(token: &str) -> Result<BigInt> {
    crate::rational::parse_int(token)
}

/// A point of Baire space: a sequence of non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BairePrefix(Stream<BigUint>);

impl BairePrefix {
    pub fn new(entries: Vec<BigUint>, tail: Option<Vec<BigUint>>) -> Result<Self> {
        Stream::new(entries, tail).map(BairePrefix)
    }

    pub fn from_u64s(entries: &[u64], tail: Option<&[u64]>) -> Result<Self> {
        let conv = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect();
        Self::new(conv(entries), tail.map(conv))
    }

    pub fn entries(&self) -> &[BigUint] {
        self.0.entries()
    }

    pub fn tail(&self) -> Option<&[BigUint]> {
        self.0.tail()
    }

    pub fn is_total(&self) -> bool {
        self.0.is_total()
    }

    pub fn get(&self, i: usize) -> Option<&BigUint> {
        self.0.get(i)
    }

    pub fn normal_form(&self) -> Self {
        BairePrefix(self.0.normal_form())
    }
}

impl Point for BairePrefix {
    type Digit = BigUint;
    fn stream(&self) -> &Stream<BigUint> {
        &self.0
    }
}

impl fmt::Display for BairePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_stream(f, &self.0)
    }
}

impl FromStr for BairePrefix {
    type Err = Error;

    /// Parses `(a0,a1,...)` with an optional `~(b0,...)` repeating tail.
    fn from_str(s: &str) -> Result<Self> {
        parse_stream(s, |t| {
            let v = parse_digit(t)?;
            v.to_biguint()
                .ok_or_else(|| Error::parse(t, "Baire entries must be non-negative"))
        })
        .map(BairePrefix)
    }
}

/// A point of B₂: an integer head followed by positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Baire2Prefix(Stream<BigInt>);

impl Baire2Prefix {
    pub fn new(entries: Vec<BigInt>, tail: Option<Vec<BigInt>>) -> Result<Self> {
        if let Some((i, v)) = entries.iter().enumerate().skip(1).find(|(_, v)| !v.is_positive()) {
            return Err(Error::domain(format!("entry {i} must be positive, got {v}")));
        }
        if let Some(v) = tail.iter().flatten().find(|v| !v.is_positive()) {
            return Err(Error::domain(format!("tail entries must be positive, got {v}")));
        }
        Stream::new(entries, tail).map(Baire2Prefix)
    }

    pub fn from_i64s(entries: &[i64], tail: Option<&[i64]>) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(conv(entries), tail.map(conv))
    }

    pub fn entries(&self) -> &[BigInt] {
        self.0.entries()
    }

    pub fn tail(&self) -> Option<&[BigInt]> {
        self.0.tail()
    }

    pub fn is_total(&self) -> bool {
        self.0.is_total()
    }

    pub fn get(&self, i: usize) -> Option<&BigInt> {
        self.0.get(i)
    }

    pub fn normal_form(&self) -> Self {
        Baire2Prefix(self.0.normal_form())
    }

    /// Digits at indices `0..len`.
    pub fn digits(&self, len: usize) -> Result<Vec<BigInt>> {
        (0..len)
            .map(|i| {
                self.get(i).cloned().ok_or_else(|| {
                    Error::InsufficientPrecision(format!(
                        "point {self} is not defined at index {i}"
                    ))
                })
            })
            .collect()
    }
}

impl Point for Baire2Prefix {
    type Digit = BigInt;
    fn stream(&self) -> &Stream<BigInt> {
        &self.0
    }
}

impl fmt::Display for Baire2Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_stream(f, &self.0)
    }
}

impl FromStr for Baire2Prefix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let stream = parse_stream(s, parse_digit)?;
        Baire2Prefix::new(stream.entries, stream.tail).map_err(|e| Error::parse(s, e.to_string()))
    }
}

/// A distance that is either known exactly or bounded from above.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Distance {
    Exact(Rational),
    AtMost(Rational),
}

impl Distance {
    pub fn value(&self) -> &Rational {
        match self {
            Distance::Exact(v) | Distance::AtMost(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Distance::Exact(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(v) => write!(f, "EXACT {v}"),
            Distance::AtMost(v) => write!(f, "AT_MOST {v}"),
        }
    }
}

fn undefined_at<P: Point + fmt::Display>(p: &P, i: usize) -> Error {
    Error::InsufficientPrecision(format!("point {p} is not defined at index {i}"))
}

/// Least index below `bound` where the points differ.
///
/// Scanning stops at the first difference, so a short prefix is only an
/// error if the scan actually needs the missing index.
pub fn first_difference<P: Point + fmt::Display>(f: &P, g: &P, bound: usize) -> Result<Option<usize>> {
    if bound == 0 {
        return Err(Error::domain("bound must be positive"));
    }
    scan(f, g, bound)
}

fn scan<P: Point + fmt::Display>(f: &P, g: &P, limit: usize) -> Result<Option<usize>> {
    for i in 0..limit {
        let a = f.stream().get(i).ok_or_else(|| undefined_at(f, i))?;
        let b = g.stream().get(i).ok_or_else(|| undefined_at(g, i))?;
        if a != b {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn reciprocal_index(k: usize) -> Rational {
    Rational::new(1, BigInt::from(k) + 1).expect("positive denominator")
}

/// The Baire metric `1/(k+1)`, `k` the first index of disagreement.
///
/// Two total points are compared exactly whatever the bound: eventually
/// periodic sequences that agree on `max pre-period + lcm(periods)` indices
/// agree everywhere. Otherwise agreement on `0..bound` only yields
/// `AtMost(1/(bound+1))`.
pub fn baire_distance<P: Point + fmt::Display>(f: &P, g: &P, bound: usize) -> Result<Distance> {
    if bound == 0 {
        return Err(Error::domain("bound must be positive"));
    }
    let (sf, sg) = (f.stream(), g.stream());
    if let (Some(tf), Some(tg)) = (sf.tail(), sg.tail()) {
        let horizon = sf.entries().len().max(sg.entries().len()) + tf.len().lcm(&tg.len());
        return Ok(match scan(f, g, horizon)? {
            Some(k) => Distance::Exact(reciprocal_index(k)),
            None => Distance::Exact(Rational::zero()),
        });
    }
    Ok(match scan(f, g, bound)? {
        Some(k) => Distance::Exact(reciprocal_index(k)),
        None => Distance::AtMost(reciprocal_index(bound)),
    })
}

/// An open ball of Baire space, described as a cylinder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Cylinder<T> {
    WholeSpace,
    /// All sequences extending this prefix.
    Prefix(Vec<T>),
}

impl<T: fmt::Display> fmt::Display for Cylinder<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cylinder::WholeSpace => write!(f, "WHOLE_SPACE"),
            Cylinder::Prefix(p) => fmt_list(f, p),
        }
    }
}

/// `N(f, r)` as a cylinder: the whole space for `r > 1`, otherwise `[f|m]`
/// with `1/(m+1) < r <= 1/m`, i.e. `m = floor(1/r)`.
pub fn cylinder_of_ball<P: Point + fmt::Display>(f: &P, r: &Rational) -> Result<Cylinder<P::Digit>> {
    if !r.is_positive() {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    if *r > 1 {
        return Ok(Cylinder::WholeSpace);
    }
    let m = r
        .recip()
        .expect("positive")
        .floor()
        .to_usize()
        .ok_or_else(|| Error::domain(format!("radius {r} is too small to enumerate")))?;
    let prefix = (0..m)
        .map(|i| f.stream().get(i).cloned().ok_or_else(|| undefined_at(f, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cylinder::Prefix(prefix))
}

/// Zig-zag bijection ω → ℤ: 0, -1, 1, -2, 2, ...
pub fn zigzag(n: &BigUint) -> BigInt {
    let (half, odd) = n.div_rem(&BigUint::from(2u8));
    let half = BigInt::from_biguint(Sign::Plus, half);
    if odd.is_zero() {
        half
    } else {
        -half - 1
    }
}

pub fn zigzag_inverse(z: &BigInt) -> BigUint {
    let doubled = z.magnitude() * 2u8;
    if z.is_negative() {
        doubled - 1u8
    } else {
        doubled
    }
}

/// Ψ: B → B₂, zig-zag on the head and `n ↦ n+1` elsewhere.
pub fn psi_map(f: &BairePrefix) -> Baire2Prefix {
    let stream = f
        .0
        .with_explicit_head()
        .map(zigzag, |v| BigInt::from_biguint(Sign::Plus, v + 1u8));
    Baire2Prefix(stream)
}

/// Ψ⁻¹: B₂ → B.
pub fn psi_inverse(p: &Baire2Prefix) -> BairePrefix {
    let stream = p.0.with_explicit_head().map(zigzag_inverse, |v| {
        (v - BigInt::one())
            .to_biguint()
            .expect("B₂ entries past the head are positive")
    });
    BairePrefix(stream)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BairePrefix {
        s.parse().unwrap()
    }

    fn b2(s: &str) -> Baire2Prefix {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn first_difference_examples() {
        assert_eq!(first_difference(&b("(0,1,2)"), &b("(0,1,5)"), 3).unwrap(), Some(2));
        assert_eq!(first_difference(&b("(7,7,7)"), &b("(7,7,7)"), 3).unwrap(), None);
        assert_eq!(first_difference(&b("(1)~(2)"), &b("(1,2,2,3)"), 4).unwrap(), Some(3));
    }

    #[test]
    fn first_difference_needs_precision() {
        let err = first_difference(&b("(1,2)"), &b("(1,2,3)"), 3).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision(_)));
        // A difference before the short end is still found.
        assert_eq!(first_difference(&b("(1,4)"), &b("(1,2,3)"), 3).unwrap(), Some(1));
        assert!(first_difference(&b("(1)"), &b("(1)"), 0).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(
            baire_distance(&b("(0,1,2)"), &b("(0,1,5)"), 3).unwrap().to_string(),
            "EXACT 1/3"
        );
        assert_eq!(
            baire_distance(&b("(1,2)~(3,4)"), &b("(1,2)~(3,4)"), 1).unwrap(),
            Distance::Exact(Rational::zero())
        );
        assert_eq!(
            baire_distance(&b("(1,1,1,1)"), &b("(1,1,1,1)"), 4).unwrap().to_string(),
            "AT_MOST 1/5"
        );
    }

    #[test]
    fn total_points_compare_past_the_bound() {
        // Same point, different representations.
        assert_eq!(
            baire_distance(&b("(1,2)~(2)"), &b("(1)~(2,2)"), 1).unwrap(),
            Distance::Exact(Rational::zero())
        );
        assert_eq!(
            baire_distance(&b("(0)~(1,2)"), &b("(0,1)~(2,1)"), 1).unwrap(),
            Distance::Exact(Rational::zero())
        );
        // Difference far beyond the bound.
        assert_eq!(
            baire_distance(&b("(0,0,0,0,0,0,0,1)~(0)"), &b("()~(0)"), 2).unwrap(),
            Distance::Exact(q("1/8"))
        );
        assert_eq!(
            baire_distance(&b2("(1)~(2)"), &b2("(1)~(2,2,2,3)"), 1).unwrap(),
            Distance::Exact(q("1/5"))
        );
    }

    #[test]
    fn normal_forms() {
        assert_eq!(b("(1,2,2)~(2,2)").normal_form().to_string(), "(1)~(2)");
        assert_eq!(b("(5,1,2)~(1,2)").normal_form().to_string(), "(5)~(1,2)");
        assert_eq!(b("(3,2)~(1,2)").normal_form().to_string(), "(3)~(2,1)");
        assert_eq!(b("(3,4)").normal_form().to_string(), "(3,4)");
    }

    #[test]
    fn cylinder_examples() {
        let f = b("(3,1,4,1,5)");
        // The ball of radius 1/3 holds the points agreeing with f on
        // indices 0..3, so the cylinder fixes three entries.
        assert_eq!(cylinder_of_ball(&f, &q("1/3")).unwrap().to_string(), "(3,1,4)");
        assert_eq!(cylinder_of_ball(&f, &q("2")).unwrap(), Cylinder::WholeSpace);
        assert_eq!(cylinder_of_ball(&b("(3,1,4)"), &q("1")).unwrap().to_string(), "(3)");
        assert_eq!(cylinder_of_ball(&f, &q("3/10")).unwrap().to_string(), "(3,1,4)");
        assert_eq!(cylinder_of_ball(&f, &q("1/4")).unwrap().to_string(), "(3,1,4,1)");
        assert!(matches!(
            cylinder_of_ball(&f, &q("1/6")),
            Err(Error::InsufficientPrecision(_))
        ));
        assert_eq!(
            cylinder_of_ball(&b("(1)~(2)"), &q("1/4")).unwrap().to_string(),
            "(1,2,2,2)"
        );
        assert!(cylinder_of_ball(&f, &q("0")).is_err());
    }

    #[test]
    fn cylinder_matches_ball_by_brute_force() {
        // Enumerate all length-5 sequences over {0,1,2} and compare the
        // ball membership with the cylinder description.
        let f = b("(1,0,2,1,0)");
        let points: Vec<Vec<u64>> = (0..3u64.pow(5))
            .map(|mut n| {
                (0..5)
                    .map(|_| {
                        let d = n % 3;
                        n /= 3;
                        d
                    })
                    .collect()
            })
            .collect();
        for r in ["2", "1", "3/4", "1/2", "2/5", "1/3", "1/4", "1/5"] {
            let r = q(r);
            let cyl = cylinder_of_ball(&f, &r).unwrap();
            for g in &points {
                let g = BairePrefix::from_u64s(g, None).unwrap();
                let in_ball = match baire_distance(&f, &g, 5).unwrap() {
                    Distance::Exact(v) => v < r,
                    // Agreement on all 5 indices; every tested radius
                    // exceeds 1/6.
                    Distance::AtMost(_) => true,
                };
                let in_cyl = match &cyl {
                    Cylinder::WholeSpace => true,
                    Cylinder::Prefix(p) => g.entries().starts_with(p),
                };
                assert_eq!(in_ball, in_cyl, "r = {r}, g = {g}");
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_map(&b("(0,0,0)")).to_string(), "(0,1,1)");
        assert_eq!(psi_map(&b("(3,4,5)")).to_string(), "(-2,5,6)");
        assert_eq!(psi_map(&b("(2)~(0)")).to_string(), "(1)~(1)");
        assert_eq!(psi_inverse(&b2("(0,1,1)")).to_string(), "(0,0,0)");
        assert_eq!(psi_inverse(&b2("(-2,5,6)")).to_string(), "(3,4,5)");
        assert_eq!(psi_inverse(&b2("(1)~(1)")).to_string(), "(2)~(0)");
        assert_eq!(psi_map(&b("()")).to_string(), "()");
        // Head taken out of the tail.
        assert_eq!(psi_map(&b("()~(3)")).to_string(), "(-2)~(4)");
    }

    #[test]
    fn zigzag_is_a_bijection_on_small_values() {
        let images: Vec<BigInt> = (0u32..9).map(|n| zigzag(&n.into())).collect();
        let expected: Vec<BigInt> = [0, -1, 1, -2, 2, -3, 3, -4, 4].map(BigInt::from).into();
        assert_eq!(images, expected);
        for z in -50i64..=50 {
            assert_eq!(zigzag(&zigzag_inverse(&z.into())), BigInt::from(z));
        }
    }

    #[test]
    fn parse_errors() {
        for bad in ["(1,-2)", "1,2", "(1,2", "(1)~()", "(1)~2", "(a)"] {
            assert!(bad.parse::<BairePrefix>().is_err(), "{bad:?}");
        }
        for bad in ["(1,0)", "(1)~(0)", "(0)~(-1)"] {
            assert!(bad.parse::<Baire2Prefix>().is_err(), "{bad:?}");
        }
        assert_eq!(b2("(-4,1)~(2)").to_string(), "(-4,1)~(2)");
        assert_eq!(b(" ( 1 , 2 ) ").to_string(), "(1,2)");
    }
}
