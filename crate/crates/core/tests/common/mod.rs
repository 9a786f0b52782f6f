#![allow(dead_code)]

use bairecf::{Baire2Prefix, QuadraticSurd, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rational bounds `lo < s < hi` for a surd, from integer square roots at
/// `bits` bits of fractional precision. Independent of the surd module.
pub fn surd_bounds(s: &QuadraticSurd, bits: u32) -> (Rational, Rational) {
    let scale = BigInt::one() << bits;
    // floor(sqrt(q^2 d 4^bits)) / 2^bits <= |q| sqrt(d) < that + 2^-bits
    let q = s.q();
    let radicand = q * q * s.d() * &scale * &scale;
    let root = radicand.sqrt();
    let below = Rational::new(root.clone(), scale.clone()).unwrap();
    let above = Rational::new(root + 1, scale).unwrap();
    let (q_lo, q_hi) = if q > &BigInt::zero() {
        (below, above)
    } else {
        (-above, -below)
    };
    let p = Rational::from(s.p().clone());
    let r = Rational::from(s.r().clone());
    ((&p + q_lo) / &r, (&p + q_hi) / &r)
}

/// Convergent numerators and denominators `(h, h_prev, k, k_prev)` of a digit
/// list, so that `[digits..., y] = (h y + h_prev)/(k y + k_prev)`.
fn mobius(digits: &[BigInt]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut h, mut h_prev) = (BigInt::one(), BigInt::zero());
    let (mut k, mut k_prev) = (BigInt::zero(), BigInt::one());
    for a in digits {
        let h_next = a * &h + &h_prev;
        let k_next = a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    (h, h_prev, k, k_prev)
}

/// Exact value of an eventually periodic B₂ point, by solving the period's
/// fixed-point quadratic and applying the pre-period as a Möbius map.
pub fn periodic_value(p: &Baire2Prefix) -> QuadraticSurd {
    let tail = p.tail().expect("periodic point");
    // y = [tail..., y]  =>  k y^2 + (k_prev - h) y - h_prev = 0, root > 1.
    let (h, h_prev, k, k_prev) = mobius(tail);
    let b = &k_prev - &h;
    let disc = &b * &b + BigInt::from(4) * &k * &h_prev;
    let (u, v, w) = (-b, BigInt::one(), BigInt::from(2) * &k);
    // x = (A y + A')/(C y + C') with y = (u + v√disc)/w.
    let (a, a_prev, c, c_prev) = mobius(p.entries());
    let (n1, n2) = (&a * &u + &a_prev * &w, &a * &v);
    let (m1, m2) = (&c * &u + &c_prev * &w, &c * &v);
    let den = &m1 * &m1 - &m2 * &m2 * &disc;
    let rat = &n1 * &m1 - &n2 * &m2 * &disc;
    let irr = &n2 * &m1 - &n1 * &m2;
    let (square, free) = split_square(&disc);
    QuadraticSurd::new(rat, irr * square, free, den).expect("periodic continued fractions are quadratic irrationals")
}

/// `n = s^2 * f` with `f` squarefree, by trial division.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let (mut square, mut free) = (BigInt::one(), n.clone());
    let mut f = BigInt::from(2);
    while &f * &f <= free {
        let ff = &f * &f;
        while (&free % &ff).is_zero() {
            free /= &ff;
            square *= &f;
        }
        f += 1;
    }
    (square, free)
}
