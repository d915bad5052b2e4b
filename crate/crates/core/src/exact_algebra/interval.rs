use super::{round_down, round_up, to_f64, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "super::serde_rational")]
    pub lo: Rational,
    #[serde(with = "super::serde_rational")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        match Rational::from_float(x) {
            Some(r) => self.contains(&r),
            None => false,
        }
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn intersection(&self, o: &Interval) -> Option<Interval> {
        let lo = if self.lo > o.lo { &self.lo } else { &o.lo };
        let hi = if self.hi < o.hi { &self.hi } else { &o.hi };
        (lo <= hi).then(|| Interval::new(lo.clone(), hi.clone()))
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        let lo = if self.lo < o.lo { &self.lo } else { &o.lo };
        let hi = if self.hi > o.hi { &self.hi } else { &o.hi };
        Interval::new(lo.clone(), hi.clone())
    }

    /// Certified sign: `Some(Greater)` if `lo > 0`, `Some(Less)` if `hi < 0`,
    /// `Some(Equal)` for the point zero, `None` when the interval straddles 0.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified `self < o` (every element of `self` below every element of `o`).
    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_gt(&self, o: &Interval) -> bool {
        self.lo > o.hi
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.mid())
    }

    /// Outward rounding onto the dyadic grid `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    pub fn powi(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rational::one());
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 || !self.lo.is_negative() {
            Interval::new(a, b)
        } else if !self.hi.is_positive() {
            Interval::new(b, a)
        } else {
            Interval::new(Rational::zero(), a.max(b))
        }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn checked_div(&self, o: &Interval) -> Option<Interval> {
        o.recip().map(|r| self * &r)
    }

    /// Enclosure of `sqrt` on the grid `2^-bits`; requires `lo >= 0`.
    pub fn sqrt(&self, bits: u32) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of interval with negative part");
        Interval::new(sqrt_down(&self.lo, bits), sqrt_up(&self.hi, bits))
    }

    /// Enclosure of the real cube root on the grid `2^-bits`.
    pub fn cbrt(&self, bits: u32) -> Interval {
        Interval::new(cbrt_down(&self.lo, bits), cbrt_up(&self.hi, bits))
    }
}

fn shifted_floor(x: &Rational, shift: u32) -> BigInt {
    (x.numer() << shift as usize).div_floor(x.denom())
}

fn shifted_ceil(x: &Rational, shift: u32) -> BigInt {
    (x.numer() << shift as usize).div_ceil(x.denom())
}

fn dyadic(m: BigInt, bits: u32) -> Rational {
    Rational::new(m, BigInt::one() << bits as usize)
}

/// Exact rational square root when `x` is a square of a rational.
fn exact_root(x: &Rational, k: u32) -> Option<Rational> {
    let neg = x.is_negative();
    if neg && k.is_multiple_of(2) {
        return None;
    }
    let n = x.numer().abs();
    let d = x.denom().clone();
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) == n && num_traits::pow(rd.clone(), k as usize) == d {
        let r = Rational::new(rn, rd);
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

pub(crate) fn sqrt_down(x: &Rational, bits: u32) -> Rational {
    if let Some(r) = exact_root(x, 2) {
        return r;
    }
    let m = shifted_floor(x, 2 * bits).sqrt();
    dyadic(m, bits)
}

pub(crate) fn sqrt_up(x: &Rational, bits: u32) -> Rational {
    if let Some(r) = exact_root(x, 2) {
        return r;
    }
    let c = shifted_ceil(x, 2 * bits);
    let mut m = c.sqrt();
    if &m * &m < c {
        m += 1;
    }
    dyadic(m, bits)
}

fn cbrt_down_nonneg(x: &Rational, bits: u32) -> Rational {
    dyadic(shifted_floor(x, 3 * bits).cbrt(), bits)
}

fn cbrt_up_nonneg(x: &Rational, bits: u32) -> Rational {
    let c = shifted_ceil(x, 3 * bits);
    let mut m = c.cbrt();
    if &m * &m * &m < c {
        m += 1;
    }
    dyadic(m, bits)
}

pub(crate) fn cbrt_down(x: &Rational, bits: u32) -> Rational {
    if let Some(r) = exact_root(x, 3) {
        return r;
    }
    if x.is_negative() {
        -cbrt_up_nonneg(&-x, bits)
    } else {
        cbrt_down_nonneg(x, bits)
    }
}

pub(crate) fn cbrt_up(x: &Rational, bits: u32) -> Rational {
    if let Some(r) = exact_root(x, 3) {
        return r;
    }
    if x.is_negative() {
        -cbrt_down_nonneg(&-x, bits)
    } else {
        cbrt_up_nonneg(x, bits)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_pair();
        write!(f, "[{:.17e}, {:.17e}]", a, b)
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl<'a> Div<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn div(self, o: &Interval) -> Interval {
        self.checked_div(o).expect("interval division by an interval containing zero")
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl From<Rational> for Interval {
    fn from(x: Rational) -> Self {
        Interval::point(x)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;

    #[test]
    fn roots_bracket() {
        let two = Interval::point(int(2));
        let s = two.sqrt(40);
        assert!(&s.lo * &s.lo <= int(2) && int(2) <= &s.hi * &s.hi);
        assert!(s.width() <= rat(1, 1 << 30));
        let c = Interval::point(int(-8)).cbrt(20);
        assert_eq!(c, Interval::point(int(-2)));
        let c = Interval::point(int(-9)).cbrt(30);
        assert!(&c.lo * &c.lo * &c.lo <= int(-9) && int(-9) <= &c.hi * &c.hi * &c.hi);
        assert_eq!(Interval::point(rat(9, 4)).sqrt(3), Interval::point(rat(3, 2)));
    }

    #[test]
    fn mul_signs() {
        let a = Interval::new(int(-1), int(2));
        let b = Interval::new(int(-3), int(1));
        assert_eq!(&a * &b, Interval::new(int(-6), int(3)));
        assert_eq!(a.powi(2), Interval::new(int(0), int(4)));
        assert!(a.recip().is_none());
        assert_eq!(a.sign(), None);
        assert_eq!(Interval::new(rat(1, 3), int(1)).sign(), Some(Ordering::Greater));
    }
}
