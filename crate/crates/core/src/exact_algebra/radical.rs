use super::{int, Interval, Rational};
use num_traits::{Signed, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_PRECISION_CAP: u32 = 4096;
const START_BITS: u32 = 64;

/// Expression tree over rational leaves with field operations, square roots,
/// real cube roots and integer powers.
#[derive(Clone, Debug)]
pub enum RadicalExpr {
    Const(Rational),
    Add(Arc<RadicalExpr>, Arc<RadicalExpr>),
    Sub(Arc<RadicalExpr>, Arc<RadicalExpr>),
    Mul(Arc<RadicalExpr>, Arc<RadicalExpr>),
    Div(Arc<RadicalExpr>, Arc<RadicalExpr>),
    Neg(Arc<RadicalExpr>),
    Sqrt(Arc<RadicalExpr>),
    Cbrt(Arc<RadicalExpr>),
    Pow(Arc<RadicalExpr>, u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncloseError {
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("inconclusive precision after {bits} bits")]
    InconclusivePrecision { bits: u32 },
}

enum Fail {
    Domain(String),
    Unresolved,
}

impl RadicalExpr {
    pub fn rational(r: Rational) -> Self {
        RadicalExpr::Const(r)
    }

    pub fn int(v: i64) -> Self {
        RadicalExpr::Const(int(v))
    }

    pub fn sqrt(self) -> Self {
        RadicalExpr::Sqrt(Arc::new(self))
    }

    pub fn cbrt(self) -> Self {
        RadicalExpr::Cbrt(Arc::new(self))
    }

    pub fn pow(self, e: u32) -> Self {
        RadicalExpr::Pow(Arc::new(self), e)
    }

    /// Rough floating value, for display and diagnostics only.
    pub fn eval_f64(&self) -> f64 {
        use RadicalExpr::*;
        match self {
            Const(r) => super::to_f64(r),
            Add(a, b) => a.eval_f64() + b.eval_f64(),
            Sub(a, b) => a.eval_f64() - b.eval_f64(),
            Mul(a, b) => a.eval_f64() * b.eval_f64(),
            Div(a, b) => a.eval_f64() / b.eval_f64(),
            Neg(a) => -a.eval_f64(),
            Sqrt(a) => a.eval_f64().sqrt(),
            Cbrt(a) => a.eval_f64().cbrt(),
            Pow(a, e) => a.eval_f64().powi(*e as i32),
        }
    }

    fn eval_bits(&self, bits: u32) -> Result<Interval, Fail> {
        use RadicalExpr::*;
        let iv = match self {
            Const(r) => return Ok(Interval::point(r.clone())),
            Add(a, b) => &a.eval_bits(bits)? + &b.eval_bits(bits)?,
            Sub(a, b) => &a.eval_bits(bits)? - &b.eval_bits(bits)?,
            Mul(a, b) => &a.eval_bits(bits)? * &b.eval_bits(bits)?,
            Div(a, b) => {
                let x = a.eval_bits(bits)?;
                let y = b.eval_bits(bits)?;
                if y.is_point() && y.lo.is_zero() {
                    return Err(Fail::Domain("division by zero".into()));
                }
                x.checked_div(&y).ok_or(Fail::Unresolved)?
            }
            Neg(a) => -&a.eval_bits(bits)?,
            Sqrt(a) => {
                let x = a.eval_bits(bits)?;
                if x.hi.is_negative() {
                    return Err(Fail::Domain("square root of a negative quantity".into()));
                }
                if x.lo.is_negative() {
                    if x.is_point() {
                        unreachable!()
                    }
                    return Err(Fail::Unresolved);
                }
                x.sqrt(bits)
            }
            Cbrt(a) => a.eval_bits(bits)?.cbrt(bits),
            Pow(a, e) => a.eval_bits(bits)?.powi(*e),
        };
        if iv.is_point() {
            Ok(iv)
        } else {
            Ok(iv.round_out(bits))
        }
    }
}

/// Certified enclosure of `expr` with width at most `width`, using the default precision cap.
pub fn enclose(expr: &RadicalExpr, width: &Rational) -> Result<Interval, EncloseError> {
    enclose_with_cap(expr, width, DEFAULT_PRECISION_CAP)
}

/// Evaluates at 64, 128, 256, ... bits up to `cap`; fails rather than guesses.
pub fn enclose_with_cap(
    expr: &RadicalExpr,
    width: &Rational,
    cap: u32,
) -> Result<Interval, EncloseError> {
    enclose_tracked(expr, width, cap).map(|(iv, _)| iv)
}

/// Like [`enclose_with_cap`], also returning the working precision that succeeded.
pub fn enclose_tracked(
    expr: &RadicalExpr,
    width: &Rational,
    cap: u32,
) -> Result<(Interval, u32), EncloseError> {
    let mut bits = START_BITS.min(cap);
    loop {
        match expr.eval_bits(bits) {
            Ok(iv) if &iv.width() <= width => return Ok((iv, bits)),
            Ok(_) | Err(Fail::Unresolved) => {}
            Err(Fail::Domain(m)) => return Err(EncloseError::DomainViolation(m)),
        }
        if bits >= cap {
            return Err(EncloseError::InconclusivePrecision { bits });
        }
        bits = (bits * 2).min(cap);
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $variant:ident) => {
        impl $tr for RadicalExpr {
            type Output = RadicalExpr;
            fn $m(self, rhs: RadicalExpr) -> RadicalExpr {
                RadicalExpr::$variant(Arc::new(self), Arc::new(rhs))
            }
        }
        impl $tr<&RadicalExpr> for &RadicalExpr {
            type Output = RadicalExpr;
            fn $m(self, rhs: &RadicalExpr) -> RadicalExpr {
                RadicalExpr::$variant(Arc::new(self.clone()), Arc::new(rhs.clone()))
            }
        }
    };
}
bin_op!(Add, add, Add);
bin_op!(Sub, sub, Sub);
bin_op!(Mul, mul, Mul);
bin_op!(Div, div, Div);

impl Neg for RadicalExpr {
    type Output = RadicalExpr;
    fn neg(self) -> RadicalExpr {
        RadicalExpr::Neg(Arc::new(self))
    }
}

impl From<Rational> for RadicalExpr {
    fn from(r: Rational) -> Self {
        RadicalExpr::Const(r)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ten_pow_neg};
    use super::*;

    #[test]
    fn sqrt_two() {
        let e = RadicalExpr::int(2).sqrt();
        let iv = enclose(&e, &ten_pow_neg(6)).unwrap();
        assert!((iv.mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(&iv.lo * &iv.lo <= int(2) && int(2) <= &iv.hi * &iv.hi);
    }

    #[test]
    fn exact_cube() {
        let e = RadicalExpr::int(-8).cbrt();
        let iv = enclose(&e, &Rational::zero()).unwrap();
        assert_eq!(iv, Interval::point(int(-2)));
    }

    #[test]
    fn domain_and_cap() {
        let e = RadicalExpr::int(-1).sqrt();
        assert!(matches!(enclose(&e, &rat(1, 10)), Err(EncloseError::DomainViolation(_))));
        // sqrt(2) - sqrt(2) can never be certified with width 0.
        let z = RadicalExpr::int(2).sqrt() - RadicalExpr::int(2).sqrt();
        assert!(matches!(
            enclose_with_cap(&z, &Rational::zero(), 256),
            Err(EncloseError::InconclusivePrecision { .. })
        ));
        // (sqrt(2) - sqrt(2)) under a square root cannot be sign-resolved.
        assert!(matches!(
            enclose_with_cap(&z.sqrt(), &rat(1, 10), 256),
            Err(EncloseError::InconclusivePrecision { .. })
        ));
    }
}
