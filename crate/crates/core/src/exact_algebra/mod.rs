//! Exact rational and polynomial arithmetic, Sturm root counting, and
//! validated enclosures of radical expressions.

mod interval;
mod poly;
mod radical;
mod sturm;

pub use interval::Interval;
pub use poly::Polynomial;
pub use radical::{enclose, enclose_tracked, enclose_with_cap, EncloseError, RadicalExpr, DEFAULT_PRECISION_CAP};
pub use sturm::{
    cauchy_bound, certify_sign, isolate_roots, isolate_real_roots, refine_root, sturm_count_roots,
    sturm_sequence, Bound, Domain, SignClaim,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degenerate polynomial")]
    DegeneratePolynomial,
    #[error("polynomial is not squarefree on the domain")]
    NotSquarefree,
    #[error("invalid rational literal: {0}")]
    Parse(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `10^-e` as an exact rational.
pub fn ten_pow_neg(e: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), e as usize))
}

/// Parses `a/b`, decimal (`-1.25`), or scientific (`1e-12`, `2.5E3`) literals exactly.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let err = || AlgebraError::Parse(s.to_string());
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| err())?;
        let b: BigInt = b.trim().parse().map_err(|_| err())?;
        if b.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(a, b));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(err());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits: BigInt = format!("{}{}", ip, fp).parse().map_err(|_| err())?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Renders as `num/den` (or `num` when integral).
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest-ish f64 of a rational, robust to huge numerators and denominators.
pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(a), Some(b)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = 60 - (nb - db);
    let scaled = if shift >= 0 {
        (r.numer() << shift as usize).div_floor(r.denom())
    } else {
        r.numer().div_floor(&(r.denom() << (-shift) as usize))
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// Exact rational equal to an f64 (every finite double is dyadic).
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// floor(r * 2^bits) / 2^bits
pub fn round_down(r: &Rational, bits: u32) -> Rational {
    let scaled = (r.numer() << bits as usize).div_floor(r.denom());
    Rational::new(scaled, BigInt::one() << bits as usize)
}

/// ceil(r * 2^bits) / 2^bits
pub fn round_up(r: &Rational, bits: u32) -> Rational {
    let scaled = (r.numer() << bits as usize).div_ceil(r.denom());
    Rational::new(scaled, BigInt::one() << bits as usize)
}

pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}

pub(crate) fn half() -> Rational {
    rat(1, 2)
}

/// Serde adapters that write rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::super::{fmt_rational, parse_rational, Rational};
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&fmt_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s = Option::<String>::deserialize(d)?;
            s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.9342").unwrap(), rat(9342, 10000));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("-2.5E1").unwrap(), int(-25));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rounding_brackets() {
        let x = rat(1, 3);
        assert!(round_down(&x, 10) <= x && x <= round_up(&x, 10));
        assert_eq!(round_down(&int(5), 3), int(5));
    }

    #[test]
    fn f64_of_huge_rationals() {
        let big = Rational::new(BigInt::from(10).pow(400u32) * 3, BigInt::from(10).pow(400u32));
        assert!((to_f64(&big) - 3.0).abs() < 1e-15);
        assert_eq!(fmt_rational(&rat(-4, 6)), "-2/3");
    }
}
