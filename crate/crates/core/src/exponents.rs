//! Critical exponents: Serrin, Sobolev, the triharmonic Joseph–Lundgren exponent
//! (closed form and an independent root oracle), the monotonicity thresholds, and the
//! harmonic/biharmonic analogues.

use crate::certificate::{Certificate, Witness};
use crate::coefficients::c0_cubic;
use crate::exact_algebra::{
    enclose, fmt_rational, int, isolate_roots, rat, refine_root, sturm_count_roots, to_f64,
    Bound, Domain, EncloseError, Interval, Polynomial, RadicalExpr, Rational,
};
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExponentError {
    #[error("dimension below triharmonic range: n = {0}")]
    DimensionTooSmall(i64),
    #[error("d2(n) is not certified positive at n = {0}")]
    NegativeDiscriminant(i64),
    #[error(transparent)]
    Enclose(#[from] EncloseError),
    #[error("no admissible root of the c0 cubic at n = {0}")]
    NoAdmissibleRoot(i64),
    #[error("ambiguous root structure at n = {n}: {count} admissible roots")]
    AmbiguousRoots { n: i64, count: usize },
    #[error("the two d0 forms disagree at n = {0}")]
    FormsDisagree(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    RootOracle,
}

/// A critical exponent. `Infinite` is an explicit marker; every finite value compares
/// below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentValue {
    Exact(Rational),
    Enclosed { interval: Interval, provenance: Provenance },
    Infinite,
}

impl ExponentValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExponentValue::Infinite)
    }

    pub fn enclosure(&self) -> Option<Interval> {
        match self {
            ExponentValue::Exact(r) => Some(Interval::point(r.clone())),
            ExponentValue::Enclosed { interval, .. } => Some(interval.clone()),
            ExponentValue::Infinite => None,
        }
    }

    /// Midpoint as f64, `+inf` for the marker.
    pub fn approx(&self) -> f64 {
        self.enclosure().map_or(f64::INFINITY, |iv| iv.mid_f64())
    }

    fn kind(&self) -> &'static str {
        match self {
            ExponentValue::Exact(_) => "exact",
            ExponentValue::Enclosed { .. } => "enclosed",
            ExponentValue::Infinite => "infinite",
        }
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Exact(r) => write!(f, "{}", fmt_rational(r)),
            ExponentValue::Enclosed { interval, .. } => write!(f, "{:.15}", interval.mid_f64()),
            ExponentValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExponentValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExponentValue", 5)?;
        st.serialize_field("kind", self.kind())?;
        let iv = self.enclosure();
        st.serialize_field("lo", &iv.as_ref().map(|i| fmt_rational(&i.lo)))?;
        st.serialize_field("hi", &iv.as_ref().map(|i| fmt_rational(&i.hi)))?;
        st.serialize_field("approx", &iv.as_ref().map(|i| i.mid_f64()))?;
        let prov = match self {
            ExponentValue::Enclosed { provenance, .. } => Some(*provenance),
            ExponentValue::Exact(_) => Some(Provenance::ClosedForm),
            ExponentValue::Infinite => None,
        };
        st.serialize_field("provenance", &prov)?;
        st.end()
    }
}

fn check_dim(n: i64) -> Result<(), ExponentError> {
    if n < 7 {
        Err(ExponentError::DimensionTooSmall(n))
    } else {
        Ok(())
    }
}

/// `n/(n-6)`
pub fn serrin_exponent(n: i64) -> Result<ExponentValue, ExponentError> {
    check_dim(n)?;
    Ok(ExponentValue::Exact(rat(n, n - 6)))
}

/// `(n+6)/(n-6)`
pub fn sobolev_exponent(n: i64) -> Result<ExponentValue, ExponentError> {
    check_dim(n)?;
    Ok(ExponentValue::Exact(rat(n + 6, n - 6)))
}

/// `d1(n) = -108n^6 + 1296n^5 - 3024n^4 - 10368n^3 + 103104n^2 + 20736n - 94976`
pub fn d1_poly() -> Polynomial {
    Polynomial::from_ints(&[-94976, 20736, 103104, -10368, -3024, 1296, -108]).renamed("n")
}

pub fn d2_poly() -> Polynomial {
    Polynomial::from_ints(&[
        6131712, -3039232, -16644096, 4818944, 6915840, -1936384, -690432, 251136, -30864,
        -4320, 1800, -216, 9,
    ])
    .renamed("n")
}

fn c(r: Rational) -> RadicalExpr {
    RadicalExpr::rational(r)
}

fn ci(v: i64) -> RadicalExpr {
    RadicalExpr::int(v)
}

/// `-(d1 + 36 sqrt(d2))^{1/3}` with the real cube root.
pub fn d0_expr(n: i64) -> RadicalExpr {
    let nr = int(n);
    let s = c(d2_poly().eval(&nr)).sqrt();
    -(c(d1_poly().eval(&nr)) + ci(36) * s).cbrt()
}

/// `256(3n^2+4) / (36 sqrt(d2) - d1)^{1/3}`
pub fn d0_alt_expr(n: i64) -> RadicalExpr {
    let nr = int(n);
    let s = c(d2_poly().eval(&nr)).sqrt();
    let num = ci(256) * c(int(3) * &nr * &nr + int(4));
    num / (ci(36) * s - c(d1_poly().eval(&nr))).cbrt()
}

pub fn d_expr(n: i64) -> RadicalExpr {
    let nr = int(n);
    let n2 = &nr * &nr;
    let d0 = d0_expr(n);
    let rad = c(int(9) * &n2 + int(96))
        - c(int(1536) + int(1152) * &n2) / d0.clone()
        - c(rat(3, 2)) * d0;
    c(rat(1, 6)) * rad.sqrt()
}

fn require_d2_positive(n: i64) -> Result<(), ExponentError> {
    if n < 12 || !d2_poly().eval(&int(n)).is_positive() {
        return Err(ExponentError::NegativeDiscriminant(n));
    }
    Ok(())
}

/// Enclosure of `d0(n)` from the cube-root form, checked against the alternative form.
pub fn d0_enclosure(n: i64, width: &Rational) -> Result<Interval, ExponentError> {
    require_d2_positive(n)?;
    let a = enclose(&d0_expr(n), width)?;
    let b = enclose(&d0_alt_expr(n), width)?;
    if !a.intersects(&b) {
        return Err(ExponentError::FormsDisagree(n));
    }
    Ok(a)
}

/// Both d0 enclosures, for cross-checking.
pub fn d0_both_forms(n: i64, width: &Rational) -> Result<(Interval, Interval), ExponentError> {
    require_d2_positive(n)?;
    Ok((enclose(&d0_expr(n), width)?, enclose(&d0_alt_expr(n), width)?))
}

pub fn d_enclosure(n: i64, width: &Rational) -> Result<Interval, ExponentError> {
    if n < 15 {
        return Err(ExponentError::DimensionTooSmall(n));
    }
    require_d2_positive(n)?;
    Ok(enclose(&d_expr(n), width)?)
}

/// `(n + 4 - 2d(n)) / (n - 8 - 2d(n))` as a radical expression.
pub fn pc_expr(n: i64) -> RadicalExpr {
    let d = d_expr(n);
    (ci(n + 4) - ci(2) * d.clone()) / (ci(n - 8) - ci(2) * d)
}

/// Closed-form triharmonic Joseph–Lundgren exponent; infinite for `n <= 14`.
pub fn joseph_lundgren_triharmonic(n: i64, width: &Rational) -> Result<ExponentValue, ExponentError> {
    check_dim(n)?;
    if n <= 14 {
        return Ok(ExponentValue::Infinite);
    }
    require_d2_positive(n)?;
    let den = enclose(&(ci(n - 8) - ci(2) * d_expr(n)), &crate::exact_algebra::ten_pow_neg(20))?;
    if !den.lo.is_positive() {
        return Err(ExponentError::Enclose(EncloseError::DomainViolation(
            "n - 8 - 2d(n) not certified positive".into(),
        )));
    }
    let interval = enclose(&pc_expr(n), width)?;
    Ok(ExponentValue::Enclosed { interval, provenance: Provenance::ClosedForm })
}

/// Result of the brute-force root oracle.
#[derive(Clone, Debug, Serialize)]
pub struct RootOracle {
    pub n: i64,
    /// distinct real roots of the cubic on the whole line
    pub real_roots: usize,
    /// enclosure of the admissible root `t* = d(n)^2`
    pub t_root: Interval,
    /// enclosure of `r1 = (n-8)/2 - sqrt(t*)`
    pub r1: Interval,
    pub pc: Interval,
}

/// Independent computation of `p_c(n)`: isolate the unique root `t*` of the c0 cubic with
/// `0 < t* < ((n-8)/2)^2`, set `k = (n-8)/2 - sqrt(t*)` and return `(k+6)/k`.
pub fn pc_root_oracle(n: i64, width: &Rational) -> Result<RootOracle, ExponentError> {
    check_dim(n)?;
    let cubic = c0_cubic(n);
    let half_shift = rat(n - 8, 2);
    let t_max = &half_shift * &half_shift;
    let real_roots = sturm_count_roots(&cubic, &Domain::real_line()).expect("cubic is nonzero");
    if !half_shift.is_positive() {
        return Err(ExponentError::NoAdmissibleRoot(n));
    }
    let admissible = Domain { lo: Bound::Open(Rational::zero()), hi: Bound::Open(t_max.clone()) };
    let count = sturm_count_roots(&cubic, &admissible).expect("cubic is nonzero");
    match count {
        0 => return Err(ExponentError::NoAdmissibleRoot(n)),
        1 => {}
        count => return Err(ExponentError::AmbiguousRoots { n, count }),
    }
    let iso = isolate_roots(&cubic, &Interval::new(Rational::zero(), t_max.clone()), &Rational::one())
        .expect("cubic is nonzero");
    // non-point isolating intervals have non-root endpoints, so only exact roots at the
    // closed ends 0 and t_max need excluding
    let root = iso
        .into_iter()
        .find(|iv| !(iv.is_point() && (iv.lo.is_zero() || iv.lo == t_max)))
        .ok_or(ExponentError::NoAdmissibleRoot(n))?;

    let mut t_width = width.clone();
    let mut bits = 64u32;
    loop {
        let t = refine_root(&cubic, &root, &t_width);
        let s = t.sqrt(bits);
        let k = &Interval::point(half_shift.clone()) - &s;
        if k.lo.is_positive() {
            let pc = &Interval::point(Rational::one()) + &(&Interval::point(int(6)) / &k);
            if &pc.width() <= width {
                return Ok(RootOracle { n, real_roots, t_root: t, r1: k, pc });
            }
        }
        if bits >= crate::exact_algebra::DEFAULT_PRECISION_CAP {
            return Err(ExponentError::Enclose(EncloseError::InconclusivePrecision { bits }));
        }
        t_width /= int(1 << 20);
        bits *= 2;
    }
}

/// `(5n+30 - s)/(5n-30 - s)`, `s = sqrt(15n^2 - 60n + 190)`; infinite for `n <= 30`.
pub fn pm(n: i64, width: &Rational) -> Result<ExponentValue, ExponentError> {
    check_dim(n)?;
    if n <= 30 {
        return Ok(ExponentValue::Infinite);
    }
    let interval = enclose(&pm_expr(n), width)?;
    Ok(ExponentValue::Enclosed { interval, provenance: Provenance::ClosedForm })
}

pub fn pm_expr(n: i64) -> RadicalExpr {
    let s = ci(15 * n * n - 60 * n + 190).sqrt();
    (ci(5 * n + 30) - s.clone()) / (ci(5 * n - 30) - s)
}

/// `k_m = n/2 - 3 - sqrt(15n^2 - 60n + 190)/10`, the k-image of `p_m`.
pub fn km_expr(n: i64) -> RadicalExpr {
    c(rat(n - 6, 2)) - ci(15 * n * n - 60 * n + 190).sqrt() / ci(10)
}

/// `(n+28)/(n-20)`; infinite for `n <= 20`.
pub fn pm1(n: i64) -> Result<ExponentValue, ExponentError> {
    check_dim(n)?;
    if n <= 20 {
        return Ok(ExponentValue::Infinite);
    }
    Ok(ExponentValue::Exact(rat(n + 28, n - 20)))
}

/// Harmonic Joseph–Lundgren exponent; infinite for `n <= 10`.
pub fn pc_harmonic(n: i64, width: &Rational) -> Result<ExponentValue, ExponentError> {
    if n < 3 {
        return Err(ExponentError::DimensionTooSmall(n));
    }
    if n <= 10 {
        return Ok(ExponentValue::Infinite);
    }
    let num = ci((n - 2) * (n - 2) - 4 * n) + ci(8) * ci(n - 1).sqrt();
    let e = num / ci((n - 2) * (n - 10));
    let interval = enclose(&e, width)?;
    Ok(ExponentValue::Enclosed { interval, provenance: Provenance::ClosedForm })
}

/// Biharmonic Joseph–Lundgren exponent; infinite for `n <= 12`.
pub fn pc_biharmonic(n: i64, width: &Rational) -> Result<ExponentValue, ExponentError> {
    if n < 5 {
        return Err(ExponentError::DimensionTooSmall(n));
    }
    if n <= 12 {
        return Ok(ExponentValue::Infinite);
    }
    let inner = ci(n * n - 8 * n + 32).sqrt();
    let s = (ci(n * n + 4) - ci(n) * inner).sqrt();
    let e = (ci(n + 2) - s.clone()) / (ci(n - 6) - s);
    let interval = enclose(&e, width)?;
    Ok(ExponentValue::Enclosed { interval, provenance: Provenance::ClosedForm })
}

/// Certified `a < b` under the convention finite < infinite.
pub fn certify_lt(claim_id: &str, n: i64, a: &ExponentValue, b: &ExponentValue, names: (&str, &str)) -> Certificate {
    let statement = format!("{}({}) < {}({})", names.0, n, names.1, n);
    let cert = match (a.enclosure(), b.enclosure()) {
        (_, None) if !a.is_infinite() => {
            Certificate::verified(claim_id, statement).note("finite < infinite by convention")
        }
        (None, _) => Certificate::falsified(claim_id, statement, Witness::Dimension { n })
            .note(format!("{} is infinite", names.0)),
        (Some(x), Some(y)) => {
            if x.certainly_lt(&y) {
                Certificate::verified(claim_id, statement)
                    .note(format!("{} <= {} < {}", x, fmt_rational_short(&x.hi), y))
            } else if x.lo >= y.hi {
                Certificate::falsified(claim_id, statement, Witness::Dimension { n })
                    .note(format!("{} vs {}", x, y))
            } else {
                Certificate::inconclusive(claim_id, statement).note(format!("overlap {} vs {}", x, y))
            }
        }
        (Some(_), None) => unreachable!(),
    };
    cert.with_anchor("critical exponent ordering")
}

fn fmt_rational_short(r: &Rational) -> String {
    format!("{:.17e}", to_f64(r))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentTable {
    pub serrin: ExponentValue,
    pub sobolev: ExponentValue,
    pub pc: ExponentValue,
    pub pm: ExponentValue,
    pub pm1: ExponentValue,
    pub pc_harmonic: ExponentValue,
    pub pc_biharmonic: ExponentValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentChainReport {
    pub n: i64,
    pub exponents: ExponentTable,
    pub certificates: Vec<Certificate>,
}

impl ExponentChainReport {
    pub fn csv_header() -> Vec<&'static str> {
        vec![
            "n",
            "serrin",
            "sobolev",
            "pc",
            "pm",
            "pm1",
            "pc_harmonic",
            "pc_biharmonic",
            "ordering",
        ]
    }

    pub fn csv_record(&self) -> Vec<String> {
        let e = &self.exponents;
        let verdict = Certificate::worst_status(&self.certificates);
        vec![
            self.n.to_string(),
            e.serrin.to_string(),
            e.sobolev.to_string(),
            e.pc.to_string(),
            e.pm.to_string(),
            e.pm1.to_string(),
            e.pc_harmonic.to_string(),
            e.pc_biharmonic.to_string(),
            serde_json::to_value(verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        ]
    }
}

/// All exponents at one dimension plus the ordering certificates.
pub fn exponent_chain_report(n: i64, width: &Rational) -> Result<ExponentChainReport, ExponentError> {
    let exponents = ExponentTable {
        serrin: serrin_exponent(n)?,
        sobolev: sobolev_exponent(n)?,
        pc: joseph_lundgren_triharmonic(n, width)?,
        pm: pm(n, width)?,
        pm1: pm1(n)?,
        pc_harmonic: pc_harmonic(n, width)?,
        pc_biharmonic: pc_biharmonic(n, width)?,
    };
    let e = &exponents;
    let mut certificates = vec![certify_lt("sobolev-lt-pc", n, &e.sobolev, &e.pc, ("p_S", "p_c"))];
    if n >= 15 {
        certificates.push(certify_lt("pc-lt-pm", n, &e.pc, &e.pm, ("p_c", "p_m")));
    }
    if n >= 21 {
        certificates.push(certify_lt("pm1-lt-pm", n, &e.pm1, &e.pm, ("p_m1", "p_m")));
    }
    Ok(ExponentChainReport { n, exponents, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{parse_rational, ten_pow_neg};

    fn w() -> Rational {
        ten_pow_neg(12)
    }

    #[test]
    fn rational_exponents() {
        assert_eq!(serrin_exponent(12).unwrap(), ExponentValue::Exact(int(2)));
        assert_eq!(serrin_exponent(15).unwrap(), ExponentValue::Exact(rat(5, 3)));
        assert_eq!(sobolev_exponent(7).unwrap(), ExponentValue::Exact(int(13)));
        assert_eq!(sobolev_exponent(18).unwrap(), ExponentValue::Exact(int(2)));
        assert_eq!(pm1(21).unwrap(), ExponentValue::Exact(int(49)));
        assert_eq!(pm1(48).unwrap(), ExponentValue::Exact(rat(19, 7)));
        assert!(pm1(20).unwrap().is_infinite());
        assert!(serrin_exponent(6).is_err());
    }

    #[test]
    fn d_polynomials() {
        assert_eq!(d1_poly().eval(&int(0)), int(-94976));
        assert_eq!(d2_poly().eval(&int(2)), int(0));
        let minus_d1p = -d1_poly().derivative();
        assert_eq!(
            minus_d1p,
            Polynomial::from_ints(&[-20736, -206208, 31104, 12096, -6480, 648])
        );
    }

    #[test]
    fn d0_at_15() {
        let iv = d0_enclosure(15, &ten_pow_neg(6)).unwrap();
        assert!((iv.mid_f64() - 186.0929).abs() < 1e-3);
        let iv = d0_enclosure(1_000_000, &ten_pow_neg(6)).unwrap();
        assert!(iv.lo > int(128) && iv.hi < parse_rational("128.01").unwrap());
        assert!(d0_enclosure(11, &w()).is_err());
    }

    #[test]
    fn pc_thresholds_and_oracle() {
        assert!(joseph_lundgren_triharmonic(14, &w()).unwrap().is_infinite());
        assert!(pc_root_oracle(14, &w()).is_err());
        for n in [15, 20, 50] {
            let cf = joseph_lundgren_triharmonic(n, &w()).unwrap().enclosure().unwrap();
            let or = pc_root_oracle(n, &w()).unwrap();
            assert!(cf.intersects(&or.pc), "n = {}", n);
            assert_eq!(or.real_roots, 1);
        }
        let p15 = joseph_lundgren_triharmonic(15, &w()).unwrap().approx();
        assert!((p15 - 6158.3155927).abs() < 1e-6);
    }

    #[test]
    fn other_exponents() {
        let h = pc_harmonic(11, &w()).unwrap().approx();
        assert!((h - (37.0 + 8.0 * 10f64.sqrt()) / 9.0).abs() < 1e-12);
        assert!(pc_harmonic(10, &w()).unwrap().is_infinite());
        assert!(pc_biharmonic(12, &w()).unwrap().is_infinite());
        assert!(pm(30, &w()).unwrap().is_infinite());
        assert!((pm(31, &w()).unwrap().approx() - 5.9561199034).abs() < 1e-9);
    }

    #[test]
    fn chain_31() {
        let r = exponent_chain_report(31, &w()).unwrap();
        assert!(r.certificates.iter().all(|c| c.is_verified()));
        assert_eq!(r.certificates.len(), 3);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["exponents"]["pm"]["kind"], "enclosed");
        let r = exponent_chain_report(12, &w()).unwrap();
        assert!(r.exponents.pc.is_infinite());
    }
}
