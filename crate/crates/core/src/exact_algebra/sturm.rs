use super::{fmt_rational, half, AlgebraError, Interval, Polynomial, Rational};
use crate::certificate::{Certificate, Witness};
#[cfg(test)]
use crate::certificate::Status;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Open(Rational),
    Closed(Rational),
    Unbounded,
}

impl Bound {
    fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Open(r) | Bound::Closed(r) => Some(r),
            Bound::Unbounded => None,
        }
    }
}

/// A real interval or ray with independently open/closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub lo: Bound,
    pub hi: Bound,
}

impl Domain {
    pub fn closed(a: Rational, b: Rational) -> Self {
        Domain { lo: Bound::Closed(a), hi: Bound::Closed(b) }
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        Domain { lo: Bound::Open(a), hi: Bound::Open(b) }
    }

    /// `(a, b]`
    pub fn half_open(a: Rational, b: Rational) -> Self {
        Domain { lo: Bound::Open(a), hi: Bound::Closed(b) }
    }

    /// `[a, +inf)`
    pub fn ray_closed(a: Rational) -> Self {
        Domain { lo: Bound::Closed(a), hi: Bound::Unbounded }
    }

    /// `(a, +inf)`
    pub fn ray_open(a: Rational) -> Self {
        Domain { lo: Bound::Open(a), hi: Bound::Unbounded }
    }

    pub fn real_line() -> Self {
        Domain { lo: Bound::Unbounded, hi: Bound::Unbounded }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = match &self.lo {
            Bound::Open(a) => x > a,
            Bound::Closed(a) => x >= a,
            Bound::Unbounded => true,
        };
        let hi_ok = match &self.hi {
            Bound::Open(b) => x < b,
            Bound::Closed(b) => x <= b,
            Bound::Unbounded => true,
        };
        lo_ok && hi_ok
    }

    pub fn describe(&self) -> String {
        let lo = match &self.lo {
            Bound::Open(a) => format!("({}", fmt_rational(a)),
            Bound::Closed(a) => format!("[{}", fmt_rational(a)),
            Bound::Unbounded => "(-inf".to_string(),
        };
        let hi = match &self.hi {
            Bound::Open(b) => format!("{})", fmt_rational(b)),
            Bound::Closed(b) => format!("{}]", fmt_rational(b)),
            Bound::Unbounded => "+inf)".to_string(),
        };
        format!("{}, {}", lo, hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClaim {
    Positive,
    Negative,
    Nonneg,
    Nonpos,
}

impl SignClaim {
    fn accepts(self, s: Ordering) -> bool {
        match self {
            SignClaim::Positive => s == Ordering::Greater,
            SignClaim::Negative => s == Ordering::Less,
            SignClaim::Nonneg => s != Ordering::Less,
            SignClaim::Nonpos => s != Ordering::Greater,
        }
    }

    fn strict(self) -> bool {
        matches!(self, SignClaim::Positive | SignClaim::Negative)
    }

    pub fn name(self) -> &'static str {
        match self {
            SignClaim::Positive => "> 0",
            SignClaim::Negative => "< 0",
            SignClaim::Nonneg => ">= 0",
            SignClaim::Nonpos => "<= 0",
        }
    }
}

/// Sturm chain `p, p', -rem(...)`, each member scaled to a unit leading coefficient
/// magnitude (positive scaling keeps sign variation counts intact).
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let norm = |q: Polynomial| {
        let lc = q.leading().abs();
        if lc.is_zero() {
            q
        } else {
            q.scale(&(Rational::one() / lc))
        }
    };
    let mut seq = vec![norm(p.clone())];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(norm(d));
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(norm(-r));
    }
    seq
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn var_at(seq: &[Polynomial], x: &Rational) -> usize {
    variations(seq.iter().map(|q| sign_of(&q.eval(x))))
}

fn var_at_pos_inf(seq: &[Polynomial]) -> usize {
    variations(seq.iter().map(|q| sign_of(&q.leading())))
}

fn var_at_neg_inf(seq: &[Polynomial]) -> usize {
    variations(seq.iter().map(|q| {
        let s = sign_of(&q.leading());
        if q.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Cauchy bound `1 + max |a_i / a_n|`: every real root has absolute value below it.
pub fn cauchy_bound(p: &Polynomial) -> Rational {
    let lc = p.leading().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Squarefree chain with exact counting of distinct roots in `(a, b]`.
struct Counter {
    q: Polynomial,
    seq: Vec<Polynomial>,
}

impl Counter {
    fn new(p: &Polynomial) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::DegeneratePolynomial);
        }
        let q = p.squarefree_part();
        let seq = sturm_sequence(&q);
        Ok(Counter { q, seq })
    }

    /// Distinct roots in `(a, b]` (valid for any a < b because q is squarefree).
    fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        var_at(&self.seq, a).saturating_sub(var_at(&self.seq, b))
    }

    fn is_root(&self, x: &Rational) -> bool {
        self.q.eval(x).is_zero()
    }

    fn count(&self, d: &Domain) -> usize {
        let v_lo = match d.lo.value() {
            Some(a) => var_at(&self.seq, a),
            None => var_at_neg_inf(&self.seq),
        };
        let v_hi = match d.hi.value() {
            Some(b) => var_at(&self.seq, b),
            None => var_at_pos_inf(&self.seq),
        };
        let mut c = v_lo as i64 - v_hi as i64;
        if let Bound::Closed(a) = &d.lo {
            if self.is_root(a) {
                c += 1;
            }
        }
        if let Bound::Open(b) = &d.hi {
            if self.is_root(b) {
                c -= 1;
            }
        }
        c.max(0) as usize
    }
}

/// Number of distinct real roots of `p` in `domain`.
pub fn sturm_count_roots(p: &Polynomial, domain: &Domain) -> Result<usize, AlgebraError> {
    let c = Counter::new(p)?;
    if let (Some(a), Some(b)) = (domain.lo.value(), domain.hi.value()) {
        if a > b {
            return Ok(0);
        }
        if a == b {
            let closed = matches!(domain.lo, Bound::Closed(_)) && matches!(domain.hi, Bound::Closed(_));
            return Ok(usize::from(closed && c.is_root(a)));
        }
    }
    Ok(c.count(domain))
}

/// Shrinks a one-root interval `[a, b]` until neither endpoint is a root of `q`
/// (or the root itself is hit exactly).
fn clean_endpoints(c: &Counter, mut a: Rational, mut b: Rational) -> Interval {
    while c.is_root(&a) || c.is_root(&b) {
        let m = (&a + &b) * half();
        if c.is_root(&m) {
            return Interval::point(m);
        }
        if c.count_half_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    Interval::new(a, b)
}

fn isolate_with(c: &Counter, lo: &Rational, hi: &Rational, width: &Rational) -> Vec<Interval> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    if c.is_root(lo) {
        out.push(Interval::point(lo.clone()));
    }
    if lo == hi {
        return out;
    }
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = c.count_half_open(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) <= width {
            if c.is_root(&b) {
                out.push(Interval::point(b));
            } else {
                out.push(clean_endpoints(c, a, b));
            }
            continue;
        }
        let m = (&a + &b) * half();
        // the upper half is pushed first so the lower half is processed first
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Disjoint isolating intervals (each of width <= `width`) for every distinct real root
/// of `p` in the closed interval `domain`.
pub fn isolate_roots(p: &Polynomial, domain: &Interval, width: &Rational) -> Result<Vec<Interval>, AlgebraError> {
    let c = Counter::new(p)?;
    let ivs = isolate_with(&c, &domain.lo, &domain.hi, width);
    for iv in &ivs {
        if !iv.is_point() && c.q.eval(&iv.lo).signum() == c.q.eval(&iv.hi).signum() {
            return Err(AlgebraError::NotSquarefree);
        }
    }
    Ok(ivs)
}

/// Isolating intervals for all real roots, searched inside the Cauchy bound.
pub fn isolate_real_roots(p: &Polynomial, width: &Rational) -> Result<Vec<Interval>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::DegeneratePolynomial);
    }
    let m = cauchy_bound(p);
    isolate_roots(p, &Interval::new(-m.clone(), m), width)
}

/// Bisects an isolating interval of a simple root down to `width`, keeping a sign change.
pub fn refine_root(p: &Polynomial, iv: &Interval, width: &Rational) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let q = p.squarefree_part();
    let (mut a, mut b) = (iv.lo.clone(), iv.hi.clone());
    let sa = sign_of(&q.eval(&a));
    while &(&b - &a) > width {
        let m = (&a + &b) * half();
        let sm = sign_of(&q.eval(&m));
        if sm == 0 {
            return Interval::point(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Interval::new(a, b)
}

fn claim_anchor(p: &Polynomial, d: &Domain, claim: SignClaim) -> String {
    format!("{} {} on {}", p, claim.name(), d.describe())
}

/// Exact sign certificate for a univariate polynomial on an interval or ray.
///
/// Verified strict claims rest on a zero Sturm count plus one sample sign. Non-strict
/// claims sample the sign between consecutive distinct roots. Falsified claims carry a
/// rational witness, or an isolating interval when the offending root is irrational.
pub fn certify_sign(p: &Polynomial, domain: &Domain, claim: SignClaim) -> Certificate {
    let id = "polynomial-sign";
    let statement = claim_anchor(p, domain, claim);
    if p.is_zero() {
        return if claim.strict() {
            let x = domain_sample(domain);
            Certificate::falsified(id, statement, Witness::Point { x })
        } else {
            Certificate::verified(id, statement).note("identically zero")
        };
    }
    let c = Counter::new(p).expect("nonzero polynomial");
    let bound = cauchy_bound(&c.q);
    let lo = match &domain.lo {
        Bound::Unbounded => -bound.clone(),
        Bound::Open(a) | Bound::Closed(a) => a.clone(),
    };
    let hi = match &domain.hi {
        Bound::Unbounded => bound.clone().max(&lo + Rational::one()),
        Bound::Open(b) | Bound::Closed(b) => b.clone(),
    };
    if lo > hi || (lo == hi && !domain.contains(&lo)) {
        return Certificate::verified(id, statement).note("empty domain");
    }
    let count = c.count(domain);

    // distinct roots inside the search window, with endpoint roots excluded
    // according to the domain's openness
    let roots: Vec<Interval> = isolate_with(&c, &lo, &hi, &(&hi - &lo + Rational::one()))
        .into_iter()
        .filter(|iv| !iv.is_point() || domain.contains(&iv.lo))
        .collect();

    let mut samples: Vec<Rational> = Vec::new();
    if domain.contains(&lo) {
        samples.push(lo.clone());
    }
    let mut prev = lo.clone();
    for iv in &roots {
        if iv.lo > prev {
            samples.push((&prev + &iv.lo) * half());
        }
        prev = iv.hi.clone();
    }
    if hi > prev {
        samples.push((&prev + &hi) * half());
    }
    if domain.contains(&hi) {
        samples.push(hi.clone());
    }
    if samples.is_empty() {
        samples.push(domain_sample(domain));
    }

    for x in &samples {
        let s = p.eval(x).cmp(&Rational::zero());
        if !claim.accepts(s) && domain.contains(x) {
            return Certificate::falsified(id, statement, Witness::Point { x: x.clone() })
                .note(format!("sample value {}", fmt_rational(&p.eval(x))));
        }
    }
    // samples sitting on open endpoints only stand in for their neighbourhood
    for x in &samples {
        let s = p.eval(x).cmp(&Rational::zero());
        if !claim.accepts(s) {
            let inner = nudge_inside(&c, domain, x, &roots);
            return Certificate::falsified(id, statement, Witness::Point { x: inner });
        }
    }
    if claim.strict() && count > 0 {
        let iv = roots.first().cloned().expect("root count positive");
        let w = if iv.is_point() {
            Witness::Point { x: iv.lo.clone() }
        } else {
            let r = refine_root(&c.q, &iv, &super::ten_pow_neg(12));
            if r.is_point() {
                Witness::Point { x: r.lo }
            } else {
                Witness::Interval { interval: r }
            }
        };
        return Certificate::falsified(id, statement, w).note(format!("{} root(s) in domain", count));
    }
    let mut cert = Certificate::verified(id, statement).note(format!("distinct roots in domain: {}", count));
    if domain.hi == Bound::Unbounded || domain.lo == Bound::Unbounded {
        cert = cert.note(format!("Cauchy bound M = {}", fmt_rational(&bound)));
    }
    cert
}

fn domain_sample(d: &Domain) -> Rational {
    match (d.lo.value(), d.hi.value()) {
        (Some(a), Some(b)) => (a + b) * half(),
        (Some(a), None) => a + Rational::one(),
        (None, Some(b)) => b - Rational::one(),
        (None, None) => Rational::zero(),
    }
}

/// A point strictly inside the domain, adjacent to the open endpoint `x`, with no root
/// between it and `x`.
fn nudge_inside(c: &Counter, d: &Domain, x: &Rational, roots: &[Interval]) -> Rational {
    let toward = match (d.lo.value(), d.hi.value()) {
        (Some(a), _) if a == x => roots.first().map(|r| r.lo.clone()).or_else(|| d.hi.value().cloned()),
        (_, Some(b)) if b == x => roots.last().map(|r| r.hi.clone()).or_else(|| d.lo.value().cloned()),
        _ => None,
    };
    let mut y = match toward {
        Some(t) => (x + &t) * half(),
        None => x + Rational::one(),
    };
    while c.is_root(&y) {
        y = (x + &y) * half();
    }
    y
}

impl Polynomial {
    /// Convenience: certified sign on a domain.
    pub fn certify(&self, domain: &Domain, claim: SignClaim) -> Certificate {
        certify_sign(self, domain, claim)
    }

    /// Convenience: Sturm count, panicking on the zero polynomial.
    pub fn count_roots(&self, domain: &Domain) -> usize {
        sturm_count_roots(self, domain).expect("nonzero polynomial")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;

    #[test]
    fn counts() {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        assert_eq!(p.count_roots(&Domain::closed(int(0), int(2))), 1);
        assert_eq!(p.count_roots(&Domain::real_line()), 2);
        let q = Polynomial::from_ints(&[1, 0, 1]);
        assert_eq!(q.count_roots(&Domain::real_line()), 0);
        assert!(sturm_count_roots(&Polynomial::zero(), &Domain::real_line()).is_err());
    }

    #[test]
    fn endpoint_conventions() {
        // roots at 1 and 2
        let p = &Polynomial::from_ints(&[-1, 1]) * &Polynomial::from_ints(&[-2, 1]);
        assert_eq!(p.count_roots(&Domain::closed(int(1), int(2))), 2);
        assert_eq!(p.count_roots(&Domain::open(int(1), int(2))), 0);
        assert_eq!(p.count_roots(&Domain::half_open(int(1), int(2))), 1);
        assert_eq!(p.count_roots(&Domain::ray_closed(int(1))), 2);
        assert_eq!(p.count_roots(&Domain::ray_open(int(1))), 1);
        let sq = &p * &p;
        assert_eq!(sq.count_roots(&Domain::closed(int(0), int(3))), 2);
    }

    #[test]
    fn isolation() {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        let ivs = isolate_roots(&p, &Interval::new(int(0), int(2)), &rat(1, 1000)).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].contains_f64(std::f64::consts::SQRT_2));
        let q = Polynomial::from_ints(&[1, 0, 1]);
        assert!(isolate_roots(&q, &Interval::new(int(-5), int(5)), &rat(1, 10)).unwrap().is_empty());
        // exact rational roots are returned as points; neighbours stay disjoint
        let r = &Polynomial::from_ints(&[0, 1]) * &Polynomial::from_ints(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&r, &rat(1, 100)).unwrap();
        assert_eq!(ivs.len(), 3);
        assert!(ivs.iter().any(|iv| iv == &Interval::point(int(0))));
        for w in ivs.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn signs() {
        let t2 = Polynomial::from_ints(&[0, 0, 1]);
        assert!(t2.certify(&Domain::open(int(1), int(2)), SignClaim::Positive).is_verified());
        let c = t2.certify(&Domain::closed(int(-1), int(1)), SignClaim::Positive);
        assert_eq!(c.status, Status::Falsified);
        assert_eq!(c.witness, Some(Witness::Point { x: int(0) }));
        assert!(t2.certify(&Domain::real_line(), SignClaim::Nonneg).is_verified());
        // (x-1)^2 - 1/4: negative on (1/2, 3/2)
        let p = &Polynomial::from_ints(&[-1, 1]).pow(2) - &Polynomial::constant(rat(1, 4));
        let c = p.certify(&Domain::ray_closed(int(0)), SignClaim::Nonneg);
        assert_eq!(c.status, Status::Falsified);
        if let Some(Witness::Point { x }) = &c.witness {
            assert!(p.eval(x) < Rational::zero());
        } else {
            panic!("expected point witness");
        }
        assert!(p.certify(&Domain::ray_open(rat(3, 2)), SignClaim::Positive).is_verified());
        assert_eq!(p.certify(&Domain::ray_closed(rat(3, 2)), SignClaim::Positive).status, Status::Falsified);
    }

    #[test]
    fn open_endpoint_witness_moves_inside() {
        // x - 1 on (1, 2) is positive; -(x - 1) on (1, 2) is negative: claim positive fails inside
        let p = Polynomial::from_ints(&[1, -1]);
        let c = p.certify(&Domain::open(int(1), int(2)), SignClaim::Positive);
        match c.witness {
            Some(Witness::Point { x }) => {
                assert!(x > int(1) && x < int(2));
                assert!(p.eval(&x) < Rational::zero());
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn irrational_double_root_witness_is_interval() {
        // (x^2 - 2)^2 >= 0 but not > 0 on [0, 2]
        let p = Polynomial::from_ints(&[-2, 0, 1]).pow(2);
        let c = p.certify(&Domain::closed(int(0), int(2)), SignClaim::Positive);
        assert_eq!(c.status, Status::Falsified);
        assert!(matches!(c.witness, Some(Witness::Interval { .. })));
        assert!(p.certify(&Domain::closed(int(0), int(2)), SignClaim::Nonneg).is_verified());
    }
}
