//! Coefficient formulas as exact rational functions of the dimension `n` and the
//! scaling exponent `k = 6/(p-1)`.

use crate::exact_algebra::{
    int, rat, serde_rational, to_f64, Interval, Polynomial, Rational,
};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("dimension below triharmonic range: n = {0}")]
    DimensionTooSmall(i64),
    #[error("exponent must satisfy p > 1")]
    ExponentTooSmall,
    #[error("scaling exponent must satisfy k > 0")]
    NonPositiveK,
    #[error("division by k = 0")]
    ZeroK,
    #[error("no positive singular amplitude (k0 = {0})")]
    NoPositiveAmplitude(String),
}

pub fn k_of_p(p: &Rational) -> Result<Rational, CoeffError> {
    if p <= &Rational::one() {
        return Err(CoeffError::ExponentTooSmall);
    }
    Ok(int(6) / (p - Rational::one()))
}

pub fn p_of_k(k: &Rational) -> Result<Rational, CoeffError> {
    if !k.is_positive() {
        return Err(CoeffError::NonPositiveK);
    }
    Ok((k + int(6)) / k)
}

/// Dimension–exponent pair with the derived scaling exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: i64,
    #[serde(with = "serde_rational")]
    pub p: Rational,
    #[serde(with = "serde_rational")]
    pub k: Rational,
}

impl Params {
    pub fn new(n: i64, p: Rational) -> Result<Self, CoeffError> {
        if n < 7 {
            return Err(CoeffError::DimensionTooSmall(n));
        }
        let k = k_of_p(&p)?;
        Ok(Params { n, p, k })
    }

    pub fn from_k(n: i64, k: Rational) -> Result<Self, CoeffError> {
        if n < 7 {
            return Err(CoeffError::DimensionTooSmall(n));
        }
        let p = p_of_k(&k)?;
        Ok(Params { n, p, k })
    }

    pub fn nr(&self) -> Rational {
        int(self.n)
    }

    /// `p > (n+6)/(n-6)`, equivalently `0 < k < (n-6)/2`.
    pub fn supercritical(&self) -> bool {
        self.k.is_positive() && self.k < rat(self.n - 6, 2)
    }

    pub fn k_f64(&self) -> f64 {
        to_f64(&self.k)
    }

    pub fn p_f64(&self) -> f64 {
        to_f64(&self.p)
    }
}

fn kvar() -> Polynomial {
    Polynomial::x().renamed("k")
}

fn kc(c: Rational) -> Polynomial {
    Polynomial::constant(c).renamed("k")
}

fn kci(c: i64) -> Polynomial {
    kc(int(c))
}

/// `(k + c)`
fn kplus(c: Rational) -> Polynomial {
    &kvar() + &kc(c)
}

/// Every coefficient of the theory as a polynomial in `k` for one fixed dimension.
#[derive(Clone, Debug)]
pub struct CoeffPolys {
    pub n: Rational,
    pub delta: [Polynomial; 4],
    pub alpha: Polynomial,
    pub beta: Polynomial,
    pub a: Polynomial,
    pub b: Polynomial,
    pub a1: Polynomial,
    pub a2: Polynomial,
    pub b1: Polynomial,
    pub k0: Polynomial,
    pub k1: Polynomial,
    pub k2: Polynomial,
    pub c0: Polynomial,
    pub c1: Polynomial,
    pub c2: Polynomial,
}

impl CoeffPolys {
    pub fn new(n: &Rational) -> Self {
        let k = kvar();
        let nn = kc(n.clone());
        let one = kci(1);
        let delta = deltas_poly(n);
        let [d1, d2, d3, d4] = delta.clone();

        let alpha = &(&nn - &kci(3)) - &k.scale(&int(2));
        let beta = &k * &(&(&kci(4) + &k) - &nn);
        let a = &(&nn - &one) - &k.scale(&int(2));
        let b = &k * &(&(&k - &nn) + &kci(2));

        let sq = |p: &Polynomial| p * p;
        let a1 = &(&(&(&d1.scale(&int(10)) - &d2.scale(&int(2))) - &kci(56)) + &sq(&a))
            - &(&(&a.scale(&int(2)) + &b.scale(&int(2))) + &kci(4));
        let a2 = &(&(&(&(&d2.scale(&int(6)) - &d1.scale(&int(18))) - &d3.scale(&int(4)))
            + &d4.scale(&int(2)))
            + &kci(72))
            + &(&(&(&sq(&b) - &sq(&a)) + &a.scale(&int(2))) + &b.scale(&int(2)));
        let b1 = &(&(&(&alpha.scale(&int(8)) - &beta.scale(&int(4))) - &b.scale(&int(2)))
            + &nn.scale(&int(4)))
            - &kci(18);

        // a_j = (k + j)(k + j + 2 - n): the three factors of the radial part of Δ^3 on r^{-k}
        let aj = |j: i64| &kplus(int(j)) * &kplus(int(j + 2) - n);
        let (a0, a2j, a4) = (aj(0), aj(2), aj(4));
        let k0 = -(&(&a0 * &a2j) * &a4);
        let k1 = &(&(&a0 * &a2j) + &(&a0 * &a4)) + &(&a2j * &a4);
        let k2 = -(&(&a0 + &a2j) + &a4);

        let hr = kc(hardy_rellich_constant_r(n));
        let k6 = kplus(int(6));
        // k0 / k, exact since k divides k0
        let k0_over_k = &(&(&kplus(int(2)) * &kplus(int(4))) * &(&kc(n - int(2)) - &k))
            * &(&(&kc(n - int(4)) - &k) * &(&kc(n - int(6)) - &k));
        let c0 = &(&k6 * &k0_over_k) - &hr;
        let n2 = n * n;
        let c1_shift = (n - int(6)) * (n + int(2)) * (int(3) * &n2 - int(12) * n - int(4)) / int(16);
        let c1 = &(&k6 * &k1) - &k.scale(&c1_shift);
        let c2_shift = (int(3) * &n2 - int(12) * n - int(20)) / int(4);
        let c2 = &(&k6 * &k2) - &k.scale(&c2_shift);

        CoeffPolys {
            n: n.clone(),
            delta,
            alpha,
            beta,
            a,
            b,
            a1,
            a2,
            b1,
            k0,
            k1,
            k2,
            c0,
            c1,
            c2,
        }
    }

    pub fn for_dim(n: i64) -> Self {
        Self::new(&int(n))
    }

    /// `3(k+1)(k+3)(k-(n-5))(k-(n-3))`
    pub fn a2_factored(&self) -> Polynomial {
        let n = &self.n;
        (&(&kplus(int(1)) * &kplus(int(3))) * &(&kplus(int(5) - n) * &kplus(int(3) - n)))
            .scale(&int(3))
    }

    pub fn evaluate(&self, k: &Rational) -> CoefficientSet {
        let e = |p: &Polynomial| p.eval(k);
        CoefficientSet {
            n: self.n.clone(),
            k: k.clone(),
            delta1: e(&self.delta[0]),
            delta2: e(&self.delta[1]),
            delta3: e(&self.delta[2]),
            delta4: e(&self.delta[3]),
            alpha: e(&self.alpha),
            beta: e(&self.beta),
            a: e(&self.a),
            b: e(&self.b),
            a1: e(&self.a1),
            a2: e(&self.a2),
            b1: e(&self.b1),
            k0: e(&self.k0),
            k1: e(&self.k1),
            k2: e(&self.k2),
            c0: e(&self.c0),
            c1: e(&self.c1),
            c2: e(&self.c2),
            hardy_rellich: hardy_rellich_constant_r(&self.n),
        }
    }
}

/// Boundary operator coefficients: on the unit sphere the radial bilaplacian of `u^λ`
/// equals `λ^4 g'''' + δ1 λ^3 g''' + δ2 λ^2 g'' + δ3 λ g' + δ4 g`, `g(λ) = u^λ|_{r=1}`.
pub fn deltas_poly(n: &Rational) -> [Polynomial; 4] {
    let k = kvar();
    let nn = kc(n.clone());
    let d1 = &(&nn.scale(&int(2)) - &kci(2)) - &k.scale(&int(4));
    let d2 = &(&(&(&k.pow(2).scale(&int(6)) - &(&k * &nn).scale(&int(6))) + &k.scale(&int(12)))
        + &nn.pow(2))
        - &(&nn.scale(&int(4)) - &kci(3));
    // -(2k - n + 3)(2k^2 - 2kn + 6k - n + 1)
    let f1 = &(&k.scale(&int(2)) - &nn) + &kci(3);
    let f2 = &(&(&(&k.pow(2).scale(&int(2)) - &(&k * &nn).scale(&int(2))) + &k.scale(&int(6))) - &nn)
        + &kci(1);
    let d3 = -(&f1 * &f2);
    let d4 = &(&k * &kplus(int(2))) * &(&(&k - &nn + kci(2)) * &(&k - &nn + kci(4)));
    [d1, d2, d3, d4]
}

/// Independent derivation of the δ's: on r = 1, `∂_r^j u^λ = Π_{i<j}(θ - k - i) g` with
/// `θ = λ d/dλ`, and `θ^m = Σ_i S(m, i) λ^i d^i/dλ^i` (Stirling numbers of the second kind).
pub fn deltas_derived(n: &Rational) -> [Polynomial; 4] {
    // θ-polynomials with coefficients in Q[k]; index = power of θ
    type TPoly = Vec<Polynomial>;
    let mul_lin = |p: &TPoly, shift: i64| -> TPoly {
        // p * (θ - k - shift)
        let mut out = vec![Polynomial::zero().renamed("k"); p.len() + 1];
        let c = -(&kvar() + &kci(shift));
        for (i, a) in p.iter().enumerate() {
            out[i + 1] = &out[i + 1] + a;
            out[i] = &out[i] + &(a * &c);
        }
        out
    };
    let mut u: Vec<TPoly> = vec![vec![kci(1)]];
    for j in 0..4 {
        let next = mul_lin(&u[j], j as i64);
        u.push(next);
    }
    let n1 = n - int(1);
    let n3 = n - int(3);
    let weights = [
        (4usize, Rational::one()),
        (3, int(2) * &n1),
        (2, &n1 * &n3),
        (1, -(&n1 * &n3)),
    ];
    let mut theta: TPoly = vec![Polynomial::zero().renamed("k"); 5];
    for (j, w) in weights.iter() {
        for (i, a) in u[*j].iter().enumerate() {
            theta[i] = &theta[i] + &a.scale(w);
        }
    }
    // Stirling numbers S(m, i), m <= 4
    let s: [[i64; 5]; 5] = [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 1, 1, 0, 0],
        [0, 1, 3, 1, 0],
        [0, 1, 7, 6, 1],
    ];
    let mut by_order: Vec<Polynomial> = vec![Polynomial::zero().renamed("k"); 5];
    for (m, a) in theta.iter().enumerate() {
        for i in 0..=m {
            if s[m][i] != 0 {
                by_order[i] = &by_order[i] + &a.scale(&int(s[m][i]));
            }
        }
    }
    debug_assert_eq!(by_order[4], kci(1));
    [by_order[3].clone(), by_order[2].clone(), by_order[1].clone(), by_order[0].clone()]
}

/// The δ's as they appear in the first (parameter-form) display; δ3 there involves a
/// symbol `b` that has no definition at that point, so it is reported as `None`.
pub fn deltas_first_display(params: &Params) -> [Option<Rational>; 4] {
    let n = params.nr();
    let k = &params.k;
    let one = Rational::one();
    let d1 = int(2) * &n - int(4) * k;
    let d2 = &n * (&n - int(2)) - int(6) * k * &n - int(6) * k * (&one + int(6) * k);
    let d4 = (int(3) + k) * (int(2) + k) * (&one + k) * k - int(2) * &n * (&one + k) * (int(2) + k) * k
        + &n * (&n - int(2)) * (int(2) + k) * k;
    [Some(d1), Some(d2), None, Some(d4)]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaComparison {
    pub component: usize,
    #[serde(with = "serde_rational")]
    pub authoritative: Rational,
    #[serde(with = "serde_rational")]
    pub derived: Rational,
    #[serde(with = "serde_rational::option", default)]
    pub first_display: Option<Rational>,
    pub first_display_agrees: bool,
}

/// Per-component agreement of the three δ sources at one parameter pair.
pub fn delta_consistency(params: &Params) -> Vec<DeltaComparison> {
    let n = params.nr();
    let auth = deltas_poly(&n);
    let der = deltas_derived(&n);
    let lit = deltas_first_display(params);
    (0..4)
        .map(|i| {
            let a = auth[i].eval(&params.k);
            let d = der[i].eval(&params.k);
            let l = lit[i].clone();
            DeltaComparison {
                component: i + 1,
                first_display_agrees: l.as_ref() == Some(&a),
                authoritative: a,
                derived: d,
                first_display: l,
            }
        })
        .collect()
}

/// Exact coefficient values at one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSet {
    #[serde(with = "serde_rational")]
    pub n: Rational,
    #[serde(with = "serde_rational")]
    pub k: Rational,
    #[serde(with = "serde_rational")]
    pub delta1: Rational,
    #[serde(with = "serde_rational")]
    pub delta2: Rational,
    #[serde(with = "serde_rational")]
    pub delta3: Rational,
    #[serde(with = "serde_rational")]
    pub delta4: Rational,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(with = "serde_rational")]
    pub a1: Rational,
    #[serde(with = "serde_rational")]
    pub a2: Rational,
    #[serde(with = "serde_rational")]
    pub b1: Rational,
    #[serde(with = "serde_rational")]
    pub k0: Rational,
    #[serde(with = "serde_rational")]
    pub k1: Rational,
    #[serde(with = "serde_rational")]
    pub k2: Rational,
    #[serde(with = "serde_rational")]
    pub c0: Rational,
    #[serde(with = "serde_rational")]
    pub c1: Rational,
    #[serde(with = "serde_rational")]
    pub c2: Rational,
    #[serde(with = "serde_rational")]
    pub hardy_rellich: Rational,
}

pub fn coefficient_set(params: &Params) -> Result<CoefficientSet, CoeffError> {
    if params.k.is_zero() {
        return Err(CoeffError::ZeroK);
    }
    Ok(CoeffPolys::new(&params.nr()).evaluate(&params.k))
}

pub fn deltas(params: &Params) -> [Rational; 4] {
    let d = deltas_poly(&params.nr());
    [d[0].eval(&params.k), d[1].eval(&params.k), d[2].eval(&params.k), d[3].eval(&params.k)]
}

/// `(α, β) = (n - 3 - 2k, k(4 + k - n))`
pub fn alpha_beta(params: &Params) -> (Rational, Rational) {
    let n = params.nr();
    let k = &params.k;
    (&n - int(3) - int(2) * k, k * (int(4) + k - &n))
}

/// `(a, b) = (n - 1 - 2k, k(k - n + 2))`
pub fn a_b(params: &Params) -> (Rational, Rational) {
    let n = params.nr();
    let k = &params.k;
    (&n - int(1) - int(2) * k, k * (k - &n + int(2)))
}

pub fn a1a2b1(params: &Params) -> (Rational, Rational, Rational) {
    let c = CoeffPolys::new(&params.nr());
    (c.a1.eval(&params.k), c.a2.eval(&params.k), c.b1.eval(&params.k))
}

pub fn k_coeffs(params: &Params) -> (Rational, Rational, Rational) {
    let c = CoeffPolys::new(&params.nr());
    (c.k0.eval(&params.k), c.k1.eval(&params.k), c.k2.eval(&params.k))
}

pub fn c_coeffs(params: &Params) -> Result<(Rational, Rational, Rational), CoeffError> {
    if params.k.is_zero() {
        return Err(CoeffError::ZeroK);
    }
    let c = CoeffPolys::new(&params.nr());
    Ok((c.c0.eval(&params.k), c.c1.eval(&params.k), c.c2.eval(&params.k)))
}

fn hardy_rellich_constant_r(n: &Rational) -> Rational {
    let f = (n - int(6)) * (n - int(2)) * (n + int(2));
    &f * &f / int(64)
}

/// `(n-6)^2 (n-2)^2 (n+2)^2 / 64`
pub fn hardy_rellich_constant(n: i64) -> Rational {
    hardy_rellich_constant_r(&int(n))
}

/// The cubic in `t = a^2` obtained from `c0` under `k = (n-8)/2 + a`.
pub fn c0_cubic(n: i64) -> Polynomial {
    let n = int(n);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n3 * &n;
    let n5 = &n4 * &n;
    let c0 = rat(3, 16) * &n5 - rat(15, 16) * &n4 - rat(3, 2) * &n3 + rat(33, 4) * &n2 + int(3) * &n - int(9);
    let c1 = -(int(16) + rat(3, 16) * &n4);
    let c2 = int(8) + rat(3, 4) * &n2;
    Polynomial::with_var(vec![c0, c1, c2, int(-1)], "t")
}

/// `c0(k)` at `k = (n-8)/2 + a`, as a polynomial in `a` (even by construction).
pub fn c0_in_shift(n: i64) -> Polynomial {
    let c = CoeffPolys::for_dim(n);
    c.c0.shift(&rat(n - 8, 2)).renamed("a")
}

/// `K^{p-1} = k0` for the homogeneous singular solution `K r^{-k}`.
pub fn singular_amplitude(params: &Params) -> Result<Rational, CoeffError> {
    let (k0, _, _) = k_coeffs(params);
    if !k0.is_positive() {
        return Err(CoeffError::NoPositiveAmplitude(crate::exact_algebra::fmt_rational(&k0)));
    }
    Ok(k0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Stable,
    Unstable,
    BoundaryInconclusive,
}

/// Stability of the singular solution from the sign of `c0`: stable iff `c0 <= 0`.
pub fn singular_stability(params: &Params) -> Stability {
    let c = CoeffPolys::new(&params.nr());
    if c.c0.eval(&params.k).is_positive() {
        Stability::Unstable
    } else {
        Stability::Stable
    }
}

/// Same criterion for an exponent known only through an enclosure.
pub fn singular_stability_enclosed(n: i64, p: &Interval) -> Stability {
    if p.lo <= Rational::one() {
        return Stability::BoundaryInconclusive;
    }
    let six = Interval::point(int(6));
    let pm1 = &p.clone() - &Interval::point(Rational::one());
    let k = &six / &pm1;
    let c = CoeffPolys::for_dim(n);
    // c0 on a narrow k-interval: Horner enclosure, widened only by dependency effects
    let v = c.c0.eval_interval(&k);
    match v.sign() {
        Some(Ordering::Greater) => Stability::Unstable,
        Some(_) if !v.hi.is_positive() => Stability::Stable,
        _ => Stability::BoundaryInconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: i64, k: Rational) -> Params {
        Params::from_k(n, k).unwrap()
    }

    #[test]
    fn k_p_round_trip() {
        assert_eq!(p_of_k(&int(6)).unwrap(), int(2));
        assert_eq!(p_of_k(&k_of_p(&int(7)).unwrap()).unwrap(), int(7));
        let n = 20;
        assert_eq!(k_of_p(&rat(n + 6, n - 6)).unwrap(), rat(n - 6, 2));
        assert!(k_of_p(&int(1)).is_err());
        assert!(p_of_k(&int(0)).is_err());
    }

    #[test]
    fn small_examples() {
        let p = params(15, int(1));
        assert_eq!(deltas(&p)[0], int(24));
        assert_eq!(k_coeffs(&p).0, int(14400));
        assert_eq!(singular_amplitude(&p).unwrap(), int(14400));
        let p = params(18, int(6));
        assert_eq!(k_coeffs(&p).0, int(230400));
        let p = params(15, int(2));
        assert_eq!(alpha_beta(&p), (int(8), int(-18)));
        let (a, _) = a_b(&p);
        assert_eq!(a - alpha_beta(&p).0, int(2));
    }

    #[test]
    fn hardy_rellich() {
        assert_eq!(hardy_rellich_constant(8), int(225));
        assert_eq!(hardy_rellich_constant(6), int(0));
        assert_eq!(hardy_rellich_constant(10), int(2304));
    }

    #[test]
    fn a2_at_zero() {
        let c = CoeffPolys::for_dim(21);
        assert_eq!(c.a2.eval(&int(0)), int(2592));
        assert_eq!(c.a2, c.a2_factored());
    }

    #[test]
    fn deltas_three_ways() {
        for n in 7..20 {
            let n = int(n);
            assert_eq!(deltas_poly(&n), deltas_derived(&n));
        }
        let rep = delta_consistency(&params(15, int(1)));
        assert!(rep.iter().all(|r| !r.first_display_agrees));
        assert!(rep.iter().all(|r| r.authoritative == r.derived));
    }

    #[test]
    fn cubic_coefficients() {
        let c = c0_cubic(4);
        assert_eq!(c.coeff(2), int(20));
        assert_eq!(c0_cubic(2).coeff(0), int(9));
    }

    #[test]
    fn c0_shift_matches_cubic() {
        for n in 7..=30 {
            let sh = c0_in_shift(n);
            let t2 = Polynomial::with_var(vec![int(0), int(0), int(1)], "a");
            assert_eq!(sh, c0_cubic(n).compose(&t2).renamed("a"), "n = {}", n);
        }
    }

    #[test]
    fn c2_is_cubic_in_k() {
        let c = CoeffPolys::for_dim(12);
        assert_eq!(c.c2.degree(), Some(3));
        assert_eq!(c.c2.leading(), int(-3));
    }

    #[test]
    fn stability_at_small_n() {
        let p = Params::new(12, int(4)).unwrap();
        assert_eq!(singular_stability(&p), Stability::Unstable);
    }
}
