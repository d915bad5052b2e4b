//! Analytic single-mode test functions `u = f(r) Y_l(θ)` with closed-form radial
//! derivatives of any order, and the exact λ-calculus of `u^λ = λ^k u(λx)`.

use serde::{Deserialize, Serialize};

/// Shape of the radial factor before the `r^l` weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RadialKind {
    /// `exp(-r^2 / (2σ^2))`
    Gaussian { sigma: f64 },
    /// `r^{-q}`; never carries the `r^l` weight, so `q = k` is exactly homogeneous.
    Power { q: f64 },
    /// `P(r^2) (1 - r^2/R^2)^m` on `r < R`, zero outside. `coeffs` lists `P` from the
    /// constant term up.
    Bump { coeffs: Vec<f64>, support: f64, order: u32 },
    /// `exp(-a r)`
    Exponential { rate: f64 },
}

/// `u(x) = amplitude · w(r) · Y_l(θ)` with `w = r^l · shape` (or `shape` for power
/// profiles) and `Y_l` a unit-normalized spherical harmonic on `S^{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicTestFunction {
    pub kind: RadialKind,
    pub amplitude: f64,
    pub l: u32,
    pub n: u32,
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `d^j/dx^j x^e` evaluated at `x`.
pub(crate) fn power_deriv(e: f64, j: usize, x: f64) -> f64 {
    let mut c = 1.0;
    for i in 0..j {
        c *= e - i as f64;
    }
    if c == 0.0 {
        0.0
    } else {
        c * x.powf(e - j as f64)
    }
}

/// Derivatives `0..=order` of the product of two functions given their derivative lists.
pub(crate) fn leibniz(a: &[f64], b: &[f64], order: usize) -> Vec<f64> {
    (0..=order)
        .map(|j| (0..=j).map(|i| binom(j, i) * a[i] * b[j - i]).sum())
        .collect()
}

fn poly_derivs(coeffs: &[f64], x: f64, order: usize) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    let mut out = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        out.push(c.iter().rev().fold(0.0, |acc, &a| acc * x + a));
        c = c.iter().enumerate().skip(1).map(|(i, &a)| i as f64 * a).collect();
        if c.is_empty() {
            c.push(0.0);
        }
    }
    out
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut r = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

impl RadialKind {
    /// Radial derivatives `0..=order` of the shape at `r > 0`.
    pub fn derivs(&self, r: f64, order: usize) -> Vec<f64> {
        match self {
            RadialKind::Gaussian { sigma } => {
                // d^j e^{-x^2} = (-1)^j H_j(x) e^{-x^2}, x = r/s
                let s = sigma * std::f64::consts::SQRT_2;
                let x = r / s;
                let e = (-x * x).exp();
                let mut h = vec![1.0, 2.0 * x];
                for j in 1..order {
                    let next = 2.0 * x * h[j] - 2.0 * j as f64 * h[j - 1];
                    h.push(next);
                }
                (0..=order)
                    .map(|j| (if j % 2 == 0 { 1.0 } else { -1.0 }) * h[j] * e / s.powi(j as i32))
                    .collect()
            }
            RadialKind::Power { q } => (0..=order).map(|j| power_deriv(-q, j, r)).collect(),
            RadialKind::Bump { coeffs, support, order: m } => {
                if r >= *support {
                    return vec![0.0; order + 1];
                }
                let mut p: Vec<f64> = Vec::new();
                for (i, &c) in coeffs.iter().enumerate() {
                    if p.len() < 2 * i + 1 {
                        p.resize(2 * i + 1, 0.0);
                    }
                    p[2 * i] += c;
                }
                if p.is_empty() {
                    p.push(0.0);
                }
                let base = [1.0, 0.0, -1.0 / (support * support)];
                for _ in 0..*m {
                    p = poly_mul(&p, &base);
                }
                poly_derivs(&p, r, order)
            }
            RadialKind::Exponential { rate } => {
                let e = (-rate * r).exp();
                (0..=order).map(|j| (-rate).powi(j as i32) * e).collect()
            }
        }
    }

    /// Radius beyond which the shape vanishes identically.
    pub fn support(&self) -> Option<f64> {
        match self {
            RadialKind::Bump { support, .. } => Some(*support),
            _ => None,
        }
    }
}

impl HarmonicTestFunction {
    pub fn new(kind: RadialKind, l: u32, n: u32) -> Self {
        HarmonicTestFunction { kind, amplitude: 1.0, l, n }
    }

    /// The exactly homogeneous profile `r^{-k}` of degree `-6/(p-1)`.
    pub fn homogeneous(k: f64, l: u32, n: u32) -> Self {
        Self::new(RadialKind::Power { q: k }, l, n)
    }

    fn weighted(&self) -> bool {
        !matches!(self.kind, RadialKind::Power { .. })
    }

    /// `μ = l(l + n - 2)`, the eigenvalue of `-Δ_θ` on the mode.
    pub fn mu(&self) -> f64 {
        let l = self.l as f64;
        l * (l + self.n as f64 - 2.0)
    }

    /// Radial derivatives `0..=order` of `w(r)` at `r > 0`.
    pub fn derivs(&self, r: f64, order: usize) -> Vec<f64> {
        let shape = self.kind.derivs(r, order);
        let out = if self.weighted() && self.l > 0 {
            let rl: Vec<f64> = (0..=order).map(|j| power_deriv(self.l as f64, j, r)).collect();
            leibniz(&rl, &shape, order)
        } else {
            shape
        };
        out.into_iter().map(|d| self.amplitude * d).collect()
    }

    pub fn value(&self, r: f64) -> f64 {
        self.derivs(r, 0)[0]
    }

    /// `u^λ(x) = λ^k u(λx)` as a test function of the same family.
    pub fn scale(&self, lambda: f64, k: f64) -> Self {
        assert!(lambda > 0.0, "scale requires λ > 0");
        let mut out = self.clone();
        match &mut out.kind {
            RadialKind::Gaussian { sigma } => {
                *sigma /= lambda;
                out.amplitude *= lambda.powf(k + self.l as f64);
            }
            RadialKind::Power { q } => out.amplitude *= lambda.powf(k - *q),
            RadialKind::Bump { coeffs, support, .. } => {
                for (i, c) in coeffs.iter_mut().enumerate() {
                    *c *= lambda.powi(2 * i as i32);
                }
                *support /= lambda;
                out.amplitude *= lambda.powf(k + self.l as f64);
            }
            RadialKind::Exponential { rate } => {
                *rate *= lambda;
                out.amplitude *= lambda.powf(k + self.l as f64);
            }
        }
        out
    }

    /// Mixed derivative `∂_r^q ∂_λ^i u^λ(r)` of the radial factor, exact.
    pub fn mixed(&self, k: f64, lambda: f64, r: f64, i: usize, q: usize) -> f64 {
        let f = self.derivs(lambda * r, i + q);
        let mut total = 0.0;
        for j in 0..=i {
            let lk = power_deriv(k, i - j, lambda);
            if lk == 0.0 {
                continue;
            }
            // ∂_r^q [r^j f^{(j)}(λ r)]
            let mut inner = 0.0;
            for s in 0..=q {
                let rj = power_deriv(j as f64, q - s, r);
                inner += binom(q, s) * rj * lambda.powi(s as i32) * f[j + s];
            }
            total += binom(i, j) * lk * inner;
        }
        total
    }

    /// `g^{(i)}(λ)`, i = 0..=order, where `g(λ) = u^λ` on the unit sphere.
    pub fn g_derivs(&self, k: f64, lambda: f64, order: usize) -> Vec<f64> {
        let f = self.derivs(lambda, order);
        let lk: Vec<f64> = (0..=order).map(|j| power_deriv(k, j, lambda)).collect();
        leibniz(&lk, &f, order)
    }
}

/// A radial differential expression `Σ c r^e w^{(j)}`, used to build `Δ`, `Δ²`, `Δ³`
/// of a single mode without truncation.
#[derive(Clone, Debug, Default)]
pub struct RadialExpr(pub Vec<(f64, i32, usize)>);

impl RadialExpr {
    pub fn identity() -> Self {
        RadialExpr(vec![(1.0, 0, 0)])
    }

    fn simplify(mut terms: Vec<(f64, i32, usize)>) -> Self {
        terms.sort_by_key(|t| (t.1, t.2));
        let mut out: Vec<(f64, i32, usize)> = Vec::new();
        for t in terms {
            match out.last_mut() {
                Some(last) if last.1 == t.1 && last.2 == t.2 => last.0 += t.0,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.0 != 0.0);
        RadialExpr(out)
    }

    pub fn dr(&self) -> Self {
        let mut t = Vec::new();
        for &(c, e, j) in &self.0 {
            if e != 0 {
                t.push((c * e as f64, e - 1, j));
            }
            t.push((c, e, j + 1));
        }
        Self::simplify(t)
    }

    /// Mode Laplacian `∂_rr + (n-1)/r ∂_r - μ/r^2`.
    pub fn laplacian(&self, n: f64, mu: f64) -> Self {
        let d1 = self.dr();
        let d2 = d1.dr();
        let mut t = d2.0;
        t.extend(d1.0.iter().map(|&(c, e, j)| (c * (n - 1.0), e - 1, j)));
        t.extend(self.0.iter().map(|&(c, e, j)| (-c * mu, e - 2, j)));
        Self::simplify(t)
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|t| t.2).max().unwrap_or(0)
    }

    /// Evaluates given the derivatives of `w` at `r`.
    pub fn eval(&self, r: f64, w: &[f64]) -> f64 {
        self.0.iter().map(|&(c, e, j)| c * r.powi(e) * w[j]).sum()
    }
}

/// `Δ^m` of the mode, for m = 1, 2, 3, with their radial derivatives.
#[derive(Clone, Debug)]
pub struct ModeOperators {
    pub lap: RadialExpr,
    pub lap_r: RadialExpr,
    pub bilap: RadialExpr,
    pub bilap_r: RadialExpr,
    pub trilap: RadialExpr,
}

impl ModeOperators {
    pub fn new(n: f64, mu: f64) -> Self {
        let lap = RadialExpr::identity().laplacian(n, mu);
        let bilap = lap.laplacian(n, mu);
        let trilap = bilap.laplacian(n, mu);
        ModeOperators { lap_r: lap.dr(), bilap_r: bilap.dr(), lap, bilap, trilap }
    }
}

/// One named identity from the chain relating r- and λ-derivatives of `u^λ`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityResidual {
    pub name: String,
    pub max_relative_residual: f64,
    pub samples: usize,
}

/// Residuals of the derivative-transfer identities at the sampled `(λ, r)` pairs. The
/// first group holds at every radius; the second only on the unit sphere and is checked
/// at `r = 1` for each sampled λ.
pub fn identity_suite(u: &HarmonicTestFunction, k: f64, samples: &[(f64, f64)]) -> Vec<IdentityResidual> {
    type Check = Box<dyn Fn(&dyn Fn(usize, usize) -> f64, f64, f64) -> (f64, f64)>;
    let any_r: Vec<(&str, Check)> = vec![
        ("lambda-first", Box::new(move |m, l, r| (l * m(1, 0), k * m(0, 0) + r * m(0, 1)))),
        ("lambda-second", Box::new(move |m, l, r| (l * m(2, 0) + m(1, 0), k * m(1, 0) + r * m(1, 1)))),
        ("lambda-third", Box::new(move |m, l, r| (l * m(3, 0) + 2.0 * m(2, 0), k * m(2, 0) + r * m(2, 1)))),
        ("lambda-fourth", Box::new(move |m, l, r| (l * m(4, 0) + 3.0 * m(3, 0), k * m(3, 0) + r * m(3, 1)))),
        ("radial-first", Box::new(move |m, l, r| (l * m(1, 1), (k + 1.0) * m(0, 1) + r * m(0, 2)))),
        ("radial-second", Box::new(move |m, l, r| (l * m(1, 2), (k + 2.0) * m(0, 2) + r * m(0, 3)))),
        ("radial-third", Box::new(move |m, l, r| (l * m(1, 3), (k + 3.0) * m(0, 3) + r * m(0, 4)))),
    ];
    let unit: Vec<(&str, Check)> = vec![
        ("dr1-on-sphere", Box::new(move |m, l, _| (m(0, 1), l * m(1, 0) - k * m(0, 0)))),
        (
            "dr2-on-sphere",
            Box::new(move |m, l, _| (m(0, 2), l * l * m(2, 0) - 2.0 * k * l * m(1, 0) + (1.0 + k) * k * m(0, 0))),
        ),
        (
            "dr2-dlambda-on-sphere",
            Box::new(move |m, l, _| {
                (m(1, 2), l * l * m(3, 0) + (2.0 - 2.0 * k) * l * m(2, 0) - (1.0 - k) * k * m(1, 0))
            }),
        ),
        (
            "dr3-on-sphere",
            Box::new(move |m, l, _| {
                (
                    m(0, 3),
                    l.powi(3) * m(3, 0) - 3.0 * k * l * l * m(2, 0) + l * (3.0 * k + 3.0 * k * k) * m(1, 0)
                        - (2.0 + k) * (1.0 + k) * k * m(0, 0),
                )
            }),
        ),
        (
            "dr2-dlambda2-on-sphere",
            Box::new(move |m, l, _| {
                (m(2, 2), l * l * m(4, 0) + l * (4.0 - 2.0 * k) * m(3, 0) + (1.0 - k) * (2.0 - k) * m(2, 0))
            }),
        ),
        (
            "dr3-dlambda-on-sphere",
            Box::new(move |m, l, _| {
                (
                    m(1, 3),
                    l.powi(3) * m(4, 0) + l * l * (3.0 - 3.0 * k) * m(3, 0) - l * (1.0 - k) * 3.0 * k * m(2, 0)
                        + (1.0 - k) * (1.0 + k) * k * m(1, 0),
                )
            }),
        ),
        (
            "dr4-on-sphere",
            Box::new(move |m, l, _| {
                (
                    m(0, 4),
                    l.powi(4) * m(4, 0) - 4.0 * k * l.powi(3) * m(3, 0) + l * l * (2.0 + 2.0 * k) * 3.0 * k * m(2, 0)
                        - l * (1.0 + k) * (1.0 + k / 2.0) * 8.0 * k * m(1, 0)
                        + (3.0 + k) * (2.0 + k) * (1.0 + k) * k * m(0, 0),
                )
            }),
        ),
    ];
    let run = |checks: &[(&str, Check)], unit_sphere: bool| -> Vec<IdentityResidual> {
        checks
            .iter()
            .map(|(name, f)| {
                let worst = samples
                    .iter()
                    .map(|&(l, r)| {
                        let r = if unit_sphere { 1.0 } else { r };
                        let m = |i: usize, q: usize| u.mixed(k, l, r, i, q);
                        let (a, b) = f(&m, l, r);
                        let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                        (a - b).abs() / scale
                    })
                    .fold(0.0, f64::max);
                IdentityResidual { name: name.to_string(), max_relative_residual: worst, samples: samples.len() }
            })
            .collect()
    };
    let mut out = run(&any_r, false);
    out.extend(run(&unit, true));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_derivatives_match_finite_differences() {
        let u = HarmonicTestFunction::new(RadialKind::Gaussian { sigma: 0.7 }, 2, 12);
        let h = 1e-5;
        for &r in &[0.3, 1.1] {
            let d = u.derivs(r, 5);
            let dp = u.derivs(r + h, 5);
            let dm = u.derivs(r - h, 5);
            for j in 0..5 {
                let fd = (dp[j] - dm[j]) / (2.0 * h);
                assert!((fd - d[j + 1]).abs() < 1e-6 * (1.0 + d[j + 1].abs()), "j={j}");
            }
        }
    }

    #[test]
    fn scale_matches_pointwise_definition() {
        let k = 2.0;
        for kind in [
            RadialKind::Gaussian { sigma: 1.0 },
            RadialKind::Bump { coeffs: vec![1.0, 0.5], support: 2.0, order: 6 },
            RadialKind::Exponential { rate: 1.5 },
            RadialKind::Power { q: 1.3 },
        ] {
            let u = HarmonicTestFunction::new(kind, 1, 12);
            let s = u.scale(2.0, k);
            for i in 1..=10 {
                let r = 0.09 * i as f64;
                let direct = 2f64.powf(k) * u.value(2.0 * r);
                assert!((s.value(r) - direct).abs() <= 1e-13 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn homogeneous_is_scale_invariant() {
        let u = HarmonicTestFunction::homogeneous(2.5, 0, 15);
        let s = u.scale(3.7, 2.5);
        assert!((s.value(0.8) - u.value(0.8)).abs() < 1e-14);
        let g = u.g_derivs(2.5, 1.7, 4);
        assert!(g[1..].iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn laplacian_of_power_is_power() {
        // Δ r^{-m} = m(m + 2 - n) r^{-m-2}
        let n = 12.0;
        let u = HarmonicTestFunction::homogeneous(2.0, 0, 12);
        let ops = ModeOperators::new(n, 0.0);
        let r = 1.3;
        let w = u.derivs(r, 6);
        assert!((ops.lap.eval(r, &w) - 2.0 * (4.0 - n) * r.powf(-4.0)).abs() < 1e-12);
    }
}
