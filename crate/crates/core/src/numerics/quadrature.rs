//! Adaptive Gauss–Legendre quadrature on `[0, 1]` with geometric splitting toward the
//! origin, where power-type integrands may be singular.
//!
//! The panel layout is built once and can be reused, so that an integrand depending
//! smoothly on a parameter is integrated by a rule that does not jump between nearby
//! parameter values (finite differences in λ rely on this).

use gauss_quad::legendre::GaussLegendre;
use std::num::NonZeroUsize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("divergent bulk integral")]
    Divergent,
    #[error("non-finite integrand at t = {0}")]
    NonFinite(f64),
}

const GL_DEGREE: usize = 20;
const MAX_LEVELS: usize = 400;
const MAX_BISECTIONS: usize = 40;

fn rule() -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(GL_DEGREE).unwrap())
}

/// A fixed panel layout of `[0, 1]` (the innermost `[0, t_min]` is dropped as negligible).
#[derive(Clone, Debug)]
pub struct Partition {
    pub panels: Vec<(f64, f64)>,
}

impl Partition {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let gl = rule();
        self.panels.iter().map(|&(a, b)| gl.integrate(a, b, &f)).sum()
    }
}

/// Builds a partition for `f` on `[0, 1]` with relative tolerance `rel_tol`. Extra
/// breakpoints (e.g. the edge of a compact support) are honoured exactly.
pub fn build_partition<F: Fn(f64) -> f64>(f: F, breaks: &[f64], rel_tol: f64) -> Result<Partition, QuadError> {
    let gl = rule();
    let abs_on = |a: f64, b: f64| gl.integrate(a, b, |t| f(t).abs());

    // Geometric layers [2^{-j-1}, 2^{-j}] until the layers stop contributing.
    let mut layers: Vec<(f64, f64, f64)> = Vec::new();
    let mut total = 0.0;
    let mut quiet = 0;
    let mut growth_streak = 0;
    let mut prev = f64::INFINITY;
    for j in 0..MAX_LEVELS {
        let b = 0.5f64.powi(j as i32);
        let a = b / 2.0;
        let c = abs_on(a, b);
        if !c.is_finite() {
            return Err(QuadError::NonFinite(a));
        }
        total += c;
        layers.push((a, b, c));
        if c <= 1e-18 * total {
            quiet += 1;
            if quiet >= 4 {
                break;
            }
        } else {
            quiet = 0;
        }
        if j > 30 && c >= 0.99 * prev && c > 0.0 {
            growth_streak += 1;
            if growth_streak >= 10 {
                return Err(QuadError::Divergent);
            }
        } else {
            growth_streak = 0;
        }
        prev = c;
        if j + 1 == MAX_LEVELS {
            return Err(QuadError::Divergent);
        }
    }
    let scale = total.max(f64::MIN_POSITIVE);

    let mut segments: Vec<(f64, f64)> = Vec::new();
    for &(a, b, _) in &layers {
        let mut cuts = vec![a];
        cuts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        cuts.push(b);
        segments.extend(cuts.windows(2).map(|w| (w[0], w[1])));
    }

    let mut panels = Vec::new();
    let mut stack: Vec<(f64, f64, usize)> = segments.into_iter().rev().map(|(a, b)| (a, b, 0)).collect();
    while let Some((a, b, depth)) = stack.pop() {
        let m = 0.5 * (a + b);
        let whole = gl.integrate(a, b, &f);
        let halves = gl.integrate(a, m, &f) + gl.integrate(m, b, &f);
        if !halves.is_finite() {
            return Err(QuadError::NonFinite(m));
        }
        if (whole - halves).abs() <= rel_tol * scale || depth >= MAX_BISECTIONS {
            panels.push((a, m));
            panels.push((m, b));
        } else {
            stack.push((m, b, depth + 1));
            stack.push((a, m, depth + 1));
        }
    }
    panels.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(Partition { panels })
}

/// One-shot adaptive integral over `[0, 1]`.
pub fn integrate_unit<F: Fn(f64) -> f64>(f: F, breaks: &[f64], rel_tol: f64) -> Result<f64, QuadError> {
    let p = build_partition(&f, breaks, rel_tol)?;
    Ok(p.integrate(f))
}

/// Adaptive integral over `[a, b]` with no special treatment of the endpoints.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let gl = rule();
    let scale = gl.integrate(a, b, |t| f(t).abs()).max(f64::MIN_POSITIVE);
    let mut stack = vec![(a, b, 0usize)];
    let mut total = 0.0;
    while let Some((a, b, depth)) = stack.pop() {
        let m = 0.5 * (a + b);
        let whole = gl.integrate(a, b, &f);
        let halves = gl.integrate(a, m, &f) + gl.integrate(m, b, &f);
        if (whole - halves).abs() <= rel_tol * scale || depth >= MAX_BISECTIONS {
            total += halves;
        } else {
            stack.push((a, m, depth + 1));
            stack.push((m, b, depth + 1));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_weak_singularity() {
        // ∫_0^1 t^{-1/2} = 2
        let v = integrate_unit(|t| t.powf(-0.5), &[], 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn detects_divergence() {
        assert_eq!(integrate_unit(|t| 1.0 / t, &[], 1e-10).unwrap_err(), QuadError::Divergent);
    }

    #[test]
    fn honours_breakpoints() {
        let v = integrate_unit(|t| if t < 0.3 { 1.0 } else { 0.0 }, &[0.3], 1e-12).unwrap();
        assert!((v - 0.3).abs() < 1e-13);
    }

    #[test]
    fn interval_rule() {
        let v = integrate_interval(f64::sin, 0.0, std::f64::consts::PI, 1e-13);
        assert!((v - 2.0).abs() < 1e-12);
    }
}
