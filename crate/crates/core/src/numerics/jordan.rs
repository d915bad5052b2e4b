//! Check of the rearrangement
//! `3λ^5 f'''^2 + A1 λ^3 f''^2 + A2 λ f'^2
//!   = 3λ(λ^2 f''' + c1 λ f'')^2 + d1 λ(λ f'' + c2 f')^2 + d2 λ f'^2 - (3c1 λ^4 f''^2 + d1 c2 λ^2 f'^2)'`
//! with `d1 = A1 - 3c1^2 + 12c1` and `d2 = A2 - d1(c2^2 - 2c2)`.

use super::quadrature::integrate_interval;

#[derive(Clone, Copy, Debug)]
pub struct JordanParams {
    pub a1: f64,
    pub a2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl JordanParams {
    /// The choice `c1 = 2`, `c2 = 0`.
    pub fn standard(a1: f64, a2: f64) -> Self {
        JordanParams { a1, a2, c1: 2.0, c2: 0.0 }
    }

    pub fn d1(&self) -> f64 {
        self.a1 - 3.0 * self.c1 * self.c1 + 12.0 * self.c1
    }

    pub fn d2(&self) -> f64 {
        self.a2 - self.d1() * (self.c2 * self.c2 - 2.0 * self.c2)
    }

    /// `3λ^5 f'''^2 + A1 λ^3 f''^2 + A2 λ f'^2`; `d = [f', f'', f''']`.
    pub fn original(&self, l: f64, d: [f64; 3]) -> f64 {
        3.0 * l.powi(5) * d[2] * d[2] + self.a1 * l.powi(3) * d[1] * d[1] + self.a2 * l * d[0] * d[0]
    }

    pub fn squares(&self, l: f64, d: [f64; 3]) -> f64 {
        let x = l * l * d[2] + self.c1 * l * d[1];
        let y = l * d[1] + self.c2 * d[0];
        3.0 * l * x * x + self.d1() * l * y * y + self.d2() * l * d[0] * d[0]
    }

    /// The term whose derivative is subtracted.
    pub fn boundary(&self, l: f64, d: [f64; 3]) -> f64 {
        3.0 * self.c1 * l.powi(4) * d[1] * d[1] + self.d1() * self.c2 * l * l * d[0] * d[0]
    }
}

/// `|∫(original - squares) + [boundary]|` over `[l0, l1]`; `f` returns `[f', f'', f''']`.
pub fn jordan_residual<F>(f: F, jp: &JordanParams, l0: f64, l1: f64) -> f64
where
    F: Fn(f64) -> [f64; 3],
{
    let integral = integrate_interval(|l| jp.original(l, f(l)) - jp.squares(l, f(l)), l0, l1, 1e-13);
    (integral + jp.boundary(l1, f(l1)) - jp.boundary(l0, f(l0))).abs()
}

/// Maximizes `d1(c1)` over an even grid of `c1` in `[lo, hi]`; returns `(c1, d1)`.
pub fn max_d1_on_grid(a1: f64, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    (0..points)
        .map(|i| {
            let c1 = lo + (hi - lo) * i as f64 / (points - 1) as f64;
            (c1, JordanParams { a1, a2: 0.0, c1, c2: 0.0 }.d1())
        })
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_f_has_zero_residual() {
        let jp = JordanParams::standard(-40.0, 300.0);
        let r = jordan_residual(|l| [2.0 * l + 1.0, 2.0, 0.0], &jp, 0.5, 3.0);
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn general_c_pair() {
        let jp = JordanParams { a1: 7.0, a2: 11.0, c1: -0.7, c2: 1.3 };
        let r = jordan_residual(|l| [l.cos(), -l.sin(), -l.cos()], &jp, 0.2, 2.5);
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn d1_peaks_at_two() {
        let (c1, d1) = max_d1_on_grid(5.0, -10.0, 10.0, 2001);
        assert!((c1 - 2.0).abs() < 1e-12);
        assert!((d1 - 17.0).abs() < 1e-12);
    }
}
