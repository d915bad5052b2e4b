//! The scaled energy, its derivative formulas, and the finite-difference referee.
//!
//! Everything is reduced to one spherical-harmonic mode: with `g(λ) = u^λ` on the unit
//! sphere, every boundary integral becomes a quadratic form in `g, g', …` with
//! coefficients depending on `(n, k, μ)`, and bulk integrals become 1-D radial
//! quadratures. The bulk energy `Ē` has derivative `T - D` where `T` is the exact
//! boundary form from integration by parts and `D` is the equation defect, which
//! vanishes for solutions. The energy `E` subtracts from `Ē` the boundary antiderivative
//! that turns `T` into the quadratic derivative formula.

use super::forms::{LinForm, QuadForm};
use super::profile::{HarmonicTestFunction, ModeOperators};
use super::quadrature::{build_partition, Partition, QuadError};
use crate::coefficients::{a1a2b1, alpha_beta, deltas, Params};
use crate::exact_algebra::to_f64;
use serde::Serialize;

/// Highest λ-derivative of `g` any form here uses.
const G_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaVariant {
    /// The derivative formula with final term `λ (d Δu^λ/dλ)^2`.
    DeltaReading,
    /// The same formula with final term `λ (Δ_θ du^λ/dλ)^2`.
    AngularReading,
    /// The rearranged form with coefficients `A1, A2, B1`; a lower bound, see
    /// [`EnergyModel::lower_bound_gap`].
    Rearranged,
}

impl FormulaVariant {
    pub const ALL: [FormulaVariant; 3] =
        [FormulaVariant::DeltaReading, FormulaVariant::AngularReading, FormulaVariant::Rearranged];
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergyConfig {
    /// Relative tolerance of the radial quadratures.
    pub rel_tol: f64,
    /// `∫ |Y|^{p+1}` over the sphere; the nonlinear terms cancel from every derivative
    /// check, so this only shifts reported energies.
    pub angular_moment: f64,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        EnergyConfig { rel_tol: 1e-13, angular_moment: 1.0 }
    }
}

/// Coefficient data for one `(n, p, l)`.
#[derive(Clone, Debug)]
pub struct EnergyModel {
    pub n: f64,
    pub p: f64,
    pub k: f64,
    pub mu: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    /// Exact boundary integrand of `dĒ/dλ` for solutions.
    pub boundary: QuadForm,
    /// Diagonal part of `boundary`: `3λ^5 g'''^2 + c λ^3 g''^2 + c' λ g'^2`.
    pub squares: QuadForm,
    /// `boundary = squares + d(boundary_antiderivative)/dλ`
    pub boundary_antiderivative: QuadForm,
    formulas: [QuadForm; 3],
    /// For each variant: the canonical residue of `boundary - formula` (zero when some
    /// quadratic boundary correction makes the formula exact) and that correction.
    corrections: [(QuadForm, QuadForm); 3],
    ops: ModeOperators,
}

fn u_forms(k: f64) -> Vec<LinForm> {
    let mut out = vec![LinForm::g()];
    for i in 0..4 {
        let a = out[i].clone();
        out.push(a.theta().plus(&a, -(k + i as f64)));
    }
    out
}

impl EnergyModel {
    pub fn new(params: &Params, l: u32) -> Self {
        let n = params.n as f64;
        let k = params.k_f64();
        let p = params.p_f64();
        let lf = l as f64;
        let mu = lf * (lf + n - 2.0);
        let d = deltas(params).map(|x| to_f64(&x));
        let (alpha, beta) = alpha_beta(params);
        let (alpha, beta) = (to_f64(&alpha), to_f64(&beta));
        let (a1, a2, b1) = a1a2b1(params);
        let (a1, a2, b1) = (to_f64(&a1), to_f64(&a2), to_f64(&b1));

        let u = u_forms(k);
        // Δu^λ and Δ²u^λ on the unit sphere
        let v = u[2].plus(&u[1], n - 1.0).plus(&u[0], -mu);
        let radial_bilap = u[4]
            .plus(&u[3], 2.0 * (n - 1.0))
            .plus(&u[2], (n - 1.0) * (n - 3.0))
            .plus(&u[1], -(n - 1.0) * (n - 3.0));
        let w = radial_bilap
            .plus(&u[0], mu * mu + 2.0 * (n - 4.0) * mu)
            .plus(&u[2], -2.0 * mu)
            .plus(&u[1], -2.0 * mu * (n - 3.0));
        let g1 = LinForm::single(1, 0, 1.0);
        let g2 = LinForm::single(2, 0, 1.0);
        let vd = v.d();
        let wd = w.d();
        let boundary = vd
            .mul(&vd)
            .times_lambda(1)
            .plus(&v.mul(&vd), -(k + 2.0))
            .plus(&wd.mul(&g1).times_lambda(1), 1.0)
            .plus(&w.mul(&g2).times_lambda(1), -1.0)
            .plus(&w.mul(&g1), -5.0);
        let (squares, boundary_antiderivative) = boundary.reduce();

        let sq = QuadForm::square;
        let common = sq(3, 5, 2.0)
            .plus(&sq(2, 3, 10.0 * d[0] - 2.0 * d[1] - 56.0 + 4.0 * mu), 1.0)
            .plus(
                &sq(
                    1,
                    1,
                    -18.0 * d[0] + 6.0 * d[1] - 4.0 * d[2] + 2.0 * d[3] + 72.0
                        + (8.0 * alpha - 4.0 * beta + 4.0 * n - 28.0) * mu
                        + 2.0 * mu * mu,
                ),
                1.0,
            );
        let delta_reading = common.plus(&vd.mul(&vd).times_lambda(1), 1.0);
        let angular_reading = common.plus(&sq(1, 1, mu * mu), 1.0);
        let rearranged = sq(3, 5, 3.0)
            .plus(&sq(2, 3, a1 + 2.0 * mu), 1.0)
            .plus(&sq(1, 1, a2 + b1 * mu + mu * mu), 1.0);
        let formulas = [delta_reading, angular_reading, rearranged];
        let corrections = [0, 1, 2].map(|i| boundary.plus(&formulas[i], -1.0).reduce());

        EnergyModel {
            n,
            p,
            k,
            mu,
            a1,
            a2,
            b1,
            boundary,
            squares,
            boundary_antiderivative,
            formulas,
            corrections,
            ops: ModeOperators::new(n, mu),
        }
    }

    fn idx(v: FormulaVariant) -> usize {
        match v {
            FormulaVariant::DeltaReading => 0,
            FormulaVariant::AngularReading => 1,
            FormulaVariant::Rearranged => 2,
        }
    }

    pub fn formula(&self, v: FormulaVariant) -> &QuadForm {
        &self.formulas[Self::idx(v)]
    }

    /// Canonical residue of `boundary - formula`; empty (up to rounding) iff a quadratic
    /// boundary correction makes the formula an exact derivative.
    pub fn residue(&self, v: FormulaVariant) -> &QuadForm {
        &self.corrections[Self::idx(v)].0
    }

    /// Largest residue coefficient relative to the largest formula coefficient.
    pub fn residue_size(&self, v: FormulaVariant) -> f64 {
        self.residue(v).max_abs() / self.formula(v).max_abs().max(1.0)
    }

    pub fn is_exact(&self, v: FormulaVariant) -> bool {
        self.residue_size(v) < 1e-10
    }

    /// `squares - rearranged`: the terms the rearranged form drops, `4μλ^3 g''^2 +
    /// 2μ(μ-6)λ g'^2`.
    pub fn lower_bound_gap(&self) -> QuadForm {
        self.squares.plus(self.formula(FormulaVariant::Rearranged), -1.0)
    }

    pub fn g(&self, u: &HarmonicTestFunction, lambda: f64) -> Vec<f64> {
        u.g_derivs(self.k, lambda, G_ORDER)
    }

    fn upper(u: &HarmonicTestFunction, lambda: f64) -> f64 {
        u.kind.support().map_or(lambda, |s| s.min(lambda))
    }

    fn energy_density(&self, u: &HarmonicTestFunction, r: f64, cfg: &EnergyConfig) -> f64 {
        let w = u.derivs(r, 3);
        let h = self.ops.lap.eval(r, &w);
        let hr = self.ops.lap_r.eval(r, &w);
        let grad = hr * hr + self.mu * h * h / (r * r);
        r.powf(self.n - 1.0) * (0.5 * grad - cfg.angular_moment / (self.p + 1.0) * w[0].abs().powf(self.p + 1.0))
    }

    fn defect_density(&self, u: &HarmonicTestFunction, r: f64, cfg: &EnergyConfig) -> f64 {
        let w = u.derivs(r, 6);
        let tri = self.ops.trilap.eval(r, &w);
        let nonlin = cfg.angular_moment * w[0].abs().powf(self.p - 1.0) * w[0];
        r.powf(self.n - 1.0) * (tri + nonlin) * (self.k * w[0] + r * w[1])
    }

    fn check_integrable(&self, u: &HarmonicTestFunction) -> Result<(), QuadError> {
        if let super::profile::RadialKind::Power { q } = u.kind {
            // |∇Δu|^2 r^{n-1} ~ r^{n-7-2q}, |u|^{p+1} r^{n-1} ~ r^{n-1-q(p+1)}
            if self.n - 6.0 - 2.0 * q <= 0.0 || self.n - q * (self.p + 1.0) <= 0.0 {
                return Err(QuadError::Divergent);
            }
        }
        Ok(())
    }

    /// Panel layout for the bulk integrals at scale λ, reusable for nearby λ.
    pub fn partition(&self, u: &HarmonicTestFunction, lambda: f64, cfg: &EnergyConfig) -> Result<Partition, QuadError> {
        self.check_integrable(u)?;
        let top = Self::upper(u, lambda);
        build_partition(
            |t| self.energy_density(u, top * t, cfg).abs() + self.defect_density(u, top * t, cfg).abs(),
            &[],
            cfg.rel_tol,
        )
    }

    /// `Ē(λ) = λ^{2k+6-n} ∫_{B_λ} ½|∇Δu|^2 - |u|^{p+1}/(p+1)`.
    pub fn bulk_energy_on(&self, u: &HarmonicTestFunction, lambda: f64, part: &Partition, cfg: &EnergyConfig) -> f64 {
        let top = Self::upper(u, lambda);
        let integral = top * part.integrate(|t| self.energy_density(u, top * t, cfg));
        lambda.powf(2.0 * self.k + 6.0 - self.n) * integral
    }

    /// `D(λ) = λ^{2k+5-n} ∫_{B_λ} (Δ^3 u + |u|^{p-1}u)(k u + r u_r)`; zero for solutions.
    pub fn defect_on(&self, u: &HarmonicTestFunction, lambda: f64, part: &Partition, cfg: &EnergyConfig) -> f64 {
        let top = Self::upper(u, lambda);
        let integral = top * part.integrate(|t| self.defect_density(u, top * t, cfg));
        lambda.powf(2.0 * self.k + 5.0 - self.n) * integral
    }

    /// The energy whose derivative is the chosen formula (plus, for that formula, its
    /// canonical residue, which is zero exactly when the formula is consistent).
    pub fn energy_on(
        &self,
        u: &HarmonicTestFunction,
        lambda: f64,
        v: FormulaVariant,
        part: &Partition,
        cfg: &EnergyConfig,
    ) -> f64 {
        let g = self.g(u, lambda);
        self.bulk_energy_on(u, lambda, part, cfg) - self.corrections[Self::idx(v)].1.eval(lambda, &g)
    }

    pub fn energy(&self, u: &HarmonicTestFunction, lambda: f64, cfg: &EnergyConfig) -> Result<f64, QuadError> {
        let part = self.partition(u, lambda, cfg)?;
        Ok(self.energy_on(u, lambda, FormulaVariant::DeltaReading, &part, cfg))
    }

    /// Formula value, equation defect, and their difference (the predicted `dE/dλ`).
    pub fn derivative(
        &self,
        u: &HarmonicTestFunction,
        lambda: f64,
        v: FormulaVariant,
        cfg: &EnergyConfig,
    ) -> Result<DerivativeBreakdown, QuadError> {
        let part = self.partition(u, lambda, cfg)?;
        Ok(self.derivative_on(u, lambda, v, &part, cfg))
    }

    fn derivative_on(
        &self,
        u: &HarmonicTestFunction,
        lambda: f64,
        v: FormulaVariant,
        part: &Partition,
        cfg: &EnergyConfig,
    ) -> DerivativeBreakdown {
        let g = self.g(u, lambda);
        let f = self.formula(v);
        let formula = f.eval(lambda, &g);
        let defect = self.defect_on(u, lambda, part, cfg);
        DerivativeBreakdown {
            formula,
            defect,
            predicted: formula - defect,
            magnitude: f.abs_eval(lambda, &g) + defect.abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivativeBreakdown {
    pub formula: f64,
    pub defect: f64,
    pub predicted: f64,
    /// Sum of absolute contributions; the scale for relative residuals.
    pub magnitude: f64,
}

/// Finite-difference referee output at one λ.
#[derive(Clone, Debug, Serialize)]
pub struct EnergyReport {
    pub lambda: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "dE_formula")]
    pub de_formula: f64,
    pub defect: f64,
    #[serde(rename = "dE_fd")]
    pub de_fd: f64,
    pub fd_step: f64,
    pub relative_residual: f64,
    pub steps: Vec<f64>,
    pub step_residuals: Vec<f64>,
    pub convergence_order_estimate: f64,
    pub variant: FormulaVariant,
    /// Canonical residue size of the variant; nonzero means no boundary correction fixes it.
    pub residue_size: f64,
}

fn central(e: &dyn Fn(f64) -> f64, lambda: f64, h: f64) -> f64 {
    (e(lambda + h) - e(lambda - h)) / (2.0 * h)
}

/// Least-squares slope of `log e` against `log h`.
pub fn fitted_order(steps: &[f64], errs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = steps
        .iter()
        .zip(errs)
        .filter(|(_, e)| **e > 0.0)
        .map(|(h, e)| (h.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

/// Compares the formula against central differences of the matching energy. `steps` are
/// relative to λ and must be positive and decreasing; the reported `dE_fd` is the
/// three-level Richardson extrapolation started from `base_step · λ`.
pub fn fd_check(
    model: &EnergyModel,
    u: &HarmonicTestFunction,
    lambda: f64,
    variant: FormulaVariant,
    steps: &[f64],
    base_step: f64,
    cfg: &EnergyConfig,
) -> Result<EnergyReport, QuadError> {
    assert!(steps.iter().all(|&h| h > 0.0) && steps.windows(2).all(|w| w[0] > w[1]));
    let part = model.partition(u, lambda, cfg)?;
    let e = |x: f64| model.energy_on(u, x, variant, &part, cfg);
    let pred = model.derivative_on(u, lambda, variant, &part, cfg);
    let scale = pred.magnitude.max(f64::MIN_POSITIVE);
    let step_residuals: Vec<f64> =
        steps.iter().map(|&h| (central(&e, lambda, h * lambda) - pred.predicted).abs() / scale).collect();
    let h = base_step * lambda;
    let d = [central(&e, lambda, h), central(&e, lambda, h / 2.0), central(&e, lambda, h / 4.0)];
    let r1 = (4.0 * d[1] - d[0]) / 3.0;
    let r2 = (4.0 * d[2] - d[1]) / 3.0;
    let de_fd = (16.0 * r2 - r1) / 15.0;
    Ok(EnergyReport {
        lambda,
        e: e(lambda),
        de_formula: pred.formula,
        defect: pred.defect,
        de_fd,
        fd_step: h,
        relative_residual: (de_fd - pred.predicted).abs() / scale,
        steps: steps.to_vec(),
        convergence_order_estimate: fitted_order(steps, &step_residuals),
        step_residuals,
        variant,
        residue_size: model.residue_size(variant),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::int;
    use crate::numerics::profile::RadialKind;

    fn params(n: i64, p: i64) -> Params {
        Params::new(n, int(p)).unwrap()
    }

    #[test]
    fn squares_have_the_expected_shape() {
        let m = EnergyModel::new(&params(15, 3), 0);
        assert!(m.squares.0.keys().all(|k| k.0 == k.1));
        assert!((m.squares.coeff(3, 3, 5) - 3.0).abs() < 1e-12);
        assert!((m.squares.coeff(2, 2, 3) - m.a1).abs() < 1e-9);
        assert!((m.squares.coeff(1, 1, 1) - m.a2).abs() < 1e-9 * m.a2.abs());
    }

    #[test]
    fn delta_reading_is_consistent_and_angular_is_not() {
        for l in [0, 2] {
            let m = EnergyModel::new(&params(12, 4), l);
            assert!(m.is_exact(FormulaVariant::DeltaReading), "l={l}");
            assert!(!m.is_exact(FormulaVariant::AngularReading), "l={l}");
        }
    }

    #[test]
    fn rearranged_gap_is_nonnegative() {
        let m = EnergyModel::new(&params(15, 3), 1);
        let gap = m.lower_bound_gap();
        assert!((gap.coeff(2, 2, 3) - 4.0 * m.mu).abs() < 1e-8);
        assert!((gap.coeff(1, 1, 1) - 2.0 * m.mu * (m.mu - 6.0)).abs() < 1e-6);
    }

    #[test]
    fn fd_matches_formula_for_gaussian() {
        let m = EnergyModel::new(&params(12, 4), 0);
        let u = HarmonicTestFunction::new(RadialKind::Gaussian { sigma: 0.8 }, 0, 12);
        let cfg = EnergyConfig::default();
        let r = fd_check(&m, &u, 1.0, FormulaVariant::DeltaReading, &[1e-2, 1e-3, 1e-4], 1e-3, &cfg).unwrap();
        assert!(r.relative_residual < 1e-6, "{r:?}");
        assert!((1.8..=2.2).contains(&r.convergence_order_estimate), "{r:?}");
    }
}
