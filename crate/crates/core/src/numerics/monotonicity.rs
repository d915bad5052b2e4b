//! The adjusted energy `E^c` and the lower bound for its derivative.
//!
//! `E^c` adds to the energy the total-derivative terms of the Jordan rearrangement
//! (`c1 = 2`, `c2 = 0`) and, when `A1 + 12 < 0`, of the α-split, so that its derivative is
//! a manifest sum of squares with nonnegative weights whenever the split gates hold.

use super::energy::{EnergyConfig, EnergyModel, FormulaVariant};
use super::forms::{LinForm, QuadForm};
use super::profile::HarmonicTestFunction;
use super::quadrature::QuadError;
use serde::Serialize;

/// Weights of the square decomposition of `dE^c/dλ`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitWeights {
    /// α used; zero for the plain Jordan rearrangement.
    pub alpha: f64,
    /// `sqrt(3 α A2)`
    pub s: f64,
    /// Weight of `λ^3 g''^2` (exact and from the rearranged form).
    pub g2_exact: f64,
    pub g2_rearranged: f64,
    /// Weight of `λ g'^2`.
    pub g1_exact: f64,
    pub g1_rearranged: f64,
}

impl SplitWeights {
    pub fn nonnegative(&self) -> bool {
        self.g2_exact >= 0.0 && self.g1_exact > 0.0 && self.g2_rearranged >= 0.0 && self.g1_rearranged > 0.0
    }
}

/// `E^c` data for one model and split parameter.
#[derive(Clone, Debug)]
pub struct AdjustedEnergy {
    pub weights: SplitWeights,
    /// Added to `Ē - (boundary antiderivative)` to form `E^c`.
    pub correction: QuadForm,
    /// `X = λ^{1/2}(λ^2 g''' + 2λ g'')` and `Y = λ^{1/2} g'` enter as `(sqrt3 X + sqrt(αA2) Y)^2`.
    pub square: LinForm,
}

impl AdjustedEnergy {
    /// `alpha = 0` is the plain Jordan rearrangement.
    pub fn new(model: &EnergyModel, alpha: f64) -> Self {
        let mu = model.mu;
        let a2_mu = model.squares.coeff(1, 1, 1);
        let s = (3.0 * alpha * model.a2).max(0.0).sqrt();
        let weights = SplitWeights {
            alpha,
            s,
            g2_exact: model.a1 + 12.0 + 2.0 * s + 6.0 * mu,
            g2_rearranged: model.a1 + 12.0 + 2.0 * s + 2.0 * mu,
            g1_exact: a2_mu - alpha * model.a2 - 2.0 * s,
            g1_rearranged: model.a2 + model.b1 * mu + mu * mu - alpha * model.a2 - 2.0 * s,
        };
        // 6λ^4 g''^2 + 2s(λ^3 g'' g' - ½ λ^2 g'^2)
        let correction = QuadForm::square(2, 4, 6.0)
            .plus(&LinForm::single(2, 3, 1.0).mul(&LinForm::single(1, 0, 1.0)), 2.0 * s)
            .plus(&QuadForm::square(1, 2, -s), 1.0);
        // sqrt3 (λ^2 g''' + 2λ g'') + sqrt(αA2) g', to be squared and multiplied by λ
        let square = LinForm::single(3, 2, 3f64.sqrt())
            .plus(&LinForm::single(2, 1, 2.0 * 3f64.sqrt()), 1.0)
            .plus(&LinForm::single(1, 0, (alpha * model.a2).max(0.0).sqrt()), 1.0);
        AdjustedEnergy { weights, correction, square }
    }

    /// The manifest square form of `dE^c/dλ` (exact weights).
    pub fn squares_exact(&self, lambda: f64, g: &[f64]) -> f64 {
        let x = self.square.eval(lambda, g);
        lambda * x * x + self.weights.g2_exact * lambda.powi(3) * g[2] * g[2] + self.weights.g1_exact * lambda * g[1] * g[1]
    }

    /// The same with the weights of the rearranged form, a lower bound of the exact one.
    pub fn squares_rearranged(&self, lambda: f64, g: &[f64]) -> f64 {
        let x = self.square.eval(lambda, g);
        lambda * x * x
            + self.weights.g2_rearranged * lambda.powi(3) * g[2] * g[2]
            + self.weights.g1_rearranged * lambda * g[1] * g[1]
    }

    /// `dE^c/dλ` computed as the reduced derivative minus the correction's derivative,
    /// without using the square form.
    pub fn derivative_unsplit(&self, model: &EnergyModel, lambda: f64, g: &[f64]) -> f64 {
        model.squares.eval(lambda, g) + self.correction.d().eval(lambda, g)
    }

    /// The same starting from the rearranged formula, a lower bound of [`Self::derivative_unsplit`].
    pub fn derivative_unsplit_rearranged(&self, model: &EnergyModel, lambda: f64, g: &[f64]) -> f64 {
        model.formula(FormulaVariant::Rearranged).eval(lambda, g) + self.correction.d().eval(lambda, g)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicitySample {
    pub lambda: f64,
    /// `dE^c/dλ` for a solution (the defect term excluded).
    pub de_c: f64,
    /// Its lower bound from the rearranged weights.
    pub de_c_rearranged: f64,
    /// The same derivative recomputed without the square form.
    pub de_c_unsplit: f64,
    /// Its lower bound recomputed from the rearranged formula.
    pub de_c_rearranged_unsplit: f64,
    /// `λ g'^2`, the scaled right side of the lower bound.
    pub rhs: f64,
    pub ratio: Option<f64>,
    /// Central difference of `E^c` plus the defect, for solutions equal to `de_c`.
    pub de_c_fd: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub n: f64,
    pub p: f64,
    pub l: u32,
    pub weights: SplitWeights,
    pub samples: Vec<MonotonicitySample>,
    /// Smallest observed `dE^c/dλ`, over the unsplit exact and rearranged evaluations.
    pub min_de_c: f64,
    /// Empirical floor of `dE^c/dλ / (λ g'^2)` from the rearranged weights; `None` when
    /// the right side vanishes everywhere (homogeneous data).
    pub ratio_floor: Option<f64>,
    /// Worst relative mismatch between the square form, the unsplit derivative and the
    /// finite-difference derivative.
    pub consistency: f64,
}

/// Evaluates `dE^c/dλ` and the ratio against `λ (k u + λ u_r)^2` over the λ samples.
pub fn monotonicity_bound_check(
    model: &EnergyModel,
    u: &HarmonicTestFunction,
    alpha: f64,
    lambdas: &[f64],
    cfg: &EnergyConfig,
) -> Result<MonotonicityReport, QuadError> {
    let adj = AdjustedEnergy::new(model, alpha);
    let mut samples = Vec::new();
    let mut consistency: f64 = 0.0;
    for &lambda in lambdas {
        let g = model.g(u, lambda);
        let de_c = adj.squares_exact(lambda, &g);
        let de_c_rearranged = adj.squares_rearranged(lambda, &g);
        let de_c_unsplit = adj.derivative_unsplit(model, lambda, &g);
        let de_c_rearranged_unsplit = adj.derivative_unsplit_rearranged(model, lambda, &g);
        let rhs = lambda * g[1] * g[1];
        let scale = model.squares.abs_eval(lambda, &g) + adj.correction.d().abs_eval(lambda, &g);

        let part = model.partition(u, lambda, cfg)?;
        let ec = |x: f64| {
            let gx = model.g(u, x);
            model.bulk_energy_on(u, x, &part, cfg) - model.boundary_antiderivative.eval(x, &gx) + adj.correction.eval(x, &gx)
        };
        let h = 1e-3 * lambda;
        let d = |h: f64| (ec(lambda + h) - ec(lambda - h)) / (2.0 * h);
        let de_c_fd = (4.0 * d(h / 2.0) - d(h)) / 3.0 + model.defect_on(u, lambda, &part, cfg);
        let total_scale = scale + model.defect_on(u, lambda, &part, cfg).abs();
        if total_scale > 0.0 {
            consistency = consistency
                .max((de_c - de_c_unsplit).abs() / total_scale)
                .max((de_c_rearranged - de_c_rearranged_unsplit).abs() / total_scale)
                .max((de_c - de_c_fd).abs() / total_scale);
        }
        let ratio = (rhs > 1e-300 && rhs > 1e-14 * scale).then(|| de_c_rearranged / rhs);
        samples.push(MonotonicitySample { lambda, de_c, de_c_rearranged, de_c_unsplit, de_c_rearranged_unsplit, rhs, ratio, de_c_fd });
    }
    let min_de_c = samples.iter().map(|s| s.de_c_unsplit.min(s.de_c_rearranged_unsplit)).fold(f64::INFINITY, f64::min);
    let ratio_floor = samples.iter().filter_map(|s| s.ratio).reduce(f64::min);
    Ok(MonotonicityReport {
        n: model.n,
        p: model.p,
        l: (((model.n - 2.0).powi(2) + 4.0 * model.mu).sqrt() - (model.n - 2.0)).round() as u32 / 2,
        weights: adj.weights,
        samples,
        min_de_c,
        ratio_floor,
        consistency,
    })
}

/// Formula-vs-formula view used by reports: which derivative formula the referee accepts.
pub fn consistent_variants(model: &EnergyModel) -> Vec<(FormulaVariant, f64)> {
    FormulaVariant::ALL.iter().map(|&v| (v, model.residue_size(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Params;
    use crate::exact_algebra::{int, rat};
    use crate::numerics::profile::RadialKind;

    #[test]
    fn adjusted_energy_is_monotone_for_gaussian() {
        let params = Params::new(12, int(4)).unwrap();
        let m = EnergyModel::new(&params, 0);
        let u = HarmonicTestFunction::new(RadialKind::Gaussian { sigma: 1.0 }, 0, 12);
        let r = monotonicity_bound_check(&m, &u, 0.5, &[0.5, 1.0, 2.0], &EnergyConfig::default()).unwrap();
        assert!(r.min_de_c >= 0.0);
        assert!(r.ratio_floor.unwrap() > 0.0);
        assert!(r.consistency < 1e-6, "{}", r.consistency);
    }

    #[test]
    fn split_engages_when_a1_plus_12_is_negative() {
        let params = Params::from_k(21, rat(1, 50)).unwrap();
        let m = EnergyModel::new(&params, 0);
        assert!(m.a1 + 12.0 < 0.0);
        assert!(!AdjustedEnergy::new(&m, 0.0).weights.nonnegative());
        assert!(AdjustedEnergy::new(&m, 0.9342).weights.nonnegative());
    }
}
