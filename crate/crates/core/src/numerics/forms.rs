//! Linear and quadratic forms in the λ-derivatives of a scalar function `g(λ)`, and
//! the reduction that splits a quadratic form into diagonal squares plus an exact
//! total derivative.
//!
//! A linear form is `Σ c λ^m g^(i)`, keyed by `(i, m)`; a quadratic form is
//! `Σ c λ^m g^(i) g^(j)` with `i <= j`, keyed by `(i, j, m)`.

use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinForm(pub BTreeMap<(usize, i32), f64>);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuadForm(pub BTreeMap<(usize, usize, i32), f64>);

impl LinForm {
    /// The function `g` itself.
    pub fn g() -> Self {
        let mut m = BTreeMap::new();
        m.insert((0, 0), 1.0);
        LinForm(m)
    }

    pub fn single(i: usize, m: i32, c: f64) -> Self {
        let mut map = BTreeMap::new();
        map.insert((i, m), c);
        LinForm(map)
    }

    fn add_term(&mut self, key: (usize, i32), c: f64) {
        *self.0.entry(key).or_insert(0.0) += c;
    }

    pub fn plus(&self, other: &LinForm, s: f64) -> LinForm {
        let mut r = self.clone();
        for (&k, &c) in &other.0 {
            r.add_term(k, s * c);
        }
        r
    }

    pub fn scaled(&self, s: f64) -> LinForm {
        LinForm(self.0.iter().map(|(&k, &c)| (k, s * c)).collect())
    }

    /// d/dλ
    pub fn d(&self) -> LinForm {
        let mut r = LinForm::default();
        for (&(i, m), &c) in &self.0 {
            if m != 0 {
                r.add_term((i, m - 1), m as f64 * c);
            }
            r.add_term((i + 1, m), c);
        }
        r
    }

    pub fn times_lambda(&self, e: i32) -> LinForm {
        LinForm(self.0.iter().map(|(&(i, m), &c)| ((i, m + e), c)).collect())
    }

    /// `θ = λ d/dλ`
    pub fn theta(&self) -> LinForm {
        self.d().times_lambda(1)
    }

    pub fn eval(&self, lambda: f64, g: &[f64]) -> f64 {
        self.0.iter().map(|(&(i, m), &c)| c * lambda.powi(m) * g[i]).sum()
    }

    pub fn order(&self) -> usize {
        self.0.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &LinForm) -> QuadForm {
        let mut q = QuadForm::default();
        for (&(i, m1), &c1) in &self.0 {
            for (&(j, m2), &c2) in &other.0 {
                q.add_term((i.min(j), i.max(j), m1 + m2), c1 * c2);
            }
        }
        q
    }
}

impl QuadForm {
    pub fn square(i: usize, m: i32, c: f64) -> Self {
        let mut map = BTreeMap::new();
        map.insert((i, i, m), c);
        QuadForm(map)
    }

    fn add_term(&mut self, key: (usize, usize, i32), c: f64) {
        *self.0.entry(key).or_insert(0.0) += c;
    }

    pub fn plus(&self, other: &QuadForm, s: f64) -> QuadForm {
        let mut r = self.clone();
        for (&k, &c) in &other.0 {
            r.add_term(k, s * c);
        }
        r
    }

    pub fn times_lambda(&self, e: i32) -> QuadForm {
        QuadForm(self.0.iter().map(|(&(i, j, m), &c)| ((i, j, m + e), c)).collect())
    }

    /// d/dλ, as another quadratic form.
    pub fn d(&self) -> QuadForm {
        let mut r = QuadForm::default();
        for (&(i, j, m), &c) in &self.0 {
            if m != 0 {
                r.add_term((i, j, m - 1), m as f64 * c);
            }
            r.add_term((i.min(j + 1), i.max(j + 1), m), c);
            r.add_term(((i + 1).min(j), (i + 1).max(j), m), c);
        }
        r
    }

    pub fn eval(&self, lambda: f64, g: &[f64]) -> f64 {
        self.0.iter().map(|(&(i, j, m), &c)| c * lambda.powi(m) * g[i] * g[j]).sum()
    }

    /// Sum of absolute term values, a natural magnitude for relative residuals.
    pub fn abs_eval(&self, lambda: f64, g: &[f64]) -> f64 {
        self.0.iter().map(|(&(i, j, m), &c)| (c * lambda.powi(m) * g[i] * g[j]).abs()).sum()
    }

    pub fn order(&self) -> usize {
        self.0.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize, j: usize, m: i32) -> f64 {
        self.0.get(&(i, j, m)).copied().unwrap_or(0.0)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.0.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    /// Splits `self = D + dR/dλ` with `D` diagonal. Cross terms are peeled off from the
    /// widest derivative gap inward, so the result is unique for a given input.
    pub fn reduce(&self) -> (QuadForm, QuadForm) {
        let mut q = self.0.clone();
        let mut r = QuadForm::default();
        loop {
            let key = q
                .iter()
                .filter(|(k, _)| k.0 < k.1)
                .map(|(k, _)| *k)
                .max_by_key(|&(i, j, m)| (j - i, j, m));
            let Some(key) = key else { break };
            let c = q.remove(&key).unwrap();
            if c == 0.0 {
                continue;
            }
            let (i, j, m) = key;
            let mut add = |k: (usize, usize, i32), v: f64| *q.entry(k).or_insert(0.0) += v;
            if j >= i + 2 {
                // c λ^m g_i g_j = d(c λ^m g_i g_{j-1}) - c m λ^{m-1} g_i g_{j-1} - c λ^m g_{i+1} g_{j-1}
                r.add_term((i, j - 1, m), c);
                if m != 0 {
                    add((i, j - 1, m - 1), -(m as f64) * c);
                }
                add((i + 1, j - 1, m), -c);
            } else {
                // c λ^m g_i g_{i+1} = d(c/2 λ^m g_i^2) - c m/2 λ^{m-1} g_i^2
                r.add_term((i, i, m), c / 2.0);
                if m != 0 {
                    add((i, i, m - 1), -(m as f64) * c / 2.0);
                }
            }
        }
        (QuadForm(q.into_iter().filter(|(_, c)| *c != 0.0).collect()), r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_g(lambda: f64) -> Vec<f64> {
        // g = λ^3 + 2λ, with derivatives
        vec![lambda.powi(3) + 2.0 * lambda, 3.0 * lambda * lambda + 2.0, 6.0 * lambda, 6.0, 0.0, 0.0, 0.0]
    }

    #[test]
    fn reduction_is_exact() {
        let g = LinForm::g();
        let g1 = g.d();
        let g3 = g1.d().d();
        let q = g3.times_lambda(2).mul(&g1).plus(&g1.mul(&g).times_lambda(1), 3.0);
        let (diag, r) = q.reduce();
        assert!(diag.0.keys().all(|k| k.0 == k.1));
        let rebuilt = diag.plus(&r.d(), 1.0);
        for &l in &[0.5, 1.3, 2.0] {
            let g = poly_g(l);
            assert!((rebuilt.eval(l, &g) - q.eval(l, &g)).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_of_power() {
        // θ λ^k-type check on a linear form: θ(λ g') = λ g' + λ^2 g''
        let f = LinForm::single(1, 1, 1.0).theta();
        assert_eq!(f.0.get(&(1, 1)), Some(&1.0));
        assert_eq!(f.0.get(&(2, 2)), Some(&1.0));
    }
}
