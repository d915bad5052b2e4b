//! Radial solutions of `(-Δ)^3 u = |u|^{p-1} u` as the first-order system in
//! `(u, u', v, v', w, w', q)` with `v = Δu`, `w = Δv` and `q' = r^{n-1} |u|^{p+1}`,
//! and the Pohozaev balance along them.

use ode_solvers::{Dop853, OutputType, SVector, System};
use serde::{Deserialize, Serialize};
use thiserror::Error;

// The radius rides along as the last component: the solver's stage abscissae are unreliable
// for right-hand sides depending explicitly on the independent variable.
type State = SVector<f64, 8>;

/// Components beyond this magnitude count as blow-up.
const BLOW_UP: f64 = 1e100;
/// Default launch radius of the Taylor start.
pub const R_EPS: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum RadialError {
    #[error("radius {r} outside the profile range [{lo}, {hi}]")]
    OutOfRange { r: f64, lo: f64, hi: f64 },
    #[error("invalid radial problem: {0}")]
    Invalid(String),
}

struct RadialOde {
    n: f64,
    p: f64,
    blew_up: bool,
}

impl System<f64, State> for RadialOde {
    fn system(&self, _r: f64, y: &State, dy: &mut State) {
        let r = y[7];
        let c = (self.n - 1.0) / r;
        let f = y[0].abs().powf(self.p - 1.0) * y[0];
        dy[0] = y[1];
        dy[1] = y[2] - c * y[1];
        dy[2] = y[3];
        dy[3] = y[4] - c * y[3];
        dy[4] = y[5];
        dy[5] = -f - c * y[5];
        dy[6] = r.powf(self.n - 1.0) * y[0].abs().powf(self.p + 1.0);
        dy[7] = 1.0;
    }

    fn solout(&mut self, _r: f64, y: &State, _dy: &State) -> bool {
        if y.iter().any(|x| !x.is_finite() || x.abs() > BLOW_UP) {
            self.blew_up = true;
        }
        self.blew_up
    }
}

/// How the integration was started.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RadialStart {
    /// Regular data at the origin, launched by a Taylor expansion at `r_eps`.
    Taylor { u0: f64, v0: f64, w0: f64, r_eps: f64 },
    /// The singular profile `K r^{-k}`, `K^{p-1} = k0`, imposed at `r_in`.
    Singular { amplitude: f64, k: f64, r_in: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadialNode {
    pub r: f64,
    pub u: f64,
    pub du: f64,
    pub v: f64,
    pub dv: f64,
    pub w: f64,
    pub dw: f64,
    /// `∫ r^{n-1} |u|^{p+1}` from the origin (or from `r_in` for the annulus).
    pub q: f64,
}

impl RadialNode {
    fn from_state(r: f64, y: &State) -> Self {
        RadialNode { r, u: y[0], du: y[1], v: y[2], dv: y[3], w: y[4], dw: y[5], q: y[6] }
    }

    fn state(&self) -> State {
        State::from([self.u, self.du, self.v, self.dv, self.w, self.dw, self.q, self.r])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadialProfile {
    pub n: f64,
    pub p: f64,
    pub start: RadialStart,
    pub tol: f64,
    /// Accepted solver steps, strictly increasing in `r`.
    pub nodes: Vec<RadialNode>,
    /// Radius where a component exceeded the blow-up threshold, if any.
    pub blow_up: Option<f64>,
    /// Largest relative deviation from a solve at a tenth of the tolerance, over the nodes.
    pub residual_estimate: f64,
}

fn integrate(n: f64, p: f64, r0: f64, r1: f64, y0: State, tol: f64) -> (Vec<RadialNode>, Option<f64>) {
    let ode = RadialOde { n, p, blew_up: false };
    // The (n-1)/r terms are stiff near the start, but only over a logarithmic range of r; the
    // stiffness test is disabled and the controller keeps the steps stable.
    let h_max = (r1 - r0) / 16.0;
    // The automatic first step collapses when q starts at 0 with a large slope.
    let h0 = (1e-3 * r0).min(h_max);
    let mut solver =
        Dop853::from_param(ode, r0, r1, 0.0, y0, tol, tol, 0.9, 0.0, 0.333, 6.0, h_max, h0, 1_000_000, u32::MAX, OutputType::Sparse);
    let outcome = solver.integrate();
    let (rs, ys) = solver.results().get();
    let mut nodes = vec![RadialNode::from_state(r0, &y0)];
    nodes.extend(rs.iter().zip(ys).filter(|(r, _)| **r > r0).map(|(r, y)| RadialNode::from_state(*r, y)));
    let reached = nodes.last().map(|nd| nd.r).unwrap_or(r0);
    let blown = nodes.last().is_some_and(|nd| nd.state().iter().any(|x| !x.is_finite() || x.abs() > BLOW_UP));
    let blow_up = (blown || outcome.is_err() || reached < r1 * (1.0 - 1e-14)).then_some(reached);
    (nodes, blow_up)
}

/// Taylor data at `r` for regular initial values, exact through `r^6` in `u` and `r^4` in `w`.
fn taylor_start(n: f64, p: f64, u0: f64, v0: f64, w0: f64, r: f64) -> State {
    let f0 = u0.abs().powf(p - 1.0) * u0;
    let fp = p * u0.abs().powf(p - 1.0);
    // Δ r^{2j} = 2j(2j + n - 2) r^{2j-2}
    let lap = |j: f64| 2.0 * j * (2.0 * j + n - 2.0);
    let c1 = -f0 / lap(1.0);
    let b1 = w0 / lap(1.0);
    let b2 = c1 / lap(2.0);
    let a1 = v0 / lap(1.0);
    let a2 = b1 / lap(2.0);
    let a3 = b2 / lap(3.0);
    let c2 = -fp * a1 / lap(2.0);
    let r2 = r * r;
    let u = u0 + a1 * r2 + a2 * r2 * r2 + a3 * r2 * r2 * r2;
    State::from([
        u,
        2.0 * a1 * r + 4.0 * a2 * r2 * r + 6.0 * a3 * r2 * r2 * r,
        v0 + b1 * r2 + b2 * r2 * r2,
        2.0 * b1 * r + 4.0 * b2 * r2 * r,
        w0 + c1 * r2 + c2 * r2 * r2,
        2.0 * c1 * r + 4.0 * c2 * r2 * r,
        r.powf(n) * u0.abs().powf(p + 1.0) / n,
        r,
    ])
}

/// `(u, u', v, v', w, w')` of `K r^{-k}` at `r`, using `Δ r^{-m} = m(m + 2 - n) r^{-m-2}`.
pub fn singular_state(n: f64, amplitude: f64, k: f64, r: f64) -> [f64; 6] {
    let step = |m: f64| m * (m + 2.0 - n);
    let (cu, cv) = (amplitude, amplitude * step(k));
    let cw = cv * step(k + 2.0);
    [
        cu * r.powf(-k),
        -k * cu * r.powf(-k - 1.0),
        cv * r.powf(-k - 2.0),
        -(k + 2.0) * cv * r.powf(-k - 3.0),
        cw * r.powf(-k - 4.0),
        -(k + 4.0) * cw * r.powf(-k - 5.0),
    ]
}

fn check(n: f64, p: f64, r_max: f64, tol: f64) -> Result<(), RadialError> {
    if !(n >= 1.0 && p > 1.0 && r_max > 0.0 && tol > 0.0 && r_max.is_finite()) {
        return Err(RadialError::Invalid(format!("n = {n}, p = {p}, r_max = {r_max}, tol = {tol}")));
    }
    Ok(())
}

impl RadialProfile {
    fn solve(n: f64, p: f64, start: RadialStart, r_max: f64, tol: f64) -> Result<Self, RadialError> {
        let (r0, y0) = match &start {
            RadialStart::Taylor { u0, v0, w0, r_eps } => (*r_eps, taylor_start(n, p, *u0, *v0, *w0, *r_eps)),
            RadialStart::Singular { amplitude, k, r_in } => {
                let s = singular_state(n, *amplitude, *k, *r_in);
                (*r_in, State::from([s[0], s[1], s[2], s[3], s[4], s[5], 0.0, *r_in]))
            }
        };
        if r_max <= r0 {
            return Err(RadialError::Invalid(format!("r_max = {r_max} not beyond the start radius {r0}")));
        }
        let (nodes, blow_up) = integrate(n, p, r0, r_max, y0, tol);
        let mut profile = RadialProfile { n, p, start, tol, nodes, blow_up, residual_estimate: 0.0 };
        if profile.blow_up.is_none() {
            let (fine, _) = integrate(n, p, r0, r_max, y0, tol / 10.0);
            let fine = RadialProfile { nodes: fine, ..profile.clone() };
            profile.residual_estimate = profile
                .nodes
                .iter()
                .filter_map(|nd| fine.state_at(nd.r).ok().map(|f| relative_gap(&nd.state(), &f.state())))
                .fold(0.0, f64::max);
        }
        Ok(profile)
    }

    pub fn r_min(&self) -> f64 {
        self.nodes.first().map_or(0.0, |nd| nd.r)
    }

    pub fn r_max(&self) -> f64 {
        self.nodes.last().map_or(0.0, |nd| nd.r)
    }

    pub fn last(&self) -> &RadialNode {
        self.nodes.last().expect("profiles hold at least the start node")
    }

    /// State at `r`, integrated from the nearest node below at the profile's tolerance.
    pub fn state_at(&self, r: f64) -> Result<RadialNode, RadialError> {
        let (lo, hi) = (self.r_min(), self.r_max());
        if !(r >= lo && r <= hi) {
            return Err(RadialError::OutOfRange { r, lo, hi });
        }
        let i = self.nodes.partition_point(|nd| nd.r <= r).saturating_sub(1);
        let base = &self.nodes[i];
        if base.r == r {
            return Ok(base.clone());
        }
        let (nodes, _) = integrate(self.n, self.p, base.r, r, base.state(), self.tol);
        let mut end = nodes.last().cloned().expect("nonempty");
        end.r = r;
        Ok(end)
    }
}

fn relative_gap(a: &State, b: &State) -> f64 {
    a.iter().zip(b.iter()).take(7).map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1.0)).fold(0.0, f64::max)
}

/// Regular solution with `u(0) = u0`, `Δu(0) = v0`, `Δ^2 u(0) = w0`.
pub fn radial_ivp_solve(n: f64, p: f64, u0: f64, v0: f64, w0: f64, r_max: f64, tol: f64) -> Result<RadialProfile, RadialError> {
    check(n, p, r_max, tol)?;
    RadialProfile::solve(n, p, RadialStart::Taylor { u0, v0, w0, r_eps: R_EPS.min(r_max / 2.0) }, r_max, tol)
}

/// Integration of the singular profile `K r^{-k}`, `K = k0^{1/(p-1)}`, over `[r_in, r_max]`.
pub fn singular_annulus_solve(n: f64, p: f64, r_in: f64, r_max: f64, tol: f64) -> Result<RadialProfile, RadialError> {
    check(n, p, r_max, tol)?;
    let k = 6.0 / (p - 1.0);
    let k0 = k * (k + 2.0) * (k + 4.0) * (n - 2.0 - k) * (n - 4.0 - k) * (n - 6.0 - k);
    if !(k0 > 0.0 && r_in > 0.0) {
        return Err(RadialError::Invalid(format!("singular profile needs k0 > 0 and r_in > 0 (k0 = {k0})")));
    }
    let amplitude = k0.powf(1.0 / (p - 1.0));
    RadialProfile::solve(n, p, RadialStart::Singular { amplitude, k, r_in }, r_max, tol)
}

/// Largest relative deviation of an annulus profile from the closed form `K r^{-k}`.
pub fn singular_deviation(profile: &RadialProfile) -> Option<f64> {
    let RadialStart::Singular { amplitude, k, .. } = profile.start else {
        return None;
    };
    Some(
        profile
            .nodes
            .iter()
            .map(|nd| {
                let s = singular_state(profile.n, amplitude, k, nd.r);
                let got = [nd.u, nd.du, nd.v, nd.dv, nd.w, nd.dw];
                got.iter().zip(s).map(|(g, e)| (g - e).abs() / e.abs().max(1.0)).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct PohozaevReport {
    pub radius: f64,
    /// `((n-6)/2 - n/(p+1)) ∫_0^R r^{n-1} |u|^{p+1}` (per unit sphere area).
    pub lhs: f64,
    /// The boundary side from the derived boundary form.
    pub rhs: f64,
    /// Inner-boundary value subtracted on an annulus; zero for regular profiles.
    pub inner_correction: f64,
    pub residual: f64,
    pub relative_residual: f64,
    /// The boundary side with the boundary form as printed, kept for comparison only.
    pub rhs_printed: f64,
    pub relative_residual_printed: f64,
}

/// `R^{n-1}[(6-n)/2 u w' - (n+2)/2 u' w + (2-n)/2 v v'] + R^n[-u'w' + v w - v'^2/2] - R^n |u|^{p+1}/(p+1)`,
/// whose derivative is `r^{n-1}((n-6)/2 - n/(p+1))|u|^{p+1}` along solutions.
fn boundary_form(n: f64, p: f64, nd: &RadialNode) -> f64 {
    let r = nd.r;
    r.powf(n - 1.0)
        * ((6.0 - n) / 2.0 * nd.u * nd.dw - (n + 2.0) / 2.0 * nd.du * nd.w + (2.0 - n) / 2.0 * nd.v * nd.dv)
        + r.powf(n) * (-nd.du * nd.dw + nd.v * nd.w - 0.5 * nd.dv * nd.dv - nd.u.abs().powf(p + 1.0) / (p + 1.0))
}

/// The same boundary quantity read off the printed form.
fn boundary_form_printed(n: f64, p: f64, nd: &RadialNode) -> f64 {
    let r = nd.r;
    r.powf(n - 1.0)
        * ((n - 6.0) / 2.0 * nd.u * nd.dw + (4.0 - n) * nd.du * nd.w - (n - 2.0) / 2.0 * nd.v * nd.dv)
        + r.powf(n) * (-nd.du * nd.dw + nd.v * nd.w - 0.5 * nd.dv * nd.dv - nd.u.abs().powf(p + 1.0) / (p + 1.0))
}

pub fn pohozaev_residual(profile: &RadialProfile, radius: f64) -> Result<PohozaevReport, RadialError> {
    let (n, p) = (profile.n, profile.p);
    let at = profile.state_at(radius)?;
    let lhs = ((n - 6.0) / 2.0 - n / (p + 1.0)) * at.q;
    let (inner, inner_printed) = match profile.start {
        RadialStart::Taylor { .. } => (0.0, 0.0),
        RadialStart::Singular { .. } => {
            let first = &profile.nodes[0];
            (boundary_form(n, p, first), boundary_form_printed(n, p, first))
        }
    };
    let rhs = boundary_form(n, p, &at) - inner;
    let rhs_printed = boundary_form_printed(n, p, &at) - inner_printed;
    let rel = |a: f64, b: f64| {
        let s = a.abs().max(b.abs());
        if s > 0.0 { (a - b).abs() / s } else { 0.0 }
    };
    Ok(PohozaevReport {
        radius,
        lhs,
        rhs,
        inner_correction: inner,
        residual: (lhs - rhs).abs(),
        relative_residual: rel(lhs, rhs),
        rhs_printed,
        relative_residual_printed: rel(lhs, rhs_printed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_stays_zero() {
        let prof = radial_ivp_solve(15.0, 7.0, 0.0, 0.0, 0.0, 2.0, 1e-10).unwrap();
        assert!(prof.nodes.iter().all(|nd| nd.state().iter().take(7).all(|x| *x == 0.0)));
        let rep = pohozaev_residual(&prof, 2.0).unwrap();
        assert_eq!(rep.residual, 0.0);
    }

    #[test]
    fn taylor_start_matches_polynomial_solution() {
        // u0 = w0 = 0, v0 = 1: u = r^2/(2n) and v = 1 exactly, the nonlinearity never enters
        let y = taylor_start(10.0, 3.0, 0.0, 1.0, 0.0, 0.5);
        assert!((y[0] - 0.25 / 20.0).abs() < 1e-15);
        assert!((y[1] - 0.5 / 10.0).abs() < 1e-15);
        assert!((y[2] - 1.0).abs() < 1e-15);
        assert!(y[3].abs() < 1e-15);
    }

    #[test]
    fn out_of_range_radius() {
        let prof = radial_ivp_solve(15.0, 7.0, 1.0, 0.0, 0.0, 1.0, 1e-10).unwrap();
        assert!(matches!(pohozaev_residual(&prof, 1.5), Err(RadialError::OutOfRange { .. })));
    }
}
