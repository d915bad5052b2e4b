//! End-to-end acceptance run: one PASS/FAIL line per criterion with its runtime.
//! Runs without the libtest harness so the lines always reach the output.

use num_traits::{Signed, ToPrimitive};
use std::time::{Duration, Instant};
use triharmonic::certifier::{
    alpha_split, alpha_star, negativity_window, run_all, split_parameters, CertifyConfig,
};
use triharmonic::coefficients::{singular_stability_enclosed, CoeffPolys, Params, Stability};
use triharmonic::exact_algebra::{
    enclose, from_f64, int, isolate_roots, rat, ten_pow_neg, Interval, Polynomial, Rational,
};
use triharmonic::exponents::{
    d0_enclosure, exponent_chain_report, joseph_lundgren_triharmonic, pc_root_oracle, pm, pm1,
};
use triharmonic::numerics::*;
use triharmonic::{Certificate, Status};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn find<'a>(c: &'a Certificate, id: &str) -> Option<&'a Certificate> {
    if c.claim_id == id {
        return Some(c);
    }
    c.children.iter().chain(&c.informational).find_map(|k| find(k, id))
}

fn certs(lemmas: &[&str]) -> Vec<Certificate> {
    lemmas
        .iter()
        .flat_map(|l| {
            let cfg = CertifyConfig { lemma: Some(l.to_string()), ..CertifyConfig::default() };
            run_all(&cfg).expect("valid config").certificates
        })
        .collect()
}

fn expect_status(all: &[Certificate], id: &str, want: Status) -> Result<String, String> {
    let c = all.iter().find_map(|c| find(c, id)).ok_or(format!("{id}: missing"))?;
    ensure(c.status == want, format!("{id}: {:?}, wanted {:?}", c.status, want))?;
    Ok(c.details.first().cloned().unwrap_or_default())
}

fn c1_thresholds() -> Check {
    let w = ten_pow_neg(12);
    for n in 7..=14 {
        ensure(joseph_lundgren_triharmonic(n, &w).unwrap().is_infinite(), format!("p_c({n}) finite"))?;
    }
    for n in (15..=200).chain([1000, 10_000]) {
        ensure(!joseph_lundgren_triharmonic(n, &w).unwrap().is_infinite(), format!("p_c({n}) infinite"))?;
    }
    for n in 7..=30 {
        ensure(pm(n, &w).unwrap().is_infinite(), format!("p_m({n}) finite"))?;
    }
    for n in 31..=200 {
        ensure(!pm(n, &w).unwrap().is_infinite(), format!("p_m({n}) infinite"))?;
    }
    for n in 7..=20 {
        ensure(pm1(n).unwrap().is_infinite(), format!("p_m1({n}) finite"))?;
    }
    ensure(!pm1(21).unwrap().is_infinite(), "p_m1(21) infinite")?;
    Ok("p_c = inf on 7..=14, p_m = inf on 7..=30, p_m1 = inf on 7..=20".into())
}

fn c2_oracle() -> Check {
    let w = ten_pow_neg(14);
    let mut worst = 0.0f64;
    for n in 15..=200 {
        let closed = joseph_lundgren_triharmonic(n, &w).unwrap().enclosure().unwrap();
        let oracle = pc_root_oracle(n, &w).unwrap().pc;
        ensure(closed.intersects(&oracle), format!("n = {n}: enclosures disjoint"))?;
        let gap = (closed.mid() - oracle.mid()).abs().to_f64().unwrap();
        worst = worst.max(gap);
        ensure(gap < 1e-10, format!("n = {n}: midpoint distance {gap:e}"))?;
    }
    Ok(format!("max midpoint distance {worst:.1e} over 15..=200"))
}

fn close(iv: &Interval, target: f64, tol: f64) -> bool {
    (iv.mid_f64() - target).abs() < tol
}

fn c3_constants() -> Check {
    let w = ten_pow_neg(20);
    let d15 = d0_enclosure(15, &w).unwrap();
    ensure(close(&d15, 186.0929, 1e-3), format!("d0(15) = {}", d15.mid_f64()))?;
    let dbig = d0_enclosure(1_000_000, &w).unwrap();
    ensure(dbig.lo > int(128) && dbig.hi < rat(12801, 100), format!("d0(1e6) = {}", dbig.mid_f64()))?;
    let c21 = CoeffPolys::for_dim(21);
    ensure(c21.a2.eval(&Rational::from_integer(0.into())) == int(2592), "A2(0) at n = 21")?;

    let alpha = enclose(&alpha_star(), &ten_pow_neg(30)).unwrap();
    let win = negativity_window(21, &alpha, &w).ok_or("no window at n = 21")?;
    ensure(close(&win.left, -0.5941782055, 1e-6), format!("left end {}", win.left.mid_f64()))?;
    ensure(close(&win.right, 4.483334837, 1e-6), format!("right end {}", win.right.mid_f64()))?;

    let a1p = &c21.a1 + &Polynomial::constant(int(12));
    let first = isolate_roots(&a1p, &Interval::new(int(0), rat(15, 2)), &w).unwrap();
    let km = first.first().ok_or("A1 + 12 has no root")?;
    ensure(close(km, 0.05352432355, 1e-6), format!("A1 + 12 root {}", km.mid_f64()))?;
    Ok(format!(
        "d0(15) = {:.6}, window ({:.10}, {:.9}), k_m = {:.11}",
        d15.mid_f64(),
        win.left.mid_f64(),
        win.right.mid_f64(),
        km.mid_f64()
    ))
}

fn c4_identities() -> Check {
    let all = certs(&["a2-factorization", "d0-identity", "d0-monotone-bounds"]);
    let range = expect_status(&all, "a2-identities", Status::Verified)?;
    ensure(range.contains("7..=60"), format!("a2 range: {range}"))?;
    expect_status(&all, "d0-identity-d2", Status::Verified)?;
    let printed = expect_status(&all, "d0-identity-d2-squared", Status::Falsified)?;
    ensure(printed.contains("degree"), format!("printed reading not refuted by degree: {printed}"))?;
    expect_status(&all, "d0-derivative-factorization", Status::Verified)?;
    Ok(format!("A2 on {range}; printed d2^2 reading: {printed}"))
}

fn c5_signs() -> Check {
    let all = certs(&["d-below-sqrt-n", "c1-c2-band", "c-positivity-scan"]);
    for id in [
        "upper-comparison-positive",
        "upper-square-factor-positive",
        "lower-comparison-positive",
        "lower-square-negative",
        "d-below-sqrt-n-exhaustive",
        "d-below-sqrt-n-sampled",
        "c1-c2-band",
        "c-positivity-scan",
    ] {
        expect_status(&all, id, Status::Verified)?;
    }
    let ex = expect_status(&all, "d-below-sqrt-n-exhaustive", Status::Verified)?;
    let sa = expect_status(&all, "d-below-sqrt-n-sampled", Status::Verified)?;
    let band = expect_status(&all, "band-direct", Status::Verified)?;
    let scan = expect_status(&all, "c-positivity-scan", Status::Verified)?;
    Ok(format!("d < sqrt n: {ex} / {sa}; band: {band}; scan: {scan}"))
}

fn c6_chain() -> Check {
    let w = ten_pow_neg(12);
    for n in 15..=200 {
        let rep = exponent_chain_report(n, &w).unwrap();
        let mut wanted = vec!["sobolev-lt-pc", "pc-lt-pm"];
        if n >= 21 {
            wanted.push("pm1-lt-pm");
        }
        for id in wanted {
            let c = rep.certificates.iter().find(|c| c.claim_id == id).ok_or(format!("n = {n}: {id} missing"))?;
            ensure(c.status == Status::Verified, format!("n = {n}: {id} {:?}", c.status))?;
        }
        if (21..=30).contains(&n) {
            ensure(rep.exponents.pm.is_infinite(), format!("n = {n}: p_m finite"))?;
        }
    }
    Ok("p_S < p_c < p_m on 15..=200, p_m1 < p_m on 21..=200".into())
}

fn profiles() -> Vec<RadialKind> {
    vec![
        RadialKind::Gaussian { sigma: 0.8 },
        RadialKind::Bump { coeffs: vec![1.0, -0.3], support: 1.5, order: 10 },
        RadialKind::Exponential { rate: 1.2 },
    ]
}

const LAMBDAS: [f64; 5] = [0.5, 0.8, 1.0, 1.4, 2.0];

fn c7_referee() -> Check {
    let cfg = EnergyConfig::default();
    let (mut worst_res, mut lo_ord, mut hi_ord, mut count) = (0.0f64, f64::INFINITY, 0.0f64, 0);
    let (mut worst_de, mut worst_flat) = (0.0f64, 0.0f64);
    for (n, p) in [(12i64, 4i64), (15, 3), (21, 2)] {
        let params = Params::new(n, int(p)).unwrap();
        let k = params.k_f64();
        for l in 0..3u32 {
            let m = EnergyModel::new(&params, l);
            for kind in profiles() {
                let u = HarmonicTestFunction::new(kind, l, n as u32);
                for lam in LAMBDAS {
                    let r = fd_check(&m, &u, lam, FormulaVariant::DeltaReading, &[1e-2, 1e-3, 1e-4], 1e-3, &cfg)
                        .map_err(|e| format!("n = {n} l = {l} λ = {lam}: {e}"))?;
                    count += 1;
                    worst_res = worst_res.max(r.relative_residual);
                    lo_ord = lo_ord.min(r.convergence_order_estimate);
                    hi_ord = hi_ord.max(r.convergence_order_estimate);
                }
            }
            let h = HarmonicTestFunction::homogeneous(k, l, n as u32);
            let d = m.derivative(&h, 1.3, FormulaVariant::DeltaReading, &cfg).map_err(|e| e.to_string())?;
            worst_de = worst_de.max(d.formula.abs());
            let e1 = m.energy(&h, 0.7, &cfg).map_err(|e| e.to_string())?;
            let e2 = m.energy(&h, 1.9, &cfg).map_err(|e| e.to_string())?;
            worst_flat = worst_flat.max((e1 - e2).abs());
        }
    }
    ensure(worst_res < 1e-6, format!("residual {worst_res:e}"))?;
    ensure(lo_ord >= 1.8 && hi_ord <= 2.2, format!("orders {lo_ord:.3}..{hi_ord:.3}"))?;
    ensure(worst_de < 1e-12, format!("homogeneous dE {worst_de:e}"))?;
    ensure(worst_flat < 1e-10, format!("homogeneous |E(λ1) - E(λ2)| {worst_flat:e}"))?;
    Ok(format!(
        "{count} FD checks: residual <= {worst_res:.1e}, order {lo_ord:.3}..{hi_ord:.3}; homogeneous |dE| <= {worst_de:.1e}, |ΔE| <= {worst_flat:.1e}"
    ))
}

fn c8_nonnegative() -> Check {
    let cfg = EnergyConfig::default();
    let (mut worst, mut count) = (f64::INFINITY, 0);
    for (n, alpha) in split_parameters(&CertifyConfig::default()) {
        let cert = alpha_split(n, &alpha);
        ensure(cert.status == Status::Verified, format!("n = {n}: α-split {:?}", cert.status))?;
        let a = alpha.to_f64().unwrap();
        let top = rat(n - 6, 2);
        let mut ks: Vec<Rational> = [1, 25, 50, 75, 99].iter().map(|f| &top * rat(*f, 100)).collect();
        if n >= 21 {
            // inside the window where A1 + 12 < 0 and the split is what keeps dE^c >= 0
            let a1p = &CoeffPolys::for_dim(n).a1 + &Polynomial::constant(int(12));
            let km = isolate_roots(&a1p, &Interval::new(int(0), top.clone()), &ten_pow_neg(12)).unwrap()[0].lo.clone();
            ks.push(km / int(2));
        }
        for k in ks {
            let params = Params::from_k(n, k).unwrap();
            for l in 0..3u32 {
                let m = EnergyModel::new(&params, l);
                for kind in profiles() {
                    let u = HarmonicTestFunction::new(kind, l, n as u32);
                    let r = monotonicity_bound_check(&m, &u, a, &LAMBDAS, &cfg).map_err(|e| e.to_string())?;
                    ensure(r.weights.nonnegative(), format!("n = {n}: negative split weights {:?}", r.weights))?;
                    for s in &r.samples {
                        count += 1;
                        worst = worst.min(s.de_c_unsplit.min(s.de_c_rearranged_unsplit));
                    }
                }
            }
        }
    }
    ensure(worst >= -1e-10, format!("min dE^c/dλ = {worst:e}"))?;
    Ok(format!("{count} samples, min dE^c/dλ = {worst:.2e}"))
}

fn c9_flip() -> Check {
    let w = ten_pow_neg(20);
    let mut out = Vec::new();
    for n in [15, 20, 50] {
        let pc = joseph_lundgren_triharmonic(n, &w).unwrap().enclosure().unwrap();
        let shift = |f: Rational| Interval::new(&pc.lo * &f, &pc.hi * &f);
        let below = singular_stability_enclosed(n, &shift(int(1) - ten_pow_neg(3)));
        let above = singular_stability_enclosed(n, &shift(int(1) + ten_pow_neg(3)));
        ensure(below == Stability::Unstable, format!("n = {n}: {below:?} below p_c"))?;
        ensure(above == Stability::Stable, format!("n = {n}: {above:?} above p_c"))?;
        // the same flip through the exact-parameter path
        let exact = |p: f64| triharmonic::coefficients::singular_stability(&Params::new(n, from_f64(p).unwrap()).unwrap());
        ensure(exact(pc.mid_f64() * 0.999) == Stability::Unstable && exact(pc.mid_f64() * 1.001) == Stability::Stable, format!("n = {n}: exact path"))?;
        out.push(format!("n = {n}: p_c = {:.4}", pc.mid_f64()));
    }
    Ok(out.join(", "))
}

fn c10_radial() -> Check {
    let tol = 1e-10;
    let a = radial_ivp_solve(15.0, 7.0, 1.0, 0.0, 0.0, 2.0, tol).map_err(|e| e.to_string())?;
    let b = radial_ivp_solve(15.0, 7.0, 1.0, 0.0, 0.0, 2.0, tol / 2.0).map_err(|e| e.to_string())?;
    ensure(a.blow_up.is_none(), format!("blow-up at {:?}", a.blow_up))?;
    let (x, y) = (a.last(), b.last());
    let gap = [(x.u, y.u), (x.du, y.du), (x.v, y.v), (x.dv, y.dv), (x.w, y.w), (x.dw, y.dw)]
        .iter()
        .map(|(p, q)| (p - q).abs() / p.abs().max(1.0))
        .fold(0.0, f64::max);
    ensure(gap <= 10.0 * tol, format!("refinement gap {gap:e}"))?;
    let po = pohozaev_residual(&a, 2.0).map_err(|e| e.to_string())?;
    ensure(po.relative_residual < 1e-6, format!("Pohozaev residual {:e}", po.relative_residual))?;
    let s = singular_annulus_solve(15.0, 7.0, 0.5, 2.0, tol).map_err(|e| e.to_string())?;
    let dev = singular_deviation(&s).ok_or("profile does not start singular")?;
    ensure(dev <= 10.0 * tol, format!("singular deviation {dev:e}"))?;
    Ok(format!(
        "refinement gap {gap:.1e}, Pohozaev relative residual {:.1e}, singular deviation {dev:.1e} (tol {tol:e})",
        po.relative_residual
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exponent thresholds", Duration::from_secs(1), c1_thresholds),
        ("closed form vs root oracle", Duration::from_secs(30), c2_oracle),
        ("printed constants", Duration::from_secs(10), c3_constants),
        ("exact identities", Duration::from_secs(10), c4_identities),
        ("appendix sign certificates", Duration::from_secs(300), c5_signs),
        ("ordering chain", Duration::from_secs(30), c6_chain),
        ("monotonicity formula referee", Duration::from_secs(120), c7_referee),
        ("nonnegativity of dE^c/dλ", Duration::from_secs(120), c8_nonnegative),
        ("singular stability flip", Duration::from_secs(5), c9_flip),
        ("radial solver and Pohozaev", Duration::from_secs(60), c10_radial),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let took = t.elapsed();
        let (ok, msg) = match result {
            Ok(m) if took <= *limit => (true, m),
            Ok(m) => (false, format!("{m}; over the {limit:?} budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {} {name} ({:.2?}, limit {limit:?}): {msg}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
