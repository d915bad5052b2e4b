//! Sign structure of the monotonicity coefficients `A1`, `A2`, `B1` and the
//! α-split that absorbs negative `A1 + 12`.

use super::displays::{a1_expanded, a2_expanded, b1_expanded};
use super::{at_dim, check, identity, per_dim, sign, CertifyConfig};
use crate::certificate::{Certificate, Witness};
use crate::coefficients::CoeffPolys;
use crate::exact_algebra::{
    enclose, fmt_rational, int, isolate_real_roots, isolate_roots, rat, refine_root,
    ten_pow_neg, to_f64, Domain, Interval, Polynomial, RadicalExpr, Rational, SignClaim,
};
use crate::exponents::{certify_lt, joseph_lundgren_triharmonic, km_expr, pm};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

const ANCHOR: &str = "monotonicity coefficients";

fn k_range(n: i64) -> Domain {
    Domain::open(Rational::zero(), rat(n - 6, 2))
}

/// `A2` as derived, as factored, and as expanded, per dimension.
pub fn a2_factorization(cfg: &CertifyConfig) -> Certificate {
    let k3 = if cfg.tamper_a2 { 35 } else { 36 };
    let hi = cfg.cap(60);
    let children: Vec<Certificate> = (7..=hi)
        .map(|n| {
            let c = CoeffPolys::for_dim(n);
            let derived_vs_factored = identity(
                "a2-derived-vs-factored",
                format!("n = {}: A2 from its definition equals 3(k+1)(k+3)(k-(n-5))(k-(n-3))", n),
                &c.a2,
                &c.a2_factored(),
            );
            let expanded = identity(
                "a2-expanded-display",
                format!("n = {}: displayed expansion of A2 in k (k^3 constant {})", n, k3),
                &a2_expanded(n, k3),
                &c.a2_factored(),
            );
            let kids = vec![at_dim(derived_vs_factored, n), at_dim(expanded, n)];
            Certificate::aggregate(&format!("a2-factorization-n{}", n), format!("A2 identities at n = {}", n), kids)
        })
        .collect();
    let at_origin = CoeffPolys::for_dim(21).a2.eval(&Rational::zero());
    let origin = check(
        "a2-origin-n21",
        "A2(k = 0) = 2592 at n = 21",
        at_origin == int(2592),
        Witness::Dimension { n: 21 },
    )
    .note(format!("A2(0) = {}", fmt_rational(&at_origin)));
    let mut c = Certificate::aggregate(
        "a2-factorization",
        "A2 = 3(k+1)(k+3)(k-(n-5))(k-(n-3)) and its displayed expansion, per dimension",
        vec![per_dim("a2-identities", "A2 identities per dimension", 7, hi, children), origin],
    );
    if cfg.tamper_a2 {
        c = c.note("tampered: k^3 coefficient of the displayed expansion uses 35 - 6n");
    }
    c.with_anchor(ANCHOR)
}

/// Regions of `[a, b]` where `f < 0`, as closed outward intervals.
fn negative_regions(f: &Polynomial, a: &Rational, b: &Rational) -> Vec<Interval> {
    let width = ten_pow_neg(30);
    let roots = isolate_roots(f, &Interval::new(a.clone(), b.clone()), &width).expect("nonzero polynomial");
    let mut cuts: Vec<(Rational, Rational)> = vec![(a.clone(), a.clone())];
    cuts.extend(roots.iter().map(|r| (r.lo.clone(), r.hi.clone())));
    cuts.push((b.clone(), b.clone()));
    let mut out: Vec<Interval> = Vec::new();
    for w in cuts.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        if l.1 >= r.0 {
            continue;
        }
        let mid = (&l.1 + &r.0) / int(2);
        if f.eval(&mid).is_negative() {
            let iv = Interval::new(l.0.clone(), r.1.clone());
            match out.last_mut() {
                Some(last) if last.hi >= iv.lo => *last = last.hull(&iv),
                _ => out.push(iv),
            }
        }
    }
    out
}

/// Enclosure of `min p` over `[a, b]`, with a location hint.
fn min_on(p: &Polynomial, a: &Rational, b: &Rational) -> (Interval, String) {
    let mut cands: Vec<(Interval, String)> =
        vec![(Interval::point(p.eval(a)), fmt_rational(a)), (Interval::point(p.eval(b)), fmt_rational(b))];
    let dp = p.derivative();
    if !dp.is_zero() {
        for iv in isolate_roots(&dp, &Interval::new(a.clone(), b.clone()), &ten_pow_neg(30)).expect("nonzero") {
            let iv = refine_root(&dp, &iv, &ten_pow_neg(40));
            cands.push((p.eval_interval(&iv), format!("{:.12}", iv.mid_f64())));
        }
    }
    let lo = cands.iter().map(|c| c.0.lo.clone()).min().expect("nonempty");
    let hi = cands.iter().map(|c| c.0.hi.clone()).min().expect("nonempty");
    let at = cands.iter().find(|c| c.0.lo == lo).map(|c| c.1.clone()).unwrap_or_default();
    (Interval::new(lo, hi), at)
}

fn gate(id: &str, factor: i64, alpha: &Rational, min_a2: &Interval) -> Certificate {
    let one = Rational::one();
    let g = int(factor) * alpha / ((&one - alpha) * (&one - alpha));
    let statement = format!("{}α/(1-α)^2 < min A2 on [0, (n-6)/2]", factor);
    let c = if g < min_a2.lo {
        Certificate::verified(id, statement)
    } else if g >= min_a2.hi {
        Certificate::falsified(id, statement, Witness::Point { x: alpha.clone() })
    } else {
        Certificate::inconclusive(id, statement)
    };
    c.note(format!("{}α/(1-α)^2 = {:.10}", factor, to_f64(&g)))
}

/// Certificate that the monotonicity coefficients are positive at `(n, alpha)`:
/// `A2 > 0`, `B1 > 0`, both α gates, and `(A1+12)^2 - 12αA2 < 0` wherever `A1 + 12 < 0`.
pub fn alpha_split(n: i64, alpha: &Rational) -> Certificate {
    let id = format!("alpha-split-n{}", n);
    let statement = format!("monotonicity coefficients positive at n = {}, α = {}", n, fmt_rational(alpha));
    if !alpha.is_positive() || alpha >= &Rational::one() || n < 7 {
        return Certificate::falsified(&id, statement, Witness::Point { x: alpha.clone() })
            .note("requires 0 < α < 1 and n >= 7")
            .with_anchor(ANCHOR);
    }
    let c = CoeffPolys::for_dim(n);
    let (zero, hi) = (Rational::zero(), rat(n - 6, 2));
    let (min_a2, at) = min_on(&c.a2, &zero, &hi);
    let min_note = if min_a2.is_point() {
        format!("min A2 = {} at k = {}", fmt_rational(&min_a2.lo), at)
    } else {
        format!("min A2 in {} near k = {}", min_a2, at)
    };
    let mut kids = vec![
        at_dim(sign("a2-positive", "A2 > 0 on [0, (n-6)/2]", &c.a2, &Domain::closed(zero.clone(), hi.clone()), SignClaim::Positive), n)
            .note(min_note),
        at_dim(sign("b1-positive", "B1 > 0 on (0, (n-6)/2)", &c.b1, &k_range(n), SignClaim::Positive), n),
        gate("gate-12", 12, alpha, &min_a2),
        gate("gate-8", 8, alpha, &min_a2),
    ];
    let a1p = &c.a1 + &Polynomial::constant(int(12));
    let q = &(&a1p * &a1p) - &c.a2.scale(&(int(12) * alpha));
    let regions = negative_regions(&a1p, &zero, &hi);
    if regions.is_empty() {
        kids.push(Certificate::verified("split-covers-negative-a1", "(A1+12)^2 - 12αA2 < 0 where A1 + 12 < 0")
            .note("vacuous: A1 + 12 >= 0 on [0, (n-6)/2]"));
    }
    for r in &regions {
        kids.push(
            at_dim(
                sign(
                    "split-covers-negative-a1",
                    "(A1+12)^2 - 12αA2 < 0 on a closed cover of {A1 + 12 < 0}",
                    &q,
                    &Domain::closed(r.lo.clone(), r.hi.clone()),
                    SignClaim::Negative,
                ),
                n,
            )
            .note(format!("A1 + 12 < 0 inside {}", r)),
        );
    }
    Certificate::aggregate(&id, statement, kids).with_anchor(ANCHOR)
}

/// `(433 - sqrt(865))/432`: the α for which `12α/(1-α)^2 = 2592` exactly.
pub fn alpha_star() -> RadicalExpr {
    (RadicalExpr::int(433) - RadicalExpr::int(865).sqrt()) / RadicalExpr::int(432)
}

/// Ends of the negativity window of `(A1+12)^2 - 12αA2` around the first root of `A1 + 12`.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaWindow {
    pub n: i64,
    pub left: Interval,
    pub right: Interval,
}

fn window_at(n: i64, alpha: &Rational, k_ref: &Rational, width: &Rational) -> Option<(Interval, Interval)> {
    let c = CoeffPolys::for_dim(n);
    let a1p = &c.a1 + &Polynomial::constant(int(12));
    let q = &(&a1p * &a1p) - &c.a2.scale(&(int(12) * alpha));
    if !q.eval(k_ref).is_negative() {
        return None;
    }
    let roots = isolate_real_roots(&q, width).ok()?;
    let left = roots.iter().rfind(|r| &r.hi <= k_ref)?.clone();
    let right = roots.iter().find(|r| &r.lo >= k_ref)?.clone();
    Some((left, right))
}

/// Window for every α in `alpha`. Raising α lowers Q (its α-derivative is `-12 A2 < 0`
/// near the window), so the left end decreases and the right end increases in α.
pub fn negativity_window(n: i64, alpha: &Interval, width: &Rational) -> Option<AlphaWindow> {
    let c = CoeffPolys::for_dim(n);
    let a1p = &c.a1 + &Polynomial::constant(int(12));
    let first = isolate_roots(&a1p, &Interval::new(Rational::zero(), rat(n - 6, 2)), &ten_pow_neg(30))
        .ok()?
        .into_iter()
        .next()?;
    let k_ref = first.mid();
    let (l_lo, r_lo) = window_at(n, &alpha.lo, &k_ref, width)?;
    let (l_hi, r_hi) = window_at(n, &alpha.hi, &k_ref, width)?;
    Some(AlphaWindow { n, left: Interval::new(l_hi.lo, l_lo.hi), right: Interval::new(r_lo.lo, r_hi.hi) })
}

/// Largest `j/10000` passing the 12α gate at `min A2 = m`.
fn largest_alpha(m: &Rational) -> Rational {
    let mf = to_f64(m);
    let guess = (mf + 6.0 - (12.0 * mf + 36.0).sqrt()) / mf;
    let mut j = (guess * 10000.0).floor() as i64 + 1;
    let one = Rational::one();
    loop {
        let a = rat(j, 10000);
        if int(12) * &a / ((&one - &a) * (&one - &a)) < *m {
            return a;
        }
        j -= 1;
    }
}

/// The `(n, α)` pairs the α-split bundle certifies: the vacuous case n = 15, n = 21 with
/// the configured α, and an automatic α for 22..=30.
pub fn split_parameters(cfg: &CertifyConfig) -> Vec<(i64, Rational)> {
    let mut out = vec![(15, rat(1, 2))];
    if cfg.cap(21) >= 21 {
        out.push((21, cfg.alpha.clone()));
    }
    for n in 22..=cfg.cap(30) {
        let m = CoeffPolys::for_dim(n).a2.eval(&Rational::zero());
        out.push((n, largest_alpha(&m)));
    }
    out
}

/// The α-split at n = 21 with the configured α, an automatic α for 22..=30, and the
/// vacuous case n = 15.
pub fn alpha_split_bundle(cfg: &CertifyConfig) -> Certificate {
    let kids = split_parameters(cfg)
        .into_iter()
        .map(|(n, a)| {
            let c = alpha_split(n, &a);
            if n > 21 {
                c.note("α = largest multiple of 1/10000 passing the 12α gate")
            } else {
                c
            }
        })
        .collect();
    let mut c = Certificate::aggregate(
        "alpha-split",
        "α-split keeps the monotonicity coefficients positive for 21 <= n <= 30",
        kids,
    );
    if let Ok(a) = enclose(&alpha_star(), &ten_pow_neg(30)) {
        if let Some(w) = negativity_window(21, &a, &ten_pow_neg(15)) {
            c = c.note(format!(
                "n = 21 at α* = (433 - sqrt 865)/432: window ({:.10}, {:.10})",
                w.left.mid_f64(),
                w.right.mid_f64()
            ));
        }
    }
    c.with_anchor(ANCHOR)
}

/// Signs of `A2`, `B1`, `A1 + 12`, the vertex identity, and the failure windows of `A1 + 12`.
pub fn a2_b1_a1_signs(cfg: &CertifyConfig) -> Certificate {
    let hi = cfg.cap(60);
    let mut kids = Vec::new();

    let f = Polynomial::with_var(vec![int(0), int(12), int(-3)], "c");
    let vertex_ok = f.derivative().eval(&int(2)).is_zero()
        && f.derivative().derivative().leading().is_negative()
        && f.eval(&int(2)) == int(12);
    kids.push(check(
        "a1-vertex",
        "A1 - 3c^2 + 12c is maximized at c = 2 with value A1 + 12",
        vertex_ok,
        Witness::Point { x: int(2) },
    ));

    let mut displays = Vec::new();
    let mut signs = Vec::new();
    for n in 7..=hi {
        let c = CoeffPolys::for_dim(n);
        displays.push(at_dim(identity("a1-display", format!("n = {}: displayed A1", n), &c.a1, &a1_expanded(n)), n));
        displays.push(at_dim(identity("b1-display", format!("n = {}: displayed B1", n), &c.b1, &b1_expanded(n)), n));
        signs.push(Certificate::aggregate(
            &format!("a2-b1-positive-n{}", n),
            format!("A2 > 0 and B1 > 0 on (0, {}/2)", n - 6),
            vec![
                at_dim(sign("a2-positive", "A2 > 0", &c.a2, &k_range(n), SignClaim::Positive), n),
                at_dim(sign("b1-positive", "B1 > 0", &c.b1, &k_range(n), SignClaim::Positive), n),
            ],
        ));
    }
    kids.push(per_dim("a1-b1-displays", "displayed expansions of A1 and B1", 7, hi, displays));
    kids.push(per_dim("a2-b1-positive", "A2 > 0 and B1 > 0 on the supercritical range", 7, hi, signs));

    let small: Vec<Certificate> = (7..=hi.min(20))
        .map(|n| {
            let a1p = &CoeffPolys::for_dim(n).a1 + &Polynomial::constant(int(12));
            at_dim(sign(&format!("a1-plus-12-n{}", n), "A1 + 12 > 0 on (0, (n-6)/2)", &a1p, &k_range(n), SignClaim::Positive), n)
        })
        .collect();
    kids.push(per_dim("a1-plus-12-positive", "A1 + 12 > 0 on the supercritical range", 7, hi.min(20), small));

    if hi >= 21 {
        let windows: Vec<Certificate> = (21..=hi).map(a1_failure_window).collect();
        kids.push(per_dim(
            "a1-plus-12-failure-windows",
            "for n >= 21, A1 + 12 < 0 exactly on (0, k_m(n)), k_m = (n-6)/2 - sqrt(15n^2-60n+190)/10",
            21,
            hi,
            windows,
        ));
    }
    Certificate::aggregate("a2-b1-a1-signs", "sign structure of A1 + 12, A2 and B1", kids).with_anchor(ANCHOR)
}

fn a1_failure_window(n: i64) -> Certificate {
    let id = format!("a1-window-n{}", n);
    let statement = format!("n = {}: A1 + 12 < 0 exactly on (0, k_m)", n);
    let a1p = &CoeffPolys::for_dim(n).a1 + &Polynomial::constant(int(12));
    let hi = rat(n - 6, 2);
    let count = a1p.count_roots(&k_range(n));
    let starts_negative = a1p.eval(&Rational::zero()).is_negative();
    let width = ten_pow_neg(20);
    let roots = isolate_roots(&a1p, &Interval::new(Rational::zero(), hi), &width).expect("nonzero");
    let km = enclose(&km_expr(n), &width);
    match (count, starts_negative, roots.first(), km) {
        (1, true, Some(w), Ok(km)) if w.intersects(&km) => Certificate::verified(&id, statement)
            .note(format!("k_m = {:.12}", km.mid_f64()))
            .note("one sign change in (0, (n-6)/2), negative at k = 0"),
        _ => Certificate::falsified(&id, statement, Witness::Dimension { n }).note(format!("{} root(s) in range", count)),
    }
}

/// p_c < p_m: the comparison of k-images behind it, and direct enclosure separation.
pub fn pc_below_pm(cfg: &CertifyConfig) -> Certificate {
    let n = Polynomial::x().renamed("n");
    let base = Polynomial::with_var(vec![int(90), int(-160), int(15)], "n");
    let squared_gap = &(&base * &base) - &n.scale(&int(40000));
    let mut kids = vec![
        sign("km-gap-base", "15n^2 - 160n + 90 > 0 on [14, +inf)", &base, &Domain::ray_closed(int(14)), SignClaim::Positive),
        sign(
            "km-gap-squared",
            "(15n^2 - 160n + 90)^2 - 40000n > 0 on [14, +inf), so (n-8)/2 - sqrt n >= k_m(n)",
            &squared_gap,
            &Domain::ray_closed(int(14)),
            SignClaim::Positive,
        ),
    ];
    let hi = cfg.cap(200);
    if hi >= 31 {
        let width = ten_pow_neg(12);
        let direct: Vec<Certificate> = (31..=hi)
            .map(|n| match (joseph_lundgren_triharmonic(n, &width), pm(n, &width)) {
                (Ok(a), Ok(b)) => certify_lt("pc-lt-pm", n, &a, &b, ("p_c", "p_m")),
                (Err(e), _) | (_, Err(e)) => {
                    Certificate::inconclusive("pc-lt-pm", format!("p_c({}) < p_m({})", n, n)).note(e.to_string())
                }
            })
            .collect();
        kids.push(per_dim("pc-lt-pm-direct", "p_c(n) < p_m(n) by enclosure separation", 31, hi, direct));
    }
    Certificate::aggregate("pc-below-pm", "p_c(n) < p_m(n) for n >= 15 via d(n) < sqrt n and the k-image gap", kids)
        .note("the d(n) < sqrt n step is certified under d-below-sqrt-n")
        .with_anchor("critical exponent ordering")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Status;

    #[test]
    fn window_reproduces_printed_endpoints() {
        let a = enclose(&alpha_star(), &ten_pow_neg(30)).unwrap();
        let w = negativity_window(21, &a, &ten_pow_neg(15)).unwrap();
        assert!((w.left.mid_f64() + 0.5941782055).abs() < 1e-9);
        assert!((w.right.mid_f64() - 4.483334837).abs() < 1e-8);
        let verbatim = negativity_window(21, &Interval::point(rat(9342, 10000)), &ten_pow_neg(15)).unwrap();
        assert!((verbatim.right.mid_f64() - 4.482988).abs() < 1e-5);
    }

    #[test]
    fn split_verdicts() {
        assert_eq!(alpha_split(21, &rat(9342, 10000)).status, Status::Verified);
        assert_eq!(alpha_split(21, &rat(99, 100)).status, Status::Falsified);
        let c = alpha_split(15, &rat(1, 2));
        assert_eq!(c.status, Status::Verified);
    }

    #[test]
    fn failure_window_at_21() {
        let c = a1_failure_window(21);
        assert_eq!(c.status, Status::Verified, "{:?}", c);
        assert!(c.details[0].contains("0.053524323547"));
    }

    #[test]
    fn negative_regions_of_quadratic() {
        let f = Polynomial::from_ints(&[-1, 0, 1]);
        let r = negative_regions(&f, &int(-3), &int(3));
        assert_eq!(r.len(), 1);
        assert!(r[0].lo <= int(-1) && r[0].hi >= int(1));
        assert!(r[0].width() < &int(2) + &ten_pow_neg(20));
    }
}
