//! The nested-radical exponent `d(n)` and positivity of `c0, c1, c2`.

use super::displays as disp;
use super::{at_dim, check, identity, per_dim, sign, CertifyConfig};
use crate::certificate::{Certificate, Status, Witness};
use crate::coefficients::CoeffPolys;
use crate::exact_algebra::{
    enclose_tracked, enclose_with_cap, fmt_rational, int, rat, ten_pow_neg, to_f64, Domain, Interval,
    Polynomial, RadicalExpr, Rational, SignClaim,
};
use crate::exponents::{d0_both_forms, d0_expr, d1_poly, d2_poly, d_enclosure, d_expr};
use num_traits::{Signed, Zero};

const ANCHOR_D: &str = "nested radical d(n)";
const ANCHOR_C: &str = "stability coefficients c0, c1, c2";

fn npoly(coeffs_low_first: &[i64]) -> Polynomial {
    Polynomial::from_ints(coeffs_low_first).renamed("n")
}

fn ray(a: i64) -> Domain {
    Domain::ray_closed(int(a))
}

/// `d1^2 - 36^2 d2 = 256^3 (3n^2+4)^3`, with the printed `d2^2` reading reported alongside.
pub fn d0_identity(cfg: &CertifyConfig) -> Certificate {
    let (d1, d2) = (d1_poly(), d2_poly());
    let rhs = disp::three_n2_plus_4().pow(3).scale(&int(256 * 256 * 256));
    let corrected = identity(
        "d0-identity-d2",
        "d1^2 - 36^2 d2 = 256^3 (3n^2+4)^3",
        &(&(&d1 * &d1) - &d2.scale(&int(1296))),
        &rhs,
    );
    let printed = identity(
        "d0-identity-d2-squared",
        "d1^2 - 36^2 d2^2 = 256^3 (3n^2+4)^3 (as printed)",
        &(&(&d1 * &d1) - &(&d2 * &d2).scale(&int(1296))),
        &rhs,
    )
    .note("exponent slip: the d2 reading is the one that holds");
    let mut kids = vec![corrected];
    for n in [15, 20, 50] {
        let c = match d0_both_forms(n, &cfg.width) {
            Ok((a, b)) => check(
                &format!("d0-forms-agree-n{}", n),
                format!("cube-root and quotient forms of d0({}) agree", n),
                a.intersects(&b),
                Witness::Dimension { n },
            )
            .note(format!("d0({}) in {}", n, a)),
            Err(e) => Certificate::inconclusive(&format!("d0-forms-agree-n{}", n), "forms agree").note(e.to_string()),
        };
        kids.push(c);
    }
    Certificate::aggregate("d0-identity", "the two closed forms of d0(n) coincide", kids)
        .with_informational(printed)
        .with_anchor(ANCHOR_D)
}

/// d0 decreases on [15, inf) and stays in (128, 187).
pub fn d0_bounds(cfg: &CertifyConfig) -> Certificate {
    let (d1, d2) = (d1_poly(), d2_poly());
    let md1p = -d1.derivative();
    let d2p = d2.derivative();
    let deriv = &(&(&md1p * &md1p) * &d2) - &(&d2p * &d2p).scale(&int(324));
    let [f1, f2] = disp::d0_derivative_factors();
    let c128 = int(128 * 128 * 128);
    let gap = &(-&d1) - &Polynomial::constant(c128).renamed("n");
    let gap_sq = &(&gap * &gap) - &d2.scale(&int(1296));

    let mut kids = vec![
        identity("minus-d1-prime-display", "-d1'(n) as displayed", &md1p, &disp::minus_d1_prime()),
        sign("minus-d1-prime-positive", "-d1'(n) > 0 on [8, +inf)", &md1p, &ray(8), SignClaim::Positive),
        identity(
            "d0-derivative-expansion",
            "(-d1')^2 d2 - 18^2 (d2')^2 equals its displayed expansion",
            &deriv,
            &disp::d0_derivative_expanded(),
        ),
        identity(
            "d0-derivative-factorization",
            "displayed expansion equals -10871635968(3n^3-18n^2+84n+8)(n^4-8n^3-40n^2+480n+16)(n-2)^2(n+2)^2(3n^2+4)^2",
            &disp::d0_derivative_expanded(),
            &disp::d0_derivative_factored(),
        ),
        sign("d0-derivative-factor-cubic", "3n^3 - 18n^2 + 84n + 8 > 0 on [3, +inf)", &f1, &ray(3), SignClaim::Positive),
        sign("d0-derivative-factor-quartic", "n^4 - 8n^3 - 40n^2 + 480n + 16 > 0 on [3, +inf)", &f2, &ray(3), SignClaim::Positive),
        sign("d0-derivative-negative", "(-d1')^2 d2 - 18^2 (d2')^2 < 0 on [3, +inf)", &deriv, &ray(3), SignClaim::Negative),
        identity("d2-factorization", "d2 equals its displayed factorization", &d2, &disp::d2_factored()),
        sign("d2-positive", "d2 > 0 on [12, +inf)", &d2, &ray(12), SignClaim::Positive),
        sign("d2-prime-positive", "d2' > 0 on [15, +inf), needed to take square roots in the derivative bound", &d2p, &ray(15), SignClaim::Positive),
        sign("d0-above-128-linear", "-d1 - 128^3 > 0 on [15, +inf)", &gap, &ray(15), SignClaim::Positive),
        sign(
            "d0-above-128-squared",
            "(-d1 - 128^3)^2 - 36^2 d2 > 0 on [15, +inf), hence d0(n) > 128",
            &gap_sq,
            &ray(15),
            SignClaim::Positive,
        ),
    ];
    match enclose_tracked(&d0_expr(15), &cfg.width, cfg.precision_cap) {
        Ok((iv, bits)) => {
            kids.push(
                check("d0-at-15-below-187", "d0(15) < 187", iv.hi < int(187), Witness::Dimension { n: 15 })
                    .with_bits(bits)
                    .note(format!("d0(15) in {}", iv)),
            );
            let target = rat(1860929, 10000);
            let tol = ten_pow_neg(3);
            kids.push(check(
                "d0-at-15-value",
                "d0(15) = 186.0929 to within 1e-3",
                iv.lo >= (&target - &tol) && iv.hi <= (&target + &tol),
                Witness::Dimension { n: 15 },
            ));
        }
        Err(e) => kids.push(Certificate::inconclusive("d0-at-15-below-187", "d0(15) < 187").note(e.to_string())),
    }
    Certificate::aggregate("d0-monotone-bounds", "d0 is decreasing on [15, +inf) with 128 < d0(n) < 187", kids)
        .note("upper bound: d0(n) <= d0(15) < 187 by monotonicity")
        .with_anchor(ANCHOR_D)
}

/// `d(n) < sqrt(n)` for n >= 15: the symbolic chain through both inequalities of the
/// bounds on `(1536 + 1152n^2)/d0 + 3d0/2`, and direct enclosure checks.
pub fn d_below_sqrt_n(cfg: &CertifyConfig) -> Certificate {
    let (d1, d2) = (d1_poly(), d2_poly());
    let m_d1 = -&d1;
    let cube = |p: &Polynomial| p.pow(3);

    // well-definedness side: d0 > x1(n)
    let u = npoly(&[32, -9, 6]);
    let u_cmp = &(&m_d1 * &cube(&u)) - &cube(&npoly(&[1024, 0, 768]));
    let u_sq = &(&u_cmp * &u_cmp) - &(&d2 * &u.pow(6)).scale(&int(1296));
    let upper = vec![
        identity("upper-comparison-expansion", "-d1(6n^2-9n+32)^3 - (768n^2+1024)^3 as displayed", &u_cmp, &disp::upper_cmp_printed()),
        sign("upper-comparison-positive", "displayed comparison polynomial > 0 on [10, +inf)", &disp::upper_cmp_printed(), &ray(10), SignClaim::Positive),
        identity(
            "upper-square-expansion",
            "squared comparison minus 36^2 d2 (6n^2-9n+32)^6 as displayed",
            &u_sq,
            &disp::upper_sq_expanded().scale(&int(disp::UPPER_SQ_SCALE)),
        ),
        identity(
            "upper-square-factorization",
            "displayed degree-17 polynomial = degree-11 factor times (3n^2+4)^3",
            &disp::upper_sq_expanded(),
            &(&disp::upper_sq_factor() * &cube(&disp::three_n2_plus_4())),
        ),
        sign("upper-square-factor-positive", "degree-11 factor > 0 on [1, +inf)", &disp::upper_sq_factor(), &ray(1), SignClaim::Positive),
        sign("root-gap", "n^2 - 64 > (n-3)^2 on [15, +inf)", &(&npoly(&[-64, 0, 1]) - &npoly(&[-3, 1]).pow(2)), &ray(15), SignClaim::Positive),
        sign("six-n2-denominator-positive", "6n^2 - 9n + 32 > 0", &u, &Domain::real_line(), SignClaim::Positive),
        x2_at_15(cfg),
    ];

    // d(n) < sqrt(n) side: d0 < r10(n)
    let w = npoly(&[-32, -12, 3]);
    let w_cmp = &(&m_d1 * &cube(&w)) - &cube(&npoly(&[512, 0, 384]));
    let w_sq = &(&w_cmp * &w_cmp) - &(&d2 * &w.pow(6)).scale(&int(1296));
    let disc = npoly(&[0, -768, -432, -72, 9]);
    let wrong_factor = npoly(&[-32, -12, 3]);
    let printed_factor = &npoly(&[4, 1]) * &npoly(&[-8, 1]).scale(&int(3));
    let lower = vec![
        identity("lower-comparison-expansion", "-d1(3n^2-12n-32)^3 - (384n^2+512)^3 as displayed", &w_cmp, &disp::lower_cmp_printed()),
        sign("lower-comparison-positive", "displayed comparison polynomial > 0 on [11, +inf)", &disp::lower_cmp_printed(), &ray(11), SignClaim::Positive),
        identity(
            "lower-square-expansion",
            "squared comparison minus 36^2 d2 (3n^2-12n-32)^6 as displayed",
            &w_sq,
            &disp::lower_sq_expanded().scale(&int(disp::LOWER_SQ_SCALE)),
        ),
        identity(
            "lower-square-factorization",
            "displayed degree-16 polynomial = -(degree-10 factor)(3n^2+4)^3",
            &disp::lower_sq_expanded(),
            &-(&disp::lower_sq_factor() * &cube(&disp::three_n2_plus_4())),
        ),
        sign("lower-square-negative", "displayed degree-16 polynomial < 0 on [14, +inf)", &disp::lower_sq_expanded(), &ray(14), SignClaim::Negative),
        sign("discriminant-positive", "9n^4 - 72n^3 - 432n^2 - 768n > 0 on [13, +inf)", &disc, &ray(13), SignClaim::Positive),
        identity(
            "discriminant-square-bound",
            "9n^4 - 72n^3 - 432n^2 + 2304n + 9216 = (3n^2-12n-96)^2",
            &npoly(&[9216, 2304, -432, -72, 9]),
            &npoly(&[-96, -12, 3]).pow(2),
        ),
        sign("r10-denominator-positive", "3n^2 - 12n - 32 > 0 on [9, +inf)", &w, &ray(9), SignClaim::Positive),
    ];
    let factor_misprint = identity(
        "r10-denominator-factorization",
        "3n^2 - 12n - 32 = 3(n+4)(n-8) (as printed)",
        &wrong_factor,
        &printed_factor,
    )
    .note("3(n+4)(n-8) = 3n^2 - 12n - 96; the positivity claim on [9, +inf) holds regardless");

    let (ex_hi, sample_hi) = (cfg.cap(cfg.d_sqrt_exhaustive), cfg.cap(cfg.d_sqrt_sampled));
    let mut kids = vec![
        Certificate::aggregate("d0-above-x1", "d0(n) > x1(n), so the radicand of d(n) is positive", upper),
        Certificate::aggregate("d0-below-r10", "d0(n) < r10(n), so d(n) < sqrt(n)", lower),
    ];
    if ex_hi >= 15 {
        kids.push(d_sqrt_direct("d-below-sqrt-n-exhaustive", (15..=ex_hi).collect(), cfg));
    }
    let sampled = sample_dims(ex_hi.max(14) + 1, sample_hi);
    if !sampled.is_empty() {
        kids.push(d_sqrt_direct("d-below-sqrt-n-sampled", sampled, cfg));
    }
    Certificate::aggregate("d-below-sqrt-n", "d(n) < sqrt(n) for n >= 15", kids)
        .with_informational(factor_misprint)
        .with_anchor(ANCHOR_D)
}

fn x2_at_15(cfg: &CertifyConfig) -> Certificate {
    // x2(15) = 3*225 + 32 + 45 sqrt(161)
    let e = RadicalExpr::int(707) + RadicalExpr::int(45) * RadicalExpr::int(161).sqrt();
    match enclose_with_cap(&e, &cfg.width, cfg.precision_cap) {
        Ok(iv) => check("x2-at-15", "x2(15) >= 1276", iv.lo >= int(1276), Witness::Dimension { n: 15 })
            .note(format!("x2(15) in {}", iv)),
        Err(e) => Certificate::inconclusive("x2-at-15", "x2(15) >= 1276").note(e.to_string()),
    }
}

/// Dimensions from `lo` to `hi` growing by about 10% per step, always ending at `hi`.
fn sample_dims(lo: i64, hi: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut n = lo;
    while n < hi {
        out.push(n);
        n += (n / 10).max(1);
    }
    if hi >= lo {
        out.push(hi);
    }
    out
}

fn d_sqrt_direct(id: &str, dims: Vec<i64>, cfg: &CertifyConfig) -> Certificate {
    let statement = format!(
        "d(n)^2 < n by enclosure for {} dimension(s) in [{}, {}]",
        dims.len(),
        dims.first().copied().unwrap_or(0),
        dims.last().copied().unwrap_or(0)
    );
    let mut bits_used = 0;
    let mut min_margin = (f64::INFINITY, 0i64);
    for &n in &dims {
        match enclose_tracked(&d_expr(n), &cfg.width, cfg.precision_cap) {
            Ok((d, bits)) => {
                bits_used = bits_used.max(bits);
                let nr = int(n);
                if &d.hi * &d.hi < nr {
                    let margin = (n as f64).sqrt() - d.mid_f64();
                    if margin < min_margin.0 {
                        min_margin = (margin, n);
                    }
                } else if &d.lo * &d.lo >= nr {
                    return Certificate::falsified(id, statement, Witness::Dimension { n })
                        .note(format!("d({}) in {}", n, d));
                } else {
                    return Certificate::inconclusive(id, statement).note(format!("unresolved at n = {}", n));
                }
            }
            Err(e) => {
                return Certificate::inconclusive(id, statement).note(format!("n = {}: {}", n, e));
            }
        }
    }
    Certificate::verified(id, statement)
        .with_bits(bits_used)
        .note(format!("smallest margin sqrt(n) - d(n) = {:.6e} at n = {}", min_margin.0, min_margin.1))
}

fn band_at(n: i64) -> Certificate {
    let c = CoeffPolys::for_dim(n);
    let s = Interval::point(int(n)).sqrt(64);
    let mid = rat(n - 8, 2);
    let lo = (&mid - &s.hi).max(Rational::zero());
    let hi = (&mid + &s.hi).min(rat(n - 6, 2));
    let dom = Domain::closed(lo.clone(), hi.clone());
    let kids = vec![
        at_dim(sign("c1-band", "c1 > 0 on the band", &c.c1, &dom, SignClaim::Positive), n),
        at_dim(sign("c2-band", "c2 > 0 on the band", &c.c2, &dom, SignClaim::Positive), n),
    ];
    Certificate::aggregate(
        &format!("band-n{}", n),
        format!("c1, c2 > 0 on [{:.6}, {:.6}] containing the band at n = {}", to_f64(&lo), to_f64(&hi), n),
        kids,
    )
}

/// c1, c2 > 0 on the band `|k - (n-8)/2| < sqrt(n)` inside the supercritical range,
/// with the displayed expansions and the one-variable reductions in `t = sqrt(n)`.
pub fn band_certificate(cfg: &CertifyConfig) -> Certificate {
    let hi = cfg.cap(100);
    let mut kids = Vec::new();
    let mut info = Vec::new();

    let mut displays = Vec::new();
    for n in 7..=cfg.cap(20).max(12) {
        let nr = int(n);
        let c = CoeffPolys::for_dim(n);
        displays.push(at_dim(identity("c1-display", format!("n = {}: displayed c1", n), &c.c1, &disp::c1_expanded(&nr)), n));
        displays.push(at_dim(
            identity("c2-display-cubic", format!("n = {}: displayed c2 with leading k^3", n), &c.c2, &disp::c2_cubic_reading(&nr)),
            n,
        ));
    }
    kids.push(Certificate::aggregate("c-displays", "displayed c1 and c2 in k", displays));
    let n15 = int(15);
    info.push(
        identity(
            "c2-display-printed",
            "n = 15: displayed c2 read literally with leading -3k^2",
            &disp::c2_printed(&n15),
            &CoeffPolys::for_dim(15).c2,
        )
        .note("exponent slip: the k^3 reading holds at every n"),
    );

    let mut shifted = Vec::new();
    for t in 1..=16 {
        let tr = int(t);
        let c = CoeffPolys::new(&(&tr * &tr));
        let k_of_a = Polynomial::with_var(vec![rat(t * t - 8, 2), tr.clone()], "a");
        shifted.push(identity(
            "c1-shifted",
            format!("t = {}: c1 at k = (t^2-8)/2 + a t", t),
            &c.c1.compose(&k_of_a),
            &disp::c1_shifted(&tr),
        ));
        shifted.push(identity(
            "c2-shifted",
            format!("t = {}: c2 at k = (t^2-8)/2 + a t", t),
            &c.c2.compose(&k_of_a),
            &disp::c2_shifted(&tr),
        ));
    }
    kids.push(
        Certificate::aggregate("c-shifted", "c1, c2 in the band variable a (degree <= 10 in t, 16 sample values)", shifted),
    );

    let (reductions, reduction_info) = band_reductions();
    kids.push(reductions);
    info.extend(reduction_info);

    if hi >= 12 {
        kids.push(per_dim("band-direct", "c1, c2 > 0 on the band, per dimension", 12, hi, (12..=hi).map(band_at).collect()));
    }
    let mut c = Certificate::aggregate("c1-c2-band", "c1 > 0 (n >= 36) and c2 > 0 (n >= 12) on the band", kids)
        .note("direct per-dimension checks cover c1 from n = 12 as well")
        .note("the c1 reduction for a <= 0 starts at t = 6.033 (n >= 37); n = 36 rests on the direct check");
    for i in info {
        c = c.with_informational(i);
    }
    c.with_anchor(ANCHOR_C)
}

fn tray(t: Rational) -> Domain {
    Domain::ray_closed(t)
}

/// One-variable reductions in `t`, certified at thresholds rounded up from the true
/// largest roots; printed thresholds that sit below a root are reported separately.
fn band_reductions() -> (Certificate, Vec<Certificate>) {
    let a = Polynomial::x().renamed("a");
    // 3a^5 - 3a/2 on [0, 1]
    let tail = &a.pow(5).scale(&int(3)) - &a.scale(&rat(3, 2));
    let q = rat(27, 40);
    let q_bound = num_traits::pow(q.clone(), 4) >= rat(20736, 100000);
    let printed_q_hi = rat(1688, 10000);
    let printed_q_ok = num_traits::pow(printed_q_hi.clone(), 4) >= rat(81, 100000);
    let s_hi = rat(57736, 100000);
    let s_lo = rat(57735, 100000);
    let s_ok = &s_hi * &s_hi >= rat(1, 3) && &s_lo * &s_lo <= rat(1, 3);

    let kids = vec![
        sign("c2-reduction-plus", "3t^4 - 3t^3 - 39/2 t^2 - 36 > 0 for t >= 3.302", &disp::c2_bound_plus(), &tray(rat(3302, 1000)), SignClaim::Positive),
        sign("c2-reduction-minus", "3t^4 - 3t^3 - 39/2 t^2 - 9t - 36 > 0 for t >= 3.44", &disp::c2_bound_minus(), &tray(rat(344, 100)), SignClaim::Positive),
        check("tail-bound-constant", "27/40 >= 12 * 10^(-5/4)", q_bound, Witness::Point { x: q.clone() }),
        sign(
            "tail-bound",
            "3a^5 - 3a/2 + 27/40 >= 0 on [0, 1]",
            &(&tail + &Polynomial::constant(q.clone())),
            &Domain::closed(int(0), int(1)),
            SignClaim::Nonneg,
        ),
        sign("c1-reduction-plus", "c1 reduction for 0 <= a <= 1 is positive for t >= 5.196", &disp::c1_bound_plus(&q), &tray(rat(5196, 1000)), SignClaim::Positive),
        check("sqrt3-over-3-bracket", "0.57735 <= sqrt(3)/3 <= 0.57736", s_ok, Witness::Point { x: s_hi.clone() }),
        sign("c1-reduction-minus", "c1 reduction for -1 <= a <= 0 is positive for t >= 6.033", &disp::c1_bound_minus(&s_hi), &tray(rat(6033, 1000)), SignClaim::Positive),
    ];

    let mut info = vec![
        sign("c2-reduction-plus-printed", "c2 reduction (a >= 0) positive for t >= 3.3019 (as printed)", &disp::c2_bound_plus(), &tray(rat(33019, 10000)), SignClaim::Positive)
            .note("largest root 3.30190270672: the printed threshold is a truncation"),
        sign("c2-reduction-minus-printed", "c2 reduction (a <= 0) positive for t >= 3.4388 (as printed)", &disp::c2_bound_minus(), &tray(rat(34388, 10000)), SignClaim::Positive)
            .note("largest root 3.43889245171: the printed threshold is a truncation"),
    ];
    // the printed lower bound -3/10^(5/4) for 3a^5 - 3a/2 fails at a = 1/2
    let half = rat(1, 2);
    let v = &tail.eval(&half) + &rat(17, 100);
    info.push(
        check(
            "tail-bound-printed",
            "3a^5 - 3a/2 >= -3/10^(5/4) on [0, 1] (as printed)",
            !(v.is_negative() && num_traits::pow(rat(17, 100), 4) >= rat(81, 100000)),
            Witness::Point { x: half },
        )
        .note(format!("3a^5 - 3a/2 + 0.17 = {} at a = 1/2, and 0.17 > 3/10^(5/4)", fmt_rational(&v)))
        .note("exact minimum is -12 * 10^(-5/4) at a = 10^(-1/4)"),
    );
    let mut printed_plus = sign(
        "c1-reduction-plus-printed-constant",
        "c1 reduction with the printed constant 3/10^(5/4) positive for t >= 5.168",
        &disp::c1_bound_plus(&printed_q_hi),
        &tray(rat(5168, 1000)),
        SignClaim::Positive,
    )
    .note("reproduces the printed threshold, but the constant is not a valid bound");
    if !printed_q_ok {
        printed_plus.status = Status::Inconclusive;
    }
    info.push(printed_plus);
    let six = int(6);
    let at_six = disp::c1_bound_minus(&s_lo).eval(&six);
    info.push(
        check(
            "c1-reduction-minus-printed",
            "c1 reduction (a <= 0) positive for t >= 5.999 (as printed)",
            !at_six.is_negative(),
            Witness::Point { x: six },
        )
        .note(format!("value at t = 6 with sqrt(3)/3 replaced by 0.57735 (smaller): {:.6}", to_f64(&at_six)))
        .note("largest root is 6.03261912906"),
    );
    (Certificate::aggregate("band-reductions", "one-variable reductions in t = sqrt(n)", kids), info)
}

/// Positivity of c0, c1, c2 on the k-image of `(n+6)/(n-6) < p < p_c(n)` at one n.
/// With `control`, also certifies `c0 < 0` just left of `r1`.
pub fn c_positivity_at(n: i64, width: &Rational, control: bool) -> Certificate {
    let id = format!("c-positivity-n{}", n);
    let c = CoeffPolys::for_dim(n);
    let hi = rat(n - 6, 2);
    if n <= 14 {
        let dom = Domain::open(Rational::zero(), hi);
        let kids = [("c0", &c.c0), ("c1", &c.c1), ("c2", &c.c2)]
            .into_iter()
            .map(|(name, p)| at_dim(sign(&format!("{}-positive", name), format!("{} > 0 on (0, (n-6)/2)", name), p, &dom, SignClaim::Positive), n))
            .collect();
        return Certificate::aggregate(&id, format!("n = {}: c0, c1, c2 > 0 on (0, {}/2)", n, n - 6), kids);
    }
    let d = match d_enclosure(n, width) {
        Ok(d) => d,
        Err(e) => return Certificate::inconclusive(&id, format!("n = {}", n)).note(e.to_string()),
    };
    let mid = rat(n - 8, 2);
    let r1 = Interval::new(&mid - &d.hi, &mid - &d.lo);
    let lo = r1.lo.clone().max(Rational::zero());
    let right = Domain::open(lo.clone(), hi.clone());
    let mut kids = vec![
        at_dim(sign("c1-positive", "c1 > 0 on (max(0, r1), (n-6)/2)", &c.c1, &right, SignClaim::Positive), n),
        at_dim(sign("c2-positive", "c2 > 0 on (max(0, r1), (n-6)/2)", &c.c2, &right, SignClaim::Positive), n),
        at_dim(
            sign("c0-positive", "c0 > 0 right of the r1 enclosure", &c.c0, &Domain::open(r1.hi.clone(), hi.clone()), SignClaim::Positive),
            n,
        ),
    ];
    let count = c.c0.count_roots(&Domain::half_open(r1.lo.clone(), r1.hi.clone()));
    kids.push(
        check("c0-root-is-r1", "c0 has exactly one root in the r1 enclosure", count == 1, Witness::Dimension { n })
            .note(format!("r1({}) in {}", n, r1)),
    );
    if control {
        let x = &r1.lo - &ten_pow_neg(3);
        let v = c.c0.eval(&x);
        kids.push(
            check("c0-negative-below-r1", "c0(r1 - 1e-3) < 0", v.is_negative(), Witness::Sample { n, x })
                .note(format!("c0 = {:.6e}", to_f64(&v))),
        );
    }
    Certificate::aggregate(&id, format!("n = {}: c0, c1, c2 > 0 for r1(n) < k < (n-6)/2", n), kids)
}

/// Per-dimension scan over 7..=50 with the sharpness control below r1.
pub fn positivity_scan(cfg: &CertifyConfig) -> Certificate {
    let hi = cfg.cap(50);
    let kids = (7..=hi).map(|n| c_positivity_at(n, &cfg.width, true)).collect();
    per_dim("c-positivity-scan", "c0, c1, c2 > 0 on the supercritical range below p_c, 7 <= n <= 50", 7, hi, kids)
        .with_anchor(ANCHOR_C)
}

/// The same statement over 7..=100; dimensions above 50 extend the published scan.
pub fn positivity_below_pc(cfg: &CertifyConfig) -> Certificate {
    let hi = cfg.cap(100);
    let kids = (7..=hi).map(|n| c_positivity_at(n, &cfg.width, false)).collect();
    let mut c = per_dim("c-positivity-below-pc", "c0, c1, c2 > 0 for (n+6)/(n-6) < p < p_c(n)", 7, hi, kids);
    if hi > 50 {
        c = c.note("dimensions 51 and up extend the published range");
    }
    c.with_anchor(ANCHOR_C)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_end_at_max() {
        let s = sample_dims(501, 10_000);
        assert_eq!(s.first(), Some(&501));
        assert_eq!(s.last(), Some(&10_000));
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(sample_dims(20, 10).is_empty());
    }

    #[test]
    fn positivity_at_15_and_10() {
        let w = ten_pow_neg(20);
        let c = c_positivity_at(15, &w, true);
        assert_eq!(c.status, Status::Verified, "{:#?}", c);
        assert_eq!(c_positivity_at(10, &w, true).status, Status::Verified);
    }

    #[test]
    fn band_at_36_and_12() {
        assert_eq!(band_at(36).status, Status::Verified);
        assert_eq!(band_at(12).status, Status::Verified);
    }
}
