use proptest::prelude::*;
use triharmonic::coefficients::{k_of_p, p_of_k, singular_stability, CoeffPolys, Params, Stability};
use triharmonic::exact_algebra::{
    enclose, int, isolate_real_roots, rat, ten_pow_neg, Domain, Interval, Polynomial, RadicalExpr, Rational,
};
use triharmonic::exponents::{joseph_lundgren_triharmonic, pc_root_oracle};
use triharmonic::numerics::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(a, b)| rat(a, b))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rat(), 1..6).prop_map(Polynomial::new)
}

fn interval() -> impl Strategy<Value = (Interval, Rational)> {
    (small_rat(), 0i64..20, 0i64..=8).prop_map(|(lo, w, t)| {
        let hi = &lo + rat(w, 7);
        let x = &lo + (&hi - &lo) * rat(t, 8);
        (Interval::new(lo, hi), x)
    })
}

proptest! {
    #[test]
    fn polynomial_ring_matches_evaluation(a in poly(), b in poly(), x in small_rat()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
    }

    #[test]
    fn interval_ops_enclose_pointwise((i, x) in interval(), (j, y) in interval()) {
        prop_assert!((&i + &j).contains(&(&x + &y)));
        prop_assert!((&i - &j).contains(&(&x - &y)));
        prop_assert!((&i * &j).contains(&(&x * &y)));
    }

    #[test]
    fn sturm_counts_distinct_roots(roots in prop::collection::btree_set(-30i64..30, 1..6), extra in 0usize..2) {
        // product of (x - r_i), with one factor possibly repeated
        let rs: Vec<i64> = roots.into_iter().collect();
        let mut p = Polynomial::constant(int(1));
        for r in rs.iter().chain(rs.iter().take(extra)) {
            p = &p * &Polynomial::new(vec![int(-r), int(1)]);
        }
        prop_assert_eq!(p.count_roots(&Domain::real_line()), rs.len());
        let iso = isolate_real_roots(&p, &ten_pow_neg(6)).unwrap();
        prop_assert_eq!(iso.len(), rs.len());
        for (iv, r) in iso.iter().zip(&rs) {
            prop_assert!(iv.contains(&int(*r)));
        }
    }

    #[test]
    fn sqrt_enclosure_is_tight(m in 2i64..100_000, e in 4u32..30) {
        let w = ten_pow_neg(e);
        let iv = enclose(&RadicalExpr::int(m).sqrt(), &w).unwrap();
        prop_assert!(iv.width() <= w);
        prop_assert!(&iv.lo * &iv.lo <= int(m) && int(m) <= &iv.hi * &iv.hi);
    }

    #[test]
    fn k_and_p_round_trip(num in 1i64..400, den in 1i64..50) {
        let k = rat(num, den);
        prop_assert_eq!(k_of_p(&p_of_k(&k).unwrap()).unwrap(), k);
    }

    #[test]
    fn a2_factorization_holds(n in 7i64..200) {
        let c = CoeffPolys::for_dim(n);
        prop_assert_eq!(&c.a2, &c.a2_factored());
    }

    #[test]
    fn pc_closed_form_matches_oracle(n in 15i64..2000) {
        let w = ten_pow_neg(14);
        let closed = joseph_lundgren_triharmonic(n, &w).unwrap().enclosure().unwrap();
        prop_assert!(closed.intersects(&pc_root_oracle(n, &w).unwrap().pc));
    }

    #[test]
    fn stability_flips_at_pc(n in 15i64..300, shift in 1i64..50) {
        let pc = joseph_lundgren_triharmonic(n, &ten_pow_neg(20)).unwrap().enclosure().unwrap();
        let eps = rat(shift, 10_000);
        let below = Params::new(n, &pc.lo * (int(1) - &eps)).unwrap();
        let above = Params::new(n, &pc.hi * (int(1) + &eps)).unwrap();
        prop_assert_eq!(singular_stability(&below), Stability::Unstable);
        prop_assert_eq!(singular_stability(&above), Stability::Stable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energy_is_scale_covariant(sigma in 0.4f64..1.5, lambda in 0.3f64..3.0, r in 0.5f64..2.0, l in 0u32..3) {
        let params = Params::new(12, int(4)).unwrap();
        let k = params.k_f64();
        let m = EnergyModel::new(&params, l);
        let u = HarmonicTestFunction::new(RadialKind::Gaussian { sigma }, l, 12);
        let cfg = EnergyConfig::default();
        let a = m.energy(&u, r * lambda, &cfg).unwrap();
        let b = m.energy(&u.scale(lambda, k), r, &cfg).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn jordan_identity_holds(a1 in -200.0f64..200.0, a2 in 0.0f64..3000.0, c1 in -3.0f64..5.0, c2 in -2.0f64..2.0) {
        let jp = JordanParams { a1, a2, c1, c2 };
        // f = t e^{-t}
        let f = |t: f64| [(-t).exp() * (1.0 - t), (-t).exp() * (t - 2.0), (-t).exp() * (3.0 - t)];
        let res = jordan_residual(f, &jp, 0.5, 2.0);
        prop_assert!(res < 1e-8, "{}", res);
    }

    #[test]
    fn delta_reading_matches_finite_differences(n in 12i64..25, frac in 5i64..95, lambda in 0.5f64..2.0, l in 0u32..3) {
        let params = Params::from_k(n, rat((n - 6) * frac, 200)).unwrap();
        let m = EnergyModel::new(&params, l);
        let u = HarmonicTestFunction::new(RadialKind::Exponential { rate: 1.2 }, l, n as u32);
        let r = fd_check(&m, &u, lambda, FormulaVariant::DeltaReading, &[1e-2, 1e-3, 1e-4], 1e-3, &EnergyConfig::default()).unwrap();
        prop_assert!(r.relative_residual < 1e-6, "{}", r.relative_residual);
    }

    #[test]
    fn radial_refinement_is_consistent(u0 in 0.3f64..1.5, p in 2.0f64..9.0) {
        let tol = 1e-10;
        let a = radial_ivp_solve(15.0, p, u0, 0.0, 0.0, 1.0, tol).unwrap();
        let b = radial_ivp_solve(15.0, p, u0, 0.0, 0.0, 1.0, tol / 2.0).unwrap();
        prop_assume!(a.blow_up.is_none());
        let gap = (a.last().u - b.last().u).abs() / a.last().u.abs().max(1.0);
        prop_assert!(gap <= 10.0 * tol, "{:e}", gap);
        let po = pohozaev_residual(&a, 1.0).unwrap();
        prop_assert!(po.relative_residual < 1e-6, "{:e}", po.relative_residual);
    }
}
