//! Polynomials exactly as printed, transcribed once so every check compares against
//! the same data. Coefficient lists run from the highest power down.

use crate::exact_algebra::{int, rat, Polynomial, Rational};

/// Builds a polynomial in `var` from coefficients listed highest power first.
pub fn desc(coeffs: &[i64], var: &str) -> Polynomial {
    Polynomial::with_var(coeffs.iter().rev().map(|&c| int(c)).collect(), var)
}

fn desc_r(coeffs: Vec<Rational>, var: &str) -> Polynomial {
    Polynomial::with_var(coeffs.into_iter().rev().collect(), var)
}

fn prod(ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::constant(int(1)).renamed("n"), |acc, p| &acc * p)
}

/// `-d1'(n)` as printed.
pub fn minus_d1_prime() -> Polynomial {
    desc(&[648, -6480, 12096, 31104, -206208, -20736], "n")
}

/// `(-d1')^2 d2 - 18^2 (d2')^2`, printed expansion.
pub fn d0_derivative_expanded() -> Polynomial {
    desc(
        &[
            -293534171136,
            4109478395904,
            -9001714581504,
            -168292924784640,
            1233104438034432,
            -3119550711201792,
            -6748415824232448,
            21348066225291264,
            -1783991975804928,
            9835612546793472,
            34945090870837248,
            -114643053771227136,
            19014404334944256,
            -110880250103070720,
            -14427791579676672,
            -356241767399424,
        ],
        "n",
    )
}

/// Variable factors of the printed factorization of the same quantity.
pub fn d0_derivative_factors() -> [Polynomial; 2] {
    [desc(&[3, -18, 84, 8], "n"), desc(&[1, -8, -40, 480, 16], "n")]
}

pub fn d0_derivative_factored() -> Polynomial {
    let [f1, f2] = d0_derivative_factors();
    let sq = |p: Polynomial| &p * &p;
    prod(&[
        Polynomial::constant(int(-10871635968)),
        f1,
        f2,
        sq(desc(&[1, -2], "n")),
        sq(desc(&[1, 2], "n")),
        sq(desc(&[3, 0, 4], "n")),
    ])
}

/// Printed factorization `d2 = (9n^8 - ...)(n-2)^2(n+2)^2`.
pub fn d2_factored() -> Polynomial {
    let f = desc(&[9, -216, 1872, -6048, -16032, 206208, -848640, -189952, 383232], "n");
    let a = desc(&[1, -2], "n");
    let b = desc(&[1, 2], "n");
    prod(&[f, a.clone(), a, b.clone(), b])
}

pub fn three_n2_plus_4() -> Polynomial {
    desc(&[3, 0, 4], "n")
}

/// Upper-bound comparison polynomial `-d1(6n^2-9n+32)^3 - (768n^2+1024)^3`, printed.
pub fn upper_cmp_printed() -> Polynomial {
    desc(
        &[
            23328, -384912, 2443608, -8266860, -276048, 76177584, -915397632, 1095581376,
            -4004833536, 1592960256, -2731991040, -3305373696, 2038431744,
        ],
        "n",
    )
}

pub const UPPER_SQ_SCALE: i64 = 1358954496;

/// Its squared comparison divided by the printed scale factor.
pub fn upper_sq_expanded() -> Polynomial {
    desc(
        &[
            116640, -606528, 1195560, 16771860, -104564844, 682366923, -1464330096, 5142941100,
            -6506609472, 15562840464, -11332244736, 21360207936, -5590593536, 10574331904,
            4294279168, -2878341120, 3791650816, -3221225472,
        ],
        "n",
    )
}

/// The degree-11 factor left after removing `(3n^2+4)^3`.
pub fn upper_sq_factor() -> Polynomial {
    desc(
        &[
            4320, -22464, 27000, 711036, -4003812, 22548513, -38373440, 96546304, -66202112,
            68272128, 59244544, -50331648,
        ],
        "n",
    )
}

/// Lower-bound comparison polynomial `-d1(3n^2-12n-32)^3 - (384n^2+512)^3`, printed.
pub fn lower_cmp_printed() -> Polynomial {
    desc(
        &[
            2916, -69984, 548208, -699840, -12052800, 54991872, -7831296, -691006464, -299151360,
            4048994304, 3403284480, -2821718016, -3246391296,
        ],
        "n",
    )
}

pub const LOWER_SQ_SCALE: i64 = 5435817984;

pub fn lower_sq_expanded() -> Polynomial {
    desc(
        &[
            -729, 14580, -36936, -631152, 3184272, 6849792, -15453504, -49876992, -32256000,
            -28111872, 268692480, 613150720, 898416640, 1187315712, 983040000, 616562688,
            369098752,
        ],
        "n",
    )
}

/// The degree-10 factor; the printed product carries an extra minus sign.
pub fn lower_sq_factor() -> Polynomial {
    desc(
        &[
            27, -540, 1260, 25536, -123120, -352960, 1058048, 3124224, -2383872, -9633792,
            -5767168,
        ],
        "n",
    )
}

/// Printed expansion of A2 in k at dimension n; `k3_const` is the constant inside the
/// k^3 coefficient `(k3_const - 6n)` (36 as printed; the tamper hook changes it).
pub fn a2_expanded(n: i64, k3_const: i64) -> Polynomial {
    let n = int(n);
    let n2 = &n * &n;
    desc_r(
        vec![
            int(3),
            int(k3_const) - int(6) * &n,
            int(3) * &n2 - int(48) * &n + int(150),
            int(12) * &n2 - int(114) * &n + int(252),
            int(9) * &n2 - int(72) * &n + int(135),
        ],
        "k",
    )
}

pub fn a1_expanded(n: i64) -> Polynomial {
    let n = int(n);
    desc_r(
        vec![int(-10), int(10) * &n - int(60), -(&n * &n) + int(24) * &n - int(83)],
        "k",
    )
}

pub fn b1_expanded(n: i64) -> Polynomial {
    let n = int(n);
    desc_r(vec![int(-6), int(6) * &n - int(36), int(12) * &n - int(42)], "k")
}

/// c1 in k as printed.
pub fn c1_expanded(n: &Rational) -> Polynomial {
    let n2 = n * n;
    let n3 = &n2 * n;
    let n4 = &n3 * n;
    desc_r(
        vec![
            int(3),
            int(54) - int(6) * n,
            int(3) * &n2 - int(84) * n + int(372),
            int(30) * &n2 - int(408) * n + int(1224),
            rat(159, 2) * &n2 - int(810) * n + int(1917) - rat(3, 16) * &n4 + rat(3, 2) * &n3,
            int(48) * &n2 - int(480) * n + int(1152),
        ],
        "k",
    )
}

/// c2 in k as printed: the leading term appears as `-3k^2` next to a second k^2 term.
pub fn c2_printed(n: &Rational) -> Polynomial {
    let n2 = n * n;
    desc_r(
        vec![
            int(-3) + int(3) * n - int(36),
            -rat(3, 4) * &n2 + int(27) * n - int(135),
            int(36) * n - int(192),
        ],
        "k",
    )
}

/// The same display with the leading power read as k^3.
pub fn c2_cubic_reading(n: &Rational) -> Polynomial {
    let n2 = n * n;
    desc_r(
        vec![
            int(-3),
            int(3) * n - int(36),
            -rat(3, 4) * &n2 + int(27) * n - int(135),
            int(36) * n - int(192),
        ],
        "k",
    )
}

/// c1 after `k = (n-8)/2 + a sqrt(n)`, `n = t^2`, as a polynomial in `a` at fixed `t`.
pub fn c1_shifted(t: &Rational) -> Polynomial {
    let p = |e: i32| num_traits::pow(t.clone(), e as usize);
    Polynomial::with_var(
        vec![
            int(12) + rat(9, 8) * p(8) - rat(39, 4) * p(6) + int(3) * p(4) + rat(141, 2) * p(2),
            rat(3, 2) * p(7) - rat(3, 2) * p(5) - int(18) * p(3) - int(3) * t,
            -rat(3, 4) * p(8) + int(3) * p(6) + int(6) * p(4) + int(24) * p(2),
            -rat(3, 2) * p(7) - int(12) * p(3),
            rat(3, 2) * p(6) - int(6) * p(4),
            int(3) * p(5),
        ],
        "a",
    )
}

/// c2 after the same substitution.
pub fn c2_shifted(t: &Rational) -> Polynomial {
    let p = |e: i32| num_traits::pow(t.clone(), e as usize);
    Polynomial::with_var(
        vec![
            int(-36) + rat(9, 2) * p(4) - rat(39, 2) * p(2),
            int(3) * p(3) + int(9) * t,
            -rat(3, 2) * p(4),
            int(-3) * p(3),
        ],
        "a",
    )
}

/// c2 lower bound for `0 <= a <= 1` in `t = sqrt(n)`.
pub fn c2_bound_plus() -> Polynomial {
    desc_r(vec![int(3), int(-3), rat(-39, 2), int(0), int(-36)], "t")
}

/// c2 lower bound for `-1 <= a <= 0`.
pub fn c2_bound_minus() -> Polynomial {
    desc_r(vec![int(3), int(-3), rat(-39, 2), int(-9), int(-36)], "t")
}

/// c1 lower bound for `0 <= a <= 1`, with `q` standing for the bound on `-(3a^5 - 3a/2)`
/// and the half-integer power of t read as t^5.
pub fn c1_bound_plus(q: &Rational) -> Polynomial {
    desc_r(
        vec![
            rat(3, 8),
            int(0),
            rat(-39, 4),
            -q.clone(),
            int(-3),
            int(-30),
            rat(141, 2),
            int(-3),
            int(12),
        ],
        "t",
    )
}

/// c1 lower bound for `-1 <= a <= 0`, with `s` standing for `sqrt(3)/3` and the
/// half-integer powers read as t^7 and t^5.
pub fn c1_bound_minus(s: &Rational) -> Polynomial {
    desc_r(
        vec![
            rat(3, 8),
            -s.clone(),
            rat(-39, 4),
            rat(-3, 2),
            int(-3),
            int(-30),
            rat(141, 2),
            int(0),
            int(12),
        ],
        "t",
    )
}
