//! Reproducible certificates for the algebraic lemmas behind the stability and
//! monotonicity results. Every verified sign claim rests on a zero Sturm count; every
//! falsified claim carries a witness that re-evaluates exactly.
//!
//! Printed forms that fail exactly are never silently replaced: the corrected form is
//! certified as the claim, and the printed form is reported under `informational`.

pub mod appendix;
pub mod displays;
pub mod monotone;

use crate::certificate::{Certificate, Status, Witness, SCHEMA_VERSION};
use crate::exact_algebra::{
    certify_sign, fmt_rational, int, rat, ten_pow_neg, Domain, Polynomial, Rational, SignClaim,
    DEFAULT_PRECISION_CAP,
};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use appendix::{
    band_certificate, c_positivity_at, d0_bounds, d0_identity, d_below_sqrt_n, positivity_below_pc,
    positivity_scan,
};
pub use monotone::{
    a2_b1_a1_signs, a2_factorization, alpha_split, alpha_split_bundle, alpha_star, negativity_window,
    pc_below_pm, split_parameters, AlphaWindow,
};

/// Descriptive ids accepted by `--lemma`, in execution order.
pub const LEMMA_IDS: &[&str] = &[
    "a2-factorization",
    "a2-b1-a1-signs",
    "alpha-split",
    "pc-below-pm",
    "d0-identity",
    "d0-monotone-bounds",
    "d-below-sqrt-n",
    "c1-c2-band",
    "c-positivity-scan",
    "c-positivity-below-pc",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("unknown lemma id '{0}'")]
    UnknownLemma(String),
    #[error("n_max must be at least 7, got {0}")]
    NMaxTooSmall(i64),
    #[error("width must be positive")]
    NonPositiveWidth,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyConfig {
    /// Run only this lemma id; `None` runs everything.
    pub lemma: Option<String>,
    /// Caps the upper end of every per-dimension range.
    pub n_max: Option<i64>,
    /// Target width for radical enclosures.
    #[serde(with = "crate::exact_algebra::serde_rational")]
    pub width: Rational,
    pub precision_cap: u32,
    /// Negative control: replaces the 36 in the printed `A2` k^3 coefficient by 35.
    pub tamper_a2: bool,
    /// The split parameter used at n = 21.
    #[serde(with = "crate::exact_algebra::serde_rational")]
    pub alpha: Rational,
    /// Every n in `15..=d_sqrt_exhaustive` gets a direct `d(n) < sqrt(n)` check.
    pub d_sqrt_exhaustive: i64,
    /// Geometrically sampled direct checks continue up to this n.
    pub d_sqrt_sampled: i64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            lemma: None,
            n_max: None,
            width: ten_pow_neg(20),
            precision_cap: DEFAULT_PRECISION_CAP,
            tamper_a2: false,
            alpha: rat(9342, 10000),
            d_sqrt_exhaustive: 500,
            d_sqrt_sampled: 10_000,
        }
    }
}

impl CertifyConfig {
    /// Upper end of a default range, lowered to `n_max` when set.
    pub fn cap(&self, hi: i64) -> i64 {
        self.n_max.map_or(hi, |m| m.min(hi))
    }

    fn validate(&self) -> Result<(), CertifyError> {
        if let Some(m) = self.n_max {
            if m < 7 {
                return Err(CertifyError::NMaxTooSmall(m));
            }
        }
        if self.width <= Rational::zero() {
            return Err(CertifyError::NonPositiveWidth);
        }
        if let Some(id) = &self.lemma {
            if !LEMMA_IDS.contains(&id.as_str()) {
                return Err(CertifyError::UnknownLemma(id.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bundle {
    pub schema_version: u32,
    pub config: CertifyConfig,
    pub status: Status,
    pub certificates: Vec<Certificate>,
}

impl Bundle {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Runs the selected lemmas. Output depends only on `config`.
pub fn run_all(config: &CertifyConfig) -> Result<Bundle, CertifyError> {
    config.validate()?;
    let certificates: Vec<Certificate> = LEMMA_IDS
        .iter()
        .filter(|id| config.lemma.as_deref().is_none_or(|l| l == **id))
        .map(|id| run_one(id, config))
        .collect();
    Ok(Bundle {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        status: Certificate::worst_status(&certificates),
        certificates,
    })
}

fn run_one(id: &str, cfg: &CertifyConfig) -> Certificate {
    match id {
        "a2-factorization" => a2_factorization(cfg),
        "a2-b1-a1-signs" => a2_b1_a1_signs(cfg),
        "alpha-split" => alpha_split_bundle(cfg),
        "pc-below-pm" => pc_below_pm(cfg),
        "d0-identity" => d0_identity(cfg),
        "d0-monotone-bounds" => d0_bounds(cfg),
        "d-below-sqrt-n" => d_below_sqrt_n(cfg),
        "c1-c2-band" => band_certificate(cfg),
        "c-positivity-scan" => positivity_scan(cfg),
        "c-positivity-below-pc" => positivity_below_pc(cfg),
        _ => unreachable!("ids are validated"),
    }
}

fn degree_str(p: &Polynomial) -> String {
    p.degree().map_or_else(|| "-inf".to_string(), |d| d.to_string())
}

/// Exact polynomial identity `lhs == rhs`. A failure is witnessed by the smallest
/// nonnegative integer where the two sides differ.
pub(crate) fn identity(id: &str, statement: impl Into<String>, lhs: &Polynomial, rhs: &Polynomial) -> Certificate {
    let statement = statement.into();
    if lhs == rhs {
        return Certificate::verified(id, statement)
            .note(format!("exact expansion, degree {}", degree_str(lhs)));
    }
    let diff = lhs - rhs;
    let x = (0i64..)
        .map(int)
        .find(|x| !diff.eval(x).is_zero())
        .expect("nonzero polynomial has finitely many roots");
    let value = diff.eval(&x);
    Certificate::falsified(id, statement, Witness::Point { x })
        .note(format!("degrees {} vs {}", degree_str(lhs), degree_str(rhs)))
        .note(format!("lhs - rhs at witness = {}", fmt_rational(&value)))
}

/// Sign certificate with a descriptive id; the generic Sturm statement is kept as a detail.
pub(crate) fn sign(
    id: &str,
    statement: impl Into<String>,
    p: &Polynomial,
    domain: &Domain,
    claim: SignClaim,
) -> Certificate {
    let mut c = certify_sign(p, domain, claim);
    let generic = std::mem::replace(&mut c.statement, statement.into());
    c.claim_id = id.to_string();
    c.details.insert(0, generic);
    c
}

/// Rewrites a point witness as a per-dimension sample.
pub(crate) fn at_dim(mut c: Certificate, n: i64) -> Certificate {
    if let Some(Witness::Point { x }) = &c.witness {
        c.witness = Some(Witness::Sample { n, x: x.clone() });
    }
    c
}

/// Parent over per-dimension children that also records the covered range.
pub(crate) fn per_dim(id: &str, statement: impl Into<String>, lo: i64, hi: i64, children: Vec<Certificate>) -> Certificate {
    Certificate::aggregate(id, statement, children).note(format!("dimensions {}..={}", lo, hi))
}

pub(crate) fn check(id: &str, statement: impl Into<String>, ok: bool, witness: Witness) -> Certificate {
    if ok {
        Certificate::verified(id, statement)
    } else {
        Certificate::falsified(id, statement, witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_config() {
        let cfg = CertifyConfig { lemma: Some("lemma-8.3".into()), ..Default::default() };
        assert_eq!(run_all(&cfg).unwrap_err(), CertifyError::UnknownLemma("lemma-8.3".into()));
        let cfg = CertifyConfig { n_max: Some(5), ..Default::default() };
        assert!(run_all(&cfg).is_err());
    }

    #[test]
    fn identity_witness_reevaluates() {
        let a = Polynomial::from_ints(&[1, 2, 1]);
        let b = Polynomial::from_ints(&[1, 2, 2]);
        let c = identity("x", "x", &a, &b);
        assert_eq!(c.status, Status::Falsified);
        match c.witness {
            Some(Witness::Point { x }) => assert_ne!(a.eval(&x), b.eval(&x)),
            _ => panic!("missing witness"),
        }
    }
}
