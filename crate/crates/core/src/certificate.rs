//! Machine-checkable verdicts.

use crate::exact_algebra::{fmt_rational, Interval, Rational};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Hash)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Falsified,
}

impl Status {
    /// Process exit code for a bundle whose worst verdict is `self`.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Falsified => 1,
            Status::Inconclusive => 2,
        }
    }

    /// Falsified dominates inconclusive, which dominates verified.
    pub fn worst(a: Status, b: Status) -> Status {
        a.max(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Point {
        #[serde(with = "crate::exact_algebra::serde_rational")]
        x: Rational,
    },
    Interval {
        interval: Interval,
    },
    /// Integer parameter (usually the dimension n) at which the claim failed.
    Dimension { n: i64 },
    /// A point `x` of a per-dimension claim at dimension `n`.
    Sample {
        n: i64,
        #[serde(with = "crate::exact_algebra::serde_rational")]
        x: Rational,
    },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Point { x } => write!(f, "x = {}", fmt_rational(x)),
            Witness::Interval { interval } => write!(f, "{}", interval),
            Witness::Dimension { n } => write!(f, "n = {}", n),
            Witness::Sample { n, x } => write!(f, "n = {}, x = {}", n, fmt_rational(x)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub precision_bits: u32,
    pub anchor: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<Certificate>,
    /// Checks of printed forms that were superseded by a corrected form; they are
    /// reported but never affect `status`.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub informational: Vec<Certificate>,
}

impl Certificate {
    pub fn new(claim_id: &str, statement: impl Into<String>, status: Status) -> Self {
        Certificate {
            claim_id: claim_id.to_string(),
            statement: statement.into(),
            status,
            witness: None,
            precision_bits: 0,
            anchor: String::new(),
            details: Vec::new(),
            children: Vec::new(),
            informational: Vec::new(),
        }
    }

    pub fn verified(claim_id: &str, statement: impl Into<String>) -> Self {
        Self::new(claim_id, statement, Status::Verified)
    }

    pub fn falsified(claim_id: &str, statement: impl Into<String>, witness: Witness) -> Self {
        let mut c = Self::new(claim_id, statement, Status::Falsified);
        c.witness = Some(witness);
        c
    }

    pub fn inconclusive(claim_id: &str, statement: impl Into<String>) -> Self {
        Self::new(claim_id, statement, Status::Inconclusive)
    }

    pub fn with_anchor(mut self, anchor: &str) -> Self {
        self.anchor = anchor.to_string();
        self
    }

    pub fn with_bits(mut self, bits: u32) -> Self {
        self.precision_bits = self.precision_bits.max(bits);
        self
    }

    pub fn note(mut self, d: impl Into<String>) -> Self {
        self.details.push(d.into());
        self
    }

    pub fn with_informational(mut self, c: Certificate) -> Self {
        self.informational.push(c);
        self
    }

    pub fn with_id(mut self, claim_id: &str) -> Self {
        self.claim_id = claim_id.to_string();
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Builds a parent whose status is the worst of its children.
    /// The first falsified child's witness is lifted to the parent.
    pub fn aggregate(claim_id: &str, statement: impl Into<String>, children: Vec<Certificate>) -> Self {
        let status = children.iter().map(|c| c.status).fold(Status::Verified, Status::worst);
        let witness = children
            .iter()
            .find(|c| c.status == Status::Falsified)
            .and_then(|c| c.witness.clone());
        let bits = children.iter().map(|c| c.precision_bits).max().unwrap_or(0);
        let mut c = Self::new(claim_id, statement, status);
        c.witness = witness;
        c.precision_bits = bits;
        c.children = children;
        c
    }

    pub fn worst_status(certs: &[Certificate]) -> Status {
        certs.iter().map(|c| c.status).fold(Status::Verified, Status::worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::int;

    #[test]
    fn aggregate_takes_worst() {
        let a = Certificate::verified("a", "ok");
        let b = Certificate::inconclusive("b", "?");
        let c = Certificate::falsified("c", "bad", Witness::Point { x: int(3) });
        let agg = Certificate::aggregate("all", "all", vec![a.clone(), b.clone()]);
        assert_eq!(agg.status, Status::Inconclusive);
        let agg = Certificate::aggregate("all", "all", vec![a, b, c]);
        assert_eq!(agg.status, Status::Falsified);
        assert_eq!(agg.witness, Some(Witness::Point { x: int(3) }));
        assert_eq!(Status::Falsified.exit_code(), 1);
    }

    #[test]
    fn json_round_trip() {
        let c = Certificate::falsified("x", "s", Witness::Point { x: int(-7) / int(2) });
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"-7/2\""));
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
