use triharmonic::certifier::{run_all, CertifyConfig, CertifyError, LEMMA_IDS};
use triharmonic::exact_algebra::rat;
use triharmonic::Status;

#[test]
fn full_bundle_verifies() {
    let bundle = run_all(&CertifyConfig::default()).unwrap();
    let ids: Vec<&str> = bundle.certificates.iter().map(|c| c.claim_id.as_str()).collect();
    assert_eq!(ids, LEMMA_IDS);
    assert_eq!(bundle.status, Status::Verified);
    assert_eq!(bundle.exit_code(), 0);
}

#[test]
fn tampered_coefficient_is_caught() {
    let cfg = CertifyConfig { tamper_a2: true, n_max: Some(20), ..CertifyConfig::default() };
    let bundle = run_all(&cfg).unwrap();
    assert_eq!(bundle.status, Status::Falsified);
    assert_eq!(bundle.exit_code(), 1);
}

#[test]
fn bundle_is_deterministic() {
    let cfg = CertifyConfig { lemma: Some("alpha-split".into()), ..CertifyConfig::default() };
    let a = serde_json::to_string(&run_all(&cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&run_all(&cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn split_parameter_too_large_fails() {
    // above the critical split parameter the 12α gate at n = 21 cannot hold
    let cfg = CertifyConfig { lemma: Some("alpha-split".into()), alpha: rat(95, 100), ..CertifyConfig::default() };
    assert_ne!(run_all(&cfg).unwrap().status, Status::Verified);
}

#[test]
fn rejects_bad_config() {
    let cfg = CertifyConfig { n_max: Some(5), ..CertifyConfig::default() };
    assert_eq!(run_all(&cfg).unwrap_err(), CertifyError::NMaxTooSmall(5));
    let cfg = CertifyConfig { lemma: Some("nope".into()), ..CertifyConfig::default() };
    assert!(matches!(run_all(&cfg), Err(CertifyError::UnknownLemma(_))));
}
