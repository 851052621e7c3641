//! PubChem client against a local HTTP stub.

mod common;

use std::net::TcpListener;
use std::path::Path;
use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use common::stub;

use odorscreen::pubchem::{PubChemClient, PubChemConfig, PubChemStatus, CACHE_FILE};

fn client(url: &str, cache: Option<&Path>, offline: bool) -> PubChemClient {
    PubChemClient::new(PubChemConfig {
        base_url: url.to_owned(),
        cache_dir: cache.map(Path::to_owned),
        offline,
        timeout: Duration::from_secs(5),
        min_interval: Duration::ZERO,
    })
    .unwrap()
}

const QUERIES: [(&str, PubChemStatus); 4] = [
    ("CCO", PubChemStatus::Known),
    ("CCCO", PubChemStatus::Unknown),
    ("CCCCO", PubChemStatus::Unknown),
    ("CCCCCO", PubChemStatus::Unavailable),
];

#[test]
fn statuses_and_cache_file() {
    let s = stub();
    let dir = tempfile::tempdir().unwrap();
    let c = client(&s.url, Some(dir.path()), false);
    for (smiles, want) in QUERIES {
        assert_eq!(c.lookup(smiles), want, "{smiles}");
    }
    assert_eq!(c.network_calls(), 4);
    assert_eq!(s.hits.load(Ordering::SeqCst), 4);
    // Repeats of cached answers stay local; the unavailable one is retried.
    assert_eq!(c.lookup("CCO"), PubChemStatus::Known);
    assert_eq!(c.lookup("CCCCCO"), PubChemStatus::Unavailable);
    assert_eq!(c.network_calls(), 5);

    let text = std::fs::read_to_string(dir.path().join(CACHE_FILE)).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("CCO\tknown\t"));
    assert!(!text.contains("unavailable"));
}

#[test]
fn warm_cache_makes_no_calls() {
    let s = stub();
    let dir = tempfile::tempdir().unwrap();
    let cold = client(&s.url, Some(dir.path()), false);
    for (smiles, _) in &QUERIES[..3] {
        cold.lookup(smiles);
    }
    let warm = client(&s.url, Some(dir.path()), false);
    for (smiles, want) in &QUERIES[..3] {
        assert_eq!(warm.lookup(smiles), *want);
    }
    assert_eq!(warm.network_calls(), 0);
    assert_eq!(s.hits.load(Ordering::SeqCst), 3);
}

#[test]
fn offline_uses_cache_only() {
    let s = stub();
    let c = client(&s.url, Some(&common::fixture("pubchem_cache")), true);
    assert_eq!(c.lookup("CCO"), PubChemStatus::Known);
    assert_eq!(c.lookup("CCCO"), PubChemStatus::Unavailable);
    assert_eq!(c.network_calls(), 0);
    assert_eq!(s.hits.load(Ordering::SeqCst), 0);
}

#[test]
fn unreachable_host_is_unavailable() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let dir = tempfile::tempdir().unwrap();
    let c = client(&format!("http://127.0.0.1:{port}"), Some(dir.path()), false);
    assert_eq!(c.lookup("CCO"), PubChemStatus::Unavailable);
    assert!(c.cached("CCO").is_none());
    assert!(!dir.path().join(CACHE_FILE).exists());
}

#[test]
fn requests_are_spaced() {
    let s = stub();
    let c = PubChemClient::new(PubChemConfig {
        base_url: s.url.clone(),
        cache_dir: None,
        offline: false,
        timeout: Duration::from_secs(5),
        min_interval: Duration::from_millis(100),
    })
    .unwrap();
    let start = Instant::now();
    for smiles in ["CCO", "CCCO", "CCCCO"] {
        c.lookup(smiles);
    }
    assert!(start.elapsed() >= Duration::from_millis(200));
    assert_eq!(c.network_calls(), 3);
}

#[test]
fn malformed_cache_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join(CACHE_FILE),
        "# header\nCCO\tknown\t1\ngarbage\nCCN\tmaybe\t1\nCCO\tunknown\t2\n",
    )
    .unwrap();
    let c = client("http://127.0.0.1:9", Some(dir.path()), true);
    assert_eq!(c.cached("CCO"), Some(PubChemStatus::Unknown));
    assert_eq!(c.cached("CCN"), None);
}
