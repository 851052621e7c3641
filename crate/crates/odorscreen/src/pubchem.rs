//! Existence checks against PubChem PUG-REST, cached on disk.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::{io_err, Result};

pub const DEFAULT_BASE_URL: &str = "https://pubchem.ncbi.nlm.nih.gov/rest/pug";
pub const BASE_URL_ENV: &str = "ODORSCREEN_PUBCHEM_URL";
pub const CACHE_FILE: &str = "pubchem.tsv";
/// At most five requests per second.
pub const MIN_INTERVAL: Duration = Duration::from_millis(200);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PubChemStatus {
    Known,
    Unknown,
    /// Offline, or the service could not be reached. Never cached.
    Unavailable,
}

impl PubChemStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PubChemStatus::Known => "known",
            PubChemStatus::Unknown => "unknown",
            PubChemStatus::Unavailable => "unavailable",
        }
    }

    fn from_cache(s: &str) -> Option<PubChemStatus> {
        match s {
            "known" => Some(PubChemStatus::Known),
            "unknown" => Some(PubChemStatus::Unknown),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PubChemConfig {
    pub base_url: String,
    /// Directory holding the cache file; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
    pub offline: bool,
    pub timeout: Duration,
    pub min_interval: Duration,
}

impl Default for PubChemConfig {
    fn default() -> Self {
        PubChemConfig {
            base_url: std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_owned()),
            cache_dir: None,
            offline: false,
            timeout: Duration::from_secs(15),
            min_interval: MIN_INTERVAL,
        }
    }
}

pub struct PubChemClient {
    config: PubChemConfig,
    agent: ureq::Agent,
    cache: Mutex<HashMap<String, PubChemStatus>>,
    last_request: Mutex<Option<Instant>>,
    calls: AtomicUsize,
}

fn read_cache(path: &Path) -> Result<HashMap<String, PubChemStatus>> {
    let mut out = HashMap::new();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(io_err(path)(e)),
    };
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next().and_then(PubChemStatus::from_cache)) {
            // Later lines win, so re-queried entries override old ones.
            (Some(smiles), Some(status)) => {
                out.insert(smiles.to_owned(), status);
            }
            _ => warn!("{}:{}: skipping malformed cache line", path.display(), i + 1),
        }
    }
    Ok(out)
}

impl PubChemClient {
    pub fn new(config: PubChemConfig) -> Result<PubChemClient> {
        let cache = match &config.cache_dir {
            Some(dir) => read_cache(&dir.join(CACHE_FILE))?,
            None => HashMap::new(),
        };
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(PubChemClient {
            config,
            agent,
            cache: Mutex::new(cache),
            last_request: Mutex::new(None),
            calls: AtomicUsize::new(0),
        })
    }

    /// HTTP requests issued so far.
    pub fn network_calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn cached(&self, smiles: &str) -> Option<PubChemStatus> {
        self.cache.lock().unwrap().get(smiles).copied()
    }

    /// Status of a canonical SMILES. Errors degrade to `Unavailable`.
    pub fn lookup(&self, smiles: &str) -> PubChemStatus {
        if let Some(s) = self.cached(smiles) {
            return s;
        }
        if self.config.offline {
            return PubChemStatus::Unavailable;
        }
        let status = self.query(smiles);
        if status != PubChemStatus::Unavailable {
            self.store(smiles, status);
        }
        status
    }

    fn throttle(&self) {
        let mut last = self.last_request.lock().unwrap();
        if let Some(t) = *last {
            let wait = self.config.min_interval.saturating_sub(t.elapsed());
            if !wait.is_zero() {
                thread::sleep(wait);
            }
        }
        *last = Some(Instant::now());
    }

    fn query(&self, smiles: &str) -> PubChemStatus {
        self.throttle();
        self.calls.fetch_add(1, Ordering::SeqCst);
        let url = format!("{}/compound/smiles/cids/TXT", self.config.base_url.trim_end_matches('/'));
        let response = self.agent.get(&url).query("smiles", smiles).call();
        let mut response = match response {
            Ok(r) => r,
            Err(e) => {
                warn!("PubChem request for {smiles} failed: {e}");
                return PubChemStatus::Unavailable;
            }
        };
        let code = response.status().as_u16();
        let body = response.body_mut().read_to_string().unwrap_or_default();
        debug!("PubChem {smiles}: HTTP {code} {:?}", body.trim());
        match code {
            200 => {
                let known = body.lines().any(|l| l.trim().parse::<u64>().is_ok_and(|cid| cid > 0));
                if known {
                    PubChemStatus::Known
                } else {
                    PubChemStatus::Unknown
                }
            }
            404 => PubChemStatus::Unknown,
            _ => {
                warn!("PubChem returned HTTP {code} for {smiles}");
                PubChemStatus::Unavailable
            }
        }
    }

    fn store(&self, smiles: &str, status: PubChemStatus) {
        let mut cache = self.cache.lock().unwrap();
        cache.insert(smiles.to_owned(), status);
        let Some(dir) = &self.config.cache_dir else {
            return;
        };
        // Appended under the cache lock so concurrent writers do not interleave.
        let path = dir.join(CACHE_FILE);
        let result = fs::create_dir_all(dir).and_then(|_| {
            let fresh = !path.exists();
            let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
            if fresh {
                writeln!(f, "# canonical_smiles\tstatus\tunix_time")?;
            }
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            writeln!(f, "{smiles}\t{}\t{now}", status.as_str())
        });
        if let Err(e) = result {
            warn!("could not write PubChem cache {}: {e}", path.display());
        }
    }
}
