#![allow(dead_code)]

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use odorscreen::dataset::{load_dataset, Dataset, DatasetConfig, LabelFormat};
use odorscreen::smiles_file::{read_smiles_file, SmilesLine};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn synthetic_dataset() -> Dataset {
    load_dataset(&fixture("dataset_synthetic.csv"), &DatasetConfig::default()).unwrap()
}

pub fn onehot_config() -> DatasetConfig {
    DatasetConfig {
        labels: LabelFormat::OneHot { columns: None },
        ..DatasetConfig::default()
    }
}

pub fn lines(name: &str) -> Vec<SmilesLine> {
    read_smiles_file(&fixture(name)).unwrap()
}

pub struct Stub {
    pub url: String,
    pub hits: Arc<AtomicUsize>,
}

/// CCO → CID 702, CCCCO → CID 0, CCCCCO → HTTP 503, anything else → 404.
pub fn stub() -> Stub {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/rest/pug", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let counter = hits.clone();
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            loop {
                let mut h = String::new();
                if reader.read_line(&mut h).unwrap() == 0 || h == "\r\n" {
                    break;
                }
            }
            counter.fetch_add(1, Ordering::SeqCst);
            let target = request_line.split_whitespace().nth(1).unwrap_or("");
            assert!(target.starts_with("/rest/pug/compound/smiles/cids/TXT?smiles="), "{target}");
            let smiles = target.rsplit('=').next().unwrap();
            let (code, body) = match smiles {
                "CCO" => ("200 OK", "702\n"),
                "CCCCO" => ("200 OK", "0\n"),
                "CCCCCO" => ("503 Service Unavailable", "busy"),
                _ => ("404 Not Found", "Status: 404\n"),
            };
            let _ = write!(
                stream,
                "HTTP/1.1 {code}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
        }
    });
    Stub { url, hits }
}
