//! Run manifests and report digests.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        Self { path: path.display().to_string(), sha256: sha256_hex(bytes) }
    }
}

/// Everything needed to replay a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    /// Full parameter set after defaults were filled in.
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    pub inputs: Vec<FileDigest>,
    /// Digest of the report body.
    pub report_sha256: String,
    pub wall_time_ms: u64,
}

impl Manifest {
    pub fn new(command: &str, params: serde_json::Value, seed: Option<u64>, inputs: Vec<FileDigest>) -> Self {
        Self {
            command: command.to_string(),
            params,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            report_sha256: String::new(),
            wall_time_ms: 0,
        }
    }
}

/// A report with its manifest, as written to disk.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub manifest: &'a Manifest,
    pub report: &'a T,
}

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Numerical(format!("report does not serialize: {e}")))
}

/// Sets `report_sha256` and returns the run digest: SHA-256 of the manifest
/// (without wall time) followed by the report.
pub fn seal<T: Serialize>(manifest: &mut Manifest, report: &T) -> Result<String, CliError> {
    let body = to_value(report)?.to_string();
    manifest.report_sha256 = sha256_hex(body.as_bytes());
    let mut m = to_value(manifest)?;
    if let Some(obj) = m.as_object_mut() {
        obj.remove("wall_time_ms");
    }
    Ok(sha256_hex(format!("{m}\n{body}").as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_wall_time() {
        let report = serde_json::json!({"x": 1.5});
        let mut a = Manifest::new("certify", serde_json::json!({"grid": 0.01}), Some(3), vec![]);
        let mut b = a.clone();
        b.wall_time_ms = 12345;
        assert_eq!(seal(&mut a, &report).unwrap(), seal(&mut b, &report).unwrap());
        let mut c = Manifest::new("certify", serde_json::json!({"grid": 0.02}), Some(3), vec![]);
        assert_ne!(seal(&mut a, &report).unwrap(), seal(&mut c, &report).unwrap());
    }

    #[test]
    fn known_sha256() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
