use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cache::hex;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileDigest {
    /// Relative to the output directory.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(dir: &Path, name: &str) -> CliResult<Self> {
        let p = dir.join(name);
        let data = std::fs::read(&p).map_err(|e| CliError::io(&p, e))?;
        Ok(FileDigest { path: name.into(), bytes: data.len() as u64, sha256: hex(&Sha256::digest(&data)) })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub artifact: String,
    pub version: String,
    pub config: RunConfig,
    pub workers: usize,
    pub stages: Vec<Stage>,
    pub files: Vec<FileDigest>,
    /// `ok`, or `failed` when a reproduced table misses a tolerance.
    pub status: String,
}

pub const MANIFEST_NAME: &str = "manifest.json";
