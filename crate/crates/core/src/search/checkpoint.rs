//! Resumable snapshots of an exhaustive run: the magic line `SPEXCKPT1`
//! followed by a JSON body. Writes go through a temporary file and a rename.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::enumerate::PruneStats;
use super::NResult;

pub const MAGIC: &[u8] = b"SPEXCKPT1\n";

/// Work in progress on one order `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub(crate) struct Partial {
    pub n: usize,
    /// Edge count of the frontier level.
    pub edges: usize,
    /// Canonical graph6 strings of the frontier, not yet evaluated.
    pub frontier: Vec<String>,
    /// `(rho, residual, graph6)` of the current near-maximizers.
    pub leaders: Vec<(f64, f64, String)>,
    pub candidates: u64,
    pub prune: PruneStats,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub(crate) struct Checkpoint {
    /// Serialized search parameters the snapshot belongs to.
    pub fingerprint: String,
    pub done: Vec<NResult>,
    pub current: Option<Partial>,
}

impl Checkpoint {
    pub(crate) fn save(&self, path: &Path) -> Result<()> {
        let mut bytes = MAGIC.to_vec();
        bytes.extend(serde_json::to_vec(self)?);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, &bytes)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// `Ok(None)` when no checkpoint exists yet.
    pub(crate) fn load(path: &Path) -> Result<Option<Checkpoint>> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let body = bytes
            .strip_prefix(MAGIC)
            .ok_or_else(|| Error::Checkpoint(format!("{} lacks the SPEXCKPT1 header", path.display())))?;
        serde_json::from_slice(body)
            .map(Some)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}
