//! Embedded library of known networks and depth bounds. The networks live as
//! JSON data files with checksums in an index, so a transcription fix touches
//! exactly one file; entries are re-validated against their claimed shape on
//! every load.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hash::fnv1a64;
use crate::net::ComparatorNetwork;

static INDEX: &str = include_str!("../data/index.json");

static FILES: &[(&str, &str)] = &[
    ("s4d3.json", include_str!("../data/s4d3.json")),
    ("s17d10-left.json", include_str!("../data/s17d10-left.json")),
    ("s17d10-right.json", include_str!("../data/s17d10-right.json")),
    ("s20d11.json", include_str!("../data/s20d11.json")),
    ("green2.json", include_str!("../data/green2.json")),
    ("green4.json", include_str!("../data/green4.json")),
    ("green8.json", include_str!("../data/green8.json")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    /// A full sorting network; exhaustive verification must pass.
    Sorting,
    /// A prefix (e.g. a green filter); it does not sort on its own.
    Prefix,
}

#[derive(Debug, Clone, Deserialize)]
struct IndexRow {
    id: String,
    file: String,
    kind: EntryKind,
    channels: usize,
    depth: usize,
    fnv64: String,
    provenance: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub network: ComparatorNetwork,
    pub claimed_channels: usize,
    pub claimed_depth: usize,
    pub kind: EntryKind,
    pub provenance: String,
}

fn index() -> Result<Vec<IndexRow>> {
    Ok(serde_json::from_str(INDEX)?)
}

/// All catalog ids, in index order.
pub fn list() -> Vec<String> {
    index()
        .expect("embedded index must parse")
        .into_iter()
        .map(|row| row.id)
        .collect()
}

pub fn get(id: &str) -> Result<CatalogEntry> {
    let row = index()?
        .into_iter()
        .find(|row| row.id == id)
        .ok_or_else(|| Error::UnknownCatalogId(id.to_string()))?;
    let content = FILES
        .iter()
        .find(|(name, _)| *name == row.file)
        .map(|(_, content)| *content)
        .ok_or_else(|| Error::UnknownCatalogId(row.file.clone()))?;
    if format!("{:016x}", fnv1a64(content.as_bytes())) != row.fnv64 {
        return Err(Error::CatalogChecksum { id: id.to_string() });
    }
    let network = ComparatorNetwork::from_json(content)?;
    if network.channels() != row.channels || network.depth() != row.depth {
        return Err(Error::BadDocument(format!(
            "catalog entry `{id}` claims {}x{} but the data is {}x{}",
            row.channels,
            row.depth,
            network.channels(),
            network.depth()
        )));
    }
    Ok(CatalogEntry {
        id: row.id,
        network,
        claimed_channels: row.channels,
        claimed_depth: row.depth,
        kind: row.kind,
        provenance: row.provenance,
    })
}

/// Best known bounds on the minimal depth of a sorting network, per channel
/// count `1..=20`. Depth is settled (lower equals upper) everywhere except
/// `n` in 18..=20.
pub struct BoundsTable {
    lower: [usize; 20],
    upper: [usize; 20],
}

pub const BOUNDS: BoundsTable = BoundsTable {
    lower: [0, 1, 3, 3, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 9, 9, 10, 10, 10, 10],
    upper: [0, 1, 3, 3, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 9, 9, 10, 11, 11, 11],
};

impl BoundsTable {
    pub fn lower(&self, n: usize) -> Result<usize> {
        if !(1..=20).contains(&n) {
            return Err(Error::BoundsRange(n));
        }
        Ok(self.lower[n - 1])
    }

    pub fn upper(&self, n: usize) -> Result<usize> {
        if !(1..=20).contains(&n) {
            return Err(Error::BoundsRange(n));
        }
        Ok(self.upper[n - 1])
    }
}

/// `(lower, upper)` bound pair for `n` channels.
pub fn bounds(n: usize) -> Result<(usize, usize)> {
    Ok((BOUNDS.lower(n)?, BOUNDS.upper(n)?))
}
