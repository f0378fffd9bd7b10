//! Serializable chain bases and a content-addressed store for them.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ChainBasis, SparseVec};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::monomial::TermOrder;
use crate::semigroup::{GeneratorMatrix, SDegree};

type SparseRecord = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBasisRecord {
    pub dim: usize,
    pub num_faces: usize,
    pub boundary: Vec<SparseRecord>,
    pub preimages: Vec<SparseRecord>,
    pub homology: Vec<SparseRecord>,
}

impl ChainBasisRecord {
    pub fn from_basis<F: Field>(f: &F, b: &ChainBasis<F::Elem>) -> Self {
        let enc = |vs: &[SparseVec<F::Elem>]| -> Vec<SparseRecord> {
            vs.iter()
                .map(|v| v.entries().iter().map(|(i, x)| (*i, f.format(x))).collect())
                .collect()
        };
        ChainBasisRecord {
            dim: b.dim(),
            num_faces: b.num_faces(),
            boundary: enc(b.boundary_part()),
            preimages: enc(b.preimages()),
            homology: enc(b.homology_part()),
        }
    }

    pub fn into_basis<F: Field>(&self, f: &F) -> Result<ChainBasis<F::Elem>> {
        let dec = |vs: &[SparseRecord]| -> Result<Vec<SparseVec<F::Elem>>> {
            vs.iter()
                .map(|v| {
                    let pairs = v.iter().map(|(i, s)| Ok((*i, f.parse(s)?))).collect::<Result<Vec<_>>>()?;
                    Ok(SparseVec::from_pairs(f, pairs))
                })
                .collect()
        };
        ChainBasis::from_parts(
            f,
            self.dim,
            self.num_faces,
            dec(&self.boundary)?,
            dec(&self.preimages)?,
            dec(&self.homology)?,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Hex SHA-256 of the matrix, degree, dimension, term order and field.
pub fn cache_key(a: &GeneratorMatrix, m: &SDegree, j: usize, order: TermOrder, field: FieldKind) -> String {
    let mut h = Sha256::new();
    h.update(format!("dim={};", a.dim()));
    for g in a.generators() {
        h.update(format!("{g};"));
    }
    h.update(format!("m={m};j={j};order={order};field={field}"));
    hex::encode(h.finalize())
}

/// Write-once storage for serialized chain bases. The first stored value for
/// a key wins; later writes of the same key are ignored.
pub trait BasisStore: Send + Sync {
    fn load(&self, key: &str) -> Option<String>;
    fn store(&self, key: &str, value: &str);
}

#[derive(Debug, Default)]
pub struct MemoryStore {
    entries: Mutex<HashMap<String, String>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        MemoryStore::default()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl BasisStore for MemoryStore {
    fn load(&self, key: &str) -> Option<String> {
        self.entries.lock().expect("store lock").get(key).cloned()
    }

    fn store(&self, key: &str, value: &str) {
        self.entries
            .lock()
            .expect("store lock")
            .entry(key.to_string())
            .or_insert_with(|| value.to_string());
    }
}
