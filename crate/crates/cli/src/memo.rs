//! On-disk memo of invariant-space dimensions keyed by
//! (descriptor, field, degree). Every run cross-checks freshly computed
//! dimensions against what earlier runs stored, then records new ones.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use sepdeg_core::{FieldSpec, ModuleDescriptor};

use crate::error::CliError;

pub const ENV_VAR: &str = "SEPDEG_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    descriptor: ModuleDescriptor,
    field: FieldSpec,
    dims: BTreeMap<u32, usize>,
}

pub struct DimMemo {
    dir: PathBuf,
}

impl DimMemo {
    pub fn from_env() -> Option<Self> {
        std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(|d| DimMemo { dir: d.into() })
    }

    fn path(&self, desc: &ModuleDescriptor, field: &FieldSpec) -> PathBuf {
        let field_json = serde_json::to_string(field).expect("field serializes");
        let digest = Sha256::digest(format!("{}\n{}", desc.to_json(), field_json));
        let hex: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{hex}.json"))
    }

    /// Compares `dims` (pairs of degree and dimension) with the stored
    /// values and merges them in.
    pub fn check_and_record(
        &self,
        desc: &ModuleDescriptor,
        field: &FieldSpec,
        dims: impl IntoIterator<Item = (u32, usize)>,
    ) -> Result<(), CliError> {
        let path = self.path(desc, field);
        let mut entry = match fs::read_to_string(&path) {
            Ok(text) => match serde_json::from_str::<Entry>(&text) {
                Ok(e) if &e.descriptor == desc && &e.field == field => e,
                // unreadable or colliding files are replaced
                _ => Entry { descriptor: desc.clone(), field: field.clone(), dims: BTreeMap::new() },
            },
            Err(_) => Entry { descriptor: desc.clone(), field: field.clone(), dims: BTreeMap::new() },
        };
        let mut changed = false;
        for (d, dim) in dims {
            match entry.dims.get(&d) {
                Some(&old) if old != dim => {
                    return Err(CliError::Memo(format!(
                        "degree {d}: computed {dim}, memo at {} has {old}",
                        path.display()
                    )))
                }
                Some(_) => {}
                None => {
                    entry.dims.insert(d, dim);
                    changed = true;
                }
            }
        }
        if changed {
            let io = |source| CliError::Output { path: path.display().to_string(), source };
            fs::create_dir_all(&self.dir).map_err(io)?;
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            let body = serde_json::to_string_pretty(&entry).expect("memo serializes");
            fs::write(&tmp, body).map_err(io)?;
            fs::rename(&tmp, &path).map_err(io)?;
        }
        Ok(())
    }
}

/// Degrees `1..` paired with a per-degree dimension list.
pub fn from_one(dims: &[usize]) -> impl Iterator<Item = (u32, usize)> + '_ {
    dims.iter().enumerate().map(|(i, &d)| (i as u32 + 1, d))
}
