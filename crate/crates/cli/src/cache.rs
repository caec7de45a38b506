//! On-disk cache of constructed ambient fields.
//!
//! Files are keyed by a hash of the canonicalized defining polynomials and
//! written atomically (temp file + rename), so concurrent invocations can
//! share a directory. Loads re-verify every structural invariant; a corrupt
//! file triggers a warning and a recomputation.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use galois_core::poly::QPoly;
use galois_core::splitting::{splitting_field, AmbientGaloisField};
use galois_core::{Error, Result};
use sha2::{Digest, Sha256};

/// Canonical cache key: hash of the sorted squarefree-monic inputs.
pub fn cache_key(polys: &[QPoly]) -> String {
    let mut parts: Vec<String> = polys
        .iter()
        .map(|f| f.squarefree_part().coeff_strings().join(","))
        .collect();
    parts.sort();
    let mut hasher = Sha256::new();
    hasher.update(parts.join(";").as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, polys: &[QPoly]) -> PathBuf {
    dir.join(format!("{}.json", cache_key(polys)))
}

/// Loads the ambient from cache or constructs and stores it. A corrupt
/// cache entry is reported on stderr and silently recomputed.
pub fn get_ambient(
    polys: &[QPoly],
    cap: usize,
    cache_dir: Option<&Path>,
) -> Result<Arc<AmbientGaloisField>> {
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, polys);
        if path.exists() {
            match load(&path) {
                Ok(ambient) => {
                    if ambient.degree() > cap {
                        return Err(Error::DegreeCapExceeded {
                            needed: ambient.degree(),
                            cap,
                        });
                    }
                    return Ok(ambient);
                }
                Err(e) => {
                    eprintln!(
                        "warning: corrupt cache file {} ({e}); recomputing",
                        path.display()
                    );
                }
            }
        }
        let ambient = Arc::new(splitting_field(polys, cap)?);
        if let Err(e) = store(&path, &ambient) {
            eprintln!("warning: could not write cache file: {e}");
        }
        Ok(ambient)
    } else {
        Ok(Arc::new(splitting_field(polys, cap)?))
    }
}

fn load(path: &Path) -> Result<Arc<AmbientGaloisField>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read cache: {e}")))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad cache JSON: {e}")))?;
    Ok(Arc::new(AmbientGaloisField::from_json(&value)?))
}

fn store(path: &Path, ambient: &AmbientGaloisField) -> std::io::Result<()> {
    let dir = path.parent().expect("cache path has a directory");
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(serde_json::to_string(&ambient.to_json()).unwrap().as_bytes())?;
    tmp.persist(path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    #[test]
    fn distinct_inputs_distinct_keys() {
        let k1 = cache_key(&[p(&[-2, 0, 1])]);
        let k2 = cache_key(&[p(&[-3, 0, 1])]);
        assert_ne!(k1, k2);
        // order does not matter
        let k3 = cache_key(&[p(&[-2, 0, 1]), p(&[-3, 0, 1])]);
        let k4 = cache_key(&[p(&[-3, 0, 1]), p(&[-2, 0, 1])]);
        assert_eq!(k3, k4);
    }

    #[test]
    fn cold_warm_and_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let polys = vec![p(&[-2, 0, 1])];
        let a1 = get_ambient(&polys, 24, Some(dir.path())).unwrap();
        let path = cache_path(dir.path(), &polys);
        assert!(path.exists());
        let a2 = get_ambient(&polys, 24, Some(dir.path())).unwrap();
        assert_eq!(a1.to_json(), a2.to_json());
        // flip one byte in the middle of the file
        let mut bytes = std::fs::read(&path).unwrap();
        let mid = bytes.len() / 2;
        bytes[mid] = if bytes[mid] == b'1' { b'2' } else { b'1' };
        std::fs::write(&path, &bytes).unwrap();
        let a3 = get_ambient(&polys, 24, Some(dir.path())).unwrap();
        assert_eq!(a1.to_json(), a3.to_json());
    }
}
