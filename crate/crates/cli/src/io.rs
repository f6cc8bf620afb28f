use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use simpfib::format::{builtin, ComplexJson, ComplexRef, MapJson, Resolver};
use simpfib::{Complex, SimplicialMap};

/// Reads a JSON file; parse errors carry the path, line and column.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| anyhow!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
}

/// Resolver for references made from inside `path`.
pub fn resolver_for(path: &Path) -> Resolver {
    Resolver::new(dir_of(path))
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// A complex given as a builtin name (`C3`, `C3xE1`) or a JSON file.
pub fn complex(arg: &str) -> Result<Arc<Complex>> {
    if let Some(k) = builtin(arg) {
        return Ok(k);
    }
    let j: ComplexJson = load(Path::new(arg))?;
    Ok(Arc::new(
        j.build()
            .with_context(|| format!("{arg}: invalid complex"))?,
    ))
}

pub fn map(path: &Path) -> Result<SimplicialMap> {
    let j: MapJson = load(path)?;
    resolver_for(path)
        .map(&j)
        .with_context(|| format!("{}: invalid map", path.display()))
}

pub fn complex_ref(resolver: &mut Resolver, r: &ComplexRef) -> Result<Arc<Complex>> {
    Ok(resolver.complex(r)?)
}
