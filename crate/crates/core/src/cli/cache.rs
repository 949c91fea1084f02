use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::exact::ExactInt;
use crate::TOOL_VERSION;

use super::output::ValueEntry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tau,
    Oracle,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Tau => "tau",
            Method::Oracle => "oracle",
            Method::Both => "both",
        }
    }
}

/// Persisted `H_0 ..= H_{n_max}` of one power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantTable {
    pub r: u32,
    pub method: Method,
    pub tool_version: String,
    /// `"exact"`, or `"truncated:<p>"` for the truncated series backend.
    pub precision: String,
    pub values: Vec<ValueEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt cache file {path}: {why}")]
    Corrupt { path: PathBuf, why: String },
}

impl DeterminantTable {
    pub fn new(r: u32, method: Method, precision: &str, values: &[ExactInt]) -> Self {
        Self {
            r,
            method,
            tool_version: TOOL_VERSION.to_string(),
            precision: precision.to_string(),
            values: values
                .iter()
                .enumerate()
                .map(|(n, h)| ValueEntry { n, h: h.to_string() })
                .collect(),
        }
    }

    /// The exact values, checking that the table is dense from 0.
    pub fn decode(&self) -> Result<Vec<ExactInt>, String> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if e.n != i {
                    return Err(format!("entry {i} has n = {}", e.n));
                }
                e.h.parse::<ExactInt>().map_err(|err| format!("H_{i}: {err}"))
            })
            .collect()
    }

    pub fn file_name(r: u32, method: Method, precision: &str) -> String {
        format!(
            "r{r}-{}-v{TOOL_VERSION}-{}.json",
            method.name(),
            precision.replace(':', "")
        )
    }
}

/// Directory of [`DeterminantTable`] files keyed by power, method, tool
/// version and precision policy.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, r: u32, method: Method, precision: &str) -> PathBuf {
        self.dir.join(DeterminantTable::file_name(r, method, precision))
    }

    /// `H_0 ..= H_{n_max}` if a stored table reaches that far.
    pub fn load(
        &self,
        r: u32,
        method: Method,
        precision: &str,
        n_max: usize,
    ) -> Result<Option<Vec<ExactInt>>, CacheError> {
        let path = self.path(r, method, precision);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let corrupt = |why: String| CacheError::Corrupt { path: path.clone(), why };
        let table: DeterminantTable =
            serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if table.r != r || table.method != method || table.precision != precision {
            return Err(corrupt("key fields do not match the file name".into()));
        }
        let mut values = table.decode().map_err(corrupt)?;
        if values.len() <= n_max {
            return Ok(None);
        }
        values.truncate(n_max + 1);
        Ok(Some(values))
    }

    /// Stores `values` unless a longer table is already present.
    pub fn store(&self, r: u32, method: Method, precision: &str, values: &[ExactInt]) -> Result<(), CacheError> {
        if values.is_empty() || self.load(r, method, precision, values.len() - 1)?.is_some() {
            return Ok(());
        }
        let path = self.path(r, method, precision);
        let io = |source| CacheError::Io { path: path.clone(), source };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let table = DeterminantTable::new(r, method, precision, values);
        let text = serde_json::to_string_pretty(&table).expect("plain data serializes");
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_prefix() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let v: Vec<ExactInt> = [1, 3, -4, -4, 0].map(ExactInt::from).to_vec();
        assert_eq!(cache.load(3, Method::Tau, "exact", 2).unwrap(), None);
        cache.store(3, Method::Tau, "exact", &v).unwrap();
        assert_eq!(cache.load(3, Method::Tau, "exact", 4).unwrap(), Some(v.clone()));
        assert_eq!(cache.load(3, Method::Tau, "exact", 2).unwrap(), Some(v[..3].to_vec()));
        assert_eq!(cache.load(3, Method::Tau, "exact", 5).unwrap(), None);
        assert_eq!(cache.load(3, Method::Oracle, "exact", 2).unwrap(), None);
    }

    #[test]
    fn shorter_table_does_not_replace_longer() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let v: Vec<ExactInt> = [1, 2, 3].map(ExactInt::from).to_vec();
        cache.store(2, Method::Oracle, "exact", &v).unwrap();
        cache.store(2, Method::Oracle, "exact", &v[..1]).unwrap();
        assert_eq!(cache.load(2, Method::Oracle, "exact", 2).unwrap(), Some(v));
    }

    #[test]
    fn corrupt_file_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let path = dir.path().join(DeterminantTable::file_name(5, Method::Tau, "exact"));
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(
            cache.load(5, Method::Tau, "exact", 1),
            Err(CacheError::Corrupt { .. })
        ));
    }
}
