//! On-disk cache of reduced bases keyed by a content hash of the input.
//!
//! Entry layout (`<key>.gb`, UTF-8, `\n` line endings):
//!
//! ```text
//! qsmooth-gb-cache 1
//! key <sha256 hex of the input block>
//! input <n>
//! <n lines: order, nvars, rank, then one generator per line>
//! basis <m>
//! <m lines: one basis element per line, components joined by " ; ">
//! checksum <sha256 hex of every preceding byte>
//! ```

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{GroebnerBasis, MonomialOrder, VectorPolynomial};
use crate::poly::{default_var_names, parse};

const MAGIC: &str = "qsmooth-gb-cache 1";
const QUARANTINE: &str = "quarantine";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt cache entry {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
}

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Canonical text of a Gröbner input and its hash.
#[derive(Debug, Clone)]
pub struct CacheKey {
    text: String,
    hash: String,
    rank: usize,
    nvars: usize,
}

impl CacheKey {
    pub fn new(gens: &[VectorPolynomial], order: &MonomialOrder) -> Self {
        let rank = gens[0].rank();
        let nvars = gens[0].nvars();
        let names = default_var_names(nvars);
        let mut lines = vec![
            format!("order {order}"),
            format!("nvars {nvars}"),
            format!("rank {rank}"),
        ];
        for g in gens {
            lines.push(vector_line(g, &names));
        }
        let text = lines.join("\n");
        let hash = sha_hex(text.as_bytes());
        CacheKey {
            text,
            hash,
            rank,
            nvars,
        }
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }
}

fn vector_line(v: &VectorPolynomial, names: &[String]) -> String {
    v.components()
        .iter()
        .map(|c| c.display(names).to_string())
        .collect::<Vec<_>>()
        .join(" ; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntryInfo {
    pub key: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub consistent: Vec<String>,
    /// `(file name, reason)` for entries moved to the quarantine directory.
    pub quarantined: Vec<(String, String)>,
}

struct ParsedEntry {
    key: String,
    input: Vec<String>,
    basis: Vec<String>,
}

#[derive(Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(GbCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry_path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.gb"))
    }

    pub fn store(&self, key: &CacheKey, gb: &GroebnerBasis) -> Result<(), CacheError> {
        let names = default_var_names(key.nvars);
        let input: Vec<&str> = key.text.lines().collect();
        let mut body = String::new();
        body.push_str(MAGIC);
        body.push('\n');
        body.push_str(&format!("key {}\n", key.hash));
        body.push_str(&format!("input {}\n", input.len()));
        for l in &input {
            body.push_str(l);
            body.push('\n');
        }
        body.push_str(&format!("basis {}\n", gb.len()));
        for g in gb.generators() {
            body.push_str(&vector_line(g, &names));
            body.push('\n');
        }
        let sum = sha_hex(body.as_bytes());
        body.push_str(&format!("checksum {sum}\n"));
        let tmp = self.dir.join(format!(".{}.tmp", key.hash));
        fs::write(&tmp, body)?;
        fs::rename(tmp, self.entry_path(&key.hash))?;
        Ok(())
    }

    fn parse_entry(path: &Path) -> Result<ParsedEntry, CacheError> {
        let corrupt = |reason: &str| CacheError::Corrupt {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let raw = fs::read(path)?;
        let text = String::from_utf8(raw).map_err(|_| corrupt("not UTF-8"))?;
        let body_end = text
            .rfind("checksum ")
            .ok_or_else(|| corrupt("missing checksum"))?;
        let (body, trailer) = text.split_at(body_end);
        let stated = trailer
            .trim_end()
            .strip_prefix("checksum ")
            .ok_or_else(|| corrupt("bad checksum line"))?;
        if sha_hex(body.as_bytes()) != stated {
            return Err(corrupt("checksum mismatch"));
        }
        let mut lines = body.lines();
        if lines.next() != Some(MAGIC) {
            return Err(corrupt("bad header"));
        }
        let key = lines
            .next()
            .and_then(|l| l.strip_prefix("key "))
            .ok_or_else(|| corrupt("missing key"))?
            .to_string();
        let count = |line: Option<&str>, tag: &str| -> Result<usize, CacheError> {
            line.and_then(|l| l.strip_prefix(tag))
                .and_then(|n| n.trim().parse().ok())
                .ok_or_else(|| corrupt("bad section header"))
        };
        let n_in = count(lines.next(), "input ")?;
        let input: Vec<String> = lines.by_ref().take(n_in).map(str::to_string).collect();
        if input.len() != n_in {
            return Err(corrupt("truncated input section"));
        }
        let n_basis = count(lines.next(), "basis ")?;
        let basis: Vec<String> = lines.by_ref().take(n_basis).map(str::to_string).collect();
        if basis.len() != n_basis {
            return Err(corrupt("truncated basis section"));
        }
        if sha_hex(input.join("\n").as_bytes()) != key {
            return Err(corrupt("key does not match the stored input"));
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        if stem != key {
            return Err(corrupt("file name does not match the key"));
        }
        Ok(ParsedEntry { key, input, basis })
    }

    /// Cached basis generators for `key`, if present and intact.
    pub fn load(&self, key: &CacheKey) -> Result<Option<Vec<VectorPolynomial>>, CacheError> {
        let path = self.entry_path(&key.hash);
        if !path.exists() {
            return Ok(None);
        }
        let entry = Self::parse_entry(&path)?;
        let corrupt = |reason: String| CacheError::Corrupt {
            path: path.clone(),
            reason,
        };
        if entry.input.join("\n") != key.text {
            return Err(corrupt("stored input differs from the request".into()));
        }
        let names = default_var_names(key.nvars);
        let mut out = Vec::with_capacity(entry.basis.len());
        for line in &entry.basis {
            let comps = line
                .split(" ; ")
                .map(|c| parse(c, &names))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| corrupt(format!("unparsable basis element: {e}")))?;
            if comps.len() != key.rank {
                return Err(corrupt("basis element has the wrong rank".into()));
            }
            out.push(VectorPolynomial::new(comps).map_err(|e| corrupt(e.to_string()))?);
        }
        Ok(Some(out))
    }

    fn entries(&self) -> Result<Vec<PathBuf>, CacheError> {
        let mut out = Vec::new();
        for e in fs::read_dir(&self.dir)? {
            let path = e?.path();
            if path.is_file() && path.extension().is_some_and(|x| x == "gb") {
                out.push(path);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn list(&self) -> Result<Vec<CacheEntryInfo>, CacheError> {
        self.entries()?
            .into_iter()
            .map(|p| {
                Ok(CacheEntryInfo {
                    key: p
                        .file_stem()
                        .and_then(|s| s.to_str())
                        .unwrap_or_default()
                        .to_string(),
                    bytes: fs::metadata(&p)?.len(),
                })
            })
            .collect()
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let entries = self.entries()?;
        for p in &entries {
            fs::remove_file(p)?;
        }
        Ok(entries.len())
    }

    /// Recomputes every hash; inconsistent entries move to `quarantine/`.
    pub fn verify(&self) -> Result<VerifyOutcome, CacheError> {
        let mut out = VerifyOutcome::default();
        for path in self.entries()? {
            let name = path
                .file_name()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            match Self::parse_entry(&path) {
                Ok(entry) => out.consistent.push(entry.key),
                Err(CacheError::Corrupt { reason, .. }) => {
                    let qdir = self.dir.join(QUARANTINE);
                    fs::create_dir_all(&qdir)?;
                    fs::rename(&path, qdir.join(&name))?;
                    out.quarantined.push((name, reason));
                }
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}
