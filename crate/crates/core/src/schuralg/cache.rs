//! Binary cache of structure constants: magic `SCHK1`, then `n, d, p, dim`
//! as little-endian `u32`, then records `(a, b, c: u32, coef: u16)`.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::Algebra;
use crate::error::{Error, Result};

const MAGIC: &[u8; 5] = b"SCHK1";

/// `$SCHURKIT_CACHE`, falling back to `./.schurkit-cache`.
pub fn cache_dir_from_env() -> PathBuf {
    std::env::var_os("SCHURKIT_CACHE").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".schurkit-cache"))
}

pub(crate) fn cache_path(dir: &Path, n: usize, d: usize, p: u32) -> PathBuf {
    dir.join(format!("schur-n{n}-d{d}-p{p}.bin"))
}

pub fn write_cache(path: &Path, n: usize, d: usize, p: u32, alg: &Algebra) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        w.write_all(MAGIC)?;
        for x in [n as u32, d as u32, p, alg.dim() as u32] {
            w.write_all(&x.to_le_bytes())?;
        }
        for (a, b, c, z) in alg.triples() {
            w.write_all(&a.to_le_bytes())?;
            w.write_all(&b.to_le_bytes())?;
            w.write_all(&c.to_le_bytes())?;
            w.write_all(&(z as u16).to_le_bytes())?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_cache(path: &Path, n: usize, d: usize, p: u32, dim: usize) -> Result<Vec<(u32, u32, u32, u32)>> {
    let bytes = fs::read(path)?;
    if bytes.len() < 21 || &bytes[..5] != MAGIC {
        return Err(Error::Cache(format!("{} is not a cache file", path.display())));
    }
    let word = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    if [word(5), word(9), word(13), word(17)] != [n as u32, d as u32, p, dim as u32] {
        return Err(Error::Cache("header does not match requested algebra".into()));
    }
    let body = &bytes[21..];
    if body.len() % 14 != 0 {
        return Err(Error::Cache("truncated record".into()));
    }
    let mut out = Vec::with_capacity(body.len() / 14);
    for r in body.chunks_exact(14) {
        let a = u32::from_le_bytes(r[0..4].try_into().unwrap());
        let b = u32::from_le_bytes(r[4..8].try_into().unwrap());
        let c = u32::from_le_bytes(r[8..12].try_into().unwrap());
        let z = u16::from_le_bytes(r[12..14].try_into().unwrap()) as u32;
        if a as usize >= dim || b as usize >= dim || c as usize >= dim || z >= p {
            return Err(Error::Cache("record out of range".into()));
        }
        out.push((a, b, c, z));
    }
    Ok(out)
}
