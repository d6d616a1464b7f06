//! Binary embedding files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! bytes 0..4    magic "EMBF"
//! bytes 4..8    u32 version (1)
//! bytes 8..12   u32 dimension
//! bytes 12..20  u64 row count
//! then          count * dimension f32 values, row-major
//! ```
//!
//! Document ids live in a sidecar text file, one per line, in row order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{EmbeddingIndex, RetrievalError};

pub const INDEX_MAGIC: [u8; 4] = *b"EMBF";
pub const INDEX_VERSION: u32 = 1;

pub fn write_vectors<'a>(
    mut out: impl Write,
    dimension: usize,
    rows: impl ExactSizeIterator<Item = &'a [f32]>,
) -> Result<(), RetrievalError> {
    let dim = u32::try_from(dimension)
        .map_err(|_| RetrievalError::Format(format!("dimension {dimension} too large")))?;
    out.write_all(&INDEX_MAGIC)?;
    out.write_all(&INDEX_VERSION.to_le_bytes())?;
    out.write_all(&dim.to_le_bytes())?;
    out.write_all(&(rows.len() as u64).to_le_bytes())?;
    for row in rows {
        if row.len() != dimension {
            return Err(RetrievalError::DimensionMismatch {
                expected: dimension,
                found: row.len(),
            });
        }
        for x in row {
            out.write_all(&x.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

fn read_array<const N: usize>(input: &mut impl Read, what: &str) -> Result<[u8; N], RetrievalError> {
    let mut buf = [0u8; N];
    input
        .read_exact(&mut buf)
        .map_err(|_| RetrievalError::Format(format!("truncated {what}")))?;
    Ok(buf)
}

/// Reads `(dimension, rows)`, rejecting bad headers, short or overlong
/// payloads and non-finite values.
pub fn read_vectors(mut input: impl Read) -> Result<(usize, Vec<Vec<f32>>), RetrievalError> {
    let magic: [u8; 4] = read_array(&mut input, "magic")?;
    if magic != INDEX_MAGIC {
        return Err(RetrievalError::Format(format!("bad magic {magic:?}")));
    }
    let version = u32::from_le_bytes(read_array(&mut input, "version")?);
    if version != INDEX_VERSION {
        return Err(RetrievalError::Format(format!("unsupported version {version}")));
    }
    let dimension = u32::from_le_bytes(read_array(&mut input, "dimension")?) as usize;
    let count = u64::from_le_bytes(read_array(&mut input, "count")?);
    if dimension == 0 && count > 0 {
        return Err(RetrievalError::Format("zero dimension".into()));
    }
    let mut rows = Vec::with_capacity(count.min(1 << 16) as usize);
    for r in 0..count {
        let mut row = Vec::with_capacity(dimension);
        for _ in 0..dimension {
            let x = f32::from_le_bytes(read_array(&mut input, &format!("row {r}"))?);
            if !x.is_finite() {
                return Err(RetrievalError::NonFinite(format!("row {r}")));
            }
            row.push(x);
        }
        rows.push(row);
    }
    let mut rest = [0u8; 1];
    if input.read(&mut rest)? != 0 {
        return Err(RetrievalError::Format(format!(
            "trailing bytes after {count} rows"
        )));
    }
    Ok((dimension, rows))
}

pub fn read_ids(input: impl BufRead) -> Result<Vec<String>, RetrievalError> {
    Ok(input.lines().collect::<Result<Vec<_>, _>>()?)
}

pub fn write_ids<'a>(
    mut out: impl Write,
    ids: impl IntoIterator<Item = &'a str>,
) -> Result<(), RetrievalError> {
    for id in ids {
        if id.contains('\n') {
            return Err(RetrievalError::Format(format!("id {id:?} contains a newline")));
        }
        writeln!(out, "{id}")?;
    }
    out.flush()?;
    Ok(())
}

impl EmbeddingIndex {
    pub fn load(
        vectors: impl AsRef<Path>,
        ids: impl AsRef<Path>,
    ) -> Result<Self, RetrievalError> {
        let (dimension, rows) = read_vectors(BufReader::new(File::open(vectors)?))?;
        let ids = read_ids(BufReader::new(File::open(ids)?))?;
        if ids.len() != rows.len() {
            return Err(RetrievalError::Format(format!(
                "{} ids for {} vectors",
                ids.len(),
                rows.len()
            )));
        }
        let index = Self::build(ids.into_iter().zip(rows))?;
        debug_assert!(index.is_empty() || index.dimension() == dimension);
        Ok(index)
    }

    pub fn save(
        &self,
        vectors: impl AsRef<Path>,
        ids: impl AsRef<Path>,
    ) -> Result<(), RetrievalError> {
        write_vectors(
            BufWriter::new(File::create(vectors)?),
            self.dimension(),
            (0..self.len()).map(|i| self.vector(i)),
        )?;
        write_ids(
            BufWriter::new(File::create(ids)?),
            self.ids().iter().map(String::as_str),
        )
    }
}
