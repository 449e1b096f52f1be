//! Binary field checkpoints.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! b"CCNV"                     magic
//! u32                         format version (1)
//! u32                         grid n
//! u32                         field count F
//! F × { u32 len, len bytes ASCII name, n·n f64 samples, row-major }
//! u32                         scalar count S
//! S × { u32 len, len bytes ASCII name, f64 value }
//! ```
//!
//! Row-major means sample `(i1, i2)` is at position `i1·n + i2`, the same
//! layout as [`RealField::values`].

use std::io::{Read, Write};

use super::grid::GridSpec;
use super::spectral::RealField;
use crate::error::{Error, Result};

pub const CHECKPOINT_MAGIC: &[u8; 4] = b"CCNV";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub n: usize,
    pub fields: Vec<(String, RealField)>,
    pub scalars: Vec<(String, f64)>,
}

fn write_name(w: &mut impl Write, name: &str) -> Result<()> {
    if !name.is_ascii() {
        return Err(Error::Checkpoint(format!("name `{name}` is not ASCII")));
    }
    w.write_all(&(name.len() as u32).to_le_bytes())?;
    w.write_all(name.as_bytes())?;
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

fn read_name(r: &mut impl Read) -> Result<String> {
    let len = read_u32(r)? as usize;
    if len > 4096 {
        return Err(Error::Checkpoint(format!("name length {len} too large")));
    }
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf)
        .ok()
        .filter(|s| s.is_ascii())
        .ok_or_else(|| Error::Checkpoint("non-ASCII name".into()))
}

impl Checkpoint {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            fields: Vec::new(),
            scalars: Vec::new(),
        }
    }

    pub fn field(&self, name: &str) -> Option<&RealField> {
        self.fields.iter().find(|(k, _)| k == name).map(|(_, f)| f)
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.scalars.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(CHECKPOINT_MAGIC)?;
        w.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&(self.fields.len() as u32).to_le_bytes())?;
        for (name, field) in &self.fields {
            if field.grid().n() != self.n {
                return Err(Error::Checkpoint(format!("field `{name}` has the wrong grid")));
            }
            write_name(w, name)?;
            let mut bytes = Vec::with_capacity(8 * field.values().len());
            for v in field.values() {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&bytes)?;
        }
        w.write_all(&(self.scalars.len() as u32).to_le_bytes())?;
        for (name, v) in &self.scalars {
            write_name(w, name)?;
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CHECKPOINT_MAGIC {
            return Err(Error::Checkpoint("bad magic".into()));
        }
        let version = read_u32(r)?;
        if version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let n = read_u32(r)? as usize;
        let grid = GridSpec::new(n).map_err(|e| Error::Checkpoint(e.to_string()))?;
        let count = read_u32(r)? as usize;
        let mut fields = Vec::with_capacity(count);
        let mut buf = vec![0u8; 8 * n * n];
        for _ in 0..count {
            let name = read_name(r)?;
            r.read_exact(&mut buf)?;
            let values = buf
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
                .collect();
            fields.push((name, RealField::new(grid, values)?));
        }
        let mut scalars = Vec::new();
        // Files written without a scalar section end right after the fields.
        let mut cnt = [0u8; 4];
        match r.read_exact(&mut cnt) {
            Ok(()) => {
                for _ in 0..u32::from_le_bytes(cnt) {
                    let name = read_name(r)?;
                    scalars.push((name, read_f64(r)?));
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => {}
            Err(e) => return Err(e.into()),
        }
        Ok(Self { n, fields, scalars })
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::read_from(&mut r)
    }
}
