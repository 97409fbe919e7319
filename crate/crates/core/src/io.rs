//! Field exchange format.
//!
//! JSON: `{"dims": [n0,n1,n2,n3], "spacing": [d0,d1,d2,d3], "M": m,
//! "components": c, "values": [re, im, re, im, ...]}` with sites in
//! row-major order and components innermost. The binary variant stores the
//! same header (without `values`) as a JSON sidecar and the `[re, im]`
//! pairs as little-endian `f64`.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, MomentumLatticeField, PositionLatticeField};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub dims: [usize; 4],
    pub spacing: [f64; 4],
    #[serde(rename = "M")]
    pub mass: f64,
    pub components: usize,
}

impl FieldHeader {
    pub fn of(lattice: &Lattice, components: usize) -> Self {
        FieldHeader {
            dims: lattice.dims,
            spacing: lattice.spacing,
            mass: lattice.mass,
            components,
        }
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.dims, self.spacing, self.mass)
    }

    fn expected_len(&self) -> Result<usize> {
        let lat = self.lattice()?;
        if self.components == 0 {
            return Err(Error::Format("components must be >= 1".into()));
        }
        lat.num_sites()
            .checked_mul(self.components)
            .ok_or_else(|| Error::Format("field too large".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldFile {
    #[serde(flatten)]
    pub header: FieldHeader,
    pub values: Vec<f64>,
}

impl FieldFile {
    pub fn from_field(f: &MomentumLatticeField) -> Self {
        FieldFile {
            header: FieldHeader::of(f.lattice(), f.components()),
            values: flatten(f.values()),
        }
    }

    pub fn from_position(f: &PositionLatticeField) -> Self {
        FieldFile {
            header: FieldHeader::of(f.lattice(), f.components()),
            values: flatten(f.values()),
        }
    }

    fn complex_values(&self) -> Result<Vec<Complex64>> {
        let n = self.header.expected_len()?;
        if self.values.len() != 2 * n {
            return Err(Error::Format(format!(
                "expected {} reals for {n} complex values, got {}",
                2 * n,
                self.values.len()
            )));
        }
        Ok(self
            .values
            .chunks_exact(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect())
    }

    pub fn into_field(self) -> Result<MomentumLatticeField> {
        let values = self.complex_values()?;
        MomentumLatticeField::from_values(self.header.lattice()?, self.header.components, values)
    }

    pub fn into_position(self) -> Result<PositionLatticeField> {
        let values = self.complex_values()?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        PositionLatticeField::from_values(self.header.lattice()?, self.header.components, values)
    }
}

fn flatten(values: &[Complex64]) -> Vec<f64> {
    values.iter().flat_map(|v| [v.re, v.im]).collect()
}

pub fn to_json_string(f: &MomentumLatticeField) -> Result<String> {
    Ok(serde_json::to_string(&FieldFile::from_field(f))?)
}

pub fn from_json_str(s: &str) -> Result<MomentumLatticeField> {
    if s.trim().is_empty() {
        return Err(Error::Format("empty field payload".into()));
    }
    serde_json::from_str::<FieldFile>(s)?.into_field()
}

pub fn read_json(mut r: impl Read) -> Result<MomentumLatticeField> {
    let mut s = String::new();
    r.read_to_string(&mut s)?;
    from_json_str(&s)
}

pub fn write_json(mut w: impl Write, f: &MomentumLatticeField) -> Result<()> {
    serde_json::to_writer(&mut w, &FieldFile::from_field(f))?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn read_json_file(path: impl AsRef<Path>) -> Result<MomentumLatticeField> {
    read_json(std::fs::File::open(path)?)
}

pub fn write_json_file(path: impl AsRef<Path>, f: &MomentumLatticeField) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_json(std::io::BufWriter::new(file), f)
}

/// Writes the header sidecar and the little-endian payload.
pub fn write_binary(header: impl AsRef<Path>, payload: impl AsRef<Path>, f: &MomentumLatticeField) -> Result<()> {
    let h = FieldHeader::of(f.lattice(), f.components());
    std::fs::write(header, serde_json::to_vec(&h)?)?;
    let bytes: Vec<u8> = flatten(f.values()).iter().flat_map(|x| x.to_le_bytes()).collect();
    std::fs::write(payload, bytes)?;
    Ok(())
}

pub fn read_binary(header: impl AsRef<Path>, payload: impl AsRef<Path>) -> Result<MomentumLatticeField> {
    let h: FieldHeader = serde_json::from_slice(&std::fs::read(header)?)?;
    let bytes = std::fs::read(payload)?;
    if bytes.len() % 8 != 0 {
        return Err(Error::Format(format!(
            "payload length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    FieldFile { header: h, values }.into_field()
}
