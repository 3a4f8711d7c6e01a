//! File formats: the JSON hypergroup table and group multiplication tables
//! as CSV index matrices.
//!
//! JSON layout:
//! `{"name": str, "size": int, "identity": int, "involution": [int],
//!   "tensor": [{"x": int, "y": int, "entries": [{"z": int, "p": float}]}]}`
//! Only rows with `y >= x` are required; symmetry fills the rest. The writer
//! emits floats with 17 significant digits so values round-trip bit-exactly.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::GroupTable;
use crate::scalar::Real;
use crate::table::{HypergroupTable, RawHypergroup};

#[derive(Debug, Serialize, Deserialize)]
struct FileEntry {
    z: usize,
    p: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct FileRow {
    x: usize,
    y: usize,
    entries: Vec<FileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct HypergroupFile {
    name: String,
    size: usize,
    identity: usize,
    involution: Vec<usize>,
    tensor: Vec<FileRow>,
}

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

/// Parses a hypergroup table from JSON text into unvalidated form.
pub fn read_hypergroup_str<T: Real>(text: &str) -> Result<RawHypergroup<T>> {
    let file: HypergroupFile =
        serde_json::from_str(text).map_err(|e| parse_err("hypergroup json", e.to_string()))?;
    let mut raw = RawHypergroup::new(file.size, file.identity, file.involution, file.name)?;
    let mut seen = vec![false; file.size * file.size];
    for (i, row) in file.tensor.iter().enumerate() {
        if row.x >= file.size {
            return Err(parse_err(
                &format!("tensor[{i}].x"),
                format!("{} out of range", row.x),
            ));
        }
        if row.y >= file.size {
            return Err(parse_err(
                &format!("tensor[{i}].y"),
                format!("{} out of range", row.y),
            ));
        }
        if seen[row.x * file.size + row.y] {
            return Err(parse_err(
                &format!("tensor[{i}]"),
                format!("row ({}, {}) given twice", row.x, row.y),
            ));
        }
        seen[row.x * file.size + row.y] = true;
        let entries: Vec<(usize, T)> = row
            .entries
            .iter()
            .enumerate()
            .map(|(j, e)| {
                if e.z >= file.size {
                    return Err(parse_err(
                        &format!("tensor[{i}].entries[{j}].z"),
                        format!("{} out of range", e.z),
                    ));
                }
                let p = T::from_f64(e.p).ok_or_else(|| {
                    parse_err(
                        &format!("tensor[{i}].entries[{j}].p"),
                        format!("{} not representable", e.p),
                    )
                })?;
                Ok((e.z, p))
            })
            .collect::<Result<_>>()?;
        raw.set_row(row.x, row.y, entries)?;
    }
    raw.mirror_missing_rows();
    Ok(raw)
}

/// Reads a hypergroup JSON file into unvalidated form.
pub fn read_hypergroup<T: Real>(path: impl AsRef<Path>) -> Result<RawHypergroup<T>> {
    let text = std::fs::read_to_string(path)?;
    read_hypergroup_str(&text)
}

/// serde_json formatter that prints floats with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        write!(writer, "{value:.8e}")
    }
}

/// Serializes a table to JSON text; only `y >= x` rows are written.
pub fn write_hypergroup_str<T: Real>(table: &HypergroupTable<T>) -> String {
    let n = table.size();
    let mut tensor = Vec::with_capacity(n * (n + 1) / 2);
    for x in 0..n {
        for y in x..n {
            let entries = table
                .row(x, y)
                .iter()
                .map(|&(z, p)| FileEntry {
                    z,
                    p: p.to_f64().expect("scalar fits f64"),
                })
                .collect();
            tensor.push(FileRow { x, y, entries });
        }
    }
    let file = HypergroupFile {
        name: table.label().to_string(),
        size: n,
        identity: table.identity(),
        involution: (0..n).map(|x| table.involution(x)).collect(),
        tensor,
    };
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    file.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("json is utf-8")
}

/// Writes a table as a JSON file.
pub fn write_hypergroup<T: Real>(table: &HypergroupTable<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_hypergroup_str(table))?;
    Ok(())
}

/// Reads an `n x n` multiplication table from CSV (one row per line, comma
/// separated element indices) and validates it as a group.
pub fn read_group_csv(path: impl AsRef<Path>) -> Result<GroupTable> {
    let text = std::fs::read_to_string(&path)?;
    let name = path
        .as_ref()
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".into());
    read_group_csv_str(&text, name)
}

/// Parses a group CSV from text.
pub fn read_group_csv_str(text: &str, name: impl Into<String>) -> Result<GroupTable> {
    let rows: Vec<Vec<usize>> = text
        .lines()
        .filter(|line| !line.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split(',')
                .map(|tok| {
                    tok.trim().parse::<usize>().map_err(|e| {
                        parse_err(&format!("row {i}"), format!("`{}`: {e}", tok.trim()))
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 {
        return Err(parse_err("table", "no rows"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(parse_err(
                &format!("row {i}"),
                format!("has {} columns, expected {n}", row.len()),
            ));
        }
    }
    GroupTable::new(n, rows.into_iter().flatten().collect(), name)
}
