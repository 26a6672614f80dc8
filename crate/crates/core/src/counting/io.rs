use std::fs;
use std::io::Write;
use std::path::Path;

use rug::Integer;
use serde::{Deserialize, Serialize};

use super::{CountError, CountTable};
use crate::family::Family;

pub const TABLE_FORMAT_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct TableFile {
    version: u64,
    family: Family,
    max_size: usize,
    rows: Vec<Vec<String>>,
}

pub fn save_table(t: &CountTable, path: impl AsRef<Path>) -> Result<(), CountError> {
    let file = TableFile {
        version: TABLE_FORMAT_VERSION,
        family: t.family(),
        max_size: t.max_size(),
        rows: t.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
    };
    let text = serde_json::to_string(&file).map_err(|e| CountError::Corrupt(e.to_string()))?;
    let path = path.as_ref();
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_table(path: impl AsRef<Path>) -> Result<CountTable, CountError> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CountError::Corrupt(e.to_string()))?;
    match value.get("version").and_then(|v| v.as_u64()) {
        Some(TABLE_FORMAT_VERSION) => {}
        Some(found) => return Err(CountError::VersionMismatch { found, expected: TABLE_FORMAT_VERSION }),
        None => return Err(CountError::Corrupt("missing format version".into())),
    }
    let file: TableFile = serde_json::from_value(value).map_err(|e| CountError::Corrupt(e.to_string()))?;
    let rows = file
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| match Integer::from_str_radix(s, 10) {
                    Ok(v) if v >= 0 => Ok(v),
                    _ => Err(CountError::Corrupt(format!("bad count `{s}`"))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    CountTable::from_parts(file.family, file.max_size, rows)
}

/// Writes the family counts as CSV with header `family,params,n,count`.
pub fn write_csv(t: &CountTable, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "family,params,n,count")?;
    let params = t.family().param().map(|p| p.to_string()).unwrap_or_default();
    for (n, c) in t.closed().iter().enumerate().skip(1) {
        writeln!(out, "{},{},{},{}", t.family().name(), params, n, c)?;
    }
    Ok(())
}
