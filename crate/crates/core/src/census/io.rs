//! JSON cache records and CSV export of census tables.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CensusError, CensusMode, CensusTable};
use crate::field::{make_field, FieldSpec};
use crate::theory::Partition;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// On-disk form of a [`CensusTable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    pub m: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    pub counts: Vec<u64>,
    pub tool_version: String,
}

fn mode_from_tag(tag: &str, partition: Option<Vec<usize>>) -> Result<CensusMode, CensusError> {
    match (tag, partition) {
        ("all", None) => Ok(CensusMode::AllMonic),
        ("irr", None) => Ok(CensusMode::IrreducibleOnly),
        ("type", Some(parts)) => Ok(CensusMode::ByType(Partition::new(parts)?)),
        (tag, parts) => Err(CensusError::Format(format!("mode {tag:?} with partition {parts:?}"))),
    }
}

impl CensusTable {
    pub fn to_record(&self) -> CacheRecord {
        let fs = self.spec();
        CacheRecord {
            p: fs.p(),
            k: fs.k(),
            modulus: fs.modulus().to_vec(),
            m: self.degree(),
            mode: self.mode().tag().to_string(),
            partition: self.mode().partition().map(|l| l.parts().to_vec()),
            counts: self.counts().to_vec(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn from_record(record: CacheRecord) -> Result<Self, CensusError> {
        let spec = make_field(record.p as u64, record.k, Some(&record.modulus))?;
        let mode = mode_from_tag(&record.mode, record.partition)?;
        CensusTable::new(&spec, record.m, mode, record.counts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CensusError> {
        CensusTable::from_record(serde_json::from_str(text)?)
    }

    /// Writes the table into `dir` under its cache key.
    pub fn write_cache(&self, dir: &Path) -> Result<PathBuf, CensusError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(cache_file_name(self.spec(), self.degree(), self.mode()));
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, self.to_json())?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// A cached census for this key, if one exists and parses.
    pub fn read_cache(
        dir: &Path,
        spec: &Arc<FieldSpec>,
        m: usize,
        mode: &CensusMode,
    ) -> Result<Option<Self>, CensusError> {
        let path = dir.join(cache_file_name(spec, m, mode));
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let table = CensusTable::from_json(&text)?;
        if table.spec().as_ref() != spec.as_ref() || table.degree() != m || table.mode() != mode {
            return Err(CensusError::Format(format!("{} does not match its key", path.display())));
        }
        Ok(Some(table))
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join("_")
}

/// File name encoding the cache key `(p, k, modulus, m, mode, partition)`.
pub fn cache_file_name(spec: &FieldSpec, m: usize, mode: &CensusMode) -> String {
    let modulus = if spec.modulus().is_empty() { "none".to_string() } else { join(spec.modulus()) };
    let part = mode.partition().map(|l| format!("-{}", join(l.parts()))).unwrap_or_default();
    format!("disc-p{}-k{}-mod{}-m{}-{}{}.json", spec.p(), spec.k(), modulus, m, mode.tag(), part)
}

fn first_row(mode: &CensusMode) -> u32 {
    match mode {
        CensusMode::AllMonic => 0,
        _ => 1,
    }
}

/// CSV with one column per table and one row per discriminant. The tables
/// must share a field and mode; the `d = 0` row is omitted unless the mode
/// is all-monic.
pub fn render_csv(tables: &[CensusTable]) -> Result<String, CensusError> {
    let Some(first) = tables.first() else {
        return Err(CensusError::Empty);
    };
    if tables.iter().any(|t| t.spec() != first.spec() || t.mode().tag() != first.mode().tag()) {
        return Err(CensusError::Format("tables differ in field or mode".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["disc".to_string()];
    header.extend(tables.iter().map(|t| format!("deg{}", t.degree())));
    w.write_record(&header)?;
    for d in first_row(first.mode())..first.spec().q() {
        let mut row = vec![d.to_string()];
        row.extend(tables.iter().map(|t| t.count(d).to_string()));
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CensusError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

/// Inverse of [`render_csv`] for a known field and mode.
pub fn parse_csv(
    spec: &Arc<FieldSpec>,
    mode: &CensusMode,
    text: &str,
) -> Result<Vec<CensusTable>, CensusError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.get(0) != Some("disc") {
        return Err(CensusError::Format("first column must be disc".into()));
    }
    let degrees = header
        .iter()
        .skip(1)
        .map(|h| {
            h.strip_prefix("deg")
                .and_then(|m| m.parse::<usize>().ok())
                .ok_or_else(|| CensusError::Format(format!("bad column {h:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let q = spec.q() as usize;
    let mut columns = vec![vec![0u64; q]; degrees.len()];
    let mut expect = first_row(mode) as usize;
    for row in r.records() {
        let row = row?;
        let d: usize = row[0].parse().map_err(|_| CensusError::Format(format!("bad disc {:?}", &row[0])))?;
        if d != expect || d >= q {
            return Err(CensusError::Format(format!("unexpected row for disc {d}")));
        }
        expect += 1;
        for (col, cell) in columns.iter_mut().zip(row.iter().skip(1)) {
            col[d] = cell.parse().map_err(|_| CensusError::Format(format!("bad count {cell:?}")))?;
        }
    }
    if expect != q {
        return Err(CensusError::Format(format!("{} rows missing", q - expect)));
    }
    degrees
        .into_iter()
        .zip(columns)
        .map(|(m, counts)| CensusTable::new(spec, m, mode.clone(), counts))
        .collect()
}
