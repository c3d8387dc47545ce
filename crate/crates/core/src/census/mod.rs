//! Exhaustive discriminant censuses of monic polynomials over a finite field.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::poly::raw::{self, Workspace};
use crate::poly::{Poly, PolyError};
use crate::theory::{partitions, Partition, TheoryError};

pub(crate) mod driver;
mod io;
mod verify;

pub use io::{cache_file_name, parse_csv, render_csv, CacheRecord, TOOL_VERSION};
pub use verify::{
    check_type_constraints, is_equally_distributed, support_set, verify_mu_sums,
    verify_square_balance, verify_stickelberger, BalanceReport, Distribution, MuSumsReport,
    StickelbergerReport, TypeConstraints,
};

use driver::{add_counts, drive, Enumeration};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("census degree must be at least 1")]
    Degree,
    #[error("verification needs degree at least 2 (got {0})")]
    SmallDegree(usize),
    #[error("partition {partition} is not a partition of {m}")]
    PartitionMismatch { partition: Partition, m: usize },
    #[error("{0} requires odd q")]
    EvenOrder(&'static str),
    #[error("{0} is not defined for an all-monic census")]
    AllMonicMode(&'static str),
    #[error("{0} requires an all-monic census")]
    NotAllMonic(&'static str),
    #[error("the census is empty")]
    Empty,
    #[error("malformed census data: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which monic polynomials a census counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CensusMode {
    AllMonic,
    IrreducibleOnly,
    /// Squarefree polynomials of the given factorization type.
    ByType(Partition),
}

impl CensusMode {
    /// Short tag used in cache files: `all`, `irr` or `type`.
    pub fn tag(&self) -> &'static str {
        match self {
            CensusMode::AllMonic => "all",
            CensusMode::IrreducibleOnly => "irr",
            CensusMode::ByType(_) => "type",
        }
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            CensusMode::ByType(l) => Some(l),
            _ => None,
        }
    }

    /// Number of irreducible factors of every counted polynomial, if fixed.
    pub fn factor_count(&self) -> Option<usize> {
        match self {
            CensusMode::AllMonic => None,
            CensusMode::IrreducibleOnly => Some(1),
            CensusMode::ByType(l) => Some(l.len()),
        }
    }
}

impl fmt::Display for CensusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusMode::AllMonic => write!(f, "all monic"),
            CensusMode::IrreducibleOnly => write!(f, "irreducible"),
            CensusMode::ByType(l) => write!(f, "type {l}"),
        }
    }
}

/// Exact counts of monic degree-`m` polynomials per discriminant encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    spec: Arc<FieldSpec>,
    degree: usize,
    mode: CensusMode,
    counts: Vec<u64>,
    total: u64,
}

impl CensusTable {
    pub fn new(
        spec: &Arc<FieldSpec>,
        degree: usize,
        mode: CensusMode,
        counts: Vec<u64>,
    ) -> Result<Self, CensusError> {
        if degree < 1 {
            return Err(CensusError::Degree);
        }
        check_mode(&mode, degree)?;
        if counts.len() != spec.q() as usize {
            return Err(CensusError::Format(format!(
                "expected {} counts, got {}",
                spec.q(),
                counts.len()
            )));
        }
        let total = counts.iter().sum();
        Ok(CensusTable { spec: spec.clone(), degree, mode, counts, total })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> &CensusMode {
        &self.mode
    }

    /// Counts indexed by discriminant encoding `0..q`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, disc: u32) -> u64 {
        self.counts[disc as usize]
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

fn check_mode(mode: &CensusMode, m: usize) -> Result<(), CensusError> {
    match mode {
        CensusMode::ByType(l) if l.size() != m => {
            Err(CensusError::PartitionMismatch { partition: l.clone(), m })
        }
        _ => Ok(()),
    }
}

/// Knobs for running a census.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    /// Enumerate one representative per translation orbit when `p ∤ m`.
    pub reduction: bool,
    pub workers: usize,
    /// Report progress on stderr every 10^7 polynomials.
    pub progress: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { reduction: true, workers: default_workers(), progress: false }
    }
}

/// The machine's available parallelism, or 1.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn enumeration(spec: &FieldSpec, m: usize, reduction: bool) -> Enumeration {
    let reduced = reduction && m >= 2 && !m.is_multiple_of(spec.p() as usize);
    Enumeration { q: spec.q(), m, reduced }
}

/// Whether a root scan is cheaper than going straight to Rabin's test.
fn root_filter_pays(q: u32, m: usize) -> bool {
    m >= 2 && (q as usize) <= m * m
}

/// Exact census of all `q^m` monic polynomials of degree `m`.
pub fn census(
    spec: &Arc<FieldSpec>,
    m: usize,
    mode: &CensusMode,
    reduction: bool,
    workers: usize,
) -> Result<CensusTable, CensusError> {
    run(spec, m, mode, Settings { reduction, workers, progress: false })
}

pub fn run(
    spec: &Arc<FieldSpec>,
    m: usize,
    mode: &CensusMode,
    settings: Settings,
) -> Result<CensusTable, CensusError> {
    if m < 1 {
        return Err(CensusError::Degree);
    }
    check_mode(mode, m)?;
    let fs: &FieldSpec = spec;
    let q = fs.q() as usize;
    let en = enumeration(fs, m, settings.reduction);
    let label = format!("{} degree {m} {mode}", fs);
    let progress = settings.progress.then_some(label.as_str());
    let init = || (Workspace::new(), vec![0u64; q]);
    let merge = |a: (Workspace, Vec<u64>), b: (Workspace, Vec<u64>)| (a.0, add_counts(a.1, b.1));
    let filter = root_filter_pays(fs.q(), m);

    let (_, mut counts) = match mode {
        CensusMode::AllMonic => drive(
            fs,
            en,
            settings.workers,
            progress,
            init,
            |(ws, counts), f, _| counts[ws.disc_monic(fs, f) as usize] += 1,
            merge,
        ),
        CensusMode::IrreducibleOnly => drive(
            fs,
            en,
            settings.workers,
            progress,
            init,
            |(ws, counts), f, _| {
                if filter && raw::has_root(fs, f) {
                    return;
                }
                if ws.is_irreducible_monic(fs, f) {
                    counts[ws.disc_monic(fs, f) as usize] += 1;
                }
            },
            merge,
        ),
        CensusMode::ByType(lambda) => {
            let parts = lambda.parts();
            let needs_root = parts.contains(&1);
            let irreducible = parts.len() == 1;
            drive(
                fs,
                en,
                settings.workers,
                progress,
                init,
                |(ws, counts), f, _| {
                    if filter && !needs_root && raw::has_root(fs, f) {
                        return;
                    }
                    if irreducible {
                        if ws.is_irreducible_monic(fs, f) {
                            counts[ws.disc_monic(fs, f) as usize] += 1;
                        }
                        return;
                    }
                    let d = ws.disc_monic(fs, f);
                    if d == 0 {
                        return;
                    }
                    ws.factor_degrees(fs, f);
                    if ws.parts == parts {
                        counts[d as usize] += 1;
                    }
                },
                merge,
            )
        }
    };
    if en.reduced {
        for c in &mut counts {
            *c *= q as u64;
        }
    }
    CensusTable::new(spec, m, mode.clone(), counts)
}

/// One `ByType` census for every partition of `m`, from a single pass over
/// the polynomials. Tables come back in the order of [`partitions`].
pub fn run_all_types(
    spec: &Arc<FieldSpec>,
    m: usize,
    settings: Settings,
) -> Result<Vec<CensusTable>, CensusError> {
    if m < 1 {
        return Err(CensusError::Degree);
    }
    let fs: &FieldSpec = spec;
    let q = fs.q() as usize;
    let types = partitions(m)?;
    let index: HashMap<Vec<usize>, usize> =
        types.iter().enumerate().map(|(i, l)| (l.parts().to_vec(), i)).collect();
    let en = enumeration(fs, m, settings.reduction);
    let label = format!("{} degree {m} all types", fs);
    let width = types.len() * q;
    let (_, flat) = drive(
        fs,
        en,
        settings.workers,
        settings.progress.then_some(label.as_str()),
        || (Workspace::new(), vec![0u64; width]),
        |(ws, counts), f, _| {
            let d = ws.disc_monic(fs, f);
            if d == 0 {
                return;
            }
            ws.factor_degrees(fs, f);
            counts[index[&ws.parts] * q + d as usize] += 1;
        },
        |a, b| (a.0, add_counts(a.1, b.1)),
    );
    let scale = if en.reduced { q as u64 } else { 1 };
    types
        .into_iter()
        .zip(flat.chunks(q))
        .map(|(l, c)| {
            let counts = c.iter().map(|&x| x * scale).collect();
            CensusTable::new(spec, m, CensusMode::ByType(l), counts)
        })
        .collect()
}

/// The monic degree-`m` polynomial with the smallest enumeration index
/// satisfying `pred`, searching all `q^m` candidates.
pub(crate) fn first_match<P>(
    spec: &Arc<FieldSpec>,
    m: usize,
    workers: usize,
    pred: P,
) -> Option<Poly>
where
    P: Fn(&mut Workspace, &[u32]) -> bool + Sync,
{
    let en = Enumeration { q: spec.q(), m, reduced: false };
    let (_, hit) = drive(
        spec,
        en,
        workers,
        None,
        || (Workspace::new(), None::<(u64, Vec<u32>)>),
        |(ws, hit), f, i| {
            if hit.is_none() && pred(ws, f) {
                *hit = Some((i, f.to_vec()));
            }
        },
        |a, b| {
            let best = match (a.1, b.1) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, y) => x.or(y),
            };
            (a.0, best)
        },
    );
    hit.map(|(_, c)| Poly::from_raw(spec, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn quick(spec: &Arc<FieldSpec>, m: usize, mode: CensusMode) -> CensusTable {
        census(spec, m, &mode, true, 1).unwrap()
    }

    #[test]
    fn quintic_fields() {
        let f5 = make_field(5, 1, None).unwrap();
        let all = quick(&f5, 4, CensusMode::AllMonic);
        assert_eq!(all.counts(), &[125, 95, 165, 85, 155]);
        let irr = quick(&f5, 4, CensusMode::IrreducibleOnly);
        assert_eq!(irr.counts(), &[0, 0, 95, 55, 0]);
    }

    #[test]
    fn single_split_cubic() {
        let f3 = make_field(3, 1, None).unwrap();
        let t = quick(&f3, 3, CensusMode::ByType(Partition::new(vec![1, 1, 1]).unwrap()));
        assert_eq!(t.total(), 1);
        assert_eq!(t.count(1), 1);
    }

    #[test]
    fn irreducible_septic_quartics() {
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(quick(&f7, 4, CensusMode::IrreducibleOnly).count(5), 336);
    }

    #[test]
    fn mode_errors() {
        let f3 = make_field(3, 1, None).unwrap();
        let bad = CensusMode::ByType(Partition::new(vec![2, 1]).unwrap());
        assert!(matches!(census(&f3, 4, &bad, true, 1), Err(CensusError::PartitionMismatch { .. })));
        assert!(matches!(census(&f3, 0, &CensusMode::AllMonic, true, 1), Err(CensusError::Degree)));
    }

    #[test]
    fn all_types_matches_single_runs() {
        let f4 = make_field(2, 2, None).unwrap();
        let settings = Settings { reduction: true, workers: 2, progress: false };
        for table in run_all_types(&f4, 4, settings).unwrap() {
            let single = census(&f4, 4, table.mode(), false, 1).unwrap();
            assert_eq!(table, single);
        }
    }

    #[test]
    fn first_match_is_smallest_index() {
        let f3 = make_field(3, 1, None).unwrap();
        let hit = first_match(&f3, 2, 3, |ws, f| ws.disc_monic(&f3, f) == 2).unwrap();
        // x^2 + 1 has disc -4 = 2 and index 1.
        assert_eq!(hit.coeffs(), &[1, 0, 1]);
    }
}
