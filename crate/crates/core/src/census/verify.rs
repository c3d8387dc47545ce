//! Checks of the parity, Möbius-sum and distribution identities against
//! exhaustive data.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;

use super::driver::{drive, Enumeration};
use super::{default_workers, CensusError, CensusMode, CensusTable};
use crate::field::FieldSpec;
use crate::poly::raw::Workspace;
use crate::poly::Poly;

/// `(-1)^n` as `±1`.
fn sign(n: usize) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// μ of a monic polynomial, from its squarefreeness and factor degrees.
fn mobius(ws: &mut Workspace, fs: &FieldSpec, f: &[u32]) -> i32 {
    if !ws.is_squarefree(fs, f) {
        return 0;
    }
    ws.factor_degrees(fs, f);
    sign(ws.parts.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StickelbergerReport {
    pub q: u32,
    pub m: usize,
    pub checked: u64,
    /// First polynomial (in enumeration order) violating the identity.
    pub counterexample: Option<Poly>,
}

impl StickelbergerReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `χ(disc f) = (-1)^m μ(f)` and `disc f = 0 ⇔ μ(f) = 0` over every
/// monic `f` of degree `m`.
pub fn verify_stickelberger(
    spec: &Arc<FieldSpec>,
    m: usize,
) -> Result<StickelbergerReport, CensusError> {
    if !spec.is_odd() {
        return Err(CensusError::EvenOrder("the parity check"));
    }
    if m < 2 {
        return Err(CensusError::SmallDegree(m));
    }
    let fs: &FieldSpec = spec;
    let half = (fs.q() as u64 - 1) / 2;
    let en = Enumeration { q: fs.q(), m, reduced: false };
    let (_, bad) = drive(
        fs,
        en,
        default_workers(),
        None,
        || (Workspace::new(), None::<(u64, Vec<u32>)>),
        |(ws, bad), f, i| {
            if bad.is_some() {
                return;
            }
            let d = ws.disc_monic(fs, f);
            let mu = mobius(ws, fs, f);
            let ok = if d == 0 {
                mu == 0
            } else {
                let chi = if fs.pow(d, half) == 1 { 1 } else { -1 };
                mu != 0 && chi == sign(m) * mu
            };
            if !ok {
                *bad = Some((i, f.to_vec()));
            }
        },
        |a, b| {
            let first = match (a.1, b.1) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, y) => x.or(y),
            };
            (a.0, first)
        },
    );
    Ok(StickelbergerReport {
        q: fs.q(),
        m,
        checked: en.len(),
        counterexample: bad.map(|(_, c)| Poly::from_raw(spec, c)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuSumsReport {
    pub q: u32,
    pub m: usize,
    pub sum_mu: i64,
    pub sum_abs_mu: u64,
    /// `q^m - q^{m-1}`.
    pub expected_abs: u64,
}

impl MuSumsReport {
    pub fn passed(&self) -> bool {
        self.sum_mu == 0 && self.sum_abs_mu == self.expected_abs
    }
}

/// `Σ μ(f)` and `Σ |μ(f)|` over monic `f` of degree `m`.
pub fn verify_mu_sums(spec: &Arc<FieldSpec>, m: usize) -> Result<MuSumsReport, CensusError> {
    if m < 2 {
        return Err(CensusError::SmallDegree(m));
    }
    let fs: &FieldSpec = spec;
    let en = Enumeration { q: fs.q(), m, reduced: false };
    let (_, sum, abs) = drive(
        fs,
        en,
        default_workers(),
        None,
        || (Workspace::new(), 0i64, 0u64),
        |(ws, sum, abs), f, _| {
            let mu = mobius(ws, fs, f);
            *sum += mu as i64;
            *abs += mu.unsigned_abs() as u64;
        },
        |a, b| (a.0, a.1 + b.1, a.2 + b.2),
    );
    let q = fs.q() as u64;
    Ok(MuSumsReport {
        q: fs.q(),
        m,
        sum_mu: sum,
        sum_abs_mu: abs,
        expected_abs: q.pow(m as u32) - q.pow(m as u32 - 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    /// Polynomials whose discriminant is a nonzero square.
    pub squares: u64,
    pub nonsquares: u64,
}

impl BalanceReport {
    pub fn passed(&self) -> bool {
        self.squares == self.nonsquares
    }
}

/// Compares the number of polynomials with square and non-square
/// discriminant in an all-monic census.
pub fn verify_square_balance(table: &CensusTable) -> Result<BalanceReport, CensusError> {
    let fs = table.spec();
    if !fs.is_odd() {
        return Err(CensusError::EvenOrder("the square balance check"));
    }
    if table.mode() != &CensusMode::AllMonic {
        return Err(CensusError::NotAllMonic("the square balance check"));
    }
    if table.degree() < 2 {
        return Err(CensusError::SmallDegree(table.degree()));
    }
    let mut report = BalanceReport { squares: 0, nonsquares: 0 };
    for d in 1..fs.q() {
        if fs.chi(d) == 1 {
            report.squares += table.count(d);
        } else {
            report.nonsquares += table.count(d);
        }
    }
    Ok(report)
}

/// Outcome of [`is_equally_distributed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    pub uniform: bool,
    /// Discriminants that must carry the whole census for it to be uniform.
    pub class: Vec<u32>,
    /// The census counts on `class`, the witness for the verdict.
    pub witness: Vec<u64>,
}

/// The discriminants a census of this mode can reach when equally distributed.
fn expected_class(table: &CensusTable) -> Vec<u32> {
    let fs = table.spec();
    match table.mode().factor_count() {
        None => (0..fs.q()).collect(),
        Some(_) if !fs.is_odd() => (1..fs.q()).collect(),
        Some(k) => {
            let want = sign(table.degree() - k);
            (1..fs.q()).filter(|&d| fs.chi(d) == want).collect()
        }
    }
}

/// Whether the counts are equal and nonzero on the expected class and zero
/// elsewhere.
pub fn is_equally_distributed(table: &CensusTable) -> Result<Distribution, CensusError> {
    if table.total() == 0 {
        return Err(CensusError::Empty);
    }
    let class = expected_class(table);
    let witness: Vec<u64> = class.iter().map(|&d| table.count(d)).collect();
    let inside: u64 = witness.iter().sum();
    let uniform =
        inside == table.total() && witness[0] > 0 && witness.iter().all(|&c| c == witness[0]);
    Ok(Distribution { uniform, class, witness })
}

/// Discriminants that occur in a census.
pub fn support_set(table: &CensusTable) -> Result<BTreeSet<u32>, CensusError> {
    if table.mode() == &CensusMode::AllMonic {
        return Err(CensusError::AllMonicMode("the support set"));
    }
    Ok((0..table.spec().q()).filter(|&d| table.count(d) > 0).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeConstraints {
    /// Every occurring discriminant has `χ(d) = (-1)^{m-k}`.
    pub character_ok: bool,
    pub support: usize,
    /// `(q-1)/g` with `g = gcd(q-1, m(m-1))`.
    pub support_bound: u64,
}

impl TypeConstraints {
    /// An empty census satisfies both constraints vacuously.
    pub fn passed(&self) -> bool {
        self.character_ok && (self.support == 0 || self.support as u64 >= self.support_bound)
    }
}

/// The character constraint and support-size lower bound for an
/// irreducible or by-type census over an odd field.
pub fn check_type_constraints(table: &CensusTable) -> Result<TypeConstraints, CensusError> {
    let fs = table.spec();
    if !fs.is_odd() {
        return Err(CensusError::EvenOrder("the character constraint"));
    }
    let support = support_set(table)?;
    let k = table.mode().factor_count().expect("not all-monic");
    let m = table.degree() as u64;
    let want = sign(table.degree() - k);
    let character_ok = support.iter().all(|&d| d != 0 && fs.chi(d) == want);
    let q1 = fs.q() as u64 - 1;
    let g = q1.gcd(&(m * (m - 1)));
    Ok(TypeConstraints { character_ok, support: support.len(), support_bound: q1 / g.max(1) })
}
