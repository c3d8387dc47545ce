//! Closed forms and constructions around discriminant distribution:
//! irreducible counts, valuations, the gcd hypothesis, partitions and
//! counterexample types, and polynomials with a prescribed discriminant.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{is_prime, prime_divisors, FieldError, FieldSpec};
use crate::poly::PolyError;

mod construct;
mod partition;

pub use construct::{construct_disc, Construction, SurjectCase};
pub use partition::{partitions, Partition, MAX_PARTITION_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("invalid partition {0:?}: parts must be positive and nonempty")]
    InvalidPartition(Vec<usize>),
    #[error("cannot parse {0:?} as a partition")]
    ParsePartition(String),
    #[error("partitions are generated for 1 <= m <= {MAX_PARTITION_SIZE}, got {0}")]
    PartitionRange(usize),
    #[error("{op} needs {min} or more, got {got}")]
    TooSmall { op: &'static str, min: u64, got: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the valuation of 0 is undefined")]
    ZeroValuation,
    #[error("{0} does not fit in 64 bits")]
    Overflow(BigUint),
    #[error("{0}")]
    Precondition(String),
    #[error("q - 1 = {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("no monic polynomial of degree {m} over F_{q} has discriminant {d}")]
    SearchExhausted { q: u32, m: usize, d: u32 },
    #[error("constructed polynomial has discriminant {got}, wanted {want}")]
    Unverified { want: u32, got: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn at_least(op: &'static str, min: u64, got: u64) -> Result<(), TheoryError> {
    if got < min {
        return Err(TheoryError::TooSmall { op, min, got });
    }
    Ok(())
}

fn to_u64(n: BigUint) -> Result<u64, TheoryError> {
    n.to_u64().ok_or(TheoryError::Overflow(n))
}

/// Möbius function on positive integers.
fn int_mobius(n: u64) -> i32 {
    let primes = prime_divisors(n);
    let radical: u64 = primes.iter().product();
    if radical != n {
        return 0;
    }
    if primes.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `N_q(m) = (1/m) Σ_{d|m} μ(m/d) q^d`, exactly.
pub fn gauss_count_big(q: u64, m: usize) -> Result<BigUint, TheoryError> {
    at_least("gauss_count degree", 1, m as u64)?;
    let q = BigInt::from(q);
    let mut sum = BigInt::zero();
    for d in 1..=m {
        if m.is_multiple_of(d) {
            sum += num_traits::pow(q.clone(), d) * int_mobius((m / d) as u64);
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(m));
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("count is nonnegative"))
}

/// Number of monic irreducible polynomials of degree `m` over `spec`.
pub fn gauss_count(spec: &FieldSpec, m: usize) -> Result<u64, TheoryError> {
    to_u64(gauss_count_big(spec.q() as u64, m)?)
}

/// Largest `e` with `ℓ^e | n`.
pub fn valuation(l: u64, n: impl Into<BigInt>) -> Result<u32, TheoryError> {
    if !is_prime(l) {
        return Err(TheoryError::NotPrime(l));
    }
    let mut n: BigInt = n.into();
    if n.is_zero() {
        return Err(TheoryError::ZeroValuation);
    }
    let l = BigInt::from(l);
    let mut e = 0;
    loop {
        let (quot, rem) = n.div_rem(&l);
        if !rem.is_zero() {
            return Ok(e);
        }
        n = quot;
        e += 1;
    }
}

/// One instance of `v_ℓ(a^n - 1) = v_ℓ(a - 1) + v_ℓ(n)` for `a ≡ 1 (mod ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingInstance {
    pub a: u64,
    pub n: u64,
    pub lhs: u32,
    pub rhs: u32,
}

impl LiftingInstance {
    fn new(l: u64, a: u64, n: u64) -> Result<Self, TheoryError> {
        let an = num_traits::pow(BigInt::from(a), n as usize) - 1;
        let lhs = valuation(l, an)?;
        let rhs = valuation(l, a - 1)? + valuation(l, n)?;
        Ok(LiftingInstance { a, n, lhs, rhs })
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VLemmaReport {
    pub q: u64,
    pub l: u64,
    pub t: u32,
    /// `N_q(2^t ℓ)`.
    pub count: BigUint,
    /// `v_ℓ(N_q(2^t ℓ))`.
    pub lhs: u32,
    /// `v_ℓ(q - 1) - 1`.
    pub rhs: i64,
    pub lifting: Vec<LiftingInstance>,
}

impl VLemmaReport {
    pub fn passed(&self) -> bool {
        self.lhs as i64 == self.rhs && self.lifting.iter().all(LiftingInstance::holds)
    }
}

/// Checks `v_ℓ(N_q(2^t ℓ)) = v_ℓ(q - 1) - 1` for an odd prime `ℓ | q - 1`,
/// along with the valuation-lifting instances its derivation uses.
pub fn check_vlemma(spec: &FieldSpec, l: u64, t: u32) -> Result<VLemmaReport, TheoryError> {
    let q = spec.q() as u64;
    if l == 2 || !is_prime(l) {
        return Err(TheoryError::Precondition(format!("{l} is not an odd prime")));
    }
    if !(q - 1).is_multiple_of(l) {
        return Err(TheoryError::Precondition(format!("{l} does not divide q - 1 = {}", q - 1)));
    }
    let n = 1u64
        .checked_shl(t)
        .and_then(|s| s.checked_mul(l))
        .filter(|&n| n <= 4096)
        .ok_or_else(|| TheoryError::Precondition(format!("2^{t} * {l} is too large")))?;
    let count = gauss_count_big(q, n as usize)?;
    let lhs = valuation(l, BigInt::from(count.clone()))?;
    let rhs = valuation(l, q - 1)? as i64 - 1;
    let mut lifting = vec![LiftingInstance::new(l, q, l - 1)?];
    if t >= 1 {
        let half = 1u64 << (t - 1);
        lifting.push(LiftingInstance::new(l, q, half * l)?);
        lifting.push(LiftingInstance::new(l, q, half)?);
    }
    Ok(VLemmaReport { q, l, t, count, lhs, rhs, lifting })
}

/// `g = gcd(q - 1, m(m - 1))` and whether the equal-distribution
/// hypothesis holds (`g = 2` for odd `q`, `g = 1` for even `q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub q: u64,
    pub m: usize,
    pub g: u64,
    pub applies: bool,
}

impl fmt::Display for HypothesisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = if self.applies { "applies" } else { "does not apply" };
        write!(f, "q = {}, m = {}: gcd(q-1, m(m-1)) = {}, hypothesis {verb}", self.q, self.m, self.g)
    }
}

pub fn hypothesis(spec: &FieldSpec, m: usize) -> Result<HypothesisVerdict, TheoryError> {
    at_least("hypothesis degree", 2, m as u64)?;
    let q = spec.q() as u64;
    let m64 = m as u64;
    let g = (q - 1).gcd(&(m64 * (m64 - 1)));
    let applies = if spec.is_odd() { g == 2 } else { g == 1 };
    Ok(HypothesisVerdict { q, m, g, applies })
}

/// `m_a = a(q - 1) - 1`, a degree satisfying the hypothesis for every `a >= 3`.
pub fn degree_family(spec: &FieldSpec, a: u64) -> Result<usize, TheoryError> {
    at_least("degree family index", 3, a)?;
    Ok((a * (spec.q() as u64 - 1) - 1) as usize)
}

/// `|S_λ| = Π_d C(N_q(d), r_d)`, exactly.
pub fn s_lambda_size_big(spec: &FieldSpec, lambda: &Partition) -> Result<BigUint, TheoryError> {
    let mut acc = BigUint::one();
    for (d, r) in lambda.multiplicities() {
        let n = gauss_count_big(spec.q() as u64, d)?;
        acc *= binomial(&n, r);
    }
    Ok(acc)
}

/// Number of squarefree monic polynomials of factorization type `λ`.
pub fn s_lambda_size(spec: &FieldSpec, lambda: &Partition) -> Result<u64, TheoryError> {
    to_u64(s_lambda_size_big(spec, lambda)?)
}

fn binomial(n: &BigUint, r: usize) -> BigUint {
    if n < &BigUint::from(r) {
        return BigUint::zero();
    }
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - BigUint::from(i)) / BigUint::from(i + 1))
}

/// A factorization type whose census cannot be equally distributed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Smallest odd prime dividing both `q - 1` and `m` or `m - 1`.
    pub l: u64,
    /// Whether `ℓ | m` (otherwise `ℓ | m - 1`).
    pub divides_m: bool,
    pub partition: Partition,
    pub size: BigUint,
    /// `ℓ | |S_λ|`; false for every valid construction.
    pub l_divides_size: bool,
}

/// A type `λ` of `m` with `ℓ ∤ |S_λ|`, built from the binary expansion of
/// `m/ℓ` (or `(m-1)/ℓ` plus a part 1). `None` when the gcd hypothesis holds;
/// otherwise `q - 1` must be squarefree.
pub fn counterexample_partition(
    spec: &FieldSpec,
    m: usize,
) -> Result<Option<Counterexample>, TheoryError> {
    at_least("counterexample degree", 2, m as u64)?;
    if hypothesis(spec, m)?.applies {
        return Ok(None);
    }
    let q1 = spec.q() as u64 - 1;
    let primes = prime_divisors(q1);
    if primes.iter().product::<u64>() != q1 {
        return Err(TheoryError::NotSquarefree(q1));
    }
    let m64 = m as u64;
    let Some(&l) = primes.iter().find(|&&l| l != 2 && (m64.is_multiple_of(l) || (m64 - 1).is_multiple_of(l))) else {
        return Ok(None);
    };
    let divides_m = m64.is_multiple_of(l);
    let base = if divides_m { m64 / l } else { (m64 - 1) / l };
    let mut parts: Vec<usize> = (0..64)
        .filter(|i| base >> i & 1 == 1)
        .map(|i| ((1u64 << i) * l) as usize)
        .collect();
    if !divides_m {
        parts.push(1);
    }
    let partition = Partition::new(parts)?;
    let size = s_lambda_size_big(spec, &partition)?;
    let l_divides_size = (&size % l).is_zero();
    Ok(Some(Counterexample { l, divides_m, partition, size, l_divides_size }))
}
