//! Finite fields `F_q` with `q = p^k`.
//!
//! Elements are identified by their integer encoding `Σ c_i p^i`, where
//! `c_0..c_{k-1}` are the coordinates in the power basis of the field's
//! modulus. Arithmetic on raw encodings goes through log/antilog tables
//! built from the smallest-encoding multiplicative generator, so every
//! operation on a [`FieldSpec`] is a handful of table lookups.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Fields small enough to get full addition and multiplication tables.
const DENSE_TABLE_LIMIT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {p}^{k} exceeds the supported limit of 2^20")]
    TooLarge { p: u64, k: u32 },
    #[error("modulus has {got} coefficients, expected {expected}")]
    ModulusLength { got: usize, expected: usize },
    #[error("modulus coefficient {0} is not a residue mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("elements belong to different fields")]
    Mismatch,
    #[error("encoding {enc} is out of range for F_{q}")]
    Encoding { enc: u64, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("0^0 is undefined")]
    ZeroToZero,
    #[error("the quadratic character is only used for odd q (got q = {0})")]
    EvenOrder(u32),
    #[error("the quadratic character is undefined at 0")]
    ZeroCharacter,
    #[error("power test is undefined at 0")]
    ZeroPowerTest,
    #[error("exponent n must be at least 1")]
    ZeroExponent,
}

/// A concrete finite field `F_{p^k}` together with its arithmetic tables.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i`, doubled so that `log a + log b` never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Zech logarithms `log(1 + g^n)` for odd-characteristic extension fields.
    zech: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.q)
        } else {
            write!(f, "F_{} = F_{}[y]/({})", self.q, self.p, self.modulus_string())
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = *prime_divisors(q).first()?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Builds `F_{p^k}`. Without an override the modulus is the monic irreducible
/// of degree `k` with the smallest encoding `Σ c_i p^i`.
pub fn make_field(
    p: u64,
    k: u32,
    modulus_override: Option<&[u32]>,
) -> Result<Arc<FieldSpec>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k < 1 {
        return Err(FieldError::ZeroDegree);
    }
    let order = (p as u128).checked_pow(k).filter(|&o| o <= MAX_ORDER as u128);
    let Some(order) = order else {
        return Err(FieldError::TooLarge { p, k });
    };
    let p = p as u32;
    let q = order as u32;
    let modulus = match modulus_override {
        Some(m) => {
            let expected = if k == 1 { 0 } else { k as usize };
            if m.len() != expected {
                return Err(FieldError::ModulusLength { got: m.len(), expected });
            }
            if let Some(&c) = m.iter().find(|&&c| c >= p) {
                return Err(FieldError::ModulusCoefficient(c));
            }
            if k > 1 && !modulus_is_irreducible(p, m) {
                return Err(FieldError::ReducibleModulus(p));
            }
            m.to_vec()
        }
        None => canonical_modulus(p, k),
    };
    Ok(Arc::new(FieldSpec::build(p, k, q, modulus)))
}

/// `make_field` from the order `q` instead of `(p, k)`.
pub fn field_of_order(q: u64, modulus_override: Option<&[u32]>) -> Result<Arc<FieldSpec>, FieldError> {
    let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    make_field(p, k, modulus_override)
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return Vec::new();
    }
    let count = (p as u64).pow(k);
    (0..count)
        .map(|enc| digits(enc, p, k as usize))
        .find(|c| modulus_is_irreducible(p, c))
        .expect("an irreducible of every degree exists")
}

fn digits(mut enc: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (enc % p as u64) as u32;
        enc /= p as u64;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Irreducibility of `x^k + c_{k-1}x^{k-1} + ... + c_0` over `F_p`.
fn modulus_is_irreducible(p: u32, c: &[u32]) -> bool {
    let k = c.len();
    if k <= 1 {
        return true;
    }
    let mut f: Vec<u64> = c.iter().map(|&v| v as u64).collect();
    f.push(1);
    let p64 = p as u64;
    if k <= 2 {
        // A reducible quadratic has a root.
        return !(0..p64).any(|a| prime_poly::eval(&f, a, p64) == 0);
    }
    prime_poly::no_factor_up_to(&f, k / 2, p64)
}

/// Minimal arithmetic over `F_p` used only to vet modulus candidates.
mod prime_poly {
    pub(super) fn eval(f: &[u64], a: u64, p: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| (acc * a + c) % p)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1;
        let mut b = a;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        trim(&mut a);
        while a.len() > db {
            let top = a.len() - 1;
            let c = a[top] * lead_inv % p;
            for (j, &bj) in b.iter().enumerate() {
                let idx = top - db + j;
                a[idx] = (a[idx] + p - c * bj % p) % p;
            }
            trim(&mut a);
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(out, f, p)
    }

    fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// True when `f` (monic) has no irreducible factor of degree `1..=max_d`,
    /// checked through `gcd(x^{p^d} - x, f)`.
    pub(super) fn no_factor_up_to(f: &[u64], max_d: usize, p: u64) -> bool {
        let mut h = rem(vec![0, 1], f, p);
        for _ in 1..=max_d {
            // h <- h^p mod f
            let mut acc = vec![1u64];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            h = acc;
            let mut t = h.clone();
            t.resize(t.len().max(2), 0);
            t[1] = (t[1] + p - 1) % p;
            let g = gcd(f.to_vec(), t, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FieldSpec {
    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> FieldSpec {
        let slow = SlowArith { p, k: k as usize, modulus: &modulus };
        let order = (q - 1) as u64;
        let primes = prime_divisors(order);
        let generator = (1..q)
            .find(|&g| primes.iter().all(|&r| slow.pow(g, order / r) != 1))
            .expect("F_q^x is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            exp[i + n] = cur;
            log[cur as usize] = i as u32;
            cur = slow.mul(cur, generator);
        }

        let neg: Vec<u32> = (0..q).map(|a| slow.neg(a)).collect();
        let zech = if p != 2 && k > 1 {
            (0..n)
                .map(|i| {
                    let s = slow.add(1, exp[i]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };

        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            generator,
            exp,
            log,
            neg,
            zech,
            add_table: Vec::new(),
            mul_table: Vec::new(),
        };
        if q <= DENSE_TABLE_LIMIT {
            let mut add = Vec::with_capacity((q * q) as usize);
            let mut mul = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    add.push(spec.add_slow(a, b));
                    mul.push(spec.mul_slow(a, b));
                }
            }
            spec.add_table = add;
            spec.mul_table = mul;
        }
        spec
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// Coefficients `c_0..c_{k-1}` of the monic modulus; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The modulus written as a polynomial in `y`, e.g. `y^2 + y + 1`.
    pub fn modulus_string(&self) -> String {
        let mut c = self.modulus.clone();
        c.push(1);
        let mut terms = Vec::new();
        for (i, &v) in c.iter().enumerate().rev() {
            if v == 0 {
                continue;
            }
            let coeff = if v == 1 && i > 0 { String::new() } else { v.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}y"),
                _ => format!("{coeff}y^{i}"),
            });
        }
        terms.join(" + ")
    }

    /// Power-basis coordinates of an encoding.
    pub fn coords(&self, enc: u32) -> Vec<u32> {
        digits(enc as u64, self.p, self.k as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        undigits(coords, self.p)
    }

    /// The image of the integer `n` under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    // Raw arithmetic on encodings. Callers guarantee encodings are < q.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if !self.add_table.is_empty() {
            return self.add_table[(a * self.q + b) as usize];
        }
        self.add_slow(a, b)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            if a == 0 {
                return b;
            }
            if b == 0 {
                return a;
            }
            let n = self.q - 1;
            let la = self.log[a as usize];
            let lb = self.log[b as usize];
            let diff = if lb >= la { lb - la } else { lb + n - la };
            let z = self.zech[diff as usize];
            if z == NO_LOG {
                0
            } else {
                self.exp[(la + z) as usize]
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if !self.mul_table.is_empty() {
            return self.mul_table[(a * self.q + b) as usize];
        }
        self.mul_slow(a, b)
    }

    #[inline]
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero encoding. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        let la = self.log[a as usize];
        assert!(la != NO_LOG, "inverse of zero");
        self.exp[(self.q - 1 - la) as usize]
    }

    /// `a^n` with the convention `0^0 = 1`; the public API rejects that case.
    #[inline]
    pub fn pow(&self, a: u32, n: u64) -> u32 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u64;
        let e = (self.log[a as usize] as u64 * (n % order)) % order;
        self.exp[e as usize]
    }

    /// Discrete logarithm to base [`FieldSpec::generator`].
    pub fn log(&self, a: u32) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// `χ_q(a)` for nonzero `a` and odd `q`, from the parity of the discrete
    /// log (the generator is a non-square).
    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        if self.log[a as usize] & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// `a^{1/p}`, the inverse of the Frobenius.
    pub fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, (self.q / self.p) as u64)
    }

    pub fn element(self: &Arc<Self>, enc: u32) -> Result<FieldElement, FieldError> {
        FieldElement::new(self, enc)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { spec: Arc::clone(self), enc: 0 }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        FieldElement { spec: Arc::clone(self), enc: 1 }
    }

    /// All elements in encoding order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |enc| FieldElement { spec: Arc::clone(self), enc })
    }
}

/// Schoolbook arithmetic on power-basis coordinates, used to build the tables.
struct SlowArith<'a> {
    p: u32,
    k: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        let x = digits(a as u64, self.p, self.k);
        let y = digits(b as u64, self.p, self.k);
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        undigits(&s, self.p)
    }

    fn neg(&self, a: u32) -> u32 {
        let x = digits(a as u64, self.p, self.k);
        let s: Vec<u32> = x.iter().map(|&u| (self.p - u) % self.p).collect();
        undigits(&s, self.p)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let x = digits(a as u64, self.p, self.k);
        let y = digits(b as u64, self.p, self.k);
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        // y^k = -(c_0 + ... + c_{k-1} y^{k-1})
        for top in (self.k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &mj) in self.modulus.iter().enumerate() {
                let idx = top - self.k + j;
                prod[idx] = (prod[idx] + p - c * mj as u64 % p) % p;
            }
        }
        let out: Vec<u32> = prod[..self.k].iter().map(|&v| v as u32).collect();
        undigits(&out, self.p)
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// An element of a [`FieldSpec`], identified by its encoding in `[0, q)`.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    enc: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@F_{}", self.enc, self.spec.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.enc == other.enc && same_field(&self.spec, &other.spec)
    }
}

impl Eq for FieldElement {}

pub(crate) fn same_field(a: &Arc<FieldSpec>, b: &Arc<FieldSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    pub fn new(spec: &Arc<FieldSpec>, enc: u32) -> Result<Self, FieldError> {
        if enc >= spec.q {
            return Err(FieldError::Encoding { enc: enc as u64, q: spec.q });
        }
        Ok(FieldElement { spec: Arc::clone(spec), enc })
    }

    pub(crate) fn from_raw(spec: &Arc<FieldSpec>, enc: u32) -> Self {
        debug_assert!(enc < spec.q);
        FieldElement { spec: Arc::clone(spec), enc }
    }

    pub fn enc(&self) -> u32 {
        self.enc
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coords(&self) -> Vec<u32> {
        self.spec.coords(self.enc)
    }

    pub fn is_zero(&self) -> bool {
        self.enc == 0
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if same_field(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(FieldError::Mismatch)
        }
    }

    pub fn arith(&self, other: &FieldElement, kind: ArithKind) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let (a, b) = (self.enc, other.enc);
        let enc = match kind {
            ArithKind::Add => self.spec.add(a, b),
            ArithKind::Sub => self.spec.sub(a, b),
            ArithKind::Mul => self.spec.mul(a, b),
        };
        Ok(FieldElement::from_raw(&self.spec, enc))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, ArithKind::Add)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, ArithKind::Sub)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, ArithKind::Mul)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement::from_raw(&self.spec, self.spec.neg(self.enc))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.enc == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(FieldElement::from_raw(&self.spec, self.spec.inv(self.enc)))
    }

    /// Square-and-multiply; `0^0` is rejected.
    pub fn pow(&self, mut n: u64) -> Result<FieldElement, FieldError> {
        if self.enc == 0 && n == 0 {
            return Err(FieldError::ZeroToZero);
        }
        let s = &self.spec;
        let mut acc = 1;
        let mut base = self.enc;
        while n > 0 {
            if n & 1 == 1 {
                acc = s.mul(acc, base);
            }
            base = s.mul(base, base);
            n >>= 1;
        }
        Ok(FieldElement::from_raw(s, acc))
    }

    /// `χ_q(d) = d^{(q-1)/2}` mapped to `±1`.
    pub fn quadratic_character(&self) -> Result<i32, FieldError> {
        if !self.spec.is_odd() {
            return Err(FieldError::EvenOrder(self.spec.q));
        }
        if self.enc == 0 {
            return Err(FieldError::ZeroCharacter);
        }
        let e = self.pow(((self.spec.q - 1) / 2) as u64)?;
        Ok(if e.enc == 1 { 1 } else { -1 })
    }

    /// Whether `self = e^n` for some nonzero `e`.
    pub fn is_nth_power(&self, n: u64) -> Result<bool, FieldError> {
        if n == 0 {
            return Err(FieldError::ZeroExponent);
        }
        if self.enc == 0 {
            return Err(FieldError::ZeroPowerTest);
        }
        let order = (self.spec.q - 1) as u64;
        let e = order / n.gcd(&order);
        Ok(self.pow(e)?.enc == 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Result<u64, FieldError> {
        if self.enc == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let l = self.spec.log[self.enc as usize] as u64;
        let n = (self.spec.q - 1) as u64;
        Ok(n / l.gcd(&n))
    }
}

/// The multiplicative generator with the smallest encoding.
pub fn generator(spec: &Arc<FieldSpec>) -> FieldElement {
    FieldElement::from_raw(spec, spec.generator)
}
