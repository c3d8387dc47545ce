//! Allocation-light kernels on raw coefficient vectors.
//!
//! A polynomial here is a `Vec<u32>` of encodings, constant term first, with
//! no trailing zeros; the empty vector is the zero polynomial. These routines
//! back both the `Poly` API and the census hot loop, which reuses one
//! [`Workspace`] per worker so the inner loop never allocates.

use crate::field::{prime_divisors, FieldSpec};

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[u32]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub(crate) fn add(fs: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = fs.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(fs: &FieldSpec, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&c| fs.neg(c)).collect()
}

pub(crate) fn sub(fs: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    add(fs, a, &neg(fs, b))
}

pub(crate) fn mul(fs: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    mul_into(fs, a, b, &mut out);
    out
}

pub(crate) fn mul_into(fs: &FieldSpec, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    if a.is_empty() || b.is_empty() {
        return;
    }
    out.resize(a.len() + b.len() - 1, 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fs.add(out[i + j], fs.mul(x, y));
        }
    }
    trim(out);
}

pub(crate) fn scale(fs: &FieldSpec, a: &[u32], c: u32) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().map(|&x| fs.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub(crate) fn make_monic(fs: &FieldSpec, a: &mut [u32]) {
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let li = fs.inv(lead);
            for c in a.iter_mut() {
                *c = fs.mul(*c, li);
            }
        }
    }
}

/// `a <- a mod b` for nonzero `b`.
pub(crate) fn rem_in_place(fs: &FieldSpec, a: &mut Vec<u32>, b: &[u32]) {
    let db = b.len() - 1;
    if a.len() <= db {
        return;
    }
    let lead = b[db];
    let lead_inv = if lead == 1 { 1 } else { fs.inv(lead) };
    for top in (db..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        let c = fs.neg(if lead_inv == 1 { c } else { fs.mul(c, lead_inv) });
        let base = top - db;
        for (j, &bj) in b[..db].iter().enumerate() {
            a[base + j] = fs.add(a[base + j], fs.mul(c, bj));
        }
        a[top] = 0;
    }
    a.truncate(db);
    trim(a);
}

/// Quotient and remainder for nonzero `b`.
pub(crate) fn divrem(fs: &FieldSpec, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut quot = vec![0; a.len() - db];
    let lead_inv = fs.inv(b[db]);
    for top in (db..r.len()).rev() {
        let c = fs.mul(r[top], lead_inv);
        quot[top - db] = c;
        if c == 0 {
            continue;
        }
        let nc = fs.neg(c);
        for (j, &bj) in b.iter().enumerate() {
            let idx = top - db + j;
            r[idx] = fs.add(r[idx], fs.mul(nc, bj));
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut quot);
    (quot, r)
}

/// Monic gcd; the result is left in `a`, `b` is clobbered.
pub(crate) fn gcd_in_place(fs: &FieldSpec, a: &mut Vec<u32>, b: &mut Vec<u32>) {
    while !b.is_empty() {
        rem_in_place(fs, a, b);
        std::mem::swap(a, b);
    }
    make_monic(fs, a);
}

pub(crate) fn gcd(fs: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    gcd_in_place(fs, &mut x, &mut y);
    x
}

pub(crate) fn derivative_into(fs: &FieldSpec, f: &[u32], out: &mut Vec<u32>) {
    out.clear();
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push(if c == 0 { 0 } else { fs.mul(fs.from_int(i as i64), c) });
    }
    trim(out);
}

pub(crate) fn eval(fs: &FieldSpec, f: &[u32], x: u32) -> u32 {
    f.iter().rev().fold(0, |acc, &c| fs.add(fs.mul(acc, x), c))
}

pub(crate) fn has_root(fs: &FieldSpec, f: &[u32]) -> bool {
    if f.first().is_none_or(|&c| c == 0) {
        return true;
    }
    (1..fs.q()).any(|x| eval(fs, f, x) == 0)
}

/// Resultant of two nonzero polynomials, `lc(a)^{deg b} ∏_{a(α)=0} b(α)`.
/// Both buffers are consumed as scratch.
pub(crate) fn resultant_in_place(fs: &FieldSpec, a: &mut Vec<u32>, b: &mut Vec<u32>) -> u32 {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let mut acc = 1u32;
    loop {
        let n = a.len() - 1;
        let m = b.len() - 1;
        if m == 0 {
            return fs.mul(acc, fs.pow(b[0], n as u64));
        }
        if n == 0 {
            return fs.mul(acc, fs.pow(a[0], m as u64));
        }
        let lead_b = b[m];
        rem_in_place(fs, a, b);
        if a.is_empty() {
            return 0;
        }
        let r = a.len() - 1;
        if (n * m) & 1 == 1 {
            acc = fs.neg(acc);
        }
        if lead_b != 1 {
            acc = fs.mul(acc, fs.pow(lead_b, (n - r) as u64));
        }
        std::mem::swap(a, b);
    }
}

/// `(-1)^{m(m-1)/2}` as a field element.
pub(crate) fn disc_sign(fs: &FieldSpec, m: usize) -> u32 {
    if (m * (m - 1) / 2).is_multiple_of(2) {
        1
    } else {
        fs.neg(1)
    }
}

/// Reusable buffers for the per-polynomial kernels.
#[derive(Default)]
pub(crate) struct Workspace {
    a: Vec<u32>,
    b: Vec<u32>,
    c: Vec<u32>,
    d: Vec<u32>,
    frob: Vec<u32>,
    h: Vec<u32>,
    t: Vec<u32>,
    pub(crate) parts: Vec<usize>,
}

impl Workspace {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Discriminant of a monic polynomial of degree `m >= 1`.
    pub(crate) fn disc_monic(&mut self, fs: &FieldSpec, f: &[u32]) -> u32 {
        let m = f.len() - 1;
        if m == 1 {
            return 1;
        }
        derivative_into(fs, f, &mut self.b);
        if self.b.is_empty() {
            return 0;
        }
        self.a.clear();
        self.a.extend_from_slice(f);
        let res = resultant_in_place(fs, &mut self.a, &mut self.b);
        fs.mul(disc_sign(fs, m), res)
    }

    /// `gcd(f, f') = 1`, with `f' = 0` counted as not squarefree.
    pub(crate) fn is_squarefree(&mut self, fs: &FieldSpec, f: &[u32]) -> bool {
        derivative_into(fs, f, &mut self.b);
        if self.b.is_empty() {
            return f.len() == 1;
        }
        self.a.clear();
        self.a.extend_from_slice(f);
        gcd_in_place(fs, &mut self.a, &mut self.b);
        self.a.len() == 1
    }

    /// Fills `self.frob` with rows `x^{jq} mod f`, `j = 0..m`, each of length `m`.
    fn frobenius_matrix(&mut self, fs: &FieldSpec, f: &[u32]) {
        let m = f.len() - 1;
        let q = fs.q() as usize;
        self.frob.clear();
        self.frob.resize(m * m, 0);
        self.frob[0] = 1;
        if m == 1 {
            return;
        }
        let log_q = usize::BITS as usize - q.leading_zeros() as usize;
        let by_shifting = q * (m - 1) <= 2 * m * (2 * log_q + m);
        if by_shifting {
            // Walk x^0, x^1, ... x^{q(m-1)} mod f one multiplication by x at a time.
            let cur = &mut self.h;
            cur.clear();
            cur.resize(m, 0);
            cur[0] = 1;
            for step in 1..=q * (m - 1) {
                let top = cur[m - 1];
                for i in (1..m).rev() {
                    cur[i] = cur[i - 1];
                }
                cur[0] = 0;
                if top != 0 {
                    let nt = fs.neg(top);
                    for i in 0..m {
                        cur[i] = fs.add(cur[i], fs.mul(nt, f[i]));
                    }
                }
                if step % q == 0 {
                    let row = step / q;
                    self.frob[row * m..(row + 1) * m].copy_from_slice(cur);
                }
            }
        } else {
            // x^q by square-and-multiply, then successive products.
            let mut xq = vec![1u32];
            let mut base = vec![0u32, 1];
            rem_in_place(fs, &mut base, f);
            let mut e = q;
            while e > 0 {
                if e & 1 == 1 {
                    mul_into(fs, &xq, &base, &mut self.t);
                    rem_in_place(fs, &mut self.t, f);
                    std::mem::swap(&mut xq, &mut self.t);
                }
                e >>= 1;
                if e > 0 {
                    mul_into(fs, &base, &base, &mut self.t);
                    rem_in_place(fs, &mut self.t, f);
                    std::mem::swap(&mut base, &mut self.t);
                }
            }
            let mut row = vec![1u32];
            for j in 1..m {
                mul_into(fs, &row, &xq, &mut self.t);
                rem_in_place(fs, &mut self.t, f);
                std::mem::swap(&mut row, &mut self.t);
                self.frob[j * m..j * m + row.len()].copy_from_slice(&row);
            }
        }
    }

    /// `h <- h^q mod f` for dense `h` of length `m`, using `self.frob`.
    fn apply_frobenius(&mut self, fs: &FieldSpec, m: usize) {
        self.t.clear();
        self.t.resize(m, 0);
        for (j, &hj) in self.h.iter().enumerate() {
            if hj == 0 {
                continue;
            }
            let row = &self.frob[j * m..(j + 1) * m];
            for (t, &r) in self.t.iter_mut().zip(row) {
                *t = fs.add(*t, fs.mul(hj, r));
            }
        }
        std::mem::swap(&mut self.h, &mut self.t);
    }

    /// Loads `self.h - x` (trimmed) into `self.c`.
    fn h_minus_x_into_c(&mut self, fs: &FieldSpec) {
        self.c.clear();
        self.c.extend_from_slice(&self.h);
        if self.c.len() < 2 {
            self.c.resize(2, 0);
        }
        self.c[1] = fs.sub(self.c[1], 1);
        trim(&mut self.c);
    }

    /// Rabin's test for monic `f`: `x^{q^m} ≡ x (mod f)` and
    /// `gcd(f, x^{q^{m/ℓ}} - x) = 1` for every prime `ℓ | m`.
    pub(crate) fn is_irreducible_monic(&mut self, fs: &FieldSpec, f: &[u32]) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let primes = prime_divisors(m as u64);
        self.frobenius_matrix(fs, f);
        self.h.clear();
        self.h.resize(m, 0);
        self.h[1] = 1;
        for i in 1..=m {
            self.apply_frobenius(fs, m);
            if i < m && primes.iter().any(|&l| i as u64 * l == m as u64) {
                self.h_minus_x_into_c(fs);
                if self.c.is_empty() {
                    return false;
                }
                self.d.clear();
                self.d.extend_from_slice(f);
                gcd_in_place(fs, &mut self.d, &mut self.c);
                if self.d.len() > 1 {
                    return false;
                }
            }
        }
        self.h_minus_x_into_c(fs);
        self.c.is_empty()
    }

    /// Distinct-degree splitting of a squarefree monic `f`. Leaves the
    /// degrees of the irreducible factors in `self.parts`, non-increasing.
    pub(crate) fn factor_degrees(&mut self, fs: &FieldSpec, f: &[u32]) {
        let m = f.len() - 1;
        self.parts.clear();
        if m == 1 {
            self.parts.push(1);
            return;
        }
        self.frobenius_matrix(fs, f);
        self.h.clear();
        self.h.resize(m, 0);
        self.h[1] = 1;
        let mut g = std::mem::take(&mut self.a);
        g.clear();
        g.extend_from_slice(f);
        let mut d = 0;
        while g.len() > 2 * (d + 1) {
            d += 1;
            self.apply_frobenius(fs, m);
            self.h_minus_x_into_c(fs);
            rem_in_place(fs, &mut self.c, &g);
            self.d.clear();
            self.d.extend_from_slice(&g);
            gcd_in_place(fs, &mut self.d, &mut self.c);
            let found = self.d.len() - 1;
            if found > 0 {
                for _ in 0..found / d {
                    self.parts.push(d);
                }
                let (quot, _) = divrem(fs, &g, &self.d);
                g = quot;
            }
        }
        if g.len() > 1 {
            self.parts.push(g.len() - 1);
        }
        self.a = g;
        self.parts.sort_unstable_by(|a, b| b.cmp(a));
    }
}
