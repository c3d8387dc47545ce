//! Slow reference implementations over prime fields, written without the
//! library so they can serve as oracles.

#![allow(dead_code)]

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Determinant of a square matrix over Z/p by Gaussian elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_multiple_of(p)) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        let inv = inv_mod(m[col][col], p);
        for r in col + 1..n {
            let factor = m[r][col] * inv % p;
            if factor == 0 {
                continue;
            }
            for c in col..n {
                m[r][c] = (m[r][c] + p * p - factor * m[col][c] % p) % p;
            }
        }
    }
    det
}

/// Sylvester-matrix resultant of `f` (degree n = len-1) and `g` taken with
/// formal degree `len(g) - 1`, both constant term first.
pub fn sylvester_resultant(f: &[u64], g: &[u64], p: u64) -> u64 {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    if size == 0 {
        return 1;
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![0u64; size];
        for (j, &c) in f.iter().rev().enumerate() {
            row[i + j] = c % p;
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![0u64; size];
        for (j, &c) in g.iter().rev().enumerate() {
            row[i + j] = c % p;
        }
        rows.push(row);
    }
    det_mod(rows, p)
}

/// `(-1)^{m(m-1)/2} Res(f, f') / a_m` with `f'` at formal degree `m - 1`.
pub fn sylvester_discriminant(f: &[u64], p: u64) -> u64 {
    let m = f.len() - 1;
    if m == 1 {
        return 1;
    }
    let deriv: Vec<u64> = (1..=m).map(|i| f[i] * (i as u64 % p) % p).collect();
    let res = sylvester_resultant(f, &deriv, p);
    let mut d = res * inv_mod(f[m], p) % p;
    if (m * (m - 1) / 2) % 2 == 1 {
        d = (p - d) % p;
    }
    d
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo monic `b` over Z/p.
pub fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top];
        for i in 0..=db {
            r[top - db + i] = (r[top - db + i] + p * p - c * b[i] % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `m` whose lower coefficients are the base-`p`
/// digits of `index`.
pub fn monic_from_index(mut index: u64, m: usize, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; m + 1];
    c[m] = 1;
    for x in c.iter_mut().take(m) {
        *x = index % p;
        index /= p;
    }
    c
}

/// Irreducibility by trial division over every monic divisor of degree <= m/2.
pub fn is_irreducible_naive(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for idx in 0..p.pow(d as u32) {
            let g = monic_from_index(idx, d, p);
            if rem_mod(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Legendre symbol of a nonzero residue via Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i32 {
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}
