//! Complete factorization: squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting (Cantor–Zassenhaus for odd `q`,
//! the trace map for even `q`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::raw::{self, trim};
use super::{Poly, PolyError};
use crate::field::{FieldElement, FieldSpec};

/// `unit * ∏ factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    unit: FieldElement,
    factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        let spec = self.unit.spec();
        let mut acc = Poly::from_raw(spec, vec![self.unit.enc()]);
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e)).expect("same field");
        }
        acc
    }

    /// Factor degrees repeated by multiplicity, non-increasing.
    pub fn degrees_with_multiplicity(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.degree().unwrap(), *e as usize))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl Poly {
    /// Full factorization into monic irreducibles. Randomness for the
    /// equal-degree step is seeded from `q` and the coefficients, so results
    /// do not depend on call order or thread.
    pub fn factor(&self) -> Result<Factorization, PolyError> {
        self.nonconstant()?;
        let fs = self.spec();
        let lead = *self.coeffs.last().unwrap();
        let mut monic = self.coeffs.clone();
        raw::make_monic(fs, &mut monic);
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(fs.q(), &self.coeffs));

        let mut found: Vec<(Vec<u32>, u32)> = Vec::new();
        for (part, e) in squarefree_decomposition(fs, &monic) {
            for (block, d) in distinct_degree(fs, &part) {
                for f in equal_degree(fs, &block, d, &mut rng) {
                    found.push((f, e));
                }
            }
        }
        let mut factors: Vec<(Poly, u32)> = found
            .into_iter()
            .map(|(c, e)| (Poly::from_raw(fs, c), e))
            .collect();
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
        for (f, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == f => *acc += e,
                _ => merged.push((f, e)),
            }
        }
        Ok(Factorization { unit: FieldElement::from_raw(fs, lead), factors: merged })
    }
}

fn seed_for(q: u32, coeffs: &[u32]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    std::iter::once(q)
        .chain(coeffs.iter().copied())
        .fold(OFFSET, |h, v| (h ^ v as u64).wrapping_mul(PRIME))
}

fn exact_div(fs: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (q, r) = raw::divrem(fs, a, b);
    debug_assert!(r.is_empty());
    q
}

fn pth_root_poly(fs: &FieldSpec, f: &[u32]) -> Vec<u32> {
    let p = fs.p() as usize;
    let mut out: Vec<u32> = f.iter().step_by(p).map(|&c| fs.pth_root(c)).collect();
    trim(&mut out);
    out
}

/// `(g_i, i)` with `f = ∏ g_i^i`, each `g_i` squarefree and monic.
fn squarefree_decomposition(fs: &FieldSpec, f: &[u32]) -> Vec<(Vec<u32>, u32)> {
    let p = fs.p();
    let mut out = Vec::new();
    let mut fp = Vec::new();
    raw::derivative_into(fs, f, &mut fp);
    let mut rest = f.to_vec();
    if !fp.is_empty() {
        let mut c = raw::gcd(fs, f, &fp);
        let mut w = exact_div(fs, f, &c);
        let mut i = 1;
        while w.len() > 1 {
            let y = raw::gcd(fs, &w, &c);
            let z = exact_div(fs, &w, &y);
            if z.len() > 1 {
                out.push((z, i));
            }
            i += 1;
            c = exact_div(fs, &c, &y);
            w = y;
        }
        rest = c;
    }
    if rest.len() > 1 {
        for (g, e) in squarefree_decomposition(fs, &pth_root_poly(fs, &rest)) {
            out.push((g, e * p));
        }
    }
    out
}

fn mulmod(fs: &FieldSpec, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    let mut out = raw::mul(fs, a, b);
    raw::rem_in_place(fs, &mut out, m);
    out
}

fn powmod(fs: &FieldSpec, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    raw::rem_in_place(fs, &mut acc, m);
    let mut base = a.to_vec();
    raw::rem_in_place(fs, &mut base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(fs, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(fs, &base, &base, m);
        }
    }
    acc
}

/// Splits a squarefree monic `f` into `(product of all degree-d factors, d)`.
pub(super) fn distinct_degree(fs: &FieldSpec, f: &[u32]) -> Vec<(Vec<u32>, usize)> {
    let mut out = Vec::new();
    let mut g = f.to_vec();
    let mut h = vec![0u32, 1];
    raw::rem_in_place(fs, &mut h, &g);
    let mut d = 0;
    while g.len() > 2 * (d + 1) {
        d += 1;
        h = powmod(fs, &h, fs.q() as u64, &g);
        let t = raw::sub(fs, &h, &[0, 1]);
        let common = raw::gcd(fs, &g, &t);
        if common.len() > 1 {
            g = exact_div(fs, &g, &common);
            raw::rem_in_place(fs, &mut h, &g);
            out.push((common, d));
        }
    }
    if g.len() > 1 {
        let d = g.len() - 1;
        out.push((g, d));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree(fs: &FieldSpec, g: &[u32], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    loop {
        let mut a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..fs.q())).collect();
        trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = splitting_candidate(fs, &a, g, d);
        let t = raw::gcd(fs, g, &b);
        if t.len() > 1 && t.len() < g.len() {
            let other = exact_div(fs, g, &t);
            let mut out = equal_degree(fs, &t, d, rng);
            out.extend(equal_degree(fs, &other, d, rng));
            return out;
        }
    }
}

fn splitting_candidate(fs: &FieldSpec, a: &[u32], g: &[u32], d: usize) -> Vec<u32> {
    let q = fs.q() as u64;
    if fs.is_odd() {
        // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
        let mut conj = a.to_vec();
        raw::rem_in_place(fs, &mut conj, g);
        let mut norm = conj.clone();
        for _ in 1..d {
            conj = powmod(fs, &conj, q, g);
            norm = mulmod(fs, &norm, &conj, g);
        }
        let half = powmod(fs, &norm, (q - 1) / 2, g);
        raw::sub(fs, &half, &[1])
    } else {
        // trace to F_2: a + a^2 + ... + a^{2^{kd-1}}
        let steps = fs.k() as usize * d;
        let mut term = a.to_vec();
        raw::rem_in_place(fs, &mut term, g);
        let mut acc = term.clone();
        for _ in 1..steps {
            term = mulmod(fs, &term, &term, g);
            acc = raw::add(fs, &acc, &term);
        }
        acc
    }
}
