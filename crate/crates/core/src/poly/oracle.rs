//! Discriminant straight from the root-difference product, evaluated in a
//! splitting field. Independent of the resultant path and used to check it.

use num_integer::Integer;

use super::{Poly, PolyError};
use crate::field::{make_field, FieldElement, FieldSpec, MAX_ORDER};

pub const ORACLE_MAX_DEGREE: usize = 8;

/// Images of `F_q` inside a larger field of the same characteristic.
struct Embedding {
    forward: Vec<u32>,
    backward: Vec<Option<u32>>,
}

impl Embedding {
    fn new(small: &FieldSpec, big: &FieldSpec) -> Embedding {
        // The prime subfield has the same encodings in both fields.
        let beta = if small.k() == 1 {
            0
        } else {
            let mut modulus: Vec<u32> = small.modulus().to_vec();
            modulus.push(1);
            (0..big.q())
                .find(|&b| {
                    modulus.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, b), c)) == 0
                })
                .expect("the subfield modulus splits in the extension")
        };
        let mut forward = Vec::with_capacity(small.q() as usize);
        let mut backward = vec![None; big.q() as usize];
        for e in 0..small.q() {
            let image = if small.k() == 1 {
                e
            } else {
                small
                    .coords(e)
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| big.add(big.mul(acc, beta), c))
            };
            forward.push(image);
            backward[image as usize] = Some(e);
        }
        Embedding { forward, backward }
    }
}

impl Poly {
    /// `a_m^{2m-2} ∏_{i<j} (α_i - α_j)^2` with the roots found by exhaustive
    /// search in `F_{q^L}`, `L` the lcm of the irreducible factor degrees.
    pub fn discriminant_oracle(&self) -> Result<FieldElement, PolyError> {
        let m = self.nonconstant()?;
        if m > ORACLE_MAX_DEGREE {
            return Err(PolyError::OracleDegree(m));
        }
        let small = self.spec();
        if m == 1 {
            return Ok(FieldElement::from_raw(small, 1));
        }
        let fac = self.factor()?;
        let ext = fac
            .factors()
            .iter()
            .fold(1u64, |l, (g, _)| l.lcm(&(g.degree().unwrap() as u64)));
        let big_k = small.k() as u64 * ext;
        if (small.p() as f64).powf(big_k as f64) > MAX_ORDER as f64 {
            return Err(PolyError::OracleField(big_k));
        }
        let big = make_field(small.p() as u64, big_k as u32, None)?;
        let emb = Embedding::new(small, &big);

        let mut roots = Vec::with_capacity(m);
        for (g, e) in fac.factors() {
            let image: Vec<u32> = g.coeffs().iter().map(|&c| emb.forward[c as usize]).collect();
            let found: Vec<u32> = (0..big.q())
                .filter(|&x| image.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), c)) == 0)
                .collect();
            assert_eq!(found.len(), g.degree().unwrap(), "irreducible factor must split");
            for _ in 0..*e {
                roots.extend_from_slice(&found);
            }
        }
        debug_assert_eq!(roots.len(), m);

        let lead = emb.forward[*self.coeffs().last().unwrap() as usize];
        let mut value = big.pow(lead, (2 * m - 2) as u64);
        for i in 0..m {
            for j in i + 1..m {
                let diff = big.sub(roots[i], roots[j]);
                value = big.mul(value, big.mul(diff, diff));
            }
        }
        let back = emb.backward[value as usize].expect("discriminant lies in the base field");
        Ok(FieldElement::from_raw(small, back))
    }
}
