//! Monic polynomials with a prescribed discriminant.

use std::fmt;
use std::sync::Arc;

use super::TheoryError;
use crate::census::{default_workers, first_match};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::raw::disc_sign;
use crate::poly::Poly;

/// Which family produced a [`Construction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurjectCase {
    /// `x^m - x^{m-p} + a x^p + 1`, `p ∤ m`.
    Case1,
    /// `x^m + x^2 + a`, `p` odd and `p | m`.
    Case2,
    /// `x^m + x^3 + a`, `p = 2`, `m >= 4` even.
    Case3,
    /// `x^2 + a x + 1` over a field of characteristic 2.
    Case4,
    /// `x^2 + c` with `c = -d/4`, odd characteristic.
    Quadratic,
    /// Exhaustive search for `2 < m < p`, where existence is only conjectured.
    Search,
}

impl fmt::Display for SurjectCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurjectCase::Case1 => write!(f, "case 1"),
            SurjectCase::Case2 => write!(f, "case 2"),
            SurjectCase::Case3 => write!(f, "case 3"),
            SurjectCase::Case4 => write!(f, "case 4"),
            SurjectCase::Quadratic => write!(f, "quadratic"),
            SurjectCase::Search => write!(f, "search (conjecture probe)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub poly: Poly,
    pub case: SurjectCase,
}

/// Builds `Σ terms` as a degree-`m` coefficient vector, adding colliding terms.
fn sparse(m: usize, fs: &FieldSpec, terms: &[(usize, u32)]) -> Vec<u32> {
    let mut c = vec![0u32; m + 1];
    for &(i, v) in terms {
        c[i] = fs.add(c[i], v);
    }
    c
}

/// A monic degree-`m` polynomial whose discriminant is `d`.
pub fn construct_disc(
    spec: &Arc<FieldSpec>,
    m: usize,
    d: &FieldElement,
) -> Result<Construction, TheoryError> {
    if m < 2 {
        return Err(TheoryError::TooSmall { op: "construct_disc degree", min: 2, got: m as u64 });
    }
    if !crate::field::same_field(spec, d.spec()) {
        return Err(crate::field::FieldError::Mismatch.into());
    }
    let fs: &FieldSpec = spec;
    let p = fs.p() as usize;
    let d = d.enc();
    let sign = disc_sign(fs, m);

    let (coeffs, case) = if p == 2 && m == 2 {
        let a = fs.pth_root(d);
        (vec![1, a, 1], SurjectCase::Case4)
    } else if m == 2 {
        let c = fs.neg(fs.mul(d, fs.inv(fs.from_int(4))));
        (vec![c, 0, 1], SurjectCase::Quadratic)
    } else if m < p {
        let hit = first_match(spec, m, default_workers(), |ws, f| ws.disc_monic(fs, f) == d);
        let Some(f) = hit else {
            return Err(TheoryError::SearchExhausted { q: fs.q(), m, d });
        };
        (f.coeffs().to_vec(), SurjectCase::Search)
    } else if !m.is_multiple_of(p) {
        // disc = sign * m^m * (a + 1)^p
        let sigma = fs.mul(sign, fs.pow(fs.from_int(m as i64), m as u64));
        let a = fs.sub(fs.pth_root(fs.mul(d, fs.inv(sigma))), 1);
        let minus_one = fs.neg(1);
        (sparse(m, fs, &[(m, 1), (m - p, minus_one), (p, a), (0, 1)]), SurjectCase::Case1)
    } else if p != 2 {
        // disc = sign * (-2)^m * a
        let scale = fs.mul(sign, fs.pow(fs.from_int(-2), m as u64));
        let a = fs.mul(d, fs.inv(scale));
        (sparse(m, fs, &[(m, 1), (2, 1), (0, a)]), SurjectCase::Case2)
    } else {
        let a = fs.pth_root(d);
        (sparse(m, fs, &[(m, 1), (3, 1), (0, a)]), SurjectCase::Case3)
    };

    let poly = Poly::new(spec, coeffs)?;
    let got = poly.discriminant()?.enc();
    if got != d {
        return Err(TheoryError::Unverified { want: d, got });
    }
    Ok(Construction { poly, case })
}
