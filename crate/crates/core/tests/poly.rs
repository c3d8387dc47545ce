mod common;

use std::sync::Arc;

use fqdisc::field::{make_field, FieldSpec};
use fqdisc::poly::{Poly, PolyError};
use proptest::prelude::*;

use common::sylvester_discriminant;

fn field(p: u64, k: u32) -> Arc<FieldSpec> {
    make_field(p, k, None).unwrap()
}

const FIELDS: [(u64, u32); 9] = [(2, 1), (3, 1), (5, 1), (7, 1), (13, 1), (2, 2), (2, 3), (3, 2), (5, 2)];

/// A field from `FIELDS` plus a nonzero polynomial of degree 1..=max over it.
fn field_and_poly(max: usize, monic: bool) -> impl Strategy<Value = (Arc<FieldSpec>, Poly)> {
    (0..FIELDS.len(), 1..=max, prop::collection::vec(any::<u32>(), max + 1)).prop_map(
        move |(i, m, raw)| {
            let (p, k) = FIELDS[i];
            let spec = field(p, k);
            let q = spec.q();
            let mut c: Vec<u32> = raw[..=m].iter().map(|r| r % q).collect();
            if monic {
                c[m] = 1;
            } else if c[m] == 0 {
                c[m] = 1 + raw[0] % (q - 1);
            }
            let f = Poly::new(&spec, c).unwrap();
            (spec, f)
        },
    )
}

fn nonzero(spec: &Arc<FieldSpec>, seed: u32) -> fqdisc::FieldElement {
    spec.element(1 + seed % (spec.q() - 1)).unwrap()
}

#[test]
fn text_format() {
    let f5 = field(5, 1);
    let f = Poly::parse(&f5, "1,0,1").unwrap();
    assert_eq!(f.to_string(), "x^2 + 1");
    assert_eq!(f.to_coeff_string(), "1,0,1");
    assert!(matches!(Poly::parse(&f5, "1,x"), Err(PolyError::Parse(_))));
    assert!(Poly::parse(&f5, "1,7").is_err());
}

#[test]
fn mismatched_fields() {
    let a = Poly::x(&field(3, 1));
    let b = Poly::x(&field(5, 1));
    assert_eq!(a.add(&b).unwrap_err(), PolyError::Mismatch);
}

#[test]
fn derivative_vanishing_in_characteristic_p() {
    let f3 = field(3, 1);
    let f = Poly::parse(&f3, "1,0,0,1").unwrap();
    assert!(f.derivative().unwrap().is_zero());
    assert_eq!(f.discriminant().unwrap().enc(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn discriminant_matches_sylvester_determinant((spec, f) in field_and_poly(7, false)) {
        prop_assume!(spec.k() == 1);
        let c: Vec<u64> = f.coeffs().iter().map(|&x| x as u64).collect();
        let want = sylvester_discriminant(&c, spec.p() as u64);
        prop_assert_eq!(f.discriminant().unwrap().enc() as u64, want);
    }

    #[test]
    fn discriminant_matches_root_oracle((_spec, f) in field_and_poly(5, false)) {
        match f.discriminant_oracle() {
            Ok(d) => prop_assert_eq!(f.discriminant().unwrap(), d),
            Err(PolyError::OracleField(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn scaling_by_gamma((spec, f) in field_and_poly(7, true), seed in any::<u32>()) {
        let c = nonzero(&spec, seed);
        let m = f.degree().unwrap() as u64;
        let g = f.gamma(&c).unwrap();
        prop_assert!(g.is_monic());
        let lhs = g.discriminant().unwrap();
        let rhs = c.pow(m * (m - 1)).unwrap().mul(&f.discriminant().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_inverse_and_multiplicative(
        (spec, f) in field_and_poly(5, true),
        raw in prop::collection::vec(any::<u32>(), 4),
        seed in any::<u32>(),
    ) {
        let c = nonzero(&spec, seed);
        let back = f.gamma(&c).unwrap().gamma(&c.inv().unwrap()).unwrap();
        prop_assert_eq!(&back, &f);
        let mut gc: Vec<u32> = raw.iter().map(|r| r % spec.q()).collect();
        gc.push(1);
        let g = Poly::new(&spec, gc).unwrap();
        let lhs = f.mul(&g).unwrap().gamma(&c).unwrap();
        let rhs = f.gamma(&c).unwrap().mul(&g.gamma(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_invariance((spec, f) in field_and_poly(7, true), seed in any::<u32>()) {
        let t = spec.element(seed % spec.q()).unwrap();
        let g = f.translate(&t).unwrap();
        prop_assert_eq!(g.degree(), f.degree());
        prop_assert_eq!(g.discriminant().unwrap(), f.discriminant().unwrap());
    }

    #[test]
    fn discriminant_of_product(
        (spec, f) in field_and_poly(4, true),
        raw in prop::collection::vec(any::<u32>(), 1..4),
    ) {
        let mut gc: Vec<u32> = raw.iter().map(|r| r % spec.q()).collect();
        gc.push(1);
        let g = Poly::new(&spec, gc).unwrap();
        let fg = f.mul(&g).unwrap();
        let res = f.resultant(&g, None).unwrap();
        let rhs = f.discriminant().unwrap()
            .mul(&g.discriminant().unwrap()).unwrap()
            .mul(&res.mul(&res).unwrap()).unwrap();
        prop_assert_eq!(fg.discriminant().unwrap(), rhs);
    }

    #[test]
    fn factorization_multiplies_back((_spec, f) in field_and_poly(8, false)) {
        let fac = f.factor().unwrap();
        prop_assert_eq!(&fac.expand(), &f);
        for (g, e) in fac.factors() {
            prop_assert!(g.is_monic() && *e >= 1);
            prop_assert!(g.is_irreducible().unwrap());
        }
        let sorted = fac.factors().windows(2).all(|w| w[0].0.canonical_cmp(&w[1].0).is_lt());
        prop_assert!(sorted);
    }

    #[test]
    fn type_agrees_with_factor_degrees((_spec, f) in field_and_poly(8, true)) {
        let fac = f.factor().unwrap();
        let squarefree = fac.factors().iter().all(|(_, e)| *e == 1);
        prop_assert_eq!(f.is_squarefree().unwrap(), squarefree);
        prop_assert_eq!(f.discriminant().unwrap().is_zero(), !squarefree);
        match f.factorization_type().unwrap() {
            None => prop_assert!(!squarefree),
            Some(t) => prop_assert_eq!(t.parts().to_vec(), fac.degrees_with_multiplicity()),
        }
        let mu = f.mobius().unwrap();
        let expect = if squarefree { if fac.factors().len() % 2 == 0 { 1 } else { -1 } } else { 0 };
        prop_assert_eq!(mu, expect);
    }

    #[test]
    fn division_identity(
        (spec, f) in field_and_poly(7, false),
        raw in prop::collection::vec(any::<u32>(), 1..5),
    ) {
        let mut gc: Vec<u32> = raw.iter().map(|r| r % spec.q()).collect();
        let last = gc.len() - 1;
        if gc[last] == 0 {
            gc[last] = 1;
        }
        let g = Poly::new(&spec, gc).unwrap();
        let (quot, rem) = f.div_rem(&g).unwrap();
        prop_assert!(rem.is_zero() || rem.degree() < g.degree());
        prop_assert_eq!(quot.mul(&g).unwrap().add(&rem).unwrap(), f);
    }
}
