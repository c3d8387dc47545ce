mod common;

use std::sync::Arc;

use fqdisc::census::{self, is_equally_distributed, CensusMode};
use fqdisc::field::{field_of_order, prime_divisors, FieldSpec};
use fqdisc::theory::{
    check_vlemma, construct_disc, counterexample_partition, degree_family, gauss_count, hypothesis,
    s_lambda_size, valuation, Partition, SurjectCase, TheoryError,
};
use num_bigint::BigUint;

use common::{is_irreducible_naive, monic_from_index};

fn field(q: u64) -> Arc<FieldSpec> {
    field_of_order(q, None).unwrap()
}

#[test]
fn gauss_count_matches_trial_division() {
    for (p, max_m) in [(2u64, 8usize), (3, 6), (5, 4), (7, 3)] {
        for m in 1..=max_m {
            let naive = (0..p.pow(m as u32))
                .filter(|&i| is_irreducible_naive(&monic_from_index(i, m, p), p))
                .count() as u64;
            assert_eq!(gauss_count(&field(p), m).unwrap(), naive, "p={p} m={m}");
        }
    }
}

#[test]
fn vlemma_for_all_small_fields() {
    let mut checked = 0;
    for q in 3..=64u64 {
        let Ok(f) = field_of_order(q, None) else { continue };
        for l in prime_divisors(q - 1).into_iter().filter(|&l| l != 2) {
            let mut t = 0;
            while (1u64 << t) * l <= 12 {
                let r = check_vlemma(&f, l, t).unwrap();
                assert!(r.passed(), "q={q} l={l} t={t}: {r:?}");
                checked += 1;
                t += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn vlemma_preconditions() {
    assert!(matches!(check_vlemma(&field(7), 5, 0), Err(TheoryError::Precondition(_))));
    assert!(matches!(check_vlemma(&field(7), 9, 0), Err(TheoryError::Precondition(_))));
    assert_eq!(valuation(7, 0), Err(TheoryError::ZeroValuation));
}

#[test]
fn degree_family_satisfies_hypothesis() {
    for q in 2..=16u64 {
        let Ok(f) = field_of_order(q, None) else { continue };
        for a in 3..=6 {
            let m = degree_family(&f, a).unwrap();
            assert!(hypothesis(&f, m).unwrap().applies, "q={q} a={a} m={m}");
        }
    }
}

#[test]
fn hypothesis_g_divides_both() {
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16] {
        for m in 2..=20u64 {
            let h = hypothesis(&field(q), m as usize).unwrap();
            assert_eq!((q - 1) % h.g, 0);
            assert_eq!((m * (m - 1)) % h.g, 0);
            if q % 2 == 1 {
                assert_eq!(h.g % 2, 0);
            }
        }
    }
}

#[test]
fn counterexamples_are_not_equally_distributed() {
    for q in [3u64, 7, 11] {
        let f = field(q);
        for m in 2..=6 {
            let h = hypothesis(&f, m).unwrap();
            let c = counterexample_partition(&f, m).unwrap();
            assert_eq!(c.is_none(), h.applies, "q={q} m={m}");
            let Some(c) = c else { continue };
            assert!(!c.l_divides_size);
            assert_eq!(c.partition.size(), m);
            let t = census::census(&f, m, &CensusMode::ByType(c.partition.clone()), true, 1).unwrap();
            assert_eq!(BigUint::from(t.total()), c.size);
            assert!(!is_equally_distributed(&t).unwrap().uniform, "q={q} m={m} {}", c.partition);
        }
    }
}

#[test]
fn counterexample_refuses_non_squarefree() {
    assert_eq!(counterexample_partition(&field(9), 4).unwrap_err(), TheoryError::NotSquarefree(8));
    assert_eq!(counterexample_partition(&field(5), 4).unwrap_err(), TheoryError::NotSquarefree(4));
}

#[test]
fn s_lambda_handles_repeated_parts() {
    let f = field(4);
    // C(N_4(1), 2) * N_4(2) = C(4, 2) * 6
    assert_eq!(s_lambda_size(&f, &Partition::new(vec![1, 2, 1]).unwrap()).unwrap(), 36);
}

#[test]
fn construct_disc_is_total_on_small_fields() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field(q);
        let p = f.p() as usize;
        for m in p.max(2)..=7 {
            for d in f.elements() {
                let c = construct_disc(&f, m, &d).unwrap();
                assert_eq!(c.poly.degree(), Some(m));
                assert!(c.poly.is_monic());
                assert_eq!(c.poly.discriminant().unwrap(), d);
                assert_ne!(c.case, SurjectCase::Search);
            }
        }
    }
}

#[test]
fn construct_disc_cases() {
    let f5 = field(5);
    let case = |m, d| construct_disc(&f5, m, &f5.element(d).unwrap()).unwrap().case;
    assert_eq!(case(6, 3), SurjectCase::Case1);
    assert_eq!(case(5, 4), SurjectCase::Case2);
    assert_eq!(case(2, 3), SurjectCase::Quadratic);
    assert_eq!(case(3, 3), SurjectCase::Search);
    let f8 = field(8);
    assert_eq!(construct_disc(&f8, 6, &f8.element(5).unwrap()).unwrap().case, SurjectCase::Case3);
    assert_eq!(construct_disc(&f8, 2, &f8.element(5).unwrap()).unwrap().case, SurjectCase::Case4);
    assert_eq!(construct_disc(&f8, 5, &f8.element(5).unwrap()).unwrap().case, SurjectCase::Case1);
}
