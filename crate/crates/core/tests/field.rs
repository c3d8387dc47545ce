use std::collections::BTreeSet;
use std::sync::Arc;

use fqdisc::field::{field_of_order, generator, make_field, prime_power, FieldError, FieldSpec};
use proptest::prelude::*;

const ORDERS: [u64; 12] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64];

fn field(q: u64) -> Arc<FieldSpec> {
    field_of_order(q, None).unwrap()
}

#[test]
fn canonical_moduli() {
    assert_eq!(field(4).modulus(), &[1, 1]);
    assert_eq!(field(9).modulus(), &[1, 0]);
    assert_eq!(field(8).modulus(), &[1, 1, 0]);
    assert!(field(7).modulus().is_empty());
    assert_eq!(field(9).to_string(), "F_9 = F_3[y]/(y^2 + 1)");
}

#[test]
fn construction_errors() {
    assert_eq!(make_field(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
    assert_eq!(make_field(3, 0, None).unwrap_err(), FieldError::ZeroDegree);
    assert!(matches!(make_field(2, 21, None), Err(FieldError::TooLarge { .. })));
    assert!(make_field(2, 20, None).is_ok());
    assert_eq!(field_of_order(12, None).unwrap_err(), FieldError::NotPrimePower(12));
    // y^2 + 1 = (y + 1)^2 over F_2
    assert_eq!(make_field(2, 2, Some(&[1, 0])).unwrap_err(), FieldError::ReducibleModulus(2));
    assert!(matches!(make_field(3, 2, Some(&[1])), Err(FieldError::ModulusLength { .. })));
    assert_eq!(prime_power(81), Some((3, 4)));
}

#[test]
fn modulus_override_gives_a_different_but_valid_field() {
    let a = make_field(3, 2, Some(&[2, 1])).unwrap();
    assert_ne!(a.as_ref(), field(9).as_ref());
    let squares: BTreeSet<u32> = (1..9).map(|x| a.mul(x, x)).collect();
    assert_eq!(squares.len(), 4);
}

#[test]
fn generators_are_primitive_and_smallest() {
    for q in ORDERS {
        let f = field(q);
        let g = generator(&f);
        assert_eq!(g.order().unwrap(), q - 1, "q = {q}");
        for smaller in 1..g.enc() {
            assert!(f.element(smaller).unwrap().order().unwrap() < q - 1);
        }
    }
    assert_eq!(generator(&field(5)).enc(), 2);
    assert_eq!(generator(&field(7)).enc(), 3);
}

#[test]
fn quadratic_character_matches_squares() {
    for q in ORDERS.into_iter().filter(|q| q % 2 == 1) {
        let f = field(q);
        let squares: BTreeSet<u32> = (1..f.q()).map(|x| f.mul(x, x)).collect();
        for e in f.elements().skip(1) {
            let chi = e.quadratic_character().unwrap();
            assert_eq!(chi == 1, squares.contains(&e.enc()), "q = {q}, a = {}", e.enc());
            assert_eq!(chi, f.chi(e.enc()));
        }
        assert_eq!(f.zero().quadratic_character().unwrap_err(), FieldError::ZeroCharacter);
    }
    assert_eq!(field(8).one().quadratic_character().unwrap_err(), FieldError::EvenOrder(8));
}

#[test]
fn nth_powers() {
    let f7 = field(7);
    let cubes: BTreeSet<u32> = (1..7).map(|x| f7.pow(x, 3)).collect();
    for e in f7.elements().skip(1) {
        assert_eq!(e.is_nth_power(3).unwrap(), cubes.contains(&e.enc()));
    }
    assert!(f7.zero().is_nth_power(2).is_err());
}

#[test]
fn frobenius_root() {
    for q in ORDERS {
        let f = field(q);
        for a in 0..f.q() {
            assert_eq!(f.pth_root(f.pow(a, f.p() as u64)), a);
        }
    }
}

#[test]
fn zero_to_zero_is_an_error() {
    assert_eq!(field(5).zero().pow(0).unwrap_err(), FieldError::ZeroToZero);
    assert_eq!(field(5).zero().inv().unwrap_err(), FieldError::ZeroInverse);
}

fn field_and_three() -> impl Strategy<Value = (Arc<FieldSpec>, u32, u32, u32)> {
    (0..ORDERS.len(), any::<u32>(), any::<u32>(), any::<u32>()).prop_map(|(i, a, b, c)| {
        let f = field(ORDERS[i]);
        let q = f.q();
        (f, a % q, b % q, c % q)
    })
}

proptest! {
    #[test]
    fn ring_axioms((f, a, b, c) in field_and_three()) {
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn pow_is_repeated_multiplication((f, a, _, _) in field_and_three(), n in 0u64..40) {
        prop_assume!(a != 0 || n > 0);
        let mut acc = 1;
        for _ in 0..n {
            acc = f.mul(acc, a);
        }
        let e = f.element(a).unwrap();
        prop_assert_eq!(e.pow(n).unwrap().enc(), acc);
    }

    #[test]
    fn coordinates_round_trip((f, a, b, _) in field_and_three()) {
        let ca = f.coords(a);
        prop_assert_eq!(ca.len(), f.k() as usize);
        prop_assert_eq!(f.from_coords(&ca), a);
        // addition is coordinatewise mod p
        let cb = f.coords(b);
        let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % f.p()).collect();
        prop_assert_eq!(f.add(a, b), f.from_coords(&sum));
    }

    #[test]
    fn character_is_multiplicative((f, a, b, _) in field_and_three()) {
        prop_assume!(f.is_odd() && a != 0 && b != 0);
        prop_assert_eq!(f.chi(f.mul(a, b)), f.chi(a) * f.chi(b));
    }
}
