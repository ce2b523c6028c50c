use negafactor::cosets::{
    check_parity_lemma, coset, coset_split_structure, mult_order_mod, representative_sets, theta,
    two_adic, CosetTransition,
};
use negafactor::factorizer::{
    count_factors_fast, count_factors_sum, decompose, factor_xn_plus_1, ord_two_power, profile,
    stable_threshold,
};
use negafactor::gf::{arithmetic, embed, FieldOp};
use negafactor::negacyclic::{
    code_count_threshold, count_codes, enumerate_codes, lift_generator, NegacyclicCode,
};
use negafactor::poly::{factor_generic, minimal_polynomial, DEFAULT_SEED};
use negafactor::{make_field, Error, FieldSpec, Poly};
use num_bigint::BigUint;

fn poly(field: &FieldSpec, coeffs: &[u64]) -> Poly {
    Poly::from_prime_coeffs(field, coeffs)
}

/// The six factors of x^22 + 1 over F_5, as printed, in canonical order.
const X22_FACTORS: [&str; 6] = [
    "x + 2",
    "x + 3",
    "x^5 + x^4 + x^3 + 2*x^2 + x + 2",
    "x^5 + 2*x^4 + x^3 + 2*x^2 + 3*x + 2",
    "x^5 + 4*x^4 + x^3 + 3*x^2 + x + 3",
    "x^5 + 3*x^4 + x^3 + 3*x^2 + 3*x + 3",
];

fn brute_force_order(f: &FieldSpec, a: &[u64]) -> u64 {
    let mut x = a.to_vec();
    let mut k = 1;
    while !f.is_one(&x) {
        x = f.mul(&x, a);
        k += 1;
    }
    k
}

// ---- gf ----

#[test]
fn make_field_examples() {
    let f5 = make_field(5, 1).unwrap();
    assert_eq!(f5.modulus(), &[0, 1]);
    let f9 = make_field(3, 2).unwrap();
    assert_eq!(f9.modulus(), &[1, 0, 1]);
    // x^2 + 1 has no root in F_3, while every smaller monic quadratic does
    let has_root = |c: &[u64]| (0..3).any(|x| (c[0] + c[1] * x + x * x).is_multiple_of(3));
    assert!(!has_root(&[1, 0]));
    assert!(has_root(&[0, 0]) && has_root(&[0, 1]) && has_root(&[0, 2]));
    assert_eq!(make_field(2, 1).unwrap_err(), Error::EvenCharacteristic);
}

#[test]
fn arithmetic_examples() {
    let f5 = make_field(5, 1).unwrap();
    let three = f5.element(&[3]).unwrap();
    let four = f5.element(&[4]).unwrap();
    assert_eq!(
        arithmetic(&three, &four, FieldOp::Mul).unwrap().as_prime(),
        Some(2)
    );
    assert_eq!(
        arithmetic(&three, &three, FieldOp::Div).unwrap().as_prime(),
        Some(1)
    );
    let f9 = make_field(3, 2).unwrap();
    let w = f9.element(&[0, 1]).unwrap();
    assert_eq!(w.mul(&w).unwrap().coeffs(), &[2, 0]);
    let zero = f5.element(&[0]).unwrap();
    assert_eq!(three.div(&zero).unwrap_err(), Error::DivisionByZero);
}

#[test]
fn generator_examples() {
    let f5 = make_field(5, 1).unwrap();
    assert_eq!(f5.find_generator().unwrap().as_prime(), Some(2));
    let f3 = make_field(3, 1).unwrap();
    assert_eq!(f3.find_generator().unwrap().as_prime(), Some(2));
    let f9 = make_field(3, 2).unwrap();
    let g = f9.find_generator().unwrap();
    assert_eq!(brute_force_order(&f9, g.coeffs()), 8);
}

#[test]
fn root_of_unity_examples() {
    let f5 = make_field(5, 1).unwrap();
    let r = f5.nth_root_of_unity(4).unwrap();
    assert_eq!(r.as_prime(), Some(2));
    assert_eq!(brute_force_order(&f5, r.coeffs()), 4);
    assert!(make_field(7, 3)
        .unwrap()
        .nth_root_of_unity(1)
        .unwrap()
        .is_one());
    assert_eq!(
        f5.nth_root_of_unity(3).unwrap_err(),
        Error::OrderNotDivisible { n: 3 }
    );
}

#[test]
fn embed_examples() {
    let f3 = make_field(3, 1).unwrap();
    let f9 = make_field(3, 2).unwrap();
    let f81 = make_field(3, 4).unwrap();
    let two = f3.element(&[2]).unwrap();
    assert_eq!(embed(&f3, &f9, &two).unwrap().coeffs(), &[2, 0]);
    let a = f9.element(&[2, 1]).unwrap();
    assert_eq!(embed(&f9, &f9, &a).unwrap(), a);
    let w = f9.element(&[0, 1]).unwrap();
    let image = embed(&f9, &f81, &w).unwrap();
    let sq = image.mul(&image).unwrap();
    assert!(f81.is_zero(&f81.add(sq.coeffs(), &f81.one())));
}

#[test]
fn multiplicative_order_examples() {
    let f5 = make_field(5, 1).unwrap();
    assert_eq!(f5.element(&[1]).unwrap().multiplicative_order().unwrap(), 1);
    assert_eq!(f5.element(&[2]).unwrap().multiplicative_order().unwrap(), 4);
    assert_eq!(f5.element(&[4]).unwrap().multiplicative_order().unwrap(), 2);
    assert_eq!(brute_force_order(&f5, &[2]), 4);
    let f81 = make_field(3, 4).unwrap();
    for idx in [5u64, 17, 40, 80] {
        let a = f81.element(&f81.element_at(idx)).unwrap();
        assert_eq!(
            a.multiplicative_order().unwrap() as u64,
            brute_force_order(&f81, a.coeffs())
        );
    }
    assert_eq!(
        f5.element(&[0])
            .unwrap()
            .multiplicative_order()
            .unwrap_err(),
        Error::ZeroElement
    );
}

// ---- cosets ----

#[test]
fn theta_order_and_valuation_examples() {
    assert_eq!(theta(12, 8), 3);
    assert_eq!(theta(7, 0), 1);
    assert_eq!(theta(44, 11), 4);
    assert_eq!(mult_order_mod(11, 5).unwrap(), 5);
    assert_eq!(mult_order_mod(1, 7).unwrap(), 1);
    assert_eq!(mult_order_mod(16, 3).unwrap(), 4);
    assert_eq!(two_adic(8), 3);
    assert_eq!(two_adic(24), 3);
    assert_eq!(two_adic(7), 0);
}

#[test]
fn coset_examples() {
    assert_eq!(coset(3, 8, 1).unwrap().elements, vec![1, 3]);
    assert_eq!(coset(11, 30, 0).unwrap().elements, vec![0]);
    let c = coset(5, 44, 11).unwrap();
    assert_eq!(c.elements, vec![11]);
    assert_eq!(c.len() as u64, mult_order_mod(theta(44, 11), 5).unwrap());
}

#[test]
fn representative_set_examples() {
    let s = representative_sets(5, 44).unwrap();
    assert_eq!(s.odd.len(), 6);
    let s = representative_sets(3, 2).unwrap();
    assert_eq!((s.all, s.odd), (vec![0, 1], vec![1]));
    assert_eq!(representative_sets(3, 16).unwrap().odd.len(), 2);
}

#[test]
fn parity_and_split_examples() {
    assert!(check_parity_lemma(5, 44));
    assert!(check_parity_lemma(3, 4));
    assert!(check_parity_lemma(7, 2));
    assert_eq!(
        coset_split_structure(5, 1, 2).unwrap(),
        CosetTransition::Merges
    );
    assert_eq!(
        coset_split_structure(3, 1, 2).unwrap(),
        CosetTransition::Splits
    );
    assert_eq!(
        coset_split_structure(3, 1, 1).unwrap(),
        CosetTransition::Merges
    );
}

// ---- poly ----

#[test]
fn poly_arithmetic_examples() {
    let f3 = make_field(3, 1).unwrap();
    let a = poly(&f3, &[2, 1, 1]);
    let b = poly(&f3, &[2, 2, 1]);
    let target = Poly::x_pow_plus_one(&f3, 4);
    assert_eq!(&a * &b, target);
    let f = poly(&f3, &[1, 2, 0, 2]);
    assert_eq!(f.gcd(&Poly::zero(&f3)), f.monic());
    let g = poly(&f3, &[1, 0, 1]);
    let (quo, rem) = target.div_rem(&g);
    assert_eq!(&(&quo * &g) + &rem, target);
    assert!(rem.degree().unwrap_or(0) < 2);
    assert_eq!(quo, poly(&f3, &[2, 0, 1]));
    assert_eq!(
        target.try_div_rem(&Poly::zero(&f3)).unwrap_err(),
        Error::DivisionByZero
    );
}

#[test]
fn substitution_examples() {
    let f5 = make_field(5, 1).unwrap();
    assert_eq!(
        poly(&f5, &[2, 1]).substitute_power(2),
        poly(&f5, &[2, 0, 1])
    );
    let f3 = make_field(3, 1).unwrap();
    let f = poly(&f3, &[2, 1, 1]);
    assert_eq!(f.substitute_power(1), f);
    assert_eq!(f.substitute_power(2), poly(&f3, &[2, 0, 1, 0, 1]));
}

#[test]
fn irreducibility_examples() {
    let f3 = make_field(3, 1).unwrap();
    let f5 = make_field(5, 1).unwrap();
    let x2p1_3 = poly(&f3, &[1, 0, 1]);
    assert!(x2p1_3.is_irreducible());
    assert!(x2p1_3.roots().is_empty());
    let x2p1_5 = poly(&f5, &[1, 0, 1]);
    assert!(!x2p1_5.is_irreducible());
    assert_eq!(&poly(&f5, &[2, 1]) * &poly(&f5, &[3, 1]), x2p1_5);
    assert!(poly(&f5, &[4, 1]).is_irreducible());
}

#[test]
fn minimal_polynomial_examples() {
    let f5 = make_field(5, 1).unwrap();
    let c = coset(5, 44, 11).unwrap();
    let m = minimal_polynomial(&f5, 44, &c).unwrap();
    assert_eq!(m.degree(), Some(c.len()));
    assert!(m.divides(&Poly::x_pow_minus_one(&f5, 44)));
    assert_eq!(
        minimal_polynomial(&f5, 2, &[1]).unwrap(),
        poly(&f5, &[1, 1])
    );
    let sets = representative_sets(5, 44).unwrap();
    let mut found: Vec<Poly> = sets
        .odd_cosets()
        .map(|c| minimal_polynomial(&f5, 44, c).unwrap())
        .collect();
    found.sort();
    let printed: Vec<String> = found.iter().map(Poly::to_string).collect();
    assert_eq!(printed, X22_FACTORS);
}

#[test]
fn generic_factorization_examples() {
    let f3 = make_field(3, 1).unwrap();
    let out = factor_generic(&Poly::x_pow_plus_one(&f3, 4), DEFAULT_SEED).unwrap();
    assert_eq!(
        out.factors,
        vec![(poly(&f3, &[2, 1, 1]), 1), (poly(&f3, &[2, 2, 1]), 1)]
    );
    let f5 = make_field(5, 1).unwrap();
    let out = factor_generic(&Poly::x_pow_plus_one(&f5, 22), DEFAULT_SEED).unwrap();
    let printed: Vec<String> = out.factors.iter().map(|(f, _)| f.to_string()).collect();
    assert_eq!(printed, X22_FACTORS);
    let out = factor_generic(&Poly::x_pow_plus_one(&f3, 3), DEFAULT_SEED).unwrap();
    assert_eq!(out.factors, vec![(poly(&f3, &[1, 1]), 3)]);
}

// ---- factorizer ----

#[test]
fn decompose_and_profile_examples() {
    assert_eq!(decompose(44, 5), (0, 2, 11));
    assert_eq!(decompose(12, 3), (1, 2, 1));
    assert_eq!(decompose(1, 7), (0, 0, 1));
    let p = profile(3, 5, 0, 0).unwrap();
    assert_eq!((p.beta, p.lambda), (3, 2));
    let p = profile(5, 11, 0, 0).unwrap();
    assert_eq!((p.beta, p.lambda), (3, 0));
    let p = profile(7, 1, 0, 0).unwrap();
    assert_eq!((p.beta, p.lambda), (4, 0));
}

#[test]
fn two_power_order_examples() {
    for (q, i, want) in [(3, 1, 1), (3, 3, 2), (3, 4, 4), (5, 2, 1), (5, 3, 2)] {
        assert_eq!(ord_two_power(q, i), want);
        assert_eq!(mult_order_mod(1 << i, q).unwrap(), want);
    }
}

#[test]
fn count_examples() {
    assert_eq!(count_factors_sum(5, 22).unwrap(), 6);
    assert_eq!(count_factors_sum(3, 1).unwrap(), 1);
    assert_eq!(count_factors_sum(3, 20).unwrap(), 6);
    assert_eq!(
        count_factors_fast(&profile(3, 1, 5, 0).unwrap()).unwrap(),
        2
    );
    assert_eq!(
        count_factors_fast(&profile(9, 13, 1, 0).unwrap()).unwrap(),
        10
    );
    assert_eq!(
        count_factors_fast(&profile(7, 15, 4, 0).unwrap()).unwrap(),
        60
    );
}

#[test]
fn threshold_examples() {
    assert_eq!(stable_threshold(3, 1).unwrap(), 2);
    assert_eq!(stable_threshold(5, 1).unwrap(), 1);
    assert_eq!(stable_threshold(3, 5).unwrap(), 3);
    assert_eq!(code_count_threshold(3, 1).unwrap(), 2);
    assert_eq!(code_count_threshold(5, 1).unwrap(), 1);
    assert_eq!(code_count_threshold(3, 5).unwrap(), 3);
}

#[test]
fn factorization_examples() {
    let f5 = make_field(5, 1).unwrap();
    let r22 = factor_xn_plus_1(&f5, 22, true).unwrap();
    let printed: Vec<String> = r22
        .factors
        .factors
        .iter()
        .map(|(f, _)| f.to_string())
        .collect();
    assert_eq!(printed, X22_FACTORS);
    assert!(r22.factors.factors.iter().all(|(_, e)| *e == 1));
    let r44 = factor_xn_plus_1(&f5, 44, true).unwrap();
    let mut images: Vec<Poly> = r22
        .factors
        .factors
        .iter()
        .map(|(f, _)| f.substitute_power(2))
        .collect();
    images.sort();
    let got: Vec<Poly> = r44.factors.factors.iter().map(|(f, _)| f.clone()).collect();
    assert_eq!(got, images);
    let f3 = make_field(3, 1).unwrap();
    let r3 = factor_xn_plus_1(&f3, 3, true).unwrap();
    assert_eq!(r3.factors.factors, vec![(poly(&f3, &[1, 1]), 3)]);
    let r4 = factor_xn_plus_1(&f3, 4, true).unwrap();
    let oracle = factor_generic(&Poly::x_pow_plus_one(&f3, 4), DEFAULT_SEED).unwrap();
    assert_eq!(r4.factors, oracle);
}

#[test]
fn factorization_rejects_even_characteristic() {
    assert!(matches!(
        FieldSpec::from_order(4),
        Err(Error::EvenCharacteristic)
    ));
}

// ---- negacyclic ----

#[test]
fn code_count_examples() {
    assert_eq!(count_codes(3, 4).unwrap(), BigUint::from(4u32));
    assert_eq!(count_codes(3, 12).unwrap(), BigUint::from(16u32));
    assert_eq!(count_codes(5, 2).unwrap(), BigUint::from(4u32));
    // independent check: count monic divisors of x^n + 1 from the generic factorization
    for (q, n) in [(3u64, 4u64), (3, 12), (5, 2)] {
        let field = FieldSpec::from_order(q).unwrap();
        let out = factor_generic(&Poly::x_pow_plus_one(&field, n as usize), 7).unwrap();
        let divisors: u64 = out.factors.iter().map(|(_, e)| e + 1).product();
        assert_eq!(count_codes(q, n).unwrap(), BigUint::from(divisors));
    }
}

#[test]
fn enumeration_examples() {
    let f3 = make_field(3, 1).unwrap();
    let codes: Vec<NegacyclicCode> = enumerate_codes(&f3, 4, None).unwrap().collect();
    let gens: Vec<String> = codes.iter().map(|c| c.generator.to_string()).collect();
    assert_eq!(gens, ["1", "x^2 + x + 2", "x^2 + 2*x + 2", "x^4 + 1"]);
    for c in &codes {
        assert!(c.generator.divides(&Poly::x_pow_plus_one(&f3, 4)));
    }
    for (q, n) in [(5u64, 6u64), (7, 10), (9, 4)] {
        let field = FieldSpec::from_order(q).unwrap();
        let all: Vec<NegacyclicCode> = enumerate_codes(&field, n, None).unwrap().collect();
        let full = all.iter().find(|c| c.generator.is_one()).unwrap();
        assert_eq!(full.dimension, n);
        let zero = all
            .iter()
            .find(|c| c.generator == Poly::x_pow_plus_one(&field, n as usize))
            .unwrap();
        assert_eq!(zero.dimension, 0);
    }
}

#[test]
fn lift_examples() {
    let f5 = make_field(5, 1).unwrap();
    assert_eq!(
        lift_generator(&poly(&f5, &[2, 1]), 22, 44).unwrap(),
        poly(&f5, &[2, 0, 1])
    );
    assert!(lift_generator(&Poly::one(&f5), 22, 44).unwrap().is_one());
    assert_eq!(
        lift_generator(&Poly::x_pow_plus_one(&f5, 22), 22, 44).unwrap(),
        Poly::x_pow_plus_one(&f5, 44)
    );
}
