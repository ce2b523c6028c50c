#![allow(dead_code)]

use negafactor::cosets::{
    beta_lambda, check_parity_lemma, coset, mult_order_mod, representative_sets, theta,
};
use negafactor::factorizer::factor_xn_plus_1;
use negafactor::gf::{make_field, Embedding};
use negafactor::nt;
use negafactor::poly::{factor_generic, minimal_polynomial, Poly};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const GRID_Q: [u64; 6] = [3, 5, 7, 9, 11, 13];

/// `(p, m)` pairs for field-level checks.
pub const FIELDS: [(u64, usize); 9] = [
    (3, 1),
    (5, 1),
    (13, 1),
    (3, 2),
    (5, 2),
    (7, 2),
    (3, 3),
    (3, 4),
    (2_147_483_647, 2),
];

pub fn grid_q() -> impl Strategy<Value = u64> {
    prop::sample::select(GRID_Q.to_vec())
}

/// Odd `n'` coprime to `q`.
pub fn odd_coprime(q: u64, max: u64) -> impl Strategy<Value = u64> {
    (0..max / 2 + 1)
        .prop_map(|k| 2 * k + 1)
        .prop_filter("coprime to q", move |&n| nt::gcd(n, q) == 1)
}

type Check = Result<(), TestCaseError>;

pub fn field_axioms(pm: (u64, usize), ia: u64, ib: u64, ic: u64) -> Check {
    let (p, m) = pm;
    let f = make_field(p, m).unwrap();
    let size = p.saturating_pow(m as u32);
    let (a, b, c) = (
        f.element_at(ia % size),
        f.element_at(ib % size),
        f.element_at(ic % size),
    );
    prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
    prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
    prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
    prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
    prop_assert_eq!(
        f.mul(&a, &f.add(&b, &c)),
        f.add(&f.mul(&a, &b), &f.mul(&a, &c))
    );
    prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
    prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
    prop_assert_eq!(f.mul(&a, &f.one()), a.clone());
    match f.inv(&a) {
        Some(inv) => {
            prop_assert!(!f.is_zero(&a));
            prop_assert!(f.is_one(&f.mul(&a, &inv)));
            prop_assert!(f.is_one(&f.pow(&a, &(f.order() - 1u32))));
        }
        None => prop_assert!(f.is_zero(&a)),
    }
    prop_assert_eq!(f.pow(&a, f.order()), a.clone());
    let frob = f.pow_u64(&a, p);
    prop_assert_eq!(f.pth_root(&frob), a);
    Ok(())
}

pub fn coset_partition(q: u64, n: u64) -> Check {
    let sets = representative_sets(q, n).unwrap();
    let mut hits = vec![0u32; n as usize];
    for c in &sets.cosets {
        for &x in &c.elements {
            hits[x as usize] += 1;
            prop_assert_eq!(coset(q, n, x).unwrap(), c.clone());
        }
        let expected = mult_order_mod(theta(n, c.rep), q).unwrap();
        prop_assert_eq!(c.len() as u64, expected);
    }
    prop_assert!(hits.iter().all(|&h| h == 1));
    if n.is_multiple_of(2) {
        prop_assert_eq!(sets.odd.len() + sets.even.len(), sets.all.len());
    }
    Ok(())
}

pub fn parity_lemma(q: u64, n_prime: u64, i: u32) -> Check {
    prop_assert!(check_parity_lemma(q, (1u64 << (i + 1)) * n_prime));
    Ok(())
}

/// Odd `a` and `a + 2^i n'` have cosets of equal size modulo `2^{i+1} n'`.
pub fn paired_coset_sizes(q: u64, n_prime: u64, i: u32, k: u64) -> Check {
    let half = (1u64 << i) * n_prime;
    let a = (2 * k + 1) % (2 * half);
    let x = coset(q, 2 * half, a).unwrap();
    let y = coset(q, 2 * half, a + half).unwrap();
    prop_assert_eq!(x.len(), y.len());
    Ok(())
}

/// Threshold from which every odd-coset minimal polynomial `f` modulo `2^i n'`
/// keeps `f(x^{2^j})` irreducible.
pub fn substitution_threshold(q: u64, n_prime: u64) -> u32 {
    let (beta, lambda) = beta_lambda(q, n_prime).unwrap();
    match (lambda, q % 4) {
        (0, 3) => beta,
        (0, _) => beta - 1,
        _ => lambda + beta - 1,
    }
}

pub fn substitution_irreducible(q: u64, n_prime: u64, extra: u32, k: u64, j: u32) -> Check {
    let i = substitution_threshold(q, n_prime).max(1) + extra;
    let n = (1u64 << i) * n_prime;
    let field = negafactor::FieldSpec::from_order(q).unwrap();
    let a = (2 * k + 1) % n;
    let c = coset(q, n, a).unwrap();
    let f = minimal_polynomial(&field, n, &c).unwrap();
    prop_assert!(f.is_irreducible());
    let g = f.substitute_power(1usize << j);
    prop_assert!(g.is_irreducible(), "f = {} with j = {}", f, j);
    prop_assert!(g.divides(&Poly::x_pow_plus_one(&field, (n << j) as usize / 2)));
    Ok(())
}

pub fn embedding_homomorphism(pm: (u64, usize), k: usize, ia: u64, ib: u64) -> Check {
    let (p, d) = pm;
    let sub = make_field(p, d).unwrap();
    let sup = make_field(p, d * k).unwrap();
    let emb = Embedding::between(&sub, &sup).unwrap();
    let size = p.saturating_pow(d as u32);
    let a = sub.element_at(ia % size);
    let b = sub.element_at(ib % size);
    prop_assert_eq!(
        emb.apply(&sub.add(&a, &b)),
        sup.add(&emb.apply(&a), &emb.apply(&b))
    );
    prop_assert_eq!(
        emb.apply(&sub.mul(&a, &b)),
        sup.mul(&emb.apply(&a), &emb.apply(&b))
    );
    prop_assert_eq!(emb.apply(&sub.one()), sup.one());
    prop_assert_eq!(emb.project(&emb.apply(&a)), Some(a));
    Ok(())
}

pub fn reassembly(q: u64, n: u64) -> Check {
    let field = negafactor::FieldSpec::from_order(q).unwrap();
    let report = factor_xn_plus_1(&field, n, true).unwrap();
    let target = Poly::x_pow_plus_one(&field, n as usize);
    prop_assert_eq!(report.factors.product(&field), target);
    for (f, _) in &report.factors.factors {
        prop_assert!(f.is_monic() && f.is_irreducible());
    }
    prop_assert_eq!(report.count, report.factors.factors.len() as u64);
    Ok(())
}

pub fn determinism(q: u64, coeffs: Vec<u64>, seed: u64) -> Check {
    let field = negafactor::FieldSpec::from_order(q).unwrap();
    let m = field.degree();
    let lifted: Vec<Vec<u64>> = coeffs
        .iter()
        .map(|&c| {
            let mut v = vec![0; m];
            let mut c = c;
            for slot in v.iter_mut() {
                *slot = c % field.characteristic();
                c /= field.characteristic();
            }
            v
        })
        .collect();
    let f = Poly::from_coeffs(&field, &lifted).unwrap();
    if f.is_zero() {
        return Ok(());
    }
    let a = factor_generic(&f, seed).unwrap();
    let b = factor_generic(&f, seed).unwrap();
    let c = factor_generic(&f, seed ^ 0x5555).unwrap();
    prop_assert_eq!(&a, &b);
    prop_assert_eq!(&a, &c);
    prop_assert_eq!(a.product(&field), f);
    for (g, _) in &a.factors {
        prop_assert!(g.is_irreducible());
    }
    Ok(())
}

/// One randomized property over its strategy; used both by the proptest suite and
/// by the acceptance runner.
pub struct Property {
    pub name: &'static str,
    pub run: fn(u32) -> Result<(), String>,
}

fn run_with<S: Strategy>(
    cases: u32,
    strategy: S,
    f: impl Fn(S::Value) -> Check,
) -> Result<(), String> {
    let config = proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    };
    let mut runner = proptest::test_runner::TestRunner::new_with_rng(
        config,
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    );
    runner.run(&strategy, f).map_err(|e| e.to_string())
}

pub fn fields() -> impl Strategy<Value = (u64, usize)> {
    prop::sample::select(FIELDS.to_vec())
}

pub const PROPERTIES: [Property; 8] = [
    Property {
        name: "field axioms",
        run: |cases| {
            run_with(
                cases,
                (fields(), any::<u64>(), any::<u64>(), any::<u64>()),
                |(pm, a, b, c)| field_axioms(pm, a, b, c),
            )
        },
    },
    Property {
        name: "coset partition and sizes",
        run: |cases| {
            run_with(
                cases,
                grid_q().prop_flat_map(|q| {
                    (
                        Just(q),
                        (1u64..400).prop_filter("coprime", move |&n| nt::gcd(n, q) == 1),
                    )
                }),
                |(q, n)| coset_partition(q, n),
            )
        },
    },
    Property {
        name: "parity lemma",
        run: |cases| {
            run_with(
                cases,
                grid_q().prop_flat_map(|q| (Just(q), odd_coprime(q, 99), 0u32..7)),
                |(q, np, i)| parity_lemma(q, np, i),
            )
        },
    },
    Property {
        name: "paired coset sizes",
        run: |cases| {
            run_with(
                cases,
                grid_q().prop_flat_map(|q| (Just(q), odd_coprime(q, 99), 1u32..7, any::<u64>())),
                |(q, np, i, k)| paired_coset_sizes(q, np, i, k % 100_000),
            )
        },
    },
    Property {
        name: "substitution keeps irreducibility",
        run: |cases| {
            run_with(
                cases,
                grid_q()
                    .prop_flat_map(|q| (Just(q), odd_coprime(q, 21), 0u32..2, 0u64..1000, 0u32..3)),
                |(q, np, extra, k, j)| substitution_irreducible(q, np, extra, k, j),
            )
        },
    },
    Property {
        name: "embedding is a ring homomorphism",
        run: |cases| {
            run_with(
                cases,
                (
                    prop::sample::select(vec![
                        (3u64, 1usize),
                        (3, 2),
                        (5, 1),
                        (5, 2),
                        (7, 1),
                        (2_147_483_647, 1),
                    ]),
                    1usize..4,
                    any::<u64>(),
                    any::<u64>(),
                ),
                |(pm, k, a, b)| embedding_homomorphism(pm, k, a, b),
            )
        },
    },
    Property {
        name: "factorization reassembles",
        run: |cases| run_with(cases, (grid_q(), 1u64..80), |(q, n)| reassembly(q, n)),
    },
    Property {
        name: "generic factorization is seed independent",
        run: |cases| {
            run_with(
                cases,
                (
                    prop::sample::select(vec![3u64, 5, 9, 25]),
                    prop::collection::vec(0u64..25, 1..14),
                    any::<u64>(),
                ),
                |(q, c, seed)| determinism(q, c, seed),
            )
        },
    },
];
