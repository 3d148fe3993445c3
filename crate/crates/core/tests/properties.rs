mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schur_core::functor::{
    induced_map, permutation_endomorphism, permutation_sum_matrix, Permutation, QuotientPresentation,
};
use schur_core::{enumerate_basis, parse_schur_expr, ExactMatrix, Ring, RingElement};

fn int_element(ring: &Ring) -> impl Strategy<Value = RingElement> + Clone {
    let ring = ring.clone();
    (-60i64..60).prop_map(move |v| ring.from_int(v))
}

fn rational_element(ring: &Ring, denominators: Vec<i64>) -> impl Strategy<Value = RingElement> + Clone {
    let ring = ring.clone();
    (-60i64..60, prop::sample::select(denominators))
        .prop_map(move |(p, q)| ring.from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q))).unwrap())
}

fn poly_element(ring: &Ring) -> impl Strategy<Value = RingElement> + Clone {
    let ring = ring.clone();
    prop::collection::vec((-9i64..10, 0u32..3, 0u32..3), 0..4).prop_map(move |terms| {
        terms.iter().fold(ring.zero(), |acc, &(c, ex, ey)| {
            let m =
                &(&ring.var("x").unwrap().pow(ex as u64) * &ring.var("y").unwrap().pow(ey as u64)) * &ring.from_int(c);
            &acc + &m
        })
    })
}

fn check_axioms(a: &RingElement, b: &RingElement, c: &RingElement) {
    let ring = a.ring().clone();
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a + &ring.zero(), a.clone());
    assert_eq!(a * &ring.one(), a.clone());
    assert!((a - a).is_zero());
    assert_eq!(&(a - b) + b, a.clone());
}

fn triples<S: Strategy + Clone>(s: S) -> (S, S, S) {
    (s.clone(), s.clone(), s)
}

proptest! {
    #[test]
    fn integer_ring_axioms((a, b, c) in triples(int_element(&Ring::integers()))) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_ring_axioms((a, b, c) in triples(rational_element(&Ring::rationals(), vec![1, 2, 3, 5, 7, 12]))) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn localized_ring_axioms((a, b, c) in triples(rational_element(&Ring::parse_spec("Z[1/3]").unwrap(), vec![1, 3, 9, 27]))) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn polynomial_ring_axioms((a, b, c) in triples(poly_element(&Ring::parse_spec("Z[x,y]").unwrap()))) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn exact_division_inverts_multiplication(
        a in poly_element(&Ring::parse_spec("Z[x,y]").unwrap()),
        b in poly_element(&Ring::parse_spec("Z[x,y]").unwrap()),
        p in -60i64..60,
        q in -60i64..60,
    ) {
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a.clone());
        }
        let z = Ring::integers();
        if q != 0 {
            prop_assert_eq!(z.from_int(p * q).exact_div(&z.from_int(q)).unwrap(), z.from_int(p));
            if p % q != 0 {
                prop_assert!(z.from_int(p).exact_div(&z.from_int(q)).is_err());
            }
        }
    }

    #[test]
    fn scalars_round_trip_through_text(
        a in poly_element(&Ring::parse_spec("Z[x,y]").unwrap()),
        r in rational_element(&Ring::rationals(), vec![1, 4, 6, 9]),
        l in rational_element(&Ring::parse_spec("Z[1/3]").unwrap(), vec![1, 3, 81]),
    ) {
        for e in [a, r, l] {
            prop_assert_eq!(e.ring().parse(&e.to_string()).unwrap(), e.clone());
        }
    }

    #[test]
    fn expressions_round_trip_through_text(seed in any::<u64>()) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 6);
        prop_assert_eq!(parse_schur_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>(), n in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = Ring::integers();
        let a = random_matrix(&z, n, n, 9, &mut rng);
        let b = random_matrix(&z, n, n, 9, &mut rng);
        let lhs = a.matmul(&b).unwrap().determinant().unwrap();
        prop_assert_eq!(lhs, &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn smith_divisors_are_unimodular_invariants(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = Ring::integers();
        let a = random_matrix(&z, rows, cols, 6, &mut rng);
        let u = random_unimodular(&z, rows, 6, &mut rng);
        let v = random_unimodular(&z, cols, 6, &mut rng);
        let moved = u.matmul(&a).unwrap().matmul(&v).unwrap();
        let d = a.smith_elementary_divisors().unwrap();
        prop_assert_eq!(moved.smith_elementary_divisors().unwrap(), d.clone());
        // successive divisibility and rank
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert_eq!(d.len(), a.rank().unwrap());
    }

    #[test]
    fn kernel_basis_spans_the_kernel(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = Ring::integers();
        let a = random_matrix(&z, rows, cols, 3, &mut rng);
        let kernel = a.rational_kernel_basis().unwrap();
        prop_assert_eq!(kernel.len(), cols - a.rank().unwrap());
        for v in &kernel {
            let col = ExactMatrix::from_fn(&z, cols, 1, |i, _| z.from_bigint(v[i].clone()));
            prop_assert!(a.matmul(&col).unwrap().is_zero());
        }
        if !kernel.is_empty() {
            let k = ExactMatrix::from_fn(&z, cols, kernel.len(), |i, j| z.from_bigint(kernel[j][i].clone()));
            prop_assert_eq!(k.rank().unwrap(), kernel.len());
        }
    }

    #[test]
    fn basis_size_matches_rank_formula(seed in any::<u64>(), n in 1u32..4) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let basis = enumerate_basis(&e, n);
        prop_assert_eq!(basis.len() as u128, e.rank(n as u64));
        prop_assert!(basis.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn projection_after_section_is_identity(seed in any::<u64>(), n in 1usize..4) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let z = Ring::integers();
        let p = QuotientPresentation::new(&e, n).unwrap();
        let qs = p.projection_matrix(&z).matmul(&p.section_matrix(&z)).unwrap();
        prop_assert_eq!(qs, ExactMatrix::identity(&z, p.rank()));
    }

    #[test]
    fn permutation_action_is_a_homomorphism(seed in any::<u64>(), d in 1usize..5, n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = Ring::integers();
        let (s, t) = (random_permutation(&mut rng, d), random_permutation(&mut rng, d));
        let ps = permutation_endomorphism(&s, n, &z);
        let pt = permutation_endomorphism(&t, n, &z);
        prop_assert_eq!(permutation_endomorphism(&s.compose(&t), n, &z), ps.matmul(&pt).unwrap());
        prop_assert_eq!(permutation_endomorphism(&Permutation::identity(d), n, &z), ExactMatrix::identity(&z, ps.rows()));
        prop_assert_eq!(permutation_endomorphism(&s.inverse(), n, &z).matmul(&ps).unwrap(), ExactMatrix::identity(&z, ps.rows()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn functoriality(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 4);
        let z = Ring::integers();
        let f = random_matrix(&z, n, n, 5, &mut rng);
        let g = random_matrix(&z, n, n, 5, &mut rng);
        let sf = induced_map(&e, &f).unwrap();
        let sg = induced_map(&e, &g).unwrap();
        prop_assert_eq!(induced_map(&e, &f.matmul(&g).unwrap()).unwrap(), sf.matmul(&sg).unwrap());
        let id = induced_map(&e, &ExactMatrix::identity(&z, n)).unwrap();
        prop_assert_eq!(id.clone(), ExactMatrix::identity(&z, id.rows()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn named_maps_are_natural(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = Ring::integers();
        for m in small_named_maps(&z) {
            let f = random_unimodular(&z, m.rank, 4, &mut rng);
            let lhs = induced_map(&m.target, &f).unwrap().matmul(&m.matrix).unwrap();
            let rhs = m.matrix.matmul(&induced_map(&m.source, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{} at rank {}", m.name, m.rank);
        }
    }
}

/// `Q_dst * Phi * (I - Sec_src * Q_src) = 0`, recomputed from dense matrices.
#[test]
fn descent_certificates_are_zero() {
    let z = Ring::integers();
    for m in small_named_maps(&z) {
        assert!(m.descent.descends(), "{}", m.name);
        let src = QuotientPresentation::new(&m.source, m.rank).unwrap();
        let dst = QuotientPresentation::new(&m.target, m.rank).unwrap();
        let phi = permutation_sum_matrix(&m.lift, m.rank, &z);
        let q_src = src.projection_matrix(&z);
        let idem =
            ExactMatrix::identity(&z, q_src.cols()).sub(&src.section_matrix(&z).matmul(&q_src).unwrap()).unwrap();
        let residual = dst.projection_matrix(&z).matmul(&phi).unwrap().matmul(&idem).unwrap();
        assert!(residual.is_zero(), "{} at rank {}", m.name, m.rank);
        assert_eq!(residual.shape(), m.descent.residual_shape);
    }
}

#[test]
fn inverse_of_unimodular_is_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let z = Ring::integers();
    for n in 1..6 {
        let u = random_unimodular(&z, n, 10, &mut rng);
        assert_eq!(u.inverse().unwrap().matmul(&u).unwrap(), ExactMatrix::identity(&z, n));
    }
}
