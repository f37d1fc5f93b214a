//! Randomized invariants of the exact linear algebra and of module
//! computations.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use preproj::components::sample_component_point;
use preproj::linalg::{charpoly, integer_nullvector, Field, Matrix, Polynomial, Scalar};
use preproj::quiver::DynkinType;
use preproj::rep::dim_hom;
use preproj::roots::RootSystem;

const Q: Field = Field::Rationals;

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_rows(
        field,
        cols,
        (0..rows).map(|i| (0..cols).map(|j| field.from_i64(entries[i * cols + j])).collect()).collect(),
    )
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), Just(Field::prime(2_147_483_647).unwrap())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity((r, c, e) in small_matrix(), field in fields()) {
        let m = matrix(field, r, c, &e);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), c);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_recovers_a_consistent_right_hand_side((r, c, e) in small_matrix(), x in prop::collection::vec(-5i64..=5, 6)) {
        let m = matrix(Q, r, c, &e);
        let x: Vec<Scalar> = x[..c].iter().map(|&v| Q.from_i64(v)).collect();
        let b = m.apply(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn integer_nullvector_is_primitive((r, e) in (1usize..5).prop_flat_map(|r| (Just(r), prop::collection::vec(0i64..=4, r * (r + 1))))) {
        let m = matrix(Q, r, r + 1, &e);
        let z = integer_nullvector(&m).unwrap();
        let as_q: Vec<Scalar> = z.iter().map(|x| Q.from_bigint(x)).collect();
        prop_assert!(m.apply(&as_q).iter().all(Scalar::is_zero));
        prop_assert!(z.iter().any(|x| !x.is_zero()));
        let g = z.iter().fold(BigInt::zero(), |a, x| num_integer::Integer::gcd(&a, x));
        prop_assert_eq!(g, BigInt::from(1));
    }

    #[test]
    fn coprime_split_multiplies_back((n, e) in (1usize..5).prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * n)))) {
        let m = matrix(Q, n, n, &e);
        let p = charpoly(&m);
        let parts = p.coprime_split();
        let prod = parts.iter().fold(Polynomial::one(Q), |a, f| a.mul(f));
        prop_assert_eq!(prod, p.monic());
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                prop_assert_eq!(parts[i].gcd(&parts[j]).degree(), Some(0));
            }
        }
        // Cayley-Hamilton
        prop_assert!(p.eval_matrix(&m).is_zero());
    }

    #[test]
    fn inverse_round_trip((n, e) in (0usize..5).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n * n)))) {
        let m = matrix(Q, n, n, &e);
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv), Matrix::identity(Q, n)),
            None => prop_assert!(!m.is_invertible()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_is_additive(picks in prop::collection::vec(0usize..6, 3), seed in 0u64..1000) {
        let rs = RootSystem::of_type(DynkinType::A(3)).unwrap();
        let sample = |i: usize, stream: u64| {
            sample_component_point(&rs, &rs.label_of(&[i]), Q, seed, stream).unwrap().module
        };
        let (x, y, z) = (sample(picks[0], 0), sample(picks[1], 1), sample(picks[2], 2));
        let yz = y.direct_sum(&z).unwrap();
        prop_assert_eq!(dim_hom(&x, &yz).unwrap(), dim_hom(&x, &y).unwrap() + dim_hom(&x, &z).unwrap());
        prop_assert_eq!(dim_hom(&yz, &x).unwrap(), dim_hom(&y, &x).unwrap() + dim_hom(&z, &x).unwrap());
    }

    #[test]
    fn gabriel_label_inverts_m_alpha(ty in prop_oneof![Just(DynkinType::A(4)), Just(DynkinType::D(4)), Just(DynkinType::D(5))],
                                     picks in prop::collection::vec(0usize..64, 1..5), seed in 0u64..1000) {
        let rs = RootSystem::of_type(ty).unwrap();
        let idx: Vec<usize> = picks.iter().map(|p| p % rs.len()).collect();
        let alpha = rs.label_of(&idx);
        let m = rs.build_m_alpha(&alpha, Q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(rs.gabriel_label(&m, &mut rng).unwrap(), alpha);
    }
}
