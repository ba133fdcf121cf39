use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use bendix::bending::{bend, FlowSpec};
use bendix::combinatorics::{count_lattice_points, kostka};
use bendix::linalg::{eig_hermitian, inner, ComplexMatrix, HermitianMatrix};
use bendix::polygon::{centralizer_dimension, check_triangle_inequalities, enumerate_walls, TriangleVerdict};
use bendix::random::{complex_gaussian, random_unitary, rng_from_seed};
use bendix::reconstruction::{random_interior_pattern, random_phases, reconstruct, sample_polygon};
use bendix::spectral::{action_index_set, action_values, wa_weights};
use bendix::{Polygon, Rational, SideLengths, WallId};

fn random_hermitian(dim: usize, seed: u64) -> HermitianMatrix<f64> {
    let mut rng = rng_from_seed(seed);
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| complex_gaussian::<f64, _>(&mut rng));
    HermitianMatrix::from_matrix(&g + &g.adjoint()).unwrap()
}

fn lengths() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (1usize..=3)
        .prop_flat_map(|m| (Just(m), m + 3..=8usize))
        .prop_flat_map(|(m, n)| (Just(m), prop::collection::vec(0.6f64..1.4, n)))
        .prop_filter("strictly admissible", |(m, r)| {
            let s = SideLengths::new(*m, r.clone()).unwrap();
            bendix::polygon::is_strictly_admissible(&s)
        })
}

fn polygon(m: usize, r: Vec<f64>, seed: u64) -> Polygon<f64> {
    sample_polygon(&SideLengths::new(m, r).unwrap(), seed).unwrap()
}

fn canonical(w: &WallId, perm: &[usize], m: usize) -> WallId {
    let map = |s: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|&x| perm[x - 1] + 1).collect();
        v.sort();
        v
    };
    let a = WallId { i_set: map(&w.i_set), j_set: map(&w.j_set), k: w.k };
    let b = WallId { i_set: a.j_set.clone(), j_set: a.i_set.clone(), k: m + 1 - w.k };
    if a.i_set <= b.i_set {
        a
    } else {
        b
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eigendecomposition_round_trips(dim in 1usize..=5, seed in any::<u64>()) {
        let a = random_hermitian(dim, seed);
        let s = eig_hermitian(&a).unwrap();
        prop_assert!(s.reconstruct().sub(&a).frobenius_norm() <= 1e-12 * a.frobenius_norm().max(1.0));
        for j in 0..dim {
            prop_assert!(j == 0 || s.values[j - 1] >= s.values[j]);
            for k in 0..dim {
                let ip = inner(&s.vector(j), &s.vector(k));
                let expected = if j == k { 1.0 } else { 0.0 };
                prop_assert!((ip.re - expected).abs() < 1e-12 && ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bending_preserves_closure_and_pattern((m, r) in lengths(), seed in any::<u64>(), t in -7.0f64..7.0) {
        let p = polygon(m, r, seed);
        let gamma = action_values(&p).unwrap();
        let idx = action_index_set(p.n(), m);
        let (i, j) = idx[(seed as usize) % idx.len()];
        let q = bend(&p, FlowSpec { i, j, t }).unwrap();
        prop_assert!((q.closure_defect() - p.closure_defect()).abs() <= 1e-10);
        prop_assert!(action_values(&q).unwrap().max_abs_diff(&gamma) <= 1e-9);
        prop_assert_eq!(q.side_lengths().len(), p.n());
    }

    #[test]
    fn bending_is_a_group_action((m, r) in lengths(), seed in any::<u64>(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let p = polygon(m, r, seed);
        let (i, j) = action_index_set(p.n(), m)[0];
        let f = |t| FlowSpec { i, j, t };
        let two_step = bend(&bend(&p, f(s)).unwrap(), f(t)).unwrap();
        let one_step = bend(&p, f(s + t)).unwrap();
        prop_assert!(two_step.max_edge_distance(&one_step) <= 1e-10);
    }

    #[test]
    fn reconstruction_round_trips((m, r) in lengths(), seed in any::<u64>()) {
        let s = SideLengths::new(m, r).unwrap();
        let gamma = random_interior_pattern(&s, seed).unwrap();
        let phases = random_phases(s.n(), m, &mut rng_from_seed(seed ^ 1));
        let p = reconstruct(&gamma, Some(&phases)).unwrap();
        prop_assert!(p.closure_defect() <= 1e-9 * s.lambda());
        prop_assert!(action_values(&p).unwrap().max_abs_diff(&gamma) <= 1e-8);
    }

    #[test]
    fn centralizer_is_conjugation_invariant((m, r) in lengths(), seed in any::<u64>()) {
        let p = polygon(m, r, seed);
        let u = random_unitary(m + 1, &mut rng_from_seed(seed.wrapping_add(7)));
        prop_assert_eq!(centralizer_dimension(&p), centralizer_dimension(&p.conjugate(&u)));
    }

    #[test]
    fn weights_form_a_probability_vector(seed in any::<u64>(), dim in 2usize..=4, r in 0.1f64..3.0) {
        let a = random_hermitian(dim, seed);
        let lambda = eig_hermitian(&a).unwrap().values;
        let w = bendix::random::random_unit_vector::<f64, _>(dim, &mut rng_from_seed(seed ^ 3));
        let nu = eig_hermitian(&a.add(&HermitianMatrix::rank_one(r, &w))).unwrap().values;
        let weights = wa_weights(&lambda, &nu, r).unwrap();
        prop_assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-8);
        prop_assert!(weights.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn walls_follow_permutations(m in 1usize..=3, r in prop::collection::vec(1i64..=4, 3..=7), shift in 0usize..7) {
        let n = r.len();
        let perm: Vec<usize> = (0..n).map(|k| (k + shift) % n).collect();
        let mut permuted = vec![0; n];
        for k in 0..n {
            permuted[perm[k]] = r[k];
        }
        let q = |v: &[i64]| SideLengths::new(m, v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).unwrap();
        let zero = Rational::from_integer(BigInt::from(0));
        let base: BTreeSet<WallId> = enumerate_walls(&q(&r), &zero).unwrap().iter().map(|w| canonical(w, &perm, m)).collect();
        let moved: BTreeSet<WallId> = enumerate_walls(&q(&permuted), &zero).unwrap().into_iter().collect();
        prop_assert_eq!(base, moved);
    }

    #[test]
    fn exact_and_float_walls_agree(m in 1usize..=3, r in prop::collection::vec(1i64..=5, 3..=7)) {
        let exact = SideLengths::new(m, r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).unwrap();
        let float = SideLengths::new(m, r.iter().map(|&x| x as f64).collect()).unwrap();
        let zero = Rational::from_integer(BigInt::from(0));
        prop_assert_eq!(enumerate_walls(&exact, &zero).unwrap(), enumerate_walls(&float, &1e-12).unwrap());
        let tv = |v: TriangleVerdict| matches!(v, TriangleVerdict::Satisfied);
        prop_assert_eq!(tv(check_triangle_inequalities(&exact)), tv(check_triangle_inequalities(&float)));
    }

    #[test]
    fn kostka_is_symmetric_in_content(r in prop::collection::vec(0u64..=3, 3..=5), shift in 0usize..5) {
        let total: u64 = r.iter().sum();
        let shape = [total.div_ceil(2), total / 2];
        let mut rotated = r.clone();
        rotated.rotate_left(shift % r.len());
        prop_assert_eq!(kostka(&shape, &r), kostka(&shape, &rotated));
    }

    #[test]
    fn lattice_count_is_permutation_invariant(r in prop::collection::vec(1u64..=3, 3..=5), shift in 0usize..5) {
        let mut rotated = r.clone();
        rotated.rotate_left(shift % r.len());
        prop_assert_eq!(count_lattice_points(&r, 1).unwrap(), count_lattice_points(&rotated, 1).unwrap());
    }
}
