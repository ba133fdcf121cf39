//! Worked examples for the polygon, spectral, bending, reconstruction and
//! duality layers, each checked against an independent hand computation or
//! a second code path.

use bendix::bending::{angle_values, bend, four_point, mu_values, poisson_bracket_fd, ActionAngle, FlowSpec};
use bendix::duality::{
    bending_derivative_r3, cross, dot, duality_report, from_euclidean, gt_block_values, hitchin_derivatives,
    hitchin_hamiltonians, hitchin_matrix, polygon_to_matrix, to_euclidean, EuclideanPolygon, HitchinSpec,
};
use bendix::linalg::{eig_hermitian, HermitianMatrix, C};
use bendix::polygon::{centralizer_dimension, is_on_wall, Edge};
use bendix::random::{random_unitary, rng_from_seed};
use bendix::reconstruction::{reconstruct, sample_polygon};
use bendix::spectral::{action_values, diagonals};
use bendix::{Error, GTsPattern, Polygon, SideLengths};

fn equilateral() -> EuclideanPolygon<f64> {
    let h = 3f64.sqrt() / 2.0;
    EuclideanPolygon { edges: vec![[1.0, 0.0, 0.0], [-0.5, h, 0.0], [-0.5, -h, 0.0]] }
}

fn hexagon_pattern() -> GTsPattern<f64> {
    GTsPattern::new(
        6,
        2,
        vec![
            vec![1.0, 0.0, 0.0],
            vec![1.5, 0.5, 0.0],
            vec![1.8, 1.0, 0.2],
            vec![2.0, 1.3, 0.7],
            vec![2.0, 2.0, 1.0],
            vec![2.0, 2.0, 2.0],
        ],
    )
    .unwrap()
}

fn sampled(m: usize, r: Vec<f64>, seed: u64) -> Polygon<f64> {
    sample_polygon(&SideLengths::new(m, r).unwrap(), seed).unwrap()
}

#[test]
fn equilateral_triangle_is_closed_and_indecomposable() {
    let p = from_euclidean(&equilateral()).unwrap();
    assert!(p.closure_defect() <= 1e-12);
    assert_eq!(centralizer_dimension(&p), 0);
}

#[test]
fn generic_polygon_has_trivial_centralizer() {
    let p = sampled(2, vec![1.0, 1.1, 0.9, 1.2, 0.8, 1.05], 3);
    assert!(!is_on_wall(&SideLengths::new(2, p.side_lengths()).unwrap()).unwrap());
    assert_eq!(centralizer_dimension(&p), 0);
}

#[test]
fn wall_membership_examples() {
    assert!(is_on_wall(&SideLengths::new(1, vec![1.0, 1.0, 1.0, 1.0]).unwrap()).unwrap());
    assert!(!is_on_wall(&SideLengths::new(1, vec![1.0, 1.0, 1.0]).unwrap()).unwrap());
    let off = 1.0 + 1e-3 * std::f64::consts::SQRT_2;
    assert!(!is_on_wall(&SideLengths::new(1, vec![off, 1.0, 1.0, 1.0]).unwrap()).unwrap());
}

#[test]
fn diagonal_sequence_endpoints() {
    let r = vec![0.9, 1.3, 1.0, 1.1, 0.7];
    let p = sampled(2, r.clone(), 11);
    let lambda = r.iter().sum::<f64>() / 3.0;
    let ds = diagonals(&p);
    let last = ds.matrices.last().unwrap();
    assert!(last.sub(&HermitianMatrix::identity(3).scale(lambda)).frobenius_norm() <= 1e-9 * lambda);
    let first = eig_hermitian(&ds.matrices[0]).unwrap().values;
    assert!((first[0] - r[0]).abs() < 1e-12 && first[1].abs() < 1e-12 && first[2].abs() < 1e-12);
    let penultimate = eig_hermitian(&ds.matrices[3]).unwrap().values;
    let expected = [lambda, lambda, lambda - r[4]];
    for (a, b) in penultimate.iter().zip(expected) {
        assert!((a - b).abs() < 1e-9);
    }
    let gamma = action_values(&p).unwrap();
    let mut prefix = 0.0;
    for (i, x) in r.iter().enumerate() {
        prefix += x;
        assert!((gamma.row_sum(i) - prefix).abs() < 1e-10);
    }
}

#[test]
fn hexagon_round_trip_and_gram_spectrum() {
    let gamma = hexagon_pattern();
    let p = reconstruct(&gamma, None).unwrap();
    assert!(p.closure_defect() <= 1e-10);
    assert!(action_values(&p).unwrap().max_abs_diff(&gamma) <= 1e-8);

    let n_mat = polygon_to_matrix(&p);
    let blocks = gt_block_values(&n_mat).unwrap();
    let full = &blocks[5];
    for (k, v) in full.iter().enumerate() {
        let expected = if k < 3 { 2.0 } else { 0.0 };
        assert!((v - expected).abs() < 1e-9, "{full:?}");
    }
    assert!((blocks[0][0] - 1.0).abs() < 1e-12);
    for j in 0..6 {
        let col: f64 = (0..3).map(|i| n_mat[(i, j)].norm_sqr()).sum();
        assert!((col - 1.0).abs() < 1e-12);
    }
    let nn = &n_mat * &n_mat.adjoint();
    assert!(nn.max_abs_diff(p.total().matrix()) < 1e-12);
    assert!(duality_report(&p).unwrap().max_deviation < 1e-9);
}

#[test]
fn bend_at_zero_is_identity_and_rejects_bad_indices() {
    let p = sampled(1, vec![1.0, 1.2, 0.9, 1.1, 1.0], 2);
    let q = bend(&p, FlowSpec { i: 1, j: 1, t: 0.0 }).unwrap();
    assert!(q.max_edge_distance(&p) < 1e-15);
    assert!(matches!(bend(&p, FlowSpec { i: 0, j: 1, t: 0.1 }), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(bend(&p, FlowSpec { i: 3, j: 1, t: 0.1 }), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(bend(&p, FlowSpec { i: 1, j: 3, t: 0.1 }), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn real_polygon_has_zero_angles() {
    let p = reconstruct(&hexagon_pattern(), None).unwrap();
    assert!(p.max_imag() <= 1e-10);
    for th in angle_values(&p).unwrap().theta.values() {
        assert!(th.abs() <= 1e-8);
    }
}

#[test]
fn angles_are_conjugation_invariant() {
    let p = sampled(2, vec![1.0, 1.1, 0.9, 1.2, 0.8, 1.05, 0.95], 5);
    let u = random_unitary(3, &mut rng_from_seed(99));
    let a = angle_values(&p).unwrap();
    let b = angle_values(&p.conjugate(&u)).unwrap();
    assert!(a.max_angle_distance(&b) <= 1e-9);
}

#[test]
fn mu_examples() {
    let gamma = GTsPattern::new(4, 1, vec![vec![1.0, 0.0], vec![1.5, 0.5], vec![2.0, 1.0], vec![2.0, 2.0]]).unwrap();
    let mu = mu_values(&gamma);
    assert_eq!(mu[&(1, 1)], 1.5);
    assert_eq!(mu[&(1, 2)], 2.0);
    assert_eq!(mu[&(2, 2)], 3.0);
    assert_eq!(mu[&(2, 1)], *gamma.get(2, 1));
}

#[test]
fn bracket_is_antisymmetric() {
    let p = sampled(1, vec![1.0, 1.2, 0.9, 1.1, 1.0], 8);
    let f = ActionAngle::Lambda { i: 1, j: 1 };
    let g = ActionAngle::Theta { i: 2, j: 1 };
    assert_eq!(poisson_bracket_fd(&f, &f, &p, 1e-5).unwrap(), 0.0);
    let fg = poisson_bracket_fd(&f, &g, &p, 1e-5).unwrap();
    let gf = poisson_bracket_fd(&g, &f, &p, 1e-5).unwrap();
    assert!((fg + gf).abs() < 1e-12);
}

#[test]
fn bend_moves_theta_at_unit_rate() {
    // {lambda_11, theta_11} = 1 by the flow definition, and the bend shifts theta_11 by t
    let p = sampled(1, vec![1.0, 1.2, 0.9, 1.1, 1.0], 21);
    let f = ActionAngle::Lambda { i: 1, j: 1 };
    let g = ActionAngle::Theta { i: 1, j: 1 };
    let b = poisson_bracket_fd(&f, &g, &p, 1e-5).unwrap();
    assert!((b - 1.0).abs() < 5e-4, "{b}");
}

#[test]
fn four_point_of_orthogonal_vectors_vanishes() {
    let e = |k: usize| (0..3).map(|i| C::new(if i == k { 1.0 } else { 0.0 }, 0.0)).collect::<Vec<_>>();
    assert_eq!(four_point(&e(0), &e(1), &e(0), &e(1)).unwrap(), C::new(0.0, 0.0));
}

#[test]
fn hitchin_orthogonal_edges_give_zero() {
    // pairwise orthogonal vectors (not closed; the formula only needs dot products)
    let ep = EuclideanPolygon { edges: vec![[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]] };
    let hs = hitchin_hamiltonians(&ep, &HitchinSpec { alphas: vec![0.0, 1.0, 2.0] }).unwrap();
    assert!(hs.iter().all(|h| h.unwrap() == 0.0));
}

#[test]
fn hitchin_matrix_leading_coefficient_is_closure() {
    let ep = to_euclidean(&sampled(1, vec![1.0, 1.2, 0.9, 1.1, 1.0], 4)).unwrap();
    let spec = HitchinSpec { alphas: vec![0.0, 1.0, 2.0, 3.0, 4.0] };
    let z = 1e4;
    let a = hitchin_matrix(&ep, &spec, C::new(z, 0.0)).unwrap();
    // A(z) / z^4 -> sum of traceless parts = 0, so the ratio is O(1/z)
    assert!(a.frobenius_norm() / z.powi(4) < 1e-2);
    assert!(ep.closure_defect() < 1e-12);
}

#[test]
fn bending_derivative_matches_actual_bend() {
    let p = sampled(1, vec![1.0, 1.2, 0.9, 1.1, 1.0, 0.8], 6);
    let ep = to_euclidean(&p).unwrap();
    let h = 1e-6;
    for d in 2..=4 {
        let plus = to_euclidean(&bend(&p, FlowSpec { i: d - 1, j: 1, t: h }).unwrap()).unwrap();
        let minus = to_euclidean(&bend(&p, FlowSpec { i: d - 1, j: 1, t: -h }).unwrap()).unwrap();
        let exact = bending_derivative_r3(&ep, d).unwrap();
        for k in 0..6 {
            for c in 0..3 {
                let fd = (plus.edges[k][c] - minus.edges[k][c]) / (2.0 * h);
                assert!((fd - exact[k][c]).abs() < 1e-8, "d={d} k={k}");
            }
        }
        let diag = ep.partial_sum(d);
        let rate: f64 = (0..d).map(|k| dot(&diag, &exact[k])).sum();
        assert!(rate.abs() < 1e-12);
    }
}

#[test]
fn pentagon_hitchin_rate_closed_form() {
    let ep = to_euclidean(&sampled(1, vec![1.0, 1.2, 0.9, 1.1, 1.0], 13)).unwrap();
    let alphas = [0.0, 1.0, 2.0, 3.0, 4.0];
    let spec = HitchinSpec { alphas: alphas.to_vec() };
    let rate = hitchin_derivatives(&ep, &spec, 2).unwrap()[4].unwrap();
    let d = ep.partial_sum(2);
    let len = dot(&d, &d).sqrt();
    let triple = dot(&cross(&ep.edges[1], &ep.edges[0]), &ep.edges[4]);
    let expected = triple / len * (1.0 / (alphas[0] - alphas[4]) - 1.0 / (alphas[1] - alphas[4]));
    assert!((rate - expected).abs() < 1e-12, "{rate} vs {expected}");
}

#[test]
fn edge_rejects_bad_input() {
    assert!(Edge::new(0.0, vec![C::new(1.0, 0.0)]).is_err());
    assert!(Edge::new(1.0, vec![C::new(2.0, 0.0)]).is_err());
}

#[test]
fn euclidean_bending_matches_exact_rotation() {
    let ep = bendix::duality::sample_euclidean_polygon::<f64>(6, 17).unwrap();
    let d = 3;
    let axis = ep.partial_sum(d);
    let a = {
        let l = dot(&axis, &axis).sqrt();
        [axis[0] / l, axis[1] / l, axis[2] / l]
    };
    let rotate = |e: &[f64; 3], t: f64| {
        let (s, c) = t.sin_cos();
        let axe = cross(&a, e);
        let k = dot(&a, e) * (1.0 - c);
        [0, 1, 2].map(|i| e[i] * c + axe[i] * s + a[i] * k)
    };
    let rhs = |edges: &[[f64; 3]]| bending_derivative_r3(&EuclideanPolygon { edges: edges.to_vec() }, d).unwrap();
    let axpy = |x: &[[f64; 3]], k: &[[f64; 3]], h: f64| -> Vec<[f64; 3]> {
        x.iter().zip(k).map(|(x, k)| [0, 1, 2].map(|i| x[i] + h * k[i])).collect()
    };
    let (t_end, steps) = (0.5, 200);
    let h = t_end / steps as f64;
    let mut x = ep.edges.clone();
    for _ in 0..steps {
        let k1 = rhs(&x);
        let k2 = rhs(&axpy(&x, &k1, h / 2.0));
        let k3 = rhs(&axpy(&x, &k2, h / 2.0));
        let k4 = rhs(&axpy(&x, &k3, h));
        x = x
            .iter()
            .enumerate()
            .map(|(e, xe)| [0, 1, 2].map(|i| xe[i] + h / 6.0 * (k1[e][i] + 2.0 * k2[e][i] + 2.0 * k3[e][i] + k4[e][i])))
            .collect();
    }
    let moved = EuclideanPolygon { edges: x };
    for k in 0..ep.n() {
        let exact = if k < d { rotate(&ep.edges[k], t_end) } else { ep.edges[k] };
        let gap = (0..3).map(|i| (moved.edges[k][i] - exact[i]).abs()).fold(0.0, f64::max);
        assert!(gap <= 1e-12, "edge {k}: gap {gap}");
        assert!((moved.lengths()[k] - ep.lengths()[k]).abs() <= 1e-12);
    }
    let diag_gap = (0..3).map(|i| (moved.partial_sum(d)[i] - axis[i]).abs()).fold(0.0, f64::max);
    assert!(diag_gap <= 1e-12);
}
