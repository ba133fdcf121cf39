//! Inverse spectral construction of polygons from interior patterns, and
//! seeded sampling of closed polygons.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, inner, vec_norm, ComplexMatrix, C};
use crate::polygon::{basis_vector, check_triangle_inequalities, is_strictly_admissible, Edge, Polygon, SideLengths, TriangleVerdict};
use crate::random::{random_angle, random_unit_vector, random_unitary, rng_from_seed};
use crate::scalar::Real;
use crate::spectral::{cancel_common, raw_action_values, forced_lambda_count, rank_bound, unforced_range, wa_weights, GTsPattern};

/// Torus phases keyed by `(k, j)`: `w_k` receives `exp(i phi_kj)` on its
/// component along the `j`-th eigenvector of `A_{k-2}` (both 1-based).
pub type PhaseMap<T> = BTreeMap<(usize, usize), T>;

pub const MAX_SAMPLE_TRIES: usize = 100_000;
pub const SCALING_MAX_ITERS: usize = 100_000;
const SCALING_RESTARTS: usize = 20;

fn scale<T: Real>(p: &GTsPattern<T>) -> T {
    T::one().max(p.lambda())
}

/// Polygon whose diagonals have the spectra prescribed by `pattern`.
///
/// Starts from `w_1 = e_1` and adds one edge at a time: forced
/// coincidences between consecutive rows are cancelled, the rank-one
/// weights of the surviving old eigenvalues come from [`wa_weights`], and
/// each eigenvector is oriented so that its overlap with the previous edge
/// is positive. With zero phases every edge is real.
pub fn reconstruct<T: Real>(pattern: &GTsPattern<T>, phases: Option<&PhaseMap<T>>) -> Result<Polygon<T>> {
    let (n, m) = (pattern.n(), pattern.m());
    let sc = scale(pattern);
    let r = pattern.side_lengths();
    if let Some(k) = r.iter().position(|x| !(*x > T::zero())) {
        return Err(Error::InvalidInput(format!("row sums give non-positive side length r_{}", k + 1)));
    }
    if let Some(why) = pattern.polytope_violation(&r, &(T::c(1e-9) * sc)) {
        return Err(Error::InterlacingViolation { detail: why });
    }
    pattern.check_interior(T::c(1e-10) * sc)?;
    let eq_tol = T::c(1e-10) * sc;
    let dim = m + 1;
    let mut edges = vec![Edge { r: r[0], w: basis_vector(dim, 0) }];
    let mut acc = edges[0].matrix();
    for k in 1..n {
        let old = pattern.row(k - 1);
        let (old_s, new_s, pos) = cancel_common(old, pattern.row(k), eq_tol);
        let weights = wa_weights(&old_s, &new_s, r[k])?;
        let s = eig_hermitian(&acc)?;
        let prev = &edges[k - 1].w;
        let mut w = vec![C::new(T::zero(), T::zero()); dim];
        for (&p, &weight) in pos.iter().zip(&weights) {
            let start = (0..=p).find(|&q| (old[q] - old[p]).abs() <= eq_tol).unwrap_or(p);
            let mut u = s.vector(start);
            let overlap = inner(prev, &u);
            if overlap.norm() > T::c(1e-12) {
                let ph = overlap.unscale(overlap.norm());
                for z in u.iter_mut() {
                    *z = *z * ph;
                }
            }
            let phi = phases.and_then(|ph| ph.get(&(k + 1, start + 1))).copied().unwrap_or_else(T::zero);
            let coef = C::from_polar(weight.sqrt(), phi);
            for (x, y) in w.iter_mut().zip(&u) {
                *x = *x + coef * y;
            }
        }
        let norm = vec_norm(&w);
        if (norm - T::one()).abs() > T::c(1e-6) {
            return Err(Error::NormDefect { norm: norm.to_f64_lossy() });
        }
        let edge = Edge { r: r[k], w: w.iter().map(|z| z.unscale(norm)).collect() };
        acc = acc.add(&edge.matrix());
        edges.push(edge);
    }
    Polygon::new(m, edges)
}

/// Rejection sampler for the interior of the pattern polytope.
pub fn random_interior_pattern<T: Real>(s: &SideLengths<T>, seed: u64) -> Result<GTsPattern<T>> {
    random_interior_pattern_with(s, &mut rng_from_seed(seed))
}

pub fn random_interior_pattern_with<T: Real, R: Rng + ?Sized>(s: &SideLengths<T>, rng: &mut R) -> Result<GTsPattern<T>> {
    if let TriangleVerdict::Violated { indices } = check_triangle_inequalities(s) {
        return Err(Error::TriangleInequality { indices });
    }
    let sc = T::one().max(s.lambda());
    let tol = T::c(1e-10) * sc;
    if !is_strictly_admissible(s) {
        return Err(Error::EmptyInterior { tries: 0 });
    }
    if let Some(p) = rejection_sample(s, rng, tol) {
        return Ok(p);
    }
    for _ in 0..SCALING_RESTARTS {
        let poly = scale_to_closure(s, rng)?;
        let p = raw_action_values(&poly);
        if p.polytope_violation(&s.r, &(T::c(1e-9) * sc)).is_none() && p.check_interior(tol).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::EmptyInterior { tries: MAX_SAMPLE_TRIES })
}

/// Sequential bottom-up rejection sampling; `None` after [`MAX_SAMPLE_TRIES`].
fn rejection_sample<T: Real, R: Rng + ?Sized>(s: &SideLengths<T>, rng: &mut R, tol: T) -> Option<GTsPattern<T>> {
    let (n, m) = (s.n(), s.m);
    let lambda = s.lambda();
    let sc = T::one().max(lambda);
    let prefix: Vec<T> = s
        .r
        .iter()
        .scan(T::zero(), |acc, &x| {
            *acc = *acc + x;
            Some(*acc)
        })
        .collect();
    for _ in 0..MAX_SAMPLE_TRIES {
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(n);
        let mut first = vec![T::zero(); m + 1];
        first[0] = s.r[0];
        rows.push(first);
        let mut ok = true;
        for i in 1..n {
            let mut row = vec![T::zero(); m + 1];
            let f = forced_lambda_count(n, m, i);
            for x in row.iter_mut().take(f) {
                *x = lambda;
            }
            let range = unforced_range(n, m, i);
            let prev = &rows[i - 1];
            let prev_at = |j: usize| if j < rank_bound(m, i - 1) { prev[j] } else { T::zero() };
            let mut remaining = prefix[i] - T::from_usize_lossy(f) * lambda;
            let last = range.end.saturating_sub(1);
            for j in range.clone() {
                let lo = prev_at(j);
                let hi = if j == 0 { lambda } else { prev[j - 1] };
                if j == last {
                    row[j] = remaining;
                    if !(row[j] > lo + tol && row[j] < hi - tol) && i + 2 < n {
                        ok = false;
                    }
                } else {
                    let x = lo + (hi - lo) * T::c(rng.random::<f64>());
                    row[j] = x;
                    remaining = remaining - x;
                }
            }
            if !ok {
                break;
            }
            rows.push(row);
        }
        if !ok {
            continue;
        }
        let p = GTsPattern::new(n, m, rows).ok()?;
        if p.polytope_violation(&s.r, &(T::c(1e-9) * sc)).is_none() && p.check_interior(tol).is_ok() {
            return Some(p);
        }
    }
    None
}


/// Closed polygon obtained from random edge directions by alternating
/// scaling `w_k <- S^{-1/2} w_k / |S^{-1/2} w_k|` with
/// `S = sum r_k w_k w_k^* / Lambda`. Converges whenever the directions are
/// stable for `r`, which holds almost surely when `r` is strictly admissible.
pub fn scale_to_closure<T: Real, R: Rng + ?Sized>(s: &SideLengths<T>, rng: &mut R) -> Result<Polygon<T>> {
    let dim = s.m + 1;
    let lambda = s.lambda();
    let mut ws: Vec<Vec<C<T>>> = (0..s.n()).map(|_| random_unit_vector(dim, rng)).collect();
    let target = T::c(1e-13) * T::one().max(lambda);
    for _ in 0..SCALING_MAX_ITERS {
        let edges = ws
            .iter()
            .zip(&s.r)
            .map(|(w, &r)| Edge { r, w: w.clone() })
            .collect::<Vec<_>>();
        let poly = Polygon::new(s.m, edges)?;
        if poly.closure_defect() <= target {
            return Ok(poly);
        }
        let spec = eig_hermitian(&poly.total().scale(T::one() / lambda))?;
        if spec.values.iter().any(|v| !(*v > T::zero())) {
            return Err(Error::ScalingFailed { iterations: 0, defect: poly.closure_defect().to_f64_lossy() });
        }
        let inv_sqrt = ComplexMatrix::from_real_diagonal(&spec.values.iter().map(|v| T::one() / v.sqrt()).collect::<Vec<_>>());
        let root = &(&spec.vectors * &inv_sqrt) * &spec.vectors.adjoint();
        for w in ws.iter_mut() {
            let v = root.mat_vec(w);
            let norm = vec_norm(&v);
            *w = v.iter().map(|z| z.unscale(norm)).collect();
        }
    }
    Err(Error::ScalingFailed { iterations: SCALING_MAX_ITERS, defect: f64::NAN })
}

/// Random closed polygon: interior pattern, random torus phases, then a
/// random global unitary conjugation.
pub fn sample_polygon<T: Real>(s: &SideLengths<T>, seed: u64) -> Result<Polygon<T>> {
    let mut rng = rng_from_seed(seed);
    let pattern = random_interior_pattern_with(s, &mut rng)?;
    let phases = random_phases(s.n(), s.m, &mut rng);
    let p = reconstruct(&pattern, Some(&phases))?;
    let u = random_unitary(s.m + 1, &mut rng);
    Ok(p.conjugate(&u))
}

pub fn random_phases<T: Real, R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> PhaseMap<T> {
    let mut out = BTreeMap::new();
    for k in 2..=n {
        for j in 1..=m + 1 {
            out.insert((k, j), random_angle(rng));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::action_values;

    fn pattern(n: usize, m: usize, rows: Vec<Vec<f64>>) -> GTsPattern<f64> {
        GTsPattern::new(n, m, rows).unwrap()
    }

    #[test]
    fn square_round_trip() {
        let p = pattern(4, 1, vec![vec![1.0, 0.0], vec![1.5, 0.5], vec![2.0, 1.0], vec![2.0, 2.0]]);
        let poly = reconstruct(&p, None).unwrap();
        assert!(poly.closure_defect() <= 1e-10);
        assert!(poly.max_imag() <= 1e-12);
        let back = action_values(&poly).unwrap();
        assert!(back.max_abs_diff(&p) < 1e-10);
    }

    #[test]
    fn rigid_triangle() {
        let p = pattern(3, 1, vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![2.0, 2.0]]);
        let poly = reconstruct(&p, None).unwrap();
        assert!(poly.closure_defect() <= 1e-10);
        assert_eq!(poly.side_lengths(), vec![1.0, 1.0, 2.0]);
    }

    #[test]
    fn boundary_rejected() {
        let p = pattern(4, 1, vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![2.0, 1.0], vec![2.0, 2.0]]);
        assert!(matches!(reconstruct(&p, None), Err(Error::BoundaryPattern { .. })));
    }

    #[test]
    fn inconsistent_rows_rejected() {
        // the third row sum is below the second, so r_3 < 0
        let p = pattern(4, 1, vec![vec![1.0, 0.0], vec![1.5, 0.7], vec![1.6, 0.5], vec![2.0, 2.0]]);
        assert!(reconstruct(&p, None).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let s = SideLengths::new(1, vec![1.0f64; 4]).unwrap();
        let a = random_interior_pattern(&s, 1).unwrap();
        let b = random_interior_pattern(&s, 1).unwrap();
        assert_eq!(a, b);
        let x = a.row(1)[0];
        assert!(x > 1.0 && x < 2.0);
        assert!((a.row(1)[1] - (2.0 - x)).abs() < 1e-15);
    }

    #[test]
    fn violating_lengths_error() {
        let s = SideLengths::new(1, vec![3.0, 1.0, 1.0]).unwrap();
        assert!(matches!(sample_polygon(&s, 0), Err(Error::TriangleInequality { .. })));
    }
}
