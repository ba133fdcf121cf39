//! Diagonals, Gel'fand-Tsetlin patterns and the rank-one perturbation
//! (Weinstein-Aronszajn) calculus.
//!
//! Row `i` of a pattern holds the eigenvalues of the diagonal
//! `A_i = e_1 + ... + e_{i+1}` (so `i` runs over `0..n`), stored with all
//! `m + 1` entries. Action indices `(i, j)` use this row index `i` and a
//! 1-based eigenvalue index `j`, matching `lambda_ij`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, HermitianMatrix, C};
use crate::polygon::{sum_matrices, Polygon};
use crate::scalar::{scalar_abs, Real, Scalar};

/// Number of leading entries of row `i` forced to equal `Lambda`: the
/// complement `A_{n-1} - A_i` has rank at most `n - i - 1`.
pub fn forced_lambda_count(n: usize, m: usize, i: usize) -> usize {
    (m + i + 2).saturating_sub(n).min(m + 1)
}

/// Entries `j >= rank_bound` of row `i` are structural zeros.
pub fn rank_bound(m: usize, i: usize) -> usize {
    (i + 1).min(m + 1)
}

/// 0-based stored entries of row `i` that are neither forced nor structural.
pub fn unforced_range(n: usize, m: usize, i: usize) -> Range<usize> {
    let lo = forced_lambda_count(n, m, i);
    let hi = rank_bound(m, i).max(lo);
    lo..hi
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    StructuralZero,
    ForcedLambda,
    /// Determined by the side lengths alone (row 0, row `n - 2`).
    Fixed,
    /// Varies over the polytope.
    Variable,
}

pub fn entry_kind(n: usize, m: usize, i: usize, j: usize) -> EntryKind {
    if j >= rank_bound(m, i) {
        return EntryKind::StructuralZero;
    }
    if j < forced_lambda_count(n, m, i) {
        return EntryKind::ForcedLambda;
    }
    if i == 0 || i + 2 >= n {
        EntryKind::Fixed
    } else {
        EntryKind::Variable
    }
}

/// Half the moduli dimension: `(n - m - 2) m`.
pub fn polytope_dimension(n: usize, m: usize) -> i64 {
    (n as i64 - m as i64 - 2) * m as i64
}

/// Pairs `(i, j)` of non-forced `lambda_ij` for `1 <= i <= n - 3`, with the
/// right-most unforced entry of each row dropped (it is fixed by the trace).
pub fn action_index_set(n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(2) {
        let range = unforced_range(n, m, i);
        if range.len() < 2 {
            continue;
        }
        for j0 in range.start..range.end - 1 {
            out.push((i, j0 + 1));
        }
    }
    out
}

/// The partial sums `A_0, ..., A_{n-1}`.
#[derive(Clone, Debug)]
pub struct DiagonalSequence<T> {
    pub matrices: Vec<HermitianMatrix<T>>,
}

pub fn diagonals<T: Real>(p: &Polygon<T>) -> DiagonalSequence<T> {
    let es = p.edge_matrices();
    let mut matrices = Vec::with_capacity(es.len());
    let mut acc = HermitianMatrix::zeros(p.m() + 1);
    for e in &es {
        acc = acc.add(e);
        matrices.push(acc.clone());
    }
    DiagonalSequence { matrices }
}

/// Diagonal `A_i` alone.
pub fn diagonal<T: Real>(edges: &[HermitianMatrix<T>], i: usize, dim: usize) -> HermitianMatrix<T> {
    sum_matrices(edges, i + 1, dim)
}

/// Triangular array of diagonal eigenvalues, bottom row first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPattern<S>", bound(deserialize = "S: Scalar + Deserialize<'de>", serialize = "S: Serialize"))]
pub struct GTsPattern<S> {
    n: usize,
    m: usize,
    rows: Vec<Vec<S>>,
}

#[derive(Deserialize)]
struct RawPattern<S> {
    n: usize,
    m: usize,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> TryFrom<RawPattern<S>> for GTsPattern<S> {
    type Error = Error;
    fn try_from(raw: RawPattern<S>) -> Result<Self> {
        Self::new(raw.n, raw.m, raw.rows)
    }
}

impl<S: Scalar> GTsPattern<S> {
    /// Checks only the shape: `n` rows of `m + 1` entries, `n >= 2`.
    pub fn new(n: usize, m: usize, rows: Vec<Vec<S>>) -> Result<Self> {
        if n < 2 || m == 0 {
            return Err(Error::InvalidInput(format!("pattern needs n >= 2 and m >= 1, got n={n}, m={m}")));
        }
        if rows.len() != n {
            return Err(Error::InvalidInput(format!("pattern has {} rows, expected {n}", rows.len())));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != m + 1) {
            return Err(Error::InvalidInput(format!("pattern row {i} has {} entries, expected {}", rows[i].len(), m + 1)));
        }
        Ok(Self { n, m, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.rows[i]
    }

    /// `lambda_ij` with `j` 1-based.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.rows[i][j - 1]
    }

    pub fn row_sum(&self, i: usize) -> S {
        self.rows[i].iter().fold(S::zero(), |a, b| a + b.clone())
    }

    /// Side lengths as successive row-sum differences.
    pub fn side_lengths(&self) -> Vec<S> {
        let mut prev = S::zero();
        (0..self.n)
            .map(|i| {
                let s = self.row_sum(i);
                let r = s.clone() - prev.clone();
                prev = s;
                r
            })
            .collect()
    }

    /// Top entry of the last row.
    pub fn lambda(&self) -> S {
        self.rows[self.n - 1][0].clone()
    }

    /// Row `i` as displayed in the triangle: `i + 1` entries, zero padded.
    pub fn display_row(&self, i: usize) -> Vec<S> {
        (0..=i).map(|j| if j <= self.m { self.rows[i][j].clone() } else { S::zero() }).collect()
    }

    /// Values at the action index set, in index-set order.
    pub fn free_coordinates(&self) -> Vec<S> {
        action_index_set(self.n, self.m).into_iter().map(|(i, j)| self.get(i, j).clone()).collect()
    }

    /// First violated polytope constraint, or `None` for members. `slack`
    /// loosens every inequality and equation (use zero for exact types).
    pub fn polytope_violation(&self, r: &[S], slack: &S) -> Option<String> {
        let n = self.n;
        let m = self.m;
        if r.len() != n {
            return Some(format!("{} side lengths for {} rows", r.len(), n));
        }
        let rho = r.iter().fold(S::zero(), |a, b| a + b.clone());
        let lambda = rho / S::from_int(m as i64 + 1);
        let close = |a: &S, b: &S| scalar_abs(a.clone() - b.clone()) <= *slack;
        let mut prefix = S::zero();
        for i in 0..n {
            prefix = prefix + r[i].clone();
            if !close(&self.row_sum(i), &prefix) {
                return Some(format!("row {i} sums to {}, expected {prefix}", self.row_sum(i)));
            }
            for j in rank_bound(m, i)..=m {
                if !self.rows[i][j].is_zero() && !close(&self.rows[i][j], &S::zero()) {
                    return Some(format!("row {i} entry {} should be a structural zero", j + 1));
                }
            }
            if let Some(j) = self.rows[i].iter().position(|x| *x < -slack.clone()) {
                return Some(format!("row {i} entry {} is negative", j + 1));
            }
            if i > 0 {
                let lo = self.display_row(i - 1);
                let hi = self.display_row(i);
                for j in 0..i {
                    if hi[j].clone() + slack.clone() < lo[j] || lo[j].clone() + slack.clone() < hi[j + 1] {
                        return Some(format!("rows {} and {i} do not interlace at entry {}", i - 1, j + 1));
                    }
                }
            }
        }
        if let Some(j) = self.rows[n - 1].iter().position(|x| !close(x, &lambda)) {
            return Some(format!("top row entry {} is not Lambda = {lambda}", j + 1));
        }
        None
    }

    pub fn to_f64(&self) -> GTsPattern<f64> {
        GTsPattern {
            n: self.n,
            m: self.m,
            rows: self.rows.iter().map(|r| r.iter().map(Scalar::to_f64_lossy).collect()).collect(),
        }
    }
}

impl<T: Real> GTsPattern<T> {
    /// Err with the first non-strict inequality touching a variable entry.
    pub fn check_interior(&self, tol: T) -> Result<()> {
        let (n, m) = (self.n, self.m);
        let var = |i: usize, j: usize| j <= m && j <= i && entry_kind(n, m, i, j) == EntryKind::Variable;
        for i in 1..n {
            let lo = self.display_row(i - 1);
            let hi = self.display_row(i);
            for j in 0..i {
                if (var(i, j) || var(i - 1, j)) && !(hi[j] - lo[j] > tol) {
                    return Err(Error::BoundaryPattern {
                        detail: format!("lambda_{},{} = lambda_{},{} within {:e}", i, j + 1, i - 1, j + 1, tol.to_f64_lossy()),
                    });
                }
                if (var(i - 1, j) || var(i, j + 1)) && !(lo[j] - hi[j + 1] > tol) {
                    return Err(Error::BoundaryPattern {
                        detail: format!("lambda_{},{} = lambda_{},{} within {:e}", i - 1, j + 1, i, j + 2, tol.to_f64_lossy()),
                    });
                }
            }
            for j in 0..=m {
                if var(i, j) && !(self.rows[i][j] > tol) {
                    return Err(Error::BoundaryPattern { detail: format!("lambda_{},{} is not positive", i, j + 1) });
                }
            }
        }
        Ok(())
    }
}

impl<T: Real> GTsPattern<T> {
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.rows
            .iter()
            .flatten()
            .zip(other.rows.iter().flatten())
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }
}

/// Eigenvalues of every diagonal with structural zeros and forced `Lambda`
/// entries imposed exactly. Fails on open polygons.
pub fn action_values<T: Real>(p: &Polygon<T>) -> Result<GTsPattern<T>> {
    p.ensure_closed()?;
    Ok(raw_action_values(p))
}

/// As [`action_values`] without the closure check.
pub fn raw_action_values<T: Real>(p: &Polygon<T>) -> GTsPattern<T> {
    let (n, m) = (p.n(), p.m());
    let lambda = p.lambda();
    let snap = T::c(1e-8) * lambda;
    let rows = diagonals(p)
        .matrices
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut vals = eigenvalues(a);
            for (j, v) in vals.iter_mut().enumerate() {
                if j >= rank_bound(m, i) {
                    *v = T::zero();
                } else if j < forced_lambda_count(n, m, i) && (*v - lambda).abs() <= snap {
                    *v = lambda;
                }
            }
            vals
        })
        .collect();
    GTsPattern { n, m, rows }
}

/// Sorted eigenvalues; the Jacobi solver always converges on the small
/// matrices used here, a failure is a bug.
pub(crate) fn eigenvalues<T: Real>(a: &HermitianMatrix<T>) -> Vec<T> {
    eig_hermitian(a).expect("Jacobi eigensolver converges on small matrices").values
}

/// `1 - r sum_j |alpha_j|^2 / (z - lambda_j)`, which equals
/// `prod (z - nu_i) / prod (z - lambda_j)` for `L = A + r w w*`.
pub fn wa_char_ratio<T: Real>(lambda: &[T], alpha2: &[T], r: T, z: C<T>) -> Result<C<T>> {
    let mut acc = C::new(T::one(), T::zero());
    for (&l, &a) in lambda.iter().zip(alpha2) {
        let d = z - C::new(l, T::zero());
        if d.norm() <= T::epsilon() * T::one().max(l.abs()) {
            return Err(Error::PoleEvaluation { pole: l.to_f64_lossy() });
        }
        acc = acc - C::new(r * a, T::zero()) / d;
    }
    Ok(acc)
}

/// `nu_1 >= lambda_1 >= nu_2 >= ... >= lambda_k` for `r > 0`; the roles
/// swap for `r < 0`. Both inputs sorted non-increasing, equal length.
pub fn check_interlacing<T: Real>(lambda: &[T], nu: &[T], positive: bool, slack: T) -> bool {
    if lambda.len() != nu.len() {
        return false;
    }
    let (upper, lower) = if positive { (nu, lambda) } else { (lambda, nu) };
    (0..upper.len()).all(|j| {
        upper[j] + slack >= lower[j] && (j + 1 == upper.len() || lower[j] + slack >= upper[j + 1])
    })
}

/// Squared weights `|alpha_j|^2 = |(w, u_j)|^2` recovered from the old and
/// new spectra of a rank-one update `L = A + r w w*`, after forced
/// coincidences have been cancelled.
pub fn wa_weights<T: Real>(lambda: &[T], nu: &[T], r: T) -> Result<Vec<T>> {
    if lambda.len() != nu.len() {
        return Err(Error::InvalidInput(format!("spectra of lengths {} and {}", lambda.len(), nu.len())));
    }
    if !(r > T::zero()) {
        return Err(Error::InvalidInput(format!("rank-one weight {r} must be positive")));
    }
    let scale = lambda.iter().chain(nu).fold(T::one(), |a, b| a.max(b.abs()));
    if !check_interlacing(lambda, nu, true, T::c(1e-9) * scale) {
        return Err(Error::InterlacingViolation { detail: format!("old {lambda:?}, new {nu:?}") });
    }
    for w in lambda.windows(2) {
        if (w[0] - w[1]).abs() <= T::c(1e-12) * scale {
            return Err(Error::RepeatedEigenvalue { value: w[0].to_f64_lossy() });
        }
    }
    let mut out = Vec::with_capacity(lambda.len());
    for (j, &lj) in lambda.iter().enumerate() {
        let num: T = nu.iter().fold(T::one(), |acc, &v| acc * (lj - v));
        let den: T = lambda
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(r, |acc, (_, &l)| acc * (lj - l));
        let a = -num / den;
        if a < -T::c(1e-10) {
            return Err(Error::InterlacingViolation { detail: format!("negative weight {a} at lambda = {lj}") });
        }
        out.push(a.max(T::zero()));
    }
    Ok(out)
}

/// Removes values common to both multisets (within `tol`); both inputs
/// sorted non-increasing. Returns the surviving `(old, new)` values together
/// with, for each surviving old value, its position in `old`.
pub fn cancel_common<T: Real>(old: &[T], new: &[T], tol: T) -> (Vec<T>, Vec<T>, Vec<usize>) {
    let mut used_new = vec![false; new.len()];
    let mut keep_old = Vec::new();
    let mut keep_pos = Vec::new();
    for (p, &x) in old.iter().enumerate() {
        let hit = new.iter().enumerate().position(|(k, &y)| !used_new[k] && (x - y).abs() <= tol);
        match hit {
            Some(k) => used_new[k] = true,
            None => {
                keep_old.push(x);
                keep_pos.push(p);
            }
        }
    }
    let keep_new = new.iter().zip(&used_new).filter(|(_, &u)| !u).map(|(&y, _)| y).collect();
    (keep_old, keep_new, keep_pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, ComplexMatrix};
    use crate::random::{random_unit_vector, rng_from_seed};

    #[test]
    fn index_sets() {
        assert_eq!(action_index_set(5, 1), vec![(1, 1), (2, 1)]);
        assert_eq!(action_index_set(6, 2), vec![(1, 1), (2, 1), (2, 2), (3, 2)]);
        assert_eq!(action_index_set(4, 1), vec![(1, 1)]);
        assert_eq!(action_index_set(5, 2), vec![(1, 1), (2, 2)]);
        for m in 1..4 {
            for n in (m + 2)..(m + 8) {
                assert_eq!(action_index_set(n, m).len() as i64, polytope_dimension(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn polytope_dimensions() {
        assert_eq!(polytope_dimension(6, 2), 4);
        assert_eq!(polytope_dimension(4, 1), 1);
        assert_eq!(polytope_dimension(5, 1), 2);
    }

    #[test]
    fn structural_entries() {
        // m = 2, n = 6: row 0 (r1, 0, 0), row 1 has one zero, row 4 two Lambdas
        assert_eq!(entry_kind(6, 2, 0, 0), EntryKind::Fixed);
        assert_eq!(entry_kind(6, 2, 0, 1), EntryKind::StructuralZero);
        assert_eq!(entry_kind(6, 2, 1, 2), EntryKind::StructuralZero);
        assert_eq!(entry_kind(6, 2, 1, 1), EntryKind::Variable);
        assert_eq!(entry_kind(6, 2, 3, 0), EntryKind::ForcedLambda);
        assert_eq!(entry_kind(6, 2, 4, 1), EntryKind::ForcedLambda);
        assert_eq!(entry_kind(6, 2, 4, 2), EntryKind::Fixed);
        assert_eq!(forced_lambda_count(6, 2, 5), 3);
    }

    #[test]
    fn wa_ratio_examples() {
        let z = C::new(2.0f64, 0.0);
        let v = wa_char_ratio(&[1.0, 0.0], &[0.5, 0.5], 1.0, z).unwrap();
        assert!((v.re - 0.25).abs() < 1e-15 && v.im == 0.0);
        // determinant oracle: L = [[1.5,.5],[.5,.5]], det(2 - L) / det(2 - A)
        let det = (2.0 - 1.5) * (2.0 - 0.5) - 0.25;
        assert!((v.re - det / 2.0).abs() < 1e-15);
        let big = wa_char_ratio(&[1.0, 0.0], &[0.5, 0.5], 1.0, C::new(1e12f64, 0.0)).unwrap();
        assert!((big.re - 1.0).abs() < 1e-11);
        assert_eq!(wa_char_ratio(&[1.0], &[0.3], 0.0, C::new(4.0, 1.0)).unwrap(), C::new(1.0, 0.0));
        assert!(matches!(wa_char_ratio(&[1.0], &[0.3], 1.0, C::new(1.0, 0.0)), Err(Error::PoleEvaluation { .. })));
    }

    #[test]
    fn wa_weights_examples() {
        let h = std::f64::consts::SQRT_2 / 2.0;
        let w = wa_weights(&[1.0, 0.0], &[1.0 + h, 1.0 - h], 1.0).unwrap();
        assert!((w[0] - 0.5).abs() < 1e-14 && (w[1] - 0.5).abs() < 1e-14);
        // nu_1 = lambda_1 makes the weight there vanish
        let w = wa_weights(&[2.0, 1.0], &[2.0, 2.0], 1.0).unwrap();
        assert_eq!(w[0], 0.0);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(matches!(wa_weights(&[1.0, 1.0], &[2.0, 1.0], 1.0), Err(Error::RepeatedEigenvalue { .. })));
        assert!(matches!(wa_weights(&[1.0, 0.0], &[0.5, 0.4], 1.0), Err(Error::InterlacingViolation { .. })));
    }

    #[test]
    fn interlacing_examples() {
        assert!(check_interlacing(&[1.0, 0.0], &[1.7, 0.3], true, 0.0));
        assert!(!check_interlacing(&[1.0, 0.0], &[0.5, 0.4], true, 0.0));
        assert!(check_interlacing(&[1.7, 0.3], &[1.0, 0.0], false, 0.0));
    }

    #[test]
    fn weights_match_eigenvector_overlaps() {
        let mut rng = rng_from_seed(17);
        for d in 2..6 {
            // random Hermitian A with simple spectrum
            let g = ComplexMatrix::from_fn(d, d, |_, _| crate::random::complex_gaussian::<f64, _>(&mut rng));
            let a = HermitianMatrix::from_matrix(g).unwrap();
            let w: Vec<C<f64>> = random_unit_vector(d, &mut rng);
            let r = 0.7;
            let sa = eig_hermitian(&a).unwrap();
            let sl = eig_hermitian(&a.add(&HermitianMatrix::rank_one(r, &w))).unwrap();
            let weights = wa_weights(&sa.values, &sl.values, r).unwrap();
            for j in 0..d {
                let overlap = crate::linalg::inner(&w, &sa.vector(j)).norm_sqr();
                assert!((weights[j] - overlap).abs() < 1e-8, "d={d} j={j}");
            }
        }
    }

    #[test]
    fn cancellation() {
        let (o, n, pos) = cancel_common(&[2.0, 1.0, 0.0, 0.0], &[2.0, 2.0, 1.5, 0.0], 1e-12);
        assert_eq!(o, vec![1.0, 0.0]);
        assert_eq!(n, vec![2.0, 1.5]);
        assert_eq!(pos, vec![1, 3]);
    }

    #[test]
    fn exact_membership() {
        use num_rational::BigRational;
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let rows = vec![
            vec![q(1, 1), q(0, 1)],
            vec![q(3, 2), q(1, 2)],
            vec![q(2, 1), q(1, 1)],
            vec![q(2, 1), q(2, 1)],
        ];
        let p = GTsPattern::new(4, 1, rows).unwrap();
        let r = vec![q(1, 1); 4];
        assert_eq!(p.polytope_violation(&r, &q(0, 1)), None);
        assert_eq!(p.side_lengths(), r);
        let bad = GTsPattern::new(4, 1, vec![
            vec![q(1, 1), q(0, 1)],
            vec![q(5, 2), q(-1, 2)],
            vec![q(2, 1), q(1, 1)],
            vec![q(2, 1), q(2, 1)],
        ])
        .unwrap();
        assert!(bad.polytope_violation(&r, &q(0, 1)).is_some());
    }
}
