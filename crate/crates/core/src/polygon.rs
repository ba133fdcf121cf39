//! Polygons whose edges are weighted rank-one Hermitian matrices.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, numerical_rank, vec_norm, ComplexMatrix, HermitianMatrix, C};
use crate::scalar::{scalar_abs, Real, Scalar};

/// Side lengths `r_1..r_n` together with the rank parameter `m`
/// (edges live in `(m+1) x (m+1)` matrices).
#[derive(Clone, Debug, PartialEq)]
pub struct SideLengths<S> {
    pub m: usize,
    pub r: Vec<S>,
}

impl<S: Scalar> SideLengths<S> {
    /// Rejects `n < 3`, `m = 0` and non-positive lengths.
    pub fn new(m: usize, r: Vec<S>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("m must be at least 1".into()));
        }
        if r.len() < 3 {
            return Err(Error::InvalidInput(format!("need n >= 3 side lengths, got {}", r.len())));
        }
        if let Some(k) = r.iter().position(|x| *x <= S::zero()) {
            return Err(Error::InvalidInput(format!("side length r_{} is not positive", k + 1)));
        }
        Ok(Self { m, r })
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    /// `rho = r_1 + ... + r_n`.
    pub fn rho(&self) -> S {
        self.r.iter().fold(S::zero(), |a, b| a + b.clone())
    }

    /// Closure level `Lambda = rho / (m + 1)`.
    pub fn lambda(&self) -> S {
        self.rho() / S::from_int(self.m as i64 + 1)
    }

    pub fn to_f64(&self) -> SideLengths<f64> {
        SideLengths { m: self.m, r: self.r.iter().map(Scalar::to_f64_lossy).collect() }
    }

    /// Partial sum over a set of 0-based indices.
    pub fn subset_sum(&self, idx: impl IntoIterator<Item = usize>) -> S {
        idx.into_iter().fold(S::zero(), |a, i| a + self.r[i].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TriangleVerdict {
    Satisfied,
    /// 1-based indices `i` with `m r_i > sum_{j != i} r_j`.
    Violated { indices: Vec<usize> },
}

impl TriangleVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, TriangleVerdict::Satisfied)
    }
}

/// Strong triangle inequalities `m r_i <= sum_{j != i} r_j`.
pub fn check_triangle_inequalities<S: Scalar>(s: &SideLengths<S>) -> TriangleVerdict {
    let rho = s.rho();
    let m = S::from_int(s.m as i64);
    let indices: Vec<usize> = s
        .r
        .iter()
        .enumerate()
        .filter(|(_, ri)| m.clone() * (*ri).clone() > rho.clone() - (*ri).clone())
        .map(|(i, _)| i + 1)
        .collect();
    if indices.is_empty() {
        TriangleVerdict::Satisfied
    } else {
        TriangleVerdict::Violated { indices }
    }
}

/// Strict version: `r_i < Lambda` for every `i`.
pub fn is_strictly_admissible<S: Scalar>(s: &SideLengths<S>) -> bool {
    let lambda = s.lambda();
    s.r.iter().all(|ri| *ri < lambda)
}

/// Wall `k rho_I = (m - k + 1) rho_J`; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WallId {
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub k: usize,
}

pub const WALL_SIZE_LIMIT: usize = 20;

/// All walls through `s`, canonicalized so that `(I, J, k)` and
/// `(J, I, m - k + 1)` are reported once with the smaller `I`.
pub fn enumerate_walls<S: Scalar>(s: &SideLengths<S>, tol: &S) -> Result<Vec<WallId>> {
    let n = s.n();
    if n > WALL_SIZE_LIMIT {
        return Err(Error::SizeLimit { what: format!("n = {n} for wall enumeration"), limit: WALL_SIZE_LIMIT });
    }
    let m = s.m as i64;
    let mut found = BTreeSet::new();
    let full: u32 = (1u32 << n) - 1;
    for mask in 1..full {
        let i_set: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        let j_set: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 0).collect();
        let rho_i = s.subset_sum(i_set.iter().copied());
        let rho_j = s.subset_sum(j_set.iter().copied());
        for k in 1..=m {
            let lhs = S::from_int(k) * rho_i.clone();
            let rhs = S::from_int(m - k + 1) * rho_j.clone();
            if scalar_abs(lhs - rhs) <= *tol {
                let a = WallId {
                    i_set: i_set.iter().map(|x| x + 1).collect(),
                    j_set: j_set.iter().map(|x| x + 1).collect(),
                    k: k as usize,
                };
                let b = WallId { i_set: a.j_set.clone(), j_set: a.i_set.clone(), k: (m - k + 1) as usize };
                found.insert(if a.i_set <= b.i_set { a } else { b });
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Wall membership with the default tolerance: exact for rational input,
/// `1e-12 * rho` for floating input.
pub fn is_on_wall<S: Scalar>(s: &SideLengths<S>) -> Result<bool> {
    Ok(!enumerate_walls(s, &default_wall_tol(s))?.is_empty())
}

pub fn default_wall_tol<S: Scalar>(s: &SideLengths<S>) -> S {
    if S::is_exact() {
        S::zero()
    } else {
        s.rho() * S::from_f64(1e-12).unwrap_or_else(S::zero)
    }
}

/// Real dimension `2m(n - m - 2)` of the smooth moduli space.
pub fn moduli_dimension(n: usize, m: usize) -> i64 {
    2 * m as i64 * (n as i64 - m as i64 - 2)
}

/// Edge `r w w*` with `|w| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    pub r: T,
    pub w: Vec<C<T>>,
}

impl<T: Real> Edge<T> {
    /// Normalizes `w`; fails if it is far from unit length or `r <= 0`.
    pub fn new(r: T, w: Vec<C<T>>) -> Result<Self> {
        if !(r > T::zero()) {
            return Err(Error::InvalidInput(format!("edge length {r} is not positive")));
        }
        let norm = vec_norm(&w);
        if (norm - T::one()).abs() > T::c(1e-6) {
            return Err(Error::InvalidInput(format!("edge vector has norm {norm}, expected 1")));
        }
        Ok(Self { r, w: w.into_iter().map(|z| z.unscale(norm)).collect() })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn matrix(&self) -> HermitianMatrix<T> {
        HermitianMatrix::rank_one(self.r, &self.w)
    }
}

pub const DEFAULT_CLOSURE_REL_TOL: f64 = 1e-9;

/// Ordered tuple of edges in `(m+1) x (m+1)` Hermitian matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon<T> {
    m: usize,
    edges: Vec<Edge<T>>,
    closure_rel: T,
}

impl<T: Real> Polygon<T> {
    pub fn new(m: usize, edges: Vec<Edge<T>>) -> Result<Self> {
        if edges.len() < 3 {
            return Err(Error::InvalidInput(format!("need n >= 3 edges, got {}", edges.len())));
        }
        if let Some(k) = edges.iter().position(|e| e.dim() != m + 1) {
            return Err(Error::InvalidInput(format!(
                "edge {} has dimension {}, expected {}",
                k + 1,
                edges[k].dim(),
                m + 1
            )));
        }
        Ok(Self { m, edges, closure_rel: T::c(DEFAULT_CLOSURE_REL_TOL) })
    }

    /// Replaces the relative closure tolerance (default `1e-9`).
    pub fn with_closure_tol(mut self, rel: T) -> Self {
        self.closure_rel = rel;
        self
    }

    pub fn closure_rel_tol(&self) -> T {
        self.closure_rel
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge<T> {
        &self.edges[k]
    }

    pub fn side_lengths(&self) -> Vec<T> {
        self.edges.iter().map(|e| e.r).collect()
    }

    pub fn rho(&self) -> T {
        self.edges.iter().map(|e| e.r).sum()
    }

    pub fn lambda(&self) -> T {
        self.rho() / T::from_usize_lossy(self.m + 1)
    }

    pub fn edge_matrices(&self) -> Vec<HermitianMatrix<T>> {
        self.edges.iter().map(Edge::matrix).collect()
    }

    /// `e_1 + ... + e_n`.
    pub fn total(&self) -> HermitianMatrix<T> {
        sum_matrices(&self.edge_matrices(), self.edges.len(), self.m + 1)
    }

    /// `|sum e_i - Lambda I|_F`.
    pub fn closure_defect(&self) -> T {
        self.total().shift(self.lambda()).frobenius_norm()
    }

    pub fn closure_tol(&self) -> T {
        self.closure_rel * self.lambda()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_defect() <= self.closure_tol()
    }

    pub fn ensure_closed(&self) -> Result<()> {
        let defect = self.closure_defect();
        let tol = self.closure_tol();
        if defect > tol {
            return Err(Error::ClosureViolation { defect: defect.to_f64_lossy(), tol: tol.to_f64_lossy() });
        }
        Ok(())
    }

    /// Simultaneous conjugation `e_k -> U e_k U*`.
    pub fn conjugate(&self, u: &ComplexMatrix<T>) -> Self {
        let edges = self.edges.iter().map(|e| Edge { r: e.r, w: u.mat_vec(&e.w) }).collect();
        Self { m: self.m, edges, closure_rel: self.closure_rel }
    }

    /// Replaces the edge vectors of edges `0..count` by `U w`.
    pub fn conjugate_prefix(&self, u: &ComplexMatrix<T>, count: usize) -> Self {
        let mut out = self.clone();
        for e in out.edges.iter_mut().take(count) {
            e.w = u.mat_vec(&e.w);
        }
        out
    }

    /// Largest per-edge Frobenius distance between edge matrices.
    pub fn max_edge_distance(&self, other: &Self) -> T {
        self.edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| a.matrix().sub(&b.matrix()).frobenius_norm())
            .fold(T::zero(), T::max)
    }

    /// Largest imaginary part over all edge matrices.
    pub fn max_imag(&self) -> T {
        self.edge_matrices().iter().map(|e| e.matrix().max_abs_imag()).fold(T::zero(), T::max)
    }
}

/// Sum of the first `count` matrices (zero matrix of size `dim` if empty).
pub fn sum_matrices<T: Real>(ms: &[HermitianMatrix<T>], count: usize, dim: usize) -> HermitianMatrix<T> {
    ms.iter().take(count).fold(HermitianMatrix::zeros(dim), |acc, e| acc.add(e))
}

/// Real dimension of the common centralizer of all edges inside the
/// traceless Hermitian matrices. Positive iff the polygon is decomposable.
pub fn centralizer_dimension<T: Real>(p: &Polygon<T>) -> usize {
    let d = p.m() + 1;
    let basis = crate::linalg::hermitian_basis::<T>(d);
    let traceless = &basis[..d * d - 1];
    let edges = p.edge_matrices();
    // columns: images of basis elements under X -> ([X, e_k])_k; the
    // commutator of Hermitian matrices is anti-Hermitian, so store i[X, e].
    let rows = edges.len() * d * d;
    let mut op = ComplexMatrix::<T>::zeros(rows, traceless.len());
    let i = Complex::new(T::zero(), T::one());
    for (col, x) in traceless.iter().enumerate() {
        for (k, e) in edges.iter().enumerate() {
            let c = x.matrix().commutator(e.matrix()).scale(i);
            for (idx, z) in c.as_slice().iter().enumerate() {
                op[(k * d * d + idx, col)] = *z;
            }
        }
    }
    // the operator is real-linear on a real space; the complex rank of
    // the matrix of real-valued images equals its real rank once the
    // entries are split into real and imaginary rows.
    let mut real_op = ComplexMatrix::<T>::zeros(2 * rows, traceless.len());
    for r in 0..rows {
        for c in 0..traceless.len() {
            real_op[(2 * r, c)] = C::new(op[(r, c)].re, T::zero());
            real_op[(2 * r + 1, c)] = C::new(op[(r, c)].im, T::zero());
        }
    }
    let scale = p.edges().iter().map(|e| e.r).fold(T::one(), T::max);
    let rank = numerical_rank(&real_op.scale_real(T::one() / scale), T::c(1e-8));
    traceless.len() - rank
}

pub const SEMISTABLE_SIZE_LIMIT: usize = 16;

/// Outcome of the semistability test, with the first violating subspace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemistabilityVerdict {
    pub semistable: bool,
    /// 1-based indices of the points lying in the violating span.
    pub violating_points: Option<Vec<usize>>,
    /// Projective dimension of the violating span.
    pub violating_dimension: Option<usize>,
    pub mass: Option<f64>,
    pub bound: Option<f64>,
}

/// For every subset `S`, the mass of all points in `span(S)` (projective
/// dimension `d`) must not exceed `(d + 1) rho / (m + 1)`.
pub fn check_semistable<T: Real>(points: &[Vec<C<T>>], s: &SideLengths<T>) -> Result<SemistabilityVerdict> {
    let n = points.len();
    if n != s.n() {
        return Err(Error::InvalidInput(format!("{} points for {} side lengths", n, s.n())));
    }
    if n > SEMISTABLE_SIZE_LIMIT {
        return Err(Error::SizeLimit { what: format!("n = {n} for semistability"), limit: SEMISTABLE_SIZE_LIMIT });
    }
    let dim = s.m + 1;
    if let Some(k) = points.iter().position(|p| p.len() != dim) {
        return Err(Error::InvalidInput(format!("point {} has dimension {}, expected {dim}", k + 1, points[k].len())));
    }
    let unit: Vec<Vec<C<T>>> = points
        .iter()
        .map(|p| {
            let nrm = vec_norm(p);
            if nrm.is_zero() {
                Err(Error::ZeroVector)
            } else {
                Ok(p.iter().map(|z| z.unscale(nrm)).collect())
            }
        })
        .collect::<Result<_>>()?;
    let rho = s.rho();
    let tol = T::c(1e-8);
    let slack = T::c(1e-12) * rho;
    let mut seen = BTreeSet::new();
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        let basis = span_basis(members.iter().map(|&k| &unit[k]), tol);
        let d = basis.len();
        let in_span: Vec<usize> = (0..n).filter(|&k| distance_to_span(&unit[k], &basis) <= tol).collect();
        if !seen.insert(in_span.clone()) {
            continue;
        }
        let mass: T = in_span.iter().map(|&k| s.r[k]).sum();
        let bound = T::from_usize_lossy(d) * rho / T::from_usize_lossy(dim);
        if mass > bound + slack {
            return Ok(SemistabilityVerdict {
                semistable: false,
                violating_points: Some(in_span.iter().map(|k| k + 1).collect()),
                violating_dimension: Some(d - 1),
                mass: Some(mass.to_f64_lossy()),
                bound: Some(bound.to_f64_lossy()),
            });
        }
    }
    Ok(SemistabilityVerdict {
        semistable: true,
        violating_points: None,
        violating_dimension: None,
        mass: None,
        bound: None,
    })
}

/// Orthonormal basis of the span by Gram-Schmidt with rejection threshold.
fn span_basis<'a, T: Real>(vs: impl Iterator<Item = &'a Vec<C<T>>>, tol: T) -> Vec<Vec<C<T>>> {
    let mut basis: Vec<Vec<C<T>>> = Vec::new();
    for v in vs {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(&r, b);
                for (x, y) in r.iter_mut().zip(b) {
                    *x = *x - *y * c;
                }
            }
        }
        let nrm = vec_norm(&r);
        if nrm > tol {
            basis.push(r.iter().map(|z| z.unscale(nrm)).collect());
        }
    }
    basis
}

fn distance_to_span<T: Real>(v: &[C<T>], basis: &[Vec<C<T>>]) -> T {
    let mut r = v.to_vec();
    for b in basis {
        let c = inner(&r, b);
        for (x, y) in r.iter_mut().zip(b) {
            *x = *x - *y * c;
        }
    }
    vec_norm(&r)
}

/// At most `k + 1` of the points lie in any projective `k`-plane, i.e.
/// every subset of size `min(n, m + 1)` is linearly independent.
pub fn is_general_position<T: Real>(points: &[Vec<C<T>>]) -> bool {
    let n = points.len();
    let Some(dim) = points.first().map(Vec::len) else {
        return true;
    };
    let size = n.min(dim);
    let mut chosen = Vec::with_capacity(size);
    subsets_independent(points, size, 0, &mut chosen)
}

fn subsets_independent<T: Real>(points: &[Vec<C<T>>], size: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == size {
        let dim = points[0].len();
        let m = ComplexMatrix::from_fn(dim, size, |r, c| {
            let p = &points[chosen[c]];
            p[r].unscale(vec_norm(p))
        });
        return numerical_rank(&m, T::c(1e-8)) == size;
    }
    for k in start..points.len() {
        chosen.push(k);
        let ok = subsets_independent(points, size, k + 1, chosen);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Unit vector `e_k` in `C^dim`.
pub fn basis_vector<T: Real>(dim: usize, k: usize) -> Vec<C<T>> {
    (0..dim).map(|i| if i == k { C::one() } else { C::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;
    use num_rational::BigRational;

    fn q(v: &[&str]) -> Vec<BigRational> {
        v.iter().map(|s| parse_rational(s).unwrap()).collect()
    }

    #[test]
    fn triangle_inequalities() {
        let s = SideLengths::new(1, vec![1.0, 1.0, 1.0]).unwrap();
        assert!(check_triangle_inequalities(&s).is_satisfied());
        let s = SideLengths::new(1, vec![3.0, 1.0, 1.0]).unwrap();
        assert_eq!(check_triangle_inequalities(&s), TriangleVerdict::Violated { indices: vec![1] });
        let s = SideLengths::new(2, vec![1.0; 6]).unwrap();
        assert!(check_triangle_inequalities(&s).is_satisfied());
        let s = SideLengths::new(1, q(&["1", "1", "2"])).unwrap();
        assert!(check_triangle_inequalities(&s).is_satisfied());
        assert!(!is_strictly_admissible(&s));
    }

    #[test]
    fn rejects_degenerate_side_lengths() {
        assert!(SideLengths::new(1, vec![1.0, 1.0]).is_err());
        assert!(SideLengths::new(1, vec![1.0, 0.0, 1.0]).is_err());
        assert!(SideLengths::new(0, vec![1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn walls_of_small_examples() {
        let s = SideLengths::new(1, q(&["1", "1", "1", "1"])).unwrap();
        let walls = enumerate_walls(&s, &BigRational::zero()).unwrap();
        assert!(walls.contains(&WallId { i_set: vec![1, 2], j_set: vec![3, 4], k: 1 }));
        assert!(is_on_wall(&s).unwrap());

        let s = SideLengths::new(1, q(&["1", "1", "1"])).unwrap();
        assert!(enumerate_walls(&s, &BigRational::zero()).unwrap().is_empty());

        let s = SideLengths::new(1, vec![1.0, 1.0, 1.0, 1.0 + 1e-3 * std::f64::consts::SQRT_2]).unwrap();
        assert!(!is_on_wall(&s).unwrap());
    }

    #[test]
    fn walls_match_brute_force_oracle() {
        // m = 2, r = (2,1,1,1,1): k rho_I = (3 - k) rho_J, rho = 6.
        // k = 1: rho_I = 2 rho_J -> rho_I = 4; k = 2: rho_J = 4 (the mirror).
        let r = [2i64, 1, 1, 1, 1];
        let s = SideLengths::new(2, r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).unwrap();
        let walls = enumerate_walls(&s, &BigRational::zero()).unwrap();
        let mut oracle = BTreeSet::new();
        for mask in 1u32..31 {
            let i: Vec<usize> = (0..5).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            let j: Vec<usize> = (0..5).filter(|b| mask >> b & 1 == 0).map(|b| b + 1).collect();
            let ri: i64 = i.iter().map(|&x| r[x - 1]).sum();
            let rj: i64 = j.iter().map(|&x| r[x - 1]).sum();
            for k in 1..=2i64 {
                if k * ri == (3 - k) * rj {
                    let a = (i.clone(), j.clone(), k as usize);
                    let b = (j.clone(), i.clone(), (3 - k) as usize);
                    oracle.insert(if a.0 <= b.0 { a } else { b });
                }
            }
        }
        let got: BTreeSet<_> = walls.iter().map(|w| (w.i_set.clone(), w.j_set.clone(), w.k)).collect();
        assert_eq!(got, oracle);
        assert!(!walls.is_empty());
    }

    #[test]
    fn walls_size_limit() {
        let s = SideLengths::new(1, vec![1.0; 21]).unwrap();
        assert!(matches!(enumerate_walls(&s, &0.0), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dimension(6, 2), 8);
        assert_eq!(moduli_dimension(4, 1), 2);
        assert_eq!(moduli_dimension(5, 1), 4);
    }

    #[test]
    fn collinear_defect() {
        let e = |r| Edge::new(r, basis_vector(3, 0)).unwrap();
        let p = Polygon::new(2, vec![e(2.0), e(1.0), e(1.0)]).unwrap();
        // diag(4, 0, 0) - (4/3) I
        let expected = (64.0f64 / 9.0 + 16.0 / 9.0 + 16.0 / 9.0).sqrt();
        assert!((p.closure_defect() - expected).abs() < 1e-14);
    }

    #[test]
    fn semistability_examples() {
        let pts = vec![basis_vector::<f64>(2, 0), basis_vector(2, 1), vec![C::new(1.0, 0.0), C::new(1.0, 0.0)]];
        let s = SideLengths::new(1, vec![1.0, 1.0, 1.0]).unwrap();
        assert!(check_semistable(&pts, &s).unwrap().semistable);
        assert!(is_general_position(&pts));

        let pts = vec![basis_vector::<f64>(2, 0), basis_vector(2, 0), basis_vector(2, 1)];
        let s = SideLengths::new(1, vec![2.0, 1.0, 1.0]).unwrap();
        let v = check_semistable(&pts, &s).unwrap();
        assert!(!v.semistable);
        assert_eq!(v.violating_points, Some(vec![1, 2]));
        assert!(!is_general_position(&pts));
    }

    #[test]
    fn general_position_of_frame() {
        let mut pts: Vec<Vec<C<f64>>> = (0..3).map(|k| basis_vector(3, k)).collect();
        pts.push(vec![C::new(1.0, 0.0); 3]);
        assert!(is_general_position(&pts));
        pts[3] = vec![C::new(1.0, 0.0), C::new(1.0, 0.0), C::zero()];
        assert!(!is_general_position(&pts));
    }

    #[test]
    fn block_polygon_is_decomposable() {
        // m = 2: edges in span(e1, e2) closing there, plus edges along e3
        let s2 = std::f64::consts::FRAC_1_SQRT_2;
        let edges = vec![
            Edge::new(1.0, basis_vector(3, 0)).unwrap(),
            Edge::new(1.0, basis_vector(3, 1)).unwrap(),
            Edge::new(1.0, vec![C::new(s2, 0.0), C::new(s2, 0.0), C::zero()]).unwrap(),
            Edge::new(1.0, vec![C::new(s2, 0.0), C::new(-s2, 0.0), C::zero()]).unwrap(),
            Edge::new(2.0, basis_vector(3, 2)).unwrap(),
        ];
        let p = Polygon::new(2, edges).unwrap();
        assert!(p.closure_defect() < 1e-14);
        assert!(centralizer_dimension(&p) >= 1);
    }
}
