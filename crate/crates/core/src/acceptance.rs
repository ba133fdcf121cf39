//! The acceptance suite: ten end-to-end checks with pinned tolerances,
//! shared by the `acceptance` test target and the CLI's `verify-all`.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::bending::{angle_values, bend, gradient, bracket_from_gradients, ActionAngle, FlowSpec};
use crate::combinatorics::multiplicity_report;
use crate::duality::{
    dot, duality_report, generic_pentagon, hitchin_derivatives, hitchin_matrix, to_euclidean, EuclideanPolygon, HitchinSpec,
};
use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, ComplexMatrix, C};
use crate::polygon::{
    check_semistable, check_triangle_inequalities, is_general_position, is_strictly_admissible, moduli_dimension, Polygon,
    SideLengths, TriangleVerdict,
};
use crate::random::{random_unit_vector, rng_from_seed, SeededRng};
use crate::reconstruction::{random_interior_pattern_with, random_phases, reconstruct, sample_polygon};
use crate::scalar::wrap_angle;
use crate::spectral::{action_index_set, action_values, polytope_dimension, unforced_range};

pub const FLOW_GRID: [(usize, usize); 5] = [(1, 5), (1, 6), (2, 6), (2, 7), (3, 8)];
pub const RECONSTRUCTION_GRID: [(usize, usize); 6] = [(1, 5), (1, 6), (2, 5), (2, 6), (2, 7), (3, 8)];
pub const DIMENSION_GRID: [(usize, usize); 4] = [(1, 4), (1, 5), (2, 6), (2, 5)];
pub const DUALITY_GRID: [(usize, usize); 3] = [(1, 5), (2, 6), (2, 7)];

pub const FLOW_POLYGONS: usize = 20;
pub const FLOW_TIMES: [f64; 3] = [0.3, 1.7, std::f64::consts::PI];
pub const CLOSURE_DRIFT_TOL: f64 = 1e-10;
pub const PATTERN_DRIFT_TOL: f64 = 1e-9;
pub const PERIOD_TOL: f64 = 1e-9;
pub const FLOW_TIME_BUDGET_S: f64 = 10.0;

pub const BRACKET_POLYGONS: usize = 5;
pub const FD_STEP: f64 = 1e-5;
pub const INVOLUTIVITY_TOL: f64 = 5e-5;
pub const CONJUGACY_TOL: f64 = 5e-4;
pub const ANGLE_SHIFT_T: f64 = 0.7;
pub const ANGLE_SHIFT_TOL: f64 = 1e-8;

pub const RECONSTRUCTION_PATTERNS: usize = 50;
pub const ROUND_TRIP_TOL: f64 = 1e-8;
pub const REAL_EDGE_TOL: f64 = 1e-10;

pub const MULTIPLICITY_MAX_ENTRY: u64 = 4;
pub const MULTIPLICITY_TIME_BUDGET_S: f64 = 60.0;

pub const AFFINE_RANK_TOL: f64 = 1e-9;

pub const DUALITY_POLYGONS: usize = 20;
pub const DUALITY_TOL: f64 = 1e-9;

pub const HITCHIN_MIN_TRIPLE: f64 = 0.05;
pub const HITCHIN_MOVING_MIN: f64 = 1e-3;
pub const HITCHIN_INVARIANT_TOL: f64 = 1e-12;
pub const HITCHIN_MATRIX_TOL: f64 = 1e-12;

pub const ADMISSIBILITY_SAMPLES: usize = 200;
pub const SEMISTABILITY_SAMPLES: usize = 50;

const SEED_BASE: u64 = 0x5eed_0000;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_s: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] criterion {:>2} {} ({:.2}s): {}", self.id, self.title, self.elapsed_s, self.detail)
    }
}

pub const TITLES: [&str; 10] = [
    "flow exactness",
    "involutivity",
    "action-angle structure",
    "reconstruction round trip",
    "multiplicity four-way equality",
    "dimension formulas",
    "duality",
    "Hitchin non-coincidence",
    "necessity and sufficiency",
    "semistability consistency",
];

pub fn run(id: usize) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => flow_exactness(),
        2 => involutivity(),
        3 => action_angle(),
        4 => reconstruction_round_trip(),
        5 => multiplicity_equality(),
        6 => dimension_formulas(),
        7 => duality(),
        8 => hitchin(),
        9 => necessity_sufficiency(),
        10 => semistability(),
        _ => Err(Error::IndexOutOfRange { detail: format!("criterion {id}") }),
    };
    let elapsed_s = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), passed, detail, elapsed_s }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10).map(run).collect()
}

type Outcome = Result<(bool, String)>;

fn seed(criterion: u64, m: usize, n: usize, k: usize) -> u64 {
    SEED_BASE ^ (criterion << 40) ^ ((m as u64) << 32) ^ ((n as u64) << 24) ^ k as u64
}

/// Strictly admissible lengths drawn uniformly from `[0.5, 1.5]`.
pub fn random_lengths(n: usize, m: usize, rng: &mut SeededRng) -> SideLengths<f64> {
    loop {
        let r = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
        let s = SideLengths::new(m, r).expect("positive lengths");
        if is_strictly_admissible(&s) {
            return s;
        }
    }
}

/// Seeded closed polygon; with `unit_lambda` the lengths are rescaled so
/// that `Lambda = 1`.
pub fn seeded_polygon(m: usize, n: usize, seed: u64, unit_lambda: bool) -> Result<Polygon<f64>> {
    let mut rng = rng_from_seed(seed);
    let mut s = random_lengths(n, m, &mut rng);
    if unit_lambda {
        let l = s.lambda();
        s.r.iter_mut().for_each(|x| *x /= l);
    }
    sample_polygon(&s, rng.random())
}

fn flow_exactness() -> Outcome {
    let start = Instant::now();
    let (mut closure, mut drift, mut period, mut flows) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    for (m, n) in FLOW_GRID {
        for k in 0..FLOW_POLYGONS {
            let p = seeded_polygon(m, n, seed(1, m, n, k), false)?;
            let gamma = action_values(&p)?;
            let d0 = p.closure_defect();
            for (i, j) in action_index_set(n, m) {
                for t in FLOW_TIMES {
                    let q = bend(&p, FlowSpec { i, j, t })?;
                    closure = closure.max((q.closure_defect() - d0).abs());
                    drift = drift.max(action_values(&q)?.max_abs_diff(&gamma));
                }
                let full = bend(&p, FlowSpec { i, j, t: 2.0 * std::f64::consts::PI })?;
                period = period.max(full.max_edge_distance(&p));
                flows += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = closure <= CLOSURE_DRIFT_TOL && drift <= PATTERN_DRIFT_TOL && period <= PERIOD_TOL && secs < FLOW_TIME_BUDGET_S;
    Ok((
        ok,
        format!(
            "{flows} flows; closure change {closure:.2e} (<= {CLOSURE_DRIFT_TOL:e}), pattern drift {drift:.2e} (<= {PATTERN_DRIFT_TOL:e}), 2pi return {period:.2e} (<= {PERIOD_TOL:e}), {secs:.2}s (< {FLOW_TIME_BUDGET_S}s)"
        ),
    ))
}

fn involutivity() -> Outcome {
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    for (m, n) in FLOW_GRID {
        for k in 0..BRACKET_POLYGONS {
            let p = seeded_polygon(m, n, seed(2, m, n, k), true)?;
            let grads = action_index_set(n, m)
                .into_iter()
                .map(|(i, j)| gradient(&ActionAngle::Lambda { i, j }, &p, FD_STEP))
                .collect::<Result<Vec<_>>>()?;
            for a in 0..grads.len() {
                for b in a + 1..grads.len() {
                    worst = worst.max(bracket_from_gradients(&p, &grads[a], &grads[b]).abs());
                    pairs += 1;
                }
            }
        }
    }
    Ok((worst <= INVOLUTIVITY_TOL, format!("{pairs} pairs; max |{{lambda, lambda}}| = {worst:.2e} (<= {INVOLUTIVITY_TOL:e})")))
}

fn action_angle() -> Outcome {
    let (mut mu_theta, mut theta_theta, mut shift) = (0.0f64, 0.0f64, 0.0f64);
    let mut bends = 0usize;
    for (m, n) in FLOW_GRID {
        let idx = action_index_set(n, m);
        for k in 0..BRACKET_POLYGONS {
            let p = seeded_polygon(m, n, seed(3, m, n, k), true)?;
            let grad = |f: ActionAngle| gradient(&f, &p, FD_STEP);
            let mus = idx.iter().map(|&(i, j)| grad(ActionAngle::Mu { i, j })).collect::<Result<Vec<_>>>()?;
            let thetas = idx.iter().map(|&(i, j)| grad(ActionAngle::Theta { i, j })).collect::<Result<Vec<_>>>()?;
            for a in 0..idx.len() {
                for b in 0..idx.len() {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    mu_theta = mu_theta.max((bracket_from_gradients(&p, &mus[a], &thetas[b]) - delta).abs());
                    if a < b {
                        theta_theta = theta_theta.max(bracket_from_gradients(&p, &thetas[a], &thetas[b]).abs());
                    }
                }
            }
            let before = angle_values(&p)?;
            for bi in 1..=n - 3 {
                for l in unforced_range(n, m, bi).map(|j| j + 1) {
                    let after = angle_values(&bend(&p, FlowSpec { i: bi, j: l, t: ANGLE_SHIFT_T })?)?;
                    for (&(i, j), &th) in &before.theta {
                        let expected = match (i == bi, l) {
                            (true, l) if l == j => ANGLE_SHIFT_T,
                            (true, l) if l == j + 1 => -ANGLE_SHIFT_T,
                            _ => 0.0,
                        };
                        shift = shift.max(wrap_angle(after.theta[&(i, j)] - th - expected).abs());
                    }
                    bends += 1;
                }
            }
        }
    }
    let ok = mu_theta <= CONJUGACY_TOL && theta_theta <= CONJUGACY_TOL && shift <= ANGLE_SHIFT_TOL;
    Ok((
        ok,
        format!(
            "max |{{mu, theta}} - delta| = {mu_theta:.2e}, max |{{theta, theta}}| = {theta_theta:.2e} (<= {CONJUGACY_TOL:e}); {bends} bends, angle shift error {shift:.2e} (<= {ANGLE_SHIFT_TOL:e})"
        ),
    ))
}

fn reconstruction_round_trip() -> Outcome {
    let (mut round, mut imag) = (0.0f64, 0.0f64);
    for k in 0..RECONSTRUCTION_PATTERNS {
        let (m, n) = RECONSTRUCTION_GRID[k % RECONSTRUCTION_GRID.len()];
        let mut rng = rng_from_seed(seed(4, m, n, k));
        let s = random_lengths(n, m, &mut rng);
        let gamma = random_interior_pattern_with(&s, &mut rng)?;
        let phases = random_phases(n, m, &mut rng);
        let p = reconstruct(&gamma, Some(&phases))?;
        round = round.max(action_values(&p)?.max_abs_diff(&gamma));
        let real = reconstruct(&gamma, None)?;
        round = round.max(action_values(&real)?.max_abs_diff(&gamma));
        imag = imag.max(real.max_imag());
    }
    Ok((
        round <= ROUND_TRIP_TOL && imag <= REAL_EDGE_TOL,
        format!(
            "{RECONSTRUCTION_PATTERNS} patterns; round trip {round:.2e} (<= {ROUND_TRIP_TOL:e}), zero-phase imaginary part {imag:.2e} (<= {REAL_EDGE_TOL:e})"
        ),
    ))
}

/// All `r` in `{1..=max}^n` with `(m + 1) | sum(r)`.
pub fn integral_cases(n: usize, m: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut r = vec![1u64; n];
    loop {
        if r.iter().sum::<u64>() % (m as u64 + 1) == 0 {
            out.push(r.clone());
        }
        let mut pos = 0;
        while pos < n && r[pos] == max {
            r[pos] = 1;
            pos += 1;
        }
        if pos == n {
            return out;
        }
        r[pos] += 1;
    }
}

fn multiplicity_equality() -> Outcome {
    let start = Instant::now();
    let anchor = multiplicity_report(&[1, 1, 1, 1], 1)?;
    let anchor_ok = anchor.all_equal && anchor.lattice_count == 2u32.into();
    let mut cases = 0usize;
    let mut nonzero = 0usize;
    let mut mismatches = Vec::new();
    for m in 1..=2 {
        for n in 3..=6 {
            for r in integral_cases(n, m, MULTIPLICITY_MAX_ENTRY) {
                let rep = multiplicity_report(&r, m)?;
                cases += 1;
                if rep.lattice_count > 0u32.into() {
                    nonzero += 1;
                }
                if !rep.all_equal {
                    mismatches.push(format!("m={m} r={r:?}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = anchor_ok && mismatches.is_empty() && secs < MULTIPLICITY_TIME_BUDGET_S;
    Ok((
        ok,
        format!(
            "{cases} cases ({nonzero} nonzero), {} mismatches{}; anchor m=1 r=(1,1,1,1) -> {}; {secs:.2}s (< {MULTIPLICITY_TIME_BUDGET_S}s)",
            mismatches.len(),
            mismatches.first().map(|s| format!(" (first: {s})")).unwrap_or_default(),
            anchor.lattice_count
        ),
    ))
}

/// Affine rank of a point cloud.
pub fn affine_rank(points: &[Vec<f64>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let rows = points.len() - 1;
    let cols = base.len();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let diffs = ComplexMatrix::from_fn(rows, cols, |a, b| C::new(points[a + 1][b] - base[b], 0.0));
    numerical_rank(&diffs, AFFINE_RANK_TOL)
}

fn dimension_formulas() -> Outcome {
    let dim_ok = moduli_dimension(6, 2) == 8;
    let mut details = vec![format!("moduli_dimension(6,2) = {}", moduli_dimension(6, 2))];
    let mut ok = dim_ok;
    for (m, n) in DIMENSION_GRID {
        let expected = ((n - m - 2) * m) as i64;
        let mut rng = rng_from_seed(seed(6, m, n, 0));
        let s = random_lengths(n, m, &mut rng);
        let samples = (0..expected as usize + 8)
            .map(|_| random_interior_pattern_with(&s, &mut rng).map(|p| p.free_coordinates()))
            .collect::<Result<Vec<_>>>()?;
        let rank = affine_rank(&samples) as i64;
        ok &= rank == expected && polytope_dimension(n, m) == expected;
        details.push(format!("(m,n)=({m},{n}) rank {rank}/{expected}"));
    }
    Ok((ok, details.join(", ")))
}

fn duality() -> Outcome {
    let mut worst = 0.0f64;
    for (m, n) in DUALITY_GRID {
        for k in 0..DUALITY_POLYGONS {
            let p = seeded_polygon(m, n, seed(7, m, n, k), false)?;
            worst = worst.max(duality_report(&p)?.max_deviation);
        }
    }
    Ok((worst <= DUALITY_TOL, format!("max |gamma - lambda| = {worst:.2e} (<= {DUALITY_TOL:e})")))
}

fn dh5(ep: &EuclideanPolygon<f64>, alphas: [f64; 5]) -> Result<f64> {
    let spec = HitchinSpec { alphas: alphas.to_vec() };
    hitchin_derivatives(ep, &spec, 2)?[4].ok_or_else(|| Error::PoleEvaluation { pole: alphas[4] })
}

/// Central difference of `H_5` along the actual bend of `lambda_11`.
fn dh5_fd(p: &Polygon<f64>, alphas: [f64; 5]) -> Result<f64> {
    let h = 1e-5;
    let spec = HitchinSpec { alphas: alphas.to_vec() };
    let h5 = |t: f64| -> Result<f64> {
        let ep = to_euclidean(&bend(p, FlowSpec { i: 1, j: 1, t })?)?;
        crate::duality::hitchin_hamiltonians(&ep, &spec)?[4].ok_or(Error::PoleEvaluation { pole: alphas[4] })
    };
    Ok((h5(h)? - h5(-h)?) / (2.0 * h))
}

fn hitchin() -> Outcome {
    let ep = generic_pentagon::<f64>(seed(8, 1, 5, 0), HITCHIN_MIN_TRIPLE)?;
    let p = crate::duality::from_euclidean(&ep)?;
    let generic = [0.0, 1.0, 2.0, 3.0, 4.0];
    let paired = [0.0, 0.0, 2.0, 3.0, 4.0];
    let moving = dh5(&ep, generic)?;
    let fixed = dh5(&ep, paired)?;
    let fd_gap = (dh5_fd(&p, generic)? - moving).abs().max((dh5_fd(&p, paired)? - fixed).abs());
    let mut a_norm = 0.0f64;
    for k in 0..5 {
        let q = to_euclidean(&crate::duality::from_euclidean(&generic_pentagon::<f64>(seed(8, 1, 5, k + 1), 0.0)?)?)?;
        let spec = HitchinSpec { alphas: vec![1.0; 5] };
        for a in -2..=2 {
            for b in -2..=2 {
                let z = C::new(a as f64, b as f64);
                a_norm = a_norm.max(hitchin_matrix(&q, &spec, z)?.frobenius_norm());
            }
        }
    }
    let triple = dot(&crate::duality::cross(&ep.edges[1], &ep.edges[0]), &ep.edges[4]);
    let ok = moving.abs() >= HITCHIN_MOVING_MIN && fixed.abs() <= HITCHIN_INVARIANT_TOL && a_norm <= HITCHIN_MATRIX_TOL && fd_gap <= 1e-6;
    Ok((
        ok,
        format!(
            "triple product {triple:.3}; generic alpha |dH5/dt| = {:.3e} (>= {HITCHIN_MOVING_MIN:e}); alpha_1 = alpha_2 |dH5/dt| = {:.2e} (<= {HITCHIN_INVARIANT_TOL:e}); finite-difference gap {fd_gap:.1e}; equal alpha max |A(z)| = {a_norm:.2e} (<= {HITCHIN_MATRIX_TOL:e})",
            moving.abs(),
            fixed.abs()
        ),
    ))
}

fn necessity_sufficiency() -> Outcome {
    let mut rng = rng_from_seed(seed(9, 0, 0, 0));
    let (mut sampled, mut rejected, mut failures) = (0usize, 0usize, Vec::new());
    for k in 0..ADMISSIBILITY_SAMPLES {
        let m = rng.random_range(1..=3usize);
        let n = rng.random_range(3..=8usize);
        let r: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..2.0)).collect();
        let s = SideLengths::new(m, r)?;
        let verdict = check_triangle_inequalities(&s);
        if is_strictly_admissible(&s) {
            match sample_polygon(&s, rng.random()) {
                Ok(p) => {
                    let back = SideLengths::new(m, p.side_lengths())?;
                    if !matches!(check_triangle_inequalities(&back), TriangleVerdict::Satisfied) || !p.is_closed() {
                        failures.push(format!("sample {k}: sampled polygon fails the inequalities"));
                    }
                    sampled += 1;
                }
                Err(e) => failures.push(format!("sample {k}: admissible r but {e}")),
            }
        } else if let TriangleVerdict::Violated { .. } = verdict {
            match sample_polygon(&s, rng.random()) {
                Err(Error::TriangleInequality { .. }) => rejected += 1,
                other => failures.push(format!("sample {k}: violating r gave {:?}", other.map(|_| ()))),
            }
        }
    }
    Ok((
        failures.is_empty() && sampled > 0 && rejected > 0,
        format!(
            "{sampled} admissible sampled, {rejected} violating rejected, {} failures{}",
            failures.len(),
            failures.first().map(|s| format!(" (first: {s})")).unwrap_or_default()
        ),
    ))
}

fn semistability() -> Outcome {
    let mut rng = rng_from_seed(seed(10, 0, 0, 0));
    let mut failures = 0usize;
    for _ in 0..SEMISTABILITY_SAMPLES {
        let m = rng.random_range(1..=3usize);
        let n = rng.random_range(m + 2..=8usize);
        let s = random_lengths(n, m, &mut rng);
        let points: Vec<Vec<C<f64>>> = loop {
            let pts: Vec<_> = (0..n).map(|_| random_unit_vector(m + 1, &mut rng)).collect();
            if is_general_position(&pts) {
                break pts;
            }
        };
        if !check_semistable(&points, &s)?.semistable {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("{SEMISTABILITY_SAMPLES} configurations, {failures} reported unstable")))
}
