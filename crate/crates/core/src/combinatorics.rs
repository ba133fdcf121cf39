//! Exact multiplicity counts for integer side lengths: lattice points of the
//! pattern polytope, Kostka numbers, iterated Pieri products and GT-basis
//! weight multiplicities. No floating point in this module.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::rank_bound;

/// Cap on the number of distinct rows held by the row-by-row counters.
pub const MAX_STATES: usize = 2_000_000;

/// A count together with the integrality flag: when `Lambda = rho/(m+1)`
/// is not an integer the count is 0 and `integral` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count {
    pub value: BigUint,
    pub integral: bool,
}

impl Count {
    fn non_integral() -> Self {
        Self { value: BigUint::zero(), integral: false }
    }
}

fn validate(r: &[u64], m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if r.len() < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3 side lengths, got {}", r.len())));
    }
    if let Some(k) = r.iter().position(|&x| x == 0) {
        return Err(Error::InvalidInput(format!("side length r_{} is not positive", k + 1)));
    }
    Ok(())
}

/// `Lambda` if `m + 1` divides `rho`.
pub fn integral_lambda(r: &[u64], m: usize) -> Option<u64> {
    let rho: u64 = r.iter().sum();
    let d = m as u64 + 1;
    (rho % d == 0).then_some(rho / d)
}

fn prefix_sums(r: &[u64]) -> Vec<u64> {
    r.iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Every vector `x` with `lo[j] <= x[j] <= hi[j]` summing to `total`.
fn boxed_vectors(lo: &[u64], hi: &[u64], total: u64, out: &mut Vec<Vec<u64>>) {
    fn go(lo: &[u64], hi: &[u64], total: u64, j: usize, cur: &mut Vec<u64>, min_rest: &[u64], max_rest: &[u64], out: &mut Vec<Vec<u64>>) {
        if j == lo.len() {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < min_rest[j] || total > max_rest[j] {
            return;
        }
        for v in lo[j]..=hi[j].min(total) {
            cur.push(v);
            go(lo, hi, total - v, j + 1, cur, min_rest, max_rest, out);
            cur.pop();
        }
    }
    let k = lo.len();
    let mut min_rest = vec![0u64; k + 1];
    let mut max_rest = vec![0u64; k + 1];
    for j in (0..k).rev() {
        min_rest[j] = min_rest[j + 1] + lo[j];
        max_rest[j] = max_rest[j + 1] + hi[j];
    }
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    go(lo, hi, total, 0, &mut Vec::with_capacity(k), &min_rest, &max_rest, out);
}

/// Admissible stored rows `i` above the stored row `prev` (row `i - 1`).
fn rows_above(prev: &[u64], i: usize, m: usize, lambda: u64, row_sum: u64) -> Vec<Vec<u64>> {
    let width = rank_bound(m, i);
    // display row i - 1 has i entries; beyond the stored width it is zero
    let prev_display = |j: usize| if j < i && j <= m { prev[j] } else { 0 };
    let lo: Vec<u64> = (0..width).map(prev_display).collect();
    let hi: Vec<u64> = (0..width).map(|j| if j == 0 { lambda } else { prev_display(j - 1) }).collect();
    let mut out = Vec::new();
    boxed_vectors(&lo, &hi, row_sum, &mut out);
    for row in out.iter_mut() {
        row.resize(m + 1, 0);
    }
    out
}

/// Integer points of the pattern polytope, counted row by row from the
/// bottom (`row 0 = (r_1, 0, ..)`) upwards.
pub fn count_lattice_points(r: &[u64], m: usize) -> Result<Count> {
    validate(r, m)?;
    let Some(lambda) = integral_lambda(r, m) else {
        return Ok(Count::non_integral());
    };
    if r[0] > lambda {
        return Ok(Count { value: BigUint::zero(), integral: true });
    }
    let n = r.len();
    let prefix = prefix_sums(r);
    let mut first = vec![0u64; m + 1];
    first[0] = r[0];
    let mut layer: HashMap<Vec<u64>, BigUint> = HashMap::from([(first, BigUint::one())]);
    for i in 1..n {
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::new();
        for (row, c) in &layer {
            for up in rows_above(row, i, m, lambda, prefix[i]) {
                *next.entry(up).or_insert_with(BigUint::zero) += c;
            }
        }
        if next.len() > MAX_STATES {
            return Err(Error::SizeLimit { what: format!("{} rows at level {i}", next.len()), limit: MAX_STATES });
        }
        layer = next;
    }
    let top = vec![lambda; m + 1];
    Ok(Count { value: layer.get(&top).cloned().unwrap_or_default(), integral: true })
}

/// Lists up to `limit` lattice patterns (rows bottom-up).
pub fn list_lattice_points(r: &[u64], m: usize, limit: usize) -> Result<Vec<Vec<Vec<u64>>>> {
    validate(r, m)?;
    let Some(lambda) = integral_lambda(r, m) else {
        return Ok(Vec::new());
    };
    let prefix = prefix_sums(r);
    let mut first = vec![0u64; m + 1];
    first[0] = r[0];
    let mut out = Vec::new();
    let mut stack = vec![first];
    fn go(stack: &mut Vec<Vec<u64>>, m: usize, lambda: u64, prefix: &[u64], limit: usize, out: &mut Vec<Vec<Vec<u64>>>) {
        if out.len() >= limit {
            return;
        }
        let i = stack.len();
        if i == prefix.len() {
            if stack[i - 1].iter().all(|&x| x == lambda) {
                out.push(stack.clone());
            }
            return;
        }
        for up in rows_above(&stack[i - 1], i, m, lambda, prefix[i]) {
            stack.push(up);
            go(stack, m, lambda, prefix, limit, out);
            stack.pop();
        }
    }
    if r[0] <= lambda {
        go(&mut stack, m, lambda, &prefix, limit, &mut out);
    }
    Ok(out)
}

/// Integer GT patterns with top row `(Lambda^{m+1}, 0^{n-m-1})` whose
/// row-sum differences are `r`, enumerated from the top down over full
/// triangle rows.
pub fn gt_weight_multiplicity(r: &[u64], m: usize) -> Result<Count> {
    validate(r, m)?;
    let Some(lambda) = integral_lambda(r, m) else {
        return Ok(Count::non_integral());
    };
    let n = r.len();
    if m + 1 > n {
        return Ok(Count { value: BigUint::zero(), integral: true });
    }
    let prefix = prefix_sums(r);
    let mut top = vec![lambda; m + 1];
    top.resize(n, 0);
    let mut layer: HashMap<Vec<u64>, BigUint> = HashMap::from([(top, BigUint::one())]);
    // current rows have length len; the next row down has len - 1 entries
    for len in (2..=n).rev() {
        let target = prefix[len - 2];
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::new();
        for (row, c) in &layer {
            let lo: Vec<u64> = (0..len - 1).map(|j| row[j + 1]).collect();
            let hi: Vec<u64> = (0..len - 1).map(|j| row[j]).collect();
            let mut below = Vec::new();
            boxed_vectors(&lo, &hi, target, &mut below);
            for b in below {
                *next.entry(b).or_insert_with(BigUint::zero) += c;
            }
        }
        if next.len() > MAX_STATES {
            return Err(Error::SizeLimit { what: format!("{} rows of length {}", next.len(), len - 1), limit: MAX_STATES });
        }
        layer = next;
    }
    Ok(Count { value: layer.values().fold(BigUint::zero(), |a, b| a + b), integral: true })
}

/// Number of semistandard tableaux of shape `mu` and content `weight`,
/// by filling cells in row-major order.
pub fn kostka(mu: &[u64], weight: &[u64]) -> BigUint {
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return BigUint::zero();
    }
    let shape: Vec<usize> = mu.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    let cells: usize = shape.iter().sum();
    if cells as u64 != weight.iter().sum::<u64>() {
        return BigUint::zero();
    }
    if cells == 0 {
        return BigUint::one();
    }
    let mut tab: Vec<Vec<usize>> = shape.iter().map(|&len| vec![usize::MAX; len]).collect();
    let mut remaining = weight.to_vec();
    let mut count = BigUint::zero();
    fill(&shape, &mut tab, &mut remaining, 0, 0, &mut count);
    count
}

fn fill(shape: &[usize], tab: &mut [Vec<usize>], remaining: &mut [u64], row: usize, col: usize, count: &mut BigUint) {
    if row == shape.len() {
        *count += 1u32;
        return;
    }
    let (nrow, ncol) = if col + 1 == shape[row] { (row + 1, 0) } else { (row, col + 1) };
    let min_left = if col > 0 { tab[row][col - 1] } else { 0 };
    let min_above = if row > 0 { tab[row - 1][col] + 1 } else { 0 };
    // a letter v sits in row <= v, and the cells below need distinct larger letters
    let lo = min_left.max(min_above).max(row);
    let rows_below = shape[row + 1..].iter().filter(|&&len| len > col).count();
    let hi = remaining.len().saturating_sub(rows_below);
    for v in lo..hi {
        if remaining[v] == 0 {
            continue;
        }
        remaining[v] -= 1;
        tab[row][col] = v;
        fill(shape, tab, remaining, nrow, ncol, count);
        tab[row][col] = usize::MAX;
        remaining[v] += 1;
    }
}

/// Highest weights in `V(hw) (x) Sym^k`: all `nu` with
/// `nu_1 >= hw_1 >= nu_2 >= ... >= nu_{m+1} >= hw_{m+1}` and
/// `|nu| = |hw| + k`, sorted lexicographically.
pub fn pieri_tensor(hw: &[u64], k: u64) -> Vec<Vec<u64>> {
    let len = hw.len();
    if len == 0 {
        return Vec::new();
    }
    let lo: Vec<u64> = hw.to_vec();
    let hi: Vec<u64> = (0..len).map(|j| if j == 0 { hw[0] + k } else { hw[j - 1] }).collect();
    let mut out = Vec::new();
    boxed_vectors(&lo, &hi, hw.iter().sum::<u64>() + k, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Multiplicity of `det^Lambda` in `Sym^{r_1} (x) ... (x) Sym^{r_n}` of
/// `U(m+1)`, by iterating [`pieri_tensor`] from the trivial weight.
pub fn multiplicity_det_power(r: &[u64], m: usize) -> Result<Count> {
    validate(r, m)?;
    let Some(lambda) = integral_lambda(r, m) else {
        return Ok(Count::non_integral());
    };
    let mut layer: BTreeMap<Vec<u64>, BigUint> = BTreeMap::from([(vec![0u64; m + 1], BigUint::one())]);
    for &k in r {
        let mut next: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
        for (w, c) in &layer {
            for nu in pieri_tensor(w, k) {
                if nu[0] <= lambda {
                    *next.entry(nu).or_insert_with(BigUint::zero) += c;
                }
            }
        }
        if next.len() > MAX_STATES {
            return Err(Error::SizeLimit { what: format!("{} weights", next.len()), limit: MAX_STATES });
        }
        layer = next;
    }
    Ok(Count { value: layer.get(&vec![lambda; m + 1]).cloned().unwrap_or_default(), integral: true })
}

/// The four independently computed multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub m: usize,
    pub r: Vec<u64>,
    pub lambda: String,
    pub lambda_integral: bool,
    #[serde(serialize_with = "crate::io::serialize_count")]
    pub lattice_count: BigUint,
    #[serde(serialize_with = "crate::io::serialize_count")]
    pub kostka: BigUint,
    #[serde(serialize_with = "crate::io::serialize_count")]
    pub pieri_multiplicity: BigUint,
    #[serde(serialize_with = "crate::io::serialize_count")]
    pub gt_weight_multiplicity: BigUint,
    pub all_equal: bool,
}

pub fn multiplicity_report(r: &[u64], m: usize) -> Result<MultiplicityReport> {
    let lattice = count_lattice_points(r, m)?;
    let pieri = multiplicity_det_power(r, m)?;
    let gt = gt_weight_multiplicity(r, m)?;
    let rho: u64 = r.iter().sum();
    let d = m as u64 + 1;
    let kostka_value = match integral_lambda(r, m) {
        Some(l) => kostka(&vec![l; m + 1], r),
        None => BigUint::zero(),
    };
    let lambda = if rho % d == 0 { (rho / d).to_string() } else {
        let g = num_integer::gcd(rho, d);
        format!("{}/{}", rho / g, d / g)
    };
    let all_equal = lattice.value == kostka_value && kostka_value == pieri.value && pieri.value == gt.value;
    Ok(MultiplicityReport {
        m,
        r: r.to_vec(),
        lambda,
        lambda_integral: lattice.integral,
        lattice_count: lattice.value,
        kostka: kostka_value,
        pieri_multiplicity: pieri.value,
        gt_weight_multiplicity: gt.value,
        all_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(count_lattice_points(&[1, 1, 1, 1], 1).unwrap().value, big(2));
        assert_eq!(count_lattice_points(&[1, 1, 2], 1).unwrap().value, big(1));
        let c = count_lattice_points(&[1, 1, 1], 1).unwrap();
        assert_eq!(c.value, big(0));
        assert!(!c.integral);
        let listed = list_lattice_points(&[1, 1, 1, 1], 1, 10).unwrap();
        let middles: Vec<_> = listed.iter().map(|p| p[1].clone()).collect();
        assert_eq!(listed.len(), 2);
        assert!(middles.contains(&vec![2, 0]) && middles.contains(&vec![1, 1]));
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&[2, 2], &[1, 1, 1, 1]), big(2));
        assert_eq!(kostka(&[3, 1], &[3, 1]), big(1));
        assert_eq!(kostka(&[2, 1], &[1, 1]), big(0));
        // K_{(3,2),(1,1,1,1,1)} = number of SYT of shape (3,2) = 5
        assert_eq!(kostka(&[3, 2], &[1, 1, 1, 1, 1]), big(5));
        // K_{(2,1),(1,1,1)} = 2
        assert_eq!(kostka(&[2, 1], &[1, 1, 1]), big(2));
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_tensor(&[0, 0], 1), vec![vec![1, 0]]);
        assert_eq!(pieri_tensor(&[1, 0], 1), vec![vec![1, 1], vec![2, 0]]);
        assert_eq!(pieri_tensor(&[1, 1], 2), vec![vec![3, 1]]);
        assert_eq!(pieri_tensor(&[2, 0], 2), vec![vec![2, 2], vec![3, 1], vec![4, 0]]);
    }

    #[test]
    fn det_power_examples() {
        assert_eq!(multiplicity_det_power(&[1, 1, 1, 1], 1).unwrap().value, big(2));
        assert_eq!(multiplicity_det_power(&[1, 1, 2], 1).unwrap().value, big(1));
        assert!(!multiplicity_det_power(&[1, 1, 1], 1).unwrap().integral);
    }

    #[test]
    fn gt_weight_examples() {
        assert_eq!(gt_weight_multiplicity(&[1, 1, 1, 1], 1).unwrap().value, big(2));
        assert_eq!(gt_weight_multiplicity(&[1, 1, 2], 1).unwrap().value, big(1));
        assert_eq!(gt_weight_multiplicity(&[1, 1, 1], 1).unwrap().value, big(0));
    }

    #[test]
    fn report_agrees() {
        let rep = multiplicity_report(&[2, 1, 1, 2, 2], 1).unwrap();
        assert!(rep.all_equal, "{rep:?}");
        let rep = multiplicity_report(&[1, 2, 1, 2, 1, 2], 2).unwrap();
        assert!(rep.all_equal, "{rep:?}");
        assert!(rep.lattice_count > BigUint::zero());
    }
}
