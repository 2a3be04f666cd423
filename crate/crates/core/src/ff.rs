//! Brute-force experiments with dot product sets of subsets of the discrete
//! paraboloid over a prime field.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the number of paraboloid points (p^{d−1}).
pub const DEFAULT_POINT_BUDGET: u128 = 1 << 24;
/// Default cap on the number of ordered pairs (|E|²).
pub const DEFAULT_PAIR_BUDGET: u128 = 1 << 40;

/// Prime modulus with the residue class the conditional results care about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// True when p ≡ 3 (mod 4), the class where −1 is a quadratic non-residue.
    pub fn admissible(&self) -> bool {
        self.p % 4 == 3
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Finite set of points in F_p^dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPointSet {
    pub field: PrimeField,
    pub dim: usize,
    points: Vec<Vec<u64>>,
}

impl FpPointSet {
    pub fn new(field: PrimeField, dim: usize, mut points: Vec<Vec<u64>>) -> Result<Self> {
        for pt in &points {
            if pt.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: pt.len(),
                });
            }
            if pt.iter().any(|c| *c >= field.p()) {
                return Err(Error::InvalidInput("coordinate outside [0, p)".into()));
            }
        }
        points.sort();
        points.dedup();
        Ok(FpPointSet { field, dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    /// Deterministic subset of the given size, sampled without replacement.
    pub fn sample_subset(&self, size: usize, seed: u64) -> Result<FpPointSet> {
        if size > self.len() {
            return Err(Error::InvalidInput(format!(
                "subset size {size} exceeds set size {}",
                self.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.shuffle(&mut rng);
        let pts = idx[..size].iter().map(|i| self.points[*i].clone()).collect();
        FpPointSet::new(self.field, self.dim, pts)
    }
}

/// All p^{d−1} points (x̄, |x̄|²) of the paraboloid in F_p^d.
pub fn paraboloid_points(field: PrimeField, d: usize) -> Result<FpPointSet> {
    paraboloid_points_with_budget(field, d, DEFAULT_POINT_BUDGET)
}

pub fn paraboloid_points_with_budget(
    field: PrimeField,
    d: usize,
    budget: u128,
) -> Result<FpPointSet> {
    if d < 2 {
        return Err(Error::InvalidInput("paraboloid needs d >= 2".into()));
    }
    let p = field.p();
    let total = (p as u128)
        .checked_pow((d - 1) as u32)
        .ok_or(Error::SizeOverflow {
            size: u128::MAX,
            budget,
        })?;
    if total > budget {
        return Err(Error::SizeOverflow {
            size: total,
            budget,
        });
    }
    let mut points = Vec::with_capacity(total as usize);
    let mut base = vec![0u64; d - 1];
    loop {
        let height: u64 = base.iter().map(|x| (x * x) % p).sum::<u64>() % p;
        let mut pt = base.clone();
        pt.push(height);
        points.push(pt);
        let mut axis = d - 1;
        loop {
            if axis == 0 {
                return FpPointSet::new(field, d, points);
            }
            axis -= 1;
            base[axis] += 1;
            if base[axis] < p {
                break;
            }
            base[axis] = 0;
        }
    }
}

/// {x·y mod p : x, y ∈ E}, enumerated over unordered pairs (dot products are
/// symmetric) with early exit once all p residues are hit.
pub fn dot_product_set(e: &FpPointSet) -> Result<Vec<u64>> {
    dot_product_set_with_budget(e, DEFAULT_PAIR_BUDGET)
}

pub fn dot_product_set_with_budget(e: &FpPointSet, budget: u128) -> Result<Vec<u64>> {
    if e.is_empty() {
        return Err(Error::InvalidInput("dot product set of empty set".into()));
    }
    let pairs = (e.len() as u128) * (e.len() as u128);
    if pairs > budget {
        return Err(Error::SizeOverflow {
            size: pairs,
            budget,
        });
    }
    let p = e.field.p();
    let mut hit = vec![false; p as usize];
    let mut found = 0u64;
    'outer: for i in 0..e.len() {
        for j in i..e.len() {
            let dot: u64 = e.points[i]
                .iter()
                .zip(&e.points[j])
                .map(|(a, b)| (a * b) % p)
                .sum::<u64>()
                % p;
            if !hit[dot as usize] {
                hit[dot as usize] = true;
                found += 1;
                if found == p {
                    break 'outer;
                }
            }
        }
    }
    Ok((0..p).filter(|r| hit[*r as usize]).collect())
}

/// One row of a threshold scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub p: u64,
    pub d: usize,
    pub size: usize,
    /// size / p^{d/2 − 1/(2d)}, the normalized position against the threshold.
    pub normalized_size: f64,
    pub trial: usize,
    pub pi_size: usize,
    pub ratio: f64,
}

/// Summary statistics over the trials of one subset size.
#[derive(Clone, Debug)]
pub struct ScanSummary {
    pub p: u64,
    pub d: usize,
    pub size: usize,
    pub normalized_size: f64,
    pub min_ratio: f64,
    pub mean_ratio: f64,
    pub max_ratio: f64,
}

/// For each size, samples `trials` uniform subsets of the paraboloid and
/// records |Π(E)|/p. Fully reproducible from the seed: trial t of size
/// index i uses the stream seed `rng_seed + i·10⁶ + t`.
pub fn threshold_scan(
    field: PrimeField,
    d: usize,
    sizes: &[usize],
    trials: usize,
    rng_seed: u64,
    budget: u128,
) -> Result<(Vec<ScanRow>, Vec<ScanSummary>)> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let all = paraboloid_points_with_budget(field, d, budget)?;
    let p = field.p();
    let exponent = d as f64 / 2.0 - 1.0 / (2.0 * d as f64);
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (i, &size) in sizes.iter().enumerate() {
        if size == 0 || size > all.len() {
            return Err(Error::InvalidInput(format!(
                "size {size} outside 1..={}",
                all.len()
            )));
        }
        let normalized = size as f64 / (p as f64).powf(exponent);
        let (mut min_r, mut max_r, mut sum_r) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for t in 0..trials {
            let subset = all.sample_subset(size, rng_seed + (i as u64) * 1_000_000 + t as u64)?;
            let pi = dot_product_set_with_budget(&subset, budget)?;
            let ratio = pi.len() as f64 / p as f64;
            min_r = min_r.min(ratio);
            max_r = max_r.max(ratio);
            sum_r += ratio;
            rows.push(ScanRow {
                p,
                d,
                size,
                normalized_size: normalized,
                trial: t,
                pi_size: pi.len(),
                ratio,
            });
        }
        summaries.push(ScanSummary {
            p,
            d,
            size,
            normalized_size: normalized,
            min_ratio: min_r,
            mean_ratio: sum_r / trials as f64,
            max_ratio: max_r,
        });
    }
    Ok((rows, summaries))
}

/// All nonzero v ∈ F_p^d with v·v ≡ 0 (mod p).
pub fn isotropic_vectors(field: PrimeField, d: usize) -> Result<FpPointSet> {
    isotropic_vectors_with_budget(field, d, DEFAULT_POINT_BUDGET)
}

pub fn isotropic_vectors_with_budget(
    field: PrimeField,
    d: usize,
    budget: u128,
) -> Result<FpPointSet> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    let p = field.p();
    let total = (p as u128).checked_pow(d as u32).ok_or(Error::SizeOverflow {
        size: u128::MAX,
        budget,
    })?;
    if total > budget {
        return Err(Error::SizeOverflow {
            size: total,
            budget,
        });
    }
    let mut out = Vec::new();
    let mut v = vec![0u64; d];
    loop {
        let norm: u64 = v.iter().map(|x| (x * x) % p).sum::<u64>() % p;
        if norm == 0 && v.iter().any(|x| *x != 0) {
            out.push(v.clone());
        }
        let mut axis = d;
        loop {
            if axis == 0 {
                return FpPointSet::new(field, d, out);
            }
            axis -= 1;
            v[axis] += 1;
            if v[axis] < p {
                break;
            }
            v[axis] = 0;
        }
    }
}
