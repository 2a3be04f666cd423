//! Finite atomic probability measures, their push-forwards under x ↦ x·y, and
//! pointwise Fourier transforms.
//!
//! The exercised identity is ν̂_y(t) = μ̂(t·y), where ν_y is the push-forward
//! of μ under the dot product with a fixed y. On atoms it is a finite sum
//! rearrangement and holds to rounding error.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Atoms with equal projection are merged when closer than this (float mode).
pub const MERGE_TOL: f64 = 1e-12;

/// Finitely supported probability measure Σ wᵢ δ_{xᵢ}.
#[derive(Clone, Debug)]
pub struct AtomicMeasure {
    atoms: Vec<(Point<f64>, f64)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(Point<f64>, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidInput("measure needs at least one atom".into()));
        }
        let dim = atoms[0].0.dim();
        let mut mass = 0.0;
        for (x, w) in &atoms {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: x.dim(),
                });
            }
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidInput("weights must be nonnegative".into()));
            }
            mass += w;
        }
        if (mass - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "weights must sum to 1, got {mass}"
            )));
        }
        Ok(AtomicMeasure { atoms })
    }

    /// Uniform measure on the given support points.
    pub fn uniform(support: Vec<Point<f64>>) -> Result<Self> {
        let n = support.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty support".into()));
        }
        let w = 1.0 / n as f64;
        AtomicMeasure::new(support.into_iter().map(|x| (x, w)).collect())
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].0.dim()
    }

    pub fn atoms(&self) -> &[(Point<f64>, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }
}

/// Push-forward of μ under x ↦ x·y, a measure on the real line. Projections
/// within `MERGE_TOL` of each other are merged with summed weights.
pub fn pushforward_dot(mu: &AtomicMeasure, y: &Point<f64>) -> Result<AtomicMeasure> {
    if y.dim() != mu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: y.dim(),
        });
    }
    let mut projected: Vec<(f64, f64)> = mu
        .atoms
        .iter()
        .map(|(x, w)| (x.dot(y).expect("dims checked"), *w))
        .collect();
    projected.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(projected.len());
    for (v, w) in projected {
        match merged.last_mut() {
            Some((lv, lw)) if (v - *lv).abs() <= MERGE_TOL => *lw += w,
            _ => merged.push((v, w)),
        }
    }
    AtomicMeasure::new(
        merged
            .into_iter()
            .map(|(v, w)| (Point::new(vec![v]), w))
            .collect(),
    )
}

/// μ̂(ξ) = Σ w·exp(−2πi x·ξ).
pub fn fourier_at(mu: &AtomicMeasure, xi: &Point<f64>) -> Result<Complex64> {
    if xi.dim() != mu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: xi.dim(),
        });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in &mu.atoms {
        let phase = -std::f64::consts::TAU * x.dot(xi).expect("dims checked");
        sum += Complex64::new(*w, 0.0) * Complex64::new(phase.cos(), phase.sin());
    }
    Ok(sum)
}

/// |ν̂_y(t) − μ̂(t·y)| with ν_y the push-forward of μ under x ↦ x·y.
pub fn pushforward_identity_residual(mu: &AtomicMeasure, y: &Point<f64>, t: f64) -> Result<f64> {
    let nu = pushforward_dot(mu, y)?;
    let lhs = fourier_at(&nu, &Point::new(vec![t]))?;
    let ty = Point::new(y.coords().iter().map(|c| t * c).collect());
    let rhs = fourier_at(mu, &ty)?;
    Ok((lhs - rhs).norm())
}
