//! Intersections of origin-emanating tubes with hypersurfaces given in polar
//! form `e ↦ r(e)·e`.
//!
//! For surfaces whose radius function admits a bounded-derivative extension,
//! the tube intersection has extent `O(δ)` and is covered by a bounded number
//! of `2δ`-balls. Tangent tubes at spheres avoiding the origin are the
//! contrasting case: their intersection extent scales like `δ^{1/2}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Cap-width multiplier: only directions within `C·δ/R₀` of the tube axis can
/// contribute to the intersection of a surface bounded below by `R₀`.
const CAP_FACTOR: f64 = 4.0;

/// Internal seed for cap sampling in dimension ≥ 3 (dimension 2 uses a grid).
const SAMPLING_SEED: u64 = 0x70_1a_12;

/// δ-neighborhood of the unit-length ray from the origin in direction `e`.
#[derive(Clone)]
pub struct Tube {
    direction: Vec<f64>,
    radius: f64,
}

impl Tube {
    pub fn new(direction: &[f64], radius: f64) -> Result<Self> {
        let norm: f64 = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "tube direction must be unit length, |e| = {norm}"
            )));
        }
        if radius <= 0.0 {
            return Err(Error::InvalidInput("tube radius must be positive".into()));
        }
        Ok(Tube {
            direction: direction.to_vec(),
            radius,
        })
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Hypersurface in polar form over a compact set of unit directions.
///
/// `radius_fn` returns `None` outside the domain.
pub struct PolarSurface {
    dim: usize,
    radius_fn: Box<dyn Fn(&[f64]) -> Option<f64> + Send + Sync>,
    r_min: f64,
    r_max: f64,
}

/// Which root of the ray/quadric intersection parameterizes the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Closer intersection (the part visible from the origin).
    Near,
    /// Farther intersection.
    Far,
}

impl PolarSurface {
    pub fn from_fn(
        dim: usize,
        radius_fn: impl Fn(&[f64]) -> Option<f64> + Send + Sync + 'static,
        r_min: f64,
        r_max: f64,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidInput("polar surfaces need dim >= 2".into()));
        }
        if !(r_min > 0.0 && r_max >= r_min && r_max.is_finite()) {
            return Err(Error::InvalidInput(
                "radius bounds must satisfy 0 < r_min <= r_max < inf".into(),
            ));
        }
        Ok(PolarSurface {
            dim,
            radius_fn: Box::new(radius_fn),
            r_min,
            r_max,
        })
    }

    /// Sphere `|x − c| = R` in polar form, one branch per surface.
    ///
    /// For the origin outside the sphere the near branch is the visible half
    /// and the far branch the invisible half; for the origin strictly inside
    /// only the far branch is nonempty.
    pub fn sphere(center: &[f64], radius: f64, branch: Branch) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::InvalidInput("sphere radius must be positive".into()));
        }
        let c = center.to_vec();
        let dim = c.len();
        let dist_sq: f64 = c.iter().map(|v| v * v).sum();
        let dist = dist_sq.sqrt();
        if (dist - radius).abs() < 1e-12 {
            return Err(Error::InvalidInput(
                "sphere passes through the origin; polar form degenerates".into(),
            ));
        }
        let (r_min, r_max) = if dist > radius {
            let tangent = (dist_sq - radius * radius).sqrt();
            match branch {
                Branch::Near => (dist - radius, tangent),
                Branch::Far => (tangent, dist + radius),
            }
        } else {
            match branch {
                Branch::Near => {
                    return Err(Error::InvalidInput(
                        "near branch is empty when the origin is inside".into(),
                    ))
                }
                Branch::Far => (radius - dist, radius + dist),
            }
        };
        let rr = radius * radius;
        Self::from_fn(
            dim,
            move |v: &[f64]| {
                let b: f64 = v.iter().zip(&c).map(|(vi, ci)| vi * ci).sum();
                let disc = b * b - (dist_sq - rr);
                if disc < 0.0 {
                    return None;
                }
                let t = match branch {
                    Branch::Near => b - disc.sqrt(),
                    Branch::Far => b + disc.sqrt(),
                };
                (t > 0.0).then_some(t)
            },
            r_min,
            r_max,
        )
    }

    /// Axis-aligned ellipsoid centered at the origin with the given semi-axes.
    pub fn centered_ellipsoid(semi_axes: &[f64]) -> Result<Self> {
        if semi_axes.iter().any(|s| *s <= 0.0) {
            return Err(Error::InvalidInput("semi-axes must be positive".into()));
        }
        let axes = semi_axes.to_vec();
        let r_min = axes.iter().cloned().fold(f64::INFINITY, f64::min);
        let r_max = axes.iter().cloned().fold(0.0, f64::max);
        Self::from_fn(
            axes.len(),
            move |v: &[f64]| {
                let q: f64 = v.iter().zip(&axes).map(|(vi, s)| (vi / s) * (vi / s)).sum();
                Some(1.0 / q.sqrt())
            },
            r_min,
            r_max,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn radius_at(&self, direction: &[f64]) -> Option<f64> {
        (self.radius_fn)(direction)
    }
}

/// Orthonormal basis of the hyperplane perpendicular to the unit vector `e`.
fn perp_basis(e: &[f64]) -> Vec<Vec<f64>> {
    let d = e.len();
    // Householder reflection taking e to ±e_1; its remaining columns span e⊥.
    let sign = if e[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = e.to_vec();
    v[0] += sign;
    let vsq: f64 = v.iter().map(|c| c * c).sum();
    let mut basis = Vec::with_capacity(d - 1);
    for k in 1..d {
        let mut col = vec![0.0; d];
        col[k] = 1.0;
        let coef = 2.0 * v[k] / vsq;
        for i in 0..d {
            col[i] -= coef * v[i];
        }
        basis.push(col);
    }
    basis
}

fn normalize(v: &mut [f64]) {
    let n: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in v.iter_mut() {
        *c /= n;
    }
}

/// Unit directions filling the cap of chordal radius `cap` around `e`.
fn cap_directions(e: &[f64], cap: f64, n: usize) -> Vec<Vec<f64>> {
    let d = e.len();
    let cap = cap.min(1.9); // chordal radius caps out near the antipode
    let basis = perp_basis(e);
    let mut out = Vec::with_capacity(n);
    if d == 2 {
        let b = &basis[0];
        for i in 0..n {
            let t = -cap + 2.0 * cap * (i as f64) / ((n - 1) as f64);
            let mut v = vec![e[0] + t * b[0], e[1] + t * b[1]];
            normalize(&mut v);
            out.push(v);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..n {
            // uniform point in the (d−1)-ball of radius `cap`
            let g: Vec<f64> = (0..d - 1)
                .map(|_| {
                    let u1: f64 = rng.gen_range(1e-12..1.0);
                    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    (-2.0 * u1.ln()).sqrt() * u2.cos()
                })
                .collect();
            let gn: f64 = g.iter().map(|c| c * c).sum::<f64>().sqrt();
            let radius = cap * rng.gen_range(0.0f64..1.0).powf(1.0 / (d as f64 - 1.0));
            let mut v = e.to_vec();
            for (k, b) in basis.iter().enumerate() {
                for i in 0..d {
                    v[i] += radius * g[k] / gn * b[i];
                }
            }
            normalize(&mut v);
            out.push(v);
        }
    }
    out
}

/// Projections `p·e` of sampled surface points lying inside the tube.
fn tube_projections(
    surface: &PolarSurface,
    tube: &Tube,
    cap: f64,
    resolution: usize,
) -> Result<Vec<f64>> {
    if surface.dim != tube.direction.len() {
        return Err(Error::DimensionMismatch {
            expected: surface.dim,
            got: tube.direction.len(),
        });
    }
    let e = tube.direction();
    let delta = tube.radius();
    let mut in_domain = 0usize;
    let mut projections = Vec::new();
    for v in cap_directions(e, cap, resolution) {
        let Some(r) = surface.radius_at(&v) else {
            continue;
        };
        in_domain += 1;
        let proj: f64 = v.iter().zip(e).map(|(vi, ei)| r * vi * ei).sum();
        if proj <= 0.0 {
            continue;
        }
        let dist_sq = r * r - proj * proj;
        if dist_sq <= delta * delta {
            projections.push(proj);
        }
    }
    if in_domain == 0 {
        return Err(Error::EmptyDomain);
    }
    Ok(projections)
}

/// Extent along the tube axis of (sampled) surface ∩ tube.
///
/// Samples the direction cap of chordal radius `4δ/R₀` around the axis.
/// Returns 0 when the intersection is empty.
pub fn intersection_extent(
    surface: &PolarSurface,
    tube: &Tube,
    resolution: usize,
) -> Result<f64> {
    assert!(resolution >= 10, "resolution too coarse");
    let cap = CAP_FACTOR * tube.radius() / surface.r_min();
    let projections = tube_projections(surface, tube, cap, resolution)?;
    if projections.is_empty() {
        return Ok(0.0);
    }
    let max = projections.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = projections.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(max - min)
}

/// Number of radius-`2δ` balls in a greedy 1-dimensional cover of the sampled
/// intersection, walking the projections onto the tube axis.
///
/// The cap is widened to `4(δ + √(2δR))/R₀` so tangent intersections, whose
/// angular width scales like `δ^{1/2}`, are fully sampled.
pub fn cover_count(surface: &PolarSurface, tube: &Tube, resolution: usize) -> Result<usize> {
    assert!(resolution >= 10, "resolution too coarse");
    let delta = tube.radius();
    let cap = CAP_FACTOR * (delta + (2.0 * delta * surface.r_max()).sqrt()) / surface.r_min();
    let mut projections = tube_projections(surface, tube, cap, resolution)?;
    if projections.is_empty() {
        return Ok(0);
    }
    projections.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let window = 4.0 * delta; // diameter of a 2δ-ball along the axis
    let mut count = 1usize;
    let mut anchor = projections[0];
    for p in projections {
        if p > anchor + window {
            count += 1;
            anchor = p;
        }
    }
    Ok(count)
}

/// Extent along the tangent direction of sphere ∩ tangent tube, for a sphere
/// that does not enclose the origin.
///
/// Reduces to the plane through the origin and the sphere center and locates
/// the two crossings of `dist(p(θ), axis) = δ` by bisection around the
/// tangency point.
pub fn tangent_cap_extent(sphere_center: &Point<f64>, sphere_radius: f64, delta: f64) -> Result<f64> {
    let l = sphere_center.norm();
    let r = sphere_radius;
    if l <= r {
        return Err(Error::OriginInside);
    }
    if !(delta > 0.0 && delta < r / 10.0) {
        return Err(Error::InvalidInput(
            "tangent extent needs 0 < delta < radius/10".into(),
        ));
    }
    // Plane coordinates: center at (L, 0); tangent direction e at angle α with
    // sin α = R/L. Circle point p(θ) = (L + R cos θ, R sin θ).
    let alpha = (r / l).asin();
    let (sin_a, cos_a) = alpha.sin_cos();
    let dist = |theta: f64| -> f64 {
        let px = l + r * theta.cos();
        let py = r * theta.sin();
        (-sin_a * px + cos_a * py).abs()
    };
    let proj = |theta: f64| -> f64 {
        let px = l + r * theta.cos();
        let py = r * theta.sin();
        cos_a * px + sin_a * py
    };
    let theta_t = alpha + std::f64::consts::FRAC_PI_2; // tangency: dist = 0
    let bisect = |mut lo: f64, mut hi: f64| -> f64 {
        // invariant: g(lo) and g(hi) straddle zero, g = dist − δ
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (dist(mid) - delta) * (dist(lo) - delta) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let theta_lo = bisect(theta_t - 1.0, theta_t);
    let theta_hi = bisect(theta_t + 1.0, theta_t);
    Ok((proj(theta_hi) - proj(theta_lo)).abs())
}

/// Tangent-tube direction for a sphere avoiding the origin, in the plane of
/// the first two coordinates of `center` (2-dimensional centers only).
pub fn tangent_direction(center: &[f64], radius: f64) -> Result<Vec<f64>> {
    if center.len() != 2 {
        return Err(Error::InvalidInput(
            "tangent direction helper is planar".into(),
        ));
    }
    let l = (center[0] * center[0] + center[1] * center[1]).sqrt();
    if l <= radius {
        return Err(Error::OriginInside);
    }
    let alpha = (radius / l).asin();
    let base = center[1].atan2(center[0]);
    Ok(vec![(base + alpha).cos(), (base + alpha).sin()])
}
