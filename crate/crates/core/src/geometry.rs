//! Lifts onto translated paraboloids, the dot-product/distance identity, the
//! transformation map and its Jacobian, and the singular/degenerate region
//! geometry.
//!
//! Everything algebraic is generic over the scalar so the same formulas run
//! in `f64` and in exact rational arithmetic (`num::BigRational`); the exact
//! mode is what lets tests certify "exactly zero" claims.

use nalgebra::DMatrix;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Scalar types the closed-form geometry runs over.
pub trait Scalar: Clone + PartialOrd + Signed {}
impl<T: Clone + PartialOrd + Signed> Scalar for T {}

/// Default rejection threshold for `||x̄|² + a_d|` in floating point.
pub const SINGULARITY_EPS: f64 = 1e-12;

/// A point with a fixed number of real coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        assert!(!coords.is_empty(), "point must have at least one coordinate");
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut acc = T::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc = acc + a.clone() * b.clone();
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coords {
            acc = acc + c.clone() * c.clone();
        }
        acc
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }
}

impl Point<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

/// The translation `a = (ā, a_d)` parameterizing the paraboloid `a + P_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationVector<T> {
    pub a_bar: Point<T>,
    pub a_d: T,
}

impl<T: Scalar> TranslationVector<T> {
    pub fn new(a_bar: Point<T>, a_d: T) -> Self {
        TranslationVector { a_bar, a_d }
    }

    /// Ambient dimension d (the paraboloid lives in R^d).
    pub fn ambient_dim(&self) -> usize {
        self.a_bar.dim() + 1
    }

    /// `|ā|² + a_d`, the squared radius of the degenerate cylinder.
    pub fn cylinder_radius_sq(&self) -> T {
        self.a_bar.norm_sq() + self.a_d.clone()
    }
}

fn check_base_dim<T: Scalar>(x_bar: &Point<T>, a: &TranslationVector<T>) -> Result<()> {
    if x_bar.dim() != a.a_bar.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.a_bar.dim(),
            got: x_bar.dim(),
        });
    }
    Ok(())
}

/// `|x̄|² + a_d`, rejecting values within `eps` of zero.
fn weight<T: Scalar>(x_bar: &Point<T>, a: &TranslationVector<T>, eps: &T) -> Result<T> {
    let w = x_bar.norm_sq() + a.a_d.clone();
    if w.abs() <= eps.abs() {
        return Err(Error::SingularInput);
    }
    Ok(w)
}

/// Lift `x̄ ∈ R^{d-1}` onto the translated paraboloid: `(x̄ + ā, |x̄|² + a_d)`.
pub fn lift<T: Scalar>(x_bar: &Point<T>, a: &TranslationVector<T>) -> Result<Point<T>> {
    check_base_dim(x_bar, a)?;
    let mut coords: Vec<T> = x_bar
        .coords()
        .iter()
        .zip(a.a_bar.coords())
        .map(|(x, ai)| x.clone() + ai.clone())
        .collect();
    coords.push(x_bar.norm_sq() + a.a_d.clone());
    Ok(Point::new(coords))
}

/// The transformation map `x̄ ↦ −(x̄ + ā) / (2(|x̄|² + a_d))`.
pub fn transform_map<T: Scalar>(
    x_bar: &Point<T>,
    a: &TranslationVector<T>,
    eps: &T,
) -> Result<Point<T>> {
    check_base_dim(x_bar, a)?;
    let w = weight(x_bar, a, eps)?;
    let two = T::one() + T::one();
    let denom = two * w;
    Ok(Point::new(
        x_bar
            .coords()
            .iter()
            .zip(a.a_bar.coords())
            .map(|(x, ai)| -(x.clone() + ai.clone()) / denom.clone())
            .collect(),
    ))
}

/// The offset `h(a, x̄)` produced by completing the square in the dot product:
/// `(ā·x̄ + |ā|² + a_d|x̄|² + a_d²) − |x̄+ā|² / (4(|x̄|²+a_d))`.
pub fn h_offset<T: Scalar>(x_bar: &Point<T>, a: &TranslationVector<T>, eps: &T) -> Result<T> {
    check_base_dim(x_bar, a)?;
    let w = weight(x_bar, a, eps)?;
    let shifted = x_bar.sub(&negate(&a.a_bar))?; // x̄ + ā
    let two = T::one() + T::one();
    let four = two.clone() + two;
    let affine = a.a_bar.dot(x_bar)?
        + a.a_bar.norm_sq()
        + a.a_d.clone() * x_bar.norm_sq()
        + a.a_d.clone() * a.a_d.clone();
    Ok(affine - shifted.norm_sq() / (four * w))
}

fn negate<T: Scalar>(p: &Point<T>) -> Point<T> {
    Point::new(p.coords().iter().map(|c| -c.clone()).collect())
}

/// Residual of the completed-square identity
/// `lift(x̄)·lift(ȳ) = (|x̄|²+a_d)·|T_a(x̄) − ȳ|² + h(a, x̄)`.
///
/// Exactly zero in rational arithmetic; tiny in floats away from the
/// singularity.
pub fn identity_residual<T: Scalar>(
    x_bar: &Point<T>,
    y_bar: &Point<T>,
    a: &TranslationVector<T>,
    eps: &T,
) -> Result<T> {
    let w = weight(x_bar, a, eps)?;
    let lhs = lift(x_bar, a)?.dot(&lift(y_bar, a)?)?;
    let t = transform_map(x_bar, a, eps)?;
    let rhs = w * t.sub(y_bar)?.norm_sq() + h_offset(x_bar, a, eps)?;
    Ok(lhs - rhs)
}

/// Closed-form Jacobian determinant of the transformation map:
/// `2·(−1/(2(|x̄|²+a_d)))^d · [ Σ (x_i+a_i)² − |ā|² − a_d ]`.
pub fn jacobian_closed<T: Scalar>(
    x_bar: &Point<T>,
    a: &TranslationVector<T>,
    eps: &T,
) -> Result<T> {
    check_base_dim(x_bar, a)?;
    let w = weight(x_bar, a, eps)?;
    let d = a.ambient_dim();
    let two = T::one() + T::one();
    let base = -(T::one() / (two.clone() * w));
    let mut pow = T::one();
    for _ in 0..d {
        pow = pow * base.clone();
    }
    let shifted = x_bar.sub(&negate(&a.a_bar))?;
    let bracket = shifted.norm_sq() - a.a_bar.norm_sq() - a.a_d.clone();
    Ok(two * pow * bracket)
}

/// Finite-difference Jacobian determinant of the transformation map.
///
/// Central differences with the given step; the determinant of the resulting
/// (d−1)×(d−1) matrix is the independent oracle for [`jacobian_closed`].
pub fn jacobian_numeric(
    x_bar: &Point<f64>,
    a: &TranslationVector<f64>,
    step: f64,
) -> Result<f64> {
    check_base_dim(x_bar, a)?;
    let n = x_bar.dim();
    let w = x_bar.norm_sq() + a.a_d;
    if w.abs() < 10.0 * step {
        return Err(Error::SingularInput);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut hi = x_bar.coords().to_vec();
        let mut lo = hi.clone();
        hi[j] += step;
        lo[j] -= step;
        let f_hi = transform_map(&Point::new(hi), a, &SINGULARITY_EPS)?;
        let f_lo = transform_map(&Point::new(lo), a, &SINGULARITY_EPS)?;
        for i in 0..n {
            let v = (f_hi.coords()[i] - f_lo.coords()[i]) / (2.0 * step);
            if !v.is_finite() {
                return Err(Error::NonFiniteResult);
            }
            m[(i, j)] = v;
        }
    }
    Ok(m.determinant())
}

/// Where the origin sits relative to the singular sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginPosition {
    Inside,
    On,
    Outside,
    /// `a_d ≥ 0`: no singular sphere (for `a_d = 0` the singularity is the
    /// single point `−ā`, which the pigeonhole removal makes irrelevant).
    NoSingularity,
}

impl OriginPosition {
    pub fn as_str(&self) -> &'static str {
        match self {
            OriginPosition::Inside => "inside",
            OriginPosition::On => "on",
            OriginPosition::Outside => "outside",
            OriginPosition::NoSingularity => "no-singularity",
        }
    }
}

/// The singular sphere `{x̄ : |x̄|² + a_d = 0}` pushed to `x̄ + ā` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSphere {
    pub center: Point<f64>,
    pub radius: f64,
}

/// The degenerate (zero-Jacobian) region: paraboloid ∩ cylinder, contained in
/// the hyperplane `n·y = offset` with `n = (2a_1, …, 2a_{d−1}, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateRegion {
    pub cylinder_radius_sq: f64,
    pub hyperplane_normal: Point<f64>,
    pub hyperplane_offset: f64,
    /// Distance from the origin to the hyperplane,
    /// `2(|ā|²+a_d)/√(4|ā|²+1)`.
    pub canonical_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport {
    pub singularity: Option<SingularSphere>,
    pub origin_position: OriginPosition,
    pub degenerate: Option<DegenerateRegion>,
}

/// Classify the singular and degenerate regions of `T_a` in ambient dimension `d`.
pub fn region_report(a: &TranslationVector<f64>, d: usize) -> RegionReport {
    assert!(d >= 3, "region classification needs d >= 3");
    assert_eq!(a.ambient_dim(), d, "translation vector has wrong dimension");

    let (singularity, origin_position) = if a.a_d < 0.0 {
        let radius = (-a.a_d).sqrt();
        let dist = a.a_bar.norm();
        let pos = if dist < radius {
            OriginPosition::Inside
        } else if dist == radius {
            OriginPosition::On
        } else {
            OriginPosition::Outside
        };
        (
            Some(SingularSphere {
                center: a.a_bar.clone(),
                radius,
            }),
            pos,
        )
    } else {
        (None, OriginPosition::NoSingularity)
    };

    let rho = a.cylinder_radius_sq();
    let degenerate = if rho > 0.0 {
        let mut normal: Vec<f64> = a.a_bar.coords().iter().map(|c| 2.0 * c).collect();
        normal.push(1.0);
        let offset = 2.0 * rho;
        let canonical = offset / (4.0 * a.a_bar.norm_sq() + 1.0).sqrt();
        Some(DegenerateRegion {
            cylinder_radius_sq: rho,
            hyperplane_normal: Point::new(normal),
            hyperplane_offset: offset,
            canonical_distance: canonical,
        })
    } else {
        None
    };

    RegionReport {
        singularity,
        origin_position,
        degenerate,
    }
}

/// An orthogonal matrix acting on R^d.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix {
    entries: DMatrix<f64>,
}

impl OrthogonalMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn apply(&self, p: &Point<f64>) -> Point<f64> {
        let v = nalgebra::DVector::from_column_slice(p.coords());
        Point::new((&self.entries * v).iter().copied().collect())
    }

    /// Max entrywise deviation of `MᵀM` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.entries.transpose() * &self.entries;
        let n = g.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }
}

/// Orthogonal map sending the hyperplane of the degenerate region onto
/// `{z : z_d = canonical_distance}`.
///
/// Single Householder reflection taking the unit normal of the hyperplane to
/// `e_d`; identity when the normal is already axis-aligned. `det = ±1` is
/// accepted since only dot products need preserving.
pub fn rotation_to_canonical(a: &TranslationVector<f64>, d: usize) -> Result<OrthogonalMatrix> {
    assert_eq!(a.ambient_dim(), d);
    if a.cylinder_radius_sq() <= 0.0 {
        return Err(Error::DegenerateAbsent);
    }
    let mut normal: Vec<f64> = a.a_bar.coords().iter().map(|c| 2.0 * c).collect();
    normal.push(1.0);
    let norm = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in &mut normal {
        *c /= norm;
    }
    // v = u − e_d; H = I − 2 v vᵀ / |v|² maps u to e_d.
    let mut v = normal;
    v[d - 1] -= 1.0;
    let vsq: f64 = v.iter().map(|c| c * c).sum();
    let mut m = DMatrix::<f64>::identity(d, d);
    if vsq > 1e-30 {
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] -= 2.0 * v[i] * v[j] / vsq;
            }
        }
    }
    Ok(OrthogonalMatrix { entries: m })
}

/// Sample points of the degenerate region `D` on the translated paraboloid:
/// `x̄` uniform on the sphere `|x̄+ā|² = |ā|²+a_d`, lifted to `a + P_d`.
pub fn sample_degenerate_points(
    a: &TranslationVector<f64>,
    d: usize,
    n: usize,
    seed: u64,
) -> Result<Vec<Point<f64>>> {
    use rand::{Rng, SeedableRng};
    assert_eq!(a.ambient_dim(), d);
    let rho = a.cylinder_radius_sq();
    if rho <= 0.0 {
        return Err(Error::DegenerateAbsent);
    }
    let r = rho.sqrt();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        // Gaussian direction on the (d-2)-sphere.
        let mut dir: Vec<f64> = (0..d - 1)
            .map(|_| {
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (-2.0 * u1.ln()).sqrt() * u2.cos()
            })
            .collect();
        let len = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in &mut dir {
            *c *= r / len;
        }
        // x̄ + ā lies on the sphere of radius r centered at the origin.
        let x_bar = Point::new(
            dir.iter()
                .zip(a.a_bar.coords())
                .map(|(s, ai)| s - ai)
                .collect(),
        );
        out.push(lift(&x_bar, a)?);
    }
    Ok(out)
}
