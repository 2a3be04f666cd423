//! Python bindings for the paradot library.
//!
//! Exposes the translated-paraboloid geometry (transformation map,
//! completed-square residual, Jacobian, degenerate-region report), tube
//! intersection measurements, lattice cover statistics and box-counting
//! estimates, finite-field dot product sets, and the push-forward Fourier
//! identity check.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use paradot::fractal::{
    box_dimension_estimate, build_level, default_scales, dot_cover_euclidean,
    dot_cover_paraboloid, LatticeApproxParams,
};
use paradot::geometry::{
    self, region_report, rotation_to_canonical, Point, TranslationVector, SINGULARITY_EPS,
};
use paradot::measure::{self, AtomicMeasure};
use paradot::tube::{self, Branch, PolarSurface, Tube};
use paradot::{ff, stats};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(coords: Vec<f64>) -> Point<f64> {
    Point::new(coords)
}

/// The translation vector a = (a_bar, a_d) defining a shifted paraboloid,
/// together with the algebra attached to it.
#[pyclass]
struct Translation {
    inner: TranslationVector<f64>,
}

#[pymethods]
impl Translation {
    #[new]
    fn new(a_bar: Vec<f64>, a_d: f64) -> Self {
        Translation {
            inner: TranslationVector::new(Point::new(a_bar), a_d),
        }
    }

    /// Image of the base point under the associated rational map.
    fn transform(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        geometry::transform_map(&point(x), &self.inner, &SINGULARITY_EPS)
            .map(Point::into_coords)
            .map_err(err)
    }

    /// Residual of the completed-square identity at (x, y); zero in exact
    /// arithmetic.
    fn identity_residual(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
        geometry::identity_residual(&point(x), &point(y), &self.inner, &SINGULARITY_EPS)
            .map_err(err)
    }

    /// Closed-form Jacobian determinant of the map at x.
    fn jacobian(&self, x: Vec<f64>) -> PyResult<f64> {
        geometry::jacobian_closed(&point(x), &self.inner, &SINGULARITY_EPS).map_err(err)
    }

    /// Finite-difference Jacobian determinant, for cross-checking.
    fn jacobian_numeric(&self, x: Vec<f64>, step: f64) -> PyResult<f64> {
        geometry::jacobian_numeric(&point(x), &self.inner, step).map_err(err)
    }

    /// Singularity sphere, origin position, and degenerate sphere/hyperplane
    /// data in ambient dimension d, as a dict.
    fn region_report<'py>(&self, py: Python<'py>, d: usize) -> PyResult<Bound<'py, PyDict>> {
        if d < 3 || self.inner.ambient_dim() != d {
            return Err(PyValueError::new_err("d must be >= 3 and match the translation"));
        }
        let report = region_report(&self.inner, d);
        let out = PyDict::new_bound(py);
        out.set_item("origin_position", report.origin_position.as_str())?;
        match report.singularity {
            Some(s) => {
                out.set_item("singularity_center", s.center.into_coords())?;
                out.set_item("singularity_radius", s.radius)?;
            }
            None => out.set_item("singularity_center", py.None())?,
        }
        match report.degenerate {
            Some(reg) => {
                out.set_item("cylinder_radius_sq", reg.cylinder_radius_sq)?;
                out.set_item("hyperplane_normal", reg.hyperplane_normal.into_coords())?;
                out.set_item("hyperplane_offset", reg.hyperplane_offset)?;
                out.set_item("canonical_distance", reg.canonical_distance)?;
            }
            None => out.set_item("cylinder_radius_sq", py.None())?,
        }
        Ok(out)
    }

    /// Orthogonal matrix mapping the degenerate set into a horizontal
    /// hyperplane, as a row-major nested list.
    fn canonical_rotation(&self, d: usize) -> PyResult<Vec<Vec<f64>>> {
        rotation_to_canonical(&self.inner, d)
            .map(|m| {
                m.entries()
                    .row_iter()
                    .map(|row| row.iter().copied().collect())
                    .collect()
            })
            .map_err(err)
    }
}

fn parse_branch(branch: &str) -> PyResult<Branch> {
    match branch {
        "near" => Ok(Branch::Near),
        "far" => Ok(Branch::Far),
        other => Err(PyValueError::new_err(format!(
            "branch must be 'near' or 'far', got {other:?}"
        ))),
    }
}

fn tube_pair(direction: Vec<f64>, delta: f64) -> PyResult<Tube> {
    Tube::new(&direction, delta).map_err(err)
}

/// Radial extent of the intersection of a sphere branch with the tube of
/// width delta around the ray in the given direction.
#[pyfunction]
fn sphere_tube_extent(
    center: Vec<f64>,
    radius: f64,
    branch: &str,
    direction: Vec<f64>,
    delta: f64,
    resolution: usize,
) -> PyResult<f64> {
    let surface = PolarSurface::sphere(&center, radius, parse_branch(branch)?).map_err(err)?;
    tube::intersection_extent(&surface, &tube_pair(direction, delta)?, resolution).map_err(err)
}

/// Number of greedily chosen delta-windows needed to cover the same
/// intersection.
#[pyfunction]
fn sphere_tube_cover_count(
    center: Vec<f64>,
    radius: f64,
    branch: &str,
    direction: Vec<f64>,
    delta: f64,
    resolution: usize,
) -> PyResult<usize> {
    let surface = PolarSurface::sphere(&center, radius, parse_branch(branch)?).map_err(err)?;
    tube::cover_count(&surface, &tube_pair(direction, delta)?, resolution).map_err(err)
}

/// Angular extent of the tangent-tube cap on a planar sphere; scales like
/// the square root of delta.
#[pyfunction]
fn tangent_cap_extent(center: Vec<f64>, radius: f64, delta: f64) -> PyResult<f64> {
    tube::tangent_cap_extent(&Point::new(center), radius, delta).map_err(err)
}

/// Number of level-k cells in the lattice approximation with parameters
/// (s, q, dim).
#[pyfunction]
fn lattice_cell_count(s: f64, q: u64, dim: usize, k: usize) -> PyResult<usize> {
    let params = LatticeApproxParams::new(s, q, dim, k.max(1)).map_err(err)?;
    build_level(&params, k).map(|c| c.count()).map_err(err)
}

/// Interval-cover statistics of the dot product values of the level-1 cells,
/// either for the plain Euclidean product or for the lifted (paraboloid)
/// product. Returns a dict with the merged, achieved-bound, and
/// lattice-bound lengths.
#[pyfunction]
fn dot_cover_summary<'py>(
    py: Python<'py>,
    mode: &str,
    s: f64,
    q: u64,
    dim: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let params = LatticeApproxParams::new(s, q, dim, 1).map_err(err)?;
    let cells = build_level(&params, 1).map_err(err)?;
    let cover = match mode {
        "euclidean" => dot_cover_euclidean(&cells).map_err(err)?,
        "paraboloid" => dot_cover_paraboloid(&cells).map_err(err)?,
        other => {
            return Err(PyValueError::new_err(format!(
                "mode must be 'euclidean' or 'paraboloid', got {other:?}"
            )))
        }
    };
    let (count, total_length) = cover.merged_stats();
    let out = PyDict::new_bound(py);
    out.set_item("cell_count", cells.count())?;
    out.set_item("value_count", cover.value_count())?;
    out.set_item("interval_count", count)?;
    out.set_item("total_length", total_length)?;
    out.set_item("covering_bound_length", cover.covering_bound_length())?;
    out.set_item("lattice_bound_length", cover.lattice_bound_length())?;
    Ok(out)
}

/// Box-counting dimension estimate of the lattice approximation determined
/// by an explicit scale sequence q_seq (each q must exceed the previous one
/// raised to its index).
#[pyfunction]
fn box_dimension(s: f64, dim: usize, q_seq: Vec<u64>) -> PyResult<f64> {
    let params = LatticeApproxParams::with_q_seq(s, dim, q_seq).map_err(err)?;
    let scales = default_scales(&params).map_err(err)?;
    box_dimension_estimate(&params, &scales).map_err(err)
}

/// Least-squares slope of log(y) against log(x); the power-law exponent
/// oracle used throughout.
#[pyfunction]
fn log_log_slope(xs: Vec<f64>, ys: Vec<f64>) -> f64 {
    stats::log_log_slope(&xs, &ys)
}

/// Sorted dot product values attained by pairs of points on the full
/// paraboloid over the prime field F_p in dimension d.
#[pyfunction]
fn ff_dot_product_set(p: u64, d: usize) -> PyResult<Vec<u64>> {
    let field = ff::PrimeField::new(p).map_err(err)?;
    let points = ff::paraboloid_points(field, d).map_err(err)?;
    ff::dot_product_set(&points).map_err(err)
}

/// Same, for a random size-n subset of the paraboloid.
#[pyfunction]
fn ff_subset_dot_product_set(p: u64, d: usize, n: usize, seed: u64) -> PyResult<Vec<u64>> {
    let field = ff::PrimeField::new(p).map_err(err)?;
    let points = ff::paraboloid_points(field, d).map_err(err)?;
    let subset = points.sample_subset(n, seed).map_err(err)?;
    ff::dot_product_set(&subset).map_err(err)
}

/// Nonzero isotropic vectors of F_p^d (vectors of zero self dot product).
#[pyfunction]
fn ff_isotropic_vectors(p: u64, d: usize) -> PyResult<Vec<Vec<u64>>> {
    let field = ff::PrimeField::new(p).map_err(err)?;
    ff::isotropic_vectors(field, d)
        .map(|set| set.points().to_vec())
        .map_err(err)
}

fn measure_from(atoms: Vec<(Vec<f64>, f64)>) -> PyResult<AtomicMeasure> {
    AtomicMeasure::new(
        atoms
            .into_iter()
            .map(|(x, w)| (Point::new(x), w))
            .collect(),
    )
    .map_err(err)
}

/// Atoms (position, weight) of the push-forward of the measure under
/// x -> x . y.
#[pyfunction]
fn pushforward_atoms(atoms: Vec<(Vec<f64>, f64)>, y: Vec<f64>) -> PyResult<Vec<(f64, f64)>> {
    let mu = measure_from(atoms)?;
    let nu = measure::pushforward_dot(&mu, &point(y)).map_err(err)?;
    Ok(nu
        .atoms()
        .iter()
        .map(|(x, w)| (x.coords()[0], *w))
        .collect())
}

/// |hat(mu)(xi)| for an atomic measure.
#[pyfunction]
fn fourier_magnitude(atoms: Vec<(Vec<f64>, f64)>, xi: Vec<f64>) -> PyResult<f64> {
    let mu = measure_from(atoms)?;
    measure::fourier_at(&mu, &point(xi))
        .map(|v| v.norm())
        .map_err(err)
}

/// Residual of the push-forward Fourier identity
/// hat(nu)(t) = hat(mu)(t y) at frequency t; zero up to round-off.
#[pyfunction]
fn pushforward_residual(atoms: Vec<(Vec<f64>, f64)>, y: Vec<f64>, t: f64) -> PyResult<f64> {
    let mu = measure_from(atoms)?;
    measure::pushforward_identity_residual(&mu, &point(y), t).map_err(err)
}

/// Seeded sample of points on the degenerate sphere of the translation,
/// lifted to the paraboloid; useful for plotting.
#[pyfunction]
fn degenerate_samples(
    a_bar: Vec<f64>,
    a_d: f64,
    d: usize,
    n: usize,
    seed: u64,
) -> PyResult<Vec<Vec<f64>>> {
    let a = TranslationVector::new(Point::new(a_bar), a_d);
    geometry::sample_degenerate_points(&a, d, n, seed)
        .map(|pts| pts.into_iter().map(Point::into_coords).collect())
        .map_err(err)
}

/// Seeded sample of cell centers at level k of the lattice approximation.
#[pyfunction]
fn lattice_sample_points(
    s: f64,
    q: u64,
    dim: usize,
    k: usize,
    n: usize,
    seed: u64,
) -> PyResult<Vec<Vec<f64>>> {
    let params = LatticeApproxParams::new(s, q, dim, k.max(1)).map_err(err)?;
    let cells = build_level(&params, k).map_err(err)?;
    if cells.count() == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|i| cells.sample_point(i % cells.count(), &mut rng))
        .collect())
}

#[pymodule]
fn paradot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Translation>()?;
    m.add_function(wrap_pyfunction!(sphere_tube_extent, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_tube_cover_count, m)?)?;
    m.add_function(wrap_pyfunction!(tangent_cap_extent, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_cell_count, m)?)?;
    m.add_function(wrap_pyfunction!(dot_cover_summary, m)?)?;
    m.add_function(wrap_pyfunction!(box_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(log_log_slope, m)?)?;
    m.add_function(wrap_pyfunction!(ff_dot_product_set, m)?)?;
    m.add_function(wrap_pyfunction!(ff_subset_dot_product_set, m)?)?;
    m.add_function(wrap_pyfunction!(ff_isotropic_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward_atoms, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_magnitude, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward_residual, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate_samples, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_sample_points, m)?)?;
    Ok(())
}
