//! Command-line runner for the verification experiments.
//!
//! Every subcommand prints a report whose body is a pure function of the
//! configuration and seed; the only nondeterministic piece is a timestamp on
//! a separate `# generated_unix_ms:` header line. Exit code 0 means all
//! checks passed, 1 means a check failed, 2 means the invocation was invalid.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paradot::fractal::{self, CoverMode, LatticeApproxParams};
use paradot::geometry::{self, Point, TranslationVector};
use paradot::tube::{Branch, PolarSurface, Tube};
use paradot::{ff, measure, stats};

use report::{Format, Report};

/// Environment variable overriding the finite-field size budget.
const BUDGET_ENV: &str = "PARADOT_FF_BUDGET";

#[derive(Parser)]
#[command(
    name = "paradot",
    version,
    about = "Verification experiments for dot product sets on translated paraboloids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the report to this file instead of stdout
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the completed-square identity tying paraboloid dot products to
    /// squared distances: lift(x)·lift(y) = (|x|²+a_d)|T_a(x)−y|² + h(a,x)
    IdentityCheck {
        #[command(flatten)]
        out: OutputOpts,
        /// Ambient dimension d
        #[arg(long)]
        d: usize,
        /// Translation vector a = (a_1,…,a_d), comma separated
        #[arg(long, value_delimiter = ',')]
        a: Vec<f64>,
        /// Number of random (x,y) pairs
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Reject inputs with ||x|²+a_d| below this
        #[arg(long, default_value_t = 1e-3)]
        min_weight: f64,
        /// Maximum tolerated |residual|
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare the closed-form Jacobian determinant of the transformation map
    /// against central finite differences
    JacobianCheck {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        a: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Finite-difference step
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
        #[arg(long, default_value_t = 1e-5)]
        rel_tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        abs_tol: f64,
    },
    /// Classify the singular sphere and degenerate (zero-Jacobian) region of
    /// the transformation map for a given translation
    RegionReport {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        a: Vec<f64>,
    },
    /// Check that the rotation taking the degenerate hyperplane to constant
    /// last coordinate maps sampled degenerate points correctly
    RotationCheck {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        a: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Measure tube/surface intersection extents and greedy cover counts
    /// across a range of tube radii
    TubeCheck {
        #[command(flatten)]
        out: OutputOpts,
        /// Sphere center (sphere surface) — mutually exclusive with --axes
        #[arg(long, value_delimiter = ',', conflicts_with = "axes")]
        center: Option<Vec<f64>>,
        /// Sphere radius
        #[arg(long, requires = "center")]
        radius: Option<f64>,
        /// Branch of the sphere: near (visible) or far
        #[arg(long, value_enum, default_value_t = BranchArg::Near)]
        branch: BranchArg,
        /// Semi-axes of an origin-centered ellipsoid
        #[arg(long, value_delimiter = ',')]
        axes: Option<Vec<f64>>,
        /// Tube direction (unit vector); defaults to the direction of the
        /// sphere center, or the first coordinate axis for an ellipsoid
        #[arg(long, value_delimiter = ',')]
        direction: Option<Vec<f64>>,
        /// Tube radii; default 2^-4 .. 2^-14
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<f64>>,
        #[arg(long, default_value_t = 4001)]
        resolution: usize,
        /// Fail when extent/delta exceeds this
        #[arg(long, default_value_t = 10.0)]
        max_ratio: f64,
        /// Fail when the greedy 2δ-ball cover needs more than this many balls
        #[arg(long, default_value_t = 5)]
        max_cover: usize,
    },
    /// Measure the δ^{1/2} extent law for tubes tangent to a sphere that
    /// avoids the origin
    TangentCheck {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long, value_delimiter = ',')]
        center: Vec<f64>,
        #[arg(long)]
        radius: f64,
        /// Tube radii; default 4^-3 .. 4^-8
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<f64>>,
        /// Tolerated deviation of the fitted log-log slope from 1/2
        #[arg(long, default_value_t = 0.05)]
        slope_tol: f64,
    },
    /// Sweep interval covers of lattice-cell dot product sets over q and fit
    /// the scaling slope (law: 2−1/s Euclidean, 4−1/s lifted to the graph)
    FractalCover {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        s: f64,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Statistic whose slope is checked: merged | achieved | lattice | none
        #[arg(long, value_enum, default_value_t = SlopeStat::None)]
        slope_check: SlopeStat,
        #[arg(long, default_value_t = 0.1)]
        slope_tol: f64,
    },
    /// Estimate the box-counting dimension of the depth-resolved lattice set
    Boxdim {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Base scale; default sequence q, q^1+1, (q^1+1)^2+1, …
        #[arg(long, conflicts_with = "q_seq")]
        q: Option<u64>,
        #[arg(long, requires = "q", default_value_t = 1)]
        depth: usize,
        /// Explicit scale sequence (must satisfy q_{k+1} > q_k^k)
        #[arg(long, value_delimiter = ',')]
        q_seq: Option<Vec<u64>>,
        /// Covering scales; default {hw_k, hw_k/2} per level
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<f64>>,
        /// Expected dimension; when set, fail if |estimate−expected| > tol
        #[arg(long)]
        expect: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        tol: f64,
    },
    /// Check the planar identity (x,x²)·(y,y²) = (xy+1/2)² − 1/4 on random
    /// inputs
    ParabolaCheck {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Inputs drawn uniformly from (−range, range)
        #[arg(long, default_value_t = 2.0)]
        range: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Sample subsets of the paraboloid over F_p and record their dot product
    /// set sizes
    FfScan {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the size budget (also via PARADOT_FF_BUDGET)
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Enumerate nonzero vectors v over F_p with v·v ≡ 0
    FfIsotropic {
        #[command(flatten)]
        out: OutputOpts,
        /// Primes to check, comma separated
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Also list the vectors as rows
        #[arg(long)]
        list: bool,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Check the push-forward Fourier identity ν̂_y(t) = μ̂(t·y) on random
    /// atomic measures
    PushforwardCheck {
        #[command(flatten)]
        out: OutputOpts,
        #[arg(long, default_value_t = 50)]
        atoms: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        /// Number of t values on a uniform grid over [t_min, t_max]
        #[arg(long, default_value_t = 100)]
        t_count: usize,
        #[arg(long, default_value_t = -5.0)]
        t_min: f64,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Near,
    Far,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Euclidean,
    Paraboloid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SlopeStat {
    /// merged interval total length
    Merged,
    /// achieved values × interval width
    Achieved,
    /// all lattice points in range × interval width
    Lattice,
    None,
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn translation(d: usize, a: &[f64]) -> TranslationVector<f64> {
    if d < 2 {
        usage_error("--d must be at least 2");
    }
    if a.len() != d {
        usage_error(&format!("--a needs {d} components, got {}", a.len()));
    }
    TranslationVector::new(Point::new(a[..d - 1].to_vec()), a[d - 1])
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn main() {
    let cli = Cli::parse();
    let (report, out) = match run(cli.command) {
        Ok(r) => r,
        Err(msg) => usage_error(&msg),
    };
    let rendered = report.render(out.format.into());
    if let Some(path) = &out.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            usage_error(&format!("cannot write {}: {e}", path.display()));
        }
    } else {
        print!("{rendered}");
    }
    std::process::exit(if report.pass { 0 } else { 1 });
}

fn run(cmd: Command) -> Result<(Report, OutputOpts), String> {
    match cmd {
        Command::IdentityCheck {
            out,
            d,
            a,
            samples,
            seed,
            min_weight,
            tol,
        } => {
            let a = translation(d, &a);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut max_residual = 0.0f64;
            let mut taken = 0usize;
            while taken < samples {
                let x = random_point(&mut rng, d - 1, 2.0);
                if (x.norm_sq() + a.a_d).abs() < min_weight {
                    continue;
                }
                let y = random_point(&mut rng, d - 1, 2.0);
                let r = geometry::identity_residual(&x, &y, &a, &geometry::SINGULARITY_EPS)
                    .map_err(|e| e.to_string())?;
                max_residual = max_residual.max(r.abs());
                taken += 1;
            }
            let pass = max_residual < tol;
            let mut rep = Report::new(
                "identity-check",
                vec!["d", "samples", "seed", "max_residual", "tol", "pass"],
            );
            rep.row(vec![
                d.to_string(),
                samples.to_string(),
                seed.to_string(),
                fmt(max_residual),
                fmt(tol),
                pass.to_string(),
            ]);
            rep.pass = pass;
            Ok((rep, out))
        }
        Command::JacobianCheck {
            out,
            d,
            a,
            samples,
            seed,
            step,
            rel_tol,
            abs_tol,
        } => {
            let a = translation(d, &a);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = 0.0f64;
            let mut taken = 0usize;
            while taken < samples {
                let x = random_point(&mut rng, d - 1, 2.0);
                if (x.norm_sq() + a.a_d).abs() < 1e-3 {
                    continue;
                }
                let closed = geometry::jacobian_closed(&x, &a, &geometry::SINGULARITY_EPS)
                    .map_err(|e| e.to_string())?;
                let numeric =
                    geometry::jacobian_numeric(&x, &a, step).map_err(|e| e.to_string())?;
                let allowed = (rel_tol * closed.abs()).max(abs_tol);
                worst = worst.max((closed - numeric).abs() / allowed);
                taken += 1;
            }
            let pass = worst <= 1.0;
            let mut rep = Report::new(
                "jacobian-check",
                vec!["d", "samples", "seed", "step", "worst_ratio", "pass"],
            );
            rep.row(vec![
                d.to_string(),
                samples.to_string(),
                seed.to_string(),
                fmt(step),
                fmt(worst),
                pass.to_string(),
            ]);
            rep.pass = pass;
            Ok((rep, out))
        }
        Command::RegionReport { out, d, a } => {
            let a = translation(d, &a);
            if d < 3 {
                return Err("--d must be at least 3 for region classification".into());
            }
            let r = geometry::region_report(&a, d);
            let mut rep = Report::new(
                "region-report",
                vec![
                    "d",
                    "singular_radius",
                    "origin_position",
                    "degenerate_present",
                    "hyperplane_offset",
                    "canonical_distance",
                ],
            );
            rep.row(vec![
                d.to_string(),
                r.singularity
                    .as_ref()
                    .map(|s| fmt(s.radius))
                    .unwrap_or_default(),
                r.origin_position.as_str().to_string(),
                r.degenerate.is_some().to_string(),
                r.degenerate
                    .as_ref()
                    .map(|g| fmt(g.hyperplane_offset))
                    .unwrap_or_default(),
                r.degenerate
                    .as_ref()
                    .map(|g| fmt(g.canonical_distance))
                    .unwrap_or_default(),
            ]);
            Ok((rep, out))
        }
        Command::RotationCheck {
            out,
            d,
            a,
            samples,
            seed,
            tol,
        } => {
            let a = translation(d, &a);
            let rot = geometry::rotation_to_canonical(&a, d).map_err(|e| e.to_string())?;
            let expected = geometry::region_report(&a, d)
                .degenerate
                .map(|g| g.canonical_distance)
                .ok_or("degenerate region absent")?;
            let pts =
                geometry::sample_degenerate_points(&a, d, samples, seed).map_err(|e| e.to_string())?;
            let mut max_dev = 0.0f64;
            for p in &pts {
                let img = rot.apply(p);
                max_dev = max_dev.max((img.coords()[d - 1] - expected).abs());
            }
            let defect = rot.orthogonality_defect();
            let pass = max_dev < tol && defect < 1e-12;
            let mut rep = Report::new(
                "rotation-check",
                vec![
                    "d",
                    "samples",
                    "seed",
                    "canonical_distance",
                    "max_deviation",
                    "orthogonality_defect",
                    "pass",
                ],
            );
            rep.row(vec![
                d.to_string(),
                samples.to_string(),
                seed.to_string(),
                fmt(expected),
                fmt(max_dev),
                fmt(defect),
                pass.to_string(),
            ]);
            rep.pass = pass;
            Ok((rep, out))
        }
        Command::TubeCheck {
            out,
            center,
            radius,
            branch,
            axes,
            direction,
            deltas,
            resolution,
            max_ratio,
            max_cover,
        } => {
            let (surface, direction) = match (center, axes) {
                (Some(c), None) => {
                    let r = radius.ok_or("--radius required with --center")?;
                    let b = match branch {
                        BranchArg::Near => Branch::Near,
                        BranchArg::Far => Branch::Far,
                    };
                    let direction = direction.unwrap_or_else(|| {
                        let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
                        c.iter().map(|v| v / norm).collect()
                    });
                    let surface = PolarSurface::sphere(&c, r, b).map_err(|e| e.to_string())?;
                    (surface, direction)
                }
                (None, Some(ax)) => {
                    let direction = direction.unwrap_or_else(|| {
                        let mut e = vec![0.0; ax.len()];
                        e[0] = 1.0;
                        e
                    });
                    let surface =
                        PolarSurface::centered_ellipsoid(&ax).map_err(|e| e.to_string())?;
                    (surface, direction)
                }
                _ => return Err("give exactly one of --center or --axes".into()),
            };
            let deltas =
                deltas.unwrap_or_else(|| (4..=14).map(|k| 2.0f64.powi(-k)).collect());
            let mut rep = Report::new(
                "tube-check",
                vec!["delta", "extent", "extent_over_delta", "cover_count"],
            );
            let mut pass = true;
            for &delta in &deltas {
                let tube = Tube::new(&direction, delta).map_err(|e| e.to_string())?;
                let extent = paradot::tube::intersection_extent(&surface, &tube, resolution)
                    .map_err(|e| e.to_string())?;
                let count = paradot::tube::cover_count(&surface, &tube, resolution)
                    .map_err(|e| e.to_string())?;
                pass &= extent / delta <= max_ratio && count <= max_cover;
                rep.row(vec![
                    fmt(delta),
                    fmt(extent),
                    fmt(extent / delta),
                    count.to_string(),
                ]);
            }
            rep.summary("max_ratio_allowed", fmt(max_ratio));
            rep.summary("max_cover_allowed", max_cover.to_string());
            rep.pass = pass;
            Ok((rep, out))
        }
        Command::TangentCheck {
            out,
            center,
            radius,
            deltas,
            slope_tol,
        } => {
            let deltas =
                deltas.unwrap_or_else(|| (3..=8).map(|k| 4.0f64.powi(-k)).collect());
            if deltas.len() < 2 {
                return Err("need at least two deltas".into());
            }
            let c = Point::new(center);
            let mut rep = Report::new("tangent-check", vec!["delta", "extent"]);
            let mut exts = Vec::new();
            for &delta in &deltas {
                let e = paradot::tube::tangent_cap_extent(&c, radius, delta)
                    .map_err(|e| e.to_string())?;
                exts.push(e);
                rep.row(vec![fmt(delta), fmt(e)]);
            }
            let slope = stats::log_log_slope(&deltas, &exts);
            let pass = (slope - 0.5).abs() <= slope_tol;
            rep.summary("fitted_slope", fmt(slope));
            rep.summary("expected_slope", fmt(0.5));
            rep.pass = pass;
            Ok((rep, out))
        }
        Command::FractalCover {
            out,
            mode,
            s,
            q,
            dim,
            slope_check,
            slope_tol,
        } => {
            let mode = match mode {
                ModeArg::Euclidean => CoverMode::Euclidean,
                ModeArg::Paraboloid => CoverMode::Paraboloid,
            };
            let (rows, slopes) =
                fractal::cover_sweep(mode, s, dim, &q).map_err(|e| e.to_string())?;
            let mut rep = Report::new(
                "fractal-cover",
                vec![
                    "q",
                    "s",
                    "dim",
                    "count",
                    "total_length",
                    "covering_bound_length",
                    "lattice_bound_length",
                    "value_count",
                ],
            );
            for r in &rows {
                rep.row(vec![
                    r.q.to_string(),
                    fmt(r.s),
                    r.dim.to_string(),
                    r.count.to_string(),
                    fmt(r.total_length),
                    fmt(r.covering_bound_length),
                    fmt(r.lattice_bound_length),
                    r.value_count.to_string(),
                ]);
            }
            let expected = match mode {
                CoverMode::Euclidean => 2.0 - 1.0 / s,
                CoverMode::Paraboloid => 4.0 - 1.0 / s,
            };
            rep.summary("slope_total_length", fmt(slopes.total_length));
            rep.summary("slope_covering_bound", fmt(slopes.covering_bound));
            rep.summary("slope_lattice_bound", fmt(slopes.lattice_bound));
            rep.summary("expected_slope", fmt(expected));
            let checked = match slope_check {
                SlopeStat::Merged => Some(slopes.total_length),
                SlopeStat::Achieved => Some(slopes.covering_bound),
                SlopeStat::Lattice => Some(slopes.lattice_bound),
                SlopeStat::None => None,
            };
            if let Some(v) = checked {
                rep.pass = (v - expected).abs() <= slope_tol;
            }
            Ok((rep, out))
        }
        Command::Boxdim {
            out,
            s,
            dim,
            q,
            depth,
            q_seq,
            scales,
            expect,
            tol,
        } => {
            let params = match (q, q_seq) {
                (Some(q), None) => {
                    LatticeApproxParams::new(s, q, dim, depth).map_err(|e| e.to_string())?
                }
                (None, Some(seq)) => {
                    LatticeApproxParams::with_q_seq(s, dim, seq).map_err(|e| e.to_string())?
                }
                _ => return Err("give exactly one of --q or --q-seq".into()),
            };
            let scales = match scales {
                Some(sc) => sc,
                None => fractal::default_scales(&params).map_err(|e| e.to_string())?,
            };
            let est = fractal::box_dimension_estimate(&params, &scales)
                .map_err(|e| e.to_string())?;
            let mut rep = Report::new(
                "boxdim",
                vec!["s", "dim", "depth", "q_seq", "estimate"],
            );
            let seq = params.q_sequence().map_err(|e| e.to_string())?;
            rep.row(vec![
                fmt(s),
                dim.to_string(),
                params.depth.to_string(),
                seq.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                fmt(est),
            ]);
            if let Some(target) = expect {
                rep.summary("expected", fmt(target));
                rep.pass = (est - target).abs() <= tol;
            }
            Ok((rep, out))
        }
        Command::ParabolaCheck {
            out,
            samples,
            seed,
            range,
            tol,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut max_residual = 0.0f64;
            for _ in 0..samples {
                let x: f64 = rng.gen_range(-range..range);
                let y: f64 = rng.gen_range(-range..range);
                max_residual = max_residual.max(fractal::parabola_identity_check(x, y).abs());
            }
            let pass = max_residual < tol;
            let mut rep = Report::new(
                "parabola-check",
                vec!["samples", "seed", "range", "max_residual", "tol", "pass"],
            );
            rep.row(vec![
                samples.to_string(),
                seed.to_string(),
                fmt(range),
                fmt(max_residual),
                fmt(tol),
                pass.to_string(),
            ]);
            rep.pass = pass;
            Ok((rep, out))
        }
        Command::FfScan {
            out,
            p,
            d,
            sizes,
            trials,
            seed,
            budget,
        } => {
            let field = ff::PrimeField::new(p).map_err(|e| e.to_string())?;
            let budget = resolve_budget(budget);
            let (rows, _) = ff::threshold_scan(field, d, &sizes, trials, seed, budget)
                .map_err(|e| e.to_string())?;
            let mut rep = Report::new("ff-scan", vec!["p", "d", "size", "trial", "pi_size"]);
            for r in &rows {
                rep.row(vec![
                    r.p.to_string(),
                    r.d.to_string(),
                    r.size.to_string(),
                    r.trial.to_string(),
                    r.pi_size.to_string(),
                ]);
            }
            rep.summary("seed", seed.to_string());
            Ok((rep, out))
        }
        Command::FfIsotropic {
            out,
            p,
            d,
            list,
            budget,
        } => {
            if p.is_empty() {
                return Err("--p needs at least one prime".into());
            }
            let budget = resolve_budget(budget);
            let mut rep = Report::new("ff-isotropic", vec!["p", "d", "admissible", "count"]);
            for &prime in &p {
                let field = ff::PrimeField::new(prime).map_err(|e| e.to_string())?;
                let vs = ff::isotropic_vectors_with_budget(field, d, budget)
                    .map_err(|e| e.to_string())?;
                rep.row(vec![
                    prime.to_string(),
                    d.to_string(),
                    field.admissible().to_string(),
                    vs.len().to_string(),
                ]);
                if list {
                    let joined = vs
                        .points()
                        .iter()
                        .map(|v| {
                            v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
                        })
                        .collect::<Vec<_>>()
                        .join(" ");
                    rep.summary(&format!("vectors_p{prime}"), joined);
                }
            }
            Ok((rep, out))
        }
        Command::PushforwardCheck {
            out,
            atoms,
            dim,
            seed,
            t_count,
            t_min,
            t_max,
            tol,
        } => {
            if atoms == 0 || t_count < 2 {
                return Err("need at least one atom and two t values".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let support: Vec<Point<f64>> =
                (0..atoms).map(|_| random_point(&mut rng, dim, 3.0)).collect();
            let mu = measure::AtomicMeasure::uniform(support).map_err(|e| e.to_string())?;
            let y = random_point(&mut rng, dim, 3.0);
            let mut max_residual = 0.0f64;
            for k in 0..t_count {
                let t = t_min + (t_max - t_min) * k as f64 / (t_count - 1) as f64;
                let r = measure::pushforward_identity_residual(&mu, &y, t)
                    .map_err(|e| e.to_string())?;
                max_residual = max_residual.max(r);
            }
            let pass = max_residual < tol;
            let mut rep = Report::new(
                "pushforward-check",
                vec!["atoms", "dim", "seed", "t_count", "max_residual", "tol", "pass"],
            );
            rep.row(vec![
                atoms.to_string(),
                dim.to_string(),
                seed.to_string(),
                t_count.to_string(),
                fmt(max_residual),
                fmt(tol),
                pass.to_string(),
            ]);
            rep.pass = pass;
            Ok((rep, out))
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, range: f64) -> Point<f64> {
    Point::new((0..dim).map(|_| rng.gen_range(-range..range)).collect())
}

fn resolve_budget(flag: Option<u128>) -> u128 {
    if let Some(b) = flag {
        return b;
    }
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        match v.parse() {
            Ok(b) => return b,
            Err(_) => usage_error(&format!("{BUDGET_ENV} must be an integer, got {v:?}")),
        }
    }
    ff::DEFAULT_POINT_BUDGET
}
