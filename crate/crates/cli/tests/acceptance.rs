//! Acceptance gate: each numbered check prints one PASS/FAIL line; the test
//! fails if any check fails. Run with `--nocapture` to see the lines on a
//! passing run.

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paradot::fractal::{
    self, box_dimension_estimate, build_level, cover_sweep, dot_cover_euclidean,
    dot_cover_paraboloid, CoverMode, LatticeApproxParams,
};
use paradot::geometry::{
    identity_residual, jacobian_closed, jacobian_numeric, region_report,
    rotation_to_canonical, sample_degenerate_points, Point, TranslationVector, SINGULARITY_EPS,
};
use paradot::measure::{pushforward_identity_residual, AtomicMeasure};
use paradot::tube::{intersection_extent, tangent_cap_extent, Branch, PolarSurface, Tube};
use paradot::{ff, stats};

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn check(&mut self, number: usize, name: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("[{verdict}] {number}. {name}: {detail}");
        if !pass {
            self.failures.push(format!("{number}. {name}: {detail}"));
        }
    }
}

fn rand_point(rng: &mut ChaCha8Rng, dim: usize, range: f64) -> Point<f64> {
    Point::new((0..dim).map(|_| rng.gen_range(-range..range)).collect())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn acceptance_gate() {
    let mut gate = Gate {
        failures: Vec::new(),
    };

    identity_suite(&mut gate);
    jacobian_suite(&mut gate);
    region_rotation_suite(&mut gate);
    tube_suite(&mut gate);
    fractal_scaling_suite(&mut gate);
    box_dimension_suite(&mut gate);
    finite_field_suite(&mut gate);
    pushforward_suite(&mut gate);
    cli_determinism_suite(&mut gate);

    assert!(
        gate.failures.is_empty(),
        "failed checks:\n{}",
        gate.failures.join("\n")
    );
}

/// 1: completed-square identity, 10^4 random float cases over d in {3,4,5}
/// with residual < 1e-9, and 100 exact rational cases with residual zero.
fn identity_suite(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut max_residual = 0.0f64;
    for i in 0..10_000usize {
        let d = 3 + i % 3;
        let a = TranslationVector::new(rand_point(&mut rng, d - 1, 2.0), rng.gen_range(-2.0..2.0));
        let x = loop {
            let x = rand_point(&mut rng, d - 1, 2.0);
            if (x.norm_sq() + a.a_d).abs() >= 1e-3 {
                break x;
            }
        };
        let y = rand_point(&mut rng, d - 1, 2.0);
        let r = identity_residual(&x, &y, &a, &SINGULARITY_EPS).unwrap();
        max_residual = max_residual.max(r.abs());
    }
    let float_ok = max_residual < 1e-9;

    let mut exact_ok = true;
    for k in 0..100i64 {
        let x = Point::new(vec![rat(k, 7), rat(3 - k, 11)]);
        let y = Point::new(vec![rat(2 * k + 1, 5), rat(-k, 13)]);
        let a = TranslationVector::new(
            Point::new(vec![rat(k % 9 - 4, 3), rat(1, 2)]),
            rat(k % 5 + 1, 4),
        );
        if !(x.norm_sq() + a.a_d.clone()).is_zero() {
            let r = identity_residual(&x, &y, &a, &BigRational::zero()).unwrap();
            exact_ok &= r.is_zero();
        }
    }
    gate.check(
        1,
        "identity suite",
        float_ok && exact_ok,
        format!("max float residual {max_residual:.3e} (< 1e-9), rational cases exact: {exact_ok}"),
    );
}

/// 2: closed-form Jacobian vs finite differences on 10^3 random inputs, and
/// exact vanishing on 100 rational points of the degenerate sphere.
fn jacobian_suite(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst_ratio = 0.0f64;
    for i in 0..1000usize {
        let d = 3 + i % 3;
        let a = TranslationVector::new(rand_point(&mut rng, d - 1, 2.0), rng.gen_range(-2.0..2.0));
        let x = loop {
            let x = rand_point(&mut rng, d - 1, 2.0);
            if (x.norm_sq() + a.a_d).abs() >= 1e-3 {
                break x;
            }
        };
        let closed = jacobian_closed(&x, &a, &SINGULARITY_EPS).unwrap();
        let numeric = jacobian_numeric(&x, &a, 1e-5).unwrap();
        let allowed = (1e-5 * closed.abs()).max(1e-9);
        worst_ratio = worst_ratio.max((closed - numeric).abs() / allowed);
    }
    let float_ok = worst_ratio <= 1.0;

    // rational points of |x̄+ā|² = |ā|²+a_d: ā=(1,0,..), a_d=3, radius 2,
    // rational circle parameterization (x̄+ā) = 2((1−t²)/(1+t²), 2t/(1+t²))
    let mut exact_ok = true;
    for (i, k) in (1..=100i64).enumerate() {
        let base_dim = 2 + i % 3;
        let t = rat(k, 17);
        let one = BigRational::from_integer(1.into());
        let denom = one.clone() + t.clone() * t.clone();
        let two = rat(2, 1);
        let cx = two.clone() * (one.clone() - t.clone() * t.clone()) / denom.clone();
        let cy = two.clone() * two.clone() * t.clone() / denom;
        let mut coords = vec![cx - one.clone(), cy];
        coords.resize(base_dim, BigRational::zero());
        let x = Point::new(coords);
        let mut a_bar = vec![one];
        a_bar.resize(base_dim, BigRational::zero());
        let a = TranslationVector::new(Point::new(a_bar), rat(3, 1));
        let jac = jacobian_closed(&x, &a, &BigRational::zero()).unwrap();
        exact_ok &= jac.is_zero();
    }
    gate.check(
        2,
        "jacobian suite",
        float_ok && exact_ok,
        format!("worst error/tolerance ratio {worst_ratio:.3} (<= 1), degenerate-sphere zeros exact: {exact_ok}"),
    );
}

/// 3: sampled degenerate points satisfy the hyperplane equation to 1e-12,
/// the canonical rotation sends them to constant last coordinate within
/// 1e-10, and the hand-checked canonical distance for a=((1,0),0) is 2/sqrt 5.
fn region_rotation_suite(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut max_plane = 0.0f64;
    let mut max_rot = 0.0f64;
    let mut produced = 0usize;
    while produced < 100 {
        let d = 3 + produced % 3;
        let a = TranslationVector::new(
            rand_point(&mut rng, d - 1, 1.5),
            rng.gen_range(-1.0..1.0),
        );
        if a.cylinder_radius_sq() <= 0.05 {
            continue;
        }
        produced += 1;
        let report = region_report(&a, d);
        let deg = report.degenerate.unwrap();
        let rot = rotation_to_canonical(&a, d).unwrap();
        for p in sample_degenerate_points(&a, d, 20, 42 + produced as u64).unwrap() {
            let lhs = deg.hyperplane_normal.dot(&p).unwrap();
            max_plane = max_plane.max((lhs - deg.hyperplane_offset).abs());
            let img = rot.apply(&p);
            max_rot = max_rot.max((img.coords()[d - 1] - deg.canonical_distance).abs());
        }
    }
    let a = TranslationVector::new(Point::new(vec![1.0, 0.0]), 0.0);
    let deg = region_report(&a, 3).degenerate.unwrap();
    let expected = 2.0 / 5.0f64.sqrt();
    // independent oracle: generic point-to-plane distance offset/|normal|
    let plane_oracle = deg.hyperplane_offset / deg.hyperplane_normal.norm();
    let hand_ok = (deg.canonical_distance - expected).abs() < 1e-12
        && (deg.canonical_distance - plane_oracle).abs() < 1e-12;
    let pass = max_plane < 1e-12 && max_rot < 1e-10 && hand_ok;
    gate.check(
        3,
        "region/rotation suite",
        pass,
        format!(
            "max hyperplane residual {max_plane:.3e} (< 1e-12), max rotated-coordinate deviation {max_rot:.3e} (< 1e-10), canonical distance oracle: {hand_ok}"
        ),
    );
}

/// 4: extent/delta stays bounded (max/min ratio of the per-scale supremum
/// < 4 over delta = 2^-4..2^-14) for non-tangent sphere and ellipsoid tubes;
/// the tangent extent scales like delta^(1/2) within 0.05.
fn tube_suite(gate: &mut Gate) {
    let sphere = PolarSurface::sphere(&[3.0, 0.0], 1.0, Branch::Near).unwrap();
    let sphere_dirs: Vec<Vec<f64>> = (-5..=5)
        .map(|i| {
            let phi = 0.05 * i as f64;
            vec![phi.cos(), phi.sin()]
        })
        .collect();
    let ellipsoid = PolarSurface::centered_ellipsoid(&[1.0, 2.0]).unwrap();
    let ellipsoid_dirs: Vec<Vec<f64>> = (0..16)
        .map(|i| {
            let phi = std::f64::consts::TAU * i as f64 / 16.0;
            vec![phi.cos(), phi.sin()]
        })
        .collect();
    let mut ratios = Vec::new();
    for (surface, dirs) in [(&sphere, &sphere_dirs), (&ellipsoid, &ellipsoid_dirs)] {
        let mut bounds = Vec::new();
        for k in 4..=14 {
            let delta = 2.0f64.powi(-k);
            let mut sup: f64 = 0.0;
            for e in dirs {
                let tube = Tube::new(e, delta).unwrap();
                sup = sup.max(intersection_extent(surface, &tube, 2001).unwrap() / delta);
            }
            bounds.push(sup);
        }
        let max = bounds.iter().cloned().fold(0.0f64, f64::max);
        let min = bounds.iter().cloned().fold(f64::INFINITY, f64::min);
        ratios.push(max / min);
    }
    let bounded_ok = ratios.iter().all(|r| *r < 4.0);

    let center = Point::new(vec![3.0, 0.0]);
    let deltas: Vec<f64> = (7..=12).map(|k| 2.0f64.powi(-k)).collect();
    let extents: Vec<f64> = deltas
        .iter()
        .map(|d| tangent_cap_extent(&center, 1.0, *d).unwrap())
        .collect();
    let slope = stats::log_log_slope(&deltas, &extents);
    let tangent_ok = (slope - 0.5).abs() <= 0.05;
    gate.check(
        4,
        "tube suite",
        bounded_ok && tangent_ok,
        format!(
            "extent/delta sup ratios {:?} (< 4), tangent slope {slope:.4} (0.5 +/- 0.05)",
            ratios
        ),
    );
}

/// 5: cover scaling laws over q in {3,10,31,100}. The Euclidean law 2-1/s is
/// checked on the achieved covering bound (the merged length saturates at the
/// value range at these q). The lifted decay law 4-1/s is checked on the
/// merged length for s in {0.2,0.22}; on the growth side s=0.3 the achieved
/// value count thins out sub-polynomially, so the law is checked on the
/// formal lattice bound together with a no-decay check of the merged length.
/// Soundness: 10^4 sampled in-cell pairs always land inside the covers.
fn fractal_scaling_suite(gate: &mut Gate) {
    let qs = [3u64, 10, 31, 100];
    let mut details = Vec::new();
    let mut pass = true;

    for s in [0.4, 0.45, 0.55] {
        let (_, slopes) = cover_sweep(CoverMode::Euclidean, s, 2, &qs).unwrap();
        let expected = 2.0 - 1.0 / s;
        let ok = (slopes.covering_bound - expected).abs() <= 0.1;
        pass &= ok;
        details.push(format!(
            "euclid s={s}: {:.3} vs {:.3}",
            slopes.covering_bound, expected
        ));
    }
    for s in [0.2, 0.22] {
        let (_, slopes) = cover_sweep(CoverMode::Paraboloid, s, 2, &qs).unwrap();
        let expected = 4.0 - 1.0 / s;
        let ok = (slopes.total_length - expected).abs() <= 0.1;
        pass &= ok;
        details.push(format!(
            "parab s={s}: {:.3} vs {:.3}",
            slopes.total_length, expected
        ));
    }
    {
        let (rows, slopes) = cover_sweep(CoverMode::Paraboloid, 0.3, 2, &qs).unwrap();
        let expected = 4.0 - 1.0 / 0.3;
        let lattice_ok = (slopes.lattice_bound - expected).abs() <= 0.1;
        let no_decay = rows.last().unwrap().total_length > 1.0;
        pass &= lattice_ok && no_decay;
        details.push(format!(
            "parab s=0.3: lattice {:.3} vs {:.3}, merged length stays {:.2}",
            slopes.lattice_bound,
            expected,
            rows.last().unwrap().total_length
        ));
    }

    let params = LatticeApproxParams::new(0.35, 10, 2, 1).unwrap();
    let cells = build_level(&params, 1).unwrap();
    let euc = dot_cover_euclidean(&cells).unwrap();
    let par = dot_cover_paraboloid(&cells).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut sound = true;
    for _ in 0..10_000 {
        let i = rng.gen_range(0..cells.count());
        let j = rng.gen_range(0..cells.count());
        let x = cells.sample_point(i, &mut rng);
        let y = cells.sample_point(j, &mut rng);
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let nx: f64 = x.iter().map(|v| v * v).sum();
        let ny: f64 = y.iter().map(|v| v * v).sum();
        sound &= euc.contains(dot) && par.contains(dot + nx * ny);
    }
    pass &= sound;
    details.push(format!("soundness 10^4 pairs: {sound}"));
    gate.check(5, "fractal scaling", pass, details.join("; "));
}

/// 6: box-counting estimate within 0.1 of 2/3 for s=1/3, dim=2, depth 2
/// (scale sequence chosen wide enough to resolve both levels), and within
/// 0.05 of 2 for the full square.
fn box_dimension_suite(gate: &mut Gate) {
    let p = LatticeApproxParams::with_q_seq(1.0 / 3.0, 2, vec![2, 131_072]).unwrap();
    let scales = fractal::default_scales(&p).unwrap();
    let est = box_dimension_estimate(&p, &scales).unwrap();
    let cantor_ok = (est - 2.0 / 3.0).abs() < 0.1;

    let full = LatticeApproxParams {
        s: 0.5,
        q: 2,
        dim: 2,
        depth: 0,
        q_seq: None,
    };
    let est_full = box_dimension_estimate(&full, &[0.25, 0.125, 0.0625, 0.03125]).unwrap();
    let full_ok = (est_full - 2.0).abs() < 0.05;
    gate.check(
        6,
        "box dimension",
        cantor_ok && full_ok,
        format!("lattice set {est:.4} (2/3 +/- 0.1), full square {est_full:.4} (2 +/- 0.05)"),
    );
}

/// 7: full paraboloid dot product sets over F_p hit every residue for
/// p in {3,7,11,19}, and the plane has no nonzero isotropic vectors for
/// p = 3 mod 4 up to 23.
fn finite_field_suite(gate: &mut Gate) {
    let f3 = ff::PrimeField::new(3).unwrap();
    let e3 = ff::paraboloid_points(f3, 3).unwrap();
    let pi3 = ff::dot_product_set(&e3).unwrap();
    let mut pass = pi3 == vec![0, 1, 2];
    let mut details = vec![format!("p=3 dot set {:?}", pi3)];
    for p in [3u64, 7, 11, 19] {
        let field = ff::PrimeField::new(p).unwrap();
        let e = ff::paraboloid_points(field, 3).unwrap();
        let pi = ff::dot_product_set(&e).unwrap();
        pass &= pi.len() as u64 == p;
    }
    details.push("full paraboloids saturate".into());
    for p in [3u64, 7, 11, 19, 23] {
        let field = ff::PrimeField::new(p).unwrap();
        pass &= ff::isotropic_vectors(field, 2).unwrap().is_empty();
    }
    details.push("planar isotropic sets empty for p = 3 mod 4".into());
    gate.check(7, "finite field", pass, details.join("; "));
}

/// 8: push-forward Fourier identity residual < 1e-10 over random 50-atom
/// measures and 100 t values; exactly 0 at t=0.
fn pushforward_suite(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut max_residual = 0.0f64;
    let mut zero_exact = true;
    for _ in 0..5 {
        let support: Vec<Point<f64>> = (0..50).map(|_| rand_point(&mut rng, 3, 3.0)).collect();
        let mu = AtomicMeasure::uniform(support).unwrap();
        let y = rand_point(&mut rng, 3, 3.0);
        for k in 0..100 {
            let t = -5.0 + 10.0 * k as f64 / 99.0;
            let r = pushforward_identity_residual(&mu, &y, t).unwrap();
            max_residual = max_residual.max(r);
        }
        zero_exact &= pushforward_identity_residual(&mu, &y, 0.0).unwrap() == 0.0;
    }
    let pass = max_residual < 1e-10 && zero_exact;
    gate.check(
        8,
        "push-forward Fourier",
        pass,
        format!("max residual {max_residual:.3e} (< 1e-10), t=0 exact: {zero_exact}"),
    );
}

/// 9: repeated CLI runs with identical config and seed produce byte-identical
/// report bodies (everything below the timestamp header line).
fn cli_determinism_suite(gate: &mut Gate) {
    let bin = env!("CARGO_BIN_EXE_paradot");
    let commands: Vec<Vec<&str>> = vec![
        vec!["identity-check", "--d", "3", "--a", "0.5,0,-0.5", "--samples", "500", "--seed", "7"],
        vec!["ff-scan", "--p", "7", "--d", "3", "--sizes", "10,49", "--trials", "3", "--seed", "11"],
        vec!["fractal-cover", "--mode", "euclidean", "--s", "0.4", "--q", "3,10", "--dim", "2"],
        vec!["pushforward-check", "--seed", "13", "--format", "json"],
    ];
    let mut pass = true;
    for args in &commands {
        let run = || {
            let out = std::process::Command::new(bin)
                .args(args)
                .output()
                .expect("binary runs");
            let text = String::from_utf8(out.stdout).unwrap();
            text.lines()
                .filter(|l| !l.starts_with("# generated_unix_ms:"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        pass &= run() == run();
    }
    gate.check(
        9,
        "CLI determinism",
        pass,
        format!("{} commands re-run byte-identically: {pass}", commands.len()),
    );
}
