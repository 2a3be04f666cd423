//! Randomized property tests for the algebraic invariants.

use num::{BigRational, Zero};
use proptest::prelude::*;

use paradot::fractal::{build_level, dot_cover_euclidean, dot_cover_paraboloid, LatticeApproxParams};
use paradot::geometry::{
    identity_residual, jacobian_closed, transform_map, Point, TranslationVector, SINGULARITY_EPS,
};
use paradot::measure::{fourier_at, pushforward_dot, AtomicMeasure};

fn coord() -> impl Strategy<Value = f64> {
    -3.0f64..3.0
}

fn point(dim: usize) -> impl Strategy<Value = Point<f64>> {
    prop::collection::vec(coord(), dim).prop_map(Point::new)
}

fn translation(dim: usize) -> impl Strategy<Value = TranslationVector<f64>> {
    (point(dim - 1), coord()).prop_map(|(a_bar, a_d)| TranslationVector::new(a_bar, a_d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn rational_point(dim: usize) -> impl Strategy<Value = Point<BigRational>> {
    prop::collection::vec(rational(), dim).prop_map(Point::new)
}

proptest! {
    #[test]
    fn completed_square_identity_floats(
        x in point(3),
        y in point(3),
        a in translation(4),
    ) {
        prop_assume!((x.norm_sq() + a.a_d).abs() >= 1e-3);
        let r = identity_residual(&x, &y, &a, &SINGULARITY_EPS).unwrap();
        prop_assert!(r.abs() < 1e-9, "residual {r}");
    }

    #[test]
    fn completed_square_identity_exact(
        x in rational_point(2),
        y in rational_point(2),
        a_bar in rational_point(2),
        a_d in rational(),
    ) {
        let a = TranslationVector::new(a_bar, a_d);
        prop_assume!(!(x.norm_sq() + a.a_d.clone()).is_zero());
        let r = identity_residual(&x, &y, &a, &BigRational::zero()).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn zero_locus_is_the_degenerate_sphere(
        x in rational_point(2),
        a_bar in rational_point(2),
        a_d in rational(),
    ) {
        let a = TranslationVector::new(a_bar.clone(), a_d.clone());
        prop_assume!(!(x.norm_sq() + a_d.clone()).is_zero());
        let jac = jacobian_closed(&x, &a, &BigRational::zero()).unwrap();
        let shifted_norm = x.sub(&Point::new(
            a_bar.coords().iter().map(|c| -c.clone()).collect(),
        )).unwrap().norm_sq();
        let on_sphere = shifted_norm == a_bar.norm_sq() + a_d;
        prop_assert_eq!(jac.is_zero(), on_sphere);
    }

    #[test]
    fn transform_map_locally_injective_away_from_degeneracy(
        x in point(2),
        dir in point(2),
        a in translation(3),
    ) {
        // stay clear of both the singularity and the degenerate sphere
        let shifted = x.sub(&Point::new(
            a.a_bar.coords().iter().map(|c| -c).collect(),
        )).unwrap();
        let rho = (shifted.norm_sq() - a.cylinder_radius_sq()).abs();
        prop_assume!((x.norm_sq() + a.a_d).abs() >= 1e-2 && rho >= 1e-2);
        let step = dir.norm();
        prop_assume!(step > 1e-9);
        // second point within rho/10 of the first
        let scale = (rho / 10.0) / step * 0.99;
        let x2 = Point::new(
            x.coords().iter().zip(dir.coords()).map(|(c, d)| c + d * scale).collect(),
        );
        prop_assume!((x2.norm_sq() + a.a_d).abs() >= 1e-2);
        prop_assume!(x2.sub(&x).unwrap().norm() > 1e-12);
        let t1 = transform_map(&x, &a, &SINGULARITY_EPS).unwrap();
        let t2 = transform_map(&x2, &a, &SINGULARITY_EPS).unwrap();
        prop_assert!(t1.sub(&t2).unwrap().norm() > 0.0);
    }

    #[test]
    fn dot_covers_contain_in_cell_products(
        q in 2u64..12,
        s_milli in 200u64..700,
        seed in any::<u64>(),
    ) {
        let s = s_milli as f64 / 1000.0;
        let params = LatticeApproxParams::new(s, q, 2, 1).unwrap();
        let cells = build_level(&params, 1).unwrap();
        let euc = dot_cover_euclidean(&cells).unwrap();
        let par = dot_cover_paraboloid(&cells).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let i = rng.gen_range(0..cells.count());
            let j = rng.gen_range(0..cells.count());
            let x = cells.sample_point(i, &mut rng);
            let y = cells.sample_point(j, &mut rng);
            let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            prop_assert!(euc.contains(dot));
            let nx: f64 = x.iter().map(|v| v * v).sum();
            let ny: f64 = y.iter().map(|v| v * v).sum();
            prop_assert!(par.contains(dot + nx * ny));
        }
    }

    #[test]
    fn pushforward_preserves_mass_and_fourier_is_contractive(
        raw in prop::collection::vec((point(2), 0.01f64..1.0), 1..30),
        y in point(2),
        xi in point(2),
    ) {
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        let atoms: Vec<(Point<f64>, f64)> =
            raw.into_iter().map(|(x, w)| (x, w / total)).collect();
        let mu = AtomicMeasure::new(atoms).unwrap();
        let nu = pushforward_dot(&mu, &y).unwrap();
        prop_assert!((nu.total_mass() - 1.0).abs() < 1e-12);
        let v = fourier_at(&mu, &xi).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-12);
    }
}

#[test]
fn pi_monotone_under_inclusion_randomized() {
    use paradot::ff::{dot_product_set, paraboloid_points, FpPointSet, PrimeField};
    let field = PrimeField::new(11).unwrap();
    let all = paraboloid_points(field, 3).unwrap();
    for seed in 0..20 {
        let small = all.sample_subset(6, seed).unwrap();
        let big = all.sample_subset(30, seed + 1000).unwrap();
        let mut union = small.points().to_vec();
        union.extend_from_slice(big.points());
        let sup = FpPointSet::new(field, 3, union).unwrap();
        let pi_small = dot_product_set(&small).unwrap();
        let pi_sup = dot_product_set(&sup).unwrap();
        assert!(pi_small.iter().all(|r| pi_sup.contains(r)));
    }
}
