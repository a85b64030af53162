mod common;

use std::f64::consts::PI;

use common::*;
use rand::Rng;
use widthbench::bounds::*;
use widthbench::geom::*;
use widthbench::inscribe::*;
use widthbench::lines::*;
use widthbench::GeomError;

#[test]
fn disk_and_ball_examples() {
    let disk = ConvexBody::ball_of_width(2, 1.0).unwrap();
    let r = inscribe_wide_polytope(&disk, &planar_family(2).unwrap()).unwrap();
    assert_eq!(r.polytope.num_vertices(), 4);
    assert!((brute_diameter(r.polytope.vertices()) - 1.0).abs() < 1e-12);
    assert!((r.polytope_width - 0.5f64.sqrt()).abs() < 1e-12);

    let ball = ConvexBody::ball_of_width(3, 1.0).unwrap();
    let r = inscribe_wide_polytope(&ball, &orthogonal_axes(3).unwrap()).unwrap();
    assert!((r.polytope_width - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!((r.width_ratio - (1.0 / 3f64.sqrt()).acos().cos()).abs() < 1e-12);
}

#[test]
fn random_polygons_meet_the_planar_bound() {
    let mut rng = rng(20);
    for _ in 0..200 {
        let n = rng.gen_range(3..16);
        let body = ConvexBody::Polytope(random_polygon(&mut rng, n));
        for m in 2..=6 {
            let r = inscribe_wide_polytope(&body, &planar_family(m).unwrap()).unwrap();
            assert!(r.polytope.num_vertices() <= 2 * m);
            assert!(r.width_ratio >= (PI / (2.0 * m as f64)).cos() - 1e-9);
            assert!(support_excess(&body, &r.polytope, 720) <= 1e-9);
            // independent width of the inscribed polygon
            assert!((brute_polygon_width(r.polytope.vertices()) - r.polytope_width).abs() < 1e-12);
        }
    }
}

#[test]
fn curved_bodies_meet_the_bound() {
    let mut rng = rng(21);
    let mut bodies = vec![ConvexBody::reuleaux(3, 1.0).unwrap(), ConvexBody::reuleaux(5, 2.0).unwrap()];
    bodies.extend((0..10).map(|_| random_smoothed(&mut rng)));
    for body in &bodies {
        for m in 2..=5 {
            let r = inscribe_wide_polytope(body, &planar_family(m).unwrap()).unwrap();
            let report = verify_inscription(body, &r).unwrap();
            assert!(report.passed(), "{:?}", report.failures());
            assert!(support_excess(body, &r.polytope, 720) <= 1e-9);
        }
    }
}

#[test]
fn random_polytopes_meet_the_spatial_bounds() {
    let mut rng = rng(22);
    let families = [orthogonal_axes(3).unwrap(), plus_one_family(3).unwrap(), icosahedral_family()];
    for _ in 0..20 {
        let body = ConvexBody::Polytope(random_polytope_3d(&mut rng, 20));
        for f in &families {
            let r = inscribe_wide_polytope(&body, f).unwrap();
            assert!(r.polytope.num_vertices() <= 2 * f.len());
            assert!(r.width_ratio >= f.radius().unwrap().cos() - 1e-9);
            assert!(verify_inscription(&body, &r).unwrap().passed());
        }
    }
}

#[test]
fn extending_a_family_keeps_the_ratio_bound() {
    let mut rng = rng(23);
    for _ in 0..30 {
        let body = ConvexBody::Polytope(random_polygon(&mut rng, 12));
        let small = planar_family(3).unwrap();
        let big = small.extended(Vector::xy(1.0, 0.3)).unwrap();
        let a = inscribe_wide_polytope(&body, &small).unwrap();
        let b = inscribe_wide_polytope(&body, &big).unwrap();
        // the larger hull contains the smaller one
        assert!(b.width_ratio >= a.width_ratio - 1e-9);
    }
}

#[test]
fn shared_endpoints_reduce_the_vertex_count() {
    // along the edge directions of a triangle the chords are its edges
    let tri = ConvexBody::Polytope(Polytope::regular_polygon(3, 1.0, 0.0).unwrap());
    let edges: Vec<Vector> = (0..3)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / 3.0;
            let b = 2.0 * PI * (i + 1) as f64 / 3.0;
            Vector::xy(b.cos() - a.cos(), b.sin() - a.sin())
        })
        .collect();
    let fam = LineFamily::new(edges).unwrap();
    let r = inscribe_wide_polytope(&tri, &fam).unwrap();
    assert_eq!(r.polytope.num_vertices(), 3);
    assert!(r.polytope.num_vertices() < 2 * fam.len());
}

#[test]
fn rotated_families_and_bodies() {
    let mut rng = rng(24);
    for _ in 0..20 {
        let p = random_polygon(&mut rng, 10);
        let body = ConvexBody::Polytope(p.clone());
        let rot = Rotation::random(2, &mut rng);
        let opts = InscribeOptions { rotation: Some(rot.clone()), ..Default::default() };
        let r = inscribe_with(&body, &planar_family(3).unwrap(), &opts).unwrap();
        assert!(verify_inscription(&body, &r).unwrap().passed());

        // rotating body and result together keeps the verdict
        let mut moved = r.clone();
        moved.polytope = r.polytope.rotated(&rot);
        let verdict = verify_inscription(&body.rotated(&rot), &moved).unwrap();
        assert_eq!(verdict.passed(), verify_inscription(&body, &r).unwrap().passed());
    }
}

#[test]
fn verification_flags_enlarged_polytopes() {
    let body = ConvexBody::Polytope(Polytope::centered_box(&[1.0, 0.5]).unwrap());
    let mut r = inscribe_wide_polytope(&body, &planar_family(4).unwrap()).unwrap();
    assert!(verify_inscription(&body, &r).unwrap().passed());
    r.polytope = r.polytope.scaled(1.01);
    let report = verify_inscription(&body, &r).unwrap();
    assert!(!report.contained);
    assert!(report.max_violation > 0.0);
}

#[test]
fn dimension_mismatch_is_rejected() {
    let disk = ConvexBody::ball_of_width(2, 1.0).unwrap();
    assert!(matches!(
        inscribe_wide_polytope(&disk, &orthogonal_axes(3).unwrap()),
        Err(GeomError::DimensionMismatch { .. })
    ));
}

#[test]
fn bound_examples() {
    assert!((lambda_lower_bound(2, 4).unwrap().value - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((lambda_lower_bound(3, 12).unwrap().value - 0.794).abs() < 1e-3);
    assert!((lambda_lower_bound(3, 8).unwrap().value - 0.654).abs() < 1e-3);
    assert!(matches!(lambda_lower_bound(3, 5), Err(GeomError::Precondition(_))));
    for d in 2..=4 {
        for r in bound_table(BoundKind::LambdaLower, d, 20).unwrap() {
            assert!(r.value > 0.0 && r.value <= 1.0);
        }
        for r in bound_table(BoundKind::DeltaUpper, d, 20).unwrap() {
            assert!(r.value >= 1.0);
        }
    }
}

#[test]
fn planar_bounds_follow_the_closed_form() {
    for n in 4..=30 {
        let r = lambda_lower_bound(2, n).unwrap();
        assert!((r.value - (PI / (2.0 * (n / 2) as f64)).cos()).abs() < 1e-15);
        let d = delta_upper_bound(2, n).unwrap();
        assert!((d.value * r.value - 1.0).abs() < 1e-15);
    }
}

#[test]
fn optimized_families_can_improve_a_row() {
    let better = optimize_family(3, 5, 2, 300).unwrap();
    let with = lambda_lower_bound_with(3, 10, Some(&better)).unwrap();
    let without = lambda_lower_bound(3, 10).unwrap();
    assert!(with.value >= without.value);
}
