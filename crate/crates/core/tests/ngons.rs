mod common;

use std::f64::consts::PI;

use common::*;
use rand::Rng;
use widthbench::geom::{min_width, ConvexBody, Polytope, Vector};
use widthbench::ngon::*;

fn check_invariants(g: &InscribedNgon) {
    for v in &g.vertices {
        assert!((v.norm() - 0.5).abs() < 1e-12);
    }
    let p = Polytope::from_points(&g.vertices).unwrap();
    let (w, _) = min_width(&ConvexBody::Polytope(p)).unwrap();
    assert!((w - g.min_width).abs() < 1e-9);
    assert!(g.min_width <= 1.0);
    // each side leaves a strip of width 1/2 + (distance of the side from the center)
    let n = g.vertices.len();
    let cap = (0..n)
        .map(|i| {
            let (a, b) = (&g.vertices[i], &g.vertices[(i + 1) % n]);
            let e = b - a;
            0.5 + e.cross2(&(&Vector::zeros(2) - a)).abs() / e.norm()
        })
        .fold(f64::INFINITY, f64::min);
    assert!(g.min_width <= cap + 1e-12);
}

#[test]
fn kite() {
    let k = kite_quadrangle();
    assert!((k.min_width - 0.7698).abs() < 1e-3);
    assert!((k.min_width - 4.0 * 3f64.sqrt() / 9.0).abs() < 1e-9);
    assert!((brute_polygon_width(&k.vertices) - k.min_width).abs() < 1e-12);
    check_invariants(&k);
}

#[test]
fn kite_family_keeps_the_width() {
    let k = kite_quadrangle();
    let same = kite_family(180.0).unwrap();
    assert!((same.min_width - k.min_width).abs() < 1e-9);
    let (lo, hi) = kite_family_range();
    for i in 0..=1000 {
        let x = lo + (hi - lo) * i as f64 / 1000.0;
        let q = kite_family(x).unwrap();
        assert!(q.min_width >= k.min_width - 1e-9);
        check_invariants(&q);
    }
    for x in [lo, hi] {
        let q = kite_family(x).unwrap();
        let n = q.vertices.len();
        let long = (0..n).filter(|&i| (q.vertices[i].dist(&q.vertices[(i + 1) % n]) - 0.8164).abs() < 1e-4).count();
        assert_eq!(long, 3);
    }
    assert!(kite_family(lo - 0.5).is_err());
    assert!(kite_family(hi + 0.5).is_err());
}

#[test]
fn hexagon() {
    assert!((hexagon_alpha1_deg() - 69.385).abs() < 1e-3);
    let h = wide_hexagon();
    assert!((h.min_width - 0.90786).abs() < 1e-4);
    assert!((h.min_width - hexagon_width_closed_form()).abs() < 1e-9);
    check_invariants(&h);
}

#[test]
fn hexagon_flexes_without_losing_width() {
    let base = wide_hexagon().min_width;
    let (lo, hi) = hexagon_flex_range();
    for i in 0..=100 {
        let h = hexagon_flex(lo + (hi - lo) * i as f64 / 100.0).unwrap();
        assert!((h.min_width - base).abs() < 1e-6);
    }
    let low = hexagon_flex(lo).unwrap();
    let v = &low.vertices;
    assert!((&v[2] - &v[1]).cross2(&(&v[5] - &v[4])).abs() < 1e-6);
    let high = hexagon_flex(hi).unwrap();
    let v = &high.vertices;
    assert!((&v[3] - &v[2]).cross2(&(&v[0] - &v[5])).abs() < 1e-6);
    assert!(hexagon_flex(hi + 1.0).is_err());
    assert_eq!(hexagon_flex(180.0).unwrap(), wide_hexagon());
}

#[test]
fn octagon() {
    let o = wide_octagon();
    assert!(o.min_width >= 0.95143 - 1e-4);
    assert!((brute_polygon_width(&o.vertices) - o.min_width).abs() < 1e-9);
    for a in &o.angles_deg {
        let mirror = (360.0 - a).rem_euclid(360.0);
        let mirror = if mirror == 0.0 { 360.0 } else { mirror };
        assert!(o.angles_deg.iter().any(|b| (b - mirror).abs() < 1e-9));
    }
    check_invariants(&o);
}

#[test]
fn regular_odd_polygons() {
    for n in [3usize, 5, 7, 9, 11] {
        let g = regular_odd_ngon(n).unwrap();
        assert!((g.min_width - (0.5 + 0.5 * (PI / n as f64).cos())).abs() < 1e-9);
        check_invariants(&g);
    }
    assert!((regular_odd_ngon(5).unwrap().min_width - 0.904508).abs() < 1e-6);
    assert!((regular_odd_ngon(7).unwrap().min_width - 0.950484).abs() < 1e-6);
    assert!(regular_odd_ngon(6).is_err());
}

#[test]
fn perturbing_a_regular_odd_polygon_never_helps() {
    let mut rng = rng(40);
    for n in [3usize, 5, 7, 9] {
        let best = regular_odd_ngon(n).unwrap().min_width;
        for _ in 0..200 {
            let mut angles: Vec<f64> = (1..=n).map(|i| 360.0 * i as f64 / n as f64 + rng.gen_range(-0.01..0.01f64).to_degrees()).collect();
            angles.iter_mut().for_each(|a| *a = a.rem_euclid(360.0));
            angles.sort_by(f64::total_cmp);
            let g = InscribedNgon::from_angles_deg(&angles).unwrap();
            assert!(g.min_width <= best + 1e-9);
        }
    }
}

#[test]
fn search_recovers_regular_odd_polygons() {
    for n in [3usize, 5, 7] {
        let g = search_ngon(n, 1, 500).unwrap();
        assert!((g.min_width - regular_odd_width(n)).abs() < 1e-6);
        let gap = 2.0 * PI / n as f64;
        assert!(g.gaps().iter().all(|x| (x - gap).abs() < 1e-4));
        check_invariants(&g);
    }
}

#[test]
fn search_is_deterministic() {
    assert_eq!(search_ngon(6, 9, 300).unwrap(), search_ngon(6, 9, 300).unwrap());
}

#[test]
fn angles_are_validated() {
    assert!(InscribedNgon::from_angles_deg(&[10.0, 5.0, 300.0]).is_err());
    assert!(InscribedNgon::from_angles_deg(&[10.0, 20.0]).is_err());
    assert!(InscribedNgon::from_angles_deg(&[0.0, 120.0, 360.0]).is_err());
}
