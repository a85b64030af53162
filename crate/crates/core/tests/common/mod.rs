//! Random bodies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use widthbench::geom::{convex_hull, fibonacci_sphere, ConvexBody, Polytope, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hull of `n` points near a random ellipse, with at least three vertices.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    loop {
        let (ax, ay) = (rng.gen_range(0.4..1.0), rng.gen_range(0.4..1.0));
        let rot = rng.gen_range(0.0..PI);
        let pts: Vec<Vector> = (0..n)
            .map(|_| {
                let t = rng.gen_range(0.0..2.0 * PI);
                let r = rng.gen_range(0.7..1.0);
                let (x, y) = (ax * r * t.cos(), ay * r * t.sin());
                Vector::xy(x * rot.cos() - y * rot.sin(), x * rot.sin() + y * rot.cos())
            })
            .collect();
        if let Ok(p) = convex_hull(&pts) {
            if p.num_vertices() >= 3 {
                return p;
            }
        }
    }
}

/// Hull of `n` points near a random ellipsoid.
pub fn random_polytope_3d(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    loop {
        let axes = [rng.gen_range(0.5..1.0), rng.gen_range(0.5..1.0), rng.gen_range(0.5..1.0)];
        let pts: Vec<Vector> = (0..n)
            .map(|_| {
                let v = Vector::xyz(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let u = v.scale(rng.gen_range(0.8..1.0) / v.norm().max(1e-3));
                Vector::xyz(axes[0] * u[0], axes[1] * u[1], axes[2] * u[2])
            })
            .collect();
        if let Ok(p) = convex_hull(&pts) {
            return p;
        }
    }
}

/// A random polygon plus a disk: strictly convex, so chords are unique.
pub fn random_smoothed(rng: &mut ChaCha8Rng) -> ConvexBody {
    let n = rng.gen_range(3..10);
    let core = random_polygon(rng, n);
    let radius = rng.gen_range(0.02..0.3);
    ConvexBody::rounded(core, radius).unwrap()
}

pub fn projection_width(points: &[Vector], u: &Vector) -> f64 {
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let h = p.dot(u);
        (lo.min(h), hi.max(h))
    });
    hi - lo
}

/// Exact planar minimal width over all supporting lines through two
/// vertices, in `O(n^3)`.
pub fn brute_polygon_width(points: &[Vector]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in 0..points.len() {
            if i == j {
                continue;
            }
            let e = &points[j] - &points[i];
            let len = e.norm();
            let dist: Vec<f64> = points.iter().map(|p| e.cross2(&(p - &points[i])) / len).collect();
            if dist.iter().all(|d| *d >= -1e-12) {
                best = best.min(dist.iter().cloned().fold(0.0, f64::max));
            }
        }
    }
    best
}

/// Minimal width of a point set in `E^3`: the best of `samples` Fibonacci
/// directions, refined by a compass search in 16 tangent directions.
pub fn sampled_width_3d(points: &[Vector], samples: usize) -> f64 {
    let dirs = fibonacci_sphere(samples);
    let mut scored: Vec<(f64, usize)> = dirs.iter().enumerate().map(|(i, u)| (projection_width(points, u), i)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    scored
        .iter()
        .take(8)
        .map(|&(w, i)| compass_refine(points, dirs[i].clone(), w))
        .fold(f64::INFINITY, f64::min)
}

fn compass_refine(points: &[Vector], mut u: Vector, mut best: f64) -> f64 {
    let mut step = 1e-2;
    while step > 1e-13 {
        let a = if u[0].abs() < 0.9 { Vector::xyz(1.0, 0.0, 0.0) } else { Vector::xyz(0.0, 1.0, 0.0) };
        let t1 = u.cross3(&a).scale(1.0 / u.cross3(&a).norm());
        let t2 = u.cross3(&t1);
        let mut moved = false;
        for k in 0..16 {
            let phi = 2.0 * PI * k as f64 / 16.0;
            let v = u.add_scaled(step * phi.cos(), &t1).add_scaled(step * phi.sin(), &t2);
            let v = v.scale(1.0 / v.norm());
            let w = projection_width(points, &v);
            if w < best {
                best = w;
                u = v;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}

pub fn brute_diameter(points: &[Vector]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.max(points[i].dist(&points[j]));
        }
    }
    best
}

/// Whether closed segments `ab` and `cd` meet, by solving for the
/// parameters of the crossing point.
pub fn segments_meet(a: &Vector, b: &Vector, c: &Vector, d: &Vector, tol: f64) -> bool {
    let r = b - a;
    let s = d - c;
    let denom = r.cross2(&s);
    if denom.abs() < 1e-15 {
        return false;
    }
    let q = c - a;
    let t = q.cross2(&s) / denom;
    let u = q.cross2(&r) / denom;
    let slack_t = tol / r.norm();
    let slack_u = tol / s.norm();
    t >= -slack_t && t <= 1.0 + slack_t && u >= -slack_u && u <= 1.0 + slack_u
}

/// Largest distance of a polytope vertex outside the body, measured by the
/// body's support function over `samples` directions.
pub fn support_excess(body: &ConvexBody, inner: &Polytope, samples: usize) -> f64 {
    let dirs: Vec<Vector> = match body.dim() {
        2 => (0..samples).map(|i| {
            let t = 2.0 * PI * i as f64 / samples as f64;
            Vector::xy(t.cos(), t.sin())
        }).collect(),
        _ => fibonacci_sphere(samples),
    };
    dirs.iter()
        .map(|u| inner.support(u) - body.support_vec(u))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn scale_to_diameter(p: &Polytope, target: f64) -> Polytope {
    p.scaled(target / brute_diameter(p.vertices()))
}
