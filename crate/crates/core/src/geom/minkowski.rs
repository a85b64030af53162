use std::f64::consts::TAU;

use super::body::ConvexBody;
use super::hull::convex_hull;
use super::polytope::Polytope;
use super::vector::Vector;
use crate::error::Result;

/// Minkowski sum of two convex polygons by merging their edge sequences.
pub fn minkowski_sum_2d(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let lowest = |poly: &Polytope| -> Vector {
        poly.vertices()
            .iter()
            .min_by(|a, b| a[1].total_cmp(&b[1]).then(a[0].total_cmp(&b[0])))
            .unwrap()
            .clone()
    };
    let mut edges: Vec<(f64, Vector)> = Vec::with_capacity(p.num_vertices() + q.num_vertices());
    for poly in [p, q] {
        let v = poly.vertices();
        for i in 0..v.len() {
            let e = &v[(i + 1) % v.len()] - &v[i];
            let mut angle = e[1].atan2(e[0]);
            if angle < 0.0 {
                angle += TAU;
            }
            edges.push((angle, e));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cur = &lowest(p) + &lowest(q);
    let mut pts = Vec::with_capacity(edges.len());
    for (_, e) in &edges {
        pts.push(cur.clone());
        cur = &cur + e;
    }
    convex_hull(&pts)
}

/// `P + (-P)`: the hull of all vertex differences.
pub fn difference_body(p: &Polytope) -> Result<Polytope> {
    if p.dim() == 2 {
        return minkowski_sum_2d(p, &p.negated());
    }
    let v = p.vertices();
    let mut pts = Vec::with_capacity(v.len() * v.len());
    for a in v {
        for b in v {
            if !std::ptr::eq(a, b) {
                pts.push(a - b);
            }
        }
    }
    convex_hull(&pts)
}

/// Difference body of any body, discretizing curved bodies at `resolution`
/// boundary points first.
pub fn difference_body_of(body: &ConvexBody, resolution: usize) -> Result<Polytope> {
    difference_body(&body.to_polytope(resolution)?)
}

/// `(P + (-P)) / 2`, centered at the origin.
pub fn central_symmetrization(p: &Polytope) -> Result<Polytope> {
    Ok(difference_body(p)?.scaled(0.5))
}
