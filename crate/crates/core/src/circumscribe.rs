//! Circumscribed polytopes of small diameter.
//!
//! Extend the body to a body `W` of constant width equal to its diameter and
//! intersect the narrowest strips around `W` orthogonal to the lines of a
//! family. The result has at most `2k` facets and diameter at most
//! `diam(C) / cos(r)` for `r` the covering radius of the family.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::{
    convex_hull, diameter, halfspace_intersection, min_width, polygon_distance, ConvexBody, Direction, Polytope, Strip, Vector,
    DEFAULT_RESOLUTION,
};
use crate::lines::{exact_covering_radius, LineFamily};

pub use crate::bounds::delta_upper_bound;

/// Hausdorff tolerance of the planar completion.
pub const DEFAULT_COMPLETION_EPS: f64 = 1e-3;
pub const MAX_COMPLETION_ITERS: usize = 10_000;
/// Directions used to measure the distance of a completion from its input.
const WIDTH_SAMPLES: usize = 3600;

fn planar_points(body: &ConvexBody, resolution: usize) -> Result<Vec<Vector>> {
    if body.dim() != 2 {
        return Err(GeomError::UnsupportedDimension { dim: body.dim(), what: "planar completion" });
    }
    Ok(body.to_polytope(resolution)?.vertices().to_vec())
}

/// Boundary samples of `∩_{p ∈ points} B(p, radius)` along `resolution`
/// rays from the centroid of `points`.
fn ball_hull_samples(points: &[Vector], radius: f64, resolution: usize) -> Vec<Vector> {
    let c = points.iter().fold(Vector::zeros(2), |acc, p| &acc + p).scale(1.0 / points.len() as f64);
    let r2 = radius * radius;
    (0..resolution)
        .into_par_iter()
        .map(|i| {
            let t = TAU * i as f64 / resolution as f64;
            let dir = Vector::xy(t.cos(), t.sin());
            let exit = points
                .iter()
                .map(|p| {
                    let q = p - &c;
                    let b = dir.dot(&q);
                    b + (b * b - q.norm_sq() + r2).max(0.0).sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            c.add_scaled(exit, &dir)
        })
        .collect()
}

/// The intersection of all disks of the given radius centred in the body,
/// as a polygon through `resolution` boundary samples and the body's own
/// vertices.
pub fn ball_hull(body: &ConvexBody, radius: f64, resolution: usize) -> Result<ConvexBody> {
    let points = planar_points(body, resolution)?;
    let (diam, _) = diameter(body)?;
    if diam > radius + 1e-9 {
        return Err(GeomError::Precondition(format!("diameter {diam} exceeds ball radius {radius}")));
    }
    let mut all = ball_hull_samples(&points, radius, resolution);
    all.extend(points);
    Ok(ConvexBody::Completion { boundary: convex_hull(&all)?, resolution })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionResult {
    pub body: ConvexBody,
    /// Target width, the diameter of the input.
    pub width: f64,
    /// Largest `|w(u) - width|` over all directions.
    pub width_error: f64,
    /// Support-function distance from the input.
    pub hausdorff_from_input: f64,
    pub iterations: usize,
}

/// Planar body of constant width `diam(C)` containing `C`.
///
/// Each round takes the ball hull `T` of the current point set and adds the
/// point of `T` farthest from the current hull, until that distance is at
/// most `eps`. The returned body is the final `T`.
pub fn complete_to_constant_width_2d(body: &ConvexBody, eps: f64) -> Result<CompletionResult> {
    complete_with_resolution(body, eps, DEFAULT_RESOLUTION)
}

pub fn complete_with_resolution(body: &ConvexBody, eps: f64, resolution: usize) -> Result<CompletionResult> {
    if !(eps > 0.0) {
        return Err(GeomError::InvalidInput(format!("eps must be positive, got {eps}")));
    }
    let mut points = planar_points(body, resolution)?;
    let (target, _) = diameter(body)?;
    let mut residual = f64::INFINITY;
    for iter in 0..MAX_COMPLETION_ITERS {
        let current = convex_hull(&points)?;
        let samples = ball_hull_samples(current.vertices(), target, resolution);
        let (gap, far) = samples
            .par_iter()
            .map(|s| (polygon_distance(&current, s), s))
            .reduce(|| (f64::NEG_INFINITY, &samples[0]), |a, b| if b.0 > a.0 { b } else { a });
        residual = gap;
        if gap <= eps {
            let mut all = samples.clone();
            all.extend(current.vertices().iter().cloned());
            let hull = ConvexBody::Completion { boundary: convex_hull(&all)?, resolution };
            let (width_error, hausdorff_from_input) = completion_errors(body, &hull, target)?;
            return Ok(CompletionResult { body: hull, width: target, width_error, hausdorff_from_input, iterations: iter + 1 });
        }
        points = current.vertices().to_vec();
        points.push(far.clone());
    }
    Err(GeomError::NoConvergence { iterations: MAX_COMPLETION_ITERS, residual })
}

/// Width error is exact: the widths of a polygon range over
/// `[min_width, diameter]`. The distance from the input is sampled.
fn completion_errors(input: &ConvexBody, hull: &ConvexBody, target: f64) -> Result<(f64, f64)> {
    let (lo, _) = min_width(hull)?;
    let (hi, _) = diameter(hull)?;
    let hausdorff = (0..WIDTH_SAMPLES)
        .into_par_iter()
        .map(|i| {
            let u = Direction::from_angle(TAU * i as f64 / WIDTH_SAMPLES as f64);
            (hull.support(&u) - input.support(&u)).abs()
        })
        .reduce(|| 0.0, f64::max);
    Ok(((hi - target).max(target - lo), hausdorff))
}

#[derive(Clone, Debug, Serialize)]
pub struct CircumscriptionResult {
    pub polytope: Polytope,
    pub strips: Vec<Strip>,
    pub facet_count: usize,
    pub diameter: f64,
    pub body_diameter: f64,
    /// `diameter / body_diameter`.
    pub diameter_ratio: f64,
    /// `1 / cos` of the family's covering radius.
    pub bound: f64,
    /// Width error of the completion, scaled to the body; zero when the
    /// body already has constant width.
    pub completion_error: f64,
}

pub fn circumscribe_small_diameter(body: &ConvexBody, family: &LineFamily) -> Result<CircumscriptionResult> {
    circumscribe_with(body, family, DEFAULT_COMPLETION_EPS)
}

/// Like [`circumscribe_small_diameter`] with a chosen completion tolerance,
/// relative to the diameter.
pub fn circumscribe_with(body: &ConvexBody, family: &LineFamily, eps: f64) -> Result<CircumscriptionResult> {
    circumscribe_at(body, family, eps, DEFAULT_RESOLUTION)
}

/// Like [`circumscribe_with`], sampling the completion with `resolution`
/// boundary rays.
pub fn circumscribe_at(body: &ConvexBody, family: &LineFamily, eps: f64, resolution: usize) -> Result<CircumscriptionResult> {
    if family.dim() != body.dim() {
        return Err(GeomError::DimensionMismatch { expected: body.dim(), found: family.dim() });
    }
    let (body_diameter, _) = diameter(body)?;
    let constant_width = matches!(body, ConvexBody::Ball { .. } | ConvexBody::Reuleaux(_));
    let (completed, completion_error) = match body.dim() {
        _ if constant_width => (body.clone(), 0.0),
        2 => {
            let c = complete_with_resolution(&body.scaled(1.0 / body_diameter), eps, resolution)?;
            (c.body.scaled(body_diameter), c.width_error * body_diameter)
        }
        3 => return Err(GeomError::CompletionUnsupported),
        d => return Err(GeomError::UnsupportedDimension { dim: d, what: "circumscription" }),
    };
    // strips cover the body itself as well, since a sampled completion only
    // approximates curved bodies from inside
    let strips: Vec<Strip> = family
        .lines()
        .iter()
        .map(|l| {
            let hi = completed.support(l).max(body.support(l));
            let lo = -completed.support(&l.neg()).max(body.support(&l.neg()));
            Strip::new(l.clone(), lo, hi)
        })
        .collect::<Result<_>>()?;
    let polytope = halfspace_intersection(&strips)?;
    let facet_count = if polytope.has_facets() { polytope.facets().len() } else { polytope.num_vertices() };
    let (diam, _) = diameter(&ConvexBody::Polytope(polytope.clone()))?;
    let radius = family.radius().unwrap_or_else(|| exact_covering_radius(family));
    Ok(CircumscriptionResult {
        polytope,
        strips,
        facet_count,
        diameter: diam,
        body_diameter,
        diameter_ratio: diam / body_diameter,
        bound: 1.0 / radius.cos(),
        completion_error,
    })
}

/// Regular `n`-gon circumscribed about the disk of width 1, with its
/// diameter (equal to the ratio, as the disk has diameter 1).
pub fn regular_circumscribed_ngon(n: usize) -> Result<(Polytope, f64)> {
    if n < 3 {
        return Err(GeomError::InvalidInput(format!("need n >= 3, got {n}")));
    }
    let circumradius = 0.5 / (PI / n as f64).cos();
    let p = Polytope::regular_polygon(n, circumradius, 0.0)?;
    let (d, _) = diameter(&ConvexBody::Polytope(p.clone()))?;
    Ok((p, d))
}
