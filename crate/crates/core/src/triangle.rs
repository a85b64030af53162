//! Regular triangles of large minimal width inside planar bodies.
//!
//! Choose a direction `δ0` whose longest chord `a0c0` is bisected by the
//! perpendicular longest chord `pr`. The quadrangle `Q = conv{a0, p, c0, r}`
//! lies in the body and contains a regular triangle with a side parallel to
//! `a0c0` whose minimal width is at least `(3 - √3)/2 · w(C)`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::{convex_hull, diametral_chord_with, min_width, ConvexBody, Direction, Polytope, TieBreak, Vector};
use crate::lp;

/// `(3 - √3) / 2`.
pub const TRIANGLE_WIDTH_RATIO: f64 = 0.633_974_596_215_561_4;

const SCAN_SAMPLES: usize = 720;
const REFINED_SAMPLES: usize = 10_000;

/// Chord frame at a balanced direction.
#[derive(Clone, Debug, Serialize)]
pub struct QuadFrame {
    pub delta0: Direction,
    pub a0: Vector,
    pub b0: Vector,
    pub c0: Vector,
    /// Endpoint of the perpendicular chord nearer to `b0`.
    pub p: Vector,
    pub r: Vector,
    /// `|p b0| / |p r|`, in `[0, 1/2]`.
    pub k: f64,
    /// Remaining `|a0 b0| - |b0 c0|`.
    pub imbalance: f64,
}

struct Probe {
    a: Vector,
    c: Vector,
    p: Vector,
    r: Vector,
    b: Vector,
    g: f64,
}

/// Both chords are taken with the centered tie-break, so that the
/// construction is symmetric on bodies with parallel edges.
fn probe(body: &ConvexBody, delta: f64) -> Result<Probe> {
    let u = Direction::from_angle(delta);
    let main = diametral_chord_with(body, &u, TieBreak::Centered)?;
    let perp = diametral_chord_with(body, &u.perp(), TieBreak::Centered)?;
    let s = u.dot(&(&perp.a - &main.a));
    let b = main.a.add_scaled(s, u.as_vector());
    Ok(Probe { g: 2.0 * s - main.length, a: main.a, c: main.b, p: perp.a, r: perp.b, b })
}

/// Finds `δ0` with `|a0b0| = |b0c0|`: a sign change of
/// `g(δ) = |ab| - |bc|` on `[0, π]` (where `g(π) = -g(0)`) is bracketed on a
/// 720-sample scan, then bisected to `|g| ≤ 1e-9 · w`. Brackets that turn
/// out to be jumps are skipped; a 10⁴-sample scan is tried before giving up.
pub fn balanced_chord_direction(body: &ConvexBody) -> Result<QuadFrame> {
    if body.dim() != 2 {
        return Err(GeomError::UnsupportedDimension { dim: body.dim(), what: "regular triangle inscription" });
    }
    let (w, _) = min_width(body)?;
    let tol = 1e-9 * w;
    for samples in [SCAN_SAMPLES, REFINED_SAMPLES] {
        let deltas: Vec<f64> = (0..=samples).map(|i| PI * i as f64 / samples as f64).collect();
        let gs: Vec<f64> = deltas.par_iter().map(|&d| probe(body, d).map(|p| p.g)).collect::<Result<_>>()?;
        for i in 0..samples {
            if gs[i].abs() <= tol {
                return frame(body, deltas[i]);
            }
            if gs[i].signum() != gs[i + 1].signum() {
                if let Some(d) = bisect(body, deltas[i], deltas[i + 1], gs[i], tol)? {
                    return frame(body, d);
                }
            }
        }
    }
    Err(GeomError::BalancedDirectionNotFound)
}

fn bisect(body: &ConvexBody, mut lo: f64, mut hi: f64, g_lo: f64, tol: f64) -> Result<Option<f64>> {
    let sign_lo = g_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = probe(body, mid)?.g;
        if g.abs() <= tol {
            return Ok(Some(mid));
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if g.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(None)
}

fn frame(body: &ConvexBody, delta: f64) -> Result<QuadFrame> {
    let pr = probe(body, delta)?;
    let (p, r) = if pr.p.dist(&pr.b) <= pr.r.dist(&pr.b) { (pr.p, pr.r) } else { (pr.r, pr.p) };
    let k = p.dist(&pr.b) / p.dist(&r);
    Ok(QuadFrame { delta0: Direction::from_angle(delta), a0: pr.a, b0: pr.b, c0: pr.c, p, r, k, imbalance: pr.g })
}

/// Side of the Case-2 triangle for `|a0c0| = |pr| = w`: apex at `r`, base
/// parallel to `a0c0` with ends on `a0p` and `pc0`.
pub fn case_two_side(k: f64, w: f64) -> f64 {
    2.0 * w / (3f64.sqrt() + 2.0 * k)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleResult {
    pub triangle: Polytope,
    pub side: f64,
    pub width: f64,
    pub body_width: f64,
    /// Whether the apex points from `a0c0` toward `r`.
    pub apex_toward_r: bool,
    pub frame: QuadFrame,
}

/// The largest regular triangle with a side parallel to `a0c0` inside the
/// quadrangle of the balanced frame, over both orientations.
pub fn inscribe_regular_triangle(body: &ConvexBody) -> Result<TriangleResult> {
    let frame = balanced_chord_direction(body)?;
    let (body_width, _) = min_width(body)?;
    let ex = frame.delta0.as_vector().clone();
    let ey = {
        let v = frame.delta0.perp().as_vector().clone();
        if v.dot(&(&frame.r - &frame.b0)) >= 0.0 { v } else { -&v }
    };
    let quad = convex_hull(&[frame.a0.clone(), frame.p.clone(), frame.c0.clone(), frame.r.clone()])?;
    let halfplanes: Vec<([f64; 2], f64)> = quad
        .facets()
        .iter()
        .map(|f| {
            let n = f.normal.as_vector();
            ([n.dot(&ex), n.dot(&ey)], f.offset - n.dot(&frame.b0))
        })
        .collect();
    let h = 3f64.sqrt() / 2.0;
    let mut best: Option<([f64; 2], f64, f64)> = None;
    for sigma in [1.0, -1.0] {
        let template = [[0.0, 0.0], [-0.5, -sigma * h], [0.5, -sigma * h]];
        let (apex, side) = lp::max_scaled_template(&halfplanes, &template)?;
        if best.map_or(true, |b| side > b.1) {
            best = Some((apex, side, sigma));
        }
    }
    let (apex, side, sigma) = best.expect("two orientations");
    let to_world = |x: f64, y: f64| frame.b0.add_scaled(x, &ex).add_scaled(y, &ey);
    let verts = [
        to_world(apex[0], apex[1]),
        to_world(apex[0] - 0.5 * side, apex[1] - sigma * h * side),
        to_world(apex[0] + 0.5 * side, apex[1] - sigma * h * side),
    ];
    let triangle = convex_hull(&verts)?;
    Ok(TriangleResult { triangle, side, width: h * side, body_width, apex_toward_r: sigma > 0.0, frame })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_gives_worst_case_triangle() {
        let disk = ConvexBody::ball_of_width(2, 1.0).unwrap();
        let t = inscribe_regular_triangle(&disk).unwrap();
        assert!((t.frame.k - 0.5).abs() < 1e-12);
        assert!((t.side - (3f64.sqrt() - 1.0)).abs() < 1e-9);
        assert!((t.width - TRIANGLE_WIDTH_RATIO).abs() < 1e-9);
    }

    #[test]
    fn square_is_balanced_at_zero() {
        let sq = ConvexBody::Polytope(Polytope::centered_box(&[0.5, 0.5]).unwrap());
        let f = balanced_chord_direction(&sq).unwrap();
        assert_eq!(f.delta0.angle(), 0.0);
        assert!(f.imbalance.abs() < 1e-15);
    }

    #[test]
    fn case_two_side_decreases() {
        let lo = 1.0 - 3f64.sqrt() / 2.0;
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let k = lo + (0.5 - lo) * i as f64 / 100.0;
            let s = case_two_side(k, 1.0);
            assert!(s < prev);
            prev = s;
        }
        assert!((case_two_side(0.5, 1.0) - 2.0 / (3f64.sqrt() + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn constant_ratio_matches_closed_form() {
        assert!((TRIANGLE_WIDTH_RATIO - (3.0 - 3f64.sqrt()) / 2.0).abs() < 1e-16);
    }
}
